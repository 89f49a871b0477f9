"""Implementation versus truthful implementation.

Four direct mechanisms checked against three two-agent rules show that the
two notions are independent: a game form can satisfy both, either one
alone, or neither.
"""

from scflogic import (
    GameForm,
    LinearOrder,
    Profile,
    ScfTable,
    SolutionConcept,
    all_linear_orders,
    implements,
    nash_equilibria,
    scf_as_game_form,
    truthfully_implements,
)

K = ("a", "b")
orders = all_linear_orders(K)

H = ScfTable.from_function(2, K, lambda p: "b" if all(o.top == "b" for o in p.orders) else "a")
J = ScfTable.from_function(2, K, lambda p: p.order(1).top)          # dictatorship of 1
P = ScfTable.from_function(2, K, lambda p: "a")                     # constant a

g_h = scf_as_game_form(H)
g_j = scf_as_game_form(J)
flip = {"a": "b", "b": "a"}
g_j_minus = GameForm(  # the dictatorship with agent 1's outcomes inverted
    actions=(orders, orders), outcomes=K,
    table={(o1, o2): flip[o1.top] for o1 in orders for o2 in orders},
)
g_all_b = GameForm(  # every cell b, checked against constant-a P
    actions=(orders, orders), outcomes=K,
    table={(o1, o2): "b" for o1 in orders for o2 in orders},
)

rows = [
    ("g_H  vs H", g_h, H),
    ("g_J  vs J", g_j, J),
    ("g_J- vs J", g_j_minus, J),
    ("g_b  vs P", g_all_b, P),
]
print(f"{'pair':<10} {'NE-implements':<14} truthfully-NE-implements")
for name, game, table in rows:
    std = implements(game, table, SolutionConcept.NE)
    tru = truthfully_implements(game, table, SolutionConcept.NE)
    print(f"{name:<10} {str(std.ok):<14} {tru.ok}")
    if not std.ok and std.action_profile is not None:
        print(f"{'':<10}   equilibrium {Profile(std.action_profile)} under truth"
              f" {std.profile} yields {game.outcome(std.action_profile)}"
              f" but the rule picks {table(std.profile)}")

truth = Profile((LinearOrder(("b", "a")), LinearOrder(("b", "a"))))
print("\nNash equilibria of the game form of H when both truly prefer b:")
for combo in nash_equilibria(g_h, truth):
    print(f"  {Profile(combo)} -> {g_h.outcome(combo)}")
print("truth-telling is one equilibrium; the all-a trap is another, which")
print("is why truthful implementation holds while full implementation fails.")
