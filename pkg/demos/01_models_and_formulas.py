"""States, models and formula evaluation.

A model of a social choice function has one state per reported preference
profile.  Agents control their own reported atoms; the outcome function
labels every state with a single outcome; the agents' true rankings drive
the preference modality.
"""

from scflogic import (
    Diamond,
    Evaluator,
    LinearOrder,
    Out,
    Pref,
    Profile,
    Rep,
    ScfModel,
    ScfTable,
    evaluate,
    valid_in_model,
)

K = ("a", "b")
ab = LinearOrder(("a", "b"))
ba = LinearOrder(("b", "a"))

# b wins exactly when both agents report b first
H = ScfTable.from_function(2, K, lambda p: "b" if all(o.top == "b" for o in p.orders) else "a")
truth = Profile((ba, ba))  # both agents truly prefer b
model = ScfModel(H, truth)

print("states and outcomes:")
for state in model.states:
    print(f"  {state} -> {model.out(state)}")

aa = Profile((ab, ab))
print("\nat state", aa, "with truth", truth)
for formula in (
    Out("b"),
    Rep(1, "a", "b"),
    Diamond({1}, Out("b")),        # agent 1 alone cannot reach b
    Diamond({1, 2}, Out("b")),     # together they can
    Pref(1, Out("b")),             # some truly-at-least-as-good state yields b
):
    print(f"  {formula!r:55} {evaluate(model, aa, formula)}")

ok, falsifying = valid_in_model(model, Out("b"))
print("\nOut(b) valid in the model?", ok)
print("falsifying states:", ", ".join(str(s) for s in falsifying))

print("\nthe truth mask of a formula covers all states at once:")
ev = Evaluator(model)
mask = ev.truth_mask(Diamond({2}, Out("b")))
print("  <{2}> b holds at:", [str(s) for i, s in enumerate(model.states) if mask >> i & 1])
