"""Strategy-proofness four ways.

The logical encoding quantifies the reified true profile over all models
realizing the rule; the oracles check truthful dominant-strategy
implementation, plain dominant-strategy implementation, and monotonicity
directly.  On finite instances all four verdicts coincide.
"""

from scflogic import (
    STRPROOF,
    ScfTable,
    check_scf_property,
    equivalence_audit,
    is_monotonic,
    is_strategy_proof,
)

K = ("a", "b")
majority = ScfTable.from_function(
    3, K, lambda p: "a" if sum(o.top == "a" for o in p.orders) >= 2 else "b"
)
inverting = ScfTable.from_function(2, K, lambda p: p.order(1).ranking[1])

for name, table in (("three-agent majority", majority), ("second-choice rule", inverting)):
    print(f"{name}:")
    print("  encoding  :", check_scf_property(table, STRPROOF).status)
    print("  oracle    :", is_strategy_proof(table))
    report = is_monotonic(table)
    print("  monotonic :", report.ok)
    if not report.ok:
        print(f"    {report.outcome} wins at {report.profile} but not at"
              f" {report.profile_after}, although it only rose")
    audit = equivalence_audit(table)
    print("  audit     : truthful-DOM", audit.truthful_dom,
          "| DOM-implement", audit.dom_implement,
          "| monotonic", audit.monotonic,
          "| encoding", audit.strproof_encoding,
          "| all agree", audit.all_agree)
    print()
