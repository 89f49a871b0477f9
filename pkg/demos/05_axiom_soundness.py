"""Soundness sweep of the axiom schemas.

Every schema is instantiated over (n=2, K={a,b}) with the default
metavariable pool and checked in all 64 models of that domain; the same
machinery handles thousands of models by stacking their state blocks into
single integers.
"""

import time

from scflogic import enumerate_models, sample_models
from scflogic.axioms import default_pool, instantiate_all, soundness_check

K = ("a", "b")
pool = default_pool(2, K)
print(f"metavariable pool: {len(pool)} formulas")

instances = instantiate_all(2, K)
print(f"instances over (n=2, K={{a,b}}): {len(instances)}")

start = time.perf_counter()
report = soundness_check(instances, list(enumerate_models(2, K)))
print(f"\nchecked against all 64 models in {time.perf_counter() - start:.2f}s:\n")
print(report.render())

start = time.perf_counter()
sampled = sample_models(2, ("a", "b", "c"), 200, seed=0)
report3 = soundness_check(instantiate_all(2, ("a", "b", "c")), sampled)
print(f"\nthree outcomes, 200 sampled models, {time.perf_counter() - start:.2f}s:"
      f" {'all sound' if report3.ok else 'FAILURE'}")
