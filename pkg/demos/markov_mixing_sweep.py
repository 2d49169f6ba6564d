"""A mixing Markov chain satisfies every asymptotic-independence condition.

For a stationary two-state chain with flip probability p, the pair
(X_0, X_n) has alpha exactly (1 - 2p)^n / 4, and every other dependence
functional decays at the same geometric rate. Sweeping n and classifying
each decay series gives CONVERGES across all five conditions -- the
opposite of the counterexample families.

Run:  python demos/markov_mixing_sweep.py
"""
import math
from fractions import Fraction

from asymdep import SweepSpec, classify_decay, report_markdown, sweep

p = Fraction(1, 4)
spec = SweepSpec(
    family="markov_shift",
    n_values=tuple(range(1, 11)),
    metrics=("variation", "beta", "alpha", "rectangle", "prokhorov", "bl", "cov_sup", "cf"),
    family_params={"p": p},
)
report = sweep(spec)
print(report_markdown(report))

print(f"predicted alpha rate: log(1 - 2p) = {math.log(1 - 2 * float(p)):.6f}")
alpha_verdict = classify_decay(report.series("alpha"))
print(f"fitted alpha rate:    {alpha_verdict.rate:.6f}  "
      f"(model={alpha_verdict.model}, fit quality={alpha_verdict.fit_quality:.4f})")
print()
for condition, verdict in sorted(report.verdicts.items(), reverse=True):
    rate = "" if verdict.rate is None else f"  rate={verdict.rate:.4f}"
    print(f"  {condition}: {verdict.verdict}{rate}")
