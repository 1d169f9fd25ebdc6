"""Tour of the uniqueness classifier.

A normalized coefficient vector (sum of |theta_k| = 1) defines a binary
chain whose next-symbol law is linear in the past.  Depending on the
signs and the support of the coefficients there may be one compatible
stationary law or several.  This script walks through the main cases.
"""

from binchain import FiniteVector, PowerLaw, SignPattern, classify
from binchain.coefficients import coherent_configurations

MODELS = [
    ("all positive", FiniteVector((0.5, 0.5))),
    ("alternating", FiniteVector((-0.5, 0.5))),
    ("mixed signs", FiniteVector((0.5, -0.5))),
    ("even support", FiniteVector((0.0, 0.5, 0.0, -0.5))),
    ("heavy tail", PowerLaw(1.2, SignPattern((1, 1, -1, 1)))),
    ("light tail", PowerLaw(2.0, SignPattern((1, 1, -1, 1)))),
]

for label, model in MODELS:
    verdict = classify(model)
    print("%-12s -> %-22s %s" % (label, verdict.kind, verdict.describe()))
    if verdict.reduced is not None:
        print("%12s    reduced model (step %d): %s"
              % ("", verdict.k0, verdict.reduced.kind))

# The nonunique verdicts come with concrete witnesses: deterministic
# periodic configurations that the kernel reproduces with probability one.
print()
for label, model in MODELS[:2]:
    confs = coherent_configurations(model)
    print("%s model admits %d coherent configurations:" % (label, len(confs)))
    for conf in confs:
        print("   repeating pattern", conf.period)
