"""
How rare is degeneracy?  A coefficient-space experiment
=======================================================

Fix the supports and redraw the coefficients many times: degeneracy at
infinity almost never shows up, and small perturbations of a
non-degenerate mapping stay non-degenerate.  Hitting a degenerate mapping
takes an algebraic coincidence, like the perfect square below.
"""

import itertools

from polyloj import PolynomialMapping, parse_polynomial
from polyloj.genericity import genericity_trial, openness_probe

# 200 uniform coefficient draws on the supports {x1^2, x2^4}, {x1^2, x2^2}.
supports = [[(2, 0), (0, 4)], [(2, 0), (0, 2)]]
stats = genericity_trial(supports, trials=200, seed=12, mode="exact")
print(f"supports {supports}")
print(f"  {stats.nondegenerate_count}/{stats.trials} draws nondegenerate, "
      f"{stats.degenerate_count} degenerate, {stats.undecided_count} undecided")
print()

# Openness: jitter every coefficient of a nondegenerate pair by +-1e-6 and
# re-check.  All perturbations stay nondegenerate.
F = PolynomialMapping((
    parse_polynomial("x1^2 + x2^4", 2),
    parse_polynomial("x1^2 + x2^2", 2),
))
probe = openness_probe(F, epsilon=1e-6, trials=100, seed=12, mode="exact")
print(f"openness probe: {probe.passed}/{probe.trials} perturbed mappings "
      f"stay nondegenerate (epsilon = {probe.epsilon:g})")
print()

# The exception that proves the rule: on the support {x1^2, x1*x2, x2^2}
# the pinned coefficients (1, -2, 1) give (x1 - x2)^2, which is degenerate.
# A cycling sampler feeds exactly those values into one trial.
values = itertools.cycle([1.0, -2.0, 1.0])
pinned = genericity_trial(
    [[(2, 0), (1, 1), (0, 2)]],
    sampler=lambda _rng: next(values),
    trials=1,
    seed=0,
    mode="exact",
)
print(f"pinned coefficients (1, -2, 1) on {{x1^2, x1*x2, x2^2}}: "
      f"{pinned.degenerate_count} degenerate draw "
      f"(instance {pinned.degenerate_instances[0][0]})")
