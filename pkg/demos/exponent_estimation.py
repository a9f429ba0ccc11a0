"""
Estimating the exponents of a global gradient-free inequality
=============================================================

For a pair (g, h) the quantity mu(t) = sup { |h(x)| : |g(x)| = t } controls
whether an inequality |g|^alpha + |g|^beta >= c |h| can hold globally: the
small-t and large-t growth of mu give the two exponents.  This demo fits
them for a pair where the inequality holds, confirms it on a large sample,
and then shows a pair where every candidate inequality is destroyed by a
single escape curve.
"""

from polyloj import parse_polynomial
from polyloj.lojasiewicz import (
    fit_exponents,
    hunt_sequences,
    multiplier,
    mu_estimate,
    verify_inequality,
)

g = parse_polynomial("x1^2 + x2^4", 2)
h = parse_polynomial("x1^2 + x2^2", 2)
print(f"g = {g},  h = {h}")

# mu(t) for a few levels: near zero it behaves like t^(1/2) (the x2 axis
# dominates), for large t like t (the x1 axis dominates).
for t in (1e-4, 1e-2, 1.0, 1e2, 1e4):
    print(f"  mu({t:g}) ~ {mu_estimate(g, h, t, budget=32):.6g}")
print()

# Least-squares fit of the two power laws.
fit = fit_exponents(g, h, budget=32, seed=1)
print(f"fitted alpha = {fit.alpha:.4f} (small levels, r^2 = {fit.alpha_r2:.6f}), "
      f"beta = {fit.beta:.4f} (large levels, r^2 = {fit.beta_r2:.6f})")

# With (alpha, beta, c) = (1/2, 1, 1) the inequality holds everywhere we
# can sample: worst observed ratio |h| / (|g|^a + |g|^b) stays below 1.
report = verify_inequality(g, h, 0.5, 1.0, 1.0, box_count=200000, seed=1)
print(f"|g|^0.5 + |g|^1 >= |h|: holds = {report.holds}, "
      f"worst ratio = {report.worst_ratio:.6f} at {report.worst_source}")

# An even power N with h^N = g * (bounded factor) near the origin.
N, mult = multiplier(g, h, 0.5, ball_samples=20000, seed=1)
print(f"multiplier: h^{N} / g bounded by {mult.ball_max:.3f} on the unit ball")
print()

# Now the failing pair.  g is not convenient, and along x = (s, 1/s) the
# second component blows up while g stays near 1, so no inequality of this
# shape can hold: the hunter returns that curve as explicit evidence.
g_bad = parse_polynomial("(x1^2 - 1)^2 + (x1*x2 - 1)^2", 2)
h_bad = parse_polynomial("(x1^2 - 1)^2 + (x2^2 - 1)^2", 2)
evidence = hunt_sequences(g_bad, h_bad, "SecondType", seed=1)
print(f"escape curve found: x_j = a_j * s^q_j with q = {evidence.q}, a = {evidence.a}")
print(f"  along it: g stays <= {evidence.g_bound}, |h| already "
      f"{max(evidence.h_values):.3g} at s = {min(evidence.s_values):g}")
bad = verify_inequality(g_bad, h_bad, 0.5, 1.0, 1e-6, box_count=2000,
                        curves=(evidence,), seed=1)
print(f"|g|^0.5 + |g|^1 >= 1e-6 |h|: holds = {bad.holds} "
      f"(worst ratio {bad.worst_ratio:.3g} on the {bad.worst_source})")
