"""
Deciding non-degeneracy at infinity
===================================

The checker enumerates every covector direction along which all chosen
components blow up, restricts the mapping to the corresponding faces, and
asks whether the face gradients can become dependent on the face zero set
inside (R*)^n.  In two variables the answer is exact; in more variables a
multi-start search hunts for an explicit witness point.
"""

from polyloj import PolynomialMapping, parse_polynomial
from polyloj.nondegeneracy import nondegenerate_at_infinity

# A perfect square is the canonical degenerate example: along the diagonal
# x1 = x2 the face polynomial and its gradient vanish together.
square = PolynomialMapping((parse_polynomial("(x1 - x2)^2", 2),))
report = nondegenerate_at_infinity(square)
print(f"(x1 - x2)^2        : {report.verdict} ({report.mode})")
for entry in report.witness_entries():
    ev = entry.evidence
    print(f"  witness x = {ev.witness_exact}, residual = {ev.residual_norm}")
print()

# Two hand-picked pairs.  Both are non-degenerate, and in two variables the
# exact decision procedure needs no randomness at all.
pairs = {
    "non-convenient pair": ("(x1^2 - 1)^2 + (x1*x2 - 1)^2",
                            "(x1^2 - 1)^2 + (x2^2 - 1)^2"),
    "convenient pair": ("x1^2 + x2^4", "x1^2 + x2^2"),
}
for label, (g_text, h_text) in pairs.items():
    F = PolynomialMapping((parse_polynomial(g_text, 2), parse_polynomial(h_text, 2)))
    report = nondegenerate_at_infinity(F, mode="exact")
    print(f"{label:20s}: {report.verdict} ({report.mode}, "
          f"{len(report.entries)} face systems, complete = {report.complete})")
print()

# In three variables the embedded square is still caught: the search finds
# a point where the face gradient degenerates and prints it.
embedded = PolynomialMapping((parse_polynomial("(x1 - x2)^2 + x3^2", 3),))
report = nondegenerate_at_infinity(embedded, seed=5)
print(f"(x1 - x2)^2 + x3^2 : {report.verdict} ({report.mode})")
for entry in report.witness_entries()[:2]:
    ev = entry.evidence
    print(f"  witness near {tuple(round(c, 6) for c in ev.witness)}, "
          f"residual = {ev.residual_norm:.2e}")
