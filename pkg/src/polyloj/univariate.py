"""Dense univariate polynomials over Q: Euclidean gcd, Sturm sequences,
exact real-root counting, and root isolation/refinement.

Coefficient lists are low-to-high degree. This is the decision kernel of
the exact two-variable non-degeneracy check, so counting is fully exact;
only the final numeric refinement of an isolated root returns a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Coeffs = list[Fraction]


def trim(p: Sequence[Fraction]) -> Coeffs:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence[Fraction]) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(trim(p)) - 1


def eval_at(p: Sequence[Fraction], x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(trim(p)):
        total = total * x + c
    return total


def eval_float(p: Sequence[Fraction], x: float) -> float:
    total = 0.0
    for c in reversed(trim(p)):
        total = total * x + float(c)
    return total


def derivative(p: Sequence[Fraction]) -> Coeffs:
    q = trim(p)
    return [c * k for k, c in enumerate(q)][1:]


def monic(p: Sequence[Fraction]) -> Coeffs:
    q = trim(p)
    if not q:
        return q
    lead = q[-1]
    return [c / lead for c in q]


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]) -> tuple[Coeffs, Coeffs]:
    num = trim(num)
    den = trim(den)
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    while len(rem) >= len(den):
        factor = rem[-1] / den[-1]
        shift = len(rem) - len(den)
        quot[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] -= factor * c
        rem = trim(rem)
        if not rem:
            break
    return trim(quot), rem


def gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> Coeffs:
    """Monic gcd via the Euclidean algorithm."""
    a, b = trim(p), trim(q)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return monic(a)


def squarefree_part(p: Sequence[Fraction]) -> Coeffs:
    """p / gcd(p, p'): same real roots, all simple."""
    q = trim(p)
    if degree(q) <= 0:
        return monic(q)
    g = gcd(q, derivative(q))
    if degree(g) == 0:
        return monic(q)
    quot, rem = poly_divmod(q, g)
    if rem:
        raise ArithmeticError("gcd does not divide its polynomial")
    return monic(quot)


def sturm_chain(p: Sequence[Fraction]) -> list[Coeffs]:
    chain = [trim(p), derivative(p)]
    while trim(chain[-1]):
        _, r = poly_divmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return [c for c in chain if trim(c)]


def _sign_variations(values: list[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain: list[Coeffs], x: Fraction) -> int:
    return _sign_variations([eval_at(c, x) for c in chain])


def _variations_at_inf(chain: list[Coeffs], positive: bool) -> int:
    values = []
    for c in chain:
        t = trim(c)
        lead = t[-1]
        if not positive and (len(t) - 1) % 2 == 1:
            lead = -lead
        values.append(lead)
    return _sign_variations(values)


def root_bound(p: Sequence[Fraction]) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    q = trim(p)
    lead = abs(q[-1])
    return Fraction(1) + max((abs(c) for c in q[:-1]), default=Fraction(0)) / lead


def count_real_roots(p: Sequence[Fraction]) -> int:
    """Number of distinct real roots, exactly (Sturm over (-inf, inf))."""
    q = trim(p)
    if degree(q) <= 0:
        return 0
    q = squarefree_part(q)
    chain = sturm_chain(q)
    return _variations_at_inf(chain, positive=False) - _variations_at_inf(
        chain, positive=True
    )


def count_roots_in(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    q = squarefree_part(p)
    chain = sturm_chain(q)
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def isolate_real_roots(p: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], one per distinct real root."""
    q = squarefree_part(p)
    if degree(q) <= 0:
        return []
    chain = sturm_chain(q)
    bound = root_bound(q)
    total = _variations_at(chain, -bound) - _variations_at(chain, bound)
    out: list[tuple[Fraction, Fraction]] = []

    def recurse(lo: Fraction, hi: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        left = _variations_at(chain, lo) - _variations_at(chain, mid)
        recurse(lo, mid, left)
        recurse(mid, hi, count - left)

    recurse(-bound, bound, total)
    out.sort()
    return out


def refine_root(
    p: Sequence[Fraction], interval: tuple[Fraction, Fraction], iterations: int = 80
) -> float:
    """Refine an isolating interval of a squarefree polynomial to a float.

    Bisection on the sign change, then a few float Newton polish steps
    (kept inside the interval)."""
    q = squarefree_part(p)
    lo, hi = interval
    flo = eval_at(q, lo)
    fhi = eval_at(q, hi)
    if fhi == 0:
        root = hi
        return float(root)
    if flo == 0:
        # (lo, hi] is half-open; nudge just inside.
        lo = (lo + hi) / 2 if eval_at(q, (lo + hi) / 2) == 0 else lo
    for _ in range(iterations):
        mid = (lo + hi) / 2
        fm = eval_at(q, mid)
        if fm == 0:
            return float(mid)
        if (fm > 0) == (fhi > 0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if hi - lo < Fraction(1, 10**18) * max(1, abs(hi)):
            break
    x = float((lo + hi) / 2)
    dq = derivative(q)
    for _ in range(8):
        fx = eval_float(q, x)
        dfx = eval_float(dq, x)
        if dfx == 0:
            break
        step = fx / dfx
        if not (float(lo) - 1e-9 <= x - step <= float(hi) + 1e-9):
            break
        x -= step
        if step == 0:
            break
    return x


def rational_roots(p: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots, by the rational root theorem on the primitive
    integer form. Cheap (small candidate sets in this package's usage)."""
    q = trim(p)
    if degree(q) < 1:
        return []
    denom_lcm = 1
    for c in q:
        denom_lcm = denom_lcm * c.denominator // _gcd_int(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in q]
    while ints and ints[0] == 0:
        ints.pop(0)  # factor out x; root 0 is excluded by the callers
    if not ints:
        return []
    a0, an = abs(ints[0]), abs(ints[-1])
    roots = []
    for pnum in _divisors(a0):
        for pden in _divisors(an):
            for cand in (Fraction(pnum, pden), Fraction(-pnum, pden)):
                if eval_at(q, cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(v: int) -> list[int]:
    v = abs(v)
    if v == 0:
        return [1]
    out = []
    d = 1
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            out.append(v // d)
        d += 1
    return sorted(set(out))
