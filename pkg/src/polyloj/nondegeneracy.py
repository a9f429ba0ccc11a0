"""Non-degeneracy at infinity of real polynomial mappings.

A mapping F = (f_1..f_p), p <= n, fails the face condition when some tuple
of faces Delta_i = Delta(q, Gamma(f_i)), exposed by a common covector q with
all d(q, Gamma(f_i)) < 0, has a point x in (R*)^n where every face polynomial
vanishes and the weighted Jacobian (x_j df_i/dx_j) drops rank below p.
This module enumerates those face systems and decides emptiness: exactly in
two variables (via univariate root counting), by certified witness search
otherwise.  Full non-degeneracy quantifies the same condition over every
nonempty sub-tuple of components.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .linalg import det as exact_det
from .polyhedra import (
    Face,
    FaceTuple,
    enumerate_negative_face_tuples,
    newton_polyhedron,
)
from .polynomials import Polynomial, PolynomialMapping, face_part
from .univariate import (
    count_real_roots,
    degree,
    derivative,
    gcd,
    isolate_real_roots,
    rational_roots,
    refine_root,
)

RESIDUAL_TOL = 1e-10
MINOR_TOL = 1e-8
SEARCH_MAX_EVALS = 200
# Float witnesses additionally need residuals at noise level relative to the
# largest term magnitude (a converged Newton zero sits many orders below it;
# a point where every monomial merely shrank does not), minors at noise
# level relative to the product of row scales, and coordinates away from the
# exp(+-20) parametrization bounds.
REL_RESIDUAL_TOL = 1e-8
REL_MINOR_TOL = 1e-6
LOG_COORD_BOUND = 19.5
SMALL_COORD_FACTOR = 0.01


# -- face systems ------------------------------------------------------------


@dataclass(frozen=True)
class FaceSystem:
    """One face tuple of a sub-mapping: the object the rank condition is
    tested on.

    subset holds the 1-based component indices (into the original mapping),
    faces[i] is the face of Gamma(f_{subset[i]}) exposed by witness_q, and
    face_polys[i] collects the terms of f_{subset[i]} on that face.  All
    degrees are negative by construction.
    """

    subset: tuple[int, ...]
    faces: tuple[Face, ...]
    witness_q: tuple[int, ...]
    degrees: tuple[int, ...]
    face_polys: tuple[Polynomial, ...]

    def __post_init__(self):
        k = len(self.subset)
        if not (len(self.faces) == len(self.degrees) == len(self.face_polys) == k):
            raise ValueError("face system fields have mismatched lengths")
        if k == 0:
            raise ValueError("face system needs at least one component")
        if any(d >= 0 for d in self.degrees):
            raise ValueError("face systems require strictly negative degrees")

    @property
    def num_vars(self) -> int:
        return self.face_polys[0].num_vars

    def to_json(self) -> dict:
        return {
            "subset": list(self.subset),
            "witness_q": list(self.witness_q),
            "degrees": [str(d) for d in self.degrees],
            "faces": [list(map(list, f.points)) for f in self.faces],
            "face_polynomials": [str(p) for p in self.face_polys],
        }


def face_system(
    F: PolynomialMapping, indices: Sequence[int], face_tuple: FaceTuple
) -> FaceSystem:
    """Bundle a face tuple of the sub-mapping (f_i)_{i in indices} with its
    face polynomials.  indices are 1-based positions in F."""
    polys = tuple(
        face_part(F[i - 1], face) for i, face in zip(indices, face_tuple.faces)
    )
    return FaceSystem(
        subset=tuple(indices),
        faces=face_tuple.faces,
        witness_q=face_tuple.witness_q,
        degrees=face_tuple.degrees,
        face_polys=polys,
    )


# -- rank matrices -----------------------------------------------------------


def _is_exact_point(x: Sequence) -> bool:
    return all(
        isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in x
    )


def face_rank_matrix(system: FaceSystem, x: Sequence, form: str = "plain"):
    """The p x n weighted Jacobian (x_j df_i/dx_j)(x); form='augmented'
    appends the p x p diagonal block diag(f_i(x)) giving p x (n+p).

    Exact (Fraction entries) when x is rational, floats otherwise.
    """
    if form not in ("plain", "augmented"):
        raise ValueError(f"unknown form {form!r}")
    n = system.num_vars
    if len(x) != n:
        raise ValueError("point dimension mismatch")
    if any(v == 0 for v in x):
        raise ValueError("rank matrices require all coordinates nonzero")
    exact = _is_exact_point(x)
    rows = []
    for i, fp in enumerate(system.face_polys):
        if exact:
            pt = [Fraction(v) for v in x]
            row = [pt[j] * fp.partial(j + 1).evaluate_exact(pt) for j in range(n)]
            if form == "augmented":
                row += [
                    fp.evaluate_exact(pt) if k == i else Fraction(0)
                    for k in range(len(system.face_polys))
                ]
        else:
            pt = [float(v) for v in x]
            row = [pt[j] * fp.partial(j + 1).evaluate_float(pt) for j in range(n)]
            if form == "augmented":
                row += [
                    fp.evaluate_float(pt) if k == i else 0.0
                    for k in range(len(system.face_polys))
                ]
        rows.append(row)
    return rows


def _minors(system: FaceSystem, x: Sequence) -> list:
    """All p x p minors of the plain weighted Jacobian at x (exact when x
    is rational)."""
    rows = face_rank_matrix(system, x, form="plain")
    p = len(rows)
    n = system.num_vars
    exact = _is_exact_point(x)
    out = []
    for cols in itertools.combinations(range(n), p):
        sub = [[row[c] for c in cols] for row in rows]
        if exact:
            out.append(exact_det(sub))
        else:
            out.append(float(np.linalg.det(np.array(sub, dtype=float))))
    return out


def check_witness(system: FaceSystem, x: Sequence) -> tuple[bool, dict]:
    """Independent re-check of a degeneracy witness.

    Accepts iff every |f_i(x)| < RESIDUAL_TOL * (1 + ||x||^deg_i) and every
    p x p minor of the weighted Jacobian is below MINOR_TOL in magnitude.
    """
    if any(v == 0 for v in x):
        return False, {"reason": "zero coordinate"}
    exact = _is_exact_point(x)
    xf = [float(v) for v in x]
    norm = math.sqrt(sum(v * v for v in xf))
    f_residuals = []
    ok = True
    for fp in system.face_polys:
        val = fp.evaluate_exact(x) if exact else fp.evaluate_float(xf)
        scale = 1.0 + norm ** fp.total_degree()
        f_residuals.append(abs(float(val)))
        if abs(float(val)) >= RESIDUAL_TOL * scale:
            ok = False
    minors = [abs(float(m)) for m in _minors(system, x)]
    minor_max = max(minors) if minors else 0.0
    if minor_max >= MINOR_TOL:
        ok = False
    return ok, {
        "f_residuals": f_residuals,
        "minor_max": minor_max,
        "norm": norm,
        "exact": exact,
    }


def rescale_witness(system: FaceSystem, x: Sequence, t) -> tuple:
    """x_j -> t^{q_j} x_j along the system's covector; weighted homogeneity
    keeps witnesses witnesses."""
    return tuple(v * t ** qj for v, qj in zip(x, system.witness_q))


# -- evidence and reports -----------------------------------------------------


@dataclass(frozen=True)
class Evidence:
    """Outcome for one face system.

    kind: EmptyZeroSet (zero set empty in (R*)^n), FullRankEverywhere (zero
    set nonempty but rank never drops), Witness (degeneracy point found),
    SearchExhausted (numerical search gave up: undecided).
    """

    kind: str
    reason: str = ""
    witness: Optional[tuple[float, ...]] = None
    witness_exact: Optional[tuple[str, ...]] = None
    residual_norm: float = 0.0
    minor_max: float = 0.0
    trials: int = 0

    @property
    def passed(self) -> Optional[bool]:
        if self.kind == "Witness":
            return False
        if self.kind == "SearchExhausted":
            return None
        return True

    def to_json(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.reason:
            data["reason"] = self.reason
        if self.witness is not None:
            data["witness"] = list(self.witness)
            data["residual_norm"] = self.residual_norm
            data["minor_max"] = self.minor_max
        if self.witness_exact is not None:
            data["witness_exact"] = list(self.witness_exact)
        if self.kind == "SearchExhausted":
            data["trials"] = self.trials
        return data


@dataclass(frozen=True)
class TupleEntry:
    system: FaceSystem
    evidence: Evidence

    def to_json(self) -> dict:
        data = self.system.to_json()
        data["evidence"] = self.evidence.to_json()
        return data


@dataclass(frozen=True)
class NondegeneracyReport:
    verdict: str
    mode: str
    entries: tuple[TupleEntry, ...]
    complete: bool
    failing_subset: Optional[tuple[int, ...]] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "NonDegenerate"

    def witness_entries(self) -> list[TupleEntry]:
        return [e for e in self.entries if e.evidence.kind == "Witness"]

    def to_json(self) -> dict:
        data = {
            "verdict": self.verdict,
            "mode": self.mode,
            "complete": self.complete,
            "tuples": [e.to_json() for e in self.entries],
        }
        if self.failing_subset is not None:
            data["failing_subset"] = list(self.failing_subset)
        return data


# -- exact decision in two variables ------------------------------------------


def _perp(q: Sequence[int]) -> tuple[int, int]:
    w1, w2 = -q[1], q[0]
    g = math.gcd(abs(w1), abs(w2))
    return (w1 // g, w2 // g)


def _edge_profile(fp: Polynomial, w: tuple[int, int]) -> list[Fraction]:
    """Coefficients of P with f(x) = x^kappa0 * P(x^w) on the face: exponents
    on an edge differ by integer multiples of the primitive edge direction w,
    so each term maps to a power of the single variable y = x^w."""
    support = fp.support()
    base = support[0]
    ms = []
    for kappa in support:
        diff = (kappa[0] - base[0], kappa[1] - base[1])
        if w[0] != 0:
            m, r = divmod(diff[0], w[0])
            if r or m * w[1] != diff[1]:
                raise ValueError("face exponents are not collinear along w")
        else:
            m, r = divmod(diff[1], w[1])
            if r or w[0] * m != diff[0]:
                raise ValueError("face exponents are not collinear along w")
        ms.append(m)
    low = min(ms)
    coeffs = [Fraction(0)] * (max(ms) - low + 1)
    for kappa, m in zip(support, ms):
        coeffs[m - low] = fp.coeff(kappa)
    return coeffs


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def _point_from_parameter(w: tuple[int, int], y) -> tuple:
    """Some x in (R*)^2 with x^w = y, for y != 0.  Rational y gives a
    rational point.  w is primitive, so exponents come from a Bezout pair."""
    g, a1, a2 = _ext_gcd(w[0], w[1])
    assert g == 1
    mag = abs(y) if isinstance(y, Fraction) else abs(float(y))
    coords = [mag**a1, mag**a2]
    if y > 0:
        sigma = (1, 1)
    elif w[0] % 2 != 0:
        sigma = (-1, 1)
    else:
        sigma = (1, -1)
    return (sigma[0] * coords[0], sigma[1] * coords[1])


def _witness_evidence(system: FaceSystem, w: tuple[int, int], g_poly) -> Evidence:
    """Materialize a witness from a real root of the univariate decision
    polynomial: rational roots give exact witnesses, otherwise isolate and
    refine."""
    exact_roots = rational_roots(g_poly)
    if exact_roots:
        y = exact_roots[0]
        x = _point_from_parameter(w, y)
        ok, info = check_witness(system, x)
        assert ok, "exact witness failed its own re-check"
        return Evidence(
            kind="Witness",
            witness=tuple(float(v) for v in x),
            witness_exact=tuple(str(v) for v in x),
            residual_norm=max(info["f_residuals"], default=0.0),
            minor_max=info["minor_max"],
        )
    intervals = isolate_real_roots(g_poly)
    assert intervals, "root count and isolation disagree"
    y = refine_root(g_poly, intervals[0], iterations=120)
    x = _point_from_parameter(w, y)
    ok, info = check_witness(system, x)
    if not ok:
        y = refine_root(g_poly, intervals[0], iterations=240)
        x = _point_from_parameter(w, y)
        ok, info = check_witness(system, x)
        if not ok:
            raise ArithmeticError("witness refinement failed to meet tolerance")
    return Evidence(
        kind="Witness",
        witness=tuple(float(v) for v in x),
        residual_norm=max(info["f_residuals"], default=0.0),
        minor_max=info["minor_max"],
    )


def exact_check_2d(system: FaceSystem) -> Evidence:
    """Exact emptiness decision in two variables.

    Vertex faces are monomials and never vanish on (R*)^2.  Edge-face
    polynomials factor as x^kappa0 * P(x^w) with w the primitive edge
    direction, and x -> x^w maps each sheet of (R*)^2 onto a half-line, so
    zeros in (R*)^2 correspond exactly to nonzero real roots of P (and P(0)
    != 0 by construction).  For one component the weighted Euler relation
    with d != 0 makes "zero with vanishing weighted gradient" equivalent to
    a repeated real root, i.e. a real root of gcd(P, P'); for two
    components the same relation forces the 2x2 rank drop at every common
    zero, i.e. a real root of gcd(P1, P2).
    """
    if system.num_vars != 2:
        raise ValueError("exact decisions are only available in two variables")
    if any(len(fp.terms) == 1 for fp in system.face_polys):
        return Evidence(
            kind="EmptyZeroSet",
            reason="a monomial face polynomial never vanishes on (R*)^2",
        )
    w = _perp(system.witness_q)
    profiles = [_edge_profile(fp, w) for fp in system.face_polys]
    if len(profiles) == 1:
        p_poly = profiles[0]
        repeated = gcd(p_poly, derivative(p_poly))
        if degree(repeated) >= 1 and count_real_roots(repeated) > 0:
            return _witness_evidence(system, w, repeated)
        if count_real_roots(p_poly) == 0:
            return Evidence(
                kind="EmptyZeroSet",
                reason="the reduced univariate polynomial has no real roots",
            )
        return Evidence(
            kind="FullRankEverywhere",
            reason="all real zeros of the reduced polynomial are simple",
        )
    if len(profiles) == 2:
        common = gcd(profiles[0], profiles[1])
        if degree(common) >= 1 and count_real_roots(common) > 0:
            return _witness_evidence(system, w, common)
        return Evidence(
            kind="EmptyZeroSet",
            reason="the face polynomials have no common zero in (R*)^2",
        )
    raise ValueError("two variables admit at most two components")


# -- witness search -----------------------------------------------------------


def _sign_uniform_on_all_sheets(fp: Polynomial) -> bool:
    """True when the terms of fp share a sign on every open orthant, so fp
    cannot vanish on (R*)^n.  Sound certificate; no false positives."""
    n = fp.num_vars
    terms = fp.terms
    for sigma in itertools.product((1, -1), repeat=n):
        first = None
        for kappa, coeff in terms:
            s = 1 if coeff > 0 else -1
            for sj, kj in zip(sigma, kappa):
                if sj < 0 and kj % 2 == 1:
                    s = -s
            if first is None:
                first = s
            elif s != first:
                break
        else:
            continue
        return False
    return True


def _term_magnitudes(system: FaceSystem, xf: Sequence[float]) -> list[float]:
    """Per component, the largest |c_kappa x^kappa| over the terms: the
    natural scale against which a residual counts as an actual zero."""
    out = []
    for fp in system.face_polys:
        best = 0.0
        for kappa, coeff in fp.terms:
            mag = abs(float(coeff))
            for v, k in zip(xf, kappa):
                if k:
                    mag *= abs(v) ** k
            best = max(best, mag)
        out.append(best)
    return out


def _boundary_explains(system: FaceSystem, x: Sequence[float]) -> bool:
    """True when zeroing every near-axis coordinate of x still leaves all
    face residuals at noise level: the candidate then approximates a zero
    on the orthant boundary, which is outside (R*)^n, not a witness."""
    biggest = max(abs(v) for v in x)
    cutoff = SMALL_COORD_FACTOR * (1.0 + biggest)
    small = {j for j, v in enumerate(x) if abs(v) < cutoff}
    if not small:
        return False
    y = [0.0 if j in small else float(v) for j, v in enumerate(x)]
    mags = _term_magnitudes(system, y)
    vals = [fp.evaluate_float(y) for fp in system.face_polys]
    return all(
        abs(v) <= REL_RESIDUAL_TOL * max(m, 1e-300)
        for v, m in zip(vals, mags)
    )


def witness_search(
    system: FaceSystem, attempts: int = 5000, seed: int = 0
) -> Optional[Evidence]:
    """Multi-start least-squares hunt for a degeneracy witness.

    Each sheet of (R*)^n is parametrized by x_j = sigma_j exp(s_j); the
    residual stacks the face polynomials with every p x p minor of the
    weighted Jacobian.  Accepted witnesses pass check_witness; rational
    snapping is attempted so clean witnesses come back exact.

    A candidate whose infimum is approached only toward the coordinate
    axes (or toward infinity) is not a zero of the system on (R*)^n even
    when its absolute residual is tiny, so float candidates must also sit
    away from the parametrization bounds, have residuals small relative
    to the largest term magnitude, and not be explained by a zero on the
    orthant boundary.
    """
    from scipy.optimize import least_squares

    n = system.num_vars
    p = len(system.face_polys)
    sheets = list(itertools.product((1.0, -1.0), repeat=n))
    grads = [
        [fp.partial(j + 1) for j in range(n)] for fp in system.face_polys
    ]
    combos = list(itertools.combinations(range(n), p))

    def residual(s: np.ndarray, sheet) -> np.ndarray:
        x = np.asarray(sheet) * np.exp(s)
        pt = [float(v) for v in x]
        vals = [fp.evaluate_float(pt) for fp in system.face_polys]
        jac = [
            [pt[j] * grads[i][j].evaluate_float(pt) for j in range(n)]
            for i in range(p)
        ]
        minors = [
            float(np.linalg.det(np.array([[jac[i][c] for c in cols] for i in range(p)])))
            for cols in combos
        ]
        return np.array(vals + minors)

    for k in range(attempts):
        sheet = sheets[k % len(sheets)]
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, k])))
        s0 = rng.uniform(-3.0, 3.0, n)
        try:
            result = least_squares(
                residual,
                s0,
                args=(sheet,),
                bounds=(-20.0, 20.0),
                xtol=1e-14,
                ftol=1e-14,
                gtol=1e-14,
                max_nfev=SEARCH_MAX_EVALS,
            )
        except Exception:
            continue
        x = tuple(float(v) for v in np.asarray(sheet) * np.exp(result.x))
        for bound in (1, 12, 10**6):
            xr = tuple(Fraction(v).limit_denominator(bound) for v in x)
            if any(v == 0 for v in xr):
                continue
            if all(fp.evaluate_exact(xr) == 0 for fp in system.face_polys) and all(
                m == 0 for m in _minors(system, xr)
            ):
                return Evidence(
                    kind="Witness",
                    witness=tuple(float(v) for v in xr),
                    witness_exact=tuple(str(v) for v in xr),
                    trials=k + 1,
                )
        if any(abs(v) >= LOG_COORD_BOUND for v in result.x):
            continue  # infimum at the axes or at infinity, not a zero
        mags = _term_magnitudes(system, x)
        vals = [fp.evaluate_float(list(x)) for fp in system.face_polys]
        if any(
            abs(v) > REL_RESIDUAL_TOL * m for v, m in zip(vals, mags)
        ) or any(m == 0.0 for m in mags):
            continue
        minor_scale = 1.0
        for fp, m in zip(system.face_polys, mags):
            minor_scale *= max(fp.total_degree(), 1) * m
        minors = [abs(float(v)) for v in _minors(system, x)]
        if max(minors, default=0.0) > REL_MINOR_TOL * minor_scale:
            continue
        if _boundary_explains(system, x):
            continue
        ok, info = check_witness(system, x)
        if ok:
            return Evidence(
                kind="Witness",
                witness=x,
                residual_norm=max(info["f_residuals"], default=0.0),
                minor_max=info["minor_max"],
                trials=k + 1,
            )
    return None


# -- checkers -----------------------------------------------------------------


def _decide_system(
    system: FaceSystem, mode: str, attempts: int, seed: int
) -> Evidence:
    if any(len(fp.terms) == 1 for fp in system.face_polys):
        return Evidence(
            kind="EmptyZeroSet",
            reason="a monomial face polynomial never vanishes on (R*)^n",
        )
    if any(_sign_uniform_on_all_sheets(fp) for fp in system.face_polys):
        return Evidence(
            kind="EmptyZeroSet",
            reason="a face polynomial has one sign on every open orthant",
        )
    if system.num_vars == 2 and mode != "search":
        return exact_check_2d(system)
    found = witness_search(system, attempts=attempts, seed=seed)
    if found is not None:
        return found
    return Evidence(kind="SearchExhausted", trials=attempts)


def _check_sub_mapping(
    F: PolynomialMapping,
    indices: Sequence[int],
    mode: str,
    attempts: int,
    seed: int,
    enum_mode: str,
    sample_budget: int,
) -> tuple[list[TupleEntry], bool]:
    gammas = [newton_polyhedron(F[i - 1]) for i in indices]
    enumeration = enumerate_negative_face_tuples(
        gammas, mode=enum_mode, sample_budget=sample_budget, seed=seed
    )
    entries = []
    for face_tuple in enumeration:
        system = face_system(F, indices, face_tuple)
        evidence = _decide_system(system, mode, attempts, seed)
        entries.append(TupleEntry(system=system, evidence=evidence))
    return entries, enumeration.complete


def _aggregate(entries: Sequence[TupleEntry], complete: bool, mode_label: str):
    verdict = "NonDegenerate"
    failing = None
    for entry in entries:
        if entry.evidence.kind == "Witness":
            verdict = "Degenerate"
            failing = entry.system.subset
            break
    if verdict != "Degenerate":
        undecided = any(e.evidence.kind == "SearchExhausted" for e in entries)
        if undecided or not complete:
            verdict = "Undecided"
    return NondegeneracyReport(
        verdict=verdict,
        mode=mode_label,
        entries=tuple(entries),
        complete=complete,
        failing_subset=failing,
    )


def _validate_args(F: PolynomialMapping, mode: str) -> str:
    if len(F) > F.num_vars:
        raise ValueError("the mapping has more components than variables")
    if mode not in ("auto", "exact", "search"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exact" and F.num_vars != 2:
        raise ValueError("exact decisions are only available in two variables")
    if F.num_vars == 2 and mode != "search":
        return "Exact2D"
    return "WitnessSearch"


def khovanskii_check(
    F: PolynomialMapping,
    mode: str = "auto",
    attempts: int = 5000,
    seed: int = 0,
    enum_mode: Optional[str] = None,
    sample_budget: int = 20000,
) -> NondegeneracyReport:
    """Face condition for the full tuple (f_1..f_p): every negative face
    tuple must have an empty degeneracy locus in (R*)^n."""
    mode_label = _validate_args(F, mode)
    if enum_mode is None:
        enum_mode = "auto" if F.num_vars <= 4 else "sampled"
    indices = list(range(1, len(F) + 1))
    entries, complete = _check_sub_mapping(
        F, indices, mode, attempts, seed, enum_mode, sample_budget
    )
    return _aggregate(entries, complete, mode_label)


def nondegenerate_at_infinity(
    F: PolynomialMapping,
    mode: str = "auto",
    attempts: int = 5000,
    seed: int = 0,
    enum_mode: Optional[str] = None,
    sample_budget: int = 20000,
) -> NondegeneracyReport:
    """Face condition over every nonempty sub-tuple of components."""
    mode_label = _validate_args(F, mode)
    if enum_mode is None:
        enum_mode = "auto" if F.num_vars <= 4 else "sampled"
    all_entries: list[TupleEntry] = []
    complete = True
    for size in range(1, len(F) + 1):
        for indices in itertools.combinations(range(1, len(F) + 1), size):
            entries, sub_complete = _check_sub_mapping(
                F, indices, mode, attempts, seed, enum_mode, sample_budget
            )
            all_entries.extend(entries)
            complete = complete and sub_complete
    return _aggregate(all_entries, complete, mode_label)
