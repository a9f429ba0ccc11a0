"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in variables x1..xN is a finite map from exponent vectors
(length-N tuples of nonnegative ints) to nonzero Fractions. The
representation is canonical: terms are stored sorted in descending
lexicographic order of the exponent vector, zero coefficients are dropped,
so structural equality is mathematical equality. Exact evaluation,
differentiation and the support/face operations used by the polyhedral
layer all live here; floating evaluation (single point and numpy batch)
is provided for the numeric estimators.

Text grammar (variables are x1..xN, no implicit multiplication):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' integer]
    atom   := variable | number | '(' expr ')'
    number := digits ['/' digits]
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]

# Exponents are kept far below this bound; the parser enforces it so that
# downstream integer arithmetic (lattice maps, batch powers) cannot be fed
# degenerate giant exponents.
MAX_EXPONENT = 2**31


class PolynomialError(ValueError):
    pass


class ParseError(PolynomialError):
    """Syntax error with the offending position in the input text."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (at position {pos}: {text[pos:pos + 12]!r})")


def _canonical_terms(
    num_vars: int, coeffs: Mapping[Exponent, Fraction]
) -> tuple[tuple[Exponent, Fraction], ...]:
    items = []
    for exp, c in coeffs.items():
        c = Fraction(c)
        if c == 0:
            continue
        exp = tuple(int(e) for e in exp)
        if len(exp) != num_vars:
            raise PolynomialError(
                f"exponent {exp} has length {len(exp)}, expected {num_vars}"
            )
        if any(e < 0 for e in exp):
            raise PolynomialError(f"negative exponent in {exp}")
        if any(e >= MAX_EXPONENT for e in exp):
            raise PolynomialError(f"exponent too large in {exp}")
        items.append((exp, c))
    items.sort(key=lambda t: t[0], reverse=True)
    return tuple(items)


@dataclass(frozen=True)
class Polynomial:
    """Immutable sparse polynomial over Q."""

    num_vars: int
    terms: tuple[tuple[Exponent, Fraction], ...]

    @staticmethod
    def from_dict(num_vars: int, coeffs: Mapping[Exponent, Fraction]) -> "Polynomial":
        if num_vars < 1:
            raise PolynomialError("num_vars must be >= 1")
        return Polynomial(num_vars, _canonical_terms(num_vars, coeffs))

    @staticmethod
    def zero(num_vars: int) -> "Polynomial":
        return Polynomial.from_dict(num_vars, {})

    @staticmethod
    def constant(num_vars: int, value: Fraction | int) -> "Polynomial":
        return Polynomial.from_dict(num_vars, {(0,) * num_vars: Fraction(value)})

    @staticmethod
    def variable(num_vars: int, index: int) -> "Polynomial":
        """x_index, 1-based."""
        if not 1 <= index <= num_vars:
            raise PolynomialError(f"variable index {index} out of range 1..{num_vars}")
        exp = tuple(1 if j == index - 1 else 0 for j in range(num_vars))
        return Polynomial.from_dict(num_vars, {exp: Fraction(1)})

    # -- structure ---------------------------------------------------------

    def coeff(self, exp: Exponent) -> Fraction:
        for e, c in self.terms:
            if e == exp:
                return c
        return Fraction(0)

    def support(self) -> tuple[Exponent, ...]:
        return tuple(e for e, _ in self.terms)

    def as_dict(self) -> dict[Exponent, Fraction]:
        return {e: c for e, c in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def max_degree(self, var: int) -> int:
        """Largest exponent of x_var (1-based) appearing in any term."""
        return max((e[var - 1] for e, _ in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def _require_same_vars(self, other: "Polynomial") -> None:
        if self.num_vars != other.num_vars:
            raise PolynomialError("mixed variable counts")

    def __add__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.num_vars, other)
        self._require_same_vars(other)
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial.from_dict(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.num_vars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.num_vars, other)
        return self + (-other)

    def __rsub__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(
                self.num_vars,
                _canonical_terms(
                    self.num_vars,
                    {e: c * Fraction(other) for e, c in self.terms},
                ),
            )
        self._require_same_vars(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial.from_dict(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise PolynomialError("negative power")
        result = Polynomial.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus ----------------------------------------------------------

    def partial(self, var: int) -> "Polynomial":
        """d/dx_var, 1-based index."""
        if not 1 <= var <= self.num_vars:
            raise PolynomialError(f"variable index {var} out of range")
        j = var - 1
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms:
            if e[j] == 0:
                continue
            new = list(e)
            new[j] -= 1
            out[tuple(new)] = c * e[j]
        return Polynomial.from_dict(self.num_vars, out)

    def gradient(self) -> "PolynomialMapping":
        return PolynomialMapping(
            tuple(self.partial(j) for j in range(1, self.num_vars + 1))
        )

    # -- evaluation --------------------------------------------------------

    def evaluate_exact(self, point: Sequence[Fraction | int]) -> Fraction:
        if len(point) != self.num_vars:
            raise PolynomialError("point dimension mismatch")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v**k
            total += term
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        """Compensated (Kahan) float evaluation; overflow yields +-inf."""
        if len(point) != self.num_vars:
            raise PolynomialError("point dimension mismatch")
        pt = [float(v) for v in point]
        total = 0.0
        comp = 0.0
        for e, c in self.terms:
            try:
                term = float(c)
                for v, k in zip(pt, e):
                    if k:
                        term *= v**k
            except OverflowError:
                sign = 1.0 if c > 0 else -1.0
                for v, k in zip(pt, e):
                    if k % 2 and v < 0:
                        sign = -sign
                term = math.inf * sign
            if math.isinf(term):
                total += term
                continue
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        return total

    def evaluate_float_batch(self, points: np.ndarray) -> np.ndarray:
        """Vectorized evaluation of an (m, n) sample array; overflow -> inf."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.num_vars:
            raise PolynomialError("expected an (m, n) array")
        out = np.zeros(pts.shape[0])
        with np.errstate(over="ignore", invalid="ignore"):
            powers: dict[tuple[int, int], np.ndarray] = {}
            for e, c in self.terms:
                term = np.full(pts.shape[0], float(c))
                for j, k in enumerate(e):
                    if k:
                        key = (j, k)
                        if key not in powers:
                            powers[key] = pts[:, j] ** k
                        term = term * powers[key]
                out += term
        return out

    # -- text and JSON forms -------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for i, (e, c) in enumerate(self.terms):
            mag = abs(c)
            vars_part = "*".join(
                f"x{j + 1}^{k}" if k > 1 else f"x{j + 1}"
                for j, k in enumerate(e)
                if k > 0
            )
            if not vars_part:
                body = str(mag)
            elif mag == 1:
                body = vars_part
            else:
                body = f"{mag}*{vars_part}"
            if i == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def to_json(self) -> dict:
        return {
            "n": self.num_vars,
            "terms": [{"c": str(c), "e": list(e)} for e, c in self.terms],
        }

    @staticmethod
    def from_json(data: Mapping) -> "Polynomial":
        try:
            n = int(data["n"])
            coeffs = {
                tuple(int(v) for v in t["e"]): Fraction(t["c"]) for t in data["terms"]
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise PolynomialError(f"malformed polynomial JSON: {exc}") from exc
        out: dict[Exponent, Fraction] = {}
        for e, c in coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial.from_dict(n, out)


@dataclass(frozen=True)
class PolynomialMapping:
    """Tuple F = (f_1, ..., f_p) of polynomials in common variables.

    p > n is allowed here (monomial reductions can land there); the
    non-degeneracy checks reject it where it actually matters."""

    components: tuple[Polynomial, ...]

    def __post_init__(self):
        if not self.components:
            raise PolynomialError("mapping needs at least one component")
        n = self.components[0].num_vars
        if any(f.num_vars != n for f in self.components):
            raise PolynomialError("components disagree on variable count")

    @property
    def num_vars(self) -> int:
        return self.components[0].num_vars

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def evaluate_exact(self, point: Sequence[Fraction | int]) -> list[Fraction]:
        return [f.evaluate_exact(point) for f in self.components]

    def evaluate_float(self, point: Sequence[float]) -> list[float]:
        return [f.evaluate_float(point) for f in self.components]

    def to_json(self) -> dict:
        return {"components": [f.to_json() for f in self.components]}

    @staticmethod
    def from_json(data: Mapping) -> "PolynomialMapping":
        comps = data.get("components")
        if not isinstance(comps, list) or not comps:
            raise PolynomialError("mapping JSON needs a nonempty components list")
        return PolynomialMapping(tuple(Polynomial.from_json(c) for c in comps))


# -- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, num_vars: int):
        self.text = text
        self.num_vars = num_vars
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def read_digits(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected digits")
        return int(self.text[start : self.pos])

    def parse_number(self) -> Fraction:
        num = self.read_digits()
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            self.pos += 1
            den = self.read_digits()
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def parse_atom(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            inner = self.parse_expr()
            self.take(")")
            return inner
        if ch == "x":
            self.pos += 1
            idx = self.read_digits()
            if not 1 <= idx <= self.num_vars:
                self.pos -= len(str(idx))
                raise self.error(
                    f"variable x{idx} out of range for {self.num_vars} variables"
                )
            return Polynomial.variable(self.num_vars, idx)
        if ch.isdigit():
            return Polynomial.constant(self.num_vars, self.parse_number())
        raise self.error("expected a variable, number or parenthesized expression")

    def parse_factor(self) -> Polynomial:
        base = self.parse_atom()
        if self.peek() == "^":
            self.take("^")
            if self.peek() == "-":
                raise self.error("negative exponents are not allowed")
            exp = self.read_digits()
            if exp >= MAX_EXPONENT:
                raise self.error(f"exponent exceeds {MAX_EXPONENT}")
            return base**exp
        return base

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek() == "*":
            self.take("*")
            result = result * self.parse_factor()
        return result

    def parse_expr(self) -> Polynomial:
        negate = False
        if self.peek() == "-":
            self.take("-")
            negate = True
        result = self.parse_term()
        if negate:
            result = -result
        while True:
            ch = self.peek()
            if ch == "+":
                self.take("+")
                result = result + self.parse_term()
            elif ch == "-":
                self.take("-")
                result = result - self.parse_term()
            else:
                return result

    def parse(self) -> Polynomial:
        result = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return result


def parse_polynomial(text: str, num_vars: int) -> Polynomial:
    """Parse the text grammar in the module docstring into a Polynomial.

    Eagerly expands products and powers, so the result is in canonical
    expanded form. Raises ParseError with a position on bad input.
    """
    if num_vars < 1:
        raise PolynomialError("num_vars must be >= 1")
    return _Parser(text, num_vars).parse()


# -- spec-level free functions ------------------------------------------------


def evaluate_exact(f: Polynomial, point: Sequence[Fraction | int]) -> Fraction:
    return f.evaluate_exact(point)


def evaluate_float(f: Polynomial, point: Sequence[float]) -> float:
    return f.evaluate_float(point)


def gradient(f: Polynomial) -> PolynomialMapping:
    return f.gradient()


def face_part(f: Polynomial, face) -> Polynomial:
    """Terms of f whose exponents lie on the given polyhedral face.

    The face (from the polyhedra module) carries a witness covector q and
    value d; a term kappa survives iff <q, kappa> == d. Raises if the face
    is not a face of the Newton polyhedron of f, detected as min over
    supp(f) of <q, .> differing from d.
    """
    q = face.witness_q
    d = face.d
    if f.is_zero():
        raise PolynomialError("zero polynomial has no Newton polyhedron")
    if len(q) != f.num_vars:
        raise PolynomialError("face lives in a different ambient dimension")
    values = [sum(qi * ki for qi, ki in zip(q, e)) for e, _ in f.terms]
    if min(values) != d:
        raise PolynomialError("face is not a face of the Newton polyhedron of f")
    kept = {e: c for (e, c), v in zip(f.terms, values) if v == d}
    return Polynomial.from_dict(f.num_vars, kept)


def restrict_to_axes(f: Polynomial, axes: Iterable[int]) -> Polynomial:
    """Restriction to the coordinate subspace spanned by the 1-based axes:
    terms with any exponent outside the subspace are dropped. The result
    keeps the ambient variable count."""
    axis_set = set(axes)
    if not axis_set:
        raise PolynomialError("axis set must be nonempty")
    if not axis_set <= set(range(1, f.num_vars + 1)):
        raise PolynomialError("axis index out of range")
    outside = [j for j in range(f.num_vars) if (j + 1) not in axis_set]
    kept = {e: c for e, c in f.terms if all(e[j] == 0 for j in outside)}
    return Polynomial.from_dict(f.num_vars, kept)


def euler_residual(
    f_face: Polynomial, q: Sequence[int | Fraction], d: Fraction | int
) -> Polynomial:
    """sum_j q_j x_j df/dx_j - d*f, exactly.

    Zero whenever f_face is weighted-homogeneous of type (q, d), which is
    what face polynomials are; per-term the coefficient is (<q,kappa> - d).
    """
    if len(q) != f_face.num_vars:
        raise PolynomialError("weight vector dimension mismatch")
    d = Fraction(d)
    out = {
        e: c * (sum(Fraction(qi) * ki for qi, ki in zip(q, e)) - d)
        for e, c in f_face.terms
    }
    return Polynomial.from_dict(f_face.num_vars, out)
