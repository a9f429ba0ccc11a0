"""Monte-Carlo experiments over coefficient space.

Fix the supports Z_i and draw coefficients at random: non-degeneracy at
infinity should hold for essentially every draw, and should survive small
jitters of a mapping that already has it.  Supports never change inside an
experiment, so the polyhedral side (hulls and negative face tuples) is
computed once and reused across trials; only the exact per-tuple decisions
are re-run with the fresh coefficients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .nondegeneracy import (
    _decide_system,
    face_system,
    nondegenerate_at_infinity,
)
from .polyhedra import enumerate_negative_face_tuples, newton_polyhedron
from .polynomials import Polynomial, PolynomialMapping

MIN_COEFF = 1e-3

Sampler = Callable[[np.random.Generator], float]


@dataclass(frozen=True)
class GenericityStats:
    """Tally of one experiment: how many random coefficient draws on the
    fixed supports were non-degenerate, with every degenerate draw saved
    (and re-verified) for inspection."""

    supports: tuple[tuple[tuple[int, ...], ...], ...]
    trials: int
    nondegenerate_count: int
    degenerate_count: int
    undecided_count: int
    degenerate_instances: tuple[tuple[tuple[str, ...], ...], ...]
    redraw_count: int
    seed: int

    def __post_init__(self):
        total = (
            self.nondegenerate_count
            + self.degenerate_count
            + self.undecided_count
        )
        if total != self.trials:
            raise ValueError("trial counts do not sum to the trial total")
        if len(self.degenerate_instances) != self.degenerate_count:
            raise ValueError("saved instances disagree with the degenerate count")

    @property
    def fraction_nondegenerate(self) -> float:
        return (
            self.nondegenerate_count / self.trials if self.trials else float("nan")
        )

    def to_json(self) -> dict:
        return {
            "supports": [[list(k) for k in z] for z in self.supports],
            "trials": self.trials,
            "nondegenerate": self.nondegenerate_count,
            "degenerate": self.degenerate_count,
            "undecided": self.undecided_count,
            "degenerate_instances": [
                [list(comp) for comp in inst] for inst in self.degenerate_instances
            ],
            "redraws": self.redraw_count,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class OpennessResult:
    passed: int
    trials: int
    redraws: int
    epsilon: float

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "trials": self.trials,
            "redraws": self.redraws,
            "epsilon": self.epsilon,
        }


def _normalize_supports(
    supports: Sequence[Sequence[Sequence[int]]],
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    if not supports:
        raise ValueError("need at least one support")
    out = []
    n = None
    for z in supports:
        pts = sorted({tuple(int(v) for v in kappa) for kappa in z})
        if not pts:
            raise ValueError("supports must be nonempty")
        if n is None:
            n = len(pts[0])
        if any(len(kappa) != n for kappa in pts):
            raise ValueError("support points have mixed dimensions")
        if any(v < 0 for kappa in pts for v in kappa):
            raise ValueError("support points must be nonnegative")
        out.append(tuple(pts))
    return tuple(out)


def _default_sampler(rng: np.random.Generator) -> float:
    return float(rng.uniform(-1.0, 1.0))


class _TuplePlan:
    """The support-only part of the checker, shared by every trial."""

    def __init__(self, supports):
        self.supports = supports
        gammas = [newton_polyhedron(list(z)) for z in supports]
        p = len(supports)
        self.complete = True
        self.checks = []
        for size in range(1, p + 1):
            for indices in itertools.combinations(range(1, p + 1), size):
                enumeration = enumerate_negative_face_tuples(
                    [gammas[i - 1] for i in indices]
                )
                self.complete = self.complete and enumeration.complete
                for face_tuple in enumeration:
                    self.checks.append((indices, face_tuple))

    def verdict(self, F: PolynomialMapping, mode: str, attempts: int, seed: int):
        undecided = not self.complete
        for indices, face_tuple in self.checks:
            system = face_system(F, indices, face_tuple)
            evidence = _decide_system(system, mode, attempts, seed)
            if evidence.kind == "Witness":
                return "Degenerate"
            if evidence.kind == "SearchExhausted":
                undecided = True
        return "Undecided" if undecided else "NonDegenerate"


def _draw_coefficient(
    rng: np.random.Generator, sampler: Sampler
) -> tuple[Fraction, int]:
    """One coefficient with |c| >= MIN_COEFF, counting rejected draws that
    would have killed a support point (and so changed the polyhedron)."""
    redraws = 0
    while True:
        value = sampler(rng)
        if abs(value) >= MIN_COEFF:
            return Fraction(value), redraws
        redraws += 1
        if redraws > 10000:
            raise RuntimeError("sampler cannot produce usable coefficients")


def genericity_trial(
    supports: Sequence[Sequence[Sequence[int]]],
    sampler: Optional[Sampler] = None,
    trials: int = 100,
    seed: int = 0,
    mode: str = "auto",
    attempts: int = 2000,
) -> GenericityStats:
    """Draw `trials` coefficient vectors on the fixed supports and count
    non-degeneracy verdicts.  Trial k uses the generator seeded seed^k, so
    trials are independent and order-insensitive; coefficients are carried
    into exact arithmetic unchanged.  Every degenerate draw is saved and
    re-verified through the public checker before it is reported.
    """
    supports = _normalize_supports(supports)
    if sampler is None:
        sampler = _default_sampler
    plan = _TuplePlan(supports)
    nondeg = deg = undec = redraws = 0
    saved = []
    for trial in range(trials):
        rng = np.random.Generator(np.random.PCG64(seed ^ trial))
        coeff_rows = []
        components = []
        for z in supports:
            coeffs = {}
            for kappa in z:
                value, r = _draw_coefficient(rng, sampler)
                redraws += r
                coeffs[kappa] = value
            coeff_rows.append(tuple(str(coeffs[k]) for k in z))
            components.append(Polynomial.from_dict(len(z[0]), coeffs))
        F = PolynomialMapping(tuple(components))
        verdict = plan.verdict(F, mode, attempts, seed ^ trial)
        if verdict == "NonDegenerate":
            nondeg += 1
        elif verdict == "Degenerate":
            deg += 1
            replay = nondegenerate_at_infinity(F, mode=mode, attempts=attempts)
            assert replay.verdict == "Degenerate", (
                "fast path and public checker disagree on a degenerate draw"
            )
            saved.append(tuple(coeff_rows))
        else:
            undec += 1
    return GenericityStats(
        supports=supports,
        trials=trials,
        nondegenerate_count=nondeg,
        degenerate_count=deg,
        undecided_count=undec,
        degenerate_instances=tuple(saved),
        redraw_count=redraws,
        seed=seed,
    )


def openness_probe(
    F: PolynomialMapping,
    epsilon: float,
    trials: int = 100,
    seed: int = 0,
    mode: str = "auto",
    attempts: int = 2000,
) -> OpennessResult:
    """Jitter every coefficient of a non-degenerate mapping by uniform
    +-epsilon and count how many perturbed mappings stay non-degenerate.
    Supports are preserved: a jitter that would zero out a coefficient
    (erasing a support point) is redrawn and the redraw reported."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    base = nondegenerate_at_infinity(F, mode=mode, attempts=attempts)
    if base.verdict != "NonDegenerate":
        raise ValueError("openness probes require a non-degenerate input mapping")
    supports = _normalize_supports([f.support() for f in F])
    plan = _TuplePlan(supports)
    passed = redraws = 0
    for trial in range(trials):
        rng = np.random.Generator(np.random.PCG64(seed ^ trial))
        components = []
        for f, z in zip(F, supports):
            coeffs = {}
            for kappa in z:
                base_c = f.coeff(kappa)
                while True:
                    jitter = Fraction(float(rng.uniform(-epsilon, epsilon)))
                    value = base_c + jitter
                    if value != 0 and abs(float(value)) >= 1e-12:
                        break
                    redraws += 1
                coeffs[kappa] = value
            components.append(Polynomial.from_dict(len(z[0]), coeffs))
        G = PolynomialMapping(tuple(components))
        if plan.verdict(G, mode, attempts, seed ^ trial) == "NonDegenerate":
            passed += 1
    return OpennessResult(
        passed=passed, trials=trials, redraws=redraws, epsilon=epsilon
    )
