"""Genericity experiments: random coefficients on fixed supports are
non-degenerate almost always, and non-degeneracy survives small jitters."""

import itertools

import pytest

from polyloj import (
    PolynomialMapping,
    genericity_trial,
    nondegenerate_at_infinity,
    openness_probe,
    parse_polynomial,
)
from polyloj.polynomials import Polynomial


def cycling_sampler(values):
    """Deterministic sampler that replays a pinned coefficient list."""
    state = itertools.cycle(values)

    def draw(rng):
        return next(state)

    return draw


SUPPORT_SQUARE = [[(2, 0), (1, 1), (0, 2)]]


def test_pinned_coefficients_degenerate():
    # (1, -2, 1) on {(2,0),(1,1),(0,2)} assembles (x1 - x2)^2.
    stats = genericity_trial(
        SUPPORT_SQUARE, sampler=cycling_sampler([1.0, -2.0, 1.0]), trials=1
    )
    assert stats.degenerate_count == 1
    assert stats.nondegenerate_count == 0
    assert len(stats.degenerate_instances) == 1
    (coeffs,) = stats.degenerate_instances
    assert coeffs == (("1", "-2", "1"),)


def test_degenerate_instances_replay_through_public_checker():
    stats = genericity_trial(
        SUPPORT_SQUARE, sampler=cycling_sampler([1.0, -2.0, 1.0]), trials=2
    )
    for instance in stats.degenerate_instances:
        comps = []
        for support, row in zip(stats.supports, instance):
            from fractions import Fraction

            coeffs = {k: Fraction(c) for k, c in zip(support, row)}
            comps.append(Polynomial.from_dict(len(support[0]), coeffs))
        replay = nondegenerate_at_infinity(PolynomialMapping(tuple(comps)))
        assert replay.verdict == "Degenerate"


def test_random_coefficients_on_reference_supports():
    supports = [[(2, 0), (0, 4)], [(2, 0), (0, 2)]]
    stats = genericity_trial(supports, trials=100, seed=0)
    assert stats.trials == 100
    assert (
        stats.nondegenerate_count
        + stats.degenerate_count
        + stats.undecided_count
        == 100
    )
    assert stats.nondegenerate_count >= 99
    assert stats.undecided_count == 0


def test_trials_are_deterministic_per_seed():
    a = genericity_trial(SUPPORT_SQUARE, trials=25, seed=11)
    b = genericity_trial(SUPPORT_SQUARE, trials=25, seed=11)
    assert a.to_json() == b.to_json()
    c = genericity_trial(SUPPORT_SQUARE, trials=25, seed=12)
    assert a.seed != c.seed


def test_supports_validation():
    with pytest.raises(ValueError):
        genericity_trial([], trials=1)
    with pytest.raises(ValueError):
        genericity_trial([[]], trials=1)
    with pytest.raises(ValueError):
        genericity_trial([[(0, 1), (1,)]], trials=1)
    with pytest.raises(ValueError):
        genericity_trial([[(-1, 0)]], trials=1)


def test_openness_probe_reference_pair():
    F = PolynomialMapping(
        (
            parse_polynomial("x1^2 + x2^4", 2),
            parse_polynomial("x1^2 + x2^2", 2),
        )
    )
    result = openness_probe(F, epsilon=1e-6, trials=100, seed=0)
    assert result.passed == 100
    assert result.trials == 100


def test_openness_probe_requires_nondegenerate_input():
    F = PolynomialMapping((parse_polynomial("(x1 - x2)^2", 2),))
    with pytest.raises(ValueError, match="non-degenerate"):
        openness_probe(F, epsilon=1e-6, trials=5)


def test_openness_probe_requires_positive_epsilon():
    F = PolynomialMapping((parse_polynomial("x1^2 + x2^2", 2),))
    with pytest.raises(ValueError, match="epsilon"):
        openness_probe(F, epsilon=0.0, trials=5)
