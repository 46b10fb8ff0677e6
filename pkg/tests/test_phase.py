import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import eps_values, seeds
from twoproduct.algebra import CompositionClass, associator
from twoproduct.phase import (
    BidiffState,
    PhaseAlgebra,
    PhasePoly,
    bidiff_apply,
    bidiff_power,
    moyal_cosine,
    moyal_sine,
    poisson,
    random_poly,
    star,
)
from twoproduct.scalar import PairScalar

q, p, hbar = PhasePoly.q(), PhasePoly.p(), PhasePoly.hbar()
half = Fraction(1, 2)


def nabla_power_by_binomials(f, g, k):
    """Independent one-dof oracle: sum_j C(k,j) (-1)^j d_q^(k-j) d_p^j f * d_p^(k-j) d_q^j g."""
    total = PhasePoly.zero(1, f.eps)
    for j in range(k + 1):
        left, right = f, g
        for _ in range(k - j):
            left, right = left.d_q(), right.d_p()
        for _ in range(j):
            left, right = left.d_p(), right.d_q()
        total = total + (left * right).scale(comb(k, j) * (-1) ** j)
    return total


def test_bidiff_apply_examples():
    assert bidiff_apply(BidiffState.of(q, p)).collapse() == PhasePoly.constant(1)
    assert bidiff_apply(BidiffState.of(q, q)).is_zero()
    assert bidiff_apply(BidiffState.of(PhasePoly.constant(3), p)).is_zero()


def test_bidiff_power_examples():
    assert bidiff_power(q, p, 1) == PhasePoly.constant(1)
    assert bidiff_power(q**2, p**2, 2) == PhasePoly.constant(4)
    assert bidiff_power(q, p, 0) == q * p


@given(eps_values, seeds, st.integers(min_value=0, max_value=6))
def test_bidiff_power_matches_binomial_oracle(eps, seed, k):
    rng = random.Random(seed)
    f, g = random_poly(rng, 1, eps), random_poly(rng, 1, eps)
    assert bidiff_power(f, g, k) == nabla_power_by_binomials(f, g, k)


@given(seeds, st.integers(min_value=1, max_value=2))
def test_bidiff_power_vanishes_beyond_min_degree(seed, n):
    rng = random.Random(seed)
    f, g = random_poly(rng, n, -1), random_poly(rng, n, -1)
    k = min(f.total_degree(), g.total_degree()) + 1
    assert bidiff_power(f, g, k).is_zero()


def test_poisson_examples():
    assert poisson(q, p) == PhasePoly.constant(1)
    assert poisson(q**2, p**2) == (q * p).scale(4)
    f = q**3 * p + p
    assert poisson(f, f).is_zero()


@given(seeds)
def test_poisson_is_skew(seed):
    rng = random.Random(seed)
    f, g = random_poly(rng, 2, 0), random_poly(rng, 2, 0)
    assert poisson(f, g) == -poisson(g, f)


def test_moyal_sine_examples():
    assert moyal_sine(q, p) == PhasePoly.constant(1)
    assert moyal_sine(q**2, p**2) == (q * p).scale(4)
    assert moyal_sine(q**3, p**3) == (q * q * p * p).scale(9) - (hbar * hbar).scale(Fraction(3, 2))


def test_moyal_cosine_examples():
    assert moyal_cosine(q, p) == q * p
    assert moyal_cosine(q**2, p**2) == q * q * p * p - (hbar * hbar).scale(half)
    f = q**2 * p - p**3
    assert moyal_cosine(PhasePoly.constant(1), f) == f


def test_star_examples():
    J = PairScalar.unit(-1)
    assert star(q, p, sign=1) == q * p + hbar.scale(J * half)
    assert star(q, p, sign=1) - star(p, q, sign=1) == hbar.scale(J)
    f = q**3 - q * p
    assert star(PhasePoly.constant(1), f) == f


@given(eps_values, seeds)
def test_classical_limit(eps, seed):
    rng = random.Random(seed)
    f, g = random_poly(rng, 1, eps), random_poly(rng, 1, eps)
    assert moyal_sine(f, g, eps).hbar_coefficient(0) == poisson(f, g)
    assert moyal_cosine(f, g, eps).hbar_coefficient(0) == f * g


@given(eps_values, seeds, st.sampled_from((1, -1)))
def test_star_splits_into_cosine_and_sine(eps, seed, sign):
    rng = random.Random(seed)
    f, g = random_poly(rng, 2, eps), random_poly(rng, 2, eps)
    j_hbar_half = PhasePoly({(1,): PairScalar(0, Fraction(sign, 2), eps)}, 2, eps)
    assert star(f, g, eps, sign) == moyal_cosine(f, g, eps) + j_hbar_half * moyal_sine(f, g, eps)


@given(eps_values, seeds, st.sampled_from((1, -1)))
def test_star_is_associative(eps, seed, sign):
    alg = PhaseAlgebra(CompositionClass(eps), 1, max_degree=3, max_terms=3)
    rng = random.Random(seed)
    f, g, h = (alg.random_element(rng) for _ in range(3))
    prod = lambda x, y: alg.star(x, y, sign)
    assert associator(alg, prod, f, g, h).is_zero()


@given(seeds)
def test_sine_and_cosine_symmetry(seed):
    rng = random.Random(seed)
    f, g = random_poly(rng, 2, 1), random_poly(rng, 2, 1)
    assert moyal_sine(f, g, 1) == -moyal_sine(g, f, 1)
    assert moyal_cosine(f, g, 1) == moyal_cosine(g, f, 1)


def test_numeric_hbar_is_substituted():
    alg = PhaseAlgebra(CompositionClass(-1, 2), 1)
    assert alg.sigma(q**2, p**2) == q * q * p * p - PhasePoly.constant(2)
    assert alg.alpha(q**3, p**3) == (q * q * p * p).scale(9) - PhasePoly.constant(6)


def test_parabolic_products_are_poisson_and_pointwise():
    alg = PhaseAlgebra(CompositionClass(0), 1)
    q0, p0 = PhasePoly.q(eps=0), PhasePoly.p(eps=0)
    assert alg.alpha(q0, p0) == PhasePoly.constant(1, eps=0)
    assert alg.sigma(q0**2, p0) == q0**2 * p0


def test_polynomial_basics():
    x = q**2 * p + hbar
    assert x.total_degree() == 3
    assert x.hbar_degree() == 1
    assert x.d_q() == (q * p).scale(2)
    assert x.substitute_hbar(Fraction(1, 3)) == q**2 * p + PhasePoly.constant(Fraction(1, 3))
    assert PhasePoly.q(1, 1) == PhasePoly.q(1, 2)
    assert (PhasePoly.q(2) * p).n == 2
    with pytest.raises(ValueError):
        bidiff_power(q, p, -1)


def test_random_poly_degree_bound():
    rng = random.Random(3)
    for _ in range(50):
        assert random_poly(rng, 2, -1, max_degree=4).total_degree() <= 4
