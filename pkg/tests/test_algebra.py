import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import seeds
from twoproduct.algebra import (
    CompositionClass,
    antisymmetry_defect_alpha,
    associator,
    compatibility_defect,
    jacobi_defect,
    jordan_defect,
    leibniz_defect,
    symmetry_defect_sigma,
    unit_defects,
)
from twoproduct.matrix import MatrixAlgebra, pauli
from twoproduct.phase import PhaseAlgebra, PhasePoly
from twoproduct.scalar import ClassMismatchError, PairScalar
from twoproduct.tensor import TensorAlgebra


def algebras():
    """Every (class, representation) pair with a fast sampler."""
    return [
        MatrixAlgebra(CompositionClass(-1, 1), 2),
        MatrixAlgebra(CompositionClass(-1, Fraction(2, 3)), 3),
        MatrixAlgebra(CompositionClass(1, 1), 2),
        MatrixAlgebra(CompositionClass(1, Fraction(3, 2)), 3),
        PhaseAlgebra(CompositionClass(-1), 1),
        PhaseAlgebra(CompositionClass(-1, Fraction(1, 2)), 2, max_degree=3),
        PhaseAlgebra(CompositionClass(0), 2),
        PhaseAlgebra(CompositionClass(1), 1),
    ]


ALGEBRAS = algebras()
algebra_ids = [f"{a.representation}-{a.cls}" for a in ALGEBRAS]


def zero(alg, d):
    return all(alg.is_zero(x) for x in d) if isinstance(d, tuple) else alg.is_zero(d)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=algebra_ids)
@given(seed=seeds)
def test_every_identity_holds(alg, seed):
    rng = random.Random(seed)
    f, g, h = (alg.random_element(rng) for _ in range(3))
    for d in (
        leibniz_defect(alg, f, g, h, "alpha"),
        leibniz_defect(alg, f, g, h, "sigma"),
        jacobi_defect(alg, f, g, h),
        symmetry_defect_sigma(alg, f, g),
        antisymmetry_defect_alpha(alg, f, g),
        jordan_defect(alg, f, g),
        compatibility_defect(alg, f, g, h),
        associator(alg, "beta+", f, g, h),
        associator(alg, "beta-", f, g, h),
        unit_defects(alg, f),
    ):
        assert zero(alg, d)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=algebra_ids)
@given(seed=seeds)
def test_beta_signs_are_related_by_flipping_j(alg, seed):
    rng = random.Random(seed)
    f, g = alg.random_element(rng), alg.random_element(rng)
    sigma, alpha = alg.sigma(f, g), alg.alpha(f, g)
    assert alg.beta(f, g, 1) - sigma == -(alg.beta(f, g, -1) - sigma)
    if alg.cls.j_squared:
        assert alg.beta(f, g, 1) == sigma + alg.scale_j_hbar_half(alpha)
    else:
        assert alg.beta(f, g, 1) == alg.beta(f, g, -1) == sigma


@given(seed=seeds)
def test_composite_identities_hold(seed):
    alg = TensorAlgebra(MatrixAlgebra(CompositionClass(-1, 1), 2))
    rng = random.Random(seed)
    f, g, h = (alg.random_element(rng, max_summands=1) for _ in range(3))
    assert leibniz_defect(alg, f, g, h, "alpha").is_zero()
    assert compatibility_defect(alg, f, g, h).is_zero()
    assert jordan_defect(alg, f, g).is_zero()


def test_core_examples():
    m = MatrixAlgebra(CompositionClass(-1, 1), 2)
    sx, sy, _ = pauli(-1)
    assert m.alpha(sx, sx).is_zero()
    assert m.sigma(sx, sy).is_zero()
    assert m.alpha(m.unit(), sx).is_zero()
    assert m.sigma(m.unit(), sy) == sy

    par = PhaseAlgebra(CompositionClass(0), 1)
    q, p = PhasePoly.q(eps=0), PhasePoly.p(eps=0)
    assert par.alpha(q, p) == PhasePoly.constant(1, eps=0)
    assert par.sigma(q**2, p) == q**2 * p
    assert par.beta(q, p) == q * p
    assert associator(par, "sigma", q, p, q).is_zero()
    assert jordan_defect(par, q + p, q**2).is_zero()

    ell = PhaseAlgebra(CompositionClass(-1), 1)
    qe, pe = PhasePoly.q(), PhasePoly.p()
    expected = qe * pe + PhasePoly({(1,): PairScalar(0, Fraction(1, 2))}, 1)
    assert ell.beta(qe, pe, 1) == expected


@given(seed=seeds)
def test_compatibility_on_three_by_three(seed):
    m = MatrixAlgebra(CompositionClass(-1, 1), 3)
    rng = random.Random(seed)
    f, g, h = (m.random_element(rng) for _ in range(3))
    assert compatibility_defect(m, f, g, h).is_zero()


@given(seed=seeds)
def test_antisymmetry_defect_of_equal_arguments(seed):
    m = MatrixAlgebra(CompositionClass(1, 1), 2)
    f = m.random_element(random.Random(seed))
    assert antisymmetry_defect_alpha(m, f, f) == m.alpha(f, f).scale(2)
    assert antisymmetry_defect_alpha(m, f, f).is_zero()


@given(seed=seeds)
def test_leibniz_with_unit_first(seed):
    alg = PhaseAlgebra(CompositionClass(-1), 2)
    rng = random.Random(seed)
    g, h = alg.random_element(rng), alg.random_element(rng)
    assert leibniz_defect(alg, alg.unit(), g, h, "sigma").is_zero()
    assert leibniz_defect(alg, alg.unit(), g, h, "alpha").is_zero()


def test_product_selectors():
    alg = PhaseAlgebra(CompositionClass(0), 1)
    q, p = PhasePoly.q(eps=0), PhasePoly.p(eps=0)
    assert alg.product("alpha")(q, p) == alg.alpha(q, p)
    assert alg.product(lambda x, y: x)(q, p) == q
    with pytest.raises(ValueError):
        alg.product("gamma")


def test_broken_product_shows_nonzero_defect():
    # sigma replaced by the (non-commutative) operator product
    m = MatrixAlgebra(CompositionClass(-1, 1), 2)
    sx, sy, _ = pauli(-1)
    assoc = associator(m, lambda a, b: a @ b + b, sx, sy, sx)
    assert not assoc.is_zero()


def test_class_validation():
    with pytest.raises(ValueError):
        CompositionClass(2)
    with pytest.raises(ValueError):
        CompositionClass(-1, 0)
    with pytest.raises(ValueError):
        CompositionClass.named("circular")
    assert CompositionClass.named("hyperbolic", "3/2").hbar == Fraction(3, 2)
    assert CompositionClass(0).formal_hbar


def test_mixing_classes_is_rejected():
    alg = PhaseAlgebra(CompositionClass(-1), 1)
    with pytest.raises(ClassMismatchError):
        alg.alpha(PhasePoly.q(eps=1), PhasePoly.p(eps=1))
