import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import nonparabolic_eps, seeds
from twoproduct.algebra import CompositionClass, leibniz_defect
from twoproduct.matrix import MatrixAlgebra, SquareMatrix, kron, pauli
from twoproduct.phase import PhaseAlgebra, PhasePoly
from twoproduct.scalar import ClassMismatchError, PairScalar
from twoproduct.tensor import (
    CoproductTable,
    TensorAlgebra,
    TensorElement,
    UnknownCoefficientError,
    canonical_table,
    compose_alpha,
    compose_sigma,
    kronecker_flatten,
)


def test_canonical_table_values():
    t = canonical_table(CompositionClass(-1, 1))
    assert (t.a11, t.a12, t.a21, t.a22) == (0, 1, 1, 0)
    assert (t.b11, t.b12, t.b21, t.b22) == (Fraction(-1, 4), 0, 0, 1)
    assert canonical_table(CompositionClass(0)).b11 == 0
    assert canonical_table(CompositionClass(0, 3)).b11 == 0
    assert canonical_table(CompositionClass(1, 2)).b11 == 1
    formal = canonical_table(CompositionClass(-1)).b11
    assert formal == PhasePoly.hbar() * PhasePoly.hbar() * Fraction(-1, 4)


def test_incomplete_table_is_rejected():
    with pytest.raises(UnknownCoefficientError):
        TensorAlgebra(PhaseAlgebra(CompositionClass(-1)), table=CoproductTable(a11=0))
    assert CoproductTable(a11=0).unknowns() == ["a12", "a21", "a22", "b11", "b12", "b21", "b22"]


@pytest.mark.parametrize(
    "base",
    [MatrixAlgebra(CompositionClass(-1, 1), 2), MatrixAlgebra(CompositionClass(1, 1), 2),
     PhaseAlgebra(CompositionClass(-1), 1), PhaseAlgebra(CompositionClass(0), 1)],
    ids=lambda a: f"{a.representation}-{a.cls}",
)
@given(seed=seeds)
def test_unit_slot_reductions(base, seed):
    comp = TensorAlgebra(base)
    rng = random.Random(seed)
    f, g = base.random_element(rng), base.random_element(rng)
    one = base.unit()
    assert comp.alpha(comp.pure(one, f), comp.pure(one, g)) == comp.pure(one, base.alpha(f, g))
    assert comp.alpha(comp.pure(f, one), comp.pure(g, one)) == comp.pure(base.alpha(f, g), one)
    assert comp.sigma(comp.pure(one, f), comp.pure(one, g)) == comp.pure(one, base.sigma(f, g))
    F = comp.pure(f, g)
    assert comp.alpha(F, F).is_zero()
    assert comp.sigma(comp.unit(), F) == F


def kron_equivalence_holds(eps, dim, seed, hbar=Fraction(1)):
    cls = CompositionClass(eps, hbar)
    base = MatrixAlgebra(cls, dim)
    big = MatrixAlgebra(cls, dim * dim)
    table = canonical_table(cls)
    rng = random.Random(seed)
    F = TensorElement.pure(base.random_element(rng), base.random_element(rng))
    G = TensorElement.pure(base.random_element(rng), base.random_element(rng))
    kF, kG = kronecker_flatten(F), kronecker_flatten(G)
    return (
        kronecker_flatten(compose_alpha(table, F, G, base)) == big.alpha(kF, kG)
        and kronecker_flatten(compose_sigma(table, F, G, base)) == big.sigma(kF, kG)
    )


@given(nonparabolic_eps, st.sampled_from((2, 3)), seeds,
       st.sampled_from((Fraction(1), Fraction(1, 2), Fraction(7, 3))))
def test_kronecker_equivalence(eps, dim, seed, hbar):
    assert kron_equivalence_holds(eps, dim, seed, hbar)


@given(seeds)
def test_wrong_b11_breaks_kronecker_equivalence(seed):
    cls = CompositionClass(-1, 1)
    base = MatrixAlgebra(cls, 2)
    big = MatrixAlgebra(cls, 4)
    table = canonical_table(cls).with_values(b11=Fraction(-1))
    rng = random.Random(seed)
    F = TensorElement.pure(base.random_element(rng), base.random_element(rng))
    G = TensorElement.pure(base.random_element(rng), base.random_element(rng))
    if (base.alpha(F.summands[0][1], G.summands[0][1]).is_zero()
            or base.alpha(F.summands[0][2], G.summands[0][2]).is_zero()):
        return
    lhs = kronecker_flatten(compose_sigma(table, F, G, base))
    assert lhs != big.sigma(kronecker_flatten(F), kronecker_flatten(G))


def test_kronecker_flatten_examples():
    sx, _, sz = pauli(-1)
    I = SquareMatrix.identity(2)
    assert kronecker_flatten(TensorElement.pure(I, I)) == SquareMatrix.identity(4)
    F = TensorElement.pure(sx, sz) + TensorElement.pure(sz, sx, coeff=2)
    assert kronecker_flatten(F) == kron(sx, sz) + kron(sz, sx).scale(2)


def test_normal_form_merges_and_moves_hbar_left():
    eps = -1
    q, p, h = PhasePoly.q(), PhasePoly.p(), PhasePoly.hbar()
    assert TensorElement.pure(q * h, p) == TensorElement.pure(q, p * h)
    x = TensorElement.pure(q, p) + TensorElement.pure(q, p)
    assert len(x.summands) == 1
    assert x == TensorElement.pure(q, p, coeff=2)
    assert (x - x).is_zero()
    assert TensorElement.pure(q + p, p) == TensorElement.pure(q, p) + TensorElement.pure(p, p)
    assert TensorElement.pure(q, p).scale(PairScalar.unit(eps)) == TensorElement.pure(
        q.scale(PairScalar.unit(eps)), p
    )


def test_tensor_eps_must_match():
    with pytest.raises(ClassMismatchError):
        TensorElement.pure(PhasePoly.q(eps=-1), PhasePoly.p(eps=1))


def test_nonzero_a11_breaks_composite_leibniz():
    base = MatrixAlgebra(CompositionClass(-1, 1), 2)
    comp = TensorAlgebra(base, table=canonical_table(base.cls).with_values(a11=Fraction(1)))
    sx, sy, _ = pauli(-1)
    F = comp.pure(sx, sx)
    G = comp.pure(sx, sy)
    H = comp.pure(sy, sx)
    assert not leibniz_defect(comp, F, G, H, "alpha").is_zero()
