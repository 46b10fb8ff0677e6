"""Bipartite composition of two-product algebras.

A :class:`TensorElement` is a formal sum ``sum c_k left_k (x) right_k``. The
composite products follow the coproduct ansatz

    (f1 (x) f2) alpha12 (g1 (x) g2) = sum_ij a_ij (f1 o_i g1) (x) (f2 o_j g2)
    (f1 (x) f2) sigma12 (g1 (x) g2) = sum_ij b_ij (f1 o_i g1) (x) (f2 o_j g2)

with ``o_1 = alpha`` and ``o_2 = sigma``. The canonical table is
``a = (0, 1, 1, 0)`` and ``b = (J^2 hbar^2/4, 0, 0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from math import lcm

from .algebra import Algebra, CompositionClass, require_same_class
from .matrix import SquareMatrix, kron
from .phase import PhasePoly
from .scalar import ClassMismatchError, PairScalar

_ZERO = Fraction(0)
_ONE = Fraction(1)

UNKNOWNS = ("a11", "a12", "a21", "a22", "b11", "b12", "b21", "b22")


class UnknownCoefficientError(ValueError):
    """A coproduct table entry is still unknown."""


@dataclass(frozen=True)
class CoproductTable:
    """Coefficients of the coproducts of alpha and sigma.

    Entries are rationals, :class:`PairScalar`, a :class:`PhasePoly` in hbar
    alone (formal-hbar phase space), or ``None`` for unknown.
    """

    a11: object = None
    a12: object = None
    a21: object = None
    a22: object = None
    b11: object = None
    b12: object = None
    b21: object = None
    b22: object = None

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def unknowns(self) -> list[str]:
        return [k for k, v in self.as_dict().items() if v is None]

    def is_numeric(self) -> bool:
        return not self.unknowns()

    def with_values(self, **values) -> CoproductTable:
        return replace(self, **values)

    def row(self, which: str) -> dict:
        if self.unknowns():
            raise UnknownCoefficientError(f"table has unknown entries: {self.unknowns()}")
        return {(i, j): getattr(self, f"{which}{i}{j}") for i in (1, 2) for j in (1, 2)}


def canonical_table(cls: CompositionClass) -> CoproductTable:
    """``a = (0, 1, 1, 0)``, ``b = (J^2 hbar^2/4, 0, 0, 1)``."""
    eps = cls.j_squared
    if cls.hbar is None:
        b11 = PhasePoly({(2,): Fraction(eps, 4)}, 1, eps) if eps else Fraction(0)
    else:
        b11 = Fraction(eps) * cls.hbar * cls.hbar / 4
    return CoproductTable(0, 1, 1, 0, b11, 0, 0, 1)


def _is_zero_coeff(c) -> bool:
    if isinstance(c, PhasePoly):
        return c.is_zero()
    return not c


class TensorElement:
    """Formal sum of pure tensors with duplicate pure tensors merged."""

    __slots__ = ("summands", "eps", "_nf")

    def __init__(self, summands=(), eps: int = -1):
        merged: dict = {}
        order = []
        for c, left, right in summands:
            if not isinstance(c, PairScalar):
                c = PairScalar._raw(Fraction(c), _ZERO, eps)
            elif c.eps != eps:
                raise ClassMismatchError(f"coefficient eps={c.eps} does not match eps={eps}")
            if not c or _element_zero(left) or _element_zero(right):
                continue
            key = (left, right)
            if key in merged:
                merged[key] = merged[key] + c
            else:
                merged[key] = c
                order.append(key)
        self.summands = tuple((merged[k], k[0], k[1]) for k in order if merged[k])
        self.eps = eps
        self._nf = None

    @classmethod
    def pure(cls, left, right, coeff=1) -> TensorElement:
        eps = left.eps
        if right.eps != eps:
            raise ClassMismatchError("tensor factors have different eps")
        return cls([(coeff, left, right)], eps)

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if other.eps != self.eps:
            raise ClassMismatchError("tensor elements have different eps")
        return TensorElement(self.summands + other.summands, self.eps)

    def __neg__(self):
        return TensorElement([(-c, l, r) for c, l, r in self.summands], self.eps)

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> TensorElement:
        if isinstance(c, PhasePoly):
            return TensorElement([(k, c * l, r) for k, l, r in self.summands], self.eps)
        return TensorElement([(k * c, l, r) for k, l, r in self.summands], self.eps)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PairScalar, PhasePoly)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def normal_form(self) -> dict:
        """Canonical coordinates: ``{(left_basis, right_basis): coefficient}``.

        Powers of the central symbol hbar are moved into the left factor.
        """
        if self._nf is None:
            self._nf = self._compute_normal_form()
        return self._nf

    def _compute_normal_form(self) -> dict:
        # integer numerators over one common denominator; Fractions only at the end
        eps = self.eps
        parts = []
        total_den = 1
        for c, left, right in self.summands:
            lc, dl = _integer_components(left.components())
            rc, dr = _integer_components(right.components())
            dc = lcm(c.re.denominator, c.im.denominator)
            d = dl * dr * dc
            total_den = lcm(total_den, d)
            cre = c.re.numerator * (dc // c.re.denominator)
            cim = c.im.numerator * (dc // c.im.denominator)
            parts.append((cre, cim, lc, rc, d, isinstance(right, PhasePoly)))
        acc: dict = {}
        for cre, cim, lc, rc, d, shift in parts:
            scale = total_den // d
            for rk, (rr, ri) in rc.items():
                wr = (cre * rr + eps * cim * ri) * scale
                wi = (cre * ri + cim * rr) * scale
                if shift:
                    h = rk[0]
                    rkey = (0,) + _strip(rk[1:])
                else:
                    rkey = rk
                for lk, (lr, li) in lc.items():
                    lkey = ((lk[0] + h,) + _strip(lk[1:])) if shift else lk
                    key = (lkey, rkey)
                    vr = wr * lr + eps * wi * li
                    vi = wr * li + wi * lr
                    if key in acc:
                        a = acc[key]
                        a[0] += vr
                        a[1] += vi
                    else:
                        acc[key] = [vr, vi]
        out = {}
        for key, (vr, vi) in acc.items():
            if vr or vi:
                out[key] = PairScalar._raw(Fraction(vr, total_den), Fraction(vi, total_den), eps)
        return out

    def is_zero(self) -> bool:
        return not self.normal_form()

    def components(self) -> dict:
        return self.normal_form()

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.eps == other.eps and self.normal_form() == other.normal_form()

    def __hash__(self):
        return hash((self.eps, frozenset(self.normal_form().items())))

    def __repr__(self):
        return f"TensorElement({self})"

    def __str__(self):
        from .printer import format_tensor

        return format_tensor(self)


def _strip(t: tuple) -> tuple:
    i = len(t)
    while i > 0 and t[i - 1] == 0:
        i -= 1
    return t[:i]


def _integer_components(comps: dict):
    """``({key: (re_num, im_num)}, den)`` over a common denominator."""
    den = 1
    for v in comps.values():
        den = lcm(den, v.re.denominator, v.im.denominator)
    out = {
        k: (v.re.numerator * (den // v.re.denominator), v.im.numerator * (den // v.im.denominator))
        for k, v in comps.items()
    }
    return out, den


def _element_zero(x) -> bool:
    return x.is_zero()


def _expand(table_row: dict, F: TensorElement, G: TensorElement, left: Algebra, right: Algebra):
    products = {1: (left.alpha, right.alpha), 2: (left.sigma, right.sigma)}
    out = []
    for cf, f1, f2 in F.summands:
        for cg, g1, g2 in G.summands:
            c = cf * cg
            cache1: dict = {}
            cache2: dict = {}
            for (i, j), coeff in table_row.items():
                if _is_zero_coeff(coeff):
                    continue
                if i not in cache1:
                    cache1[i] = products[i][0](f1, g1)
                if j not in cache2:
                    cache2[j] = products[j][1](f2, g2)
                l, r = cache1[i], cache2[j]
                if isinstance(coeff, PhasePoly):
                    out.append((c, coeff * l, r))
                else:
                    out.append((c * coeff, l, r))
    return TensorElement(out, F.eps)


def compose_alpha(table: CoproductTable, F: TensorElement, G: TensorElement,
                  left: Algebra, right: Algebra | None = None) -> TensorElement:
    """Composite alpha product ``F alpha12 G`` under ``table``."""
    return _expand(table.row("a"), F, G, left, right or left)


def compose_sigma(table: CoproductTable, F: TensorElement, G: TensorElement,
                  left: Algebra, right: Algebra | None = None) -> TensorElement:
    """Composite sigma product ``F sigma12 G`` under ``table``."""
    return _expand(table.row("b"), F, G, left, right or left)


def kronecker_flatten(F: TensorElement) -> SquareMatrix:
    """``sum c_k kron(left_k, right_k)`` for matrix components."""
    if not F.summands:
        raise ValueError("cannot infer the dimension of an empty tensor; flatten needs summands")
    total = None
    for c, left, right in F.summands:
        if not isinstance(left, SquareMatrix) or not isinstance(right, SquareMatrix):
            raise TypeError("kronecker_flatten needs matrix components")
        term = kron(left, right).scale(c)
        total = term if total is None else total + term
    return total


class TensorAlgebra(Algebra):
    """Composite system ``left (x) right`` with coproduct-driven products."""

    representation = "tensor"

    def __init__(self, left: Algebra, right: Algebra | None = None,
                 table: CoproductTable | None = None):
        right = right or left
        require_same_class(left.cls, right.cls)
        if left.cls.hbar != right.cls.hbar:
            raise ClassMismatchError("tensor factors must share hbar")
        super().__init__(left.cls)
        self.left = left
        self.right = right
        self.table = table or canonical_table(left.cls)
        self._alpha_row = self.table.row("a")
        self._sigma_row = self.table.row("b")

    def check(self, x) -> None:
        if not isinstance(x, TensorElement):
            raise ClassMismatchError(f"expected a TensorElement, got {type(x).__name__}")
        if x.eps != self.cls.j_squared:
            raise ClassMismatchError(f"tensor eps={x.eps} does not match class {self.cls.name}")

    def alpha(self, f, g):
        self._same(f, g)
        return _expand(self._alpha_row, f, g, self.left, self.right)

    def sigma(self, f, g):
        self._same(f, g)
        return _expand(self._sigma_row, f, g, self.left, self.right)

    def unit(self):
        return TensorElement.pure(self.left.unit(), self.right.unit())

    def zero(self):
        return TensorElement((), self.cls.j_squared)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def pure(self, f, g) -> TensorElement:
        self.left.check(f)
        self.right.check(g)
        return TensorElement.pure(f, g)

    def _scale_by(self, x: TensorElement, y) -> TensorElement:
        # y is (J hbar/2) or (J^2 hbar^2/4) on the left factor algebra
        return TensorElement(
            [(c, y(l), r) for c, l, r in x.summands], x.eps
        )

    def scale_j_hbar_half(self, x):
        return self._scale_by(x, self.left.scale_j_hbar_half)

    def scale_compat(self, x):
        return self._scale_by(x, self.left.scale_compat)

    def random_element(self, rng, max_summands: int = 2):
        k = rng.randint(1, max_summands)
        out = TensorElement.pure(self.left.random_element(rng), self.right.random_element(rng))
        for _ in range(k - 1):
            out = out + TensorElement.pure(
                self.left.random_element(rng), self.right.random_element(rng)
            )
        return out

    def generators(self) -> tuple:
        gens = self.left.generators()
        if not gens:
            return ()
        one = self.right.unit()
        return tuple(TensorElement.pure(g, one) for g in gens)

    def __repr__(self):
        return f"TensorAlgebra({self.left!r}, {self.right!r})"
