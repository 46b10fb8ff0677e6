"""Dense exact square matrices over :class:`PairScalar` and the operator representation.

alpha is the scaled commutator ``(J/hbar)(AB - BA)`` and sigma the Jordan
product ``(AB + BA)/2``. Only the elliptic and hyperbolic classes have a
matrix representation.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .algebra import Algebra, CompositionClass, UnsupportedError
from .scalar import ClassMismatchError, PairScalar, as_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _entry(x, eps: int) -> PairScalar:
    if isinstance(x, PairScalar):
        if x.eps != eps:
            raise ClassMismatchError(f"entry {x!r} does not have eps={eps}")
        return x
    return PairScalar._raw(as_rational(x), _ZERO, eps)


class SquareMatrix:
    """Immutable ``dim x dim`` matrix with entries sharing one ``eps``."""

    __slots__ = ("rows", "eps", "_hash")

    def __init__(self, rows: Sequence[Sequence], eps: int = -1):
        rows = tuple(tuple(_entry(x, eps) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix dimension must be at least 1")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.eps = eps
        self._hash = None

    @classmethod
    def _raw(cls, rows, eps):
        obj = object.__new__(cls)
        obj.rows = rows
        obj.eps = eps
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, dim: int, eps: int = -1) -> SquareMatrix:
        one = PairScalar._raw(_ONE, _ZERO, eps)
        zero = PairScalar._raw(_ZERO, _ZERO, eps)
        return cls._raw(
            tuple(tuple(one if i == j else zero for j in range(dim)) for i in range(dim)), eps
        )

    @classmethod
    def zeros(cls, dim: int, eps: int = -1) -> SquareMatrix:
        zero = PairScalar._raw(_ZERO, _ZERO, eps)
        return cls._raw(tuple((zero,) * dim for _ in range(dim)), eps)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: SquareMatrix) -> None:
        if other.eps != self.eps:
            raise ClassMismatchError(f"matrices have eps={self.eps} and eps={other.eps}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        return SquareMatrix._raw(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.eps,
        )

    def __sub__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        return SquareMatrix._raw(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.eps,
        )

    def __neg__(self):
        return SquareMatrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.eps)

    def scale(self, c) -> SquareMatrix:
        c = _entry(c, self.eps)
        return SquareMatrix._raw(tuple(tuple(c * x for x in r) for r in self.rows), self.eps)

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            return self.matmul(other)
        if isinstance(other, (PairScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (PairScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __matmul__(self, other):
        return self.matmul(other)

    def _integer_form(self):
        """``(den, re_rows, im_rows)`` with integer numerators over a common denominator."""
        den = 1
        for r in self.rows:
            for x in r:
                den = lcm(den, x.re.denominator, x.im.denominator)
        re = [[x.re.numerator * (den // x.re.denominator) for x in r] for r in self.rows]
        im = [[x.im.numerator * (den // x.im.denominator) for x in r] for r in self.rows]
        return den, re, im

    def matmul(self, other: SquareMatrix) -> SquareMatrix:
        self._check(other)
        eps = self.eps
        da, ar, ai = self._integer_form()
        db, br, bi = other._integer_form()
        bcols_r = list(zip(*br))
        bcols_i = list(zip(*bi))
        den = da * db
        out = []
        for rr, ri in zip(ar, ai):
            new = []
            for cr, ci in zip(bcols_r, bcols_i):
                re = sum(a * c for a, c in zip(rr, cr))
                im = sum(a * d for a, d in zip(rr, ci)) + sum(b * c for b, c in zip(ri, cr))
                if eps:
                    re += eps * sum(b * d for b, d in zip(ri, ci))
                new.append(PairScalar._raw(Fraction(re, den), Fraction(im, den), eps))
            out.append(tuple(new))
        return SquareMatrix._raw(tuple(out), eps)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = SquareMatrix.identity(self.dim, self.eps)
        for _ in range(k):
            result = result.matmul(self)
        return result

    def transpose(self) -> SquareMatrix:
        return SquareMatrix._raw(tuple(zip(*self.rows)), self.eps)

    def conjugate(self) -> SquareMatrix:
        return SquareMatrix._raw(tuple(tuple(x.conjugate() for x in r) for r in self.rows), self.eps)

    def conjugate_transpose(self) -> SquareMatrix:
        return self.conjugate().transpose()

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.eps == other.eps and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.eps, self.rows))
        return self._hash

    def components(self) -> dict:
        """Nonzero entries keyed by ``(i, j)``."""
        return {(i, j): x for i, r in enumerate(self.rows) for j, x in enumerate(r) if x}

    def __repr__(self):
        return f"SquareMatrix({self}, eps={self.eps})"

    def __str__(self):
        from .printer import format_matrix

        return format_matrix(self)


def kron(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    """Kronecker product ``A (x) B``."""
    if A.eps != B.eps:
        raise ClassMismatchError(f"matrices have eps={A.eps} and eps={B.eps}")
    m, n = A.dim, B.dim
    rows = []
    for i in range(m):
        for k in range(n):
            rows.append(tuple(A.rows[i][j] * B.rows[k][l] for j in range(m) for l in range(n)))
    return SquareMatrix._raw(tuple(rows), A.eps)


def pauli(eps: int = -1) -> tuple[SquareMatrix, SquareMatrix, SquareMatrix]:
    """``(sx, sy, sz)`` with ``sy = [[0, -u], [u, 0]]``."""
    u = PairScalar.unit(eps)
    sx = SquareMatrix([[0, 1], [1, 0]], eps)
    sy = SquareMatrix([[0, -u], [u, 0]], eps)
    sz = SquareMatrix([[1, 0], [0, -1]], eps)
    return sx, sy, sz


def _require_matrix_class(cls: CompositionClass) -> None:
    if cls.j_squared == 0:
        raise UnsupportedError("the parabolic class has no matrix representation")
    if cls.hbar is None:
        raise UnsupportedError("the matrix representation needs a numeric hbar")


def mat_alpha(A: SquareMatrix, B: SquareMatrix, cls: CompositionClass) -> SquareMatrix:
    """``(J/hbar)(AB - BA)``."""
    _require_matrix_class(cls)
    if A.eps != cls.j_squared:
        raise ClassMismatchError(f"matrix eps={A.eps} does not match class {cls.name}")
    comm = A.matmul(B) - B.matmul(A)
    return comm.scale(PairScalar._raw(_ZERO, 1 / cls.hbar, A.eps))


def mat_sigma(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    """``(AB + BA)/2``."""
    return (A.matmul(B) + B.matmul(A)).scale(Fraction(1, 2))


def apply_J(A: SquareMatrix) -> SquareMatrix:
    """Multiply every entry by the unit ``u``."""
    if A.eps == 0:
        raise UnsupportedError("J has no matrix action in the parabolic class")
    return A.scale(PairScalar.unit(A.eps))


def hermitean_split(A: SquareMatrix) -> tuple[SquareMatrix, SquareMatrix]:
    """Unique ``A = H + K`` with ``H`` Hermitean and ``K`` anti-Hermitean."""
    if A.eps != -1:
        raise UnsupportedError("Hermitean split is defined for the elliptic class")
    Ad = A.conjugate_transpose()
    half = Fraction(1, 2)
    return (A + Ad).scale(half), (A - Ad).scale(half)


def is_hermitean(A: SquareMatrix) -> bool:
    return A == A.conjugate_transpose()


def random_rational(rng, max_num: int = 9, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_matrix(rng, dim: int, eps: int) -> SquareMatrix:
    """Entries ``re + im*u`` with numerators in [-9, 9] and denominators in [1, 4]."""
    rows = []
    for _ in range(dim):
        row = []
        for _ in range(dim):
            re = random_rational(rng)
            im = random_rational(rng) if eps else _ZERO
            row.append(PairScalar._raw(re, im, eps))
        rows.append(tuple(row))
    return SquareMatrix._raw(tuple(rows), eps)


class MatrixAlgebra(Algebra):
    """``dim x dim`` matrices under the scaled commutator and the Jordan product."""

    representation = "matrix"

    def __init__(self, cls: CompositionClass, dim: int = 2):
        _require_matrix_class(cls)
        super().__init__(cls)
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        eps = cls.j_squared
        self._alpha_coeff = PairScalar._raw(_ZERO, 1 / cls.hbar, eps)
        self._jh2 = PairScalar._raw(_ZERO, cls.hbar / 2, eps)
        self._compat = PairScalar._raw(eps * cls.hbar * cls.hbar / 4, _ZERO, eps)

    def check(self, x) -> None:
        if not isinstance(x, SquareMatrix):
            raise ClassMismatchError(f"expected a SquareMatrix, got {type(x).__name__}")
        if x.eps != self.cls.j_squared:
            raise ClassMismatchError(f"matrix eps={x.eps} does not match class {self.cls.name}")
        if x.dim != self.dim:
            raise ClassMismatchError(f"matrix dim {x.dim} does not match algebra dim {self.dim}")

    def alpha(self, f, g):
        self._same(f, g)
        return (f.matmul(g) - g.matmul(f)).scale(self._alpha_coeff)

    def sigma(self, f, g):
        self._same(f, g)
        return mat_sigma(f, g)

    def unit(self):
        return SquareMatrix.identity(self.dim, self.cls.j_squared)

    def zero(self):
        return SquareMatrix.zeros(self.dim, self.cls.j_squared)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def scale_j_hbar_half(self, x):
        return x.scale(self._jh2)

    def scale_compat(self, x):
        return x.scale(self._compat)

    def random_element(self, rng):
        return random_matrix(rng, self.dim, self.cls.j_squared)

    def generators(self) -> tuple:
        if self.dim == 2:
            sx, sy, _ = pauli(self.cls.j_squared)
            return (sx, sy)
        return ()

    def __repr__(self):
        return f"MatrixAlgebra({self.cls}, dim={self.dim})"
