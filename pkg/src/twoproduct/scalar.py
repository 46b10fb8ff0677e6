"""Exact scalars: rationals and the paired scalar ``a + b*u`` with ``u*u = eps``.

``eps = -1`` gives the complex numbers (elliptic class), ``eps = 0`` the dual
numbers (parabolic class) and ``eps = +1`` the split-complex numbers
(hyperbolic class). Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

EPSILONS = (-1, 0, 1)


class ClassMismatchError(ValueError):
    """Operands belong to different composition classes or representations."""


class NotInvertibleError(ZeroDivisionError):
    """The scalar has zero modulus ``a^2 - eps*b^2``."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class PairScalar:
    """Immutable ``re + im*u`` with ``u*u = eps``."""

    __slots__ = ("re", "im", "eps")

    def __init__(self, re=0, im=0, eps: int = -1):
        if eps not in EPSILONS:
            raise ValueError(f"epsilon must be one of -1, 0, +1, got {eps!r}")
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))
        object.__setattr__(self, "eps", eps)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction, eps: int) -> PairScalar:
        # trusted constructor for hot loops
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        object.__setattr__(obj, "eps", eps)
        return obj

    @classmethod
    def unit(cls, eps: int) -> PairScalar:
        """The imaginary-like unit ``u``."""
        return cls(0, 1, eps)

    def __setattr__(self, name, value):
        raise AttributeError("PairScalar is immutable")

    def __reduce__(self):
        return (PairScalar, (self.re, self.im, self.eps))

    def _coerce(self, other) -> PairScalar:
        if isinstance(other, PairScalar):
            if other.eps != self.eps:
                raise ClassMismatchError(
                    f"cannot combine scalars with eps={self.eps} and eps={other.eps}"
                )
            return other
        if isinstance(other, (int, _RationalABC)):
            return PairScalar._raw(Fraction(other), Fraction(0), self.eps)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PairScalar._raw(self.re + o.re, self.im + o.im, self.eps)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PairScalar._raw(self.re - o.re, self.im - o.im, self.eps)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return PairScalar._raw(-self.re, -self.im, self.eps)

    def __mul__(self, other):
        if isinstance(other, PairScalar):
            if other.eps != self.eps:
                raise ClassMismatchError(
                    f"cannot combine scalars with eps={self.eps} and eps={other.eps}"
                )
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return PairScalar._raw(a * c, b, self.eps)
            re = a * c
            if self.eps and b and d:
                re = re + self.eps * b * d
            return PairScalar._raw(re, a * d + b * c, self.eps)
        if isinstance(other, (int, _RationalABC)):
            return PairScalar._raw(self.re * other, self.im * other, self.eps)
        return NotImplemented

    __rmul__ = __mul__

    def modulus(self) -> Fraction:
        """``a^2 - eps*b^2``; equals ``x * conjugate(x)``."""
        return self.re * self.re - self.eps * self.im * self.im

    def conjugate(self) -> PairScalar:
        return PairScalar._raw(self.re, -self.im, self.eps)

    def inverse(self) -> PairScalar:
        m = self.modulus()
        if m == 0:
            raise NotInvertibleError(f"{self} has zero modulus for eps={self.eps}")
        return PairScalar._raw(self.re / m, -self.im / m, self.eps)

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)):
            if other == 0:
                raise NotInvertibleError("division by zero")
            return PairScalar._raw(self.re / other, self.im / other, self.eps)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = PairScalar._raw(Fraction(1), Fraction(0), self.eps)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, PairScalar):
            return self.eps == other.eps and self.re == other.re and self.im == other.im
        if isinstance(other, (int, _RationalABC)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im, self.eps))

    def __repr__(self):
        return f"PairScalar({str(self.re)!r}, {str(self.im)!r}, eps={self.eps})"

    def __str__(self):
        from .printer import format_scalar

        return format_scalar(self)


def scalar_add(x: PairScalar, y: PairScalar) -> PairScalar:
    return x + y


def scalar_mul(x: PairScalar, y: PairScalar) -> PairScalar:
    return x * y


def scalar_inv(x: PairScalar) -> PairScalar:
    return x.inverse()


def conjugate(x: PairScalar) -> PairScalar:
    return x.conjugate()
