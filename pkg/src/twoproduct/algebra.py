"""Composition classes, the two-product algebra interface and its defect functionals.

Every identity of a composability two-product algebra is expressed here as a
*defect*: an element of the algebra that vanishes exactly when the identity
holds on the given arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .scalar import ClassMismatchError, PairScalar, as_rational

CLASS_NAMES = {-1: "elliptic", 0: "parabolic", 1: "hyperbolic"}
CLASS_BY_NAME = {v: k for k, v in CLASS_NAMES.items()}


class UnsupportedError(ValueError):
    """The requested (class, representation) combination does not exist."""


@dataclass(frozen=True)
class CompositionClass:
    """``J^2`` in {-1, 0, +1} plus Planck's constant.

    ``hbar=None`` means hbar is kept as a formal polynomial symbol (phase-space
    representation only).
    """

    j_squared: int
    hbar: Fraction | None = None

    def __post_init__(self):
        if self.j_squared not in CLASS_NAMES:
            raise ValueError(f"j_squared must be -1, 0 or +1, got {self.j_squared!r}")
        if self.hbar is not None:
            h = as_rational(self.hbar)
            if h <= 0:
                raise ValueError("numeric hbar must be positive")
            object.__setattr__(self, "hbar", h)

    @classmethod
    def named(cls, name: str, hbar=None) -> CompositionClass:
        try:
            j2 = CLASS_BY_NAME[name]
        except KeyError:
            raise ValueError(
                f"unknown composition class {name!r}; expected one of {sorted(CLASS_BY_NAME)}"
            ) from None
        return cls(j2, hbar)

    @property
    def name(self) -> str:
        return CLASS_NAMES[self.j_squared]

    @property
    def eps(self) -> int:
        return self.j_squared

    @property
    def formal_hbar(self) -> bool:
        return self.hbar is None

    def with_hbar(self, hbar) -> CompositionClass:
        return CompositionClass(self.j_squared, hbar)

    def J(self) -> PairScalar:
        return PairScalar.unit(self.j_squared)

    def __str__(self):
        h = "formal" if self.hbar is None else str(self.hbar)
        return f"{self.name}(hbar={h})"


ELLIPTIC = CompositionClass(-1)
PARABOLIC = CompositionClass(0)
HYPERBOLIC = CompositionClass(1)


class Algebra:
    """A concrete representation of the two-product algebra ``(A, alpha, sigma, 1)``.

    Subclasses provide the two bilinear products, the unit, and multiplication
    by the two class-dependent coefficients ``J*hbar/2`` and ``J^2*hbar^2/4``.
    Elements are plain values supporting ``+``, ``-`` and scalar ``*``.
    """

    representation = "abstract"

    def __init__(self, cls: CompositionClass):
        self.cls = cls

    # -- to be provided by representations ---------------------------------
    def alpha(self, f, g):
        raise NotImplementedError

    def sigma(self, f, g):
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def check(self, x) -> None:
        """Raise :class:`ClassMismatchError` unless ``x`` belongs to this algebra."""
        raise NotImplementedError

    def scale_j_hbar_half(self, x):
        """Return ``(J*hbar/2) * x``."""
        raise NotImplementedError

    def scale_compat(self, x):
        """Return ``(J^2*hbar^2/4) * x``."""
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    def generators(self) -> tuple:
        """A distinguished pair with nonzero alpha bracket, if the representation has one."""
        return ()

    def format(self, x) -> str:
        return str(x)

    # -- shared --------------------------------------------------------------
    def is_zero(self, x) -> bool:
        return x == self.zero()

    def beta(self, f, g, sign: int = 1):
        """Associative product ``sigma +/- (J*hbar/2) alpha``; ``sigma`` alone when ``J^2 = 0``."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        s = self.sigma(f, g)
        if self.cls.j_squared == 0:
            return s
        a = self.scale_j_hbar_half(self.alpha(f, g))
        return s + a if sign == 1 else s - a

    def product(self, selector: ProductSelector) -> Callable:
        if callable(selector):
            return selector
        try:
            return {
                "alpha": self.alpha,
                "sigma": self.sigma,
                "beta+": lambda f, g: self.beta(f, g, 1),
                "beta-": lambda f, g: self.beta(f, g, -1),
            }[selector]
        except KeyError:
            raise ValueError(f"unknown product {selector!r}") from None

    def _same(self, *xs) -> None:
        for x in xs:
            self.check(x)


ProductSelector = Union[str, Callable]


def associator(alg: Algebra, product: ProductSelector, f, g, h):
    """``(f.g).h - f.(g.h)`` for the selected product."""
    alg._same(f, g, h)
    m = alg.product(product)
    return m(m(f, g), h) - m(f, m(g, h))


def leibniz_defect(alg: Algebra, f, g, h, inner: ProductSelector = "sigma"):
    """``f a (g o h) - (f a g) o h - g o (f a h)`` with ``o`` the inner product."""
    alg._same(f, g, h)
    m = alg.product(inner)
    a = alg.alpha
    return a(f, m(g, h)) - m(a(f, g), h) - m(g, a(f, h))


def jacobi_defect(alg: Algebra, f, g, h):
    alg._same(f, g, h)
    a = alg.alpha
    return a(f, a(g, h)) + a(g, a(h, f)) + a(h, a(f, g))


def symmetry_defect_sigma(alg: Algebra, f, g):
    alg._same(f, g)
    return alg.sigma(f, g) - alg.sigma(g, f)


def antisymmetry_defect_alpha(alg: Algebra, f, g):
    alg._same(f, g)
    return alg.alpha(f, g) + alg.alpha(g, f)


def compatibility_defect(alg: Algebra, f, g, h):
    """``[f,g,h]_sigma + (J^2 hbar^2/4) [f,g,h]_alpha``."""
    return associator(alg, "sigma", f, g, h) + alg.scale_compat(associator(alg, "alpha", f, g, h))


def jordan_defect(alg: Algebra, f, g):
    """Power-associativity form of the Jordan identity: ``[f, g, f.f]_sigma``."""
    alg._same(f, g)
    return associator(alg, "sigma", f, g, alg.sigma(f, f))


def unit_defects(alg: Algebra, f) -> tuple:
    """``(1 a f, f a 1, 1 s f - f, f s 1 - f)``; all zero for a unital algebra."""
    alg._same(f)
    one = alg.unit()
    return (
        alg.alpha(one, f),
        alg.alpha(f, one),
        alg.sigma(one, f) - f,
        alg.sigma(f, one) - f,
    )


def require_same_class(a: CompositionClass, b: CompositionClass) -> None:
    if a.j_squared != b.j_squared:
        raise ClassMismatchError(f"composition classes differ: {a.name} vs {b.name}")
