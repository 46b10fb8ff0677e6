"""Exact phase-space polynomials and the Poisson/Moyal/star products.

A :class:`PhasePoly` is a polynomial in ``q1..qn, p1..pn`` and the formal
symbol ``hbar``, with :class:`PairScalar` coefficients. Exponent vectors are
laid out as ``(hbar, q1, p1, q2, p2, ...)`` so that adding degrees of freedom
only appends zeros.

The brackets are built from powers of the bidifferential operator

    nabla = sum_i (d/dq_i)_left (d/dp_i)_right - (d/dp_i)_left (d/dq_i)_right

For polynomials every series in ``nabla`` is a finite sum, because ``nabla^k``
annihilates ``(f, g)`` once ``k`` exceeds either degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .algebra import Algebra, CompositionClass
from .scalar import ClassMismatchError, PairScalar, as_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _scalar(x, eps: int) -> PairScalar:
    if isinstance(x, PairScalar):
        if x.eps != eps:
            raise ClassMismatchError(f"scalar {x!r} does not have eps={eps}")
        return x
    return PairScalar._raw(as_rational(x), _ZERO, eps)


def _pad(key: tuple, length: int) -> tuple:
    return key + (0,) * (length - len(key))


class PhasePoly:
    """Immutable sparse polynomial; ``terms`` maps exponent vectors to nonzero coefficients."""

    __slots__ = ("n", "eps", "terms", "_hash")

    def __init__(self, terms: dict | None = None, n: int = 1, eps: int = -1):
        if n < 1:
            raise ValueError("number of degrees of freedom must be at least 1")
        length = 1 + 2 * n
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(int(e) for e in key)
            if len(key) > length:
                raise ValueError(f"exponent vector {key} too long for n={n}")
            if any(e < 0 for e in key):
                raise ValueError("exponents must be non-negative")
            key = _pad(key, length)
            c = _scalar(c, eps)
            if key in clean:
                c = clean[key] + c
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.n = n
        self.eps = eps
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, n: int, eps: int) -> PhasePoly:
        obj = object.__new__(cls)
        obj.n = n
        obj.eps = eps
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int = 1, eps: int = -1) -> PhasePoly:
        return cls._raw({}, n, eps)

    @classmethod
    def constant(cls, c, n: int = 1, eps: int = -1) -> PhasePoly:
        c = _scalar(c, eps)
        return cls._raw({(0,) * (1 + 2 * n): c} if c else {}, n, eps)

    @classmethod
    def q(cls, i: int = 1, n: int | None = None, eps: int = -1) -> PhasePoly:
        return cls._var(2 * i - 1, i, n, eps)

    @classmethod
    def p(cls, i: int = 1, n: int | None = None, eps: int = -1) -> PhasePoly:
        return cls._var(2 * i, i, n, eps)

    @classmethod
    def hbar(cls, n: int = 1, eps: int = -1) -> PhasePoly:
        return cls._var(0, 1, n, eps)

    @classmethod
    def _var(cls, slot: int, i: int, n: int | None, eps: int) -> PhasePoly:
        if i < 1:
            raise ValueError("variable index must be >= 1")
        n = max(n or i, i)
        key = [0] * (1 + 2 * n)
        key[slot] = 1
        return cls._raw({tuple(key): PairScalar._raw(_ONE, _ZERO, eps)}, n, eps)

    # -- structure ----------------------------------------------------------
    def promote(self, n: int) -> PhasePoly:
        if n == self.n:
            return self
        if n < self.n:
            raise ValueError("cannot reduce the number of degrees of freedom")
        length = 1 + 2 * n
        return PhasePoly._raw({_pad(k, length): c for k, c in self.terms.items()}, n, self.eps)

    def _align(self, other: PhasePoly) -> tuple[PhasePoly, PhasePoly]:
        if other.eps != self.eps:
            raise ClassMismatchError(f"polynomials have eps={self.eps} and eps={other.eps}")
        n = max(self.n, other.n)
        return self.promote(n), other.promote(n)

    def total_degree(self) -> int:
        """Degree in the phase-space variables (hbar excluded); -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(k[1:]) for k in self.terms)

    def hbar_degree(self) -> int:
        return max((k[0] for k in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def components(self) -> dict:
        return dict(self.terms)

    def coefficient(self, key: tuple) -> PairScalar:
        key = _pad(tuple(key), 1 + 2 * self.n)
        return self.terms.get(key, PairScalar._raw(_ZERO, _ZERO, self.eps))

    def constant_term(self) -> PairScalar:
        return self.coefficient(())

    def hbar_coefficient(self, k: int) -> PhasePoly:
        """Coefficient of ``hbar^k`` as a polynomial in q, p."""
        out = {}
        for key, c in self.terms.items():
            if key[0] == k:
                out[(0,) + key[1:]] = c
        return PhasePoly._raw(out, self.n, self.eps)

    def substitute_hbar(self, value) -> PhasePoly:
        """Replace the formal ``hbar`` by a number."""
        value = as_rational(value)
        out: dict = {}
        for key, c in self.terms.items():
            k = (0,) + key[1:]
            c = c * value ** key[0]
            if k in out:
                c = out[k] + c
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return PhasePoly._raw(out, self.n, self.eps)

    def derivative(self, slot: int) -> PhasePoly:
        """Partial derivative with respect to exponent slot ``slot`` (1-based q/p layout)."""
        out = {}
        for key, c in self.terms.items():
            e = key[slot]
            if e:
                k = key[:slot] + (e - 1,) + key[slot + 1 :]
                out[k] = c * e
        return PhasePoly._raw(out, self.n, self.eps)

    def d_q(self, i: int = 1) -> PhasePoly:
        return self.derivative(2 * i - 1) if i <= self.n else PhasePoly.zero(self.n, self.eps)

    def d_p(self, i: int = 1) -> PhasePoly:
        return self.derivative(2 * i) if i <= self.n else PhasePoly.zero(self.n, self.eps)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PhasePoly):
            return self._align(other)
        if isinstance(other, (int, Fraction, PairScalar)):
            return self, PhasePoly.constant(other, self.n, self.eps)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        out = dict(a.terms)
        for k, c in b.terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return PhasePoly._raw(out, a.n, a.eps)

    __radd__ = __add__

    def __neg__(self):
        return PhasePoly._raw({k: -c for k, c in self.terms.items()}, self.n, self.eps)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def scale(self, c) -> PhasePoly:
        c = _scalar(c, self.eps)
        if not c:
            return PhasePoly.zero(self.n, self.eps)
        out = {}
        for k, x in self.terms.items():
            y = x * c
            if y:
                out[k] = y
        return PhasePoly._raw(out, self.n, self.eps)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PairScalar)):
            return self.scale(other)
        if not isinstance(other, PhasePoly):
            return NotImplemented
        a, b = self._align(other)
        out: dict = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                k = tuple([x + y for x, y in zip(ka, kb)])
                c = ca * cb
                if k in out:
                    c = out[k] + c
                    if c:
                        out[k] = c
                    else:
                        del out[k]
                elif c:
                    out[k] = c
        return PhasePoly._raw(out, a.n, a.eps)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PairScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = PhasePoly.constant(1, self.n, self.eps)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PairScalar)):
            other = PhasePoly.constant(other, self.n, self.eps)
        if not isinstance(other, PhasePoly):
            return NotImplemented
        if other.eps != self.eps:
            return False
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            # trailing zero slots do not change the polynomial
            self._hash = hash(
                (self.eps, frozenset((_strip(k), c) for k, c in self.terms.items()))
            )
        return self._hash

    def __repr__(self):
        return f"PhasePoly({self}, n={self.n}, eps={self.eps})"

    def __str__(self):
        from .printer import format_poly

        return format_poly(self)


def _strip(key: tuple) -> tuple:
    i = len(key)
    while i > 1 and key[i - 1] == 0:
        i -= 1
    return key[:i]


# -- bidifferential operator -------------------------------------------------


@dataclass
class BidiffState:
    """Finite element of the tensor square: weighted pairs of monomials.

    ``pairs`` maps ``(left_exponents, right_exponents)`` to a scalar weight, so
    the state stands for ``sum w * (x^left) (x) (x^right)``. Collapsing
    multiplies each pair back into a single polynomial.
    """

    n: int
    eps: int
    pairs: dict = field(default_factory=dict)

    @classmethod
    def of(cls, f: PhasePoly, g: PhasePoly) -> BidiffState:
        f, g = f._align(g)
        pairs = {}
        for kf, cf in f.terms.items():
            for kg, cg in g.terms.items():
                pairs[(kf, kg)] = cf * cg
        return cls(f.n, f.eps, pairs)

    def is_zero(self) -> bool:
        return not self.pairs

    def collapse(self) -> PhasePoly:
        out: dict = {}
        for (kl, kr), w in self.pairs.items():
            k = tuple([x + y for x, y in zip(kl, kr)])
            if k in out:
                w = out[k] + w
                if w:
                    out[k] = w
                else:
                    del out[k]
            elif w:
                out[k] = w
        return PhasePoly._raw(out, self.n, self.eps)


def _lower(key: tuple, slot: int) -> tuple:
    return key[:slot] + (key[slot] - 1,) + key[slot + 1 :]


def bidiff_apply(state: BidiffState) -> BidiffState:
    """Apply ``nabla`` once to every pair of the state."""
    out: dict = {}

    def put(k, w):
        if k in out:
            w = out[k] + w
            if w:
                out[k] = w
            else:
                del out[k]
        elif w:
            out[k] = w

    for (kl, kr), w in state.pairs.items():
        for i in range(1, state.n + 1):
            qs, ps = 2 * i - 1, 2 * i
            # d/dq_i on the left, d/dp_i on the right
            a, b = kl[qs], kr[ps]
            if a and b:
                put((_lower(kl, qs), _lower(kr, ps)), w * (a * b))
            # minus d/dp_i on the left, d/dq_i on the right
            a, b = kl[ps], kr[qs]
            if a and b:
                put((_lower(kl, ps), _lower(kr, qs)), w * (-a * b))
    return BidiffState(state.n, state.eps, out)


def bidiff_series(f: PhasePoly, g: PhasePoly, kmax: int | None = None) -> list[PhasePoly]:
    """``[f nabla^0 g, f nabla^1 g, ...]`` up to the last nonvanishing power (or ``kmax``)."""
    state = BidiffState.of(f, g)
    out = []
    k = 0
    while not state.is_zero() and (kmax is None or k <= kmax):
        out.append(state.collapse())
        state = bidiff_apply(state)
        k += 1
    return out


def bidiff_power(f: PhasePoly, g: PhasePoly, k: int) -> PhasePoly:
    """``f nabla^k g``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    state = BidiffState.of(f, g)
    for _ in range(k):
        if state.is_zero():
            break
        state = bidiff_apply(state)
    return state.collapse()


def _shift_hbar(poly: PhasePoly, k: int, c) -> PhasePoly:
    """``c * hbar^k * poly``."""
    if not k:
        return poly.scale(c)
    out = {}
    for key, x in poly.terms.items():
        y = x * c
        if y:
            out[(key[0] + k,) + key[1:]] = y
    return PhasePoly._raw(out, poly.n, poly.eps)


def _sum(polys: list[PhasePoly], n: int, eps: int) -> PhasePoly:
    total = PhasePoly.zero(n, eps)
    for p in polys:
        total = total + p
    return total


def poisson(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Poisson bracket ``{f, g} = f nabla g``."""
    return bidiff_power(f, g, 1)


def pointwise(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    return f * g


def _eps_of(cls) -> int:
    return cls.j_squared if isinstance(cls, CompositionClass) else int(cls)


def moyal_sine(f: PhasePoly, g: PhasePoly, cls=-1) -> PhasePoly:
    """``(2/hbar) sin((hbar/2) nabla)`` as an exact polynomial in formal hbar.

    For ``J^2 = eps`` the series is ``sum_m eps^m (hbar/2)^(2m) / (2m+1)! nabla^(2m+1)``:
    the Moyal bracket for eps=-1, the Poisson bracket for eps=0, and the
    hyperbolic-sine bracket for eps=+1.
    """
    eps = _eps_of(cls)
    f, g = f._align(g)
    terms = []
    for k, term in enumerate(bidiff_series(f, g)):
        if k % 2 == 0:
            continue
        m = (k - 1) // 2
        if m and not eps:
            break
        coeff = Fraction(eps**m, 4**m * factorial(k))
        terms.append(_shift_hbar(term, 2 * m, coeff))
    return _sum(terms, f.n, f.eps)


def moyal_cosine(f: PhasePoly, g: PhasePoly, cls=-1) -> PhasePoly:
    """``cos((hbar/2) nabla)``; generalised to ``sum_m eps^m (hbar/2)^(2m)/(2m)! nabla^(2m)``."""
    eps = _eps_of(cls)
    f, g = f._align(g)
    terms = []
    for k, term in enumerate(bidiff_series(f, g)):
        if k % 2 == 1:
            continue
        m = k // 2
        if m and not eps:
            break
        coeff = Fraction(eps**m, 4**m * factorial(k))
        terms.append(_shift_hbar(term, 2 * m, coeff))
    return _sum(terms, f.n, f.eps)


def star(f: PhasePoly, g: PhasePoly, cls=-1, sign: int = 1) -> PhasePoly:
    """Star product ``f exp(+/- (J hbar/2) nabla) g`` summed term by term."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    eps = _eps_of(cls)
    f, g = f._align(g)
    if f.eps != eps:
        raise ClassMismatchError(f"polynomial eps={f.eps} does not match class eps={eps}")
    half_j = PairScalar._raw(_ZERO, Fraction(sign, 2), eps)
    terms = []
    power = PairScalar._raw(_ONE, _ZERO, eps)
    for k, term in enumerate(bidiff_series(f, g)):
        if k:
            power = power * half_j
        if not power:
            break
        terms.append(_shift_hbar(term, k, power / factorial(k)))
    return _sum(terms, f.n, f.eps)


def random_poly(rng, n: int, eps: int, max_degree: int = 4, max_terms: int = 4) -> PhasePoly:
    """Sparse random polynomial in q, p with rational coefficients (no hbar)."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        key = [0] * (1 + 2 * n)
        for _ in range(deg):
            key[rng.randint(1, 2 * n)] += 1
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if c:
            terms[tuple(key)] = c
    poly = PhasePoly(terms, n, eps)
    if poly.is_zero():
        return PhasePoly.q(1, n, eps)
    return poly


class PhaseAlgebra(Algebra):
    """Polynomials in ``n`` degrees of freedom.

    alpha is the sine bracket and sigma the cosine bracket of the class;
    for ``J^2 = 0`` these reduce to the Poisson bracket and pointwise product.
    With a numeric ``hbar`` results are evaluated at that value.
    """

    representation = "phase"

    def __init__(self, cls: CompositionClass, n: int = 1, max_degree: int = 4, max_terms: int = 4):
        super().__init__(cls)
        self.n = n
        self.max_degree = max_degree
        self.max_terms = max_terms
        eps = cls.j_squared
        if cls.hbar is None:
            self._jh2 = PhasePoly({(1,): PairScalar(0, Fraction(1, 2), eps)}, n, eps)
            self._compat = PhasePoly({(2,): Fraction(eps, 4)}, n, eps)
        else:
            h = cls.hbar
            self._jh2 = PhasePoly.constant(PairScalar(0, h / 2, eps), n, eps)
            self._compat = PhasePoly.constant(Fraction(eps) * h * h / 4, n, eps)

    def check(self, x) -> None:
        if not isinstance(x, PhasePoly):
            raise ClassMismatchError(f"expected a PhasePoly, got {type(x).__name__}")
        if x.eps != self.cls.j_squared:
            raise ClassMismatchError(f"polynomial eps={x.eps} does not match class {self.cls.name}")

    def _finish(self, x: PhasePoly) -> PhasePoly:
        if self.cls.hbar is not None and x.hbar_degree() > 0:
            return x.substitute_hbar(self.cls.hbar)
        return x

    def alpha(self, f, g):
        self._same(f, g)
        if self.cls.j_squared == 0:
            return poisson(f, g)
        return self._finish(moyal_sine(f, g, self.cls))

    def sigma(self, f, g):
        self._same(f, g)
        if self.cls.j_squared == 0:
            return f * g
        return self._finish(moyal_cosine(f, g, self.cls))

    def unit(self):
        return PhasePoly.constant(1, self.n, self.cls.j_squared)

    def zero(self):
        return PhasePoly.zero(self.n, self.cls.j_squared)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def scale_j_hbar_half(self, x):
        return self._jh2 * x

    def scale_compat(self, x):
        return self._compat * x

    def star(self, f, g, sign: int = 1):
        self._same(f, g)
        return self._finish(star(f, g, self.cls, sign))

    def random_element(self, rng):
        return random_poly(rng, self.n, self.cls.j_squared, self.max_degree, self.max_terms)

    def generators(self) -> tuple:
        eps = self.cls.j_squared
        return (PhasePoly.q(1, self.n, eps), PhasePoly.p(1, self.n, eps))

    def __repr__(self):
        return f"PhaseAlgebra({self.cls}, n={self.n})"
