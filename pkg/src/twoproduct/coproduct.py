"""Recover the coproduct coefficients from unit laws and the bipartite Leibniz rule.

The eight unknowns ``a11..a22, b11..b22`` of :class:`~twoproduct.tensor.CoproductTable`
are treated as rational numbers. Constraints are generated on sampled elements
of a concrete representation and solved in stages:

1. unit laws (``f1 = g1 = 1`` and ``f2 = g2 = 1``) give linear equations;
2. the bipartite Leibniz rule for ``alpha12`` gives equations of degree <= 2
   in ``a11`` once the linear stage is substituted;
3. whatever remains unconstrained is reported free.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .algebra import Algebra, leibniz_defect
from .tensor import UNKNOWNS, CoproductTable, TensorAlgebra, TensorElement

LINEAR_STAGE = ("a12", "a21", "a22", "b12", "b21", "b22")
MAX_RETRIES = 10
FREE_PROBES = (Fraction(-1), Fraction(0), Fraction(1), Fraction(7, 3))


class NoSolutionError(ValueError):
    """The constraint set is inconsistent; ``witness`` is an offending constraint."""

    def __init__(self, message: str, witness: AnsatzConstraint | None = None):
        super().__init__(message)
        self.witness = witness


class InsufficientRankError(ValueError):
    """The samples did not produce enough independent constraints."""


# -- constraint polynomials --------------------------------------------------

Monomial = tuple  # sorted tuple of unknown names; () is the constant


@dataclass(frozen=True)
class AnsatzConstraint:
    """``sum coeff * monomial = 0`` over the unknowns, with provenance."""

    poly: dict
    provenance: str = ""

    def degree(self) -> int:
        return max((len(m) for m in self.poly), default=-1)

    def variables(self) -> set[str]:
        return {v for m in self.poly for v in m}

    def is_trivial(self) -> bool:
        return not self.poly

    def substitute(self, values: dict) -> AnsatzConstraint:
        out: dict = {}
        for mono, c in self.poly.items():
            rest = []
            for v in mono:
                if v in values:
                    c = c * values[v]
                else:
                    rest.append(v)
            key = tuple(rest)
            out[key] = out.get(key, Fraction(0)) + c
        return AnsatzConstraint({k: c for k, c in out.items() if c}, self.provenance)

    def evaluate(self, values: dict) -> Fraction:
        total = Fraction(0)
        for mono, c in self.poly.items():
            for v in mono:
                c = c * values[v]
            total += c
        return total

    def normalized(self) -> AnsatzConstraint:
        if not self.poly:
            return self
        lead = self.poly[min(self.poly, key=_mono_order)]
        return AnsatzConstraint({m: c / lead for m, c in self.poly.items()}, self.provenance)

    def key(self) -> frozenset:
        return frozenset(self.normalized().poly.items())

    def __str__(self):
        return format_constraint(self.poly)


def _mono_order(m: Monomial):
    return (-len(m), m)


def format_constraint(poly: dict) -> str:
    if not poly:
        return "0 = 0"
    parts = []
    for mono in sorted(poly, key=_mono_order):
        c = poly[mono]
        names = []
        for v in sorted(set(mono)):
            k = mono.count(v)
            names.append(v if k == 1 else f"{v}^{k}")
        body = "*".join(names)
        mag = abs(c)
        if body:
            s = body if mag == 1 else f"{mag}*{body}"
        else:
            s = str(mag)
        if not parts:
            parts.append(f"-{s}" if c < 0 else s)
        else:
            parts.append(f"- {s}" if c < 0 else f"+ {s}")
    return " ".join(parts) + " = 0"


def fixed_value_constraint(name: str, value, provenance: str = "injected") -> AnsatzConstraint:
    """The linear constraint ``name - value = 0``."""
    value = Fraction(value)
    poly = {(name,): Fraction(1)}
    if value:
        poly[()] = -value
    return AnsatzConstraint(poly, provenance)


def _component_equations(terms: dict, target: TensorElement | None) -> dict:
    """Split ``sum_u u * N(T_u)[key] - N(target)[key]`` into rational equations per key."""
    rows: dict = {}
    for unknown, t in terms.items():
        for key, v in t.normal_form().items():
            for part, x in (("re", v.re), ("im", v.im)):
                if x:
                    rows.setdefault((key, part), {})[(unknown,)] = x
    if target is not None:
        for key, v in target.normal_form().items():
            for part, x in (("re", v.re), ("im", v.im)):
                if x:
                    row = rows.setdefault((key, part), {})
                    row[()] = row.get((), Fraction(0)) - x
    return rows


def _dedup(constraints: Iterable[AnsatzConstraint]) -> list[AnsatzConstraint]:
    seen = set()
    out = []
    for c in constraints:
        if c.is_trivial():
            continue
        k = c.key()
        if k not in seen:
            seen.add(k)
            out.append(c)
    return out


# -- stage 1: unit laws -------------------------------------------------------


def _unit_sample_constraints(alg: Algebra, f, g, label: str) -> list[AnsatzConstraint]:
    one = alg.unit()
    prods = {1: alg.alpha, 2: alg.sigma}
    out = []
    for side in ("left", "right"):
        for row, target_prod in (("a", alg.alpha), ("b", alg.sigma)):
            terms = {}
            for i in (1, 2):
                for j in (1, 2):
                    if side == "left":
                        t = TensorElement.pure(prods[i](one, one), prods[j](f, g))
                    else:
                        t = TensorElement.pure(prods[i](f, g), prods[j](one, one))
                    terms[f"{row}{i}{j}"] = t
            if side == "left":
                target = TensorElement.pure(one, target_prod(f, g))
            else:
                target = TensorElement.pure(target_prod(f, g), one)
            name = "alpha" if row == "a" else "sigma"
            slot = "f1 = g1 = 1" if side == "left" else "f2 = g2 = 1"
            for poly in _component_equations(terms, target).values():
                out.append(AnsatzConstraint(poly, f"unit {slot}, {name}12, {label}"))
    return out


def unit_constraints(alg: Algebra, count: int, rng=None) -> list[AnsatzConstraint]:
    """Linear constraints from ``(1 (x) f) o12 (1 (x) g) = 1 (x) (f o g)`` and its mirror.

    Raises :class:`InsufficientRankError` when the samples (plus up to ten
    resamples) do not pin ``a12, a21, a22, b12, b21, b22``.
    """
    if count <= 0:
        return []
    rng = rng or _random.Random(0)
    constraints: list[AnsatzConstraint] = []
    pairs = []
    gens = alg.generators()
    if len(gens) >= 2:
        pairs.append((gens[0], gens[1], "generators"))
    while len(pairs) < count:
        i = len(pairs)
        pairs.append((alg.random_element(rng), alg.random_element(rng), f"sample {i}"))
    for f, g, label in pairs[:count]:
        constraints += _unit_sample_constraints(alg, f, g, label)
    constraints = _dedup(constraints)
    for retry in range(MAX_RETRIES + 1):
        fixed, _ = solve_linear(constraints)
        if all(v in fixed for v in LINEAR_STAGE):
            return constraints
        if retry == MAX_RETRIES:
            break
        f, g = alg.random_element(rng), alg.random_element(rng)
        constraints = _dedup(constraints + _unit_sample_constraints(alg, f, g, f"resample {retry}"))
    raise InsufficientRankError(
        "unit-law constraints do not determine a12, a21, a22, b12, b21, b22; "
        "the sampler looks degenerate (multiples of the unit?)"
    )


# -- stage 2: bipartite Leibniz ----------------------------------------------


def _table(fixed: dict, a11, b11) -> CoproductTable:
    vals = {k: fixed[k] for k in LINEAR_STAGE}
    return CoproductTable(a11=a11, b11=b11, **vals)


def _leibniz_sample_constraints(alg: Algebra, fixed: dict, F, G, H, label: str):
    # the alpha-Leibniz defect is quadratic in a11: interpolate at a11 = 0, 1, -1
    D = {}
    for a11 in (0, 1, -1):
        D[(a11, 0)] = leibniz_defect(TensorAlgebra(alg, table=_table(fixed, a11, 0)), F, G, H, "alpha")
    D[(0, 1)] = leibniz_defect(TensorAlgebra(alg, table=_table(fixed, 0, 1)), F, G, H, "alpha")
    half = Fraction(1, 2)
    d0 = D[(0, 0)]
    p, m = D[(1, 0)], D[(-1, 0)]
    by_monomial = {
        (): d0,
        ("a11",): (p - m).scale(half),
        ("a11", "a11"): (p + m).scale(half) - d0,
        ("b11",): D[(0, 1)] - d0,
    }
    rows: dict = {}
    for mono, t in by_monomial.items():
        for key, v in t.normal_form().items():
            for part, x in (("re", v.re), ("im", v.im)):
                if x:
                    rows.setdefault((key, part), {})[mono] = x
    return [
        AnsatzConstraint(poly, f"bipartite Leibniz (alpha12 inner), {label}")
        for poly in rows.values()
    ]


def leibniz_constraints(alg: Algebra, count: int, rng=None, fixed: dict | None = None):
    """Constraints on ``a11`` (and ``b11``) from the bipartite Leibniz rule for ``alpha12``.

    ``fixed`` holds the six unit-stage values. Triples whose constraints all
    vanish are resampled, at most ten times in total.
    """
    if fixed is None or any(k not in fixed for k in LINEAR_STAGE):
        raise ValueError("leibniz_constraints needs the unit-stage values of a12..b22")
    if count <= 0:
        return []
    rng = rng or _random.Random(0)
    out: list[AnsatzConstraint] = []
    retries = 0
    produced = 0
    i = 0
    while produced < count:
        F, G, H = (
            TensorElement.pure(alg.random_element(rng), alg.random_element(rng)) for _ in range(3)
        )
        cons = [c for c in _leibniz_sample_constraints(alg, fixed, F, G, H, f"triple {i}")
                if not c.is_trivial()]
        i += 1
        if cons:
            out += cons
            produced += 1
            continue
        retries += 1
        if retries > MAX_RETRIES:
            raise InsufficientRankError(
                "every sampled Leibniz constraint vanished; cannot decide a11"
            )
    return _dedup(out)


# -- exact solving -----------------------------------------------------------


def solve_linear(constraints: Iterable[AnsatzConstraint], unknowns=UNKNOWNS):
    """Gauss-Jordan elimination over the rationals on the degree <= 1 constraints.

    Returns ``(fixed, pivots)``: values of uniquely determined unknowns and the
    full reduced system. Raises :class:`NoSolutionError` on ``0 = c != 0``.
    """
    index = {u: k for k, u in enumerate(unknowns)}
    n = len(unknowns)
    rows = []
    sources = []
    for c in constraints:
        if c.degree() > 1:
            continue
        row = [Fraction(0)] * (n + 1)
        for mono, x in c.poly.items():
            if mono:
                row[index[mono[0]]] += x
            else:
                row[n] -= x
        rows.append(row)
        sources.append(c)
    pivots = []
    r = 0
    for col in range(n):
        pr = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        sources[r], sources[pr] = sources[pr], sources[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                fac = rows[k][col]
                rows[k] = [a - fac * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    for k in range(r, len(rows)):
        if rows[k][n]:
            raise NoSolutionError(
                f"inconsistent linear constraints (reduced to 0 = {rows[k][n]})", sources[k]
            )
    pivot_set = set(pivots)
    fixed = {}
    for k, col in enumerate(pivots):
        if all(not rows[k][j] for j in range(n) if j not in pivot_set):
            fixed[unknowns[col]] = rows[k][n]
    return fixed, rows[:r]


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p = p[:-1]
    return p


def _poly_mod(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b) and a:
        fac = a[-1] / b[-1]
        shift = len(a) - len(b)
        for k, x in enumerate(b):
            a[shift + k] -= fac * x
        a = _poly_trim(a)
    return a


def poly_gcd(a: list, b: list) -> list:
    """Monic gcd of univariate polynomials given as ascending coefficient lists."""
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    if not a:
        return a
    lead = a[-1]
    return [x / lead for x in a]


def _rational_sqrt(x: Fraction) -> Fraction | None:
    from math import isqrt

    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_roots(p: list) -> list[Fraction]:
    """Distinct rational roots of a polynomial of degree <= 2."""
    p = _poly_trim(p)
    deg = len(p) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [-p[0] / p[1]]
    if deg == 2:
        c, b, a = p
        disc = b * b - 4 * a * c
        r = _rational_sqrt(disc)
        if r is None:
            return []
        return sorted({(-b + r) / (2 * a), (-b - r) / (2 * a)})
    raise ValueError("only polynomials of degree <= 2 arise here")


@dataclass
class SolutionFamily:
    fixed: dict
    free: list
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def table(self, **free_values) -> CoproductTable:
        values = dict(self.fixed)
        for v in self.free:
            values[v] = free_values.get(v)
        return CoproductTable(**values)

    def to_dict(self) -> dict:
        return {
            "fixed": {k: str(self.fixed[k]) for k in UNKNOWNS if k in self.fixed},
            "free": list(self.free),
            "witnesses": list(self.witnesses),
            "notes": list(self.notes),
        }


def solve(constraints: Iterable[AnsatzConstraint], unknowns=UNKNOWNS) -> SolutionFamily:
    """Staged exact solve: linear elimination, then univariate gcds, then free scan."""
    constraints = list(constraints)
    linear, _ = solve_linear(constraints, unknowns)
    fixed = dict(linear)
    notes = []
    nonlinear_vars = sorted({v for c in constraints if c.degree() > 1 for v in c.variables()},
                            key=list(unknowns).index)
    for var in nonlinear_vars:
        others = {k: v for k, v in linear.items() if k != var}
        items = []
        for c in constraints:
            if var not in c.variables():
                continue
            r = c.substitute(others)
            if r.is_trivial():
                continue
            if r.variables() != {var}:
                raise NoSolutionError(f"cannot resolve multivariate constraint {r}", c)
            items.append((c, r))
        polys = []
        n_square = 0
        for _, r in items:
            coeffs = [Fraction(0)] * 3
            for mono, x in r.poly.items():
                coeffs[len(mono)] += x
            polys.append(coeffs)
            if not coeffs[0] and not coeffs[1]:
                n_square += 1
        g = polys[0]
        for p in polys[1:]:
            g = poly_gcd(g, p)
        g = _poly_trim(g)
        if len(g) <= 1:
            raise NoSolutionError(f"constraints on {var} have no common root", items[0][0])
        roots = rational_roots(g)
        if len(roots) != 1:
            raise NoSolutionError(
                f"constraints on {var} leave {len(roots)} rational candidates", items[0][0]
            )
        if var in linear and linear[var] != roots[0]:
            raise NoSolutionError(f"linear and quadratic stages disagree on {var}", items[0][0])
        fixed[var] = roots[0]
        gtext = format_constraint(_univariate(var, g))[: -len(" = 0")]
        notes.append(
            f"{var}: gcd of {len(items)} constraints is {gtext} "
            f"({n_square} of the pure form {var}^2 * c = 0), so {var} = {roots[0]}"
        )
    free = [u for u in unknowns if u not in fixed]
    for c in constraints:
        for probe in FREE_PROBES:
            values = dict(fixed)
            values.update({v: probe for v in free})
            if c.evaluate(values):
                raise NoSolutionError(f"solution fails constraint {c} at free value {probe}", c)
    if free:
        notes.append(
            f"free: {', '.join(free)} (constraints hold for "
            + ", ".join(str(p) for p in FREE_PROBES) + ")"
        )
    return SolutionFamily(fixed, free, notes=notes)


def _univariate(var: str, coeffs: list) -> dict:
    return {(var,) * k: x for k, x in enumerate(coeffs) if x}


# -- pipeline ----------------------------------------------------------------


def _resolution(c: AnsatzConstraint, fixed: dict) -> str:
    vs = sorted(c.variables())
    return ", ".join(f"{v} = {fixed[v]}" if v in fixed else f"{v} free" for v in vs)


def derive_coproduct(alg: Algebra, seed: int = 0, unit_samples: int = 5,
                     leibniz_samples: int = 3, extra: Iterable[AnsatzConstraint] = ()):
    """Run the staged derivation; return ``(family, transcript)``.

    The transcript lists ``{axiom, sample, constraint, resolution}`` rows:
    unit-law constraints first, then Leibniz constraints, then the free report.
    """
    rng = _random.Random(seed)
    extra = list(extra)
    unit = unit_constraints(alg, unit_samples, rng)
    fixed, _ = solve_linear(unit + extra)
    stage1 = {k: fixed[k] for k in LINEAR_STAGE if k in fixed}
    if len(stage1) < len(LINEAR_STAGE):
        raise InsufficientRankError("unit stage did not pin all six coefficients")
    leib = leibniz_constraints(alg, leibniz_samples, rng, stage1)
    family = solve(unit + extra + leib)
    family.witnesses = sorted({c.provenance.rsplit(", ", 1)[-1] for c in unit + leib})
    transcript = []
    for c in unit + extra:
        axiom, _, sample = c.provenance.rpartition(", ")
        transcript.append({
            "axiom": axiom or c.provenance,
            "sample": sample,
            "constraint": str(c),
            "resolution": _resolution(c, family.fixed),
        })
    for c in leib:
        axiom, _, sample = c.provenance.rpartition(", ")
        transcript.append({
            "axiom": axiom,
            "sample": sample,
            "constraint": str(c),
            "resolution": _resolution(c, family.fixed),
        })
    for v in family.free:
        transcript.append({
            "axiom": "free-variable scan",
            "sample": "all",
            "constraint": f"{v} absent from every constraint",
            "resolution": f"{v} free",
        })
    return family, transcript


def leibniz_witness(alg: Algebra, table: CoproductTable, seed: int = 0, tries: int = 20):
    """First sampled triple of pure tensors violating bipartite Leibniz under ``table``.

    Returns ``(F, G, H, defect)`` or ``None``.
    """
    comp = TensorAlgebra(alg, table=table)
    # small generator-built triples first so the witness stays readable
    small = list(alg.generators()) + [alg.unit()]
    pures = [comp.pure(f, g) for f in small for g in small]
    for F, G, H in itertools.product(pures, repeat=3):
        d = leibniz_defect(comp, F, G, H, "alpha")
        if not d.is_zero():
            return F, G, H, d
    rng = _random.Random(seed)
    for _ in range(tries):
        F, G, H = (comp.pure(alg.random_element(rng), alg.random_element(rng)) for _ in range(3))
        d = leibniz_defect(comp, F, G, H, "alpha")
        if not d.is_zero():
            return F, G, H, d
    return None


@dataclass
class SingleProductWitness:
    """``f alpha g != 0`` while the one-product ansatz forces ``(f (x) 1) alpha12 (g (x) 1) = 0``."""

    f: object
    g: object
    f_alpha_g: object
    unit_alpha_unit: object

    def to_dict(self) -> dict:
        return {
            "f": str(self.f),
            "g": str(self.g),
            "f_alpha_g": str(self.f_alpha_g),
            "unit_alpha_unit": str(self.unit_alpha_unit),
            "conclusion": "a (f alpha g) (x) (1 alpha 1) = 0 for every a, "
                          "but (f alpha g) (x) 1 != 0, so one product cannot compose",
        }


def single_product_infeasibility(alg: Algebra, seed: int = 0, tries: int = 20):
    """Witness that the ansatz ``a (f1 alpha g1) (x) (f2 alpha g2)`` collapses.

    Returns ``None`` when no sampled pair has a nonzero bracket (the trivial
    algebra), in which case a single product is consistent.
    """
    one = alg.unit()
    uu = alg.alpha(one, one)
    if not alg.is_zero(uu):
        return None
    rng = _random.Random(seed)
    candidates = []
    gens = alg.generators()
    if len(gens) >= 2:
        candidates.append((gens[0], gens[1]))
    for _ in range(tries):
        candidates.append((alg.random_element(rng), alg.random_element(rng)))
    for f, g in candidates:
        fg = alg.alpha(f, g)
        if not alg.is_zero(fg):
            return SingleProductWitness(f, g, fg, uu)
    return None
