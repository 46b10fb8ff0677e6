"""Seeded identity audits over a representation, with JSON reports."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .algebra import (
    Algebra,
    CompositionClass,
    UnsupportedError,
    antisymmetry_defect_alpha,
    associator,
    compatibility_defect,
    jacobi_defect,
    jordan_defect,
    leibniz_defect,
    symmetry_defect_sigma,
    unit_defects,
)
from .matrix import MatrixAlgebra
from .phase import PhaseAlgebra
from .tensor import CoproductTable, TensorAlgebra

SCHEMA_VERSION = 1
WITNESS_CHARS = 1000

MATRIX_DIMS = (2, 3, 4)
PHASE_DOFS = (1, 2)


class _Memo(Algebra):
    """Caches alpha/sigma results of a wrapped algebra for one sample."""

    def __init__(self, inner: Algebra):
        super().__init__(inner.cls)
        self.inner = inner
        self.representation = inner.representation
        self.cache: dict = {}

    def _get(self, op, f, g):
        key = (op, f, g)
        try:
            return self.cache[key]
        except KeyError:
            value = getattr(self.inner, op)(f, g)
            self.cache[key] = value
            return value

    def alpha(self, f, g):
        return self._get("alpha", f, g)

    def sigma(self, f, g):
        return self._get("sigma", f, g)

    def __getattr__(self, name):
        return getattr(self.inner, name)

    def check(self, x):
        self.inner.check(x)

    def unit(self):
        return self.inner.unit()

    def zero(self):
        return self.inner.zero()

    def is_zero(self, x):
        return self.inner.is_zero(x)

    def scale_j_hbar_half(self, x):
        return self.inner.scale_j_hbar_half(x)

    def scale_compat(self, x):
        return self.inner.scale_compat(x)


def _all_zero(alg, d) -> bool:
    if isinstance(d, tuple):
        return all(alg.is_zero(x) for x in d)
    return alg.is_zero(d)


def _identities(cls: CompositionClass) -> dict:
    ids = {
        "antisymmetry_alpha": lambda a, f, g, h: antisymmetry_defect_alpha(a, f, g),
        "associativity_beta_minus": lambda a, f, g, h: associator(a, "beta-", f, g, h),
        "associativity_beta_plus": lambda a, f, g, h: associator(a, "beta+", f, g, h),
        "compatibility": lambda a, f, g, h: compatibility_defect(a, f, g, h),
        "jacobi": lambda a, f, g, h: jacobi_defect(a, f, g, h),
        "jordan": lambda a, f, g, h: jordan_defect(a, f, g),
        "leibniz_alpha": lambda a, f, g, h: leibniz_defect(a, f, g, h, "alpha"),
        "leibniz_sigma": lambda a, f, g, h: leibniz_defect(a, f, g, h, "sigma"),
        "symmetry_sigma": lambda a, f, g, h: symmetry_defect_sigma(a, f, g),
        "unit_laws": lambda a, f, g, h: unit_defects(a, f),
    }
    if cls.j_squared == 0:
        ids["associativity_sigma"] = lambda a, f, g, h: associator(a, "sigma", f, g, h)
    return dict(sorted(ids.items()))


IDENTITY_NAMES = tuple(_identities(CompositionClass(0)))


@dataclass
class AuditRow:
    identity: str
    checked: int = 0
    failures: int = 0
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "checked": self.checked,
            "failures": self.failures,
            "witness": self.witness,
        }


@dataclass
class AuditReport:
    cls: CompositionClass
    representation: str
    seed: int
    samples: int
    rows: list = field(default_factory=list)
    table: dict | None = None

    @property
    def passed(self) -> bool:
        return all(r.failures == 0 for r in self.rows)

    def row(self, identity: str) -> AuditRow:
        for r in self.rows:
            if r.identity == identity:
                return r
        raise KeyError(identity)

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "class": self.cls.name,
            "hbar": "formal" if self.cls.hbar is None else str(self.cls.hbar),
            "representation": self.representation,
            "seed": self.seed,
            "samples": self.samples,
            "rows": [r.to_dict() for r in self.rows],
            "pass": self.passed,
        }
        if self.table is not None:
            out["table"] = self.table
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [
            f"audit {self.representation} / {self.cls} seed={self.seed} samples={self.samples}"
        ]
        for r in self.rows:
            status = "ok" if r.failures == 0 else "FAIL"
            lines.append(f"  {r.identity:<26} {r.checked:>5} checked  {r.failures:>5} failures  {status}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _clip(text: str) -> str:
    if len(text) <= WITNESS_CHARS:
        return text
    return text[:WITNESS_CHARS] + " ..."


def build_algebras(cls: CompositionClass, representation: str, composite: bool = False,
                   table: CoproductTable | None = None) -> list[Algebra]:
    """Algebras the audit cycles through (one per matrix dim / phase-space dof)."""
    if representation == "matrix":
        if cls.j_squared == 0:
            raise UnsupportedError("parabolic + matrix: the classical class has no matrix representation")
        if cls.hbar is None:
            cls = cls.with_hbar(1)
        dims = (2,) if composite else MATRIX_DIMS
        bases = [MatrixAlgebra(cls, d) for d in dims]
    elif representation == "phase":
        if composite:
            bases = [PhaseAlgebra(cls, 1, max_degree=3, max_terms=2)]
        else:
            bases = [PhaseAlgebra(cls, n) for n in PHASE_DOFS]
    else:
        raise UnsupportedError(f"unknown representation {representation!r}")
    if composite:
        return [TensorAlgebra(b, table=table) for b in bases]
    if table is not None:
        raise ValueError("a coproduct table only applies to composite audits")
    return bases


def run_audit(cls: CompositionClass, representation: str, n_samples: int, seed: int,
              composite: bool = False, table: CoproductTable | None = None) -> AuditReport:
    """Check every identity on ``n_samples`` seeded random triples.

    Deterministic for a given seed. Matrix samples cycle through dims 2, 3, 4;
    phase samples through 1 and 2 degrees of freedom.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    algebras = build_algebras(cls, representation, composite, table)
    cls = algebras[0].cls
    rng = random.Random(seed)
    ids = _identities(cls)
    rows = {name: AuditRow(name) for name in ids}
    for i in range(n_samples):
        alg = algebras[i % len(algebras)]
        f, g, h = (alg.random_element(rng) for _ in range(3))
        memo = _Memo(alg)
        for name, fn in ids.items():
            d = fn(memo, f, g, h)
            row = rows[name]
            row.checked += 1
            if not _all_zero(alg, d):
                row.failures += 1
                if row.witness is None:
                    defect = " ; ".join(str(x) for x in d) if isinstance(d, tuple) else str(d)
                    row.witness = {
                        "sample": i,
                        "f": _clip(str(f)),
                        "g": _clip(str(g)),
                        "h": _clip(str(h)),
                        "defect": _clip(defect),
                    }
    rep = representation if not composite else f"{representation}⊗{representation}"
    table_dict = None
    if composite:
        t = algebras[0].table
        table_dict = {k: str(v) for k, v in t.as_dict().items()}
    return AuditReport(cls, rep, seed, n_samples, list(rows.values()), table_dict)
