"""Floating-point CHSH demonstration: singlet correlations versus local strategies.

This is the only module that uses floats. Spin observables are
``A(theta) = cos(theta) sz + sin(theta) sx`` and the state is the singlet
``(|01> - |10>)/sqrt(2)``, so ``E(a, b) = -cos(a - b)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
SINGLET = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)

CLASSICAL_BOUND = 2
TSIRELSON_BOUND = 2 * math.sqrt(2.0)

# (a, a', b, b') reaching |S| = 2 sqrt(2) with S = E(a,b) - E(a,b') + E(a',b) + E(a',b')
OPTIMAL_ANGLES = (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)

_OPTIMAL_TOL = 1e-9


@dataclass(frozen=True)
class ChshResult:
    mode: str
    value: float
    optimal: bool
    strategy_or_angles: tuple
    correlations: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "value": self.value,
            "optimal": self.optimal,
            "strategy_or_angles": list(self.strategy_or_angles),
            "correlations": dict(self.correlations),
        }


def spin_observable(theta: float) -> np.ndarray:
    return math.cos(theta) * SZ + math.sin(theta) * SX


def singlet_correlation(theta_a: float, theta_b: float) -> float:
    """``<psi| A(theta_a) (x) A(theta_b) |psi>`` on the singlet."""
    op = np.kron(spin_observable(theta_a), spin_observable(theta_b))
    return float(SINGLET @ op @ SINGLET)


def chsh_combination(e_ab, e_abp, e_apb, e_apbp):
    return e_ab - e_abp + e_apb + e_apbp


def chsh_quantum(angles) -> ChshResult:
    """CHSH value ``|S|`` for measurement angles ``(a, a', b, b')``."""
    a, ap, b, bp = (float(x) for x in angles)
    if not all(math.isfinite(x) for x in (a, ap, b, bp)):
        raise ValueError("angles must be finite")
    corr = {
        "E(a,b)": singlet_correlation(a, b),
        "E(a,b')": singlet_correlation(a, bp),
        "E(a',b)": singlet_correlation(ap, b),
        "E(a',b')": singlet_correlation(ap, bp),
    }
    s = chsh_combination(*corr.values())
    value = abs(s)
    return ChshResult(
        mode="quantum",
        value=value,
        optimal=abs(value - TSIRELSON_BOUND) <= _OPTIMAL_TOL,
        strategy_or_angles=(a, ap, b, bp),
        correlations={**corr, "S": s},
    )


def classical_value(strategy) -> int:
    """Signed ``S`` for deterministic outcomes ``(A, A', B, B')`` in {+1, -1}."""
    a, ap, b, bp = strategy
    return chsh_combination(a * b, a * bp, ap * b, ap * bp)


def chsh_classical_max() -> ChshResult:
    """Brute force over the 16 deterministic local strategies."""
    best = None
    best_value = None
    for strategy in itertools.product((1, -1), repeat=4):
        v = abs(classical_value(strategy))
        if best_value is None or v > best_value:
            best, best_value = strategy, v
    return ChshResult(
        mode="classical",
        value=best_value,
        optimal=best_value == CLASSICAL_BOUND,
        strategy_or_angles=best,
        correlations={"S": classical_value(best)},
    )
