"""Dataclass configurations for the experiment scripts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class AuditConfig:
    """Which (class, representation) pairs to audit and how hard."""

    pairs: tuple = (
        ("elliptic", "matrix"),
        ("hyperbolic", "matrix"),
        ("elliptic", "phase"),
        ("parabolic", "phase"),
        ("hyperbolic", "phase"),
    )
    samples: int = 200
    seed: int = 42
    composite_samples: int = 20


@dataclass(frozen=True)
class DerivationConfig:
    representations: tuple = (
        ("elliptic", "matrix"),
        ("hyperbolic", "matrix"),
        ("elliptic", "phase"),
        ("parabolic", "phase"),
        ("hyperbolic", "phase"),
    )
    seeds: tuple = (0, 1, 2)
    matrix_dim: int = 2
    unit_samples: int = 5
    leibniz_samples: int = 3


@dataclass(frozen=True)
class ChshSweepConfig:
    """Sweep ``(0, 2t, t, 3t)``; ``t = pi/4`` is the optimum."""

    steps: int = 17
    t_max: float = math.pi / 2
    extra_angles: list = field(default_factory=lambda: [(0.0, math.pi / 2, 0.0, math.pi / 2)])
