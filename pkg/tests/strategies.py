"""Hypothesis strategies shared by the test modules."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from twoproduct.scalar import PairScalar

eps_values = st.sampled_from((-1, 0, 1))
nonparabolic_eps = st.sampled_from((-1, 1))
seeds = st.integers(min_value=0, max_value=2**32 - 1)

small_fractions = st.builds(
    Fraction, st.integers(min_value=-50, max_value=50), st.integers(min_value=1, max_value=12)
)


def scalars(eps):
    return st.builds(lambda a, b: PairScalar(a, b, eps), small_fractions, small_fractions)


def samples(algebra, k):
    """``k`` seeded random elements of ``algebra``."""
    return seeds.map(lambda s: _draw(algebra, s, k))


def _draw(algebra, seed, k):
    rng = random.Random(seed)
    return tuple(algebra.random_element(rng) for _ in range(k))
