"""Sweep CHSH measurement angles and compare with the local bound."""

import numpy as np

from twoproduct.chsh import CLASSICAL_BOUND, TSIRELSON_BOUND, chsh_classical_max, chsh_quantum
from twoproduct.config import ChshSweepConfig


def main():
    cfg = ChshSweepConfig()
    classical = chsh_classical_max()
    print(f"classical max |S| = {classical.value} at {classical.strategy_or_angles}")
    print(f"{'t':>8}  {'|S|':>10}  above local bound")
    for t in np.linspace(0.0, cfg.t_max, cfg.steps):
        r = chsh_quantum((0.0, 2 * t, t, 3 * t))
        print(f"{t:8.4f}  {r.value:10.6f}  {'yes' if r.value > CLASSICAL_BOUND + 1e-12 else 'no'}")
    for angles in cfg.extra_angles:
        print(f"angles {tuple(round(a, 4) for a in angles)}: |S| = {chsh_quantum(angles).value:.6f}")
    print(f"Tsirelson bound 2*sqrt(2) = {TSIRELSON_BOUND:.12f}")


if __name__ == "__main__":
    main()
