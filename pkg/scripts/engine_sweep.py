"""Engine efficiency between finite reservoirs as they degrade.

Fix cold/hot starting temperatures and shrink the per-cycle temperature
change of both reservoirs (equivalently grow the reservoirs); the best
engine and refrigerator efficiencies climb toward, but never reach, the
Carnot values.

Usage: python scripts/engine_sweep.py
"""

import numpy as np

from thermocone import HamiltonianSpec, engine_efficiencies

QUBIT = HamiltonianSpec(((0.0, 1), (1.0, 1)))
BETA_COLD, BETA_HOT = 2.0, 0.5


def main() -> int:
    carnot_engine = 1.0 - BETA_HOT / BETA_COLD
    print(f"Carnot engine efficiency: {carnot_engine:.6f}")
    print(f"{'gap':>10} {'eta_engine':>12} {'shortfall':>12} {'eta_refrig':>12} {'W':>10}")
    for gap in np.geomspace(0.5, 1e-5, 12):
        res = engine_efficiencies(QUBIT, BETA_COLD, BETA_COLD - gap, BETA_HOT + gap, BETA_HOT)
        print(
            f"{gap:>10.2e} {res.eta_engine:>12.8f} {carnot_engine - res.eta_engine:>12.2e} "
            f"{res.eta_refrigerator:>12.8f} {res.work:>10.6f}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
