"""
Reversing the isolator with the pump phase
==========================================

The direction of isolation is set only by the pump phase difference
``phi = phi1 - phi2``.  Sweeping it moves transmission from ``S21`` to
``S12`` and back, with period ``2 pi``.
"""

import math
from pathlib import Path

import numpy as np

from paramnet import MpijisParams
from paramnet.mpijis import phase_sweep

base = MpijisParams.from_phases(t=1 / math.sqrt(2), alpha=math.sqrt(0.5))
phis = np.linspace(-2 * math.pi, 2 * math.pi, 801)
sw = phase_sweep(base, phis)

best = phis[np.argmax(sw["S21"])]
print(f"forward transmission peaks at phi = {best / math.pi:+.3f} pi, |S21|^2 = {sw['S21'].max():.4f}")
worst = phis[np.argmax(sw["S12"])]
print(f"backward transmission peaks at phi = {worst / math.pi:+.3f} pi")

# Shifting phi by pi swaps the roles of the two directions.
k = len(phis) // 4
print(f"|S21|^2(phi) - |S12|^2(phi + pi) = {sw['S21'][k] - sw['S12'][k + 200]:.1e}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for term in ("S21", "S12", "S31", "S13"):
        ax.plot(phis / math.pi, sw[term], label=f"|{term}|$^2$")
    ax.set_xlabel(r"$\varphi / \pi$")
    ax.set_ylabel("power")
    ax.legend()
    fig.tight_layout()
    out = Path(__file__).with_name("phase_sweep.png")
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")
