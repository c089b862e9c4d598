"""
Trading link amplitude against insertion loss
=============================================

Hold the backward isolation at 20 dB and vary the internal link amplitude
``alpha``.  For each value the converter transmission ``t`` is re-solved.
A stronger link lowers the forward loss but needs less conversion, so
less of the signal is routed through the idler ports.
"""

from pathlib import Path

import numpy as np

from paramnet.mpijis import alpha_sweep

alphas = np.linspace(0.2, 0.99, 80)
sw = alpha_sweep(alphas, target_iso_power=0.01)

for a in (0.2, 0.5, np.sqrt(0.5), 0.9, 0.99):
    k = int(np.argmin(np.abs(alphas - a)))
    print(f"alpha = {alphas[k]:.3f}: t = {sw['t'][k]:.4f}, |S21|^2 = {sw['S21'][k]:.4f}, "
          f"|S12|^2 = {sw['S12'][k]:.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for term in ("S21", "S12", "S23", "S31"):
        ax.plot(alphas, sw[term], label=f"|{term}|$^2$")
    ax.plot(alphas, sw["t"], "k:", label="t")
    ax.set_xlabel(r"$\alpha$")
    ax.legend()
    fig.tight_layout()
    out = Path(__file__).with_name("alpha_tradeoff.png")
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")
