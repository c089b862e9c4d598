"""
A stepped-impedance Purcell filter
==================================

Alternating low- and high-impedance sections form a low-pass cascade.  It
passes the readout tone near 6.8 GHz and blocks the qubit band around
5.2 GHz, where the qubit would otherwise decay into the line.
"""

from pathlib import Path

import numpy as np

from paramnet import db_power
from paramnet.devices import SteppedFilterParams, stepped_filter_smatrix

p = SteppedFilterParams.purcell()
freqs = np.linspace(4e9, 8e9, 2001)
s21 = np.array([db_power(stepped_filter_smatrix(p, f).data[1, 0]) for f in freqs])

band = freqs[s21 >= -3]
print(f"-3 dB band {band.min() / 1e9:.2f} to {band.max() / 1e9:.2f} GHz, "
      f"peak at {freqs[np.argmax(s21)] / 1e9:.3f} GHz")
for f in (5.2e9, 6.5e9, 6.838e9):
    print(f"  {f / 1e9:.3f} GHz: {db_power(stepped_filter_smatrix(p, f).data[1, 0]):6.2f} dB")

# The response depends on the effective permittivity of the substrate.
for eps in (5.0, 5.5, 6.0):
    q = SteppedFilterParams.purcell(eps_eff=eps)
    peak = freqs[np.argmax([abs(stepped_filter_smatrix(q, f).data[1, 0]) for f in freqs])]
    print(f"eps_eff = {eps}: passband peak {peak / 1e9:.3f} GHz")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(freqs / 1e9, s21)
    ax.axvline(5.2696, color="k", ls=":", label="qubit")
    ax.axvline(6.838, color="r", ls=":", label="readout")
    ax.set_xlabel("frequency (GHz)")
    ax.set_ylabel("|S21| (dB)")
    ax.legend()
    fig.tight_layout()
    out = Path(__file__).with_name("purcell_filter.png")
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")
