"""
Bandwidth of the isolator
=========================

Away from resonance the converters transmit less and the cancellation of
the backward path degrades.  The isolation band is therefore set by the
JPC linewidth, a few tens of MHz here.
"""

import math
from pathlib import Path

import numpy as np

from paramnet import JpcParams, MpijisParams, compose_sweep, db_power, full_smatrix_at, mpijis_network

TWO_PI = 2 * math.pi
jpc = JpcParams(rho=math.sqrt(2) - 1, omega_a=TWO_PI * 6.838e9, omega_b=TWO_PI * 9.609e9,
                kappa_a=TWO_PI * 40e6, kappa_b=TWO_PI * 40e6)
p = MpijisParams.from_phases(t=1 / math.sqrt(2))

freqs = np.linspace(6.738e9, 6.938e9, 401)
closed = [full_smatrix_at(p, jpc, TWO_PI * f) for f in freqs]
s21 = db_power(np.array([m.data[1, 0] for m in closed]))
s12 = db_power(np.array([m.data[0, 1] for m in closed]))

# The backward cancellation is a sharp notch at resonance.
for level in (-20, -10):
    band = freqs[s12 <= level]
    print(f"isolation better than {-level} dB over {(band.max() - band.min()) / 1e6:.1f} MHz")
print(f"forward loss at resonance {s21[len(freqs) // 2]:.3f} dB")

# The element-level network uses the full lossless converter response.
full = compose_sweep(lambda w: mpijis_network(p, jpc, w, model="input-output"), TWO_PI * freqs)
s12_io = db_power(np.array([m.data[0, 1] for m in full]))
band_io = freqs[s12_io <= -10]
print(f"10 dB isolation band with the input-output converter model: "
      f"{(band_io.max() - band_io.min()) / 1e6:.1f} MHz")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(freqs / 1e9, s21, label="S21")
    ax.plot(freqs / 1e9, s12, label="S12")
    ax.plot(freqs / 1e9, s12_io, "--", label="S12 (input-output)")
    ax.set_xlabel("frequency (GHz)")
    ax.set_ylabel("dB")
    ax.legend()
    fig.tight_layout()
    out = Path(__file__).with_name("frequency_response.png")
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")
