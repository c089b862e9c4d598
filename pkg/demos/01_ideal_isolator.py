"""
The ideal isolator working point
================================

Two balanced frequency converters between a 90 degree hybrid and an internal
coupler.  At the 50:50 point every converter transmits half the power,
the link amplitude is ``sqrt(1/2)`` and the pump phases differ by
``-pi/2``.  Here the backward path cancels exactly while the forward path
keeps 8/9 of the power.
"""

import math

import numpy as np

from paramnet import MpijisParams, compose, full_smatrix, is_unitary, mpijis_network
from paramnet.mpijis import added_noise

p = MpijisParams.from_phases(t=1 / math.sqrt(2), alpha=math.sqrt(0.5), phi=-math.pi / 2)
S = full_smatrix(p)

# Ports 1 and 2 carry the signal (f1), ports 3 and 4 the idler side (f2).
np.set_printoptions(precision=4, suppress=True)
print("|S_ij|^2 at the working point:")
print(np.abs(S.data) ** 2)

s21 = abs(S.data[1, 0]) ** 2
print(f"forward  |S21|^2 = {s21:.6f}  ({10 * math.log10(s21):.3f} dB)")
print(f"backward |S12|^2 = {abs(S.data[0, 1]) ** 2:.2e}")

# The missing forward power does not vanish.  It leaves through the idler
# ports, so the full four-port stays lossless.
print("lossless:", is_unitary(S))

# Building the same device element by element gives the same matrix.
net = compose(mpijis_network(p))
print(f"closed form vs network solve: {np.max(np.abs(net.data - S.data)):.1e}")

# Attenuation in the forward path adds noise referred to the input.
report = added_noise(s21)
print(f"added noise n_add = {report.n_add:.4f} photons")
