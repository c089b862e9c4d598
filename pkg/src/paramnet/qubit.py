"""
Dispersive readout: photon shot-noise dephasing, backaction photons, SNR.

Rates are angular (rad/s) and times in seconds throughout.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.special import erfc

from .errors import ValidationError

TWO_PI = 2 * math.pi

# Clamp window for slightly negative backaction photon numbers.
NBA_CLAMP = 0.01


@dataclass(frozen=True)
class ReadoutParams:
    kappa: float
    chi: float
    nbar: float = 6.4
    eta: float = 0.32
    t_int: float = 150e-9
    t_r: float = 200e-9
    n_th: float = 0.004

    def __post_init__(self):
        for name in ("kappa", "chi", "nbar", "eta", "t_int", "t_r", "n_th"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValidationError(f"must be positive, got {v!r}", key=name)
        if self.eta > 1:
            raise ValidationError(f"must not exceed 1, got {self.eta}", key="eta")

    @classmethod
    def from_mhz(cls, kappa_mhz: float, chi_mhz: float, **kw) -> "ReadoutParams":
        """Build from linewidth and dispersive shift quoted as ``x / 2pi`` in MHz."""
        return cls(kappa=TWO_PI * kappa_mhz * 1e6, chi=TWO_PI * chi_mhz * 1e6, **kw)


# Readout resonator of the measured transmon: kappa/2pi = 7.99 MHz, chi/2pi = 3.4 MHz.
DEVICE_READOUT = ReadoutParams.from_mhz(7.99, 3.4)


@dataclass(frozen=True)
class CoherenceRecord:
    t1: float
    t2e: float
    t_phi: float
    n_ba: float

    @property
    def n_ba_rounded(self) -> float:
        return round(self.n_ba, 2)


def dephasing_rate(nbar_total: float, kappa: float, chi: float) -> float:
    """Shot-noise dephasing rate ``n kappa chi^2 / (kappa^2 + chi^2)``."""
    return nbar_total * kappa * chi**2 / (kappa**2 + chi**2)


def photons_from_rate(gamma_phi: float, kappa: float, chi: float) -> float:
    return gamma_phi * (kappa**2 + chi**2) / (kappa * chi**2)


def extract_backaction(t1: float, t2e: float, rp: ReadoutParams) -> CoherenceRecord:
    """Pure dephasing time and backaction photon number from a (T1, T2E) pair.

    Uses ``1/T2E = 1/(2 T1) + 1/T_phi`` and ``n = n_th + n_ba``.  Values of
    ``n_ba`` within ``NBA_CLAMP`` below zero are clamped to zero with a
    warning; anything more negative is rejected.
    """
    if not (t1 > 0 and t2e > 0):
        raise ValidationError("T1 and T2E must be positive", key="t1")
    if t2e >= 2 * t1:
        raise ValidationError(f"T2E = {t2e} must be below 2 T1 = {2 * t1}", key="t2e")
    t_phi = 1 / (1 / t2e - 1 / (2 * t1))
    n_ba = photons_from_rate(1 / t_phi, rp.kappa, rp.chi) - rp.n_th
    if n_ba < 0:
        if n_ba < -NBA_CLAMP:
            raise ValidationError(
                f"dephasing implies {n_ba:.4f} backaction photons, below the thermal baseline",
                key="t2e",
            )
        warnings.warn(f"backaction photon number {n_ba:.2e} clamped to 0", RuntimeWarning,
                      stacklevel=2)
        n_ba = 0.0
    return CoherenceRecord(t1, t2e, t_phi, n_ba)


def t2e_from_photons(t1: float, nbar_total: float, rp: ReadoutParams) -> float:
    """Echo time limited by relaxation and shot-noise dephasing."""
    return 1 / (1 / (2 * t1) + dephasing_rate(nbar_total, rp.kappa, rp.chi))


def dispersive_phase(chi: float, kappa: float) -> float:
    """Qubit-state-dependent readout phase ``theta`` with ``tan(theta/2) = chi/kappa``."""
    if chi < 0 or kappa <= 0:
        raise ValidationError("chi must be non-negative and kappa positive", key="chi")
    return 2 * math.atan(chi / kappa)


def readout_snr(rp: ReadoutParams, theta: float) -> float:
    """Histogram separation ``I/sigma = sqrt(2 n eta kappa t_int) sin(theta/2)``."""
    return math.sqrt(2 * rp.nbar * rp.eta * rp.kappa * rp.t_int) * math.sin(theta / 2)


def efficiency_from_snr(snr: float, rp: ReadoutParams, theta: float) -> float:
    """Measurement efficiency implied by an observed ``I/sigma``; ``rp.eta`` is ignored."""
    per_eta = math.sqrt(2 * rp.nbar * rp.kappa * rp.t_int) * math.sin(theta / 2)
    return (snr / per_eta) ** 2


def gaussian_fidelity(snr: float) -> float:
    """Assignment fidelity of two unit-variance Gaussians separated by ``snr``.

    Ignores relaxation during the readout, so it upper-bounds a measured value.
    """
    if snr < 0:
        raise ValidationError(f"must be non-negative, got {snr}", key="snr")
    return 1 - 0.5 * float(erfc(snr / math.sqrt(2)))


# Coherence times per setup configuration (isolator state, amplifier state) in
# microseconds, with the tabulated dephasing time and backaction photon number.
SETUP_RECORDS = {
    "a": dict(mpijis="off", jpc="off", t1=39.0, t2e=24.2, t_phi=35.1, n_ba=0.0),
    "b": dict(mpijis="F", jpc="off", t1=39.2, t2e=7.6, t_phi=8.4, n_ba=0.01),
    "c": dict(mpijis="off", jpc="on", t1=19.2, t2e=0.1, t_phi=0.1, n_ba=1.29),
    "d": dict(mpijis="F", jpc="on", t1=37.6, t2e=5.5, t_phi=5.9, n_ba=0.02),
    "e": dict(mpijis="B", jpc="off", t1=40.9, t2e=3.7, t_phi=3.9, n_ba=0.03),
    "f": dict(mpijis="B", jpc="on", t1=22.0, t2e=0.2, t_phi=0.2, n_ba=0.64),
}


def backaction_table(records, rp: ReadoutParams = DEVICE_READOUT) -> list[tuple[str, CoherenceRecord]]:
    """Evaluate ``(label, T1_us, T2E_us)`` rows; output times stay in seconds."""
    return [(label, extract_backaction(t1_us * 1e-6, t2e_us * 1e-6, rp))
            for label, t1_us, t2e_us in records]
