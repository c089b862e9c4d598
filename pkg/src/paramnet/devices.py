"""
Scattering-matrix factories for the elements of a parametric isolator chain.

Phase conventions are chosen so that wiring the elements together with
:mod:`paramnet.netgraph` reproduces the closed forms of :mod:`paramnet.mpijis`
exactly:

* JPC in conversion mode, ports ``(a, b)``::

      [[ r_a,            -t e^{-i phi_p}],
       [-t e^{+i phi_p},  r_b           ]]

  with ``r_a = r`` and ``r_b = -r`` on resonance.  Up-conversion a -> b carries
  ``e^{+i phi_p}``, down-conversion b -> a carries ``e^{-i phi_p}``.
* 90 degree hybrid: through ``1/sqrt2``, coupled ``i/sqrt2``.
* Effective internal coupler, ports ``(b1, b2, 3, 4)``: real orthogonal,
  rail ``b1 <-> b2`` amplitude ``-alpha``, rail-to-load ``beta``, load-to-load
  ``alpha``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .wave import ScatterMatrix

C0 = 299_792_458.0
SQRT_HALF = math.sqrt(0.5)

JPC_MODELS = ("input-output", "substitution")


def _check_unit(name: str, x: float, lo_open: bool = False):
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValidationError(f"must be a finite real number, got {x!r}", key=name)
    if x > 1 or x < 0 or (lo_open and x == 0):
        raise ValidationError(f"must lie in {'(0' if lo_open else '[0'}, 1], got {x}", key=name)


@dataclass(frozen=True)
class JpcParams:
    """Pump and resonator parameters of one Josephson parametric converter.

    Frequencies and decay rates are angular (rad/s).
    """

    rho: float
    pump_phase: float = 0.0
    omega_a: float = 2 * math.pi * 7.0e9
    omega_b: float = 2 * math.pi * 9.8e9
    kappa_a: float = 2 * math.pi * 40e6
    kappa_b: float = 2 * math.pi * 40e6

    def __post_init__(self):
        _check_unit("rho", self.rho)
        for name in ("kappa_a", "kappa_b", "omega_a", "omega_b"):
            if not getattr(self, name) > 0:
                raise ValidationError("must be positive", key=name)
        if not self.omega_b > self.omega_a:
            raise ValidationError("omega_b must exceed omega_a", key="omega_b")

    @property
    def pump_omega(self) -> float:
        return self.omega_b - self.omega_a


@dataclass(frozen=True)
class CouplerParams:
    alpha: float
    beta: float = field(init=False)

    def __post_init__(self):
        _check_unit("alpha", self.alpha)
        object.__setattr__(self, "beta", math.sqrt(1.0 - self.alpha**2))


@dataclass(frozen=True)
class LineParams:
    phase: float = 2 * math.pi
    loss: float = 1.0

    def __post_init__(self):
        _check_unit("loss", self.loss, lo_open=True)


@dataclass(frozen=True)
class SteppedFilterParams:
    """Cascade of lossless transmission-line sections.

    ``sections`` holds ``(impedance_ohm, length_m)`` pairs in signal order.
    """

    sections: tuple[tuple[float, float], ...]
    eps_eff: float = 5.5
    z0: float = 50.0

    def __post_init__(self):
        secs = tuple((float(z), float(l)) for z, l in self.sections)
        if not secs:
            raise ValidationError("at least one section is required", key="sections")
        for z, l in secs:
            if not (z > 0 and l > 0):
                raise ValidationError(
                    f"impedances and lengths must be positive, got ({z}, {l})", key="sections"
                )
        if not self.eps_eff > 0:
            raise ValidationError("must be positive", key="eps_eff")
        if not self.z0 > 0:
            raise ValidationError("must be positive", key="z0")
        object.__setattr__(self, "sections", secs)

    @classmethod
    def purcell(cls, eps_eff: float = 5.5, z0: float = 50.0) -> "SteppedFilterParams":
        """Five-section low/high/low/high/low Purcell filter geometry."""
        lo, hi = (25.0, 8.5e-3), (120.0, 6.5e-3)
        return cls((lo, hi, lo, hi, lo), eps_eff=eps_eff, z0=z0)


def jpc_rt(rho: float) -> tuple[float, float]:
    """On-resonance conversion amplitudes ``(r, t)`` for pump amplitude ``rho``."""
    _check_unit("rho", rho)
    d = 1.0 + rho * rho
    return (1.0 - rho * rho) / d, 2.0 * rho / d


def rho_from_t(t: float) -> float:
    """Inverse of the transmission branch of :func:`jpc_rt` on ``[0, 1]``."""
    _check_unit("t", t)
    return t / (1.0 + math.sqrt(1.0 - t * t))


def inverse_responses(p: JpcParams, omega: float) -> tuple[complex, complex]:
    """Inverse bare response functions of modes a and b at signal frequency ``omega``.

    Mode b is evaluated at the converted frequency ``omega + omega_p``, which
    gives the same detuning as mode a.
    """
    delta = omega - p.omega_a
    return 1 - 2j * delta / p.kappa_a, 1 - 2j * delta / p.kappa_b


def jpc_transmission(p: JpcParams, omega: float) -> complex:
    """Complex conversion amplitude ``2 rho / (chi_a^-1 chi_b^-1 + rho^2)``."""
    ia, ib = inverse_responses(p, omega)
    return 2 * p.rho / (ia * ib + p.rho**2)


def jpc_reflections(p: JpcParams, omega: float, model: str = "input-output") -> tuple[complex, complex]:
    """Reflection amplitudes ``(r_a, r_b)`` in the sign convention of this module.

    ``input-output`` uses the coupled-mode solution, which keeps the 2x2
    unitary at every real detuning.  ``substitution`` uses
    ``r = sqrt(1 - t[omega]^2)`` (principal branch), the form that is
    consistent with the closed-form isolator matrices evaluated at complex t.
    """
    ia, ib = inverse_responses(p, omega)
    if model == "input-output":
        den = ia * ib + p.rho**2
        return (ia.conjugate() * ib - p.rho**2) / den, -(ia * ib.conjugate() - p.rho**2) / den
    if model == "substitution":
        t = jpc_transmission(p, omega)
        r = cmath.sqrt(1 - t * t)
        return r, -r
    raise ValidationError(f"unknown JPC model {model!r}; choose from {JPC_MODELS}", key="model")


def converter_smatrix(
    r_a: complex, r_b: complex, t: complex, pump_phase: float, element: str = "jpc"
) -> ScatterMatrix:
    """Generic two-channel converter with ports ``a`` (f1) and ``b`` (f2)."""
    data = [
        [r_a, -t * cmath.exp(-1j * pump_phase)],
        [-t * cmath.exp(1j * pump_phase), r_b],
    ]
    return ScatterMatrix.from_names(element, ("a", "b"), data, ("f1", "f2"))


def jpc_smatrix(
    p: JpcParams, signal_omega: float | None = None, model: str = "input-output", element: str = "jpc"
) -> ScatterMatrix:
    """2x2 S-matrix of a JPC in conversion mode at ``signal_omega`` (rad/s).

    ``signal_omega`` defaults to the mode-a resonance.
    """
    omega = p.omega_a if signal_omega is None else signal_omega
    r_a, r_b = jpc_reflections(p, omega, model)
    return converter_smatrix(r_a, r_b, jpc_transmission(p, omega), p.pump_phase, element)


def hybrid90_smatrix(element: str = "hyb", imbalance_db: float = 0.0) -> ScatterMatrix:
    """Lossless 90 degree hybrid over ports ``(1, 2, 1p, 2p)``, all on f1.

    ``imbalance_db`` is the through/coupled power ratio; zero is the ideal
    3 dB split.  Any imbalance keeps the hybrid lossless and reciprocal.
    """
    ratio = 10 ** (imbalance_db / 10)
    a = math.sqrt(ratio / (1 + ratio))
    b = 1j * math.sqrt(1 / (1 + ratio))
    data = np.array(
        [
            [0, 0, a, b],
            [0, 0, b, a],
            [a, b, 0, 0],
            [b, a, 0, 0],
        ],
        dtype=complex,
    )
    return ScatterMatrix.from_names(element, ("1", "2", "1p", "2p"), data, "f1")


def effective_coupler_smatrix(p: CouplerParams, element: str = "cpl") -> ScatterMatrix:
    """Real symmetric 4-port modelling the lossy internal b-channel link.

    Ports ``b1``, ``b2`` face the two JPCs, ``3`` and ``4`` are the cold loads.
    """
    al, be = p.alpha, p.beta
    data = [
        [0, -al, be, 0],
        [-al, 0, 0, be],
        [be, 0, 0, al],
        [0, be, al, 0],
    ]
    return ScatterMatrix.from_names(element, ("b1", "b2", "3", "4"), data, "f2")


def line_smatrix(p: LineParams = LineParams(), element: str = "line", channel: str = "f2") -> ScatterMatrix:
    tr = p.loss * cmath.exp(1j * p.phase)
    return ScatterMatrix.from_names(element, ("1", "2"), [[0, tr], [tr, 0]], channel)


def load_smatrix(element: str = "load", channel: str = "f1") -> ScatterMatrix:
    return ScatterMatrix.from_names(element, ("1",), [[0]], channel)


def mirror_smatrix(reflection: complex = 1.0, element: str = "mirror", channel: str = "f1") -> ScatterMatrix:
    return ScatterMatrix.from_names(element, ("1",), [[reflection]], channel)


def circulator_smatrix(element: str = "circ", channel: str = "f1") -> ScatterMatrix:
    """Ideal three-port circulator routing 1 -> 2 -> 3 -> 1."""
    data = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    return ScatterMatrix.from_names(element, ("1", "2", "3"), data, channel)


def directional_coupler_smatrix(coupling_db: float, element: str = "dc", channel: str = "f1") -> ScatterMatrix:
    """Ideal lossless directional coupler.

    Through paths 1-2 and 3-4, coupled paths 1-3 and 2-4 (amplitude
    ``i 10^(coupling_db/20)``), isolated paths 1-4 and 2-3.
    """
    if not coupling_db < 0:
        raise ValidationError(f"must be negative, got {coupling_db}", key="coupling_db")
    c = 10 ** (coupling_db / 20)
    tau = math.sqrt(1 - c * c)
    k = 1j * c
    data = [
        [0, tau, k, 0],
        [tau, 0, 0, k],
        [k, 0, 0, tau],
        [0, k, tau, 0],
    ]
    return ScatterMatrix.from_names(element, ("1", "2", "3", "4"), data, channel)


def abcd_to_s(abcd: np.ndarray, z0: float) -> np.ndarray:
    a, b, c, d = abcd[0, 0], abcd[0, 1], abcd[1, 0], abcd[1, 1]
    den = a + b / z0 + c * z0 + d
    return np.array(
        [
            [(a + b / z0 - c * z0 - d) / den, 2 * (a * d - b * c) / den],
            [2 / den, (-a + b / z0 - c * z0 + d) / den],
        ]
    )


def stepped_filter_abcd(p: SteppedFilterParams, freq: float) -> np.ndarray:
    if not freq > 0:
        raise ValidationError(f"must be positive, got {freq}", key="freq")
    k = 2 * math.pi * freq * math.sqrt(p.eps_eff) / C0
    m = np.eye(2, dtype=complex)
    for z, length in p.sections:
        bl = k * length
        cs, sn = math.cos(bl), math.sin(bl)
        m = m @ np.array([[cs, 1j * z * sn], [1j * sn / z, cs]])
    return m


def stepped_filter_smatrix(p: SteppedFilterParams, freq: float, element: str = "filter") -> ScatterMatrix:
    """2-port S-matrix of a stepped-impedance line cascade at ``freq`` (Hz)."""
    s = abcd_to_s(stepped_filter_abcd(p, freq), p.z0)
    return ScatterMatrix.from_names(element, ("1", "2"), s, "f1")
