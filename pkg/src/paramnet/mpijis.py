"""
Closed-form model of the two-converter interferometric isolator.

Two balanced JPCs with pump phases ``phi1`` and ``phi2`` are joined on their
a ports by a 90 degree hybrid (external ports 1, 2) and on their b ports by an
effective coupler with real coefficients ``alpha``, ``beta`` whose free ports
3, 4 are the cold loads.  Nonreciprocity is set by ``phi = phi1 - phi2``.

Two independent constructions are provided for the on-resonance 4x4 matrix:
the explicit per-element expressions (:func:`explicit_elements`) and the
assembly of the inner 4-port through the hybrid combination rules
(:func:`hybrid_combination`).  :func:`full_smatrix` picks one of them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .devices import JpcParams, jpc_transmission
from .errors import InfeasibleError, SingularNetworkError, ValidationError
from .wave import PortLabel, ScatterMatrix, wrap_phase

OUTER_PORTS = (
    PortLabel("mpijis", "1", "f1"),
    PortLabel("mpijis", "2", "f1"),
    PortLabel("mpijis", "3", "f2"),
    PortLabel("mpijis", "4", "f2"),
)
INNER_PORTS = (
    PortLabel("inner", "1p", "f1"),
    PortLabel("inner", "2p", "f1"),
    PortLabel("inner", "3", "f2"),
    PortLabel("inner", "4", "f2"),
)

# Columns of the on-resonance phase response plot, in plotting order.
PHASE_SWEEP_TERMS = ("S11", "S21", "S12", "S31", "S23", "S13", "S32")


@dataclass(frozen=True)
class MpijisParams:
    """Balanced-JPC isolator parameters.

    ``t`` is the JPC conversion amplitude, ``alpha`` the direct amplitude of
    the internal b-channel link and ``phi1``/``phi2`` the pump phases.
    """

    t: float
    alpha: float = math.sqrt(0.5)
    phi1: float = 0.0
    phi2: float = math.pi / 2

    def __post_init__(self):
        for name in ("t", "alpha"):
            x = getattr(self, name)
            if not (isinstance(x, (int, float)) and 0.0 <= x <= 1.0):
                raise ValidationError(f"must lie in [0, 1], got {x!r}", key=name)
        for name in ("phi1", "phi2"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError("must be finite", key=name)

    @classmethod
    def from_phases(cls, t: float, alpha: float = math.sqrt(0.5), phi: float = -math.pi / 2,
                    phi_s: float = math.pi / 2) -> "MpijisParams":
        """Build from the pump phase difference ``phi`` and sum ``phi_s``."""
        return cls(t, alpha, (phi_s + phi) / 2, (phi_s - phi) / 2)

    @property
    def beta(self) -> float:
        return math.sqrt(1.0 - self.alpha**2)

    @property
    def r(self) -> float:
        return math.sqrt(1.0 - self.t**2)

    @property
    def phi(self) -> float:
        return wrap_phase(self.phi1 - self.phi2)

    @property
    def phi_s(self) -> float:
        return self.phi1 + self.phi2


@dataclass(frozen=True)
class NoiseReport:
    s21_power: float
    noise_factor: float
    n_add: float


def two_port_on_resonance(t: float, phi: float) -> tuple[complex, complex, complex]:
    """``(S21, S12, S11)`` between the external ports for a symmetric internal coupler.

    ``S22`` equals ``S11``.
    """
    t2 = t * t
    root = math.sqrt(1 - t2)
    s21 = 1j * (root - math.sqrt(2) * t2 * math.sin(phi)) / (1 + t2)
    s12 = 1j * (root + math.sqrt(2) * t2 * math.sin(phi)) / (1 + t2)
    s11 = -1j * math.sqrt(2) * t2 * math.cos(phi) / (1 + t2)
    return s21, s12, s11


def inner_smatrix(r: complex, t: complex, phi1: float, phi2: float, alpha: float) -> ScatterMatrix:
    """Inner 4-port (JPCs plus internal coupler) over ``1p, 2p, 3, 4``.

    ``r`` and ``t`` may be complex as long as ``r^2 + t^2 = 1``.
    """
    if abs(r * r + t * t - 1) > 1e-12:
        raise ValidationError(f"r^2 + t^2 must equal 1, got {r * r + t * t}", key="r")
    beta2 = 1 - alpha * alpha
    beta = math.sqrt(beta2)
    loop = 1 - alpha * alpha * (r * r)
    if abs(loop) < 1e-15:
        raise SingularNetworkError(
            "self-loop between the b ports is lossless and resonant (alpha * r = 1)",
            ports=("cpl.b1", "cpl.b2"),
        )
    e1, e2 = cmath.exp(1j * phi1), cmath.exp(1j * phi2)
    e = cmath.exp(1j * (phi1 - phi2))
    rows = [
            [r * beta2, -alpha * t**2 / e, -beta * t / e1, -beta * r * alpha * t / e1],
            [-alpha * t**2 * e, r * beta2, -beta * r * alpha * t / e2, -beta * t / e2],
            [-beta * t * e1, -beta * r * alpha * t * e2, -beta2 * r, alpha * t**2],
            [-beta * r * alpha * t * e1, -beta * t * e2, alpha * t**2, -beta2 * r],
    ]
    # scalar division keeps the t = 0 case exact (numpy's complex/real division does not)
    s = np.array([[x / loop for x in row] for row in rows], dtype=complex)
    return ScatterMatrix(INNER_PORTS, s)


def hybrid_combination(inner: ScatterMatrix) -> ScatterMatrix:
    """Outer 4x4 matrix from the inner one via the 90 degree hybrid relations."""
    s = inner.data
    i = 1j
    q = 1 / math.sqrt(2)
    S = np.empty((4, 4), dtype=complex)
    S[0, 0] = 0.5 * (s[0, 0] - s[1, 1] + i * s[1, 0] + i * s[0, 1])
    S[0, 1] = 0.5 * (i * s[0, 0] + i * s[1, 1] + s[0, 1] - s[1, 0])
    S[1, 0] = 0.5 * (i * s[0, 0] + i * s[1, 1] + s[1, 0] - s[0, 1])
    S[1, 1] = 0.5 * (s[1, 1] - s[0, 0] + i * s[1, 0] + i * s[0, 1])
    for k in (2, 3):
        S[0, k] = q * (i * s[1, k] + s[0, k])
        S[1, k] = q * (s[1, k] + i * s[0, k])
        S[k, 0] = q * (i * s[k, 1] + s[k, 0])
        S[k, 1] = q * (s[k, 1] + i * s[k, 0])
    S[2:, 2:] = s[2:, 2:]
    return ScatterMatrix(OUTER_PORTS, S)


def explicit_elements(t: complex, alpha: float, phi1: float, phi2: float) -> np.ndarray:
    """Outer 4x4 matrix written element by element in terms of ``t`` only.

    Requires ``alpha < 1``.  For complex ``t`` the principal branch of
    ``sqrt(1 - t^2)`` is used.
    """
    beta2 = 1 - alpha * alpha
    if beta2 <= 0:
        raise ValidationError("explicit form needs alpha < 1", key="alpha")
    beta = math.sqrt(beta2)
    t2 = t * t
    root = cmath.sqrt(1 - t2)
    phi = phi1 - phi2
    phi_s = phi1 + phi2
    den = 1 + alpha**2 / beta2 * t2
    h = alpha / beta2 * t2 / den
    g = root / den
    sin, cos = math.sin(phi), math.cos(phi)
    ex = cmath.exp
    q = 1j * math.pi / 4
    hp, hm = 0.5j * phi, -0.5j * phi

    pre_in = -t * ex(-0.5j * phi_s + q) / (math.sqrt(2) * beta * den)
    pre_out = -t * ex(0.5j * phi_s + q) / (math.sqrt(2) * beta * den)
    ra = root * alpha

    S = np.empty((4, 4), dtype=complex)
    S[1, 0] = 1j * (g - h * sin)
    S[0, 1] = 1j * (g + h * sin)
    S[0, 0] = S[1, 1] = -1j * h * cos
    S[2, 2] = S[3, 3] = -g
    S[2, 3] = S[3, 2] = h
    S[0, 2] = pre_in * (ra * ex(hp + q) + ex(hm - q))
    S[0, 3] = pre_in * (ex(hp + q) + ra * ex(hm - q))
    S[1, 2] = pre_in * (ra * ex(hp - q) + ex(hm + q))
    S[1, 3] = pre_in * (ex(hp - q) + ra * ex(hm + q))
    S[2, 0] = pre_out * (ra * ex(hm + q) + ex(hp - q))
    S[2, 1] = pre_out * (ra * ex(hm - q) + ex(hp + q))
    S[3, 0] = pre_out * (ex(hm + q) + ra * ex(hp - q))
    S[3, 1] = pre_out * (ex(hm - q) + ra * ex(hp + q))
    return S


def full_smatrix(p: MpijisParams, route: str = "explicit") -> ScatterMatrix:
    """On-resonance 4x4 S-matrix over ports 1, 2 (f1) and loads 3, 4 (f2).

    ``route="explicit"`` evaluates the per-element expressions,
    ``route="hybrid"`` assembles the inner matrix through the hybrid.  The
    explicit route is undefined at ``alpha = 1`` and falls back to the
    hybrid route there.
    """
    if route == "explicit" and p.alpha < 1:
        return ScatterMatrix(OUTER_PORTS, explicit_elements(p.t, p.alpha, p.phi1, p.phi2))
    if route not in ("explicit", "hybrid"):
        raise ValidationError(f"unknown route {route!r}", key="route")
    return hybrid_combination(inner_smatrix(p.r, p.t, p.phi1, p.phi2, p.alpha))


def full_smatrix_at(p: MpijisParams, jpc: JpcParams, omega: float) -> ScatterMatrix:
    """S-matrix at signal frequency ``omega`` (rad/s) within the JPC bandwidth.

    The conversion amplitude comes from the response of ``jpc``; ``p.t`` is
    ignored and ``p`` only supplies ``alpha`` and the pump phases.  The hybrid
    is treated as frequency independent.
    """
    t = jpc_transmission(jpc, omega)
    if p.alpha < 1:
        return ScatterMatrix(OUTER_PORTS, explicit_elements(t, p.alpha, p.phi1, p.phi2))
    return hybrid_combination(inner_smatrix(cmath.sqrt(1 - t * t), t, p.phi1, p.phi2, p.alpha))


def added_noise(s21_power):
    """Noise referred to the input for an attenuating forward path.

    With vacuum noise of half a photon at every input, the noise factor is
    ``|S21|^2`` and ``n_add = (1 - |S21|^2) / (2 |S21|^2)``.  Exact for
    :class:`fractions.Fraction` input.
    """
    if not 0 <= s21_power <= 1:
        raise ValidationError(f"must lie in (0, 1], got {s21_power}", key="s21_power")
    if s21_power == 0:
        return NoiseReport(s21_power, s21_power, math.inf)
    one = Fraction(1) if isinstance(s21_power, Fraction) else 1.0
    return NoiseReport(s21_power, s21_power, (one - s21_power) / (2 * s21_power))


def phase_sweep(base: MpijisParams, phis: Sequence[float],
                terms: Sequence[str] = PHASE_SWEEP_TERMS) -> dict[str, np.ndarray]:
    """Power ``|S_ij|^2`` of the requested terms for each pump phase difference.

    The phase sum of ``base`` is held fixed.
    """
    idx = {f"S{i + 1}{j + 1}": (i, j) for i in range(4) for j in range(4)}
    unknown = [k for k in terms if k not in idx]
    if unknown:
        raise ValidationError(f"unknown terms {unknown}", key="terms")
    out = {k: np.empty(len(phis)) for k in terms}
    for n, phi in enumerate(phis):
        m = full_smatrix(MpijisParams.from_phases(base.t, base.alpha, phi, base.phi_s)).data
        for k in terms:
            out[k][n] = abs(m[idx[k]]) ** 2
    out["phi"] = np.asarray(phis, dtype=float)
    return out


def _s12_signed(t: float, alpha: float, phi: float) -> float:
    # S12 is purely imaginary on resonance; this is its imaginary part.
    beta2 = 1 - alpha * alpha
    return (beta2 * math.sqrt(1 - t * t) + alpha * t * t * math.sin(phi)) / (beta2 + alpha**2 * t * t)


def solve_t_for_isolation(alpha: float, target_iso_power: float, phi: float = -math.pi / 2,
                          grid: int = 4096) -> float:
    """Smallest ``t`` in [0, 1] giving ``|S12|^2 = target_iso_power`` on resonance.

    The signed backward amplitude starts at 1 for ``t = 0``; the first
    crossing of ``sqrt(target)`` is bracketed on a uniform grid and refined
    by bisection to machine precision.
    """
    if not 0 <= alpha < 1:
        raise ValidationError(f"must lie in [0, 1), got {alpha}", key="alpha")
    if not 0 <= target_iso_power <= 1:
        raise InfeasibleError(f"isolation target {target_iso_power} outside [0, 1]")
    level = math.sqrt(target_iso_power)

    def f(t):
        return _s12_signed(t, alpha, phi) - level

    if f(0.0) == 0:
        return 0.0
    ts = np.linspace(0.0, 1.0, grid + 1)
    lo = None
    prev = f(0.0)
    for a, b in zip(ts[:-1], ts[1:]):
        fb = f(b)
        if fb == 0:
            return float(b)
        if (prev > 0) != (fb > 0):
            lo, hi = float(a), float(b)
            break
        prev = fb
    if lo is None:
        raise InfeasibleError(
            f"|S12|^2 = {target_iso_power} not reachable for alpha = {alpha}, phi = {phi}"
        )
    flo = f(lo)
    while True:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def alpha_sweep(alphas: Sequence[float], target_iso_power: float = 0.01,
                phi: float = -math.pi / 2, phi_s: float = math.pi / 2) -> dict[str, np.ndarray]:
    """On-resonance response versus ``alpha`` with ``t`` re-solved for fixed isolation."""
    ts = np.array([solve_t_for_isolation(a, target_iso_power, phi) for a in alphas])
    out: dict[str, np.ndarray] = {"alpha": np.asarray(alphas, dtype=float), "t": ts}
    mats = [full_smatrix(MpijisParams.from_phases(t, a, phi, phi_s)).data for a, t in zip(alphas, ts)]
    for i in range(4):
        for j in range(4):
            out[f"S{i + 1}{j + 1}"] = np.array([abs(m[i, j]) ** 2 for m in mats])
    return out
