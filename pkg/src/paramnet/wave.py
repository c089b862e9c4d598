"""
Scattering-matrix algebra with labeled ports.

A :class:`ScatterMatrix` is a square complex matrix whose rows and columns
are indexed by :class:`PortLabel` objects.  Entry ``[i, j]`` is the outgoing
wave at port ``i`` for a unit incoming wave at port ``j``.  Every port carries
a frequency-channel tag: ``"f1"`` for the signal band and ``"f2"`` for the
internal (frequency-converted) band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ValidationError

CHANNELS = ("f1", "f2")


@dataclass(frozen=True)
class PortLabel:
    """Identifies one wave port: owning element, port name and channel."""

    element: str
    port: str
    channel: str = "f1"

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise ValidationError(
                f"channel must be one of {CHANNELS}, got {self.channel!r}",
                key="channel",
            )

    @property
    def name(self) -> str:
        return f"{self.element}.{self.port}"

    def __str__(self) -> str:
        return f"{self.name}@{self.channel}"


PortKey = Union[PortLabel, str]


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0):
            raise ValidationError("tolerances must be strictly positive", key="tol")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True, eq=False)
class ScatterMatrix:
    """Square complex matrix over an ordered tuple of ports.

    The data array is copied on construction and made read-only.
    """

    ports: tuple[PortLabel, ...]
    data: np.ndarray

    def __post_init__(self):
        ports = tuple(self.ports)
        data = np.array(self.data, dtype=np.complex128)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValidationError(f"matrix must be square, got shape {data.shape}")
        if data.shape[0] != len(ports):
            raise ValidationError(
                f"{len(ports)} port labels for a {data.shape[0]}x{data.shape[0]} matrix"
            )
        if len(set(ports)) != len(ports):
            raise ValidationError("port labels must be unique")
        data.setflags(write=False)
        object.__setattr__(self, "ports", ports)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_names(
        cls, element: str, names: Sequence[str], data, channels: Sequence[str] | str = "f1"
    ) -> "ScatterMatrix":
        if isinstance(channels, str):
            channels = [channels] * len(names)
        ports = tuple(PortLabel(element, n, c) for n, c in zip(names, channels))
        return cls(ports, data)

    @property
    def n(self) -> int:
        return len(self.ports)

    def index(self, key: PortKey) -> int:
        """Position of a port given as a label, ``"element.port"`` or a bare port name."""
        if isinstance(key, PortLabel):
            try:
                return self.ports.index(key)
            except ValueError:
                raise ValidationError(f"unknown port {key}") from None
        hits = [i for i, p in enumerate(self.ports) if key in (p.name, p.port)]
        if len(hits) != 1:
            kind = "ambiguous" if hits else "unknown"
            raise ValidationError(f"{kind} port {key!r}")
        return hits[0]

    def s(self, out: PortKey, inp: PortKey) -> complex:
        """Transmission amplitude from port ``inp`` to port ``out``."""
        return complex(self.data[self.index(out), self.index(inp)])

    def relabel(self, element: str) -> "ScatterMatrix":
        ports = tuple(PortLabel(element, p.port, p.channel) for p in self.ports)
        return ScatterMatrix(ports, self.data)

    def reorder(self, keys: Iterable[PortKey]) -> "ScatterMatrix":
        idx = [self.index(k) for k in keys]
        if sorted(idx) != list(range(self.n)):
            raise ValidationError("reorder needs every port exactly once")
        return ScatterMatrix(tuple(self.ports[i] for i in idx), self.data[np.ix_(idx, idx)])

    def power(self) -> np.ndarray:
        return np.abs(self.data) ** 2

    def __repr__(self) -> str:
        names = ", ".join(str(p) for p in self.ports)
        return f"ScatterMatrix([{names}],\n{np.array2string(self.data, precision=4)})"


def identity(ports: Sequence[PortLabel]) -> ScatterMatrix:
    return ScatterMatrix(tuple(ports), np.eye(len(ports)))


def is_unitary(m: ScatterMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``m^H m`` equals the identity element-wise within ``tol``."""
    a = m.data
    gram = a.conj().T @ a
    eye = np.eye(a.shape[0])
    return bool(np.all(np.abs(gram - eye) <= tol.abs_eps + tol.rel_eps * np.abs(eye)))


def db_power(x):
    """Power in dB of a wave amplitude, ``20 log10 |x|``; zero maps to ``-inf``."""
    mag = np.abs(x)
    with np.errstate(divide="ignore"):
        out = 20.0 * np.log10(mag)
    if np.ndim(out) == 0:
        return float(out)
    return out


def dagger(m: ScatterMatrix) -> ScatterMatrix:
    return ScatterMatrix(m.ports, m.data.conj().T)


def matmul(a: ScatterMatrix, b: ScatterMatrix) -> ScatterMatrix:
    """Matrix product; the result keeps the port labels of ``a``."""
    if a.n != b.n:
        raise ValidationError(f"dimension mismatch: {a.n} vs {b.n}")
    return ScatterMatrix(a.ports, a.data @ b.data)


def sub_block(
    m: ScatterMatrix, row_ports: Sequence[PortKey], col_ports: Sequence[PortKey] | None = None
) -> ScatterMatrix:
    """Square sub-matrix over a subset of ports, labels preserved.

    ``col_ports`` may be given for symmetry with the row selection but must
    select the same ports; use :func:`block` for rectangular cross blocks.
    """
    rows = [m.index(k) for k in row_ports]
    cols = rows if col_ports is None else [m.index(k) for k in col_ports]
    if rows != cols:
        raise ValidationError("sub_block needs identical row and column ports; use block()")
    return ScatterMatrix(tuple(m.ports[i] for i in rows), m.data[np.ix_(rows, cols)])


def block(m: ScatterMatrix, row_ports: Sequence[PortKey], col_ports: Sequence[PortKey]) -> np.ndarray:
    rows = [m.index(k) for k in row_ports]
    cols = [m.index(k) for k in col_ports]
    return np.array(m.data[np.ix_(rows, cols)])


def allclose(a: ScatterMatrix, b: ScatterMatrix, atol: float = 1e-12) -> bool:
    return a.n == b.n and bool(np.allclose(a.data, b.data, rtol=0.0, atol=atol))


def wrap_phase(phi: float) -> float:
    """Map an angle to the half-open interval (-pi, pi]."""
    w = math.remainder(phi, 2.0 * math.pi)
    return math.pi if w == -math.pi else w
