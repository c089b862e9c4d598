"""
Composition of element S-matrices into a network S-matrix.

Every connection ``(p, q)`` imposes that the wave entering ``p`` equals the
wave leaving ``q`` and vice versa.  Writing ``S`` for the block-diagonal matrix
of all elements, ``E`` for external and ``I`` for connected (internal) ports
and ``G`` for the permutation that swaps connected partners::

    b_I = (1 - S_II G)^-1 S_IE a_E
    S_net = S_EE + S_EI G (1 - S_II G)^-1 S_IE

All internal amplitudes are eliminated in a single linear solve, so the
result does not depend on the order in which connections are listed and
resonant self-loops need no special handling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from . import devices
from .errors import SingularNetworkError, ValidationError
from .mpijis import MpijisParams
from .wave import PortLabel, ScatterMatrix

COND_LIMIT = 1e12
THREADS_ENV = "PARAMNET_THREADS"

PortRef = Union[PortLabel, str]


@dataclass
class Network:
    """Elements, pairwise port connections and the ordered external ports.

    ``elements`` maps element ids to their S-matrices; port labels are
    re-owned by the id they are registered under.  Ports can be referred to
    as :class:`PortLabel` or ``"element.port"`` strings.  When ``externals`` is
    omitted the unconnected ports are used in declaration order.
    """

    elements: Mapping[str, ScatterMatrix] | Sequence[tuple[str, ScatterMatrix]]
    connections: Sequence[tuple[PortRef, PortRef]] = ()
    externals: Sequence[PortRef] | None = None
    _ports: list[PortLabel] = field(init=False, repr=False)

    def __post_init__(self):
        items = list(self.elements.items()) if isinstance(self.elements, Mapping) else list(self.elements)
        ids = [k for k, _ in items]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate element id", key="elements")
        self.elements = {k: m.relabel(k) for k, m in items}
        self._ports = [p for m in self.elements.values() for p in m.ports]
        self._by_name = {p.name: p for p in self._ports}

        conns = []
        used: dict[PortLabel, PortLabel] = {}
        for a, b in self.connections:
            pa, pb = self.resolve(a), self.resolve(b)
            if pa == pb:
                raise ValidationError(f"port {pa.name} connected to itself", key="connections")
            for p in (pa, pb):
                if p in used:
                    raise ValidationError(f"port {p.name} appears in more than one connection",
                                          key="connections")
            if pa.channel != pb.channel:
                raise ValidationError(
                    f"channel mismatch: {pa} cannot connect to {pb}", key="connections"
                )
            used[pa], used[pb] = pb, pa
            conns.append((pa, pb))
        self.connections = conns
        self._partner = used

        free = [p for p in self._ports if p not in used]
        if self.externals is None:
            self.externals = free
        else:
            ext = [self.resolve(e) for e in self.externals]
            if len(set(ext)) != len(ext) or set(ext) != set(free):
                raise ValidationError(
                    "externals must list exactly the unconnected ports "
                    f"{[p.name for p in free]}", key="externals"
                )
            self.externals = ext

    def resolve(self, ref: PortRef) -> PortLabel:
        if isinstance(ref, PortLabel):
            if ref not in self._ports:
                raise ValidationError(f"dangling reference to unknown port {ref}", key="connections")
            return ref
        try:
            return self._by_name[ref]
        except KeyError:
            raise ValidationError(f"dangling reference to unknown port {ref!r}",
                                  key="connections") from None

    @property
    def ports(self) -> list[PortLabel]:
        return list(self._ports)


def compose(net: Network) -> ScatterMatrix:
    """Network S-matrix over ``net.externals``, in that order."""
    ports = net.ports
    pos = {p: i for i, p in enumerate(ports)}
    n = len(ports)
    S = np.zeros((n, n), dtype=complex)
    at = 0
    for m in net.elements.values():
        S[at:at + m.n, at:at + m.n] = m.data
        at += m.n

    ext = [pos[p] for p in net.externals]
    internal = [p for p in ports if p in net._partner]
    ii = [pos[p] for p in internal]
    if not ii:
        return ScatterMatrix(tuple(net.externals), S[np.ix_(ext, ext)])

    local = {p: k for k, p in enumerate(internal)}
    G = np.zeros((len(ii), len(ii)))
    for p in internal:
        G[local[p], local[net._partner[p]]] = 1.0

    A = np.eye(len(ii)) - S[np.ix_(ii, ii)] @ G
    _check_conditioning(A, internal)
    X = np.linalg.solve(A, S[np.ix_(ii, ext)])
    out = S[np.ix_(ext, ext)] + S[np.ix_(ext, ii)] @ G @ X
    return ScatterMatrix(tuple(net.externals), out)


def _check_conditioning(A: np.ndarray, internal: list[PortLabel]):
    _, sv, vh = np.linalg.svd(A)
    cond = math.inf if sv[-1] == 0 else sv[0] / sv[-1]
    if cond > COND_LIMIT:
        null = np.abs(vh[-1])
        loop = tuple(p.name for p, w in zip(internal, null) if w > 1e-6 * null.max())
        raise SingularNetworkError(
            f"internal wave system is singular (condition {cond:.3g}); loop through "
            + ", ".join(loop),
            ports=loop,
        )


def sweep_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env is None:
        return os.cpu_count() or 1
    try:
        n = int(env)
    except ValueError:
        raise ValidationError(f"must be a positive integer, got {env!r}", key=THREADS_ENV) from None
    if n < 1:
        raise ValidationError(f"must be a positive integer, got {env!r}", key=THREADS_ENV)
    return n


def compose_sweep(net_builder: Callable[[float], Network], omegas: Sequence[float]) -> list[ScatterMatrix]:
    """Compose ``net_builder(omega)`` at every angular frequency, in order.

    Frequencies may be evaluated concurrently (capped by ``PARAMNET_THREADS``);
    each point is an independent computation so the output does not depend
    on scheduling.
    """
    omegas = [float(w) for w in omegas]
    if not omegas:
        raise ValidationError("frequency list is empty", key="omegas")
    if any(b <= a for a, b in zip(omegas, omegas[1:])):
        raise ValidationError("frequencies must be strictly increasing", key="omegas")

    def one(w):
        try:
            return compose(net_builder(w))
        except SingularNetworkError as exc:
            raise SingularNetworkError(f"at omega = {w:.9g} rad/s: {exc}", exc.ports) from exc

    workers = min(sweep_workers(), len(omegas))
    if workers == 1:
        return [one(w) for w in omegas]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, omegas))


MPIJIS_EXTERNALS = ("hyb.1", "hyb.2", "cpl.3", "cpl.4")


def mpijis_network(
    p: MpijisParams,
    jpc: devices.JpcParams | None = None,
    omega: float | None = None,
    model: str = "substitution",
    line: devices.LineParams = devices.LineParams(),
    hybrid_imbalance_db: float = 0.0,
) -> Network:
    """Element-level isolator: hybrid, two JPCs, b-rail line and effective coupler.

    Without ``jpc`` the converters are built on resonance from ``p.t``.  With
    ``jpc`` they follow its frequency response at ``omega`` using ``model``;
    pump phases always come from ``p``.  The line sits between JPC 2 and the
    coupler so its phase is the one-way b1 -> b2 rail phase.
    """
    if jpc is None:
        r = math.sqrt(1 - p.t**2)
        r_a, r_b, t = r, -r, p.t
    else:
        w = jpc.omega_a if omega is None else omega
        r_a, r_b = devices.jpc_reflections(jpc, w, model)
        t = devices.jpc_transmission(jpc, w)
    elements = {
        "hyb": devices.hybrid90_smatrix(imbalance_db=hybrid_imbalance_db),
        "jpc1": devices.converter_smatrix(r_a, r_b, t, p.phi1),
        "jpc2": devices.converter_smatrix(r_a, r_b, t, p.phi2),
        "line": devices.line_smatrix(line),
        "cpl": devices.effective_coupler_smatrix(devices.CouplerParams(p.alpha)),
    }
    connections = [
        ("hyb.1p", "jpc1.a"),
        ("hyb.2p", "jpc2.a"),
        ("jpc1.b", "cpl.b1"),
        ("jpc2.b", "line.1"),
        ("line.2", "cpl.b2"),
    ]
    return Network(elements, connections, MPIJIS_EXTERNALS)
