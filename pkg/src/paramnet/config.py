"""
Run configuration: INI-style ``key = value`` sections, strictly validated.

Every key is checked: unknown sections or keys, missing required keys,
unparsable values and constraint violations all raise
:class:`~paramnet.errors.ValidationError` whose ``key`` is
``"section.option"``.  Numeric values accept plain numbers or small
arithmetic expressions in ``pi`` and ``sqrt`` (``-pi/2``, ``sqrt(0.5)``).
See ``docs/config.md`` for the full schema.
"""

from __future__ import annotations

import ast
import configparser
import math
import operator
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import devices
from .devices import JpcParams, LineParams, SteppedFilterParams
from .errors import ValidationError
from .mpijis import MpijisParams
from .netgraph import Network
from .qubit import ReadoutParams
from .wave import CHANNELS, ScatterMatrix

MODES = ("sweep-freq", "sweep-phase", "sweep-alpha", "compose", "qubit-backaction",
         "export-touchstone")
FORMATS = ("csv", "touchstone")
ENGINES = ("closed-form", "compose")

TWO_PI = 2 * math.pi

_SECTIONS = {
    "sweep-freq": {"run", "mpijis", "jpc", "line", "sweep"},
    "export-touchstone": {"run", "mpijis", "jpc", "line", "sweep"},
    "sweep-phase": {"run", "mpijis", "line", "sweep"},
    "sweep-alpha": {"run", "mpijis", "sweep"},
    "compose": {"run", "connections", "externals", "sweep"},
    "qubit-backaction": {"run", "readout", "records"},
}

_KEYS = {
    "run": {"mode", "out", "format", "engine", "frequency_ghz"},
    "mpijis": {"t", "rho", "alpha", "phi", "phi_s", "isolation_db", "hybrid_imbalance_db"},
    "jpc": {"rho", "f_a_ghz", "f_b_ghz", "kappa_a_mhz", "kappa_b_mhz", "model"},
    "line": {"phase", "loss"},
    "sweep": {"start", "stop", "points"},
    "readout": {"kappa_mhz", "chi_mhz", "n_th", "nbar", "eta", "t_int_ns", "t_r_ns", "records"},
    "externals": {"ports"},
}

_ELEMENT_KEYS = {
    "hybrid90": {"imbalance_db"},
    "jpc": {"rho", "pump_phase", "f_a_ghz", "f_b_ghz", "kappa_a_mhz", "kappa_b_mhz", "model"},
    "converter": {"t", "pump_phase"},
    "coupler": {"alpha"},
    "mpijis": {"t", "alpha", "phi", "phi_s"},
    "line": {"phase", "loss", "channel"},
    "load": {"channel"},
    "mirror": {"reflection", "channel"},
    "circulator": {"channel"},
    "directional_coupler": {"coupling_db", "channel"},
    "stepped_filter": {"sections", "preset", "eps_eff", "z0"},
}

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_number(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_number(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_number(node.left), _eval_number(node.right))
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt"
            and len(node.args) == 1 and not node.keywords):
        return math.sqrt(_eval_number(node.args[0]))
    raise ValueError("not a numeric expression")


def parse_number(text: str, key: str) -> float:
    try:
        v = _eval_number(ast.parse(text.strip(), mode="eval").body)
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError, TypeError):
        raise ValidationError(f"expected a number, got {text!r}", key=key) from None
    if not math.isfinite(v):
        raise ValidationError(f"must be finite, got {text!r}", key=key)
    return v


def parse_int(text: str, key: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ValidationError(f"expected an integer, got {text!r}", key=key) from None


def parse_choice(text: str, key: str, choices) -> str:
    v = text.strip()
    if v not in choices:
        raise ValidationError(f"must be one of {', '.join(choices)}; got {v!r}", key=key)
    return v


def _wrap(prefix: str, fn: Callable, *args, rename: dict | None = None, **kw):
    """Call a constructor and re-key its validation errors under ``prefix``.

    ``rename`` maps field names of the constructed object to config keys.
    """
    try:
        return fn(*args, **kw)
    except ValidationError as exc:
        field = (rename or {}).get(exc.key, exc.key)
        key = f"{prefix}.{field}" if field else prefix
        msg = str(exc).split(": ", 1)[-1] if exc.key else str(exc)
        raise ValidationError(msg, key=key) from None


@dataclass(frozen=True)
class SweepGrid:
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if self.points < 2:
            raise ValidationError(f"must be at least 2, got {self.points}", key="sweep.points")
        if not self.start < self.stop:
            raise ValidationError(f"start ({self.start}) must be below stop ({self.stop})",
                                  key="sweep.start")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class ElementSpec:
    type: str
    options: dict

    def smatrix(self, eid: str, freq_ghz: float | None) -> ScatterMatrix:
        o = self.options
        kind = self.type
        pre = f"element.{eid}"
        if kind == "hybrid90":
            return devices.hybrid90_smatrix(eid, o.get("imbalance_db", 0.0))
        if kind == "converter":
            t = o["t"]
            r = math.sqrt(1 - t * t)
            return devices.converter_smatrix(r, -r, t, o.get("pump_phase", 0.0), eid)
        if kind == "jpc":
            p = o["params"]
            omega = p.omega_a if freq_ghz is None else TWO_PI * freq_ghz * 1e9
            return _wrap(pre, devices.jpc_smatrix, p, omega, o.get("model", "input-output"), eid)
        if kind == "coupler":
            return devices.effective_coupler_smatrix(o["params"], eid)
        if kind == "mpijis":
            from .mpijis import full_smatrix
            return full_smatrix(o["params"]).relabel(eid)
        ch = o.get("channel", "f1")
        if kind == "line":
            return devices.line_smatrix(o["params"], eid, ch)
        if kind == "load":
            return devices.load_smatrix(eid, ch)
        if kind == "mirror":
            return devices.mirror_smatrix(o.get("reflection", 1.0), eid, ch)
        if kind == "circulator":
            return devices.circulator_smatrix(eid, ch)
        if kind == "directional_coupler":
            return devices.directional_coupler_smatrix(o["coupling_db"], eid, ch)
        if kind == "stepped_filter":
            if freq_ghz is None:
                raise ValidationError("needs a frequency; add [sweep] or run.frequency_ghz",
                                      key=pre)
            return devices.stepped_filter_smatrix(o["params"], freq_ghz * 1e9, eid)
        raise ValidationError(f"unknown element type {kind!r}", key=f"{pre}.type")


@dataclass(frozen=True)
class NetworkSpec:
    elements: dict
    connections: tuple
    externals: tuple | None

    def build(self, freq_ghz: float | None = None) -> Network:
        mats = {eid: spec.smatrix(eid, freq_ghz) for eid, spec in self.elements.items()}
        return Network(mats, self.connections, self.externals)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    out: str | None = None
    format: str = "csv"
    engine: str = "closed-form"
    frequency_ghz: float | None = None
    mpijis: MpijisParams | None = None
    jpc: JpcParams | None = None
    jpc_model: str = "substitution"
    line: LineParams = LineParams()
    isolation_power: float = 0.01
    hybrid_imbalance_db: float = 0.0
    sweep: SweepGrid | None = None
    readout: ReadoutParams | None = None
    records: tuple = ()
    records_path: str | None = None
    network: NetworkSpec | None = None

    def with_overrides(self, out=None, format=None, points=None) -> "RunConfig":
        cfg = self
        if out is not None:
            cfg = replace(cfg, out=out)
        if format is not None:
            cfg = replace(cfg, format=parse_choice(format, "run.format", FORMATS))
        if points is not None:
            if cfg.sweep is None:
                raise ValidationError("--points given but the run has no sweep", key="sweep.points")
            cfg = replace(cfg, sweep=SweepGrid(cfg.sweep.start, cfg.sweep.stop, points))
        if cfg.format == "touchstone" and cfg.mode not in ("compose", "export-touchstone", "sweep-freq"):
            raise ValidationError(f"touchstone output is not available for {cfg.mode}",
                                  key="run.format")
        return cfg


class _Section:
    """Accessor that tracks which keys were read and types every value."""

    def __init__(self, name: str, items: dict[str, str]):
        self.name = name
        self.items = items

    def key(self, k):
        return f"{self.name}.{k}"

    def has(self, k):
        return k in self.items

    def number(self, k, default=None, required=False):
        if k not in self.items:
            if required:
                raise ValidationError("missing required key", key=self.key(k))
            return default
        return parse_number(self.items[k], self.key(k))

    def integer(self, k, default=None, required=False):
        if k not in self.items:
            if required:
                raise ValidationError("missing required key", key=self.key(k))
            return default
        return parse_int(self.items[k], self.key(k))

    def string(self, k, default=None, required=False, choices=None):
        if k not in self.items:
            if required:
                raise ValidationError("missing required key", key=self.key(k))
            return default
        if choices is not None:
            return parse_choice(self.items[k], self.key(k), choices)
        v = self.items[k].strip()
        if not v:
            raise ValidationError("must not be empty", key=self.key(k))
        return v


def _read(text: str) -> dict[str, dict[str, str]]:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"),
                                   default_section="__none__", strict=True)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ValidationError(f"malformed config: {exc.message.splitlines()[0]}") from None
    return {s: dict(cp.items(s)) for s in cp.sections()}


def _check_keys(name: str, items: dict, allowed: set):
    for k in items:
        if k not in allowed:
            raise ValidationError(f"unknown key (allowed: {', '.join(sorted(allowed))})",
                                  key=f"{name}.{k}")


def _jpc_from(sec: _Section, rho: float | None, pump_phase: float = 0.0) -> JpcParams:
    if sec.has("rho"):
        rho = sec.number("rho")
    if rho is None:
        raise ValidationError("missing required key (or give mpijis.t)", key=sec.key("rho"))
    f_a = _positive(sec, "f_a_ghz", sec.number("f_a_ghz", required=True))
    f_b = _positive(sec, "f_b_ghz", sec.number("f_b_ghz", required=True))
    ka = _positive(sec, "kappa_a_mhz", sec.number("kappa_a_mhz", required=True))
    kb = _positive(sec, "kappa_b_mhz", sec.number("kappa_b_mhz", default=ka))
    return _wrap(sec.name, JpcParams, rho, pump_phase, TWO_PI * f_a * 1e9, TWO_PI * f_b * 1e9,
                 TWO_PI * ka * 1e6, TWO_PI * kb * 1e6, rename=_JPC_KEYS)


_JPC_KEYS = {"omega_a": "f_a_ghz", "omega_b": "f_b_ghz", "kappa_a": "kappa_a_mhz",
             "kappa_b": "kappa_b_mhz"}


def _positive(sec: "_Section", k: str, value: float) -> float:
    if not value > 0:
        raise ValidationError(f"must be positive, got {value}", key=sec.key(k))
    return value


def _parse_sections(text: str, eid_sections: bool):
    raw = _read(text)
    elements = {}
    plain = {}
    for name, items in raw.items():
        if eid_sections and name.startswith("element."):
            elements[name[len("element."):]] = items
        else:
            plain[name] = items
    return plain, elements


def parse_config(text: str, mode: str | None = None) -> RunConfig:
    """Parse and validate a run configuration.

    ``mode`` (normally the CLI subcommand) must agree with ``run.mode`` when
    both are given; one of them is required.
    """
    plain, element_secs = _parse_sections(text, eid_sections=True)
    run_items = plain.get("run", {})
    _check_keys("run", run_items, _KEYS["run"])
    run = _Section("run", run_items)
    cfg_mode = run.string("mode", choices=MODES)
    if mode is not None:
        mode = parse_choice(mode, "run.mode", MODES)
        if cfg_mode is not None and cfg_mode != mode:
            raise ValidationError(f"config is for {cfg_mode!r} but {mode!r} was requested",
                                  key="run.mode")
    mode = mode or cfg_mode
    if mode is None:
        raise ValidationError("missing required key", key="run.mode")

    allowed = _SECTIONS[mode]
    for name in plain:
        if name not in allowed:
            raise ValidationError(f"section not used by {mode} (allowed: {', '.join(sorted(allowed))})",
                                  key=name)
    if element_secs and mode != "compose":
        raise ValidationError("element sections are only used by compose",
                              key="element." + next(iter(element_secs)))
    for name, items in plain.items():
        if name in _KEYS:
            _check_keys(name, items, _KEYS[name])

    sec = {n: _Section(n, plain.get(n, {})) for n in allowed}
    kw: dict = dict(
        mode=mode,
        out=run.string("out"),
        format=run.string("format", "csv", choices=FORMATS),
        engine=run.string("engine", "closed-form", choices=ENGINES),
        frequency_ghz=run.number("frequency_ghz"),
    )
    if mode == "export-touchstone":
        kw["format"] = "touchstone"
    if kw["format"] == "touchstone" and mode not in ("compose", "export-touchstone", "sweep-freq"):
        raise ValidationError(f"touchstone output is not available for {mode}", key="run.format")

    if "sweep" in allowed:
        s = sec["sweep"]
        if plain.get("sweep") or mode != "compose":
            kw["sweep"] = SweepGrid(s.number("start", required=True), s.number("stop", required=True),
                                    s.integer("points", required=True))

    if mode in ("sweep-freq", "export-touchstone", "sweep-phase", "sweep-alpha"):
        kw.update(_parse_mpijis(mode, sec))
    if kw["engine"] == "closed-form" and mode != "compose":
        _check_closed_form(kw)
    if mode == "compose":
        kw["network"] = _parse_network(element_secs, plain)
        if kw.get("sweep") is None and kw["frequency_ghz"] is None:
            needs_freq = any(s.type in ("jpc", "stepped_filter") for s in kw["network"].elements.values())
            if needs_freq:
                raise ValidationError("frequency-dependent elements need [sweep] or a frequency",
                                      key="run.frequency_ghz")
    if mode == "qubit-backaction":
        kw.update(_parse_readout(sec["readout"], plain.get("records", {})))
    return RunConfig(**kw)


def _parse_mpijis(mode: str, sec: dict[str, _Section]) -> dict:
    m = sec["mpijis"]
    out: dict = {}
    alpha = m.number("alpha", math.sqrt(0.5))
    phi = m.number("phi", -math.pi / 2)
    phi_s = m.number("phi_s", math.pi / 2)
    out["hybrid_imbalance_db"] = m.number("hybrid_imbalance_db", 0.0)
    if m.has("t") and m.has("rho"):
        raise ValidationError("give either t or rho, not both", key="mpijis.rho")

    def t_value(required):
        if m.has("t"):
            return m.number("t")
        if m.has("rho"):
            rho = m.number("rho")
            return _wrap("mpijis", devices.jpc_rt, rho)[1]
        if required:
            raise ValidationError("missing required key (t or rho)", key="mpijis.t")
        return None

    if mode == "sweep-alpha":
        iso_db = m.number("isolation_db", -20.0)
        if iso_db > 0:
            raise ValidationError(f"must be <= 0 dB, got {iso_db}", key="mpijis.isolation_db")
        out["isolation_power"] = 10 ** (iso_db / 10)
        if m.has("t") or m.has("rho"):
            raise ValidationError("t is solved for in sweep-alpha; remove it", key="mpijis.t")
        out["mpijis"] = _wrap("mpijis", MpijisParams.from_phases, 0.0, 0.0, phi, phi_s)
        return out
    if m.has("isolation_db"):
        raise ValidationError("only used by sweep-alpha", key="mpijis.isolation_db")

    if mode == "sweep-phase":
        t = t_value(required=True)
        out["mpijis"] = _wrap("mpijis", MpijisParams.from_phases, t, alpha, phi, phi_s)
    else:
        t = t_value(required=False)
        jsec = sec["jpc"]
        if t is not None and jsec.has("rho"):
            raise ValidationError("set either mpijis.t/rho or jpc.rho, not both", key="mpijis.t")
        rho0 = None if t is None else devices.rho_from_t(t) if 0 <= t <= 1 else None
        if t is not None and rho0 is None:
            raise ValidationError(f"must lie in [0, 1], got {t}", key="mpijis.t")
        jpc = _jpc_from(jsec, rho0)
        out["jpc"] = jpc
        out["jpc_model"] = jsec.string("model", "substitution", choices=devices.JPC_MODELS)
        t_res = devices.jpc_rt(jpc.rho)[1]
        out["mpijis"] = _wrap("mpijis", MpijisParams.from_phases, t_res, alpha, phi, phi_s)
    line = sec.get("line")
    if line is not None:
        out["line"] = _wrap("line", LineParams, line.number("phase", TWO_PI), line.number("loss", 1.0))
    return out


def _check_closed_form(kw: dict):
    # The closed forms assume an ideal hybrid and a 2 pi k rail phase.
    if kw.get("jpc_model", "substitution") != "substitution":
        raise ValidationError("the input-output model needs run.engine = compose", key="jpc.model")
    if kw.get("hybrid_imbalance_db", 0.0) != 0.0:
        raise ValidationError("hybrid imbalance needs run.engine = compose",
                              key="mpijis.hybrid_imbalance_db")
    line = kw.get("line", LineParams())
    if line.loss != 1.0 or abs(math.remainder(line.phase, TWO_PI)) > 1e-12:
        raise ValidationError("a lossy or non-2pi rail line needs run.engine = compose", key="line")


def _parse_sections_spec(text: str, key: str) -> tuple:
    secs = []
    for part in text.split(","):
        bits = part.strip().split(":")
        if len(bits) != 2:
            raise ValidationError(f"expected 'impedance_ohm:length_mm' pairs, got {part.strip()!r}",
                                  key=key)
        secs.append((parse_number(bits[0], key), parse_number(bits[1], key) * 1e-3))
    return tuple(secs)


def _parse_element(eid: str, items: dict) -> ElementSpec:
    pre = f"element.{eid}"
    s = _Section(pre, items)
    kind = s.string("type", required=True, choices=tuple(_ELEMENT_KEYS))
    _check_keys(pre, items, _ELEMENT_KEYS[kind] | {"type"})
    o: dict = {}
    if "channel" in _ELEMENT_KEYS[kind]:
        o["channel"] = s.string("channel", "f2" if kind == "line" else "f1", choices=CHANNELS)
    if kind == "hybrid90":
        o["imbalance_db"] = s.number("imbalance_db", 0.0)
    elif kind == "converter":
        t = s.number("t", required=True)
        if not 0 <= t <= 1:
            raise ValidationError(f"must lie in [0, 1], got {t}", key=s.key("t"))
        o.update(t=t, pump_phase=s.number("pump_phase", 0.0))
    elif kind == "jpc":
        o["params"] = _jpc_from(s, None, s.number("pump_phase", 0.0))
        o["model"] = s.string("model", "input-output", choices=devices.JPC_MODELS)
    elif kind == "coupler":
        o["params"] = _wrap(pre, devices.CouplerParams, s.number("alpha", required=True))
    elif kind == "mpijis":
        o["params"] = _wrap(pre, MpijisParams.from_phases, s.number("t", required=True),
                            s.number("alpha", math.sqrt(0.5)), s.number("phi", -math.pi / 2),
                            s.number("phi_s", math.pi / 2))
    elif kind == "line":
        o["params"] = _wrap(pre, LineParams, s.number("phase", TWO_PI), s.number("loss", 1.0))
    elif kind == "mirror":
        r = s.number("reflection", 1.0)
        if abs(r) > 1:
            raise ValidationError(f"|reflection| must not exceed 1, got {r}", key=s.key("reflection"))
        o["reflection"] = r
    elif kind == "directional_coupler":
        o["coupling_db"] = s.number("coupling_db", required=True)
        if not o["coupling_db"] < 0:
            raise ValidationError("must be negative", key=s.key("coupling_db"))
    elif kind == "stepped_filter":
        eps = s.number("eps_eff", 5.5)
        z0 = s.number("z0", 50.0)
        if s.has("sections") == s.has("preset"):
            raise ValidationError("give exactly one of sections or preset", key=s.key("sections"))
        if s.has("preset"):
            s.string("preset", choices=("purcell",))
            o["params"] = _wrap(pre, SteppedFilterParams.purcell, eps, z0)
        else:
            secs = _parse_sections_spec(items["sections"], s.key("sections"))
            o["params"] = _wrap(pre, SteppedFilterParams, secs, eps, z0)
    return ElementSpec(kind, o)


def _parse_network(element_secs: dict, plain: dict) -> NetworkSpec:
    if not element_secs:
        raise ValidationError("compose needs at least one [element.NAME] section", key="element")
    elements = {eid: _parse_element(eid, items) for eid, items in element_secs.items()}
    conns = tuple((a.strip(), b.strip()) for a, b in plain.get("connections", {}).items())
    ext_text = plain.get("externals", {}).get("ports")
    externals = None if ext_text is None else tuple(p.strip() for p in ext_text.split(",") if p.strip())
    spec = NetworkSpec(elements, conns, externals)
    # Validate topology once with frequency-independent placeholders; errors
    # are keyed by the [connections] / [externals] sections.
    _check_topology(spec)
    return spec


def _check_topology(spec: NetworkSpec):
    from .wave import PortLabel
    dummy = {}
    for eid, e in spec.elements.items():
        shape = _PORTS.get(e.type)
        if e.type in ("line", "load", "mirror", "circulator", "directional_coupler"):
            ch = e.options["channel"]
            shape = [(n, ch) for n, _ in shape]
        dummy[eid] = ScatterMatrix(tuple(PortLabel(eid, n, c) for n, c in shape),
                                    np.zeros((len(shape), len(shape))))
    Network(dummy, spec.connections, spec.externals)


_PORTS = {
    "hybrid90": [("1", "f1"), ("2", "f1"), ("1p", "f1"), ("2p", "f1")],
    "jpc": [("a", "f1"), ("b", "f2")],
    "converter": [("a", "f1"), ("b", "f2")],
    "coupler": [("b1", "f2"), ("b2", "f2"), ("3", "f2"), ("4", "f2")],
    "mpijis": [("1", "f1"), ("2", "f1"), ("3", "f2"), ("4", "f2")],
    "line": [("1", ""), ("2", "")],
    "load": [("1", "")],
    "mirror": [("1", "")],
    "circulator": [("1", ""), ("2", ""), ("3", "")],
    "directional_coupler": [("1", ""), ("2", ""), ("3", ""), ("4", "")],
    "stepped_filter": [("1", "f1"), ("2", "f1")],
}


def _parse_readout(sec: _Section, records: dict) -> dict:
    rp = _wrap(
        "readout",
        ReadoutParams.from_mhz,
        _positive(sec, "kappa_mhz", sec.number("kappa_mhz", 7.99)),
        _positive(sec, "chi_mhz", sec.number("chi_mhz", 3.4)),
        nbar=sec.number("nbar", 6.4),
        eta=sec.number("eta", 0.32),
        t_int=sec.number("t_int_ns", 150.0) * 1e-9,
        t_r=sec.number("t_r_ns", 200.0) * 1e-9,
        n_th=sec.number("n_th", 0.004),
        rename={"t_int": "t_int_ns", "t_r": "t_r_ns"},
    )
    rows = []
    for label, value in records.items():
        key = f"records.{label}"
        parts = value.split(",")
        if len(parts) != 2:
            raise ValidationError(f"expected 'T1_us, T2E_us', got {value!r}", key=key)
        t1, t2e = (parse_number(p, key) for p in parts)
        _check_record(t1, t2e, key)
        rows.append((label, t1, t2e))
    return dict(readout=rp, records=tuple(rows), records_path=sec.string("records"))


def _check_record(t1: float, t2e: float, key: str):
    if not (t1 > 0 and t2e > 0):
        raise ValidationError("T1 and T2E must be positive", key=key)
    if t2e >= 2 * t1:
        raise ValidationError(f"T2E = {t2e} must be below 2 T1 = {2 * t1}", key=key)


def read_records_csv(text: str, source: str = "records") -> tuple:
    """Parse ``label, T1_us, T2E_us`` rows; a header row is optional."""
    import csv
    import io

    rows = []
    for k, row in enumerate(csv.reader(io.StringIO(text))):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if len(row) != 3:
            raise ValidationError(f"line {k + 1}: expected 3 fields, got {len(row)}", key=source)
        label, a, b = (c.strip() for c in row)
        if k == 0 and not _is_number(a):
            continue
        key = f"{source}:{k + 1}"
        t1, t2e = parse_number(a, key), parse_number(b, key)
        _check_record(t1, t2e, key)
        rows.append((label, t1, t2e))
    if not rows:
        raise ValidationError("no records found", key=source)
    return tuple(rows)


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False
