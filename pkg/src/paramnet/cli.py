"""
Command-line front end.

Each subcommand reads one configuration file (see ``docs/config.md``) and
writes a CSV table or a Touchstone file.  Exit status is 0 on success, 1 for
invalid input and 2 for numerical failure; errors are reported as a single
``error: <kind>: <key>: <message>`` line on stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from .config import MODES, RunConfig, parse_config, read_records_csv
from .errors import NumericalError, ValidationError
from .export import sweep_table, write_csv, write_touchstone
from .mpijis import MpijisParams, alpha_sweep, full_smatrix, full_smatrix_at
from .netgraph import compose, compose_sweep, mpijis_network
from .qubit import ReadoutParams, backaction_table

TWO_PI = 2 * math.pi


def _mpijis_route(cfg: RunConfig):
    """Return ``f(params) -> ScatterMatrix`` on resonance for the chosen engine."""
    if cfg.engine == "compose":
        return lambda p: compose(mpijis_network(p, line=cfg.line,
                                                hybrid_imbalance_db=cfg.hybrid_imbalance_db))
    return full_smatrix


def run_sweep_freq(cfg: RunConfig):
    freqs = cfg.sweep.values()
    omegas = TWO_PI * freqs * 1e9
    p, jpc = cfg.mpijis, cfg.jpc
    if cfg.engine == "compose":
        mats = compose_sweep(
            lambda w: mpijis_network(p, jpc, w, cfg.jpc_model, cfg.line, cfg.hybrid_imbalance_db),
            omegas,
        )
    else:
        mats = [full_smatrix_at(p, jpc, w) for w in omegas]
    return "freq_ghz", freqs, mats, None


def run_sweep_phase(cfg: RunConfig):
    phis = cfg.sweep.values()
    base = cfg.mpijis
    route = _mpijis_route(cfg)
    mats = [route(MpijisParams.from_phases(base.t, base.alpha, phi, base.phi_s)) for phi in phis]
    return "phi_rad", phis, mats, None


def run_sweep_alpha(cfg: RunConfig):
    alphas = cfg.sweep.values()
    base = cfg.mpijis
    table = alpha_sweep(alphas, cfg.isolation_power, base.phi, base.phi_s)
    route = _mpijis_route(cfg)
    mats = [route(MpijisParams.from_phases(t, a, base.phi, base.phi_s))
            for a, t in zip(alphas, table["t"])]
    return "alpha", alphas, mats, {"t": table["t"]}


def run_compose(cfg: RunConfig):
    spec = cfg.network
    if cfg.sweep is None:
        f = cfg.frequency_ghz
        return "freq_ghz", [f if f is not None else 0.0], [compose(spec.build(f))], None
    freqs = cfg.sweep.values()
    mats = compose_sweep(lambda w: spec.build(w / TWO_PI / 1e9), TWO_PI * freqs * 1e9)
    return "freq_ghz", freqs, mats, None


def run_qubit(cfg: RunConfig, records_path: str | None, base_dir: Path):
    rp = cfg.readout or ReadoutParams.from_mhz(7.99, 3.4)
    path = records_path or cfg.records_path
    records = cfg.records
    if path is not None:
        p = Path(path)
        if not p.is_absolute() and records_path is None:
            p = base_dir / p
        try:
            text = p.read_text()
        except OSError as exc:
            raise OSError(f"cannot read {p}: {exc.strerror or exc}") from exc
        records = records + read_records_csv(text, str(p))
    if not records:
        raise ValidationError("no records: add a [records] section or --records CSV", key="records")
    rows = []
    for row in records:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RuntimeWarning)
            (label, rec), = backaction_table([row], rp)
        for w in caught:
            print(f"warning: records.{label}: {w.message}", file=sys.stderr)
        rows.append([label, rec.t1 * 1e6, rec.t2e * 1e6, rec.t_phi * 1e6, rec.n_ba])
    return ["label", "T1_us", "T2E_us", "Tphi_us", "n_ba"], rows


RUNNERS = {
    "sweep-freq": run_sweep_freq,
    "export-touchstone": run_sweep_freq,
    "sweep-phase": run_sweep_phase,
    "sweep-alpha": run_sweep_alpha,
    "compose": run_compose,
}


def execute(cfg: RunConfig, records_path: str | None = None, base_dir: Path = Path(".")) -> None:
    target = cfg.out if cfg.out is not None else sys.stdout
    if cfg.mode == "qubit-backaction":
        header, rows = run_qubit(cfg, records_path, base_dir)
        write_csv(target, header, rows)
        return
    xname, xs, mats, extra = RUNNERS[cfg.mode](cfg)
    if cfg.format == "touchstone":
        if xname != "freq_ghz":
            raise ValidationError("touchstone output needs a frequency sweep", key="run.format")
        write_touchstone(target, list(zip(xs, mats)))
    else:
        header, rows = sweep_table(xname, xs, mats, extra)
        write_csv(target, header, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramnet", description="Parametric Josephson network simulator."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in MODES:
        sp = sub.add_parser(mode)
        if mode == "qubit-backaction":
            sp.add_argument("config", nargs="?", help="configuration file")
            sp.add_argument("--records", help="CSV of label, T1_us, T2E_us")
            sp.add_argument("--kappa-mhz", type=float, help="readout linewidth kappa/2pi")
            sp.add_argument("--chi-mhz", type=float, help="dispersive shift chi/2pi")
            sp.add_argument("--n-th", type=float, help="thermal photon number")
        else:
            sp.add_argument("config", help="configuration file")
            sp.add_argument("--points", type=int, help="override sweep.points")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "touchstone"), help="override run.format")
    return parser


def _load(args) -> tuple[RunConfig, Path]:
    if args.config is None:
        text, base = "", Path(".")
    else:
        path = Path(args.config)
        try:
            text = path.read_text()
        except OSError as exc:
            raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
        base = path.parent
    cfg = parse_config(text, mode=args.command)
    cfg = cfg.with_overrides(out=args.out, format=args.format, points=getattr(args, "points", None))
    if args.command == "qubit-backaction":
        rp = cfg.readout
        over = {k: v for k, v in (("kappa_mhz", args.kappa_mhz), ("chi_mhz", args.chi_mhz),
                                  ("n_th", args.n_th)) if v is not None}
        if over:
            from dataclasses import replace
            kw = {}
            if "kappa_mhz" in over:
                kw["kappa"] = TWO_PI * over["kappa_mhz"] * 1e6
            if "chi_mhz" in over:
                kw["chi"] = TWO_PI * over["chi_mhz"] * 1e6
            if "n_th" in over:
                kw["n_th"] = over["n_th"]
            try:
                cfg = replace(cfg, readout=replace(rp, **kw))
            except ValidationError as exc:
                raise ValidationError(str(exc).split(": ", 1)[-1], key=f"--{exc.key}") from None
    return cfg, base


def _report(kind: str, exc: Exception) -> None:
    msg = " ".join(str(exc).split())
    print(f"error: {kind}: {msg}", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, base = _load(args)
        execute(cfg, getattr(args, "records", None), base)
    except ValidationError as exc:
        _report("validation", exc)
        return 1
    except NumericalError as exc:
        _report("numerical", exc)
        return 2
    except OSError as exc:
        _report("io", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
