"""
Deterministic CSV and Touchstone output, plus a Touchstone reader.

Numbers are written as ``%.16e`` (17 significant digits, enough to round
trip any double), infinities as ``-inf``/``inf``.  Both writers produce
byte-identical files for identical input.
"""

from __future__ import annotations

import csv
import io
import math
import re
from pathlib import Path
from typing import Iterable, Sequence, TextIO, Union

import numpy as np

from .errors import ValidationError
from .wave import ScatterMatrix, db_power

Target = Union[str, Path, TextIO]

_UNITS = {"hz": 1e-9, "khz": 1e-6, "mhz": 1e-3, "ghz": 1.0}


def format_number(x) -> str:
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.16e}"


def _open_for_write(target: Target):
    if hasattr(target, "write"):
        return target, False
    path = Path(target)
    try:
        return path.open("w", newline="", encoding="ascii"), True
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_csv(target: Target, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    rows = [list(r) for r in rows]
    if not rows:
        raise ValidationError("refusing to write an empty table", key="rows")
    width = len(header)
    for k, r in enumerate(rows):
        if len(r) != width:
            raise ValidationError(f"row {k} has {len(r)} fields, header has {width}", key="rows")
    fh, owned = _open_for_write(target)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([format_number(v) for v in r])
    finally:
        if owned:
            fh.close()


def sparam_names(n: int) -> list[str]:
    sep = "" if n < 10 else "_"
    return [f"S{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]


def sweep_table(xname: str, xs: Sequence[float], matrices: Sequence[ScatterMatrix],
                extra: dict[str, Sequence[float]] | None = None) -> tuple[list[str], list[list]]:
    """Rows of ``x, [extra...], |S_ij|^2 in dB`` with ``S_ij`` in row-major order."""
    if not matrices:
        raise ValidationError("refusing to tabulate an empty sweep", key="points")
    n = matrices[0].n
    extra = extra or {}
    header = [xname, *extra, *(f"{s}_dB" for s in sparam_names(n))]
    rows = []
    for k, (x, m) in enumerate(zip(xs, matrices)):
        rows.append([x, *(v[k] for v in extra.values()), *db_power(m.data).ravel()])
    return header, rows


def _pairs_per_line(values: np.ndarray) -> list[list[complex]]:
    return [list(values[i:i + 4]) for i in range(0, len(values), 4)]


def write_touchstone(target: Target, matrices: Sequence[tuple[float, ScatterMatrix]],
                     z0: float = 50.0) -> None:
    """Touchstone v1 file, frequencies in GHz, real/imaginary pairs.

    Two-port data follow the ``S11 S21 S12 S22`` convention of the format;
    other sizes are written row by row, at most four pairs per line.
    """
    if not matrices:
        raise ValidationError("no frequency points", key="matrices")
    n = matrices[0][1].n
    freqs = [float(f) for f, _ in matrices]
    for f, m in matrices:
        if m.n != n:
            raise ValidationError(f"dimension mismatch: {m.n}-port at {f} GHz, expected {n}",
                                  key="matrices")
    if any(b <= a for a, b in zip(freqs, freqs[1:])):
        raise ValidationError("frequencies must be strictly increasing", key="matrices")

    lines = [f"! {n}-port S-parameters written by paramnet",
             "! ports: " + " ".join(str(p) for p in matrices[0][1].ports),
             f"# GHz S RI R {format_number(z0) if z0 != 50 else '50'}"]
    for f, m in matrices:
        if n == 2:
            chunks = [[m.data[0, 0], m.data[1, 0], m.data[0, 1], m.data[1, 1]]]
        else:
            chunks = [c for row in m.data for c in _pairs_per_line(row)]
        for k, chunk in enumerate(chunks):
            nums = " ".join(f"{format_number(v.real)} {format_number(v.imag)}" for v in chunk)
            lines.append(f"{format_number(f)} {nums}" if k == 0 else nums)
    fh, owned = _open_for_write(target)
    try:
        fh.write("\n".join(lines) + "\n")
    finally:
        if owned:
            fh.close()


def read_touchstone(source: Target, n_ports: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Read a Touchstone v1 file; returns ``(freqs_ghz, s)`` with ``s.shape == (F, n, n)``.

    The port count comes from ``n_ports``, the ``.sNp`` extension or the
    ``! N-port`` comment written by :func:`write_touchstone`, in that order.
    """
    if hasattr(source, "read"):
        text = source.read()
        name = ""
    else:
        name = str(source)
        text = Path(source).read_text(encoding="ascii")
    if n_ports is None:
        m = re.search(r"\.s(\d+)p$", name, re.IGNORECASE) or re.search(r"^!\s*(\d+)-port", text, re.M)
        if not m:
            raise ValidationError("cannot infer the port count", key="n_ports")
        n_ports = int(m.group(1))

    scale, fmt = 1.0, "ma"
    tokens: list[float] = []
    for raw in text.splitlines():
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            opts = line[1:].lower().split()
            for o in opts:
                if o in _UNITS:
                    scale = _UNITS[o]
                elif o in ("ri", "ma", "db"):
                    fmt = o
            continue
        tokens.extend(float(v) for v in line.split())

    per = 1 + 2 * n_ports * n_ports
    if len(tokens) % per:
        raise ValidationError(f"{len(tokens)} numbers is not a multiple of {per}", key="source")
    arr = np.array(tokens).reshape(-1, per)
    freqs = arr[:, 0] * scale
    a, b = arr[:, 1::2], arr[:, 2::2]
    if fmt == "ri":
        vals = a + 1j * b
    elif fmt == "ma":
        vals = a * np.exp(1j * np.deg2rad(b))
    else:
        vals = 10 ** (a / 20) * np.exp(1j * np.deg2rad(b))
    s = vals.reshape(-1, n_ports, n_ports)
    if n_ports == 2:
        s = s.transpose(0, 2, 1)
    return freqs, s


def to_text(write, *args, **kw) -> str:
    """Run a writer into a string, mainly for tests and stdout output."""
    buf = io.StringIO()
    write(buf, *args, **kw)
    return buf.getvalue()
