"""Waveform CSV input and analysis result serialization."""
from __future__ import annotations

import csv
import io
import json
import math
import re

import numpy as np

from .curves import SampledSignal
from .errors import SignalDataError, SignalFormatError
from .ga import pair_labels

_PHASE_RE = re.compile(r"v(\d+)$")


def fmt(x: float) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


def _check_header(row: list[str]) -> int:
    names = [c.strip() for c in row]
    if len(names) < 3:
        raise SignalFormatError(
            f"header must be 't,v1,...,vn' with n >= 2, got {','.join(names)!r}", line=1
        )
    if names[0] != "t":
        raise SignalFormatError(f"first column must be 't', got {names[0]!r}", line=1)
    for i, name in enumerate(names[1:], start=1):
        mt = _PHASE_RE.match(name)
        if not mt or int(mt.group(1)) != i:
            raise SignalFormatError(f"column {i + 1} must be 'v{i}', got {name!r}", line=1)
    return len(names) - 1


def parse_waveform_csv(path) -> SampledSignal:
    """Read a ``t,v1,...,vn`` CSV file (seconds, volts)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SignalFormatError("file is empty", line=1) from None
        n = _check_header(header)
        rows = []
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != n + 1:
                raise SignalDataError(
                    f"line {lineno}: expected {n + 1} fields, got {len(row)}"
                )
            try:
                vals = [float(c) for c in row]
            except ValueError:
                raise SignalFormatError(f"non-numeric field in {row!r}", line=lineno) from None
            if not all(math.isfinite(v) for v in vals):
                raise SignalDataError(f"line {lineno}: non-finite value")
            if rows and vals[0] <= rows[-1][0]:
                raise SignalDataError(
                    f"line {lineno}: time {vals[0]!r} does not increase "
                    f"(previous {rows[-1][0]!r})"
                )
            rows.append(vals)
    if not rows:
        raise SignalDataError("no data rows")
    data = np.array(rows)
    return SampledSignal(data[:, 0], data[:, 1:], meta={"path": str(path)})


def write_waveform_csv(fh, times, values) -> None:
    values = np.asarray(values)
    n = values.shape[1]
    fh.write(",".join(["t"] + [f"v{i}" for i in range(1, n + 1)]) + "\n")
    for t, row in zip(times, values):
        fh.write(",".join([fmt(t)] + [fmt(v) for v in row]) + "\n")


def _num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def sample_record(sample, dim: int) -> dict:
    ncomp = dim * (dim - 1) // 2
    comps = sample.omega.comps if sample.omega is not None else [math.nan] * ncomp
    return {
        "record": "sample",
        "t": _num(sample.t),
        "s_prime": _num(sample.s_prime),
        "k": [_num(x) for x in sample.k],
        "omega1_norm": _num(sample.omega1_norm),
        "omega_components": [_num(c) for c in comps],
        "planar_residual": _num(sample.planar_residual),
        "frame_size": sample.m,
        "flags": list(sample.flags),
    }


def average_record(avg) -> dict:
    return {
        "record": "average",
        "window": [avg.window[0], avg.window[1]],
        "steps": avg.steps,
        "mean_components": [float(c) for c in avg.mean.comps],
        "mean_norm": avg.mean_norm,
        "norm_mean": avg.norm_mean,
    }


def to_json(samples, dim: int, metadata: dict, average=None) -> str:
    records = [sample_record(s, dim) for s in samples]
    if average is not None:
        records.append(average_record(average))
    meta = dict(metadata)
    meta["omega_labels"] = pair_labels(dim)
    records.append({"record": "metadata", **meta})
    return json.dumps(records, indent=1, allow_nan=False) + "\n"


def to_csv(samples, dim: int, metadata: dict, average=None) -> str:
    labels = [f"omega_{lab[1:]}" for lab in pair_labels(dim)]
    kcols = [f"k{i}" for i in range(1, dim)]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "s_prime", *kcols, "omega1_norm", *labels,
                     "planar_residual", "frame_size", "flags"])
    for s in samples:
        rec = sample_record(s, dim)
        ks = rec["k"] + [0.0] * (dim - 1 - len(rec["k"])) if s.ok else [None] * (dim - 1)
        row = [rec["t"], rec["s_prime"], *ks, rec["omega1_norm"],
               *rec["omega_components"], rec["planar_residual"]]
        writer.writerow([("nan" if v is None else fmt(v)) for v in row]
                        + [rec["frame_size"], ";".join(rec["flags"])])
    if average is not None:
        out.write("# average " + json.dumps(average_record(average)) + "\n")
    out.write("# metadata " + json.dumps(metadata) + "\n")
    return out.getvalue()
