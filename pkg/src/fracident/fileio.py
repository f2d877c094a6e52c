"""Reading and writing the JSON and CSV documents used by the command line.

Numbers are written as decimal strings so that extended-precision values
survive a round trip.  Readers accept strings or JSON numbers.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import mpmath
from mpmath import mp

from .errors import InputFormatError, ParameterError
from .gl_model import ModelParams, MonicTF
from .identifiability import IdentifiabilityReport
from .numerics import to_mpf

TF_FORMAT = "fracident-monic-tf"
PARAM_FIELDS = ("r_inf", "r1", "c1", "alpha1", "c2", "alpha2")


def num_str(x, digits: int = 60) -> str:
    if x is None:
        return None
    return mpmath.nstr(x, digits, min_fixed=-6, max_fixed=6)


def load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputFormatError(f"{path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError(f"{path}: top level must be a JSON object")
    return doc


def dump_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def parse_real(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise InputFormatError(f"{where}: expected a number or decimal string, got {value!r}")
    try:
        with mp.workdps(max(mp.dps, 100)):
            return to_mpf(value)
    except (ValueError, TypeError) as exc:
        raise InputFormatError(f"{where}: cannot parse {value!r} as a real number") from exc


def params_from_mapping(doc: dict, where: str = "params", ts=None, horizon_T=None) -> ModelParams:
    """Build ModelParams; ``ts``/``horizon_T`` arguments override the document."""
    missing = [k for k in PARAM_FIELDS if k not in doc]
    if missing:
        raise InputFormatError(f"{where}: missing field(s) {', '.join(missing)}")
    values = {k: parse_real(doc[k], f"{where}.{k}") for k in PARAM_FIELDS}
    if ts is None:
        if "ts" not in doc:
            raise InputFormatError(f"{where}: missing field ts (or pass --ts)")
        ts = doc["ts"]
    values["ts"] = parse_real(ts, f"{where}.ts") if not isinstance(ts, mpmath.mpf) else ts
    if horizon_T is None:
        horizon_T = doc.get("horizon_T", 100)
    try:
        return ModelParams(horizon_T=horizon_T, **values)
    except ParameterError as exc:
        raise InputFormatError(f"{where}: {exc}") from exc


def params_to_mapping(p: ModelParams, digits: int = 60) -> dict:
    out = {k: num_str(getattr(p, k), digits) for k in PARAM_FIELDS + ("ts",)}
    out["horizon_T"] = p.horizon_T
    return out


def tf_to_mapping(tf: MonicTF, digits: int = 60, ts=None) -> dict:
    doc = {"format": TF_FORMAT, "T": tf.T}
    if ts is not None:
        doc["ts"] = num_str(ts, digits)
    doc["f"] = [num_str(c, digits) for c in tf.f]
    doc["g"] = [num_str(c, digits) for c in tf.g]
    return doc


def tf_from_mapping(doc: dict, where: str = "coefficients") -> MonicTF:
    for key in ("f", "g"):
        if not isinstance(doc.get(key), list):
            raise InputFormatError(f"{where}: field {key!r} must be a list of coefficients")
    f = tuple(parse_real(v, f"{where}.f[{k}]") for k, v in enumerate(doc["f"]))
    g = tuple(parse_real(v, f"{where}.g[{k}]") for k, v in enumerate(doc["g"]))
    if len(g) < 2 or len(g) % 2 or len(f) != len(g) + 1:
        raise InputFormatError(
            f"{where}: need len(g) = 2T+2 and len(f) = 2T+3, got {len(g)} and {len(f)}"
        )
    tf = MonicTF(f=f, g=g)
    if "T" in doc and doc["T"] != tf.T:
        raise InputFormatError(f"{where}: T={doc['T']} disagrees with coefficient lengths (T={tf.T})")
    return tf


def candidate_to_mapping(c, digits: int = 60) -> dict:
    return {
        "status": c.status.value,
        "alpha2": num_str(c.alpha2, digits),
        "alpha2_imag": num_str(c.imag, digits) if c.imag else None,
        "alpha1": num_str(c.alpha1, digits),
        "a10": num_str(c.a10, digits),
        "b1": num_str(c.b1, digits),
        "b2": num_str(c.b2, digits),
        "max_norm_error": num_str(c.max_norm_error, 10),
        "norm_errors": [num_str(e, 10) for e in c.norm_errors],
        "recovered": params_to_mapping(c.recovered, digits) if c.recovered else None,
        "note": c.note or None,
    }


def report_to_mapping(report: IdentifiabilityReport, digits: int = 60) -> dict:
    h = report.heads
    doc = {
        "verdict": report.verdict_label,
        "n_accepted": report.n_accepted,
        "exclusion_interval": (
            [num_str(x, digits) for x in report.exclusion_interval]
            if report.exclusion_interval else None
        ),
        "octic_descending": (
            [num_str(c, digits) for c in reversed(report.octic.coeffs)] if report.octic else None
        ),
        "candidates": [candidate_to_mapping(c, digits) for c in report.candidates],
    }
    if h is not None:
        doc["heads"] = {
            "d": num_str(h.d, digits),
            "f": [num_str(x, digits) for x in h.f_heads],
            "g": [num_str(x, digits) for x in (*h.g_heads, *h.g_extra)],
        }
    doc["timings"] = {k: round(v, 6) for k, v in report.timings.items()}
    return doc


def write_csv(rows, header, path=None, stream=None):
    """Write ``rows`` (sequences) under ``header`` to ``path`` or ``stream``."""
    if path is not None:
        with open(path, "w", newline="") as fh:
            _write(fh, rows, header)
    else:
        _write(stream, rows, header)


def _write(fh, rows, header):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def read_grid_csv(path) -> list:
    """Angular frequencies from a one-column CSV (header ``omega`` optional)."""
    out = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not row[0].strip():
                continue
            cell = row[0].strip()
            if lineno == 1 and cell.lower() == "omega":
                continue
            try:
                out.append(float(cell))
            except ValueError as exc:
                raise InputFormatError(f"{path}: line {lineno}: cannot parse {cell!r}") from exc
    return out
