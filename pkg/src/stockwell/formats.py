"""File formats for signals, coefficients and tabular exports.

Signal CSV
    one sample per line, ``re`` or ``re,im``; ``#`` lines are comments.
Signal binary
    16-byte header ``b"DSTW"``, uint32 version, uint64 n (little endian),
    then n little-endian float64 ``(re, im)`` pairs.
Coefficient JSON
    ``{"n", "window", "normalized", "bands": [{"p", "beta", "nu", "offset"}],
    "values": [[re, im], ...]}`` with values band-major in layout order.
"""
from __future__ import annotations

import io
import json
import struct
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .adapted import AdaptedCoefficients
from .dost import DostCoefficients
from .dyadic import partition
from .stransform import TimeFreqMatrix

MAGIC = b"DSTW"
VERSION = 1
_HEADER = struct.Struct("<4sIQ")


class FormatError(ValueError):
    pass


@contextmanager
def _open_out(path, binary: bool = False):
    if path in (None, "-"):
        if binary:
            yield sys.stdout.buffer
        else:
            yield sys.stdout
        return
    with open(path, "wb" if binary else "w", newline=None if binary else "") as fh:
        yield fh


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


# -- signals ---------------------------------------------------------------

def write_signal(path, samples, fmt: str = "csv") -> None:
    x = np.asarray(samples, dtype=np.complex128)
    if fmt == "bin":
        with _open_out(path, binary=True) as fh:
            fh.write(_HEADER.pack(MAGIC, VERSION, x.size))
            fh.write(np.column_stack([x.real, x.imag]).astype("<f8").tobytes())
        return
    if fmt != "csv":
        raise FormatError(f"signals are written as csv or bin, not {fmt!r}")
    with _open_out(path) as fh:
        for v in x:
            fh.write(f"{_fmt(v.real)},{_fmt(v.imag)}\n")


def read_signal(path) -> np.ndarray:
    data = Path(path).read_bytes()
    if data[:4] == MAGIC:
        return _read_signal_bin(data, path)
    return _read_signal_csv(data.decode(), path)


def _read_signal_bin(data: bytes, path) -> np.ndarray:
    if len(data) < _HEADER.size:
        raise FormatError(f"{path}: truncated header")
    _, version, n = _HEADER.unpack_from(data)
    if version != VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    body = data[_HEADER.size:]
    if len(body) != 16 * n:
        raise FormatError(f"{path}: expected {16 * n} payload bytes, found {len(body)}")
    pairs = np.frombuffer(body, dtype="<f8").reshape(n, 2)
    return pairs[:, 0] + 1j * pairs[:, 1]


def _read_signal_csv(text: str, path) -> np.ndarray:
    out = []
    for lineno, line in enumerate(io.StringIO(text), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        try:
            if len(parts) == 1:
                out.append(complex(float(parts[0]), 0.0))
            elif len(parts) == 2:
                out.append(complex(float(parts[0]), float(parts[1])))
            else:
                raise ValueError
        except ValueError:
            raise FormatError(f"{path}:{lineno}: expected 're' or 're,im', got {line!r}") from None
    return np.array(out, dtype=np.complex128)


# -- coefficients ----------------------------------------------------------

def coefficients_to_json(coeffs: DostCoefficients) -> dict:
    adapted = isinstance(coeffs, AdaptedCoefficients)
    return {
        "n": coeffs.n,
        "window": coeffs.window_id if adapted else None,
        "normalized": bool(coeffs.normalized) if adapted else False,
        "bands": coeffs.layout.to_json(),
        "values": [[float(v.real), float(v.imag)] for v in coeffs.values],
    }


def coefficients_from_json(doc: dict) -> DostCoefficients:
    try:
        n = int(doc["n"])
        bands = doc["bands"]
        values = np.array(doc["values"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed coefficient document: {exc}") from None
    layout = partition(n)
    if bands != layout.to_json():
        raise FormatError("band layout in file does not match the canonical layout for n")
    if values.shape != (n, 2):
        raise FormatError(f"expected {n} [re, im] pairs, got shape {values.shape}")
    vals = values[:, 0] + 1j * values[:, 1]
    if doc.get("window") is None:
        if doc.get("normalized"):
            raise FormatError("normalized coefficients need a window")
        return DostCoefficients(layout, vals)
    return AdaptedCoefficients(layout, vals, str(doc["window"]), bool(doc.get("normalized", False)))


def write_coefficients(path, coeffs: DostCoefficients) -> None:
    with _open_out(path) as fh:
        json.dump(coefficients_to_json(coeffs), fh)
        fh.write("\n")


def read_coefficients(path) -> DostCoefficients:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None
    return coefficients_from_json(doc)


# -- tabular exports -------------------------------------------------------

def write_timefreq(path, tf: TimeFreqMatrix) -> None:
    """First line is n, then rows ``j,k,re,im``."""
    with _open_out(path) as fh:
        fh.write(f"{tf.n}\n")
        for j in range(tf.n):
            row = tf.entries[j]
            fh.writelines(f"{j},{k},{_fmt(v.real)},{_fmt(v.imag)}\n" for k, v in enumerate(row))


def read_timefreq(path) -> TimeFreqMatrix:
    with open(path) as fh:
        n = int(fh.readline())
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape != (n * n, 4):
        raise FormatError(f"{path}: expected {n * n} rows of j,k,re,im")
    out = np.empty((n, n), dtype=np.complex128)
    out[data[:, 0].astype(int), data[:, 1].astype(int)] = data[:, 2] + 1j * data[:, 3]
    return TimeFreqMatrix(n, out)


def write_rows(path, header: str, rows) -> None:
    with _open_out(path) as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")
