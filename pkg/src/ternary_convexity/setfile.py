"""Plain-text set files.

    n=<n>
    format=indices        (then one index per line)
    format=bitmap         (then one line of hex, little-endian bit order)
"""
from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .ternary import PointSet


def dumps(S: PointSet, fmt: str = "indices") -> str:
    out = io.StringIO()
    out.write(f"n={S.n}\n")
    if fmt == "indices":
        out.write("format=indices\n")
        for i in S.indices():
            out.write(f"{int(i)}\n")
    elif fmt == "bitmap":
        out.write("format=bitmap\n")
        packed = np.packbits(S.mask, bitorder="little")
        out.write(packed.tobytes().hex() + "\n")
    else:
        raise ValueError(f"unknown set format {fmt!r}")
    return out.getvalue()


def loads(text: str) -> PointSet:
    lines = [ln.strip() for ln in text.splitlines()]
    if len(lines) < 2 or not lines[0].startswith("n=") or not lines[1].startswith("format="):
        raise ValueError("malformed set file header")
    n = int(lines[0][2:])
    fmt = lines[1][len("format="):]
    body = [ln for ln in lines[2:] if ln]
    if fmt == "indices":
        return PointSet.from_indices(n, np.array([int(b) for b in body], dtype=np.int64))
    if fmt == "bitmap":
        raw = np.frombuffer(bytes.fromhex("".join(body)), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")
        size = 3 ** n
        if bits.size < size or bits[size:].any():
            raise ValueError("bitmap length does not match n")
        return PointSet(n, bits[:size].astype(bool))
    raise ValueError(f"unknown set format {fmt!r}")


def write_set(path, S: PointSet, fmt: str = "indices") -> None:
    Path(path).write_text(dumps(S, fmt))


def read_set(path) -> PointSet:
    return loads(Path(path).read_text())
