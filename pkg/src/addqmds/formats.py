"""Plain-text code (.aqc) and packing (.pkg) files.

Both start with a version line and a field header::

    field p=<p> e=<e> f=<c0,...,1> h=<h> g=<d0,...,1>

f has F_p coefficients; g has F_q coefficients, each written as its e F_p
digits joined by ':' (a bare digit when e = 1).  Writing what was read gives
back the same bytes.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .code import AdditiveCode
from .finite_field import GF, FieldTower
from .linalg import Subspace
from .packing import Packing


class FormatError(ValueError):
    """Malformed or inconsistent file contents."""


def fq_str(F: GF, a: int) -> str:
    return ":".join(str(d) for d in F.digits(int(a)))


def fq_parse(F: GF, s: str) -> int:
    parts = s.split(":")
    if len(parts) != F.e:
        raise FormatError(f"F_q element {s!r} needs {F.e} digit(s)")
    try:
        ds = [int(x) for x in parts]
    except ValueError as exc:
        raise FormatError(f"bad digit in {s!r}") from exc
    if any(not 0 <= d < F.p for d in ds):
        raise FormatError(f"digit out of range in {s!r}")
    return F.from_digits(ds)


def header(F: GF, tower: FieldTower | None = None) -> str:
    out = f"field p={F.p} e={F.e} f={','.join(map(str, F.f))}"
    if tower is not None:
        out += f" h={tower.h} g={','.join(fq_str(F, c) for c in tower.g)}"
    return out


def _fields(line: str, head: str) -> dict[str, str]:
    words = line.split()
    if not words or words[0] != head:
        raise FormatError(f"expected a {head!r} line, got {line!r}")
    out = {}
    for w in words[1:]:
        key, sep, val = w.partition("=")
        if not sep:
            raise FormatError(f"expected key=value, got {w!r}")
        out[key] = val
    return out


def _int(fields: dict[str, str], key: str) -> int:
    try:
        return int(fields[key])
    except KeyError as exc:
        raise FormatError(f"missing {key}=") from exc
    except ValueError as exc:
        raise FormatError(f"{key}= is not an integer") from exc


def parse_header(line: str) -> tuple[GF, FieldTower | None]:
    kv = _fields(line, "field")
    p, e = _int(kv, "p"), _int(kv, "e")
    try:
        f = [int(c) for c in kv["f"].split(",")]
        F = GF(p, f)
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad base field: {exc}") from exc
    if F.e != e:
        raise FormatError(f"e={e} does not match deg f = {F.e}")
    if "h" not in kv:
        return F, None
    h = _int(kv, "h")
    try:
        g = [fq_parse(F, c) for c in kv["g"].split(",")]
        T = FieldTower(F, g)
    except KeyError as exc:
        raise FormatError("h= given without g=") from exc
    except ValueError as exc:
        raise FormatError(f"bad extension: {exc}") from exc
    if T.h != h:
        raise FormatError(f"h={h} does not match deg g = {T.h}")
    return F, T


def _lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip()]


# ---------------------------------------------------------------------------
# codes


def dumps_code(C: AdditiveCode) -> str:
    F, T = C.F, C.tower
    out = ["aqc v1", header(F, T), f"code n={C.n} r={C.r}"]
    for row in C.G:
        out.append(" ".join(",".join(fq_str(F, c) for c in a) for a in row))
    return "\n".join(out) + "\n"


def loads_code(text: str) -> AdditiveCode:
    lines = _lines(text)
    if len(lines) < 3 or lines[0].strip() != "aqc v1":
        raise FormatError("not an aqc v1 file")
    F, T = parse_header(lines[1])
    if T is None:
        raise FormatError("code files need h= and g=")
    kv = _fields(lines[2], "code")
    n, r = _int(kv, "n"), _int(kv, "r")
    rows = lines[3:]
    if len(rows) != r:
        raise FormatError(f"expected {r} generator rows, found {len(rows)}")
    G = []
    for ln in rows:
        elems = ln.split()
        if len(elems) != n:
            raise FormatError(f"row has {len(elems)} entries, expected {n}")
        row = []
        for el in elems:
            coords = el.split(",")
            if len(coords) != T.h:
                raise FormatError(f"element {el!r} needs {T.h} coordinates")
            row.append(tuple(fq_parse(F, c) for c in coords))
        G.append(row)
    try:
        return AdditiveCode(T, G, n)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# packings


def dumps_packing(P: Packing, tower: FieldTower | None = None) -> str:
    F = P.F
    out = ["pkg v1", header(F, tower), f"packing r={P.r} blocks={len(P)}"]
    for B in P.blocks:
        out.append(f"block dim={B.dim}")
        for row in B.basis:
            out.append(" ".join(fq_str(F, c) for c in row))
    return "\n".join(out) + "\n"


def loads_packing(text: str) -> tuple[Packing, FieldTower | None]:
    lines = _lines(text)
    if len(lines) < 3 or lines[0].strip() != "pkg v1":
        raise FormatError("not a pkg v1 file")
    F, T = parse_header(lines[1])
    kv = _fields(lines[2], "packing")
    r, count = _int(kv, "r"), _int(kv, "blocks")
    pos = 3
    blocks = []
    for _ in range(count):
        if pos >= len(lines):
            raise FormatError("file ends before all blocks are read")
        d = _int(_fields(lines[pos], "block"), "dim")
        rows = lines[pos + 1 : pos + 1 + d]
        if len(rows) != d:
            raise FormatError("block ends early")
        M = np.zeros((d, r), dtype=np.int64)
        for i, ln in enumerate(rows):
            vals = ln.split()
            if len(vals) != r:
                raise FormatError(f"block row has {len(vals)} entries, expected {r}")
            M[i] = [fq_parse(F, v) for v in vals]
        S = Subspace(F, r, M)
        if S.dim != d:
            raise FormatError(f"block rows have rank {S.dim}, not {d}")
        blocks.append(S)
        pos += 1 + d
    if pos != len(lines):
        raise FormatError("trailing lines after the last block")
    return Packing(F, r, blocks), T


# ---------------------------------------------------------------------------


def write_code(path: str | os.PathLike, C: AdditiveCode) -> None:
    Path(path).write_text(dumps_code(C), encoding="utf-8")


def read_code(path: str | os.PathLike) -> AdditiveCode:
    return loads_code(Path(path).read_text(encoding="utf-8"))


def write_packing(path: str | os.PathLike, P: Packing, tower: FieldTower | None = None) -> None:
    Path(path).write_text(dumps_packing(P, tower), encoding="utf-8")


def read_packing(path: str | os.PathLike) -> tuple[Packing, FieldTower | None]:
    return loads_packing(Path(path).read_text(encoding="utf-8"))
