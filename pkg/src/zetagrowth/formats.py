"""Text formats: ring definitions (.ring), cone data (.cone), cone integrals (.cint)
and good-reduction counts (.grc).

.ring::

    name: H
    rank: 3
    kind: lie                # lie | associative | unital
    identity: 1 0 0          # unital only
    1 2 3 1                  # e_1·e_2 = 1·e_3   (indices 1-based)
    2 1 3 -1

.cone::

    T 2 1                    # |T| = m, l
    N f_0 : 1 0
    N g_0 : 0 0
    N f_1 : 1 0
    N g_1 : 0 1
    nu : 1 1

.cint: one polynomial per line in the sparse syntax "coef:e1,...,em; ...",
f_0 and g_0 first, then f_i, g_i pairs.

.grc::

    p 5
    0 9                      # bitmask of I (bit i-1 set iff i ∈ I), count
    1 3

`#` starts a comment everywhere. Emitters write the canonical form that the
parsers read back unchanged.
"""

from __future__ import annotations

import re

from .algebra import AlgebraError, StructureConstantAlgebra, validate
from .cones import GoodReductionCounts, MonomialConeDatum
from .padic import ConeIntegralData

__all__ = ["ParseError", "parse_ring_file", "emit_ring", "parse_cone_file", "emit_cone",
           "parse_cint_file", "emit_cint", "parse_grc_file", "emit_grc", "load"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body


def _ints(s: str, no: int) -> list[int]:
    try:
        return [int(x) for x in s.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {s!r}", no) from None


# -- rings ------------------------------------------------------------------

_RING_KEYS = ("name", "rank", "kind", "identity")


def parse_ring_file(text: str) -> StructureConstantAlgebra:
    header: dict[str, tuple[int, str]] = {}
    consts: dict[tuple[int, int, int], int] = {}
    for no, body in _lines(text):
        m = re.fullmatch(r"([A-Za-z_][\w-]*)\s*:\s*(.*)", body)
        if m:
            key, value = m.group(1).lower(), m.group(2).strip()
            if key not in _RING_KEYS:
                raise ParseError(f"unknown key {key!r}", no)
            if key in header:
                raise ParseError(f"duplicate key {key!r}", no)
            if consts:
                raise ParseError("header keys must precede structure constants", no)
            header[key] = (no, value)
            continue
        vals = _ints(body, no)
        if len(vals) != 4:
            raise ParseError("structure constant lines are 'i j k value'", no)
        i, j, k, c = vals
        if (i, j, k) in consts:
            raise ParseError(f"constant ({i},{j},{k}) given twice", no)
        consts[(i, j, k)] = c
    if "rank" not in header:
        raise ParseError("missing 'rank'")
    rank_no, rank_s = header["rank"]
    try:
        rank = int(rank_s)
    except ValueError:
        raise ParseError(f"rank must be an integer, got {rank_s!r}", rank_no) from None
    kind = header.get("kind", (None, "lie"))[1]
    identity = None
    if "identity" in header:
        identity = tuple(_ints(header["identity"][1], header["identity"][0]))
    for (i, j, k) in consts:
        if not all(1 <= x <= rank for x in (i, j, k)):
            raise ParseError(f"index ({i},{j},{k}) outside 1..{rank}")
    try:
        L = StructureConstantAlgebra(
            rank, {(i - 1, j - 1, k - 1): c for (i, j, k), c in consts.items()}, kind,
            identity, header.get("name", (None, ""))[1])
    except AlgebraError as exc:
        raise ParseError(str(exc)) from None
    problems = validate(L)
    if problems:
        raise ParseError("; ".join(problems))
    return L


def emit_ring(L: StructureConstantAlgebra) -> str:
    out = []
    if L.name:
        out.append(f"name: {L.name}")
    out += [f"rank: {L.rank}", f"kind: {L.kind}"]
    if L.identity is not None:
        out.append("identity: " + " ".join(map(str, L.identity)))
    for (i, j, k), c in sorted(L.constants.items()):
        out.append(f"{i + 1} {j + 1} {k + 1} {c}")
    return "\n".join(out) + "\n"


# -- cone data ---------------------------------------------------------------

def parse_cone_file(text: str) -> MonomialConeDatum:
    it = iter(_lines(text))
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty cone file") from None
    parts = head.split()
    if len(parts) != 3 or parts[0] != "T":
        raise ParseError("header must be 'T m l'", no)
    m, l = _ints(" ".join(parts[1:]), no)
    rows: dict[tuple[str, int], list[int]] = {}
    nu = None
    for no, body in it:
        label, sep, rest = body.partition(":")
        if not sep:
            raise ParseError("row lacks ':'", no)
        label = label.strip()
        vals = _ints(rest, no)
        if len(vals) != m:
            raise ParseError(f"expected {m} entries, got {len(vals)}", no)
        if label == "nu":
            if nu is not None:
                raise ParseError("nu given twice", no)
            nu = vals
            continue
        mt = re.fullmatch(r"N\s+([fg])_(\d+)", label)
        if not mt:
            raise ParseError(f"unknown row label {label!r}", no)
        key = (mt.group(1), int(mt.group(2)))
        if key[1] > l:
            raise ParseError(f"index {key[1]} exceeds l = {l}", no)
        if key in rows:
            raise ParseError(f"row {label} given twice", no)
        rows[key] = vals
    missing = [f"N {s}_{j}" for j in range(l + 1) for s in "fg" if (s, j) not in rows]
    if missing:
        raise ParseError("missing rows: " + ", ".join(missing))
    if nu is None:
        nu = [1] * m
    try:
        return MonomialConeDatum(m, [rows[("f", j)] for j in range(l + 1)],
                                 [rows[("g", j)] for j in range(l + 1)], nu)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def emit_cone(D: MonomialConeDatum) -> str:
    out = [f"T {D.m} {D.l}"]
    for j in range(D.l + 1):
        out.append(f"N f_{j} : " + " ".join(map(str, D.f[j])))
        out.append(f"N g_{j} : " + " ".join(map(str, D.g[j])))
    out.append("nu : " + " ".join(map(str, D.nu)))
    return "\n".join(out) + "\n"


# -- cone integrals -------------------------------------------------------------

def parse_cint_file(text: str) -> ConeIntegralData:
    try:
        return ConeIntegralData.parse(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def emit_cint(D: ConeIntegralData) -> str:
    return D.format()


# -- good-reduction counts ------------------------------------------------------

def parse_grc_file(text: str) -> GoodReductionCounts:
    p = None
    counts = {}
    for no, body in _lines(text):
        parts = body.split()
        if parts[0] == "p":
            if p is not None or len(parts) != 2:
                raise ParseError("expected a single 'p <prime>' line", no)
            p = _ints(parts[1], no)[0]
            continue
        if len(parts) != 2:
            raise ParseError("count lines are 'bitmask count'", no)
        try:
            mask = int(parts[0], 0)
        except ValueError:
            raise ParseError(f"bad bitmask {parts[0]!r}", no) from None
        c = _ints(parts[1], no)[0]
        if mask < 0:
            raise ParseError("bitmask must be non-negative", no)
        I = frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)
        if I in counts:
            raise ParseError(f"bitmask {mask} given twice", no)
        counts[I] = c
    if p is None:
        raise ParseError("missing 'p <prime>' line")
    try:
        return GoodReductionCounts(p, counts)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def emit_grc(G: GoodReductionCounts) -> str:
    rows = sorted((sum(1 << i for i in I), c) for I, c in G.counts.items())
    return "\n".join([f"p {G.p}"] + [f"{m} {c}" for m, c in rows]) + "\n"


_LOADERS = {".ring": parse_ring_file, ".cone": parse_cone_file,
            ".cint": parse_cint_file, ".grc": parse_grc_file}


def load(path):
    """Parse a file by its extension."""
    from pathlib import Path
    path = Path(path)
    try:
        parser = _LOADERS[path.suffix]
    except KeyError:
        raise ParseError(f"unknown file type {path.suffix!r}") from None
    return parser(path.read_text())
