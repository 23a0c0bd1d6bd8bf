"""Text formats for instances and solutions.

Both formats are whitespace-separated with LF line endings and are written
byte-deterministically so golden files and re-runs compare equal.

Instance (``CPPLC 1``)::

    CPPLC 1
    <n> <m> <W>
    <u> <v> <d> <q>     (m lines; edge id = 1-based line order)

Solution (``CPPLC-SOL 1``)::

    CPPLC-SOL 1
    cost <decimal, up to 6 fractional digits>
    <m>
    <edge_id> <dir>     (m lines)
"""

from __future__ import annotations

import os
from typing import Union

from .evaluate import DirectedTour
from .graph import Edge, Instance

PathLike = Union[str, os.PathLike]

INSTANCE_MAGIC = "CPPLC"
SOLUTION_MAGIC = "CPPLC-SOL"
FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_number(x: float) -> str:
    """Decimal rendering with up to 6 fractional digits, no trailing zeros."""
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.6f}".rstrip("0").rstrip(".")


def _parse_number(token: str, what: str, line: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"bad {what} {token!r}", line) from None


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad {what} {token!r}", line) from None


def write_instance(instance: Instance, path: PathLike) -> None:
    lines = [
        f"{INSTANCE_MAGIC} {FORMAT_VERSION}",
        f"{instance.n} {instance.m} {format_number(instance.W)}",
    ]
    lines.extend(
        f"{e.u} {e.v} {format_number(e.d)} {format_number(e.q)}"
        for e in instance.edges
    )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_instance(path: PathLike) -> Instance:
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise ParseError("empty file", 1)
    header = raw[0].split()
    if len(header) != 2 or header[0] != INSTANCE_MAGIC:
        raise ParseError(f"expected '{INSTANCE_MAGIC} {FORMAT_VERSION}' header", 1)
    if _parse_int(header[1], "format version", 1) != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {header[1]}", 1)
    if len(raw) < 2:
        raise ParseError("missing size line", 2)
    size = raw[1].split()
    if len(size) != 3:
        raise ParseError("size line must be '<n> <m> <W>'", 2)
    n = _parse_int(size[0], "node count", 2)
    m = _parse_int(size[1], "edge count", 2)
    W = _parse_number(size[2], "curb weight", 2)
    if len(raw) < 2 + m:
        raise ParseError(f"expected {m} edge lines, found {len(raw) - 2}", len(raw) + 1)
    edges = []
    for i in range(m):
        line_no = 3 + i
        fields = raw[2 + i].split()
        if len(fields) != 4:
            raise ParseError("edge line must be '<u> <v> <d> <q>'", line_no)
        edges.append(
            Edge(
                u=_parse_int(fields[0], "node id", line_no),
                v=_parse_int(fields[1], "node id", line_no),
                d=_parse_number(fields[2], "length", line_no),
                q=_parse_number(fields[3], "demand", line_no),
            )
        )
    return Instance(n=n, edges=tuple(edges), W=W)


def write_solution(tour: DirectedTour, path: PathLike) -> None:
    lines = [
        f"{SOLUTION_MAGIC} {FORMAT_VERSION}",
        f"cost {format_number(round(tour.cost, 6))}",
        str(len(tour.seq)),
    ]
    lines.extend(f"{eid} {d}" for eid, d in tour.seq)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_solution(path: PathLike) -> DirectedTour:
    """Parse a solution file; the stated cost is carried over unverified."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise ParseError("empty file", 1)
    header = raw[0].split()
    if len(header) != 2 or header[0] != SOLUTION_MAGIC:
        raise ParseError(f"expected '{SOLUTION_MAGIC} {FORMAT_VERSION}' header", 1)
    if _parse_int(header[1], "format version", 1) != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {header[1]}", 1)
    if len(raw) < 3:
        raise ParseError("missing cost or size line", min(len(raw) + 1, 3))
    cost_fields = raw[1].split()
    if len(cost_fields) != 2 or cost_fields[0] != "cost":
        raise ParseError("expected 'cost <value>'", 2)
    cost = _parse_number(cost_fields[1], "cost", 2)
    m = _parse_int(raw[2].strip(), "edge count", 3)
    if len(raw) < 3 + m:
        raise ParseError(f"expected {m} edge lines, found {len(raw) - 3}", len(raw) + 1)
    seq = []
    for i in range(m):
        line_no = 4 + i
        fields = raw[3 + i].split()
        if len(fields) != 2:
            raise ParseError("edge line must be '<edge_id> <dir>'", line_no)
        eid = _parse_int(fields[0], "edge id", line_no)
        d = _parse_int(fields[1], "direction", line_no)
        if d not in (1, 2):
            raise ParseError(f"direction must be 1 or 2, got {d}", line_no)
        seq.append((eid, d))
    return DirectedTour(seq=tuple(seq), cost=cost)
