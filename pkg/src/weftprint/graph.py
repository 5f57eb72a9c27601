"""Flat-array crossing graphs for woven structures.

A woven structure is broken down into *crossings*, each the meeting point
of two threads.  Every crossing owns four vertices, two per thread, stored
in four consecutive slots of one flat array: crossing ``c`` owns slots
``4c .. 4c+3``.  Each vertex records

* ``next_node`` -- where its thread continues: a vertex of another
  crossing, or :data:`TERMINAL` when the thread ends there.  Thread ends
  are never stored as records; the sentinel is all there is to them.
* ``on_top`` -- whether the vertex belongs to the thread lying on top at
  this crossing (exactly one of the two threads does).
* ``opposite`` -- the same-thread partner vertex within the crossing.

This layout makes following a thread an O(1) array hop per crossing, which
is what keeps fingerprint extraction linear in the walk depth.

Inter-crossing connections carry one of three labels: the thread either
changes level between the two crossings (alternating), stays on the same
level (non-alternating), or ends (terminated).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

TERMINAL = -1


class EdgeLabel(str, Enum):
    """Label of a thread connection leaving a vertex."""

    ALTERNATING = "A"
    NON_ALTERNATING = "N"
    TERMINATED = "T"


class GraphParseError(ValueError):
    """Raised for malformed ``.tg`` text; carries the offending position."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class InvalidGraphError(ValueError):
    """Raised when a structurally parseable graph breaks a model invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        shown = "; ".join(self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"invalid graph: {shown}{more}")


@dataclass(frozen=True, eq=False)
class TextileGraph:
    """Immutable crossing graph in flat-array form.

    ``next_node``, ``on_top`` and ``opposite`` are parallel arrays of
    length ``4n`` for ``n`` crossings.  Instances are cheap views over
    read-only numpy arrays; all operations on them are pure reads, so a
    graph can be shared freely across threads.
    """

    next_node: np.ndarray
    on_top: np.ndarray
    opposite: np.ndarray

    def __post_init__(self):
        nxt = np.ascontiguousarray(self.next_node, dtype=np.int64)
        top = np.ascontiguousarray(self.on_top, dtype=np.bool_)
        opp = np.ascontiguousarray(self.opposite, dtype=np.int64)
        for arr, name in ((nxt, "next_node"), (top, "on_top"), (opp, "opposite")):
            if arr.ndim != 1:
                raise ValueError(f"{name} must be one-dimensional")
            arr.flags.writeable = False
        if not (len(nxt) == len(top) == len(opp)):
            raise ValueError("next_node, on_top and opposite must have equal length")
        object.__setattr__(self, "next_node", nxt)
        object.__setattr__(self, "on_top", top)
        object.__setattr__(self, "opposite", opp)

    @property
    def node_count(self) -> int:
        return len(self.next_node)

    @property
    def crossing_count(self) -> int:
        return len(self.next_node) // 4

    def __eq__(self, other):
        if not isinstance(other, TextileGraph):
            return NotImplemented
        return (
            np.array_equal(self.next_node, other.next_node)
            and np.array_equal(self.on_top, other.on_top)
            and np.array_equal(self.opposite, other.opposite)
        )

    def __repr__(self):
        return f"TextileGraph(crossings={self.crossing_count})"

    def _thread_arrays(self):
        # Plain lists index ~3x faster than numpy scalars in the walk loop;
        # cache them once since the graph is immutable.
        cached = self.__dict__.get("_lists")
        if cached is None:
            cached = (self.next_node.tolist(), self.on_top.tolist(), self.opposite.tolist())
            object.__setattr__(self, "_lists", cached)
        return cached


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`; violations are data, not exceptions."""

    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(g: TextileGraph) -> ValidationReport:
    """Check every model invariant; report each broken rule by node index."""
    out = []
    size = g.node_count
    if size == 0 or size % 4 != 0:
        out.append(f"node count {size} is not a positive multiple of four")
        return ValidationReport(tuple(out))

    nxt, top, opp = g.next_node, g.on_top, g.opposite
    idx = np.arange(size)

    for i in idx[(opp < 0) | (opp >= size)]:
        out.append(f"node {i}: opposite index {opp[i]} out of range")
    if out:
        return ValidationReport(tuple(out))

    for i in idx[opp == idx]:
        out.append(f"node {i}: opposite link points at itself")
    for i in idx[opp // 4 != idx // 4]:
        out.append(f"node {i}: opposite node {opp[i]} lies in a different crossing")
    bad_involution = (opp[opp] != idx) & (opp != idx)
    for i in idx[bad_involution]:
        out.append(f"node {i}: opposite link is not an involution (opposite({i})={opp[i]}, opposite({opp[i]})={opp[opp[i]]})")
    for i in idx[top != top[opp]]:
        out.append(f"node {i}: on_top differs from its opposite node {opp[i]}")

    tops_per_block = top.reshape(-1, 4).sum(axis=1)
    for c in np.nonzero(tops_per_block != 2)[0]:
        out.append(f"crossing {c}: top-edge count != 2 (found {tops_per_block[c]})")
    # The two top nodes must be the same thread, i.e. opposite partners.
    for c in range(g.crossing_count):
        if tops_per_block[c] != 2:
            continue
        block = np.arange(4 * c, 4 * c + 4)
        top_nodes = block[top[block]]
        if opp[top_nodes[0]] != top_nodes[1]:
            out.append(f"crossing {c}: top nodes {top_nodes[0]} and {top_nodes[1]} are not opposite partners")

    out_of_range = (nxt < TERMINAL) | (nxt >= size)
    for i in idx[out_of_range]:
        out.append(f"node {i}: next index {nxt[i]} out of range")
    linked = ~out_of_range & (nxt != TERMINAL)
    for i in idx[linked & (nxt // 4 == idx // 4)]:
        out.append(f"node {i}: thread link stays inside its own crossing")
    for i in idx[linked]:
        j = nxt[i]
        if 0 <= j < size and nxt[j] != i:
            out.append(f"node {i}: asymmetric thread link (next({i})={j}, next({j})={nxt[j]})")

    return ValidationReport(tuple(out))


def edge_label(g: TextileGraph, i: int) -> EdgeLabel:
    """Label of the thread connection leaving vertex ``i``."""
    if not 0 <= i < g.node_count:
        raise IndexError(f"node index {i} out of range for {g.node_count} nodes")
    j = g.next_node[i]
    if j == TERMINAL:
        return EdgeLabel.TERMINATED
    if bool(g.on_top[i]) != bool(g.on_top[j]):
        return EdgeLabel.ALTERNATING
    return EdgeLabel.NON_ALTERNATING


# --- .tg text format -------------------------------------------------------
#
# Line-oriented, UTF-8:
#   crossings <n>
#   <id> <next> <top> <opp>        exactly 4n lines, id running 0..4n-1
# '#' starts a comment line, blank lines are ignored, fields are
# whitespace-separated.  next is -1 for a thread end.

_FORMAT_COMMENT = "# weftprint graph format 1"


def _significant_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw, stripped


def _int_field(token, lineno, column, what):
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"{what} is not an integer: {token!r}", lineno, column) from None


def parse_graph(text: str) -> TextileGraph:
    """Parse ``.tg`` text into a validated graph.

    Node order is preserved exactly as written.  Raises
    :class:`GraphParseError` for syntax problems (with line/column) and
    :class:`InvalidGraphError` when the encoded graph breaks an invariant.
    """
    lines = list(_significant_lines(text))
    if not lines:
        raise GraphParseError("empty graph file")

    lineno, raw, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "crossings":
        raise GraphParseError(f"expected 'crossings <n>' header, got {header!r}", lineno)
    n = _int_field(parts[1], lineno, raw.index(parts[1]) + 1, "crossing count")
    if n < 1:
        raise GraphParseError(f"crossing count must be >= 1, got {n}", lineno)

    node_lines = lines[1:]
    if len(node_lines) != 4 * n:
        raise GraphParseError(f"node count {len(node_lines)} does not match 4*{n} = {4 * n}")

    size = 4 * n
    nxt = np.empty(size, dtype=np.int64)
    top = np.empty(size, dtype=np.bool_)
    opp = np.empty(size, dtype=np.int64)
    for expected, (lineno, raw, stripped) in enumerate(node_lines):
        fields = stripped.split()
        if len(fields) != 4:
            raise GraphParseError(f"expected 4 fields '<id> <next> <top> <opp>', got {len(fields)}", lineno)
        cols = [raw.index(f) + 1 for f in fields]
        node_id = _int_field(fields[0], lineno, cols[0], "node id")
        if node_id != expected:
            raise GraphParseError(f"node id {node_id} out of order, expected {expected}", lineno, cols[0])
        value = _int_field(fields[1], lineno, cols[1], "next index")
        if value != TERMINAL and not 0 <= value < size:
            raise GraphParseError(f"next index {value} out of range [-1, {size})", lineno, cols[1])
        nxt[expected] = value
        flag = _int_field(fields[2], lineno, cols[2], "top flag")
        if flag not in (0, 1):
            raise GraphParseError(f"top flag must be 0 or 1, got {flag}", lineno, cols[2])
        top[expected] = bool(flag)
        value = _int_field(fields[3], lineno, cols[3], "opposite index")
        if not 0 <= value < size:
            raise GraphParseError(f"opposite index {value} out of range [0, {size})", lineno, cols[3])
        opp[expected] = value

    g = TextileGraph(nxt, top, opp)
    report = validate(g)
    if not report.ok:
        raise InvalidGraphError(report.violations)
    return g


def serialize_graph(g: TextileGraph) -> str:
    """Canonical ``.tg`` text; inverse of :func:`parse_graph` for valid graphs."""
    lines = [_FORMAT_COMMENT, f"crossings {g.crossing_count}"]
    nxt, top, opp = g.next_node, g.on_top, g.opposite
    for i in range(g.node_count):
        lines.append(f"{i} {nxt[i]} {1 if top[i] else 0} {opp[i]}")
    return "\n".join(lines) + "\n"


def load_graph(path) -> TextileGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: TextileGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_graph(g))
