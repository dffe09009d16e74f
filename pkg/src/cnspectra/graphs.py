"""Commuting graphs, clique-union detection, and graph import/export.

Adjacency is stored as a dense symmetric boolean matrix; the vertex counts
here never exceed a few thousand, so density is irrelevant.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import AbelianGroupError, LoopEdgeError, MalformedInputError
from .groups import GroupTable, commuting_table


@dataclass(frozen=True, eq=False)
class CommutingGraph:
    """Simple undirected graph: symmetric boolean adjacency, zero diagonal.

    For a graph built from a group, vertices are the non-central elements in
    enumeration order and `labels` carry the element names.
    """

    adjacency: np.ndarray
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2


def _validated(adjacency: np.ndarray, labels) -> CommutingGraph:
    adjacency = np.ascontiguousarray(adjacency, dtype=bool)
    n = adjacency.shape[0]
    if adjacency.shape != (n, n):
        raise MalformedInputError("adjacency must be square")
    if not np.array_equal(adjacency, adjacency.T):
        raise MalformedInputError("adjacency must be symmetric")
    if adjacency.diagonal().any():
        raise LoopEdgeError("adjacency has a loop")
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise MalformedInputError("label count does not match vertex count")
    return CommutingGraph(adjacency, labels)


def commuting_graph(g: GroupTable) -> CommutingGraph:
    """Graph on the non-central elements of G; edges join commuting pairs."""
    comm = commuting_table(g)
    vertices = np.nonzero(~comm.all(axis=1))[0]
    if vertices.size == 0:
        raise AbelianGroupError("abelian group has no commuting graph")
    adj = comm[np.ix_(vertices, vertices)].copy()
    np.fill_diagonal(adj, False)
    return _validated(adj, [g.label(int(v)) for v in vertices])


def make_graph(n: int, edges, labels=None) -> CommutingGraph:
    if n < 0:
        raise MalformedInputError("vertex count must be nonnegative")
    adj = np.zeros((n, n), dtype=bool)
    for e in edges:
        if len(e) != 2:
            raise MalformedInputError(f"edge {e!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInputError(f"edge {e!r} out of range")
        if u == v:
            raise LoopEdgeError(f"loop edge at vertex {u}")
        adj[u, v] = adj[v, u] = True
    if labels is None:
        labels = [str(i) for i in range(n)]
    return _validated(adj, labels)


def complete_graph(n: int) -> CommutingGraph:
    adj = np.ones((n, n), dtype=bool)
    np.fill_diagonal(adj, False)
    return _validated(adj, [str(i) for i in range(n)])


def clique_union_graph(parts) -> CommutingGraph:
    """Block-diagonal union: `parts` is an iterable of (size, count)."""
    sizes = []
    for size, count in parts:
        sizes.extend([int(size)] * int(count))
    n = sum(sizes)
    adj = np.zeros((n, n), dtype=bool)
    at = 0
    for s in sizes:
        adj[at : at + s, at : at + s] = True
        at += s
    np.fill_diagonal(adj, False)
    return _validated(adj, [str(i) for i in range(n)])


def connected_components(adjacency: np.ndarray) -> list[np.ndarray]:
    """Vertex index arrays of the components, ordered by smallest member."""
    n = adjacency.shape[0]
    seen = np.zeros(n, dtype=bool)
    components = []
    for start in range(n):
        if seen[start]:
            continue
        comp = np.zeros(n, dtype=bool)
        comp[start] = True
        frontier = comp.copy()
        while frontier.any():
            grown = adjacency[frontier].any(axis=0) & ~comp
            comp |= grown
            frontier = grown
        seen |= comp
        components.append(np.nonzero(comp)[0])
    return components


@dataclass(frozen=True)
class CliqueDecomposition:
    """Certificate that a graph is a disjoint union of complete graphs.

    `parts` lists (clique size, count) with sizes strictly increasing;
    the counts sum against sizes to `vertex_count`.
    """

    parts: tuple[tuple[int, int], ...]
    vertex_count: int

    @property
    def clique_count(self) -> int:
        return sum(count for _, count in self.parts)


def decomposition_from_parts(parts) -> CliqueDecomposition:
    merged: Counter = Counter()
    for size, count in parts:
        size, count = int(size), int(count)
        if size < 1 or count < 1:
            raise ValueError("clique sizes and counts must be >= 1")
        merged[size] += count
    norm = tuple(sorted(merged.items()))
    total = sum(s * c for s, c in norm)
    return CliqueDecomposition(norm, total)


def clique_decomposition(graph: CommutingGraph) -> CliqueDecomposition | None:
    """The (size, count) multiset if every component is complete, else None."""
    sizes = []
    for comp in connected_components(graph.adjacency):
        s = len(comp)
        sub = graph.adjacency[np.ix_(comp, comp)]
        if int(sub.sum()) != s * (s - 1):
            return None
        sizes.append(s)
    return decomposition_from_parts(Counter(sizes).items())


# -- import / export -----------------------------------------------------------


def export_graph(graph: CommutingGraph, fmt: str = "json") -> str:
    """Render as an edge-list JSON document or as DOT."""
    us, vs = np.nonzero(np.triu(graph.adjacency, 1))
    edges = [[int(u), int(v)] for u, v in zip(us, vs)]
    if fmt == "json":
        doc = {"n": graph.n, "edges": edges, "labels": list(graph.labels)}
        return json.dumps(doc, separators=(",", ":"))
    if fmt == "dot":
        lines = ["graph commuting {"]
        for i, lab in enumerate(graph.labels):
            lines.append(f'  {i} [label="{lab}"];')
        for u, v in edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def ingest_graph(doc) -> CommutingGraph:
    """Parse an edge-list document: {"n": int, "edges": [[u, v], ...], "labels": [...]}."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise MalformedInputError("document must carry 'n' and 'edges'")
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise MalformedInputError("'n' must be a nonnegative integer")
    return make_graph(n, doc["edges"], doc.get("labels"))
