"""Finite weighted undirected graphs: storage, metric quantities, generators, edge-list I/O."""

from __future__ import annotations

import io
import math
from collections import deque
from dataclasses import dataclass, field
from itertools import product as _iproduct
from typing import Iterable, Sequence, TextIO

import numpy as np


class GraphError(ValueError):
    """Raised for malformed, non-simple or disconnected graph input."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple weighted graph on vertices ``0..n-1``.

    ``edges`` holds ``(x, y, w)`` with ``x < y`` and ``w > 0``, sorted. Use
    :meth:`from_edges` to build one from arbitrary input; the constructor
    validates everything, including connectivity.
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]
    _nbrs: tuple[tuple[tuple[int, float], ...], ...] = field(init=False, repr=False, compare=False)
    _deg: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n < 2 or not self.edges:
            raise GraphError("graph needs at least one edge")
        if len(set(self.labels)) != n:
            raise GraphError("vertex labels must be unique")
        adj: list[dict[int, float]] = [{} for _ in range(n)]
        for x, y, w in self.edges:
            if not (0 <= x < n and 0 <= y < n):
                raise GraphError(f"edge ({x}, {y}) out of range for n={n}")
            if x == y:
                raise GraphError(f"self-loop at {self.labels[x]!r}")
            if not (math.isfinite(w) and w > 0):
                raise GraphError(f"edge {self.labels[x]!r}-{self.labels[y]!r} has non-positive weight {w!r}")
            if y in adj[x]:
                raise GraphError(f"duplicate edge {self.labels[x]!r}-{self.labels[y]!r}")
            adj[x][y] = float(w)
            adj[y][x] = float(w)
        nbrs = tuple(tuple(sorted(a.items())) for a in adj)
        deg = np.array([math.fsum(w for _, w in nb) for nb in nbrs])
        deg.setflags(write=False)
        object.__setattr__(self, "_nbrs", nbrs)
        object.__setattr__(self, "_deg", deg)
        seen = _reach(nbrs, 0)
        if len(seen) != n:
            lost = next(v for v in range(n) if v not in seen)
            raise GraphError(
                f"graph is disconnected: {self.labels[0]!r} cannot reach {self.labels[lost]!r}"
            )

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int] | tuple[int, int, float]],
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        """Build from index pairs (weight defaults to 1.0); labels default to ``"0".."n-1"``."""
        norm = []
        top = -1
        for e in edges:
            x, y = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            if x > y:
                x, y = y, x
            norm.append((x, y, w))
            top = max(top, y)
        if labels is None:
            labels = [str(i) for i in range(top + 1)]
        return cls(tuple(labels), tuple(sorted(norm)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return self._deg

    def neighbors(self, x: int) -> tuple[tuple[int, float], ...]:
        """``(y, w_xy)`` pairs for every neighbour ``y`` of ``x``, ascending in ``y``."""
        return self._nbrs[x]

    def weight(self, x: int, y: int) -> float:
        for z, w in self._nbrs[x]:
            if z == y:
                return w
        return 0.0

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for x, y, w in self.edges:
            a[x, y] = a[y, x] = w
        return a

    def scaled(self, c: float) -> "Graph":
        """Same graph with every edge weight multiplied by ``c > 0``."""
        return Graph(self.labels, tuple((x, y, w * c) for x, y, w in self.edges))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def labelled_edges(self) -> frozenset:
        """Index-free identity: ``{({a, b}, w)}`` keyed by vertex labels."""
        return frozenset((frozenset((self.labels[x], self.labels[y])), w) for x, y, w in self.edges)


@dataclass(frozen=True)
class DiameterStats:
    diameter: int
    max_degree: float
    pair: tuple[int, int]


def _reach(nbrs, s: int) -> set[int]:
    seen = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for u, _ in nbrs[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def degree(g: Graph, x: int) -> float:
    return float(g.degrees[x])


def bfs_distances(g: Graph, s: int) -> list[int]:
    """Hop-count distance from ``s`` to every vertex (edge weights ignored)."""
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for u, _ in g.neighbors(v):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def diameter(g: Graph) -> DiameterStats:
    best, pair = -1, (0, 0)
    for s in range(g.n):
        dist = bfs_distances(g, s)
        t = max(range(g.n), key=dist.__getitem__)
        if dist[t] > best:
            best, pair = dist[t], (s, t)
    return DiameterStats(best, float(g.degrees.max()), pair)


# -- generators ------------------------------------------------------------


def gen_complete(n: int) -> Graph:
    if n < 2:
        raise GraphError("complete graph needs n >= 2")
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def gen_hypercube(k: int) -> Graph:
    """Q_k with bit-string labels; vertex ``i`` is labelled by ``i`` in binary."""
    if k < 1:
        raise GraphError("hypercube needs k >= 1")
    n = 1 << k
    labels = [format(i, f"0{k}b") for i in range(n)]
    return Graph.from_edges([(i, i ^ (1 << b)) for i in range(n) for b in range(k) if i < i ^ (1 << b)], labels)


def gen_bridge_cliques(n: int) -> Graph:
    """Two disjoint copies of K_n joined by a single edge ``a0 - b0``."""
    if n < 2:
        raise GraphError("bridge graph needs n >= 2")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges += [(i + n, j + n) for i, j in edges]
    edges.append((0, n))
    labels = [f"a{i}" for i in range(n)] + [f"b{i}" for i in range(n)]
    return Graph.from_edges(edges, labels)


def gen_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex ``(u, v)`` has index ``u * g2.n + v``."""
    n2 = g2.n
    edges = []
    for u in range(g1.n):
        for a, b, w in g2.edges:
            edges.append((u * n2 + a, u * n2 + b, w))
    for a, b, w in g1.edges:
        for v in range(n2):
            edges.append((a * n2 + v, b * n2 + v, w))
    labels = [f"({p},{q})" for p, q in _iproduct(g1.labels, g2.labels)]
    return Graph.from_edges(edges, labels)


# -- edge-list I/O ----------------------------------------------------------


def load_edge_list(text: str | TextIO) -> Graph:
    """Parse ``LABEL LABEL [WEIGHT]`` lines; ``#`` starts a comment."""
    if not isinstance(text, str):
        text = text.read()
    index: dict[str, int] = {}
    edges = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) not in (2, 3):
            raise GraphError(f"line {lineno}: expected 'LABEL LABEL [WEIGHT]', got {raw.strip()!r}")
        a, b = parts[0], parts[1]
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at {a!r}")
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphError(f"line {lineno}: weight {parts[2]!r} is not a number") from None
            if not (math.isfinite(w) and w > 0):
                raise GraphError(f"line {lineno}: weight must be positive, got {parts[2]!r}")
        x = index.setdefault(a, len(index))
        y = index.setdefault(b, len(index))
        key = (min(x, y), max(x, y))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {a!r}-{b!r} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append((x, y, w))
    if not edges:
        raise GraphError("edge list contains no edges")
    return Graph.from_edges(edges, list(index))


def dump_edge_list(g: Graph, out: TextIO | None = None) -> str:
    buf = io.StringIO()
    for x, y, w in g.edges:
        buf.write(f"{g.labels[x]} {g.labels[y]} {w!r}\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
