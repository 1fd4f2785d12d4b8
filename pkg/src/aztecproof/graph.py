"""Embedded planar bipartite graphs on the integer lattice.

Vertices are integer points ``(x, y)``.  The bipartition is always derived
from coordinate parity: a vertex is *white* when ``x + y`` is even and
*black* otherwise.  Edges are straight segments carrying exact dyadic weights.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .dyadic import ONE, DyadicWeight

Point = tuple[int, int]
Edge = tuple[Point, Point]


class GraphError(ValueError):
    pass


class NonBipartite(GraphError):
    pass


class NonPlanar(GraphError):
    pass


class DanglingEdge(GraphError):
    pass


class UnsupportedAxis(GraphError):
    pass


def color(p: Point) -> int:
    """0 for white (even parity), 1 for black."""
    return (p[0] + p[1]) & 1


def edge_key(u: Point, v: Point) -> Edge:
    return (u, v) if u < v else (v, u)


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p collinear with a-b and inside its bounding box."""
    return (
        _cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_conflict(e: Edge, f: Edge) -> bool:
    """True when two edges of a straight-line drawing cross or overlap.

    Edges sharing exactly one endpoint only conflict if they are collinear and
    overlap beyond that endpoint.
    """
    (a, b), (c, d) = e, f
    shared = {a, b} & {c, d}
    if len(shared) == 2:
        return True
    if shared:
        s = shared.pop()
        x = b if a == s else a
        y = d if c == s else c
        if _cross(s, x, y) != 0:
            return False
        # collinear: conflict iff both point the same way from s
        return (x[0] - s[0]) * (y[0] - s[0]) + (x[1] - s[1]) * (y[1] - s[1]) > 0
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        (d1 == 0 and _on_segment(a, c, d))
        or (d2 == 0 and _on_segment(b, c, d))
        or (d3 == 0 and _on_segment(c, a, b))
        or (d4 == 0 and _on_segment(d, a, b))
    )


def _cells(e: Edge) -> Iterable[tuple[int, int]]:
    (x0, y0), (x1, y1) = e
    for cx in range(min(x0, x1) >> 1, (max(x0, x1) >> 1) + 1):
        for cy in range(min(y0, y1) >> 1, (max(y0, y1) >> 1) + 1):
            yield cx, cy


def check_planar(vertices: Iterable[Point], edges: Iterable[Edge]) -> None:
    """Raise NonPlanar if the straight-line drawing has a crossing.

    Pairwise test restricted to edges whose bounding boxes share a 2x2 bucket.
    """
    buckets: dict[tuple[int, int], list[Edge]] = defaultdict(list)
    edges = list(edges)
    for e in edges:
        for cell in _cells(e):
            buckets[cell].append(e)
    seen = set()
    for bucket in buckets.values():
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                pair = (bucket[i], bucket[j]) if bucket[i] < bucket[j] else (bucket[j], bucket[i])
                if pair in seen:
                    continue
                seen.add(pair)
                if segments_conflict(*pair):
                    raise NonPlanar(f"edges {pair[0]} and {pair[1]} cross")
    vbuckets: dict[tuple[int, int], list[Point]] = defaultdict(list)
    for v in vertices:
        vbuckets[(v[0] >> 1, v[1] >> 1)].append(v)
    for e in edges:
        for cell in _cells(e):
            for v in vbuckets.get(cell, ()):
                if v not in e and _on_segment(v, *e):
                    raise NonPlanar(f"edge {e} passes through vertex {v}")


class EmbeddedPlanarGraph:
    """Immutable bipartite graph with a straight-line planar embedding."""

    __slots__ = ("_vertices", "_weights", "_adj", "_hash")

    def __init__(self, vertices, weights: Mapping[Edge, DyadicWeight], *, _trusted=False):
        vs = frozenset((int(x), int(y)) for x, y in vertices)
        ws = {}
        for (u, v), w in weights.items():
            u = (int(u[0]), int(u[1]))
            v = (int(v[0]), int(v[1]))
            if u == v:
                raise NonBipartite(f"loop at {u}")
            if u not in vs or v not in vs:
                raise DanglingEdge(f"edge {u}-{v} has an endpoint outside the vertex set")
            if color(u) == color(v):
                raise NonBipartite(f"edge {u}-{v} joins two vertices of the same parity")
            ws[edge_key(u, v)] = DyadicWeight.coerce(w)
        if not _trusted:
            check_planar(vs, ws)
        adj: dict[Point, dict[Point, DyadicWeight]] = {v: {} for v in vs}
        for (u, v), w in ws.items():
            adj[u][v] = w
            adj[v][u] = w
        object.__setattr__(self, "_vertices", vs)
        object.__setattr__(self, "_weights", ws)
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("EmbeddedPlanarGraph is immutable")

    # -- accessors -----------------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def weights(self) -> Mapping[Edge, DyadicWeight]:
        return dict(self._weights)

    def edges(self) -> list[Edge]:
        return sorted(self._weights)

    def weight(self, u: Point, v: Point) -> DyadicWeight:
        return self._weights[edge_key(u, v)]

    def has_edge(self, u: Point, v: Point) -> bool:
        return edge_key(u, v) in self._weights

    def neighbors(self, v: Point) -> Mapping[Point, DyadicWeight]:
        return self._adj[v]

    def degree(self, v: Point) -> int:
        return len(self._adj[v])

    def sorted_vertices(self) -> list[Point]:
        return sorted(self._vertices)

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._vertices

    @property
    def num_edges(self) -> int:
        return len(self._weights)

    def is_unweighted(self) -> bool:
        return all(w == ONE for w in self._weights.values())

    def __eq__(self, other):
        if not isinstance(other, EmbeddedPlanarGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._weights == other._weights

    def __hash__(self):
        if self._hash is None:
            h = hash((self._vertices, frozenset(self._weights.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        return f"<EmbeddedPlanarGraph |V|={len(self._vertices)} |E|={len(self._weights)}>"

    # -- derived graphs ------------------------------------------------------

    def subgraph(self, keep) -> "EmbeddedPlanarGraph":
        """Induced subgraph on ``keep`` (a subset of the vertices)."""
        keep = frozenset(keep) & self._vertices
        ws = {e: w for e, w in self._weights.items() if e[0] in keep and e[1] in keep}
        return EmbeddedPlanarGraph(keep, ws, _trusted=True)

    def remove_vertices(self, drop) -> "EmbeddedPlanarGraph":
        return self.subgraph(self._vertices - frozenset(drop))

    def remove_edges(self, drop) -> "EmbeddedPlanarGraph":
        drop = {edge_key(*e) for e in drop}
        ws = {e: w for e, w in self._weights.items() if e not in drop}
        return EmbeddedPlanarGraph(self._vertices, ws, _trusted=True)

    def with_weights(self, updates: Mapping[Edge, DyadicWeight]) -> "EmbeddedPlanarGraph":
        ws = dict(self._weights)
        for e, w in updates.items():
            k = edge_key(*e)
            if k not in ws:
                raise DanglingEdge(f"no edge {k}")
            ws[k] = DyadicWeight.coerce(w)
        return EmbeddedPlanarGraph(self._vertices, ws, _trusted=True)

    def add(self, vertices=(), weighted_edges=()) -> "EmbeddedPlanarGraph":
        """New graph with extra vertices/edges; re-validated in full."""
        ws = dict(self._weights)
        for u, v, *rest in weighted_edges:
            ws[edge_key(u, v)] = rest[0] if rest else ONE
        return EmbeddedPlanarGraph(self._vertices | frozenset(vertices), ws)

    def translate(self, dx: int, dy: int) -> "EmbeddedPlanarGraph":
        return self.map_points(lambda p: (p[0] + dx, p[1] + dy))

    def map_points(self, f, *, trusted=True) -> "EmbeddedPlanarGraph":
        """Apply an injective affine point map that preserves planarity."""
        vs = [f(v) for v in self._vertices]
        ws = {edge_key(f(u), f(v)): w for (u, v), w in self._weights.items()}
        return EmbeddedPlanarGraph(vs, ws, _trusted=trusted)

    def components(self) -> list[frozenset]:
        """Connected components, each as a vertex frozenset, in sorted order."""
        seen = set()
        out = []
        for s in self.sorted_vertices():
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self._adj[v]:
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            out.append(frozenset(comp))
        return out

    # -- serialization -------------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "vertices": [{"x": x, "y": y} for x, y in self.sorted_vertices()],
            "edges": [
                {
                    "u": list(u),
                    "v": list(v),
                    "w_mantissa": str(w.mantissa),
                    "w_exp2": w.exp2,
                }
                for (u, v), w in sorted(self._weights.items())
            ],
        }
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "EmbeddedPlanarGraph":
        doc = json.loads(text)
        vs = [(int(v["x"]), int(v["y"])) for v in doc["vertices"]]
        ws = {}
        for e in doc["edges"]:
            ws[(tuple(e["u"]), tuple(e["v"]))] = DyadicWeight(int(e["w_mantissa"]), int(e["w_exp2"]))
        return cls(vs, ws)


def build_graph(vertices, weighted_edges=()) -> EmbeddedPlanarGraph:
    """Validated graph from points and ``(u, v)`` or ``(u, v, w)`` edge tuples."""
    ws = {}
    for u, v, *rest in weighted_edges:
        ws[(tuple(u), tuple(v))] = rest[0] if rest else ONE
    return EmbeddedPlanarGraph(vertices, ws)


def grid_graph(points) -> EmbeddedPlanarGraph:
    """Induced subgraph of the unit square grid on ``points`` (unit weights)."""
    pts = frozenset((int(x), int(y)) for x, y in points)
    ws = {}
    for x, y in pts:
        if (x + 1, y) in pts:
            ws[((x, y), (x + 1, y))] = ONE
        if (x, y + 1) in pts:
            ws[((x, y), (x, y + 1))] = ONE
    # unit axis edges between distinct lattice points never cross
    return EmbeddedPlanarGraph(pts, ws, _trusted=True)


EMPTY = EmbeddedPlanarGraph((), {})


@dataclass(frozen=True)
class Coloring:
    white: frozenset
    black: frozenset


def coloring(g: EmbeddedPlanarGraph) -> Coloring:
    white = frozenset(v for v in g.vertices if color(v) == 0)
    return Coloring(white, g.vertices - white)


def is_balanced(g: EmbeddedPlanarGraph) -> bool:
    c = coloring(g)
    return len(c.white) == len(c.black)


def reduce_forced_edges(g: EmbeddedPlanarGraph):
    """Strip forced edges at degree-1 vertices until none remain.

    Returns ``(reduced, factor, feasible)``; when feasible the weighted count of
    ``g`` equals ``factor`` times that of ``reduced``, otherwise it is zero.
    """
    alive = set(g.vertices)
    deg = {v: g.degree(v) for v in alive}
    factor = ONE
    while True:
        changed = False
        for v in sorted(alive):
            if v not in alive:
                continue
            if deg[v] == 0:
                return g.subgraph(alive), factor, False
            if deg[v] == 1:
                (u, w), = [(u, w) for u, w in g.neighbors(v).items() if u in alive]
                factor = factor * w
                for z in (u, v):
                    alive.discard(z)
                    for t in g.neighbors(z):
                        if t in alive:
                            deg[t] -= 1
                changed = True
        if not changed:
            return g.subgraph(alive), factor, True


def _normalized(g: EmbeddedPlanarGraph) -> EmbeddedPlanarGraph:
    if not len(g):
        return g
    mx, my = min(g.vertices)
    return g.translate(-mx, -my)


def graph_equal(g1: EmbeddedPlanarGraph, g2: EmbeddedPlanarGraph) -> bool:
    """Equality up to translation (weights compared exactly)."""
    if len(g1) != len(g2) or g1.num_edges != g2.num_edges:
        return False
    return _normalized(g1) == _normalized(g2)


# The eight symmetries of the square lattice, as linear maps.
DIHEDRAL = (
    lambda p: (p[0], p[1]),
    lambda p: (-p[1], p[0]),
    lambda p: (-p[0], -p[1]),
    lambda p: (p[1], -p[0]),
    lambda p: (-p[0], p[1]),
    lambda p: (p[0], -p[1]),
    lambda p: (p[1], p[0]),
    lambda p: (-p[1], -p[0]),
)


def graph_congruent(g1: EmbeddedPlanarGraph, g2: EmbeddedPlanarGraph) -> bool:
    """Equality up to a lattice symmetry followed by translation."""
    return any(graph_equal(g1.map_points(f), g2) for f in DIHEDRAL)


@dataclass(frozen=True)
class AxisSpec:
    """Reflection line; ``offset2`` is twice the offset so halves stay integral.

    horizontal: y = offset2/2; vertical: x = offset2/2;
    diag-up: y - x = offset2/2; diag-down: x + y = offset2/2.
    """

    direction: str
    offset2: int

    def __post_init__(self):
        if self.direction not in ("horizontal", "vertical", "diag-up", "diag-down"):
            raise UnsupportedAxis(f"unknown axis direction {self.direction!r}")

    @classmethod
    def horizontal(cls, y) -> "AxisSpec":
        return cls("horizontal", int(2 * y))

    @classmethod
    def vertical(cls, x) -> "AxisSpec":
        return cls("vertical", int(2 * x))

    def mirror(self, p: Point) -> Point:
        x, y = p
        o = self.offset2
        if self.direction == "horizontal":
            return (x, o - y)
        if self.direction == "vertical":
            return (o - x, y)
        if o & 1:
            raise UnsupportedAxis("diagonal axes need an integer offset")
        c = o // 2
        if self.direction == "diag-up":
            return (y - c, x + c)
        return (c - y, c - x)

    def on_axis(self, p: Point) -> bool:
        return self.mirror(p) == p


def reflect(g: EmbeddedPlanarGraph, axis: AxisSpec) -> EmbeddedPlanarGraph:
    return g.map_points(axis.mirror)


def is_symmetric(g: EmbeddedPlanarGraph, axis: AxisSpec) -> bool:
    return reflect(g, axis) == g
