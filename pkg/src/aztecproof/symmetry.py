"""Graph transformations used by the proof: the factorization cut along a
symmetry axis, the pendant trick that symmetrizes a nearly symmetric graph,
and the complementation parameter map for nearly-cruciform graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    AxisSpec,
    EmbeddedPlanarGraph,
    GraphError,
    color,
    edge_key,
    reflect,
)


class NotSymmetric(GraphError):
    pass


class OddAxisCount(GraphError):
    pass


class SideConflict(GraphError):
    pass


class NotNearSymmetric(GraphError):
    pass


class ParityViolation(GraphError):
    pass


def axis_frame(axis: AxisSpec):
    """Return ``f(p) -> (s, h)``: position along the axis and doubled signed
    height above it, for the axis rotated to horizontal.

    Diagonal axes use the rotations (x, y) -> (x + y, y - x) and
    (x, y) -> (x - y, x + y); a vertical axis uses (x, y) -> (-y, x).
    """
    o = axis.offset2
    if axis.direction == "horizontal":
        return lambda p: (p[0], 2 * p[1] - o)
    if axis.direction == "vertical":
        return lambda p: (-p[1], 2 * p[0] - o)
    if axis.direction == "diag-up":
        return lambda p: (p[0] + p[1], 2 * (p[1] - p[0]) - o)
    return lambda p: (p[0] - p[1], 2 * (p[0] + p[1]) - o)


def axis_vertices(g: EmbeddedPlanarGraph, axis: AxisSpec) -> list:
    """Vertices on the axis, ordered left to right in the normalized frame."""
    frame = axis_frame(axis)
    return sorted((v for v in g.vertices if frame(v)[1] == 0), key=lambda v: frame(v)[0])


@dataclass(frozen=True)
class SplitResult:
    g_plus: EmbeddedPlanarGraph
    g_minus: EmbeddedPlanarGraph
    k: int
    axis: AxisSpec
    labels: tuple = ()  # ((vertex, "a"|"b", "plus"|"minus"), ...)


def factorization_split(g: EmbeddedPlanarGraph, axis: AxisSpec, reverse: bool = False) -> SplitResult:
    """Cut a symmetric graph along ``axis`` into two halves with
    ``M(g) = 2**k * M(g_plus) * M(g_minus)``.

    Axis vertices are labelled a1, b1, a2, b2, ... from left to right.  White
    a's and black b's lose their edges from above (and so join the lower
    half); black a's and white b's lose their edges from below.  Every edge
    lying along the axis has its weight halved.

    ``reverse`` labels the axis right to left instead, which is the same as
    swapping the names of the two color classes; the identity holds either way.
    """
    if reflect(g, axis) != g:
        raise NotSymmetric(f"graph is not symmetric about {axis}")
    frame = axis_frame(axis)
    height = {v: frame(v)[1] for v in g.vertices}
    on_axis = axis_vertices(g, axis)
    if reverse:
        on_axis.reverse()
    if len(on_axis) % 2:
        raise OddAxisCount(f"{len(on_axis)} vertices on the axis")
    keep_side = {}
    labels = []
    for i, v in enumerate(on_axis):
        letter = "a" if i % 2 == 0 else "b"
        white = color(v) == 0
        side = -1 if (letter == "a") == white else 1
        keep_side[v] = side
        labels.append((v, letter, "plus" if side > 0 else "minus"))
    drop = set()
    halve = {}
    for (u, v), w in g.weights.items():
        hu, hv = height[u], height[v]
        if hu == 0 and hv == 0:
            halve[(u, v)] = w.half()
            continue
        for p, q in ((u, v), (v, u)):
            if height[p] == 0 and height[q] * keep_side[p] < 0:
                drop.add(edge_key(p, q))
    weights = {e: halve.get(e, w) for e, w in g.weights.items() if e not in drop}
    cut = EmbeddedPlanarGraph(g.vertices, weights, _trusted=True)
    plus, minus = set(), set()
    for comp in cut.components():
        sides = {1 if height[v] > 0 else -1 for v in comp if height[v] != 0}
        sides |= {keep_side[v] for v in comp if height[v] == 0}
        if len(sides) != 1:
            raise SideConflict(f"component containing {min(comp)} touches both sides")
        (plus if sides.pop() > 0 else minus).update(comp)
    return SplitResult(cut.subgraph(plus), cut.subgraph(minus), len(on_axis) // 2, axis, tuple(labels))


def symmetrize_with_pendant(
    h: EmbeddedPlanarGraph, missing_mirror_of, pendant_at, axis: AxisSpec
) -> EmbeddedPlanarGraph:
    """Restore the absent mirror image of one vertex and hang a new vertex on
    both copies, giving a symmetric graph with twice as many matchings."""
    v = tuple(missing_mirror_of)
    w = tuple(pendant_at)
    if v not in h:
        raise NotNearSymmetric(f"{v} is not a vertex")
    v2 = axis.mirror(v)
    if v2 in h or v2 == v:
        raise NotNearSymmetric(f"mirror {v2} of {v} is already present")
    if color(w) == color(v):
        raise ParityViolation(f"pendant {w} has the same parity as {v}")
    if w in h or axis.mirror(w) != w:
        raise NotNearSymmetric(f"pendant {w} must be a new vertex on the axis")
    new_edges = [(axis.mirror(u), v2, wt) for u, wt in h.neighbors(v).items()]
    new_edges += [(w, v), (w, v2)]
    g = h.add([v2, w], new_edges)
    if reflect(g, axis) != g:
        raise NotNearSymmetric("graph is not symmetric after restoring the mirror vertex")
    return g


def missing_mirrors(h: EmbeddedPlanarGraph, axis: AxisSpec) -> list:
    """Vertices of ``h`` whose mirror image is absent."""
    return sorted(v for v in h.vertices if axis.mirror(v) not in h)


def complement_params(m: int, n: int, a: int, b: int, d: int):
    """One complementation step on D_{m,n}^{a,b,a,d}.

    Returns ``(m+1, n-1, a+1, b-1, d-1, t)`` with ``M(D) = 2**t * M(D')``.
    Written in the current parameters the exponent is always ``n - 2a - 2``;
    at step i of a chain this equals ``n0 - 2*a0 - 3i - 2`` in the starting ones.
    """
    return (m + 1, n - 1, a + 1, b - 1, d - 1, n - 2 * a - 2)


def composed_exponent(n: int, a: int) -> int:
    """Total exponent after the n complementation steps from D_{m,n}^{a,b,a,d}."""
    return n * (n - 2 * a - 2) - 3 * n * (n - 1) // 2
