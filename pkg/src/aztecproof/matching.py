"""Exact weighted perfect-matching counts.

Two independent routes:

* :func:`count_matchings` -- Kasteleyn signs on the straight-line embedding,
  then an exact fraction-free determinant of the signed biadjacency matrix.
* :func:`count_matchings_bruteforce` -- memoized expansion on the first
  unmatched vertex.  Only for small graphs; used as an oracle.
"""

from __future__ import annotations

import os
from collections import deque
from functools import cmp_to_key

from .dyadic import ONE, ZERO, DyadicWeight
from .graph import EmbeddedPlanarGraph, NonPlanar, color, edge_key, is_balanced, reduce_forced_edges

DEFAULT_BRUTE_CAP = 36


class TooLarge(ValueError):
    pass


# -- rotation system and faces ----------------------------------------------


def _half(d):
    dx, dy = d
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def _ccw_cmp(d1, d2):
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def rotation_system(g: EmbeddedPlanarGraph, verts=None) -> dict:
    """Neighbors of each vertex in counterclockwise angular order (exact)."""
    rot = {}
    for v in verts if verts is not None else g.vertices:
        nbrs = list(g.neighbors(v))
        key = cmp_to_key(lambda a, b: _ccw_cmp((a[0] - v[0], a[1] - v[1]), (b[0] - v[0], b[1] - v[1])))
        rot[v] = sorted(nbrs, key=key)
    return rot


def trace_faces(g: EmbeddedPlanarGraph, comp) -> tuple[list[list[tuple]], int]:
    """Face boundary walks (as dart lists) of one connected component.

    Each walk keeps its face on the left, so bounded faces run
    counterclockwise.  Returns ``(faces, outer_index)``.
    """
    rot = rotation_system(g, comp)
    pos = {v: {u: i for i, u in enumerate(nb)} for v, nb in rot.items()}

    def nxt(dart):
        u, v = dart
        ring = rot[v]
        return (v, ring[pos[v][u] - 1])

    face_of = {}
    faces = []
    for v in sorted(comp):
        for u in rot[v]:
            d = (v, u)
            if d in face_of:
                continue
            walk = []
            while d not in face_of:
                face_of[d] = len(faces)
                walk.append(d)
                d = nxt(d)
            faces.append(walk)
    v0 = min(comp)
    # the ray pointing left from the lexicographically least vertex lies in the
    # outer face; it sits just counterclockwise of the steepest neighbor
    w = None
    for u in rot[v0]:
        dx, dy = u[0] - v0[0], u[1] - v0[1]
        if w is None or (w[0] - v0[0]) * dy - (w[1] - v0[1]) * dx > 0:
            w = u
    outer = face_of[(v0, w)]
    return faces, outer


# -- Kasteleyn orientation ---------------------------------------------------


def kasteleyn_orientation(g: EmbeddedPlanarGraph) -> dict:
    """Map each edge key ``(p, q)`` to ``+1`` (oriented p->q) or ``-1``.

    Every bounded face walk ends up with an odd number of clockwise edge
    traversals.  Signs are fixed on a primal spanning tree, then the remaining
    edges are settled face by face, leaves of the dual spanning tree first.
    """
    sign = {}
    for comp in g.components():
        if len(comp) < 2:
            continue
        faces, outer = trace_faces(g, comp)
        n_edges = sum(g.degree(v) for v in comp) // 2
        if len(comp) - n_edges + len(faces) != 2:
            raise NonPlanar("Euler characteristic violated; embedding is not plane")
        # primal BFS tree
        root = min(comp)
        tree = set()
        seen = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in sorted(g.neighbors(v)):
                if u not in seen:
                    seen.add(u)
                    tree.add(edge_key(u, v))
                    queue.append(u)
                    sign[edge_key(u, v)] = 1
        face_of = {}
        for i, walk in enumerate(faces):
            for d in walk:
                face_of[d] = i
        dual = {i: [] for i in range(len(faces))}
        for v in comp:
            for u in g.neighbors(v):
                e = edge_key(u, v)
                if e in tree or v > u:
                    continue
                f1, f2 = face_of[(v, u)], face_of[(u, v)]
                dual[f1].append((f2, e))
                dual[f2].append((f1, e))
        parent_edge = {outer: None}
        order = [outer]
        queue = deque([outer])
        while queue:
            f = queue.popleft()
            for h, e in sorted(dual[f]):
                if h not in parent_edge:
                    parent_edge[h] = e
                    order.append(h)
                    queue.append(h)
        for f in reversed(order):
            e = parent_edge[f]
            if e is None:
                continue
            cw = 0
            pending = None
            for d in faces[f]:
                k = edge_key(*d)
                if k == e:
                    pending = d
                    continue
                forward = sign[k] if d[0] == k[0] else -sign[k]
                if forward < 0:
                    cw += 1
            # choose the last edge so the clockwise count is odd
            want_cw = cw % 2 == 0
            forward = -1 if want_cw else 1
            sign[e] = forward if pending[0] == e[0] else -forward
    return sign


def face_condition_holds(g: EmbeddedPlanarGraph, sign: dict) -> bool:
    for comp in g.components():
        if len(comp) < 2:
            continue
        faces, outer = trace_faces(g, comp)
        for i, walk in enumerate(faces):
            if i == outer:
                continue
            cw = 0
            for d in walk:
                k = edge_key(*d)
                forward = sign[k] if d[0] == k[0] else -sign[k]
                cw += forward < 0
            if cw % 2 == 0:
                return False
    return True


# -- exact determinant -------------------------------------------------------


def bareiss_det(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sgn = -sgn
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            if aik == 0:
                for j in range(k + 1, n):
                    ri[j] = ri[j] * akk // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sgn * a[n - 1][n - 1]


def signed_biadjacency(g: EmbeddedPlanarGraph, sign=None):
    """Integer Kasteleyn matrix (rows white, columns black, lexicographic order)
    and the power of two it was scaled by."""
    sign = kasteleyn_orientation(g) if sign is None else sign
    whites = sorted(v for v in g.vertices if color(v) == 0)
    blacks = sorted(v for v in g.vertices if color(v) == 1)
    col = {b: j for j, b in enumerate(blacks)}
    emax = max((w.exp2 for w in g.weights.values()), default=0)
    mat = [[0] * len(blacks) for _ in whites]
    for i, wv in enumerate(whites):
        for b, wt in g.neighbors(wv).items():
            k = edge_key(wv, b)
            s = sign[k] if k[0] == wv else -sign[k]
            mat[i][col[b]] = s * (wt.mantissa << (emax - wt.exp2))
    return mat, emax


def _det_count(g: EmbeddedPlanarGraph) -> DyadicWeight:
    mat, emax = signed_biadjacency(g)
    det = abs(bareiss_det(mat))
    return DyadicWeight(det, emax * len(mat))


def count_matchings(g: EmbeddedPlanarGraph) -> DyadicWeight:
    """Total weight of the perfect matchings of ``g``, exactly."""
    if not is_balanced(g):
        return ZERO
    reduced, factor, ok = reduce_forced_edges(g)
    if not ok:
        return ZERO
    total = factor
    for comp in reduced.components():
        sub = reduced.subgraph(comp)
        if not is_balanced(sub):
            return ZERO
        total = total * _det_count(sub)
        if not total:
            return ZERO
    return total


# -- brute-force oracle ------------------------------------------------------


def brute_cap() -> int:
    return int(os.environ.get("AZTEC_BRUTE_CAP", DEFAULT_BRUTE_CAP))


def count_matchings_bruteforce(g: EmbeddedPlanarGraph, cap: int | None = None) -> DyadicWeight:
    """Sum of matching weights by direct enumeration (no linear algebra)."""
    cap = brute_cap() if cap is None else cap
    n = len(g)
    if n > cap:
        raise TooLarge(f"{n} vertices exceeds brute-force cap {cap}")
    if n % 2:
        return ZERO
    if n == 0:
        return ONE
    verts = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(verts)}
    emax = max((w.exp2 for w in g.weights.values()), default=0)
    nbrs = [[] for _ in verts]
    adjmask = [0] * n
    for (u, v), w in g.weights.items():
        iw = w.mantissa << (emax - w.exp2)
        nbrs[idx[u]].append((idx[v], iw))
        nbrs[idx[v]].append((idx[u], iw))
        adjmask[idx[u]] |= 1 << idx[v]
        adjmask[idx[v]] |= 1 << idx[u]
    memo = {}

    def rec(mask):
        if mask == 0:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        # prune: some remaining vertex has no remaining neighbor
        m = mask
        while m:
            low = m & -m
            if not adjmask[low.bit_length() - 1] & mask:
                memo[mask] = 0
                return 0
            m ^= low
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = 0
        for j, w in nbrs[i]:
            if rest >> j & 1:
                total += w * rec(rest & ~(1 << j))
        memo[mask] = total
        return total

    return DyadicWeight(rec((1 << n) - 1), emax * (n // 2))
