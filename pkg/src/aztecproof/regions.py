"""Constructors for every graph family in the proof.

Two presentations are used.  Regions made of unit cells (Aztec diamonds and
triangles) become their dual graphs: one vertex per cell at the cell's
lower-left corner, edges between cells sharing a side.  Aztec-rectangle style
graphs (cruciform, nearly-cruciform, trimmed and intruded rectangles) are laid
out on a chessboard first: the squares ``(u, v)`` with ``u + v`` even are the
vertices, squares touching at a corner are adjacent, and the board is mapped
into the grid by ``(u, v) -> ((u + v) / 2, (v - u) / 2)``.  Chessboard ``+u``
points southeast and ``+v`` northeast in the grid picture.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formulas import InvalidParameter, check_subset
from .graph import EmbeddedPlanarGraph, grid_graph, reduce_forced_edges


class NegativePierUnsupported(InvalidParameter):
    pass


class Infeasible(ValueError):
    pass


def chess_to_grid(u: int, v: int) -> tuple[int, int]:
    if (u + v) & 1:
        raise ValueError(f"square {(u, v)} is not a vertex square")
    return ((u + v) // 2, (v - u) // 2)


def grid_to_chess(x: int, y: int) -> tuple[int, int]:
    return (x - y, x + y)


def _from_squares(squares) -> EmbeddedPlanarGraph:
    return grid_graph(chess_to_grid(u, v) for u, v in squares if not (u + v) & 1)


def _box(u0, u1, v0, v1):
    return {(u, v) for u in range(u0, u1 + 1) for v in range(v0, v1 + 1) if not (u + v) & 1}


# -- cell regions ------------------------------------------------------------


def aztec_diamond_cells(n: int) -> set:
    if n < 0:
        raise InvalidParameter(f"n={n}")
    return {(i, j) for i in range(-n, n) for j in range(-n, n) if abs(2 * i + 1) + abs(2 * j + 1) <= 2 * n}


def half_aztec_diamond_cells(n: int) -> set:
    return {(i, j) for i, j in aztec_diamond_cells(n) if j >= 0}


def half_square_cells(side: int) -> set:
    """Cells of the side x side square on or above the step-two zigzag.

    The zigzag starts at (1, 0), climbs two, runs right two, and so on, so the
    bottom-left cell stays above the cut and the two halves are congruent.
    """
    if side < 0 or side % 2:
        raise InvalidParameter(f"half square needs an even side, got {side}")
    cells = set()
    for i in range(side):
        floor = 0 if i == 0 else min(side, 2 * ((i + 1) // 2))
        cells.update((i, j) for j in range(floor, side))
    return cells


def aztec_triangle_cells(n: int) -> set:
    if n < 1:
        raise InvalidParameter(f"n={n}")
    cells = half_square_cells(2 * n)
    # right-justify HD_{n-1}: its bottom row ends where the square's top row does
    dx, dy = n, 2 * n
    cells |= {(i + dx, j + dy) for i, j in half_aztec_diamond_cells(n - 1)}
    return cells


def aztec_diamond(n: int) -> EmbeddedPlanarGraph:
    return grid_graph(aztec_diamond_cells(n))


def half_aztec_diamond(n: int) -> EmbeddedPlanarGraph:
    return grid_graph(half_aztec_diamond_cells(n))


def half_square(side: int) -> EmbeddedPlanarGraph:
    return grid_graph(half_square_cells(side))


def aztec_triangle(n: int) -> EmbeddedPlanarGraph:
    """Dual graph of the Aztec triangle of order n (3n^2 - n vertices)."""
    return grid_graph(aztec_triangle_cells(n))


# -- cruciform family --------------------------------------------------------


def _check_cruciform(m, n, a, b, c, d):
    if m < 1 or n < 1:
        raise InvalidParameter(f"pier widths must be positive, got m={m}, n={n}")
    if min(a, b, c, d) < 0:
        raise NegativePierUnsupported(f"negative pier length in {(a, b, c, d)}")


def cruciform_squares(m, n, a, b, c, d) -> set:
    """Chessboard squares of C_{m,n}^{a,b,c,d}.

    The NW-SE bar spans ``u in [-2a-1, 2n+2c+1]``, ``v in [0, 2m]``; the NE-SW
    bar spans ``u in [0, 2n]``, ``v in [-2d-1, 2m+2b+1]``.
    """
    _check_cruciform(m, n, a, b, c, d)
    return _box(-2 * a - 1, 2 * n + 2 * c + 1, 0, 2 * m) | _box(0, 2 * n, -2 * d - 1, 2 * m + 2 * b + 1)


def cruciform(m, n, a, b, c, d) -> EmbeddedPlanarGraph:
    return _from_squares(cruciform_squares(m, n, a, b, c, d))


def nw_dot_vertex(m, n, a, b, c, d) -> tuple[int, int]:
    """The higher of the two leftmost vertices of the northwestern pier."""
    _check_cruciform(m, n, a, b, c, d)
    return chess_to_grid(-2 * a - 1, 1)


def cruciform_dot(m, n, a, b, c, d) -> EmbeddedPlanarGraph:
    """C-dot: the cruciform graph minus :func:`nw_dot_vertex`."""
    return cruciform(m, n, a, b, c, d).remove_vertices([nw_dot_vertex(m, n, a, b, c, d)])


def nearly_cruciform(m, n, a, b, c, d) -> EmbeddedPlanarGraph:
    """D_{m,n}^{a,b,c,d}: C-dot with all forced edges discarded."""
    reduced, factor, feasible = reduce_forced_edges(cruciform_dot(m, n, a, b, c, d))
    if not feasible:
        raise Infeasible(f"C-dot{(m, n, a, b, c, d)} has no perfect matching")
    assert factor == 1
    return reduced


# -- Aztec rectangles --------------------------------------------------------


def aztec_rectangle_squares(m: int, n: int) -> set:
    """(2m+1) rows by (2n+1) columns, black corners; vertex squares only."""
    return _box(1, 2 * n + 1, 0, 2 * m)


def aztec_rectangle(m: int, n: int) -> EmbeddedPlanarGraph:
    if m < 0 or n < 0:
        raise InvalidParameter(f"m={m}, n={n}")
    return _from_squares(aztec_rectangle_squares(m, n))


def trimmed_aztec_rectangle(m: int, n: int, T) -> EmbeddedPlanarGraph:
    """AR_{m,n} without its n bottom vertices and without the T-th remaining
    bottom vertices (counted from the left, 1-based)."""
    T = check_subset(m, n, T)
    squares = {s for s in aztec_rectangle_squares(m, n) if s[1] != 0}
    squares -= {(2 * t - 1, 1) for t in T}
    return _from_squares(squares)


def middle_column(width: int, length: int) -> list:
    """Vertex squares of the middle column of AR_{length,width}, bottom up."""
    u = width + 1
    return [(u, v) for v in range(2 * length + 1) if not (u + v) & 1]


def doubly_intruded_aztec_rectangle(width: int, length: int, bottom: int, top: int, remove_top_left: bool) -> EmbeddedPlanarGraph:
    """Aztec rectangle with 2*width+1 columns and 2*length+1 rows whose middle
    column loses ``bottom`` vertices from below and ``top`` from above.

    With ``remove_top_left`` the higher of the two leftmost vertices goes too.
    """
    if min(width, length, bottom, top) < 0:
        raise InvalidParameter("lengths must be non-negative")
    squares = aztec_rectangle_squares(length, width)
    col = middle_column(width, length)
    if bottom + top > len(col):
        raise InvalidParameter(f"intrusions {bottom}+{top} exceed the column of {len(col)}")
    squares -= set(col[:bottom])
    squares -= set(col[len(col) - top:])
    if remove_top_left:
        squares.discard((1, 1))
    return _from_squares(squares)


# -- textual region specs -----------------------------------------------------


FAMILIES = {
    "aztec-triangle": ("AztecTriangle", ("n",)),
    "aztec-diamond": ("AztecDiamond", ("n",)),
    "half-diamond": ("HalfAztecDiamond", ("n",)),
    "half-square": ("HalfSquare", ("n",)),
    "cruciform": ("Cruciform", ("m", "n", "a", "b", "c", "d")),
    "near-cruciform": ("NearlyCruciform", ("m", "n", "a", "b", "c", "d")),
    "trimmed-ar": ("TrimmedAztecRectangle", ("m", "n", "T")),
    "di-ar": ("DoublyIntrudedAztecRectangle", ("w", "l", "bot", "top", "rm")),
}


@dataclass(frozen=True)
class RegionSpec:
    family: str
    params: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "RegionSpec":
        name, _, rest = text.partition(":")
        if name not in FAMILIES:
            raise InvalidParameter(f"unknown region family {name!r}")
        keys = FAMILIES[name][1]
        params = {}
        for item in filter(None, rest.split(",")):
            k, eq, val = item.partition("=")
            k = k.strip()
            if not eq or k not in keys:
                raise InvalidParameter(f"bad parameter {item!r} for {name}")
            if k == "T":
                params[k] = tuple(int(t) for t in val.split(";") if t)
            else:
                params[k] = int(val)
        missing = [k for k in keys if k not in params]
        if missing:
            raise InvalidParameter(f"{name} is missing {', '.join(missing)}")
        return cls(name, params)

    def build(self) -> EmbeddedPlanarGraph:
        p = self.params
        f = self.family
        if f == "aztec-triangle":
            return aztec_triangle(p["n"])
        if f == "aztec-diamond":
            return aztec_diamond(p["n"])
        if f == "half-diamond":
            return half_aztec_diamond(p["n"])
        if f == "half-square":
            return half_square(p["n"])
        if f == "cruciform":
            return cruciform(*(p[k] for k in "mnabcd"))
        if f == "near-cruciform":
            return nearly_cruciform(*(p[k] for k in "mnabcd"))
        if f == "trimmed-ar":
            return trimmed_aztec_rectangle(p["m"], p["n"], p["T"])
        if f == "di-ar":
            return doubly_intruded_aztec_rectangle(p["w"], p["l"], p["bot"], p["top"], bool(p["rm"]))
        raise InvalidParameter(f"unknown region family {f!r}")
