import pytest

from aztecproof.formulas import InvalidParameter, formula_C, formula_D
from aztecproof.graph import AxisSpec, graph_equal, is_balanced, is_symmetric
from aztecproof.matching import count_matchings, count_matchings_bruteforce
from aztecproof.regions import (
    FAMILIES,
    Infeasible,
    NegativePierUnsupported,
    RegionSpec,
    aztec_diamond,
    aztec_rectangle,
    aztec_triangle,
    aztec_triangle_cells,
    chess_to_grid,
    cruciform,
    cruciform_dot,
    doubly_intruded_aztec_rectangle,
    grid_to_chess,
    half_aztec_diamond,
    half_square,
    half_square_cells,
    nearly_cruciform,
    nw_dot_vertex,
    trimmed_aztec_rectangle,
)


def test_chessboard_maps_are_inverse():
    for u in range(-5, 6):
        for v in range(-5, 6):
            if (u + v) % 2 == 0:
                assert grid_to_chess(*chess_to_grid(u, v)) == (u, v)
    with pytest.raises(ValueError):
        chess_to_grid(0, 1)


def test_aztec_diamond_small():
    assert count_matchings(aztec_diamond(1)) == 2
    assert len(aztec_diamond(1)) == 4
    assert len(half_aztec_diamond(0)) == 0
    assert count_matchings(half_aztec_diamond(0)) == 1


def test_half_square_is_half():
    for n in range(1, 6):
        cells = half_square_cells(2 * n)
        assert len(cells) == 2 * n * n
        # bottom-left cell sits above the cut
        assert (0, 0) in cells
        # the cut-away half is congruent: rotating by a half turn gives the complement
        side = 2 * n
        rest = {(i, j) for i in range(side) for j in range(side)} - cells
        assert {(side - 1 - i, side - 1 - j) for i, j in cells} == rest
    with pytest.raises(InvalidParameter):
        half_square(3)


@pytest.mark.parametrize("n", range(1, 7))
def test_aztec_triangle_size(n):
    g = aztec_triangle(n)
    assert len(g) == 3 * n * n - n
    assert len(aztec_triangle_cells(n)) == len(g)
    assert is_balanced(g)


def test_aztec_triangle_small_counts():
    assert count_matchings(aztec_triangle(1)) == 1
    assert count_matchings_bruteforce(aztec_triangle(2)) == 4
    assert count_matchings_bruteforce(aztec_triangle(3), cap=40) == 60
    with pytest.raises(InvalidParameter):
        aztec_triangle(0)


def test_cruciform_balance_iff():
    for m in range(1, 4):
        for n in range(1, 4):
            for a in range(4):
                for b in range(4):
                    for c in range(3):
                        for d in range(3):
                            bal = is_balanced(cruciform(m, n, a, b, c, d))
                            assert bal == (a + b + c + d == m + n - 1)


def test_cruciform_large_instance():
    g = cruciform(9, 6, 3, 4, 5, 2)
    assert is_balanced(g)
    assert count_matchings(g) == formula_C(9, 6, 3, 4, 5, 2)


def test_cruciform_small_oracle():
    g = cruciform(1, 1, 0, 0, 0, 1)
    assert count_matchings_bruteforce(g) == count_matchings(g) == formula_C(1, 1, 0, 0, 0, 1)


def test_cruciform_symmetries():
    # equal opposite piers: symmetric about both center lines of the chessboard picture
    g = cruciform(3, 3, 1, 1, 1, 1)
    assert is_symmetric(g, AxisSpec.horizontal(0))
    assert is_symmetric(g, AxisSpec.vertical(3))


def test_negative_piers_rejected():
    with pytest.raises(NegativePierUnsupported):
        cruciform(3, 3, -1, 2, 2, 2)


def test_nearly_cruciform():
    v = nw_dot_vertex(3, 3, 1, 1, 1, 1)
    assert v in cruciform(3, 3, 1, 1, 1, 1)
    assert v not in cruciform_dot(3, 3, 1, 1, 1, 1)
    g = nearly_cruciform(3, 3, 1, 1, 1, 1)
    assert is_balanced(g)
    assert all(g.degree(p) != 1 for p in g.vertices)
    assert count_matchings(g) == formula_D(3, 3, 1, 1, 1)


def test_nearly_cruciform_infeasible():
    assert formula_D(1, 3, 1, 0, 0) == 0
    with pytest.raises(Infeasible):
        nearly_cruciform(1, 3, 1, 0, 1, 0)


def test_trimmed_rectangle():
    assert count_matchings(trimmed_aztec_rectangle(1, 3, [2])) == 1
    assert count_matchings(trimmed_aztec_rectangle(2, 2, [1, 3])) == 4
    g = trimmed_aztec_rectangle(2, 4, [1, 5])
    assert is_balanced(g)


def test_intruded_rectangle_degenerate():
    assert graph_equal(doubly_intruded_aztec_rectangle(3, 2, 0, 0, False), aztec_rectangle(2, 3))
    with pytest.raises(InvalidParameter):
        doubly_intruded_aztec_rectangle(3, 2, 2, 2, False)


def test_region_spec_parsing():
    assert RegionSpec.parse("aztec-triangle:n=5").build() == aztec_triangle(5)
    spec = RegionSpec.parse("cruciform:m=9,n=6,a=3,b=4,c=5,d=2")
    assert spec.params == dict(m=9, n=6, a=3, b=4, c=5, d=2)
    assert RegionSpec.parse("trimmed-ar:m=2,n=2,T=1;3").params["T"] == (1, 3)
    assert len(RegionSpec.parse("di-ar:w=9,l=6,bot=2,top=2,rm=1").build()) > 0
    assert len(RegionSpec.parse("near-cruciform:m=3,n=3,a=1,b=1,c=1,d=1").build()) > 0
    for bad in ("nope:n=1", "aztec-triangle:", "aztec-triangle:k=3", "cruciform:m=1"):
        with pytest.raises(InvalidParameter):
            RegionSpec.parse(bad)
    assert set(FAMILIES) >= {"aztec-triangle", "cruciform", "near-cruciform", "trimmed-ar", "di-ar"}
