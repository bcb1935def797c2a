import pytest

from hashtc import count_merge_path, count_naive, orient_rank_by_degree
from hashtc.oracle import merge_intersect
from hashtc.synthetic import gnp, lattice3d, rmat

from graphs import brute_triangles, complete, cycle, prepared


def test_naive_small():
    assert count_naive(complete(3)) == 1
    assert count_naive(cycle(5)) == 0


def test_naive_lattice_is_triangle_free(lattice):
    assert count_naive(lattice[0]) == 0


def test_merge_shared_element_advances_both():
    # 2 < 3 moves the first pointer; the shared 3 closes one triangle
    assert merge_intersect([2, 3], [3, 8, 18]) == 1
    assert merge_intersect([1, 4, 9], [2, 5, 10]) == 0
    assert merge_intersect([], [1]) == 0


def test_merge_k4():
    assert count_merge_path(orient_rank_by_degree(complete(4))) == 4


@pytest.mark.parametrize("el", [gnp(30, 0.4, 1), gnp(50, 0.2, 2), rmat(5, 6, 3), lattice3d(3)])
def test_oracles_agree_with_brute_force(el):
    g, og = prepared(el)
    truth = brute_triangles(g)
    assert count_naive(g) == truth
    assert count_merge_path(og) == truth


def test_torus_of_side_three_has_triangles():
    g, _ = prepared(lattice3d(3))
    # each axis ring of length 3 is a triangle: 3 axes * 9 rings
    assert count_naive(g) == 27
