import numpy as np

from hashtc import count_naive
from hashtc.synthetic import SyntheticSpec, generate_synthetic, gnp, lattice3d, rmat

from graphs import prepared


def test_lattice_structure():
    el = lattice3d(4)
    assert el.vertex_count == 64 and len(el) == 3 * 64
    g, _ = prepared(el)
    assert set(g.degrees.tolist()) == {6}
    assert count_naive(g) == 0


def test_gnp_empty_when_p_zero():
    assert len(gnp(20, 0.0, 3)) == 0


def test_gnp_deterministic():
    a = generate_synthetic(SyntheticSpec("gnp", {"n": 20, "p": 0.5}, seed=1))
    b = generate_synthetic(SyntheticSpec("gnp", {"n": 20, "p": 0.5}, seed=1))
    c = generate_synthetic(SyntheticSpec("gnp", {"n": 20, "p": 0.5}, seed=2))
    assert np.array_equal(a.edges, b.edges)
    assert not np.array_equal(a.edges, c.edges)


def test_gnp_density():
    el = gnp(400, 0.1, 0)
    assert abs(len(el) - 0.1 * 400 * 399 / 2) < 5 * np.sqrt(0.1 * 0.9 * 400 * 399 / 2)


def test_rmat_skewed_and_deterministic():
    a, b = rmat(10, 8, 5), rmat(10, 8, 5)
    assert np.array_equal(a.edges, b.edges)
    g, _ = prepared(a)
    assert g.degrees.max() > 8 * np.median(g.degrees)
