import numpy as np
import pytest

from asymdep import InputError, ProductMetricKind, FiniteMetricSpace, line_space, product_space


def test_line_space_distances_are_absolute_differences():
    s = line_space([0.0, 0.5, 2.0])
    assert s.dist[0][1] == pytest.approx(0.5)
    assert s.dist[0][2] == pytest.approx(2.0)
    assert s.dist[2][1] == pytest.approx(1.5)
    assert list(s.labels) == ["0.0", "0.5", "2.0"]


def test_product_space_sum_and_max_values():
    s1 = line_space([0.0, 1.0])
    s2 = line_space([0.0, 3.0])
    ps = product_space(s1, s2, ProductMetricKind.SUM)
    pm = product_space(s1, s2, ProductMetricKind.MAX)
    # row-major point order: (0,0), (0,3), (1,0), (1,3)
    assert ps.dist[0][3] == pytest.approx(4.0)
    assert pm.dist[0][3] == pytest.approx(3.0)
    assert ps.dist[1][2] == pytest.approx(4.0)
    assert pm.dist[1][2] == pytest.approx(3.0)
    assert ps.labels[3] == "(1.0,3.0)"


def test_sum_and_max_metrics_are_equivalent_within_factor_two():
    s1 = line_space([0.0, 0.7, 2.0])
    s2 = line_space([-1.0, 0.0, 0.4])
    ps = product_space(s1, s2, ProductMetricKind.SUM)
    pm = product_space(s1, s2, ProductMetricKind.MAX)
    assert np.all(pm.dist <= ps.dist + 1e-12)
    assert np.all(ps.dist <= 2 * pm.dist + 1e-12)


@pytest.mark.parametrize("kind", list(ProductMetricKind))
def test_product_space_satisfies_metric_axioms(kind):
    s1 = line_space([0.0, 1.0, 2.5])
    s2 = line_space([0.0, 0.3])
    p = product_space(s1, s2, kind)
    d = p.dist
    n = len(p.labels)
    assert np.allclose(d, d.T)
    assert np.all(np.diag(d) == 0)
    off = d + np.eye(n)
    assert np.all(off > 0)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert d[i][j] <= d[i][k] + d[k][j] + 1e-12


def test_product_space_coords_concatenate():
    s1 = line_space([0.0, 1.0])
    s2 = line_space([5.0, 7.0])
    p = product_space(s1, s2, ProductMetricKind.SUM)
    assert p.coords.shape == (4, 2)
    assert list(p.coords[2]) == [1.0, 5.0]
    assert not p.coords_euclidean


@pytest.mark.parametrize(
    "dist",
    [
        [[0.0, 1.0], [2.0, 0.0]],          # asymmetric
        [[0.5, 1.0], [1.0, 0.0]],          # nonzero diagonal
        [[0.0, -1.0], [-1.0, 0.0]],        # negative
        [[0.0, 0.0], [0.0, 0.0]],          # distinct points at distance 0
    ],
)
def test_invalid_distance_matrices_are_rejected(dist):
    with pytest.raises(InputError):
        FiniteMetricSpace(("a", "b"), np.array(dist))


def test_triangle_violation_is_rejected():
    dist = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]])
    with pytest.raises(InputError):
        FiniteMetricSpace(("a", "b", "c"), dist)


def test_coords_must_match_distances_when_euclidean():
    dist = np.array([[0.0, 2.0], [2.0, 0.0]])
    with pytest.raises(InputError):
        FiniteMetricSpace(("a", "b"), dist, coords=np.array([0.0, 1.0]))
    ok = FiniteMetricSpace(("a", "b"), dist, coords=np.array([0.0, 2.0]))
    assert ok.dim == 1
