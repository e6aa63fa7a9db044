import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flataffine import catalog as C
from flataffine import groups as G
from flataffine.algebra import ProductTable
from flataffine.developing import (BranchError, ChartExit, FlatAffineGroup, NotFlatAffine, PathSpec, affine_rep,
                                   catalog_flat_affine, chart_exit_time, closed_form_development,
                                   collinearity_residual, develop, develop_jacobian, diagram_residual, geodesic,
                                   grid_points, parallel_transport)


def aff(alpha):
    return FlatAffineGroup(G.aff_r(), C.aff_nabla2(alpha))


def test_refuses_non_flat():
    with pytest.raises(NotFlatAffine):
        FlatAffineGroup(G.euclidean_e2(), ProductTable.zero(3))


def test_zero_connection_transport():
    fa = FlatAffineGroup(G.abelian(3), ProductTable.zero(3))
    v = np.array([1.0, -2.0, 0.5])
    assert np.allclose(parallel_transport(fa, [1, 2, 3], v), v)


def test_parallel_field_aff():
    # X = a x d/dx + b d/dy; frame columns at (x, y) are x d/dx, x d/dy
    out = parallel_transport(aff(0), [2, 1], [1, 2])
    assert np.allclose(out, [1, 1], atol=1e-9)


def test_develop_examples():
    assert np.allclose(develop(aff(0), [2, 1]).value, [np.log(2), 1], atol=1e-7)
    assert np.allclose(develop(aff(2), [2, 1]).value, [1.5, 7 / 3], atol=1e-7)
    r = develop(aff(2), G.aff_r().identity)
    assert r.steps == 0 and np.all(r.value == 0)
    fa = catalog_flat_affine("oscillator:F3")
    assert np.all(develop(fa, np.zeros(4)).value == 0)


def test_path_independence():
    fa = aff(2)
    x = np.array([2.0, 1.0])
    straight = develop(fa, x, tol=1e-10).value
    rect = develop(fa, x, tol=1e-10, path=PathSpec(via=((2.0, 0.0),))).value
    other = develop(fa, x, tol=1e-10, path=PathSpec(via=((1.0, 1.0),))).value
    assert np.max(np.abs(straight - rect)) < 1e-8
    assert np.max(np.abs(straight - other)) < 1e-8


def test_error_estimate_below_tol():
    r = develop(catalog_flat_affine("oscillator:F4"), [0.3, -0.5, 1.0, 1.2], tol=1e-9)
    assert r.error <= 1e-9


def test_chart_exit_for_target():
    with pytest.raises(ChartExit):
        develop(aff(0), [-1, 0])


def test_closed_forms():
    assert np.allclose(closed_form_development("oscillator:F3", None, [1, 2, 3, 4]), [1, 2, 3, 10.5])
    assert np.allclose(closed_form_development("aff:nabla1", {"alpha": 1}, [1, 0]), [0, 0])
    assert np.allclose(closed_form_development("aff:nabla2", {"alpha": -1}, [2, 1]), [0.5, np.log(2)])
    with pytest.raises(BranchError):
        closed_form_development("aff:nabla2", {"alpha": 0}, [2, 1], branch="generic")
    with pytest.raises(BranchError):
        closed_form_development("aff:nabla1", {"alpha": 1}, [2, 1], branch="generic")
    with pytest.raises(KeyError):
        closed_form_development("e2:F1", None, [0, 0, 0])


@pytest.mark.parametrize("family,params", [("aff:nabla2", {"alpha": "2"}), ("aff:nabla2", {"alpha": "-1"}),
                                           ("aff:nabla1", {"alpha": "1/2"}), ("aff:nabla1", {"alpha": "1"})])
def test_numeric_matches_closed_form_aff(family, params):
    fa = catalog_flat_affine(family, params)
    pts = grid_points([(0.5, 2.5), (-1, 1)], [4, 4])
    assert np.max(np.abs(develop(fa, pts).value - closed_form_development(family, params, pts))) < 1e-6


@pytest.mark.parametrize("family,params", [("oscillator:F1", {"t": "1", "s": "3/2"}),
                                           ("oscillator:F2", {"alpha": "2", "t": "1"}), ("oscillator:F3", None)])
def test_numeric_matches_closed_form_oscillator(family, params):
    fa = catalog_flat_affine(family, params)
    pts = grid_points([(-1, 1)] * 4, [2, 2, 2, 2])
    assert np.max(np.abs(develop(fa, pts).value - closed_form_development(family, params, pts))) < 1e-6


@settings(max_examples=15)
@given(st.floats(0.3, 3.0), st.floats(-2, 2))
def test_numeric_matches_closed_form_random(x, y):
    got = develop(aff(2), [x, y]).value
    assert np.allclose(got, closed_form_development("aff:nabla2", {"alpha": 2}, [x, y]), atol=1e-6)


def test_eta_identity():
    # dD = η for a numeric developing map
    fa = catalog_flat_affine("oscillator:F4")
    x = np.array([0.2, 0.4, -0.3, 0.9])
    eta = develop(fa, x, tol=1e-11).eta(fa.group, x)
    assert np.max(np.abs(develop_jacobian(fa, x) - eta)) < 1e-6


def test_immersion_full_rank():
    fa = catalog_flat_affine("oscillator:F4")
    pts = np.random.default_rng(0).uniform(-1.5, 1.5, (50, 4))
    J = develop_jacobian(fa, pts)
    assert np.all(np.linalg.matrix_rank(J) == 4)


def test_geodesic_straight_in_abelian():
    fa = FlatAffineGroup(G.abelian(2), ProductTable.zero(2))
    tr = geodesic(fa, [0, 0], [1, 2], T=1, steps=10)
    assert np.allclose(tr.points[-1], [1, 2])
    assert collinearity_residual(tr.points) < 1e-12


def test_geodesic_develops_to_line():
    fa = catalog_flat_affine("oscillator:F3")
    tr = geodesic(fa, np.zeros(4), [0, 1, 0, 0], T=1, steps=200)
    assert collinearity_residual(develop(fa, tr.points[1:]).value) < 1e-7


def test_incompleteness_witness():
    fa = aff(2)
    t = chart_exit_time(fa, [1, 0], [-1, 0])
    assert t is not None and 0.4 < t < 0.6
    assert chart_exit_time(fa, [1, 0], [1, 0]) is None


def test_collinearity_residual():
    assert collinearity_residual(np.array([[0, 0], [1, 1], [2, 2.0]])) < 1e-15
    assert collinearity_residual(np.array([[0, 0], [1, 0], [1, 1.0]])) > 0.1


def test_affine_rep_identity_and_catalog_map():
    fa = FlatAffineGroup(G.aff_r(), C.aff_iso1())
    A = affine_rep(fa, lambda p: p)
    assert np.allclose(A.Q, 0) and np.allclose(A.L, np.eye(2), atol=1e-8)
    F = lambda p: np.stack([2 * p[..., 0], -3 / p[..., 0] + 2 * p[..., 1] - 1], axis=-1)  # noqa: E731
    pts = G.aff_r().sample(np.random.default_rng(4), 20)
    assert diagram_residual(fa, F, affine_rep(fa, F), pts) < 1e-7
