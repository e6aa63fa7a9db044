import numpy as np
import pytest

from flataffine import catalog as C
from flataffine import groups as G


@pytest.fixture
def rng():
    return np.random.default_rng(11)


def test_heisenberg_product():
    H = G.heisenberg()
    assert np.allclose(H.product([1, 1, 0], [0, 0, 1]), [1.5, 1, 1])
    p = np.array([0.3, -1.0, 2.0])
    assert np.allclose(H.product(H.identity, p), p)
    a, b, c = np.array([1, 0, 1.0]), np.array([2, 1, 0.0]), np.array([-1, 1, -1.0])
    assert np.max(np.abs(H.product(H.product(a, b), c) - H.product(a, H.product(b, c)))) == 0


def test_oscillator_frame():
    O = G.oscillator()
    assert np.allclose(O.frame(O.identity), np.eye(4))
    F = O.frame([0, 1, 2, np.pi / 2])
    assert np.allclose(F[:, 1], [0.5, 0, 1, 0])


@pytest.mark.parametrize("name", sorted(G.GROUPS))
def test_axioms_and_invariance(name, rng):
    grp = G.get(name)
    res = G.axiom_residuals(grp, rng)
    assert res["associativity"] < 1e-12
    assert max(res["left_identity"], res["right_identity"], res["inverse"]) < 1e-12
    assert G.left_invariance_residual(grp, rng) < 1e-7
    assert G.structure_constant_residual(grp, rng) < 1e-6


def test_frame_identity():
    for name in G.GROUPS:
        grp = G.get(name)
        F = grp.frame(grp.identity)
        if name == "e2":
            # basis (e1, e2, d) against chart (t, x, y)
            assert np.allclose(F, np.eye(3)[:, [1, 2, 0]])
        elif name == "aff":
            assert np.allclose(F, np.eye(2))
        else:
            assert np.allclose(F, np.eye(grp.dim))


def test_projection_is_homomorphism(rng):
    O, E = G.oscillator(), G.euclidean_e2()
    assert G.homomorphism_residual(G.projection_to_e2, O, E, rng) < 1e-9
    q = E.sample(rng, 20)
    assert np.allclose(G.projection_to_e2(G.section_from_e2(q)), q)


def test_e2_matrix_matches_product(rng):
    E = G.euclidean_e2()
    for a, b in zip(E.sample(rng, 10), E.sample(rng, 10)):
        assert np.allclose(G.e2_matrix(a) @ G.e2_matrix(b), G.e2_matrix(E.product(a, b)))


def test_section_is_not_homomorphism(rng):
    assert G.homomorphism_residual(G.section_from_e2, G.euclidean_e2(), G.oscillator(), rng) > 1e-3


DUAL_PARAMS = [("abelian", (0, 0, 0)), ("heisenberg_x_line", (1, 0, 0)), ("heisenberg_x_line", (0, 2, 0)),
               ("central_ext", (1, 1, 0)), ("central_ext", (2, -1, 0)), ("cplx_semidirect", (0, 0, 1)),
               ("cplx_semidirect", (1, -2, 3))]


@pytest.mark.parametrize("case,params", DUAL_PARAMS)
def test_dual_groups(case, params, rng):
    assert C.dual_group_case(*params) == case
    grp = G.dual_group(case, params)
    res = G.axiom_residuals(grp, rng)
    assert max(res.values()) < 1e-10
    assert G.left_invariance_residual(grp, rng) < 1e-7
    assert G.structure_constant_residual(grp, rng) < 1e-6


def test_central_ext_product():
    grp = G.dual_group("central_ext", (1, 1, 0))
    a, b = np.array([1.0, 2, 3, 4]), np.array([0.5, -1, 2, 1])
    x, y, z, w = a
    x2, y2, z2, w2 = b
    expected = [x + x2 + (w - z) * y2 + w * z2 + z * w2, y + y2, z + z2, w + w2]
    assert np.allclose(grp.product(a, b), expected)


def test_cplx_product():
    grp = G.dual_group("cplx_semidirect", (0, 0, 1))
    a, b = np.array([1.0, 2, 0.7, 4]), np.array([0.5, -1, 2, 1])
    z2 = np.exp(1j * 0.7) * (0.5 - 1j)
    assert np.allclose(grp.product(a, b), [1 + z2.real, 2 + z2.imag, 2.7, 5])


def test_dual_group_case_mismatch():
    with pytest.raises(ValueError):
        G.dual_group("central_ext", (1, 0, 0))
    with pytest.raises(ValueError):
        G.dual_group("nope", (0, 0, 0))


def test_unknown_group():
    with pytest.raises(KeyError):
        G.get("sl2")


def test_lambda_independence():
    assert G.lambda_independence_check(1, 1)
    assert G.lambda_independence_check(1, 2)
    assert not G.lambda_independence_check(1, 2, intertwiner=lambda s, z: (s, z))
    assert not G.lambda_independence_check(2, 1)
    with pytest.raises(ValueError):
        G.lambda_independence_check(0, 1)


def test_intertwiner_not_automorphism():
    assert G.intertwiner_is_automorphism(1, 1)
    assert not G.intertwiner_is_automorphism(1, 2)
