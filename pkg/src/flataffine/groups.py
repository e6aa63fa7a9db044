"""Charted Lie groups with explicit group laws and left-invariant frames.

Points are real vectors (complex coordinates are stored as real pairs).  Every
function accepts a batch: arrays of shape (..., n).  ``frame(x)`` has shape
(..., n, n) and its column i is the left-invariant field of the i-th basis
vector of ``algebra`` in chart coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import catalog
from .algebra import StructureConstants
from .expr import numeric_jacobian
from .linalg import to_scalar


@dataclass(frozen=True)
class ChartedGroup:
    name: str
    coords: tuple[str, ...]
    algebra: StructureConstants
    identity: np.ndarray
    product: Callable[[np.ndarray, np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]
    _frame: Callable[[np.ndarray], np.ndarray]
    contains: Callable[[np.ndarray], np.ndarray] = lambda x: np.ones(np.shape(x)[:-1], bool)
    sampler: Callable | None = None
    basis_map: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def frame(self, x) -> np.ndarray:
        f = self._frame(np.asarray(x, dtype=float))
        if self.basis_map is not None:
            f = f @ self.basis_map
        return f

    def sample(self, rng: np.random.Generator, k: int) -> np.ndarray:
        if self.sampler is not None:
            return self.sampler(rng, k)
        return rng.uniform(-2.0, 2.0, size=(k, self.dim))


def _stack(*cols):
    return np.stack(np.broadcast_arrays(*cols), axis=-1)


def _frame_from_columns(*cols):
    return np.stack([np.stack(np.broadcast_arrays(*c), axis=-1) for c in cols], axis=-1)


# ---- R^n ---------------------------------------------------------------------------

def abelian(n: int) -> ChartedGroup:
    def frame(x):
        return np.broadcast_to(np.eye(n), x.shape[:-1] + (n, n)).copy()

    return ChartedGroup(
        f"R^{n}", tuple(f"x{i + 1}" for i in range(n)), catalog.abelian(n), np.zeros(n),
        lambda a, b: np.asarray(a) + np.asarray(b), lambda a: -np.asarray(a), frame,
    )


# ---- Heisenberg H3: (s, w), w = u + iv ----------------------------------------------

def _h3_product(a, b):
    s, u, v = np.moveaxis(np.asarray(a, float), -1, 0)
    s2, u2, v2 = np.moveaxis(np.asarray(b, float), -1, 0)
    return _stack(s + s2 + 0.5 * (u * v2 - v * u2), u + u2, v + v2)


def heisenberg() -> ChartedGroup:
    def frame(x):
        s, u, v = np.moveaxis(x, -1, 0)
        one, zero = np.ones_like(s), np.zeros_like(s)
        return _frame_from_columns((one, zero, zero), (-0.5 * v, one, zero), (0.5 * u, zero, one))

    return ChartedGroup("H3", ("s", "u", "v"), catalog.heisenberg_algebra(), np.zeros(3),
                        _h3_product, lambda a: -np.asarray(a, float), frame)


# ---- oscillator O = H3 x| R ----------------------------------------------------------

def _osc_product(a, b):
    s, x, y, t = np.moveaxis(np.asarray(a, float), -1, 0)
    s2, x2, y2, t2 = np.moveaxis(np.asarray(b, float), -1, 0)
    c, sn = np.cos(t), np.sin(t)
    wx, wy = c * x2 - sn * y2, sn * x2 + c * y2  # e^{it} z'
    return _stack(s + s2 + 0.5 * (x * wy - y * wx), x + wx, y + wy, t + t2)


def _osc_inverse(a):
    s, x, y, t = np.moveaxis(np.asarray(a, float), -1, 0)
    c, sn = np.cos(t), np.sin(t)
    return _stack(-s, -(c * x + sn * y), -(-sn * x + c * y), -t)


def oscillator_frame(x):
    _, x2, x3, x4 = np.moveaxis(x, -1, 0)
    c, s = np.cos(x4), np.sin(x4)
    one, zero = np.ones_like(x2), np.zeros_like(x2)
    return _frame_from_columns(
        (one, zero, zero, zero),
        (0.5 * (x2 * s - x3 * c), c, s, zero),
        (0.5 * (x2 * c + x3 * s), -s, c, zero),
        (zero, zero, zero, one),
    )


def oscillator() -> ChartedGroup:
    return ChartedGroup("O", ("x1", "x2", "x3", "x4"), catalog.oscillator_algebra(), np.zeros(4),
                        _osc_product, _osc_inverse, oscillator_frame)


# ---- E(2), universal cover charted by (t, x, y) -------------------------------------

def _e2_product(a, b):
    t, x, y = np.moveaxis(np.asarray(a, float), -1, 0)
    t2, x2, y2 = np.moveaxis(np.asarray(b, float), -1, 0)
    c, s = np.cos(t), np.sin(t)
    return _stack(t + t2, x + c * x2 - s * y2, y + s * x2 + c * y2)


def _e2_inverse(a):
    t, x, y = np.moveaxis(np.asarray(a, float), -1, 0)
    c, s = np.cos(t), np.sin(t)
    return _stack(-t, -(c * x + s * y), -(-s * x + c * y))


def euclidean_e2() -> ChartedGroup:
    def frame(p):
        t = p[..., 0]
        c, s = np.cos(t), np.sin(t)
        one, zero = np.ones_like(t), np.zeros_like(t)
        return _frame_from_columns((zero, c, s), (zero, -s, c), (one, zero, zero))

    return ChartedGroup("E(2)~", ("t", "x", "y"), catalog.e2_algebra(), np.zeros(3),
                        _e2_product, _e2_inverse, frame)


def projection_to_e2(p):
    """O -> E(2): (s, x + iy, t) -> (rotation t, translation (x, y))."""
    p = np.asarray(p, float)
    return _stack(p[..., 3], p[..., 1], p[..., 2])


def section_from_e2(q):
    """E(2) -> O: (t, x, y) -> (0, x + iy, t)."""
    q = np.asarray(q, float)
    return _stack(np.zeros_like(q[..., 0]), q[..., 1], q[..., 2], q[..., 0])


def e2_matrix(q) -> np.ndarray:
    t, x, y = q
    return np.array([[np.cos(t), -np.sin(t), x], [np.sin(t), np.cos(t), y], [0.0, 0.0, 1.0]])


# ---- Aff(R)_0 ------------------------------------------------------------------------

def _aff_product(a, b):
    x, y = np.moveaxis(np.asarray(a, float), -1, 0)
    x2, y2 = np.moveaxis(np.asarray(b, float), -1, 0)
    return _stack(x * x2, x * y2 + y)


def _aff_inverse(a):
    x, y = np.moveaxis(np.asarray(a, float), -1, 0)
    return _stack(1.0 / x, -y / x)


def aff_frame(p):
    x = p[..., 0]
    zero = np.zeros_like(x)
    return _frame_from_columns((x, zero), (zero, x))


def aff_r() -> ChartedGroup:
    return ChartedGroup(
        "Aff(R)_0", ("x", "y"), catalog.aff_algebra(), np.array([1.0, 0.0]),
        _aff_product, _aff_inverse, aff_frame,
        contains=lambda p: np.asarray(p)[..., 0] > 0,
        sampler=lambda rng, k: np.column_stack([rng.uniform(0.3, 3.0, k), rng.uniform(-2.0, 2.0, k)]),
    )


# ---- dual groups O*(r) -------------------------------------------------------------------

DUAL_CASES = ("abelian", "heisenberg_x_line", "central_ext", "cplx_semidirect")


def _cext_product(a, b):
    x, y, z, w = np.moveaxis(np.asarray(a, float), -1, 0)
    x2, y2, z2, w2 = np.moveaxis(np.asarray(b, float), -1, 0)
    return _stack(x + x2 + (w - z) * y2 + w * z2 + z * w2, y + y2, z + z2, w + w2)


def _cext_inverse(a):
    x, y, z, w = np.moveaxis(np.asarray(a, float), -1, 0)
    # x + x' + B(v, -v) = 0 with B(v, v') = (w - z) y' + w z' + z w'
    return _stack(-x + (w - z) * y + 2 * w * z, -y, -z, -w)


def _cext_frame(p):
    x, y, z, w = np.moveaxis(p, -1, 0)
    one, zero = np.ones_like(x), np.zeros_like(x)
    # d/de of p.(e_k) at e = 0
    return _frame_from_columns((one, zero, zero, zero), (w - z, one, zero, zero), (w, zero, one, zero),
                               (z, zero, zero, one))


def _cplx_product(a3):
    def product(a, b):
        u, v, s, t = np.moveaxis(np.asarray(a, float), -1, 0)
        u2, v2, s2, t2 = np.moveaxis(np.asarray(b, float), -1, 0)
        c, sn = np.cos(a3 * s), np.sin(a3 * s)
        return _stack(u + c * u2 - sn * v2, v + sn * u2 + c * v2, s + s2, t + t2)

    return product


def _cplx_inverse(a3):
    def inverse(a):
        u, v, s, t = np.moveaxis(np.asarray(a, float), -1, 0)
        c, sn = np.cos(a3 * s), np.sin(a3 * s)
        return _stack(-(c * u + sn * v), -(-sn * u + c * v), -s, -t)

    return inverse


def _cplx_frame(a3):
    def frame(p):
        s = p[..., 2]
        c, sn = np.cos(a3 * s), np.sin(a3 * s)
        one, zero = np.ones_like(s), np.zeros_like(s)
        return _frame_from_columns((c, sn, zero, zero), (-sn, c, zero, zero), (zero, zero, one, zero),
                                   (zero, zero, zero, one))

    return frame


def _h3_line_product(a, b):
    return np.concatenate([_h3_product(np.asarray(a, float)[..., :3], np.asarray(b, float)[..., :3]),
                           (np.asarray(a, float)[..., 3:] + np.asarray(b, float)[..., 3:])], axis=-1)


def _h3_line_frame(p):
    s, u, v, t = np.moveaxis(p, -1, 0)
    one, zero = np.ones_like(s), np.zeros_like(s)
    return _frame_from_columns((one, zero, zero, zero), (-0.5 * v, one, zero, zero), (0.5 * u, zero, one, zero),
                               (zero, zero, zero, one))


def dual_group(case: str, params=(0, 0, 0)) -> ChartedGroup:
    """Simply connected group with Lie algebra o*(r), r = a1 e0^e1 + a2 e0^e2 + a3 e0^d.

    The chart is the one of the corresponding case; ``basis_map`` expresses the
    dual basis (e0*, e1*, e2*, d*) in the chart's own left-invariant basis, so
    ``frame`` columns are the left-invariant fields of e0*, ..., d*.
    """
    from .yang_baxter import dual_bracket

    a1, a2, a3 = (to_scalar(p) for p in params)
    expected = catalog.dual_group_case(a1, a2, a3)
    if case not in DUAL_CASES:
        raise ValueError(f"unknown case {case!r}; choose from {DUAL_CASES}")
    if case != expected:
        raise ValueError(f"parameters {params} belong to case {expected!r}, not {case!r}")
    lie = dual_bracket(catalog.oscillator_bivector(a1, a2, a3))
    f1, f2, f3 = float(a1), float(a2), float(a3)
    if case == "abelian":
        base = abelian(4)
        return ChartedGroup("O*(0)", base.coords, lie, base.identity, base.product, base.inverse, base._frame)
    if case == "heisenberg_x_line":
        # chart (s, u, v, t) on H3 x R: [U, V] = S
        B = np.zeros((4, 4))
        B[1, 0] = 1.0  # e0* = U
        B[0, 3] = 1.0  # d* = S
        if f1 != 0:
            B[2, 2] = f1  # e2* = a1 V
            B[3, 1] = 1.0  # e1* = T
        else:
            B[2, 1] = -f2  # e1* = -a2 V
            B[3, 2] = 1.0  # e2* = T
        return ChartedGroup("H3 x R", ("s", "u", "v", "t"), lie, np.zeros(4), _h3_line_product,
                            lambda a: -np.asarray(a, float), _h3_line_frame, basis_map=B)
    if case == "central_ext":
        # chart (x, y, z, w): [Y, W] = -X, [Y, Z] = X
        B = np.zeros((4, 4))
        B[1, 0] = 1.0  # e0* = Y
        B[3, 1] = f2  # e1* = a2 W
        B[2, 2] = f1  # e2* = a1 Z
        B[0, 3] = 1.0  # d* = X
        return ChartedGroup("R^4 (central extension)", ("x", "y", "z", "w"), lie, np.zeros(4),
                            _cext_product, _cext_inverse, _cext_frame, basis_map=B)
    # cplx_semidirect, chart (Re z, Im z, s, t): [S, A1] = a3 A2, [S, A2] = -a3 A1
    B = np.zeros((4, 4))
    B[2, 0] = 1.0  # e0* = S
    B[0, 1], B[3, 1] = 1.0, f1 / f3  # e1* = A1 + (a1/a3) T
    B[1, 2], B[3, 2] = 1.0, f2 / f3  # e2* = A2 + (a2/a3) T
    B[3, 3] = 1.0  # d* = T
    return ChartedGroup("(C x| R) x R", ("re z", "im z", "s", "t"), lie, np.zeros(4), _cplx_product(f3),
                        _cplx_inverse(f3), _cplx_frame(f3), basis_map=B)


GROUPS = {"R2": lambda: abelian(2), "R4": lambda: abelian(4), "heisenberg": heisenberg, "oscillator": oscillator,
          "e2": euclidean_e2, "aff": aff_r}


def get(name: str) -> ChartedGroup:
    if name not in GROUPS:
        raise KeyError(f"unknown group {name!r}; choose from {sorted(GROUPS)}")
    return GROUPS[name]()


# ---- numeric checks -----------------------------------------------------------------------

def axiom_residuals(G: ChartedGroup, rng: np.random.Generator, k: int = 100) -> dict[str, float]:
    a, b, c = G.sample(rng, k), G.sample(rng, k), G.sample(rng, k)
    e = np.broadcast_to(G.identity, a.shape)
    scale = lambda v: np.maximum(1.0, np.abs(v))  # noqa: E731
    assoc = G.product(G.product(a, b), c) - G.product(a, G.product(b, c))
    ref = G.product(G.product(a, b), c)
    return {
        "associativity": float(np.max(np.abs(assoc) / scale(ref))),
        "left_identity": float(np.max(np.abs(G.product(e, a) - a))),
        "right_identity": float(np.max(np.abs(G.product(a, e) - a))),
        "inverse": float(max(np.max(np.abs(G.product(a, G.inverse(a)) - e)),
                             np.max(np.abs(G.product(G.inverse(a), a) - e)))),
    }


def left_translation_jacobian(G: ChartedGroup, a, x) -> np.ndarray:
    return numeric_jacobian(lambda y: G.product(a, y), x)


def left_invariance_residual(G: ChartedGroup, rng: np.random.Generator, k: int = 50) -> float:
    worst = 0.0
    for a, x in zip(G.sample(rng, k), G.sample(rng, k)):
        lhs = G.frame(G.product(a, x))
        rhs = left_translation_jacobian(G, a, x) @ G.frame(x)
        worst = max(worst, float(np.max(np.abs(lhs - rhs)) / max(1.0, float(np.max(np.abs(lhs))))))
    return worst


def frame_jacobians(G: ChartedGroup, x) -> np.ndarray:
    """d(frame column i)/dx as array [i, :, j] = d X_i / d x_j."""
    J = numeric_jacobian(G.frame, x)  # shape (n, n, n): [row, col, dx]
    return np.transpose(J, (1, 0, 2))


def numeric_structure_constants(G: ChartedGroup, x) -> np.ndarray:
    """c[i, j, k] from [X_i, X_j] = (DX_j) X_i - (DX_i) X_j, expressed in the frame at x."""
    x = np.asarray(x, float)
    F = G.frame(x)
    D = frame_jacobians(G, x)
    n = G.dim
    Finv = np.linalg.inv(F)
    c = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            br = D[j] @ F[:, i] - D[i] @ F[:, j]
            c[i, j] = Finv @ br
    return c


def exact_structure_array(lie: StructureConstants) -> np.ndarray:
    n = lie.dim
    return np.array([[[float(lie.dense[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)])


def structure_constant_residual(G: ChartedGroup, rng: np.random.Generator, k: int = 20) -> float:
    target = exact_structure_array(G.algebra)
    return max(float(np.max(np.abs(numeric_structure_constants(G, x) - target))) for x in G.sample(rng, k))


def homomorphism_residual(f, G: ChartedGroup, H: ChartedGroup, rng: np.random.Generator, k: int = 50) -> float:
    a, b = G.sample(rng, k), G.sample(rng, k)
    lhs = f(G.product(a, b))
    rhs = H.product(f(a), f(b))
    return float(np.max(np.abs(lhs - rhs)))


def lambda_independence_check(lam: float, lam2: float, intertwiner: Callable | None = None,
                              samples: int = 200, seed: int = 0, tol: float = 1e-9) -> bool:
    """phi o rho(t) == rho'(t) o phi on H3 for phi(s, z) = (s, z^(lam2/lam)), principal branch.

    Sample angles are drawn in (-pi, pi) together with t so that rotation can
    carry z across the branch cut; integer ratios survive that, others do not.
    """
    if lam <= 0 or lam2 <= 0:
        raise ValueError("lambda must be positive")
    k = lam2 / lam
    phi = intertwiner or (lambda s, z: (s, z ** k))
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.2, 2.0, samples)
    theta = rng.uniform(-np.pi, np.pi, samples)
    t = np.concatenate([[np.pi / 2], rng.uniform(-np.pi, np.pi, samples - 1)])
    s = rng.uniform(-2, 2, samples)
    z = r * np.exp(1j * theta)
    s1, z1 = phi(s, np.exp(1j * lam * t) * z)
    s0, z0 = phi(s, z)
    s2, z2 = s0, np.exp(1j * lam2 * t) * z0
    return bool(np.all(np.abs(s1 - s2) < tol) and np.all(np.abs(z1 - z2) < tol * np.maximum(1, np.abs(z2))))


def intertwiner_is_automorphism(lam: float, lam2: float, samples: int = 50, seed: int = 0) -> bool:
    """Whether phi(s, z) = (s, z^(lam2/lam)) respects the Heisenberg product."""
    k = lam2 / lam
    rng = np.random.default_rng(seed)
    H = heisenberg()

    def phi(p):
        z = (p[..., 1] + 1j * p[..., 2]) ** k
        return _stack(p[..., 0], z.real, z.imag)

    return homomorphism_residual(phi, H, H, rng, samples) < 1e-9
