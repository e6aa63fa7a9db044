"""Developing maps of flat affine Lie groups by parallel transport and quadrature.

The connection is ∇_{e_i+} e_j+ = Σ_k p^k_ij e_k+ in the left-invariant frame.
Along a path with frame velocity u(t), a parallel field has components
X(t) = Φ(t) X(0) with Φ' = -A(u) Φ and A(u)_kj = Σ_i u^i p^k_ij.  The coframe
η pulled back to the base point is M = Φ^{-1}, which solves M' = M A(u), and
the developing map is D(x) = ∫ M u dt.  Both are advanced together with one
classical RK4 stepper; the step count is doubled until a Richardson estimate
meets the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import ProductTable, operator_relations_check
from .expr import numeric_jacobian
from .groups import ChartedGroup
from .linalg import to_scalar


class NotFlatAffine(ValueError):
    pass


class ChartExit(RuntimeError):
    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


class ToleranceNotMet(RuntimeError):
    pass


class BranchError(ValueError):
    pass


@dataclass(frozen=True)
class FlatAffineGroup:
    group: ChartedGroup
    connection: ProductTable
    name: str = ""
    coeffs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.connection.dim != self.group.dim:
            raise NotFlatAffine("connection and group dimensions differ")
        if not operator_relations_check(self.connection, self.group.algebra):
            raise NotFlatAffine(f"{self.name or 'connection'} is not flat and torsion-free for {self.group.name}")
        object.__setattr__(self, "coeffs", self.connection.as_float_array())  # [i, j, k] = p^k_ij

    @property
    def dim(self) -> int:
        return self.group.dim

    def operator(self, u: np.ndarray) -> np.ndarray:
        """A(u)[..., k, j] = Σ_i u^i p^k_ij."""
        return np.einsum("...i,ijk->...kj", u, self.coeffs)

    def quadratic(self, u: np.ndarray) -> np.ndarray:
        """Σ_ij u^i u^j p^k_ij."""
        return np.einsum("...i,...j,ijk->...k", u, u, self.coeffs)


@dataclass(frozen=True)
class PathSpec:
    """Polyline from ``base`` through ``via`` to the target; default is the straight segment."""

    base: np.ndarray | None = None
    via: tuple = ()

    def vertices(self, fa: FlatAffineGroup, target: np.ndarray) -> list[np.ndarray]:
        base = fa.group.identity if self.base is None else np.asarray(self.base, float)
        pts = [np.broadcast_to(base, target.shape)]
        pts += [np.broadcast_to(np.asarray(v, float), target.shape) for v in self.via]
        pts.append(target)
        return pts


@dataclass
class DevelopmentResult:
    value: np.ndarray
    error: float
    steps: int
    coframe: np.ndarray  # M at the endpoint: η(v) = coframe @ frame(x)^{-1} v

    def eta(self, group: ChartedGroup, x) -> np.ndarray:
        """η at x as a matrix acting on chart tangent vectors."""
        return self.coframe @ np.linalg.inv(group.frame(x))


def _segment_run(fa: FlatAffineGroup, a: np.ndarray, b: np.ndarray, M: np.ndarray, D: np.ndarray,
                 T: np.ndarray | None, steps: int, check: Callable):
    """RK4 on (M, D, X) along x(t) = a + t(b - a), t ∈ [0, 1]."""
    G = fa.group
    vel = b - a
    h = 1.0 / steps

    def u_at(t):
        x = a + t * vel
        if not np.all(check(x)):
            raise ChartExit(f"path leaves the chart of {G.name}")
        return np.linalg.solve(G.frame(x), vel[..., None])[..., 0]

    def rhs(M, u):
        A = fa.operator(u)
        return M @ A, np.einsum("...kj,...j->...k", M, u), A

    u0 = u_at(0.0)
    for s in range(steps):
        t = s * h
        um = u_at(t + 0.5 * h)
        u1 = u_at(t + h)
        k1M, k1D, A1 = rhs(M, u0)
        k2M, k2D, Am = rhs(M + 0.5 * h * k1M, um)
        k3M, k3D, _ = rhs(M + 0.5 * h * k2M, um)
        k4M, k4D, A4 = rhs(M + h * k3M, u1)
        if T is not None:
            # Φ' = -A Φ for transported components
            q1 = -np.einsum("...kj,...j->...k", A1, T)
            q2 = -np.einsum("...kj,...j->...k", Am, T + 0.5 * h * q1)
            q3 = -np.einsum("...kj,...j->...k", Am, T + 0.5 * h * q2)
            q4 = -np.einsum("...kj,...j->...k", A4, T + h * q3)
            T = T + h / 6 * (q1 + 2 * q2 + 2 * q3 + q4)
        M = M + h / 6 * (k1M + 2 * k2M + 2 * k3M + k4M)
        D = D + h / 6 * (k1D + 2 * k2D + 2 * k3D + k4D)
        u0 = u1
    return M, D, T


def _run(fa, target, path, steps, v=None):
    n = fa.dim
    verts = path.vertices(fa, target)
    batch = target.shape[:-1]
    M = np.broadcast_to(np.eye(n), batch + (n, n)).copy()
    D = np.zeros(batch + (n,))
    T = None if v is None else np.broadcast_to(np.asarray(v, float), batch + (n,)).copy()
    for a, b in zip(verts[:-1], verts[1:]):
        M, D, T = _segment_run(fa, a, b, M, D, T, steps, fa.group.contains)
    return M, D, T


def develop(fa: FlatAffineGroup, x, tol: float = 1e-8, path: PathSpec | None = None,
            min_steps: int = 8, max_steps: int = 1 << 14) -> DevelopmentResult:
    """D(x) for one point or a batch (..., n); the error bound covers the whole batch."""
    path = path or PathSpec()
    x = np.asarray(x, float)
    base = fa.group.identity if path.base is None else np.asarray(path.base, float)
    if not path.via and np.array_equal(np.broadcast_to(base, x.shape), x):
        n = fa.dim
        return DevelopmentResult(np.zeros(x.shape), 0.0, 0, np.broadcast_to(np.eye(n), x.shape[:-1] + (n, n)).copy())
    if not np.all(fa.group.contains(x)):
        raise ChartExit(f"target outside the chart of {fa.group.name}")
    steps = min_steps
    M, D, _ = _run(fa, x, path, steps)
    while True:
        M2, D2, _ = _run(fa, x, path, 2 * steps)
        err = float(np.max(np.abs(D2 - D))) / 15.0
        steps *= 2
        M, D = M2, D2
        if err <= tol:
            return DevelopmentResult(D, err, steps, M)
        if steps >= max_steps:
            raise ToleranceNotMet(f"error {err:.3g} above {tol:g} with {steps} steps")


def parallel_transport(fa: FlatAffineGroup, x, v, path: PathSpec | None = None, tol: float = 1e-10,
                       min_steps: int = 16, max_steps: int = 1 << 14) -> np.ndarray:
    """Frame components at x of the parallel field with components v at the base point."""
    path = path or PathSpec()
    x = np.asarray(x, float)
    steps = min_steps
    _, _, T = _run(fa, x, path, steps, v)
    while True:
        _, _, T2 = _run(fa, x, path, 2 * steps, v)
        steps *= 2
        if float(np.max(np.abs(T2 - T))) / 15.0 <= tol:
            return T2
        if steps >= max_steps:
            raise ToleranceNotMet("transport did not converge")
        T = T2


# ---- geodesics ---------------------------------------------------------------------------

@dataclass
class Trajectory:
    times: np.ndarray
    points: np.ndarray
    velocities: np.ndarray  # frame components


def geodesic(fa: FlatAffineGroup, start, v0, T: float = 1.0, steps: int = 400, blowup: float = 1e8) -> Trajectory:
    """u' = -Σ u^i u^j p^k_ij e_k, x' = frame(x) u, integrated with RK4.

    Raises ChartExit (with the last safe time) when the trajectory leaves the
    chart or the velocity blows up before T.
    """
    G = fa.group
    x = np.asarray(start, float).copy()
    u = np.asarray(v0, float).copy()
    h = T / steps

    def f(x, u):
        return G.frame(x) @ u, -fa.quadratic(u)

    times, pts, vels = [0.0], [x.copy()], [u.copy()]
    for s in range(steps):
        k1x, k1u = f(x, u)
        k2x, k2u = f(x + 0.5 * h * k1x, u + 0.5 * h * k1u)
        k3x, k3u = f(x + 0.5 * h * k2x, u + 0.5 * h * k2u)
        k4x, k4u = f(x + h * k3x, u + h * k3u)
        x = x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        u = u + h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u)
        t = (s + 1) * h
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(u))) or not G.contains(x) or np.max(np.abs(u)) > blowup:
            raise ChartExit(f"geodesic leaves the chart of {G.name} near t = {t:.6g}", times[-1])
        times.append(t)
        pts.append(x.copy())
        vels.append(u.copy())
    return Trajectory(np.array(times), np.array(pts), np.array(vels))


def chart_exit_time(fa: FlatAffineGroup, start, v0, T: float = 2.0, steps: int = 4000) -> float | None:
    try:
        geodesic(fa, start, v0, T, steps)
    except ChartExit as exc:
        return exc.time
    return None


def collinearity_residual(points: np.ndarray) -> float:
    """Max distance to the best-fit line divided by polyline length."""
    pts = np.asarray(points, float)
    length = float(np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1)))
    if length == 0:
        return 0.0
    c = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - c)
    d = vt[0]
    rel = pts - c
    dist = np.linalg.norm(rel - np.outer(rel @ d, d), axis=1)
    return float(np.max(dist)) / length


# ---- affine representation -----------------------------------------------------------

@dataclass
class AffineRep:
    Q: np.ndarray
    L: np.ndarray

    def __call__(self, v):
        return self.Q + np.einsum("kj,...j->...k", self.L, v)

    def compose(self, other: "AffineRep") -> "AffineRep":
        return AffineRep(self.Q + self.L @ other.Q, self.L @ other.L)


def affine_rep(fa: FlatAffineGroup, F: Callable, tol: float = 1e-10) -> AffineRep:
    """A(F) with D∘F = A(F)∘D: Q = D(F(p)); L = dD at F(p) ∘ dF at p ∘ (dD at p)^{-1}."""
    G = fa.group
    p = np.asarray(G.identity, float)
    Fp = np.asarray(F(p), float)
    res = develop(fa, Fp, tol=tol)
    eta_F = res.eta(G, Fp)
    J = numeric_jacobian(F, p)
    L = eta_F @ J @ G.frame(p)
    return AffineRep(res.value, L)


def diagram_residual(fa: FlatAffineGroup, F: Callable, A: AffineRep, points, tol: float = 1e-10) -> float:
    pts = np.atleast_2d(np.asarray(points, float))
    img = np.asarray(F(pts), float)
    lhs = develop(fa, img, tol=tol).value
    rhs = A(develop(fa, pts, tol=tol).value)
    return float(np.max(np.abs(lhs - rhs)))


def develop_jacobian(fa: FlatAffineGroup, x, tol: float = 1e-11, rel_step: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian of the numeric developing map, for one point or a batch.

    All perturbed points go through a single batched develop call so that the
    quadrature error is the same smooth function on both sides of each difference.
    """
    x = np.asarray(x, float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    m, n = X.shape
    h = rel_step * np.maximum(1.0, np.abs(X))  # (m, n)
    E = np.eye(n)
    plus = X[:, None, :] + h[:, :, None] * E[None]
    minus = X[:, None, :] - h[:, :, None] * E[None]
    vals = develop(fa, np.concatenate([plus, minus], axis=1).reshape(-1, n), tol=tol).value
    vals = vals.reshape(m, 2 * n, n)
    J = (vals[:, :n, :] - vals[:, n:, :]) / (2 * h[:, :, None])  # [m, j, k] = dD_k/dx_j
    J = np.transpose(J, (0, 2, 1))
    return J[0] if single else J


# ---- closed forms ---------------------------------------------------------------------------

def _aff_nabla2(alpha, x, y, branch):
    if branch == "generic" and alpha in (0, -1):
        raise BranchError("the generic D_2 expression excludes alpha = 0, -1")
    if alpha == 0:
        return np.log(x), y
    if alpha == -1:
        return 1 - 1 / x, (1 + y) / x - 1 + np.log(x)
    a = alpha
    return (x ** a - 1) / a, x ** a * (y + 1) - (a * x ** (a + 1) + 1) / (a + 1)


def _aff_nabla1(alpha, x, y, branch):
    if alpha == 0:
        raise BranchError("D_1 is not defined for alpha = 0 by the displayed branches")
    if branch == "generic" and alpha == 1:
        raise BranchError("the generic D_1 expression excludes alpha = 1")
    if alpha == 1:
        return x - 1, y + 1 + x * (np.log(x) - 1)
    a = alpha
    return (x ** a - 1) / a, y + (x ** a - a * x) / (a - 1) + 1


def d4_printed(x1, x2, x3, x4):
    """The four printed component formulas of the ∇4 developing map (x4 ≠ 0)."""
    c, s = np.cos(x4), np.sin(x4)
    r2 = x2 ** 2 + x3 ** 2
    F1 = (x1 - (x2 + 5 * x4 + 2) / 4 - (2 * x3 * x4 + x3) / (4 * x4)
          + s / (4 * x4 ** 2) * (2 * x2 ** 2 + 2 * x2 * x4 * (x4 + 2) + 2 * x3 ** 2 - x3 * (x4 - 6) * x4 + 3 * x4 ** 2)
          - c / (4 * x4) * (2 * x2 ** 2 + 2 * x2 * x4 + (2 * x3 - 1) * (x3 + 2 * x4)))
    F2 = (-x4 / 2 + r2 / (2 * x4 ** 2) * (c - 1)
          + (4 * x2 - 2 * x3 + 2 * (x2 + 2 * x3 + 2) * s + (4 * x2 - 4 * x3 + 3) * c - 3) / 8
          + ((2 * x2 ** 2 + x3 * (2 * x3 + 3)) * s + 4 * x3 * (c - 1)) / (4 * x4))
    F3 = ((r2 / (4 * x4 ** 2) + (4 * x2 - 2 * x3 - 7) / 4 - x2 / x4) * c
          + (2 * x2 ** 2 + x2 * (x4 - 4) + 2 * (x3 * (x3 + x4 + 2) + x4)) * s / (2 * x4)
          - r2 / x4 ** 2 + (7 - 2 * x3) / 4 + x2 / x4 + x2 - x4)
    F4 = (((2 * x3 + 5) / 4 - r2 / x4 ** 2 - x2) * c
          - (r2 / x4 - (2 * x2 - x3) / x4 + x2 / 2 + x3) * s
          + r2 / x4 ** 2 + (2 * x3 - 5) / 4 + x4 - x2)
    return F1, F2, F3, F4


def d4_printed_coframe(x) -> np.ndarray:
    """The printed η = (ω1, ..., ω4) for ∇4 as a 4x4 matrix on chart tangent vectors."""
    _, x2, x3, x4 = np.asarray(x, float)
    c, s = np.cos(x4), np.sin(x4)
    w1 = [1.0, 0.5 * ((1 - x3) * c + (1 + x2) * s - 0.5), 0.5 * ((1 + x2) * c + (x3 - 1) * s - 1),
          0.5 * ((1.5 + x2 - x3 / 2) * c + (x2 / 2 + x3 - 0.5) * s - 1.25)]
    w2 = [0.0, 0.5 * ((1 + x2) * c + (0.5 + x3) * s + 1), 0.5 * ((0.5 + x3) * c - (x2 + 1) * s - 0.5),
          0.5 * ((1 + x2 / 2 + x3) * c + (x3 - x2 - 0.75) * s - 1)]
    w3 = [0.0, (x2 - 1) * c + (1.5 + x3) * s + 1, (1.5 + x3) * c + (1 - x2) * s - 0.5,
          (1 + x2 / 2 + x3) * c + (x3 / 2 - x2 + 1.75) * s - 1]
    w4 = [0.0, (1 - x2) * c - (0.5 + x3) * s - 1, 0.5 - (0.5 + x3) * c + (x2 - 1) * s,
          1 - (x2 / 2 + x3) * c + (x2 - x3 / 2 - 1.25) * s]
    return np.array([w1, w2, w3, w4])


FAMILIES = ("aff:nabla1", "aff:nabla2", "oscillator:F1", "oscillator:F2", "oscillator:F3", "oscillator:F4")


def closed_form_development(family: str, params: dict | None, x, branch: str | None = None) -> np.ndarray:
    """Evaluate a displayed developing map; ``branch='generic'`` refuses the special cases."""
    params = {k: float(to_scalar(v)) for k, v in (params or {}).items()}
    x = np.asarray(x, float)
    cols = np.moveaxis(x, -1, 0)
    if family in ("aff:nabla1", "aff:nabla2"):
        xx, yy = cols
        if np.any(xx <= 0):
            raise ChartExit("x must be positive on Aff(R)_0")
        alpha = params.get("alpha", 0 if family == "aff:nabla2" else 1)
        fn = _aff_nabla1 if family == "aff:nabla1" else _aff_nabla2
        out = fn(alpha, xx, yy, branch)
    elif family == "oscillator:F1":
        t, s = params.get("t", 0), params.get("s", 0)
        x1, x2, x3, x4 = cols
        out = (x1 + t / 2 * (x2 ** 2 + x3 ** 2) + s / 2 * x4 ** 2, x2, x3, x4)
    elif family == "oscillator:F2":
        a, t = params.get("alpha", 1), params.get("t", 0)
        if a == 0:
            raise BranchError("D_{2,alpha,t} requires alpha != 0")
        x1, x2, x3, x4 = cols
        out = (x1 + t / 2 * (x2 ** 2 + x3 ** 2), x2, x3, np.expm1(a * x4) / a)
    elif family == "oscillator:F3":
        x1, x2, x3, x4 = cols
        out = (x1, x2, x3, x4 + 0.5 * (x2 ** 2 + x3 ** 2))
    elif family == "oscillator:F4":
        if np.any(cols[3] == 0):
            raise BranchError("the printed D_4 components are singular at x4 = 0")
        out = d4_printed(*cols)
    else:
        raise KeyError(f"no closed form for {family!r}; choose from {FAMILIES}")
    return np.stack(np.broadcast_arrays(*[np.asarray(c, float) for c in out]), axis=-1)


def flat_affine(group: ChartedGroup, connection: ProductTable, name: str = "") -> FlatAffineGroup:
    return FlatAffineGroup(group, connection, name)


def catalog_flat_affine(family: str, params: dict | None = None) -> FlatAffineGroup:
    """FlatAffineGroup for a catalog connection name such as 'aff:nabla2' or 'oscillator:F3'."""
    from . import catalog, groups

    entry = catalog.get(family, params)
    gname = family.split(":")[0]
    G = groups.get(gname)
    if entry.product is None:
        raise KeyError(f"{family} carries no connection")
    return FlatAffineGroup(G, entry.product, family)


def grid_points(bounds: Sequence[tuple[float, float]], counts: Sequence[int]) -> np.ndarray:
    axes = [np.linspace(lo, hi, k) for (lo, hi), k in zip(bounds, counts)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def max_deviation(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


__all__ = [name for name in dir() if not name.startswith("_") and name not in ("np", "annotations")]
