"""Tensor-product Bezier patches and Bernstein-basis primitives.

Control nets are numpy arrays of shape ``(degree_u + 1, degree_v + 1, 3)``,
indexed ``net[i, j]`` with ``i`` running along the u direction and ``j``
along v.  Every operation here is pure: inputs are never mutated, results
are fresh arrays.  Derivatives are computed from difference nets, which is
exact for polynomial patches; finite differences are reserved for test
oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BezierPatch",
    "BernsteinPoly",
    "TriangleMesh",
    "binom",
    "bernstein_eval",
    "bernstein_basis",
    "patch_eval",
    "eval_grid",
    "derivative_net",
    "patch_derivative",
    "normal_vector",
    "elevation_matrix",
    "elevate_row",
    "elevate_cubic_row_to_quintic",
    "boundary_row",
    "split_patch",
    "split_grid",
    "tessellate",
    "flip_u",
    "flip_v",
    "transpose_patch",
    "transform_patch",
    "bounding_diagonal",
]

# Degree 16 covers the (6,6) constructions, their derivatives and the
# highest Bernstein fit degrees used by the continuity solvers.
_MAX_DEGREE = 16
_BINOM = tuple(tuple(math.comb(n, k) for k in range(n + 1)) for n in range(_MAX_DEGREE + 1))

SIDES = ("u0", "u1", "v0", "v1")


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); 0 outside the valid range."""
    if k < 0 or k > n:
        return 0
    if n <= _MAX_DEGREE:
        return _BINOM[n][k]
    return math.comb(n, k)


def bernstein_eval(n: int, i: int, u: float) -> float:
    """Value of the i-th Bernstein polynomial of degree n at u."""
    if not 0 <= i <= n:
        raise ValueError(f"Bernstein index {i} out of range for degree {n}")
    return binom(n, i) * (1.0 - u) ** (n - i) * u**i


def bernstein_basis(n: int, t) -> np.ndarray:
    """All degree-n Bernstein polynomials at the parameters t.

    Returns an array of shape ``(len(t), n + 1)``; scalar ``t`` gives
    shape ``(n + 1,)``.
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    k = np.arange(n + 1)
    coeffs = np.array([binom(n, i) for i in k], dtype=float)
    out = coeffs * (1.0 - t[:, None]) ** (n - k) * t[:, None] ** k
    return out[0] if scalar else out


@dataclass(frozen=True, eq=False)
class BernsteinPoly:
    """Scalar polynomial in Bernstein form on [0, 1]."""

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size != self.degree + 1:
            raise ValueError(
                f"expected {self.degree + 1} Bernstein ordinates, got shape {c.shape}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("Bernstein ordinates must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __call__(self, t):
        return bernstein_basis(self.degree, t) @ self.coeffs

    def derivative(self) -> "BernsteinPoly":
        if self.degree == 0:
            return BernsteinPoly(0, np.zeros(1))
        d = self.degree * np.diff(self.coeffs)
        return BernsteinPoly(self.degree - 1, d)


@dataclass(frozen=True, eq=False)
class BezierPatch:
    """Rectangular control net of 3D points with bi-degree (degree_u, degree_v)."""

    degree_u: int
    degree_v: int
    net: np.ndarray

    def __post_init__(self):
        if self.degree_u < 1 or self.degree_v < 1:
            raise ValueError("patch degrees must be >= 1")
        net = np.array(self.net, dtype=float)
        expect = (self.degree_u + 1, self.degree_v + 1, 3)
        if net.shape != expect:
            raise ValueError(f"net shape {net.shape} does not match degrees, expected {expect}")
        if not np.all(np.isfinite(net)):
            raise ValueError("control net contains non-finite coordinates")
        net.flags.writeable = False
        object.__setattr__(self, "net", net)

    @classmethod
    def from_net(cls, net) -> "BezierPatch":
        net = np.asarray(net, dtype=float)
        return cls(net.shape[0] - 1, net.shape[1] - 1, net)

    def __call__(self, u: float, v: float) -> np.ndarray:
        return patch_eval(self, u, v)

    def corner(self, iu: int, jv: int) -> np.ndarray:
        """Corner control point; iu, jv in {0, 1} select the u/v end."""
        return self.net[-1 if iu else 0, -1 if jv else 0].copy()


@dataclass(frozen=True, eq=False)
class TriangleMesh:
    vertices: np.ndarray  # (N, 3)
    faces: np.ndarray  # (M, 3) int, CCW as seen from the +normal side

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        f = np.array(self.faces, dtype=int)
        v.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "faces", f)


def _check_domain(u: float, v: float) -> None:
    if not (0.0 <= u <= 1.0 and 0.0 <= v <= 1.0):
        raise ValueError(f"parameters ({u}, {v}) outside the unit square")


def _de_casteljau(points: np.ndarray, t: float) -> np.ndarray:
    pts = points
    while pts.shape[0] > 1:
        pts = (1.0 - t) * pts[:-1] + t * pts[1:]
    return pts[0]


def patch_eval(p: BezierPatch, u: float, v: float) -> np.ndarray:
    """Evaluate the patch at (u, v) by de Casteljau reduction."""
    _check_domain(u, v)
    rows = _de_casteljau(np.swapaxes(p.net, 0, 1), v)  # reduce v first
    return _de_casteljau(rows, u)


def eval_grid(p: BezierPatch, us, vs) -> np.ndarray:
    """Basis-sum evaluation on a tensor grid; returns (len(us), len(vs), 3).

    Independent of the de Casteljau path, which makes the two usable as
    cross-checks of one another.
    """
    us = np.atleast_1d(np.asarray(us, dtype=float))
    vs = np.atleast_1d(np.asarray(vs, dtype=float))
    if us.min() < 0.0 or us.max() > 1.0 or vs.min() < 0.0 or vs.max() > 1.0:
        raise ValueError("sample parameters outside the unit square")
    bu = bernstein_basis(p.degree_u, us)
    bv = bernstein_basis(p.degree_v, vs)
    return np.einsum("ai,ijc,bj->abc", bu, p.net, bv)


def derivative_net(p: BezierPatch, du: int = 0, dv: int = 0) -> BezierPatch:
    """Difference-net (hodograph) patch whose evaluation is the partial derivative."""
    net = p.net
    n, m = p.degree_u, p.degree_v
    for _ in range(du):
        if n == 0:
            net = np.zeros_like(net)
            break
        net = n * (net[1:] - net[:-1])
        n -= 1
    for _ in range(dv):
        if m == 0:
            net = np.zeros_like(net)
            break
        net = m * (net[:, 1:] - net[:, :-1])
        m -= 1
    # degree-0 vector fields are stored as degree-1 patches with equal rows
    if n == 0:
        net = np.repeat(net, 2, axis=0)
        n = 1
    if m == 0:
        net = np.repeat(net, 2, axis=1)
        m = 1
    return BezierPatch(n, m, net)


def patch_derivative(p: BezierPatch, u: float, v: float, du: int, dv: int) -> np.ndarray:
    """Exact partial derivative d^(du+dv) r / du^du dv^dv at (u, v)."""
    if du not in (0, 1, 2) or dv not in (0, 1, 2) or du + dv > 2:
        raise ValueError(f"unsupported derivative order ({du}, {dv})")
    _check_domain(u, v)
    return patch_eval(derivative_net(p, du, dv), u, v)


def normal_vector(p: BezierPatch, u: float, v: float) -> np.ndarray:
    """Unnormalized surface normal r_u x r_v at (u, v)."""
    return np.cross(patch_derivative(p, u, v, 1, 0), patch_derivative(p, u, v, 0, 1))


def elevation_matrix(n: int, target: int) -> np.ndarray:
    """Matrix E with elevated = E @ points, raising degree n to target exactly."""
    if target < n:
        raise ValueError(f"cannot lower degree: {n} -> {target}")
    r = target - n
    mat = np.zeros((target + 1, n + 1))
    for i in range(target + 1):
        den = binom(target, i)
        for j in range(max(0, i - r), min(n, i) + 1):
            mat[i, j] = binom(n, j) * binom(r, i - j) / den
    return mat


def elevate_row(points, target_degree: int) -> np.ndarray:
    """Re-express a Bezier control row exactly at a higher degree."""
    pts = np.asarray(points, dtype=float)
    return elevation_matrix(pts.shape[0] - 1, target_degree) @ pts


def elevate_cubic_row_to_quintic(row) -> np.ndarray:
    """Cubic-to-quintic degree elevation of a 4-point control row."""
    pts = np.asarray(row, dtype=float)
    if pts.shape[0] != 4:
        raise ValueError(f"expected 4 control points, got {pts.shape[0]}")
    return elevate_row(pts, 5)


def boundary_row(p: BezierPatch, side: str, offset: int = 0) -> np.ndarray:
    """Control row on (offset 0), or inward from (offset >= 1), the given side.

    Ordered in increasing parameter of the free direction.
    """
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}, expected one of {SIDES}")
    if side[0] == "u":
        if not 0 <= offset <= p.degree_u:
            raise ValueError(f"offset {offset} out of range for degree {p.degree_u}")
        idx = offset if side == "u0" else p.degree_u - offset
        return p.net[idx].copy()
    if not 0 <= offset <= p.degree_v:
        raise ValueError(f"offset {offset} out of range for degree {p.degree_v}")
    idx = offset if side == "v0" else p.degree_v - offset
    return p.net[:, idx].copy()


def _split_axis0(net: np.ndarray, t: float):
    n = net.shape[0] - 1
    left = [net[0]]
    right = [net[-1]]
    pts = net
    for _ in range(n):
        pts = (1.0 - t) * pts[:-1] + t * pts[1:]
        left.append(pts[0])
        right.append(pts[-1])
    return np.stack(left), np.stack(right[::-1])


def split_patch(p: BezierPatch, u: float | None = None, v: float | None = None):
    """De Casteljau subdivision at u and/or v; returns the sub-patch tuple.

    One parameter gives two patches (low, high); both give four in the
    order (low-u low-v, high-u low-v, low-u high-v, high-u high-v).
    """
    if u is None and v is None:
        raise ValueError("provide a split parameter u and/or v")
    if u is not None:
        if not 0.0 < u < 1.0:
            raise ValueError("split parameter u must lie strictly inside (0, 1)")
        la, ra = _split_axis0(p.net, u)
        left, right = BezierPatch.from_net(la), BezierPatch.from_net(ra)
        if v is None:
            return left, right
        ll, lh = split_patch(left, v=v)
        rl, rh = split_patch(right, v=v)
        return ll, rl, lh, rh
    if not 0.0 < v < 1.0:
        raise ValueError("split parameter v must lie strictly inside (0, 1)")
    la, ra = _split_axis0(np.swapaxes(p.net, 0, 1), v)
    return (
        BezierPatch.from_net(np.swapaxes(la, 0, 1)),
        BezierPatch.from_net(np.swapaxes(ra, 0, 1)),
    )


def split_grid(p: BezierPatch, u_breaks, v_breaks):
    """Split a patch into a cell grid; cells[i][j] covers u-cell i, v-cell j."""

    def split_1d(patch, breaks, axis):
        segs, lo = [], 0.0
        rest = patch
        for b in breaks:
            t = (b - lo) / (1.0 - lo)
            if axis == "u":
                left, rest = split_patch(rest, u=t)
            else:
                left, rest = split_patch(rest, v=t)
            segs.append(left)
            lo = b
        segs.append(rest)
        return segs

    u_breaks = sorted(u_breaks)
    v_breaks = sorted(v_breaks)
    if any(not 0.0 < b < 1.0 for b in u_breaks + v_breaks):
        raise ValueError("break parameters must lie strictly inside (0, 1)")
    columns = split_1d(p, u_breaks, "u")
    return [split_1d(col, v_breaks, "v") for col in columns]


def tessellate(p: BezierPatch, nu: int, nv: int) -> TriangleMesh:
    """Sample an (nu+1) x (nv+1) grid on the patch and triangulate it."""
    if nu < 1 or nv < 1:
        raise ValueError("tessellation requires nu, nv >= 1")
    us = np.linspace(0.0, 1.0, nu + 1)
    vs = np.linspace(0.0, 1.0, nv + 1)
    verts = eval_grid(p, us, vs).reshape(-1, 3)
    faces = []
    for i in range(nu):
        for j in range(nv):
            a = i * (nv + 1) + j
            b = (i + 1) * (nv + 1) + j
            c = (i + 1) * (nv + 1) + j + 1
            d = i * (nv + 1) + j + 1
            faces.append((a, b, c))
            faces.append((a, c, d))
    return TriangleMesh(verts, np.array(faces, dtype=int))


def flip_u(p: BezierPatch) -> BezierPatch:
    """Reverse the u parameter: q(u, v) = p(1 - u, v)."""
    return BezierPatch(p.degree_u, p.degree_v, p.net[::-1].copy())


def flip_v(p: BezierPatch) -> BezierPatch:
    """Reverse the v parameter: q(u, v) = p(u, 1 - v)."""
    return BezierPatch(p.degree_u, p.degree_v, p.net[:, ::-1].copy())


def transpose_patch(p: BezierPatch) -> BezierPatch:
    """Swap the parameter roles: q(u, v) = p(v, u)."""
    return BezierPatch(p.degree_v, p.degree_u, np.swapaxes(p.net, 0, 1).copy())


def transform_patch(p: BezierPatch, matrix=None, shift=None) -> BezierPatch:
    """Apply an affine map x -> matrix @ x + shift to the control net."""
    net = p.net
    if matrix is not None:
        net = net @ np.asarray(matrix, dtype=float).T
    if shift is not None:
        net = net + np.asarray(shift, dtype=float)
    return BezierPatch(p.degree_u, p.degree_v, net)


def bounding_diagonal(*patches: BezierPatch) -> float:
    """Diagonal of the joint axis-aligned bounding box of the control nets.

    Used to normalize residuals so tolerances are scale-free.
    """
    pts = np.concatenate([p.net.reshape(-1, 3) for p in patches])
    d = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    return d if d > 0.0 else 1.0
