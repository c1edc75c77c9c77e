"""G1/G2 continuity verification across shared patch edges and 4-patch vertices.

Two adjacent patches join with tangent-plane (G1) continuity along a shared
boundary exactly when the cross-boundary derivative of one patch is a
combination ``lambda * cross_a + kappa * tangent_a`` of the other patch's
edge frame.  Curvature (G2) continuity adds a second-derivative relation
with two more scalar link functions mu, nu.  Where four patches meet at a
vertex, the link values (and, for G2, their first derivatives) must satisfy
algebraic compatibility conditions; those are evaluated here as residuals.

Conventions: shared edges must be parametrically matched (the identity
reparametrization); cross-boundary directions always point from patch a
into patch b, so joins cut from one smooth surface get lambda > 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bezier import (
    BernsteinPoly,
    BezierPatch,
    bernstein_basis,
    bounding_diagonal,
    derivative_net,
    eval_grid,
)

__all__ = [
    "G0_TOL",
    "G1_TOL",
    "NORMAL_ANGLE_TOL",
    "G2_TOL",
    "LAMBDA_MIN",
    "RANK_TOL",
    "SOLVE_SAMPLES",
    "VERIFY_SAMPLES",
    "GeometryError",
    "DegenerateParametrizationError",
    "DegenerateLinkError",
    "CornerConsistencyError",
    "PreconditionError",
    "EdgeCorrespondence",
    "EdgeLink",
    "EdgeReport",
    "CornerConfig",
    "CompatReport",
    "g0_gap",
    "solve_edge_link",
    "check_g1_edge",
    "solve_g2_link",
    "check_g2_edge",
    "check_vertex_g1",
    "check_vertex_g2",
    "theorem1_residuals",
    "theorem2_residuals",
    "normal_curvature",
]

# Default tolerances, applied after normalizing by the joint bounding-box
# diagonal of the nets involved (so they are scale-free).
G0_TOL = 1e-9
G1_TOL = 1e-8
NORMAL_ANGLE_TOL = 1e-7  # radians
G2_TOL = 1e-6
LAMBDA_MIN = 1e-8
RANK_TOL = 1e-10
SOLVE_SAMPLES = 33
VERIFY_SAMPLES = 101


class GeometryError(Exception):
    """Base class for geometric failures raised by this package."""


class DegenerateParametrizationError(GeometryError):
    """The tangent vectors of a patch are linearly dependent on an edge."""


class DegenerateLinkError(GeometryError):
    """A lambda link function vanishes (or nearly vanishes) along an edge."""


class CornerConsistencyError(GeometryError):
    """Doubly-determined control points of a construction disagree."""


class PreconditionError(GeometryError):
    """Input patches do not satisfy the precondition of a construction."""


@dataclass(frozen=True)
class EdgeCorrespondence:
    """Identification of one boundary of patch a with one boundary of patch b.

    ``reversed`` means b's edge parameter runs opposite to a's.  The two
    boundary curves must coincide pointwise under this identification;
    ``solve_edge_link`` verifies that before solving.
    """

    a_side: str
    b_side: str
    reversed: bool = False
    a: str = "a"
    b: str = "b"

    def __post_init__(self):
        for s in (self.a_side, self.b_side):
            if s not in ("u0", "u1", "v0", "v1"):
                raise ValueError(f"unknown side {s!r}")


def _side_points(side: str, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(u, v) sample arrays for edge parameter s on the given side."""
    zero = np.zeros_like(s)
    one = np.ones_like(s)
    return {
        "u0": (zero, s),
        "u1": (one, s),
        "v0": (s, zero),
        "v1": (s, one),
    }[side]


def _eval_on_edge(dnet: BezierPatch, side: str, s: np.ndarray) -> np.ndarray:
    us, vs = _side_points(side, s)
    if side[0] == "u":
        grid = eval_grid(dnet, [float(us[0])], vs)
        return grid[0]
    grid = eval_grid(dnet, us, [float(vs[0])])
    return grid[:, 0]


class _EdgeFrame:
    """Derivatives of a patch along one side, in shared edge coordinates.

    ``w`` is the transversal coordinate (positive from patch a into patch
    b), ``t`` the shared edge parameter.  ``into`` is +1/-1 according to
    whether increasing the patch's own cross parameter moves in +w, and
    ``t_sign`` is -1 when the patch's own edge parameter runs against t.
    """

    def __init__(self, patch: BezierPatch, side: str, into: int, t: np.ndarray, t_sign: int):
        s = t if t_sign > 0 else 1.0 - t
        cross = (1, 0) if side[0] == "u" else (0, 1)
        along = (0, 1) if side[0] == "u" else (1, 0)

        def d(iu, jv):
            return _eval_on_edge(derivative_net(patch, iu, jv), side, s)

        self.point = _eval_on_edge(patch, side, s)
        self.w = into * d(*cross)
        self.t = t_sign * d(*along)
        self.ww = d(2 * cross[0], 2 * cross[1])
        self.wt = into * t_sign * d(cross[0] + along[0], cross[1] + along[1])
        self.tt = d(2 * along[0], 2 * along[1])


def _frames(a: BezierPatch, b: BezierPatch, corr: EdgeCorrespondence, t: np.ndarray):
    into_a = +1 if corr.a_side in ("u1", "v1") else -1
    into_b = +1 if corr.b_side in ("u0", "v0") else -1
    fa = _EdgeFrame(a, corr.a_side, into_a, t, +1)
    fb = _EdgeFrame(b, corr.b_side, into_b, t, -1 if corr.reversed else +1)
    return fa, fb


def g0_gap(a: BezierPatch, b: BezierPatch, corr: EdgeCorrespondence,
           n_samples: int = SOLVE_SAMPLES) -> float:
    """Largest distance between the identified boundary curves, scale-normalized."""
    t = np.linspace(0.0, 1.0, n_samples)
    fa, fb = _frames(a, b, corr, t)
    scale = bounding_diagonal(a, b)
    return float(np.max(np.linalg.norm(fa.point - fb.point, axis=1))) / scale


def _require_g0(a, b, corr, n_samples, g0_tol):
    gap = g0_gap(a, b, corr, n_samples)
    if gap > g0_tol:
        raise PreconditionError(
            f"boundary curves of {corr.a}:{corr.a_side} and {corr.b}:{corr.b_side} "
            f"do not coincide (normalized gap {gap:.3e} > {g0_tol:.1e})"
        )


def _fit_bernstein(t: np.ndarray, values: np.ndarray, degree: int) -> BernsteinPoly:
    basis = bernstein_basis(degree, t)
    coeffs, *_ = np.linalg.lstsq(basis, values, rcond=None)
    return BernsteinPoly(degree, coeffs)


@dataclass(frozen=True, eq=False)
class EdgeLink:
    """Link functions along one shared edge, in Bernstein form plus samples.

    ``oop`` holds the per-sample out-of-plane residual of the first-order
    link solve; ``g2_oop`` (after ``solve_g2_link``) the second-order one.
    All residuals are normalized by the joint net diagonal ``scale``.
    """

    lam: BernsteinPoly
    kap: BernsteinPoly
    ts: np.ndarray
    lam_samples: np.ndarray
    kap_samples: np.ndarray
    oop: np.ndarray
    fit_residual: float
    scale: float
    mu: BernsteinPoly | None = None
    nu: BernsteinPoly | None = None
    mu_samples: np.ndarray | None = None
    nu_samples: np.ndarray | None = None
    g2_oop: np.ndarray | None = None

    def __post_init__(self):
        for name in ("ts", "lam_samples", "kap_samples", "oop",
                     "mu_samples", "nu_samples", "g2_oop"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.array(arr, dtype=float)
                arr.flags.writeable = False
                object.__setattr__(self, name, arr)

    @property
    def samples(self):
        """Per-sample tuples (t, lambda, kappa[, mu, nu])."""
        if self.mu_samples is None:
            return list(zip(self.ts, self.lam_samples, self.kap_samples))
        return list(
            zip(self.ts, self.lam_samples, self.kap_samples, self.mu_samples, self.nu_samples)
        )

    @property
    def max_oop(self) -> float:
        return float(np.max(self.oop))


def _solve_in_tangent_basis(e_w, e_t, rhs, scale, rank_tol, what):
    """Least-squares solve rhs = x*e_w + y*e_t per sample; returns x, y, residual."""
    cross = np.cross(e_w, e_t)
    denom = np.linalg.norm(e_w, axis=1) * np.linalg.norm(e_t, axis=1)
    if np.any(denom == 0.0) or np.any(np.linalg.norm(cross, axis=1) < rank_tol * scale**2):
        raise DegenerateParametrizationError(
            f"tangent vectors linearly dependent while solving {what}"
        )
    g = np.empty((len(e_w), 2, 2))
    g[:, 0, 0] = np.einsum("ij,ij->i", e_w, e_w)
    g[:, 0, 1] = g[:, 1, 0] = np.einsum("ij,ij->i", e_w, e_t)
    g[:, 1, 1] = np.einsum("ij,ij->i", e_t, e_t)
    rv = np.stack(
        [np.einsum("ij,ij->i", e_w, rhs), np.einsum("ij,ij->i", e_t, rhs)], axis=1
    )
    xy = np.linalg.solve(g, rv[..., None])[..., 0]
    resid = rhs - xy[:, :1] * e_w - xy[:, 1:] * e_t
    return xy[:, 0], xy[:, 1], np.linalg.norm(resid, axis=1) / scale


def solve_edge_link(
    a: BezierPatch,
    b: BezierPatch,
    corr: EdgeCorrespondence,
    n_samples: int = SOLVE_SAMPLES,
    fit_degrees: tuple[int, int] = (10, 11),
    *,
    g0_tol: float = G0_TOL,
    lambda_min: float = LAMBDA_MIN,
    rank_tol: float = RANK_TOL,
) -> EdgeLink:
    """Solve the first-order link cross_b = lambda*cross_a + kappa*tangent_a.

    At each of ``n_samples`` edge parameters the two scalars are obtained by
    projecting b's cross-boundary derivative onto a's tangent basis; the
    out-of-plane component is recorded as the per-sample residual.  The
    sampled lambda and kappa are then fit by Bernstein polynomials of the
    requested degrees.
    """
    deg_lam, deg_kap = fit_degrees
    if n_samples < max(deg_lam, deg_kap) + 1:
        raise ValueError("n_samples must exceed the largest fit degree")
    _require_g0(a, b, corr, n_samples, g0_tol)
    t = np.linspace(0.0, 1.0, n_samples)
    fa, fb = _frames(a, b, corr, t)
    scale = bounding_diagonal(a, b)
    lam, kap, oop = _solve_in_tangent_basis(
        fa.w, fa.t, fb.w, scale,
        rank_tol, f"edge link {corr.a}:{corr.a_side} ~ {corr.b}:{corr.b_side}",
    )
    if np.any(np.abs(lam) < lambda_min):
        raise DegenerateLinkError(
            f"lambda vanishes along edge {corr.a}:{corr.a_side} ~ {corr.b}:{corr.b_side}"
        )
    if np.any(lam < 0.0):
        warnings.warn(
            f"orientation-reversing join ({corr.a}:{corr.a_side} ~ {corr.b}:{corr.b_side}): "
            "lambda is negative",
            stacklevel=2,
        )
    lam_poly = _fit_bernstein(t, lam, deg_lam)
    kap_poly = _fit_bernstein(t, kap, deg_kap)
    recon = lam_poly(t)[:, None] * fa.w + kap_poly(t)[:, None] * fa.t
    fit_residual = float(np.max(np.linalg.norm(recon - fb.w, axis=1))) / scale
    return EdgeLink(
        lam=lam_poly, kap=kap_poly, ts=t, lam_samples=lam, kap_samples=kap,
        oop=oop, fit_residual=fit_residual, scale=scale,
    )


@dataclass(frozen=True)
class EdgeReport:
    """Outcome of an edge continuity check: the link test plus its oracle."""

    order: int  # 1 or 2
    link_residual: float
    link_ok: bool
    oracle_residual: float  # max normal angle (G1) / normal-curvature gap (G2)
    oracle_ok: bool
    ok: bool
    tol: float
    oracle_tol: float
    link: EdgeLink
    g1: "EdgeReport | None" = None  # for order 2: the underlying G1 report


def check_g1_edge(
    a: BezierPatch,
    b: BezierPatch,
    corr: EdgeCorrespondence,
    tol: float = G1_TOL,
    *,
    angle_tol: float = NORMAL_ANGLE_TOL,
    n_samples: int = SOLVE_SAMPLES,
    n_verify: int = VERIFY_SAMPLES,
    fit_degrees: tuple[int, int] = (10, 11),
) -> EdgeReport:
    """Tangent-plane continuity along a shared edge, tested two ways.

    (i) link test: the out-of-plane residual of ``solve_edge_link`` stays
    below ``tol``; (ii) normal oracle: the angle between the two surface
    normals (as unoriented lines) stays below ``angle_tol`` at ``n_verify``
    shared samples.  The verdict is the conjunction.
    """
    link = solve_edge_link(a, b, corr, n_samples, fit_degrees)
    link_ok = link.max_oop < tol

    t = np.linspace(0.0, 1.0, n_verify)
    fa, fb = _frames(a, b, corr, t)
    na = np.cross(fa.w, fa.t)
    nb = np.cross(fb.w, fb.t)
    na /= np.linalg.norm(na, axis=1, keepdims=True)
    nb /= np.linalg.norm(nb, axis=1, keepdims=True)
    # angle between the normal *lines*; atan2 keeps precision near zero
    sinang = np.linalg.norm(np.cross(na, nb), axis=1)
    cosang = np.abs(np.einsum("ij,ij->i", na, nb))
    max_angle = float(np.max(np.arctan2(sinang, cosang)))
    normal_ok = max_angle < angle_tol

    return EdgeReport(
        order=1, link_residual=link.max_oop, link_ok=link_ok,
        oracle_residual=max_angle, oracle_ok=normal_ok,
        ok=link_ok and normal_ok, tol=tol, oracle_tol=angle_tol, link=link,
    )


def solve_g2_link(
    a: BezierPatch,
    b: BezierPatch,
    corr: EdgeCorrespondence,
    link: EdgeLink,
    n_samples: int = SOLVE_SAMPLES,
    fit_degrees: tuple[int, int] = (10, 10),
    *,
    rank_tol: float = RANK_TOL,
) -> EdgeLink:
    """Solve the second-order link and return a copy of ``link`` with mu, nu.

    Forms R = b_ww - lambda^2 a_ww - 2 lambda kappa a_wt - kappa^2 a_tt per
    sample and resolves R = mu a_w + nu a_t in least squares.  A large
    out-of-plane component of R signals failure of curvature continuity; it
    is recorded, not raised.
    """
    t = np.asarray(link.ts, dtype=float)
    if len(t) != n_samples:
        t = np.linspace(0.0, 1.0, n_samples)
    fa, fb = _frames(a, b, corr, t)
    lam = link.lam(t) if len(t) != len(link.lam_samples) else link.lam_samples
    kap = link.kap(t) if len(t) != len(link.kap_samples) else link.kap_samples
    rhs = (
        fb.ww
        - lam[:, None] ** 2 * fa.ww
        - 2.0 * (lam * kap)[:, None] * fa.wt
        - kap[:, None] ** 2 * fa.tt
    )
    mu, nu, g2_oop = _solve_in_tangent_basis(
        fa.w, fa.t, rhs, link.scale, rank_tol,
        f"second-order link {corr.a}:{corr.a_side} ~ {corr.b}:{corr.b_side}",
    )
    mu_poly = _fit_bernstein(t, mu, fit_degrees[0])
    nu_poly = _fit_bernstein(t, nu, fit_degrees[1])
    return EdgeLink(
        lam=link.lam, kap=link.kap, ts=t,
        lam_samples=link.lam_samples, kap_samples=link.kap_samples,
        oop=link.oop, fit_residual=link.fit_residual, scale=link.scale,
        mu=mu_poly, nu=nu_poly, mu_samples=mu, nu_samples=nu, g2_oop=g2_oop,
    )


def normal_curvature(e_w, e_t, e_ww, e_wt, e_tt, direction, normal) -> np.ndarray:
    """Normal curvature in a 3D tangent ``direction``, per sample.

    The direction is decomposed in the (e_w, e_t) basis by least squares,
    then II/I is evaluated with the supplied unit ``normal`` (one common
    normal must be used when comparing two patches).
    """
    g = np.empty((len(e_w), 2, 2))
    g[:, 0, 0] = np.einsum("ij,ij->i", e_w, e_w)
    g[:, 0, 1] = g[:, 1, 0] = np.einsum("ij,ij->i", e_w, e_t)
    g[:, 1, 1] = np.einsum("ij,ij->i", e_t, e_t)
    rv = np.stack(
        [np.einsum("ij,ij->i", e_w, direction), np.einsum("ij,ij->i", e_t, direction)],
        axis=1,
    )
    xy = np.linalg.solve(g, rv[..., None])[..., 0]
    x, y = xy[:, 0], xy[:, 1]
    big_l = np.einsum("ij,ij->i", e_ww, normal)
    big_m = np.einsum("ij,ij->i", e_wt, normal)
    big_n = np.einsum("ij,ij->i", e_tt, normal)
    first = x**2 * g[:, 0, 0] + 2 * x * y * g[:, 0, 1] + y**2 * g[:, 1, 1]
    second = x**2 * big_l + 2 * x * y * big_m + y**2 * big_n
    return second / first


def check_g2_edge(
    a: BezierPatch,
    b: BezierPatch,
    corr: EdgeCorrespondence,
    tol: float = G2_TOL,
    *,
    g1_tol: float = G1_TOL,
    n_samples: int = SOLVE_SAMPLES,
    fit_degrees: tuple[int, int] = (10, 11),
) -> EdgeReport:
    """Curvature continuity along a shared edge, tested two ways.

    (i) the second-order link residual stays below ``tol``; (ii) curvature
    oracle: the normal curvatures of both patches agree within ``tol`` in
    three pairwise independent tangent directions at the shared samples
    (three directions suffice to pin the full curvature behaviour).
    """
    g1 = check_g1_edge(a, b, corr, g1_tol, n_samples=n_samples, fit_degrees=fit_degrees)
    link = solve_g2_link(a, b, corr, g1.link, n_samples)
    link_ok = float(np.max(link.g2_oop)) < tol

    t = np.asarray(link.ts, dtype=float)
    fa, fb = _frames(a, b, corr, t)
    n = np.cross(fa.w, fa.t)
    n /= np.linalg.norm(n, axis=1, keepdims=True)
    # normalize curvature units by the net diagonal so tol is scale-free
    scale = link.scale
    max_gap = 0.0
    for direction in (fa.w, fa.t, fa.w + fa.t):
        ka = normal_curvature(fa.w, fa.t, fa.ww, fa.wt, fa.tt, direction, n)
        kb = normal_curvature(fb.w, fb.t, fb.ww, fb.wt, fb.tt, direction, n)
        max_gap = max(max_gap, float(np.max(np.abs(ka - kb))) * scale)
    oracle_ok = max_gap < tol

    ok = g1.ok and link_ok and oracle_ok
    return EdgeReport(
        order=2, link_residual=float(np.max(link.g2_oop)), link_ok=link_ok,
        oracle_residual=max_gap, oracle_ok=oracle_ok, ok=ok,
        tol=tol, oracle_tol=tol, link=link, g1=g1,
    )


# ---------------------------------------------------------------------------
# 4-patch vertex compatibility

# Canonical corner arrangement: patch 1 lower-left with the vertex V at its
# (u,v) = (1,1) corner, patch 2 to the right of 1, patch 4 above 1, patch 3
# diagonal with V at its (0,0) corner.  The four links are directed
# 1->2, 1->4, 2->3 and 4->3; V sits at edge parameter 1 on the first two
# and at parameter 0 on the last two.
_CORNER_EDGES = {
    "12": ("p1", "u1", "p2", "u0", 1.0),
    "14": ("p1", "v1", "p4", "v0", 1.0),
    "23": ("p2", "v1", "p3", "v0", 0.0),
    "43": ("p4", "u1", "p3", "u0", 0.0),
}


@dataclass(frozen=True, eq=False)
class CornerConfig:
    """Four patches around a common vertex in the canonical arrangement."""

    p1: BezierPatch
    p2: BezierPatch
    p3: BezierPatch
    p4: BezierPatch
    links: dict = field(default_factory=dict)  # keys "12", "14", "23", "43"
    scale: float = 1.0

    @classmethod
    def from_patches(
        cls,
        p1: BezierPatch,
        p2: BezierPatch,
        p3: BezierPatch,
        p4: BezierPatch,
        n_samples: int = SOLVE_SAMPLES,
        fit_degrees: tuple[int, int] = (10, 11),
        *,
        g0_tol: float = G0_TOL,
    ) -> "CornerConfig":
        patches = {"p1": p1, "p2": p2, "p3": p3, "p4": p4}
        scale = bounding_diagonal(p1, p2, p3, p4)
        v = p1.corner(1, 1)
        for name, other in (("p2", p2.corner(0, 1)), ("p3", p3.corner(0, 0)),
                            ("p4", p4.corner(1, 0))):
            if np.linalg.norm(other - v) > g0_tol * scale:
                raise PreconditionError(f"{name} does not meet the common vertex V")
        links = {}
        for key, (an, a_side, bn, b_side, _) in _CORNER_EDGES.items():
            corr = EdgeCorrespondence(a_side, b_side, a=an, b=bn)
            links[key] = solve_edge_link(
                patches[an], patches[bn], corr, n_samples, fit_degrees, g0_tol=g0_tol
            )
        return cls(p1=p1, p2=p2, p3=p3, p4=p4, links=links, scale=scale)

    def solve_g2(self, n_samples: int = SOLVE_SAMPLES,
                 fit_degrees: tuple[int, int] = (10, 10)) -> "CornerConfig":
        """Return a copy whose links carry the second-order functions mu, nu."""
        patches = {"p1": self.p1, "p2": self.p2, "p3": self.p3, "p4": self.p4}
        links = {}
        for key, (an, a_side, bn, b_side, _) in _CORNER_EDGES.items():
            corr = EdgeCorrespondence(a_side, b_side, a=an, b=bn)
            links[key] = solve_g2_link(
                patches[an], patches[bn], corr, self.links[key], n_samples, fit_degrees
            )
        return CornerConfig(
            p1=self.p1, p2=self.p2, p3=self.p3, p4=self.p4, links=links, scale=self.scale
        )

    def link_values_at_vertex(self) -> dict:
        """Fitted link values (and derivatives) at the vertex V, per edge key."""
        out = {}
        for key, (_, _, _, _, t_v) in _CORNER_EDGES.items():
            link = self.links[key]
            entry = {
                "lam": float(link.lam(t_v)),
                "kap": float(link.kap(t_v)),
                "dlam": float(link.lam.derivative()(t_v)),
                "dkap": float(link.kap.derivative()(t_v)),
            }
            if link.mu is not None:
                entry["mu"] = float(link.mu(t_v))
                entry["nu"] = float(link.nu(t_v))
            out[key] = entry
        return out


def theorem1_residuals(
    lam12: float, kap12: float, lam14: float, kap14: float,
    lam23: float, kap23: float, lam43: float, kap43: float,
) -> tuple[np.ndarray, float]:
    """First-order vertex compatibility residuals from link values at V.

    Returns the four condition residuals plus the lambda-product residual
    |lam12*lam23 - lam14*lam43| that they imply.
    """
    res = np.array([
        abs(kap12 - lam14 * kap43),
        abs(kap14 - lam12 * kap23),
        abs(lam12 - lam43 - kap14 * kap43),
        abs(lam14 - lam23 - kap12 * kap23),
    ])
    product = abs(lam12 * lam23 - lam14 * lam43)
    return res, product


def theorem2_residuals(
    lam12: float, kap12: float, dlam12: float, dkap12: float, mu12: float, nu12: float,
    lam14: float, kap14: float, dlam14: float, dkap14: float, mu14: float, nu14: float,
    lam23: float, kap23: float, dlam23: float, dkap23: float, mu23: float, nu23: float,
    lam43: float, kap43: float, dlam43: float, dkap43: float, mu43: float, nu43: float,
) -> np.ndarray:
    """Second-order vertex compatibility residuals from link data at V."""
    return np.abs(np.array([
        2 * lam43 * dlam14 * kap43 - nu12 + nu43 * lam14 + mu14 * kap43**2,
        2 * lam23 * dlam12 * kap23 - nu14 + nu23 * lam12 + mu12 * kap23**2,
        2 * lam43 * kap43 * dkap14 - mu12 + mu43 + nu43 * kap14 + nu14 * kap43**2,
        2 * lam23 * kap23 * dkap12 - mu14 + mu23 + nu23 * kap12 + nu12 * kap23**2,
        dlam43 - lam23 * dlam12 + lam43 * dkap14 - lam12 * dkap23
        + kap14 * dkap43 - mu12 * kap23 + nu14 * kap43,
        dlam23 - lam43 * dlam14 + lam23 * dkap12 - lam14 * dkap43
        + kap12 * dkap23 - mu14 * kap43 + nu12 * kap23,
    ]))


@dataclass(frozen=True, eq=False)
class CompatReport:
    """Residuals of the vertex compatibility conditions, with verdicts."""

    g1_residuals: np.ndarray  # 4 values
    lambda_product_residual: float
    tol: float
    ok: bool
    g2_residuals: np.ndarray | None = None
    g2_tol: float | None = None
    g2_ok: bool | None = None
    vertex_values: dict | None = None

    @property
    def verdicts(self):
        out = [bool(r < self.tol) for r in self.g1_residuals]
        out.append(bool(self.lambda_product_residual < self.tol))
        if self.g2_residuals is not None:
            out.extend(bool(r < self.g2_tol) for r in self.g2_residuals)
        return out


def _vertex_scalars(config: CornerConfig, lambda_min: float):
    vals = config.link_values_at_vertex()
    for key, entry in vals.items():
        if abs(entry["lam"]) < lambda_min:
            raise DegenerateLinkError(f"lambda of link ({key}) vanishes at the vertex")
    return vals


def check_vertex_g1(config: CornerConfig, tol: float = G1_TOL,
                    *, lambda_min: float = LAMBDA_MIN) -> CompatReport:
    """First-order compatibility of the four link functions at the vertex."""
    vals = _vertex_scalars(config, lambda_min)
    res, product = theorem1_residuals(
        vals["12"]["lam"], vals["12"]["kap"],
        vals["14"]["lam"], vals["14"]["kap"],
        vals["23"]["lam"], vals["23"]["kap"],
        vals["43"]["lam"], vals["43"]["kap"],
    )
    ok = bool(np.all(res < tol) and product < tol)
    return CompatReport(
        g1_residuals=res, lambda_product_residual=product, tol=tol, ok=ok,
        vertex_values=vals,
    )


def check_vertex_g2(config: CornerConfig, tol: float = G2_TOL,
                    *, g1_tol: float = G1_TOL,
                    lambda_min: float = LAMBDA_MIN) -> CompatReport:
    """Second-order compatibility at the vertex; needs mu, nu on all links."""
    for key, link in config.links.items():
        if link.mu is None:
            raise PreconditionError(
                f"link ({key}) has no second-order data; call CornerConfig.solve_g2 first"
            )
    g1 = check_vertex_g1(config, g1_tol, lambda_min=lambda_min)
    vals = g1.vertex_values
    args = []
    for key in ("12", "14", "23", "43"):
        e = vals[key]
        args.extend([e["lam"], e["kap"], e["dlam"], e["dkap"], e["mu"], e["nu"]])
    res = theorem2_residuals(*args)
    g2_ok = bool(np.all(res < tol))
    return CompatReport(
        g1_residuals=g1.g1_residuals,
        lambda_product_residual=g1.lambda_product_residual,
        tol=g1.tol, ok=g1.ok and g2_ok,
        g2_residuals=res, g2_tol=tol, g2_ok=g2_ok, vertex_values=vals,
    )
