"""Constructive algorithms: G1 row propagation, fourth-patch completion,
hole filling at bi-degree (5,5) and (6,6), and fillet surfaces.

All constructions consume bi-cubic neighbours whose shared edges carry
polynomial link functions;  the transverse control rows of the new patch
follow from Bernstein products of the link polynomials with the neighbour's
edge derivative rows.  Free coefficients are pinned by the vertex
compatibility conditions so that doubly-determined control points agree;
every such point is asserted, never averaged.

Layout conventions: a nine-patch ring is indexed

        v ^   3  6  9
          |   2  5  8        position p = 1 + 3*column + row,
          |   1  4  7        hole at 5, u to the right
          +---------> u

with all patches sharing the global parameter orientation.  The fourth
patch completion uses the canonical corner arrangement of
``continuity.CornerConfig`` (patch 1 lower-left, 2 right, 4 above, 3 built
diagonally).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bezier import BezierPatch, binom, elevate_row, bounding_diagonal
from .continuity import (
    G1_TOL,
    LAMBDA_MIN,
    CornerConsistencyError,
    DegenerateLinkError,
    EdgeCorrespondence,
    PreconditionError,
    solve_edge_link,
)

__all__ = [
    "LinkCoefficients",
    "TwistCheck",
    "HoleFillParams",
    "NinePatchRing",
    "g1_band_offsets",
    "g1_row_from_link",
    "complete_fourth_patch",
    "fourth_patch_twist_check",
    "solve_hole_params",
    "hole_constraint_residuals",
    "fill_hole",
    "fill_hole_deg6",
    "hole_twist_checks",
    "default_interior",
    "build_fillet",
]

# sample-based shape tolerances for validating neighbour joins
_CONST_TOL = 1e-7
_ASSERT_TOL = 1e-9
_DUAL_FORM_TOL = 1e-10


@dataclass(frozen=True)
class LinkCoefficients:
    """Quadratic lambda / cubic kappa link polynomials by Bernstein ordinates."""

    lambda0: float
    alpha: float
    lambda1: float
    kappa0: float = 0.0
    beta1: float = 0.0
    beta2: float = 0.0
    kappa1: float = 0.0

    @property
    def lambda_ordinates(self) -> np.ndarray:
        return np.array([self.lambda0, self.alpha, self.lambda1])

    @property
    def kappa_ordinates(self) -> np.ndarray:
        return np.array([self.kappa0, self.beta1, self.beta2, self.kappa1])


@dataclass(frozen=True)
class TwistCheck:
    """The twist of a constructed corner computed along its two routes."""

    q23: np.ndarray
    q43: np.ndarray

    @property
    def difference(self) -> float:
        return float(np.linalg.norm(np.asarray(self.q23) - np.asarray(self.q43)))


def g1_band_offsets(boundary, inner, lam_ordinates, kap_ordinates) -> np.ndarray:
    """Transverse-row offsets m*(row1 - row0) for a G1 join to a known patch.

    ``boundary`` and ``inner`` are the neighbour's control rows on and one
    inward from the shared edge.  ``lam_ordinates`` (degree L) and
    ``kap_ordinates`` (degree L+1) are the Bernstein ordinates of the link
    polynomials.  The result has degree n+L where n is the boundary degree,
    and equals n*(lambda * d + kappa * e) expanded in the Bernstein basis,
    with d the transverse and e the along-edge difference rows.
    """
    bnd = np.asarray(boundary, dtype=float)
    inr = np.asarray(inner, dtype=float)
    if bnd.shape != inr.shape or bnd.ndim != 2:
        raise ValueError("boundary and inner rows must have identical shapes")
    lam = np.asarray(lam_ordinates, dtype=float)
    kap = np.asarray(kap_ordinates, dtype=float)
    if kap.size != lam.size + 1:
        raise ValueError("kappa must have Bernstein degree one above lambda")
    n = bnd.shape[0] - 1
    big_l = lam.size - 1
    big_n = n + big_l
    d = bnd - inr  # degree-n coefficients of cross-derivative / n
    e = bnd[1:] - bnd[:-1]  # degree-(n-1) coefficients of edge derivative / n
    out = np.zeros((big_n + 1, bnd.shape[1]))
    for i in range(big_n + 1):
        den = binom(big_n, i)
        acc = np.zeros(bnd.shape[1])
        for k in range(big_l + 1):
            j = i - k
            if 0 <= j <= n:
                acc += binom(n, j) * binom(big_l, k) / den * lam[k] * d[j]
        for k in range(big_l + 2):
            j = i - k
            if 0 <= j <= n - 1:
                acc += binom(n - 1, j) * binom(big_l + 1, k) / den * kap[k] * e[j]
        out[i] = n * acc
    return out


def g1_row_from_link(boundary, inner, coeffs: LinkCoefficients, m: int) -> np.ndarray:
    """The six vectors m*(row1_i - row0_i) for a quintic edge row.

    ``m`` is the transverse degree of the new patch (4, 5 or 6); the caller
    divides by m and adds the result to the degree-elevated boundary row.
    """
    if m not in (4, 5, 6):
        raise ValueError(f"transverse degree m must be 4, 5 or 6, got {m}")
    bnd = np.asarray(boundary, dtype=float)
    if bnd.shape[0] != 4 or np.asarray(inner).shape[0] != 4:
        raise ValueError("rows must come from a bi-cubic neighbour (4 points)")
    return g1_band_offsets(bnd, inner, coeffs.lambda_ordinates, coeffs.kappa_ordinates)


# ---------------------------------------------------------------------------
# shared helpers

def _require_bicubic(name: str, p: BezierPatch) -> None:
    if (p.degree_u, p.degree_v) != (3, 3):
        raise PreconditionError(f"{name} must be bi-cubic, got ({p.degree_u}, {p.degree_v})")


def _constant_lambda_link(a, b, corr, *, allow_linear_kappa=False):
    """Solve a join expected to have constant lambda; returns (lambda, kappa0).

    ``kappa0`` is the kappa value at edge parameter 0 when the join carries
    the linear, vertex-vanishing kappa shape; zero otherwise.  Raises
    PreconditionError if the join is not G1 or the link has the wrong shape.
    """
    link = solve_edge_link(a, b, corr, fit_degrees=(2, 3))
    if link.max_oop > G1_TOL:
        raise PreconditionError(
            f"join {corr.a}:{corr.a_side} ~ {corr.b}:{corr.b_side} is not G1 "
            f"(residual {link.max_oop:.3e})"
        )
    lam = float(np.mean(link.lam_samples))
    if np.max(np.abs(link.lam_samples - lam)) > _CONST_TOL * max(1.0, abs(lam)):
        raise PreconditionError(
            f"join {corr.a}:{corr.a_side} ~ {corr.b}:{corr.b_side} has non-constant lambda"
        )
    kap0 = float(link.kap_samples[0])
    if abs(kap0) < _CONST_TOL:
        kap0 = 0.0
    expected = kap0 * (1.0 - link.ts) if allow_linear_kappa else 0.0
    if np.max(np.abs(link.kap_samples - expected)) > _CONST_TOL * max(1.0, abs(kap0)):
        shape = "kappa0*(1-t)" if allow_linear_kappa else "zero"
        raise PreconditionError(
            f"join {corr.a}:{corr.a_side} ~ {corr.b}:{corr.b_side}: kappa is not {shape}"
        )
    if not allow_linear_kappa:
        kap0 = 0.0
    if abs(lam) < LAMBDA_MIN:
        raise DegenerateLinkError(f"lambda vanishes on join {corr.a} ~ {corr.b}")
    return lam, kap0


class _NetAssembler:
    """Write-once control net; re-assignments must agree within tolerance."""

    def __init__(self, degree: int, scale: float):
        self.net = np.full((degree + 1, degree + 1, 3), np.nan)
        self.scale = scale

    def put(self, i, j, value, what=""):
        value = np.asarray(value, dtype=float)
        cur = self.net[i, j]
        if np.all(np.isnan(cur)):
            self.net[i, j] = value
            return
        gap = float(np.linalg.norm(cur - value))
        if gap > _ASSERT_TOL * self.scale:
            raise CornerConsistencyError(
                f"control point ({i},{j}) doubly determined with gap "
                f"{gap / self.scale:.3e} {what}"
            )

    def put_row(self, j, values, what=""):
        for i, v in enumerate(values):
            self.put(i, j, v, what)

    def put_col(self, i, values, what=""):
        for j, v in enumerate(values):
            self.put(i, j, v, what)


# ---------------------------------------------------------------------------
# fourth patch completion

def _corner_links(r1, r2, r4):
    lam12, kap12_0 = _constant_lambda_link(
        r1, r2, EdgeCorrespondence("u1", "u0", a="r1", b="r2"), allow_linear_kappa=True
    )
    lam14, kap14_0 = _constant_lambda_link(
        r1, r4, EdgeCorrespondence("v1", "v0", a="r1", b="r4"), allow_linear_kappa=True
    )
    return lam12, kap12_0, lam14, kap14_0


def complete_fourth_patch(
    r1: BezierPatch,
    r2: BezierPatch,
    r4: BezierPatch,
    *,
    alpha23: float | None = None,
    alpha43: float | None = None,
    lambda23_1: float | None = None,
    lambda43_1: float | None = None,
    kappa23_1: float = 0.0,
    kappa43_1: float = 0.0,
    beta2_23: float = 0.0,
    beta2_43: float = 0.0,
    beta23: float | None = None,
    beta43: float | None = None,
    degree: int = 5,
    interior_rule=None,
) -> BezierPatch:
    """Construct the diagonal patch closing a G1 corner of three bi-cubics.

    ``r1`` sits lower-left, ``r2`` to its right, ``r4`` above; the result
    joins ``r2`` along its v=1 edge and ``r4`` along its u=1 edge with
    tangent-plane continuity.  The corner joins must have constant lambda
    and either zero kappa or the vertex-vanishing linear kappa shape.  Free
    coefficients default so that a corner cut from one smooth surface is
    extended seamlessly.  ``degree=4`` selects the less flexible bi-degree
    (4,4) construction (linear lambda, quadratic kappa), which requires
    zero-kappa corner joins.
    """
    for name, p in (("r1", r1), ("r2", r2), ("r4", r4)):
        _require_bicubic(name, p)
    if degree not in (4, 5):
        raise ValueError("fourth-patch degree must be 4 or 5")
    lam12, kap12_0, lam14, kap14_0 = _corner_links(r1, r2, r4)
    scale = bounding_diagonal(r1, r2, r4)

    if alpha23 is None:
        alpha23 = lam14
    if alpha43 is None:
        alpha43 = lam12
    if lambda23_1 is None:
        lambda23_1 = lam14
    if lambda43_1 is None:
        lambda43_1 = lam12

    if degree == 5:
        # uniqueness of the corner control point pins the inner kappa ordinates
        beta1_23 = (2.0 * alpha43 - 2.0 * lam12 - lam12 * kap14_0) / (3.0 * lam12)
        beta1_43 = (2.0 * alpha23 - 2.0 * lam14 - lam14 * kap12_0) / (3.0 * lam14)
        coeffs23 = LinkCoefficients(lam14, alpha23, lambda23_1,
                                    0.0, beta1_23, beta2_23, kappa23_1)
        coeffs43 = LinkCoefficients(lam12, alpha43, lambda43_1,
                                    0.0, beta1_43, beta2_43, kappa43_1)
        lam_o23, kap_o23 = coeffs23.lambda_ordinates, coeffs23.kappa_ordinates
        lam_o43, kap_o43 = coeffs43.lambda_ordinates, coeffs43.kappa_ordinates
    else:
        if kap12_0 != 0.0 or kap14_0 != 0.0:
            raise PreconditionError(
                "bi-degree (4,4) completion requires zero-kappa corner joins"
            )
        b23 = (lambda43_1 - lam12) / (2.0 * lam12)
        b43 = (lambda23_1 - lam14) / (2.0 * lam14)
        for given, computed, name in ((beta23, b23, "beta23"), (beta43, b43, "beta43")):
            if given is not None and abs(given - computed) > _ASSERT_TOL:
                raise PreconditionError(
                    f"{name}={given} violates the (4,4) coefficient constraints"
                )
        lam_o23 = np.array([lam14, lambda23_1])
        kap_o23 = np.array([0.0, b23, kappa23_1])
        lam_o43 = np.array([lam12, lambda43_1])
        kap_o43 = np.array([0.0, b43, kappa43_1])

    m = degree
    asm = _NetAssembler(m, scale)
    # bottom edge: boundary from r2's top row, band from the (2,3)-link
    bottom_bnd = r2.net[:, 3]
    bottom_inr = r2.net[:, 2]
    row0 = elevate_row(bottom_bnd, m)
    row1 = row0 + g1_band_offsets(bottom_bnd, bottom_inr, lam_o23, kap_o23) / m
    # left edge: boundary from r4's right column, band from the (4,3)-link
    left_bnd = r4.net[3, :]
    left_inr = r4.net[2, :]
    col0 = elevate_row(left_bnd, m)
    col1 = col0 + g1_band_offsets(left_bnd, left_inr, lam_o43, kap_o43) / m

    asm.put_row(0, row0, "(bottom boundary)")
    asm.put_col(0, col0, "(left boundary)")
    asm.put_col(1, col1, "(left band)")
    try:
        asm.put_row(1, row1, "(bottom band vs left band)")
    except CornerConsistencyError as exc:
        raise CornerConsistencyError(
            f"corner control point disagrees between the two construction routes: {exc}"
        ) from None

    net = asm.net
    if interior_rule is not None:
        net = interior_rule(net.copy())
    else:
        net = net.copy()
        for i in range(2, m + 1):
            for j in range(2, m + 1):
                net[i, j] = net[i, 1] + net[1, j] - net[1, 1]
    if np.any(np.isnan(net)):
        raise CornerConsistencyError("interior rule left control points undefined")
    return BezierPatch(m, m, net)


def fourth_patch_twist_check(
    r2: BezierPatch,
    r4: BezierPatch,
    coeffs23: LinkCoefficients,
    coeffs43: LinkCoefficients,
    m: int = 5,
) -> TwistCheck:
    """Corner twist computed along both construction routes.

    The two quantities agree exactly when the coefficient constraints of
    ``complete_fourth_patch`` hold; violating them by delta grows the
    difference linearly in delta.
    """
    _require_bicubic("r2", r2)
    _require_bicubic("r4", r4)
    row0 = elevate_row(r2.net[:, 3], m)
    row1 = row0 + g1_row_from_link(r2.net[:, 3], r2.net[:, 2], coeffs23, m) / m
    col0 = elevate_row(r4.net[3, :], m)
    col1 = col0 + g1_row_from_link(r4.net[3, :], r4.net[2, :], coeffs43, m) / m
    q00 = row0[0]
    q10 = row0[1]
    q01 = col0[1]
    q11_bottom = row1[1]  # via the bottom band, with q01 from the left boundary
    q11_left = col1[1]
    q23 = m * m * (q11_bottom - q10 - q01 + q00)
    q43 = m * m * (q11_left - q01 - q10 + q00)
    return TwistCheck(q23=q23, q43=q43)


# ---------------------------------------------------------------------------
# nine-patch ring and hole filling

_RING_POSITIONS = (1, 2, 3, 4, 6, 7, 8, 9)

# directed ring joins: key -> (a, a_side, b, b_side); the stored lambda
# expresses b's cross-boundary derivative in a's frame
_RING_JOINS = {
    "12": (1, "v1", 2, "v0"),
    "14": (1, "u1", 4, "u0"),
    "32": (3, "v0", 2, "v1"),
    "36": (3, "u1", 6, "u0"),
    "74": (7, "u0", 4, "u1"),
    "78": (7, "v1", 8, "v0"),
    "96": (9, "u0", 6, "u1"),
    "98": (9, "v0", 8, "v1"),
}


@dataclass(frozen=True, eq=False)
class NinePatchRing:
    """Eight bi-cubic patches around a missing centre patch.

    Position p = 1 + 3*column + row of a 3x3 grid with the hole at 5.  All
    ring-internal joins must be G1 with constant lambda and zero kappa;
    ``from_patches`` verifies this and records the eight directed edge
    constants.
    """

    patches: dict
    lambdas: dict
    scale: float

    @classmethod
    def from_patches(cls, patches: dict) -> "NinePatchRing":
        if set(patches) != set(_RING_POSITIONS):
            raise PreconditionError(
                f"ring needs patches at positions {_RING_POSITIONS}, got {sorted(patches)}"
            )
        for pos, p in patches.items():
            _require_bicubic(f"ring patch {pos}", p)
        lambdas = {}
        for key, (an, a_side, bn, b_side) in _RING_JOINS.items():
            corr = EdgeCorrespondence(a_side, b_side, a=str(an), b=str(bn))
            lam, _ = _constant_lambda_link(patches[an], patches[bn], corr)
            lambdas[key] = lam
        scale = bounding_diagonal(*patches.values())
        return cls(patches=dict(patches), lambdas=dict(lambdas), scale=scale)


@dataclass(frozen=True)
class HoleFillParams:
    """Resolved free coefficients of a hole fill.

    ``alpha``/``beta1``/``beta2`` are keyed by the interior-edge neighbour
    position (2: left, 4: bottom, 6: top, 8: right).  ``mode`` selects the
    (5,5) construction with quadratic lambdas or the (6,6) one with cubic
    lambdas, whose inner ordinates ``alpha1``/``alpha2`` are fully pinned.
    """

    mode: str  # "deg5" | "deg6"
    alpha: dict
    beta1: dict = field(default_factory=dict)
    beta2: dict = field(default_factory=dict)
    alpha1: dict = field(default_factory=dict)
    alpha2: dict = field(default_factory=dict)


def _pinned_endpoints(ring: NinePatchRing) -> dict:
    """Endpoint values of the four hole-edge lambda functions, by neighbour."""
    lam = ring.lambdas
    return {
        4: (lam["12"], lam["78"]),  # bottom edge, parameters 0 -> 1 along u
        2: (lam["14"], lam["36"]),  # left edge, along v
        6: (lam["32"], lam["98"]),  # top edge, along u
        8: (lam["74"], lam["96"]),  # right edge, along v
    }


def solve_hole_params(ring: NinePatchRing, free_choices=None) -> HoleFillParams:
    """Resolve the eight coefficient constraints of the (5,5) hole fill.

    The four alphas (one per interior edge, order: bottom 4, left 2, top 6,
    right 8) are free; each defaults to the mean of its pinned endpoint
    lambdas.  The eight beta ordinates then follow by exact back
    substitution, one equation each.
    """
    lam = ring.lambdas
    for key, value in lam.items():
        if abs(value) < LAMBDA_MIN:
            raise DegenerateLinkError(f"ring lambda ({key}) is degenerate")
    ends = _pinned_endpoints(ring)
    if free_choices is None:
        alpha = {i: 0.5 * (ends[i][0] + ends[i][1]) for i in (4, 2, 6, 8)}
    else:
        a45, a25, a65, a85 = (float(x) for x in free_choices)
        alpha = {4: a45, 2: a25, 6: a65, 8: a85}
    # The beta2 equations carry a minus sign relative to the beta1 ones: the
    # inner kappa ordinate near the far end of an edge lives in that corner's
    # frame, whose edge parameter runs against the edge's own direction.
    beta1 = {
        4: 2.0 * (alpha[2] - lam["14"]) / (3.0 * lam["14"]),
        2: 2.0 * (alpha[4] - lam["12"]) / (3.0 * lam["12"]),
        6: 2.0 * (alpha[2] - lam["36"]) / (3.0 * lam["36"]),
        8: 2.0 * (alpha[4] - lam["78"]) / (3.0 * lam["78"]),
    }
    beta2 = {
        4: -2.0 * (alpha[8] - lam["74"]) / (3.0 * lam["74"]),
        2: -2.0 * (alpha[6] - lam["32"]) / (3.0 * lam["32"]),
        6: -2.0 * (alpha[8] - lam["96"]) / (3.0 * lam["96"]),
        8: -2.0 * (alpha[6] - lam["98"]) / (3.0 * lam["98"]),
    }
    return HoleFillParams(mode="deg5", alpha=alpha, beta1=beta1, beta2=beta2)


def hole_constraint_residuals(ring: NinePatchRing, params: HoleFillParams) -> np.ndarray:
    """Residuals of the eight coefficient constraints; zero for a valid solve."""
    lam = ring.lambdas
    a, b1, b2 = params.alpha, params.beta1, params.beta2
    return np.abs(np.array([
        3.0 * lam["14"] * b1[4] - 2.0 * (a[2] - lam["14"]),
        3.0 * lam["12"] * b1[2] - 2.0 * (a[4] - lam["12"]),
        3.0 * lam["96"] * b2[6] + 2.0 * (a[8] - lam["96"]),
        3.0 * lam["98"] * b2[8] + 2.0 * (a[6] - lam["98"]),
        3.0 * lam["74"] * b2[4] + 2.0 * (a[8] - lam["74"]),
        3.0 * lam["78"] * b1[8] - 2.0 * (a[4] - lam["78"]),
        3.0 * lam["36"] * b1[6] - 2.0 * (a[2] - lam["36"]),
        3.0 * lam["32"] * b2[2] + 2.0 * (a[6] - lam["32"]),
    ]))


def _hole_edge_data(ring: NinePatchRing, params: HoleFillParams, degree: int):
    """Per-side (boundary row, inner row, lambda ordinates, kappa ordinates)."""
    p = ring.patches
    ends = _pinned_endpoints(ring)
    sides = {
        "bottom": (p[4].net[:, 3], p[4].net[:, 2], 4),
        "left": (p[2].net[3, :], p[2].net[2, :], 2),
        "top": (p[6].net[:, 0], p[6].net[:, 1], 6),
        "right": (p[8].net[0, :], p[8].net[1, :], 8),
    }
    out = {}
    for name, (bnd, inr, i) in sides.items():
        lo, hi = ends[i]
        if degree == 5:
            lam_o = np.array([lo, params.alpha[i], hi])
            kap_o = np.array([0.0, params.beta1[i], params.beta2[i], 0.0])
        else:
            lam_o = np.array([lo, params.alpha1[i], params.alpha2[i], hi])
            kap_o = np.zeros(5)
        out[name] = (bnd, inr, lam_o, kap_o)
    return out


def _assemble_hole_net(ring: NinePatchRing, params: HoleFillParams, degree: int):
    m = degree
    asm = _NetAssembler(m, ring.scale)
    data = _hole_edge_data(ring, params, degree)

    def band(name):
        bnd, inr, lam_o, kap_o = data[name]
        row0 = elevate_row(bnd, m)
        row1 = row0 + g1_band_offsets(bnd, inr, lam_o, kap_o) / m
        return row0, row1

    b0, b1 = band("bottom")
    t0, t1 = band("top")
    l0, l1 = band("left")
    r0, r1 = band("right")
    asm.put_row(0, b0, "(bottom boundary)")
    asm.put_col(0, l0, "(left boundary)")
    asm.put_col(m, r0, "(right boundary)")
    asm.put_row(m, t0, "(top boundary)")
    asm.put_col(1, l1, "(left band)")
    asm.put_col(m - 1, r1, "(right band)")
    asm.put_row(1, b1, "(bottom band)")
    asm.put_row(m - 1, t1, "(top band)")
    return asm.net.copy()


def default_interior(net, degree: int) -> np.ndarray:
    """Return a copy of a hole-fill net with its free interior points set.

    For degree 5 the four interior points follow the parallelogram rule
    from the adjacent band points.  For degree 6 the 3x3 interior block is
    built corner-first; the mid-edge points have two equivalent forms which
    are asserted equal, and the centre is their prescribed combination.
    """
    net = np.array(net, dtype=float)
    scale = float(np.linalg.norm(np.nanmax(net, axis=(0, 1)) - np.nanmin(net, axis=(0, 1))))
    scale = scale if scale > 0 else 1.0
    q = net
    if degree == 5:
        q[2, 2] = q[2, 1] + q[1, 2] - q[1, 1]
        q[3, 2] = q[3, 1] + q[4, 2] - q[4, 1]
        q[2, 3] = q[2, 4] + q[1, 3] - q[1, 4]
        q[3, 3] = q[3, 4] + q[4, 3] - q[4, 4]
        return q
    if degree != 6:
        raise ValueError("interior rule is defined for degrees 5 and 6")
    q[2, 2] = q[2, 1] + q[1, 2] - q[1, 1]
    q[4, 2] = q[4, 1] + q[5, 2] - q[5, 1]
    q[2, 4] = q[2, 5] + q[1, 4] - q[1, 5]
    q[4, 4] = q[4, 5] + q[5, 4] - q[5, 5]

    def dual(primary, alternative, name):
        gap = float(np.linalg.norm(primary - alternative))
        if gap > _DUAL_FORM_TOL * scale:
            raise CornerConsistencyError(
                f"interior point {name}: alternative forms differ by {gap / scale:.3e}"
            )
        return primary

    q[2, 3] = dual(
        q[1, 3] + 0.5 * (q[2, 2] + q[2, 4]) - 0.5 * (q[1, 2] + q[1, 4]),
        q[1, 3] + 0.5 * (q[2, 1] + q[2, 5]) - 0.5 * (q[1, 1] + q[1, 5]),
        "(2,3)",
    )
    q[3, 2] = dual(
        q[3, 1] + 0.5 * (q[2, 2] + q[4, 2]) - 0.5 * (q[2, 1] + q[4, 1]),
        q[3, 1] + 0.5 * (q[1, 2] + q[5, 2]) - 0.5 * (q[1, 1] + q[5, 1]),
        "(3,2)",
    )
    q[3, 4] = dual(
        q[3, 5] + 0.5 * (q[2, 4] + q[4, 4]) - 0.5 * (q[2, 5] + q[4, 5]),
        q[3, 5] + 0.5 * (q[1, 4] + q[5, 4]) - 0.5 * (q[1, 5] + q[5, 5]),
        "(3,4)",
    )
    q[4, 3] = dual(
        q[5, 3] + 0.5 * (q[4, 2] + q[4, 4]) - 0.5 * (q[5, 2] + q[5, 4]),
        q[5, 3] + 0.5 * (q[4, 1] + q[4, 5]) - 0.5 * (q[5, 1] + q[5, 5]),
        "(4,3)",
    )
    q[3, 3] = 0.5 * (q[2, 3] + q[4, 3] + q[3, 2] + q[3, 4]) - 0.25 * (
        q[2, 2] + q[4, 2] + q[2, 4] + q[4, 2]
    )
    return q


def fill_hole(ring: NinePatchRing, params: HoleFillParams | None = None,
              interior_rule=None) -> BezierPatch:
    """Fill the centre of a nine-patch ring with a bi-degree (5,5) patch.

    The hole edges carry quadratic lambda / cubic kappa link functions whose
    endpoint ordinates are pinned by the ring's edge constants and whose
    inner ordinates come from ``params`` (``solve_hole_params`` defaults).
    The result joins all four ring neighbours with tangent-plane
    continuity; doubly-determined border points are asserted consistent.
    """
    if params is None:
        params = solve_hole_params(ring)
    if params.mode != "deg5":
        raise ValueError("params were resolved for a different construction mode")
    net = _assemble_hole_net(ring, params, 5)
    if interior_rule is not None:
        net = interior_rule(net)
    else:
        net = default_interior(net, 5)
    if np.any(np.isnan(net)):
        raise CornerConsistencyError("interior rule left control points undefined")
    return BezierPatch(5, 5, net)


def fill_hole_deg6(ring: NinePatchRing, interior_rule=None) -> BezierPatch:
    """Fill the ring with a bi-degree (6,6) patch using cubic lambdas, zero kappa.

    The inner lambda ordinates are fully pinned by the ring constants, so
    there are no free coefficients.
    """
    ends = _pinned_endpoints(ring)
    for key, value in ring.lambdas.items():
        if abs(value) < LAMBDA_MIN:
            raise DegenerateLinkError(f"ring lambda ({key}) is degenerate")
    params = HoleFillParams(
        mode="deg6",
        alpha={},
        alpha1={i: ends[i][0] for i in (2, 4, 6, 8)},
        alpha2={i: ends[i][1] for i in (2, 4, 6, 8)},
    )
    net = _assemble_hole_net(ring, params, 6)
    if interior_rule is not None:
        net = interior_rule(net)
    else:
        net = default_interior(net, 6)
    if np.any(np.isnan(net)):
        raise CornerConsistencyError("interior rule left control points undefined")
    return BezierPatch(6, 6, net)


def hole_twist_checks(ring: NinePatchRing, params: HoleFillParams | None = None) -> dict:
    """Twist consistency at the four hole corners, by corner name.

    Each entry compares the band control point next to a corner as
    determined by its two adjacent edges (scaled by 25, matching the
    fourth-patch twist convention).
    """
    if params is None:
        params = solve_hole_params(ring)
    data = _hole_edge_data(ring, params, 5)
    rows = {}
    for name, (bnd, inr, lam_o, kap_o) in data.items():
        row0 = elevate_row(bnd, 5)
        rows[name] = (row0, row0 + g1_band_offsets(bnd, inr, lam_o, kap_o) / 5.0)
    out = {}
    # corner -> ((edge, band index), (edge, band index)); indices address the
    # doubly-determined point next to that corner along each edge
    corners = {
        "bottom-left": (("bottom", 1), ("left", 1)),
        "bottom-right": (("bottom", 4), ("right", 1)),
        "top-left": (("top", 1), ("left", 4)),
        "top-right": (("top", 4), ("right", 4)),
    }
    for corner, ((e1, i1), (e2, i2)) in corners.items():
        r0a, r1a = rows[e1]
        r0b, r1b = rows[e2]
        end_a = 0 if i1 == 1 else 5
        end_b = 0 if i2 == 1 else 5
        qa = 25.0 * (r1a[i1] - r0a[i1] - r1a[end_a] + r0a[end_a])
        qb = 25.0 * (r1b[i2] - r0b[i2] - r1b[end_b] + r0b[end_b])
        out[corner] = TwistCheck(q23=qa, q43=qb)
    return out


# ---------------------------------------------------------------------------
# fillet surfaces

def _strip_lambdas(strip, label):
    """Constants of the internal joins of a strip of bi-cubics stacked in v."""
    for n, p in enumerate(strip):
        _require_bicubic(f"{label}[{n}]", p)
    lams = []
    for n in range(len(strip) - 1):
        corr = EdgeCorrespondence("v1", "v0", a=f"{label}[{n}]", b=f"{label}[{n + 1}]")
        lam, _ = _constant_lambda_link(strip[n], strip[n + 1], corr)
        lams.append(lam)
    return lams


def _bridge_patch(left: BezierPatch, right: BezierPatch, lam_a: float, lam_b: float):
    """Bi-cubic patch joining left's u=1 edge to right's u=0 edge, G1 both ways."""
    net = np.empty((4, 4, 3))
    net[0] = left.net[3]
    net[3] = right.net[0]
    net[1] = net[0] + lam_a * (left.net[3] - left.net[2])
    net[2] = net[3] - (right.net[1] - right.net[0]) / lam_b
    return BezierPatch(3, 3, net)


def _fill_three_sided(bottom, left, right, lam12, lam14, lam74, lam78, scale):
    """A (5,5) fill constrained along its bottom, left and right edges only.

    Used for the last fillet row when the strips have even length: the top
    edge of this patch is an open boundary of the composite surface.  The
    lambda functions on the two vertical edges default to their (constant)
    bottom-corner values; the free top rows continue the side bands by the
    parallelogram rule.
    """
    alpha45 = 0.5 * (lam12 + lam78)
    alpha25, alpha85 = lam14, lam74
    beta1_45 = 2.0 * (alpha25 - lam14) / (3.0 * lam14)
    beta1_25 = 2.0 * (alpha45 - lam12) / (3.0 * lam12)
    beta2_45 = -2.0 * (alpha85 - lam74) / (3.0 * lam74)
    beta1_85 = 2.0 * (alpha45 - lam78) / (3.0 * lam78)
    lam_bottom = np.array([lam12, alpha45, lam78])
    kap_bottom = np.array([0.0, beta1_45, beta2_45, 0.0])
    lam_left = np.array([lam14, alpha25, lam14])
    kap_left = np.array([0.0, beta1_25, 0.0, 0.0])
    lam_right = np.array([lam74, alpha85, lam74])
    kap_right = np.array([0.0, beta1_85, 0.0, 0.0])

    asm = _NetAssembler(5, scale)
    b_bnd, b_inr = bottom.net[:, 3], bottom.net[:, 2]
    l_bnd, l_inr = left.net[3, :], left.net[2, :]
    r_bnd, r_inr = right.net[0, :], right.net[1, :]
    row0 = elevate_row(b_bnd, 5)
    row1 = row0 + g1_band_offsets(b_bnd, b_inr, lam_bottom, kap_bottom) / 5.0
    col0 = elevate_row(l_bnd, 5)
    col1 = col0 + g1_band_offsets(l_bnd, l_inr, lam_left, kap_left) / 5.0
    col5 = elevate_row(r_bnd, 5)
    col4 = col5 + g1_band_offsets(r_bnd, r_inr, lam_right, kap_right) / 5.0
    asm.put_col(0, col0, "(left boundary)")
    asm.put_col(1, col1, "(left band)")
    asm.put_col(5, col5, "(right boundary)")
    asm.put_col(4, col4, "(right band)")
    asm.put_row(0, row0, "(bottom boundary)")
    asm.put_row(1, row1, "(bottom band)")
    net = asm.net.copy()
    for j in range(2, 6):
        net[2, j] = net[1, j] + net[2, 1] - net[1, 1]
        net[3, j] = net[4, j] + net[3, 1] - net[4, 1]
    return BezierPatch(5, 5, net)


def build_fillet(strip_a, strip_b, n_rows=None, *, bridge_lambdas=(1.0, 1.0)):
    """Bridge two G1 strips of bi-cubic patches with a smooth middle column.

    ``strip_a`` and ``strip_b`` each hold N patches stacked in v (internally
    G1 with constant lambda and zero kappa); ``n_rows`` defaults to the full
    strip length.  Even rows of the middle column get bi-cubic bridge
    patches joining both strips; odd rows are filled by the nine-patch hole
    construction on the surrounding ring (the last row, for even N, by its
    three-sided variant).  Returns the middle-column patches in row order.
    """
    strip_a = list(strip_a)
    strip_b = list(strip_b)
    if n_rows is None:
        n_rows = len(strip_a)
    if n_rows < 1 or len(strip_a) < n_rows or len(strip_b) < n_rows:
        raise PreconditionError(
            f"both strips need at least {max(n_rows, 1)} patches "
            f"(got {len(strip_a)}, {len(strip_b)})"
        )
    strip_a = strip_a[:n_rows]
    strip_b = strip_b[:n_rows]
    lam_a_internal = _strip_lambdas(strip_a, "strip_a")
    lam_b_internal = _strip_lambdas(strip_b, "strip_b")
    lam_left, lam_right = bridge_lambdas
    if abs(lam_left) < LAMBDA_MIN or abs(lam_right) < LAMBDA_MIN:
        raise DegenerateLinkError("bridge lambdas must be non-zero")

    bridges = {}
    for r in range(0, n_rows, 2):
        bridges[r] = _bridge_patch(strip_a[r], strip_b[r], lam_left, lam_right)

    middle = [None] * n_rows
    for r, b in bridges.items():
        middle[r] = b
    for r in range(1, n_rows, 2):
        if r + 1 < n_rows:
            ring = NinePatchRing.from_patches({
                1: strip_a[r - 1], 2: strip_a[r], 3: strip_a[r + 1],
                4: bridges[r - 1], 6: bridges[r + 1],
                7: strip_b[r - 1], 8: strip_b[r], 9: strip_b[r + 1],
            })
            middle[r] = fill_hole(ring)
        else:
            scale = bounding_diagonal(strip_a[r], strip_b[r], bridges[r - 1])
            middle[r] = _fill_three_sided(
                bridges[r - 1], strip_a[r], strip_b[r],
                lam12=lam_a_internal[r - 1], lam14=lam_left,
                lam74=1.0 / lam_right, lam78=lam_b_internal[r - 1],
                scale=scale,
            )
    return middle
