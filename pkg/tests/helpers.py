"""Shared oracle machinery for the test suite.

Everything here is independent of the code paths it checks: ground-truth
configurations are produced by de Casteljau subdivision of one smooth
surface, by exact polynomial composition with mild reparametrizations, or
by direct control-point propagation of the first-order link relation.
"""

from __future__ import annotations

import numpy as np

from smoothpatch.bezier import BezierPatch, binom, split_grid, split_patch


# ---------------------------------------------------------------------------
# random patches

def smooth_net(rng, nu=4, nv=4, span=1.0, z_scale=0.15, xy_noise=0.0):
    """Graph-like control net over a [0, span]^2 footprint; always regular."""
    xs = np.linspace(0.0, span, nu)
    ys = np.linspace(0.0, span, nv)
    net = np.zeros((nu, nv, 3))
    net[:, :, 0] = xs[:, None]
    net[:, :, 1] = ys[None, :]
    net[:, :, 2] = rng.normal(scale=z_scale, size=(nu, nv))
    if xy_noise:
        net[:, :, :2] += rng.normal(scale=xy_noise, size=(nu, nv, 2))
    return net


def smooth_patch(rng, degree_u=3, degree_v=3, **kw) -> BezierPatch:
    return BezierPatch.from_net(smooth_net(rng, degree_u + 1, degree_v + 1, **kw))


def paraboloid_patch() -> BezierPatch:
    """Exact Bezier form of z = u^2 + v^2 over the unit square."""
    lin = np.array([0.0, 0.5, 1.0])
    quad = np.array([0.0, 0.0, 1.0])
    net = np.zeros((3, 3, 3))
    net[:, :, 0] = lin[:, None]
    net[:, :, 1] = lin[None, :]
    net[:, :, 2] = quad[:, None] + quad[None, :]
    return BezierPatch.from_net(net)


# ---------------------------------------------------------------------------
# polynomial composition (for the reparametrized-split oracle family)

def bern_to_power(n: int) -> np.ndarray:
    mat = np.zeros((n + 1, n + 1))
    for k in range(n + 1):
        for i in range(k + 1):
            mat[k, i] = (-1) ** (k - i) * binom(n, i) * binom(n - i, k - i)
    return mat


def power_to_bern(n: int) -> np.ndarray:
    mat = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for k in range(i + 1):
            mat[i, k] = binom(i, k) / binom(n, k)
    return mat


def _pmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1))
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j] != 0.0:
                out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
    return out


def _padd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1])))
    out[: a.shape[0], : a.shape[1]] += a
    out[: b.shape[0], : b.shape[1]] += b
    return out


def compose_with_quad(net: np.ndarray, quad) -> BezierPatch:
    """Exact Bezier net of G(Phi(u, v)) for a bilinear quad map Phi.

    ``net`` is the Bernstein net of a bi-degree (n, n) surface G over the
    unit square and ``quad`` the four 2D corners [[P00, P01], [P10, P11]]
    of the parameter-domain quadrilateral; the composite has bi-degree
    (2n, 2n).  Conversion runs through the power basis, which is exact for
    these small degrees.
    """
    n = net.shape[0] - 1
    t = bern_to_power(n)
    gpow = np.einsum("ki,ijc,lj->klc", t, net, t)
    p00 = np.asarray(quad[0][0], float)
    p01 = np.asarray(quad[0][1], float)
    p10 = np.asarray(quad[1][0], float)
    p11 = np.asarray(quad[1][1], float)
    x = np.zeros((2, 2))
    y = np.zeros((2, 2))
    x[0, 0], y[0, 0] = p00
    x[1, 0], y[1, 0] = p10 - p00
    x[0, 1], y[0, 1] = p01 - p00
    x[1, 1], y[1, 1] = p11 - p10 - p01 + p00
    ypow = [np.ones((1, 1))]
    for _ in range(n):
        ypow.append(_pmul(ypow[-1], y))
    coords = []
    for c in range(3):
        acc = np.zeros((1, 1))
        for k in range(n, -1, -1):
            inner = np.zeros((1, 1))
            for l in range(n + 1):
                if gpow[k, l, c] != 0.0:
                    inner = _padd(inner, gpow[k, l, c] * ypow[l])
            acc = _padd(_pmul(acc, x), inner)
        coords.append(acc)
    du = max(a.shape[0] for a in coords) - 1
    dv = max(a.shape[1] for a in coords) - 1
    pow3 = np.zeros((du + 1, dv + 1, 3))
    for c in range(3):
        a = coords[c]
        pow3[: a.shape[0], : a.shape[1], c] = a
    mu = power_to_bern(du)
    mv = power_to_bern(dv)
    return BezierPatch(du, dv, np.einsum("ik,klc,jl->ijc", mu, pow3, mv))


def quad_split_config(rng, slant=0.03):
    """Four patches cutting one bi-quartic along a slanted interior cross.

    The composite is a single smooth surface, so the configuration is
    exactly G2; the slants make the vertex kappa values non-zero and the
    link functions non-constant.  Returns (global patch, p1, p2, p3, p4)
    in the canonical corner arrangement.
    """
    net = smooth_net(rng, 5, 5, span=1.0, z_scale=0.25, xy_noise=0.03)
    a = 0.5 + rng.uniform(-0.08, 0.08)
    b = 0.5 + rng.uniform(-0.08, 0.08)
    a0 = a + rng.uniform(-slant, slant)
    a1 = a + rng.uniform(-slant, slant)
    b0 = b + rng.uniform(-slant, slant)
    b1 = b + rng.uniform(-slant, slant)
    q1 = [[(0, 0), (0, b0)], [(a0, 0), (a, b)]]
    q2 = [[(a0, 0), (a, b)], [(1, 0), (1, b1)]]
    q4 = [[(0, b0), (0, 1)], [(a, b), (a1, 1)]]
    q3 = [[(a, b), (a1, 1)], [(1, b1), (1, 1)]]
    return (
        BezierPatch.from_net(net),
        compose_with_quad(net, q1),
        compose_with_quad(net, q2),
        compose_with_quad(net, q3),
        compose_with_quad(net, q4),
    )


# ---------------------------------------------------------------------------
# pairwise G1 constructions and crease fixtures

def _extend(net, rng, axis, scale=0.05):
    """Continue the first two rows/columns of a bi-cubic net smoothly."""
    if axis == "v":
        for i in range(4):
            step = net[i, 1] - net[i, 0]
            net[i, 2] = net[i, 1] + step + rng.normal(scale=scale, size=3)
            net[i, 3] = net[i, 2] + step + rng.normal(scale=scale, size=3)
    else:
        for j in range(4):
            step = net[1, j] - net[0, j]
            net[2, j] = net[1, j] + step + rng.normal(scale=scale, size=3)
            net[3, j] = net[2, j] + step + rng.normal(scale=scale, size=3)
    return net


def g1_join_up(base: BezierPatch, rng, lam: float) -> BezierPatch:
    """Bi-cubic neighbour above base: constant lambda, zero kappa."""
    net = np.zeros((4, 4, 3))
    net[:, 0] = base.net[:, 3]
    net[:, 1] = net[:, 0] + lam * (base.net[:, 3] - base.net[:, 2])
    return BezierPatch.from_net(_extend(net, rng, "v"))


def g1_join_right(base: BezierPatch, rng, lam: float) -> BezierPatch:
    """Bi-cubic neighbour right of base: constant lambda, zero kappa."""
    net = np.zeros((4, 4, 3))
    net[0] = base.net[3]
    net[1] = net[0] + lam * (base.net[3] - base.net[2])
    return BezierPatch.from_net(_extend(net, rng, "u"))


def g1_pair(rng):
    """Random G1 pair across a u-edge with polynomial (non-constant) link.

    The neighbour has bi-degree (3, 5): its first two cross-boundary rows
    come from the quadratic-lambda / cubic-kappa band relation (transverse
    degree 3), the remaining rows are random but smooth.  Returns
    (a, b, lambda ordinates, kappa ordinates); the correspondence is a's
    u=1 side to b's u=0 side.
    """
    from smoothpatch.bezier import elevate_row
    from smoothpatch.construct import g1_band_offsets

    a = smooth_patch(rng)
    lam_o = rng.uniform(0.5, 2.0, size=3)
    kap_o = rng.uniform(-0.4, 0.4, size=4)
    bnd = a.net[3, :]
    inr = a.net[2, :]
    net = np.zeros((4, 6, 3))
    net[0] = elevate_row(bnd, 5)
    net[1] = net[0] + g1_band_offsets(bnd, inr, lam_o, kap_o) / 3.0
    for i in (2, 3):
        for j in range(6):
            net[i, j] = 2 * net[i - 1, j] - net[i - 2, j] + rng.normal(scale=0.04, size=3)
    return a, BezierPatch.from_net(net), lam_o, kap_o


def creased_pair(rng):
    """G0 pair whose tangent planes disagree along the shared edge."""
    from smoothpatch.bezier import normal_vector

    a, b, _, _ = g1_pair(rng)
    net = b.net.copy()
    # kick the band row off the tangent plane, along the surface normal
    normal = normal_vector(a, 1.0, 0.5)
    direction = normal / np.linalg.norm(normal)
    net[1, :] += (0.05 + rng.uniform(0.0, 0.2)) * direction
    return a, BezierPatch.from_net(net)


def flat_crease_pair(angle):
    """Planar unit patch plus a copy folded by ``angle`` about the shared edge."""
    a = BezierPatch.from_net([[[0, 0, 0], [0, 1, 0]], [[1, 0, 0], [1, 1, 0]]])
    c, s = np.cos(angle), np.sin(angle)
    b = BezierPatch.from_net([[[1, 0, 0], [1, 1, 0]], [[1 + c, 0, s], [1 + c, 1, s]]])
    return a, b


# ---------------------------------------------------------------------------
# corner and ring generators

def split_corner(rng, u=0.5, v=0.5, degree=3):
    """Quadrant split of one smooth patch: exactly G2, lambda constant."""
    g = smooth_patch(rng, degree, degree)
    ll, hl, lh, hh = split_patch(g, u=u, v=v)
    return g, ll, hl, lh, hh  # p1, p2, p4, p3 ordering: (ll, hl, lh, hh)


def constructive_corner(rng, lam12=None, lam14=None):
    """Three bi-cubics forming a G1 corner with constant lambdas, zero kappa."""
    lam12 = rng.uniform(0.5, 2.0) if lam12 is None else lam12
    lam14 = rng.uniform(0.5, 2.0) if lam14 is None else lam14
    r1 = smooth_patch(rng)
    r2 = g1_join_right(r1, rng, lam12)
    r4 = g1_join_up(r1, rng, lam14)
    return r1, r2, r4, lam12, lam14


def kappa_corner(rng, kap12_0=0.3, kap14_0=-0.2):
    """G1 corner whose joins carry the vertex-vanishing linear kappa shape.

    kappa(t) = kappa(0) * (1 - t): multiplying the degree-2 edge derivative
    by (1 - t) re-weights its Bernstein coefficients by (1, 2/3, 1/3, 0) at
    degree 3, which gives the control-point recipe below.
    """
    lam12 = rng.uniform(0.8, 1.5)
    lam14 = rng.uniform(0.8, 1.5)
    r1 = smooth_patch(rng)
    w = np.array([1.0, 2.0 / 3.0, 1.0 / 3.0])
    net2 = np.zeros((4, 4, 3))
    net2[0] = r1.net[3]
    net2[1] = net2[0] + lam12 * (r1.net[3] - r1.net[2])
    edge = r1.net[3, 1:] - r1.net[3, :-1]
    for j in range(3):
        net2[1, j] += kap12_0 * w[j] * edge[j]
    r2 = BezierPatch.from_net(_extend(net2, rng, "u"))
    net4 = np.zeros((4, 4, 3))
    net4[:, 0] = r1.net[:, 3]
    net4[:, 1] = net4[:, 0] + lam14 * (r1.net[:, 3] - r1.net[:, 2])
    edge_u = r1.net[1:, 3] - r1.net[:-1, 3]
    for i in range(3):
        net4[i, 1] += kap14_0 * w[i] * edge_u[i]
    r4 = BezierPatch.from_net(_extend(net4, rng, "v"))
    return r1, r2, r4, lam12, lam14


def uniform_ring(rng):
    """3x3 subdivision of one bi-cubic; ring patches plus the true centre."""
    g = smooth_patch(rng, span=3.0, z_scale=0.4)
    cells = split_grid(g, [1 / 3, 2 / 3], [1 / 3, 2 / 3])
    patches = {1: cells[0][0], 2: cells[0][1], 3: cells[0][2], 4: cells[1][0],
               6: cells[1][2], 7: cells[2][0], 8: cells[2][1], 9: cells[2][2]}
    return patches, cells[1][1]


def random_ring(rng):
    """Ring with an independent lambda constant on each of the 8 joins.

    Built by propagating the join relation patch by patch; the free control
    points of patches 8 and 9 are chosen so the last corner closes (one
    square of the ring is doubly constrained).
    """
    lam = {k: rng.uniform(0.5, 2.0) for k in ("12", "32", "14", "74", "78", "98", "36", "96")}
    p1 = smooth_patch(rng)
    p2 = g1_join_up(p1, rng, lam["12"])
    p3 = g1_join_up(p2, rng, 1.0 / lam["32"])
    p4 = g1_join_right(p1, rng, lam["14"])
    p7 = g1_join_right(p4, rng, 1.0 / lam["74"])
    p6 = g1_join_right(p3, rng, lam["36"])
    p8 = g1_join_up(p7, rng, lam["78"])
    lam69 = 1.0 / lam["96"]
    lam89 = 1.0 / lam["98"]
    n8 = p8.net.copy()
    q6 = p6.net
    n8[0, 3] = q6[3, 0]
    n8[0, 2] = n8[0, 3] - (q6[3, 1] - q6[3, 0]) / lam89
    n8[1, 3] = q6[3, 0] + lam69 * (q6[3, 0] - q6[2, 0])
    q9_11 = q6[3, 1] + lam69 * (q6[3, 1] - q6[2, 1])
    n8[1, 2] = n8[1, 3] - (q9_11 - n8[1, 3]) / lam89
    p8 = BezierPatch.from_net(n8)
    n9 = np.zeros((4, 4, 3))
    n9[0, :] = q6[3, :]
    n9[1, :] = n9[0, :] + lam69 * (q6[3, :] - q6[2, :])
    n9[:, 0] = p8.net[:, 3]
    n9[:, 1] = p8.net[:, 3] + lam89 * (p8.net[:, 3] - p8.net[:, 2])
    for i in (2, 3):
        step = n9[i, 1] - n9[i, 0]
        n9[i, 2] = n9[i, 1] + step + rng.normal(scale=0.05, size=3)
        n9[i, 3] = n9[i, 2] + step + rng.normal(scale=0.05, size=3)
    patches = {1: p1, 2: p2, 3: p3, 4: p4, 6: p6, 7: p7, 8: p8,
               9: BezierPatch.from_net(n9)}
    return patches, lam


def random_strips(rng, n_rows):
    """Two internally-G1 strips (constant lambda, zero kappa joins)."""
    a0 = smooth_patch(rng)
    b0 = BezierPatch.from_net(smooth_net(rng) + np.array([2.5, 0.0, 0.0]))
    strip_a, strip_b = [a0], [b0]
    for _ in range(n_rows - 1):
        strip_a.append(g1_join_up(strip_a[-1], rng, rng.uniform(0.6, 1.6)))
        strip_b.append(g1_join_up(strip_b[-1], rng, rng.uniform(0.6, 1.6)))
    return strip_a, strip_b


def rigid_motion(rng):
    """Random rotation matrix and translation vector."""
    m = rng.normal(size=(3, 3))
    q, r = np.linalg.qr(m)
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q, rng.normal(scale=2.0, size=3)
