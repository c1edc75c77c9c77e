"""Checking tangent-plane (G1) and curvature (G2) continuity across an edge.

Three pairs of patches share a boundary curve:

  1. two halves of one smooth surface           -> G1 and G2 pass
  2. a planar patch and a faster-moving planar
     neighbour (different parametric speeds)    -> G1 passes anyway
  3. the same pair folded by 30 degrees         -> both tests fail

Run:  python3 demos/02_edge_continuity.py
"""

import numpy as np

from smoothpatch import (
    BezierPatch,
    EdgeCorrespondence,
    check_g1_edge,
    check_g2_edge,
    solve_edge_link,
    split_patch,
)

corr = EdgeCorrespondence("u1", "u0")


def show(label, report):
    print(f"{label:34s} link {report.link_residual:9.2e}   "
          f"oracle {report.oracle_residual:9.2e}   "
          f"{'PASS' if report.ok else 'FAIL'}")


# 1. split halves: the link solver recovers lambda == 1, kappa == 0
rng = np.random.default_rng(1)
net = np.zeros((4, 4, 3))
net[:, :, 0] = np.linspace(0, 2, 4)[:, None]
net[:, :, 1] = np.linspace(0, 2, 4)[None, :]
net[:, :, 2] = rng.normal(scale=0.3, size=(4, 4))
left, right = split_patch(BezierPatch.from_net(net), u=0.5)
link = solve_edge_link(left, right, corr, fit_degrees=(2, 3))
print("split halves: lambda =", np.round(link.lam_samples[0], 12),
      " kappa =", np.round(link.kap_samples[0], 12))
show("split halves, G1", check_g1_edge(left, right, corr))
show("split halves, G2", check_g2_edge(left, right, corr))

# 2. geometric continuity is parametrization independent: the neighbour
# crosses the edge three times faster and shears sideways, yet the tangent
# planes agree
flat = BezierPatch.from_net([[[0, 0, 0], [0, 1, 0]], [[1, 0, 0], [1, 1, 0]]])
fast = BezierPatch.from_net([[[1, 0, 0], [1, 1, 0]], [[4, 1, 0], [4, 2, 0]]])
link = solve_edge_link(flat, fast, corr, fit_degrees=(2, 3))
print("\nmismatched speeds: lambda =", link.lam_samples[0],
      " kappa =", link.kap_samples[0])
show("coplanar, mismatched speeds", check_g1_edge(flat, fast, corr))

# 3. a 30 degree crease breaks both the link test and the normal oracle
angle = np.pi / 6
c, s = np.cos(angle), np.sin(angle)
folded = BezierPatch.from_net(
    [[[1, 0, 0], [1, 1, 0]], [[1 + c, 0, s], [1 + c, 1, s]]])
show("creased by 30 degrees", check_g1_edge(flat, folded, corr))
