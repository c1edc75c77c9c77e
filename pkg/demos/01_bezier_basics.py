"""Bezier patch basics: evaluation, derivatives, degree elevation, splitting.

Run:  python3 demos/01_bezier_basics.py
"""

import numpy as np

from smoothpatch import (
    BezierPatch,
    elevate_cubic_row_to_quintic,
    patch_derivative,
    patch_eval,
    split_patch,
    tessellate,
)

# A bi-cubic patch: a gently waving sheet over the unit square.
rng = np.random.default_rng(0)
net = np.zeros((4, 4, 3))
net[:, :, 0] = np.linspace(0, 1, 4)[:, None]
net[:, :, 1] = np.linspace(0, 1, 4)[None, :]
net[:, :, 2] = 0.25 * np.sin(np.linspace(0, np.pi, 4))[:, None] * np.cos(
    np.linspace(0, np.pi, 4))[None, :]
patch = BezierPatch.from_net(net)

print("corner (0,0):", patch_eval(patch, 0.0, 0.0))
print("midpoint    :", patch_eval(patch, 0.5, 0.5))
print("r_u at mid  :", patch_derivative(patch, 0.5, 0.5, 1, 0))
print("r_uv at mid :", patch_derivative(patch, 0.5, 0.5, 1, 1))

# Degree elevation rewrites a cubic row exactly at degree five.  The curve
# does not move; only its control polygon gains points.
row = net[:, 0]
quintic = elevate_cubic_row_to_quintic(row)
print("\ncubic row   :", np.round(row[:, 0], 3))
print("quintic row :", np.round(quintic[:, 0], 3))

# De Casteljau subdivision is exact: both halves re-trace the original.
left, right = split_patch(patch, u=0.5)
probe = patch_eval(patch, 0.25, 0.7)
print("\noriginal at (0.25, 0.7): ", probe)
print("left half at (0.5, 0.7): ", patch_eval(left, 0.5, 0.7))

mesh = tessellate(patch, 8, 8)
print(f"\ntessellation: {len(mesh.vertices)} vertices, {len(mesh.faces)} triangles")
