"""Spectral invariants of a graph Lagrangian on the circle, and the bound they obey.

Run: python demos/circle_spectral.py [out_dir]
"""
import math
import pathlib
import sys

import numpy as np

from tamcalc.barcode import to_json
from tamcalc.bounds import group_bound, preset, verify_conjecture
from tamcalc.homstar import V, v
from tamcalc.lagrangian import graph_s1, unit_ball_check
from tamcalc.persistence import SimplicialComplex, circle_angles, spectral_from_function
from tamcalc.render import render_svg
from tamcalc.scalar import Scalar

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".")

# f = 0.4 sin(theta) + 0.15 cos(3 theta) sampled on a 360-cycle
th = circle_angles(360)
f = 0.4 * np.sin(th) + 0.15 * np.cos(3 * th)
L = graph_s1(f)
print("unit-ball margin:", unit_ball_check(L))

sd, B = spectral_from_function(SimplicialComplex.circle(360), f)
print("barcode of the sublevel filtration:")
for b in B:
    print("   ", b)
print(f"c_- = {sd.c_minus}, c_+ = {sd.c_plus}, gamma = {sd.gamma}")

# v(B, B) is the boundary depth of hom*(B, B) cut to the positive ray
print("V(B, B):", V(B, B))
print("v(B, B) =", v(B, B))

bound = group_bound(1, Scalar.from_float(math.pi), 0)
print(f"gamma <= v(B,B) <= (n+1)(2l + l_max) = {bound}")

rep = verify_conjecture(L, preset("u1"))
(out / "circle_report.md").write_text(rep.to_markdown())
(out / "circle_barcode.json").write_text(to_json(B))
(out / "circle_barcode.svg").write_text(render_svg(B))
print("verdict:", rep.verdict, f"(report, barcode and SVG written to {out}/)")
