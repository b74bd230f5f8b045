"""Reeb chords of an exact immersed curve in T*S^1 and the bound that includes them.

The curve x = t - R sin 2t, xi = C1 cos 2t + C2 cos t + R C1 has two double
points; C2 breaks the symmetry so the two chords have different lengths.
"""
import math

from tamcalc.bounds import group_bound, preset, verify_conjecture
from tamcalc.lagrangian import TwoLobe, closing_defects, reeb_chords, unit_ball_check
from tamcalc.scalar import Scalar

D = TwoLobe(R=0.8, C1=0.3, C2=0.2)
L = D.model(2048)
dx, dxi, action = closing_defects(L)
print(f"closing defects: x {dx:.1e}, xi {dxi:.1e}, integral of xi dx {action:.1e}")
print("unit-ball margin:", unit_ball_check(L))

chords = reeb_chords(L, 1e-6)
for c, want in zip(sorted(chords.chords, key=lambda c: c.length), D.designed_lengths()):
    print(f"chord at s = ({c.s1:.6f}, {c.s2:.6f}): length {c.length:.12f}  designed {want:.12f}")
print("l_max =", chords.l_max)

pi = Scalar.from_float(math.pi)
print("bound without chords:", group_bound(1, pi, 0))
print("bound with l_max:    ", group_bound(1, pi, Scalar.from_float(chords.l_max)))

rep = verify_conjecture(L, preset("u1"))
print("verdict:", rep.verdict, "(gamma needs a sheaf quantization, so the check is conditional)")
