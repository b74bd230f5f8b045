"""Face posets of planar arrangements of vertical, horizontal and anti-diagonal lines.

Cells are found from sample points: all vertices, points on every edge, and
points pushed off every edge to both sides.  A cell is its sign vector with
respect to all lines; ``s <= t`` when ``s`` lies in the closure of ``t``, i.e.
every sign of ``s`` is either zero or equal to the corresponding sign of ``t``.

Line positions are integers (fixed-point numerators).  They are multiplied by
64 so that every sample point used below has integer coordinates and all
sign tests are exact int64 arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poset import Poset

_K = 64
_KINDS = ("x", "y", "s")
# (a, b) with line value a*x + b*y - v
_COEF = {"x": (1, 0), "y": (0, 1), "s": (1, 1)}


def _line_points(kind: str, v: int, us: np.ndarray) -> np.ndarray:
    if kind == "x":
        return np.stack([np.full_like(us, v), us], axis=1)
    if kind == "y":
        return np.stack([us, np.full_like(us, v)], axis=1)
    return np.stack([us, v - us], axis=1)


@dataclass
class Arrangement:
    lines: list            # [(kind, int)] in the original (unscaled) units
    signs: np.ndarray      # cells x lines, entries in {-1, 0, 1}
    poset: Poset
    axis: dict             # kind -> array of 1D cell indices, one per cell

    @classmethod
    def build(cls, xs=(), ys=(), ss=()) -> "Arrangement":
        lines = ([("x", int(v)) for v in sorted(set(xs))]
                 + [("y", int(v)) for v in sorted(set(ys))]
                 + [("s", int(v)) for v in sorted(set(ss))])
        L = len(lines)
        A = np.array([_COEF[k] for k, _ in lines], dtype=np.int64).reshape(L, 2)
        V = np.array([v * _K for _, v in lines], dtype=np.int64)

        def values(pts):
            return pts @ A.T - V

        chunks = []
        if L == 0:
            chunks.append(np.zeros((1, 2), dtype=np.int64))
        # vertices
        verts = set()
        by_kind = {k: [v * _K for kk, v in lines if kk == k] for k in _KINDS}
        for x in by_kind["x"]:
            verts.update((x, y) for y in by_kind["y"])
            verts.update((x, s - x) for s in by_kind["s"])
        for y in by_kind["y"]:
            verts.update((s - y, y) for s in by_kind["s"])
        vert_arr = np.array(sorted(verts), dtype=np.int64).reshape(-1, 2)
        chunks.append(vert_arr)
        for li, (kind, v) in enumerate(lines):
            vv = v * _K
            if len(vert_arr):
                on = vert_arr[values(vert_arr)[:, li] == 0]
                params = np.unique(on[:, 1] if kind == "x" else on[:, 0])
            else:
                params = np.array([], dtype=np.int64)
            if len(params) == 0:
                us = np.array([0], dtype=np.int64)
            else:
                us = np.concatenate([[params[0] - _K, params[-1] + _K],
                                     (params[:-1] + params[1:]) // 2])
            mids = _line_points(kind, vv, us.astype(np.int64))
            chunks.append(mids)
            vals = np.abs(values(mids))
            vals[:, li] = np.iinfo(np.int64).max
            delta = vals.min(axis=1) // 4 if L > 1 else np.full(len(mids), _K)
            delta = np.minimum(delta, _K)
            normal = np.array(_COEF[kind], dtype=np.int64)
            chunks.append(mids + delta[:, None] * normal)
            chunks.append(mids - delta[:, None] * normal)
        pts = np.concatenate(chunks, axis=0)
        sg = np.sign(values(pts)).astype(np.int8) if L else np.zeros((len(pts), 0), np.int8)
        signs = np.unique(sg, axis=0)
        n = len(signs)
        leq = np.empty((n, n), dtype=bool)
        for i in range(n):
            si = signs[i]
            leq[i] = np.all((si == 0) | (signs == si), axis=1)
        axis = {}
        for kind in _KINDS:
            cols = [i for i, (k, _) in enumerate(lines) if k == kind]
            if not cols:
                axis[kind] = np.zeros(n, dtype=np.int64)
                continue
            sub = signs[:, cols]
            zero = sub == 0
            has_zero = zero.any(axis=1)
            first_zero = np.argmax(zero, axis=1)
            axis[kind] = np.where(has_zero, 2 * first_zero + 1, 2 * np.sum(sub > 0, axis=1))
        return cls(lines, signs, Poset(leq), axis)

    def dim(self, cell: int) -> int:
        zeros = int(np.sum(self.signs[cell] == 0))
        return 2 - min(zeros, 2)

    def axis_cell(self, cell: int, kind: str) -> int:
        """Index of the 1D grid cell (for the lines of ``kind``) containing ``cell``."""
        return int(self.axis[kind][cell])

    def values(self, kind: str) -> list:
        return [v for k, v in self.lines if k == kind]
