"""Sheaves on a finite subdivision of the real line.

Breakpoints ``t_1 < ... < t_N`` cut the line into ``2N + 1`` cells, numbered
left to right: even cells are the open intervals ``(t_k, t_{k+1})`` (with
``t_0 = -inf``, ``t_{N+1} = +inf``) and cell ``2k - 1`` is the point ``t_k``.
A point specializes to the two intervals next to it, so a constructible sheaf
is a zigzag ``V_0 <- V_1 -> V_2 <- V_3 -> ...`` of vector spaces.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .. import linalg as la
from ..barcode import Bar, Barcode, Interval
from ..scalar import NEG_INF, POS_INF, S, Scalar
from .poset import Complex, Poset, Rep


class GridPoset(Poset):
    def __init__(self, breakpoints=()):
        pts = sorted({S(t) for t in breakpoints})
        if any(not t.finite for t in pts):
            raise ValueError("breakpoints must be finite")
        self.breakpoints: list[Scalar] = pts
        n = 2 * len(pts) + 1
        leq = np.eye(n, dtype=bool)
        for c in range(1, n, 2):
            leq[c, c - 1] = leq[c, c + 1] = True
        super().__init__(leq)

    @property
    def N(self) -> int:
        return len(self.breakpoints)

    def _t(self, k: int) -> Scalar:
        if k == 0:
            return NEG_INF
        if k == self.N + 1:
            return POS_INF
        return self.breakpoints[k - 1]

    @staticmethod
    def is_point(cell: int) -> bool:
        return cell % 2 == 1

    def cell_bounds(self, cell: int) -> tuple[Scalar, Scalar]:
        if self.is_point(cell):
            t = self._t((cell + 1) // 2)
            return t, t
        k = cell // 2
        return self._t(k), self._t(k + 1)

    def segment_interval(self, i: int, j: int) -> Interval:
        """The real interval covered by the contiguous cells ``i..j``."""
        lo, _ = self.cell_bounds(i)
        _, hi = self.cell_bounds(j)
        return Interval(lo, hi, lo_open=not self.is_point(i), hi_open=not self.is_point(j))

    def interval_segment(self, iv: Interval) -> tuple[int, int]:
        """Inverse of :meth:`segment_interval`; endpoints must be breakpoints."""
        idx = {t: k + 1 for k, t in enumerate(self.breakpoints)}

        def where(t):
            if t == NEG_INF:
                return 0
            if t == POS_INF:
                return self.N + 1
            if t not in idx:
                raise ValueError(f"endpoint {t} is not a grid breakpoint")
            return idx[t]

        a, b = where(iv.lo), where(iv.hi)
        i = 2 * a if iv.lo_open else 2 * a - 1
        j = 2 * b - 2 if iv.hi_open else 2 * b - 1
        if i > j:
            raise ValueError(f"{iv} covers no cell")
        return i, j

    def cell_of(self, t: Scalar) -> int:
        """Index of the cell containing the (finite) value ``t``."""
        t = S(t)
        k = 0
        for k0, b in enumerate(self.breakpoints):
            if t == b:
                return 2 * k0 + 1
            if t > b:
                k = k0 + 1
        return 2 * k

    @cached_property
    def arrows(self) -> list[tuple[int, int]]:
        return [(c, c + d) for c in range(1, self.n, 2) for d in (-1, 1)]


def interval_rep(grid: GridPoset, p: int, i: int, j: int) -> Rep:
    return Rep.constant(grid, p, range(i, j + 1))


def barcode_to_complex(B: Barcode, grid: GridPoset | None = None, p: int = 2) -> Complex:
    """Split complex (zero differentials) realizing a barcode on a grid.

    A bar of degree ``d`` is placed in cohomological degree ``-d``.
    """
    if grid is None:
        grid = GridPoset(t for b in B for t in (b.interval.lo, b.interval.hi) if t.finite)
    terms: dict = {}
    for b in B.expanded():
        i, j = grid.interval_segment(b.interval)
        r = interval_rep(grid, p, i, j)
        m = -b.degree
        terms[m] = terms[m].direct_sum(r) if m in terms else r
    return Complex(grid, p, terms, {})


def refine(X: Complex, grid: GridPoset) -> Complex:
    """Pull a complex back to a finer grid (every old breakpoint must survive)."""
    old = X.poset
    if not isinstance(old, GridPoset) or not set(old.breakpoints) <= set(grid.breakpoints):
        raise ValueError("target grid must refine the source grid")
    cmap = [_coarse_cell(old, grid, c) for c in range(grid.n)]
    return pullback(X, grid, cmap)


def _coarse_cell(old: GridPoset, new: GridPoset, c: int) -> int:
    lo, hi = new.cell_bounds(c)
    if lo == hi:
        return old.cell_of(lo)
    # an open cell of the fine grid sits inside one open cell of the coarse grid
    if lo == NEG_INF:
        return 0 if not old.breakpoints or hi <= old.breakpoints[0] else old.cell_of(hi) - 1
    cell = old.cell_of(lo)
    return cell + 1 if GridPoset.is_point(cell) else cell


def pullback(X: Complex, poset: Poset, cmap) -> Complex:
    """Inverse image along an order-preserving map ``cmap: poset -> X.poset``."""
    p, src = X.p, X.poset
    for i in range(poset.n):
        for j in poset.above[i]:
            if not src.leq[cmap[i], cmap[j]]:
                raise ValueError("cell map does not preserve the order")
    terms, diffs = {}, {}
    for m, r in X.terms.items():
        dims = [r.dims[cmap[e]] for e in range(poset.n)]
        maps = {(i, j): r.map(cmap[i], cmap[j]) for i in range(poset.n) for j in poset.above[i]}
        terms[m] = Rep(poset, p, dims, maps)
    for m in X.diffs:
        diffs[m] = [X.d(m, cmap[e]) for e in range(poset.n)]
    return Complex(poset, p, terms, diffs)


def reflect(X: Complex) -> Complex:
    """Inverse image along ``t -> -t`` (the grid is mirrored)."""
    grid = X.poset
    mirror = GridPoset([-t for t in grid.breakpoints])
    cmap = [grid.n - 1 - c for c in range(grid.n)]
    return pullback(X, mirror, cmap)


def translate_complex(X: Complex, c) -> Complex:
    """Push forward along ``t -> t + c``: the same zigzag on shifted breakpoints."""
    grid = X.poset
    moved = GridPoset([t + S(c) for t in grid.breakpoints])
    return pullback(X, moved, list(range(grid.n)))


# ---------------------------------------------------------------------------
# Gabriel decomposition through the rank invariant

def _segment_rank(rep: Rep, i: int, j: int) -> int:
    """Rank of ``lim -> colim`` of the zigzag restricted to cells ``i..j``."""
    p = rep.p
    cells = list(range(i, j + 1))
    off, total = {}, 0
    for c in cells:
        off[c] = total
        total += rep.dims[c]
    if total == 0:
        return 0
    arrows = [(x, y) for x in cells if x % 2 == 1 for y in (x - 1, x + 1) if i <= y <= j]
    cons_rows, rel_cols = [], []
    for x, y in arrows:
        M = rep.map(x, y)
        dx, dy = rep.dims[x], rep.dims[y]
        if dx == 0 and dy == 0:
            continue
        C = la.zeros(p, dy, total)
        C[:, off[x]:off[x] + dx] = M
        C[:, off[y]:off[y] + dy] = la.reduce(p, C[:, off[y]:off[y] + dy] - la.eye(p, dy))
        cons_rows.append(C)
        R = la.zeros(p, total, dx)
        R[off[x]:off[x] + dx, :] = la.eye(p, dx)
        R[off[y]:off[y] + dy, :] = la.reduce(p, -M)
        rel_cols.append(R)
    cons = np.concatenate(cons_rows, axis=0) if cons_rows else la.zeros(p, 0, total)
    K = la.nullspace(p, cons)
    if K.shape[1] == 0:
        return 0
    # lim -> V_i -> colim (any single cell gives the same map on a connected segment)
    K = K.copy()
    K[off[i] + rep.dims[i]:] = 0
    R = np.concatenate(rel_cols, axis=1) if rel_cols else la.zeros(p, total, 0)
    return la.rank(p, np.concatenate([R, K], axis=1)) - la.rank(p, R)


def interval_multiplicities(rep: Rep) -> dict:
    """``{(i, j): m}``: multiplicity of each interval summand of a grid rep."""
    n = rep.poset.n
    r = {}
    for i in range(n):
        for j in range(i, n):
            r[(i, j)] = _segment_rank(rep, i, j)

    def rk(i, j):
        return r.get((i, j), 0) if 0 <= i and j < n else 0

    out = {}
    for (i, j) in r:
        m = rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1)
        if m < 0:
            raise ValueError("inconsistent structure maps (negative multiplicity)")
        if m:
            out[(i, j)] = m
    if sum((j - i + 1) * m for (i, j), m in out.items()) != rep.total_dim:
        raise ValueError("inconsistent structure maps (rank invariant does not add up)")
    return out


def gabriel_decompose(obj, degree: int = 0) -> Barcode:
    """Barcode of a grid rep (placed in bar degree ``degree``) or of a grid complex."""
    if isinstance(obj, Rep):
        grid = obj.poset
        obj.check()
        return Barcode(Bar(grid.segment_interval(i, j), degree, m)
                       for (i, j), m in interval_multiplicities(obj).items())
    X = obj
    bars = Barcode()
    for m in X.degrees:
        h = X.cohomology(m).rep
        if h.total_dim:
            bars = bars + gabriel_decompose(h, -m)
    return bars
