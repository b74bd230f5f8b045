"""First-principles derived computations for sheaves on the line.

* :func:`oracle_hom_star` computes ``hom*(F, G) = R s_* RHom(q2^-1 i^-1 F, q1^! G)``
  on the face poset of a planar line arrangement and pushes it down along
  ``s(x, y) = x + y`` cell by cell.
* :func:`tau_morphism` builds ``P(F) -> T_c F`` where ``P(F) = R s_*(F [x] k_[0,inf))``
  and ``T_c F = R s_*(F [x] k_{c})``, induced by restriction ``k_[0,inf) -> k_{c}``.
* :func:`is_zero_morphism` decides whether a chain map is zero in the derived
  category of the line.
"""
from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .. import linalg as la
from ..barcode import Barcode
from ..scalar import Scalar, S
from .arrangement import Arrangement
from .grid import GridPoset, barcode_to_complex, gabriel_decompose, interval_multiplicities, reflect
from .poset import BarComplex, ChainMap, Complex, Poset, Rep, constant_complex, postcompose_matrix


def _nums(grid: GridPoset) -> list[int]:
    return [t.num for t in grid.breakpoints]


def _axis_pullback(X: Complex, arr: Arrangement, kind: str) -> Complex:
    """Inverse image of a grid complex along the projection onto one axis."""
    P = arr.poset
    cmap = [arr.axis_cell(c, kind) for c in range(P.n)]
    src = X.poset
    terms, diffs = {}, {}
    for m, r in X.terms.items():
        dims = [r.dims[cmap[e]] for e in range(P.n)]
        maps = {}
        for i in range(P.n):
            for j in P.above[i]:
                maps[(i, j)] = r.map(cmap[i], cmap[j])
        terms[m] = Rep(P, X.p, dims, maps)
    for m in X.diffs:
        diffs[m] = [X.d(m, cmap[e]) for e in range(P.n)]
    assert all(src.leq[cmap[i], cmap[j]] for i in range(P.n) for j in P.above[i])
    return Complex(P, X.p, terms, diffs)


def _tensor(X: Complex, K: Rep) -> Complex:
    """``X (x) K`` for a rep ``K`` of rank at most one with identity maps."""
    P, p = X.poset, X.p
    on = [K.dims[e] > 0 for e in range(P.n)]
    terms, diffs = {}, {}
    for m, r in X.terms.items():
        dims = [r.dims[e] if on[e] else 0 for e in range(P.n)]
        maps = {(i, j): (r.map(i, j) if on[i] and on[j] else None) for i in range(P.n)
                for j in P.above[i]}
        maps = {k: v for k, v in maps.items() if v is not None}
        terms[m] = Rep(P, p, dims, maps)
    for m in X.diffs:
        diffs[m] = [X.d(m, e) if on[e] else la.zeros(p, 0, 0) for e in range(P.n)]
    return Complex(P, p, terms, diffs)


@dataclass
class Pushforward:
    """``R s_* RHom(A, B)`` as a complex on the output grid, plus bookkeeping."""

    complex: Complex
    bar: BarComplex
    idx: list            # per output cell: {degree: coordinates}


def _upset_over(arr: Arrangement, grid: GridPoset, rho: int) -> list[int]:
    return np.nonzero(np.isin(arr.axis["s"], grid.upset(rho)))[0].tolist()


def pushforward_rhom(arr: Arrangement, A: Complex, B: Complex,
                     grid: GridPoset | None = None) -> Pushforward:
    """Push ``RHom(A, B)`` forward along ``s``; the output grid is the diagonal lines."""
    p = A.p
    if grid is None:
        grid = GridPoset(Scalar(int(v)) for v in arr.values("s"))
    bc = BarComplex(A, B)
    idx = [bc.indices(_upset_over(arr, grid, rho)) for rho in range(grid.n)]
    degs = sorted(bc.size)
    terms, diffs = {}, {}
    for m in degs:
        dims = [len(idx[r].get(m, ())) for r in range(grid.n)]
        maps = {}
        for (r, r2) in grid.arrows:
            src, dst = idx[r].get(m, np.array([], dtype=np.intp)), idx[r2].get(m, np.array([], dtype=np.intp))
            M = la.zeros(p, len(dst), len(src))
            if len(dst):
                pos = {int(c): k for k, c in enumerate(src)}
                for a, c in enumerate(dst):
                    M[a, pos[int(c)]] = 1
            maps[(r, r2)] = M
        terms[m] = Rep(grid, p, dims, maps)
    for m in degs:
        if m + 1 not in bc.size:
            continue
        mats = []
        for r in range(grid.n):
            rows = idx[r].get(m + 1, np.array([], dtype=np.intp))
            cols = idx[r].get(m, np.array([], dtype=np.intp))
            mats.append(bc.D[m][np.ix_(rows, cols)] if len(rows) and len(cols)
                        else la.zeros(p, len(rows), len(cols)))
        diffs[m] = mats
    return Pushforward(Complex(grid, p, terms, diffs), bc, idx)


def hom_star_complex(F: Complex, G: Complex) -> Complex:
    """``hom*(F, G)`` as a complex on the grid of all differences of breakpoints."""
    if F.p != G.p:
        raise ValueError("field mismatch")
    fb, gb = _nums(F.poset), _nums(G.poset)
    xs = gb
    ys = [-t for t in fb]
    ss = sorted({g - f for g in gb for f in fb})
    arr = Arrangement.build(xs, ys, ss)
    A = _axis_pullback(reflect(F), arr, "y")
    B = _axis_pullback(G, arr, "x")
    return pushforward_rhom(arr, A, B).complex.shift(1)


def oracle_hom_star(F, G, p: int = 2) -> Barcode:
    """Barcode of ``hom*(F, G)``; arguments are grid complexes or barcodes."""
    if isinstance(F, Barcode):
        F = barcode_to_complex(F, p=p)
    if isinstance(G, Barcode):
        G = barcode_to_complex(G, p=p)
    if not F.terms or not G.terms:
        return Barcode()
    return gabriel_decompose(hom_star_complex(F, G))


# ---------------------------------------------------------------------------
# Tamarkin's morphism

def _convolution_arrangement(F: Complex, c: int) -> Arrangement:
    fb = _nums(F.poset)
    ys = sorted({0, c})
    return Arrangement.build(fb, ys, sorted({t + y for t in fb for y in ys}))


def _ray_and_point(arr: Arrangement, c: int, p: int):
    """``k_[0,inf)``, ``k_{c}`` pulled back from the y axis and the restriction between them."""
    P = arr.poset
    ys = arr.values("y")
    yc = [arr.axis_cell(e, "y") for e in range(P.n)]
    zero_cell = 2 * ys.index(0) + 1
    c_cell = 2 * ys.index(c) + 1
    ray = [e for e in range(P.n) if yc[e] >= zero_cell]
    point = [e for e in range(P.n) if yc[e] == c_cell]
    return Rep.constant(P, p, ray), Rep.constant(P, p, point), point


def tau_morphism(F, c, p: int = 2) -> ChainMap:
    """The chain map ``P(F) -> T_c F`` on a common output grid.

    ``c`` must be a nonnegative scalar; it joins the breakpoints of the
    arrangement so any value representable in the fixed-point scale works.
    """
    if isinstance(F, Barcode):
        F = barcode_to_complex(F, p=p)
    c = S(c)
    if c < S(0):
        raise ValueError("tau_c needs c >= 0")
    arr = _convolution_arrangement(F, c.num)
    K1, K2, point = _ray_and_point(arr, c.num, F.p)
    X = _axis_pullback(F, arr, "x")
    X1, X2 = _tensor(X, K1), _tensor(X, K2)
    k = constant_complex(arr.poset, F.p)
    P1 = pushforward_rhom(arr, k, X1)
    P2 = pushforward_rhom(arr, k, X2, P1.complex.poset)
    pt = set(point)
    g = {}
    for m, r in X1.terms.items():
        g[m] = [la.eye(F.p, r.dims[e]) if e in pt else la.zeros(F.p, X2.term(m).dims[e], r.dims[e])
                for e in range(arr.poset.n)]
    g_map = ChainMap(X1, X2, g)
    comps = {}
    grid = P1.complex.poset
    for m in P1.bar.size:
        full = postcompose_matrix(P1.bar, P2.bar, g_map, m)
        mats = []
        for r in range(grid.n):
            rows = P2.idx[r].get(m, np.array([], dtype=np.intp))
            cols = P1.idx[r].get(m, np.array([], dtype=np.intp))
            mats.append(full[np.ix_(rows, cols)] if len(rows) and len(cols)
                        else la.zeros(F.p, len(rows), len(cols)))
        comps[m] = mats
    return ChainMap(P1.complex, P2.complex, comps)


def convolution_with_ray(F, p: int = 2) -> Complex:
    """``P(F)``; isomorphic to ``F`` exactly when ``F`` lies in the positive half."""
    return tau_morphism(F, 0, p).src


# ---------------------------------------------------------------------------
# zero test in the derived category of a grid

def is_zero_morphism(f: ChainMap) -> bool:
    """Whether ``f`` is zero in the derived category of the grid.

    Every object is a sum of shifted interval modules ``Z[-m]`` (Gabriel plus
    hereditarity), so ``f = 0`` iff it kills ``Hom(Z[-m], src)`` for every
    summand ``Z[-m]`` of ``src``.  Those groups are computed with the cobar
    complex, where postcomposition with ``f`` is explicit.
    """
    X, Y = f.src, f.dst
    grid = X.poset
    p = X.p
    for m in X.degrees:
        H = X.cohomology(m).rep
        if not H.total_dim:
            continue
        for (i, j) in interval_multiplicities(H):
            Z = Complex.from_rep(Rep.constant(grid, p, range(i, j + 1)))
            bx, by = BarComplex(Z, X), BarComplex(Z, Y)
            if m not in bx.size:
                continue
            cyc = la.nullspace(p, bx.D[m]) if m + 1 in bx.size else la.eye(p, bx.size[m])
            if cyc.shape[1] == 0:
                continue
            img = la.matmul(p, postcompose_matrix(bx, by, f, m), cyc)
            bnd = by.D[m - 1] if m - 1 in by.D else la.zeros(p, by.size.get(m, 0), 0)
            if not la.in_span(p, bnd, img):
                return False
    return True


def tau_is_zero(F, c, p: int = 2) -> bool:
    return is_zero_morphism(tau_morphism(F, c, p))


# ---------------------------------------------------------------------------
# costalks, sections and the grid-scale identities

def costalk_dims(X: Complex, t) -> dict:
    """``dim H^m RGamma_{t}(X)`` at a breakpoint ``t`` of the grid."""
    grid = X.poset
    cell = grid.cell_of(t)
    if not GridPoset.is_point(cell):
        raise ValueError(f"{t} is not a breakpoint; refine the grid first")
    W = grid.upset(cell)
    k = Complex.from_rep(Rep.constant(grid, X.p, [cell]))
    return BarComplex(k, X).cohomology_dims(W)


def sections_over(X: Complex, lo=None, hi=None) -> dict:
    """``dim H^m RGamma((lo, hi); X)`` for breakpoints (``None`` = infinite end)."""
    grid = X.poset
    W = [e for e in range(grid.n) if _cell_inside(grid, e, lo, hi)]
    k = constant_complex(grid, X.p)
    return BarComplex(k, X).cohomology_dims(W)


def _cell_inside(grid: GridPoset, e: int, lo, hi) -> bool:
    a, b = grid.cell_bounds(e)
    if grid.is_point(e):
        return (lo is None or a > S(lo)) and (hi is None or a < S(hi))
    return (lo is None or a >= S(lo)) and (hi is None or b <= S(hi))


def shift_dims(d: dict, k: int) -> dict:
    """Cohomology dimensions of ``X[k]``."""
    return {m - k: v for m, v in d.items()}


def morphism_dims(F: Complex, G: Complex) -> dict:
    """``dim Ext^m(F, G)`` for complexes on the same grid."""
    return BarComplex(F, G).cohomology_dims()


def common_grid(*grids: GridPoset, extra=()) -> GridPoset:
    pts = set(extra)
    for g in grids:
        pts.update(g.breakpoints)
    return GridPoset(pts)


@dataclass
class CostalkReport:
    c: Scalar
    costalk: dict
    morphisms: dict

    @property
    def agree(self) -> bool:
        return self.costalk == self.morphisms


def section_costalk_check(F: Barcode, G: Barcode, c, p: int = 2) -> CostalkReport:
    """Compare the costalk of ``hom*(F, G)`` at ``-c`` with ``RHom(F, T_c G)``."""
    from ..barcode import translate
    c = S(c)
    H = oracle_hom_star(F, G, p)
    Hc = barcode_to_complex(H, GridPoset(
        [t for b in H for t in (b.interval.lo, b.interval.hi) if t.finite] + [-c]), p)
    left = costalk_dims(Hc, -c) if H.bars else {}
    TG = translate(G, c)
    grid = GridPoset([t for B in (F, TG) for b in B for t in (b.interval.lo, b.interval.hi)
                      if t.finite])
    right = morphism_dims(barcode_to_complex(F, grid, p), barcode_to_complex(TG, grid, p)) \
        if F.bars and G.bars else {}
    return CostalkReport(c, left, right)


def restriction_vanishes(X: Complex, lo) -> bool:
    """Whether ``X`` restricted to ``[lo, inf)`` is zero (no cohomology on those cells)."""
    grid = X.poset
    lo = S(lo)
    cells = [e for e in range(grid.n)
             if (grid.cell_bounds(e)[0] >= lo if grid.is_point(e) else grid.cell_bounds(e)[1] > lo)]
    for m in X.degrees:
        H = X.cohomology(m).rep
        if any(H.dims[e] for e in cells):
            return False
    return True


__all__ = [
    "CostalkReport", "common_grid", "convolution_with_ray", "costalk_dims",
    "hom_star_complex", "is_zero_morphism", "morphism_dims", "oracle_hom_star",
    "pushforward_rhom", "restriction_vanishes", "section_costalk_check",
    "sections_over", "shift_dims", "tau_is_zero", "tau_morphism",
]
