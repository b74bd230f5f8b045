"""Sublevel-set persistence of vertex functions on small triangulated manifolds.

The barcode of ``R a_* k_{t >= f}`` is the persistence of the lower-star
filtration ``{f <= t}``: every class is born at a closed left endpoint and
dies at an open right one.  A class of homological degree ``h`` is stored
with bar degree ``-h``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .barcode import Bar, Barcode, Interval, SpectralData, spectral_invariants
from .linalg import is_prime
from .scalar import POS_INF, S, Scalar


class SimplicialComplex:
    """Finite abstract simplicial complex on vertices ``0..n-1`` (closed under faces)."""

    def __init__(self, n_vertices: int, simplices, name: str = "custom"):
        self.n_vertices = int(n_vertices)
        self.name = name
        faces = set((v,) for v in range(self.n_vertices))
        for s in simplices:
            s = tuple(sorted(int(v) for v in s))
            if len(set(s)) != len(s):
                raise ValueError(f"degenerate simplex {s}")
            if any(v < 0 or v >= self.n_vertices for v in s):
                raise ValueError(f"simplex {s} uses an unknown vertex")
            for k in range(1, len(s) + 1):
                faces.update(combinations(s, k))
        self.simplices = sorted(faces, key=lambda s: (len(s), s))

    @property
    def dim(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def count(self, d: int) -> int:
        return sum(1 for s in self.simplices if len(s) == d + 1)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    # presets ------------------------------------------------------------
    @classmethod
    def circle(cls, k: int) -> "SimplicialComplex":
        if k < 3:
            raise ValueError("a triangulated circle needs at least 3 vertices")
        return cls(k, [(i, (i + 1) % k) for i in range(k)], f"s1({k})")

    @classmethod
    def torus(cls, m: int, n: int | None = None) -> "SimplicialComplex":
        """Flat ``m x n`` grid torus, each square cut along its diagonal."""
        n = m if n is None else n
        if m < 3 or n < 3:
            raise ValueError("torus grid must be at least 3x3")

        def v(i, j):
            return (i % m) * n + (j % n)

        tris = []
        for i in range(m):
            for j in range(n):
                tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
                tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
        return cls(m * n, tris, f"t2({m}x{n})")

    @classmethod
    def sphere3(cls, k: int = 4, l: int = 4) -> "SimplicialComplex":
        """The join of a ``k``-cycle and an ``l``-cycle (a triangulated 3-sphere)."""
        if k < 3 or l < 3:
            raise ValueError("join factors must be cycles of length >= 3")
        tets = [(i, (i + 1) % k, k + j, k + (j + 1) % l) for i in range(k) for j in range(l)]
        return cls(k + l, tets, f"s3({k},{l})")


@dataclass(frozen=True)
class FilteredComplex:
    complex: SimplicialComplex
    values: tuple                 # one Scalar per vertex

    @cached_property
    def order(self) -> list:
        """Simplices in filtration order: value, then dimension, then vertex indices."""
        return sorted(self.complex.simplices,
                      key=lambda s: (self.simplex_value(s), len(s), tuple(sorted(s, reverse=True))))

    def simplex_value(self, s) -> Scalar:
        return max(self.values[v] for v in s)

    def check(self):
        for s in self.complex.simplices:
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    if self.simplex_value(face) > self.simplex_value(s):
                        raise ValueError("filtration is not monotone")
        return self


def lower_star(K: SimplicialComplex, f) -> FilteredComplex:
    values = tuple(S(x) for x in f)
    if len(values) != K.n_vertices:
        raise ValueError(f"expected {K.n_vertices} vertex values, got {len(values)}")
    return FilteredComplex(K, values)


def _reduce(order, p: int):
    """Column reduction with clearing; returns (pairs, essential)."""
    index = {s: i for i, s in enumerate(order)}
    n = len(order)
    dims = [len(s) - 1 for s in order]
    pivot_of = {}          # low row -> column
    pairs = []
    cleared = set()
    for d in sorted(set(dims), reverse=True):
        for j in range(n):
            if dims[j] != d or j in cleared or d == 0:
                continue
            s = order[j]
            col = {}
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                col[index[face]] = (-1) ** k % p
            while col:
                low = max(col)
                if low not in pivot_of:
                    break
                other = pivot_of[low][1]
                factor = col[low] * pow(other[low], -1, p) % p
                for r, x in other.items():
                    y = (col.get(r, 0) - factor * x) % p
                    if y:
                        col[r] = y
                    else:
                        col.pop(r, None)
            if col:
                low = max(col)
                pivot_of[low] = (j, col)
                pairs.append((low, j))
                cleared.add(low)
    paired = {i for pr in pairs for i in pr}
    essential = [i for i in range(n) if i not in paired]
    return pairs, essential


@dataclass(frozen=True)
class PersistenceResult:
    barcode: Barcode
    pairs: tuple          # (birth simplex, death simplex or None)


def persistent_homology(FC: FilteredComplex, p: int = 2) -> Barcode:
    return persistence_pairs(FC, p).barcode


def persistence_pairs(FC: FilteredComplex, p: int = 2) -> PersistenceResult:
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    order = FC.order
    pairs, essential = _reduce(order, p)
    bars, raw = [], []
    for i, j in pairs:
        lo, hi = FC.simplex_value(order[i]), FC.simplex_value(order[j])
        raw.append((order[i], order[j]))
        if lo < hi:
            bars.append(Bar(Interval(lo, hi), -(len(order[i]) - 1)))
    for i in essential:
        raw.append((order[i], None))
        bars.append(Bar(Interval(FC.simplex_value(order[i]), POS_INF), -(len(order[i]) - 1)))
    return PersistenceResult(Barcode(bars), tuple(raw))


def betti_numbers(B: Barcode) -> dict:
    """Homological degree -> number of infinite bars."""
    out: dict = {}
    for b in B:
        if b.interval.infinite:
            out[-b.degree] = out.get(-b.degree, 0) + b.multiplicity
    return out


def spectral_from_function(K: SimplicialComplex, f, p: int = 2):
    B = persistent_homology(lower_star(K, f), p)
    return spectral_invariants(B), B


# ---------------------------------------------------------------------------
# stability

def _eps_matchable(b1: list, b2: list, eps: Scalar) -> bool:
    """Whether the bars can be matched (or sent to the diagonal) moving endpoints by <= eps."""
    n1, n2 = len(b1), len(b2)
    size = n1 + n2
    if size == 0:
        return True
    rows, cols = [], []

    def close(x: Interval, y: Interval) -> bool:
        if x.infinite != y.infinite:
            return False
        if abs(x.lo - y.lo) > eps:
            return False
        return x.infinite or abs(x.hi - y.hi) <= eps

    def short(x: Interval) -> bool:
        return not x.infinite and x.length <= eps * 2

    for i, x in enumerate(b1):
        for j, y in enumerate(b2):
            if close(x, y):
                rows.append(i)
                cols.append(j)
        if short(x):
            rows.append(i)
            cols.append(n2 + i)
    for j, y in enumerate(b2):
        if short(y):
            rows.append(n1 + j)
            cols.append(j)
        for i in range(n1):
            rows.append(n1 + j)
            cols.append(n2 + i)
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def within_eps(B1: Barcode, B2: Barcode, eps) -> bool:
    """Degree by degree, every bar moves by at most ``eps`` (short bars may vanish)."""
    eps = S(eps)
    for d in set(B1.degrees()) | set(B2.degrees()):
        x = [b.interval for b in B1.in_degree(d).expanded()]
        y = [b.interval for b in B2.in_degree(d).expanded()]
        if not _eps_matchable(x, y, eps):
            return False
    return True


def max_essential_shift(B1: Barcode, B2: Barcode) -> Scalar:
    """Largest move of the sorted infinite-bar births, degree by degree."""
    worst = S(0)
    for d in set(B1.degrees()) | set(B2.degrees()):
        x = sorted(b.interval.lo for b in B1.in_degree(d).expanded() if b.interval.infinite)
        y = sorted(b.interval.lo for b in B2.in_degree(d).expanded() if b.interval.infinite)
        if len(x) != len(y):
            return POS_INF
        for a, b in zip(x, y):
            worst = max(worst, abs(a - b))
    return worst


# ---------------------------------------------------------------------------
# sample functions on the presets

def circle_angles(k: int) -> np.ndarray:
    return 2 * np.pi * np.arange(k) / k


def torus_angles(m: int, n: int | None = None):
    n = m if n is None else n
    i, j = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    return (2 * np.pi * i / m).ravel(), (2 * np.pi * j / n).ravel()


def sphere3_points(k: int = 4, l: int = 4) -> np.ndarray:
    """Vertices of the join placed on the unit 3-sphere (two orthogonal great circles)."""
    a, b = circle_angles(k), circle_angles(l)
    first = np.stack([np.cos(a), np.sin(a), np.zeros(k), np.zeros(k)], axis=1)
    second = np.stack([np.zeros(l), np.zeros(l), np.cos(b), np.sin(b)], axis=1)
    return np.concatenate([first, second], axis=0)
