"""Representations of finite posets and their derived Hom.

A sheaf constructible on a stratified space whose strata form a poset under
"sigma lies in the closure of tau" is the same thing as a functor
``sigma <= tau  ->  F(sigma) -> F(tau)`` (stalk maps from a stratum to the
strata around it).  Open sets are up-sets, ``F(sigma)`` is the value on the
open star of ``sigma`` and all derived functors reduce to finite linear
algebra.

``RHom(A, B)`` over an up-set ``W`` is computed by the cobar complex

    C^n = prod_{s0 < ... < sn in W} Hom(A(s0), B(sn))

whose coboundary precomposes with ``A`` on the first face, postcomposes with
``B`` on the last one and deletes interior elements with alternating signs.
It is ``Hom(A, I(B))`` for the standard injective resolution ``I(B)`` of
``B`` built from the injectives supported on down-sets, so its cohomology is
``Ext^*(A, B)``.  Sections ``RGamma(W; X)`` are the special case ``A = k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from .. import linalg as la


class Poset:
    """Finite poset on ``range(n)`` given by a reflexive ``leq`` matrix."""

    def __init__(self, leq: np.ndarray, labels=None):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if not np.all(np.diag(leq)):
            raise ValueError("leq must be reflexive")
        self.n = n
        self.leq = leq
        self.labels = list(labels) if labels is not None else list(range(n))

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.leq[i, j])

    @cached_property
    def above(self) -> list[list[int]]:
        return [[int(j) for j in np.nonzero(self.leq[i])[0] if j != i] for i in range(self.n)]

    @cached_property
    def chains(self) -> list[tuple[int, ...]]:
        """All strictly increasing chains, shortest first."""
        out = []
        frontier = [(i,) for i in range(self.n)]
        while frontier:
            out.extend(frontier)
            frontier = [ch + (j,) for ch in frontier for j in self.above[ch[-1]]]
        return out

    def is_upset(self, W) -> bool:
        W = set(W)
        return all(j in W for i in W for j in self.above[i])

    def upset(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.leq[i, j]]


# ---------------------------------------------------------------------------

class Rep:
    """Functor from a poset to finite-dimensional vector spaces over GF(p) or Q.

    ``maps[(i, j)]`` is the ``dims[j] x dims[i]`` matrix for every ``i < j``.
    """

    def __init__(self, poset: Poset, p: int, dims, maps=None):
        self.poset = poset
        self.p = la.check_field(p)
        self.dims = [int(d) for d in dims]
        if len(self.dims) != poset.n:
            raise ValueError("one dimension per poset element required")
        self.maps = {}
        maps = maps or {}
        for i in range(poset.n):
            for j in poset.above[i]:
                M = maps.get((i, j))
                if M is None:
                    M = la.zeros(p, self.dims[j], self.dims[i])
                    if self.dims[i] and self.dims[j]:
                        raise ValueError(f"missing structure map {i}->{j}")
                M = la.asmat(p, M, self.dims[j], self.dims[i])
                self.maps[(i, j)] = M

    def map(self, i: int, j: int) -> np.ndarray:
        if i == j:
            return la.eye(self.p, self.dims[i])
        return self.maps[(i, j)]

    def check(self):
        """Raise ``ValueError`` unless the structure maps compose."""
        P = self.poset
        for i in range(P.n):
            for j in P.above[i]:
                for k in P.above[j]:
                    lhs = la.matmul(self.p, self.maps[(j, k)], self.maps[(i, j)])
                    if not np.array_equal(lhs, self.maps[(i, k)]):
                        raise ValueError(f"inconsistent structure maps along {i}<{j}<{k}")
        return self

    @classmethod
    def constant(cls, poset: Poset, p: int, support=None) -> "Rep":
        """The rank-one rep on a convex ``support`` (default: everything), identity maps."""
        S = set(range(poset.n)) if support is None else set(support)
        dims = [1 if i in S else 0 for i in range(poset.n)]
        one = la.eye(p, 1)
        maps = {(i, j): one for i in S for j in poset.above[i] if j in S}
        return cls(poset, p, dims, maps)

    @classmethod
    def zero(cls, poset: Poset, p: int) -> "Rep":
        return cls(poset, p, [0] * poset.n)

    def direct_sum(self, other: "Rep") -> "Rep":
        p = self.p
        dims = [a + b for a, b in zip(self.dims, other.dims)]
        maps = {}
        for key, M in self.maps.items():
            i, j = key
            N = other.maps[key]
            Z = la.zeros(p, dims[j], dims[i])
            Z[: M.shape[0], : M.shape[1]] = M
            Z[M.shape[0]:, M.shape[1]:] = N
            maps[key] = Z
        return Rep(self.poset, p, dims, maps)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)


@dataclass
class Complex:
    """Bounded cochain complex of reps: ``terms[m]`` with ``diffs[m]: terms[m] -> terms[m+1]``.

    ``diffs[m][e]`` is the matrix of the differential at poset element ``e``.
    """

    poset: Poset
    p: int
    terms: dict = field(default_factory=dict)
    diffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: r for m, r in self.terms.items() if r.total_dim}
        for m in list(self.diffs):
            if m not in self.terms or m + 1 not in self.terms:
                del self.diffs[m]

    @classmethod
    def from_rep(cls, rep: Rep, degree: int = 0) -> "Complex":
        return cls(rep.poset, rep.p, {degree: rep}, {})

    def term(self, m: int) -> Rep:
        return self.terms.get(m) or Rep.zero(self.poset, self.p)

    def d(self, m: int, e: int) -> np.ndarray:
        if m in self.diffs:
            return self.diffs[m][e]
        return la.zeros(self.p, self.term(m + 1).dims[e], self.term(m).dims[e])

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def is_zero_object_termwise(self) -> bool:
        return not self.terms

    def check(self):
        p = self.p
        for m in self.degrees:
            for e in range(self.poset.n):
                dd = la.matmul(p, self.d(m + 1, e), self.d(m, e))
                if np.any(dd != 0):
                    raise ValueError(f"d o d != 0 in degree {m} at {e}")
            src, dst = self.term(m), self.term(m + 1)
            for (i, j), M in src.maps.items():
                lhs = la.matmul(p, self.d(m, j), M)
                rhs = la.matmul(p, dst.map(i, j), self.d(m, i))
                if not np.array_equal(lhs, rhs):
                    raise ValueError(f"differential in degree {m} is not natural at {i}<{j}")
        return self

    def shift(self, k: int) -> "Complex":
        """``X[k]``: ``X[k]^m = X^{m+k}`` with differential ``(-1)^k d``."""
        sign = -1 if k % 2 else 1
        terms = {m - k: r for m, r in self.terms.items()}
        diffs = {m - k: [la.reduce(self.p, sign * D) for D in Ds]
                 for m, Ds in self.diffs.items()}
        return Complex(self.poset, self.p, terms, diffs)

    def direct_sum(self, other: "Complex") -> "Complex":
        p, P = self.p, self.poset
        degs = sorted(set(self.terms) | set(other.terms))
        terms = {m: self.term(m).direct_sum(other.term(m)) for m in degs}
        diffs = {}
        for m in degs:
            if m + 1 not in terms:
                continue
            diffs[m] = [_block_diag(p, self.d(m, e), other.d(m, e)) for e in range(P.n)]
        return Complex(P, p, terms, diffs)

    def cohomology(self, m: int) -> "CohomologyRep":
        return CohomologyRep.of(self, m)

    def cohomology_dims(self) -> dict:
        out = {}
        for m in self.degrees:
            h = self.cohomology(m).rep
            if h.total_dim:
                out[m] = h.dims
        return out


def _block_diag(p, A, B):
    Z = la.zeros(p, A.shape[0] + B.shape[0], A.shape[1] + B.shape[1])
    Z[: A.shape[0], : A.shape[1]] = A
    Z[A.shape[0]:, A.shape[1]:] = B
    return Z


@dataclass
class CohomologyRep:
    """``H^m`` of a complex of reps, with the chosen cocycle representatives."""

    rep: Rep
    boundaries: list   # per element: independent basis of B^m
    reps: list         # per element: representative cocycles (columns)

    @classmethod
    def of(cls, X: Complex, m: int) -> "CohomologyRep":
        p, P = X.p, X.poset
        Bs, Hs = [], []
        for e in range(P.n):
            Z = la.nullspace(p, X.d(m, e)) if X.term(m).dims[e] else la.zeros(p, 0, 0)
            B = X.d(m - 1, e)
            Bc, H = la.quotient_basis(p, Z, B) if X.term(m).dims[e] else (Z, Z)
            Bs.append(Bc)
            Hs.append(H)
        dims = [H.shape[1] for H in Hs]
        maps = {}
        src = X.term(m)
        for (i, j), M in src.maps.items():
            if dims[i] and dims[j]:
                maps[(i, j)] = la.to_quotient_coords(p, Bs[j], Hs[j], la.matmul(p, M, Hs[i]))
        return cls(Rep(P, p, dims, maps), Bs, Hs)


@dataclass
class ChainMap:
    """Morphism of complexes; ``comps[m][e]`` maps ``src^m(e) -> dst^m(e)``."""

    src: Complex
    dst: Complex
    comps: dict

    def comp(self, m: int, e: int) -> np.ndarray:
        if m in self.comps:
            return self.comps[m][e]
        return la.zeros(self.src.p, self.dst.term(m).dims[e], self.src.term(m).dims[e])

    def check(self):
        p = self.src.p
        P = self.src.poset
        for m in sorted(set(self.src.terms) | set(self.dst.terms)):
            for e in range(P.n):
                lhs = la.matmul(p, self.dst.d(m, e), self.comp(m, e))
                rhs = la.matmul(p, self.comp(m + 1, e), self.src.d(m, e))
                if not np.array_equal(lhs, rhs):
                    raise ValueError(f"not a chain map in degree {m} at {e}")
            for (i, j), M in self.src.term(m).maps.items():
                lhs = la.matmul(p, self.comp(m, j), M)
                rhs = la.matmul(p, self.dst.term(m).map(i, j), self.comp(m, i))
                if not np.array_equal(lhs, rhs):
                    raise ValueError(f"component in degree {m} is not natural at {i}<{j}")
        return self

    def is_termwise_zero(self) -> bool:
        return all(not np.any(M != 0) for Ms in self.comps.values() for M in Ms)

    def cohomology_maps(self, m: int) -> list:
        """Per element, the induced map ``H^m(src) -> H^m(dst)`` in chosen bases."""
        p = self.src.p
        hs, hd = self.src.cohomology(m), self.dst.cohomology(m)
        out = []
        for e in range(self.src.poset.n):
            img = la.matmul(p, self.comp(m, e), hs.reps[e])
            out.append(la.to_quotient_coords(p, hd.boundaries[e], hd.reps[e], img)
                       if hd.reps[e].shape[1] else la.zeros(p, 0, img.shape[1]))
        return out


def mapping_cone(f: ChainMap) -> Complex:
    """``cone(f)^m = src^{m+1} + dst^m`` with ``d = [[-d_src, 0], [f, d_dst]]``."""
    X, Y = f.src, f.dst
    p, P = X.p, X.poset
    degs = sorted({m - 1 for m in X.terms} | set(Y.terms))
    terms = {m: X.term(m + 1).direct_sum(Y.term(m)) for m in degs}
    diffs = {}
    for m in degs:
        mats = []
        for e in range(P.n):
            a0, b0 = X.term(m + 1).dims[e], Y.term(m).dims[e]
            a1, b1 = X.term(m + 2).dims[e], Y.term(m + 1).dims[e]
            D = la.zeros(p, a1 + b1, a0 + b0)
            D[:a1, :a0] = la.reduce(p, -X.d(m + 1, e))
            D[a1:, :a0] = f.comp(m + 1, e)
            D[a1:, a0:] = Y.d(m, e)
            mats.append(D)
        diffs[m] = mats
    return Complex(P, p, terms, diffs)


# ---------------------------------------------------------------------------
# the cobar complex computing RHom

def _vec_post(p, M, a):
    """Matrix of ``phi -> M phi`` on row-major vec(phi), phi of width ``a``."""
    return np.kron(M, la.eye(p, a))


def _vec_pre(p, M, b):
    """Matrix of ``phi -> phi M`` on row-major vec(phi), phi of height ``b``."""
    return np.kron(la.eye(p, b), M.T)


class BarComplex:
    """Total complex of ``prod_{chains} Hom(A^p(s0), B^q(sn))``.

    Built once over the whole poset; :meth:`restrict` gives the complex over an
    up-set (a quotient by chains leaving the up-set, hence a submatrix).
    """

    def __init__(self, A: Complex, B: Complex, chains=None):
        if A.poset is not B.poset:
            raise ValueError("complexes live on different posets")
        self.A, self.B = A, B
        self.p = p = A.p
        P = A.poset
        chains = P.chains if chains is None else chains
        self.blocks = {}           # (chain, p, q) -> (degree, offset, rows, cols)
        self.size: dict = {}
        for ch in chains:
            for pa, qb in product(A.degrees, B.degrees):
                a = A.term(pa).dims[ch[0]]
                b = B.term(qb).dims[ch[-1]]
                if not a or not b:
                    continue
                m = len(ch) - 1 + qb - pa
                off = self.size.get(m, 0)
                self.blocks[(ch, pa, qb)] = (m, off, b, a)
                self.size[m] = off + a * b
        self.D = {m: la.zeros(p, self.size.get(m + 1, 0), self.size[m]) for m in self.size}
        self._assemble()

    def _add(self, src_key, dst_key, M):
        ms, os_, bs, as_ = self.blocks[src_key]
        md, od, bd, ad = self.blocks[dst_key]
        D = self.D[ms]
        D[od:od + bd * ad, os_:os_ + bs * as_] = la.reduce(
            self.p, D[od:od + bd * ad, os_:os_ + bs * as_] + M)

    def _assemble(self):
        p, A, B = self.p, self.A, self.B
        for key in self.blocks:
            ch, pa, qb = key
            n = len(ch) - 1
            m, off, b, a = self.blocks[key]
            # coboundary along chains: key is the target, its faces are sources
            if n >= 1:
                for i in range(n + 1):
                    face = ch[:i] + ch[i + 1:]
                    src = (face, pa, qb)
                    if src not in self.blocks:
                        continue
                    sign = -1 if i % 2 else 1
                    if i == 0:
                        M = _vec_pre(p, A.term(pa).map(ch[0], ch[1]), b)
                    elif i == n:
                        M = _vec_post(p, B.term(qb).map(ch[-2], ch[-1]), a)
                    else:
                        M = la.eye(p, a * b)
                    self._add(src, key, la.reduce(p, sign * M))
            # internal differentials, twisted by (-1)^n
            eps = -1 if n % 2 else 1
            dst = (ch, pa, qb + 1)
            if dst in self.blocks:
                M = _vec_post(p, B.d(qb, ch[-1]), a)
                self._add(key, dst, la.reduce(p, eps * M))
            dst = (ch, pa - 1, qb)
            if dst in self.blocks:
                sign = -eps * (-1 if (qb - pa) % 2 else 1)
                M = _vec_pre(p, A.d(pa - 1, ch[0]), b)
                self._add(key, dst, la.reduce(p, sign * M))

    # -- restriction to up-sets ---------------------------------------------
    def indices(self, W=None) -> dict:
        """Per degree, the coordinates belonging to chains inside ``W``."""
        Wset = None if W is None else set(W)
        idx: dict = {m: [] for m in self.size}
        for (ch, pa, qb), (m, off, b, a) in self.blocks.items():
            if Wset is None or all(s in Wset for s in ch):
                idx[m].extend(range(off, off + a * b))
        return {m: np.array(sorted(v), dtype=np.intp) for m, v in idx.items()}

    def restricted(self, idx: dict) -> dict:
        """Differentials of the restricted complex, keyed by degree."""
        out = {}
        for m, cols in idx.items():
            rows = idx.get(m + 1, np.array([], dtype=np.intp))
            out[m] = self.D[m][np.ix_(rows, cols)] if len(cols) else la.zeros(self.p, len(rows), 0)
        return out

    def cohomology_dims(self, W=None) -> dict:
        idx = self.indices(W)
        Ds = self.restricted(idx)
        out = {}
        for m in sorted(idx):
            n = len(idx[m])
            if not n:
                continue
            r_out = la.rank(self.p, Ds[m])
            prev = Ds.get(m - 1)
            r_in = la.rank(self.p, prev) if prev is not None and prev.size else 0
            h = n - r_out - r_in
            if h:
                out[m] = h
        return out

    def check(self):
        for m, D in self.D.items():
            if m + 1 in self.D:
                DD = la.matmul(self.p, self.D[m + 1], D)
                if np.any(DD != 0):
                    raise ValueError(f"bar complex: D o D != 0 in degree {m}")
        return self


def rhom_dims(A: Complex, B: Complex) -> dict:
    """``dim Ext^m(A, B)`` over the whole poset."""
    return BarComplex(A, B).cohomology_dims()


def constant_complex(poset: Poset, p: int, support=None) -> Complex:
    return Complex.from_rep(Rep.constant(poset, p, support))


def sections_dims(X: Complex, W=None) -> dict:
    """``dim H^m RGamma(W; X)`` for an up-set ``W`` (default: everything)."""
    k = constant_complex(X.poset, X.p)
    if W is not None and not X.poset.is_upset(W):
        raise ValueError("sections are only defined over open (upward closed) sets")
    return BarComplex(k, X).cohomology_dims(W)


def postcompose_matrix(bar_src: BarComplex, bar_dst: BarComplex, f: ChainMap, m: int,
                       idx_src=None, idx_dst=None):
    """Matrix of ``phi -> f o phi`` from ``bar_src`` (into f.src) to ``bar_dst`` (into f.dst)."""
    p = bar_src.p
    n_src = bar_src.size.get(m, 0)
    n_dst = bar_dst.size.get(m, 0)
    M = la.zeros(p, n_dst, n_src)
    for (ch, pa, qb), (mm, off, b, a) in bar_src.blocks.items():
        if mm != m:
            continue
        dkey = (ch, pa, qb)
        if dkey not in bar_dst.blocks:
            continue
        _, off2, b2, a2 = bar_dst.blocks[dkey]
        F = f.comp(qb, ch[-1])
        M[off2:off2 + b2 * a2, off:off + b * a] = _vec_post(p, F, a)
    if idx_src is not None:
        M = M[np.ix_(idx_dst[m] if m in idx_dst else [], idx_src[m])]
    return M


def frac(x):
    return Fraction(x)


def hom_basis(A: Rep, B: Rep) -> list:
    """Basis of natural transformations ``A -> B``, each a list of per-element matrices."""
    p, P = A.p, A.poset
    off, total = [], 0
    for e in range(P.n):
        off.append(total)
        total += B.dims[e] * A.dims[e]
    if total == 0:
        return []
    rows = []
    for (i, j), Ma in A.maps.items():
        a_i, a_j, b_i, b_j = A.dims[i], A.dims[j], B.dims[i], B.dims[j]
        if not (a_i and b_j):
            continue
        # phi_j A(i,j) - B(i,j) phi_i = 0, as equations on vec(phi)
        C = la.zeros(p, b_j * a_i, total)
        if a_j:
            C[:, off[j]:off[j] + b_j * a_j] = _vec_pre(p, Ma, b_j)
        if b_i:
            C[:, off[i]:off[i] + b_i * a_i] = la.reduce(
                p, C[:, off[i]:off[i] + b_i * a_i] - _vec_post(p, B.maps[(i, j)], a_i))
        rows.append(C)
    N = la.nullspace(p, np.concatenate(rows, axis=0)) if rows else la.eye(p, total)
    out = []
    for k in range(N.shape[1]):
        col = N[:, k]
        out.append([col[off[e]:off[e] + B.dims[e] * A.dims[e]].reshape(B.dims[e], A.dims[e])
                    for e in range(P.n)])
    return out


def random_morphism(A: Rep, B: Rep, rng) -> list:
    """A uniformly random natural transformation ``A -> B`` (over GF(p))."""
    p = A.p
    if p == la.QQ:
        raise ValueError("random morphisms need a finite field")
    basis = hom_basis(A, B)
    out = [la.zeros(p, B.dims[e], A.dims[e]) for e in range(A.poset.n)]
    for phi in basis:
        k = int(rng.integers(p))
        out = [la.reduce(p, o + k * m) for o, m in zip(out, phi)]
    return out
