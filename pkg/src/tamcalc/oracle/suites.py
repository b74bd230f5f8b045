"""Seeded randomized comparisons between the closed forms and the oracle.

Each suite draws its cases from one ``numpy`` generator and returns a
:class:`SuiteResult` whose failures carry the offending barcodes, so a run is
reproducible from ``(suite, cases, seed)`` alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..barcode import Barcode, Bar, Interval, boundary_depth, shift, tau_vanishes, to_json
from ..homstar import hom_star, v
from ..scalar import NEG_INF, POS_INF, S
from .derived import oracle_hom_star, tau_is_zero
from .equivariant import EquivariantFamily, equivariant_hom_star
from .grid import GridPoset, barcode_to_complex, gabriel_decompose
from .poset import ChainMap, Complex, mapping_cone, random_morphism


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    coverage: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.cases > 0 and not self.failures

    def summary(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {verdict} ({self.cases} cases, {len(self.failures)} failures)"


# ---------------------------------------------------------------------------
# random inputs

def random_bar(rng, hi: int = 20, p_inf: float = 0.3, degrees=(-1, 0, 1)) -> Bar:
    a = int(rng.integers(0, hi))
    d = int(rng.choice(degrees))
    if rng.random() < p_inf:
        return Bar(Interval(S(a), POS_INF), d)
    b = int(rng.integers(a + 1, hi + 1))
    return Bar(Interval(S(a), S(b)), d)


def random_barcode(rng, max_bars: int = 3, hi: int = 20, p_inf: float = 0.3,
                   degrees=(-1, 0, 1), min_bars: int = 1) -> Barcode:
    n = int(rng.integers(min_bars, max_bars + 1))
    return Barcode(random_bar(rng, hi, p_inf, degrees) for _ in range(n))


_SHAPES = ("[a,b)", "(a,b)", "[a,b]", "(a,b]", "[a,inf)", "(a,inf)", "(-inf,b)", "(-inf,b]")


def random_shaped_bar(rng, shape: str, hi: int = 12) -> Bar:
    a = int(rng.integers(0, hi))
    b = int(rng.integers(a + 1, hi + 1))
    d = int(rng.integers(-1, 2))
    lo, up = S(a), S(b)
    table = {
        "[a,b)": (lo, up, False, True), "(a,b)": (lo, up, True, True),
        "[a,b]": (lo, up, False, False), "(a,b]": (lo, up, True, False),
        "[a,inf)": (lo, POS_INF, False, True), "(a,inf)": (lo, POS_INF, True, True),
        "(-inf,b)": (NEG_INF, up, True, True), "(-inf,b]": (NEG_INF, up, True, False),
    }
    lo, up, lo_open, hi_open = table[shape]
    return Bar(Interval(lo, up, lo_open, hi_open), d)


def _dump(**barcodes) -> dict:
    return {k: (to_json(v) if isinstance(v, Barcode) else str(v)) for k, v in barcodes.items()}


# ---------------------------------------------------------------------------
# suites

def homstar_suite(cases: int, seed: int, p: int = 2) -> SuiteResult:
    """Closed-form hom* against the oracle on single-bar pairs in [0, 20]."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("homstar")
    for _ in range(cases):
        F = Barcode([random_bar(rng)])
        G = Barcode([random_bar(rng)])
        shapes = tuple("[a,inf)" if b.interval.infinite else "[a,b)" for b in (*F, *G))
        res.coverage[shapes] = res.coverage.get(shapes, 0) + 1
        expect = hom_star(F, G).barcode
        got = oracle_hom_star(F, G, p)
        res.cases += 1
        if got != expect:
            res.failures.append(_dump(F=F, G=G, closed_form=expect, oracle=got))
    return res


def tau_suite(cases: int, seed: int, p: int = 2) -> SuiteResult:
    """The per-bar torsion rule against the oracle's explicit ``P(F) -> T_c F``."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("tau")
    for k in range(cases):
        shape = _SHAPES[k % len(_SHAPES)]
        bars = [random_shaped_bar(rng, shape)]
        if rng.random() < 0.3:
            bars.append(random_shaped_bar(rng, "[a,b)"))
        F = Barcode(bars)
        finite = [b.interval.length for b in F if b.interval.lo.finite and b.interval.hi.finite]
        top = max((int(x.to_fraction()) for x in finite), default=4)
        c = S(int(rng.integers(0, top + 3)))
        expect = tau_vanishes(F, c)
        got = tau_is_zero(F, c, p)
        res.cases += 1
        if got != expect:
            res.failures.append(_dump(F=F, c=c, rule=expect, oracle=got))
    return res


def _common_grid(*barcodes) -> GridPoset:
    return GridPoset(t for B in barcodes for b in B for t in (b.interval.lo, b.interval.hi)
                     if t.finite)


def random_triangle(rng, hi: int = 8, p: int = 2):
    """A random module map ``g: F -> G0`` between split grid complexes and its cone."""
    F = random_barcode(rng, 3, hi, p_inf=0.2, degrees=(0, 0, 1))
    G0 = random_barcode(rng, 3, hi, p_inf=0.2, degrees=(0, 0, 1))
    grid = _common_grid(F, G0)
    X = barcode_to_complex(F, grid, p)
    Y = barcode_to_complex(G0, grid, p)
    comps = {}
    for m in X.degrees:
        if m in Y.terms:
            comps[m] = random_morphism(X.terms[m], Y.terms[m], rng)
    g = ChainMap(X, Y, comps).check()
    return F, G0, X, Y, g, mapping_cone(g).check()


def taucducone_suite(cases: int, seed: int, p: int = 2) -> SuiteResult:
    """Triangles ``A -> B -> C`` with ``tau_a(A) = 0``, ``tau_b(C) = 0``: ``tau_{a+b}(B) = 0``.

    Every random map gives three triangles by rotation; each counts as a case.
    """
    rng = np.random.default_rng(seed)
    res = SuiteResult("cone")
    while res.cases < cases:
        F, G0, X, Y, g, C = random_triangle(rng, p=p)
        Cb = gabriel_decompose(C)
        triples = [
            (X, Y, C, F, Cb),                       # F -> G0 -> C
            (Y, C, X.shift(1), G0, shift(F, 1)),    # G0 -> C -> F[1]
            (C.shift(-1), X, Y, shift(Cb, -1), G0), # C[-1] -> F -> G0
        ]
        for left, mid, right, lb, rb in triples:
            a, b = boundary_depth(lb), boundary_depth(rb)
            if not (a.finite and b.finite):
                continue
            res.cases += 1
            if not tau_is_zero(left, a, p) or not tau_is_zero(right, b, p):
                res.failures.append(_dump(F=F, G0=G0, note="hypothesis check failed"))
                continue
            if not tau_is_zero(mid, a + b, p):
                res.failures.append(_dump(F=F, G0=G0, cone=Cb, a=a, b=b))
    return res


def vcone_suite(cases: int, seed: int, p: int = 2) -> SuiteResult:
    """``v`` subadditivity along oracle cones and monotonicity under direct sums."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("vcone")
    while res.cases < cases:
        F, G0, X, Y, g, C = random_triangle(rng, p=p)
        Cb = gabriel_decompose(C)
        H = random_barcode(rng, 2, 8, p_inf=0.5)
        # F -> G0 -> cone
        checks = [
            ("v(C,H)", v(Cb, H), v(F, H) + v(G0, H)),
            ("v(H,C)", v(H, Cb), v(H, F) + v(H, G0)),
        ]
        S2 = random_barcode(rng, 2, 8, p_inf=0.3)
        checks += [
            ("v(F1,H)<=v(F1+F2,H)", v(F, H), v(F + S2, H)),
            ("v(H,F1)<=v(H,F1+F2)", v(H, F), v(H, F + S2)),
        ]
        for name, lhs, rhs in checks:
            res.cases += 1
            if not lhs <= rhs:
                res.failures.append(_dump(F=F, G0=G0, cone=Cb, H=H, S2=S2, check=name,
                                          lhs=lhs, rhs=rhs))
    return res


def equivariant_suite(cases: int, seed: int, p: int = 2, orders=(2, 3)) -> SuiteResult:
    """Pushforward of the equivariant hom equals hom* of the pushforwards (oracle both sides)."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("equivariant")

    def pair(a, b):
        return oracle_hom_star(a, b, p)

    for k in range(cases):
        order = orders[k % len(orders)]
        F = EquivariantFamily.of(random_barcode(rng, 1, 8, 0.3, min_bars=0) for _ in range(order))
        G = EquivariantFamily.of(random_barcode(rng, 1, 8, 0.3, min_bars=0) for _ in range(order))
        lhs = equivariant_hom_star(F, G, pair).pushforward()
        sF, sG = F.pushforward(), G.pushforward()
        rhs = oracle_hom_star(sF, sG, p) if sF.bars and sG.bars else Barcode()
        res.cases += 1
        if lhs != rhs:
            res.failures.append(_dump(F=sF, G=sG, equivariant=lhs, direct=rhs))
    return res


SUITES = {
    "homstar": homstar_suite,
    "tau": tau_suite,
    "cone": taucducone_suite,
    "vcone": vcone_suite,
    "equivariant": equivariant_suite,
}
