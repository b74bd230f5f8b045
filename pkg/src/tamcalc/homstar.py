"""Closed-form twisted internal hom ``hom*`` on barcodes, and the bound ``v``.

For half-open bars the twisted hom of two interval sheaves is again a sum of
(at most two) interval sheaves:

    hom*([a,b), [c,d))     = [c-b, min(c-a, d-b))[1]  +  [max(c-a, d-b), d-a)
    hom*([a,inf), [c,inf)) = (-inf, c-a)[1]
    hom*([a,b), [c,inf))   = [c-b, c-a)[1]
    hom*([a,inf), [c,d))   = [c-a, d-a)

Shifts enter as ``hom*(F[p], G[q]) = hom*(F, G)[q-p]``.  The left endpoint of
the last case is closed: the grid oracle computes it from the convolution
definition and finds the stalk at ``c-a`` nonzero.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .barcode import (
    Bar, Barcode, EMPTY, Interval, boundary_depth, tensor_ray,
)
from .scalar import NEG_INF, POS_INF, Scalar


class UncoveredShape(ValueError):
    pass


def _check_shape(b: Bar):
    if not b.interval.half_open:
        raise UncoveredShape(
            f"bar {b} is outside the closed-form coverage ([a,b) or [a,inf)); "
            "use the grid oracle")


def hom_star_intervals(I: Interval, J: Interval) -> list[tuple[Interval, int]]:
    """``hom*(k_I, k_J)`` as (interval, shift) summands, empties dropped."""
    a, b = I.lo, I.hi
    c, d = J.lo, J.hi
    out: list[tuple[Interval | None, int]] = []
    if b != POS_INF and d != POS_INF:
        out.append((Interval.maybe(c - b, min(c - a, d - b)), 1))
        out.append((Interval.maybe(max(c - a, d - b), d - a), 0))
    elif b == POS_INF and d == POS_INF:
        out.append((Interval.maybe(NEG_INF, c - a), 1))
    elif d == POS_INF:
        out.append((Interval.maybe(c - b, c - a), 1))
    else:
        out.append((Interval.maybe(c - a, d - a), 0))
    return [(iv, k) for iv, k in out if iv is not None]


def hom_star_pair(I: Bar, J: Bar) -> Barcode:
    _check_shape(I)
    _check_shape(J)
    mult = I.multiplicity * J.multiplicity
    shift = J.degree - I.degree
    return Barcode(Bar(iv, k + shift, mult)
                   for iv, k in hom_star_intervals(I.interval, J.interval))


@dataclass(frozen=True)
class HomResult:
    barcode: Barcode
    provenance: tuple = field(default=())   # ((bar_F, bar_G), Barcode) per pair

    def audit_table(self) -> str:
        lines = ["| F bar | G bar | hom* summands |", "|---|---|---|"]
        for (bf, bg), out in self.provenance:
            outs = ", ".join(str(b) for b in out) or "0"
            lines.append(f"| {bf} | {bg} | {outs} |")
        return "\n".join(lines)


def hom_star(F: Barcode, G: Barcode) -> HomResult:
    prov = []
    pieces = []
    for bf in F:
        for bg in G:
            out = hom_star_pair(bf, bg)
            prov.append(((bf, bg), out))
            pieces.extend(out)
    return HomResult(Barcode(pieces), tuple(prov))


def V(F: Barcode, G: Barcode) -> Barcode:
    return tensor_ray(hom_star(F, G).barcode)


def v(F: Barcode, G: Barcode) -> Scalar:
    return boundary_depth(V(F, G))


def hom_dim0(I: Interval, J: Interval) -> int:
    """dim Hom(k_I, k_J) in degree 0 for half-open (or infinite) supports.

    Nonzero exactly when ``I`` and ``J`` overlap with ``I`` starting first and
    ending first: ``a <= c < b <= d``.  (The intersection is then closed in
    ``I`` and open in ``J``.)
    """
    for iv in (I, J):
        if not iv.half_open:
            raise UncoveredShape(f"{iv} is not of the form [a,b) or [a,inf)")
    a, b, c, d = I.lo, I.hi, J.lo, J.hi
    return int(a <= c < b <= d)


__all__ = [
    "EMPTY", "HomResult", "UncoveredShape", "V", "hom_dim0", "hom_star",
    "hom_star_intervals", "hom_star_pair", "v",
]
