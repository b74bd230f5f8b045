"""Finite cyclic group model of the equivariant twisted hom.

A family over ``Z/k`` is one barcode per group element.  The group direction
is discrete, so ``mu^! = mu^-1`` and the component of the equivariant hom at
``g`` is ``sum_h hom*(F_h, G_{g h})``.  Pushing forward to a point must give
``hom*`` of the direct sums.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..barcode import Barcode
from ..homstar import hom_star


@dataclass(frozen=True)
class EquivariantFamily:
    order: int
    members: tuple      # Barcode per group element 0..order-1

    def __post_init__(self):
        if self.order < 1 or len(self.members) != self.order:
            raise ValueError("one barcode per element of Z/order is required")

    @classmethod
    def of(cls, members) -> "EquivariantFamily":
        members = tuple(members)
        return cls(len(members), members)

    def pushforward(self) -> Barcode:
        """Direct sum over the group (pushforward to a point)."""
        out = Barcode()
        for B in self.members:
            out = out + B
        return out


def equivariant_hom_star(F: EquivariantFamily, G: EquivariantFamily,
                         pair_hom=None) -> EquivariantFamily:
    """Component ``g`` is ``sum_h pair_hom(F_h, G_{g+h})`` (default: closed-form hom*)."""
    if F.order != G.order:
        raise ValueError(f"group mismatch: Z/{F.order} vs Z/{G.order}")
    if pair_hom is None:
        def pair_hom(a, b):
            return hom_star(a, b).barcode
    k = F.order
    comps = []
    for g in range(k):
        acc = Barcode()
        for h in range(k):
            if F.members[h].bars and G.members[(g + h) % k].bars:
                acc = acc + pair_hom(F.members[h], G.members[(g + h) % k])
        comps.append(acc)
    return EquivariantFamily(k, tuple(comps))
