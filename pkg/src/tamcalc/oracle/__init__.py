"""Finite-poset ground truth for sheaves on the line."""
from .derived import (
    costalk_dims, is_zero_morphism, oracle_hom_star, section_costalk_check, tau_is_zero,
    tau_morphism,
)
from .equivariant import EquivariantFamily, equivariant_hom_star
from .grid import GridPoset, barcode_to_complex, gabriel_decompose
from .poset import BarComplex, ChainMap, Complex, Poset, Rep, mapping_cone

__all__ = [
    "BarComplex", "ChainMap", "Complex", "EquivariantFamily", "GridPoset", "Poset", "Rep", "barcode_to_complex",
    "costalk_dims", "equivariant_hom_star", "gabriel_decompose", "is_zero_morphism", "mapping_cone", "oracle_hom_star",
    "section_costalk_check", "tau_is_zero", "tau_morphism",
]
