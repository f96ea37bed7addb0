"""Exact computations with modulus Hochschild, cyclic and de Rham complexes
of the local model ``(k[x, y], x^r)``, plus repletion of monoid maps."""
from .modpair import ModulusPair
from .forms import FormClass, LogForm, basis_of, de_rham_d
from .hochschild import (ChainClass, ChainElement, connes_B, cyclic_t, hkr_e, hkr_eps,
                         hochschild_b, shuffle)
from .homology import (CyclicVariant, build_forms_complex, cohomology_dims,
                       cyclic_dims_bicomplex, cyclic_dims_formula, hkr_cycle_probe)
from .monoids import FgAbMonoid, MonoidMap, repletion_iso

__version__ = "0.1.0"

__all__ = [
    "ModulusPair", "FormClass", "LogForm", "basis_of", "de_rham_d",
    "ChainClass", "ChainElement", "connes_B", "cyclic_t", "hkr_e", "hkr_eps",
    "hochschild_b", "shuffle", "CyclicVariant", "build_forms_complex",
    "cohomology_dims", "cyclic_dims_bicomplex", "cyclic_dims_formula",
    "hkr_cycle_probe", "FgAbMonoid", "MonoidMap", "repletion_iso",
]
