"""Conjugacy classes in discrete and extended Heisenberg groups."""

from .abelian import (AbElement, AbHom, CyclicProduct, Subgroup, ab_reduce,
                      coset_canonical, enumerate_elements, hom_apply, hom_image,
                      hom_kernel)
from .congruence import (CongruenceSystem, canonical_w, ext_gcd, lemma5_solve,
                         solve_linear_diophantine)
from .heis import (ExtElement, ExtGroup, GradedAut, HeisenbergData, HeisElement,
                   KGroup, aut_apply, aut_compose, build_graded_aut, ext_conjugate,
                   ext_inv, ext_mul, heis_inv, heis_mul, kc_eval, pairing_apply)
from .integer import ZExtElement, is_conjugate_z, z_invariants
from .invariants import ConjContext, InvariantEngine, are_conjugate_finite
from .oracle import oracle_finite, oracle_z, partition_compare

__version__ = "0.1.0"

__all__ = [
    "AbElement",
    "AbHom",
    "CyclicProduct",
    "Subgroup",
    "ab_reduce",
    "coset_canonical",
    "enumerate_elements",
    "hom_apply",
    "hom_image",
    "hom_kernel",
    "CongruenceSystem",
    "canonical_w",
    "ext_gcd",
    "lemma5_solve",
    "solve_linear_diophantine",
    "ExtElement",
    "ExtGroup",
    "GradedAut",
    "HeisenbergData",
    "HeisElement",
    "KGroup",
    "aut_apply",
    "aut_compose",
    "build_graded_aut",
    "ext_conjugate",
    "ext_inv",
    "ext_mul",
    "heis_inv",
    "heis_mul",
    "kc_eval",
    "pairing_apply",
    "ZExtElement",
    "is_conjugate_z",
    "z_invariants",
    "ConjContext",
    "InvariantEngine",
    "are_conjugate_finite",
    "oracle_finite",
    "oracle_z",
    "partition_compare",
]
