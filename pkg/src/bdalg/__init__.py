"""Exact computer algebra for odometer crossed-product (Bunce-Deddens) algebras.

Supernatural arithmetic, truncated odometer rings, exact cyclotomic values,
locally constant functions, the polynomial crossed-product algebra with its
matrix symbols and norm estimates, derivation classification data, K-theoretic
invariants and integer homological algebra.
"""

from .bd_algebra import (BDElement, LaurentPoly, MatrixSymbol, NormReport,
                         operator_norm, spectrum_sample)
from .cyclotomic import Cyclo, cyclotomic_polynomial, root_of_unity
from .derivations import (CharacterPick, DerivationData, decompose_invariant,
                          nonsmooth_commutator, pick_character,
                          recover_covariant, solve_cocycle)
from .homalg import FGAbelianGroup, IntMatrix, ext1_hom, smith_normal_form
from .k_invariants import (GSRational, PhiFn, hom_obstruction, k0_class,
                           residue_projection)
from .odometer_fn import LocConstFn, character, synthesize
from .profinite import DivisorChain, ProfiniteInt
from .supernatural import INF, SupernaturalNumber
from .verify import SUITES, VerifyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BDElement", "CharacterPick", "Cyclo", "DerivationData", "DivisorChain",
    "FGAbelianGroup", "GSRational", "INF", "IntMatrix", "LaurentPoly",
    "LocConstFn", "MatrixSymbol", "NormReport", "PhiFn", "ProfiniteInt",
    "SUITES", "SupernaturalNumber", "VerifyReport", "character",
    "cyclotomic_polynomial", "decompose_invariant", "ext1_hom",
    "hom_obstruction", "k0_class", "nonsmooth_commutator", "operator_norm",
    "pick_character", "recover_covariant", "residue_projection",
    "root_of_unity", "run_suite", "smith_normal_form", "solve_cocycle",
    "spectrum_sample", "synthesize",
]
