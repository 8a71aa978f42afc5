"""phi-shuffle products on noncommutative polynomials over structured alphabets."""

from .coalgebra import (
    bialgebra_check,
    delta_conc,
    delta_conc_plus,
    delta_conc_plus_iterate,
    delta_phi,
    duality_check,
    pairing,
    tensor_phi_product,
)
from .errors import (
    DomainError,
    InvariantError,
    LawError,
    NotAssociativeError,
    NotDualizableError,
    ParseError,
    PhiShuffleError,
    SignatureMismatch,
)
from .laws import (
    BUILTIN_LAWS,
    PhiLaw,
    StructureConstant,
    check_law,
    dualizable_on,
    is_associative_on,
    is_commutative_on,
    law_from_selector,
    make_law,
    parse_law_selector,
    phi_extend,
    structure_constants,
)
from .lyndon import (
    BasisDecomposition,
    MultiIndex,
    alpha_norm,
    decompose_in_basis,
    is_lyndon,
    lyndon_factorization,
    lyndon_words,
    multi_power,
)
from .shuffle import PartialFractionResult, partial_fraction, phi_shuffle, phi_shuffle_poly
from .words import (
    Letter,
    NcPoly,
    Rational,
    Signature,
    SlotKind,
    Tensor2,
    add,
    coeff,
    conc,
    deg,
    parse_letter,
    parse_poly,
    parse_word,
    print_poly,
    rational,
    scalar_mul,
)
from .zeta import ZetaIndex, truncated_M, truncated_M_char, truncated_M_poly, verify_grid, verify_product_identity

__version__ = "0.1.0"
