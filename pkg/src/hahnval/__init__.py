"""Exact-arithmetic Hahn-sum ordered groups over two rational
localizations, the definable convex-subgroup operator with its
interval/coset decision, finite-support valued series with a coarsening,
explicit self-embeddings, and a small first-order formula layer."""

from .coefficients import (
    Coeff,
    DenominatorNotInLocalization,
    Tag,
    TagMismatch,
)
from .oag import (
    DivisibleElement,
    GroupElement,
    IntervalMeet,
    OutOfDomain,
    ZERO,
    apply_embedding,
    element,
    fr,
    in_gamma1_definable,
    in_gamma1_direct,
    lemma_rhs,
    parse_element,
    project_quotient,
    sim_r,
)
from .series import (
    INFINITY,
    NotInValuationRing,
    PrestelReport,
    ResidueScalar,
    Series,
    apply_field_embedding,
    in_O,
    parse_series,
    prestel_report,
    residue_w,
    s_inverse,
    val,
    w_val,
)
from .spine import Cut, Point, above, definable_k, parse_point
from .formulas import (
    ParseError,
    QuantifierPresent,
    UnboundVariable,
    check_eta_witness,
    eta,
    eval_fr_formula,
    eval_qf,
    parse,
    print_formula,
)

__all__ = [
    "Coeff",
    "Cut",
    "DenominatorNotInLocalization",
    "DivisibleElement",
    "GroupElement",
    "INFINITY",
    "IntervalMeet",
    "NotInValuationRing",
    "OutOfDomain",
    "ParseError",
    "Point",
    "PrestelReport",
    "QuantifierPresent",
    "ResidueScalar",
    "Series",
    "Tag",
    "TagMismatch",
    "UnboundVariable",
    "ZERO",
    "above",
    "apply_embedding",
    "apply_field_embedding",
    "check_eta_witness",
    "definable_k",
    "element",
    "eta",
    "eval_fr_formula",
    "eval_qf",
    "fr",
    "in_O",
    "in_gamma1_definable",
    "in_gamma1_direct",
    "lemma_rhs",
    "parse",
    "parse_element",
    "parse_point",
    "parse_series",
    "prestel_report",
    "print_formula",
    "project_quotient",
    "residue_w",
    "s_inverse",
    "sim_r",
    "val",
    "w_val",
]
