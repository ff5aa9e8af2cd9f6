"""Numerical laboratory for similarity-to-contraction questions about
Foguel-type block operators [[Y, X], [0, Z]] on the Hardy space, with
shift/backshift diagonals and Toeplitz or Hankel off-diagonal entries.

The package decides, certifies, and stress-tests the scalar similarity
characterizations case by case: Fourier-side symbol tests produce graded
verdicts, constructive intertwiners back every positive answer with
residual-checked certificates, and exact finite sections of the power
blocks give certified lower bounds that corroborate every negative one.
"""

from .analysis import (
    GrowthProfile,
    bmo_oscillation_estimate,
    bmoa_section_test,
    ess_sup_estimate,
    growth_profile,
    h2_partial_norm,
    hinf_test,
    op_norm,
)
from .characterize import CharacterizationReport, CheckConfig, dispatch
from .corpus import CorpusEntry, corpus_list, corpus_run, load_corpus
from .intertwine import (
    IntertwinerCertificate,
    build_A_hankel_S_S,
    build_A_hankel_S_Sstar,
    build_A_toeplitz_S_Sstar,
    build_A_toeplitz_Sstar_S,
    build_Qn,
    sylvester_lsq,
    verify_main_criterion,
    verify_th_id,
    verify_tph_criteria,
)
from .sections import (
    FoguelCase,
    OperatorSection,
    basic_section,
    foguel_section,
    hankel_section,
    interior_residual,
    parse_case,
    toeplitz_section,
    xn_section,
)
from .symbols import (
    Decay,
    FourierSymbol,
    QuotientConfig,
    SymbolError,
    algebra,
    analytic_derivative,
    builtin_catalog,
    factor_quotient,
    riesz_project,
    star,
    symbol_from_json,
    symbol_to_json,
    tilde,
)
from .verdicts import Verdict

__version__ = "0.1.0"

__all__ = [
    "CharacterizationReport",
    "CheckConfig",
    "CorpusEntry",
    "Decay",
    "FoguelCase",
    "FourierSymbol",
    "GrowthProfile",
    "IntertwinerCertificate",
    "OperatorSection",
    "QuotientConfig",
    "SymbolError",
    "Verdict",
    "algebra",
    "analytic_derivative",
    "basic_section",
    "bmo_oscillation_estimate",
    "bmoa_section_test",
    "build_A_hankel_S_S",
    "build_A_hankel_S_Sstar",
    "build_A_toeplitz_S_Sstar",
    "build_A_toeplitz_Sstar_S",
    "build_Qn",
    "builtin_catalog",
    "corpus_list",
    "corpus_run",
    "dispatch",
    "ess_sup_estimate",
    "factor_quotient",
    "foguel_section",
    "growth_profile",
    "h2_partial_norm",
    "hankel_section",
    "hinf_test",
    "interior_residual",
    "load_corpus",
    "op_norm",
    "parse_case",
    "riesz_project",
    "star",
    "symbol_from_json",
    "symbol_to_json",
    "sylvester_lsq",
    "tilde",
    "toeplitz_section",
    "verify_main_criterion",
    "verify_th_id",
    "verify_tph_criteria",
    "xn_section",
]
