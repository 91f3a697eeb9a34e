"""Exact tools for recursive towers of function fields over finite fields."""

from .errors import (
    BothZero,
    DivisionByZero,
    FieldMismatch,
    LevelCapExceeded,
    LevelMismatch,
    NotPrime,
    ParseError,
    ReducibleModulus,
    SearchSpaceTooLarge,
    TowerError,
    UnknownSymbol,
    ZeroDenominator,
)
from .gf import FieldElement, FiniteField, make_field
from .poly import Factorization, Polynomial, poly_factor, poly_gcd
from .ratfunc import INF, RationalFunction, projective_line, rat_compose, rat_degree, rat_eval
from .bivariate import BivariatePolynomial, defining_polynomial, separability_certificate
from .parse import parse_bivariate, parse_expression, parse_rational, parse_value
from .tower import TowerDef, check_lemma1, check_separability, check_symmetry
from .subtower import SearchConfig, check_properness, derive_z_relation, search_f, verify_equation
from .probe import census, factor_table, specialize_step, split_test
from .genus import RamificationDatum, genus_recurrence, hasse_weil_min_genus, hurwitz_bound, ratios

__version__ = "0.1.0"
