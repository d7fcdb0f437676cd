"""Polynomial arithmetic over F_q and Fermat/Wilson congruence checks in F_q[t]."""

import json as _json

from ._fqw import (
    BoundExceeded,
    BudgetExceeded,
    EquivalenceViolation,
    Error,
    Field,
    NotMonic,
    NotPrime,
    ParseError,
    Poly,
    Reducible,
    TheoremViolation,
    ZeroC,
    __version__,
    carlitz,
    coefficient_characterization,
    count_irreducibles,
    fermat_quotient_mod,
    gcd,
    is_irreducible,
    is_special_wilson,
    monic_irreducibles,
    special_wilson_primes,
    wilson_multiplicity,
)
from . import _fqw


def factorize(poly, seed=0):
    return _json.loads(_fqw.factorize_json(poly, seed))


def trial_division(poly, max_degree, seed=0):
    return _json.loads(_fqw.trial_division_json(poly, max_degree, seed))


def wieferich_suite(prime, base):
    return _json.loads(_fqw.wieferich_suite_json(prime, base))


def wilson_suite(prime):
    return _json.loads(_fqw.wilson_suite_json(prime))


def classify_base(base):
    return _json.loads(_fqw.classify_base_json(base))


def deriv_report(a, prime, order=2):
    return _json.loads(_fqw.deriv_report_json(a, prime, order))


def survey_degree(field, degree, multiplicities=True):
    return _json.loads(_fqw.survey_degree_json(field, degree, multiplicities))


def theorem7(field, degree, c, max_degree=0, seed=0):
    return _json.loads(_fqw.theorem7_json(field, degree, c, max_degree, seed))
