from fractions import Fraction as F
from math import isqrt

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from srgrep import graphs
from srgrep.params import (
    IdentityViolation,
    IntersectionArray,
    NonIntegralEigenvalue,
    NonIntegralMultiplicity,
    NotAnEigenvalue,
    RangeViolation,
    SrgParams,
    _second_cosine,
    cosine_sequence,
    feasibility_report,
    spectrum,
    validate_params,
)


def test_validate_examples():
    assert validate_params(76, 21, 2, 7) == SrgParams(76, 21, 2, 7)
    assert validate_params(10, 3, 0, 1).as_tuple() == (10, 3, 0, 1)
    with pytest.raises(IdentityViolation) as exc:
        validate_params(6, 3, 0, 1)
    assert (exc.value.lhs, exc.value.rhs) == (6, 2)


@pytest.mark.parametrize(
    "args",
    [(5, 5, 0, 1), (5, 0, 0, 0), (10, 3, 3, 1), (10, 3, 0, 4), (10, 3, 0, 0), (4, 3, 2, 1), (10, 3, -1, 1)],
)
def test_range_violations(args):
    with pytest.raises(RangeViolation):
        validate_params(*args)


def test_intersection_array():
    ia = IntersectionArray.from_params(SrgParams(76, 21, 2, 7))
    assert (ia.b0, ia.b1, ia.c1, ia.c2, ia.a1, ia.a2) == (21, 18, 1, 7, 2, 14)
    assert ia.b0 == ia.c1 + ia.a1 + ia.b1


def test_spectrum_76():
    sp = spectrum(validate_params(76, 21, 2, 7))
    assert sp.eigenvalues() == {21: 1, 2: 56, -7: 19}
    assert sp.integral


def test_spectrum_petersen_matches_adjacency_eigenvalues(petersen):
    a = sympy.Matrix(petersen.adjacency_matrix())
    oracle = {int(k): v for k, v in a.eigenvals().items()}
    assert spectrum(validate_params(10, 3, 0, 1)).eigenvalues() == oracle == {3: 1, 1: 5, -2: 4}


def test_spectrum_conference():
    sp = spectrum(validate_params(5, 2, 0, 1))
    assert not sp.integral
    assert (sp.mult_plus, sp.mult_minus) == (2, 2)
    assert sp.discriminant == 5
    with pytest.raises(NonIntegralEigenvalue):
        sp.eigenvalues()


def test_spectrum_nonintegral_multiplicity():
    # identity 4*2 = 2*4 holds; eigenvalues 0 and -3, f = 3 + 10/6 = 14/3
    p = validate_params(7, 4, 1, 4)
    with pytest.raises(NonIntegralMultiplicity):
        spectrum(p)
    rep = feasibility_report(p)
    assert not rep.integrality_ok
    assert dict(rep.details)["integrality"]["f"] == F(14, 3)


def _recurrence_oracle(v, k, lam, mu, theta):
    w1 = F(theta, k)
    # theta*w1 = w0 + lambda*w1 + (k-lambda-1)*w2
    return (F(1), w1, (theta * w1 - 1 - lam * w1) / (k - lam - 1))


@pytest.mark.parametrize(
    "p, theta, expected",
    [
        ((76, 21, 2, 7), -7, (F(1), F(-1, 3), F(1, 9))),
        ((76, 21, 2, 7), 2, (F(1), F(2, 21), F(-1, 18))),
        ((10, 3, 0, 1), -2, (F(1), F(-2, 3), F(1, 6))),
    ],
)
def test_cosine_sequence(p, theta, expected):
    assert _recurrence_oracle(*p, theta) == expected
    assert tuple(cosine_sequence(validate_params(*p), theta)) == expected


def test_cosine_refusals():
    p = validate_params(76, 21, 2, 7)
    with pytest.raises(NotAnEigenvalue):
        cosine_sequence(p, 21)
    with pytest.raises(NotAnEigenvalue):
        cosine_sequence(p, 3)
    with pytest.raises(NonIntegralEigenvalue):
        cosine_sequence(validate_params(5, 2, 0, 1), 1)


def test_trivial_eigenvalue_recurrence_is_degenerate():
    p = validate_params(76, 21, 2, 7)
    assert _second_cosine(p, p.k) == (1, 1)


def test_feasibility_76_passes():
    rep = feasibility_report(validate_params(76, 21, 2, 7))
    assert rep.identity_ok and rep.integrality_ok and rep.krein_ok and rep.absolute_bound_ok
    assert rep.feasible
    assert [name for name, _ in rep.details] == [
        "identity", "integrality", "krein-1", "krein-2", "absolute-bound-f", "absolute-bound-g",
    ]


def test_feasibility_conference_tight_absolute_bound():
    rep = feasibility_report(validate_params(5, 2, 0, 1))
    vals = dict(rep.details)
    assert vals["absolute-bound-f"]["m(m+3)/2"] == 5
    assert rep.absolute_bound_ok and rep.krein_ok


def test_feasibility_krein_fails_28_9_0_4():
    # r = 1, s = -5: (s+1)(k+s+2rs) = (-4)(-6) = 24 > (k+s)(r+1)^2 = 16
    rep = feasibility_report(validate_params(28, 9, 0, 4))
    d = dict(rep.details)
    assert (d["krein-2"]["lhs"], d["krein-2"]["rhs"]) == (24, 16)
    assert rep.krein_ok is False
    assert rep.identity_ok and rep.integrality_ok


def test_feasibility_reports_identity_failure_without_raising():
    rep = feasibility_report(SrgParams(6, 3, 0, 1))
    assert not rep.identity_ok and not rep.feasible
    assert len(rep.details) == 6  # every screen still evaluated


def _identity_params(limit=80):
    out = []
    for v in range(5, limit):
        for k in range(1, v - 1):
            for lam in range(0, k):
                num = k * (k - lam - 1)
                if num % (v - k - 1):
                    continue
                mu = num // (v - k - 1)
                if 1 <= mu <= k:
                    out.append((v, k, lam, mu))
    return out


IDENTITY_PARAMS = _identity_params()
SQUARE_DISC = [
    p for p in IDENTITY_PARAMS if isqrt((p[2] - p[3]) ** 2 + 4 * (p[1] - p[3])) ** 2 == (p[2] - p[3]) ** 2 + 4 * (p[1] - p[3])
]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SQUARE_DISC))
def test_eigenvalues_are_roots(p):
    v, k, lam, mu = p
    sp_data = validate_params(*p)
    try:
        sp = spectrum(sp_data)
    except NonIntegralMultiplicity:
        return
    for th in (sp.theta_plus, sp.theta_minus):
        assert th * th - (lam - mu) * th - (k - mu) == 0
    assert sp.mult_k + sp.mult_plus + sp.mult_minus == v
    assert k + sp.theta_plus * sp.mult_plus + sp.theta_minus * sp.mult_minus == 0


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SQUARE_DISC))
def test_cosine_recurrence_property(p):
    v, k, lam, mu = p
    params = validate_params(*p)
    try:
        sp = spectrum(params)
    except NonIntegralMultiplicity:
        return
    for th in (int(sp.theta_plus), int(sp.theta_minus)):
        cs = cosine_sequence(params, th)
        assert cs.w0 == 1 and cs.w1 == F(th, k)
        assert th * cs.w1 == 1 + lam * cs.w1 + (k - lam - 1) * cs.w2


def test_complement_params_formula(petersen):
    assert SrgParams(10, 3, 0, 1).complement() == SrgParams(10, 6, 3, 4)
    assert graphs.verify_srg(petersen.complement()) == SrgParams(10, 6, 3, 4)
