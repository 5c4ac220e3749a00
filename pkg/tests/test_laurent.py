import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlink.laurent import (
    LaurentPoly,
    NonExactDivision,
    PoleAtZero,
    VariableClash,
    ZeroPolynomial,
    add,
    eval_complex,
    mul,
    normalize_or_zero,
    parse_poly,
    pow,
    substitute_variable,
    unit_normalize,
)

P = parse_poly

polys = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=6).map(LaurentPoly)
nonzero = polys.filter(bool)


def test_add_examples():
    assert add(P("s + s^-1"), P("-s")) == P("s^-1")
    p = P("3s^2 - s^-1")
    assert add(p, LaurentPoly()) == p
    assert add(P("s^2 - 1"), P("1 - s^-2")) == P("s^2 - s^-2")


def test_mul_examples():
    assert mul(P("s - s^-1"), P("s + s^-1")) == P("s^2 - s^-2")
    p = P("s - 1 + s^-1")
    assert mul(p, LaurentPoly.constant(1)) == p
    assert mul(p, p) == P("s^2 - 2s + 3 - 2s^-1 + s^-2")


def test_pow_examples():
    p = P("s - 1 + s^-1")
    assert pow(p, 1) == p
    assert pow(p, 0) == LaurentPoly.constant(1)
    assert pow(LaurentPoly(), 0) == 1
    assert pow(p, 2) == P("s^2 - 2s + 3 - 2s^-1 + s^-2")
    with pytest.raises(ValueError):
        pow(p, -1)


def test_variable_clash():
    with pytest.raises(VariableClash):
        P("s") + P("tau", "tau")
    with pytest.raises(VariableClash):
        mul(P("s"), P("tau", "tau"))
    # constants carry no variable
    assert P("tau", "tau") * 2 == P("2tau", "tau")


def test_substitute_variable():
    q = substitute_variable(P("s^2 - 1 + s^-2"), "tau")
    assert q == P("tau^2 - 1 + tau^-2", "tau")
    assert str(q) == "tau^2 - 1 + tau^-2"
    assert substitute_variable(LaurentPoly.constant(1), "tau") == 1
    assert substitute_variable(P("s"), "tau") == LaurentPoly.monomial(1, var="tau")


def test_eval_complex():
    assert eval_complex(P("s - s^-1"), 1) == 0
    assert eval_complex(P("s^2 - 1 + s^-2"), 1) == 1
    assert eval_complex(P("s^-1"), 2) == pytest.approx(0.5)
    with pytest.raises(PoleAtZero):
        eval_complex(P("s^-1"), 0)


def test_unit_normalize_examples():
    assert unit_normalize(P("-s^3 + s")) == P("s - s^-1")
    assert unit_normalize(P("s - 1 + s^-1")) == P("s - 1 + s^-1")
    assert unit_normalize(P("2s^2")) == 2
    with pytest.raises(ZeroPolynomial):
        unit_normalize(LaurentPoly())
    assert normalize_or_zero(LaurentPoly()) == 0


def test_render_and_half_powers():
    p = P("s^3 - 2s + s^-1")
    assert str(p) == "s^3 - 2s + s^-1"
    assert p.format(name="t", half=True) == "t^(3/2) - 2t^(1/2) + t^(-1/2)"
    assert P("s^2 - 1 + s^-2").format(name="t", half=True) == "t - 1 + t^-1"
    assert str(LaurentPoly()) == "0"


def test_divexact():
    a, b = P("s^2 - 1 + s^-2"), P("s - s^-1")
    assert (a * b).divexact(b) == a
    with pytest.raises(NonExactDivision):
        a.divexact(P("s + 1"))
    with pytest.raises(ZeroDivisionError):
        a.divexact(LaurentPoly())


def test_json_roundtrip():
    p = P("-4s^5 + 7 - s^-3")
    assert LaurentPoly.from_json(p.to_json()) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(polys, st.sampled_from(["tau", "t", "t0"]))
def test_rename_is_bijective(p, name):
    assert p.rename(name).rename("s") == p


@given(nonzero, st.integers(-8, 8), st.sampled_from([1, -1]))
def test_unit_normalize_ignores_units(p, k, sign):
    assert unit_normalize(p * LaurentPoly.monomial(k, sign)) == unit_normalize(p)


@given(nonzero)
def test_unit_normalize_is_idempotent(p):
    n = unit_normalize(p)
    assert unit_normalize(n) == n
    assert n.leading_coeff() > 0


@given(polys)
def test_parse_render_roundtrip(p):
    assert parse_poly(str(p)) == p


@given(nonzero, nonzero)
@settings(max_examples=50)
def test_divexact_inverts_mul(a, b):
    assert (a * b).divexact(b) == a


@given(polys, st.complex_numbers(min_magnitude=0.5, max_magnitude=2, allow_nan=False))
def test_eval_is_a_homomorphism(p, z):
    q = p * p + 3
    assert math.isclose(abs(eval_complex(q, z) - (eval_complex(p, z) ** 2 + 3)), 0, abs_tol=1e-6 * (1 + abs(eval_complex(q, z))))
