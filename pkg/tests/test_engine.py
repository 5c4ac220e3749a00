import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlink.braid import BraidWord, conjugate, parse_braid, random_braid, stabilize
from qlink.engine import (
    BudgetExceeded,
    NotProportionalToIdentity,
    PositionOutOfRange,
    alexander,
    apply_local,
    braid_image_column,
    closure_trace,
    invariant,
    links_gould_qm1,
    verify_theorem,
)
from qlink.laurent import LaurentPoly, normalize_or_zero, parse_poly
from qlink.oracle import alexander_oracle
from qlink.operators import SparseOperator
from qlink.ribbon import build_lg_qm1_ribbon, build_sl2_ribbon

SL2 = build_sl2_ribbon()
P = parse_poly
TREFOIL = parse_braid("2; 1 1 1")
FIG8 = parse_braid("3; 1 -2 1 -2")


def test_apply_local_examples():
    assert apply_local(SparseOperator.identity(4), 1, 2, 2) == {2: 1}
    assert apply_local(SL2.braiding, 1, 0b01, 2) == {0b10: 1}
    assert apply_local(SL2.braiding, 1, 0b10, 2) == {0b01: 1, 0b10: P("s^-1 - s")}
    # slot 2 of 3 strands acts on the two low digits
    assert apply_local(SL2.braiding, 2, 0b101, 3) == {0b110: 1}
    with pytest.raises(PositionOutOfRange):
        apply_local(SL2.braiding, 2, 0, 2)


def test_braid_image_column():
    one = LaurentPoly.constant(1)
    assert braid_image_column(BraidWord(3), SL2, 5) == {5: one}
    assert braid_image_column(parse_braid("2; 1 -1"), SL2, 2) == {2: one}
    got = braid_image_column(parse_braid("2; 1 1"), SL2, 0b01)
    B2 = SL2.braiding @ SL2.braiding
    assert got == {r: B2[r, 0b01] for r in range(4) if B2[r, 0b01]}
    assert got == {0b01: 1, 0b10: P("s^-1 - s")}


def test_closure_trace_examples():
    assert closure_trace(BraidWord(3), SL2).nnz == 0
    assert closure_trace(BraidWord(1), SL2) == SparseOperator.identity(2)
    M = closure_trace(TREFOIL, SL2)
    c = M.scalar_multiple_of_identity()
    assert normalize_or_zero(c) == P("s^2 - 1 + s^-2")


def test_invariant_examples():
    assert invariant(BraidWord(1), SL2).scalar == 1
    res = invariant(TREFOIL, SL2)
    assert res.proportionality_ok and res.writhe == 3 and res.strands == 2
    assert normalize_or_zero(res.scalar) == P("s^2 - 1 + s^-2")
    assert normalize_or_zero(invariant(FIG8, SL2).scalar) == P("s^2 - 3 + s^-2")
    assert res.to_json()["text"] == str(res.scalar)


def test_alexander_examples():
    assert alexander(BraidWord(1)) == 1
    assert alexander(TREFOIL) == P("s^2 - 1 + s^-2")
    assert alexander(parse_braid("2; 1 1")) in (P("s - s^-1"), P("s^-1 - s"))


def test_links_gould_examples():
    for b in (TREFOIL, FIG8, parse_braid("3; 1 1 2 -1 2")):
        assert links_gould_qm1(b, 1) == alexander(b).rename("tau")
    assert links_gould_qm1(BraidWord(1), 2) == 1
    tref = P("tau^2 - 1 + tau^-2", "tau") ** 2
    assert normalize_or_zero(links_gould_qm1(TREFOIL, 2)) == normalize_or_zero(tref)
    with pytest.raises(ValueError):
        links_gould_qm1(TREFOIL, 0)


def test_verify_theorem_examples():
    assert verify_theorem(TREFOIL, 1).equal_exact
    assert verify_theorem(TREFOIL, 2).passed
    rep = verify_theorem(FIG8, 3)
    assert rep.passed and rep.equal_exact
    assert rep.to_json()["n"] == 3


def test_reference_and_fast_agree():
    for seed in range(8):
        b = random_braid(2 + seed % 3, 7, seed)
        for rib in (SL2, build_lg_qm1_ribbon(2)):
            assert closure_trace(b, rib, method="reference") == closure_trace(b, rib)


def test_batch_size_irrelevant():
    b = random_braid(4, 10, 3)
    rib = build_lg_qm1_ribbon(2)
    assert closure_trace(b, rib, batch_size=7) == closure_trace(b, rib, batch_size=4096)


def test_unknown_method():
    with pytest.raises(ValueError):
        closure_trace(TREFOIL, SL2, method="dense")


def test_not_proportional_is_reported():
    # an arbitrary non-ribbon "braiding" breaks scalar-ness
    from qlink.ribbon import RibbonData

    s = LaurentPoly.monomial(1)
    bogus = SparseOperator.diagonal([1, s, 1, 1])
    rib = RibbonData(2, bogus, bogus, SparseOperator.diagonal([1, 1]), "bogus")
    with pytest.raises(NotProportionalToIdentity) as info:
        invariant(parse_braid("2; 1"), rib)
    assert info.value.residual.scalar_multiple_of_identity() is None
    assert not invariant(parse_braid("2; 1"), rib, strict=False).proportionality_ok


def test_budget():
    with pytest.raises(BudgetExceeded):
        links_gould_qm1(BraidWord(12), 2)
    with pytest.raises(BudgetExceeded):
        links_gould_qm1(BraidWord(4), 3, budget_bits=12)
    assert links_gould_qm1(BraidWord(1), 3, budget_bits=None) == 1


def test_workers_identical():
    b = random_braid(5, 12, 9)
    rib = build_lg_qm1_ribbon(2)
    assert closure_trace(b, rib, workers=1) == closure_trace(b, rib, workers=3)


braids = st.builds(random_braid, st.integers(2, 4), st.integers(0, 10), st.integers(0, 10**6))


@settings(max_examples=30, deadline=None)
@given(braids, st.integers(0, 10**6))
def test_markov_invariance_exact(b, seed):
    i = 1 + seed % (b.strands - 1)
    sign = 1 if seed % 2 else -1
    base = alexander(b)
    assert alexander(conjugate(b, i, sign)) == base
    assert alexander(stabilize(b, sign)) == base


@settings(max_examples=30, deadline=None)
@given(braids)
def test_mirror_reflects(b):
    assert alexander(b.mirror()) == alexander(b).reflect()


@settings(max_examples=40, deadline=None)
@given(braids)
def test_matches_oracle(b):
    assert normalize_or_zero(alexander(b)) == alexander_oracle(b)


@settings(max_examples=15, deadline=None)
@given(st.builds(random_braid, st.integers(2, 3), st.integers(0, 8), st.integers(0, 10**6)), st.integers(2, 3))
def test_theorem_random(b, n):
    assert verify_theorem(b, n).equal_exact
