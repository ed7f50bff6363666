import json

import pytest
from hypothesis import given, settings, strategies as st

from extforge.errors import InconsistentSequence, OddDegree, ShapeMismatch, SplitViolation
from extforge.fglinalg import FgAbGroup, IntMatrix, coker, smith_normal_form
from extforge.pipelines import dim9_page, load_dataset, load_les
from extforge.ssengine import (BigradedPage, CoefficientSpectrum, ExactSeqTable, build_ahss,
                               check_exact, collapse_certificate, convolve, deduce,
                               partition_count_oracle, rational_rank_series, stringh_generators,
                               torsionfree_certificate, turn_page)

Z, Z2, ZERO = FgAbGroup.Z(), FgAbGroup.cyclic(2), FgAbGroup.zero()


# ---------------------------------------------------------------------------
# pages
# ---------------------------------------------------------------------------

def test_zero_differential_is_identity():
    P = BigradedPage({(0, 0): Z, (2, 0): Z, (1, 1): Z2}, r=2)
    Q = turn_page(P)
    assert Q.entries == P.entries and Q.r == 3


def test_multiplication_by_two():
    P = BigradedPage({(2, 0): Z, (0, 1): Z}, r=2)
    Q = turn_page(P, {(2, 0): IntMatrix([[2]])})
    assert Q.get(2, 0).is_zero()
    assert Q.get(0, 1) == Z2


def test_cohomological_direction():
    P = BigradedPage({(0, 1): Z, (2, 0): Z}, r=2, cohomological=True)
    assert P.target(0, 1) == (2, 0)
    Q = turn_page(P, {(0, 1): IntMatrix([[3]])})
    assert Q.get(0, 1).is_zero() and Q.get(2, 0) == FgAbGroup.cyclic(3)


def test_shape_and_split_checks():
    P = BigradedPage({(2, 0): Z, (0, 1): Z}, r=2, split_columns={0})
    with pytest.raises(ShapeMismatch):
        turn_page(P, {(2, 0): IntMatrix([[1, 1]])})
    with pytest.raises(SplitViolation):
        turn_page(P, {(2, 0): IntMatrix([[1]])})
    # a zero map into a split column is allowed
    assert turn_page(P, {(2, 0): IntMatrix([[0]])}).entries == P.entries


def test_page_json_roundtrip():
    P = BigradedPage({(0, 0): Z, (1, 2): FgAbGroup.of(1, [4])}, r=3, split_columns={1})
    Q = BigradedPage.from_dict(json.loads(P.to_json()))
    assert Q.to_json() == P.to_json()


# ---------------------------------------------------------------------------
# AHSS
# ---------------------------------------------------------------------------

def test_ahss_universal_coefficients():
    H = {0: Z, 1: Z2}
    E = CoefficientSpectrum.from_ranks("E", {0: 1, 2: 1})
    P = build_ahss(H, E, 4)
    assert P.get(1, 0) == Z2 and P.get(1, 2) == Z2
    # H_1 = Z/2 tensored with pi_q; no Tor term appears in column 2
    assert P.get(2, 0).is_zero() and P.get(2, 2).is_zero()


def test_ahss_tor_term_with_torsion_coefficients():
    H = {0: Z, 1: Z2}
    E = CoefficientSpectrum("E2", {0: Z2})
    P = build_ahss(H, E, 3)
    # H_2(X; Z/2) picks up Tor(H_1, Z/2) = Z/2
    assert P.get(2, 0) == Z2
    assert P.get(1, 0) == Z2


def test_ku_ahss_bu1_collapses():
    H = {k: Z for k in range(0, 23, 2)}
    P = build_ahss(H, CoefficientSpectrum.ku(), 11)
    assert collapse_certificate(P, 11).ok
    assert torsionfree_certificate(P, 11).label == "TORSION_FREE(10)"
    ranks = P.rank_by_total_degree()
    assert [ranks.get(n, 0) for n in range(11)] == [1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6]


def test_collapse_refused_with_odd_classes():
    H = {0: Z, 3: Z}
    P = build_ahss(H, CoefficientSpectrum.ku(), 6)
    assert not collapse_certificate(P, 6).ok


def test_torsion_detected():
    H = {0: Z, 1: Z2}
    P = build_ahss(H, CoefficientSpectrum.ku(), 4)
    c = torsionfree_certificate(P, 4)
    assert not c.ok and c.label == "NONE"


def test_dim9_split_column():
    page, data = dim9_page()
    assert 9 in page.split_columns
    assert not page.get(4, 0).is_zero()
    P = page
    while P.r < 5:
        P = turn_page(P)
    tgt = P.target(4, 0)
    assert tgt[0] == 9
    n_src, n_tgt = P.get(4, 0).ngens, P.get(*tgt).ngens
    with pytest.raises(SplitViolation):
        turn_page(P, {(4, 0): IntMatrix([[1] * n_src] * n_tgt)})


def test_ell_coefficients():
    ell = CoefficientSpectrum.ell(3, top=16)
    assert ell.pi(0) == Z and ell.pi(4) == Z and ell.pi(2).is_zero()


# ---------------------------------------------------------------------------
# exact sequences
# ---------------------------------------------------------------------------

def _cokernel_sequence(rows):
    """``Z^c --A--> Z^r --P--> coker A -> 0`` with ``P`` read off the SNF."""
    A = IntMatrix(rows)
    U, D, _ = smith_normal_form(A)
    d = [D.tolist()[i][i] for i in range(min(D.rows, D.cols))]
    rk = sum(1 for x in d if x)
    u = U.tolist()
    proj = [u[i] for i in range(rk, A.rows)] + [u[i] for i in range(rk) if d[i] > 1]
    C = coker(A)
    P = IntMatrix(proj, len(proj), A.rows)
    return ExactSeqTable([FgAbGroup.Z(A.cols), FgAbGroup.Z(A.rows), C, ZERO],
                         [A, P, "ZERO"])


@settings(max_examples=30)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(1, 3).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_check_exact_accepts_cokernel_sequences(rows):
    t = _cokernel_sequence(rows)
    assert check_exact(t)["consistent"]


def test_check_exact_rejects_nonexact_matrices():
    t = ExactSeqTable([Z, Z, Z], [IntMatrix([[2]]), IntMatrix([[0]])])
    with pytest.raises(InconsistentSequence):
        check_exact(t)


def test_isolated_node_must_vanish():
    t = ExactSeqTable([Z, Z2, Z], ["ZERO", "ZERO"])
    with pytest.raises(InconsistentSequence) as exc:
        check_exact(t)
    assert exc.value.node == 1


def test_deduce_short_exact():
    t = ExactSeqTable([ZERO, Z, None, Z, ZERO], ["UNKNOWN"] * 4)
    d = deduce(t)
    assert d.entries[2] == FgAbGroup.Z(2)
    assert 2 in d.provenance
    assert deduce(d).entries == d.entries


def test_deduce_iso():
    t = ExactSeqTable([Z2, None], ["ISO"])
    assert deduce(t).entries[1] == Z2


@pytest.mark.parametrize("name", ["FIG_BSTRINGH", "FIG_F"])
def test_figures_consistent_and_deduce_idempotent(name):
    t = load_les(name)
    check_exact(t)
    d = deduce(t)
    check_exact(d)
    assert deduce(d).entries == d.entries


def test_figure_deductions():
    d = deduce(load_les("FIG_BSTRINGH"))
    assert str(d.entries[d.index("pi_6(BStringh)")]) == "Z"
    assert str(d.entries[d.index("pi_8(BStringh)")]) == "Z^2"
    assert d.entries[d.index("pi_10(BStringh)")] is None
    f = deduce(load_les("FIG_F"))
    assert str(f.entries[f.index("pi_8(F)")]) == "Z"


def test_literal_pi7_value_is_inconsistent():
    data = load_dataset("FIG_F")
    i = data["labels"].index("pi_7(BSpincW7)")
    data["entries"][i] = "Z"
    t = ExactSeqTable.from_dict(data)
    with pytest.raises(InconsistentSequence) as exc:
        check_exact(t)
    assert exc.value.node == i


def test_table_roundtrip():
    t = load_les("FIG_BSTRINGH")
    again = ExactSeqTable.from_dict(json.loads(t.to_json()))
    assert again.to_dict() == t.to_dict()


# ---------------------------------------------------------------------------
# rational ranks
# ---------------------------------------------------------------------------

def test_mu_ranks():
    s = rational_rank_series([2, 4, 6, 8, 10, 12, 14], (), 15)
    assert s[6] == 3 and s[15] == 0
    assert s[:9] == [1, 0, 1, 0, 2, 0, 3, 0, 5]


def test_odd_generator_rejected():
    with pytest.raises(OddDegree):
        rational_rank_series([3], (), 10)


@settings(max_examples=25)
@given(st.lists(st.sampled_from([2, 4, 6, 8]), min_size=1, max_size=3),
       st.lists(st.sampled_from([2, 4, 6, 8]), min_size=1, max_size=3))
def test_series_convolution(a, b):
    N = 14
    assert rational_rank_series(a + b, (), N) == convolve(rational_rank_series(a, (), N),
                                                           rational_rank_series(b, (), N))


@settings(max_examples=25)
@given(st.lists(st.sampled_from([2, 4, 6, 8, 12]), min_size=1, max_size=4), st.integers(0, 16))
def test_series_matches_partition_oracle(gens, n):
    assert rational_rank_series(gens, (), 16)[n] == partition_count_oracle(gens, n)


def test_stringh_generators():
    assert stringh_generators(15) == [2, 4, 6, 8, 10, 12, 14, 8, 12]
