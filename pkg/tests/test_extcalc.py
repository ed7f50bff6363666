import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from extforge.errors import InvalidModule, TruncationExceeded
from extforge.extcalc import (HBP3, N3, ExtChart, FPModule, Qbar, Qbar_as_kernel, appendix_module,
                              appendix_names, builtin_module, compute_chart, cyclic_quotient,
                              direct_sum, free_module, induced_module, minimal_resolution,
                              module_isomorphic, shapiro_chart, shift, trivial_module)
from extforge.pipelines import polynomial_pattern
from extforge.steenrod import B_into_Atmf, builtin_algebra, exterior_generators


def F(name):
    return trivial_module(builtin_algebra(name))


@pytest.mark.parametrize("p", [2, 3])
def test_e1_polynomial_pattern(p):
    c = compute_chart(F(f"E1({p})"), 6, 20, ops=("h0",))
    for s in range(7):
        for t in range(21):
            assert c.dim(s, t) == polynomial_pattern([(1, 1), (1, 2 * p - 1)], s, t)


def test_a1_known_classes():
    c = compute_chart(F("A1"), 6, 20, ops=())
    nz = {(s, t) for s, t in c.nonzero() if t - s <= 8}
    # h0-tower, h1, h1^2, a at (3,7), b at (4,12); h1^3 = 0
    assert {(1, 2), (2, 4), (3, 7), (4, 12)} <= nz
    assert (3, 6) not in nz


@pytest.mark.parametrize("name", ["E1(2)", "A1", "Atmf3"])
def test_resolution_is_a_minimal_complex(name):
    R = minimal_resolution(F(name), 4, 14)
    assert R.check_d_squared()
    assert R.check_minimal()
    # for a minimal resolution Hom(F_s, F_p) has zero differential
    dims = R.hom_complex_dims()
    assert all(R.ext_dim(s, t) == n for (s, t), n in dims.items())


def test_reverse_tiebreak_gives_same_ext():
    a = minimal_resolution(F("A1"), 4, 12)
    b = minimal_resolution(F("A1"), 4, 12, reverse_tiebreak=True)
    assert a.chart().dims == b.chart().dims


def test_free_module_ext_is_concentrated_at_origin():
    A = builtin_algebra("E1(3)")
    c = compute_chart(free_module(A), 3, 10, ops=())
    assert c.nonzero() == [(0, 0)]


def test_single_class_at_origin():
    c = compute_chart(F("E1_2"), 0, 0, ops=())
    assert c.nonzero() == [(0, 0)]


@settings(max_examples=8)
@given(st.integers(0, 4), st.integers(0, 4))
def test_ext_additive_and_shift(a, b):
    M = F("E1(2)")
    S = direct_sum(shift(M, a), shift(M, b))
    cS = compute_chart(S, 3, 12, ops=())
    cM = compute_chart(M, 3, 12, ops=())
    for s in range(4):
        for t in range(13):
            assert cS.dim(s, t) == cM.dim(s, t - a) + cM.dim(s, t - b)


def test_n3_chart_shape():
    c = compute_chart(N3(), 6, 21, ops=("h0",))
    cols = [n for n in c.columns() if n <= 15]
    assert cols == [0, 4, 8, 12]
    assert all(c.op_injective_in_column(n) for n in cols)


def test_n3_is_induced_from_b():
    iso, witness = module_isomorphic(induced_module(B_into_Atmf()), N3(), max_degree=12)
    assert iso and witness is not None


def test_hbp3_splitting():
    iso, _ = module_isomorphic(HBP3(), direct_sum(N3(), shift(N3(), 12)), max_degree=15)
    assert iso
    assert not module_isomorphic(HBP3(), N3(), max_degree=15)[0]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_qbar_shift_law(p):
    Q = compute_chart(Qbar(p), 5, 16, ops=())
    E = compute_chart(F(f"E1({p})"), 6, 17, ops=())
    for s in range(6):
        for t in range(17):
            assert Q.dim(s, t) == E.dim(s + 1, t + 1)
    assert module_isomorphic(Qbar_as_kernel(p), Qbar(p))[0]


def test_shapiro_chart_transports_ops():
    direct = compute_chart(N3(), 4, 16, ops=("h0",))
    over_b = compute_chart(F("ExteriorB"), 4, 16, ops=("h0", "y1", "y2"))
    c = shapiro_chart(direct, over_b)
    assert "y1" in c.edges and "y2" in c.edges
    assert c.dims == direct.dims


def test_shapiro_chart_rejects_mismatch():
    direct = compute_chart(F("Atmf3"), 3, 12, ops=("h0",))
    over_b = compute_chart(F("ExteriorB"), 3, 12, ops=("y1",))
    with pytest.raises(InvalidModule):
        shapiro_chart(direct, over_b)


def test_chart_json_roundtrip():
    c = compute_chart(N3(), 3, 12, ops=("h0",))
    again = ExtChart.from_dict(json.loads(c.to_json()))
    assert again.to_json() == c.to_json()


def test_invalid_module_rejected():
    A = builtin_algebra("E1(2)")
    # Q0 acting twice nontrivially violates Q0^2 = 0
    with pytest.raises(InvalidModule):
        FPModule(A, {0: 1, 1: 1, 2: 1}, {("Q0", 0): [[1]], ("Q0", 1): [[1]]})


def test_truncation_exceeded():
    with pytest.raises(TruncationExceeded):
        compute_chart(F("E1(3)"), 2, 200, ops=())


def test_cyclic_quotient_n3():
    # N3 is the quotient by the two-sided ideal of beta, i.e. by the left
    # ideal on x1, x5, x9; the left ideal on beta alone leaves 12 classes.
    A = builtin_algebra("Atmf3")
    left = cyclic_quotient(A, [A.gen("b")])
    assert sum(left.dims.values()) == 12
    M = cyclic_quotient(A, list(exterior_generators(A).values()), name="A/(b)")
    assert M.dims == {0: 1, 4: 1, 8: 1}
    assert module_isomorphic(M, N3(), max_degree=12)[0]


@pytest.mark.parametrize("name", appendix_names())
def test_appendix_modules_even_towers(name):
    M = appendix_module(name)
    c = compute_chart(M, 6, 17, ops=("h0",))
    cols = [n for n in c.columns() if n <= 11]
    assert all(n % 2 == 0 for n in cols)
    assert all(c.op_injective_in_column(n) for n in cols)


def test_builtin_module_lookup():
    assert builtin_module("Qbar(3)").p == 3
    assert builtin_module("F2", "A1").dims == {0: 1}


def test_yoneda_operations_polynomial_over_b():
    # Ext_B(F3) = F3[h0, y1, y2]: every operation is injective in the computed range
    c = compute_chart(F("ExteriorB"), 5, 20, ops=("h0", "y1", "y2"))
    assert c.op_degrees == {"h0": 1, "y1": 5, "y2": 9}
    for n in range(0, 12):
        for op in ("h0", "y1", "y2"):
            assert c.op_injective_in_column(n, op)
    assert c.dim(1, 5) == 1 and c.dim(1, 9) == 1 and c.dim(2, 10) == 2


def test_h0_edges_match_tower_structure():
    c = compute_chart(F("E1(2)"), 5, 14, ops=("h0",))
    for s in range(5):
        assert c.edge("h0", s, s).tolist() == [[1]]
