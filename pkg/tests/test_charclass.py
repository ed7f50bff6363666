import itertools
from collections import defaultdict

import pytest
from hypothesis import given, settings, strategies as st

from extforge.charclass import (BundleSymbol, CharRing, binom, bockstein_compare, identity_names,
                                quotient_basis, sq1_kernel, steenrod_sq, stiefel_whitney_ring,
                                tensor_line, verify_paper_identity, whitney_sum)
from extforge.errors import DegreeMismatch, UnknownIdentity

T = 8
BO = stiefel_whitney_ring(T)


# ---------------------------------------------------------------------------
# splitting-principle oracle: w_j = e_j(t_1..t_n), Sq(t) = t + t^2, over F_2
# ---------------------------------------------------------------------------

NV = T


def _pmul(a, b):
    out = defaultdict(int)
    for ma, ca in a.items():
        for mb, cb in b.items():
            out[tuple(x + y for x, y in zip(ma, mb))] ^= ca & cb
    return {m: 1 for m, c in out.items() if c}


def _padd(a, b):
    out = dict(a)
    for m, c in b.items():
        if m in out:
            del out[m]
        else:
            out[m] = 1
    return out


def _elem(j):
    out = {}
    for idx in itertools.combinations(range(NV), j):
        m = [0] * NV
        for i in idx:
            m[i] = 1
        out[tuple(m)] = 1
    return out


ONE = {tuple([0] * NV): 1}
E = [ONE] + [_elem(j) for j in range(1, NV + 1)]


def to_t(expr):
    """Image of an element of H*(BO) in F_2[t_1..t_n]."""
    total = {}
    for mono, c in expr.terms.items():
        if c % 2 == 0:
            continue
        term = ONE
        for name, e in zip(BO.names, mono):
            for _ in range(e):
                term = _pmul(term, E[int(name[1:])])
        total = _padd(total, term)
    return total


def total_sq_t(poly):
    """Total square of a polynomial in the t's, split by degree."""
    out = defaultdict(dict)
    for mono, c in poly.items():
        # prod_i (t_i + t_i^2)^{e_i}
        term = {tuple([0] * NV): 1}
        for i, e in enumerate(mono):
            for _ in range(e):
                ti = [0] * NV
                ti[i] = 1
                ti2 = [0] * NV
                ti2[i] = 2
                term = _pmul(term, {tuple(ti): 1, tuple(ti2): 1})
        for m in term:
            extra = sum(m) - sum(mono)
            out[extra] = _padd(out[extra], {m: 1})
    return out


@pytest.mark.parametrize("i,j", [(i, j) for j in range(1, 7) for i in range(0, j + 1) if i + j <= T])
def test_wu_formula_against_splitting_principle(i, j):
    lhs = to_t(BO.sq(i, BO.gen(f"w{j}")))
    rhs = total_sq_t(E[j]).get(i, {})
    assert lhs == rhs


# ---------------------------------------------------------------------------
# algebraic properties of the action
# ---------------------------------------------------------------------------

def sw_monomials(max_deg):
    gens = st.lists(st.integers(1, 4), min_size=1, max_size=3).filter(lambda l: sum(l) <= max_deg)
    return gens.map(lambda l: BO.expr("*".join(f"w{k}" for k in l)))


@settings(max_examples=30)
@given(sw_monomials(4), sw_monomials(4), st.integers(0, 6))
def test_cartan_formula(x, y, k):
    if x.degree() + y.degree() + k > T:
        return
    lhs = BO.sq(k, x * y)
    rhs = BO.zero()
    for i in range(k + 1):
        rhs = rhs + BO.sq(i, x) * BO.sq(k - i, y)
    assert lhs == rhs


@settings(max_examples=30)
@given(sw_monomials(4))
def test_instability(x):
    d = x.degree()
    assert BO.sq(0, x) == x
    assert BO.sq(d, x) == x * x
    for i in range(d + 1, T - d + 1):
        assert BO.sq(i, x).is_zero()


@settings(max_examples=30)
@given(sw_monomials(5))
def test_adem_sq1sq1_and_sq1sq2(x):
    if x.degree() + 3 > T:
        return
    assert BO.sq(1, BO.sq(1, x)).is_zero()
    assert BO.sq(1, BO.sq(2, x)) == BO.sq(3, x)
    assert BO.sq(2, BO.sq(2, x)) == BO.sq(3, BO.sq(1, x))


def test_binomials():
    assert binom(5, 2) == 10
    assert binom(-1, 0) == 1
    assert binom(3, 5) == 0


def test_chern_rule():
    R = CharRing([("c1", 2), ("c2", 4), ("c3", 6)],
                 steenrod_rules={f"c{j}": ("chern", j) for j in (1, 2, 3)}, truncation=8)
    assert R.sq(2, R["c1"]) == R["c1"] ** 2
    assert R.sq(2, R["c2"]) == R["c1"] * R["c2"] + R["c3"]
    assert R.sq(1, R["c2"]).is_zero()


def test_integer_ring_relations():
    R = CharRing([("x", 2), ("y", 2)], relations=["2*x"], coefficients="Z")
    assert (2 * R["x"]).is_zero()
    assert not R["x"].is_zero()
    assert R.expr("3*x - y") == R.expr("x - y")
    assert (R.expr("4*y")).halve() == R.expr("2*y")


# ---------------------------------------------------------------------------
# structured rings
# ---------------------------------------------------------------------------

def test_sq1_w2_oriented():
    R = stiefel_whitney_ring(T, oriented=True)
    assert R.sq(1, R["w2"]) == R["w3"]
    assert steenrod_sq(1, R["w2"]) == R["w3"]


def test_spinc_ring_kills_odd_classes():
    R = stiefel_whitney_ring(10, spinc=True)
    for k in (1, 3, 5):
        assert R[f"w{k}"].is_zero()
    # Sq^4 w5 = w4 w5 + w3 w6 + w2 w7 + w1 w8 + w9 forces w9 = w2 w7
    assert R["w9"] == R.expr("w2*w7")
    assert R["w2"] == R["c1"]
    assert R.sq(1, R["w6"]) == R["w7"]
    assert not R["w7"].is_zero()


def test_bockstein_equal_beta():
    R = stiefel_whitney_ring(T, oriented=True)
    v = bockstein_compare(R.expr("w6 + w3^2"), R.expr("w6"))
    assert v.kind == "EQUAL_BETA"


def test_bockstein_residual_w2w4():
    R = stiefel_whitney_ring(10, spinc=True)
    v = bockstein_compare(R.expr("w2*w4 + w6"), R.expr("w6"))
    assert v.kind == "RESIDUAL"
    assert str(v.residual) == "w2*w4"
    # if mod-2 reduction detects 2-torsion, Sq1-closed classes have trivial beta
    R2 = stiefel_whitney_ring(10, spinc=True, two_torsion_detected=True)
    assert bockstein_compare(R2.expr("w2*w4 + w6"), R2.expr("w6")).kind == "EQUAL_BETA"


def test_bockstein_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        bockstein_compare(BO["w2"], BO["w3"])


def test_quotient_basis_and_sq1_kernel():
    R = stiefel_whitney_ring(T, oriented=True)
    assert len(quotient_basis(R, 4)) == R.dim(4) == 2  # w4, w2^2
    ker = sq1_kernel(R, 4)
    for x in ker:
        assert R.sq(1, x).is_zero()


# ---------------------------------------------------------------------------
# bundles
# ---------------------------------------------------------------------------

ZR = CharRing([("a", 2), ("b", 2), ("c", 4)], coefficients="Z", truncation=8)


def test_tensor_line_p1():
    L = tensor_line(BundleSymbol.complex_line(ZR, "a"), BundleSymbol.complex_line(ZR, "b"))
    assert L.p1 == ZR.expr("a^2 + 2*a*b + b^2")


def test_whitney_sum_total_class_is_multiplicative():
    V = BundleSymbol.from_sw(BO, ["w1", "w2"], name="V")
    W = BundleSymbol.from_sw(BO, ["w1"], name="W")
    S = whitney_sum(V, W)
    assert S.total_w(1).is_zero()  # w1 + w1
    assert S.total_w(2) == BO.expr("w2 + w1^2")
    assert S.total_w(3) == BO.expr("w1*w2")


def test_complex_bundle_p1_convention():
    E_ = BundleSymbol.complex(ZR, ["a", "c"])
    assert E_.p1 == ZR.expr("a^2 - 2*c")
    assert E_.two_lambda_c() == ZR.expr("2*a^2 - 2*c")


def test_tag_validation():
    with pytest.raises(ValueError):
        BundleSymbol.from_sw(BO, ["w1"], tags={"spin"})
    with pytest.raises(ValueError):
        BundleSymbol.complex(ZR, ["a"], tags={"SU"})


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["P1_TENSOR", "LAMBDA_C_WHITNEY", "LAMBDAC_MOD2",
                                  "STRINGH_EQUIV_C2"])
def test_identities_hold(name):
    r = verify_paper_identity(name)
    assert r.holds, r.to_text()


def test_trivial_second_bundle():
    assert verify_paper_identity("LAMBDA_C_WHITNEY", trivial_w=True).holds
    assert verify_paper_identity("P1_TENSOR", trivial_l2=True).holds


def test_w7_written_steps_and_residual():
    r = verify_paper_identity("W7_DERIVATION")
    assert r.data["steps"] == {"a": True, "b": True, "c": False, "d": True}
    assert r.data["beta"] == "RESIDUAL(w2*w4)"
    assert not r.holds
    assert verify_paper_identity("W7_DERIVATION", two_torsion_detected=True).holds


def test_remark_discrepancy_reported():
    r = verify_paper_identity("REMARK_CPX_LAMBDAC")
    assert not r.holds
    assert r.residual == "4*c1^2"


@pytest.mark.parametrize("m,n,k", [(2, 2, 0), (3, 3, 1), (5, 4, 3)])
def test_cpcp_cross_term(m, n, k):
    r = verify_paper_identity("CPCP_LAMBDAC", m=m, n=n, k=k)
    assert r.data["coefficients"]["xy"] == -(2 * k + 1) * (m + 1) * (n + 1)


def test_cpcp_symmetry():
    r = verify_paper_identity("CPCP_LAMBDAC", m=3, n=3, k=2)
    c = r.data["coefficients"]
    assert c["x^2"] == c["y^2"]


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify_paper_identity("NOPE")
    assert "W7_DERIVATION" in identity_names()


def test_report_text_has_trace():
    r = verify_paper_identity("P1_TENSOR")
    text = r.to_text()
    assert "P1_TENSOR" in text and "holds: True" in text
    assert r.to_dict()["holds"] is True
