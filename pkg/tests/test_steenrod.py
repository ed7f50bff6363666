import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from extforge.errors import InvalidSubalgebra, TruncationExceeded, UnknownAlgebra
from extforge.fglinalg import rank_mod
from extforge.steenrod import (Algebra, AlgebraHom, AlgebraPresentation, B_into_Atmf, TruncatedA,
                               builtin, builtin_algebra, canonical_name, exterior_generators)


def test_total_dimensions():
    assert builtin_algebra("E1(2)").total_dimension(24) == 4
    assert builtin_algebra("E1_3").total_dimension(24) == 4
    assert builtin_algebra("A1").total_dimension(24) == 8
    assert builtin_algebra("ExteriorB").total_dimension(24) == 8
    assert builtin_algebra("A2").total_dimension(30) == 64


def test_a1_dims_oracle():
    assert builtin_algebra("A1").dims(7) == {0: 1, 1: 1, 2: 1, 3: 2, 4: 1, 5: 1, 6: 1, 7: 0}


def _word_span_dims(amb: Algebra, gens, upto):
    """Brute force: span of all words in ``gens`` inside ``amb`` per degree."""
    elems = [amb.gen(g) for g in gens]
    degs = [e.degree() for e in elems]
    out = {}
    for d in range(upto + 1):
        vecs = []
        for n in range(d + 1):
            for w in itertools.product(range(len(elems)), repeat=n):
                if sum(degs[i] for i in w) != d:
                    continue
                x = amb.unit()
                for i in w:
                    x = x * elems[i]
                vecs.append(x.components.get(d, np.zeros(amb.dim(d), dtype=np.int64)))
        out[d] = rank_mod(np.array(vecs), amb.p) if vecs and amb.dim(d) else 0
    return out


def test_atmf3_dimension():
    # A^tmf is free over the exterior algebra B (dim 8) with quotient N3 (dim 3)
    A = builtin_algebra("Atmf3")
    dims = A.dims(A.T)
    assert sum(dims.values()) == 24
    assert max(d for d, n in dims.items() if n) == 23
    assert dims[9] == 3 and dims[14] == 3


def test_atmf3_maps_non_injectively_to_steenrod_algebra():
    # beta -> beta, P1 -> P1 respects the defining relations but has a kernel:
    # the image (brute-force word span) is smaller from degree 9 on.
    A = builtin_algebra("Atmf3")
    amb = Algebra(TruncatedA(3, 14))
    hom = AlgebraHom(A, amb, {"b": amb.gen("b"), "P1": amb.gen("P1")})
    brute = _word_span_dims(amb, ["b", "P1"], 14)
    assert all(brute[d] <= A.dim(d) for d in range(15))
    assert all(brute[d] == A.dim(d) for d in range(9))
    assert brute[9] < A.dim(9)
    assert hom.is_injective(8) and not hom.is_injective(14)


def test_a1_against_steenrod_algebra():
    amb = Algebra(TruncatedA(2, 8))
    assert _word_span_dims(amb, ["Sq1", "Sq2"], 7) == builtin_algebra("A1").dims(7)


def test_adem_relations_mod2():
    A = Algebra(TruncatedA(2, 8))
    sq = A.gen
    assert (sq("Sq1") * sq("Sq1")).is_zero()
    assert sq("Sq1") * sq("Sq2") == sq("Sq3")
    assert sq("Sq2") * sq("Sq2") == sq("Sq3") * sq("Sq1")
    assert sq("Sq2") * sq("Sq3") == sq("Sq5") + sq("Sq4") * sq("Sq1")


def test_admissible_basis_dims():
    # dimensions of the mod 2 Steenrod algebra: 1,1,1,2,2,2,3,4,4
    A = Algebra(TruncatedA(2, 8))
    assert [A.dim(d) for d in range(9)] == [1, 1, 1, 2, 2, 2, 3, 4, 4]


@given(st.data())
def test_associativity(data):
    A = builtin_algebra("Atmf3")

    def rand_elem():
        d = data.draw(st.integers(0, 9))
        n = A.dim(d)
        if n == 0:
            return A.unit()
        coeffs = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
        return A.element if False else type(A.unit())(A, {d: np.array(coeffs)})
    a, b, c = rand_elem(), rand_elem(), rand_elem()
    try:
        assert (a * b) * c == a * (b * c)
    except TruncationExceeded:
        pass


def test_exterior_generators_square_zero():
    x = exterior_generators()
    for v in x.values():
        assert (v * v).is_zero()
    assert (x["x1"] * x["x5"] + x["x5"] * x["x1"]).is_zero()
    hom = B_into_Atmf()
    assert hom.is_injective(15)


def test_literal_x9_is_rejected():
    with pytest.raises(InvalidSubalgebra):
        B_into_Atmf(literal_x9=True)


def test_names():
    assert canonical_name("E1_2") == ("E1", (2,))
    assert canonical_name("E1(3)") == ("E1", (3,))
    with pytest.raises(UnknownAlgebra):
        builtin("Nope")
    with pytest.raises(UnknownAlgebra):
        builtin("E1")


def test_truncation_raises():
    A = builtin_algebra("A1")
    with pytest.raises(TruncationExceeded):
        A.dim(A.T + 1)


def test_presentation_roundtrip():
    pres = builtin("Atmf3")
    again = AlgebraPresentation.from_json(pres.to_json())
    assert again.to_dict() == pres.to_dict()
    assert Algebra(again).dims(12) == builtin_algebra("Atmf3").dims(12)
