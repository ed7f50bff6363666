import numpy as np
import pytest
from hypothesis import given, strategies as st

from extforge.errors import ShapeMismatch
from extforge.fglinalg import (Echelon, FgAbGroup, FpMatrix, IntMatrix, coker, homology,
                               inverse_mod, is_prime, kernel_basis, kernel_mod, rank, rank_mod,
                               rref, rref_mod, smith_normal_form, solve_mod, subquotient_homology)

primes = st.sampled_from([2, 3, 5, 7])


def int_matrices(max_rows=5, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rref_small_example():
    R, piv = rref_mod(np.array([[2, 4], [1, 1]]), 3)
    assert piv == [0, 1]
    assert R.tolist() == [[1, 0], [0, 1]]


@given(int_matrices(), primes)
def test_rank_nullity(rows, p):
    a = np.array(rows) % p
    k = kernel_mod(a, p)
    assert rank_mod(a, p) + k.shape[0] == a.shape[1]
    if k.size:
        assert not ((a @ k.T) % p).any()


@given(int_matrices(), primes)
def test_rref_is_idempotent(rows, p):
    m = FpMatrix(np.array(rows) % p, p)
    R, piv, r = rref(m)
    R2, piv2, r2 = rref(R)
    assert np.array_equal(R.array, R2.array) and piv == piv2 and r == r2
    assert r == rank(m)


@given(int_matrices(4, 4), primes)
def test_solve_mod_roundtrip(rows, p):
    a = np.array(rows) % p
    x = np.arange(a.shape[1]) % p
    b = (a @ x) % p
    sol = solve_mod(a, b, p)
    assert sol is not None
    assert np.array_equal((a @ sol) % p, b)


def test_inverse_mod():
    a = np.array([[1, 2], [3, 4]])
    inv = inverse_mod(a, 5)
    assert ((a @ inv) % 5).tolist() == [[1, 0], [0, 1]]
    assert inverse_mod(np.array([[1, 2], [2, 4]]), 5) is None


def test_echelon_incremental():
    e = Echelon(3, 2)
    assert e.add([1, 1, 0])
    assert e.add([0, 1, 1])
    assert not e.add([1, 0, 1])
    assert e.contains([1, 0, 1]) and e.rank == 2


def test_kernel_basis_shape():
    m = FpMatrix(np.array([[1, 1, 1]]), 2)
    assert kernel_basis(m).shape == (2, 3)


@given(int_matrices())
def test_smith_normal_form(rows):
    m = IntMatrix(rows)
    U, D, V = smith_normal_form(m)
    a, u, d, v = (np.array(x.tolist(), dtype=object) for x in (m, U, D, V))
    assert (u.dot(a).dot(v) == d).all()
    assert abs(round(float(np.linalg.det(np.array(u, dtype=float))))) == 1
    assert abs(round(float(np.linalg.det(np.array(v, dtype=float))))) == 1
    diag = [d[i, i] for i in range(min(d.shape))]
    off = d.copy()
    for i in range(len(diag)):
        off[i, i] = 0
    assert not off.any()
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))


def test_group_canonical_form():
    assert FgAbGroup.of(0, [2, 3]) == FgAbGroup.cyclic(6)
    assert FgAbGroup.of(1, [4, 6]) == FgAbGroup(1, (2, 12))
    assert str(FgAbGroup.parse("Z^2+Z/2+Z/4")) == "Z^2+Z/2+Z/4"
    assert FgAbGroup.parse("0").is_zero()
    with pytest.raises(ValueError):
        FgAbGroup(0, (4, 2))


@given(st.integers(0, 3), st.lists(st.integers(0, 30), max_size=4))
def test_canonicalize_idempotent(r, orders):
    g = FgAbGroup.of(r, orders)
    assert g.canonicalize() == g
    assert FgAbGroup.parse(str(g)) == g


@given(st.lists(st.integers(2, 12), max_size=3), st.lists(st.integers(2, 12), max_size=3))
def test_tensor_tor_symmetric(a, b):
    A, B = FgAbGroup.of(1, a), FgAbGroup.of(0, b)
    assert A.tensor(B) == B.tensor(A)
    assert A.tor(B) == B.tor(A)


def test_tensor_and_tor_values():
    z2, z4 = FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)
    assert z2.tensor(z4) == z2
    assert z4.tor(FgAbGroup.cyclic(6)) == z2
    assert FgAbGroup.Z().tor(z2).is_zero()


def test_coker_and_homology():
    assert coker(IntMatrix([[2, 0], [0, 3]])) == FgAbGroup.cyclic(6)
    # Z --2--> Z --0--> Z  has homology Z/2 in the middle
    assert homology(IntMatrix([[2]]), IntMatrix([[0]])) == FgAbGroup.cyclic(2)


def test_subquotient_with_torsion():
    z, z2 = FgAbGroup.Z(), FgAbGroup.cyclic(2)
    # Z --1--> Z/2 --> 0 : surjective, homology 0
    h = subquotient_homology(IntMatrix([[1]]), IntMatrix.zeros(0, 1), z, z2, FgAbGroup.zero())
    assert h.is_zero()
    h = subquotient_homology(IntMatrix([[0]]), IntMatrix.zeros(0, 1), z, z2, FgAbGroup.zero())
    assert h == z2
    with pytest.raises(ShapeMismatch):
        subquotient_homology(IntMatrix([[1, 1]]), IntMatrix.zeros(0, 1), z, z2, FgAbGroup.zero())


@given(int_matrices(4, 4, -3, 3))
def test_homology_of_split_complex(rows):
    # the complex Z^c --A--> Z^r --0--> 0 has homology coker A
    m = IntMatrix(rows)
    assert homology(m, IntMatrix.zeros(0, m.rows)) == coker(m)
