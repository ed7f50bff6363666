"""Exact linear algebra over prime fields and the integers.

Two worlds live here:

* ``F_p`` matrices backed by numpy ``int64`` arrays (entries always reduced to
  ``[0, p)``).  Row reduction is vectorised one pivot at a time; the pivot
  rule is deterministic (leftmost column, smallest row index), so every basis
  produced downstream is reproducible.
* Integer matrices backed by nested lists of Python ints.  Smith normal form
  keeps arbitrary precision throughout, since coefficient swell shows up even
  on small inputs.

On top of the Smith form sit finitely generated abelian groups in invariant
factor form, cokernels and homology -- including homology of complexes whose
terms already carry torsion, which is what spectral-sequence pages need.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import CompositionNonzero, ShapeMismatch

__all__ = [
    "is_prime",
    "FpMatrix",
    "rref",
    "kernel_basis",
    "rank",
    "rref_mod",
    "kernel_mod",
    "solve_mod",
    "inverse_mod",
    "IntMatrix",
    "smith_normal_form",
    "FgAbGroup",
    "coker",
    "homology",
    "subquotient_homology",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# F_p kernels on raw arrays (used internally by the heavier modules)
# ---------------------------------------------------------------------------

def _as_mod_array(a, p: int) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    return np.mod(arr, p)


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p.

    Args:
        a: 2-d integer array (not modified).
        p: prime modulus.

    Returns:
        ``(R, pivots)`` where ``R`` has the same shape as ``a`` and the rows
        after ``len(pivots)`` are zero.
    """
    m = np.mod(np.array(a, dtype=np.int64, copy=True), p)
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            m[rows] = (m[rows] - np.outer(col[rows], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning the right null space ``{x : a @ x = 0}`` over F_p.

    One basis vector per free column, in increasing free-column order; the
    free coordinate is 1 and the other free coordinates are 0.
    """
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref_mod(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve ``a @ x = b`` over F_p; ``b`` may be a vector or a matrix.

    Returns one solution (free variables set to zero) or ``None`` if the
    system is inconsistent.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    n = a.shape[1]
    if a.shape[0] == 0:
        x = np.zeros((n, bb.shape[1]), dtype=np.int64)
        return x[:, 0] if vec else x
    aug = np.concatenate([a, bb], axis=1)
    r, pivots = rref_mod(aug, p)
    if pivots and pivots[-1] >= n:
        return None
    x = np.zeros((n, bb.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, n:]
    return x[:, 0] if vec else x


def inverse_mod(a: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of a square matrix over F_p, or ``None`` if singular."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ShapeMismatch("inverse of a non-square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref_mod(aug, p)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return r[:, n:].copy()


def rank_mod(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


class Echelon:
    """Incrementally maintained row space over F_p.

    Useful when vectors arrive one at a time and we only need to know whether
    each new vector is independent of the previous ones.
    """

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v) -> np.ndarray:
        v = np.mod(np.array(v, dtype=np.int64), self.p)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v) -> bool:
        """Insert ``v``; return ``True`` if it enlarged the span."""
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, self.p)) % self.p
        for k, row in enumerate(self.rows):
            if row[c]:
                self.rows[k] = (row - row[c] * v) % self.p
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    @property
    def rank(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# FpMatrix value type
# ---------------------------------------------------------------------------

class FpMatrix:
    """Immutable matrix over the prime field F_p."""

    __slots__ = ("p", "_a")

    def __init__(self, entries, p: int, shape: tuple[int, int] | None = None):
        if not is_prime(int(p)):
            raise ValueError(f"{p} is not prime")
        self.p = int(p)
        arr = np.array(entries, dtype=np.int64)
        if shape is not None:
            arr = arr.reshape(shape)
        elif arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ShapeMismatch("FpMatrix entries must be two-dimensional")
        arr = np.mod(arr, self.p)
        arr.setflags(write=False)
        self._a = arr

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ValueError("prime mismatch")
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return FpMatrix((self._a @ other._a) % self.p, self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in addition")
        return FpMatrix(self._a + other._a, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (self.p == other.p and self.shape == other.shape
                and bool(np.array_equal(self._a, other._a)))

    def __hash__(self):
        return hash((self.p, self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.tolist()})"


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int], int]:
    """Reduced row echelon form: ``(R, pivot columns, rank)``."""
    if m.rows == 0 or m.cols == 0:
        return m, [], 0
    r, piv = rref_mod(m.array, m.p)
    return FpMatrix(r, m.p), piv, len(piv)


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Basis of the null space of ``m``, one vector per row."""
    k = kernel_mod(m.array, m.p) if m.cols else np.zeros((0, 0), dtype=np.int64)
    return FpMatrix(k.reshape(-1, m.cols), m.p)


def rank(m: FpMatrix) -> int:
    return rref(m)[2]


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form
# ---------------------------------------------------------------------------

class IntMatrix:
    """Immutable integer matrix with arbitrary-precision entries.

    A map ``Z^cols -> Z^rows``; columns are images of basis vectors.
    """

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if not data:
            data = tuple(tuple(0 for _ in range(cols)) for _ in range(rows))
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeMismatch("ragged or mis-sized integer matrix")
        self.rows, self.cols, self._e = rows, cols, data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls((), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None,
             cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        e = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            e[i][i] = v
        return cls(e, rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._e]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self._e[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._e for x in r)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        oc = [[other._e[k][j] for k in range(other.rows)] for j in range(other.cols)]
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in oc]
                          for row in self._e], self.rows, other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in addition")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)],
                         self.rows, self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._e], self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.shape, self._e))

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def hstack(*mats: IntMatrix) -> IntMatrix:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeMismatch("hstack row mismatch")
    e = [sum((list(m._e[i]) for m in mats), []) for i in range(rows)]
    return IntMatrix(e, rows, sum(m.cols for m in mats))


def _snf(a: list[list[int]], nrows: int, ncols: int):
    """Smith form with full bookkeeping.

    Returns ``(D, U, Uinv, V, Vinv)`` as nested lists with ``D = U a V``.
    """
    d = [list(r) for r in a]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    Ui = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    Vi = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    # Row operation "row i += k * row j" acts as d <- E d with E = I + k e_ij;
    # then U <- E U and Uinv <- Uinv E^{-1} (column j of Uinv -= k * column i).
    def row_add(i, j, k):
        if k == 0:
            return
        d[i] = [x + k * y for x, y in zip(d[i], d[j])]
        U[i] = [x + k * y for x, y in zip(U[i], U[j])]
        for r in Ui:
            r[j] -= k * r[i]

    def row_swap(i, j):
        if i == j:
            return
        d[i], d[j] = d[j], d[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    # Column operation "col i += k * col j": d <- d E with E = I + k e_ji;
    # V <- V E and Vinv <- E^{-1} Vinv (row j of Vinv -= k * row i).
    def col_add(i, j, k):
        if k == 0:
            return
        for r in d:
            r[i] += k * r[j]
        for r in V:
            r[i] += k * r[j]
        Vi[j] = [x - k * y for x, y in zip(Vi[j], Vi[i])]

    def col_swap(i, j):
        if i == j:
            return
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry in the remaining block, deterministic order
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            piv = d[t][t]
            for i in range(t + 1, nrows):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // piv))
                    if d[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // piv))
                    if d[t][j]:
                        done = False
            if not done:
                # move the smallest nonzero of row/col t to the pivot
                cands = [(abs(d[i][t]), 0, i) for i in range(t, nrows) if d[i][t]]
                cands += [(abs(d[t][j]), 1, j) for j in range(t, ncols) if d[t][j]]
                _, kind, k = min(cands)
                if kind == 0:
                    row_swap(t, k)
                else:
                    col_swap(t, k)
                continue
            # row and column cleared; enforce divisibility on the rest
            piv = d[t][t]
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if d[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if d[t][t] < 0:
            row_neg(t)
        t += 1
    return d, U, Ui, V, Vi


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(U, D, V)`` with ``D = U @ m @ V``.

    ``U`` and ``V`` are unimodular; the diagonal of ``D`` is non-negative and
    forms a divisibility chain (zeros last).
    """
    d, U, _, V, _ = _snf(m.tolist(), m.rows, m.cols)
    return (IntMatrix(U, m.rows, m.rows), IntMatrix(d, m.rows, m.cols),
            IntMatrix(V, m.cols, m.cols))


def _diagonal(d: list[list[int]]) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`` with ``d_1 | d_2 | ... | d_k``.

    Construct through :meth:`of` to canonicalise an arbitrary list of cyclic
    orders; the raw constructor validates that its input is already canonical.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(x < 2 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain; use FgAbGroup.of")

    @classmethod
    def of(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> "FgAbGroup":
        """Canonical form of ``Z^free_rank ⊕ ⊕ Z/n`` (orders 0 mean ``Z``)."""
        orders = [abs(int(n)) for n in orders]
        free_rank += sum(1 for n in orders if n == 0)
        orders = [n for n in orders if n > 1]
        if not orders:
            return cls(free_rank, ())
        d = _snf([[n if i == j else 0 for j in range(len(orders))]
                  for i, n in enumerate(orders)], len(orders), len(orders))[0]
        return cls(free_rank, tuple(x for x in _diagonal(d) if x > 1))

    @classmethod
    def zero(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def Z(cls, n: int = 1) -> "FgAbGroup":
        return cls(n, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        return cls.of(0, [n])

    @classmethod
    def parse(cls, text: str) -> "FgAbGroup":
        """Parse strings such as ``"0"``, ``"Z"``, ``"Z^2+Z/2"``, ``"Z/2+Z/4"``."""
        text = text.replace(" ", "").replace("⊕", "+")
        if text in ("", "0"):
            return cls.zero()
        free, orders = 0, []
        for part in text.split("+"):
            if part.startswith("Z/"):
                orders.append(int(part[2:]))
            elif part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            else:
                raise ValueError(f"cannot parse group summand {part!r}")
        return cls.of(free, orders)

    def canonicalize(self) -> "FgAbGroup":
        return FgAbGroup.of(self.free_rank, self.torsion)

    @property
    def ngens(self) -> int:
        """Number of generators of the canonical presentation (free first)."""
        return self.free_rank + len(self.torsion)

    def relation_orders(self) -> list[int]:
        """Order of each canonical generator, 0 standing for infinite order."""
        return [0] * self.free_rank + list(self.torsion)

    def relation_matrix(self) -> IntMatrix:
        """Columns generate the relations among the canonical generators."""
        n = self.ngens
        cols = [i for i, o in enumerate(self.relation_orders()) if o]
        return IntMatrix([[self.relation_orders()[c] if i == c else 0 for c in cols]
                          for i in range(n)], n, len(cols))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> int | None:
        """Cardinality, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for x in self.torsion:
            out *= x
        return out

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.of(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def tensor(self, other: "FgAbGroup") -> "FgAbGroup":
        orders = [gcd(a, b) for a in self.torsion for b in other.torsion]
        orders += list(self.torsion) * other.free_rank
        orders += list(other.torsion) * self.free_rank
        return FgAbGroup.of(self.free_rank * other.free_rank, orders)

    def tor(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.of(0, [gcd(a, b) for a in self.torsion for b in other.torsion])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return "+".join(parts)


def coker(m: IntMatrix) -> FgAbGroup:
    """Cokernel of ``m : Z^cols -> Z^rows``."""
    if m.rows == 0:
        return FgAbGroup.zero()
    if m.cols == 0:
        return FgAbGroup(m.rows, ())
    d = _snf(m.tolist(), m.rows, m.cols)[0]
    diag = _diagonal(d)
    nonzero = [x for x in diag if x]
    return FgAbGroup.of(m.rows - len(nonzero), nonzero)


def homology(d_in: IntMatrix, d_out: IntMatrix) -> FgAbGroup:
    """``ker(d_out) / im(d_in)`` for a complex of free abelian groups."""
    if d_in.rows != d_out.cols:
        raise ShapeMismatch(f"cannot compose {d_out.shape} after {d_in.shape}")
    n = d_in.rows
    if d_in.cols and d_out.rows and not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out @ d_in is not zero")
    if n == 0:
        return FgAbGroup.zero()
    if d_out.rows == 0 or d_out.is_zero():
        return coker(d_in)
    d, _, _, _, Vi = _snf(d_out.tolist(), d_out.rows, d_out.cols)
    r = sum(1 for x in _diagonal(d) if x)
    if d_in.cols == 0:
        return FgAbGroup(n - r, ())
    coords = IntMatrix(Vi, n, n) @ d_in
    sub = IntMatrix(coords.tolist()[r:], n - r, d_in.cols)
    return coker(sub)


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Columns form a lattice basis of ``{x in Z^cols : m x = 0}``."""
    if m.rows == 0:
        return IntMatrix.identity(m.cols)
    d, _, _, V, _ = _snf(m.tolist(), m.rows, m.cols)
    r = sum(1 for x in _diagonal(d) if x)
    return IntMatrix([row[r:] for row in V], m.cols, m.cols - r)


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """Columns form a basis of the sublattice spanned by the columns of ``gens``."""
    if gens.cols == 0 or gens.rows == 0:
        return IntMatrix.zeros(gens.rows, 0)
    d, _, Ui, _, _ = _snf(gens.tolist(), gens.rows, gens.cols)
    diag = [x for x in _diagonal(d) if x]
    return IntMatrix([[Ui[i][k] * diag[k] for k in range(len(diag))]
                      for i in range(gens.rows)], gens.rows, len(diag))


def solve_in_lattice(basis: IntMatrix, targets: IntMatrix) -> IntMatrix:
    """Coordinates ``c`` with ``basis @ c = targets`` (basis of full column rank).

    Raises ``ValueError`` when some target is not in the lattice.
    """
    d, U, _, V, _ = _snf(basis.tolist(), basis.rows, basis.cols)
    k = basis.cols
    rhs = (IntMatrix(U, basis.rows, basis.rows) @ targets).tolist()
    y = []
    for i in range(k):
        di = d[i][i] if i < basis.rows else 0
        row = []
        for x in rhs[i]:
            if di == 0 or x % di:
                raise ValueError("target not in lattice")
            row.append(x // di)
        y.append(row)
    for i in range(k, basis.rows):
        if any(rhs[i]):
            raise ValueError("target not in lattice")
    return IntMatrix(V, k, k) @ IntMatrix(y, k, targets.cols)


def subquotient_homology(d_in: IntMatrix, d_out: IntMatrix, src: FgAbGroup,
                         mid: FgAbGroup, tgt: FgAbGroup) -> FgAbGroup:
    """Homology at ``mid`` of ``src --d_in--> mid --d_out--> tgt``.

    The groups are taken in their canonical presentations and the maps are
    written on canonical generators (free generators first).  Checks that the
    maps are well defined and that the composite vanishes.
    """
    if d_in.shape != (mid.ngens, src.ngens) or d_out.shape != (tgt.ngens, mid.ngens):
        raise ShapeMismatch("differential shape does not match its groups")
    if src.is_free() and mid.is_free() and tgt.is_free():
        return homology(d_in, d_out)
    R_src, R_mid, R_tgt = src.relation_matrix(), mid.relation_matrix(), tgt.relation_matrix()

    def in_span(gens: IntMatrix, vecs: IntMatrix) -> bool:
        if vecs.cols == 0 or vecs.is_zero():
            return True
        if gens.cols == 0:
            return False
        try:
            solve_in_lattice(lattice_basis(gens), vecs)
        except ValueError:
            return False
        return True

    # well-definedness: relations go to relations
    if R_src.cols and not in_span(R_mid, d_in @ R_src):
        raise ShapeMismatch("incoming map is not well defined on the torsion")
    if R_mid.cols and not in_span(R_tgt, d_out @ R_mid):
        raise ShapeMismatch("outgoing map is not well defined on the torsion")
    if src.ngens and tgt.ngens and not in_span(R_tgt, d_out @ d_in):
        raise CompositionNonzero("composite of differentials is not zero")

    n = mid.ngens
    if n == 0:
        return FgAbGroup.zero()
    # cycles: x with d_out x in span(R_tgt)
    big = hstack(d_out, -R_tgt) if R_tgt.cols else d_out
    if big.rows:
        K = integer_kernel(big)
        Kgen = IntMatrix(K.tolist()[:n], n, K.cols)
    else:
        Kgen = IntMatrix.identity(n)
    Kb = lattice_basis(Kgen)
    bounds = hstack(d_in, R_mid) if d_in.cols else R_mid
    if bounds.cols == 0:
        return FgAbGroup(Kb.cols, ())
    coords = solve_in_lattice(Kb, bounds)
    return coker(coords)
