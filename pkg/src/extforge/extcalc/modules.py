"""Finite graded modules over the algebras of :mod:`extforge.steenrod`.

A module is stored as a dimension per degree plus, for each algebra
generator ``g`` and degree ``d``, the matrix of ``g`` from degree ``d`` to
degree ``d + |g|`` (columns are images of basis vectors).  Everything else --
the action of arbitrary algebra elements, the minimal generators, relation
checks -- is derived from those matrices.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from ..errors import InvalidModule, InvalidSubalgebra
from ..fglinalg import inverse_mod, kernel_mod, rank_mod, rref_mod, solve_mod
from ..steenrod import Algebra, AlgebraHom, builtin_algebra

__all__ = [
    "FPModule",
    "quotient_projection",
    "trivial_module",
    "shift",
    "direct_sum",
    "truncate",
    "free_module",
    "kernel_module",
    "cyclic_quotient",
    "induced_module",
    "module_isomorphic",
]


def quotient_projection(vectors: np.ndarray, n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates on ``F_p^n / span(vectors)``.

    ``vectors`` holds one spanning vector per row.  Returns ``(P, S)`` where
    ``P`` (q x n) sends a vector to its class in the chosen quotient basis and
    ``S`` (n x q) is the section sending each quotient basis vector to the
    standard unit vector it was chosen as.
    """
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, n)
    if vectors.shape[0]:
        R, piv = rref_mod(vectors, p)
    else:
        R, piv = np.zeros((0, n), dtype=np.int64), []
    pivset = set(piv)
    keep = [c for c in range(n) if c not in pivset]
    P = np.zeros((len(keep), n), dtype=np.int64)
    for k, c in enumerate(keep):
        P[k, c] = 1
    for r, c in enumerate(piv):
        P[:, c] = (-R[r, keep]) % p
    S = np.zeros((n, len(keep)), dtype=np.int64)
    for k, c in enumerate(keep):
        S[c, k] = 1
    return P, S


class FPModule:
    """A finite graded module over a finite algebra presentation.

    Args:
        algebra: the acting :class:`~extforge.steenrod.Algebra`.
        dims: mapping degree -> dimension (degrees may be negative).
        actions: mapping ``(generator name, degree) -> matrix``; missing
            entries are zero maps.
        name: label used in charts and reports.
        validate: check every algebra relation on the action matrices.
    """

    def __init__(self, algebra: Algebra, dims: dict[int, int],
                 actions: dict[tuple[str, int], np.ndarray] | None = None,
                 name: str = "M", validate: bool = True, basis_labels: dict | None = None):
        self.algebra = algebra
        self.p = algebra.p
        self.name = name
        self.dims = {int(d): int(n) for d, n in dims.items() if n}
        self.basis_labels = basis_labels or {}
        self._act: dict[tuple[int, int], np.ndarray] = {}
        for (g, d), mat in (actions or {}).items():
            gi = algebra.generator_index(g) if isinstance(g, str) else int(g)
            gd = algebra.gen_degrees[gi]
            m = np.mod(np.asarray(mat, dtype=np.int64), self.p)
            shape = (self.dim(d + gd), self.dim(d))
            if m.size == 0 and 0 in shape:
                m = m.reshape(shape)
            if m.shape != shape:
                raise InvalidModule(f"action of {g} on degree {d} has shape {m.shape}, expected {shape}")
            if m.any():
                self._act[(gi, int(d))] = m
        self._word_cache: dict = {}
        if validate:
            self.validate()

    # -- basic queries -----------------------------------------------------
    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    @property
    def min_degree(self) -> int:
        return min(self.dims) if self.dims else 0

    @property
    def max_degree(self) -> int:
        return max(self.dims) if self.dims else 0

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def action(self, g: int | str, d: int) -> np.ndarray:
        """Matrix of generator ``g`` from degree ``d``."""
        gi = self.algebra.generator_index(g) if isinstance(g, str) else g
        gd = self.algebra.gen_degrees[gi]
        m = self._act.get((gi, d))
        if m is None:
            return np.zeros((self.dim(d + gd), self.dim(d)), dtype=np.int64)
        return m

    def word_action(self, w, d: int) -> np.ndarray:
        key = (tuple(w), d)
        if key not in self._word_cache:
            M = np.eye(self.dim(d), dtype=np.int64)
            deg = d
            for letter in reversed(w):
                M = self.action(letter, deg) @ M % self.p
                deg += self.algebra.gen_degrees[letter]
            self._word_cache[key] = M
        return self._word_cache[key]

    def basis_action(self, e: int, i: int, d: int) -> np.ndarray:
        """Action of algebra basis element ``i`` of degree ``e`` on degree ``d``."""
        return self.word_action(self.algebra.basis(e)[i], d)

    def element_action(self, a, d: int) -> np.ndarray:
        e = a.degree()
        M = np.zeros((self.dim(d + e), self.dim(d)), dtype=np.int64)
        for i in np.flatnonzero(a.components[e]):
            M = M + a.components[e][i] * self.basis_action(e, int(i), d)
        return M % self.p

    # -- invariants --------------------------------------------------------
    def validate(self):
        """Raise ``InvalidModule`` unless every relation acts as zero."""
        alg = self.algebra
        if self.dims and self.max_degree - self.min_degree > alg.T:
            raise InvalidModule("module spans more degrees than the algebra truncation")
        for rel in alg.pres.relations:
            words = [(c, alg.parse_word(w)) for c, w in rel]
            e = alg.word_degree(words[0][1])
            for d in self.degrees():
                if self.dim(d + e) == 0:
                    continue
                acc = np.zeros((self.dim(d + e), self.dim(d)), dtype=np.int64)
                for c, w in words:
                    acc = acc + c * self.word_action(w, d)
                if np.any(acc % self.p):
                    raise InvalidModule(
                        f"relation {rel} acts nontrivially on degree {d} of {self.name}")

    def decomposables(self, d: int) -> np.ndarray:
        """Rows spanning ``A^+ . M`` in degree ``d``."""
        rows = []
        for gi, gd in enumerate(self.algebra.gen_degrees):
            m = self.action(gi, d - gd)
            if m.size:
                rows.append(m.T)
        if not rows:
            return np.zeros((0, self.dim(d)), dtype=np.int64)
        return np.concatenate(rows, axis=0) % self.p

    def generators(self) -> list[tuple[int, np.ndarray]]:
        """Minimal generators ``(degree, vector)``: a complement of ``A^+ M``."""
        out = []
        for d in self.degrees():
            P, S = quotient_projection(self.decomposables(d), self.dim(d), self.p)
            for k in range(S.shape[1]):
                out.append((d, S[:, k].copy()))
        return out

    # -- serialisation -----------------------------------------------------
    def to_dict(self) -> dict:
        acts = []
        for (gi, d), m in sorted(self._act.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            acts.append({"generator": self.algebra.gen_names[gi], "degree": d,
                         "matrix": m.tolist()})
        return {
            "name": self.name,
            "algebra": self.algebra.name,
            "prime": self.p,
            "dims": {str(d): n for d, n in sorted(self.dims.items())},
            "actions": acts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, algebra: Algebra | None = None) -> "FPModule":
        algebra = algebra or builtin_algebra(data["algebra"])
        dims = {int(d): n for d, n in data["dims"].items()}
        acts = {(a["generator"], int(a["degree"])): np.array(a["matrix"], dtype=np.int64)
                for a in data["actions"]}
        return cls(algebra, dims, acts, data.get("name", "M"))

    def __repr__(self):
        return f"FPModule({self.name} over {self.algebra.name}, dims={self.dims})"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def trivial_module(algebra: Algebra, degree: int = 0, name: str | None = None) -> FPModule:
    return FPModule(algebra, {degree: 1}, {}, name or f"F{algebra.p}")


def shift(M: FPModule, n: int, name: str | None = None) -> FPModule:
    acts = {(gi, d + n): m for (gi, d), m in M._act.items()}
    return FPModule(M.algebra, {d + n: k for d, k in M.dims.items()}, acts,
                    name or f"S{n}{M.name}", validate=False)


def direct_sum(*mods: FPModule, name: str | None = None) -> FPModule:
    alg = mods[0].algebra
    degs = sorted(set().union(*[M.dims for M in mods]))
    dims = {d: sum(M.dim(d) for M in mods) for d in degs}
    acts = {}
    for gi, gd in enumerate(alg.gen_degrees):
        for d in degs:
            if dims.get(d + gd, 0) == 0:
                continue
            m = np.zeros((dims[d + gd], dims[d]), dtype=np.int64)
            r = c = 0
            for M in mods:
                blk = M.action(gi, d)
                m[r:r + blk.shape[0], c:c + blk.shape[1]] = blk
                r += M.dim(d + gd)
                c += M.dim(d)
            acts[(gi, d)] = m
    return FPModule(alg, dims, acts, name or "+".join(M.name for M in mods), validate=False)


def truncate(M: FPModule, below: int, name: str | None = None) -> FPModule:
    """Quotient of ``M`` by everything in degrees ``>= below``."""
    dims = {d: n for d, n in M.dims.items() if d < below}
    acts = {(gi, d): m for (gi, d), m in M._act.items()
            if d + M.algebra.gen_degrees[gi] < below}
    return FPModule(M.algebra, dims, acts, name or M.name, validate=False)


def free_module(algebra: Algebra, degree: int = 0, upto: int | None = None,
                name: str | None = None) -> FPModule:
    """The free module on one generator in ``degree``, truncated at ``upto``.

    For a finite algebra the default keeps everything.
    """
    top = algebra.T if upto is None else upto - degree
    dims = {degree + e: algebra.dim(e) for e in range(top + 1) if algebra.dim(e)}
    acts = {}
    for gi, gd in enumerate(algebra.gen_degrees):
        for e in range(top + 1 - gd):
            if algebra.dim(e) and algebra.dim(e + gd):
                acts[(gi, degree + e)] = algebra.left(gi, e)
    return FPModule(algebra, dims, acts, name or f"free({algebra.name})", validate=False)


def _subspace_module(M: FPModule, bases: dict[int, np.ndarray], name: str) -> FPModule:
    """Submodule with given per-degree bases (columns); action by solving."""
    p = M.p
    dims = {d: B.shape[1] for d, B in bases.items() if B.shape[1]}
    acts = {}
    for gi, gd in enumerate(M.algebra.gen_degrees):
        for d, B in bases.items():
            tgt = bases.get(d + gd)
            if B.shape[1] == 0 or tgt is None or tgt.shape[1] == 0:
                continue
            img = M.action(gi, d) @ B % p
            x = solve_mod(tgt, img, p)
            if x is None:
                raise InvalidModule("subspace is not closed under the action")
            acts[(gi, d)] = x
    return FPModule(M.algebra, dims, acts, name, validate=False)


def kernel_module(f: dict[int, np.ndarray], M: FPModule, name: str = "ker") -> FPModule:
    """Kernel of a module map ``M -> N`` given by per-degree matrices."""
    bases = {}
    for d in M.degrees():
        m = f.get(d)
        if m is None or m.shape[0] == 0:
            bases[d] = np.eye(M.dim(d), dtype=np.int64)
        else:
            bases[d] = kernel_mod(m, M.p).T
    return _subspace_module(M, bases, name)


def quotient_module(M: FPModule, sub: dict[int, np.ndarray], name: str = "quot") -> FPModule:
    """``M`` modulo the submodule spanned (per degree) by the columns of ``sub``."""
    p = M.p
    proj, sect = {}, {}
    for d in M.degrees():
        vecs = sub.get(d, np.zeros((M.dim(d), 0), dtype=np.int64)).T
        proj[d], sect[d] = quotient_projection(vecs, M.dim(d), p)
    dims = {d: proj[d].shape[0] for d in proj}
    acts = {}
    for gi, gd in enumerate(M.algebra.gen_degrees):
        for d in M.degrees():
            if dims.get(d, 0) and dims.get(d + gd, 0):
                acts[(gi, d)] = proj[d + gd] @ M.action(gi, d) @ sect[d] % p
    return FPModule(M.algebra, dims, acts, name, validate=True)


def cyclic_quotient(algebra: Algebra, elements: Iterable, name: str = "A/I",
                    upto: int | None = None) -> FPModule:
    """``A / (A x_1 + ... + A x_k)`` for homogeneous elements ``x_i``."""
    A = free_module(algebra, 0, upto)
    p = algebra.p
    elements = list(elements)
    sub = {}
    for d in A.degrees():
        cols = []
        for x in elements:
            e = x.degree()
            if e > d:
                continue
            xv = x.components[e]
            for i in range(algebra.dim(d - e)):
                cols.append(algebra.basis_mult_matrix(d - e, i, e) @ xv % p)
        sub[d] = np.stack(cols, axis=1) if cols else np.zeros((A.dim(d), 0), dtype=np.int64)
    return quotient_module(A, sub, name)


def induced_module(hom: AlgebraHom, name: str | None = None) -> FPModule:
    """``A (x)_B F_p`` for a subalgebra ``B`` given by ``hom : B -> A``.

    This is ``A`` modulo the left ideal generated by the images of the
    generators of ``B``.  The homomorphism has already been validated at
    construction (``InvalidSubalgebra`` otherwise).
    """
    if not isinstance(hom, AlgebraHom):
        raise InvalidSubalgebra("induced_module needs an AlgebraHom")
    return cyclic_quotient(hom.target, hom.images,
                           name or f"{hom.target.name}(x){hom.source.name}F{hom.target.p}")


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------

def equivariant_maps(M: FPModule, N: FPModule, max_degree: int | None = None):
    """Basis of degree-preserving module maps ``M -> N`` (restricted to degrees <= max_degree).

    Returns ``(degrees, basis)`` where each basis element is a dict
    degree -> matrix.
    """
    p = M.p
    degs = sorted(set(M.degrees()) | set(N.degrees()))
    if max_degree is not None:
        degs = [d for d in degs if d <= max_degree]
    offsets, n = {}, 0
    for d in degs:
        offsets[d] = n
        n += N.dim(d) * M.dim(d)

    def var(d, i, j):  # entry (i, j) of f_d : M_d -> N_d
        return offsets[d] + i * M.dim(d) + j

    rows = []
    for gi, gd in enumerate(M.algebra.gen_degrees):
        for d in degs:
            e = d + gd
            if e not in offsets or (max_degree is not None and e > max_degree):
                continue
            Mg, Ng = M.action(gi, d), N.action(gi, d)
            # f_e Mg - Ng f_d = 0, entrywise
            for i in range(N.dim(e)):
                for j in range(M.dim(d)):
                    row = np.zeros(n, dtype=np.int64)
                    for k in range(M.dim(e)):
                        if Mg[k, j]:
                            row[var(e, i, k)] += Mg[k, j]
                    for k in range(N.dim(d)):
                        if Ng[i, k]:
                            row[var(d, k, j)] -= Ng[i, k]
                    if np.any(row % p):
                        rows.append(row % p)
    if n == 0:
        return degs, []
    K = kernel_mod(np.array(rows), p) if rows else np.eye(n, dtype=np.int64)
    basis = []
    for v in K:
        f = {d: v[offsets[d]:offsets[d] + N.dim(d) * M.dim(d)].reshape(N.dim(d), M.dim(d))
             for d in degs}
        basis.append(f)
    return degs, basis


def module_isomorphic(M: FPModule, N: FPModule, max_degree: int | None = None,
                      seed: int = 0, tries: int = 400):
    """Decide whether ``M`` and ``N`` are isomorphic through ``max_degree``.

    Solves the equivariance constraints for the space of module maps, then
    looks for an invertible member: exhaustively when the space is small,
    otherwise by seeded random combinations (a random member of the solution
    space is invertible with high probability when an isomorphism exists).

    Returns ``(True, witness)`` with ``witness`` a dict degree -> matrix, or
    ``(False, None)``.
    """
    if M.algebra.p != N.algebra.p:
        return False, None
    degs = sorted(set(M.degrees()) | set(N.degrees()))
    if max_degree is not None:
        degs = [d for d in degs if d <= max_degree]
    if any(M.dim(d) != N.dim(d) for d in degs):
        return False, None
    if not degs:
        return True, {}
    degs, basis = equivariant_maps(M, N, max_degree)
    p = M.p
    if not basis:
        return (True, {}) if all(M.dim(d) == 0 for d in degs) else (False, None)

    def combine(coeffs):
        return {d: sum(c * f[d] for c, f in zip(coeffs, basis)) % p for d in degs}

    def invertible(f):
        return all(M.dim(d) == 0 or inverse_mod(f[d], p) is not None for d in degs)

    k = len(basis)
    if p ** k <= 4096:
        for idx in range(1, p ** k):
            coeffs = [(idx // p ** i) % p for i in range(k)]
            f = combine(coeffs)
            if invertible(f):
                return True, f
        return False, None
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        f = combine(rng.integers(0, p, size=k))
        if invertible(f):
            return True, f
    return False, None


def check_equivariant(M: FPModule, N: FPModule, f: dict[int, np.ndarray],
                      max_degree: int | None = None) -> bool:
    """Independent check that ``f`` commutes with every generator action."""
    p = M.p
    for gi, gd in enumerate(M.algebra.gen_degrees):
        for d in M.degrees():
            e = d + gd
            if max_degree is not None and e > max_degree:
                continue
            fd = f.get(d, np.zeros((N.dim(d), M.dim(d)), dtype=np.int64))
            fe = f.get(e, np.zeros((N.dim(e), M.dim(e)), dtype=np.int64))
            if np.any((fe @ M.action(gi, d) - N.action(gi, d) @ fd) % p):
                return False
    return True


def rank_profile(M: FPModule) -> dict[int, int]:
    """Rank of the total generator action out of each degree (a cheap invariant)."""
    out = {}
    for d in M.degrees():
        mats = [M.action(gi, d) for gi in range(len(M.algebra.gen_degrees))]
        mats = [m for m in mats if m.size]
        out[d] = rank_mod(np.concatenate(mats, axis=0), M.p) if mats else 0
    return out
