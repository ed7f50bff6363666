"""Finite graded F_p-algebras presented by generators and relations.

Normal forms are computed degree by degree with linear algebra, never by
rewriting.  In degree ``d`` every word is ``g * w`` for a generator ``g`` and a
word ``w`` of degree ``d - |g|``; by induction ``w`` already has a normal form,
so the degree-``d`` quotient is spanned by *candidates* ``(g, b)`` with ``b``
running over the lower-degree basis.  The degree-``d`` slice of the two-sided
ideal is then spanned by ``r * b`` for relations ``r`` and basis elements ``b``
of complementary degree, written in candidate coordinates.  Row reduction with
the largest words in the leftmost columns leaves the lexicographically smallest
words as the basis, independent of the order the relations were listed in.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidSubalgebra, TruncationExceeded, UnknownAlgebra
from .fglinalg import Echelon, is_prime, rank_mod, rref_mod

DEFAULT_TRUNCATION = 48

Word = tuple  # tuple of generator indices
Relation = list  # list of (coefficient, word-of-names)


@dataclass
class AlgebraPresentation:
    """Generators, homogeneous relations and a truncation degree.

    Relations are lists of ``(coefficient, word)`` pairs where ``word`` is a
    tuple of generator names; the empty word is the unit.
    """

    name: str
    prime: int
    generators: list[tuple[str, int]]
    relations: list[list[tuple[int, tuple[str, ...]]]] = field(default_factory=list)
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        self.generators = [(str(n), int(d)) for n, d in self.generators]
        if any(d <= 0 for _, d in self.generators):
            raise ValueError("generator degrees must be positive")
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self._deg = dict(self.generators)
        clean = []
        for rel in self.relations:
            terms = [(int(c) % self.prime, tuple(w)) for c, w in rel]
            terms = [(c, w) for c, w in terms if c]
            for _, w in terms:
                for g in w:
                    if g not in self._deg:
                        raise ValueError(f"unknown generator {g!r} in relation")
            if len({self.word_degree(w) for _, w in terms}) > 1:
                raise ValueError(f"relation {rel} is not homogeneous")
            if terms:
                clean.append(terms)
        self.relations = clean

    def word_degree(self, word: Sequence[str]) -> int:
        return sum(self._deg[g] for g in word)

    def relation_degree(self, rel) -> int:
        return self.word_degree(rel[0][1])

    def to_dict(self) -> dict:
        rels = []
        for rel in self.relations:
            rels.append(sorted([[c, list(w)] for c, w in rel], key=lambda t: (t[1], t[0])))
        return {
            "name": self.name,
            "prime": self.prime,
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "relations": rels,
            "truncation": self.truncation,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "AlgebraPresentation":
        gens = [(g["name"], g["degree"]) for g in data["generators"]]
        rels = [[(c, tuple(w)) for c, w in rel] for rel in data["relations"]]
        return cls(data.get("name", "custom"), data["prime"], gens, rels,
                   data.get("truncation", DEFAULT_TRUNCATION))

    @classmethod
    def from_json(cls, text: str) -> "AlgebraPresentation":
        return cls.from_dict(json.loads(text))


class Algebra:
    """The quotient algebra of a presentation, built lazily degree by degree.

    ``left(g, d)`` is the matrix of left multiplication by generator ``g`` from
    degree ``d`` to ``d + |g|`` (columns are images of basis vectors).
    """

    def __init__(self, pres: AlgebraPresentation, truncation: int | None = None):
        self.pres = pres
        self.p = pres.prime
        self.name = pres.name
        self.T = pres.truncation if truncation is None else truncation
        self.gen_names = [n for n, _ in pres.generators]
        self.gen_degrees = [d for _, d in pres.generators]
        self._gidx = {n: i for i, n in enumerate(self.gen_names)}
        self._rels_by_degree: dict[int, list[list[tuple[int, Word]]]] = {}
        for rel in pres.relations:
            idx = [(c, tuple(self._gidx[g] for g in w)) for c, w in rel]
            self._rels_by_degree.setdefault(pres.relation_degree(rel), []).append(idx)
        self._basis: list[list[Word]] = [[()]]
        self._index: list[dict[Word, int]] = [{(): 0}]
        self._left: dict[tuple[int, int], np.ndarray] = {}
        self._mult_cache: dict[tuple[int, int, int], np.ndarray] = {}

    # -- construction ------------------------------------------------------
    def _check(self, d: int):
        if d > self.T:
            raise TruncationExceeded(f"degree {d} exceeds truncation {self.T} of {self.name}")

    def _build_to(self, d: int):
        self._check(d)
        while len(self._basis) <= d:
            self._build_degree(len(self._basis))

    def _build_degree(self, d: int):
        p = self.p
        cands: list[tuple[int, int]] = []
        for g, gd in enumerate(self.gen_degrees):
            if gd <= d:
                for b in range(len(self._basis[d - gd])):
                    cands.append((g, b))
        words = [(g,) + self._basis[d - self.gen_degrees[g]][b] for g, b in cands]
        # columns sorted with the largest word first
        order = sorted(range(len(cands)), key=lambda i: words[i], reverse=True)
        col_of = {cands[i]: c for c, i in enumerate(order)}
        ncols = len(cands)

        rows = []
        for e, rels in self._rels_by_degree.items():
            if e > d:
                continue
            for b in range(len(self._basis[d - e])):
                for rel in rels:
                    v = np.zeros(ncols, dtype=np.int64)
                    for coeff, w in rel:
                        g, rest = w[0], w[1:]
                        lower = d - self.gen_degrees[g]
                        vec = self._unit(d - e, b)
                        deg = d - e
                        for letter in reversed(rest):
                            vec = self._left[(letter, deg)] @ vec % p
                            deg += self.gen_degrees[letter]
                        assert deg == lower
                        for j in np.flatnonzero(vec):
                            v[col_of[(g, int(j))]] += coeff * vec[j]
                    v %= p
                    if v.any():
                        rows.append(v)
        if rows and ncols:
            R, pivots = rref_mod(np.array(rows), p)
        else:
            R, pivots = np.zeros((0, ncols), dtype=np.int64), []
        pivset = set(pivots)
        free_cols = [c for c in range(ncols) if c not in pivset]
        # basis words ascending
        free_idx = sorted((order[c] for c in free_cols), key=lambda i: words[i])
        basis = [words[i] for i in free_idx]
        pos = {order_i: k for k, order_i in enumerate(free_idx)}
        self._basis.append(basis)
        self._index.append({w: k for k, w in enumerate(basis)})
        dim = len(basis)
        # reduction of every candidate into the basis
        pivrow = {c: r for r, c in enumerate(pivots)}
        red = np.zeros((dim, ncols), dtype=np.int64)  # column per candidate column
        for c in range(ncols):
            i = order[c]
            if c in pivrow:
                row = R[pivrow[c]]
                for fc in free_cols:
                    if row[fc]:
                        red[pos[order[fc]], c] = (-row[fc]) % p
            else:
                red[pos[i], c] = 1
        for g, gd in enumerate(self.gen_degrees):
            if gd <= d:
                src = d - gd
                M = np.zeros((dim, len(self._basis[src])), dtype=np.int64)
                for b in range(len(self._basis[src])):
                    M[:, b] = red[:, col_of[(g, b)]]
                self._left[(g, src)] = M

    def _unit(self, d: int, i: int) -> np.ndarray:
        v = np.zeros(self.dim(d), dtype=np.int64)
        v[i] = 1
        return v

    # -- queries -----------------------------------------------------------
    def basis(self, d: int) -> list[Word]:
        if d < 0:
            return []
        self._build_to(d)
        return list(self._basis[d])

    def basis_names(self, d: int) -> list[str]:
        return [self.word_name(w) for w in self.basis(d)]

    def word_name(self, w: Word) -> str:
        return "*".join(self.gen_names[g] for g in w) if w else "1"

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        self._build_to(d)
        return len(self._basis[d])

    def dims(self, upto: int | None = None) -> dict[int, int]:
        upto = self.T if upto is None else upto
        return {d: self.dim(d) for d in range(upto + 1)}

    def total_dimension(self, upto: int | None = None) -> int:
        return sum(self.dims(upto).values())

    def top_degree(self, upto: int | None = None) -> int:
        dims = self.dims(upto)
        return max(d for d, n in dims.items() if n)

    def generator_index(self, name: str) -> int:
        return self._gidx[name]

    def left(self, g: int | str, d: int) -> np.ndarray:
        """Left multiplication by a generator, degree ``d`` to ``d + |g|``."""
        if isinstance(g, str):
            g = self._gidx[g]
        if d < 0:
            return np.zeros((self.dim(d + self.gen_degrees[g]), 0), dtype=np.int64)
        self._build_to(d + self.gen_degrees[g])
        return self._left[(g, d)]

    def word_degree(self, w: Sequence[int]) -> int:
        return sum(self.gen_degrees[g] for g in w)

    def parse_word(self, w: Sequence[str] | str) -> Word:
        if isinstance(w, str):
            w = [] if w in ("", "1") else w.split("*")
        return tuple(self._gidx[g] for g in w)

    def word_matrix(self, w: Word, d: int) -> np.ndarray:
        """Left multiplication by a word, from degree ``d``."""
        M = np.eye(self.dim(d), dtype=np.int64)
        deg = d
        for letter in reversed(w):
            M = self.left(letter, deg) @ M % self.p
            deg += self.gen_degrees[letter]
        return M

    def basis_mult_matrix(self, e: int, i: int, d: int) -> np.ndarray:
        """Left multiplication by basis element ``i`` of degree ``e`` on degree ``d``."""
        key = (e, i, d)
        if key not in self._mult_cache:
            self._mult_cache[key] = self.word_matrix(self.basis(e)[i], d)
        return self._mult_cache[key]

    def normal_form(self, w: Word) -> np.ndarray:
        return self.word_matrix(w, 0)[:, 0].copy()

    def element(self, terms: Iterable[tuple[int, Sequence[str] | str]] | str) -> "AlgebraElement":
        """Build an element from ``(coeff, word)`` pairs or a generator name."""
        if isinstance(terms, str):
            terms = [(1, terms)]
        comps: dict[int, np.ndarray] = {}
        for c, w in terms:
            word = self.parse_word(w)
            d = self.word_degree(word)
            v = comps.get(d, np.zeros(self.dim(d), dtype=np.int64))
            comps[d] = (v + c * self.normal_form(word)) % self.p
        return AlgebraElement(self, comps)

    def unit(self) -> "AlgebraElement":
        return AlgebraElement(self, {0: np.array([1], dtype=np.int64)})

    def gen(self, name: str) -> "AlgebraElement":
        return self.element(name)

    def basis_element(self, d: int, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {d: self._unit(d, i)})

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("elements belong to a different algebra")
        out: dict[int, np.ndarray] = {}
        for e, va in a.components.items():
            for f, vb in b.components.items():
                self._check(e + f)
                acc = np.zeros(self.dim(e + f), dtype=np.int64)
                for i in np.flatnonzero(va):
                    acc += va[i] * (self.basis_mult_matrix(e, int(i), f) @ vb)
                out[e + f] = (out.get(e + f, 0) + acc) % self.p
        return AlgebraElement(self, out)

    def act_matrix(self, a: "AlgebraElement", d: int) -> np.ndarray:
        """Left multiplication by a homogeneous element, degree d to d+|a|."""
        e = a.degree()
        M = np.zeros((self.dim(d + e), self.dim(d)), dtype=np.int64)
        for i in np.flatnonzero(a.components.get(e, [])):
            M += a.components[e][i] * self.basis_mult_matrix(e, int(i), d)
        return M % self.p

    def augmentation_dims(self) -> dict[int, int]:
        return {d: n for d, n in self.dims().items() if d > 0}

    def __repr__(self):
        return f"Algebra({self.name}, p={self.p}, T={self.T})"


@dataclass
class AlgebraElement:
    """An element stored as per-degree coordinate vectors in the canonical basis."""

    algebra: Algebra
    components: dict[int, np.ndarray]

    def __post_init__(self):
        p = self.algebra.p
        comps = {}
        for d, v in self.components.items():
            v = np.mod(np.asarray(v, dtype=np.int64), p)
            if v.any():
                comps[int(d)] = v
        self.components = comps

    def is_zero(self) -> bool:
        return not self.components

    def degree(self) -> int:
        if len(self.components) != 1:
            raise ValueError("element is zero or not homogeneous")
        return next(iter(self.components))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.multiply(self, other)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        comps = dict(self.components)
        for d, v in other.components.items():
            comps[d] = comps.get(d, 0) + v
        return AlgebraElement(self.algebra, comps)

    def __neg__(self):
        return AlgebraElement(self.algebra, {d: -v for d, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {d: c * v for d, v in self.components.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self - other).is_zero()

    def terms(self) -> list[tuple[int, str]]:
        out = []
        for d in sorted(self.components):
            for i in np.flatnonzero(self.components[d]):
                out.append((int(self.components[d][i]),
                            self.algebra.word_name(self.algebra.basis(d)[i])))
        return out

    def __repr__(self):
        if self.is_zero():
            return "0"
        return " + ".join(f"{c}*{w}" if c != 1 else w for c, w in self.terms())


def build_quotient_basis(pres: AlgebraPresentation, T: int | None = None) -> dict[int, list[str]]:
    """Per-degree canonical basis (as word names) of the quotient, up to ``T``."""
    alg = Algebra(pres, T)
    return {d: alg.basis_names(d) for d in range(alg.T + 1)}


def verify_relation_consequence(alg: Algebra | AlgebraPresentation, candidate) -> bool:
    """True iff the homogeneous combination of words vanishes in the quotient."""
    if isinstance(alg, AlgebraPresentation):
        alg = Algebra(alg)
    words = [(c, alg.parse_word(w)) for c, w in candidate]
    degs = {alg.word_degree(w) for _, w in words}
    if len(degs) > 1:
        raise ValueError("candidate relation is not homogeneous")
    if not words:
        return True
    d = degs.pop()
    alg._check(d)
    v = np.zeros(alg.dim(d), dtype=np.int64)
    for c, w in words:
        v = v + c * alg.normal_form(w)
    return not np.any(v % alg.p)


# ---------------------------------------------------------------------------
# Homomorphisms and subalgebras
# ---------------------------------------------------------------------------

class AlgebraHom:
    """A map of algebras given by the images of the source generators.

    Construction checks that every source relation maps to zero, raising
    ``InvalidSubalgebra`` otherwise.
    """

    def __init__(self, source: Algebra, target: Algebra, images: dict[str, AlgebraElement]):
        if source.p != target.p:
            raise InvalidSubalgebra("prime mismatch")
        self.source, self.target = source, target
        self.images = []
        for name, d in zip(source.gen_names, source.gen_degrees):
            im = images[name]
            if not im.is_zero() and im.degree() != d:
                raise InvalidSubalgebra(f"image of {name} has the wrong degree")
            self.images.append(im)
        for rel in source.pres.relations:
            val = self.evaluate_terms([(c, source.parse_word(w)) for c, w in rel])
            if not val.is_zero():
                raise InvalidSubalgebra(f"relation {rel} does not hold in {target.name}: {val}")

    def evaluate_word(self, w: Word) -> AlgebraElement:
        out = self.target.unit()
        for g in w:
            out = out * self.images[g]
        return out

    def evaluate_terms(self, terms) -> AlgebraElement:
        out = AlgebraElement(self.target, {})
        for c, w in terms:
            out = out + c * self.evaluate_word(w)
        return out

    def matrix(self, d: int) -> np.ndarray:
        """The map on degree ``d`` as a (target dim x source dim) matrix."""
        cols = []
        for w in self.source.basis(d):
            v = self.evaluate_word(w).components.get(d, np.zeros(self.target.dim(d), dtype=np.int64))
            cols.append(v)
        if not cols:
            return np.zeros((self.target.dim(d), 0), dtype=np.int64)
        return np.stack(cols, axis=1) % self.target.p

    def is_injective(self, upto: int | None = None) -> bool:
        upto = min(self.source.T, self.target.T) if upto is None else upto
        for d in range(upto + 1):
            M = self.matrix(d)
            if M.shape[1] and rank_mod(M, self.source.p) < M.shape[1]:
                return False
        return True


def subalgebra_presentation(ambient: Algebra, gens: dict[str, AlgebraElement], name: str,
                            upto: int | None = None) -> AlgebraPresentation:
    """Presentation of the subalgebra generated by homogeneous elements.

    Works degree by degree: candidates ``g * b`` (``b`` a chosen basis word of
    the subalgebra) are mapped into the ambient algebra; the independent ones
    become the basis, each dependent one yields a relation.
    """
    upto = ambient.T if upto is None else upto
    p = ambient.p
    names = list(gens)
    degs = [gens[n].degree() for n in names]
    basis: list[list[tuple[Word, np.ndarray]]] = [[((), np.array([1], dtype=np.int64))]]
    relations = []
    for d in range(1, upto + 1):
        cands = []
        for g, gd in enumerate(degs):
            if gd <= d:
                for w, v in basis[d - gd]:
                    img = ambient.act_matrix(gens[names[g]], d - gd) @ v % p
                    cands.append(((g,) + w, img))
        cands.sort(key=lambda t: t[0])
        ech = Echelon(ambient.dim(d), p)
        chosen: list[tuple[Word, np.ndarray]] = []
        for w, img in cands:
            if ech.add(img):
                chosen.append((w, img))
            else:
                # express img in terms of the chosen images
                A = np.stack([c[1] for c in chosen], axis=1) if chosen else np.zeros((ambient.dim(d), 0), dtype=np.int64)
                from .fglinalg import solve_mod
                x = solve_mod(A, img, p)
                rel = [(1, tuple(names[i] for i in w))]
                for k in np.flatnonzero(x):
                    rel.append((int(-x[k]) % p, tuple(names[i] for i in chosen[k][0])))
                relations.append(rel)
        basis.append(chosen)
    return AlgebraPresentation(name, p, list(zip(names, degs)), relations, upto)


# ---------------------------------------------------------------------------
# Built-in presentations
# ---------------------------------------------------------------------------

def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def E1(p: int) -> AlgebraPresentation:
    """Exterior algebra on the Milnor primitives Q0 (degree 1) and Q1 (degree 2p-1)."""
    rels = [
        [(1, ("Q0", "Q0"))],
        [(1, ("Q1", "Q1"))],
        [(1, ("Q0", "Q1")), (1, ("Q1", "Q0"))],
    ]
    return AlgebraPresentation(f"E1({p})", p, [("Q0", 1), ("Q1", 2 * p - 1)], rels, DEFAULT_TRUNCATION)


def A1() -> AlgebraPresentation:
    rels = [
        [(1, ("Sq1", "Sq1"))],
        [(1, ("Sq2", "Sq2")), (1, ("Sq1", "Sq2", "Sq1"))],
        [(1, ("Sq1", "Sq2", "Sq1", "Sq2")), (1, ("Sq2", "Sq1", "Sq2", "Sq1"))],
    ]
    return AlgebraPresentation("A1", 2, [("Sq1", 1), ("Sq2", 2)], rels, DEFAULT_TRUNCATION)


def Atmf3() -> AlgebraPresentation:
    """The mod-3 algebra on beta and P1 with beta^2 = P1^3 = 0 and the cubic relation."""
    rels = [
        [(1, ("b", "b"))],
        [(1, ("P1", "P1", "P1"))],
        [(1, ("b", "P1", "P1", "b")), (-1, ("b", "P1", "b", "P1")), (-1, ("P1", "b", "P1", "b"))],
    ]
    return AlgebraPresentation("Atmf3", 3, [("b", 1), ("P1", 4)], rels, DEFAULT_TRUNCATION)


def ExteriorB() -> AlgebraPresentation:
    gens = [("x1", 1), ("x5", 5), ("x9", 9)]
    rels = [[(1, (g, g))] for g, _ in gens]
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = gens[i][0], gens[j][0]
            rels.append([(1, (a, b)), (1, (b, a))])
    return AlgebraPresentation("ExteriorB", 3, gens, rels, DEFAULT_TRUNCATION)


def TruncatedA(p: int, T: int) -> AlgebraPresentation:
    """The Steenrod algebra through degree ``T`` via the Adem relations."""
    if p == 2:
        gens = [(f"Sq{i}", i) for i in range(1, T + 1)]

        def sq(i):
            return () if i == 0 else (f"Sq{i}",)
        rels = []
        for a in range(1, T + 1):
            for b in range(1, T + 1 - a):
                if a < 2 * b:
                    rel = [(1, sq(a) + sq(b))]
                    for j in range(a // 2 + 1):
                        c = _binom(b - 1 - j, a - 2 * j) % 2
                        if c:
                            rel.append((1, sq(a + b - j) + sq(j)))
                    rels.append(rel)
        return AlgebraPresentation(f"TruncatedA(2,{T})", 2, gens, rels, T)
    q = 2 * (p - 1)
    gens = [("b", 1)] + [(f"P{i}", q * i) for i in range(1, T // q + 1)]

    def P(i):
        return () if i == 0 else (f"P{i}",)
    rels = [[(1, ("b", "b"))]]
    for a in range(1, T // q + 1):
        for b in range(1, T // q + 1):
            if q * (a + b) <= T and a < p * b:
                rel = [(1, P(a) + P(b))]
                for j in range(a // p + 1):
                    c = (-1) ** (a + j) * _binom((p - 1) * (b - j) - 1, a - p * j)
                    if c % p:
                        rel.append((-c, P(a + b - j) + P(j)))
                rels.append(rel)
            if q * (a + b) + 1 <= T and a <= p * b:
                rel = [(1, P(a) + ("b",) + P(b))]
                for j in range(a // p + 1):
                    c = (-1) ** (a + j) * _binom((p - 1) * (b - j), a - p * j)
                    if c % p:
                        rel.append((-c, ("b",) + P(a + b - j) + P(j)))
                    c = (-1) ** (a + j + 1) * _binom((p - 1) * (b - j) - 1, a - p * j - 1)
                    if c % p:
                        rel.append((-c, P(a + b - j) + ("b",) + P(j)))
                rels.append(rel)
    return AlgebraPresentation(f"TruncatedA({p},{T})", p, gens, rels, T)


def A2() -> AlgebraPresentation:
    """A(2), presented as the subalgebra of the Steenrod algebra on Sq1, Sq2, Sq4."""
    amb = Algebra(TruncatedA(2, 24))
    gens = {"Sq1": amb.gen("Sq1"), "Sq2": amb.gen("Sq2"), "Sq4": amb.gen("Sq4")}
    pres = subalgebra_presentation(amb, gens, "A2", upto=24)
    pres.truncation = DEFAULT_TRUNCATION
    return pres


_NAME_RE = re.compile(r"^\s*([A-Za-z0-9]+?)\s*(?:[(_]\s*([0-9,\s_]*)\)?)?\s*$")
_cache: dict[str, AlgebraPresentation] = {}


def canonical_name(name: str) -> tuple[str, tuple[int, ...]]:
    m = _NAME_RE.match(name)
    if not m:
        raise UnknownAlgebra(f"unknown algebra {name!r}")
    base = m.group(1)
    args = tuple(int(x) for x in re.split(r"[,_\s]+", m.group(2)) if x) if m.group(2) else ()
    if base == "E1" and not args:
        raise UnknownAlgebra("E1 needs a prime, e.g. E1(2)")
    return base, args


def builtin(name: str) -> AlgebraPresentation:
    """Look up a built-in presentation such as ``E1(3)``, ``Atmf3`` or ``TruncatedA(2,24)``."""
    base, args = canonical_name(name)
    key = f"{base}{args}"
    if key in _cache:
        return _cache[key]
    try:
        if base == "E1" and len(args) == 1:
            pres = E1(args[0])
        elif base == "A1" and not args:
            pres = A1()
        elif base == "A2" and not args:
            pres = A2()
        elif base == "Atmf3" and not args:
            pres = Atmf3()
        elif base == "ExteriorB" and not args:
            pres = ExteriorB()
        elif base == "TruncatedA" and len(args) == 2:
            pres = TruncatedA(*args)
        else:
            raise UnknownAlgebra(f"unknown algebra {name!r}")
    except ValueError as exc:
        raise UnknownAlgebra(f"cannot build {name!r}: {exc}") from exc
    _cache[key] = pres
    return pres


_alg_cache: dict[str, Algebra] = {}


def builtin_algebra(name: str) -> Algebra:
    """A shared, lazily built :class:`Algebra` for a built-in name."""
    base, args = canonical_name(name)
    key = f"{base}{args}"
    if key not in _alg_cache:
        _alg_cache[key] = Algebra(builtin(name))
    return _alg_cache[key]


def exterior_generators(A: Algebra | None = None, literal_x9: bool = False) -> dict[str, AlgebraElement]:
    """The classes x1, x5, x9 inside the tmf algebra.

    x1 = b and x5 = P1 b - b P1.  For x9 the commutator P1^2 b - b P1^2 does
    not square to zero under the defining relations (its square is
    P1 b P1 P1 b P1), so by default x9 is the symmetrised class
    b P1^2 + P1 b P1 + P1^2 b -- up to scalars the only degree-9 element whose
    square vanishes and which anticommutes with x1 and x5.  ``literal_x9``
    returns the commutator instead.
    """
    A = A or builtin_algebra("Atmf3")
    b, P = A.gen("b"), A.gen("P1")
    if literal_x9:
        x9 = P * P * b - b * P * P
    else:
        x9 = b * P * P + P * b * P + P * P * b
    return {"x1": b, "x5": P * b - b * P, "x9": x9}


def B_into_Atmf(B: Algebra | None = None, A: Algebra | None = None,
                literal_x9: bool = False) -> AlgebraHom:
    """The inclusion of the exterior algebra on x1, x5, x9 into the tmf algebra."""
    B = B or builtin_algebra("ExteriorB")
    A = A or builtin_algebra("Atmf3")
    return AlgebraHom(B, A, exterior_generators(A, literal_x9))
