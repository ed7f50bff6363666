"""Minimal free resolutions, Ext charts and Yoneda operations.

The resolution is built one internal degree at a time (``t`` outer, ``s``
inner).  At ``(s, t)`` we know ``d_{s-1}`` completely in degree ``t`` and
``d_s`` on the generators of ``F_s`` of degree ``< t``; new generators of
``F_s`` in degree ``t`` are exactly the kernel vectors of ``d_{s-1}`` missed by
the image of ``d_s``.  Because every new generator kills a class not in the
image of the existing ones, all differentials land in the augmentation ideal,
so the number of generators in bidegree ``(s, t)`` is ``dim Ext^{s,t}``.

Elements of a free module in degree ``t`` are stored as a single vector,
concatenating one block per generator ``j`` (of degree ``t_j <= t``) in the
canonical algebra basis of degree ``t - t_j``.  Generators are appended in
degree order, so these coordinates never move once written.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import RangeExceeded, TruncationExceeded, UnknownAction, InvalidModule
from ..fglinalg import Echelon, kernel_mod, rank_mod, solve_mod
from ..steenrod import Algebra
from .modules import FPModule, trivial_module

DEFAULT_MAX_S = 12
DEFAULT_MAX_T = 32


class Resolution:
    """Minimal free resolution ``M <- F_0 <- F_1 <- ...`` of a finite module.

    Args:
        module: the module being resolved.
        max_s: last homological degree computed.
        max_t: last internal degree computed.
        reverse_tiebreak: consider kernel vectors in reverse order when
            choosing new generators (for determinism checks; the Ext
            dimensions cannot depend on it).
    """

    def __init__(self, module: FPModule, max_s: int = DEFAULT_MAX_S, max_t: int = DEFAULT_MAX_T,
                 reverse_tiebreak: bool = False, check: bool = True):
        self.module = module
        self.algebra: Algebra = module.algebra
        self.p = module.p
        self.max_s = max_s
        self.max_t = max_t
        self.reverse_tiebreak = reverse_tiebreak
        self.check = check
        if module.dims and max_t - module.min_degree > self.algebra.T:
            raise TruncationExceeded(
                f"max_t={max_t} needs algebra degree {max_t - module.min_degree} "
                f"beyond truncation {self.algebra.T}")
        self.gen_degrees: list[list[int]] = [[] for _ in range(max_s + 1)]
        self.images: list[list[np.ndarray]] = [[] for _ in range(max_s + 1)]
        self._dmat: dict[tuple[int, int], np.ndarray] = {}
        self.minimal = True
        self._run()

    # -- free module bookkeeping -------------------------------------------
    def layout(self, s: int, t: int) -> list[tuple[int, int, int]]:
        """Blocks ``(generator, offset, size)`` of ``F_s`` in degree ``t``."""
        out, off = [], 0
        for j, dj in enumerate(self.gen_degrees[s]):
            if dj > t:
                break
            size = self.algebra.dim(t - dj)
            out.append((j, off, size))
            off += size
        return out

    def free_dim(self, s: int, t: int) -> int:
        return sum(size for _, _, size in self.layout(s, t))

    def target_dim(self, s: int, t: int) -> int:
        return self.module.dim(t) if s == 0 else self.free_dim(s - 1, t)

    def act_on_target(self, s: int, e: int, i: int, u: int, y: np.ndarray) -> np.ndarray:
        """Algebra basis element ``(e, i)`` applied to ``y`` in the target of ``d_s`` at degree ``u``."""
        if s == 0:
            return self.module.basis_action(e, i, u) @ y % self.p
        out = np.zeros(self.free_dim(s - 1, u + e), dtype=np.int64)
        tgt_layout = {j: (off, size) for j, off, size in self.layout(s - 1, u + e)}
        for j, off, size in self.layout(s - 1, u):
            blk = y[off:off + size]
            if not blk.any():
                continue
            dj = self.gen_degrees[s - 1][j]
            toff, tsize = tgt_layout[j]
            out[toff:toff + tsize] += self.algebra.basis_mult_matrix(e, i, u - dj) @ blk
        return out % self.p

    def _columns_from_existing(self, s: int, t: int) -> np.ndarray:
        """Matrix of ``d_s`` in degree ``t`` on generators of degree ``< t``."""
        cols = []
        for j, dj in enumerate(self.gen_degrees[s]):
            if dj >= t:
                break
            e = t - dj
            for i in range(self.algebra.dim(e)):
                cols.append(self.act_on_target(s, e, i, dj, self.images[s][j]))
        n = self.target_dim(s, t)
        if not cols:
            return np.zeros((n, 0), dtype=np.int64)
        return np.stack(cols, axis=1)

    def dmatrix(self, s: int, t: int) -> np.ndarray:
        """Matrix of ``d_s : F_s -> F_{s-1}`` (or ``F_0 -> M``) in degree ``t``."""
        if (s, t) not in self._dmat:
            if t > self.max_t or s > self.max_s:
                raise RangeExceeded(f"({s},{t}) outside computed range")
            self._dmat[(s, t)] = self._columns_from_existing(s, t)
        return self._dmat[(s, t)]

    # -- the algorithm -----------------------------------------------------
    def _run(self):
        p = self.p
        t0 = self.module.min_degree if self.module.dims else 0
        for t in range(t0, self.max_t + 1):
            for s in range(self.max_s + 1):
                n_tgt = self.target_dim(s, t)
                if s == 0:
                    K = np.eye(n_tgt, dtype=np.int64)
                    prev = None
                else:
                    prev = self.dmatrix(s - 1, t)
                    if prev.shape[1] == 0:
                        K = np.zeros((0, 0), dtype=np.int64)
                    elif prev.shape[0] == 0:
                        K = np.eye(prev.shape[1], dtype=np.int64)
                    else:
                        K = kernel_mod(prev, p)
                D = self._columns_from_existing(s, t)
                ech = Echelon(n_tgt, p)
                for c in range(D.shape[1]):
                    ech.add(D[:, c])
                new = []
                rows = list(K)
                if self.reverse_tiebreak:
                    rows = rows[::-1]
                for v in rows:
                    if ech.rank == K.shape[0]:
                        break
                    if ech.add(v):
                        new.append(np.array(v, dtype=np.int64) % p)
                for v in new:
                    self.gen_degrees[s].append(t)
                    self.images[s].append(v)
                if new:
                    D = np.concatenate([D, np.stack(new, axis=1)], axis=1)
                self._dmat[(s, t)] = D
                if self.check and prev is not None and prev.size and D.size:
                    if np.any(prev @ D % p):
                        raise InvalidModule(f"d o d != 0 at ({s},{t})")

    # -- outputs -----------------------------------------------------------
    def ext_dim(self, s: int, t: int) -> int:
        return sum(1 for d in self.gen_degrees[s] if d == t)

    def generators_in(self, s: int, t: int) -> list[int]:
        return [j for j, d in enumerate(self.gen_degrees[s]) if d == t]

    def image_terms(self, s: int, j: int) -> list[tuple[int, object]]:
        """``d(gen_j)`` as a list ``(target generator, algebra element)`` (s >= 1)."""
        from ..steenrod import AlgebraElement
        dj = self.gen_degrees[s][j]
        out = []
        for k, off, size in self.layout(s - 1, dj):
            blk = self.images[s][j][off:off + size]
            if blk.any():
                e = dj - self.gen_degrees[s - 1][k]
                out.append((k, AlgebraElement(self.algebra, {e: blk})))
        return out

    def check_d_squared(self) -> bool:
        for s in range(1, self.max_s + 1):
            for t in range(self.max_t + 1):
                if (s, t) in self._dmat and (s - 1, t) in self._dmat:
                    a, b = self._dmat[(s - 1, t)], self._dmat[(s, t)]
                    if a.size and b.size and np.any(a @ b % self.p):
                        return False
        return True

    def check_minimal(self) -> bool:
        """Every differential lands in the augmentation ideal (no unit coefficients)."""
        for s in range(1, self.max_s + 1):
            for j, dj in enumerate(self.gen_degrees[s]):
                for k, off, size in self.layout(s - 1, dj):
                    if self.gen_degrees[s - 1][k] == dj and self.images[s][j][off:off + size].any():
                        return False
        return True

    def hom_complex_dims(self) -> dict[tuple[int, int], int]:
        """Ext dimensions recomputed as cohomology of ``Hom_A(F_*, F_p)``.

        A cochain in bidegree (s, t) is a functional on the degree-t
        generators of ``F_s``; its coboundary reads off the unit coefficients
        of the differentials.
        """
        p = self.p

        def delta(s, t):
            src = self.generators_in(s, t)
            tgt = self.generators_in(s + 1, t) if s + 1 <= self.max_s else []
            m = np.zeros((len(tgt), len(src)), dtype=np.int64)
            for a, g in enumerate(tgt):
                lay = {k: off for k, off, _ in self.layout(s, t)}
                for b, j in enumerate(src):
                    m[a, b] = self.images[s + 1][g][lay[j]]
            return m

        out = {}
        for s in range(self.max_s + 1):
            for t in range(self.max_t + 1):
                n = self.ext_dim(s, t)
                if n == 0 and (s == 0 or self.ext_dim(s - 1, t) == 0):
                    continue
                d_out = delta(s, t) if s < self.max_s else np.zeros((0, n), dtype=np.int64)
                d_in = delta(s - 1, t) if s > 0 else np.zeros((n, 0), dtype=np.int64)
                r_out = rank_mod(d_out, p) if d_out.size else 0
                r_in = rank_mod(d_in, p) if d_in.size else 0
                h = n - r_out - r_in
                if h:
                    out[(s, t)] = h
        return out

    def chart(self) -> "ExtChart":
        dims = {}
        for s in range(self.max_s + 1):
            for t in self.gen_degrees[s]:
                dims[(s, t)] = dims.get((s, t), 0) + 1
        return ExtChart(self.p, dims, {}, self.max_s, self.max_t,
                        {"algebra": self.algebra.name, "module": self.module.name})


def minimal_resolution(M: FPModule, max_s: int = DEFAULT_MAX_S, max_t: int = DEFAULT_MAX_T,
                       reverse_tiebreak: bool = False) -> Resolution:
    """Build the minimal resolution of ``M`` through ``(max_s, max_t)``."""
    M.validate()
    return Resolution(M, max_s, max_t, reverse_tiebreak)


# ---------------------------------------------------------------------------
# Charts
# ---------------------------------------------------------------------------

@dataclass
class ExtChart:
    """Bigraded dimensions plus named operation edges.

    ``edges[op][(s, t)]`` is the matrix of ``op`` from ``Ext^{s,t}`` to
    ``Ext^{s+1, t+k}`` in generator coordinates.
    """

    prime: int
    dims: dict[tuple[int, int], int]
    edges: dict[str, dict[tuple[int, int], np.ndarray]] = field(default_factory=dict)
    max_s: int = DEFAULT_MAX_S
    max_t: int = DEFAULT_MAX_T
    meta: dict = field(default_factory=dict)
    op_degrees: dict[str, int] = field(default_factory=dict)

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def stem_dim(self, n: int, s: int) -> int:
        """Dimension at topological degree ``n = t - s`` and filtration ``s``."""
        return self.dim(s, n + s)

    def in_range(self, s: int, t: int) -> bool:
        return 0 <= s <= self.max_s and t <= self.max_t

    def nonzero(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.dims.items() if v)

    def columns(self) -> list[int]:
        return sorted({t - s for s, t in self.nonzero()})

    def edge(self, op: str, s: int, t: int) -> np.ndarray:
        k = self.op_degrees[op]
        m = self.edges.get(op, {}).get((s, t))
        if m is None:
            return np.zeros((self.dim(s + 1, t + k), self.dim(s, t)), dtype=np.int64)
        return m

    def to_dict(self) -> dict:
        dims = [{"s": s, "t": t, "dim": d} for (s, t), d in sorted(self.dims.items()) if d]
        edges = []
        for (s, t) in sorted({k for op in self.edges for k in self.edges[op]}):
            for op in sorted(self.edges):
                m = self.edges[op].get((s, t))
                if m is not None and m.size:
                    edges.append({"op": op, "s": s, "t": t, "matrix": np.asarray(m).tolist()})
        return {
            "prime": self.prime,
            "max_s": self.max_s,
            "max_t": self.max_t,
            "meta": dict(sorted(self.meta.items())),
            "op_degrees": dict(sorted(self.op_degrees.items())),
            "dims": dims,
            "edges": edges,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExtChart":
        dims = {(r["s"], r["t"]): r["dim"] for r in data["dims"]}
        edges: dict[str, dict] = {}
        for r in data.get("edges", []):
            edges.setdefault(r["op"], {})[(r["s"], r["t"])] = np.array(r["matrix"], dtype=np.int64)
        return cls(data["prime"], dims, edges, data.get("max_s", DEFAULT_MAX_S),
                   data.get("max_t", DEFAULT_MAX_T), data.get("meta", {}),
                   data.get("op_degrees", {}))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtChart):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    # -- tower analysis ----------------------------------------------------
    def tower_starts(self, op: str = "h0") -> dict[tuple[int, int], int]:
        """Number of new ``op``-towers starting in each bidegree (cokernel of ``op`` into it)."""
        k = self.op_degrees[op]
        out = {}
        for (s, t), n in self.dims.items():
            if not n:
                continue
            incoming = self.edge(op, s - 1, t - k) if s >= 1 else np.zeros((n, 0), dtype=np.int64)
            r = rank_mod(incoming, self.prime) if incoming.size else 0
            if n - r:
                out[(s, t)] = n - r
        return out

    def op_injective_in_column(self, n: int, op: str = "h0") -> bool:
        """``op`` is injective on every class of stem ``n`` whose target is in range."""
        k = self.op_degrees[op]
        for s in range(self.max_s):
            t = n + s
            if t + k > self.max_t or not self.dim(s, t):
                continue
            m = self.edge(op, s, t)
            if m.shape[0] < m.shape[1] or rank_mod(m, self.prime) < m.shape[1]:
                return False
        return True

    def reliable_max_s(self, n: int) -> int:
        """Largest ``s`` for which stem ``n`` is inside the computed range."""
        return min(self.max_s, self.max_t - n)


# ---------------------------------------------------------------------------
# Yoneda operations
# ---------------------------------------------------------------------------

OPERATION_DEGREES = {"h0": lambda p: 1, "v1": lambda p: 2 * p - 1, "y1": lambda p: 5,
                     "y2": lambda p: 9, "h1": lambda p: 2 if p == 2 else 2 * (p - 1),
                     "h2": lambda p: 4 if p == 2 else None}

_trivial_cache: dict[tuple[int, int], Resolution] = {}


def _trivial_resolution(algebra: Algebra, max_t: int) -> Resolution:
    key = (id(algebra), max_t)
    if key not in _trivial_cache:
        _trivial_cache[key] = Resolution(trivial_module(algebra), 1, max_t)
    return _trivial_cache[key]


def operation_degree(op: str | int, p: int) -> int:
    if isinstance(op, int):
        return op
    if op in OPERATION_DEGREES and OPERATION_DEGREES[op](p) is not None:
        return OPERATION_DEGREES[op](p)
    if op.startswith("op") and op[2:].isdigit():
        return int(op[2:])
    raise UnknownAction(f"unknown operation {op!r}")


def ext_operation(R: Resolution, op: str | int = "h0", s: int | None = None,
                  index: int = 0) -> dict[tuple[int, int], np.ndarray]:
    """Matrices of multiplication by a class of ``Ext^{1,k}(F_p, F_p)``.

    The class is the dual of the ``index``-th generator of degree ``k`` in the
    first stage of the minimal resolution of ``F_p``.  A class ``x`` of
    ``Ext^{s,t}(M)`` is lifted to a chain map ``F_s -> Sigma^t P_0`` and then
    to ``F_{s+1} -> Sigma^t P_1`` by solving against the differential of
    ``P``; reading off the chosen generator coefficient gives the product.

    Args:
        R: resolution of the module.
        op: name (``h0``, ``v1``, ``y1``, ``y2``, ...) or the degree ``k``.
        s: restrict to this source filtration; ``RANGE_EXCEEDED`` if
            ``s + 1`` is beyond the resolution.
        index: which degree-``k`` generator when there are several.

    Returns:
        dict ``(s, t) -> matrix`` of shape ``(dim Ext^{s+1,t+k}, dim Ext^{s,t})``.
    """
    p, alg = R.p, R.algebra
    k = operation_degree(op, p)
    if s is not None and (s < 0 or s + 1 > R.max_s):
        raise RangeExceeded(f"operation out of filtration {s} needs s+1 <= {R.max_s}")
    if k > alg.T:
        raise RangeExceeded(f"operation degree {k} beyond algebra truncation")
    P = _trivial_resolution(alg, max(k, 1))
    gens_k = P.generators_in(1, k)
    if index >= len(gens_k):
        raise UnknownAction(f"no degree-{k} class #{index} in Ext^1 of {alg.name}")
    h_gen = gens_k[index]
    h_off = {j: off for j, off, _ in P.layout(1, k)}[h_gen]
    dP = P.dmatrix(1, k)  # P_1[k] -> P_0[k] = A_k

    # coefficient of the chosen class for each a in A_k (one solve for the basis)
    dimA = alg.dim(k)
    coeff = np.zeros(dimA, dtype=np.int64)
    if dimA:
        X = solve_mod(dP, np.eye(dimA, dtype=np.int64), p)
        if X is None:
            # a unit-free element of A_k that is not hit cannot occur: d_1 is onto A^+
            raise InvalidModule("trivial resolution is not exact in stage 1")
        coeff = X[h_off] % p

    out = {}
    s_range = range(R.max_s) if s is None else [s]
    for s0 in s_range:
        for t in sorted(set(R.gen_degrees[s0])):
            if t + k > R.max_t:
                continue
            src = R.generators_in(s0, t)
            tgt = R.generators_in(s0 + 1, t + k)
            m = np.zeros((len(tgt), len(src)), dtype=np.int64)
            if tgt:
                lay = {j: (off, size) for j, off, size in R.layout(s0, t + k)}
                for a, g in enumerate(tgt):
                    img = R.images[s0 + 1][g]
                    for b, j in enumerate(src):
                        off, size = lay[j]
                        m[a, b] = int(coeff @ img[off:off + size]) % p
            out[(s0, t)] = m
    return out


def compute_chart(M: FPModule, max_s: int = DEFAULT_MAX_S, max_t: int = DEFAULT_MAX_T,
                  ops: tuple = ("h0",), R: Resolution | None = None) -> ExtChart:
    """Resolve ``M`` and attach the requested operation edges."""
    R = R or minimal_resolution(M, max_s, max_t)
    chart = R.chart()
    for op in ops:
        name = op if isinstance(op, str) else f"op{op}"
        chart.edges[name] = ext_operation(R, op)
        chart.op_degrees[name] = operation_degree(op, R.p)
    return chart


def shapiro_chart(direct: ExtChart, over_subalgebra: ExtChart,
                  ops: tuple = ("y1", "y2")) -> ExtChart:
    """Attach operations computed over a subalgebra ``B`` to a chart over ``A``.

    ``direct`` is ``Ext_A(A (x)_B k)`` and ``over_subalgebra`` is ``Ext_B(k)``;
    by the change-of-rings isomorphism they agree bidegree-wise, which is
    checked here.  Dimensions and the ``h0`` edges come from ``direct``; the
    named ``ops`` are copied from ``over_subalgebra`` (in its coordinates).
    """
    for key in set(direct.dims) | set(over_subalgebra.dims):
        s, t = key
        if direct.in_range(s, t) and over_subalgebra.in_range(s, t):
            if direct.dim(s, t) != over_subalgebra.dim(s, t):
                raise InvalidModule(f"change-of-rings dimensions differ at {key}")
    out = ExtChart(direct.prime, dict(direct.dims), {k: dict(v) for k, v in direct.edges.items()},
                   direct.max_s, direct.max_t, dict(direct.meta), dict(direct.op_degrees))
    for op in ops:
        out.edges[op] = dict(over_subalgebra.edges[op])
        out.op_degrees[op] = over_subalgebra.op_degrees[op]
    out.meta["transported_ops"] = ",".join(ops)
    return out
