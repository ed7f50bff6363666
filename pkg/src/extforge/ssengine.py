"""Spectral-sequence pages, certificates and long exact sequence bookkeeping.

Pages hold finitely generated abelian groups in invariant-factor form.  A
differential is an integer matrix written on the canonical generators of its
source and target (free generators first, then the torsion generators in
increasing order).  Turning a page takes entrywise homology with
:func:`~extforge.fglinalg.subquotient_homology`, which also checks that the
maps are well defined on torsion and compose to zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from .errors import InconsistentSequence, OddDegree, ShapeMismatch, SplitViolation
from .fglinalg import FgAbGroup, IntMatrix, subquotient_homology

Bidegree = tuple[int, int]

__all__ = [
    "BigradedPage",
    "CoefficientSpectrum",
    "build_ahss",
    "turn_page",
    "Certificate",
    "collapse_certificate",
    "torsionfree_certificate",
    "ext_chart_certificate",
    "ExactSeqTable",
    "check_exact",
    "deduce",
    "rational_rank_series",
    "partition_count_oracle",
    "stringh_generators",
    "convolve",
]


# ---------------------------------------------------------------------------
# Pages
# ---------------------------------------------------------------------------

@dataclass
class BigradedPage:
    """One page ``E_r`` of a spectral sequence.

    ``cohomological=False`` means ``d_r : E_{p,q} -> E_{p-r, q+r-1}``;
    otherwise ``d_r : E^{p,q} -> E^{p+r, q-r+1}``.  Columns listed in
    ``split_columns`` may not be touched by any nonzero differential.
    """

    entries: dict[Bidegree, FgAbGroup]
    r: int = 2
    cohomological: bool = False
    split_columns: frozenset = frozenset()
    name: str = "page"

    def __post_init__(self):
        self.entries = {k: g for k, g in self.entries.items() if not g.is_zero()}
        self.split_columns = frozenset(self.split_columns)

    def get(self, p: int, q: int) -> FgAbGroup:
        return self.entries.get((p, q), FgAbGroup.zero())

    def target(self, p: int, q: int, r: int | None = None) -> Bidegree:
        r = self.r if r is None else r
        return (p + r, q - r + 1) if self.cohomological else (p - r, q + r - 1)

    def source_of(self, p: int, q: int, r: int | None = None) -> Bidegree:
        r = self.r if r is None else r
        return (p - r, q + r - 1) if self.cohomological else (p + r, q - r + 1)

    def total_degrees(self) -> dict[int, list[Bidegree]]:
        out: dict[int, list[Bidegree]] = {}
        for (p, q) in sorted(self.entries):
            out.setdefault(p + q, []).append((p, q))
        return out

    def rank_by_total_degree(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), g in self.entries.items():
            out[p + q] = out.get(p + q, 0) + g.free_rank
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "cohomological": self.cohomological,
            "split_columns": sorted(self.split_columns),
            "entries": [{"p": p, "q": q, "group": str(g)} for (p, q), g in sorted(self.entries.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "BigradedPage":
        entries = {(e["p"], e["q"]): FgAbGroup.parse(e["group"]) for e in data["entries"]}
        return cls(entries, data.get("r", 2), data.get("cohomological", False),
                   frozenset(data.get("split_columns", [])), data.get("name", "page"))


def _validate_differential(page: BigradedPage, src: Bidegree, mat: IntMatrix) -> Bidegree:
    tgt = page.target(*src)
    S, T = page.get(*src), page.get(*tgt)
    if mat.shape != (T.ngens, S.ngens):
        raise ShapeMismatch(
            f"d_{page.r} from {src} to {tgt} must be {T.ngens}x{S.ngens}, got {mat.rows}x{mat.cols}")
    if not mat.is_zero():
        for col in (src[0], tgt[0]):
            if col in page.split_columns:
                raise SplitViolation(
                    f"d_{page.r} from {src} to {tgt} touches split column {col}")
    return tgt


def turn_page(page: BigradedPage, differentials: dict[Bidegree, IntMatrix] | None = None) -> BigradedPage:
    """Return ``E_{r+1}`` from ``E_r`` and the nonzero ``d_r`` (others default to 0)."""
    diffs = {}
    for src, mat in (differentials or {}).items():
        src = tuple(src)
        tgt = _validate_differential(page, src, mat)
        if not mat.is_zero():
            diffs[src] = (tgt, mat)
    incoming = {tgt: (src, mat) for src, (tgt, mat) in diffs.items()}
    new = {}
    for key, G in page.entries.items():
        out = diffs.get(key)
        inc = incoming.get(key)
        if out is None and inc is None:
            new[key] = G
            continue
        if inc is not None:
            src, d_in = inc
            A = page.get(*src)
        else:
            A, d_in = FgAbGroup.zero(), IntMatrix.zeros(G.ngens, 0)
        if out is not None:
            tgt, d_out = out
            C = page.get(*tgt)
        else:
            C, d_out = FgAbGroup.zero(), IntMatrix.zeros(0, G.ngens)
        new[key] = subquotient_homology(d_in, d_out, A, G, C)
    return BigradedPage(new, page.r + 1, page.cohomological, page.split_columns, page.name)


# ---------------------------------------------------------------------------
# Coefficients and the Atiyah-Hirzebruch E_2 page
# ---------------------------------------------------------------------------

@dataclass
class CoefficientSpectrum:
    """Homotopy groups ``pi_q E`` (unset degrees are zero)."""

    name: str
    groups: dict[int, FgAbGroup]

    def pi(self, q: int) -> FgAbGroup:
        return self.groups.get(q, FgAbGroup.zero())

    def degrees(self) -> list[int]:
        return sorted(q for q, g in self.groups.items() if not g.is_zero())

    @classmethod
    def ku(cls, top: int = 64) -> "CoefficientSpectrum":
        """Connective complex K-theory: Z in every even degree >= 0."""
        return cls("ku", {q: FgAbGroup.Z() for q in range(0, top + 1, 2)})

    @classmethod
    def ell(cls, p: int, top: int = 64) -> "CoefficientSpectrum":
        """The Adams summand at ``p``: Z (p-locally) in degrees 2(p-1)k.

        Localisation is not modelled; the groups are recorded as Z, which is
        all the rank and freeness bookkeeping needs.
        """
        step = 2 * (p - 1)
        return cls(f"ell({p})", {q: FgAbGroup.Z() for q in range(0, top + 1, step)})

    @classmethod
    def HZ(cls) -> "CoefficientSpectrum":
        return cls("HZ", {0: FgAbGroup.Z()})

    @classmethod
    def from_ranks(cls, name: str, ranks) -> "CoefficientSpectrum":
        """Free groups from a rank table (dict degree -> rank, or a list indexed by degree)."""
        if not isinstance(ranks, dict):
            ranks = dict(enumerate(ranks))
        return cls(name, {q: FgAbGroup.Z(r) for q, r in ranks.items() if r})

    @classmethod
    def stringh_rational(cls, top: int = 16) -> "CoefficientSpectrum":
        """Free model of string^h bordism built from its polynomial generators."""
        return cls.from_ranks("MStringh", rational_rank_series(stringh_generators(top), (), top))


def build_ahss(H: dict[int, FgAbGroup], E: CoefficientSpectrum, max_total: int,
               cohomological: bool = False, q_range: tuple[int, int] | None = None,
               split_columns: Iterable[int] = (), name: str = "ahss") -> BigradedPage:
    """The ``E_2`` page from integral (co)homology by universal coefficients.

    Homological: ``E_{p,q} = H_p (x) pi_q E  (+)  Tor(H_{p-1}, pi_q E)`` for
    ``p + q <= max_total``.

    Cohomological: ``H`` is integral cohomology and ``E^{p,q} = H^p(X; pi_{-q} E)
    = H^p (x) G  (+)  Tor(H^{p+1}, G)``; here ``max_total`` bounds ``p`` and
    ``q_range`` (inclusive, default ``(-max_total, 0)``) bounds ``q``.
    """
    entries: dict[Bidegree, FgAbGroup] = {}
    ps = sorted(H)
    if not cohomological:
        for p in range(0, max_total + 1):
            for q in E.degrees():
                if p + q > max_total:
                    continue
                G = E.pi(q)
                Hp = H.get(p, FgAbGroup.zero())
                Hp1 = H.get(p - 1, FgAbGroup.zero())
                entries[(p, q)] = Hp.tensor(G) + Hp1.tor(G)
    else:
        lo, hi = q_range if q_range is not None else (-max_total, 0)
        for p in range(0, max_total + 1):
            for q in range(lo, hi + 1):
                G = E.pi(-q)
                if G.is_zero():
                    continue
                Hp = H.get(p, FgAbGroup.zero())
                Hp1 = H.get(p + 1, FgAbGroup.zero())
                entries[(p, q)] = Hp.tensor(G) + Hp1.tor(G)
    return BigradedPage(entries, 2, cohomological, frozenset(split_columns), name)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    kind: str
    ok: bool
    degree: int | None = None
    locus: list = field(default_factory=list)
    detail: str = ""

    @property
    def label(self) -> str:
        if not self.ok:
            return "NONE"
        return f"{self.kind}({self.degree})"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "degree": self.degree,
                "label": self.label, "locus": [list(x) if isinstance(x, tuple) else x for x in self.locus],
                "detail": self.detail}


def _forced_zero_differentials(page: BigradedPage, N: int, r_max: int) -> bool:
    """Every d_r touching total degree <= N has a zero source or target."""
    for (p, q) in page.entries:
        if p + q > N + 1:
            continue
        for r in range(page.r, r_max + 1):
            tgt = page.target(p, q, r)
            if not page.get(*tgt).is_zero():
                return False
    return True


def collapse_certificate(page: BigradedPage, N: int) -> Certificate:
    """EVEN_COLLAPSE(N) when every nonzero entry of total degree <= N is even.

    Differentials change the total degree by one, so between even entries they
    all vanish; the parity argument is re-checked directly on the page.
    """
    if page.r != 2:
        raise ValueError("collapse certificates are issued on the E_2 page")
    odd = sorted(k for k in page.entries if sum(k) <= N and sum(k) % 2)
    if odd:
        return Certificate("EVEN_COLLAPSE", False, N, odd, "odd total degree entries")
    width = max((abs(p) for p, _ in page.entries), default=0) + N + 2
    in_range = {k: g for k, g in page.entries.items() if sum(k) <= N}
    assert _forced_zero_differentials(BigradedPage(in_range, 2, page.cohomological), N, width)
    return Certificate("EVEN_COLLAPSE", True, N, [], "all entries in range have even total degree")


def torsionfree_certificate(page: BigradedPage, N: int) -> Certificate:
    """TORSION_FREE(N-1): even collapse through N and every entry free."""
    c = collapse_certificate(page, N)
    if not c.ok:
        return Certificate("TORSION_FREE", False, N - 1, c.locus, c.detail)
    tors = sorted(k for k, g in page.entries.items() if sum(k) <= N and not g.is_free())
    if tors:
        return Certificate("TORSION_FREE", False, N - 1, tors, "torsion on E_2")
    return Certificate("TORSION_FREE", True, N - 1, [], "even collapse with free entries")


def ext_chart_certificate(chart, N: int, op: str = "h0") -> Certificate:
    """TORSION_FREE(N-1) from an Adams E_2 chart.

    Requires: no classes in odd stems ``<= N`` and, in even stems ``<= N``,
    ``op`` (h0) injective wherever its target is in range -- i.e. the chart is a
    sum of h0-towers in even stems.  Differentials change the stem by one, so
    they vanish, and each tower contributes a free summand.  The chart must
    cover filtration ``max_s`` in every stem up to ``N``.
    """
    if chart.max_t < N + chart.max_s:
        raise ValueError(f"chart range t <= {chart.max_t} does not cover stems <= {N} up to s = {chart.max_s}")
    bad = []
    for (s, t) in chart.nonzero():
        n = t - s
        if n <= N and n % 2:
            bad.append((s, t))
    if bad:
        return Certificate("TORSION_FREE", False, N - 1, bad, "classes in odd stems")
    for n in range(0, N + 1, 2):
        if not chart.op_injective_in_column(n, op):
            return Certificate("TORSION_FREE", False, N - 1, [("stem", n)], f"{op} not injective")
    return Certificate("TORSION_FREE", True, N - 1, [], f"only {op}-towers in even stems <= {N}")


# ---------------------------------------------------------------------------
# Long exact sequences
# ---------------------------------------------------------------------------

TAGS = ("ZERO", "ISO", "INJ", "SURJ", "UNKNOWN")


@dataclass
class ExactSeqTable:
    """A segment ``X_0 -> X_1 -> ... -> X_n`` of a long exact sequence.

    ``entries[i]`` is an :class:`FgAbGroup` or ``None`` (unknown);
    ``maps[i]`` goes from ``entries[i]`` to ``entries[i+1]`` and is an
    :class:`IntMatrix` or one of the tags ZERO, ISO, INJ, SURJ, UNKNOWN.
    """

    entries: list[FgAbGroup | None]
    maps: list[IntMatrix | str]
    labels: list[str] | None = None
    name: str = "les"
    provenance: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.maps) != max(len(self.entries) - 1, 0):
            raise ShapeMismatch("need exactly one map between consecutive entries")
        for m in self.maps:
            if isinstance(m, str) and m not in TAGS:
                raise ValueError(f"unknown map tag {m!r}")
        if self.labels is None:
            self.labels = [f"X{i}" for i in range(len(self.entries))]
        for i, m in enumerate(self.maps):
            if isinstance(m, IntMatrix):
                a, b = self.entries[i], self.entries[i + 1]
                if a is not None and b is not None and m.shape != (b.ngens, a.ngens):
                    raise ShapeMismatch(f"map {i} has shape {m.shape}, expected {(b.ngens, a.ngens)}")

    def label(self, i: int) -> str:
        return self.labels[i]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def copy(self) -> "ExactSeqTable":
        return ExactSeqTable(list(self.entries), list(self.maps), list(self.labels), self.name,
                             dict(self.provenance))

    # effective information about maps, combining tags, matrices and zero groups
    def _map_is_zero(self, i: int) -> bool:
        """Map i (X_i -> X_{i+1}) is known to vanish."""
        if i < 0 or i >= len(self.maps):
            return False
        m = self.maps[i]
        a, b = self.entries[i], self.entries[i + 1]
        if (a is not None and a.is_zero()) or (b is not None and b.is_zero()):
            return True
        if isinstance(m, IntMatrix):
            return m.is_zero()
        if m == "ZERO":
            return True
        # exactness: the map after a surjection (or iso) is zero,
        # the map before an injection (or iso) is zero
        if i - 1 >= 0 and self.maps[i - 1] in ("SURJ", "ISO"):
            return True
        if i + 1 < len(self.maps) and self.maps[i + 1] in ("INJ", "ISO"):
            return True
        return False

    def zero_into(self, i: int) -> bool:
        """The map into X_i vanishes (or X_i is the first entry after a known 0)."""
        return self._map_is_zero(i - 1)

    def zero_out_of(self, i: int) -> bool:
        return self._map_is_zero(i)

    def to_dict(self) -> dict:
        maps = [m if isinstance(m, str) else {"matrix": m.tolist()} for m in self.maps]
        return {"name": self.name, "labels": self.labels,
                "entries": [None if g is None else str(g) for g in self.entries], "maps": maps}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "ExactSeqTable":
        entries = [None if (g is None or g == "UNKNOWN") else FgAbGroup.parse(g) for g in data["entries"]]
        maps = []
        for m in data["maps"]:
            if isinstance(m, str):
                maps.append(m)
            else:
                rows = m["matrix"]
                maps.append(IntMatrix(rows, len(rows), m.get("cols", len(rows[0]) if rows else 0)))
        return cls(entries, maps, data.get("labels"), data.get("name", "les"))

    def __str__(self) -> str:
        lines = []
        for i, g in enumerate(self.entries):
            lines.append(f"{self.labels[i]:>24} : {'?' if g is None else g}")
            if i < len(self.maps):
                m = self.maps[i]
                lines.append(f"{'':>24}   | {m if isinstance(m, str) else m.tolist()}")
        return "\n".join(lines)


def _torsion_order(g: FgAbGroup) -> int:
    out = 1
    for x in g.torsion:
        out *= x
    return out


def check_exact(t: ExactSeqTable) -> dict:
    """Verify everything the table pins down; raise ``InconsistentSequence`` otherwise.

    Checks, wherever the needed entries are known:

    * explicit consecutive maps compose to zero with zero homology (SNF);
    * tags: ISO forces equal groups, INJ/SURJ force rank and torsion bounds;
    * a node whose incoming and outgoing maps both vanish must be 0;
    * short exact pieces ``0 -> A -> B -> 0`` force ``A = B`` and
      ``0 -> A -> B -> C -> 0`` with ``C`` free forces ``B = A + C``;
    * on every stretch bounded by vanishing maps with all entries known, the
      alternating sum of ranks is 0 (and, if all are finite, the alternating
      product of orders is 1).
    """
    n = len(t.entries)
    E = t.entries
    checked = []

    def fail(i, msg):
        raise InconsistentSequence(f"node {i} ({t.label(i)}): {msg}", node=i)

    for i, m in enumerate(t.maps):
        a, b = E[i], E[i + 1]
        if a is None or b is None:
            continue
        if m == "ISO" and a != b:
            fail(i, f"ISO between {a} and {b}")
        if m == "INJ":
            if a.free_rank > b.free_rank or _torsion_order(b) % _torsion_order(a):
                fail(i, f"no injection {a} -> {b}")
        if m == "SURJ":
            if b.free_rank > a.free_rank or (a.free_rank == 0 and _torsion_order(a) % _torsion_order(b)):
                fail(i + 1, f"no surjection {a} -> {b}")
    # explicit consecutive maps
    for i in range(1, n - 1):
        f, g = t.maps[i - 1], t.maps[i]
        if isinstance(f, IntMatrix) and isinstance(g, IntMatrix) and None not in (E[i - 1], E[i], E[i + 1]):
            h = subquotient_homology(f, g, E[i - 1], E[i], E[i + 1])
            if not h.is_zero():
                fail(i, f"homology {h} at an explicit node")
            checked.append(i)
    for i in range(n):
        if E[i] is not None and t.zero_into(i) and t.zero_out_of(i) and not E[i].is_zero():
            fail(i, f"{E[i]} sits between two vanishing maps")
    for i in range(n):
        X = E[i]
        if X is None:
            continue
        zin = t.zero_into(i)
        # 0 -> X -> Y -> 0
        if zin and i + 1 < n and t.zero_out_of(i + 1) and E[i + 1] is not None:
            if X != E[i + 1]:
                fail(i, f"0 -> {X} -> {E[i + 1]} -> 0 is not an isomorphism")
            checked.append(i)
        # 0 -> X -> Y -> Z -> 0 with Z free
        if zin and i + 2 < n and t.zero_out_of(i + 2) and None not in (E[i + 1], E[i + 2]):
            if E[i + 2].is_free() and E[i + 1] != X + E[i + 2]:
                fail(i + 1, f"0 -> {X} -> {E[i + 1]} -> {E[i + 2]} -> 0 with free quotient")
            checked.append(i + 1)
    # Euler characteristic on closed stretches
    i = 0
    while i < n:
        if t.zero_into(i) or i == 0:
            j = i
            while j < n and not t.zero_out_of(j):
                j += 1
            if j < n and t.zero_into(i) and all(E[k] is not None for k in range(i, j + 1)):
                seg = E[i:j + 1]
                chi = sum((-1) ** k * g.free_rank for k, g in enumerate(seg))
                if chi:
                    fail(i, f"ranks do not alternate to zero on {t.label(i)}..{t.label(j)}")
                if all(g.free_rank == 0 for g in seg):
                    num = den = 1
                    for k, g in enumerate(seg):
                        if k % 2:
                            den *= _torsion_order(g)
                        else:
                            num *= _torsion_order(g)
                    if num != den:
                        fail(i, f"orders do not alternate on {t.label(i)}..{t.label(j)}")
                checked.extend(range(i, j + 1))
            i = max(j, i) + 1 if j > i else i + 1
        else:
            i += 1
    return {"consistent": True, "checked_nodes": sorted(set(checked)), "name": t.name}


def deduce(t: ExactSeqTable) -> ExactSeqTable:
    """Fill unknown entries that are forced by the closure rules, and nothing else.

    Rules (applied to a fixed point):

    * an ISO tag transfers a known group across;
    * ``0 -> A -> X -> 0`` (either side unknown) gives ``X = A``;
    * both maps around ``X`` vanish gives ``X = 0``;
    * ``0 -> A -> X -> C -> 0`` with ``C`` free gives ``X = A + C``; with ``X``
      and ``C`` known and ``C`` free it gives ``A`` by cancellation.
    """
    t = t.copy()
    n = len(t.entries)
    changed = True

    def setv(i, g, why):
        nonlocal changed
        t.entries[i] = g
        t.provenance[i] = why
        changed = True

    while changed:
        changed = False
        E = t.entries
        for i, m in enumerate(t.maps):
            if m == "ISO":
                if E[i] is None and E[i + 1] is not None:
                    setv(i, E[i + 1], f"iso with {t.label(i + 1)}")
                elif E[i + 1] is None and E[i] is not None:
                    setv(i + 1, E[i], f"iso with {t.label(i)}")
        for i in range(n):
            if E[i] is None and t.zero_into(i) and t.zero_out_of(i):
                setv(i, FgAbGroup.zero(), "both adjacent maps vanish")
        for i in range(n - 1):
            if t.zero_into(i) and t.zero_out_of(i + 1):
                a, b = E[i], E[i + 1]
                if a is None and b is not None:
                    setv(i, b, f"0 -> X -> {t.label(i + 1)} -> 0")
                elif b is None and a is not None:
                    setv(i + 1, a, f"0 -> {t.label(i)} -> X -> 0")
        for i in range(n - 2):
            if t.zero_into(i) and t.zero_out_of(i + 2):
                a, b, c = E[i], E[i + 1], E[i + 2]
                if c is None or not c.is_free():
                    continue
                if b is None and a is not None:
                    setv(i + 1, a + c, f"0 -> {t.label(i)} -> X -> {t.label(i + 2)} -> 0, free quotient")
                elif a is None and b is not None:
                    if b.free_rank >= c.free_rank:
                        setv(i, FgAbGroup.of(b.free_rank - c.free_rank, b.torsion),
                             f"0 -> X -> {t.label(i + 1)} -> {t.label(i + 2)} -> 0, free quotient")
    return t


# ---------------------------------------------------------------------------
# Rational ranks
# ---------------------------------------------------------------------------

def rational_rank_series(A: Sequence[int], B: Sequence[int] = (), N: int = 15) -> list[int]:
    """Ranks in degrees ``0..N`` of the polynomial algebra on the generators ``A + B``.

    Exact coefficients of ``prod (1 - t^d)^-1``.  Odd (or non-positive)
    degrees raise ``OddDegree``: exterior generators are not modelled.
    """
    gens = list(A) + list(B)
    for d in gens:
        if d <= 0 or d % 2:
            raise OddDegree(f"generator degree {d} is not even and positive")
    series = [1] + [0] * N
    for d in gens:
        for k in range(d, N + 1):
            series[k] += series[k - d]
    return series


def stringh_generators(N: int) -> list[int]:
    """Generator degrees x_{2i} (i >= 1) together with y_{4i} (i >= 2), up to N."""
    return list(range(2, N + 1, 2)) + list(range(8, N + 1, 4))


def partition_count_oracle(gens: Sequence[int], n: int) -> int:
    """Brute-force count of monomials of degree ``n`` (multisets of generators)."""
    gens = list(gens)
    count = 0
    for k in range(0, n // max(min(gens, default=1), 1) + 1):
        for combo in combinations_with_replacement(range(len(gens)), k):
            if sum(gens[i] for i in combo) == n:
                count += 1
    return count


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    N = min(len(a), len(b)) - 1
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(N + 1)]
