"""Built-in modules: N3, Qbar(p), HBP3, A/(Sq1) and the E(1)-models of BG.

Each of the BG entries is a sum of shifted copies of ``F_p`` and ``Qbar``
over ``E(1)``, kept strictly below degree 12.
"""

from __future__ import annotations

import re

import numpy as np

from ..errors import UnknownModule
from ..steenrod import Algebra, builtin_algebra
from .modules import (FPModule, cyclic_quotient, direct_sum, kernel_module, shift,
                      trivial_module, truncate, free_module)

APPENDIX_CUTOFF = 12


def N3(algebra: Algebra | None = None) -> FPModule:
    """``F_3[P1]/(P1^3)`` with ``b`` acting by zero: basis 1, P1, P1^2."""
    A = algebra or builtin_algebra("Atmf3")
    one = np.array([[1]])
    return FPModule(A, {0: 1, 4: 1, 8: 1}, {("P1", 0): one, ("P1", 4): one}, "N3",
                    basis_labels={0: ["1"], 4: ["P1"], 8: ["P1^2"]})


def HBP3(algebra: Algebra | None = None) -> FPModule:
    """The span of the powers ``P^n`` (n <= 5) in the mod-3 cohomology of BP.

    ``P1 P^n = (n+1) P^{n+1}`` and ``b`` acts by zero.  This submodule carries
    all of the cohomology below degree 16; the complementary summand starts in
    degree 16.
    """
    A = algebra or builtin_algebra("Atmf3")
    dims = {4 * n: 1 for n in range(6)}
    acts = {("P1", 4 * n): np.array([[(n + 1) % 3]]) for n in range(5)}
    return FPModule(A, dims, acts, "HBP3", basis_labels={4 * n: [f"P{n}"] for n in range(6)})


def Qbar(p: int, algebra: Algebra | None = None) -> FPModule:
    """The three-dimensional E(1)-module in degrees 0, 2p-2, 2p-1.

    ``Q0`` maps the degree ``2p-2`` class to the top class and ``Q1`` maps the
    bottom class to the top class.
    """
    A = algebra or builtin_algebra(f"E1({p})")
    one = np.array([[1]])
    acts = {("Q0", 2 * p - 2): one, ("Q1", 0): one}
    if 2 * p - 2 == 1:  # cannot happen for primes, kept for clarity
        raise UnknownModule("degenerate prime")
    return FPModule(A, {0: 1, 2 * p - 2: 1, 2 * p - 1: 1}, acts, f"Qbar({p})")


def Qbar_as_kernel(p: int, algebra: Algebra | None = None) -> FPModule:
    """``Qbar`` rebuilt as the kernel of the nonzero map ``Sigma^-1 E(1) -> Sigma^-1 F_p``."""
    A = algebra or builtin_algebra(f"E1({p})")
    E = shift(free_module(A), -1, name="S-1E1")
    # the unique nonzero map sends the bottom class to the generator
    f = {d: np.zeros((1 if d == -1 else 0, E.dim(d)), dtype=np.int64) for d in E.degrees()}
    f[-1] = np.array([[1]], dtype=np.int64)
    return kernel_module(f, E, name=f"ker({p})")


def AmodSq1(T: int) -> FPModule:
    """``A/(A Sq1)`` through degree ``T``, over the truncated Steenrod algebra."""
    A = builtin_algebra(f"TruncatedA(2,{T})")
    return cyclic_quotient(A, [A.gen("Sq1")], f"AmodSq1({T})")


def A2modSq1() -> FPModule:
    A = builtin_algebra("A2")
    return cyclic_quotient(A, [A.gen("Sq1")], "A2modSq1")


# E(1)-decompositions through degree 11: list of ("F" | "Q", shift)
APPENDIX_DECOMPOSITIONS: dict[str, tuple[int, list[tuple[str, int]]]] = {
    "BG2": (2, [("Q", 4), ("F", 8)]),
    "BSpin7": (2, [("Q", 4), ("F", 8)]),
    "BSpin8": (2, [("Q", 4), ("F", 8), ("F", 8)]),
    "BSpin9": (2, [("Q", 4), ("F", 8), ("F", 8)]),
    "BSpinBig": (2, [("Q", 4), ("F", 8), ("Q", 8)]),
    "BF4_p2": (2, [("Q", 4), ("F", 8)]),
    "BE6_p2": (2, [("Q", 4), ("F", 8)]),
    "BE7_p2": (2, [("Q", 4), ("F", 8)]),
    "BE8_p2": (2, [("Q", 4), ("F", 8)]),
    "BF4_p3": (3, [("Q", 4), ("F", 8)]),
    "BE6_p3": (3, [("Q", 4), ("F", 8)]),
    "BE7_p3": (3, [("Q", 4), ("F", 8)]),
    "BE8_p3": (3, [("Q", 4), ("F", 8)]),
    "BE8_p5": (5, [("F", 4)]),
}


def appendix_module(name: str) -> FPModule:
    p, parts = APPENDIX_DECOMPOSITIONS[name]
    A = builtin_algebra(f"E1({p})")
    pieces = []
    for kind, n in parts:
        base = Qbar(p, A) if kind == "Q" else trivial_module(A)
        pieces.append(shift(base, n))
    pieces.insert(0, trivial_module(A))  # the unit in degree 0
    M = direct_sum(*pieces, name=name)
    return truncate(M, APPENDIX_CUTOFF, name=name)


def appendix_names() -> list[str]:
    return list(APPENDIX_DECOMPOSITIONS)


def builtin_module(name: str, algebra: str | None = None) -> FPModule:
    """Look up a built-in module by name.

    ``Fp`` (or ``F2``, ``F3``...) is the trivial module over ``algebra``.
    """
    if name in ("N3",):
        return N3()
    if name == "HBP3":
        return HBP3()
    m = re.fullmatch(r"Qbar[(_](\d+)\)?", name)
    if m:
        return Qbar(int(m.group(1)))
    m = re.fullmatch(r"QbarKernel[(_](\d+)\)?", name)
    if m:
        return Qbar_as_kernel(int(m.group(1)))
    m = re.fullmatch(r"AmodSq1[(_](\d+)\)?", name)
    if m:
        return AmodSq1(int(m.group(1)))
    if name == "A2modSq1":
        return A2modSq1()
    if name in APPENDIX_DECOMPOSITIONS:
        return appendix_module(name)
    if re.fullmatch(r"F(p|\d+)", name):
        if algebra is None:
            raise UnknownModule("the trivial module needs an algebra")
        A = builtin_algebra(algebra)
        if name != "Fp" and int(name[1:]) != A.p:
            raise UnknownModule(f"{name} over an algebra at p={A.p}")
        return trivial_module(A)
    m = re.fullmatch(r"Free", name)
    if m and algebra is not None:
        return free_module(builtin_algebra(algebra))
    raise UnknownModule(f"unknown module {name!r}")
