"""Small named representations and configurations used in examples, tests and the CLI."""

from __future__ import annotations

from .config import Configuration, SubobjectFamily, build_from_subobjects
from .poset import chain, validate_poset
from .quivercat import Quiver, Rep, SubobjectCF

A2 = Quiver(["v1", "v2"], [("a", "v1", "v2")])
LOOP = Quiver(["w"], [("l", "w", "w")], [[(1, ["l", "l"])]])


def s1(p: int = 2) -> Rep:
    return Rep(A2, p, {"v1": 1})


def s2(p: int = 2) -> Rep:
    return Rep(A2, p, {"v2": 1})


def x_ind(p: int = 2) -> Rep:
    """v1 -> v2 with the identity map: the indecomposable of dimension (1, 1)."""
    return Rep(A2, p, {"v1": 1, "v2": 1}, {"a": [[1]]})


def y_split(p: int = 2) -> Rep:
    """Dimension (1, 1) with the zero map, i.e. S1 + S2."""
    return Rep(A2, p, {"v1": 1, "v2": 1}, {"a": [[0]]})


def n2(p: int = 2) -> Rep:
    """The 2x2 nilpotent Jordan block on the loop quiver with l.l = 0."""
    return Rep(LOOP, p, {"w": 2}, {"l": [[0, 1], [0, 0]]})


def _a2_family(x: Rep) -> SubobjectFamily:
    P = validate_poset(["v1", "v2"], [("v2", "v1")])
    table = {
        frozenset(): SubobjectCF.zero(x),
        frozenset({"v2"}): SubobjectCF(x, {"v2": [[1]]}),
        frozenset({"v1", "v2"}): SubobjectCF.full(x),
    }
    return SubobjectFamily(x, P, table)


def a2_family(p: int = 2) -> SubobjectFamily:
    return _a2_family(x_ind(p))


def a2_config(p: int = 2) -> Configuration:
    """X_ind on the poset v2 < v1: the non-split extension of S1 by S2."""
    return build_from_subobjects(a2_family(p))


def ysplit_config(p: int = 2) -> Configuration:
    """Y_split on the poset v2 < v1; the covering sequence splits."""
    return build_from_subobjects(_a2_family(y_split(p)))


def double_s1_config(p: int = 2) -> Configuration:
    """S1 + S1 on the chain 1 < 2 with S^{1} the first coordinate line."""
    x = Rep(A2, p, {"v1": 2})
    P = chain(["1", "2"])
    table = {
        frozenset(): SubobjectCF.zero(x),
        frozenset({"1"}): SubobjectCF(x, {"v1": [[1], [0]]}),
        frozenset({"1", "2"}): SubobjectCF.full(x),
    }
    return build_from_subobjects(SubobjectFamily(x, P, table))


def singleton_config(x: Rep, label: str = "1") -> Configuration:
    P = validate_poset([label])
    table = {frozenset(): SubobjectCF.zero(x), frozenset({label}): SubobjectCF.full(x)}
    return build_from_subobjects(SubobjectFamily(x, P, table))
