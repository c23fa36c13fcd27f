"""Improvements of configurations and the split-sequence test for best configurations.

An improvement refines the partial order of a configuration by dropping one
covering pair (i, j). It exists exactly when the sequence
0 -> sigma({i}) -> sigma({i,j}) -> sigma({j}) -> 0 splits, and the choices of
improvement form a torsor under Hom(sigma({j}), sigma({i})).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import quivercat as qc
from .config import Configuration, substitute
from .errors import BadParameterLength, NotCoveringPair, NotSplit, TooMany
from .poset import GluingSpec, covering_pairs, discrete, remove_covering_pair
from .quivercat import RepMor

MAX_ENUM = 10**4


@dataclass(frozen=True)
class SplitReport:
    split: bool
    retraction: RepMor | None = None


@dataclass(frozen=True, eq=False)
class ImprovementStep:
    pair: tuple
    parameter: tuple
    result: Configuration


def _check_covering(c: Configuration, i, j) -> tuple[str, str]:
    i, j = str(i), str(j)
    if (i, j) not in covering_pairs(c.poset):
        raise NotCoveringPair(f"({i}, {j}) is not a covering pair")
    return i, j


def split_pair_test(c: Configuration, i, j) -> SplitReport:
    """Whether 0 -> sigma({i}) -> sigma({i,j}) -> sigma({j}) -> 0 splits, with the canonical retraction."""
    i, j = _check_covering(c, i, j)
    try:
        r = qc.retraction(c.iota([i], [i, j]))
    except NotSplit:
        return SplitReport(False)
    return SplitReport(True, r)


def is_best(c: Configuration) -> bool:
    return not any(split_pair_test(c, i, j).split for i, j in covering_pairs(c.poset))


def improvement_hom_basis(c: Configuration, i, j) -> list[RepMor]:
    """Canonical basis of Hom(sigma({j}), sigma({i})), which coordinatizes the improvements."""
    return qc.hom_space(c.sigma([str(j)]), c.sigma([str(i)]))


def _two_point_improvement(c: Configuration, i: str, j: str, r: RepMor) -> Configuration:
    """The configuration on the discrete poset {i, j} with retraction r and its matching section."""
    pair = frozenset({i, j})
    e, fi, fj = frozenset(), frozenset({i}), frozenset({j})
    iota_i = c.iotas[(fi, pair)]
    pi_j = c.pis[(pair, fj)]
    top = c.objects[pair]
    # s o pi_j = id - iota_i o r
    s = qc.factor_through_epi(pi_j, qc.identity(top) - qc.compose(iota_i, r))
    D = discrete([i, j])
    objects = {k: c.objects[k] for k in (e, fi, fj, pair)}
    iotas, pis = {}, {}
    for a, b in D.G_pairs:
        key = (D.labels(a), D.labels(b))
        iotas[key] = c.iotas[key] if key in c.iotas else s
    for a, b in D.H_pairs:
        key = (D.labels(a), D.labels(b))
        pis[key] = c.pis[key] if key in c.pis else r
    return Configuration(D, objects, iotas, pis)


def one_step_improve(c: Configuration, i, j, parameter: Sequence[int] = ()) -> ImprovementStep:
    """The improvement at the covering pair (i, j) selected by ``parameter``.

    ``parameter`` gives coefficients of f over :func:`improvement_hom_basis`;
    the retraction used is r0 - f o pi, where r0 is the canonical one.
    """
    i, j = _check_covering(c, i, j)
    report = split_pair_test(c, i, j)
    if not report.split:
        raise NotSplit(f"the sequence at ({i}, {j}) does not split")
    basis = improvement_hom_basis(c, i, j)
    parameter = tuple(int(x) % c.p for x in parameter)
    if len(parameter) != len(basis):
        raise BadParameterLength(f"expected {len(basis)} coefficients, got {len(parameter)}")
    si, sj = c.sigma([i]), c.sigma([j])
    f = qc.hom_element(basis, parameter, sj, si)
    r = report.retraction - qc.compose(f, c.pi([i, j], [j]))
    inner = _two_point_improvement(c, i, j, r)
    spec = GluingSpec(inner.poset, c.poset, {i, j}, {i: i, j: j})
    result, _, _ = substitute(c, inner, spec)
    assert result.poset == remove_covering_pair(c.poset, i, j)
    return ImprovementStep((i, j), parameter, result)


def enumerate_improvements(c: Configuration, i, j, max_enum: int = MAX_ENUM) -> list[ImprovementStep]:
    """One improvement per element of Hom(sigma({j}), sigma({i})), in lexicographic coefficient order."""
    i, j = _check_covering(c, i, j)
    if not split_pair_test(c, i, j).split:
        return []
    d = len(improvement_hom_basis(c, i, j))
    if c.p**d > max_enum:
        raise TooMany(f"{c.p}^{d} improvements exceed the limit of {max_enum}")
    return [one_step_improve(c, i, j, coeffs) for coeffs in itertools.product(range(c.p), repeat=d)]


def best_search(c: Configuration) -> tuple[Configuration, list[ImprovementStep]]:
    """Improve greedily at the least splittable covering pair with zero parameter until best."""
    trail: list[ImprovementStep] = []
    current = c
    while True:
        for i, j in covering_pairs(current.poset):
            if split_pair_test(current, i, j).split:
                d = len(improvement_hom_basis(current, i, j))
                step = one_step_improve(current, i, j, [0] * d)
                trail.append(step)
                current = step.result
                break
        else:
            return current, trail
