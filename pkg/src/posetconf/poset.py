"""Finite posets and their s-sets, q-sets, f-sets and pair relations.

Subsets of a poset are bitmasks over element positions; element labels are
strings and positions follow their sorted order.  Functions that take subsets
accept either a bitmask or any iterable of labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    AntisymmetryViolation,
    ElementMismatch,
    InvalidGluing,
    NotCoveringPair,
    NotDominating,
    TooLarge,
    UnknownElement,
)

MAX_ELEMENTS = 16

Subset = int


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A partial order on at most 16 labelled elements.

    The order is stored as ``down[i]``, the bitmask of positions below or equal
    to position ``i``.  Instances are immutable and hashable.
    """

    __slots__ = ("elements", "_index", "_down", "_up", "__dict__")

    def __init__(self, elements: Iterable, down: Sequence[int]):
        elements = tuple(elements)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", {e: k for k, e in enumerate(elements)})
        object.__setattr__(self, "_down", tuple(down))
        up = [0] * len(elements)
        for j, d in enumerate(self._down):
            for i in _bits(d):
                up[i] |= 1 << j
        object.__setattr__(self, "_up", tuple(up))

    def __setattr__(self, name, value):
        if name in self.__slots__:
            raise AttributeError("FinitePoset is immutable")
        object.__setattr__(self, name, value)

    # basic access

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def mask(self, subset) -> int:
        if isinstance(subset, int) and not isinstance(subset, bool):
            if subset < 0 or subset >> self.n:
                raise UnknownElement(f"bitmask {subset} has bits outside the poset")
            return subset
        m = 0
        for label in subset:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in _bits(mask))

    def sorted_labels(self, mask: int) -> list:
        return [self.elements[i] for i in _bits(mask)]

    def leq(self, a, b) -> bool:
        return bool(self._down[self.index(b)] >> self.index(a) & 1)

    def down_mask(self, label) -> int:
        return self._down[self.index(label)]

    def up_mask(self, label) -> int:
        return self._up[self.index(label)]

    @property
    def leq_table(self) -> tuple[tuple[bool, ...], ...]:
        n = self.n
        return tuple(tuple(bool(self._down[j] >> i & 1) for j in range(n)) for i in range(n))

    def pairs(self) -> list[tuple]:
        """All (a, b) with a <= b, including reflexive pairs, by position."""
        return [
            (self.elements[i], self.elements[j])
            for i in range(self.n)
            for j in range(self.n)
            if self._down[j] >> i & 1
        ]

    def strict_pairs(self) -> list[tuple]:
        return [(a, b) for a, b in self.pairs() if a != b]

    def is_total(self) -> bool:
        return all(self._down[i] >> j & 1 or self._down[j] >> i & 1 for i in range(self.n) for j in range(i))

    # closures and subset predicates

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self._down[i]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self._up[i]
        return out

    def is_sset(self, subset) -> bool:
        m = self.mask(subset)
        return self.down_closure(m) == m

    def is_qset(self, subset) -> bool:
        m = self.mask(subset)
        return self.up_closure(m) == m

    def is_fset(self, subset) -> bool:
        m = self.mask(subset)
        return self.down_closure(m) & self.up_closure(m) == m

    @cached_property
    def ssets(self) -> tuple[int, ...]:
        return tuple(m for m in range(1 << self.n) if self.down_closure(m) == m)

    @cached_property
    def qsets(self) -> tuple[int, ...]:
        return tuple(m for m in range(1 << self.n) if self.up_closure(m) == m)

    @cached_property
    def fsets(self) -> tuple[int, ...]:
        return tuple(m for m in range(1 << self.n) if self.down_closure(m) & self.up_closure(m) == m)

    @cached_property
    def _sset_lookup(self) -> frozenset:
        return frozenset(self.ssets)

    @cached_property
    def _fset_lookup(self) -> frozenset:
        return frozenset(self.fsets)

    def G_ok(self, j: int, k: int) -> bool:
        """Pair test on bitmasks already known to be f-sets."""
        if j & ~k:
            return False
        for x in _bits(j):
            if self._down[x] & k & ~j:
                return False
        return True

    def H_ok(self, j: int, k: int) -> bool:
        if k & ~j:
            return False
        for x in _bits(k):
            if self._up[x] & j & ~k:
                return False
        return True

    @cached_property
    def G_pairs(self) -> tuple[tuple[int, int], ...]:
        fs = self.fsets
        return tuple((j, k) for k in fs for j in fs if self.G_ok(j, k))

    @cached_property
    def H_pairs(self) -> tuple[tuple[int, int], ...]:
        fs = self.fsets
        return tuple((j, k) for j in fs for k in fs if self.H_ok(j, k))

    def top_sset(self, fset: int) -> int:
        """Largest s-set T with (T, fset) an H-pair: fset plus everything not above it."""
        return fset | (self.full & ~self.up_closure(fset))

    def restrict(self, subset) -> "FinitePoset":
        m = self.mask(subset)
        keep = list(_bits(m))
        pos = {old: new for new, old in enumerate(keep)}
        down = []
        for old in keep:
            d = 0
            for i in _bits(self._down[old] & m):
                d |= 1 << pos[i]
            down.append(d)
        return FinitePoset([self.elements[i] for i in keep], down)

    # dunder

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self._down == other._down

    def __hash__(self) -> int:
        return hash((self.elements, self._down))

    def __repr__(self) -> str:
        rel = ", ".join(f"{a}<{b}" for a, b in self.strict_pairs())
        return f"FinitePoset({list(self.elements)}; {rel})"

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "relations": [list(p) for p in self.strict_pairs()],
        }


def validate_poset(elements: Iterable, relation_pairs: Iterable = ()) -> FinitePoset:
    """Build a poset from arbitrary relation pairs by reflexive-transitive closure."""
    labels = sorted({str(e) for e in elements})
    if len(labels) > MAX_ELEMENTS:
        raise TooLarge(f"{len(labels)} elements exceeds the limit of {MAX_ELEMENTS}")
    index = {e: k for k, e in enumerate(labels)}
    n = len(labels)
    down = [1 << k for k in range(n)]
    for pair in relation_pairs:
        a, b = (str(x) for x in pair)
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"relation references unknown element {x!r}")
        down[index[b]] |= 1 << index[a]
    for k in range(n):
        bit = 1 << k
        for j in range(n):
            if down[j] & bit:
                down[j] |= down[k]
    for i in range(n):
        for j in range(i + 1, n):
            if down[j] >> i & 1 and down[i] >> j & 1:
                raise AntisymmetryViolation(f"{labels[i]} and {labels[j]} lie below each other")
    return FinitePoset(labels, down)


def chain(labels: Sequence) -> FinitePoset:
    """Total order labels[0] < labels[1] < ..."""
    labels = [str(x) for x in labels]
    return validate_poset(labels, zip(labels, labels[1:]))


def discrete(labels: Iterable) -> FinitePoset:
    return validate_poset(labels, [])


def _as_mask(P: FinitePoset, subset) -> int:
    return P.mask(subset)


def enumerate_ssets(P: FinitePoset) -> list[int]:
    return list(P.ssets)


def enumerate_qsets(P: FinitePoset) -> list[int]:
    return list(P.qsets)


def enumerate_fsets(P: FinitePoset) -> list[int]:
    return list(P.fsets)


def is_G_pair(P: FinitePoset, J, K) -> bool:
    j, k = _as_mask(P, J), _as_mask(P, K)
    return P.is_fset(j) and P.is_fset(k) and P.G_ok(j, k)


def is_H_pair(P: FinitePoset, J, K) -> bool:
    j, k = _as_mask(P, J), _as_mask(P, K)
    return P.is_fset(j) and P.is_fset(k) and P.H_ok(j, k)


@dataclass(frozen=True)
class DominationReport:
    dominates: bool
    steps: int
    witness_pairs: tuple = ()


def _check_same_elements(a: FinitePoset, b: FinitePoset) -> None:
    if a.elements != b.elements:
        raise ElementMismatch(f"element sets differ: {list(a.elements)} vs {list(b.elements)}")


def domination(fine: FinitePoset, coarse: FinitePoset) -> DominationReport:
    """Whether ``coarse`` contains every relation of ``fine``, and by how many extra pairs."""
    _check_same_elements(fine, coarse)
    fine_pairs = set(fine.pairs())
    coarse_pairs = coarse.pairs()
    extra = tuple(p for p in coarse_pairs if p not in fine_pairs)
    dominates = fine_pairs <= set(coarse_pairs)
    return DominationReport(dominates, len(extra), extra)


def covering_pairs(P: FinitePoset) -> list[tuple]:
    """Pairs i < j with nothing strictly between them, ordered by element position."""
    out = []
    for i in range(P.n):
        for j in range(P.n):
            if i == j or not P._down[j] >> i & 1:
                continue
            between = P._up[i] & P._down[j] & ~(1 << i) & ~(1 << j)
            if not between:
                out.append((P.elements[i], P.elements[j]))
    return out


def remove_covering_pair(P: FinitePoset, i, j) -> FinitePoset:
    # drops the single pair (i, j); every other relation of P survives
    if (i, j) not in covering_pairs(P):
        raise NotCoveringPair(f"({i}, {j}) is not a covering pair")
    down = list(P._down)
    down[P.index(j)] &= ~(1 << P.index(i))
    return FinitePoset(P.elements, down)


def interpolate(fine: FinitePoset, coarse: FinitePoset) -> list[FinitePoset]:
    """Chain coarse = P_0, P_1, ..., P_s = fine, each step removing one covering pair.

    At each step the lexicographically least covering pair not in ``fine`` is removed.
    """
    report = domination(fine, coarse)
    if not report.dominates:
        raise NotDominating("coarse order does not contain the fine order")
    out = [coarse]
    current = coarse
    for _ in range(report.steps):
        for a, b in covering_pairs(current):
            if not fine.leq(a, b):
                current = remove_covering_pair(current, a, b)
                break
        else:  # pragma: no cover - excluded by the existence of such a pair
            raise NotDominating("no removable covering pair found")
        out.append(current)
    assert current == fine
    return out


@dataclass(frozen=True)
class GluingSpec:
    """Data for gluing (J, <~) into the f-set L of (K, <|) along psi: J -> L."""

    sub_poset: FinitePoset
    ambient_poset: FinitePoset
    glue_fset: frozenset
    psi: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "glue_fset", frozenset(str(x) for x in self.glue_fset))
        object.__setattr__(self, "psi", {str(k): str(v) for k, v in dict(self.psi).items()})


def glue_posets(spec: GluingSpec) -> tuple[FinitePoset, dict]:
    """The glued order on I = J + (K minus L) and the surjection phi: I -> K."""
    J, K, L, psi = spec.sub_poset, spec.ambient_poset, spec.glue_fset, spec.psi
    Jl, Kl = set(J.elements), set(K.elements)
    if not L <= Kl:
        raise InvalidGluing("L is not a subset of K")
    if not K.is_fset(L):
        raise InvalidGluing("L is not an f-set of K")
    rest = Kl - L
    if Jl & rest:
        raise InvalidGluing(f"J meets K minus L in {sorted(Jl & rest)}")
    if set(psi) != Jl or not set(psi.values()) <= L:
        raise InvalidGluing("psi must map J into L")
    if set(psi.values()) != L:
        raise InvalidGluing("psi is not surjective onto L")
    for a, b in J.pairs():
        if not K.leq(psi[a], psi[b]):
            raise InvalidGluing(f"psi is not monotone on {a} <= {b}")
    labels = sorted(Jl | rest)
    pairs = []
    for a in labels:
        for b in labels:
            if a in Jl and b in Jl:
                ok = J.leq(a, b)
            elif a in rest and b in rest:
                ok = K.leq(a, b)
            elif a in Jl:
                ok = K.leq(psi[a], b)
            else:
                ok = K.leq(a, psi[b])
            if ok:
                pairs.append((a, b))
    try:
        P = validate_poset(labels, pairs)
    except AntisymmetryViolation as exc:
        raise InvalidGluing(f"glued relation is not antisymmetric: {exc}") from None
    if set(P.pairs()) != set(pairs):
        raise InvalidGluing("glued relation is not transitive")
    if not P.is_fset(Jl):
        raise InvalidGluing("J is not an f-set of the glued poset")
    if P.restrict(Jl) != J:
        raise InvalidGluing("glued order does not restrict to the order on J")
    phi = {x: (psi[x] if x in Jl else x) for x in labels}
    for a, b in P.pairs():
        if not K.leq(phi[a], phi[b]):
            raise InvalidGluing("phi is not monotone")
    return P, phi


def count_linear_extensions(P: FinitePoset, limit: int = 10) -> int:
    """Number of total orders containing the partial order, by memoised backtracking."""
    if P.n > limit:
        raise TooLarge(f"{P.n} elements exceeds the linear-extension limit of {limit}")
    down = P._down

    @lru_cache(maxsize=None)
    def count(placed: int) -> int:
        if placed == P.full:
            return 1
        total = 0
        for i in range(P.n):
            if not placed >> i & 1 and down[i] & ~(1 << i) & ~placed == 0:
                total += count(placed | 1 << i)
        return total

    return count(0)


def linear_extensions(P: FinitePoset) -> Iterator[tuple]:
    """All total orders containing the partial order, as label tuples, bottom first."""
    down = P._down

    def rec(placed: int, prefix: list):
        if placed == P.full:
            yield tuple(prefix)
            return
        for i in range(P.n):
            if not placed >> i & 1 and down[i] & ~(1 << i) & ~placed == 0:
                prefix.append(P.elements[i])
                yield from rec(placed | 1 << i, prefix)
                prefix.pop()

    yield from rec(0, [])
