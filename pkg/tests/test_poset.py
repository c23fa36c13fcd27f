from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import is_partial_order, random_poset, relation_set
from posetconf import poset as po
from posetconf.errors import (
    AntisymmetryViolation,
    ElementMismatch,
    InvalidGluing,
    NotCoveringPair,
    NotDominating,
    TooLarge,
    UnknownElement,
)
from posetconf.poset import GluingSpec, chain, discrete, validate_poset

V = validate_poset(["1", "2", "3"], [("1", "3"), ("2", "3")])
C3 = chain(["1", "2", "3"])


def sets(P, masks):
    return [set(P.labels(m)) for m in masks]


@st.composite
def posets(draw, max_n=6):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(0, max_n))
    density = draw(st.sampled_from([0.0, 0.2, 0.4, 0.7, 1.0]))
    return random_poset(random.Random(seed), n, density)


# examples


def test_validate_poset_examples():
    P = validate_poset(["1", "2"], [("1", "2")])
    assert P.leq("1", "2") and not P.leq("2", "1") and P.is_total()
    D = validate_poset(["1", "2"], [])
    assert D == discrete(["1", "2"]) and D.strict_pairs() == []
    with pytest.raises(AntisymmetryViolation):
        validate_poset(["1", "2"], [("1", "2"), ("2", "1")])
    with pytest.raises(UnknownElement):
        validate_poset(["1"], [("1", "9")])


def test_closure_is_stored():
    P = validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert P.leq("a", "c")
    assert P == chain(["a", "b", "c"])


def test_sset_examples():
    assert len(po.enumerate_ssets(discrete(["1", "2"]))) == 4
    assert sets(C3, po.enumerate_ssets(C3)) == [set(), {"1"}, {"1", "2"}, {"1", "2", "3"}]
    assert sets(V, po.enumerate_ssets(V)) == [set(), {"1"}, {"2"}, {"1", "2"}, {"1", "2", "3"}]


def test_qset_and_fset_examples():
    assert sorted(map(sorted, sets(C3, po.enumerate_qsets(C3)))) == sorted([[], ["3"], ["2", "3"], ["1", "2", "3"]])
    fsets = sets(C3, po.enumerate_fsets(C3))
    assert len(fsets) == 7 and {"1", "3"} not in fsets
    assert len(po.enumerate_fsets(discrete(["a", "b", "c"]))) == 8


def test_ssets_are_sorted_by_mask():
    for P in (C3, V, discrete("abcd")):
        masks = po.enumerate_ssets(P)
        assert masks == sorted(masks)


def test_g_h_pair_examples():
    assert po.is_G_pair(C3, {"1"}, {"1", "2"})
    assert not po.is_G_pair(C3, {"2"}, {"1", "2"})
    for f in C3.fsets:
        assert po.is_G_pair(C3, C3.labels(f), C3.labels(f))
        assert po.is_H_pair(C3, C3.labels(f), C3.labels(f))
    assert not po.is_G_pair(C3, {"1", "3"}, {"1", "2", "3"})


def test_domination_examples():
    rep = po.domination(discrete(["1", "2"]), chain(["1", "2"]))
    assert rep.dominates and rep.steps == 1
    rep = po.domination(V, V)
    assert rep.dominates and rep.steps == 0
    assert not po.domination(chain(["1", "2"]), chain(["2", "1"])).dominates
    with pytest.raises(ElementMismatch):
        po.domination(chain(["1", "2"]), chain(["1", "3"]))


def test_covering_pair_examples():
    assert po.covering_pairs(C3) == [("1", "2"), ("2", "3")]
    assert po.covering_pairs(discrete("abc")) == []
    assert po.covering_pairs(chain(["1", "2"])) == [("1", "2")]


def test_remove_covering_pair_examples():
    assert po.remove_covering_pair(chain(["1", "2"]), "1", "2") == discrete(["1", "2"])
    R = po.remove_covering_pair(C3, "1", "2")
    assert R.strict_pairs() == [("1", "3"), ("2", "3")]
    with pytest.raises(NotCoveringPair):
        po.remove_covering_pair(C3, "1", "3")


def test_interpolate_examples():
    steps = po.interpolate(discrete(["1", "2", "3"]), C3)
    assert len(steps) == 4 and steps[0] == C3 and steps[-1] == discrete(["1", "2", "3"])
    assert po.interpolate(V, V) == [V]
    assert po.interpolate(discrete(["1", "2"]), chain(["1", "2"])) == [chain(["1", "2"]), discrete(["1", "2"])]
    with pytest.raises(NotDominating):
        po.interpolate(C3, discrete(["1", "2", "3"]))


def test_count_linear_extensions_examples():
    assert po.count_linear_extensions(C3) == 1
    assert po.count_linear_extensions(discrete("abc")) == 6
    assert po.count_linear_extensions(V) == 2
    with pytest.raises(TooLarge):
        po.count_linear_extensions(discrete([str(k) for k in range(11)]))


def test_glue_examples():
    J = discrete(["a", "b"])
    K = validate_poset(["l", "2"], [("l", "2")])
    I, phi = po.glue_posets(GluingSpec(J, K, {"l"}, {"a": "l", "b": "l"}))
    assert I.elements == ("2", "a", "b")
    assert set(I.strict_pairs()) == {("a", "2"), ("b", "2")}
    assert phi == {"a": "l", "b": "l", "2": "2"}

    # nothing glued in: L = K and psi a bijection
    Jc = chain(["x", "y"])
    Kc = chain(["p", "q"])
    I, phi = po.glue_posets(GluingSpec(Jc, Kc, {"p", "q"}, {"x": "p", "y": "q"}))
    assert I == Jc


def test_singleton_gluing_matches_direct_cases():
    # substitution of J into the single element l of K: a <= b iff the four cases hold
    K = validate_poset(["x", "l", "y"], [("x", "l"), ("l", "y")])
    J = validate_poset(["a", "b", "c"], [("a", "b")])
    I, phi = po.glue_posets(GluingSpec(J, K, {"l"}, {e: "l" for e in "abc"}))
    for s in I.elements:
        for t in I.elements:
            if s in "abc" and t in "abc":
                want = J.leq(s, t)
            elif s in "abc":
                want = K.leq("l", t)
            elif t in "abc":
                want = K.leq(s, "l")
            else:
                want = K.leq(s, t)
            assert I.leq(s, t) == want


def test_invalid_gluings():
    K = chain(["l", "m", "n"])
    J = discrete(["a"])
    with pytest.raises(InvalidGluing):
        po.glue_posets(GluingSpec(J, K, {"l", "n"}, {"a": "l"}))
    with pytest.raises(InvalidGluing):
        po.glue_posets(GluingSpec(discrete(["a", "b"]), K, {"l", "m"}, {"a": "l", "b": "l"}))
    with pytest.raises(InvalidGluing):
        po.glue_posets(GluingSpec(chain(["a", "b"]), K, {"l", "m"}, {"a": "m", "b": "l"}))


def test_linear_extensions_generator():
    exts = list(po.linear_extensions(V))
    assert sorted(exts) == [("1", "2", "3"), ("2", "1", "3")]


def test_to_dict_lists_strict_relations():
    assert V.to_dict() == {"elements": ["1", "2", "3"], "relations": [["1", "3"], ["2", "3"]]}


# properties


@settings(max_examples=150, deadline=None)
@given(posets())
def test_ssets_form_a_sublattice(P):
    ss = set(P.ssets)
    assert 0 in ss and P.full in ss
    for a in ss:
        for b in ss:
            assert a | b in ss and a & b in ss


@settings(max_examples=150, deadline=None)
@given(posets())
def test_sset_qset_complement(P):
    for m in range(1 << P.n):
        assert P.is_sset(m) == P.is_qset(P.full & ~m)


@settings(max_examples=150, deadline=None)
@given(posets())
def test_fsets_are_differences_of_ssets(P):
    ss = set(P.ssets)
    for f in P.fsets:
        k = P.down_closure(f)
        j = k & ~f
        assert k in ss and j in ss and k & ~j == f


@settings(max_examples=150, deadline=None)
@given(posets())
def test_fsets_closed_under_meet(P):
    fs = set(P.fsets)
    for a in fs:
        for b in fs:
            assert a & b in fs


@settings(max_examples=150, deadline=None)
@given(posets())
def test_enumerations_match_predicate_scan(P):
    def down(m):
        return all(not (m >> j & 1) or all(m >> i & 1 for i in range(P.n) if P.leq(P.elements[i], P.elements[j])) for j in range(P.n))

    def between(m):
        els = P.elements
        return all(
            m >> i & 1
            for h in range(P.n) if m >> h & 1
            for j in range(P.n) if m >> j & 1
            for i in range(P.n) if P.leq(els[h], els[i]) and P.leq(els[i], els[j])
        )

    assert list(P.ssets) == [m for m in range(1 << P.n) if down(m)]
    assert list(P.fsets) == [m for m in range(1 << P.n) if between(m)]


@settings(max_examples=150, deadline=None)
@given(posets())
def test_order_recovery(P):
    for i in P.elements:
        for j in P.elements:
            rule = all(P.labels(s) >= {i} for s in P.ssets if j in P.labels(s))
            assert rule == P.leq(i, j)


@settings(max_examples=80, deadline=None)
@given(posets(max_n=5))
def test_g_h_pair_properties(P):
    fs = P.fsets
    G = set(P.G_pairs)
    H = set(P.H_pairs)
    for j in fs:
        for k in fs:
            if j & ~k == 0:
                assert ((j, k) in G) == ((k, k & ~j) in H)
    for j, k in G:
        for k2, l in G:
            if k2 == k:
                assert (j, l) in G
    for j, k in H:
        for k2, l in H:
            if k2 == k:
                assert (j, l) in H
    for j, k in G:
        for k2, l in H:
            if k2 == k:
                assert (j, j & l) in H and (j & l, l) in G


@settings(max_examples=80, deadline=None)
@given(posets(max_n=5))
def test_g_pairs_match_definition(P):
    els = P.elements
    fs = set(P.fsets)
    for j in range(1 << P.n):
        for k in range(1 << P.n):
            want = (
                j in fs and k in fs and j & ~k == 0
                and all(not (j >> a & 1 and k >> b & 1 and P.leq(els[b], els[a])) or j >> b & 1 for a in range(P.n) for b in range(P.n))
            )
            assert po.is_G_pair(P, P.labels(j), P.labels(k)) == want


@settings(max_examples=100, deadline=None)
@given(posets(max_n=5))
def test_covering_pair_removal(P):
    rel = relation_set(P)
    for i, j in po.covering_pairs(P):
        Q = po.remove_covering_pair(P, i, j)
        assert relation_set(Q) == rel - {(i, j)}
        rep = po.domination(Q, P)
        assert rep.dominates and rep.steps == 1
    covering = set(po.covering_pairs(P))
    for a, b in P.strict_pairs():
        assert ((a, b) in covering) == is_partial_order(P.elements, rel - {(a, b)})


@settings(max_examples=100, deadline=None)
@given(posets(max_n=5), st.integers(0, 2**32 - 1))
def test_coarsening_shrinks_set_systems(P, seed):
    from gen import random_extension

    Q = random_extension(random.Random(seed), P)
    assert po.domination(P, Q).dominates
    assert set(Q.fsets) <= set(P.fsets)
    assert set(Q.G_pairs) <= set(P.G_pairs)
    assert set(Q.H_pairs) <= set(P.H_pairs)
    chain_ = po.interpolate(P, Q)
    assert chain_[0] == Q and chain_[-1] == P
    for a, b in itertools.pairwise(chain_):
        assert len(relation_set(a) - relation_set(b)) == 1 and relation_set(b) <= relation_set(a)


@settings(max_examples=100, deadline=None)
@given(posets(max_n=6))
def test_linear_extension_count_matches_permutations(P):
    brute = sum(
        1 for perm in itertools.permutations(P.elements)
        if all(perm.index(a) < perm.index(b) for a, b in P.strict_pairs())
    )
    assert po.count_linear_extensions(P) == brute == len(list(po.linear_extensions(P)))
