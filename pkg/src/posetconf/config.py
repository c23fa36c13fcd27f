"""(I, <=)-configurations of quiver representations.

A configuration stores an object for every f-set of a finite poset, an
injective morphism for every G-pair and a surjective morphism for every
H-pair. Everything is stored explicitly and keyed by frozensets of element
labels, so the axiom checker and the sub/quotient operations are literal
table manipulations.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from . import exactla as la
from . import quivercat as qc
from .errors import (
    ConfigError,
    FamilyAxiomViolation,
    GluingMismatch,
    MissingEntry,
    NotAChain,
    NotAnFSet,
    NotMonotone,
    NotSurjective,
    PosetMismatch,
)
from .poset import FinitePoset, GluingSpec, chain, glue_posets
from .quivercat import Rep, RepMor, SubobjectCF

Key = frozenset
PairKey = tuple


def _key(subset) -> frozenset:
    return frozenset(str(x) for x in subset)


def fmt(subset) -> str:
    return "{" + ",".join(sorted(subset)) + "}"


@dataclass(frozen=True, eq=False)
class Configuration:
    """The data (sigma, iota, pi) on a finite poset; see :func:`validate_config` for the axioms."""

    poset: FinitePoset
    objects: Mapping[Key, Rep]
    iotas: Mapping[PairKey, RepMor]
    pis: Mapping[PairKey, RepMor]

    def __post_init__(self):
        object.__setattr__(self, "objects", MappingProxyType(dict(self.objects)))
        object.__setattr__(self, "iotas", MappingProxyType(dict(self.iotas)))
        object.__setattr__(self, "pis", MappingProxyType(dict(self.pis)))

    def sigma(self, subset) -> Rep:
        k = _key(subset)
        try:
            return self.objects[k]
        except KeyError:
            raise MissingEntry(f"no object for {fmt(k)}") from None

    def iota(self, j, k) -> RepMor:
        pair = (_key(j), _key(k))
        try:
            return self.iotas[pair]
        except KeyError:
            raise MissingEntry(f"no iota for ({fmt(pair[0])}, {fmt(pair[1])})") from None

    def pi(self, j, k) -> RepMor:
        pair = (_key(j), _key(k))
        try:
            return self.pis[pair]
        except KeyError:
            raise MissingEntry(f"no pi for ({fmt(pair[0])}, {fmt(pair[1])})") from None

    @property
    def top(self) -> Rep:
        return self.sigma(self.poset.elements)

    @property
    def quiver(self) -> qc.Quiver:
        return self.top.quiver

    @property
    def p(self) -> int:
        return self.top.p

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return (
            self.poset == other.poset
            and dict(self.objects) == dict(other.objects)
            and dict(self.iotas) == dict(other.iotas)
            and dict(self.pis) == dict(other.pis)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Configuration(elements={list(self.poset.elements)}, top={self.top.dim_vector()})"


# axiom checking


@dataclass(frozen=True)
class Violation:
    axiom: str
    sets: tuple
    detail: str

    def __str__(self) -> str:
        where = ", ".join(fmt(s) for s in self.sets)
        return f"({self.axiom}) at [{where}]: {self.detail}"


def _require_entries(c: Configuration) -> None:
    P = c.poset
    for f in P.fsets:
        if P.labels(f) not in c.objects:
            raise MissingEntry(f"no object for f-set {fmt(P.labels(f))}")
    for j, k in P.G_pairs:
        if (P.labels(j), P.labels(k)) not in c.iotas:
            raise MissingEntry(f"no iota for G-pair ({fmt(P.labels(j))}, {fmt(P.labels(k))})")
    for j, k in P.H_pairs:
        if (P.labels(j), P.labels(k)) not in c.pis:
            raise MissingEntry(f"no pi for H-pair ({fmt(P.labels(j))}, {fmt(P.labels(k))})")


def validate_config(c: Configuration) -> list[Violation]:
    """All axiom failures of ``c``; an empty list means ``c`` is a configuration.

    Raises MissingEntry if some f-set or pair has no data.
    """
    _require_entries(c)
    P = c.poset
    L = P.labels
    out: list[Violation] = []

    fsets = set(P.fsets)
    extra = [k for k in c.objects if P.mask(k) not in fsets or len(k) != len(P.labels(P.mask(k)))]
    for k in extra:
        out.append(Violation("i", (k,), "object stored for a set that is not an f-set"))
    G = set(P.G_pairs)
    H = set(P.H_pairs)
    for (a, b) in c.iotas:
        if (P.mask(a), P.mask(b)) not in G:
            out.append(Violation("ii", (a, b), "iota stored for a pair outside G"))
    for (a, b) in c.pis:
        if (P.mask(a), P.mask(b)) not in H:
            out.append(Violation("iii", (a, b), "pi stored for a pair outside H"))

    if c.objects[frozenset()].total_dim != 0:
        out.append(Violation("i", (frozenset(),), "sigma of the empty set is not zero"))
    first = c.objects[L(P.full)]
    for k, obj in c.objects.items():
        if obj.quiver != first.quiver or obj.p != first.p:
            out.append(Violation("i", (k,), "object lives in a different category"))

    def ends_ok(kind, pair, m):
        src, tgt = c.objects[pair[0]], c.objects[pair[1]]
        if m.source != src or m.target != tgt:
            out.append(Violation(kind, pair, "source or target does not match sigma"))
            return False
        return True

    ok_i, ok_p = {}, {}
    for j, k in P.G_pairs:
        pair = (L(j), L(k))
        m = c.iotas[pair]
        ok_i[(j, k)] = good = ends_ok("ii", pair, m)
        if not good:
            continue
        if not qc.is_injective(m):
            out.append(Violation("ii", pair, "iota is not injective"))
        if j == k and m != qc.identity(m.source):
            out.append(Violation("ii", pair, "iota(J,J) is not the identity"))
    for j, k in P.H_pairs:
        pair = (L(j), L(k))
        m = c.pis[pair]
        ok_p[(j, k)] = good = ends_ok("iii", pair, m)
        if not good:
            continue
        if not qc.is_surjective(m):
            out.append(Violation("iii", pair, "pi is not surjective"))
        if j == k and m != qc.identity(m.source):
            out.append(Violation("iii", pair, "pi(J,J) is not the identity"))

    # (A) exactness of 0 -> sigma(J) -> sigma(K) -> sigma(K \ J) -> 0
    for j, k in P.G_pairs:
        rest = k & ~j
        if not ok_i[(j, k)] or not ok_p[(k, rest)]:
            continue
        i_m, p_m = c.iotas[(L(j), L(k))], c.pis[(L(k), L(rest))]
        sj, sk, sl = c.objects[L(j)], c.objects[L(k)], c.objects[L(rest)]
        if not qc.compose(p_m, i_m).is_zero():
            out.append(Violation("A", (L(j), L(k)), "pi o iota is not zero"))
        elif any(a + b != d for a, b, d in zip(sj.dims, sl.dims, sk.dims)):
            out.append(Violation("A", (L(j), L(k)), "dimensions are not additive"))

    G_from: dict[int, list[int]] = {}
    for j, k in P.G_pairs:
        G_from.setdefault(j, []).append(k)
    H_from: dict[int, list[int]] = {}
    for j, k in P.H_pairs:
        H_from.setdefault(j, []).append(k)

    # (B) iota(J,L) = iota(K,L) o iota(J,K)
    for j, k in P.G_pairs:
        for l in G_from.get(k, ()):
            if not (ok_i[(j, k)] and ok_i[(k, l)] and ok_i[(j, l)]):
                continue
            lhs = c.iotas[(L(j), L(l))]
            rhs = qc.compose(c.iotas[(L(k), L(l))], c.iotas[(L(j), L(k))])
            if lhs != rhs:
                out.append(Violation("B", (L(j), L(k), L(l)), "iota does not compose"))
    # (C) pi(J,L) = pi(K,L) o pi(J,K)
    for j, k in P.H_pairs:
        for l in H_from.get(k, ()):
            if not (ok_p[(j, k)] and ok_p[(k, l)] and ok_p[(j, l)]):
                continue
            lhs = c.pis[(L(j), L(l))]
            rhs = qc.compose(c.pis[(L(k), L(l))], c.pis[(L(j), L(k))])
            if lhs != rhs:
                out.append(Violation("C", (L(j), L(k), L(l)), "pi does not compose"))
    # (D) pi(K,L) o iota(J,K) = iota(J & L, L) o pi(J, J & L)
    for j, k in P.G_pairs:
        for l in H_from.get(k, ()):
            m = j & l
            if not (ok_i[(j, k)] and ok_p[(k, l)] and ok_i[(m, l)] and ok_p[(j, m)]):
                continue
            lhs = qc.compose(c.pis[(L(k), L(l))], c.iotas[(L(j), L(k))])
            rhs = qc.compose(c.iotas[(L(m), L(l))], c.pis[(L(j), L(m))])
            if lhs != rhs:
                out.append(Violation("D", (L(j), L(k), L(l)), "square does not commute"))
    return out


# subobject families


@dataclass(frozen=True, eq=False)
class SubobjectFamily:
    """Subobjects S^J of ``ambient`` for every s-set J of ``poset``."""

    ambient: Rep
    poset: FinitePoset
    table: Mapping[Key, SubobjectCF]

    def __post_init__(self):
        object.__setattr__(self, "table", MappingProxyType({_key(k): v for k, v in self.table.items()}))

    def __getitem__(self, subset) -> SubobjectCF:
        return self.table[_key(subset)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubobjectFamily):
            return NotImplemented
        return self.poset == other.poset and self.ambient == other.ambient and dict(self.table) == dict(other.table)

    __hash__ = None


def check_family(fam: SubobjectFamily) -> None:
    """Raise unless S^0 = 0, S^I = X, and S^A, S^B meet and join like A, B."""
    P = fam.poset
    want = {P.labels(s) for s in P.ssets}
    if set(fam.table) != want:
        raise PosetMismatch("family is not indexed by exactly the s-sets of the poset")
    for k, s in fam.table.items():
        if s.ambient != fam.ambient:
            raise PosetMismatch(f"S^{fmt(k)} is a subobject of a different object")
    empty, full = frozenset(), P.labels(P.full)
    if fam.table[empty] != SubobjectCF.zero(fam.ambient):
        raise FamilyAxiomViolation(empty, empty, "S of the empty set is not zero")
    if fam.table[full] != SubobjectCF.full(fam.ambient):
        raise FamilyAxiomViolation(full, full, "S of the whole poset is not the whole object")
    ss = P.ssets
    for x, a in enumerate(ss):
        for b in ss[x + 1 :]:
            la_, lb = P.labels(a), P.labels(b)
            meet, join = qc.sub_meet_join(fam.table[la_], fam.table[lb])
            if meet != fam.table[P.labels(a & b)] or join != fam.table[P.labels(a | b)]:
                raise FamilyAxiomViolation(la_, lb)


def _projection_onto(i_base: RepMor, i_f: RepMor) -> RepMor:
    """p with p o i_base = 0 and p o i_f = id, when [i_base | i_f] is an isomorphism."""
    mats = []
    for mb, mf in zip(i_base.mats, i_f.mats):
        inv = la.inverse(mb.hstack(mf))
        mats.append(la.Matrix._wrap(inv.p, inv.array[mb.cols :].copy()))
    return RepMor(i_f.target, i_f.source, mats, check=False)


def build_from_subobjects(fam: SubobjectFamily) -> Configuration:
    """The configuration whose iota(J, I) represent the given S^J.

    Every choice is canonical: s-set objects are the subrepresentations on the
    column bases of S^J, and every other f-set F is the cokernel of
    base(F) -> top(F), where top(F) is the largest s-set T with (T, F) in H.
    """
    check_family(fam)
    P, X = fam.poset, fam.ambient
    L = P.labels
    full = P.full
    obj: dict[int, Rep] = {}
    incl: dict[int, RepMor] = {}
    for s in P.ssets:
        if s == full:
            obj[s], incl[s] = X, qc.identity(X)
        elif s == 0:
            z = Rep._make(X.quiver, X.p, [0] * len(X.dims), [la.Matrix.zeros(X.p, 0, 0)] * len(X.mats), check=False)
            obj[s], incl[s] = z, qc.zero_mor(z, X)
        else:
            obj[s], incl[s] = fam.table[L(s)].as_rep()

    sset = set(P.ssets)
    iotas: dict[tuple[int, int], RepMor] = {}

    def iota(j: int, k: int) -> RepMor:
        got = iotas.get((j, k))
        if got is None:
            if j == k:
                got = qc.identity(obj[j])
            elif k == full:
                got = incl[j]
            else:
                got = qc.factor_through_mono(incl[k], incl[j])
            iotas[(j, k)] = got
        return got

    # p_F : sigma(top F) -> sigma(F), the cokernel of iota(base F, top F)
    proj: dict[int, RepMor] = {}
    for f in P.fsets:
        top = P.top_sset(f)
        base = top & ~f
        if f == top:
            proj[f] = qc.identity(obj[f])
        elif f in sset:
            proj[f] = _projection_onto(iota(base, top), iota(f, top))
        else:
            obj[f], proj[f] = qc.cokernel(iota(base, top))

    pis: dict[tuple[int, int], RepMor] = {}

    def pi(j: int, l: int) -> RepMor:
        got = pis.get((j, l))
        if got is None:
            if j in sset:
                got = qc.compose(proj[l], iota(j, P.top_sset(l)))
            else:
                got = qc.factor_through_epi(proj[j], pi(P.top_sset(j), l))
            pis[(j, l)] = got
        return got

    for j, l in P.H_pairs:
        pi(j, l)

    for j, k in P.G_pairs:
        if k in sset:
            iota(j, k)
            continue
        top = P.top_sset(k)
        b = (top & ~k) | j
        rhs = qc.compose(proj[k], iota(b, top))
        iotas[(j, k)] = qc.factor_through_epi(pi(b, j), rhs)

    return Configuration(
        P,
        {L(f): obj[f] for f in P.fsets},
        {(L(j), L(k)): iotas[(j, k)] for j, k in P.G_pairs},
        {(L(j), L(k)): pis[(j, k)] for j, k in P.H_pairs},
    )


def build_from_filtration(x: Rep, filtration: list[SubobjectCF]) -> Configuration:
    """Configuration on the chain 1 < ... < n from 0 = A_0 <= A_1 <= ... <= A_n = X."""
    n = len(filtration) - 1
    if n < 1:
        raise NotAChain("a filtration needs at least A_0 and A_1")
    for k in range(n):
        if not filtration[k + 1].contains(filtration[k]):
            raise NotAChain(f"A_{k} is not contained in A_{k + 1}")
    labels = [str(k) for k in range(1, n + 1)]
    P = chain(labels)
    table = {frozenset(labels[:k]): filtration[k] for k in range(n + 1)}
    return build_from_subobjects(SubobjectFamily(x, P, table))


def extract_subobjects(c: Configuration) -> SubobjectFamily:
    """S^J = image of iota(J, I) for each s-set J; the result is checked against the family axioms."""
    P = c.poset
    full = P.labels(P.full)
    table = {P.labels(s): SubobjectCF.image_of(c.iota(P.labels(s), full)) for s in P.ssets}
    fam = SubobjectFamily(c.top, P, table)
    check_family(fam)
    return fam


def additivity_failures(c: Configuration) -> list[frozenset]:
    """f-sets F whose dimension vector is not the sum of those of the singletons in F."""
    P = c.poset
    singles = {e: c.sigma([e]).dims for e in P.elements}
    bad = []
    for f in P.fsets:
        labels = P.labels(f)
        total = [0] * len(c.top.dims)
        for e in labels:
            total = [a + b for a, b in zip(total, singles[e])]
        if tuple(total) != c.objects[labels].dims:
            bad.append(labels)
    return bad


def kappa(c: Configuration) -> dict:
    """Dimension vector of sigma({i}) for each element i."""
    bad = additivity_failures(c)
    if bad:
        raise ConfigError(f"dimension vectors are not additive on {[fmt(b) for b in bad]}")
    return {e: c.sigma([e]).dim_vector() for e in c.poset.elements}


def subconfiguration(c: Configuration, subset) -> Configuration:
    P = c.poset
    m = P.mask(subset)
    if not P.is_fset(m):
        raise NotAnFSet(f"{fmt(P.labels(m))} is not an f-set")
    Q = P.restrict(m)
    L = Q.labels
    return Configuration(
        Q,
        {L(f): c.objects[L(f)] for f in Q.fsets},
        {(L(j), L(k)): c.iotas[(L(j), L(k))] for j, k in Q.G_pairs},
        {(L(j), L(k)): c.pis[(L(j), L(k))] for j, k in Q.H_pairs},
    )


def _check_quotient_map(source: FinitePoset, target: FinitePoset, phi: Mapping) -> dict:
    phi = {str(k): str(v) for k, v in phi.items()}
    if set(phi) != set(source.elements):
        raise PosetMismatch("the map must be defined on exactly the elements of the source poset")
    for v in phi.values():
        target.index(v)
    if set(phi.values()) != set(target.elements):
        raise NotSurjective("the map is not surjective")
    for a, b in source.pairs():
        if not target.leq(phi[a], phi[b]):
            raise NotMonotone(f"{a} <= {b} but {phi[a]} is not below {phi[b]}")
    return phi


def quotient_configuration(c: Configuration, target: FinitePoset, phi: Mapping) -> Configuration:
    """The target-poset configuration with sigma~(A) = sigma(phi^-1(A)) and likewise for iota, pi."""
    P = c.poset
    phi = _check_quotient_map(P, target, phi)
    pre_cache: dict[int, frozenset] = {}

    def pre(mask: int) -> frozenset:
        got = pre_cache.get(mask)
        if got is None:
            labels = target.labels(mask)
            got = frozenset(e for e in P.elements if phi[e] in labels)
            if not P.is_fset(got):
                raise NotAnFSet(f"preimage of {fmt(labels)} is not an f-set")
            pre_cache[mask] = got
        return got

    L = target.labels
    return Configuration(
        target,
        {L(f): c.objects[pre(f)] for f in target.fsets},
        {(L(j), L(k)): c.iotas[(pre(j), pre(k))] for j, k in target.G_pairs},
        {(L(j), L(k)): c.pis[(pre(j), pre(k))] for j, k in target.H_pairs},
    )


# morphisms of configurations


@dataclass(frozen=True, eq=False)
class ConfigMorphism:
    source: Configuration
    target: Configuration
    alphas: Mapping[Key, RepMor]

    def __post_init__(self):
        object.__setattr__(self, "alphas", MappingProxyType({_key(k): v for k, v in self.alphas.items()}))

    def __getitem__(self, subset) -> RepMor:
        return self.alphas[_key(subset)]

    def is_isomorphism(self) -> bool:
        return all(qc.is_iso(a) for a in self.alphas.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConfigMorphism):
            return NotImplemented
        return dict(self.alphas) == dict(other.alphas) and self.source == other.source and self.target == other.target

    __hash__ = None


def check_config_morphism(m: ConfigMorphism) -> list[Violation]:
    """Every compatibility square with the iotas and pis, checked by exact equality."""
    c1, c2 = m.source, m.target
    if c1.poset != c2.poset:
        raise PosetMismatch("configuration morphisms need a common poset")
    P = c1.poset
    L = P.labels
    out: list[Violation] = []
    ok = {}
    for f in P.fsets:
        k = L(f)
        a = m.alphas.get(k)
        if a is None:
            raise MissingEntry(f"no component for {fmt(k)}")
        ok[f] = a.source == c1.objects[k] and a.target == c2.objects[k]
        if not ok[f]:
            out.append(Violation("morphism", (k,), "component has the wrong source or target"))
    for j, k in P.G_pairs:
        if ok[j] and ok[k]:
            lhs = qc.compose(m.alphas[L(k)], c1.iotas[(L(j), L(k))])
            rhs = qc.compose(c2.iotas[(L(j), L(k))], m.alphas[L(j)])
            if lhs != rhs:
                out.append(Violation("morphism-G", (L(j), L(k)), "iota square does not commute"))
    for j, k in P.H_pairs:
        if ok[j] and ok[k]:
            lhs = qc.compose(m.alphas[L(k)], c1.pis[(L(j), L(k))])
            rhs = qc.compose(c2.pis[(L(j), L(k))], m.alphas[L(j)])
            if lhs != rhs:
                out.append(Violation("morphism-H", (L(j), L(k)), "pi square does not commute"))
    return out


def identity_morphism(c: Configuration) -> ConfigMorphism:
    return ConfigMorphism(c, c, {k: qc.identity(v) for k, v in c.objects.items()})


def inverse_morphism(m: ConfigMorphism) -> ConfigMorphism:
    return ConfigMorphism(m.target, m.source, {k: qc.inverse(a) for k, a in m.alphas.items()})


def induced_morphism(c1: Configuration, c2: Configuration, g_top: RepMor) -> ConfigMorphism:
    """The unique morphism c1 -> c2 with the given top component.

    s-set components factor through iota(S, I) of c2; every other f-set F
    factors through the epimorphism pi(top F, F) of c1. Raises NoSolution when
    ``g_top`` does not carry the subobjects of c1 onto those of c2.
    """
    if c1.poset != c2.poset:
        raise PosetMismatch("configurations on different posets")
    P = c1.poset
    L = P.labels
    full = L(P.full)
    alphas: dict[int, RepMor] = {}
    for s in P.ssets:
        if s == P.full:
            alphas[s] = g_top
        else:
            alphas[s] = qc.factor_through_mono(c2.iota(L(s), full), qc.compose(g_top, c1.iota(L(s), full)))
    sset = set(P.ssets)
    for f in P.fsets:
        if f in sset:
            continue
        top = P.top_sset(f)
        h = qc.compose(c2.pi(L(top), L(f)), alphas[top])
        alphas[f] = qc.factor_through_epi(c1.pi(L(top), L(f)), h)
    return ConfigMorphism(c1, c2, {L(f): a for f, a in alphas.items()})


def transport(c: Configuration, gammas: Mapping[Key, RepMor]) -> tuple[Configuration, ConfigMorphism]:
    """Replace each sigma(J) by the target of the isomorphism gammas[J], conjugating iota and pi.

    Missing components default to identities. Returns the new configuration and
    the isomorphism from ``c`` to it.
    """
    P = c.poset
    gam = {k: gammas.get(k) or qc.identity(v) for k, v in c.objects.items()}
    inv = {k: qc.inverse(g) for k, g in gam.items()}
    objects = {k: g.target for k, g in gam.items()}
    iotas = {(a, b): qc.compose(gam[b], qc.compose(m, inv[a])) for (a, b), m in c.iotas.items()}
    pis = {(a, b): qc.compose(gam[b], qc.compose(m, inv[a])) for (a, b), m in c.pis.items()}
    new = Configuration(P, objects, iotas, pis)
    return new, ConfigMorphism(c, new, gam)


# substitution


def _gluing_pieces(outer: Configuration, inner: Configuration, spec: GluingSpec):
    if outer.poset != spec.ambient_poset:
        raise PosetMismatch("outer configuration is not on the ambient poset of the gluing")
    if inner.poset != spec.sub_poset:
        raise PosetMismatch("inner configuration is not on the sub-poset of the gluing")
    K = spec.ambient_poset
    Lmask = K.mask(spec.glue_fset)
    Lposet = K.restrict(Lmask)
    hat = quotient_configuration(inner, Lposet, spec.psi)
    check = subconfiguration(outer, Lposet.elements)
    return Lposet, hat, check


def substitute(
    outer: Configuration,
    inner: Configuration,
    spec: GluingSpec,
    alpha: ConfigMorphism | None = None,
) -> tuple[Configuration, ConfigMorphism, ConfigMorphism]:
    """Glue ``inner`` into the f-set L of ``outer``.

    ``alpha`` is an isomorphism from the L-subconfiguration of ``outer`` to the
    psi-quotient of ``inner``; omit it when the two agree literally. Returns
    the glued configuration together with isomorphisms from its J-sub-
    configuration to ``inner`` and from its phi-quotient to ``outer``.
    """
    Lposet, hat, check = _gluing_pieces(outer, inner, spec)
    if alpha is None:
        if hat != check:
            for k in hat.objects:
                if hat.objects[k].dims != check.objects[k].dims:
                    raise GluingMismatch(f"dimension vectors differ at {fmt(k)}")
            raise GluingMismatch("the two L-configurations differ; pass an isomorphism between them")
        dot, beta = outer, identity_morphism(outer)
    else:
        if alpha.source != check or alpha.target != hat:
            for k in hat.objects:
                if hat.objects[k].dims != check.objects[k].dims:
                    raise GluingMismatch(f"dimension vectors differ at {fmt(k)}")
            raise GluingMismatch("alpha does not go from the outer L-subconfiguration to the inner quotient")
        if check_config_morphism(alpha) or not alpha.is_isomorphism():
            raise GluingMismatch("alpha is not an isomorphism of configurations")
        dot, beta = transport(outer, dict(alpha.alphas))

    I, phi = glue_posets(spec)
    K = spec.ambient_poset
    Jlab = set(spec.sub_poset.elements)
    glued = _glue(dot, inner, I, phi, K, Jlab)

    # witnesses for the raw result, then move it onto inner and dot literally
    quot = quotient_configuration(glued, K, phi)
    w = induced_morphism(quot, dot, qc.identity(dot.top))
    sub = subconfiguration(glued, sorted(Jlab))
    v = induced_morphism(sub, inner, w[Lposet.elements])
    gammas = {}
    for f in I.fsets:
        labels = I.labels(f)
        if labels <= Jlab:
            gammas[labels] = v[labels]
        else:
            image = frozenset(phi[e] for e in labels)
            # only full preimages of K f-sets appear in the quotient
            if K.is_fset(image) and frozenset(e for e in I.elements if phi[e] in image) == labels:
                gammas[labels] = w[image]
    result, _ = transport(glued, gammas)
    sub_witness = identity_morphism(subconfiguration(result, sorted(Jlab)))
    quot_witness = inverse_morphism(beta)
    quot_witness = ConfigMorphism(quotient_configuration(result, K, phi), outer, dict(quot_witness.alphas))
    return result, sub_witness, quot_witness


def _glue(tilde: Configuration, prime: Configuration, I: FinitePoset, phi: dict, K: FinitePoset, Jlab: set) -> Configuration:
    X = tilde.top
    KL = K.labels
    Kfull = KL(K.full)
    table = {}
    for b in I.ssets:
        B = I.labels(b)
        P = frozenset(k for k in K.elements if all(e in B for e in I.elements if K.leq(phi[e], k)))
        R = frozenset(k for k in K.elements if any(K.leq(k, phi[e]) for e in B))
        C = frozenset(e for e in I.elements if phi[e] in R)
        if B == C:
            into_top = tilde.iota(R, Kfull)
        else:
            A = frozenset(e for e in I.elements if phi[e] in P)
            D, E, F = A & Jlab, B & Jlab, C & Jlab
            h = qc.compose(prime.pi(F - D, F - E), tilde.pi(R, R - P))
            _, k = qc.kernel(h)
            into_top = qc.compose(tilde.iota(R, Kfull), k)
        table[B] = SubobjectCF.image_of(into_top)
    return build_from_subobjects(SubobjectFamily(X, I, table))
