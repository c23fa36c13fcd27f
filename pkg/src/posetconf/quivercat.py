"""Representations of a quiver with relations over F_p.

This is the concrete abelian category that configurations live in: objects are
:class:`Rep`, morphisms are :class:`RepMor`, and subobjects are stored as
:class:`SubobjectCF`, one canonical column basis per vertex.

A path in a relation is a sequence of arrow names in traversal order, so
``["a", "b"]`` means first ``a`` then ``b`` and evaluates to ``rho_b @ rho_a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import exactla as la
from .errors import (
    CompositionMismatch,
    DimensionMismatch,
    IncompatibleOrder,
    NoSolution,
    NotIntertwining,
    NotMultiplicityFree,
    NotNilpotent,
    NotSplit,
    QuiverMismatch,
    RelationViolated,
    ShapeMismatch,
    AmbientMismatch,
)
from .exactla import FieldSpec, Matrix
from .poset import FinitePoset, validate_poset


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """Vertices, arrows and relations; each relation is a tuple of (coefficient, path) terms."""

    vertices: tuple
    arrows: tuple = ()
    relations: tuple = ()

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise ShapeMismatch("duplicate vertex labels")
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*(str(x) for x in a)) for a in self.arrows)
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise ShapeMismatch("duplicate arrow names")
        vset = set(verts)
        for a in arrows:
            if a.source not in vset or a.target not in vset:
                raise ShapeMismatch(f"arrow {a.name} has an undeclared endpoint")
        by_name = {a.name: a for a in arrows}
        rels = []
        for k, rel in enumerate(self.relations):
            terms = []
            ends = set()
            for coef, path in rel:
                path = tuple(str(x) for x in path)
                if len(path) < 2:
                    raise ShapeMismatch(f"relation {k} has a path of length < 2")
                for x in path:
                    if x not in by_name:
                        raise ShapeMismatch(f"relation {k} uses unknown arrow {x}")
                for first, second in zip(path, path[1:]):
                    if by_name[first].target != by_name[second].source:
                        raise ShapeMismatch(f"relation {k}: path {list(path)} is not composable")
                ends.add((by_name[path[0]].source, by_name[path[-1]].target))
                terms.append((int(coef), path))
            if len(ends) > 1:
                raise ShapeMismatch(f"relation {k}: paths do not share endpoints")
            rels.append(tuple(terms))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "relations", tuple(rels))
        object.__setattr__(self, "_vindex", {v: k for k, v in enumerate(verts)})
        object.__setattr__(self, "_aindex", {a.name: k for k, a in enumerate(arrows)})

    def vertex_index(self, v) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise ShapeMismatch(f"unknown vertex {v!r}") from None

    def arrow_index(self, a) -> int:
        try:
            return self._aindex[a]
        except KeyError:
            raise ShapeMismatch(f"unknown arrow {a!r}") from None

    def arrow(self, name) -> Arrow:
        return self.arrows[self.arrow_index(name)]

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.arrows],
            "relations": [[[c, list(path)] for c, path in rel] for rel in self.relations],
        }


def _prime(field) -> int:
    if isinstance(field, FieldSpec):
        return field.p
    return FieldSpec(int(field)).p


class Rep:
    """A representation (X, rho): a dimension per vertex and a matrix per arrow.

    Shapes and relations are checked at construction, so an invalid Rep cannot exist.
    """

    __slots__ = ("quiver", "p", "dims", "mats", "_hash")

    def __init__(self, quiver: Quiver, field, dims: Mapping, mats: Mapping | None = None):
        p = _prime(field)
        dims_t = []
        for v in quiver.vertices:
            d = int(dims.get(v, 0))
            if d < 0:
                raise ShapeMismatch(f"negative dimension at {v}")
            dims_t.append(d)
        unknown = set(dims) - set(quiver.vertices)
        if unknown:
            raise ShapeMismatch(f"dimensions given for unknown vertices {sorted(unknown)}")
        mats = dict(mats or {})
        unknown = set(mats) - {a.name for a in quiver.arrows}
        if unknown:
            raise ShapeMismatch(f"matrices given for unknown arrows {sorted(unknown)}")
        mats_t = []
        for a in quiver.arrows:
            r, c = dims_t[quiver.vertex_index(a.target)], dims_t[quiver.vertex_index(a.source)]
            m = mats.get(a.name)
            if m is None:
                m = Matrix.zeros(p, r, c)
            elif not isinstance(m, Matrix):
                rows = [list(row) for row in m]
                if len(rows) != r or any(len(row) != c for row in rows):
                    raise ShapeMismatch(f"arrow {a.name} needs a {r}x{c} matrix")
                m = Matrix(p, rows, shape=(r, c))
            elif m.p != p:
                raise ShapeMismatch(f"arrow {a.name} matrix is over F_{m.p}, not F_{p}")
            if m.shape != (r, c):
                raise ShapeMismatch(f"arrow {a.name} needs a {r}x{c} matrix, got {m.rows}x{m.cols}")
            mats_t.append(m)
        self._init(quiver, p, tuple(dims_t), tuple(mats_t))
        validate_rep(self)

    def _init(self, quiver, p, dims, mats):
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mats", mats)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, quiver: Quiver, p: int, dims: tuple, mats: tuple, check: bool = True) -> "Rep":
        r = cls.__new__(cls)
        r._init(quiver, p, tuple(dims), tuple(mats))
        if check:
            validate_rep(r)
        return r

    def __setattr__(self, name, value):
        raise AttributeError("Rep is immutable")

    @classmethod
    def zero(cls, quiver: Quiver, field) -> "Rep":
        return cls(quiver, field, {})

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.p)

    def dim(self, v) -> int:
        return self.dims[self.quiver.vertex_index(v)]

    def mat(self, a) -> Matrix:
        return self.mats[self.quiver.arrow_index(a)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> dict:
        return dict(zip(self.quiver.vertices, self.dims))

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, path: Sequence[str]) -> Matrix:
        q = self.quiver
        first = q.arrow(path[0])
        out = Matrix.identity(self.p, self.dim(first.source))
        for name in path:
            out = self.mat(name) @ out
        return out

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Rep):
            return NotImplemented
        return self.p == other.p and self.dims == other.dims and self.mats == other.mats and self.quiver == other.quiver

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.p, self.dims, self.mats)))
        return self._hash

    def __repr__(self) -> str:
        return f"Rep(p={self.p}, dims={self.dim_vector()}, mats={ {a.name: m.tolist() for a, m in zip(self.quiver.arrows, self.mats)} })"


def validate_rep(r: Rep) -> None:
    """Raise ShapeMismatch or RelationViolated if ``r`` is not a representation of its quiver."""
    q = r.quiver
    if len(r.dims) != len(q.vertices) or len(r.mats) != len(q.arrows):
        raise ShapeMismatch("dimension or matrix count does not match the quiver")
    for a, m in zip(q.arrows, r.mats):
        want = (r.dim(a.target), r.dim(a.source))
        if m.shape != want:
            raise ShapeMismatch(f"arrow {a.name} needs a {want[0]}x{want[1]} matrix, got {m.rows}x{m.cols}")
    for k, rel in enumerate(q.relations):
        total = None
        for coef, path in rel:
            term = r.path_matrix(path).scale(coef)
            total = term if total is None else total + term
        if total is not None and not total.is_zero():
            raise RelationViolated(k)


def dim_vector(r: Rep) -> dict:
    return r.dim_vector()


def simple(quiver: Quiver, field, v) -> Rep:
    return Rep(quiver, field, {v: 1})


def _same_category(x: Rep, y: Rep) -> None:
    if x.quiver != y.quiver or x.p != y.p:
        raise QuiverMismatch("representations of different quivers or fields")


class RepMor:
    """A morphism of representations: one matrix per vertex, intertwining the arrows."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: Rep, target: Rep, mats, check: bool = True):
        _same_category(source, target)
        q = source.quiver
        if isinstance(mats, Mapping):
            unknown = set(mats) - set(q.vertices)
            if unknown:
                raise ShapeMismatch(f"matrices given for unknown vertices {sorted(unknown)}")
            mats = [mats.get(v) for v in q.vertices]
        mats_t = []
        for k, (v, m) in enumerate(zip(q.vertices, mats)):
            shape = (target.dims[k], source.dims[k])
            if m is None:
                m = Matrix.zeros(source.p, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix(source.p, m, shape=shape)
            if m.shape != shape:
                raise ShapeMismatch(f"vertex {v} needs a {shape[0]}x{shape[1]} matrix, got {m.rows}x{m.cols}")
            mats_t.append(m)
        if len(mats_t) != len(q.vertices):
            raise ShapeMismatch("one matrix per vertex is required")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "mats", tuple(mats_t))
        if check:
            self.check()

    def __setattr__(self, name, value):
        raise AttributeError("RepMor is immutable")

    def check(self) -> None:
        q = self.source.quiver
        for a, rho, sig in zip(q.arrows, self.source.mats, self.target.mats):
            b, e = q.vertex_index(a.source), q.vertex_index(a.target)
            if self.mats[e] @ rho != sig @ self.mats[b]:
                raise NotIntertwining(f"square for arrow {a.name} does not commute")

    def mat(self, v) -> Matrix:
        return self.mats[self.source.quiver.vertex_index(v)]

    @property
    def p(self) -> int:
        return self.source.p

    def _same_ends(self, other: "RepMor") -> None:
        if self.source != other.source or self.target != other.target:
            raise CompositionMismatch("morphisms have different sources or targets")

    def __add__(self, other: "RepMor") -> "RepMor":
        self._same_ends(other)
        return RepMor(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)], check=False)

    def __sub__(self, other: "RepMor") -> "RepMor":
        self._same_ends(other)
        return RepMor(self.source, self.target, [a - b for a, b in zip(self.mats, other.mats)], check=False)

    def __neg__(self) -> "RepMor":
        return RepMor(self.source, self.target, [-a for a in self.mats], check=False)

    def scale(self, c: int) -> "RepMor":
        return RepMor(self.source, self.target, [a.scale(c) for a in self.mats], check=False)

    def __matmul__(self, other: "RepMor") -> "RepMor":
        return compose(self, other)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMor):
            return NotImplemented
        return self.mats == other.mats and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.mats)

    def __repr__(self) -> str:
        q = self.source.quiver
        return f"RepMor({ {v: m.tolist() for v, m in zip(q.vertices, self.mats)} })"


def compose(g: RepMor, f: RepMor) -> RepMor:
    """g after f."""
    if f.target is not g.source and f.target != g.source:
        raise CompositionMismatch("target of f is not the source of g")
    return RepMor(f.source, g.target, [a @ b for a, b in zip(g.mats, f.mats)], check=False)


def identity(x: Rep) -> RepMor:
    return RepMor(x, x, [Matrix.identity(x.p, d) for d in x.dims], check=False)


def zero_mor(x: Rep, y: Rep) -> RepMor:
    _same_category(x, y)
    return RepMor(x, y, [Matrix.zeros(x.p, dy, dx) for dx, dy in zip(x.dims, y.dims)], check=False)


def is_injective(f: RepMor) -> bool:
    return all(la.rank(m) == m.cols for m in f.mats)


def is_surjective(f: RepMor) -> bool:
    return all(la.rank(m) == m.rows for m in f.mats)


def is_iso(f: RepMor) -> bool:
    return all(m.rows == m.cols and la.rank(m) == m.rows for m in f.mats)


def inverse(f: RepMor) -> RepMor:
    return RepMor(f.target, f.source, [la.inverse(m) for m in f.mats], check=False)


def factor_through_mono(m: RepMor, h: RepMor) -> RepMor:
    """The unique x with m o x = h, for m injective; NoSolution if h does not land in m."""
    if m.target != h.target:
        raise CompositionMismatch("factor_through_mono needs a common target")
    return RepMor(h.source, m.source, [la.solve(a, b) for a, b in zip(m.mats, h.mats)], check=False)


def factor_through_epi(e: RepMor, h: RepMor) -> RepMor:
    """The unique x with x o e = h, for e surjective; NoSolution if h does not kill ker e."""
    if e.source != h.source:
        raise CompositionMismatch("factor_through_epi needs a common source")
    return RepMor(e.target, h.target, [la.solve_left(a, b) for a, b in zip(e.mats, h.mats)], check=False)


# nilpotency


def is_nilpotent(r: Rep) -> bool:
    """True iff every product of m = dim X arrow matrices along a path vanishes.

    Tracks a basis of the span of all path operators of length k inside End(X),
    which avoids cancellation between different paths.
    """
    m = r.total_dim
    if m == 0 or not r.quiver.arrows:
        return True
    q = r.quiver
    offsets = np.concatenate([[0], np.cumsum(r.dims)]).astype(int)
    ops = []
    for a, rho in zip(q.arrows, r.mats):
        big = np.zeros((m, m), dtype=np.int64)
        b, e = q.vertex_index(a.source), q.vertex_index(a.target)
        big[offsets[e] : offsets[e + 1], offsets[b] : offsets[b + 1]] = rho.array
        ops.append(Matrix._wrap(r.p, big))
    span = _span_basis(r.p, [op.array.ravel() for op in ops], m * m)
    for _ in range(m - 1):
        if not span:
            return True
        vecs = [(op @ Matrix._wrap(r.p, w.reshape(m, m))).array.ravel() for op in ops for w in span]
        span = _span_basis(r.p, vecs, m * m)
    return not span


def _span_basis(p: int, vecs: list, length: int) -> list:
    if not vecs:
        return []
    a, pivots = la._rref_array(np.vstack(vecs), p)
    return [a[k] for k in range(len(pivots))]


# Hom spaces and retractions


def _intertwining_system(x: Rep, y: Rep) -> tuple[np.ndarray, list[int]]:
    """Rows of phi_e rho_a - sigma_a phi_b = 0 for unknown phi: x -> y, row-major per vertex."""
    q = x.quiver
    offsets = [0]
    for dx, dy in zip(x.dims, y.dims):
        offsets.append(offsets[-1] + dx * dy)
    n = offsets[-1]
    blocks = []
    for a, rho, sig in zip(q.arrows, x.mats, y.mats):
        b, e = q.vertex_index(a.source), q.vertex_index(a.target)
        nrows = y.dims[e] * x.dims[b]
        if nrows == 0:
            continue
        block = np.zeros((nrows, n), dtype=np.int64)
        if x.dims[e] * y.dims[e]:
            block[:, offsets[e] : offsets[e + 1]] += np.kron(np.eye(y.dims[e], dtype=np.int64), rho.array.T)
        if x.dims[b] * y.dims[b]:
            block[:, offsets[b] : offsets[b + 1]] -= np.kron(sig.array, np.eye(x.dims[b], dtype=np.int64))
        blocks.append(block % x.p)
    system = np.vstack(blocks) if blocks else np.zeros((0, n), dtype=np.int64)
    return system, offsets


def _unpack(x: Rep, y: Rep, vec: np.ndarray, offsets: list[int]) -> RepMor:
    mats = []
    for k, (dx, dy) in enumerate(zip(x.dims, y.dims)):
        mats.append(Matrix._wrap(x.p, vec[offsets[k] : offsets[k + 1]].reshape(dy, dx).copy()))
    return RepMor(x, y, mats, check=False)


def hom_space(x: Rep, y: Rep) -> list[RepMor]:
    """Canonical basis of Hom(x, y), in kernel-basis order."""
    _same_category(x, y)
    system, offsets = _intertwining_system(x, y)
    basis = la.kernel_basis(Matrix._wrap(x.p, system))
    return [_unpack(x, y, basis.array[:, t], offsets) for t in range(basis.cols)]


def hom_element(basis: Sequence[RepMor], coeffs: Sequence[int], x: Rep | None = None, y: Rep | None = None) -> RepMor:
    if not basis:
        if x is None or y is None:
            raise DimensionMismatch("empty basis needs explicit source and target")
        return zero_mor(x, y)
    out = zero_mor(basis[0].source, basis[0].target)
    for c, b in zip(coeffs, basis):
        if c % out.p:
            out = out + b.scale(c)
    return out


def retraction(iota: RepMor) -> RepMor:
    """Canonical r with r o iota = id (free parameters zero); NotSplit if none exists."""
    x, y = iota.source, iota.target
    system, offsets = _intertwining_system(y, x)
    n = offsets[-1]
    rows = [system]
    rhs = [np.zeros((system.shape[0], 1), dtype=np.int64)]
    for k, (dx, dy) in enumerate(zip(x.dims, y.dims)):
        if dx == 0:
            continue
        block = np.zeros((dx * dx, n), dtype=np.int64)
        if dy:
            block[:, offsets[k] : offsets[k + 1]] = np.kron(np.eye(dx, dtype=np.int64), iota.mats[k].array.T)
        rows.append(block)
        rhs.append(np.eye(dx, dtype=np.int64).reshape(-1, 1))
    a = Matrix._wrap(x.p, np.vstack(rows))
    b = Matrix._wrap(x.p, np.vstack(rhs))
    try:
        sol = la.solve(a, b)
    except NoSolution:
        raise NotSplit("the sequence does not split") from None
    return _unpack(y, x, sol.array[:, 0], offsets)


class _Undecided:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDECIDED"

    def __bool__(self) -> bool:
        raise TypeError("UNDECIDED has no truth value")


UNDECIDED = _Undecided()


def is_isomorphic(x: Rep, y: Rep, bound: int = 10**6):
    """True, False, or UNDECIDED when the Hom space is too large to search exhaustively."""
    _same_category(x, y)
    if x.dims != y.dims:
        return False
    if x.total_dim == 0:
        return True
    basis = hom_space(x, y)
    if x.p ** len(basis) > bound:
        return UNDECIDED
    for coeffs in itertools.product(range(x.p), repeat=len(basis)):
        if is_iso(hom_element(basis, coeffs, x, y)):
            return True
    return False


# kernels, cokernels, images, sums


def kernel(f: RepMor) -> tuple[Rep, RepMor]:
    x = f.source
    q = x.quiver
    ks = [la.kernel_basis(m) for m in f.mats]
    mats = []
    for a, rho in zip(q.arrows, x.mats):
        b, e = q.vertex_index(a.source), q.vertex_index(a.target)
        mats.append(la.solve(ks[e], rho @ ks[b]))
    k_rep = Rep._make(q, x.p, [m.cols for m in ks], mats, check=False)
    return k_rep, RepMor(k_rep, x, ks, check=False)


def cokernel(f: RepMor) -> tuple[Rep, RepMor]:
    """Cokernel with c_v the canonical basis of the left null space of f_v (as rows)."""
    y = f.target
    q = y.quiver
    cs = [la.kernel_basis(m.T).T for m in f.mats]
    mats = []
    for a, sig in zip(q.arrows, y.mats):
        b, e = q.vertex_index(a.source), q.vertex_index(a.target)
        mats.append(la.solve_left(cs[b], cs[e] @ sig))
    c_rep = Rep._make(q, y.p, [m.rows for m in cs], mats, check=False)
    return c_rep, RepMor(y, c_rep, cs, check=False)


@dataclass(frozen=True)
class ImageFactorization:
    """K -k-> X -i-> I -j-> Y -c-> C with j o i = f."""

    K: Rep
    k: RepMor
    I: Rep
    i: RepMor
    j: RepMor
    C: Rep
    c: RepMor


def image_factorization(f: RepMor) -> ImageFactorization:
    x, y = f.source, f.target
    q = x.quiver
    js = [la.column_space(m) for m in f.mats]
    mats = []
    for a, sig in zip(q.arrows, y.mats):
        b, e = q.vertex_index(a.source), q.vertex_index(a.target)
        mats.append(la.solve(js[e], sig @ js[b]))
    im = Rep._make(q, x.p, [m.cols for m in js], mats, check=False)
    i = RepMor(x, im, [la.solve(jm, fm) for jm, fm in zip(js, f.mats)], check=False)
    j = RepMor(im, y, js, check=False)
    K, k = kernel(f)
    C, c = cokernel(f)
    return ImageFactorization(K, k, im, i, j, C, c)


@dataclass(frozen=True)
class DirectSum:
    Z: Rep
    iota_x: RepMor
    iota_y: RepMor
    pi_x: RepMor
    pi_y: RepMor

    def __iter__(self):
        return iter((self.Z, self.iota_x, self.iota_y, self.pi_x, self.pi_y))


def direct_sum(x: Rep, y: Rep) -> DirectSum:
    _same_category(x, y)
    p, q = x.p, x.quiver
    dims = [a + b for a, b in zip(x.dims, y.dims)]
    mats = [la.block_diag(p, [mx, my]) for mx, my in zip(x.mats, y.mats)]
    z = Rep._make(q, p, dims, mats, check=False)
    ix, iy, px, py = [], [], [], []
    for dx, dy in zip(x.dims, y.dims):
        ix.append(Matrix.identity(p, dx).vstack(Matrix.zeros(p, dy, dx)))
        iy.append(Matrix.zeros(p, dx, dy).vstack(Matrix.identity(p, dy)))
        px.append(Matrix.identity(p, dx).hstack(Matrix.zeros(p, dx, dy)))
        py.append(Matrix.zeros(p, dy, dx).hstack(Matrix.identity(p, dy)))
    return DirectSum(
        z,
        RepMor(x, z, ix, check=False),
        RepMor(y, z, iy, check=False),
        RepMor(z, x, px, check=False),
        RepMor(z, y, py, check=False),
    )


# subobjects


class SubobjectCF:
    """A subrepresentation of ``ambient`` given by canonical column bases per vertex."""

    __slots__ = ("ambient", "bases")

    def __init__(self, ambient: Rep, bases, check: bool = True):
        q = ambient.quiver
        if isinstance(bases, Mapping):
            bases = [bases.get(v) for v in q.vertices]
        canon = []
        for d, b in zip(ambient.dims, bases):
            if b is None:
                b = Matrix.zeros(ambient.p, d, 0)
            elif not isinstance(b, Matrix):
                rows = [list(r) for r in b]
                b = Matrix(ambient.p, rows, shape=(d, len(rows[0]) if rows else 0))
            if b.rows != d:
                raise AmbientMismatch(f"basis has {b.rows} rows, ambient dimension is {d}")
            canon.append(la.column_space(b))
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "bases", tuple(canon))
        if check:
            for a, rho in zip(q.arrows, ambient.mats):
                b, e = q.vertex_index(a.source), q.vertex_index(a.target)
                ue = self.bases[e]
                if la.rank(ue.hstack(rho @ self.bases[b])) != ue.cols:
                    raise NotIntertwining(f"subspace is not closed under arrow {a.name}")

    @classmethod
    def _canonical(cls, ambient: Rep, bases) -> "SubobjectCF":
        s = cls.__new__(cls)
        object.__setattr__(s, "ambient", ambient)
        object.__setattr__(s, "bases", tuple(bases))
        return s

    def __setattr__(self, name, value):
        raise AttributeError("SubobjectCF is immutable")

    @classmethod
    def zero(cls, x: Rep) -> "SubobjectCF":
        return cls._canonical(x, [Matrix.zeros(x.p, d, 0) for d in x.dims])

    @classmethod
    def full(cls, x: Rep) -> "SubobjectCF":
        return cls._canonical(x, [Matrix.identity(x.p, d) for d in x.dims])

    @classmethod
    def image_of(cls, f: RepMor) -> "SubobjectCF":
        return cls._canonical(f.target, [la.column_space(m) for m in f.mats])

    def dims(self) -> tuple[int, ...]:
        return tuple(b.cols for b in self.bases)

    def dim_vector(self) -> dict:
        return dict(zip(self.ambient.quiver.vertices, self.dims()))

    def basis(self, v) -> Matrix:
        return self.bases[self.ambient.quiver.vertex_index(v)]

    def as_rep(self) -> tuple[Rep, RepMor]:
        """The subobject as a representation together with its inclusion into the ambient."""
        x = self.ambient
        q = x.quiver
        mats = []
        for a, rho in zip(q.arrows, x.mats):
            b, e = q.vertex_index(a.source), q.vertex_index(a.target)
            mats.append(la.solve(self.bases[e], rho @ self.bases[b]))
        s = Rep._make(q, x.p, self.dims(), mats, check=False)
        return s, RepMor(s, x, self.bases, check=False)

    def contains(self, other: "SubobjectCF") -> bool:
        if other.ambient != self.ambient:
            raise AmbientMismatch("subobjects of different objects")
        return all(la.rank(u.hstack(v)) == u.cols for u, v in zip(self.bases, other.bases))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubobjectCF):
            return NotImplemented
        return self.bases == other.bases and self.ambient == other.ambient

    def __hash__(self) -> int:
        return hash(self.bases)

    def __repr__(self) -> str:
        return f"SubobjectCF(dims={self.dim_vector()})"


def sub_meet_join(s: SubobjectCF, t: SubobjectCF) -> tuple[SubobjectCF, SubobjectCF]:
    if s.ambient != t.ambient:
        raise AmbientMismatch("subobjects of different objects")
    meets, joins = [], []
    for u, v in zip(s.bases, t.bases):
        m, j = la.subspace_meet_join(u, v)
        meets.append(m)
        joins.append(j)
    return SubobjectCF._canonical(s.ambient, meets), SubobjectCF._canonical(s.ambient, joins)


# Jordan-Hoelder data for multiplicity-free nilpotent representations


def support(x: Rep) -> list:
    return [v for v, d in zip(x.quiver.vertices, x.dims) if d]


def _check_multiplicity_free(x: Rep) -> None:
    if any(d > 1 for d in x.dims):
        raise NotMultiplicityFree("some vertex has dimension greater than 1")
    if not is_nilpotent(x):
        raise NotNilpotent("representation is not nilpotent")


def _closed_supports(x: Rep) -> tuple[list, list[int]]:
    q = x.quiver
    supp = support(x)
    pos = {v: k for k, v in enumerate(supp)}
    edges = []
    for a, rho in zip(q.arrows, x.mats):
        if rho.rows and rho.cols and not rho.is_zero():
            edges.append((pos[a.source], pos[a.target]))
    closed = []
    for m in range(1 << len(supp)):
        if all(not m >> b & 1 or m >> e & 1 for b, e in edges):
            closed.append(m)
    return supp, closed


def _coordinate_subobject(x: Rep, verts: Iterable) -> SubobjectCF:
    verts = set(verts)
    bases = [
        Matrix.identity(x.p, d) if v in verts else Matrix.zeros(x.p, d, 0)
        for v, d in zip(x.quiver.vertices, x.dims)
    ]
    return SubobjectCF._canonical(x, bases)


def enumerate_subobjects(x: Rep) -> list[SubobjectCF]:
    """All subrepresentations of a multiplicity-free nilpotent representation.

    Each is a set of support vertices closed under the nonzero arrows, ordered
    by bitmask over the support in vertex order.
    """
    _check_multiplicity_free(x)
    supp, closed = _closed_supports(x)
    return [_coordinate_subobject(x, [supp[i] for i in range(len(supp)) if m >> i & 1]) for m in closed]


def jh_poset(x: Rep) -> tuple[FinitePoset, dict]:
    """The order on supp(x) with i <= j iff every subobject containing j contains i,
    and the table sending each s-set (frozenset of vertices) to its subobject."""
    _check_multiplicity_free(x)
    supp, closed = _closed_supports(x)
    n = len(supp)
    pairs = []
    for j in range(n):
        below = (1 << n) - 1
        for m in closed:
            if m >> j & 1:
                below &= m
        pairs.extend((supp[i], supp[j]) for i in range(n) if below >> i & 1)
    P = validate_poset(supp, pairs)
    table = {}
    for m in closed:
        verts = frozenset(supp[i] for i in range(n) if m >> i & 1)
        table[verts] = _coordinate_subobject(x, verts)
    return P, table


def composition_series(x: Rep, total_order: FinitePoset) -> list[SubobjectCF]:
    """The chain 0 = B_0 < ... < B_n = x whose k-th term holds the bottom k elements."""
    P, table = jh_poset(x)
    if set(total_order.elements) != set(P.elements) or not total_order.is_total():
        raise IncompatibleOrder("order is not a total order on the support")
    for a, b in P.pairs():
        if not total_order.leq(a, b):
            raise IncompatibleOrder(f"order puts {b} below {a}, contradicting the subobject lattice")
    ordered = sorted(total_order.elements, key=lambda e: bin(total_order.down_mask(e)).count("1"))
    return [table[frozenset(ordered[:k])] for k in range(len(ordered) + 1)]
