"""Codimension-2 leaves, their slice quivers, and the Namikawa-Weyl group.

A leaf is labelled by a representation type: a list of ``(vector, mult)``
parts.  Imaginary parts always carry multiplicity 1 (equal imaginary parts
are listed as separate copies) and real parts are distinct simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cartan import AFFINE, CoxeterType, classify_cartan, classify_form
from .quiver import FramedProblem, Quiver, Vector, p_value, support, tits_pairing
from .sigma import (
    AFFINE_MULTIPLE,
    SIGMA0,
    DecompositionTable,
    Factor,
    InconsistencyError,
    StringDecomposition,
)


def vector_key(q: Quiver, u: Sequence[int]) -> tuple:
    """Height first, then vertex names: simple roots sort by name."""
    return (sum(u), tuple(-x for x in q.canonical_key(u)))


@dataclass(frozen=True)
class RepType:
    parts: tuple[tuple[Vector, int], ...]

    def total(self, n: int) -> Vector:
        out = [0] * n
        for vec, m in self.parts:
            for i, x in enumerate(vec):
                out[i] += m * x
        return tuple(out)

    def sorted(self, q: Quiver) -> "RepType":
        return RepType(tuple(sorted(self.parts, key=lambda p: (vector_key(q, p[0]), p[1]), reverse=True)))

    def key(self, q: Quiver) -> tuple:
        return tuple((vector_key(q, v), m) for v, m in self.sorted(q).parts)

    def contains_simple(self, i: int) -> bool:
        return any(sum(v) == 1 and v[i] == 1 for v, _ in self.parts)


@dataclass(frozen=True)
class LeafDescriptor:
    """A codimension-2 leaf of one factor, with its slice data.

    ``active`` holds the parts coming from the factor itself; ``rep_type``
    adds the padding parts from the rest of the decomposition.  Components
    are the nodes of the slice quiver, one per copy of an imaginary part and
    one per real part.  ``coordinates`` are the distinct components that
    survive deletion of ``deleted_node``.
    """

    kind: str  # "sigma0" | "affine-finite" | "affine-double"
    factor: int
    active: RepType
    rep_type: RepType
    components: tuple[Vector, ...]
    component_quiver: Quiver
    component_dims: Vector
    deleted_node: int
    coordinates: tuple[Vector, ...]
    folded_cartan: tuple[tuple[int, ...], ...]
    slice_type: CoxeterType
    warnings: tuple[str, ...] = ()

    def coordinate_of_simple(self, i: int) -> int | None:
        for a, u in enumerate(self.coordinates):
            if sum(u) == 1 and u[i] == 1:
                return a
        return None


def leaf_dimension(q: Quiver, tau: RepType) -> int:
    """2 * sum of p over the listed parts; multiplicities do not scale p."""
    return 2 * sum(p_value(q, v) for v, _ in tau.parts)


def _component_quiver(q: Quiver, comps: list[Vector]):
    n = len(comps)
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            e = -tits_pairing(q, comps[a], comps[b])
            if e < 0:
                return None
            mult[a][b] = mult[b][a] = e
    names = tuple(f"u{a}" for a in range(n))
    return Quiver(names, tuple(tuple(r) for r in mult))


def _fold(q: Quiver, comps: list[Vector], deleted: int):
    """Distinct surviving components and the folded Cartan matrix on them."""
    surviving = [a for a in range(len(comps)) if a != deleted]
    coords = sorted({comps[a] for a in surviving}, key=lambda u: vector_key(q, u))
    copies = {u: [a for a in surviving if comps[a] == u] for u in coords}
    cartan = []
    for ua in coords:
        rep = copies[ua][0]
        row = []
        for ub in coords:
            row.append(sum(2 if b == rep else tits_pairing(q, ua, comps[b]) for b in copies[ub]))
        cartan.append(tuple(row))
    return tuple(coords), tuple(cartan)


def _imaginary_multisets(members: list[Vector], target_p: int, bound: Vector, pvals: dict):
    """Multisets of members with total p equal to target_p and sum <= bound."""
    out = []

    def rec(start, chosen, remaining_p, room):
        if remaining_p == 0:
            out.append(list(chosen))
            return
        for k in range(start, len(members)):
            b = members[k]
            pb = pvals[b]
            if pb > remaining_p or any(x > r for x, r in zip(b, room)):
                continue
            chosen.append(b)
            rec(k, chosen, remaining_p - pb, tuple(r - x for r, x in zip(room, b)))
            chosen.pop()

    rec(0, [], target_p, bound)
    return out


def enumerate_codim2_leaves_sigma0(
    q: Quiver,
    a: Sequence[int],
    frame_vertex: int,
    table: DecompositionTable | None = None,
    factor: int = 0,
) -> list[LeafDescriptor]:
    """Codimension-2 leaves of the quiver variety of a Sigma_0 imaginary root ``a``."""
    a = tuple(a)
    if table is None or any(x > b for x, b in zip(a, table.bound)):
        table = DecompositionTable(q, a)
    if not table.in_sigma(a) or not table.root_class(a).is_imaginary:
        raise ValueError("leaf enumeration needs an imaginary root in Sigma_0")
    if a[frame_vertex] != 1:
        raise ValueError("frame vertex must carry coefficient 1")
    pa = p_value(q, a)
    members = sorted(
        (u for u in table.parts if table.root_class(u).is_imaginary and all(x <= y for x, y in zip(u, a)) and u != a and table.in_sigma(u)),
    )
    pvals = {u: p_value(q, u) for u in members}
    leaves = []
    for imag in _imaginary_multisets(members, pa - 1, a, pvals):
        rest = list(a)
        for b in imag:
            rest = [x - y for x, y in zip(rest, b)]
        imag = sorted(imag, key=lambda u: vector_key(q, u))
        reals = sorted(((q.simple_root(i), rest[i]) for i in support(rest)), key=lambda p: vector_key(q, p[0]))
        comps = list(imag) + [v for v, _ in reals]
        dims = tuple([1] * len(imag) + [m for _, m in reals])
        cq = _component_quiver(q, comps)
        if cq is None or len(comps) < 2:
            continue
        fc = classify_form(cq.cartan_matrix())
        if fc.kind != AFFINE or fc.delta != dims:
            continue
        active = RepType(tuple((b, 1) for b in imag) + tuple(reals))
        leaves.append(_package(q, "sigma0", factor, active, comps, cq, dims, frame_vertex))
    return sorted(leaves, key=lambda lf: lf.active.key(q))


def _package(q, kind, factor, active, comps, cq, dims, frame_vertex) -> LeafDescriptor:
    holders = [k for k, u in enumerate(comps) if u[frame_vertex]]
    if len(holders) != 1:
        raise InconsistencyError("frame vertex must lie in exactly one component")
    deleted = holders[0]
    warnings = []
    if kind == "sigma0" and sum(comps[deleted]) == 1:
        warnings.append(f"deleted component {q.vertices[frame_vertex]} is a real simple root")
    coords, cartan = _fold(q, comps, deleted)
    if any(cartan[k][k] != 2 for k in range(len(cartan))):
        raise InconsistencyError("folded Cartan matrix has a diagonal entry other than 2")
    slice_type = classify_cartan(cartan) if cartan else CoxeterType()
    if not slice_type.is_finite:
        raise InconsistencyError(f"slice of {active} is not of finite type")
    return LeafDescriptor(
        kind=kind,
        factor=factor,
        active=active.sorted(q),
        rep_type=active.sorted(q),
        components=tuple(comps),
        component_quiver=cq,
        component_dims=tuple(dims),
        deleted_node=deleted,
        coordinates=coords,
        folded_cartan=cartan,
        slice_type=slice_type,
        warnings=tuple(warnings),
    )


def _affine_leaves(q: Quiver, f: Factor, factor: int) -> list[LeafDescriptor]:
    d, m = f.delta, f.multiplicity
    supp = sorted(support(d), key=lambda i: vector_key(q, q.simple_root(i)))
    comps = [q.simple_root(i) for i in supp]
    dims = tuple(d[i] for i in supp)
    cq = _component_quiver(q, comps)
    finite = _package(q, "affine-finite", factor, RepType(tuple(zip(comps, dims))), comps, cq, dims, f.frame_vertex)
    finite = _with_padding(q, finite, [(d, 1)] * (m - 1))
    kron = Quiver(("u0", "u1"), ((0, 2), (2, 0)))
    double = LeafDescriptor(
        kind="affine-double",
        factor=factor,
        active=RepType(((d, 2),)),
        rep_type=RepType(((d, 2),)),
        components=(d, d),
        component_quiver=kron,
        component_dims=(1, 1),
        deleted_node=1,
        coordinates=(d,),
        folded_cartan=((2,),),
        slice_type=CoxeterType((("A", 1),)),
    )
    double = _with_padding(q, double, [(d, 1)] * (m - 2))
    return [finite, double]


def _with_padding(q: Quiver, leaf: LeafDescriptor, padding) -> LeafDescriptor:
    parts = leaf.rep_type.parts + tuple(padding)
    return LeafDescriptor(**{**leaf.__dict__, "rep_type": RepType(parts).sorted(q)})


def _padding_for(sd: StringDecomposition, skip: int) -> list[tuple[Vector, int]]:
    out = []
    for k, f in enumerate(sd.factors):
        if k == skip:
            continue
        if f.kind == AFFINE_MULTIPLE:
            out.extend([(f.delta, 1)] * f.multiplicity)
        else:
            out.append((f.vector, 1))
    return out


def enumerate_codim2_leaves_general(
    fp: FramedProblem,
    sd: StringDecomposition,
    table: DecompositionTable | None = None,
) -> list[LeafDescriptor]:
    q = fp.framed
    if table is None:
        table = DecompositionTable(q, fp.vtilde)
    n = len(q)
    connector_parts = [(q.simple_root(i), 1) for c in sd.connectors for i in c]
    out = []
    for k, f in enumerate(sd.factors):
        if f.kind == SIGMA0 and table.root_class(f.vector).is_imaginary:
            local = enumerate_codim2_leaves_sigma0(q, f.vector, f.frame_vertex, table, factor=k)
        elif f.kind == AFFINE_MULTIPLE:
            local = _affine_leaves(q, f, k)
        else:
            local = []
        pad = _padding_for(sd, k) + connector_parts
        out.extend(_with_padding(q, lf, pad) for lf in local)
    for lf in out:
        if lf.rep_type.total(n) != fp.vtilde:
            raise InconsistencyError("leaf representation type does not sum to v-tilde")
    return sorted(out, key=lambda lf: (lf.factor, lf.active.key(q)))


def assemble_namikawa_weyl(leaves: Sequence[LeafDescriptor]) -> CoxeterType:
    out = CoxeterType()
    for lf in leaves:
        out = out * lf.slice_type
    return out
