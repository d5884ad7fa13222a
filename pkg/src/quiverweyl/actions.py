"""The stabilizer W(v,w), the map iota, and the two actions on leaf Cartans.

Both actions are modelled on characters ``chi`` of Q_0: the quiver Weyl
group acts by the dual reflection formula, and a leaf sees a character
through its projection ``(chi . u)`` over the leaf coordinates ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cartan import CoxeterType, classify_cartan
from .leaves import LeafDescriptor
from .quiver import FramedProblem, Quiver, pair_simple, tits_pairing
from .sigma import StringDecomposition

Matrix = tuple  # tuple of row tuples

ORDER_CAP = 60
GROUP_CAP = 10000


class IotaError(ValueError):
    """An essential generator has no unique target leaf."""


@dataclass(frozen=True)
class GeneratorSet:
    """Vertices of Q_0 orthogonal to v-tilde, split by where they sit.

    Vertices outside the support of v-tilde with no neighbour in it act
    trivially everywhere; they are counted as irrelevant.
    """

    all: tuple[int, ...]
    irr: tuple[int, ...]
    ess: tuple[int, ...]


def wvw_generators(fp: FramedProblem, sd: StringDecomposition) -> GeneratorSet:
    q = fp.framed
    rank = {i: r for r, i in enumerate(q.name_order())}
    factor_support = {i for f in sd.factors for i in f.support}
    gens = sorted((j for j in fp.base_indices if pair_simple(q, fp.vtilde, j) == 0), key=rank.get)
    ess = tuple(j for j in gens if j in factor_support)
    irr = tuple(j for j in gens if j not in factor_support)
    return GeneratorSet(tuple(gens), irr, ess)


def wvw_type(fp: FramedProblem, gens: GeneratorSet) -> CoxeterType:
    if not gens.all:
        return CoxeterType()
    c = [[fp.base.cartan(i, j) for j in gens.all] for i in gens.all]
    return classify_cartan(c)


# ---------------------------------------------------------------------------
# characters and matrices


def dual_reflection(q: Quiver, j: int, chi: Sequence[int]) -> tuple[int, ...]:
    """chi'_k = chi_k - c_jk chi_j."""
    cj = chi[j]
    return tuple(x - q.cartan(j, k) * cj for k, x in enumerate(chi))


def project_character(leaf: LeafDescriptor, chi: Sequence[int]) -> tuple[int, ...]:
    """(chi . u) for each leaf coordinate u; entries of u beyond chi are ignored."""
    return tuple(sum(c * x for c, x in zip(chi, u)) for u in leaf.coordinates)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def leaf_reflection(q: Quiver, leaf: LeafDescriptor, j: int) -> tuple[Matrix, bool]:
    """Reflection at the alpha_j coordinate of a leaf, and whether alpha_j is one.

    (R u)_b = u_b - P(u_b, alpha_j) u_a with a the coordinate of alpha_j and
    P the Tits pairing of Q^inf.  Without such a coordinate R is the identity.
    """
    n = len(leaf.coordinates)
    a = leaf.coordinate_of_simple(j)
    if a is None:
        return identity(n), False
    alpha = q.simple_root(j)
    rows = [list(r) for r in identity(n)]
    for b, u in enumerate(leaf.coordinates):
        rows[b][a] -= tits_pairing(q, u, alpha)
    return tuple(tuple(r) for r in rows), True


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - len(r)))
        off += len(b)
    return tuple(rows)


def matrix_order(m: Matrix, cap: int = ORDER_CAP) -> int | None:
    ident = identity(len(m))
    cur = m
    for k in range(1, cap + 1):
        if cur == ident:
            return k
        cur = mat_mul(cur, m)
    return None


def group_order(gens: Sequence[Matrix], cap: int = GROUP_CAP) -> int | None:
    """Size of the matrix group generated by ``gens``, None beyond ``cap``."""
    if not gens:
        return 1
    ident = identity(len(gens[0]))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mat_mul(g, s)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > cap:
                        return None
                    nxt.append(h)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# iota


@dataclass(frozen=True)
class IotaTable:
    """Essential generator j -> (leaf index, coordinate index of alpha_j)."""

    map: dict = field(default_factory=dict)


def _factor_of(sd: StringDecomposition, j: int) -> int | None:
    return next((k for k, f in enumerate(sd.factors) if f.vector[j]), None)


def iota(fp: FramedProblem, sd: StringDecomposition, leaves: Sequence[LeafDescriptor], gens: GeneratorSet) -> IotaTable:
    out = {}
    for j in gens.ess:
        k = _factor_of(sd, j)
        hits = [i for i, lf in enumerate(leaves) if lf.factor == k and lf.active.contains_simple(j)]
        name = fp.base.vertices[j]
        if len(hits) != 1:
            raise IotaError(
                f"generator s_{name}: {len(hits)} leaves of its factor contain alpha_{name}; such a leaf must be unique"
            )
        a = leaves[hits[0]].coordinate_of_simple(j)
        if a is None:
            raise IotaError(f"generator s_{name}: alpha_{name} is not a coordinate of its leaf")
        out[j] = (hits[0], a)
    return IotaTable(out)


def iota_matrix(q: Quiver, leaves: Sequence[LeafDescriptor], table: IotaTable, j: int) -> Matrix:
    """Block matrix of iota(s_j) on the direct sum of leaf Cartans."""
    blocks = []
    target = table.map.get(j)
    for i, lf in enumerate(leaves):
        if target is not None and target[0] == i:
            blocks.append(leaf_reflection(q, lf, j)[0])
        else:
            blocks.append(identity(len(lf.coordinates)))
    return block_diag(blocks)


# ---------------------------------------------------------------------------
# verification


@dataclass
class ActionReport:
    verdict: str = "pass"
    checks: int = 0
    counterexample: dict | None = None
    matrices: dict = field(default_factory=dict)  # (j, leaf) -> matrix

    def fail(self, **info):
        if self.verdict == "pass":
            self.verdict = "fail"
            self.counterexample = info


def check_intertwining(
    fp: FramedProblem,
    sd: StringDecomposition,
    leaves: Sequence[LeafDescriptor],
    gens: GeneratorSet,
    iota_table: IotaTable | None = None,
) -> ActionReport:
    """Compare the two actions on every leaf projection of every basis character."""
    q = fp.framed
    n = len(fp.base)
    report = ActionReport()
    basis = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    for j in gens.all:
        essential = j in gens.ess
        for i, lf in enumerate(leaves):
            r, _ = leaf_reflection(q, lf, j) if essential else (identity(len(lf.coordinates)), False)
            report.matrices[(j, i)] = r
            for k, chi in enumerate(basis):
                report.checks += 1
                lhs = project_character(lf, dual_reflection(fp.base, j, chi))
                rhs = mat_vec(r, project_character(lf, chi))
                if lhs != rhs:
                    report.fail(
                        generator=fp.base.vertices[j],
                        leaf=i,
                        character=fp.base.vertices[k],
                        clause="ess" if essential else "irr",
                        got=lhs,
                        expected=rhs,
                    )
    return report


@dataclass(frozen=True)
class Relation:
    pair: tuple[int, int]
    expected: int | None  # None: no relation
    computed: int | None  # None: order exceeds the cap
    ok: bool


def coxeter_relations(
    fp: FramedProblem,
    gens: GeneratorSet,
    leaves: Sequence[LeafDescriptor],
    iota_table: IotaTable,
    cap: int = ORDER_CAP,
) -> list[Relation]:
    q = fp.framed
    mats = {j: iota_matrix(q, leaves, iota_table, j) for j in gens.all}
    out = []
    for x, j in enumerate(gens.all):
        for jj in gens.all[x:]:
            nij = fp.base.mult[j][jj]
            expected = 1 if j == jj else {0: 2, 1: 3}.get(nij)
            computed = matrix_order(mat_mul(mats[j], mats[jj]), cap)
            if expected is None:
                ok = True
            else:
                ok = computed is not None and expected % computed == 0
            out.append(Relation((j, jj), expected, computed, ok))
    return out


def image_order(fp: FramedProblem, gens: GeneratorSet, leaves: Sequence[LeafDescriptor], iota_table: IotaTable) -> int | None:
    """Order of the group generated by the iota images."""
    q = fp.framed
    return group_order([iota_matrix(q, leaves, iota_table, j) for j in gens.all])
