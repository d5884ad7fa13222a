"""Simple-representation dimension vectors and the canonical decomposition.

``DecompositionTable`` maximizes the sum of ``p`` over decompositions into
positive roots orthogonal to a rational weight ``lam``.  The maximum over
decompositions of ``u`` into one or more parts satisfies

    f(u) = max over roots b <= u of  p(b) + f(u - b),   f(0) = 0,

and proper (two or more part) decompositions are handled by one extra layer
on top, where the first part may not be ``u`` itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cartan import AFFINE, form_class
from .quiver import (
    INFINITY,
    FramedProblem,
    Quiver,
    Vector,
    components,
    dot,
    in_fundamental_region,
    is_in_fundamental_region,
    p_value,
    pair_simple,
    support,
)
from .roots import RootClass, box, classify_root, graded_key

NEG_INF = -math.inf


class InconsistencyError(RuntimeError):
    """An outcome the underlying theorems rule out."""


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def as_weight(q: Quiver, lam) -> tuple[Fraction, ...]:
    if lam is None:
        return (Fraction(0),) * len(q)
    if len(lam) != len(q):
        raise IndexError("weight length does not match quiver")
    return tuple(Fraction(x) for x in lam)


class DecompositionTable:
    """Best decompositions of every vector below ``bound``.

    Parts are tried in lexicographic order and the first optimal part is
    kept, which makes each witness the lexicographically smallest sorted
    part list among the optimal ones.
    """

    def __init__(self, q: Quiver, bound: Sequence[int], lam=None, memo: dict | None = None):
        self.q = q
        self.bound = tuple(bound)
        self.lam = as_weight(q, lam)
        self.memo = {} if memo is None else memo
        self.klass: dict[Vector, RootClass] = {}
        parts = []
        for u in box(self.bound):
            if not any(u):
                continue
            k = classify_root(q, u, self.memo).klass
            if k.is_root:
                self.klass[u] = k
                if dot(self.lam, u) == 0:
                    parts.append(u)
        self.parts = sorted(parts)
        self.p = {b: p_value(q, b) for b in self.parts}
        self.best: dict[Vector, float | int] = {}
        self.choice: dict[Vector, Vector | None] = {}
        zero = q.zero()
        for u in sorted(box(self.bound), key=graded_key):
            if u == zero:
                self.best[u] = 0
                self.choice[u] = None
                continue
            self.best[u], self.choice[u] = self._scan(u, lambda r: self.best[r], exclude=None)
        self._layers: dict[int, dict] = {}

    def _scan(self, u, value_of, exclude):
        best, pick = NEG_INF, None
        for b in self.parts:
            if b == exclude or not _leq(b, u):
                continue
            rest = value_of(_sub(u, b))
            if rest == NEG_INF:
                continue
            val = self.p[b] + rest
            if val > best:
                best, pick = val, b
        return best, pick

    def _layer(self, k: int, u: Vector):
        """Best value over decompositions of u with at least k parts."""
        if k <= 1:
            if not any(u):
                return (0, None) if k <= 0 else (NEG_INF, None)
            return self.best[u], self.choice[u]
        cache = self._layers.setdefault(k, {})
        if u not in cache:
            cache[u] = self._scan(u, lambda r: self._layer(k - 1, r)[0], exclude=None)
        return cache[u]

    def value(self, u: Sequence[int], min_parts: int = 1):
        u = tuple(u)
        if not _leq(u, self.bound):
            raise ValueError("target exceeds the table bound")
        return self._layer(min_parts, u)[0]

    def witness(self, u: Sequence[int], min_parts: int = 1) -> list[Vector] | None:
        u = tuple(u)
        if self._layer(min_parts, u)[0] == NEG_INF:
            return None
        out = []
        k = min_parts
        while any(u) or k > 0:
            if not any(u) and k <= 0:
                break
            _, b = self._layer(k, u)
            if b is None:
                break
            out.append(b)
            u = _sub(u, b)
            k -= 1
        return sorted(out)

    def is_root(self, u) -> bool:
        return tuple(u) in self.klass

    def root_class(self, u) -> RootClass:
        return self.klass.get(tuple(u), RootClass.NOT_ROOT)

    def in_sigma(self, u: Sequence[int]) -> bool:
        u = tuple(u)
        if u not in self.klass or dot(self.lam, u) != 0:
            return False
        return self.p[u] > self.value(u, 2)


def best_decomposition(q: Quiver, target: Sequence[int], lam=None, min_parts: int = 1):
    """(value, witness) maximizing sum p(b) over root decompositions of ``target``.

    Parts ``b`` are positive roots with ``lam . b == 0``; at least
    ``min_parts`` parts are used.  The value is ``NEG_INF`` and the witness
    ``None`` when no decomposition exists.
    """
    table = DecompositionTable(q, target, lam)
    return table.value(target, min_parts), table.witness(target, min_parts)


def sigma_membership(q: Quiver, a: Sequence[int], lam=None, table: DecompositionTable | None = None) -> bool:
    """Membership of ``a`` in Sigma_lam."""
    a = tuple(a)
    if any(x < 0 for x in a) or not any(a):
        raise ValueError("sigma_membership expects a nonzero nonnegative vector")
    if table is None or not _leq(a, table.bound):
        table = DecompositionTable(q, a, lam)
    return table.in_sigma(a)


def sigma_members(table: DecompositionTable) -> list[Vector]:
    return [u for u in table.parts if table.in_sigma(u)]


def framed_weight(fp: FramedProblem, lam) -> tuple[Fraction, ...]:
    """Weight on Q^inf: lam on Q and -v.lam at infinity."""
    base = as_weight(fp.base, lam)
    return base + (-dot(base, fp.v),)


def sigma0_feasible(fp: FramedProblem, lam=None) -> bool:
    """Whether v-tilde is a sum of one or more members of Sigma_lam."""
    table = DecompositionTable(fp.framed, fp.vtilde, framed_weight(fp, lam))
    members = sigma_members(table)
    reach = {fp.framed.zero()}
    for u in sorted(box(fp.vtilde), key=graded_key):
        if u in reach:
            continue
        if any(_leq(m, u) and _sub(u, m) in reach for m in members):
            reach.add(u)
    return any(fp.vtilde) and fp.vtilde in reach


# ---------------------------------------------------------------------------
# canonical string decomposition

SIGMA0 = "sigma0"
AFFINE_MULTIPLE = "affine"
POINT = "point"


@dataclass(frozen=True)
class Factor:
    """One factor of the canonical decomposition, as a vector over Q^inf.

    ``kind`` is ``"sigma0"`` (imaginary root in Sigma_0), ``"affine"``
    (``multiplicity`` >= 2 copies of the minimal imaginary root ``delta``)
    or ``"point"`` (a simple root).
    """

    kind: str
    vector: Vector
    delta: Vector | None = None
    multiplicity: int = 1
    frame_vertex: int | None = None

    @property
    def support(self) -> list[int]:
        return support(self.vector)


@dataclass(frozen=True)
class StringDecomposition:
    factors: tuple[Factor, ...]
    connectors: tuple[tuple[int, ...], ...]
    is_string: bool = True

    def connector_vertices(self) -> set[int]:
        return {i for c in self.connectors for i in c}

    def total(self, n: int) -> Vector:
        out = [0] * n
        for f in self.factors:
            for i, x in enumerate(f.vector):
                out[i] += x
        for c in self.connectors:
            for i in c:
                out[i] += 1
        return tuple(out)


def _split_components(q: Quiver, nodes: set[int], cut: tuple[int, int]) -> list[set[int]]:
    i0, j0 = cut
    remaining = set(nodes)
    out = []
    while remaining:
        s = min(remaining)
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in q.neighbours(x):
                if y in remaining and y not in comp and {x, y} != {i0, j0}:
                    comp.add(y)
                    stack.append(y)
        remaining -= comp
        out.append(comp)
    return out


def _restrict(x: Vector, nodes: set[int]) -> Vector:
    return tuple(v if i in nodes else 0 for i, v in enumerate(x))


def _affine_multiple(q: Quiver, x: Vector):
    """(delta, m) when x = m * delta for the affine form on its support."""
    supp = support(x)
    fc = form_class(q, supp)
    if fc.kind != AFFINE:
        return None
    d = fc.delta
    i = supp[0]
    m, r = divmod(x[i], d[i])
    if r or any(x[k] != m * d[k] for k in supp):
        return None
    return d, m


def _trim(q: Quiver, x: Vector) -> tuple[Vector, list[int]]:
    """Peel all-ones tails until x is back in the fundamental region."""
    x = list(x)
    removed = []
    while True:
        supp = support(x)
        pos = [i for i in supp if pair_simple(q, x, i) > 0]
        if not pos:
            return tuple(x), removed
        if len(pos) > 1 or len(supp) == 1:
            raise InconsistencyError(f"cannot trim vector {tuple(x)} back into the fundamental region")
        i = pos[0]
        if x[i] != 1 or pair_simple(q, x, i) != 1:
            raise InconsistencyError(f"tail vertex {q.vertices[i]} is not an all-ones chain end")
        x[i] = 0
        removed.append(i)


def _find_split(q: Quiver, x: Vector):
    supp = set(support(x))
    for i, j, m in q.edges():
        if m != 1 or i not in supp or j not in supp:
            continue
        comps = _split_components(q, supp, (i, j))
        if len(comps) != 2:
            continue
        side_i = next(c for c in comps if i in c)
        side_j = next(c for c in comps if j in c)
        if x[i] == 1 and x[j] == 1:
            return "a", (i, side_i), (j, side_j)
        for (jj, J), (kk, K) in (((i, side_i), (j, side_j)), ((j, side_j), (i, side_i))):
            if x[kk] != 1 or not _affine_on(q, x, J):
                continue
            d, mm = _affine_on(q, x, J)
            if mm >= 2 and d[jj] == 1:
                return "b", (jj, J), (kk, K)
    return None


def _affine_on(q: Quiver, x: Vector, nodes: set[int]):
    return _affine_multiple(q, _restrict(x, nodes))


def _factor_for(q: Quiver, x: Vector, table: DecompositionTable) -> Factor | None:
    if sum(x) == 1:
        return Factor(POINT, x)
    if table.in_sigma(x):
        return Factor(SIGMA0, x)
    am = _affine_multiple(q, x)
    if am is not None and am[1] >= 2:
        return Factor(AFFINE_MULTIPLE, x, delta=am[0], multiplicity=am[1])
    return None


def _frame_vertex(q: Quiver, f: Factor, outside: set[int]) -> int | None:
    supp = f.support
    rank = {i: r for r, i in enumerate(q.name_order())}
    inf = q.vertices.index(INFINITY) if INFINITY in q.vertices else None
    if inf is not None and inf in supp:
        return inf
    coeff = f.delta if f.kind == AFFINE_MULTIPLE else f.vector
    ones = sorted((i for i in supp if coeff[i] == 1), key=rank.get)
    boundary = [i for i in ones if any(j in outside for j in q.neighbours(i))]
    if boundary:
        return boundary[0]
    return ones[0] if ones else None


def decompose_vector(q: Quiver, x: Sequence[int], table: DecompositionTable | None = None) -> StringDecomposition:
    """Canonical decomposition of a vector in the fundamental region of ``q``."""
    x = tuple(x)
    if not in_fundamental_region(q, x):
        raise ValueError("vector is not in the fundamental region")
    if table is None:
        table = DecompositionTable(q, x)
    factors: list[Factor] = []
    connector: set[int] = set()
    stack = [_restrict(x, set(c)) for c in components(q, support(x))]
    while stack:
        piece = stack.pop()
        f = _factor_for(q, piece, table)
        if f is not None:
            factors.append(f)
            continue
        split = _find_split(q, piece)
        if split is None:
            raise InconsistencyError(f"no splitting edge for {q.as_dict(piece)}")
        case, (j, J), (k, K) = split
        sides = [K] if case == "b" else [J, K]
        if case == "b":
            d, m = _affine_on(q, piece, J)
            factors.append(Factor(AFFINE_MULTIPLE, _restrict(piece, J), delta=d, multiplicity=m))
        for side in sides:
            part = _restrict(piece, side)
            if sum(part) == 1:
                stack.append(part)
                continue
            part, removed = _trim(q, part)
            connector.update(removed)
            if any(part):
                stack.append(part)
    used = set(support(x))
    factors = [
        Factor(f.kind, f.vector, f.delta, f.multiplicity, _frame_vertex(q, f, used - set(f.support)))
        for f in factors
    ]
    return _arrange(q, factors, connector)


def _arrange(q: Quiver, factors: list[Factor], connector: set[int]) -> StringDecomposition:
    """Order factors and connector segments along the string they form."""
    segs = [tuple(c) for c in components(q, connector)]
    key = q.canonical_key

    def seg_vec(seg):
        return tuple(1 if i in seg else 0 for i in range(len(q)))

    nodes = [("f", f.support, key(f.vector)) for f in factors] + [("c", list(s), key(seg_vec(s))) for s in segs]
    n = len(nodes)
    adj = [set() for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if any(q.mult[i][j] for i in nodes[a][1] for j in nodes[b][1]):
                adj[a].add(b)
                adj[b].add(a)
    edges = sum(len(s) for s in adj) // 2
    simple_path = all(len(s) <= 2 for s in adj) and edges == n - 1 and _connected(adj)
    simple_path = simple_path and all(_is_ones_path(q, s) for s in segs)
    if simple_path and n > 1:
        simple_path = all(
            not (nodes[a][0] == "c" and nodes[b][0] == "c") for a in range(n) for b in adj[a]
        ) and all(nodes[a][0] == "f" for a in range(n) if len(adj[a]) <= 1)
    if not simple_path:
        order = sorted(range(len(factors)), key=lambda a: nodes[a][2])
        return StringDecomposition(
            tuple(factors[a] for a in order),
            tuple(sorted(segs, key=lambda s: key(seg_vec(s)))),
            is_string=False,
        )
    if n == 1:
        return StringDecomposition((factors[0],), ())
    ends = sorted((a for a in range(n) if len(adj[a]) == 1), key=lambda a: nodes[a][2])
    walk = [ends[0]]
    while len(walk) < n:
        nxt = [b for b in adj[walk[-1]] if b not in walk]
        walk.append(nxt[0])
    out_f, out_c = [], []
    pending: tuple[int, ...] = ()
    for a in walk:
        kind, supp, _ = nodes[a]
        if kind == "c":
            pending = tuple(sorted(supp, key=lambda i: _chain_position(q, supp, i, out_f)))
        else:
            if out_f:
                out_c.append(pending)
            pending = ()
            out_f.append(factors[a])
    return StringDecomposition(tuple(out_f), tuple(out_c))


def _chain_position(q: Quiver, seg, i, prior_factors) -> int:
    """Distance of vertex i from the end of seg touching the previous factor."""
    if not prior_factors:
        return 0
    prev = set(prior_factors[-1].support)
    start = next((s for s in seg if any(q.mult[s][j] for j in prev)), seg[0])
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for t in q.neighbours(s):
                if t in seg and t not in dist:
                    dist[t] = dist[s] + 1
                    nxt.append(t)
        frontier = nxt
    return dist.get(i, 0)


def _connected(adj) -> bool:
    if not adj:
        return True
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(adj)


def _is_ones_path(q: Quiver, seg) -> bool:
    seg = set(seg)
    degs = []
    for i in seg:
        nb = [j for j in q.neighbours(i) if j in seg]
        if any(q.mult[i][j] != 1 for j in nb):
            return False
        degs.append(len(nb))
    return max(degs) <= 2 and sum(degs) // 2 == len(seg) - 1


def canonical_string_decomposition(fp: FramedProblem, table: DecompositionTable | None = None) -> StringDecomposition:
    """Canonical decomposition of v-tilde for a problem in the fundamental region."""
    if not is_in_fundamental_region(fp):
        raise ValueError("v-tilde is not in the fundamental region of Q^inf")
    return decompose_vector(fp.framed, fp.vtilde, table)
