"""Quivers, dimension vectors, the Tits form and the framing construction.

Vectors are plain tuples of ints aligned with ``Quiver.vertices``; helpers
convert to and from ``{vertex: value}`` mappings at the edges of the API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

INFINITY = "inf"

Vector = tuple  # tuple[int, ...] indexed like Quiver.vertices


class QuiverError(ValueError):
    """Raised for malformed quivers or vectors."""


@dataclass(frozen=True)
class Quiver:
    """An unoriented multigraph without edge loops.

    ``mult[i][j]`` is the number of arrows between vertices ``i`` and ``j``
    (dense indices), regardless of orientation.
    """

    vertices: tuple[str, ...]
    mult: tuple[tuple[int, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise QuiverError("vertex identifiers must be unique")
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise QuiverError("multiplicity matrix has the wrong shape")
        for i in range(n):
            if self.mult[i][i] != 0:
                raise QuiverError(f"edge loop at vertex {self.vertices[i]!r}")
            for j in range(n):
                m = self.mult[i][j]
                if m < 0 or m != self.mult[j][i]:
                    raise QuiverError("multiplicities must be symmetric and nonnegative")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[tuple[str, str, int]]) -> "Quiver":
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        n = len(vertices)
        mult = [[0] * n for _ in range(n)]
        for a, b, m in edges:
            if a not in index or b not in index:
                raise QuiverError(f"edge ({a}, {b}) references an unknown vertex")
            if a == b:
                raise QuiverError(f"edge loop at vertex {a!r}")
            i, j = index[a], index[b]
            mult[i][j] += m
            mult[j][i] += m
        return cls(vertices, tuple(tuple(r) for r in mult))

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise QuiverError(f"unknown vertex {vertex!r}") from None

    def cartan(self, i: int, j: int) -> int:
        return 2 if i == j else -self.mult[i][j]

    def cartan_matrix(self) -> list[list[int]]:
        n = len(self)
        return [[self.cartan(i, j) for j in range(n)] for i in range(n)]

    def edges(self) -> list[tuple[int, int, int]]:
        n = len(self)
        return [(i, j, self.mult[i][j]) for i in range(n) for j in range(i + 1, n) if self.mult[i][j]]

    def neighbours(self, i: int) -> list[int]:
        return [j for j, m in enumerate(self.mult[i]) if m]

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if k == i else 0 for k in range(len(self)))

    def zero(self) -> Vector:
        return (0,) * len(self)

    def vector(self, entries: Mapping[str, int]) -> Vector:
        """Dense vector from a (possibly sparse) vertex mapping."""
        for k in entries:
            self.index(k)
        return tuple(int(entries.get(v, 0)) for v in self.vertices)

    def as_dict(self, vec: Sequence[int], sparse: bool = True) -> dict[str, int]:
        return {v: int(x) for v, x in zip(self.vertices, vec) if x or not sparse}

    def name_order(self) -> list[int]:
        """Indices sorted by vertex name, with the framing vertex last."""
        return sorted(range(len(self)), key=lambda i: (self.vertices[i] == INFINITY, self.vertices[i]))

    def canonical_key(self, vec: Sequence[int]) -> tuple:
        """Ordering key for vectors that does not depend on input vertex order."""
        return tuple(vec[i] for i in self.name_order())

    def restrict(self, indices: Sequence[int]) -> "Quiver":
        idx = list(indices)
        return Quiver(
            tuple(self.vertices[i] for i in idx),
            tuple(tuple(self.mult[i][j] for j in idx) for i in idx),
        )

    def permuted(self, order: Sequence[int]) -> "Quiver":
        return self.restrict(order)


def _check(q: Quiver, *vecs: Sequence[int]) -> None:
    for v in vecs:
        if len(v) != len(q):
            raise IndexError(f"vector of length {len(v)} does not match quiver with {len(q)} vertices")


def tits_pairing(q: Quiver, a: Sequence[int], b: Sequence[int]) -> int:
    """Symmetric bilinear form with (alpha_i, alpha_j) = c_ij."""
    _check(q, a, b)
    total = 0
    for i, ai in enumerate(a):
        if not ai:
            continue
        row = q.mult[i]
        s = 2 * b[i]
        for j, m in enumerate(row):
            if m:
                s -= m * b[j]
        total += ai * s
    return total


def pair_simple(q: Quiver, a: Sequence[int], i: int) -> int:
    """(a, alpha_i)."""
    row = q.mult[i]
    return 2 * a[i] - sum(m * a[j] for j, m in enumerate(row) if m)


def p_value(q: Quiver, a: Sequence[int]) -> int:
    """p(a) = 1 - (a, a)/2."""
    n = tits_pairing(q, a, a)
    if n % 2:
        raise ValueError("Tits norm is odd; not a symmetric integer form")
    return 1 - n // 2


def support(a: Sequence[int]) -> list[int]:
    return [i for i, x in enumerate(a) if x]


def is_connected(q: Quiver, nodes: Iterable[int]) -> bool:
    nodes = set(nodes)
    if not nodes:
        return False
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in q.neighbours(i):
            if j in nodes and j not in seen:
                seen.add(j)
                stack.append(j)
    return seen == nodes


def components(q: Quiver, nodes: Iterable[int]) -> list[list[int]]:
    """Connected components of the induced subgraph, each sorted, ordered by minimum."""
    remaining = set(nodes)
    out = []
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in q.neighbours(i):
                if j in remaining and j not in comp:
                    comp.add(j)
                    stack.append(j)
        remaining -= comp
        out.append(sorted(comp))
    return sorted(out)


def connected_support(q: Quiver, a: Sequence[int]) -> bool:
    _check(q, a)
    return is_connected(q, support(a))


def dot(chi: Sequence, a: Sequence[int]) -> Fraction | int:
    return sum(c * x for c, x in zip(chi, a))


@dataclass(frozen=True)
class FramedProblem:
    """A framed quiver problem (Q, v, w) together with Q^inf and v-tilde.

    The framed quiver lists the base vertices in order followed by the
    framing vertex ``INFINITY``.
    """

    base: Quiver
    v: Vector
    w: Vector
    framed: Quiver
    vtilde: Vector

    @property
    def infinity(self) -> int:
        return len(self.base)

    @property
    def base_indices(self) -> range:
        return range(len(self.base))


def build_framed(q: Quiver, v: Sequence[int], w: Sequence[int]) -> FramedProblem:
    _check(q, v, w)
    if INFINITY in q.vertices:
        raise QuiverError(f"vertex name {INFINITY!r} is reserved for the framing vertex")
    if any(x < 0 for x in v) or any(x < 0 for x in w):
        raise QuiverError("dimension and framing vectors must be nonnegative")
    if not any(w):
        raise QuiverError("framing must be nonzero")
    mult = [list(row) + [w[i]] for i, row in enumerate(q.mult)]
    mult.append(list(w) + [0])
    framed = Quiver(q.vertices + (INFINITY,), tuple(tuple(r) for r in mult))
    return FramedProblem(q, tuple(v), tuple(w), framed, tuple(v) + (1,))


def in_fundamental_region(q: Quiver, a: Sequence[int], nodes: Iterable[int] | None = None) -> bool:
    nodes = range(len(q)) if nodes is None else nodes
    return all(pair_simple(q, a, i) <= 0 for i in nodes)


def is_in_fundamental_region(fp: FramedProblem) -> bool:
    """True iff (v-tilde, alpha_i) <= 0 at every vertex of Q^inf."""
    return in_fundamental_region(fp.framed, fp.vtilde)


def reflect(q: Quiver, a: Sequence[int], i: int) -> Vector:
    """Simple reflection s_i(a) = a - (a, alpha_i) alpha_i."""
    c = pair_simple(q, a, i)
    out = list(a)
    out[i] -= c
    return tuple(out)
