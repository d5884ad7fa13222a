"""Cartan matrices: Tits form classes and finite-type recognition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .quiver import Quiver, Vector, is_connected


class CartanError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra


def pivots(mat: Sequence[Sequence[int]]) -> list[Fraction]:
    """Pivots of Gaussian elimination without row exchange.

    A symmetric matrix is positive definite iff every pivot is positive
    (equivalently, every leading principal minor is).  Elimination stops at
    the first non-positive pivot.
    """
    a = [[Fraction(x) for x in row] for row in mat]
    n = len(a)
    out = []
    for k in range(n):
        piv = a[k][k]
        out.append(piv)
        if piv <= 0:
            break
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return out


def nullspace(mat: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of the right kernel, via reduced row echelon form."""
    a = [[Fraction(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivot_cols = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def primitive(v: Sequence[Fraction]) -> list[int]:
    den = reduce(math.lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(math.gcd, (abs(x) for x in ints), 0)
    return [x // g for x in ints] if g else ints


# ---------------------------------------------------------------------------
# Tits form classes


@dataclass(frozen=True)
class FormClass:
    kind: str  # "positive-definite" | "affine" | "indefinite"
    delta: Vector | None = None  # minimal imaginary root, indexed like the support


POSITIVE_DEFINITE = "positive-definite"
AFFINE = "affine"
INDEFINITE = "indefinite"


def classify_form(mat: Sequence[Sequence[int]]) -> FormClass:
    """Classify a connected symmetric generalized Cartan matrix."""
    piv = pivots(mat)
    if len(piv) == len(mat) and all(p > 0 for p in piv):
        return FormClass(POSITIVE_DEFINITE)
    ker = nullspace(mat)
    if len(ker) == 1:
        d = primitive(ker[0])
        if all(x < 0 for x in d):
            d = [-x for x in d]
        if all(x > 0 for x in d):
            return FormClass(AFFINE, tuple(d))
    return FormClass(INDEFINITE)


def form_class(q: Quiver, nodes: Sequence[int]) -> FormClass:
    """Class of the Tits form restricted to ``nodes`` (connected, nonempty).

    ``delta`` of an affine result is a full-length vector over ``q``.
    """
    nodes = sorted(set(nodes))
    if not nodes or not is_connected(q, nodes):
        raise ValueError("form_class needs a nonempty connected vertex set")
    sub = [[q.cartan(i, j) for j in nodes] for i in nodes]
    fc = classify_form(sub)
    if fc.kind != AFFINE:
        return fc
    full = [0] * len(q)
    for i, x in zip(nodes, fc.delta):
        full[i] = x
    return FormClass(AFFINE, tuple(full))


# ---------------------------------------------------------------------------
# finite Cartan types


_EXCEPTIONAL_ORDERS = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}


def weyl_group_order(family: str, rank: int) -> int:
    if family == "A":
        return math.factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    return _EXCEPTIONAL_ORDERS[(family, rank)]


@dataclass(frozen=True)
class CoxeterType:
    """A product of finite Weyl group types, or an infinite group.

    ``factors`` lists ``(family, rank)`` for finite components; ``infinite``
    counts components that are not of finite type.
    """

    factors: tuple[tuple[str, int], ...] = ()
    infinite: int = 0

    @property
    def is_finite(self) -> bool:
        return self.infinite == 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        return math.prod(weyl_group_order(f, r) for f, r in self.factors)

    def __mul__(self, other: "CoxeterType") -> "CoxeterType":
        return CoxeterType(self.factors + other.factors, self.infinite + other.infinite)

    @property
    def label(self) -> str:
        parts = [f"{f}{r}" for f, r in self.factors] + ["inf"] * self.infinite
        return " x ".join(parts) if parts else "1"

    def sorted(self) -> "CoxeterType":
        return CoxeterType(tuple(sorted(self.factors)), self.infinite)


def validate_cartan(c: Sequence[Sequence[int]]) -> None:
    n = len(c)
    if any(len(row) != n for row in c):
        raise CartanError("Cartan matrix must be square")
    for i in range(n):
        if c[i][i] != 2:
            raise CartanError(f"diagonal entry ({i},{i}) is {c[i][i]}, expected 2")
        for j in range(n):
            if i == j:
                continue
            if c[i][j] > 0:
                raise CartanError(f"off-diagonal entry ({i},{j}) is positive")
            if (c[i][j] == 0) != (c[j][i] == 0):
                raise CartanError(f"entries ({i},{j}) and ({j},{i}) must vanish together")


def _cartan_components(c) -> list[list[int]]:
    n = len(c)
    seen = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        k = 0
        while k < len(comp):
            i = comp[k]
            k += 1
            for j in range(n):
                if j != i and c[i][j] and j not in seen:
                    seen.add(j)
                    comp.append(j)
        comps.append(sorted(comp))
    return comps


def _finite_component(c, nodes) -> tuple[str, int] | None:
    n = len(nodes)
    if n == 1:
        return ("A", 1)
    adj = {i: [] for i in nodes}
    bonds = {}
    for a in range(n):
        for b in range(a + 1, n):
            i, j = nodes[a], nodes[b]
            if c[i][j]:
                prod = c[i][j] * c[j][i]
                if prod >= 4:
                    return None
                adj[i].append(j)
                adj[j].append(i)
                bonds[(i, j)] = prod
    if len(bonds) != n - 1:
        return None  # finite Dynkin diagrams are trees
    degree = {i: len(adj[i]) for i in nodes}
    heavy = [(e, p) for e, p in bonds.items() if p > 1]
    if len(heavy) > 1:
        return None
    if heavy:
        (i, j), prod = heavy[0]
        if max(degree.values()) > 2:
            return None
        if prod == 3:
            return ("G", 2) if n == 2 else None
        if n == 2:
            return ("B", 2)
        if degree[i] == 1 or degree[j] == 1:
            end, nb = (i, j) if degree[i] == 1 else (j, i)
            # c[end][nb] == -2 means the end node carries the short root
            return ("B", n) if c[end][nb] == -2 else ("C", n)
        return ("F", 4) if n == 4 else None
    branch = [i for i in nodes if degree[i] >= 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1 or degree[branch[0]] > 3:
        return None
    centre = branch[0]
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while degree[cur] == 2:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", n)
    return None


def classify_cartan(c: Sequence[Sequence[int]]) -> CoxeterType:
    """Finite-type factors of a generalized Cartan matrix.

    Convention: ``c[i][j] = <alpha_j, alpha_i^vee>``, so ``[[2,-3],[-1,2]]``
    is G2 with node 0 short.  An end node ``e`` of a B/C chain with
    ``c[e][nb] == -2`` is short, giving B; otherwise C.  B2 and C2 are
    reported as B2.
    """
    validate_cartan(c)
    factors = []
    infinite = 0
    for comp in _cartan_components(c):
        t = _finite_component(c, comp)
        if t is None:
            infinite += 1
        else:
            factors.append(t)
    return CoxeterType(tuple(factors), infinite)


def generator_order(c: Sequence[Sequence[int]], i: int, j: int) -> int | None:
    """Coxeter exponent m_ij of s_i s_j, None when infinite."""
    if i == j:
        return 1
    prod = c[i][j] * c[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod)
