"""Positive roots of symmetric Kac-Moody root systems attached to quivers."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .quiver import Quiver, Vector, is_connected, pair_simple, support, tits_pairing


class RootClass(enum.Enum):
    REAL = "real"
    ISOTROPIC = "isotropic"
    NON_ISOTROPIC = "non-isotropic"
    NOT_ROOT = "not-a-root"

    @property
    def is_root(self) -> bool:
        return self is not RootClass.NOT_ROOT

    @property
    def is_imaginary(self) -> bool:
        return self in (RootClass.ISOTROPIC, RootClass.NON_ISOTROPIC)


@dataclass(frozen=True)
class RootVector:
    vec: Vector
    klass: RootClass


def _descend(q: Quiver, a: Vector, memo: dict | None) -> RootClass:
    path = []
    cur = a
    result = None
    while True:
        if memo is not None and cur in memo:
            result = memo[cur]
            break
        path.append(cur)
        if sum(cur) == 1:
            result = RootClass.REAL
            break
        supp = support(cur)
        if not is_connected(q, supp):
            result = RootClass.NOT_ROOT
            break
        for i in supp:
            c = pair_simple(q, cur, i)
            if c > 0:
                nxt = list(cur)
                nxt[i] -= c
                if nxt[i] < 0:
                    result = RootClass.NOT_ROOT
                else:
                    cur = tuple(nxt)
                break
        else:
            # fundamental region with connected support: imaginary (Kac)
            norm = tits_pairing(q, cur, cur)
            result = RootClass.ISOTROPIC if norm == 0 else RootClass.NON_ISOTROPIC
        if result is not None:
            break
    if memo is not None:
        for x in path:
            memo[x] = result
    return result


def classify_root(q: Quiver, a: Sequence[int], memo: dict | None = None) -> RootVector:
    """Classify a nonzero nonnegative vector by reflection descent.

    Reflections only lower the coordinate being reflected, so the descent
    stays inside the box below ``a``.  Real roots descend to a simple root,
    imaginary roots to a vector of the fundamental region with connected
    support; anything else is not a root.  Real versus imaginary is a
    property of the orbit, and the descent is deterministic, so ``memo`` may
    be shared across calls on the same quiver.
    """
    a = tuple(int(x) for x in a)
    if len(a) != len(q):
        raise IndexError("vector length does not match quiver")
    if any(x < 0 for x in a) or not any(a):
        raise ValueError("classify_root expects a nonzero nonnegative vector")
    return RootVector(a, _descend(q, a, memo))


def box(bound: Sequence[int]):
    """All vectors 0 <= u <= bound, in lexicographic order."""
    return itertools.product(*(range(b + 1) for b in bound))


def graded_key(u: Sequence[int]):
    return (sum(u), tuple(u))


def enumerate_positive_roots(q: Quiver, bound: Sequence[int]) -> list[RootVector]:
    """All positive roots a <= bound, ordered by height then lexicographically."""
    if any(b < 0 for b in bound):
        raise ValueError("bound must be nonnegative")
    if len(bound) != len(q):
        raise IndexError("bound length does not match quiver")
    memo: dict = {}
    out = []
    for u in sorted(box(bound), key=graded_key):
        if not any(u):
            continue
        r = classify_root(q, u, memo)
        if r.klass.is_root:
            out.append(r)
    return out


def root_table(q: Quiver, bound: Sequence[int]) -> dict[Vector, RootClass]:
    """Classification of every positive root below ``bound``."""
    return {r.vec: r.klass for r in enumerate_positive_roots(q, bound)}
