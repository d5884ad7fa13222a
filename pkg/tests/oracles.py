"""Brute-force references.

These work on raw multiplicity matrices and share no code with the package
beyond the standard library, so agreement is meaningful.
"""

from __future__ import annotations

import bisect
import itertools
import math
from fractions import Fraction

NEG = -math.inf


def cartan(mult, i, j):
    return 2 if i == j else -mult[i][j]


def pair(mult, a, b):
    n = len(mult)
    return sum(a[i] * b[j] * cartan(mult, i, j) for i in range(n) for j in range(n))


def p_of(mult, a):
    return 1 - pair(mult, a, a) // 2


def connected(mult, nodes):
    nodes = set(nodes)
    if not nodes:
        return False
    seen = {min(nodes)}
    todo = [min(nodes)]
    while todo:
        i = todo.pop()
        for j in nodes:
            if mult[i][j] and j not in seen:
                seen.add(j)
                todo.append(j)
    return seen == nodes


def all_vectors(bound):
    return [u for u in itertools.product(*(range(b + 1) for b in bound)) if any(u)]


def roots_oracle(mult, bound):
    """Positive roots below bound, by growing Weyl orbits upward.

    Seeds are the simple roots and the fundamental-region vectors with
    connected support; a seed-orbit vector x grows to s_i x whenever
    (x, alpha_i) < 0 and s_i x stays below the bound.
    """
    n = len(mult)
    out = {}
    todo = []
    for i in range(n):
        if bound[i] >= 1:
            e = tuple(int(k == i) for k in range(n))
            out[e] = "real"
            todo.append(e)
    for u in all_vectors(bound):
        if sum(u) == 1:
            continue
        supp = [i for i in range(n) if u[i]]
        if connected(mult, supp) and all(pair(mult, u, tuple(int(k == i) for k in range(n))) <= 0 for i in range(n)):
            out[u] = "isotropic" if pair(mult, u, u) == 0 else "non-isotropic"
            todo.append(u)
    while todo:
        x = todo.pop()
        for i in range(n):
            c = sum(x[k] * cartan(mult, k, i) for k in range(n))
            if c < 0:
                y = list(x)
                y[i] -= c
                y = tuple(y)
                if all(a <= b for a, b in zip(y, bound)) and y not in out:
                    out[y] = out[x]
                    todo.append(y)
    return out


def decomposition_oracle(mult, bound, lam=None, max_count=3):
    """best[(u, k)]: max of sum p over multisets of roots summing to u with
    min(#parts, max_count) == k.

    Multisets are enumerated as nondecreasing sequences of root indices.
    """
    n = len(mult)
    lam = lam or [0] * n
    roots = sorted(r for r in roots_oracle(mult, bound) if sum(Fraction(l) * x for l, x in zip(lam, r)) == 0)
    ps = [p_of(mult, r) for r in roots]
    best = {}
    seen = {}
    # root indices fitting in each room vector, ascending
    fits = {room: [k for k, r in enumerate(roots) if all(x <= y for x, y in zip(r, room))]
            for room in itertools.product(*(range(b + 1) for b in bound))}

    def rec(start, total, count, value):
        # a state reached again with no better value has the same continuations
        state = (start, total, min(count, max_count))
        if seen.get(state, NEG) >= value:
            return
        seen[state] = value
        room = tuple(b - t for b, t in zip(bound, total))
        idx = fits[room]
        for k in idx[bisect.bisect_left(idx, start):]:
            r = roots[k]
            t = tuple(a + b for a, b in zip(total, r))
            c = min(count + 1, max_count)
            v = value + ps[k]
            if best.get((t, c), NEG) < v:
                best[(t, c)] = v
            rec(k, t, count + 1, v)

    rec(0, (0,) * n, 0, 0)
    return best


def best_with_min_parts(best, u, min_parts, max_count=3):
    if min_parts <= 0 and not any(u):
        return 0
    vals = [best.get((u, c), NEG) for c in range(max(min_parts, 1), max_count + 1)]
    return max(vals)


def sigma_oracle(mult, bound, lam=None, best=None):
    """Set of Sigma_lam members below bound, by exhaustive decomposition.

    ``best`` may pass in a decomposition_oracle table for the same arguments.
    """
    n = len(mult)
    lam = lam or [0] * n
    roots = roots_oracle(mult, bound)
    if best is None:
        best = decomposition_oracle(mult, bound, lam)
    out = set()
    for r in roots:
        if sum(Fraction(l) * x for l, x in zip(lam, r)) != 0:
            continue
        if p_of(mult, r) > best_with_min_parts(best, r, 2):
            out.add(r)
    return out


def affine_delta(cmat):
    """Minimal imaginary root if cmat is a connected affine symmetric Cartan matrix.

    Brute force: search positive integer vectors in the kernel up to size 6
    and require positive semidefiniteness via all principal minors.
    """
    n = len(cmat)
    for size in range(1, 7):
        for d in itertools.product(range(1, size + 1), repeat=n):
            if max(d) != size:
                continue
            if math.gcd(*d) != 1:
                continue
            if all(sum(cmat[i][j] * d[j] for j in range(n)) == 0 for i in range(n)):
                if _semidefinite(cmat) and _corank(cmat) == 1:
                    return d
    return None


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def _semidefinite(m):
    n = len(m)
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            if _det([[m[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True


def _corank(m):
    n = len(m)
    rank = 0
    for k in range(n, 0, -1):
        if any(_det([[m[i][j] for j in idx] for i in idx]) != 0
               for idx in itertools.combinations(range(n), k)):
            rank = k
            break
    return n - rank


def leaf_oracle(mult, a, sigma, roots):
    """Representation types of codimension-2 leaves of a, straight from the
    definition: decompositions into roots whose imaginary parts lie in Sigma_0
    (taken once each) and whose real parts are distinct simple roots, with
    affine component quiver of matching dimensions and 2 sum p = 2p(a) - 2.

    Returns a set of sorted part lists [(vector, mult), ...].
    """
    n = len(mult)
    pa = p_of(mult, a)
    supp = [i for i in range(n) if a[i]]
    candidates = sorted(r for r in roots if all(x <= y for x, y in zip(r, a)) and r != a)
    limit = pa + len(supp)
    out = set()

    def rec(start, parts, total):
        if total == a:
            check(parts)
            return
        if sum(1 for r in set(parts) if sum(r) == 1) + sum(1 for r in parts if sum(r) > 1) > limit:
            return
        for k in range(start, len(candidates)):
            r = candidates[k]
            t = tuple(x + y for x, y in zip(total, r))
            if all(x <= y for x, y in zip(t, a)):
                rec(k, parts + [r], t)

    def check(parts):
        simple = [r for r in parts if sum(r) == 1]
        imag = [r for r in parts if roots[r] != "real"]
        if len(simple) + len(imag) != len(parts):
            return  # non-simple real part
        if any(r not in sigma for r in imag):
            return
        if 2 * sum(p_of(mult, r) for r in imag) != 2 * pa - 2:
            return
        reals = sorted(set(simple))
        comps = imag + reals
        dims = [1] * len(imag) + [simple.count(r) for r in reals]
        m = len(comps)
        cm = [[2 if x == y else pair(mult, comps[x], comps[y]) for y in range(m)] for x in range(m)]
        if m < 2 or any(cm[x][y] > 0 for x in range(m) for y in range(m) if x != y):
            return
        if not connected([[-(cm[x][y]) if x != y else 0 for y in range(m)] for x in range(m)], range(m)):
            return
        d = affine_delta(cm)
        if d is None or list(d) != dims:
            return
        key = tuple(sorted([(r, 1) for r in imag] + [(r, simple.count(r)) for r in reals]))
        out.add(key)

    rec(0, [], (0,) * n)
    return out


def reflection_group_order(mult, gens, cap=100000):
    """Order of the group generated by simple reflections at gens, acting on Z^n."""
    n = len(mult)

    def refl(j):
        return tuple(
            tuple((1 if r == c else 0) - (cartan(mult, j, c) if r == j else 0) for c in range(n))
            for r in range(n)
        )

    def mul(x, y):
        return tuple(tuple(sum(x[r][k] * y[k][c] for k in range(n)) for c in range(n)) for r in range(n))

    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    mats = [refl(j) for j in gens]
    seen = {ident}
    todo = [ident]
    while todo:
        g = todo.pop()
        for s in mats:
            h = mul(g, s)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    return None
                todo.append(h)
    return len(seen)


def quivers_up_to_iso(n, max_mult):
    """One multiplicity matrix per isomorphism class of n-vertex multigraphs."""
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    out = []
    for ms in itertools.product(range(max_mult + 1), repeat=len(pairs)):
        mat = [[0] * n for _ in range(n)]
        for (i, j), m in zip(pairs, ms):
            mat[i][j] = mat[j][i] = m
        key = min(
            tuple(mat[perm[i]][perm[j]] for i, j in pairs) for perm in itertools.permutations(range(n))
        )
        if key not in seen:
            seen.add(key)
            out.append(tuple(tuple(r) for r in mat))
    return out
