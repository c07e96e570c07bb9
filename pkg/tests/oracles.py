"""Independent reference computations for the tests.

Nothing here uses the package's numpy tables: fields are coefficient tuples
reduced by hand, F_{q^2} is modelled as a tower F_q[t]/(t^2 + c1 t + c0), and
groups are sets of matrix tuples multiplied in pure Python.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class PolyField:
    """F_p[x]/(modulus); elements are coefficient tuples, low degree first."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.modulus = tuple(modulus)
        self.n = len(modulus) - 1
        self.elements = [tuple(c) for c in itertools.product(range(p), repeat=self.n)]
        # index convention: sum c_i p^i
        self.elements.sort(key=lambda c: sum(x * p ** i for i, x in enumerate(c)))
        self.zero = (0,) * self.n
        self.one = (1,) + (0,) * (self.n - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p, n, m = self.p, self.n, self.modulus
        prod = [0] * (2 * n)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * n - 1, n - 1, -1):
            c = prod[k]
            if c:
                for i in range(n + 1):
                    prod[k - n + i] = (prod[k - n + i] - c * m[i]) % p
        return tuple(prod[:n])

    @lru_cache(maxsize=None)
    def inv(self, a):
        for b in self.elements:
            if self.mul(a, b) == self.one:
                return b
        raise ZeroDivisionError

    def index(self, a) -> int:
        return sum(x * self.p ** i for i, x in enumerate(a))


class Tower:
    """F' = F[t]/(t^2 + c1 t + c0) over a PolyField F; elements are pairs (u, v) = u + v t."""

    def __init__(self, F: PolyField):
        self.F = F
        for c0, c1 in itertools.product(F.elements, repeat=2):
            # irreducible iff no root in F
            if all(F.add(F.add(F.mul(r, r), F.mul(c1, r)), c0) != F.zero for r in F.elements):
                self.c0, self.c1 = c0, c1
                break
        self.elements = [(u, v) for u in F.elements for v in F.elements]
        self.zero = (F.zero, F.zero)
        self.one = (F.one, F.zero)

    def add(self, a, b):
        F = self.F
        return (F.add(a[0], b[0]), F.add(a[1], b[1]))

    def mul(self, a, b):
        F = self.F
        u = F.mul(a[0], b[0])
        w = F.add(F.mul(a[0], b[1]), F.mul(a[1], b[0]))
        vv = F.mul(a[1], b[1])
        # t^2 = -c1 t - c0
        return (F.sub(u, F.mul(vv, self.c0)), F.sub(w, F.mul(vv, self.c1)))

    @lru_cache(maxsize=None)
    def inv(self, a):
        for b in self.elements:
            if self.mul(a, b) == self.one:
                return b
        raise ZeroDivisionError

    def power(self, a, k):
        r = self.one
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def embed(self, c):
        return (c, self.F.zero)


# ---------------------------------------------------------------------------
# projective lines over any of the two field models


def proj_points(K):
    zero, one = K.zero, K.one
    return [(zero, one)] + [(one, t) for t in K.elements]


def normalise(K, x, y):
    if x == K.zero:
        return (K.zero, K.one)
    ix = K.inv(x)
    return (K.one, K.mul(y, ix))


def act(K, m, pt, lift=lambda c: c):
    a, b, c, d = (lift(e) for e in m)
    x, y = pt
    return normalise(K, K.add(K.mul(a, x), K.mul(b, y)), K.add(K.mul(c, x), K.mul(d, y)))


# ---------------------------------------------------------------------------
# fixed counts of a set of matrices on X, Y, Xbar, Ybar, computed from scratch


def fixed_counts(F: PolyField, matrices) -> dict[str, int]:
    E = Tower(F)
    P = proj_points(F)
    PE = proj_points(E)
    fixedP = [pt for pt in P if all(act(F, m, pt) == pt for m in matrices)]
    fixedPE = [pt for pt in PE if all(act(E, m, pt, E.embed) == pt for m in matrices)]

    def sigma(pt):
        q = len(F.elements)
        return tuple(E.power(c, q) for c in pt)

    X = len(fixedP) * (len(fixedP) - 1) + 2
    pairs = {frozenset((a, b)) for a in P for b in P if a != b}
    Xbar = sum(all(frozenset(act(F, m, x) for x in pr) == pr for m in matrices) for pr in pairs) + 1
    Y = len(fixedPE) + len(fixedP)
    orbits = {frozenset((pt, sigma(pt))) for pt in PE}
    Ybar = sum(all(frozenset(act(E, mm, x, E.embed) for x in o) == o for mm in matrices) for o in orbits)
    return {"X": X, "Y": Y, "Xbar": Xbar, "Ybar": Ybar}


def matrices_from_witness(F: PolyField, rows) -> list[tuple]:
    """Witness matrices are [[a, b], [c, d]] with entries as coefficient lists."""
    out = []
    for (a, b), (c, d) in rows:
        out.append(tuple(tuple(e) + (0,) * (F.n - len(e)) for e in (a, b, c, d)))
    return out


# ---------------------------------------------------------------------------
# brute-force group theory on matrix tuples (only for q <= 5)


class BruteGroup:
    def __init__(self, F: PolyField):
        self.F = F
        els = []
        for m in itertools.product(F.elements, repeat=4):
            a, b, c, d = m
            if F.sub(F.mul(a, d), F.mul(b, c)) != F.zero:
                els.append(m)
        self.elements = els
        self.identity = (F.one, F.zero, F.zero, F.one)

    def mul(self, g, h):
        F = self.F
        a, b, c, d = g
        e, f, x, y = h
        return (F.add(F.mul(a, e), F.mul(b, x)), F.add(F.mul(a, f), F.mul(b, y)),
                F.add(F.mul(c, e), F.mul(d, x)), F.add(F.mul(c, f), F.mul(d, y)))

    def inv(self, g):
        F = self.F
        a, b, c, d = g
        di = F.inv(F.sub(F.mul(a, d), F.mul(b, c)))
        return (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))

    def closure(self, gens):
        S = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in S:
                        S.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(S)

    def conjugacy_classes(self):
        seen, classes = set(), []
        for g in self.elements:
            if g in seen:
                continue
            cls = {self.mul(self.mul(h, g), self.inv(h)) for h in self.elements}
            seen |= cls
            classes.append(frozenset(cls))
        return classes

    def all_subgroups(self):
        """Every subgroup (not up to conjugacy) by saturating joins of cyclic subgroups."""
        cyc = {self.closure([g]) for g in self.elements}
        subs = set(cyc)
        frontier = list(cyc)
        while frontier:
            nxt = []
            for H in frontier:
                for C in cyc:
                    if C <= H:
                        continue
                    K = self.closure(list(H) + list(C))
                    if K not in subs:
                        subs.add(K)
                        nxt.append(K)
            frontier = nxt
        return subs

    def conj_set(self, H, g):
        gi = self.inv(g)
        return frozenset(self.mul(self.mul(g, h), gi) for h in H)

    def conjugacy_class_key(self, H):
        return min(tuple(sorted(self.conj_set(H, g))) for g in self.elements)


def elem_order(bg: BruteGroup, g) -> int:
    k, x = 1, g
    while x != bg.identity:
        x = bg.mul(x, g)
        k += 1
    return k


def is_l_group(bg: BruteGroup, H, l) -> bool:
    n = len(H)
    while n % l == 0:
        n //= l
    return n == 1


def brute_cyclic_mod_l(bg: BruteGroup, H, l, all_subs) -> bool:
    """Some normal l-subgroup P of H with H/P cyclic."""
    for P in all_subs:
        if not P <= H or not is_l_group(bg, P, l):
            continue
        if any(bg.conj_set(P, h) != P for h in H):
            continue
        for g in H:
            coset_prod = frozenset(bg.mul(x, p) for x in bg.closure([g]) for p in P)
            if coset_prod == H:
                return True
    return False


def brute_bijection(U, V, elems) -> list[int] | None:
    """Backtracking search for an equivariant bijection U -> V.

    ``U`` and ``V`` are lists of permutations (one per element of ``elems``)."""
    n = len(U[0])
    if n != len(V[0]):
        return None
    f = [-1] * n
    used = [False] * n

    def consistent():
        for gu, gv in zip(U, V):
            for x in range(n):
                if f[x] >= 0 and f[gu[x]] >= 0 and f[gu[x]] != gv[f[x]]:
                    return False
        return True

    def extend(x):
        if x == n:
            return True
        for y in range(n):
            if used[y]:
                continue
            f[x], used[y] = y, True
            if consistent() and extend(x + 1):
                return True
            f[x], used[y] = -1, False
        return False

    return list(f) if extend(0) else None
