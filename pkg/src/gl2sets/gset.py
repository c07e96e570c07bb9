"""Finite G-sets for G = GL_2(F_q): construction, orbits, fixed points, isomorphism.

A :class:`GSet` is a carrier (a tuple of labelled points) together with a
function sending an array of group-element indices to the table of their
images, ``images[i, x] = elems[i] . x``.  For groups of order at most
``FULL_TABLE_LIMIT`` the complete table for G is computed once at build time.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import GroupMismatch
from .finite_field import FieldSpec
from .linear_group import (
    Group,
    Subgroup,
    are_conjugate,
    canonical_key,
    projective_images,
    sigma_on_points,
    standard_subgroups,
)

FULL_TABLE_LIMIT = 10 ** 5


@dataclass(frozen=True)
class PPoint:
    """Normalised homogeneous point ``[x : y]`` (first nonzero coordinate is 1)."""

    field: FieldSpec = field(repr=False)
    x: int
    y: int

    def __str__(self):
        return f"[{self.field.element(self.x)!r}:{self.field.element(self.y)!r}]"


@dataclass(frozen=True)
class FormalPoint:
    tag: str

    def __str__(self):
        return self.tag


@dataclass(frozen=True)
class PointPair:
    first: PPoint
    second: PPoint
    ordered: bool

    def __str__(self):
        if self.ordered:
            return f"({self.first}, {self.second})"
        return f"{{{self.first}, {self.second}}}"


@dataclass(frozen=True)
class SigmaOrbit:
    points: tuple[PPoint, ...]

    def __str__(self):
        return "{" + ", ".join(map(str, self.points)) + "}"


@dataclass(frozen=True, eq=False)
class GSet:
    name: str
    group: Group
    carrier: tuple
    image_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    acting: Subgroup | None = None  # None means all of G

    @property
    def size(self) -> int:
        return len(self.carrier)

    def __len__(self):
        return len(self.carrier)

    @property
    def acting_array(self) -> np.ndarray:
        return self.group.all if self.acting is None else self.acting.array

    @property
    def acting_order(self) -> int:
        return self.group.order if self.acting is None else self.acting.order

    def images(self, elems) -> np.ndarray:
        elems = np.asarray(elems, dtype=np.int64)
        return self.image_fn(elems.ravel()).reshape(elems.shape + (self.size,))

    @cached_property
    def action(self) -> np.ndarray:
        """Image table for the acting group, rows aligned with ``acting_array``."""
        return self.images(self.acting_array)

    def act(self, g: int, x: int) -> int:
        return int(self.images([g])[0, x])


def _materialise(group: Group, fn: Callable[[np.ndarray], np.ndarray]) -> Callable:
    if group.order > FULL_TABLE_LIMIT:
        return fn
    table = fn(group.all)
    table.flags.writeable = False
    return lambda elems: table[elems]


def _assert_center_trivial(gset: GSet) -> GSet:
    center = standard_subgroups(gset.group).center
    img = gset.images(center.array)
    if not (img == np.arange(gset.size)[None, :]).all():
        raise AssertionError(f"scalars act nontrivially on {gset.name}")
    return gset


def _points(field_: FieldSpec) -> list[PPoint]:
    return [PPoint(field_, 0, 1)] + [PPoint(field_, 1, t) for t in range(field_.cardinality)]


def projective_line(group: Group, over_extension: bool = False) -> GSet:
    F = group.ext if over_extension else group.base
    name = "P1(F')" if over_extension else "P1(F)"
    fn = _materialise(group, lambda e: projective_images(group, e, over_extension))
    return _assert_center_trivial(GSet(name, group, tuple(_points(F)), fn))


def build_X(group: Group) -> GSet:
    """Ordered pairs of distinct points of P^1(F), plus two formal fixed points."""
    pts = _points(group.base)
    m = len(pts)
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    index = np.full((m, m), -1, dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        index[i, j] = k
    pi = np.array([i for i, _ in pairs])
    pj = np.array([j for _, j in pairs])
    n0 = len(pairs)

    def fn(e):
        A = projective_images(group, e)
        img = index[A[:, pi], A[:, pj]]
        fixed = np.broadcast_to(np.array([n0, n0 + 1]), (len(e), 2))
        return np.hstack([img, fixed])

    carrier = tuple(PointPair(pts[i], pts[j], True) for i, j in pairs)
    carrier += (FormalPoint("•1"), FormalPoint("•2"))
    return _assert_center_trivial(GSet("X", group, carrier, _materialise(group, fn)))


def build_Y(group: Group) -> GSet:
    """P^1(F') followed by a separate copy of P^1(F)."""
    ext_pts = _points(group.ext)
    base_pts = _points(group.base)
    off = len(ext_pts)

    def fn(e):
        return np.hstack([projective_images(group, e, True), off + projective_images(group, e)])

    carrier = tuple(ext_pts) + tuple(base_pts)
    return _assert_center_trivial(GSet("Y", group, carrier, _materialise(group, fn)))


def build_Xbar(group: Group) -> GSet:
    """Unordered pairs of distinct points of P^1(F), plus one formal fixed point."""
    pts = _points(group.base)
    m = len(pts)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    index = np.full((m, m), -1, dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        index[i, j] = index[j, i] = k
    pi = np.array([i for i, _ in pairs])
    pj = np.array([j for _, j in pairs])
    n0 = len(pairs)

    def fn(e):
        A = projective_images(group, e)
        img = index[A[:, pi], A[:, pj]]
        return np.hstack([img, np.full((len(e), 1), n0)])

    carrier = tuple(PointPair(pts[i], pts[j], False) for i, j in pairs) + (FormalPoint("•1"),)
    return _assert_center_trivial(GSet("Xbar", group, carrier, _materialise(group, fn)))


def sigma_orbits(group: Group) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Frobenius orbits on P^1(F'), ordered by smallest member, and point -> orbit map."""
    sig = sigma_on_points(group.ext)
    orbits = sorted({tuple(sorted((j, int(sig[j])))) if sig[j] != j else (j,)
                     for j in range(len(sig))})
    where = np.empty(len(sig), dtype=np.int64)
    for k, orb in enumerate(orbits):
        where[list(orb)] = k
    return orbits, where


def build_Ybar(group: Group) -> GSet:
    """P^1(F') modulo the Frobenius."""
    ext_pts = _points(group.ext)
    orbits, where = sigma_orbits(group)
    reps = np.array([orb[0] for orb in orbits])

    def fn(e):
        return where[projective_images(group, e, True, points=reps)]

    carrier = tuple(SigmaOrbit(tuple(ext_pts[j] for j in orb)) for orb in orbits)
    return _assert_center_trivial(GSet("Ybar", group, carrier, _materialise(group, fn)))


def coset_space(group: Group, H: Subgroup, name: str | None = None) -> GSet:
    """Left cosets ``gH`` (labelled by their smallest element) under left multiplication."""
    labels = group.mul(group.all[:, None], H.array[None, :]).min(axis=1)
    reps, where = np.unique(labels, return_inverse=True)

    def fn(e):
        return where[group.mul(e[:, None], reps[None, :])]

    name = name or f"G/{H.name or 'H'}"
    return GSet(name, group, tuple(int(r) for r in reps), _materialise(group, fn))


def disjoint_union(*sets: GSet, name: str | None = None) -> GSet:
    group = sets[0].group
    if any(s.group is not group for s in sets):
        raise GroupMismatch("disjoint union of sets over different groups")
    offsets = np.cumsum([0] + [s.size for s in sets])

    def fn(e):
        return np.hstack([s.images(e) + off for s, off in zip(sets, offsets)])

    carrier = tuple((k, c) for k, s in enumerate(sets) for c in s.carrier)
    return GSet(name or " ⊔ ".join(s.name for s in sets), group, carrier, fn)


def restrict(gset: GSet, H: Subgroup) -> GSet:
    if H.group is not gset.group:
        raise GroupMismatch("subgroup of a different group")
    if gset.acting is not None and not H.issubset(gset.acting):
        raise ValueError(f"{H!r} is not contained in the acting group of {gset.name}")
    return replace(gset, acting=H)


# ---------------------------------------------------------------------------
# orbits and fixed points

@dataclass(frozen=True)
class Orbit:
    points: tuple[int, ...]
    representative: int
    stabilizer: Subgroup

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class OrbitDecomposition:
    gset: GSet
    orbits: tuple[Orbit, ...]

    def sizes(self) -> list[int]:
        return [o.size for o in self.orbits]

    def profile(self) -> list[int]:
        return sorted(self.sizes(), reverse=True)

    def __len__(self):
        return len(self.orbits)


def orbit_decomposition(gset: GSet) -> OrbitDecomposition:
    act = gset.action
    elems = gset.acting_array
    seen = np.zeros(gset.size, dtype=bool)
    orbits = []
    for x in range(gset.size):
        if seen[x]:
            continue
        col = act[:, x]
        pts = np.unique(col)
        seen[pts] = True
        stab = Subgroup(gset.group, tuple(elems[col == x]))
        orbits.append(Orbit(tuple(int(p) for p in pts), x, stab))
    return OrbitDecomposition(gset, tuple(orbits))


def _as_elements(gset: GSet, S) -> np.ndarray:
    if isinstance(S, Subgroup):
        if gset.acting is not None and not S.issubset(gset.acting):
            raise ValueError("subgroup is not inside the acting group")
        return S.array
    if isinstance(S, (int, np.integer)):
        return np.array([int(S)])
    return np.array([gset.group.index(S)])


def fixed_points(gset: GSet, S) -> np.ndarray:
    img = gset.images(_as_elements(gset, S))
    return np.flatnonzero((img == np.arange(gset.size)[None, :]).all(axis=0))


def fixed_count(gset: GSet, S) -> int:
    """Points fixed by every element of ``S`` (a Subgroup, element index or GroupElement)."""
    return len(fixed_points(gset, S))


def action_axioms_hold(gset: GSet, pairs: Sequence[tuple[int, int]] | None = None) -> bool:
    """Identity acts trivially and ``(gh).x = g.(h.x)`` on the given pairs (default: all)."""
    group = gset.group
    if not (gset.images([group.identity])[0] == np.arange(gset.size)).all():
        return False
    if pairs is None:
        elems = gset.acting_array
        g, h = np.repeat(elems, len(elems)), np.tile(elems, len(elems))
    else:
        g, h = (np.array(v) for v in zip(*pairs))
    for s in range(0, len(g), 4096):
        gs, hs = g[s:s + 4096], h[s:s + 4096]
        lhs = gset.images(group.mul(gs, hs))
        rhs = np.take_along_axis(gset.images(gs), gset.images(hs), axis=1)
        if not (lhs == rhs).all():
            return False
    return True


# ---------------------------------------------------------------------------
# H-set isomorphism

@dataclass(frozen=True)
class FixedCountWitness:
    """A subgroup whose fixed-point counts on the two sets differ."""

    subgroup: Subgroup
    fixed_u: int
    fixed_v: int


@dataclass(frozen=True)
class HSetComparison:
    isomorphic: bool
    acting: Subgroup | None
    bijection: tuple[int, ...] | None = None
    witness: FixedCountWitness | None = None
    type_counts_u: tuple = ()
    type_counts_v: tuple = ()

    def __bool__(self):
        return self.isomorphic


def orbit_types(dec: OrbitDecomposition, H: Subgroup | None) -> list[tuple[int, ...]]:
    """Per orbit: the H-conjugacy class (canonical key) of the representative's stabilizer."""
    group = dec.gset.group
    by = None if H is None else H.array
    cache: dict[tuple[int, ...], tuple[int, ...]] = {}
    out = []
    for o in dec.orbits:
        m = o.stabilizer.members
        if m not in cache:
            cache[m] = canonical_key(group, o.stabilizer.array, by=by)
        out.append(cache[m])
    return out


def hset_isomorphic(U: GSet, V: GSet, H: Subgroup | None = None) -> HSetComparison:
    """Decide whether U and V are isomorphic as H-sets.

    Compares multisets of orbit types.  On success the result carries an
    equivariant bijection ``bijection[u] = v``; on failure a subgroup with
    different fixed-point counts on U and V.
    """
    if U.group is not V.group:
        raise GroupMismatch("sets over different groups")
    if H is None:
        H = U.acting
        if (V.acting is None) != (H is None) or (H is not None and V.acting != H):
            raise GroupMismatch("acting groups differ; pass H explicitly")
    RU = U if H is None else restrict(U, H)
    RV = V if H is None else restrict(V, H)
    decU, decV = orbit_decomposition(RU), orbit_decomposition(RV)
    tu, tv = orbit_types(decU, H), orbit_types(decV, H)
    cu, cv = Counter(tu), Counter(tv)
    counts_u = tuple(sorted((len(k), k, n) for k, n in cu.items()))
    counts_v = tuple(sorted((len(k), k, n) for k, n in cv.items()))
    if cu != cv:
        group = U.group
        for key in sorted(set(cu) | set(cv), key=lambda k: (len(k), k)):
            D = Subgroup(group, key)
            fu, fv = fixed_count(RU, D), fixed_count(RV, D)
            if fu != fv:
                return HSetComparison(False, H, None, FixedCountWitness(D, fu, fv),
                                      counts_u, counts_v)
        raise AssertionError("orbit types differ but no distinguishing marks found")

    group = U.group
    elems = RU.acting_array
    by_type: dict[tuple[int, ...], list[Orbit]] = {}
    for o, t in zip(decV.orbits, tv):
        by_type.setdefault(t, []).append(o)
    bij = np.full(U.size, -1, dtype=np.int64)
    for o, t in zip(decU.orbits, tu):
        ov = by_type[t].pop(0)
        c = are_conjugate(group, o.stabilizer, ov.stabilizer,
                          H if H is not None else None)
        assert c is not None
        u_star = int(RU.images([c])[0, o.representative])
        bij[RU.action[:, u_star]] = RV.action[:, ov.representative]
    return HSetComparison(True, H, tuple(int(v) for v in bij), None, counts_u, counts_v)


def is_equivariant_bijection(U: GSet, V: GSet, H: Subgroup | None,
                             bijection: Sequence[int]) -> bool:
    f = np.asarray(bijection)
    if U.size != V.size or sorted(f.tolist()) != list(range(V.size)):
        return False
    elems = U.group.all if H is None else H.array
    return bool((f[U.images(elems)] == V.images(elems)[:, f]).all())
