"""Isomorphism of permutation modules.

Over Q two permutation modules are isomorphic iff their characters (fixed
point counts) agree.  Over Z_(l) we use Conlon's criterion: ``Z_(l)[U]`` and
``Z_(l)[V]`` are isomorphic iff U and V are isomorphic as C-sets for every
subgroup C that is cyclic modulo l.  The criterion is taken as given; what
is computed is its quantifier, with witnesses.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import GroupMismatch, NotCyclic
from .gset import (
    FixedCountWitness,
    GSet,
    HSetComparison,
    fixed_count,
    hset_isomorphic,
    restrict,
)
from .linear_group import (
    Group,
    Subgroup,
    closure,
    cyclic_generator,
    cyclic_mod_l_subgroups,
    is_cyclic,
)

CLASSWISE_THRESHOLD = 10 ** 5


def worker_count() -> int:
    raw = os.environ.get("GL2_THREADS")
    if not raw:
        return 1
    return max(1, int(raw))


@dataclass(frozen=True, eq=False)
class PermCharacter:
    """Fixed-point counts on ``elements`` (all of G, or one element per class)."""

    group: Group
    elements: np.ndarray
    values: np.ndarray
    classwise: bool

    def __call__(self, g: int) -> int:
        if not self.classwise:
            return int(self.values[g])
        label = self.group.class_labels([g])[0]
        pos = np.flatnonzero(self.group.class_labels(self.elements) == label)[0]
        return int(self.values[pos])

    @property
    def degree(self) -> int:
        return self(self.group.identity)

    def __add__(self, other: PermCharacter) -> PermCharacter:
        if other.group is not self.group or not np.array_equal(other.elements, self.elements):
            raise GroupMismatch("characters evaluated on different elements")
        return PermCharacter(self.group, self.elements, self.values + other.values, self.classwise)


def perm_character(gset: GSet, classwise: bool | None = None) -> PermCharacter:
    if gset.acting is not None:
        raise GroupMismatch("permutation characters are taken for the full group action")
    group = gset.group
    if classwise is None:
        classwise = group.order > CLASSWISE_THRESHOLD
    elems = group.class_representatives() if classwise else group.all
    values = np.empty(len(elems), dtype=np.int64)
    ident = np.arange(gset.size)[None, :]
    for s in range(0, len(elems), 2048):
        values[s:s + 2048] = (gset.images(elems[s:s + 2048]) == ident).sum(axis=1)
    if not classwise:
        labels = group.class_labels()
        order = np.argsort(labels, kind="stable")
        lab, val = labels[order], values[order]
        starts = np.flatnonzero(np.r_[True, lab[1:] != lab[:-1]])
        first = np.repeat(val[starts], np.diff(np.r_[starts, len(lab)]))
        if not (first == val).all():
            raise AssertionError(f"character of {gset.name} is not a class function")
    return PermCharacter(group, elems, values, classwise)


@dataclass(frozen=True)
class QVerdict:
    isomorphic: bool
    witness_element: int | None
    values: tuple[int, int] | None

    def __bool__(self):
        return self.isomorphic


def q_module_isomorphic(U: GSet, V: GSet) -> QVerdict:
    """Q[U] and Q[V] are isomorphic iff the permutation characters agree."""
    if U.group is not V.group:
        raise GroupMismatch("sets over different groups")
    cu, cv = perm_character(U), perm_character(V)
    diff = np.flatnonzero(cu.values != cv.values)
    if len(diff) == 0:
        return QVerdict(True, None, None)
    k = int(diff[0])
    return QVerdict(False, int(cu.elements[k]), (int(cu.values[k]), int(cv.values[k])))


@dataclass(frozen=True)
class CyclicComparison:
    equal: bool
    witness: FixedCountWitness | None = None

    def __bool__(self):
        return self.equal


def cyclic_set_equal(U: GSet, V: GSet, C: Subgroup) -> CyclicComparison:
    """Fast C-set comparison for cyclic C: fixed counts of every subgroup of C.

    The subgroups of a cyclic group of order n are generated by ``g^(n/d)``
    for the divisors d of n, and their fixed points are those of the generator.
    """
    if not is_cyclic(C):
        raise NotCyclic(f"{C!r} is not cyclic")
    group = C.group
    if U.size != V.size:
        return CyclicComparison(False, FixedCountWitness(Subgroup(group, (group.identity,)),
                                                         U.size, V.size))
    n = C.order
    g = cyclic_generator(C)
    for d in range(1, n + 1):
        if n % d:
            continue
        h = int(group.power(g, n // d))
        fu, fv = fixed_count(U, h), fixed_count(V, h)
        if fu != fv:
            return CyclicComparison(False, FixedCountWitness(closure(group, [h]), fu, fv))
    return CyclicComparison(True)


@dataclass(frozen=True)
class ConlonVerdict:
    l: int
    isomorphic: bool
    checked: tuple[tuple[Subgroup, HSetComparison], ...]
    witness: tuple[Subgroup, HSetComparison] | None

    @property
    def overall(self) -> str:
        return "isomorphic" if self.isomorphic else "not_isomorphic"

    def __bool__(self):
        return self.isomorphic


def conlon_isomorphic(U: GSet, V: GSet, l: int, acting: Subgroup | None = None) -> ConlonVerdict:
    """Conlon's criterion for ``Z_(l)[U] ~ Z_(l)[V]`` as modules over ``acting`` (default G).

    Every cyclic-mod-l subgroup class of the acting group is checked, in
    canonical order; the first failure is the reported witness.
    """
    if U.group is not V.group:
        raise GroupMismatch("sets over different groups")
    group = U.group
    subgroups = cyclic_mod_l_subgroups(group, l, acting)
    RU = U if acting is None else restrict(U, acting)
    RV = V if acting is None else restrict(V, acting)

    def check(C: Subgroup) -> HSetComparison:
        return hset_isomorphic(RU, RV, C)

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, subgroups))
    else:
        results = [check(C) for C in subgroups]
    checked = tuple(zip(subgroups, results))
    witness = next(((C, r) for C, r in checked if not r), None)
    return ConlonVerdict(l, witness is None, checked, witness)
