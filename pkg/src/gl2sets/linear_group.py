"""GL_2(F_q), its distinguished subgroups, and subgroup machinery.

Group elements are integers: positions in the lex-ordered list of entry
tuples ``(a, b, c, d)`` of invertible matrices ``[[a, b], [c, d]]``, each
entry a field index.  Matrices act on column vectors, so on the projective
line ``g . [x : y] = [a x + b y : c x + d y]``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ExtensionNotRegistered, GroupTooLarge
from .finite_field import FieldElement, FieldSpec, is_prime, quadratic_extension

MAX_GROUP_ORDER = 10 ** 7
TABLE_LIMIT = 6000
ALL_SUBGROUPS_LIMIT = 2500
MAX_SUBGROUP_CLASSES = 10 ** 5


def group_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class GroupElement:
    """A matrix ``[[a, b], [c, d]]`` over F_q."""

    entries: tuple[FieldElement, FieldElement, FieldElement, FieldElement]

    def __post_init__(self):
        if not self.det():
            raise ValueError("matrix is singular")

    def det(self) -> FieldElement:
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> FieldElement:
        return self.entries[0] + self.entries[3]

    def __matmul__(self, other: GroupElement) -> GroupElement:
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return GroupElement((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def rows(self) -> list[list[list[int]]]:
        """Entries as nested coefficient lists, ``[[a, b], [c, d]]``."""
        a, b, c, d = (list(x.coords) for x in self.entries)
        return [[a, b], [c, d]]


class Group:
    """All of GL_2(F_q), enumerated once.

    ``entries`` is an ``(order, 4)`` array of field indices; ``inverse`` maps
    element index to its inverse.  A full multiplication table is built on
    demand (:meth:`ensure_table`) for groups of order at most ``TABLE_LIMIT``;
    without it products are evaluated through the field tables.
    """

    def __init__(self, base: FieldSpec, max_order: int = MAX_GROUP_ORDER):
        q = base.cardinality
        if group_order(q) > max_order:
            raise GroupTooLarge(f"|GL_2(F_{q})| = {group_order(q)} exceeds {max_order}")
        self.base = base
        self.ext = quadratic_extension(base)
        self.q = q
        F = base
        dtype = np.int16 if q < 2 ** 15 else np.int32
        grid = np.indices((q,) * 4, dtype=np.int32).reshape(4, -1).T
        det = F.add[F.mul[grid[:, 0], grid[:, 3]], F.neg[F.mul[grid[:, 1], grid[:, 2]]]]
        self.entries = grid[det != 0].astype(dtype)
        del grid, det
        self.order = len(self.entries)
        assert self.order == group_order(q)
        self._index = np.full(q ** 4, -1, dtype=np.int32)
        self._index[self._keys(self.entries)] = np.arange(self.order, dtype=np.int32)
        self.identity = self.index((1, 0, 0, 1))
        self.inverse = self._compute_inverse()
        self._table = None
        for arr in (self.entries, self._index, self.inverse):
            arr.flags.writeable = False

    def __repr__(self):
        return f"GL_2(F_{self.q})"

    def _keys(self, ent: np.ndarray) -> np.ndarray:
        q = self.q
        e = ent.astype(np.int64)
        return ((e[..., 0] * q + e[..., 1]) * q + e[..., 2]) * q + e[..., 3]

    def _compute_inverse(self) -> np.ndarray:
        F = self.base
        a, b, c, d = (self.entries[:, k] for k in range(4))
        det = F.add[F.mul[a, d], F.neg[F.mul[b, c]]]
        di = F.inv[det]
        inv = np.stack([F.mul[di, d], F.mul[di, F.neg[b]], F.mul[di, F.neg[c]], F.mul[di, a]], axis=1)
        return self._index[self._keys(inv)]

    # -- element access -------------------------------------------------------

    def index(self, m) -> int:
        """Index of a matrix given as a GroupElement, 4-tuple or 2x2 nesting of field indices."""
        if isinstance(m, GroupElement):
            vals = [x.index for x in m.entries]
        else:
            vals = list(np.asarray(m).ravel())
            vals = [v.index if isinstance(v, FieldElement) else int(v) for v in vals]
        if len(vals) != 4 or not all(0 <= v < self.q for v in vals):
            raise ValueError(f"not a 2x2 matrix over F_{self.q}: {m!r}")
        i = int(self._index[self._keys(np.array(vals))])
        if i < 0:
            raise ValueError("matrix is singular")
        return i

    def element(self, i: int) -> GroupElement:
        return GroupElement(tuple(self.base.element(int(v)) for v in self.entries[i]))

    def elements(self) -> list[GroupElement]:
        return [self.element(i) for i in range(self.order)]

    @cached_property
    def all(self) -> np.ndarray:
        return np.arange(self.order)

    # -- products ---------------------------------------------------------------

    def _mul_entries(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        F = self.base
        M, S = F.mul, F.add
        a1, b1, c1, d1 = (A[..., k] for k in range(4))
        a2, b2, c2, d2 = (B[..., k] for k in range(4))
        return np.stack([
            S[M[a1, a2], M[b1, c2]], S[M[a1, b2], M[b1, d2]],
            S[M[c1, a2], M[d1, c2]], S[M[c1, b2], M[d1, d2]],
        ], axis=-1)

    def mul(self, g, h) -> np.ndarray:
        """Broadcasting product of element-index arrays."""
        g = np.asarray(g)
        h = np.asarray(h)
        if self._table is not None:
            return self._table[g, h]
        prod = self._mul_entries(self.entries[g], self.entries[h])
        return self._index[self._keys(prod)]

    def conj(self, g, h) -> np.ndarray:
        """``g h g^-1`` with broadcasting."""
        g = np.asarray(g)
        return self.mul(self.mul(g, h), self.inverse[g])

    def ensure_table(self) -> bool:
        """Materialise the multiplication table when the order allows it."""
        if self._table is None and self.order <= TABLE_LIMIT:
            n = self.order
            table = np.empty((n, n), dtype=np.int16)
            right = self.entries[None, :, :]
            for start in range(0, n, 256):
                rows = self.entries[start:start + 256, None, :]
                table[start:start + 256] = self._index[self._keys(self._mul_entries(rows, right))]
            table.flags.writeable = False
            self._table = table
        return self._table is not None

    def power(self, g, k: int) -> np.ndarray:
        g = np.asarray(g)
        result = np.full(g.shape, self.identity)
        base = g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        cur = self.all.copy()
        k = 1
        while (orders == 0).any():
            orders[(cur == self.identity) & (orders == 0)] = k
            cur = self.mul(cur, self.all)
            k += 1
        return orders

    def cyclic_members(self, g: int) -> np.ndarray:
        out = [self.identity]
        cur = int(g)
        while cur != self.identity:
            out.append(cur)
            cur = int(self.mul(cur, g))
        return np.array(sorted(out))

    # -- conjugacy classes --------------------------------------------------------

    def class_labels(self, elems=None) -> np.ndarray:
        """Conjugacy class label: ``a`` for the scalar ``aI``, else ``q + q*trace + det``.

        A non-scalar 2x2 matrix is cyclic, so its class is fixed by its
        characteristic polynomial.
        """
        elems = self.all if elems is None else np.asarray(elems)
        F, q = self.base, self.q
        e = self.entries[elems].astype(np.int64)
        a, b, c, d = e[..., 0], e[..., 1], e[..., 2], e[..., 3]
        tr = F.add[a, d].astype(np.int64)
        det = F.add[F.mul[a, d], F.neg[F.mul[b, c]]].astype(np.int64)
        scalar = (b == 0) & (c == 0) & (a == d)
        return np.where(scalar, a, q + q * tr + det)

    def class_representatives(self) -> np.ndarray:
        """One element per conjugacy class, ordered by label."""
        F, q = self.base, self.q
        reps = [self.index((a, 0, 0, a)) for a in range(1, q)]
        for tr in range(q):
            for det in range(1, q):
                reps.append(self.index((0, int(F.neg[det]), 1, tr)))
        return np.array(reps)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """``diag(w, 1)``, ``[[1, 1], [0, 1]]`` and ``[[0, 1], [1, 0]]`` generate GL_2."""
        w = self.base.primitive
        return (self.index((w, 0, 0, 1)), self.index((1, 1, 0, 1)), self.index((0, 1, 1, 0)))


@functools.lru_cache(maxsize=None)
def build_group(base: FieldSpec, max_order: int = MAX_GROUP_ORDER) -> Group:
    return Group(base, max_order)


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    group: Group
    members: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted({int(m) for m in self.members})))

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return bool(self.mask[int(g)])

    def __repr__(self):
        label = self.name or "Subgroup"
        return f"<{label} of {self.group!r}, order {self.order}>"

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.members, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[self.array] = True
        return m

    @cached_property
    def canonical_key(self) -> tuple[int, ...]:
        """Lex-smallest sorted member tuple over all G-conjugates."""
        return canonical_key(self.group, self.array)

    def issubset(self, other: Subgroup) -> bool:
        return bool(other.mask[self.array].all())

    def named(self, name: str) -> Subgroup:
        return Subgroup(self.group, self.members, name)


def whole_group(group: Group) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)), "G")


def trivial_subgroup(group: Group) -> Subgroup:
    return Subgroup(group, (group.identity,), "1")


def is_closed(group: Group, members: Sequence[int]) -> bool:
    arr = np.asarray(members)
    mask = np.zeros(group.order, dtype=bool)
    mask[arr] = True
    if group.identity not in set(arr.tolist()):
        return False
    return bool(mask[group.mul(arr[:, None], arr[None, :])].all() and mask[group.inverse[arr]].all())


def closure(group: Group, generators: Iterable) -> Subgroup:
    """Smallest subgroup containing ``generators`` (indices or GroupElements)."""
    gens = sorted({g if isinstance(g, (int, np.integer)) else group.index(g) for g in generators})
    gens = np.array([int(g) for g in gens], dtype=np.int64)
    seen = np.zeros(group.order, dtype=bool)
    seen[group.identity] = True
    frontier = np.array([group.identity])
    while len(frontier) and len(gens):
        prod = np.unique(group.mul(frontier[:, None], gens[None, :]))
        frontier = prod[~seen[prod]]
        seen[frontier] = True
    return Subgroup(group, tuple(np.flatnonzero(seen)))


def set_product(group: Group, A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    return np.unique(group.mul(A[:, None], B[None, :]))


def conjugate(H: Subgroup, g: int) -> Subgroup:
    return Subgroup(H.group, tuple(H.group.conj(g, H.array)))


def conjugate_rows(group: Group, members, by=None) -> np.ndarray:
    """Distinct conjugates ``g M g^-1`` for ``g`` in ``by``, as sorted rows, lex-sorted."""
    by = group.all if by is None else np.asarray(by)
    members = np.asarray(members)
    rows = np.empty((len(by), len(members)), dtype=np.int64)
    step = max(1, 2 ** 21 // max(1, len(members)))
    for s in range(0, len(by), step):
        g = by[s:s + step, None]
        rows[s:s + step] = group.conj(g, members[None, :])
    rows.sort(axis=1)
    return np.unique(rows, axis=0)


def canonical_key(group: Group, members, by=None) -> tuple[int, ...]:
    return tuple(int(x) for x in conjugate_rows(group, members, by)[0])


def normalizer(group: Group, H: Subgroup, ambient: Subgroup | None = None) -> Subgroup:
    amb = group.all if ambient is None else ambient.array
    ok = np.ones(len(amb), dtype=bool)
    step = max(1, 2 ** 21 // max(1, H.order))
    for s in range(0, len(amb), step):
        g = amb[s:s + step, None]
        ok[s:s + step] = H.mask[group.conj(g, H.array[None, :])].all(axis=1)
    return Subgroup(group, tuple(amb[ok]))


def are_conjugate(group: Group, H1: Subgroup, H2: Subgroup,
                  ambient: Subgroup | None = None) -> int | None:
    """Some ``g`` in ``ambient`` with ``g H1 g^-1 = H2``, else ``None``."""
    if H1.order != H2.order:
        return None
    o = group.element_orders if group.order <= TABLE_LIMIT else None
    if o is not None and sorted(o[H1.array]) != sorted(o[H2.array]):
        return None
    amb = group.all if ambient is None else ambient.array
    step = max(1, 2 ** 21 // max(1, H1.order))
    for s in range(0, len(amb), step):
        g = amb[s:s + step]
        hit = H2.mask[group.conj(g[:, None], H1.array[None, :])].all(axis=1)
        if hit.any():
            return int(g[np.argmax(hit)])
    return None


def conjugate_into(group: Group, H: Subgroup, K: Subgroup,
                   ambient: Subgroup | None = None) -> int | None:
    """Some ``g`` in ``ambient`` with ``g H g^-1`` contained in ``K``."""
    amb = group.all if ambient is None else ambient.array
    step = max(1, 2 ** 21 // max(1, H.order))
    for s in range(0, len(amb), step):
        g = amb[s:s + step]
        hit = K.mask[group.conj(g[:, None], H.array[None, :])].all(axis=1)
        if hit.any():
            return int(g[np.argmax(hit)])
    return None


def element_order(group: Group, g: int) -> int:
    k, cur = 1, int(g)
    while cur != group.identity:
        cur = int(group.mul(cur, g))
        k += 1
    return k


def is_cyclic(H: Subgroup) -> bool:
    group = H.group
    if H.order == 1:
        return True
    n = H.order
    # an element of order n exists iff some member avoids every maximal power
    arr = H.array
    ok = np.ones(len(arr), dtype=bool)
    for p in prime_factors(n):
        ok &= group.power(arr, n // p) != group.identity
    return bool(ok.any())


def cyclic_generator(H: Subgroup) -> int:
    group, arr, n = H.group, H.array, H.order
    ok = np.ones(len(arr), dtype=bool)
    for p in prime_factors(n):
        ok &= group.power(arr, n // p) != group.identity
    if not ok.any():
        raise ValueError("subgroup is not cyclic")
    return int(arr[np.argmax(ok)])


def is_l_group(H: Subgroup, l: int) -> bool:
    n = H.order
    while n % l == 0:
        n //= l
    return n == 1


def derived_subgroup(H: Subgroup) -> Subgroup:
    group, arr = H.group, H.array
    ab = group.mul(arr[:, None], arr[None, :])
    ainv_binv = group.mul(group.inverse[arr][:, None], group.inverse[arr][None, :])
    comms = np.unique(group.mul(ab, ainv_binv))
    return closure(group, comms.tolist())


def is_solvable(H: Subgroup) -> bool:
    cur = H
    while cur.order > 1:
        nxt = derived_subgroup(cur)
        if nxt.order == cur.order:
            return False
        cur = nxt
    return True


# ---------------------------------------------------------------------------
# quotients by normal subgroups

class Quotient:
    """``ambient / kernel`` as a table over coset representatives.

    Representatives are the smallest element index of each coset; the
    multiplication table multiplies representatives and looks the coset up.
    """

    def __init__(self, ambient: Subgroup, kernel: Subgroup):
        group = ambient.group
        if not kernel.issubset(ambient):
            raise ValueError("kernel is not contained in the ambient subgroup")
        A, K = ambient.array, kernel.array
        if not kernel.mask[group.conj(A[:, None], K[None, :])].all():
            raise ValueError("kernel is not normal in the ambient subgroup")
        labels = group.mul(A[:, None], K[None, :]).min(axis=1)
        reps, inv = np.unique(labels, return_inverse=True)
        self.group, self.ambient, self.kernel = group, ambient, kernel
        self.reps = reps
        self.coset_index = np.full(group.order, -1, dtype=np.int64)
        self.coset_index[A] = inv
        self.table = self.coset_index[group.mul(reps[:, None], reps[None, :])]
        self.identity = int(self.coset_index[group.identity])
        self.order = len(reps)
        self.inverse = self.coset_index[group.inverse[reps]]

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != self.identity:
            cur = int(self.table[cur, i])
            k += 1
        return k

    def generated(self, gens: Iterable[int]) -> list[int]:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def preimage(self, cosets: Iterable[int], name: str = "") -> Subgroup:
        wanted = np.zeros(self.order, dtype=bool)
        wanted[list(cosets)] = True
        A = self.ambient.array
        return Subgroup(self.group, tuple(A[wanted[self.coset_index[A]]]), name)

    def image(self, H: Subgroup) -> list[int]:
        return sorted(set(self.coset_index[H.array].tolist()))


def is_dihedral(Q: Quotient, cosets: Sequence[int] | None = None) -> bool:
    """Whether the quotient (or the sub-quotient on ``cosets``) is dihedral of order >= 4.

    Dihedral of order ``2m``: some ``r`` of order ``m`` and ``s`` of order 2
    outside ``<r>`` with ``s r s^-1 = r^-1``; for ``m = 2`` this is the Klein
    four-group.
    """
    els = list(range(Q.order)) if cosets is None else list(cosets)
    n = len(els)
    if n < 4 or n % 2:
        return False
    m = n // 2
    orders = {x: Q.element_order(x) for x in els}
    for r in els:
        if orders[r] != m:
            continue
        rot = set(Q.generated([r]))
        rinv = int(Q.inverse[r])
        for s in els:
            if orders[s] == 2 and s not in rot:
                if int(Q.table[Q.table[s, r], Q.inverse[s]]) == rinv:
                    return True
    return False


# ---------------------------------------------------------------------------
# projective lines

def projective_point_count(field: FieldSpec) -> int:
    return field.cardinality + 1


def projective_points(field: FieldSpec) -> list[tuple[int, int]]:
    """Normalised points: ``[0:1]`` then ``[1:t]`` for ``t`` in index order."""
    return [(0, 1)] + [(1, t) for t in range(field.cardinality)]


def point_index(field: FieldSpec, x: int, y: int) -> int:
    if x == 0:
        if y == 0:
            raise ValueError("[0:0] is not a projective point")
        return 0
    return 1 + int(field.mul[y, field.inv[x]])


def projective_images(group: Group, elems, over_extension: bool = False,
                      points=None) -> np.ndarray:
    """``images[i, j]`` = index of ``elems[i] . point_j`` on P^1(F) or P^1(F')."""
    elems = np.asarray(elems).ravel()
    E = group.entries[elems].astype(np.int64)
    F = group.ext if over_extension else group.base
    if over_extension:
        E = F.embedding[E]
    Q = F.cardinality
    xs = np.concatenate([[0], np.ones(Q, dtype=np.int64)])
    ys = np.concatenate([[1], np.arange(Q)])
    if points is not None:
        points = np.asarray(points)
        xs, ys = xs[points], ys[points]
    a, b, c, d = (E[:, k:k + 1] for k in range(4))
    X = F.add[F.mul[a, xs[None, :]], F.mul[b, ys[None, :]]].astype(np.int64)
    Y = F.add[F.mul[c, xs[None, :]], F.mul[d, ys[None, :]]].astype(np.int64)
    return np.where(X == 0, 0, 1 + F.mul[Y, F.inv[X]].astype(np.int64))


def sigma_on_points(ext: FieldSpec) -> np.ndarray:
    """Frobenius on P^1(F'), coordinatewise."""
    return np.concatenate([[0], 1 + ext.frobenius_table]).astype(np.int64)


@dataclass(frozen=True)
class StandardSubgroups:
    B: Subgroup
    T: Subgroup
    N: Subgroup
    Tprime: Subgroup
    Nprime: Subgroup
    center: Subgroup
    infinity: int
    zero: int
    P0: int
    sigma_P0: int
    delta: int

    def as_dict(self) -> dict[str, Subgroup]:
        return {"B": self.B, "T": self.T, "N": self.N, "Tprime": self.Tprime,
                "Nprime": self.Nprime, "center": self.center}


def _stabilizer_mask(images: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    return np.all(images == np.asarray(targets)[None, :], axis=1)


@functools.lru_cache(maxsize=None)
def standard_subgroups(group: Group) -> StandardSubgroups:
    if group.ext is None or group.ext.subfield is not group.base:
        raise ExtensionNotRegistered("quadratic extension missing")
    ext = group.ext
    inf, zero = 1, 0  # [1:0] and [0:1]
    base_img = projective_images(group, group.all, points=[inf, zero])
    b_mask = base_img[:, 0] == inf
    t_mask = b_mask & (base_img[:, 1] == zero)
    n_mask = t_mask | ((base_img[:, 0] == zero) & (base_img[:, 1] == inf))
    outside = np.setdiff1d(np.arange(ext.cardinality), ext.embedding)
    delta = int(outside[0])
    P0 = 1 + delta
    sP0 = int(sigma_on_points(ext)[P0])
    ext_img = projective_images(group, group.all, over_extension=True, points=[P0, sP0])
    tp_mask = ext_img[:, 0] == P0
    np_mask = tp_mask | ((ext_img[:, 0] == sP0) & (ext_img[:, 1] == P0))
    e = group.entries
    c_mask = (e[:, 1] == 0) & (e[:, 2] == 0) & (e[:, 0] == e[:, 3])

    def sub(mask, name):
        return Subgroup(group, tuple(np.flatnonzero(mask)), name)

    return StandardSubgroups(
        B=sub(b_mask, "B"), T=sub(t_mask, "T"), N=sub(n_mask, "N"),
        Tprime=sub(tp_mask, "Tprime"), Nprime=sub(np_mask, "Nprime"),
        center=sub(c_mask, "center"), infinity=inf, zero=zero,
        P0=P0, sigma_P0=sP0, delta=delta,
    )


# ---------------------------------------------------------------------------
# subgroup enumeration up to conjugacy

class _ClassRegistry:
    """Subgroups up to conjugacy in ``ambient``; membership is a set lookup over every conjugate."""

    def __init__(self, group: Group, ambient: Subgroup | None = None,
                 limit: int = MAX_SUBGROUP_CLASSES):
        self.group = group
        self.by = None if ambient is None else ambient.array
        self.limit = limit
        self.seen: set[tuple[int, ...]] = set()
        self.reps: dict[tuple[int, ...], Subgroup] = {}

    def add(self, members) -> Subgroup | None:
        t = tuple(int(x) for x in np.sort(np.asarray(members)))
        if t in self.seen:
            return None
        rows = conjugate_rows(self.group, np.array(t), by=self.by)
        for r in rows:
            self.seen.add(tuple(r.tolist()))
        if len(self.seen) > self.limit:
            raise GroupTooLarge(f"more than {self.limit} subgroups during enumeration")
        key = tuple(rows[0].tolist())
        rep = Subgroup(self.group, key)
        if self.by is None:
            object.__setattr__(rep, "canonical_key", key)
        self.reps[key] = rep
        return rep

    def sorted_reps(self) -> list[Subgroup]:
        return [self.reps[k] for k in sorted(self.reps, key=lambda k: (len(k), k))]


@functools.lru_cache(maxsize=None)
def cyclic_subgroups(group: Group) -> tuple[tuple[np.ndarray, ...], np.ndarray]:
    """All cyclic subgroups (member arrays) and, per element, the id of ``<g>``."""
    orders = group.element_orders
    maxo = int(orders.max())
    powers = np.empty((group.order, maxo), dtype=np.int64)
    cur = np.full(group.order, group.identity)
    for k in range(maxo):
        powers[:, k] = cur
        cur = group.mul(cur, group.all)
    ids: dict[tuple[int, ...], int] = {}
    cid = np.empty(group.order, dtype=np.int64)
    subs: list[np.ndarray] = []
    for g in range(group.order):
        t = tuple(sorted(powers[g, :orders[g]].tolist()))
        if t not in ids:
            ids[t] = len(subs)
            subs.append(np.array(t))
        cid[g] = ids[t]
    return tuple(subs), cid


def l_subgroups(group: Group, l: int, ambient: Subgroup | None = None) -> list[Subgroup]:
    """The l-subgroups of ``ambient`` (default G) up to conjugacy, trivial group included.

    Each l-subgroup ``P > 1`` has a normal subgroup ``P0`` of index ``l``, so
    ``P = P0 <x>`` with ``x`` normalising ``P0`` and ``x^l`` in ``P0``.
    """
    group.ensure_table()
    reg = _ClassRegistry(group, ambient)
    frontier = [reg.add([group.identity])]
    amb_order = group.order if ambient is None else ambient.order
    if amb_order % l:
        return reg.sorted_reps()
    while frontier:
        nxt = []
        for P in frontier:
            NP = normalizer(group, P, ambient).array
            xl = group.power(NP, l)
            cand = NP[P.mask[xl] & ~P.mask[NP]]
            tried: set[tuple[int, ...]] = set()
            for x in cand:
                pw = [group.identity]
                for _ in range(l - 1):
                    pw.append(int(group.mul(pw[-1], x)))
                members = set_product(group, pw, P.array)
                t = tuple(members.tolist())
                if t in tried:
                    continue
                tried.add(t)
                rep = reg.add(members)
                if rep is not None:
                    nxt.append(rep)
        frontier = nxt
    return reg.sorted_reps()


@functools.lru_cache(maxsize=None)
def cyclic_mod_l_subgroups(group: Group, l: int,
                           ambient: Subgroup | None = None) -> tuple[Subgroup, ...]:
    """Subgroups ``C`` with a normal l-subgroup ``P`` and ``C/P`` cyclic, up to conjugacy.

    Built as ``P <x>`` for every l-subgroup class ``P`` and every ``x`` in
    the normaliser of ``P``; conjugacy is taken in ``ambient`` (default G).
    Returned ordered by size, then canonical member tuple.
    """
    group.ensure_table()
    subs, cid = cyclic_subgroups(group)
    reg = _ClassRegistry(group, ambient)
    for P in l_subgroups(group, l, ambient):
        NP = normalizer(group, P, ambient).array
        for c in np.unique(cid[NP]):
            Z = subs[c]
            members = P.array if P.mask[Z].all() else set_product(group, P.array, Z)
            reg.add(members)
    return tuple(reg.sorted_reps())


def _prime_order_mod(group: Group, x: int, H: Subgroup) -> int | None:
    k, cur = 1, int(x)
    while not H.mask[cur]:
        cur = int(group.mul(cur, x))
        k += 1
    return k if is_prime(k) else None


@functools.lru_cache(maxsize=None)
def all_subgroups(group: Group) -> tuple[Subgroup, ...]:
    """Every subgroup class of G by cyclic extension.

    Starting from the cyclic classes, each class ``H`` is extended by every
    ``x`` normalising ``H`` whose coset ``xH`` has prime order.  This reaches
    every solvable subgroup; for non-solvable G the perfect subgroups are
    seeded from 2-generated closures first.
    """
    if group.order > ALL_SUBGROUPS_LIMIT:
        raise GroupTooLarge(f"all_subgroups is limited to |G| <= {ALL_SUBGROUPS_LIMIT}")
    group.ensure_table()
    subs, cid = cyclic_subgroups(group)
    reg = _ClassRegistry(group)
    queue = [r for r in map(reg.add, subs) if r is not None]
    if not is_solvable(whole_group(group)):
        seen_pairs: set[tuple[int, ...]] = set()
        for x in group.class_representatives():
            for y in range(group.order):
                K = closure(group, [int(x), y])
                if K.members in seen_pairs:
                    continue
                seen_pairs.add(K.members)
                if K.order > 1 and derived_subgroup(K) == K:
                    rep = reg.add(K.array)
                    if rep is not None:
                        queue.append(rep)
    while queue:
        H = queue.pop()
        NH = normalizer(group, H).array
        tried: set[tuple[int, ...]] = set()
        for x in NH[~H.mask[NH]]:
            k = _prime_order_mod(group, int(x), H)
            if k is None:
                continue
            members = set_product(group, H.array, subs[cid[x]])
            t = tuple(members.tolist())
            if t in tried:
                continue
            tried.add(t)
            rep = reg.add(members)
            if rep is not None:
                queue.append(rep)
    return tuple(reg.sorted_reps())


def is_cyclic_mod_l(H: Subgroup, l: int) -> bool:
    """Definition check: the largest normal l-subgroup has cyclic quotient.

    The largest normal l-subgroup is the intersection of the Sylow
    l-subgroups, i.e. of the conjugates of one Sylow subgroup of ``H``.
    """
    group = H.group
    n = H.order
    lpart = 1
    while n % l == 0:
        n //= l
        lpart *= l
    if lpart == 1:
        P = trivial_subgroup(group)
    else:
        P = _sylow(H, l, lpart)
        rows = conjugate_rows(group, P.array, by=H.array)
        common = set(rows[0].tolist())
        for r in rows[1:]:
            common &= set(r.tolist())
        P = Subgroup(group, tuple(common))
    Q = Quotient(H, P)
    return any(Q.element_order(i) == Q.order for i in range(Q.order))


def _sylow(H: Subgroup, l: int, lpart: int) -> Subgroup:
    group = H.group
    P = trivial_subgroup(group)
    while P.order < lpart:
        NP = normalizer(group, P, H).array
        for x in NP[~P.mask[NP]]:
            if P.mask[int(group.power(x, l))]:
                pw = [group.identity]
                for _ in range(l - 1):
                    pw.append(int(group.mul(pw[-1], x)))
                P = Subgroup(group, tuple(set_product(group, pw, P.array)))
                break
        else:
            raise AssertionError("Sylow construction stalled")
    return P
