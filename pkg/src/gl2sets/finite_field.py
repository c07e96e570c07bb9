"""Exact arithmetic in F_q = F_p[x]/(m) and in its quadratic extension.

Elements are stored as coefficient vectors ``(c_0, ..., c_{n-1})`` of the
polynomial ``c_0 + c_1 x + ... + c_{n-1} x^{n-1}``.  Internally every field
carries dense lookup tables indexed by the integer ``sum c_i p^i``; that
integer is also the enumeration order, so ``enumerate_field(F4)`` yields
``0, 1, x, x+1``.

The quadratic extension of ``F_q`` is built directly as a degree ``2n``
field over ``F_p``.  The copy of ``F_q`` inside it is located once, at
registration, by sending ``x`` to the smallest root of the ``F_q`` modulus.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    IncompatibleFields,
    MixedFields,
    NotAnExtension,
    NotPrime,
    NotPrimePower,
)

MAX_DEGREE = 4
MAX_CARDINALITY = 81
# F_{53^2} is the largest extension any group under the size guard needs.
MAX_EXTENSION_CARDINALITY = 53 * 53


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, n)`` with ``q == p**n``, or raise ``NotPrimePower``."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, n


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists low -> high

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over F_p."""
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _trim(r)
    return r


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division of a monic polynomial by every monic of degree <= n/2."""
    n = len(modulus) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not poly_rem(modulus, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lex-smallest monic irreducible of degree n, compared high -> low.

    Returned low -> high, leading coefficient included.  For ``n == 1`` this
    is ``x``.
    """
    for high_first in itertools.product(range(p), repeat=n):
        modulus = tuple(reversed(high_first)) + (1,)
        if is_irreducible(modulus, p):
            return modulus
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")


# ---------------------------------------------------------------------------
# fields

class FieldSpec:
    """A finite field ``F_p[x]/(modulus)`` with dense arithmetic tables.

    Instances are immutable and compared by identity; :func:`make_field` and
    :func:`quadratic_extension` cache them so each field exists once.
    ``subfield`` is set only on registered quadratic extensions.
    """

    def __init__(self, p: int, n: int, modulus: Sequence[int],
                 subfield: FieldSpec | None = None):
        self.characteristic = p
        self.degree = n
        self.modulus = tuple(modulus)
        self.cardinality = p ** n
        self.subfield = subfield
        self._build_tables()
        if subfield is not None:
            self._register_subfield(subfield)
        for arr in (self.add, self.mul, self.neg, self.inv, self.digits):
            arr.flags.writeable = False

    def __repr__(self) -> str:
        tag = f" ⊃ F_{self.subfield.cardinality}" if self.subfield else ""
        return f"FieldSpec(F_{self.cardinality}, modulus={format_poly(self.modulus)}{tag})"

    @property
    def q(self) -> int:
        return self.cardinality

    # -- table construction -------------------------------------------------

    def _mulmod(self, i: int, j: int) -> int:
        p, m = self.characteristic, self.modulus
        prod = poly_rem(poly_mul(self.coords_of(i), self.coords_of(j), p), m, p)
        return self.index_of(prod)

    def coords_of(self, i: int) -> tuple[int, ...]:
        p = self.characteristic
        return tuple((i // p ** k) % p for k in range(self.degree))

    def index_of(self, coords: Sequence[int]) -> int:
        p = self.characteristic
        return sum((c % p) * p ** k for k, c in enumerate(coords))

    def _build_tables(self) -> None:
        p, n, Q = self.characteristic, self.degree, self.cardinality
        dtype = np.int16 if Q < 2 ** 15 else np.int32
        idx = np.arange(Q)
        digits = np.stack([(idx // p ** k) % p for k in range(n)], axis=1)
        self.digits = digits.astype(np.int64)

        add = np.zeros((Q, Q), dtype=np.int32)
        for k in range(n):
            dk = digits[:, k]
            add += ((dk[:, None] + dk[None, :]) % p).astype(np.int32) * p ** k
        self.add = add.astype(dtype)
        self.neg = (((-digits) % p) @ (p ** np.arange(n))).astype(dtype)

        # discrete logarithms w.r.t. the first primitive element
        exp = None
        for g in range(1, Q):
            powers = [1]
            cur = g
            while cur != 1:
                powers.append(cur)
                cur = self._mulmod(cur, g)
            if len(powers) == Q - 1:
                exp = np.array(powers, dtype=np.int64)
                self.primitive = g
                break
        if exp is None:  # Q == 2: the multiplicative group is trivial
            exp = np.array([1], dtype=np.int64)
            self.primitive = 1
        log = np.zeros(Q, dtype=np.int64)
        log[exp] = np.arange(Q - 1)
        self.exp, self.log = exp, log

        mul = exp[(log[:, None] + log[None, :]) % (Q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self.mul = mul.astype(dtype)
        inv = exp[(-log) % (Q - 1)]
        inv[0] = 0  # placeholder; division by zero is rejected upstream
        self.inv = inv.astype(dtype)

    def _register_subfield(self, sub: FieldSpec) -> None:
        if self.characteristic != sub.characteristic or self.degree != 2 * sub.degree:
            raise IncompatibleFields(f"{self!r} is not a quadratic extension of {sub!r}")
        # smallest root of the subfield modulus inside self
        root = None
        for a in range(self.cardinality):
            acc = 0
            for c in reversed(sub.modulus):
                acc = int(self.add[self.mul[acc, a], c])
            if acc == 0:
                root = a
                break
        if root is None:
            raise IncompatibleFields("subfield modulus has no root in the extension")
        self.root = root
        powers = [1]
        for _ in range(sub.degree - 1):
            powers.append(int(self.mul[powers[-1], root]))
        embed = np.zeros(sub.cardinality, dtype=np.int64)
        for i in range(sub.cardinality):
            acc = 0
            for c, pw in zip(sub.coords_of(i), powers):
                acc = int(self.add[acc, self.mul[c, pw]])  # c < p is its own index
            embed[i] = acc
        self.embedding = embed
        self.embedding.flags.writeable = False
        restrict = np.full(self.cardinality, -1, dtype=np.int64)
        restrict[embed] = np.arange(sub.cardinality)
        self.restriction = restrict
        self.restriction.flags.writeable = False
        q = sub.cardinality
        frob = self.exp[(self.log * q) % (self.cardinality - 1)]
        frob[0] = 0
        self.frobenius_table = frob
        self.frobenius_table.flags.writeable = False

    # -- element helpers ------------------------------------------------------

    def element(self, value: int | Sequence[int]) -> FieldElement:
        """Element from an integer index or a coefficient sequence (low -> high)."""
        if isinstance(value, (int, np.integer)):
            if not 0 <= value < self.cardinality:
                raise ValueError(f"index {value} out of range for F_{self.cardinality}")
            return FieldElement(self, self.coords_of(int(value)))
        coords = tuple(int(c) % self.characteristic for c in value)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    @property
    def gen(self) -> FieldElement:
        """The class of ``x``; equals 0 for a prime field (modulus ``x``)."""
        if self.degree == 1:
            return self.element(0)
        return self.element([0, 1] + [0] * (self.degree - 2))


@dataclass(frozen=True, eq=False)
class FieldElement:
    owner: FieldSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.owner.degree:
            raise ValueError("coordinate vector length must equal the field degree")
        if any(not 0 <= c < self.owner.characteristic for c in self.coords):
            raise ValueError("coordinates must be reduced mod p")

    @property
    def index(self) -> int:
        return self.owner.index_of(self.coords)

    def _same(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.owner is not self.owner:
            raise MixedFields(f"{self.owner!r} vs {other.owner!r}")

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, (int, np.integer)):
            p = self.owner.characteristic
            return self.owner.element([int(other) % p] + [0] * (self.owner.degree - 1))
        self._same(other)
        return other

    def _wrap(self, i) -> FieldElement:
        return FieldElement(self.owner, self.owner.coords_of(int(i)))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            self._same(other)
            return self.coords == other.coords
        if isinstance(other, (int, np.integer)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.owner), self.coords))

    def __bool__(self):
        return any(self.coords)

    def __add__(self, other):
        o = self._coerce(other)
        return self._wrap(self.owner.add[self.index, o.index])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.owner.neg[self.index])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return self._wrap(self.owner.mul[self.index, o.index])

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise DivisionByZero("0 has no inverse")
        return self._wrap(self.owner.inv[self.index])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.owner.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return format_poly(self.coords, trailing_monic=False)

    def multiplicative_order(self) -> int:
        if not self:
            raise DivisionByZero("0 has no multiplicative order")
        k, cur = 1, self
        while cur != 1:
            cur = cur * self
            k += 1
        return k


def format_poly(coeffs: Sequence[int], trailing_monic: bool = True, var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


# ---------------------------------------------------------------------------
# public operations

@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= n <= MAX_DEGREE:
        raise DegreeTooLarge(f"degree {n} outside 1..{MAX_DEGREE}")
    if p ** n > MAX_CARDINALITY:
        raise DegreeTooLarge(f"F_{p ** n} exceeds the cap of {MAX_CARDINALITY} elements")
    return FieldSpec(p, n, smallest_irreducible(p, n))


def field_of_order(q: int) -> FieldSpec:
    return make_field(*prime_power(q))


@functools.lru_cache(maxsize=None)
def quadratic_extension(base: FieldSpec) -> FieldSpec:
    """The registered degree-2 extension F_{q^2} of ``base``."""
    p, n = base.characteristic, base.degree
    if base.cardinality ** 2 > MAX_EXTENSION_CARDINALITY:
        raise DegreeTooLarge(f"F_{base.cardinality}^2 is too large to tabulate")
    return FieldSpec(p, 2 * n, smallest_irreducible(p, 2 * n), subfield=base)


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    a._same(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def embed(x: FieldElement, target: FieldSpec | None = None) -> FieldElement:
    if target is None:
        target = quadratic_extension(x.owner)
    if target.subfield is not x.owner:
        raise IncompatibleFields(f"{target!r} is not the registered extension of {x.owner!r}")
    return target.element(int(target.embedding[x.index]))


def _require_extension(x: FieldElement) -> FieldSpec:
    if x.owner.subfield is None:
        raise NotAnExtension(f"{x.owner!r} is not a registered quadratic extension")
    return x.owner


def frobenius(x: FieldElement) -> FieldElement:
    """``x -> x^q``, the nontrivial automorphism of F_{q^2} over F_q."""
    ext = _require_extension(x)
    return ext.element(int(ext.frobenius_table[x.index]))


def norm(x: FieldElement) -> FieldElement:
    """``x * frobenius(x)``, returned as an element of the subfield."""
    ext = _require_extension(x)
    i = int(ext.mul[x.index, ext.frobenius_table[x.index]])
    j = int(ext.restriction[i])
    assert j >= 0, "norm left the subfield"
    return ext.subfield.element(j)


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    return [spec.element(i) for i in range(spec.cardinality)]


def iter_nonzero(spec: FieldSpec) -> Iterator[FieldElement]:
    for i in range(1, spec.cardinality):
        yield spec.element(i)
