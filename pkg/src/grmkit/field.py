"""Finite fields GF(p^n) with an integer encoding of elements.

An element is encoded by the integer whose base-p digits (least significant
first) are the coefficients of its representing polynomial modulo the field's
modulus.  Codes ``0`` and ``1`` are the additive and multiplicative
identities, and for prime fields code arithmetic is plain arithmetic mod p.

Vectorised code paths (polynomial tables, geometry sweeps) index the
precomputed ``add``/``mul`` tables with numpy arrays of codes.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CONWAY",
    "FieldSpec",
    "FieldElement",
    "IncompatibleFieldsError",
    "GF",
    "ff_add",
    "ff_mul",
    "ff_inv",
    "ff_enumerate",
    "is_prime",
    "is_irreducible",
]

# Conway polynomials, coefficients low to high.
CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (3, 3): (1, 2, 0, 1),
}

TABLE_LIMIT = 256
MAX_ORDER = 1 << 16


class IncompatibleFieldsError(ValueError):
    """Operands live in different fields."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


# -- polynomials over F_p as coefficient lists, low to high ------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    dm = len(m) - 1
    lead_inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _polymul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(modulus) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod(modulus, list(low) + [1], p):
                return False
    return True


def _first_irreducible(p: int, n: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=n):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] and is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _digits(code: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(code % p)
        code //= p
    return out


def _undigits(digits: Sequence[int], p: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


@dataclass(frozen=True)
class FieldSpec:
    """Construction data of GF(p^n).

    ``modulus`` is monic of degree ``n`` (low-to-high coefficients).  When
    omitted, the Conway polynomial is used where tabulated, otherwise the
    first irreducible monic polynomial in code order.
    """

    p: int
    n: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 1:
            raise ValueError("extension degree must be >= 1")
        if self.p**self.n > MAX_ORDER:
            raise ValueError(f"q={self.p}**{self.n} exceeds {MAX_ORDER}")
        if not self.modulus:
            if self.n == 1:
                mod = (0, 1)
            else:
                mod = CONWAY.get((self.p, self.n)) or _first_irreducible(self.p, self.n)
            object.__setattr__(self, "modulus", tuple(mod))
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise ValueError(f"modulus {list(mod)} is not monic of degree {self.n}")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {list(mod)} is reducible over F_{self.p}")

    @classmethod
    def of_order(cls, q: int) -> "FieldSpec":
        for p in range(2, q + 1):
            if q % p == 0:
                break
        else:
            raise ValueError(f"no field of order {q}")
        n, rest = 0, q
        while rest % p == 0:
            rest //= p
            n += 1
        if rest != 1 or not is_prime(p):
            raise ValueError(f"{q} is not a prime power")
        return cls(p, n)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Inverse of :meth:`serialize`: ``p,n,[c0,c1,...,cn]``."""
        head, _, mod = text.partition("[")
        p, n = (int(x) for x in head.strip().rstrip(",").split(","))
        coeffs = tuple(int(c) for c in mod.rstrip("]").split(",") if c.strip())
        return cls(p, n, coeffs)

    def serialize(self) -> str:
        return f"{self.p},{self.n},[{','.join(map(str, self.modulus))}]"

    def __str__(self) -> str:
        return f"GF({self.q})"

    @property
    def q(self) -> int:
        return self.p**self.n

    # -- scalar arithmetic on codes --------------------------------------

    def add_codes(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return int(self.add[a, b])
        p, n = self.p, self.n
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, n), _digits(b, p, n))], p)

    def mul_codes(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return int(self.mul[a, b])
        return self._mul_slow(a, b)

    def neg_code(self, a: int) -> int:
        return int(self.neg[a]) if self.q <= TABLE_LIMIT else self._neg_slow(a)

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.q <= TABLE_LIMIT:
            return int(self.inv[a])
        return self.pow_code(a, self.q - 2)

    def sub_codes(self, a: int, b: int) -> int:
        return self.add_codes(a, self.neg_code(b))

    def pow_code(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul_codes(result, base)
            base = self.mul_codes(base, base)
            e >>= 1
        return result

    def from_int(self, k: int) -> int:
        """Code of the image of the integer ``k`` in the prime subfield."""
        return k % self.p

    def _mul_slow(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        prod = _polymul(_trim(_digits(a, p, n)), _trim(_digits(b, p, n)), p)
        red = _polymod(prod, self.modulus, p)
        return _undigits(red + [0] * (n - len(red)), p)

    def _neg_slow(self, a: int) -> int:
        p, n = self.p, self.n
        return _undigits([(-d) % p for d in _digits(a, p, n)], p)

    # -- tables ------------------------------------------------------------

    @functools.cached_property
    def add(self) -> np.ndarray:
        q, p, n = self.q, self.p, self.n
        digs = np.array([_digits(c, p, n) for c in range(q)], dtype=np.int64)
        weights = p ** np.arange(n, dtype=np.int64)
        summed = (digs[:, None, :] + digs[None, :, :]) % p
        return (summed @ weights).astype(np.int64)

    @functools.cached_property
    def mul(self) -> np.ndarray:
        q = self.q
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(1, q):
            for b in range(a, q):
                table[a, b] = table[b, a] = self._mul_slow(a, b)
        return table

    @functools.cached_property
    def neg(self) -> np.ndarray:
        return np.argmin(self.add, axis=1).astype(np.int64)

    @functools.cached_property
    def inv(self) -> np.ndarray:
        out = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 1)
        out[rows] = cols
        return out

    @functools.cached_property
    def power(self) -> np.ndarray:
        """``power[e, a] = a**e`` for ``0 <= e <= q-1`` (with ``0**0 = 1``)."""
        q = self.q
        out = np.zeros((q, q), dtype=np.int64)
        out[0] = 1
        for e in range(1, q):
            out[e] = self.mul[out[e - 1], np.arange(q)]
        return out

    # -- vectorised reductions ---------------------------------------------

    def sum(self, arr: np.ndarray, axis: int = 0) -> np.ndarray:
        """Field sum of a code array along ``axis``."""
        arr = np.moveaxis(np.asarray(arr), axis, 0)
        if arr.shape[0] == 0:
            return np.zeros(arr.shape[1:], dtype=np.int64)
        if self.n == 1:
            return arr.sum(axis=0) % self.p
        acc = arr[0]
        for row in arr[1:]:
            acc = self.add[acc, row]
        return acc

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(c, self) for c in range(self.q)]

    def __call__(self, code: int) -> "FieldElement":
        return FieldElement(code, self)


def GF(q: int, modulus: Iterable[int] | None = None) -> FieldSpec:
    """Field of order ``q``, optionally with an explicit modulus."""
    spec = FieldSpec.of_order(q)
    if modulus is not None:
        spec = FieldSpec(spec.p, spec.n, tuple(modulus))
    return spec


@dataclass(frozen=True)
class FieldElement:
    code: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if not 0 <= self.code < self.field.q:
            raise ValueError(f"code {self.code} outside {self.field}")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise IncompatibleFieldsError(f"{self.field} vs {other.field}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.add_codes(self.code, other.code), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.sub_codes(self.code, other.code), self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.mul_codes(self.code, other.code), self.field)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.neg_code(self.code), self.field)

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field.pow_code(self.code, e), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv_code(self.code), self.field)

    def __int__(self) -> int:
        return self.code

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"{self.field}({self.code})"

    def __str__(self) -> str:
        return str(self.code)


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def ff_enumerate(spec: FieldSpec) -> list[FieldElement]:
    return spec.elements()
