"""Reduced polynomials over F_q, i.e. functions F_q^m -> F_q.

Every exponent is kept in ``[0, q-1]``; products reduce with X^q = X.  A
polynomial and its evaluation table determine each other, and the table in
canonical point order (see :mod:`grmkit.geometry`) is the codeword view.

Text form: ``2*x1^2*x3 + x2 + 1``; coefficients are element codes.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .field import FieldElement, FieldSpec
from .geometry import AffineMap, AffineSpace

__all__ = [
    "ZERO_DEGREE",
    "ReducedPoly",
    "NotVanishingError",
    "reduce_exponent",
    "monomials",
    "rp_mul",
    "rp_eval",
    "rp_to_table",
    "rp_interpolate",
    "rp_degree",
    "divide_linear",
    "complement_factor",
    "insert_variable",
    "rp_affine_substitute",
    "parse_poly",
    "format_poly",
    "parse_table",
    "format_table",
]

ZERO_DEGREE = -math.inf


class NotVanishingError(ValueError):
    """A factorization precondition fails; ``witness`` is an offending point."""

    def __init__(self, message: str, witness: tuple[int, ...]):
        super().__init__(f"{message}; witness point {witness}")
        self.witness = witness


def reduce_exponent(e: int, q: int) -> int:
    """Exponent of X^e as a function on F_q (X^q = X)."""
    if e <= q - 1:
        return e
    return (e - 1) % (q - 1) + 1


def monomial_key(exps: Sequence[int]) -> tuple:
    """Graded order: total degree, then x1 before x2 before ..."""
    return (sum(exps), tuple(-e for e in exps))


def monomials(q: int, m: int, max_degree: int | None = None) -> list[tuple[int, ...]]:
    """Reduced exponent vectors of total degree <= max_degree, graded order."""
    exps = itertools.product(range(q), repeat=m)
    if max_degree is not None:
        exps = (e for e in exps if sum(e) <= max_degree)
    return sorted(exps, key=monomial_key)


@dataclass(frozen=True, eq=False)
class ReducedPoly:
    field: FieldSpec
    m: int
    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self) -> None:
        q = self.field.q
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.m or any(not 0 <= e < q for e in exps):
                raise ValueError(f"monomial {exps} is not reduced for q={q}, m={self.m}")
            c = int(c)
            if not 0 <= c < q:
                raise ValueError(f"coefficient {c} outside {self.field}")
            if c:
                clean[exps] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, m: int) -> "ReducedPoly":
        return cls(field, m, {})

    @classmethod
    def constant(cls, field: FieldSpec, m: int, c: int) -> "ReducedPoly":
        return cls(field, m, {(0,) * m: int(c)})

    @classmethod
    def variable(cls, field: FieldSpec, m: int, axis: int) -> "ReducedPoly":
        exps = [0] * m
        exps[axis] = 1
        return cls(field, m, {tuple(exps): 1})

    @classmethod
    def linear(cls, field: FieldSpec, m: int, axis: int, a: int) -> "ReducedPoly":
        """``x_axis - a``."""
        return cls.variable(field, m, axis) - cls.constant(field, m, a)

    @classmethod
    def indicator(cls, field: FieldSpec, m: int, axis: int, b: int) -> "ReducedPoly":
        """``1 - (x_axis - b)^(q-1)``: 1 on ``{x_axis = b}``, 0 elsewhere."""
        one = cls.constant(field, m, 1)
        return one - cls.linear(field, m, axis, b) ** (field.q - 1)

    @classmethod
    def delta(cls, field: FieldSpec, point: Sequence[int]) -> "ReducedPoly":
        m = len(point)
        out = cls.constant(field, m, 1)
        for axis, a in enumerate(point):
            out = out * cls.indicator(field, m, axis, int(a))
        return out

    @classmethod
    def random(
        cls, field: FieldSpec, m: int, rng: np.random.Generator, max_degree: int | None = None, density: float = 1.0
    ) -> "ReducedPoly":
        terms = {}
        for exps in monomials(field.q, m, max_degree):
            if rng.random() < density:
                terms[exps] = int(rng.integers(0, field.q))
        return cls(field, m, terms)

    # -- algebra -------------------------------------------------------------

    def _same(self, other: "ReducedPoly") -> None:
        if not isinstance(other, ReducedPoly):
            raise TypeError(f"expected ReducedPoly, got {type(other).__name__}")
        if other.field != self.field or other.m != self.m:
            raise ValueError(f"mismatched polynomials: {self.field}/{self.m} vs {other.field}/{other.m}")

    def __add__(self, other: "ReducedPoly") -> "ReducedPoly":
        self._same(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add_codes(out.get(e, 0), c)
        return ReducedPoly(f, self.m, out)

    def __neg__(self) -> "ReducedPoly":
        f = self.field
        return ReducedPoly(f, self.m, {e: f.neg_code(c) for e, c in self.terms.items()})

    def __sub__(self, other: "ReducedPoly") -> "ReducedPoly":
        return self + (-other)

    def __mul__(self, other: "ReducedPoly | FieldElement | int") -> "ReducedPoly":
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        return rp_mul(self, other)

    def __pow__(self, k: int) -> "ReducedPoly":
        out = ReducedPoly.constant(self.field, self.m, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: int) -> "ReducedPoly":
        f = self.field
        return ReducedPoly(f, self.m, {e: f.mul_codes(c, v) for e, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedPoly):
            return NotImplemented
        return self.field == other.field and self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, self.m, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection ------------------------------------------------------------

    @property
    def degree(self) -> float:
        return rp_degree(self)

    def degree_in(self, axis: int) -> float:
        if not self.terms:
            return ZERO_DEGREE
        return max(e[axis] for e in self.terms)

    def __call__(self, *point: int) -> int:
        return rp_eval(self, point)

    def table(self) -> np.ndarray:
        return rp_to_table(self)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"ReducedPoly({self.field}, m={self.m}, '{format_poly(self)}')"


def rp_mul(A: ReducedPoly, B: ReducedPoly) -> ReducedPoly:
    A._same(B)
    f, q = A.field, A.field.q
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in A.terms.items():
        for eb, cb in B.terms.items():
            e = tuple(reduce_exponent(x + y, q) for x, y in zip(ea, eb))
            out[e] = f.add_codes(out.get(e, 0), f.mul_codes(ca, cb))
    return ReducedPoly(f, A.m, out)


def rp_eval(P: ReducedPoly, x: Sequence[int]) -> int:
    if len(x) != P.m:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {P.m} variables")
    f = P.field
    total = 0
    for exps, c in P.terms.items():
        term = c
        for xi, e in zip(x, exps):
            term = f.mul_codes(term, f.pow_code(int(xi), e))
        total = f.add_codes(total, term)
    return total


# -- tables ----------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _vandermonde(field: FieldSpec) -> np.ndarray:
    """``V[a, e] = a**e``: coefficients to values along one axis."""
    return field.power.T.copy()


@functools.lru_cache(maxsize=None)
def _delta_coefficients(field: FieldSpec) -> np.ndarray:
    """``M[e, a]``: coefficient of x^e in 1 - (x - a)^(q-1)."""
    q = field.q
    M = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        minus_a = field.neg_code(a)
        for e in range(q):
            binom = field.from_int(math.comb(q - 1, e))
            term = field.mul_codes(binom, field.pow_code(minus_a, q - 1 - e))
            M[e, a] = field.sub_codes(int(e == 0), term)
    return M


def _apply_each_axis(field: FieldSpec, M: np.ndarray, tensor: np.ndarray) -> np.ndarray:
    """Contract ``M`` (q x q) against every axis of a (q,)*m code tensor."""
    q = field.q
    for axis in range(tensor.ndim):
        T = np.moveaxis(tensor, axis, 0).reshape(q, -1)
        prod = field.mul[M[:, :, None], T[None, :, :]]
        T = field.sum(prod, axis=1)
        tensor = np.moveaxis(T.reshape((q,) + np.moveaxis(tensor, axis, 0).shape[1:]), 0, axis)
    return tensor


def rp_to_table(P: ReducedPoly) -> np.ndarray:
    q, m = P.field.q, P.m
    C = np.zeros((q,) * m, dtype=np.int64)
    for exps, c in P.terms.items():
        C[exps] = c
    return _apply_each_axis(P.field, _vandermonde(P.field), C).reshape(q**m)


def rp_interpolate(field: FieldSpec, table: Sequence[int] | np.ndarray, m: int | None = None) -> ReducedPoly:
    """The unique reduced polynomial with the given value table."""
    T = np.asarray(table, dtype=np.int64)
    q = field.q
    if m is None:
        m = round(math.log(len(T), q)) if len(T) > 1 else 0
    if T.shape != (q**m,):
        raise ValueError(f"table length {T.size} is not q^m = {q}^{m}")
    if T.size and (T.min() < 0 or T.max() >= q):
        raise ValueError(f"table entries must be codes in [0, {q})")
    C = _apply_each_axis(field, _delta_coefficients(field), T.reshape((q,) * m))
    nz = np.argwhere(C)
    return ReducedPoly(field, m, {tuple(int(e) for e in idx): int(C[tuple(idx)]) for idx in nz})


def rp_degree(P: ReducedPoly) -> float:
    """Total degree; the zero polynomial has degree ``ZERO_DEGREE`` (-inf)."""
    if not P.terms:
        return ZERO_DEGREE
    return max(sum(e) for e in P.terms)


# -- the two factorization lemmas -------------------------------------------------


def _slice_values(P: ReducedPoly, axis: int, value: int) -> np.ndarray:
    q = P.field.q
    return np.take(rp_to_table(P).reshape((q,) * P.m), value, axis=axis)


def divide_linear(P: ReducedPoly, axis: int, a: int) -> ReducedPoly:
    """Q with ``(x_axis - a) * Q == P``, for P vanishing on ``{x_axis = a}``.

    ``axis`` is 0-based (axis 0 is x1).  Synthetic division in x_axis, so
    ``deg_axis(Q) <= deg_axis(P) - 1``.
    """
    f, q, m = P.field, P.field.q, P.m
    vals = _slice_values(P, axis, a)
    bad = np.argwhere(vals)
    if len(bad):
        rest = [int(c) for c in bad[0]]
        witness = tuple(rest[:axis] + [a] + rest[axis:])
        raise NotVanishingError(f"polynomial does not vanish on hyperplane x{axis + 1}={a}", witness)
    # coefficient polynomials in x_axis, keyed by the remaining exponents
    groups: dict[tuple[int, ...], list[int]] = {}
    for exps, c in P.terms.items():
        rest = exps[:axis] + exps[axis + 1 :]
        groups.setdefault(rest, [0] * q)[exps[axis]] = c
    out: dict[tuple[int, ...], int] = {}
    for rest, coeffs in groups.items():
        d = max(i for i, c in enumerate(coeffs) if c)
        b = 0
        for k in range(d, 0, -1):
            b = f.add_codes(coeffs[k], f.mul_codes(a, b))
            if b:
                out[rest[:axis] + (k - 1,) + rest[axis:]] = b
        assert f.add_codes(coeffs[0], f.mul_codes(a, b)) == 0, "nonzero remainder"
    return ReducedPoly(f, m, out)


def complement_factor(P: ReducedPoly, axis: int, b: int) -> ReducedPoly:
    """Q in the other m-1 variables with ``P == (1 - (x_axis - b)^(q-1)) * Q``.

    Requires P to vanish off ``{x_axis = b}``; Q is ``P`` with ``x_axis = b``.
    """
    f, q, m = P.field, P.field.q, P.m
    table = rp_to_table(P).reshape((q,) * m)
    off = np.delete(table, b, axis=axis)
    bad = np.argwhere(off)
    if len(bad):
        idx = [int(c) for c in bad[0]]
        idx[axis] += idx[axis] >= b
        raise NotVanishingError(f"polynomial is nonzero off hyperplane x{axis + 1}={b}", tuple(idx))
    out: dict[tuple[int, ...], int] = {}
    for exps, c in P.terms.items():
        rest = exps[:axis] + exps[axis + 1 :]
        val = f.mul_codes(c, f.pow_code(b, exps[axis]))
        out[rest] = f.add_codes(out.get(rest, 0), val)
    return ReducedPoly(f, m - 1, out)


def insert_variable(Q: ReducedPoly, axis: int) -> ReducedPoly:
    """View Q as a polynomial in one more variable, not involving x_axis."""
    return ReducedPoly(Q.field, Q.m + 1, {e[:axis] + (0,) + e[axis:]: c for e, c in Q.terms.items()})


def rp_affine_substitute(P: ReducedPoly, tau: AffineMap) -> ReducedPoly:
    """Reduced polynomial of ``x -> P(tau(x))``, via the permuted table."""
    if tau.field != P.field or tau.m != P.m:
        raise ValueError("affine map and polynomial disagree on field or dimension")
    perm = tau.perm(AffineSpace(P.field, P.m))
    return rp_interpolate(P.field, rp_to_table(P)[perm], P.m)


# -- text formats ---------------------------------------------------------------

_TERM = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def format_poly(P: ReducedPoly) -> str:
    if not P.terms:
        return "0"
    parts = []
    for exps in sorted(P.terms, key=monomial_key):
        c = P.terms[exps]
        factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def parse_poly(text: str, field: FieldSpec, m: int) -> ReducedPoly:
    """Parse ``c*x<i>^<e>*...`` terms joined by ``+``; exponents are reduced."""
    f, q = field, field.q
    out = ReducedPoly.zero(f, m)
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    for raw in text.split("+"):
        term = raw.strip().replace(" ", "")
        if not term:
            raise ValueError(f"empty term in {text!r}")
        coeff = 1
        exps = [0] * m
        for factor in term.split("*"):
            if factor.isdigit():
                c = int(factor)
                if c >= q:
                    raise ValueError(f"coefficient {c} is not an element code of {f}")
                coeff = f.mul_codes(coeff, c)
                continue
            match = _TERM.match(factor)
            if not match:
                raise ValueError(f"cannot parse factor {factor!r}")
            i = int(match.group(1))
            if not 1 <= i <= m:
                raise ValueError(f"variable x{i} outside x1..x{m}")
            exps[i - 1] += int(match.group(2) or 1)
        red = tuple(reduce_exponent(e, q) for e in exps)
        out = out + ReducedPoly(f, m, {red: coeff})
    return out


def format_table(table: Sequence[int] | np.ndarray) -> str:
    return ",".join(str(int(v)) for v in table)


def parse_table(text: str) -> np.ndarray:
    vals = [v for v in re.split(r"[,\s]+", text.strip()) if v]
    return np.array([int(v) for v in vals], dtype=np.int64)
