"""Generalized Reed-Muller codes R_q(r, m).

A codeword is the value table of a reduced polynomial of total degree <= r.
Minimum-weight codewords can be found two ways: by scanning every
coefficient vector over the monomial basis (``"exhaustive"``), or by taking
the affine-group orbits of the canonical words
``c * prod_{i<=t} (x_i^(q-1) - 1) * prod_j (x_{t+1} - b_j)`` (``"orbit"``).
"""

from __future__ import annotations

import functools
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FieldSpec
from .geometry import AffineSpace, general_linear_images
from .poly import ReducedPoly, monomials, rp_degree, rp_interpolate, rp_to_table

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceededError",
    "GrmParams",
    "Codeword",
    "decompose_order",
    "min_weight",
    "dimension",
    "weight",
    "distance",
    "contains",
    "canonical_min_word",
    "canonical_min_words",
    "enumerate_min_words",
    "exhaustive_scan",
    "affine_orbit",
]

DEFAULT_BUDGET = 1 << 24


class BudgetExceededError(RuntimeError):
    pass


def decompose_order(r: int, q: int, m: int | None = None) -> tuple[int, int]:
    """``(t, s)`` with ``r = t*(q-1) + s`` and ``0 <= s <= q-2``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if r < 0 or (m is not None and r > m * (q - 1)):
        raise ValueError(f"order r={r} outside [0, m(q-1)]")
    return divmod(r, q - 1)


def dimension(q: int, m: int, r: int) -> int:
    """Number of reduced monomials of total degree <= r."""
    # coefficient of z^r in ((1 - z^q) / (1 - z))^m / (1 - z), by direct count
    counts = [1]
    for _ in range(m):
        nxt = [0] * (len(counts) + q - 1)
        for d, c in enumerate(counts):
            for e in range(q):
                nxt[d + e] += c
        counts = nxt
    return sum(counts[: r + 1])


@dataclass(frozen=True)
class GrmParams:
    field: FieldSpec
    m: int
    r: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be >= 1")
        decompose_order(self.r, self.q, self.m)

    @classmethod
    def of(cls, q: int, m: int, r: int) -> "GrmParams":
        return cls(FieldSpec.of_order(q), m, r)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def t(self) -> int:
        return decompose_order(self.r, self.q)[0]

    @property
    def s(self) -> int:
        return decompose_order(self.r, self.q)[1]

    @property
    def length(self) -> int:
        return self.q**self.m

    @property
    def w_min(self) -> int:
        return min_weight(self)

    @property
    def dim(self) -> int:
        return dimension(self.q, self.m, self.r)

    @property
    def space(self) -> AffineSpace:
        return AffineSpace(self.field, self.m)

    @property
    def in_theorem_range(self) -> bool:
        return self.r < self.m * (self.q - 1)

    def to_dict(self) -> dict:
        return {
            "q": self.q, "p": self.field.p, "n": self.field.n, "m": self.m, "r": self.r,
            "t": self.t, "s": self.s, "w_min": self.w_min, "dim": self.dim,
        }  # fmt: skip

    def __str__(self) -> str:
        return f"R_{self.q}({self.r},{self.m})"


def min_weight(params: GrmParams) -> int:
    """``(q-s) * q^(m-t-1)``; 1 when r = m(q-1) (delta functions)."""
    if not params.in_theorem_range:
        return 1
    q, t, s = params.q, params.t, params.s
    return (q - s) * q ** (params.m - t - 1)


@dataclass(frozen=True, eq=False)
class Codeword:
    """A value table over F_q^m in canonical point order."""

    field: FieldSpec
    m: int
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.int64).reshape(-1)
        if vals.size != self.field.q**self.m:
            raise ValueError(f"table length {vals.size} is not q^m = {self.field.q ** self.m}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_poly(cls, P: ReducedPoly) -> "Codeword":
        return cls(P.field, P.m, rp_to_table(P))

    @functools.cached_property
    def weight(self) -> int:
        return weight(self.values)

    @functools.cached_property
    def support(self) -> np.ndarray:
        return np.nonzero(self.values)[0]

    def poly(self) -> ReducedPoly:
        return rp_interpolate(self.field, self.values, self.m)

    def key(self) -> bytes:
        return self.values.astype(np.uint16).tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Codeword):
            return NotImplemented
        return self.field == other.field and self.m == other.m and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.field, self.m, self.key()))

    def __lt__(self, other: "Codeword") -> bool:
        return tuple(self.values.tolist()) < tuple(other.values.tolist())

    def __repr__(self) -> str:
        return f"Codeword({self.field}, m={self.m}, [{','.join(map(str, self.values.tolist()))}])"


def weight(values: Sequence[int] | np.ndarray | Codeword) -> int:
    if isinstance(values, Codeword):
        values = values.values
    return int(np.count_nonzero(np.asarray(values)))


def distance(a: Codeword, b: Codeword) -> int:
    f = a.field
    return weight(f.add[a.values, f.neg[b.values]])


def contains(params: GrmParams, word: Codeword | Sequence[int] | np.ndarray) -> bool:
    """Membership: the interpolating polynomial has degree <= r."""
    values = word.values if isinstance(word, Codeword) else np.asarray(word)
    if values.size != params.length:
        raise ValueError(f"table length {values.size} is not q^m = {params.length}")
    return rp_degree(rp_interpolate(params.field, values, params.m)) <= params.r


def canonical_poly(params: GrmParams, c: int, b: Sequence[int]) -> ReducedPoly:
    f, m, t, s = params.field, params.m, params.t, params.s
    if not params.in_theorem_range:
        raise ValueError(f"canonical words need r < m(q-1); got {params}")
    if not 0 < c < f.q:
        raise ValueError("c must be a nonzero element")
    b = [int(x) for x in b]
    if len(b) != s or len(set(b)) != s or any(not 0 <= x < f.q for x in b):
        raise ValueError(f"need {s} distinct elements b_j, got {b}")
    out = ReducedPoly.constant(f, m, c)
    one = ReducedPoly.constant(f, m, 1)
    for i in range(t):
        out = out * (ReducedPoly.variable(f, m, i) ** (f.q - 1) - one)
    for bj in b:
        out = out * ReducedPoly.linear(f, m, t, bj)
    return out


def canonical_min_word(params: GrmParams, c: int, b: Sequence[int]) -> Codeword:
    return Codeword.from_poly(canonical_poly(params, c, b))


def canonical_min_words(params: GrmParams) -> list[Codeword]:
    """All canonical words (every nonzero c, every s-subset of b's)."""
    q = params.q
    return [
        canonical_min_word(params, c, b)
        for c in range(1, q)
        for b in itertools.combinations(range(q), params.s)
    ]


# -- enumeration -----------------------------------------------------------------


def generator_matrix(params: GrmParams) -> np.ndarray:
    """Rows are the tables of the basis monomials, graded order."""
    f, m = params.field, params.m
    rows = [rp_to_table(ReducedPoly(f, m, {e: 1})) for e in monomials(params.q, m, params.r)]
    return np.array(rows, dtype=np.int64).reshape(len(rows), params.length)


@dataclass(frozen=True)
class ScanResult:
    min_nonzero_weight: int
    words: np.ndarray  # rows of weight w_min, sorted
    scanned: int


def _encode_chunk(f: FieldSpec, G: np.ndarray, lo: int, hi: int) -> np.ndarray:
    q, k = f.q, G.shape[0]
    idx = np.arange(lo, hi, dtype=np.int64)
    digits = np.stack([(idx // q**i) % q for i in range(k)], axis=1)
    if f.n == 1:
        return (digits @ G) % q
    out = np.zeros((hi - lo, G.shape[1]), dtype=np.int64)
    for i in range(k):
        out = f.add[out, f.mul[digits[:, i : i + 1], G[i][None, :]]]
    return out


def exhaustive_scan(
    params: GrmParams, budget: int = DEFAULT_BUDGET, jobs: int = 1, chunk: int = 1 << 14
) -> ScanResult:
    """Weigh every codeword; keep the minimum nonzero weight and the w_min words."""
    total = params.q**params.dim
    if total > budget:
        raise BudgetExceededError(
            f"{params} has q^dim = {params.q}^{params.dim} codewords, over the budget {budget}; "
            "use orbit mode or raise --budget"
        )
    G = generator_matrix(params)
    w_min = params.w_min

    def work(lo: int) -> tuple[int, np.ndarray]:
        words = _encode_chunk(params.field, G, lo, min(lo + chunk, total))
        wts = np.count_nonzero(words, axis=1)
        nz = wts[wts > 0]
        low = int(nz.min()) if nz.size else params.length + 1
        return low, words[wts == w_min]

    starts = range(0, total, chunk)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(lo) for lo in starts]
    low = min(p[0] for p in parts)
    found = np.concatenate([p[1] for p in parts], axis=0)
    return ScanResult(low, _unique_rows(found, params.q), total)


def _unique_rows(rows: np.ndarray, q: int) -> np.ndarray:
    """Distinct rows in lexicographic order."""
    if rows.shape[0] == 0:
        return rows
    N = rows.shape[1]
    if N * np.log2(q) < 62:
        w = (q ** np.arange(N - 1, -1, -1, dtype=np.int64)).astype(np.int64)
        keys = rows.astype(np.int64) @ w
        _, first = np.unique(keys, return_index=True)
        return rows[first]
    return np.unique(rows, axis=0)


def _group_budget(space: AffineSpace, budget: int) -> None:
    q, m = space.q, space.m
    if q ** (m * m) > budget:
        raise BudgetExceededError(
            f"enumerating the {q}^{m * m} matrices of GA_{m}(F_{q}) exceeds the budget {budget}"
        )


def _orbit_rows(table: np.ndarray, space: AffineSpace, linear: np.ndarray) -> np.ndarray:
    """Tables of ``f o tau`` for all tau = (A, b), deduplicated."""
    q = space.q
    parts = []
    small = table.astype(np.uint8 if q <= 256 else np.int64)
    for b in range(space.size):
        shifted = small[space.vadd[:, b]]  # y -> f(y + b)
        parts.append(_unique_rows(shifted[linear], q))
    return _unique_rows(np.concatenate(parts, axis=0), q).astype(np.int64)


def affine_orbit(word: Codeword, params: GrmParams | None = None, budget: int = DEFAULT_BUDGET) -> list[Codeword]:
    """``{f o tau : tau in GA_m(F_q)}``, sorted, without duplicates."""
    space = AffineSpace(word.field, word.m)
    _group_budget(space, budget)
    if params is not None and not contains(params, word):
        raise ValueError(f"word is not in {params}")
    linear = general_linear_images(space, budget)
    rows = _orbit_rows(word.values, space, linear)
    return [Codeword(word.field, word.m, row) for row in rows]


def enumerate_min_words(
    params: GrmParams, mode: str = "exhaustive", budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> list[Codeword]:
    """All minimum-weight codewords, sorted by table."""
    if mode == "exhaustive":
        rows = exhaustive_scan(params, budget, jobs).words
    elif mode == "orbit":
        if not params.in_theorem_range:
            raise ValueError("orbit mode needs r < m(q-1)")
        space = params.space
        _group_budget(space, budget)
        linear = general_linear_images(space, budget)
        seeds = canonical_min_words(params)
        rows = _unique_rows(np.concatenate([_orbit_rows(w.values, space, linear) for w in seeds]), params.q)
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'exhaustive' or 'orbit'")
    return [Codeword(params.field, params.m, row) for row in rows]

