"""Affine geometry over F_q^m.

Points are handled by their canonical index ``sum(code(x_i) * q**(m-i))``
(x_1 most significant), so point sets are plain integer arrays.  Direction
vectors, hyperplane normals and affine maps carry element codes.

Canonical normal order (used for every "first hit" search): normals are
scaled so the first nonzero coordinate is 1, grouped by the position of that
leading 1 (x_1 first), then ordered lexicographically by code.  Hyperplanes
follow their normal, then the offset code.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .field import FieldSpec

__all__ = [
    "AffineSpace",
    "Hyperplane",
    "Flat",
    "AffineMap",
    "FlatUnion",
    "AvoidanceResult",
    "rref",
    "rank",
    "canonical_normals",
    "parallel_class",
    "affine_hull_rank",
    "is_flat",
    "find_avoiding_hyperplane",
    "flats_union_classify",
    "apply_affine",
    "read_points",
    "write_points",
]


# -- linear algebra over F_q ---------------------------------------------------


def rref(field: FieldSpec, rows: Sequence[Sequence[int]] | np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a code matrix and its pivot columns."""
    A = np.array(rows, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    A = A.copy()
    nrows, ncols = A.shape
    add, mul, neg = field.add, field.mul, field.neg
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = mul[field.inv_code(int(A[r, c])), A[r]]
        for i in range(nrows):
            if i != r and A[i, c]:
                A[i] = add[A[i], neg[mul[A[i, c], A[r]]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(field: FieldSpec, rows) -> int:
    return len(rref(field, rows)[1])


def nullspace(field: FieldSpec, rows, ncols: int) -> np.ndarray:
    """Basis (as rows) of ``{x : rows @ x = 0}``."""
    if len(rows) == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field.neg_code(int(R[i, f]))
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), ncols)


def canonical_normals(q: int, m: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors with leading coordinate 1, in canonical order."""
    for lead in range(m):
        for tail in itertools.product(range(q), repeat=m - lead - 1):
            yield (0,) * lead + (1,) + tail


# -- the ambient space -------------------------------------------------------


@dataclass(frozen=True)
class AffineSpace:
    field: FieldSpec
    m: int

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return self.q**self.m

    @functools.cached_property
    def coords(self) -> np.ndarray:
        """``coords[i]`` is the coordinate vector of point ``i``."""
        q, m = self.q, self.m
        idx = np.arange(q**m, dtype=np.int64)
        if m == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.stack([(idx // q ** (m - 1 - j)) % q for j in range(m)], axis=1)

    @functools.cached_property
    def weights(self) -> np.ndarray:
        return self.q ** np.arange(self.m - 1, -1, -1, dtype=np.int64)

    def index(self, point: Sequence[int]) -> int:
        if len(point) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(point)}")
        if any(not 0 <= int(c) < self.q for c in point):
            raise ValueError(f"coordinates of {tuple(point)} outside {self.field}")
        return int(np.dot(np.asarray(point, dtype=np.int64), self.weights))

    def point(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[i])

    def indices(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self.weights

    @functools.cached_property
    def vadd(self) -> np.ndarray:
        """Vector addition on point indices (``size x size`` table)."""
        X = self.coords
        return self.indices(self.field.add[X[:, None, :], X[None, :, :]])

    @functools.cached_property
    def smul(self) -> np.ndarray:
        """``smul[c, i]`` is the index of ``c * point(i)``."""
        return self.indices(self.field.mul[np.arange(self.q)[:, None, None], self.coords[None]])

    def dot(self, normal: Sequence[int]) -> np.ndarray:
        """Values of the linear form ``normal . x`` at every point."""
        f = self.field
        terms = f.mul[np.asarray(normal, dtype=np.int64)[None, :], self.coords]
        return f.sum(terms, axis=1)

    def combine(self, base: Sequence[int], directions: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Indices of ``base + sum_i Y[:, i] * directions[i]``."""
        f = self.field
        pts = np.broadcast_to(np.asarray(base, dtype=np.int64), (len(Y), self.m)).copy()
        for i, d in enumerate(directions):
            pts = f.add[pts, f.mul[Y[:, i : i + 1], np.asarray(d, dtype=np.int64)[None, :]]]
        return self.indices(pts)

    def hyperplanes(self) -> Iterator["Hyperplane"]:
        for normal in canonical_normals(self.q, self.m):
            for c in range(self.q):
                yield Hyperplane(self.field, normal, c)

    def normal_values(self) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
        """(normal, values of the form at every point) in canonical order."""
        for normal in canonical_normals(self.q, self.m):
            yield normal, self.dot(normal)

    def full(self) -> "Flat":
        eye = tuple(tuple(int(i == j) for j in range(self.m)) for i in range(self.m))
        return Flat(self.field, (0,) * self.m, eye)


def _as_index_set(S: Iterable[int]) -> np.ndarray:
    arr = np.unique(np.fromiter((int(i) for i in S), dtype=np.int64))
    if arr.size == 0:
        raise ValueError("point set is empty")
    return arr


# -- hyperplanes and flats -----------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """``{x : normal . x = offset}``, stored in canonical form."""

    field: FieldSpec
    normal: tuple[int, ...]
    offset: int

    def __post_init__(self) -> None:
        normal = tuple(int(c) for c in self.normal)
        lead = next((c for c in normal if c), 0)
        if not lead:
            raise ValueError("hyperplane normal must be nonzero")
        f = self.field
        scale = f.inv_code(lead)
        object.__setattr__(self, "normal", tuple(f.mul_codes(scale, c) for c in normal))
        object.__setattr__(self, "offset", f.mul_codes(scale, int(self.offset)))

    @property
    def m(self) -> int:
        return len(self.normal)

    def points(self, space: AffineSpace | None = None) -> np.ndarray:
        space = space or AffineSpace(self.field, self.m)
        return np.nonzero(space.dot(self.normal) == self.offset)[0]

    def contains(self, point: Sequence[int]) -> bool:
        f = self.field
        val = 0
        for a, x in zip(self.normal, point):
            val = f.add_codes(val, f.mul_codes(a, int(x)))
        return val == self.offset

    def __str__(self) -> str:
        return f"[{','.join(map(str, self.normal))}]={self.offset}"

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Hyperplane":
        lhs, _, rhs = text.replace(" ", "").partition("=")
        normal = tuple(int(c) for c in lhs.strip("[]").split(","))
        return cls(field, normal, int(rhs))


def parallel_class(H: Hyperplane) -> list[Hyperplane]:
    return [Hyperplane(H.field, H.normal, c) for c in range(H.field.q)]


@dataclass(frozen=True)
class Flat:
    """``base + span(directions)``; directions must be independent."""

    field: FieldSpec
    base: tuple[int, ...]
    directions: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", tuple(int(c) for c in self.base))
        object.__setattr__(self, "directions", tuple(tuple(int(c) for c in d) for d in self.directions))
        if self.directions and rank(self.field, self.directions) != len(self.directions):
            raise ValueError("flat directions are linearly dependent")

    @property
    def m(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def codim(self) -> int:
        return self.m - self.dim

    def points(self, space: AffineSpace | None = None) -> np.ndarray:
        space = space or AffineSpace(self.field, self.m)
        Y = AffineSpace(self.field, self.dim).coords
        return np.sort(space.combine(self.base, np.array(self.directions).reshape(self.dim, self.m), Y))

    def equations(self) -> list[Hyperplane]:
        """Defining hyperplanes, from the reduced annihilator of the directions."""
        f = self.field
        ann = nullspace(f, list(self.directions), self.m)
        if len(ann):
            ann, _ = rref(f, ann)
        out = []
        for row in ann:
            off = 0
            for a, x in zip(row, self.base):
                off = f.add_codes(off, f.mul_codes(int(a), x))
            out.append(Hyperplane(f, tuple(int(a) for a in row), off))
        return out

    def same_set(self, other: "Flat") -> bool:
        return np.array_equal(self.points(), other.points())

    def __str__(self) -> str:
        eqs = self.equations()
        if not eqs:
            return f"F_{self.field.q}^{self.m}"
        return "{" + "; ".join(map(str, eqs)) + "}"


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + translation`` with an invertible matrix."""

    field: FieldSpec
    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", tuple(tuple(int(c) for c in row) for row in self.matrix))
        object.__setattr__(self, "translation", tuple(int(c) for c in self.translation))
        m = len(self.translation)
        if len(self.matrix) != m or any(len(row) != m for row in self.matrix):
            raise ValueError("matrix and translation dimensions disagree")
        if m and rank(self.field, self.matrix) != m:
            raise ValueError("affine map is not invertible")

    @property
    def m(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, field: FieldSpec, m: int) -> "AffineMap":
        return cls(field, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)), (0,) * m)

    @classmethod
    def translation_by(cls, field: FieldSpec, b: Sequence[int]) -> "AffineMap":
        m = len(b)
        return cls(field, cls.identity(field, m).matrix, tuple(b))

    @classmethod
    def random(cls, field: FieldSpec, m: int, rng: np.random.Generator) -> "AffineMap":
        q = field.q
        while True:
            M = rng.integers(0, q, size=(m, m))
            if rank(field, M) == m:
                return cls(field, tuple(map(tuple, M.tolist())), tuple(rng.integers(0, q, size=m).tolist()))

    def images(self, coords: np.ndarray) -> np.ndarray:
        f = self.field
        M = np.array(self.matrix, dtype=np.int64).reshape(self.m, self.m)
        out = f.sum(f.mul[coords[:, None, :], M[None, :, :]], axis=2)
        return f.add[out, np.asarray(self.translation, dtype=np.int64)[None, :]]

    def __call__(self, point: Sequence[int]) -> tuple[int, ...]:
        img = self.images(np.asarray(point, dtype=np.int64).reshape(1, -1))
        return tuple(int(c) for c in img[0])

    def perm(self, space: AffineSpace) -> np.ndarray:
        """``perm[i]`` is the index of the image of point ``i``."""
        return space.indices(self.images(space.coords))


def apply_affine(tau: AffineMap, S: Iterable[int], space: AffineSpace | None = None) -> np.ndarray:
    space = space or AffineSpace(tau.field, tau.m)
    S = np.fromiter((int(i) for i in S), dtype=np.int64)
    return np.sort(tau.perm(space)[S])


def general_linear_images(space: AffineSpace, budget: int = 1 << 24, chunk: int = 1 << 14) -> np.ndarray:
    """Images of every point under every invertible matrix.

    Row ``k`` is the point permutation of the k-th invertible matrix, found by
    enumerating all ``q**(m*m)`` matrices (by columns, as point indices) and
    keeping those whose image is a bijection.
    """
    q, m, N = space.q, space.m, space.size
    total = q ** (m * m)
    if total > budget:
        raise OverflowError(f"enumerating {total} matrices exceeds budget {budget}")
    X = space.coords
    smul, vadd = space.smul, space.vadd
    kept = []
    ident = np.arange(N)
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        # column i of matrix k is the point index (ks // N**i) % N
        cols = np.stack([(ks // N**i) % N for i in range(m)], axis=1)
        img = np.zeros((len(ks), N), dtype=np.int64)
        for i in range(m):
            img = vadd[img, smul[X[None, :, i], cols[:, i : i + 1]]]
        ok = np.all(np.sort(img, axis=1) == ident[None, :], axis=1)
        kept.append(img[ok])
    return np.concatenate(kept, axis=0)


# -- geometric predicates ----------------------------------------------------


def affine_hull_rank(space: AffineSpace, S: Iterable[int]) -> tuple[int, Flat]:
    """Rank of ``{b - a : b in S}`` with ``a = min(S)``, and the affine hull.

    The hull's directions are the nonzero rows of the reduced echelon form,
    so the hull basis is canonical.
    """
    S = _as_index_set(S)
    f = space.field
    X = space.coords
    a = X[S[0]]
    diffs = f.add[X[S], f.neg[a][None, :]]
    R, pivots = rref(f, diffs)
    dirs = tuple(tuple(int(c) for c in R[i]) for i in range(len(pivots)))
    return len(pivots), Flat(f, tuple(int(c) for c in a), dirs)


def is_flat(space: AffineSpace, S: Iterable[int]) -> Flat | None:
    S = _as_index_set(S)
    r, hull = affine_hull_rank(space, S)
    return hull if len(S) == space.q**r else None


@dataclass(frozen=True)
class AvoidanceResult:
    """Outcome of a Lemma-4 style search.

    ``violation`` names the first hyperplane whose intersection count breaks
    the hypothesis; ``hyperplane`` is the first one missing ``S`` when the
    hypothesis holds.
    """

    hypothesis_holds: bool
    hyperplane: Hyperplane | None
    violation: tuple[Hyperplane, int] | None
    hyperplanes_checked: int


def find_avoiding_hyperplane(space: AffineSpace, S: Iterable[int], t: int, n: int) -> AvoidanceResult:
    S = _as_index_set(S)
    q, m = space.q, space.m
    if not (0 < t < q and len(S) == t * q**n and len(S) < q**m):
        raise ValueError(
            f"hypothesis shape violated: |S|={len(S)} is not t*q^n={t}*{q}^{n} < q^m with 0 < t < q"
        )
    avoiding = None
    checked = 0
    for normal, vals in space.normal_values():
        counts = np.bincount(vals[S], minlength=q)
        for c, cnt in enumerate(counts.tolist()):
            checked += 1
            # cnt >= t*q^(n-1), scaled by q to stay integral when n = 0
            if cnt and cnt * q < t * q**n:
                return AvoidanceResult(False, None, (Hyperplane(space.field, normal, c), cnt), checked)
            if cnt == 0 and avoiding is None:
                avoiding = Hyperplane(space.field, normal, c)
    return AvoidanceResult(True, avoiding, None, checked)


@dataclass(frozen=True)
class FlatUnion:
    """``S`` as a union of parallel flats inside an ambient flat.

    ``direction`` is a canonical linear form on the ambient coordinates
    (coefficients with respect to ``ambient.directions``); the components
    are its level sets at ``offsets``.
    """

    ambient: Flat
    direction: tuple[int, ...]
    offsets: tuple[int, ...]
    components: tuple[Flat, ...]


def flats_union_classify(space: AffineSpace, S: Iterable[int], t: int, s: int) -> FlatUnion | None:
    S = _as_index_set(S)
    q, m, f = space.q, space.m, space.field
    if not (0 <= t <= m - 1 and 0 <= s <= q - 2):
        raise ValueError(f"need 0 <= t <= m-1 and 0 <= s <= q-2, got t={t}, s={s}")
    if len(S) != (q - s) * q ** (m - t - 1):
        raise ValueError(f"|S|={len(S)} differs from (q-s)*q^(m-t-1)={(q - s) * q ** (m - t - 1)}")
    r, hull = affine_hull_rank(space, S)
    if r != m - t:
        return None
    k = r
    D = np.array(hull.directions, dtype=np.int64).reshape(k, m)
    Yall = AffineSpace(f, k).coords
    located = np.full(space.size, -1, dtype=np.int64)
    located[space.combine(hull.base, D, Yall)] = np.arange(len(Yall))
    Y = Yall[located[S]]
    level_size = q ** (k - 1)
    for lam in canonical_normals(q, k):
        levels = f.sum(f.mul[np.asarray(lam)[None, :], Y], axis=1)
        counts = np.bincount(levels, minlength=q)
        nz = np.nonzero(counts)[0]
        if not np.all(counts[nz] == level_size):
            continue
        lead = lam.index(1)
        kernel = [
            [f.add_codes(D[i, x], f.neg_code(f.mul_codes(lam[i], int(D[lead, x])))) for x in range(m)]
            for i in range(k)
            if i != lead
        ]
        kdirs = rref(f, kernel)[0] if kernel else np.zeros((0, m), dtype=np.int64)
        comps = []
        for c in nz:
            base = space.point(int(S[levels == c][0]))
            comps.append(Flat(f, base, tuple(tuple(int(x) for x in row) for row in kdirs)))
        return FlatUnion(hull, lam, tuple(int(c) for c in nz), tuple(comps))
    return None


# -- point-set files -----------------------------------------------------------


def read_points(text: str) -> list[tuple[int, ...]]:
    pts = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        pts.append(tuple(int(c) for c in line.split(",")))
    return pts


def write_points(points: Iterable[Sequence[int]]) -> str:
    return "".join(",".join(map(str, p)) + "\n" for p in points)
