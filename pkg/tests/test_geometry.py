import functools
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grmkit.field import GF
from grmkit.geometry import (
    AffineMap,
    AffineSpace,
    Flat,
    Hyperplane,
    affine_hull_rank,
    apply_affine,
    canonical_normals,
    find_avoiding_hyperplane,
    flats_union_classify,
    is_flat,
    parallel_class,
    rank,
    read_points,
    write_points,
)


def idx(space, *points):
    return [space.index(p) for p in points]


# -- brute-force oracles, written with scalar field ops only ------------------


def span(field, vectors, m):
    out = set()
    for coeffs in itertools.product(range(field.q), repeat=len(vectors)):
        v = [0] * m
        for c, d in zip(coeffs, vectors):
            v = [field.add_codes(x, field.mul_codes(c, y)) for x, y in zip(v, d)]
        out.add(tuple(v))
    return frozenset(out)


@functools.lru_cache(maxsize=None)
def subspaces(field, m, dim):
    vecs = list(itertools.product(range(field.q), repeat=m))
    found = set()
    for combo in itertools.combinations(vecs, dim):
        sp = span(field, combo, m)
        if len(sp) == field.q**dim:
            found.add(sp)
    return tuple(found)


def brute_union_structure(field, m, S_points, t):
    """Is S a union of cosets of some V (dim m-t-1) lying in one coset of W >= V (dim m-t)?"""
    S = set(S_points)
    a = next(iter(S))
    diffs = {tuple(field.sub_codes(x, y) for x, y in zip(b, a)) for b in S}

    def add(p, v):
        return tuple(field.add_codes(x, y) for x, y in zip(p, v))

    for W in subspaces(field, m, m - t):
        if not diffs <= W:
            continue
        for V in subspaces(field, m, m - t - 1):
            if V <= W and all(add(b, v) in S for b in S for v in V):
                return True
    return False


# -- tests ----------------------------------------------------------------------


def test_parallel_class_examples():
    F3, F2 = GF(3), GF(2)
    cls = parallel_class(Hyperplane(F3, (1, 0), 0))
    assert [str(h) for h in cls] == ["[1,0]=0", "[1,0]=1", "[1,0]=2"]
    cls = parallel_class(Hyperplane(F2, (1, 1), 1))
    assert [str(h) for h in cls] == ["[1,1]=0", "[1,1]=1"]


def test_parallel_class_partitions():
    for q in (2, 3, 4):
        for m in (1, 2, 3):
            space = AffineSpace(GF(q), m)
            for normal in canonical_normals(q, m):
                pts = np.concatenate([h.points(space) for h in parallel_class(Hyperplane(space.field, normal, 0))])
                assert sorted(pts.tolist()) == list(range(q**m))


def test_hyperplane_canonicalization_exhaustive():
    for q in (2, 3, 4):
        F = GF(q)
        for m in (1, 2, 3):
            space = AffineSpace(F, m)
            by_set = {}
            for normal in itertools.product(range(q), repeat=m):
                if not any(normal):
                    continue
                for c in range(q):
                    H = Hyperplane(F, normal, c)
                    pts = tuple(p for p in range(space.size) if H.contains(space.point(p)))
                    assert pts == tuple(H.points(space).tolist())
                    by_set.setdefault(pts, set()).add((H.normal, H.offset))
            assert all(len(v) == 1 for v in by_set.values())
            assert len(by_set) == q * (q**m - 1) // (q - 1) == len(list(space.hyperplanes()))


def test_hyperplane_text():
    F = GF(5)
    H = Hyperplane(F, (0, 2, 4), 3)
    assert str(H) == "[0,1,2]=4"
    assert Hyperplane.parse(F, str(H)) == H
    with pytest.raises(ValueError):
        Hyperplane(F, (0, 0), 1)


def test_hull_examples():
    space = AffineSpace(GF(2), 2)
    r, hull = affine_hull_rank(space, idx(space, (0, 0), (1, 0), (0, 1)))
    assert r == 2 and hull.points(space).tolist() == [0, 1, 2, 3]
    r, hull = affine_hull_rank(space, idx(space, (1, 1)))
    assert r == 0 and hull.points(space).tolist() == [space.index((1, 1))]
    r, hull = affine_hull_rank(space, idx(space, (1, 0), (1, 1)))
    assert r == 1 and [str(h) for h in hull.equations()] == ["[1,0]=1"]
    with pytest.raises(ValueError):
        affine_hull_rank(space, [])


def test_hull_independent_of_basepoint(rng):
    for q, m in [(2, 3), (3, 2), (3, 3), (4, 2)]:
        space = AffineSpace(GF(q), m)
        X = space.coords
        F = space.field
        for _ in range(20):
            S = rng.choice(space.size, size=int(rng.integers(1, 7)), replace=False)
            r0, hull = affine_hull_rank(space, S)
            for a in S:
                diffs = F.add[X[S], F.neg[X[a]][None, :]]
                assert rank(F, diffs) == r0
            assert np.isin(S, hull.points(space)).all()


def test_is_flat_examples():
    space = AffineSpace(GF(2), 2)
    flat = is_flat(space, idx(space, (1, 0), (1, 1)))
    assert flat is not None and flat.dim == 1
    assert is_flat(space, idx(space, (0, 0), (1, 0), (1, 1))) is None
    space3 = AffineSpace(GF(3), 3)
    assert is_flat(space3, range(27)).dim == 3


def test_flat_validation_and_text():
    F = GF(3)
    with pytest.raises(ValueError):
        Flat(F, (0, 0), ((1, 1), (2, 2)))
    f = Flat(F, (0, 1), ((1, 0),))
    assert str(f) == "{[0,1]=1}"
    assert str(AffineSpace(F, 2).full()) == "F_3^2"


def test_avoiding_examples():
    space = AffineSpace(GF(3), 2)
    S = idx(space, (0, 0), (0, 1), (0, 2))
    res = find_avoiding_hyperplane(space, S, 1, 1)
    assert res.hypothesis_holds and str(res.hyperplane) in {"[1,0]=1", "[1,0]=2"}

    space2 = AffineSpace(GF(2), 3)
    S = idx(space2, (0, 0, 0), (0, 0, 1))
    res = find_avoiding_hyperplane(space2, S, 1, 1)
    brute = [h for h in space2.hyperplanes() if not any(h.contains(space2.point(p)) for p in S)]
    assert len(list(space2.hyperplanes())) == 14
    assert res.hyperplane == brute[0]


def test_avoiding_violation_diagnostic():
    space = AffineSpace(GF(3), 2)
    # first 6-subset (t=2, n=1) in which some line meets S in exactly one point
    for S in itertools.combinations(range(9), 6):
        if any(np.count_nonzero(np.isin(h.points(space), S)) == 1 for h in space.hyperplanes()):
            break
    res = find_avoiding_hyperplane(space, S, 2, 1)
    assert not res.hypothesis_holds and res.hyperplane is None
    H, cnt = res.violation
    assert cnt == 1 and np.count_nonzero(np.isin(H.points(space), S)) == 1


def test_avoiding_shape_errors():
    space = AffineSpace(GF(3), 2)
    with pytest.raises(ValueError, match="hypothesis shape"):
        find_avoiding_hyperplane(space, range(9), 1, 2)
    with pytest.raises(ValueError, match="hypothesis shape"):
        find_avoiding_hyperplane(space, range(4), 1, 1)


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2)])
def test_avoiding_hyperplane_exists_whenever_hypothesis_holds(q, m):
    space = AffineSpace(GF(q), m)
    shapes = [(t, n) for t in range(1, q) for n in range(m) if t * q**n < q**m]
    for t, n in shapes:
        for S in itertools.combinations(range(space.size), t * q**n):
            res = find_avoiding_hyperplane(space, S, t, n)
            if res.hypothesis_holds:
                assert res.hyperplane is not None
                assert not np.isin(res.hyperplane.points(space), S).any()


def test_classify_examples():
    space = AffineSpace(GF(3), 2)
    st_ = flats_union_classify(space, idx(space, (0, 0), (0, 1)), 1, 1)
    assert str(st_.ambient) == "{[1,0]=0}"
    assert st_.offsets == (0, 1)
    assert [c.points(space).tolist() for c in st_.components] == [[0], [1]]

    space2 = AffineSpace(GF(2), 3)
    H = Hyperplane(GF(2), (1, 1, 0), 0)
    st_ = flats_union_classify(space2, H.points(space2), 1, 0)
    assert st_.ambient.same_set(is_flat(space2, H.points(space2)))
    assert len(st_.components) == 2 and all(c.dim == 1 for c in st_.components)

    full = flats_union_classify(space, range(9), 0, 0)
    assert str(full.ambient) == "F_3^2"
    assert [str(c) for c in full.components] == ["{[1,0]=0}", "{[1,0]=1}", "{[1,0]=2}"]

    with pytest.raises(ValueError):
        flats_union_classify(space, range(5), 0, 0)


def _union_candidates(space, t, s, rng, count):
    """Random sets of the right size, half of them structured."""
    q, m = space.q, space.m
    size = (q - s) * q ** (m - t - 1)
    out = []
    for k in range(count):
        if k % 2:
            out.append(rng.choice(space.size, size=size, replace=False))
            continue
        # canonical support moved by a random affine map, sometimes perturbed
        canon = [i for i in range(space.size) if all(c == 0 for c in space.point(i)[:t])]
        canon = [i for i in canon if space.point(i)[t] >= s] if t < m else canon
        tau = AffineMap.random(space.field, m, rng)
        S = apply_affine(tau, canon, space)
        outside = np.setdiff1d(np.arange(space.size), S)
        if k % 4 == 0 and len(outside):
            S = np.append(np.delete(S, int(rng.integers(len(S)))), rng.choice(outside))
        out.append(S)
    return out


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_classify_agrees_with_brute_force(q, m, rng):
    space = AffineSpace(GF(q), m)
    for t in range(m):
        for s in range(q - 1):
            for S in _union_candidates(space, t, s, rng, 8):
                got = flats_union_classify(space, S, t, s)
                want = brute_union_structure(space.field, m, [space.point(i) for i in S], t)
                assert (got is not None) == want, (t, s, sorted(S))
                if got is not None:
                    pts = np.sort(np.concatenate([c.points(space) for c in got.components]))
                    assert pts.tolist() == sorted(S)
                    assert got.ambient.codim == t and all(c.codim == t + 1 for c in got.components)


def test_apply_affine_examples(rng):
    space = AffineSpace(GF(3), 2)
    S = idx(space, (0, 0), (1, 2))
    assert apply_affine(AffineMap.identity(space.field, 2), S, space).tolist() == sorted(S)
    line = Hyperplane(space.field, (1, 0), 0).points(space)
    moved = apply_affine(AffineMap.translation_by(space.field, (2, 0)), line, space)
    assert moved.tolist() == Hyperplane(space.field, (1, 0), 2).points(space).tolist()


@settings(max_examples=100, deadline=None)
@given(q=st.sampled_from([2, 3, 4]), m=st.integers(1, 3), seed=st.integers(0, 2**32 - 1))
def test_apply_affine_preserves_flats(q, m, seed):
    r = np.random.default_rng(seed)
    space = AffineSpace(GF(q), m)
    dim = int(r.integers(0, m + 1))
    S = r.choice(space.size, size=int(r.integers(1, space.size + 1)), replace=False)
    flat_pts = affine_hull_rank(space, S[: dim + 1])[1].points(space)
    tau = AffineMap.random(space.field, m, r)
    image = apply_affine(tau, flat_pts, space)
    assert len(image) == len(flat_pts) == len(set(image.tolist()))
    before, after = is_flat(space, flat_pts), is_flat(space, image)
    assert after is not None and after.dim == before.dim
    assert (is_flat(space, S) is None) == (is_flat(space, apply_affine(tau, S, space)) is None)


def test_affine_map_matches_pointwise(rng):
    space = AffineSpace(GF(4), 2)
    tau = AffineMap.random(space.field, 2, rng)
    F = space.field
    perm = tau.perm(space)
    for i in range(space.size):
        x = space.point(i)
        y = tuple(
            F.add_codes(F.add_codes(F.mul_codes(tau.matrix[j][0], x[0]), F.mul_codes(tau.matrix[j][1], x[1])), tau.translation[j])
            for j in range(2)
        )
        assert space.index(y) == perm[i] and tau(x) == y


def test_point_file_roundtrip():
    text = "# header\n0,1\n\n2,2\n"
    pts = read_points(text)
    assert pts == [(0, 1), (2, 2)]
    assert read_points(write_points(pts)) == pts
