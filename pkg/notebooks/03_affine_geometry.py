# Flats, hyperplanes and affine maps of F_q^m.
#
# Points are indexed in the same order as evaluation tables, so a set of
# points is just an integer array, and an affine map is a permutation.

import numpy as np

from grmkit import (
    GF,
    AffineMap,
    AffineSpace,
    Hyperplane,
    affine_hull_rank,
    apply_affine,
    find_avoiding_hyperplane,
    flats_union_classify,
    is_flat,
    parallel_class,
)

space = AffineSpace(GF(3), 2)
print("points of F_3^2:\n", space.coords)

# %% hyperplanes are stored with a normalised normal vector
H = Hyperplane(space.field, (2, 1), 1)
print(H, "->", [space.point(i) for i in H.points(space)])
print("parallel class:", [str(h) for h in parallel_class(H)])

# %% hulls and flats
S = [space.index(p) for p in [(1, 0), (1, 2)]]
rank, hull = affine_hull_rank(space, S)
print("hull rank", rank, "equations", [str(e) for e in hull.equations()])
print("3 collinear points a flat?", is_flat(space, [0, 1, 2]) is not None)
print("3 scattered points a flat?", is_flat(space, [0, 1, 4]) is not None)

# %% a random affine map carries lines to lines
rng = np.random.default_rng(3)
tau = AffineMap.random(space.field, 2, rng)
line = Hyperplane(space.field, (1, 0), 0).points(space)
print("image of x1=0:", is_flat(space, apply_affine(tau, line, space)))

# %% a set of size t*q^n whose hyperplane sections are all large misses some hyperplane
S = np.concatenate([Hyperplane(space.field, (0, 1), c).points(space) for c in (0, 2)])
res = find_avoiding_hyperplane(space, S, 2, 1)
print("avoiding hyperplane:", res.hyperplane, "after", res.hyperplanes_checked, "checks")

# %% the same set is two parallel lines inside the whole plane
st = flats_union_classify(space, S, 0, 1)
print("ambient", st.ambient, "components", [str(c) for c in st.components])
