# Minimum-weight codewords of R_q(r, m).
#
# Write r = t(q-1) + s.  The minimum weight is (q-s) q^(m-t-1), and every
# minimum-weight word is supported on q-s parallel flats of codimension t+1
# lying inside one flat of codimension t.

from collections import Counter

from grmkit import (
    GrmParams,
    canonical_min_words,
    classify_min_word,
    enumerate_min_words,
    format_poly,
    verify_theorem,
)
from grmkit.cli import DEFAULT_MATRIX

# %% parameters of a few codes
for cell in [(2, 3, 1), (3, 2, 3), (4, 2, 2), (5, 3, 6)]:
    params = GrmParams.of(*cell)
    print(f"{params}: t={params.t} s={params.s} dim={params.dim} w_min={params.w_min}")

# %% the 14 minimum words of R_2(1,3) are the indicators of affine planes
params = GrmParams.of(2, 3, 1)
words = enumerate_min_words(params)
print(len(words), "words, e.g.", [format_poly(w.poly()) for w in words[:4]])

# %% canonical words for R_3(3,2): c (x1^2 - 1) (x2 - b)
params = GrmParams.of(3, 2, 3)
for w in canonical_min_words(params):
    rep = classify_min_word(w, params)
    print(format_poly(w.poly()), "->", rep.ambient, [str(c) for c in rep.components])

# %% exhaustive and orbit enumeration agree
ex = enumerate_min_words(params, "exhaustive")
ob = enumerate_min_words(params, "orbit")
print("exhaustive", len(ex), "orbit", len(ob), "equal", ex == ob)

# %% ambient codimension is always t
print(Counter(classify_min_word(w, params).ambient.codim for w in ex))

# %% the whole default matrix
for cell in DEFAULT_MATRIX:
    rep = verify_theorem(GrmParams.of(*cell))
    print(f"{rep.params}: {rep.forward_count} words, ok={rep.ok}, {rep.runtime_ms} ms")
