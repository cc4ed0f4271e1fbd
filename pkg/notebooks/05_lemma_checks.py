# Hyperplane sections of minimum-weight supports.
#
# A hyperplane that cuts a minimum-weight support properly either meets all
# q of its parallel translates, or exactly q-s of them in q^(m-t-1) points
# each.  When s >= 1 some hyperplane misses the support entirely.

from grmkit import GF, GrmParams, Hyperplane, check_lemma4, check_lemma5, enumerate_min_words, parse_poly
from grmkit.code import Codeword
from grmkit.structure import lemma4_parameters, lemma5_sweep

# %% one word, one hyperplane
params = GrmParams.of(2, 2, 1)
f = Codeword.from_poly(parse_poly("x1", GF(2), 2))
rep = check_lemma5(f, params, Hyperplane(GF(2), (0, 1), 0))
print(rep.hyperplane, rep.counts, rep.branch.value)

# %% sweep every word and hyperplane of R_3(2,2)
params = GrmParams.of(3, 2, 2)
sweep = lemma5_sweep(enumerate_min_words(params), params)
print(sweep.branches, "violations:", len(sweep.violations))

# %% avoiding hyperplanes for supports of R_3(1,2) (s = 1)
params = GrmParams.of(3, 2, 1)
t4, n4 = lemma4_parameters(params)
words = enumerate_min_words(params)
found = [check_lemma4(params.space, w.support, t4, n4).hyperplane for w in words]
print(f"{sum(h is not None for h in found)}/{len(words)} supports missed by", found[0], "...")
