# %% [markdown]
# # Recovering translations from near coincidences
#
# Every pair of words with equal contraction gives a linear functional
# L(t) = phi_w1(0) - phi_w2(0) of the translations.  Collect those that
# are tiny on the actual translations; if they have rank m - d they pin
# the translations down by Cramer's rule.  If the rank is smaller the
# data can be lifted to a higher-dimensional system that carries the
# same overlaps.

# %%
from fractions import Fraction

from exactifs import (IFSModel, build_candidate_set, consistency_check, find_overlap,
                      gram_rank, lift_to_higher_dim, reconstruct_translations,
                      transfer_certificate, verify_certificate)

# %% [markdown]
# Three maps of ratio 1/2 with t_2 = t_1 / 2.

# %%
model = IFSModel(["1/2"] * 3, [0, 1, "1/2"])
S = build_candidate_set(model, Fraction(1, 3), 2)
for L in S.functionals:
    print(L.w1, L.w2, L.row)
print("rank:", gram_rank(S).rank, "pigeonhole:", S.diagnostics)

# %%
rec = reconstruct_translations(S)
print(rec.status, rec.translations)
print("consistent with depth 3:", consistency_check(S, build_candidate_set(model, Fraction(1, 3), 3)))

# %% [markdown]
# Now four maps on the line with t_3 = t_1 / 2 and t_2 = sqrt(2).  Only
# one relation exists (rank 1 < m - d = 2), so reconstruction is not
# possible, but lifting to the plane is.

# %%
sqrt2 = {"minpoly": [-2, 0, 1], "interval": ["1", "2"]}
model = IFSModel(["1/2"] * 4, [0, 1, sqrt2, "1/2"], constants=[sqrt2])
S = build_candidate_set(model, Fraction(1, 8), 2)
res = lift_to_higher_dim(S)
print("columns solved by Cramer:", res.columns)
print("lifted translations:", res.translations)
print("record:", res.record.to_json(model.field))

# %% [markdown]
# The lifted system has its own overlap; the combination record carries
# it back to the original model, where it is verified from scratch.

# %%
cert = find_overlap(res.model_s, 2)
back = transfer_certificate(model, res.model_s, cert, res.record)
print(back.w1, back.w2, verify_certificate(model, back))
