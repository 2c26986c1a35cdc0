# %% [markdown]
# # Entropy dimension and the cost of exact overlaps
#
# The depth-n measure nu_n puts mass p_w on the map phi_w.  Its entropy at
# scale 2**-(chi n), divided by chi n, estimates the dimension of the
# self-similar measure.  When maps coincide exactly, atoms merge and the
# entropy drops below what the weights alone would give.

# %%
import math

from exactifs import (PartitionSpec, convolve, dim_estimate, dim_upper_bound, nu_n,
                      parse_config, partition_entropy, rate_stats)

# %% [markdown]
# The doubling map is the textbook case: the estimate is exactly 1 at
# every depth.

# %%
doubling = parse_config(preset="doubling")
print([dim_estimate(doubling, n) for n in range(1, 11)])

# %% [markdown]
# The three maps x/3, x/3 + 1, x/3 + 2 tile an interval, so the dimension
# is 1 again; the finite-depth estimate gets close quickly.

# %%
gasket = parse_config(preset="gasket-thirds")
for n in (2, 4, 6, 8):
    print(n, round(dim_estimate(gasket, n), 6))

# %% [markdown]
# Three maps of ratio 1/2 with translations 0, 1, 1/2 would have
# similarity dimension log2(3) if they were free.  They are not:
# phi_01 = phi_20 and phi_10 = phi_21 already at depth 2, and the entropy
# upper bound sinks towards 1.

# %%
halves = parse_config(preset="overlap-halves")
H, chi, beta = rate_stats(halves)
print("H(p)/chi =", H / chi, "log2(3) =", math.log2(3))
for n in (2, 4, 6, 8, 10):
    print(n, round(dim_upper_bound(halves, n), 4))

# %% [markdown]
# nu_n is a convolution power: nu_(n+k) = nu_n * nu_k exactly, and the
# total entropy is subadditive.

# %%
nu2, nu3 = nu_n(halves, 2), nu_n(halves, 3)
print(convolve(nu2, nu3) == nu_n(halves, 5))
print(nu_n(halves, 5).entropy(), "<=", nu2.entropy() + nu3.entropy())

# %% [markdown]
# Partition entropies grow as the dyadic grid refines and are capped by
# the entropy of the atoms themselves.

# %%
nu = nu_n(halves, 6)
print([round(partition_entropy(nu, PartitionSpec.dyadic(k)), 4) for k in range(0, 10)])
print(round(nu.entropy(), 4))
