# %% [markdown]
# # An exact overlap in the golden Bernoulli convolution
#
# With contraction rho = (sqrt(5) - 1) / 2 the two maps x -> rho x and
# x -> rho x + 1 satisfy rho + rho**2 = 1.  That single algebraic identity
# makes two different words of length 3 compose to the same map.  This
# script finds the pair, checks it exactly, and looks at how the overlap
# gap behaves with and without such a coincidence.

# %%
from fractions import Fraction

from exactifs import (OverlapCertificate, compose, decay_profile, delta_n, find_overlap,
                      parse_config, verify_certificate)

golden = parse_config(preset="bernoulli-golden")
print(golden)

# %% [markdown]
# Breadth-first search over word lengths returns the lexicographically
# smallest equal pair at the first depth where one exists.

# %%
cert = find_overlap(golden, 3)
print("words:", cert.w1, cert.w2)
print("scale identity:", cert.scale_identity)
print("translation polynomials:", [str(P) for P in cert.translation_polynomials])
print("verified:", verify_certificate(golden, cert))

# %% [markdown]
# The two compositions are equal as exact elements of Q(rho), not merely
# to floating-point precision.

# %%
a, b = compose(golden, cert.w1), compose(golden, cert.w2)
print(a)
print(b)
print("equal:", a == b)

# %% [markdown]
# A certificate survives a JSON round trip; a tampered one is rejected.

# %%
data = cert.to_json()
print(verify_certificate(golden, OverlapCertificate.from_json(data)))
data["w2"] = [1, 0, 1]
print(verify_certificate(golden, OverlapCertificate.from_json(data)))

# %% [markdown]
# The overlap gap is positive for n < 3 and exactly zero from n = 3 on.
# For the dyadic doubling map, which has no overlaps, the gap decays like
# 2**(1 - n).

# %%
for n in range(1, 6):
    print(n, golden.field.format(delta_n(golden, n)))

doubling = parse_config(preset="doubling")
profile = decay_profile(doubling, 10)
for n, rate in profile.entries:
    print(n, delta_n(doubling, n), round(rate, 4))
assert delta_n(doubling, 10) == Fraction(1, 2**9)
