# %% [markdown]
# # All prime-order classes in a fixed genus
#
# Enumerate every conjugacy class of prime order for one genus and look at
# the normal forms side by side.  Distinct classes give distinct matrices,
# which is what makes the matrix usable as a label.

# %%
import sys
from collections import Counter

import numpy as np

from primeform import candidate_check, enumerate_classes, normal_form
from primeform.classdata import is_prime

g = int(sys.argv[1]) if len(sys.argv) > 1 else 4
primes = [p for p in range(2, 2 * g + 2) if is_prime(p)]

results = [normal_form(c.p, c.n, c.g0) for p in primes for c in enumerate_classes(g, p)]
print(f"genus {g}: {len(results)} classes for primes {primes}")

# %%
print(f"{'p':>3} {'g0':>3} {'t':>3} {'trace':>6}  n")
for r in results:
    print(f"{r.cls.p:>3} {r.cls.g0:>3} {r.t:>3} {r.trace:>6}  {r.cls.n}")

# %% [markdown]
# The trace only sees t, so many classes share it; the matrices themselves
# never coincide.

# %%
print(Counter((r.cls.p, r.trace) for r in results).most_common(5))
assert len({r.M_CAN for r in results}) == len(results)

# %% [markdown]
# Sparsity: how far from a permutation matrix are the normal forms?

# %%
nnz = [np.count_nonzero(np.array(r.M_CAN.tolist())) for r in results]
print("nonzeros per matrix: min", min(nnz), "median", int(np.median(nnz)), "max", max(nnz))

# %% [markdown]
# Screening a candidate: feed a normal form back in and it is recognised.

# %%
r = results[-1]
print(candidate_check(r.M_CAN, r.J).to_dict()["verdict"])
