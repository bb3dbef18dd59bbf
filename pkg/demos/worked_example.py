# %% [markdown]
# # An order-3 automorphism of a genus-3 surface, step by step
#
# We follow the class p = 3, n = (1, 1, 2, 1, 1), g0 = 0 from the rotation
# data all the way to its symplectic matrix.  Everything below is exact
# integer arithmetic.

# %%
from primeform import (adapted_action_matrix, adapted_intersection, build_presentation,
                       normal_form, normalize_class, validate_class)
from primeform.reduction import ReductionState, link_step
from primeform.words import format_word

cls = validate_class(3, (1, 1, 2, 1, 1), 0)
norm, power = normalize_class(cls)
print(cls, "->", norm, "power", power)
print("genus", cls.g, "fixed points", cls.t)

# %% [markdown]
# ## The adapted presentation
#
# The rewriting produces 2g = 6 generators `Y:r:v` (the image under h^v of the
# r-th lifted loop) and one relation of length 4g.

# %%
pres = build_presentation(norm)
print("generators:", " ".join(map(str, pres.generators)))
print("relation:  ", format_word(pres.relation))

# %% [markdown]
# h permutes `Y:r:0 -> Y:r:1` and sends the last power to minus the sum of
# the others, so the action on homology is three copies of a 2x2 block.

# %%
M0 = adapted_action_matrix(pres)
print(M0.to_text())
print()
print(adapted_intersection(cls).to_text())

# %% [markdown]
# ## Reducing the symbol
#
# Each step finds a linked pair a ... b ... a^-1 ... b^-1, splits off one
# commutator and updates the matrix by a sparse unimodular change of basis.

# %%
state = ReductionState.start(pres.qhat, M0, pres.lrhat, list(pres.y_generators))
while state.P:
    state = link_step(state)
    rec = state.steps[-1]
    print(f"step {rec['step']}: a={rec['a']} b={rec['b']} tight={rec['tight']}")
    print("   M =", rec["M"])
    print("   N =", rec["N"])
    print("   remaining:", rec["P"] or "(empty)")

# %% [markdown]
# ## The normal form
#
# The matrix below preserves the standard form, has order 3 and trace
# 2 - t = -3.

# %%
res = normal_form(3, (1, 1, 2, 1, 1), 0)
print(res.M_CAN.to_text())
print("order", res.order, "trace", res.trace, "symplectic", res.symplectic)
for name, word in zip(["M1", "M2", "M3", "N1", "N2", "N3"], res.basis):
    print(f"  {name} = {word}")
