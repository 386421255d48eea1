# # Atoms, permutations and abstraction
#
# Names are atoms: an integer id plus a display name.  Permutations move
# atoms around, and every value built from atoms can be permuted.

# %%
from nomix.nominal import Atom, abs_eq, abstract, act, compose, concrete, fresh, support, transposition
from nomix.nominal import NotFresh

x, y, z = Atom(0, "x"), Atom(1, "y"), Atom(2, "z")

# %% [markdown]
# `compose(p, q)` applies q first.  Following z: (y z) sends it to y,
# then (x y) sends y to x.

# %%
p = compose(transposition(x, y), transposition(y, z))
print(p, "sends z to", p(z))

# %% [markdown]
# Tuples, sets and abstractions all carry the action.  An abstraction
# ⟨x⟩v forgets which name was bound, so ⟨x⟩(x, z) and ⟨y⟩(y, z) are equal.

# %%
a = abstract(x, (x, z))
b = abstract(y, (y, z))
print(a, "==", b, "->", a == b)
print("support of", a, "is", set(support(a)))
print("swapping x and z inside:", act(transposition(x, z), a))

# %% [markdown]
# Concretion instantiates the bound name.  The new name must not occur
# free in the abstraction, otherwise it would be captured.

# %%
w = Atom(fresh(support(a) | {x, y, z}).id, "w")
print("concrete at", w, "->", concrete(a, w))
try:
    concrete(a, z)
except NotFresh as e:
    print("refused:", e)

# %%
print("⟨x⟩y vs ⟨y⟩x:", abs_eq(abstract(x, y), abstract(y, x)))
