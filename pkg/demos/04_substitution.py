# # Capture-avoiding substitution
#
# Substitution walks one inductive layer at a time, renaming binders that
# would capture, and leaves the coinductive slots as work for later.  The
# result is lazy, so it works on infinite terms.

# %%
from nomix import embed, from_equations, lambda_signature, parse, parse_term, show, subst, truncate
from nomix.syntax import Symbols, parse_atom

sig = lambda_signature(0, 0, 1)
names = Symbols()


def term(text):
    return from_equations(parse(text, sig, names).env, sig)


def pretty(t, depth=4):
    return show(truncate(t, depth), sig, names.names())


# %% [markdown]
# Substituting y for x under a binder named y renames the binder.

# %%
t = term(r"\y. y x")
x, y = parse_atom("x", names), parse_atom("y", names)
print(pretty(subst(t, x, term("y"))))

# %% [markdown]
# Replacing every y in the stream y (y (y …)) by the identity.

# %%
stream = term("rec T = y T")
ident = term(r"\z. z")
print(pretty(subst(stream, y, ident), 3))

# %% [markdown]
# Only the part we look at is ever computed.

# %%
big = term(r"rec { T = (\u. u y) S; S = y T } in T")
r = subst(big, y, term(r"\w. w w"))
print(pretty(r, 2))
print(pretty(r, 4))
