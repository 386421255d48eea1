# # Mixed terms and truncation
#
# In λ^001 the body of λ and the function part of an application are
# inductive, while the argument of an application is coinductive.  Infinite
# terms are fine as long as every cycle goes through a coinductive slot.

# %%
from nomix import lambda_signature, parse, from_equations, truncate, show
from nomix.signature import load, nontriviality_witnesses
from nomix.syntax import Symbols
from nomix.terms import Unguarded, free_vars

sig = lambda_signature(0, 0, 1)
names = Symbols()
print(nontriviality_witnesses(sig).describe())


def term(text, s=sig):
    return from_equations(parse(text, s, names).env, s)


# %% [markdown]
# The stream x (x (x …)).  Truncation at depth n cuts after n coinductive
# steps and puts `_` in the hole.

# %%
T = term("rec T = x T")
for n in range(4):
    print(n, show(truncate(T, n), sig, names.names()))

# %% [markdown]
# Inductive positions do not consume depth: the λ and the left side of the
# inner application survive at depth 2.

# %%
S = term(r"rec T = x (\y. y T)")
print(show(truncate(S, 2), sig, names.names()))

# %% [markdown]
# `rec T = \x. T` would be an infinite tower of λs built without ever passing
# a coinductive slot, so it is rejected under λ^001 and accepted under λ^111.

# %%
try:
    term(r"rec T = \x. T")
except Unguarded as e:
    print("λ^001:", e)
L111 = load("lambda_111")
print("λ^111:", show(truncate(term(r"rec T = \x. T", L111), 3), L111, names.names()))

# %% [markdown]
# A term produced by a step function can have infinitely many free names.

# %%
from nomix import Atom, Var, app, unfold

stream = unfold(lambda n: app(Var(Atom(100 + n, f"x{n}")), n + 1), 0, sig)
for d in (1, 3, 5):
    print(d, sorted(a.name for a in free_vars(stream, d)))
