# # α-equivalence and distances
#
# Two infinite terms are α-equivalent when all their truncations are.  For
# equation systems this is decided exactly by a bisimulation; for arbitrary
# terms we compare up to a depth.

# %%
from nomix import alpha_eq_regular, alpha_eq_upto, alpha_distance, an_distance
from nomix import from_equations, lambda_signature, parse
from nomix.syntax import Symbols

sig = lambda_signature(0, 0, 1)
names = Symbols()


def env(text):
    return parse(text, sig, names).env


M, N = env(r"rec M = \x. x M"), env(r"rec N = \y. y N")
T, U = env("rec T = x T"), env("rec U = y U")
m, n, t, u = (from_equations(e, sig) for e in (M, N, T, U))

# %%
print("M ~ N up to depth 20:", alpha_eq_upto(m, n, 20))
print("M ~ N exactly:       ", alpha_eq_regular(M, N, sig))
print("T ~ U exactly:       ", alpha_eq_regular(T, U, sig))

# %% [markdown]
# The Arnold-Nivat distance is 2^-k where k is the first depth at which the
# truncations differ.  `<=2^-p` means no difference was seen up to the
# precision p.

# %%
print("d(T, U)     =", an_distance(t, u, 12))
print("d(M, N)     =", an_distance(m, n, 12))
print("d_alpha(M,N)=", alpha_distance(m, n, 12))
A = from_equations(env("rec { R = x T2; T2 = x T2 } in R"), sig)
B = from_equations(env("rec { R = x U2; U2 = y U2 } in R"), sig)
print("d(x T, x U) =", an_distance(A, B, 12))
