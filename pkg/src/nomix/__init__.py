"""Mixed inductive-coinductive terms with variable binding.

Nominal atoms and permutations, mixed binding signatures, lazily unfolded
infinitary terms, mixed truncation and Arnold-Nivat distances,
α-equivalence, and capture-avoiding substitution by recursion inside
corecursion.
"""
from .nominal import (
    Abstraction,
    Atom,
    NotFresh,
    Permutation,
    abs_eq,
    abstract,
    act,
    apply,
    compose,
    concrete,
    fresh,
    invert,
    support,
    transposition,
)
from .signature import (
    COIND,
    IND,
    ArgSpec,
    Constructor,
    Mode,
    Signature,
    is_nontrivial,
    lambda_signature,
    mbs,
    validate,
)
from .terms import (
    HOLE,
    Arg,
    AtMost,
    Cons,
    Done,
    Exactly,
    MetricResult,
    MixedTerm,
    Ref,
    TermEnv,
    Var,
    act_term,
    an_distance,
    app,
    atoms_of,
    bind,
    cons,
    embed,
    env_atoms,
    free_vars,
    from_equations,
    lam,
    truncate,
    unfold,
)
from .alpha import (
    alpha_distance,
    alpha_eq_finite,
    alpha_eq_regular,
    alpha_eq_trunc,
    alpha_eq_upto,
    nameless,
)
from .subst import SubstTask, freshen_binders, subst
from .syntax import Symbols, parse, parse_term, show

__version__ = "0.1.0"

__all__ = [
    "Abstraction",
    "Atom",
    "NotFresh",
    "Permutation",
    "abs_eq",
    "abstract",
    "act",
    "apply",
    "compose",
    "concrete",
    "fresh",
    "invert",
    "support",
    "transposition",
    "COIND",
    "IND",
    "ArgSpec",
    "Constructor",
    "Mode",
    "Signature",
    "is_nontrivial",
    "lambda_signature",
    "mbs",
    "validate",
    "HOLE",
    "Arg",
    "AtMost",
    "Cons",
    "Done",
    "Exactly",
    "MetricResult",
    "MixedTerm",
    "Ref",
    "TermEnv",
    "Var",
    "act_term",
    "an_distance",
    "app",
    "atoms_of",
    "bind",
    "cons",
    "embed",
    "env_atoms",
    "free_vars",
    "from_equations",
    "lam",
    "truncate",
    "unfold",
    "alpha_distance",
    "alpha_eq_finite",
    "alpha_eq_regular",
    "alpha_eq_trunc",
    "alpha_eq_upto",
    "nameless",
    "SubstTask",
    "freshen_binders",
    "subst",
    "Symbols",
    "parse",
    "parse_term",
    "show",
]
