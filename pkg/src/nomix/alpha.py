"""α-equivalence of finite terms, truncations, and mixed terms.

Two independent deciders for finite trees live here:
:func:`alpha_eq_finite` follows the congruence rule literally (rename each
pair of binders to a common fresh atom, then compare), and :func:`nameless`
computes a canonical form in which bound occurrences become
``(block distance, position in block)`` indices.
"""
from __future__ import annotations

from typing import Any

from .nominal import Atom, fresh, transposition, act
from .signature import Signature
from .terms import (
    HOLE,
    Cons,
    MixedTerm,
    MetricResult,
    Ref,
    TermEnv,
    Var,
    all_atoms,
    check_env,
    depth_distance,
    truncate,
)

NamelessForm = Any


def nameless(t) -> NamelessForm:
    """Canonical form: equal for two trees iff they are α-equivalent."""

    def go(s, blocks: tuple):
        if isinstance(s, Var):
            for i, block in enumerate(reversed(blocks)):
                for j in range(len(block) - 1, -1, -1):
                    if block[j] == s.atom:
                        return ("b", i, j)
            return ("f", s.atom)
        if isinstance(s, Cons):
            return (
                "c",
                s.op,
                tuple((len(a.binders), go(a.body, blocks + (a.binders,))) for a in s.args),
            )
        if s is HOLE:
            return ("*",)
        raise TypeError(f"cannot canonicalize {s!r}")

    return go(t, ())


def alpha_eq_finite(t, u) -> bool:
    """α-equivalence of finite trees by fresh renaming of paired binders.

    A binder block ``⟨x1⟩…⟨xk⟩`` is treated as iterated single abstraction,
    so repeated binders in a block shadow left to right.
    """
    if isinstance(t, Var) and isinstance(u, Var):
        return t.atom == u.atom
    if isinstance(t, Cons) and isinstance(u, Cons):
        if t.op != u.op or len(t.args) != len(u.args):
            return False
        for a, b in zip(t.args, u.args):
            if len(a.binders) != len(b.binders):
                return False
            if not _alpha_abs(list(a.binders), a.body, list(b.binders), b.body):
                return False
        return True
    return t is HOLE and u is HOLE


def _alpha_abs(xs: list[Atom], s, ys: list[Atom], r) -> bool:
    while xs:
        x, y = xs.pop(0), ys.pop(0)
        z = fresh(all_atoms(s) | all_atoms(r) | {x, y} | set(xs) | set(ys))
        px, py = transposition(x, z), transposition(y, z)
        xs, s = [px(w) for w in xs], act(px, s)
        ys, r = [py(w) for w in ys], act(py, r)
    return alpha_eq_finite(s, r)


def alpha_eq_nameless(t, u) -> bool:
    return nameless(t) == nameless(u)


def alpha_eq_trunc(a, b) -> bool:
    """α-equivalence of truncations; the hole is a constant equal only to itself."""
    return alpha_eq_finite(a, b)


def alpha_eq_upto(t: MixedTerm, u: MixedTerm, n: int, every_depth: bool = False) -> bool:
    """``truncate(t, k) =α truncate(u, k)`` for all ``k <= n``.

    Truncations are monotone, so checking ``k = n`` alone is enough;
    ``every_depth=True`` checks each depth explicitly.
    """
    depths = range(n + 1) if every_depth else (n,)
    return all(nameless(truncate(t, k)) == nameless(truncate(u, k)) for k in depths)


def alpha_distance(t, u, precision: int, sig: Signature | None = None) -> MetricResult:
    """Arnold-Nivat distance on α-classes: truncations compared up to α."""
    return depth_distance(t, u, precision, alpha_eq_nameless, sig)


def alpha_eq_regular(t: TermEnv, u: TermEnv, sig: Signature) -> bool:
    """Decide α-equivalence of the unfoldings of two guarded equation systems.

    Explores pairs ``(subexpression of t, subexpression of u, ρ)`` where ρ
    pairs the atoms currently bound by the same binder on both sides.  The
    state space is finite, so a visited-set search terminates.
    """
    check_env(t, sig)
    check_env(u, sig)

    def resolve(e, env: TermEnv):
        while isinstance(e, Ref):
            e = env.equations[e.name]
        return e

    start = (resolve(Ref(t.root), t), resolve(Ref(u.root), u), frozenset())
    seen: set[tuple[int, int, frozenset]] = set()
    stack = [start]
    while stack:
        et, eu, rho = stack.pop()
        key = (id(et), id(eu), rho)
        if key in seen:
            continue
        seen.add(key)
        if isinstance(et, Var) and isinstance(eu, Var):
            a, b = et.atom, eu.atom
            left = {p: q for p, q in rho}
            if a in left:
                if left[a] != b:
                    return False
            elif b in {q for _, q in rho} or a != b:
                return False
        elif isinstance(et, Cons) and isinstance(eu, Cons):
            if et.op != eu.op or len(et.args) != len(eu.args):
                return False
            for a, b in zip(et.args, eu.args):
                if len(a.binders) != len(b.binders):
                    return False
                r = rho
                for x, y in zip(a.binders, b.binders):
                    r = frozenset((p, q) for p, q in r if p != x and q != y) | {(x, y)}
                stack.append((resolve(a.body, t), resolve(b.body, u), r))
        else:
            return False
    return True
