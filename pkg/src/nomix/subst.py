"""Capture-avoiding substitution on mixed terms.

One substitution step observes an inductive layer of the target and
rewrites it in four stages::

    freshen_binders -> inject_right -> layer_subst_h -> strength_pack

``layer_subst_h`` recurses through the inductive layer and replaces the
variable; coinductive slots are left alone and tagged :class:`Resume`
(substitution still to do) or :class:`~nomix.terms.Done` (a slot of the
replacement, nothing to do).  ``strength_pack`` turns each ``Resume`` into a
:class:`SubstTask` seed pushed under the slot's binders, and
:func:`~nomix.terms.unfold` continues corecursively from those seeds.
"""
from __future__ import annotations

from dataclasses import dataclass

from .nominal import Atom, act, fresh, transposition
from .signature import COIND, Signature
from .terms import (
    Arg,
    Cons,
    Done,
    MixedTerm,
    TermError,
    Var,
    _map_coinductive,
    all_atoms,
    unfold,
)


class FreshnessViolation(RuntimeError):
    """A binder of an inductive layer clashes with the substitution (internal bug)."""


class UnknownSupport(TermError):
    """A binder must be renamed but the term has no finite atom bound."""


@dataclass(frozen=True)
class SubstTask:
    """``target[var := replacement]``, still to be unfolded."""

    target: MixedTerm
    var: Atom
    replacement: MixedTerm


@dataclass(frozen=True)
class Resume:
    """A coinductive child of the target: substitution continues there."""

    term: MixedTerm


def _clash(x: Atom, u: MixedTerm) -> frozenset[Atom]:
    if u.atoms is None:
        raise UnknownSupport("the replacement needs a finite atom bound")
    return u.atoms | {x}


def _rename_block(xs: list[Atom], body, bound, avoid: frozenset[Atom]):
    """Rename binders of ``⟨xs⟩body`` that lie in ``avoid``; returns the new triple."""
    for k in range(len(xs)):
        y = xs[k]
        if y not in avoid:
            continue
        if bound is None:
            raise UnknownSupport(f"cannot rename binder {y!r}: atoms of the body are unknown")
        z = fresh(bound | avoid | set(xs))
        z = Atom(z.id, f"{y.name}'" if y.name else None)
        p = transposition(y, z)
        xs = xs[:k] + [p(w) for w in xs[k:]]
        body = act(p, body)
        bound = frozenset(map(p, bound))
    return xs, body, bound


def freshen_binders(layer, avoid, sig: Signature, bound=None):
    """An α-equivalent layer whose binders all avoid ``avoid``.

    ``bound`` must contain every atom of the layer and of its coinductive
    children; by default it is computed from the layer when first needed.
    Binders already outside ``avoid`` are kept, so the operation is idempotent.
    """
    avoid = frozenset(avoid)

    def go(s, b):
        if not isinstance(s, Cons):
            return s
        spec = sig[s.op]
        args = []
        for a, sp in zip(s.args, spec.args):
            body, xs = a.body, list(a.binders)
            if avoid.intersection(xs):
                if b is None:
                    b = _lazy_bound(layer)
                xs, body, bb = _rename_block(xs, body, b, avoid)
            else:
                bb = b
            if sp.mode is not COIND:
                body = go(body, bb)
            args.append(Arg(tuple(xs), body))
        return Cons(s.op, tuple(args))

    return go(layer, None if bound is None else frozenset(bound))


def _lazy_bound(layer):
    try:
        return all_atoms(layer)
    except TermError:
        return None


def inject_left(layer, sig: Signature):
    return _map_coinductive(layer, sig, Done)


def inject_right(layer, sig: Signature):
    return _map_coinductive(layer, sig, Resume)


def layer_subst_h(layer, x: Atom, u: MixedTerm, sig: Signature):
    """The inner recursion over one inductive layer.

    ``Var(x)`` becomes the head layer of ``u`` (its coinductive slots tagged
    ``Done``), other variables stay, inductive arguments are rewritten and
    coinductive ones are left untouched.
    """
    clash = _clash(x, u)

    def h(s):
        if isinstance(s, Var):
            return inject_left(u.observe(), sig) if s.atom == x else s
        if isinstance(s, Cons):
            args = []
            for a, sp in zip(s.args, sig[s.op].args):
                if sp.mode is COIND:
                    args.append(a)
                    continue
                bad = clash.intersection(a.binders)
                if bad:
                    raise FreshnessViolation(f"binder(s) {sorted(bad)} not fresh for the substitution")
                args.append(Arg(a.binders, h(a.body)))
            return Cons(s.op, tuple(args))
        return s

    return h(layer)


def _tau(binders, m: MixedTerm, x: Atom, u: MixedTerm, clash) -> Arg:
    # ⟨ȳ⟩m paired with (x, u) becomes ⟨z̄⟩(concretion of ⟨ȳ⟩m at z̄, x, u)
    xs, body, _ = _rename_block(list(binders), m, m.atoms, clash)
    return Arg(tuple(xs), SubstTask(body, x, u))


def strength_pack(layer, x: Atom, u: MixedTerm, sig: Signature):
    """Push ``(x, u)`` under every ``Resume`` slot, giving :class:`SubstTask` seeds."""
    clash = _clash(x, u)

    def go(s):
        if not isinstance(s, Cons):
            return s
        args = []
        for a, sp in zip(s.args, sig[s.op].args):
            if sp.mode is not COIND:
                args.append(Arg(a.binders, go(a.body)))
            elif isinstance(a.body, Resume):
                args.append(_tau(a.binders, a.body.term, x, u, clash))
            else:
                args.append(a)
        return Cons(s.op, tuple(args))

    return go(layer)


def h_prime(layer, x: Atom, u: MixedTerm, sig: Signature):
    """Direct recursive form of the composite step, without the factorization.

    Kept as a cross-check of ``strength_pack ∘ layer_subst_h ∘ inject_right``.
    """
    clash = _clash(x, u)

    def go(s):
        if isinstance(s, Var):
            return inject_left(u.observe(), sig) if s.atom == x else s
        args = []
        for a, sp in zip(s.args, sig[s.op].args):
            if sp.mode is COIND:
                args.append(_tau(a.binders, a.body, x, u, clash))
            else:
                args.append(Arg(a.binders, go(a.body)))
        return Cons(s.op, tuple(args))

    return go(layer)


def subst_step(task: SubstTask):
    """One layer of ``task.target[task.var := task.replacement]`` with seeds."""
    t, x, u = task.target, task.var, task.replacement
    sig = t.sig
    layer = freshen_binders(t.observe(), _clash(x, u), sig, t.atoms)
    layer = inject_right(layer, sig)
    layer = layer_subst_h(layer, x, u, sig)
    return strength_pack(layer, x, u, sig)


def subst(t: MixedTerm, x: Atom, u: MixedTerm) -> MixedTerm:
    """Capture-avoiding substitution of ``u`` for ``x`` in ``t``; lazy and productive.

    ``u`` needs a finite atom bound.  ``t`` needs one only if some binder has
    to be renamed.
    """
    if t.sig.constructors != u.sig.constructors:
        raise ValueError("terms over different signatures")
    clash = _clash(x, u)
    bound = None
    if t.atoms is not None:
        # every renamed binder is the least atom outside a set of at most
        # |t.atoms| + |clash| + max_binders atoms
        extra = len(t.atoms) + len(clash) + t.sig.max_binders
        bound = t.atoms | clash | {Atom(i) for i in range(extra + 1)}
    return unfold(subst_step, SubstTask(t, x, u), t.sig, bound)
