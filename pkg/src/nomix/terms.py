"""Raw finite and mixed inductive-coinductive terms over a signature.

A finite term (and a truncation) is a plain immutable tree of :class:`Var`,
:class:`Cons` and :data:`HOLE`.  A :class:`MixedTerm` is lazy: observing it
yields one inductive layer, i.e. a tree of ``Var``/``Cons`` whose inductive
argument bodies are again layers and whose coinductive argument bodies are
``MixedTerm`` objects.  Observation is memoized.

Every ``MixedTerm`` may carry ``atoms``, a finite superset of the atoms that
occur anywhere in it (``None`` when unknown, e.g. an ``unfold`` with
infinitely many names).  The bound is exact for terms built from equations
or embedded from finite terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from .nominal import Atom, Permutation, act, register_nominal, support
from .signature import COIND, Signature


class TermError(ValueError):
    pass


class UndefinedName(TermError):
    pass


class Unguarded(TermError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("unguarded cycle " + " -> ".join(cycle + cycle[:1]))


class ArityMismatch(TermError):
    pass


class UnknownConstructor(TermError):
    pass


# ---------------------------------------------------------------------------
# syntax trees


@dataclass(frozen=True)
class Var:
    atom: Atom

    def __repr__(self) -> str:
        return _show(self)


@dataclass(frozen=True)
class Arg:
    binders: tuple[Atom, ...]
    body: Any


@dataclass(frozen=True)
class Cons:
    op: str
    args: tuple[Arg, ...] = ()

    def __repr__(self) -> str:
        return _show(self)


@dataclass(frozen=True)
class Ref:
    """Reference to an equation of a :class:`TermEnv`."""

    name: str

    def __repr__(self) -> str:
        return self.name


class _Hole:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "*"

    def __reduce__(self):
        return (_Hole, ())


HOLE = _Hole()


def _show(t) -> str:
    from .syntax import show

    return show(t)


def cons(op: str, *args) -> Cons:
    """``cons("f", t, bind(x, y, u))``: plain arguments have no binders."""
    return Cons(op, tuple(a if isinstance(a, Arg) else Arg((), a) for a in args))


def bind(*binders_and_body) -> Arg:
    *xs, body = binders_and_body
    return Arg(tuple(xs), body)


def var(a: Atom) -> Var:
    return Var(a)


def lam(x: Atom, body) -> Cons:
    return Cons("λ", (Arg((x,), body),))


def app(f, a) -> Cons:
    return Cons("@", (Arg((), f), Arg((), a)))


def _act_tree(p: Permutation, t):
    if isinstance(t, Var):
        return Var(p(t.atom))
    if isinstance(t, Cons):
        return Cons(t.op, tuple(Arg(tuple(map(p, a.binders)), act(p, a.body)) for a in t.args))
    return act(p, t)


register_nominal(Var, _act_tree, lambda t: frozenset((t.atom,)))
register_nominal(Cons, _act_tree, lambda t: frozenset().union(*map(support, t.args)))
register_nominal(
    Arg,
    lambda p, a: Arg(tuple(map(p, a.binders)), act(p, a.body)),
    lambda a: frozenset(a.binders) | support(a.body),
)
register_nominal(_Hole, lambda p, h: h, lambda h: frozenset())
register_nominal(Ref, lambda p, r: r, lambda r: frozenset())


def all_atoms(t) -> frozenset[Atom]:
    """Atoms occurring in a finite tree (binders included); the raw support."""
    out: set[Atom] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.atom)
        elif isinstance(s, Cons):
            for a in s.args:
                out.update(a.binders)
                stack.append(a.body)
        elif isinstance(s, MixedTerm):
            if s.atoms is None:
                raise TermError("mixed term with unknown atom bound")
            out.update(s.atoms)
    return frozenset(out)


def free_atoms(t) -> frozenset[Atom]:
    """Free atoms of a finite tree or truncation."""
    out: set[Atom] = set()

    def go(s, bound: frozenset):
        if isinstance(s, Var):
            if s.atom not in bound:
                out.add(s.atom)
        elif isinstance(s, Cons):
            for a in s.args:
                go(a.body, bound | set(a.binders))

    go(t, frozenset())
    return frozenset(out)


def check_tree(t, sig: Signature, coinductive: Callable[[Any], None] | None = None,
               holes: bool = False, refs: bool = False) -> None:
    """Validate ops, arities and binder counts of a tree against ``sig``.

    ``coinductive`` is called on every coinductive body instead of descending
    into it (used to validate layers whose coinductive slots hold payloads).
    """
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            continue
        if isinstance(s, Cons):
            if s.op not in sig:
                raise UnknownConstructor(f"unknown constructor {s.op!r}")
            spec = sig[s.op]
            if len(s.args) != spec.arity:
                raise ArityMismatch(f"{s.op} expects {spec.arity} arguments, got {len(s.args)}")
            for a, sp in zip(s.args, spec.args):
                if len(a.binders) != sp.binders:
                    raise ArityMismatch(
                        f"argument of {s.op} binds {sp.binders} atoms, got {len(a.binders)}"
                    )
                if sp.mode is COIND and coinductive is not None:
                    coinductive(a.body)
                else:
                    stack.append(a.body)
        elif s is HOLE and holes:
            continue
        elif isinstance(s, Ref) and refs:
            continue
        else:
            raise TermError(f"unexpected {type(s).__name__} in term: {s!r}")


# ---------------------------------------------------------------------------
# mixed terms


class MixedTerm:
    """A lazily unfolded mixed term.

    ``observe()`` returns the head inductive layer.  Forcing is memoized and
    idempotent: concurrent forcings may both run the thunk, but they produce
    observationally equal layers and the first stored one wins.
    """

    __slots__ = ("sig", "atoms", "_thunk", "_layer")

    def __init__(self, sig: Signature, thunk: Callable[[], Any] | None = None,
                 atoms: Iterable[Atom] | None = None, layer: Any = None):
        self.sig = sig
        self.atoms = None if atoms is None else frozenset(atoms)
        self._thunk = thunk
        self._layer = layer
        if thunk is None and layer is None:
            raise ValueError("need a thunk or a layer")

    @classmethod
    def forced(cls, sig: Signature, layer, atoms=None) -> "MixedTerm":
        return cls(sig, None, atoms, layer)

    @property
    def is_forced(self) -> bool:
        return self._layer is not None

    def observe(self):
        layer = self._layer
        if layer is None:
            layer = self._thunk()
            if self._layer is None:
                self._layer = layer
            else:
                layer = self._layer
        return layer

    def __repr__(self) -> str:
        from .syntax import show

        return f"<MixedTerm {show(truncate(self, 3), self.sig)} …>"


def _mixed_support(t: MixedTerm) -> frozenset[Atom]:
    if t.atoms is None:
        raise TermError("support of a mixed term with unknown atom bound")
    return t.atoms


register_nominal(MixedTerm, lambda p, t: act_term(p, t), _mixed_support)


@dataclass(frozen=True)
class Done:
    """An already-built coinductive child in an ``unfold`` step (no further unfolding)."""

    term: MixedTerm


def _map_coinductive(layer, sig: Signature, f: Callable[[Any], Any]):
    """Rebuild a layer, replacing every coinductive body ``c`` by ``f(c)``."""
    if isinstance(layer, Cons):
        spec = sig[layer.op]
        return Cons(
            layer.op,
            tuple(
                Arg(a.binders, f(a.body) if sp.mode is COIND else _map_coinductive(a.body, sig, f))
                for a, sp in zip(layer.args, spec.args)
            ),
        )
    return layer


def unfold(step: Callable[[Any], Any], seed, sig: Signature,
           atoms: Iterable[Atom] | None = None) -> MixedTerm:
    """The unique term whose observation is ``step(seed)`` with seeds unfolded.

    ``step`` returns a layer whose coinductive bodies are seeds, or
    :class:`Done` terms that are used as they are.  ``atoms``, when given,
    must bound the atoms of every layer ever produced.
    """
    atoms = None if atoms is None else frozenset(atoms)

    def resolve(payload):
        if isinstance(payload, Done):
            return payload.term
        return unfold(step, payload, sig, atoms)

    def thunk():
        layer = step(seed)
        check_tree(layer, sig, coinductive=lambda _: None)
        return _map_coinductive(layer, sig, resolve)

    return MixedTerm(sig, thunk, atoms)


def embed(t, sig: Signature) -> MixedTerm:
    """The canonical image of a finite term; every slot is already forced."""
    check_tree(t, sig)
    atoms = all_atoms(t)

    def layer(s):
        if isinstance(s, Cons):
            spec = sig[s.op]
            return Cons(
                s.op,
                tuple(
                    Arg(a.binders, MixedTerm.forced(sig, layer(a.body), atoms)
                        if sp.mode is COIND else layer(a.body))
                    for a, sp in zip(s.args, spec.args)
                ),
            )
        return s

    return MixedTerm.forced(sig, layer(t), atoms)


def act_term(p: Permutation, t: MixedTerm) -> MixedTerm:
    """Rename every atom of ``t`` by ``p``, lazily."""
    if p.is_identity():
        return t
    atoms = None if t.atoms is None else frozenset(map(p, t.atoms))
    return MixedTerm(t.sig, lambda: act(p, t.observe()), atoms)


# ---------------------------------------------------------------------------
# equation systems


@dataclass(frozen=True)
class TermEnv:
    """A finite system ``name = expression`` with a root; expressions may use :class:`Ref`."""

    equations: Mapping[str, Any]
    root: str

    @classmethod
    def of(cls, root: str, **equations) -> "TermEnv":
        return cls(dict(equations), root)

    @classmethod
    def finite(cls, t, root: str = "_") -> "TermEnv":
        return cls({root: t}, root)

    def reachable(self) -> list[str]:
        seen: list[str] = []
        stack = [self.root]
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            if n not in self.equations:
                raise UndefinedName(f"undefined name {n!r}")
            seen.append(n)
            stack.extend(reversed(_refs(self.equations[n])))
        return seen


def _refs(e) -> list[str]:
    out = []
    stack = [e]
    while stack:
        s = stack.pop()
        if isinstance(s, Ref):
            out.append(s.name)
        elif isinstance(s, Cons):
            stack.extend(a.body for a in reversed(s.args))
    return out


register_nominal(
    TermEnv,
    lambda p, env: TermEnv({n: act(p, e) for n, e in env.equations.items()}, env.root),
    lambda env: env_atoms(env),
)


def env_atoms(env: TermEnv) -> frozenset[Atom]:
    """All atoms of the equations reachable from the root."""
    return frozenset().union(*(all_atoms(env.equations[n]) for n in env.reachable()))


def _edges(e, sig: Signature, guarded: bool = False):
    """``(name, guarded)`` for every reference in ``e``."""
    if isinstance(e, Ref):
        yield e.name, guarded
    elif isinstance(e, Cons):
        for a, sp in zip(e.args, sig[e.op].args):
            yield from _edges(a.body, sig, guarded or sp.mode is COIND)


def check_env(env: TermEnv, sig: Signature) -> None:
    """Well-formedness and guardedness; raises the matching :class:`TermError`."""
    if env.root not in env.equations:
        raise UndefinedName(f"undefined name {env.root!r}")
    for name, e in env.equations.items():
        check_tree(e, sig, refs=True)
        for m in _refs(e):
            if m not in env.equations:
                raise UndefinedName(f"undefined name {m!r} in equation {name}")
    cycle = unguarded_cycle(env, sig)
    if cycle:
        raise Unguarded(cycle)


def unguarded_cycle(env: TermEnv, sig: Signature) -> list[str] | None:
    """A cycle of references none of which sits below a coinductive argument."""
    graph = {
        n: sorted({m for m, g in _edges(e, sig) if not g}) for n, e in env.equations.items()
    }
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(graph, WHITE)
    path: list[str] = []

    def dfs(n):
        color[n] = GREY
        path.append(n)
        for m in graph[n]:
            if color[m] == GREY:
                return path[path.index(m):]
            if color[m] == WHITE:
                found = dfs(m)
                if found:
                    return found
        path.pop()
        color[n] = BLACK
        return None

    for n in sorted(graph):
        if color[n] == WHITE:
            found = dfs(n)
            if found:
                return list(found)
    return None


def from_equations(env: TermEnv, sig: Signature) -> MixedTerm:
    """The (lazy) unfolding of ``env.root``; the system is checked eagerly."""
    check_env(env, sig)
    atoms = env_atoms(env)
    eqs = env.equations
    nodes: dict[str, MixedTerm] = {}

    def node(name: str) -> MixedTerm:
        if name not in nodes:
            nodes[name] = MixedTerm(sig, lambda: layer(eqs[name]), atoms)
        return nodes[name]

    def slot(e):
        if isinstance(e, Ref):
            return node(e.name)
        return MixedTerm(sig, lambda: layer(e), atoms)

    def layer(e):
        while isinstance(e, Ref):
            e = eqs[e.name]
        if isinstance(e, Cons):
            spec = sig[e.op]
            return Cons(
                e.op,
                tuple(
                    Arg(a.binders, slot(a.body) if sp.mode is COIND else layer(a.body))
                    for a, sp in zip(e.args, spec.args)
                ),
            )
        return e

    return node(env.root)


# ---------------------------------------------------------------------------
# observation


def truncate(t, n: int, sig: Signature | None = None):
    """Mixed truncation at depth ``n``.

    The depth budget drops by one only through coinductive arguments; at
    budget 0 the result is :data:`HOLE`.  ``t`` is a :class:`MixedTerm`, or a
    finite tree together with ``sig``.
    """
    if n <= 0:
        return HOLE
    if isinstance(t, MixedTerm):
        return _truncate_layer(t.observe(), n, t.sig)
    if sig is None:
        raise TypeError("truncating a finite term needs its signature")
    return _truncate_tree(t, n, sig)


def _truncate_layer(layer, n: int, sig: Signature):
    if isinstance(layer, Cons):
        spec = sig[layer.op]
        return Cons(
            layer.op,
            tuple(
                Arg(a.binders, truncate(a.body, n - 1) if sp.mode is COIND
                    else _truncate_layer(a.body, n, sig))
                for a, sp in zip(layer.args, spec.args)
            ),
        )
    return layer


def _truncate_tree(t, n: int, sig: Signature):
    if n <= 0:
        return HOLE
    if isinstance(t, Cons):
        spec = sig[t.op]
        return Cons(
            t.op,
            tuple(Arg(a.binders, _truncate_tree(a.body, n - sp.mode.guard, sig))
                  for a, sp in zip(t.args, spec.args)),
        )
    return t


def atoms_of(t: MixedTerm, depth: int) -> frozenset[Atom]:
    """Atoms (bound or free) occurring in the depth-``depth`` truncation."""
    return all_atoms(truncate(t, depth))


def free_vars(t: MixedTerm, depth: int) -> frozenset[Atom]:
    return free_atoms(truncate(t, depth))


def has_hole(t) -> bool:
    stack = [t]
    while stack:
        s = stack.pop()
        if s is HOLE:
            return True
        if isinstance(s, Cons):
            stack.extend(a.body for a in s.args)
    return False


def stabilization_depth(t, sig: Signature) -> int:
    """Least ``n`` with a hole-free truncation of the finite term ``t``."""
    if isinstance(t, Cons):
        return max(
            (stabilization_depth(a.body, sig) + sp.mode.guard
             for a, sp in zip(t.args, sig[t.op].args)),
            default=1,
        )
    return 1


# ---------------------------------------------------------------------------
# Arnold-Nivat metric


@dataclass(frozen=True)
class MetricResult:
    """``2**-exponent``, either exactly or as an upper bound."""

    exponent: int
    exact: bool = True

    @property
    def value(self) -> float:
        return 2.0 ** -self.exponent

    def __str__(self) -> str:
        return f"{'=' if self.exact else '<='}2^-{self.exponent}"


def Exactly(k: int) -> MetricResult:
    return MetricResult(k, True)


def AtMost(p: int) -> MetricResult:
    return MetricResult(p, False)


def depth_distance(t, u, precision: int, same: Callable[[Any, Any], bool],
                   sig: Signature | None = None) -> MetricResult:
    """``inf {2^-n : same(t^n, u^n)}`` observed up to ``precision``."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    sig = sig or t.sig
    tp, up = truncate(t, precision, sig), truncate(u, precision, sig)
    for k in range(1, precision + 1):
        if not same(_truncate_tree(tp, k, sig), _truncate_tree(up, k, sig)):
            return Exactly(k - 1)
    return AtMost(precision)


def an_distance(t, u, precision: int, sig: Signature | None = None) -> MetricResult:
    """Arnold-Nivat distance, comparing truncations syntactically."""
    return depth_distance(t, u, precision, lambda a, b: a == b, sig)
