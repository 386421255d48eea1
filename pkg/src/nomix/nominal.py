"""Atoms, finitely supported permutations, and name abstraction.

Every nominal value in the library answers two generic functions:
:func:`act` (the permutation action) and :func:`support` (least finite
support).  New types join through :func:`register_nominal`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import singledispatch
from typing import Any, Callable, Iterable, Iterator


class NotFresh(ValueError):
    """Concretion at an atom that occurs in the support of the abstraction."""


@dataclass(frozen=True, order=True)
class Atom:
    """A pure name.  Identity and order are the integer ``id``; ``name`` is display only."""

    id: int
    name: str | None = field(default=None, compare=False)

    def __repr__(self) -> str:
        return self.name if self.name is not None else f"#{self.id}"


class Permutation:
    """A finite bijection on atoms, stored in canonical form (no fixed points)."""

    __slots__ = ("_map", "_key")

    def __init__(self, mapping: dict[Atom, Atom] | None = None):
        m = {a: b for a, b in (mapping or {}).items() if a != b}
        if set(m) != set(m.values()):
            raise ValueError(f"not a bijection on its domain: {m}")
        self._map = m
        self._key = frozenset(m.items())

    @classmethod
    def identity(cls) -> "Permutation":
        return cls()

    @property
    def domain(self) -> frozenset[Atom]:
        return frozenset(self._map)

    def __call__(self, a: Atom) -> Atom:
        return self._map.get(a, a)

    def items(self) -> Iterator[tuple[Atom, Atom]]:
        return iter(sorted(self._map.items()))

    def is_identity(self) -> bool:
        return not self._map

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __matmul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def cycles(self) -> list[tuple[Atom, ...]]:
        seen: set[Atom] = set()
        out = []
        for a in sorted(self._map):
            if a in seen:
                continue
            cyc = [a]
            seen.add(a)
            b = self._map[a]
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self._map[b]
            out.append(tuple(cyc))
        return out

    def transpositions(self) -> list[tuple[Atom, Atom]]:
        """Transpositions whose composition (rightmost applied first) is this permutation."""
        out = []
        for cyc in self.cycles():
            # (a1 a2 ... ak) = (a1 ak) ... (a1 a3)(a1 a2)
            out.extend((cyc[0], c) for c in reversed(cyc[1:]))
        return out

    def __repr__(self) -> str:
        if not self._map:
            return "id"
        return "".join("(" + " ".join(map(repr, c)) + ")" for c in self.cycles())


def transposition(a: Atom, b: Atom) -> Permutation:
    return Permutation({a: b, b: a})


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``compose(p, q)`` applies ``q`` first, then ``p``."""
    dom = p.domain | q.domain
    return Permutation({a: p(q(a)) for a in dom})


def invert(p: Permutation) -> Permutation:
    return Permutation({b: a for a, b in p._map.items()})


def apply(p: Permutation, a: Atom) -> Atom:
    return p(a)


def swapping(pairs: Iterable[tuple[Atom, Atom]]) -> Permutation:
    """Composite of transpositions, the first pair applied first."""
    p = Permutation()
    for a, b in pairs:
        p = compose(transposition(a, b), p)
    return p


# ---------------------------------------------------------------------------
# generic action and support


@singledispatch
def _act(v: Any, p: Permutation) -> Any:
    raise TypeError(f"no permutation action for {type(v).__name__}")


@singledispatch
def _support(v: Any) -> frozenset[Atom]:
    raise TypeError(f"no support for {type(v).__name__}")


def act(p: Permutation, v: Any) -> Any:
    """The permutation action ``p · v``."""
    if p.is_identity():
        return v
    return _act(v, p)


def support(v: Any) -> frozenset[Atom]:
    """Least finite support of a nominal value."""
    return _support(v)


def register_nominal(cls: type, action: Callable[[Permutation, Any], Any],
                     supp: Callable[[Any], frozenset[Atom]]) -> None:
    """Make ``cls`` a nominal type for :func:`act` and :func:`support`."""
    _act.register(cls)(lambda v, p: action(p, v))
    _support.register(cls)(supp)


register_nominal(Atom, lambda p, a: p(a), lambda a: frozenset((a,)))
register_nominal(tuple, lambda p, v: tuple(act(p, x) for x in v),
                 lambda v: frozenset().union(*map(support, v)))
register_nominal(frozenset, lambda p, v: frozenset(act(p, x) for x in v),
                 lambda v: frozenset().union(*map(support, v)))
# conjugation
register_nominal(Permutation,
                 lambda p, q: Permutation({p(a): p(b) for a, b in q._map.items()}),
                 lambda q: q.domain)
for _trivial in (int, str, bool, type(None)):
    register_nominal(_trivial, lambda p, v: v, lambda v: frozenset())


def fresh(avoid: Iterable[Atom]) -> Atom:
    """The least atom not in ``avoid``."""
    used = {a.id for a in avoid}
    i = 0
    while i in used:
        i += 1
    return Atom(i)


def fresh_many(avoid: Iterable[Atom], k: int) -> list[Atom]:
    used = set(avoid)
    out = []
    for _ in range(k):
        z = fresh(used)
        used.add(z)
        out.append(z)
    return out


# ---------------------------------------------------------------------------
# abstraction


@dataclass(frozen=True, eq=False)
class Abstraction:
    """A representative ``(binder, body)`` of the class ``⟨binder⟩body``.

    ``==`` is :func:`abs_eq` with structural equality on bodies; pass a custom
    ``eq`` to :func:`abs_eq` for bodies that need a weaker comparison.
    """

    binder: Atom
    body: Any

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Abstraction):
            return NotImplemented
        return abs_eq(self, other)

    def __hash__(self) -> int:
        # concretion at the least atom fresh for the class is class-invariant
        return hash(("abs", concrete(self, fresh(support(self)))))

    def __matmul__(self, y: Atom) -> Any:
        return concrete(self, y)

    def __repr__(self) -> str:
        return f"⟨{self.binder!r}⟩{self.body!r}"


register_nominal(Abstraction,
                 lambda p, v: Abstraction(p(v.binder), act(p, v.body)),
                 lambda v: support(v.body) - {v.binder})


def abs_eq(
    a: Abstraction,
    b: Abstraction,
    eq: Callable[[Any, Any], bool] = lambda s, t: s == t,
    witness: Atom | None = None,
) -> bool:
    """Decide ``⟨x⟩s ∼ ⟨x'⟩t`` using one fresh witness.

    ``witness`` overrides the choice; it must avoid both supports and both binders.
    """
    avoid = support(a.body) | support(b.body) | {a.binder, b.binder}
    if witness is None:
        witness = fresh(avoid)
    elif witness in avoid:
        raise NotFresh(f"witness {witness!r} is not fresh")
    return eq(
        act(transposition(a.binder, witness), a.body),
        act(transposition(b.binder, witness), b.body),
    )


def abstract(x: Atom, body: Any) -> Abstraction:
    return Abstraction(x, body)


def concrete(a: Abstraction, y: Atom) -> Any:
    """Concretion ``⟨x⟩s @ y = (x y)·s``; ``y`` must be fresh for the abstraction."""
    if y in support(a):
        raise NotFresh(f"{y!r} occurs in the support of {a!r}")
    return act(transposition(a.binder, y), a.body)
