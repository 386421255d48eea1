"""Concrete syntax for terms, equation systems and permutations.

Generic form::

    op(x y. e1, e2)              constructor with a binder prefix per argument
    rec { T = e; U = e' } in T   equation system
    _                            hole of a truncation

With one of the eight λ-signatures, ``\\x. e`` abbreviates ``λ(x. e)`` and
juxtaposition ``e1 e2`` abbreviates ``@(e1, e2)``.  A constructor name must
touch its opening parenthesis; ``f (x)`` is an application.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .nominal import Atom, Permutation, compose
from .signature import APP, LAMBDA, Signature, lambda_modes
from .terms import (
    HOLE,
    Arg,
    Cons,
    MixedTerm,
    Ref,
    TermEnv,
    TermError,
    Var,
    all_atoms,
)


KEYWORDS = ("rec", "in")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0, source: str = "<input>"):
        self.msg, self.line, self.col, self.source = msg, line, col, source
        super().__init__(f"{source}:{line}:{col}: {msg}")


class Symbols:
    """Interns atom names; atoms get consecutive ids in order of first use."""

    def __init__(self):
        self.by_name: dict[str, Atom] = {}

    def atom(self, name: str) -> Atom:
        a = self.by_name.get(name)
        if a is None:
            a = self.by_name[name] = Atom(len(self.by_name), name)
        return a

    def names(self) -> dict[int, str]:
        return {a.id: n for n, a in self.by_name.items()}


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(
    r"""(?P<ws>\s+|\#[^\n]*)
      | (?P<name>[^\W\d]\w*'*|@)
      | (?P<punct>[\\().,;{}=])
    """,
    re.VERBOSE,
)


@dataclass
class Tok:
    kind: str  # "name", a punctuation character, or "eof"
    text: str
    line: int
    col: int
    spaced: bool  # preceded by whitespace


def tokenize(text: str, source: str = "<input>") -> list[Tok]:
    toks: list[Tok] = []
    pos, line, col, spaced = 0, 1, 1, True
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col, source)
        s = m.group()
        if m.lastgroup == "ws":
            spaced = True
        else:
            kind = "name" if m.lastgroup == "name" else s
            toks.append(Tok(kind, s, line, col, spaced))
            spaced = False
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(Tok("eof", "", line, col, True))
    return toks


# ---------------------------------------------------------------------------
# parser


@dataclass
class Parsed:
    env: TermEnv
    positions: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def is_finite(self) -> bool:
        return not any(_has_ref(e) for e in self.env.equations.values())


def _has_ref(e) -> bool:
    if isinstance(e, Ref):
        return True
    if isinstance(e, Cons):
        return any(_has_ref(a.body) for a in e.args)
    return False


class Parser:
    def __init__(self, text: str, sig: Signature, symbols: Symbols | None = None,
                 source: str = "<input>", holes: bool = False):
        self.toks = tokenize(text, source)
        self.i = 0
        self.sig = sig
        self.sugar = lambda_modes(sig) is not None
        self.symbols = symbols if symbols is not None else Symbols()
        self.source = source
        self.holes = holes
        self.eq_names: set[str] = set()

    # token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, self.source)

    def expect(self, kind: str) -> Tok:
        if self.tok.kind != kind:
            want = "a name" if kind == "name" else repr(kind)
            got = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.error(f"expected {want}, got {got}")
        t = self.tok
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    # grammar
    def parse(self) -> Parsed:
        if self.at("name", "rec"):
            parsed = self.rec()
        else:
            parsed = Parsed(TermEnv.finite(self.expr(frozenset())))
        self.expect("eof")
        return parsed

    def rec(self) -> Parsed:
        self.expect("name")
        braced = self.at("{")
        if braced:
            self.i += 1
        # equation names are the names directly before '='
        depth = 0
        for k in range(self.i, len(self.toks) - 1):
            t = self.toks[k]
            if t.kind == "{":
                depth += 1
            elif t.kind == "}":
                if depth == 0:
                    break
                depth -= 1
            elif t.kind == "name" and self.toks[k + 1].kind == "=":
                self.eq_names.add(t.text)
        eqs: dict[str, object] = {}
        positions: dict[str, tuple[int, int]] = {}
        first = None
        while True:
            head = self.expect("name")
            if head.text in eqs:
                raise self.error(f"equation {head.text} defined twice", head)
            self.expect("=")
            eqs[head.text] = self.expr(frozenset())
            positions[head.text] = (head.line, head.col)
            first = first or head
            if not braced:
                break
            if self.at(";"):
                self.i += 1
            if self.at("}"):
                self.i += 1
                break
        if self.at("name", "in"):
            self.i += 1
            root_tok = self.expect("name")
            root = root_tok.text
            if root not in eqs:
                raise self.error(f"undefined name {root}", root_tok)
        elif braced:
            raise self.error("expected 'in' after equations")
        else:
            root = first.text
        return Parsed(TermEnv(eqs, root), positions)

    def expr(self, bound: frozenset[str]):
        if self.sugar and self.at("\\"):
            start = self.tok
            self.i += 1
            names = [self.expect("name").text]
            while self.at("name"):
                names.append(self.expect("name").text)
            self.expect(".")
            body = self.expr(bound | set(names))
            for n in reversed(names):
                body = Cons(LAMBDA, (Arg((self.symbols.atom(n),), body),))
            self._check(body, start)
            return body
        start = self.tok
        head = self.atom(bound)
        if not self.sugar:
            return head
        while (self.tok.kind in ("name", "(") or self.at("\\")) and not self.at("name", "in"):
            if self.at("\\"):
                arg = self.expr(bound)
            else:
                arg = self.atom(bound)
            head = Cons(APP, (Arg((), head), Arg((), arg)))
            self._check(head, start)
        return head

    def atom(self, bound: frozenset[str]):
        t = self.tok
        if t.kind == "(":
            self.i += 1
            e = self.expr(bound)
            self.expect(")")
            return e
        if t.kind != "name":
            raise self.error(f"expected a term, got {'end of input' if t.kind == 'eof' else repr(t.text)}")
        if t.text in KEYWORDS:
            raise self.error(f"unexpected keyword {t.text!r}")
        self.i += 1
        if self.at("(") and not self.tok.spaced:
            return self.constructor(t, bound)
        if t.text == "_":
            if not self.holes:
                raise self.error("hole '_' is only allowed in truncations", t)
            return HOLE
        if t.text in self.eq_names and t.text not in bound:
            return Ref(t.text)
        return Var(self.symbols.atom(t.text))

    def constructor(self, op: Tok, bound: frozenset[str]):
        self.expect("(")
        args = []
        if not self.at(")"):
            while True:
                args.append(self.argument(bound))
                if self.at(","):
                    self.i += 1
                    continue
                break
        self.expect(")")
        c = Cons(op.text, tuple(args))
        self._check(c, op)
        return c

    def argument(self, bound: frozenset[str]) -> Arg:
        k = self.i
        while self.toks[k].kind == "name":
            k += 1
        names: list[str] = []
        if k > self.i and self.toks[k].kind == ".":
            names = [t.text for t in self.toks[self.i:k]]
            self.i = k + 1
        body = self.expr(bound | set(names))
        return Arg(tuple(self.symbols.atom(n) for n in names), body)

    def _check(self, c: Cons, at: Tok) -> None:
        if c.op not in self.sig:
            raise self.error(f"unknown constructor {c.op!r}", at)
        spec = self.sig[c.op]
        if len(c.args) != spec.arity:
            raise self.error(f"{c.op} expects {spec.arity} argument(s), got {len(c.args)}", at)
        for k, (a, sp) in enumerate(zip(c.args, spec.args)):
            if len(a.binders) != sp.binders:
                raise self.error(
                    f"argument {k + 1} of {c.op} binds {sp.binders} atom(s), got {len(a.binders)}", at
                )


def parse(text: str, sig: Signature, symbols: Symbols | None = None,
          source: str = "<input>", holes: bool = False) -> Parsed:
    return Parser(text, sig, symbols, source, holes).parse()


def parse_term(text: str, sig: Signature, symbols: Symbols | None = None, holes: bool = False):
    """Parse a finite term (or truncation, with ``holes=True``)."""
    p = parse(text, sig, symbols, holes=holes)
    if not p.is_finite:
        raise ParseError("expected a finite term, got an equation system")
    return p.env.equations[p.env.root]


def parse_atom(text: str, symbols: Symbols) -> Atom:
    toks = tokenize(text.strip())
    if len(toks) != 2 or toks[0].kind != "name" or toks[0].text == "_":
        raise ParseError(f"expected an atom name, got {text!r}")
    return symbols.atom(toks[0].text)


def parse_perm(text: str, symbols: Symbols) -> Permutation:
    """Cycle notation ``(x y z)(u v)``; the rightmost cycle acts first."""
    toks = tokenize(text)
    p = Permutation()
    i = 0
    cycles = []
    while toks[i].kind != "eof":
        if toks[i].kind != "(":
            raise ParseError("expected '(' in permutation", toks[i].line, toks[i].col)
        i += 1
        cyc = []
        while toks[i].kind == "name":
            cyc.append(symbols.atom(toks[i].text))
            i += 1
        if toks[i].kind != ")":
            raise ParseError("expected ')' in permutation", toks[i].line, toks[i].col)
        i += 1
        if len(set(cyc)) != len(cyc):
            raise ParseError("repeated atom in a cycle")
        cycles.append(cyc)
    for cyc in cycles:
        c = Permutation({a: cyc[(k + 1) % len(cyc)] for k, a in enumerate(cyc)})
        p = compose(p, c)
    return p


# ---------------------------------------------------------------------------
# printer


def _namer(atoms: Iterable[Atom], names: dict[int, str] | None) -> dict[Atom, str]:
    names = names or {}
    used = set(names.values())
    out: dict[Atom, str] = {}
    rest = []
    for a in sorted(set(atoms)):
        if a.id in names:
            out[a] = names[a.id]
        else:
            rest.append(a)
    for a in rest:
        cand = a.name or f"v{a.id}"
        while cand in used or cand == "_" or cand in KEYWORDS:
            cand += "'"
        used.add(cand)
        out[a] = cand
    return out


def show(t, sig: Signature | None = None, names: dict[int, str] | None = None) -> str:
    """Print a finite term, truncation (``_`` for holes) or :class:`TermEnv`."""
    sugar = sig is not None and lambda_modes(sig) is not None
    if isinstance(t, TermEnv):
        atoms = frozenset().union(*(_atoms(e) for e in t.equations.values()))
    else:
        atoms = _atoms(t)
    nm = _namer(atoms, names)
    pr = _Printer(nm, sugar)
    if isinstance(t, TermEnv):
        if len(t.equations) == 1 and not any(_has_ref(e) for e in t.equations.values()):
            return pr.expr(t.equations[t.root])
        body = "; ".join(f"{n} = {pr.expr(e)}" for n, e in t.equations.items())
        return f"rec {{ {body} }} in {t.root}"
    return pr.expr(t)


def _atoms(t) -> frozenset[Atom]:
    try:
        return all_atoms(t)
    except TermError:
        return frozenset()


class _Printer:
    def __init__(self, names: dict[Atom, str], sugar: bool):
        self.names = names
        self.sugar = sugar

    def name(self, a: Atom) -> str:
        return self.names.get(a) or a.name or f"v{a.id}"

    def expr(self, t) -> str:
        if self.sugar and isinstance(t, Cons):
            if t.op == LAMBDA:
                a = t.args[0]
                return f"\\{self.name(a.binders[0])}. {self.expr(a.body)}"
            if t.op == APP:
                f, x = t.args[0].body, t.args[1].body
                fs = self.expr(f)
                if _is(f, LAMBDA):
                    fs = f"({fs})"
                xs = self.expr(x)
                if _is(x, LAMBDA) or _is(x, APP):
                    xs = f"({xs})"
                return f"{fs} {xs}"
        return self.atomic(t)

    def atomic(self, t) -> str:
        if isinstance(t, Var):
            return self.name(t.atom)
        if t is HOLE:
            return "_"
        if isinstance(t, Ref):
            return t.name
        if isinstance(t, Cons):
            parts = []
            for a in t.args:
                prefix = "".join(self.name(x) + " " for x in a.binders).rstrip()
                body = self.expr(a.body)
                parts.append(f"{prefix}. {body}" if prefix else body)
            return f"{t.op}({', '.join(parts)})"
        if isinstance(t, MixedTerm):
            return "…"
        return repr(t)


def _is(t, op: str) -> bool:
    return isinstance(t, Cons) and t.op == op


def show_atoms(atoms: Iterable[Atom], names: dict[int, str] | None = None) -> str:
    nm = _namer(atoms, names)
    return "{" + ", ".join(sorted(nm[a] for a in set(atoms))) + "}"
