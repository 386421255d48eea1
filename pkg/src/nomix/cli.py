"""Command-line front end.

Exit codes: 0 success, 1 user error (with a ``file:line:col`` diagnostic),
2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import signature as sigmod
from .alpha import alpha_distance, alpha_eq_regular, alpha_eq_upto
from .nominal import NotFresh
from .signature import Signature, SignatureError
from .subst import FreshnessViolation, subst
from .syntax import ParseError, Parsed, Symbols, parse, parse_atom, parse_perm, show, show_atoms
from .terms import (
    MixedTerm,
    TermError,
    Unguarded,
    act_term,
    an_distance,
    atoms_of,
    check_env,
    free_vars,
    from_equations,
    truncate,
)


class UserError(Exception):
    pass


class Session:
    """A validated signature plus the atom names shared by every input."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.symbols = Symbols()

    def load(self, text: str, source: str) -> tuple[Parsed, MixedTerm]:
        parsed = parse(text, self.sig, self.symbols, source)
        try:
            check_env(parsed.env, self.sig)
        except Unguarded as e:
            line, col = parsed.positions.get(e.cycle[0], (1, 1))
            raise ParseError(str(e), line, col, source) from e
        except TermError as e:
            raise ParseError(str(e), 1, 1, source) from e
        return parsed, from_equations(parsed.env, self.sig)

    def show(self, t) -> str:
        return show(t, self.sig, self.symbols.names())


def _inputs(args, n: int) -> list[tuple[str, str]]:
    """``(text, source)`` pairs: ``--file`` inputs first, then positional ones."""
    items = [(Path(f).read_text(encoding="utf-8"), f) for f in args.file or []]
    items += [(t, f"<arg{k + 1}>") for k, t in enumerate(args.terms)]
    if len(items) != n:
        raise UserError(f"{args.command} expects {n} input(s), got {len(items)}")
    return items


def cmd_check(args, out) -> None:
    paths = list(args.paths)
    sig_path = args.sig
    if paths and paths[0].endswith(".sig"):
        sig_path = paths.pop(0)
    sig = sigmod.load(sig_path)
    print(sigmod.nontriviality_witnesses(sig).describe(), file=out)
    session = Session(sig)
    for p in paths:
        parsed, _ = session.load(Path(p).read_text(encoding="utf-8"), p)
        print(f"{p}: guarded (root {parsed.env.root})", file=out)


def cmd_trunc(s: Session, args, out) -> None:
    (text, src), = _inputs(args, 1)
    _, t = s.load(text, src)
    print(s.show(truncate(t, args.depth)), file=out)


def cmd_alpha(s: Session, args, out) -> None:
    (a, sa), (b, sb) = _inputs(args, 2)
    pa, t = s.load(a, sa)
    pb, u = s.load(b, sb)
    if args.exact:
        ok = alpha_eq_regular(pa.env, pb.env, s.sig)
    else:
        ok = alpha_eq_upto(t, u, args.depth)
    print("true" if ok else "false", file=out)


def cmd_dist(s: Session, args, out) -> None:
    (a, sa), (b, sb) = _inputs(args, 2)
    _, t = s.load(a, sa)
    _, u = s.load(b, sb)
    metric = alpha_distance if args.alpha else an_distance
    print(metric(t, u, args.precision), file=out)


def cmd_subst(s: Session, args, out) -> None:
    (term, st), (x, _), (repl, sr) = _inputs(args, 3)
    _, t = s.load(term, st)
    atom = parse_atom(x, s.symbols)
    _, u = s.load(repl, sr)
    print(s.show(truncate(subst(t, atom, u), args.depth)), file=out)


def cmd_fv(s: Session, args, out) -> None:
    (text, src), = _inputs(args, 1)
    _, t = s.load(text, src)
    print(show_atoms(free_vars(t, args.depth), s.symbols.names()), file=out)


def cmd_support(s: Session, args, out) -> None:
    (text, src), = _inputs(args, 1)
    _, t = s.load(text, src)
    print(show_atoms(atoms_of(t, args.depth), s.symbols.names()), file=out)


def cmd_act(s: Session, args, out) -> None:
    (text, src), = _inputs(args, 1)
    _, t = s.load(text, src)
    p = parse_perm(args.perm, s.symbols)
    print(s.show(truncate(act_term(p, t), args.depth)), file=out)


COMMANDS = {
    "trunc": cmd_trunc,
    "alpha": cmd_alpha,
    "dist": cmd_dist,
    "subst": cmd_subst,
    "fv": cmd_fv,
    "support": cmd_support,
    "act": cmd_act,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nomix", description="Mixed inductive-coinductive terms with binders."
    )
    sig_help = "signature file, or a shipped name such as lambda_111 or rtree"
    ap.add_argument("--sig", default="lambda_001", help=sig_help)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a signature and guardedness of term files")
    p.add_argument("paths", nargs="*", help="[SIGFILE] TERMFILE...")

    def term_cmd(name, help, nterms, **opts):
        p = sub.add_parser(name, help=help)
        p.add_argument("terms", nargs="*", metavar="TERM")
        p.add_argument("--file", action="append", help="read an input term from a file")
        # also accepted after the command name
        p.add_argument("--sig", default=argparse.SUPPRESS, help=sig_help)
        for flag, kw in opts.items():
            p.add_argument(f"--{flag}", **kw)
        return p

    depth = dict(type=int, default=5, help="truncation depth")
    term_cmd("trunc", "print a truncation", 1, depth=depth)
    term_cmd("alpha", "α-equivalence up to a depth", 2,
             depth=dict(type=int, default=10, help="observation depth"),
             exact=dict(action="store_true", help="decide for all depths (equation systems)"))
    term_cmd("dist", "Arnold-Nivat distance", 2,
             precision=dict(type=int, default=12),
             alpha=dict(action="store_true", help="compare truncations up to α"))
    term_cmd("subst", "capture-avoiding substitution TERM VAR REPLACEMENT", 3, depth=depth)
    term_cmd("fv", "free atoms of a truncation", 1, depth=depth)
    term_cmd("support", "atoms occurring in a truncation", 1, depth=depth)
    term_cmd("act", "apply a permutation", 1, depth=depth,
             perm=dict(required=True, help='cycles, e.g. "(x y)(u v)"'))
    return ap


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            cmd_check(args, out)
        else:
            if getattr(args, "depth", 0) < 0:
                raise UserError("--depth must be non-negative")
            if getattr(args, "precision", 1) < 1:
                raise UserError("--precision must be at least 1")
            session = Session(sigmod.load(args.sig))
            COMMANDS[args.command](session, args, out)
    except ParseError as e:
        print(f"{e.source}:{e.line}:{e.col}: error: {e.msg}", file=err)
        return 1
    except (UserError, SignatureError, TermError, NotFresh, OSError) as e:
        print(f"error: {e}", file=err)
        return 1
    except (FreshnessViolation, AssertionError) as e:
        print(f"internal error: {e}", file=err)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
