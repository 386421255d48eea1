"""Acceptance criteria, one test per criterion.

Case counts and depths are the stated ones; every suite must also finish
within 60 seconds.  Results are summarized in the "acceptance criteria"
section at the end of the pytest report.
"""
import io
import random
import time
from pathlib import Path

import pytest

from nomix import signature as sigmod
from nomix.alpha import (
    alpha_distance,
    alpha_eq_finite,
    alpha_eq_nameless,
    alpha_eq_regular,
    alpha_eq_upto,
)
from nomix.cli import main
from nomix.nominal import (
    Abstraction,
    Atom,
    NotFresh,
    Permutation,
    abs_eq,
    abstract,
    act,
    compose,
    concrete,
    fresh,
    fresh_many,
    support,
    transposition,
)
from nomix.signature import APP, LAMBDA, lambda_signature, nontriviality_witnesses, validate
from nomix.subst import subst
from nomix.syntax import Symbols, parse, show
from nomix.terms import (
    HOLE,
    Arg,
    Cons,
    Ref,
    TermEnv,
    Unguarded,
    Var,
    act_term,
    an_distance,
    app,
    check_env,
    embed,
    env_atoms,
    from_equations,
    has_hole,
    lam,
    stabilization_depth,
    truncate,
)
import gen
from oracles import oracle_subst, to_db, trunc_env

BUDGET = 60.0
L000 = lambda_signature(0, 0, 0)
L001 = lambda_signature(0, 0, 1)
L111 = lambda_signature(1, 1, 1)
x, y, z = (Atom(i, n) for i, n in enumerate("xyz"))
X, Y, Z = Var(x), Var(y), Var(z)

M_ENV = TermEnv.of("M", M=lam(x, app(X, Ref("M"))))
N_ENV = TermEnv.of("N", N=lam(y, app(Y, Ref("N"))))
T_ENV = TermEnv.of("T", T=app(X, Ref("T")))
U_ENV = TermEnv.of("U", U=app(Y, Ref("U")))


class Clock:
    def __init__(self, request):
        self.request = request
        self.start = time.perf_counter()
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def finish(self):
        elapsed = time.perf_counter() - self.start
        self.request.node.acceptance_detail = ", ".join(self.notes + [f"{elapsed:.1f}s"])
        assert elapsed < BUDGET, f"suite took {elapsed:.1f}s"


@pytest.fixture
def clock(request):
    return Clock(request)


def rand_value(rng, depth=3):
    """A random nominal value: atoms, pairs, finite sets, abstractions and λ-terms."""
    r = rng.random()
    if depth == 0 or r < 0.25:
        return gen.rand_atom(rng)
    if r < 0.45:
        return (rand_value(rng, depth - 1), rand_value(rng, depth - 1))
    if r < 0.55:
        return frozenset(rand_value(rng, depth - 1) for _ in range(rng.randint(0, 3)))
    if r < 0.8:
        return Abstraction(gen.rand_atom(rng), rand_value(rng, depth - 1))
    return gen.rand_lambda(rng, rng.randint(1, 6))


# ---------------------------------------------------------------------------


@pytest.mark.acceptance("1 nominal-core laws")
def test_criterion_1_nominal_laws(clock):
    rng = random.Random(1)
    n = 10_000
    ident = Permutation.identity()
    for _ in range(n):
        v = rand_value(rng)
        p, q = gen.rand_perm(rng), gen.rand_perm(rng)
        # group action
        assert act(ident, v) == v
        assert act(p, act(q, v)) == act(compose(p, q), v)
        # support minimality and support-respecting action
        s = support(v)
        b = fresh(s | set(gen.POOL))
        for a in s:
            assert act(transposition(a, b), v) != v
        outside = [a for a in gen.POOL if a not in s]
        shuffled = rng.sample(outside, len(outside))
        assert act(Permutation(dict(zip(outside, shuffled))), v) == v
        # concretion round trip
        A = abstract(gen.rand_atom(rng), v)
        c = gen.rand_atom(rng)
        if c in support(A):
            with pytest.raises(NotFresh):
                concrete(A, c)
        else:
            assert abs_eq(abstract(c, concrete(A, c)), A)
        # abs_eq: equivalence, equivariance, witness independence
        c2 = fresh(support(A) | {A.binder} | set(gen.POOL))
        B = Abstraction(c2, concrete(A, c2))
        C = abstract(gen.rand_atom(rng), rand_value(rng, 2))
        assert abs_eq(A, A)
        for P, Q in ((A, B), (A, C), (B, C)):
            assert abs_eq(P, Q) == abs_eq(Q, P)
            assert abs_eq(P, Q) == abs_eq(act(p, P), act(p, Q))
            avoid = support(P.body) | support(Q.body) | {P.binder, Q.binder}
            w1, w2 = fresh_many(avoid, 2)
            w3 = Atom(max(a.id for a in avoid | {w2}) + 17)
            assert abs_eq(P, Q, witness=w1) == abs_eq(P, Q, witness=w2) == abs_eq(P, Q, witness=w3)
        assert abs_eq(A, B)
        if abs_eq(A, C):
            assert abs_eq(B, C)
    clock.note(f"{n} cases")
    clock.finish()


@pytest.mark.acceptance("2 truncation")
def test_criterion_2_truncation(clock):
    # worked values
    e = TermEnv.of("T", T=app(X, lam(y, app(Y, Ref("T")))))
    assert truncate(from_equations(e, L001), 2) == app(X, lam(y, app(Y, HOLE)))
    assert trunc_env(e, 2, L001) == app(X, lam(y, app(Y, HOLE)))
    assert truncate(embed(lam(x, app(X, X)), L111), 1) == Cons(LAMBDA, (Arg((x,), HOLE),))
    # laws on random regular and finite terms
    rng = random.Random(2)
    n = 2_000
    for i in range(n):
        sig = rng.choice([L001, L111, lambda_signature(0, 1, 0), gen.BLOCK_SIG])
        if i % 2:
            t = from_equations(gen.rand_env(rng, sig, rng.randint(1, 3)), sig)
        else:
            t = embed(gen.rand_finite(rng, sig, rng.randint(1, 12)), sig)
        p = gen.rand_perm(rng)
        assert truncate(t, 0) is HOLE
        prev = HOLE
        for k in range(1, 7):
            cur = truncate(t, k)
            assert truncate(cur, k - 1, sig) == prev
            assert truncate(act_term(p, t), k) == act(p, cur)
            prev = cur
    clock.note(f"{n} terms x depths 0..6")
    clock.finish()


@pytest.mark.acceptance("3 metrics")
def test_criterion_3_metrics(clock):
    rng = random.Random(3)
    p = 12
    n = 1_000
    spread = set()
    for _ in range(n):
        sig = rng.choice([L001, gen.BLOCK_SIG])
        base = gen.rand_env(rng, sig, rng.randint(1, 3), rng.randint(2, 5))
        envs = [base, gen.mutate_env(rng, base, sig)]
        envs.append(gen.mutate_env(rng, rng.choice(envs), sig))
        rng.shuffle(envs)
        t, u, v = (from_equations(e, sig) for e in envs)
        for metric in (an_distance, alpha_distance):
            tu, ut = metric(t, u, p), metric(u, t, p)
            uv, tv = metric(u, v, p), metric(t, v, p)
            assert tu == ut
            # exponents: d(t,v) <= max(d(t,u), d(u,v))
            assert tv.exponent >= min(tu.exponent, uv.exponent)
            spread.add(tu.exponent)
        for a, b in ((t, u), (u, v), (t, v)):
            assert alpha_distance(a, b, p).exponent >= an_distance(a, b, p).exponent
    assert len(spread) >= 5, spread
    # finite terms: embedding preserves truncations, and they stabilize
    for _ in range(n):
        sig = rng.choice(gen.LAMBDA_SIGS + [gen.BLOCK_SIG])
        s, r = gen.related_pair(rng, sig, rng.randint(1, 12))
        es = embed(s, sig)
        for k in range(8):
            assert truncate(es, k) == truncate(s, k, sig)
        k = stabilization_depth(s, sig)
        assert not has_hole(truncate(es, k)) and truncate(es, k) == s
        assert truncate(es, k + 5) == s
        assert an_distance(es, embed(r, sig), p) == an_distance(s, r, p, sig)
    clock.note(f"{n} triples at precision {p}, {n} finite terms")
    clock.finish()


@pytest.mark.acceptance("4 alpha-equivalence")
def test_criterion_4_alpha(clock):
    rng = random.Random(4)
    n = 10_000
    agree_true = 0
    for _ in range(n):
        sig = rng.choice(gen.LAMBDA_SIGS)
        t, u = gen.related_pair(rng, sig, rng.randint(1, 14))
        rules, canon = alpha_eq_finite(t, u), alpha_eq_nameless(t, u)
        assert rules == canon == (to_db(t) == to_db(u))
        agree_true += rules
    assert n * 0.2 < agree_true < n * 0.8
    pairs = [(M_ENV, N_ENV, L001, True), (T_ENV, U_ENV, L001, False)]
    while len(pairs) < 200:
        sig = rng.choice([L001, L111, gen.BLOCK_SIG])
        a, b = gen.regular_pair(rng, sig)
        pairs.append((a, b, sig, None))
    equal = 0
    for a, b, sig, expected in pairs:
        t, u = from_equations(a, sig), from_equations(b, sig)
        depths = [alpha_eq_upto(t, u, k) for k in range(51)]
        assert depths == sorted(depths, reverse=True), "alpha_eq_upto is not antitone"
        reg = alpha_eq_regular(a, b, sig)
        assert reg == depths[-1]
        if expected is not None:
            assert reg == expected
        equal += reg
    assert 20 < equal < 180
    clock.note(f"{n} finite pairs, {len(pairs)} regular pairs at depths 0..50")
    clock.finish()


@pytest.mark.acceptance("5 substitution")
def test_criterion_5_substitution(clock):
    rng = random.Random(5)
    # (a) nameless oracle
    n = 10_000
    for _ in range(n):
        sig = rng.choice(gen.LAMBDA_SIGS)
        t = gen.rand_finite(rng, sig, rng.randint(1, 12))
        u = gen.rand_finite(rng, sig, rng.randint(1, 6))
        v = gen.rand_atom(rng)
        k = stabilization_depth(t, sig) + stabilization_depth(u, sig)
        r = truncate(subst(embed(t, sig), v, embed(u, sig)), k)
        assert not has_hole(r)
        assert to_db(r) == oracle_subst(t, v, u)
    # (b) the four λ^001 clauses at depth 15
    cases = 200
    for _ in range(cases):
        m_env, n_env = gen.rand_env(rng, L001), gen.rand_env(rng, L001)
        M0, M1 = (from_equations(gen.rand_env(rng, L001), L001) for _ in range(2))
        Mt, Nt = from_equations(m_env, L001), from_equations(n_env, L001)
        v = gen.rand_atom(rng)
        assert alpha_eq_upto(subst(embed(Var(v), L001), v, Nt), Nt, 15)
        w = rng.choice([a for a in gen.POOL if a != v])
        assert alpha_eq_upto(subst(embed(Var(w), L001), v, Nt), embed(Var(w), L001), 15)
        b = rng.choice([a for a in gen.POOL if a != v and a not in env_atoms(n_env)] or [Atom(99, "b")])
        lhs = subst(gen.node(L001, LAMBDA, ((b,), Mt)), v, Nt)
        rhs = gen.node(L001, LAMBDA, ((b,), subst(Mt, v, Nt)))
        assert alpha_eq_upto(lhs, rhs, 15)
        lhs = subst(gen.node(L001, APP, ((), M0), ((), M1)), v, Nt)
        rhs = gen.node(L001, APP, ((), subst(M0, v, Nt)), ((), subst(M1, v, Nt)))
        assert alpha_eq_upto(lhs, rhs, 15)
    # (c) the infinite stream
    t = from_equations(TermEnv.of("T", T=app(Y, Ref("T"))), L001)
    u = from_equations(TermEnv.of("U", U=app(lam(z, Z), Ref("U"))), L001)
    r = subst(t, y, embed(lam(z, Z), L001))
    assert all(alpha_eq_upto(r, u, k) for k in range(1, 11))
    # (d) well-definedness, equivariance, vacuous substitution, productivity
    checked = 0
    for _ in range(cases):
        sig = rng.choice([L001, gen.BLOCK_SIG])
        a, a2 = gen.regular_pair(rng, sig)
        c = gen.rand_env(rng, sig, rng.randint(1, 2), 3)
        c2 = TermEnv({k: gen._rename_safe(rng, e, c) for k, e in c.equations.items()}, c.root)
        t, t2 = from_equations(a, sig), from_equations(a2, sig)
        u, u2 = from_equations(c, sig), from_equations(c2, sig)
        v = gen.rand_atom(rng)
        if alpha_eq_upto(t, t2, 10) and alpha_eq_upto(u, u2, 10):
            assert alpha_eq_upto(subst(t, v, u), subst(t2, v, u2), 8)
            checked += 1
        p = gen.rand_perm(rng)
        assert alpha_eq_upto(act_term(p, subst(t, v, u)), subst(act_term(p, t), p(v), act_term(p, u)), 8)
        assert alpha_eq_upto(subst(t, Atom(500, "fresh"), u), t, 10)
        start = time.perf_counter()
        truncate(subst(t, v, u), 25)
        assert time.perf_counter() - start < 5.0
    assert checked >= cases // 4
    clock.note(f"{n} oracle cases, {cases} clause cases, {checked} α-variant pairs")
    clock.finish()


@pytest.mark.acceptance("6 signatures")
def test_criterion_6_signatures(clock):
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                sig = lambda_signature(a, b, c)
                validate(sig)
                assert sigmod.load(f"lambda_{a}{b}{c}") == sig
                w = nontriviality_witnesses(sig)
                assert (w.binder, w.branching) == (LAMBDA, APP)
                assert (w.coinductive is not None) == bool(a or b or c)
                assert bool(w) == bool(a or b or c)
    assert nontriviality_witnesses(L000).describe() == "trivial: no coinductive argument"
    assert not nontriviality_witnesses(sigmod.Signature())
    loop = TermEnv.of("T", T=lam(x, Ref("T")))
    with pytest.raises(Unguarded):
        check_env(loop, L001)
    check_env(loop, L111)
    clock.note("8 signatures")
    clock.finish()


GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"


@pytest.mark.acceptance("7 CLI golden files and round trip")
def test_criterion_7_cli(clock):
    cases = [
        ("trunc_stream.out", ["trunc", "--depth", "2", "rec { T = x T } in T"]),
        ("alpha_streams.out", ["alpha", "--depth", "10", r"rec {M = \x. x M} in M", r"rec {N = \y. y N} in N"]),
        ("subst_stream.out", ["subst", "--depth", "3", "rec {T = y T} in T", "y", r"\z.z"]),
    ]
    for golden, argv in cases:
        out = io.StringIO()
        assert main(argv, out, io.StringIO()) == 0
        assert out.getvalue().encode("utf-8") == (GOLDEN / golden).read_bytes()
    lines = (DATA / "corpus.txt").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 50
    for line in lines:
        name, text = line.split("\t")
        path = DATA / f"{name}.sig"
        sig = sigmod.load(path if path.exists() else name)
        s = Symbols()
        parsed = parse(text, sig, s, holes=True)
        printed = show(parsed.env, sig, s.names())
        assert printed == text
        assert parse(printed, sig, Symbols(), holes=True).env == parse(text, sig, Symbols(), holes=True).env
    clock.note("3 golden files, 50-term corpus")
    clock.finish()
