"""Mixed binding signatures: constructors whose arguments carry a binder
count and an inductive/coinductive mode."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple


class SignatureError(ValueError):
    pass


class DuplicateConstructor(SignatureError):
    pass


class EmptyName(SignatureError):
    pass


class Mode(enum.Enum):
    IND = "ind"
    COIND = "coind"

    @property
    def guard(self) -> int:
        """Depth consumed when passing through an argument of this mode."""
        return 1 if self is Mode.COIND else 0


IND, COIND = Mode.IND, Mode.COIND


@dataclass(frozen=True)
class ArgSpec:
    binders: int
    mode: Mode

    def __post_init__(self):
        if self.binders < 0:
            raise SignatureError(f"negative binder count {self.binders}")


@dataclass(frozen=True)
class Constructor:
    name: str
    args: tuple[ArgSpec, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Signature:
    constructors: tuple[Constructor, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.name: c for c in self.constructors})

    def __getitem__(self, op: str) -> Constructor:
        return self._index[op]  # type: ignore[attr-defined]

    def __contains__(self, op: object) -> bool:
        return op in self._index  # type: ignore[attr-defined]

    def __iter__(self):
        return iter(self.constructors)

    @property
    def max_binders(self) -> int:
        return max((a.binders for c in self.constructors for a in c.args), default=0)


def mbs(name: str = "", **ops: Iterable[tuple[int, Mode | str | int]]) -> Signature:
    """Build and validate a signature from ``op=[(binders, mode), ...]`` keywords.

    Modes may be given as :class:`Mode`, ``"ind"``/``"coind"``, or the bits 0/1.
    """
    cons = tuple(
        Constructor(op, tuple(ArgSpec(n, _mode(b)) for n, b in args)) for op, args in ops.items()
    )
    sig = Signature(cons, name)
    validate(sig)
    return sig


def _mode(b: Mode | str | int | bool) -> Mode:
    if isinstance(b, Mode):
        return b
    if isinstance(b, str):
        return Mode(b)
    return COIND if b else IND


def validate(sig: Signature) -> None:
    seen: set[str] = set()
    for c in sig.constructors:
        if not c.name:
            raise EmptyName("constructor with empty name")
        if c.name in seen:
            raise DuplicateConstructor(f"constructor {c.name!r} declared twice")
        seen.add(c.name)


LAMBDA, APP = "λ", "@"


def lambda_signature(a: bool | int, b: bool | int, c: bool | int) -> Signature:
    """The λ-calculus signature with modes ``a`` (under λ), ``b``, ``c`` (left/right of @)."""
    bits = "".join(str(int(bool(v))) for v in (a, b, c))
    return Signature(
        (
            Constructor(LAMBDA, (ArgSpec(1, _mode(a)),)),
            Constructor(APP, (ArgSpec(0, _mode(b)), ArgSpec(0, _mode(c)))),
        ),
        f"lambda_{bits}",
    )


def lambda_modes(sig: Signature) -> tuple[int, int, int] | None:
    """The ``abc`` bits if ``sig`` is structurally one of the eight λ-signatures."""
    if len(sig.constructors) != 2 or LAMBDA not in sig or APP not in sig:
        return None
    lam, app = sig[LAMBDA], sig[APP]
    if [a.binders for a in lam.args] != [1] or [a.binders for a in app.args] != [0, 0]:
        return None
    return lam.args[0].mode.guard, app.args[0].mode.guard, app.args[1].mode.guard


RTREE = Signature(
    (Constructor("node", (ArgSpec(0, IND), ArgSpec(0, COIND))), Constructor("leaf", ())),
    "rtree",
)


class Nontriviality(NamedTuple):
    binder: str | None
    branching: str | None
    coinductive: str | None

    def __bool__(self) -> bool:
        return None not in self

    def describe(self) -> str:
        if self:
            return f"non-trivial (ℓ={self.binder}, 𝔫={self.branching}, 𝔡={self.coinductive})"
        missing = []
        if self.binder is None:
            missing.append("no binding argument")
        if self.branching is None:
            missing.append("no constructor with two arguments")
        if self.coinductive is None:
            missing.append("no coinductive argument")
        return "trivial: " + "; ".join(missing)


def nontriviality_witnesses(sig: Signature) -> Nontriviality:
    """First constructor (in declaration order) meeting each non-triviality clause."""

    def first(pred):
        return next((c.name for c in sig.constructors if pred(c)), None)

    return Nontriviality(
        first(lambda c: any(a.binders >= 1 for a in c.args)),
        first(lambda c: c.arity >= 2),
        first(lambda c: any(a.mode is COIND for a in c.args)),
    )


def is_nontrivial(sig: Signature) -> bool:
    return bool(nontriviality_witnesses(sig))


# ---------------------------------------------------------------------------
# file format


def to_json(sig: Signature) -> dict:
    return {
        "name": sig.name,
        "constructors": [
            {"name": c.name, "args": [{"binders": a.binders, "mode": a.mode.value} for a in c.args]}
            for c in sig.constructors
        ],
    }


def from_json(data: dict) -> Signature:
    try:
        cons = tuple(
            Constructor(
                str(c["name"]),
                tuple(ArgSpec(int(a["binders"]), Mode(a["mode"])) for a in c.get("args", [])),
            )
            for c in data["constructors"]
        )
    except (KeyError, TypeError, ValueError) as e:
        raise SignatureError(f"malformed signature: {e}") from e
    sig = Signature(cons, str(data.get("name", "")))
    validate(sig)
    return sig


def dumps(sig: Signature) -> str:
    return json.dumps(to_json(sig), ensure_ascii=False, indent=2) + "\n"


def loads(text: str) -> Signature:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SignatureError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    return from_json(data)


def load(path: str | Path) -> Signature:
    """Load a signature file; bare names such as ``lambda_001`` resolve to shipped files."""
    p = Path(path)
    if not p.exists():
        stem = p.name if p.suffix == ".sig" else p.name + ".sig"
        shipped = resources.files("nomix") / "data" / stem
        if shipped.is_file():
            return loads(shipped.read_text(encoding="utf-8"))
        raise FileNotFoundError(path)
    return loads(p.read_text(encoding="utf-8"))
