"""Formula syntax: AST nodes, derived forms, canonical printing, complexity.

The core language is

    true | false | atom | e{agent; trace}        (expectation atom)
    | !phi | phi & phi | K{agent} phi
    | <trace> phi                                 (after-some-run diamond)
    | O{agent}(trace | phi)                       (obligation)

Traces are tuples of (decision_point_id, event_name) pairs.  Disjunction,
implication, the box and the epistemic possibility operator are derived
forms; their constructors return core nodes, so printing always yields the
core syntax and parse(print(f)) is the identity on ASTs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import ValidationError

Step = Tuple[str, str]
Trace = Tuple[Step, ...]


def make_trace(steps) -> Trace:
    """Normalize and validate a trace: one choice per decision point, in order.

    Consecutive steps must come from different decision points; a repeated
    decision point is only legal when the occurrences are not adjacent
    (and then each occurrence is resolved independently).
    """
    trace = tuple((str(d), str(e)) for d, e in steps)
    if not trace:
        raise ValidationError("a trace needs at least one step")
    for (d1, _), (d2, _) in zip(trace, trace[1:]):
        if d1 == d2:
            raise ValidationError(
                f"trace repeats decision point {d1!r} in consecutive steps"
            )
    return trace


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Truth(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class Falsity(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    __slots__ = ("name",)
    name: str


@dataclass(frozen=True)
class ExpAtom(Formula):
    """e{agent; trace}: running `trace` is expectation-best for `agent`."""

    __slots__ = ("agent", "steps")
    agent: str
    steps: Trace

    def __post_init__(self):
        object.__setattr__(self, "steps", make_trace(self.steps))


@dataclass(frozen=True)
class Not(Formula):
    __slots__ = ("sub",)
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Know(Formula):
    __slots__ = ("agent", "sub")
    agent: str
    sub: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    """<trace> phi: the trace survives here and phi holds afterwards."""

    __slots__ = ("steps", "sub")
    steps: Trace
    sub: Formula

    def __post_init__(self):
        object.__setattr__(self, "steps", make_trace(self.steps))


@dataclass(frozen=True)
class Ought(Formula):
    """O{agent}(trace | phi): running `trace` is obliged given goal phi."""

    __slots__ = ("agent", "steps", "body")
    agent: str
    steps: Trace
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "steps", make_trace(self.steps))


# --- derived forms -----------------------------------------------------------

TRUE = Truth()
FALSE = Falsity()


def Or(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def Implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def Iff(left: Formula, right: Formula) -> Formula:
    return And(Implies(left, right), Implies(right, left))


def Box(steps, sub: Formula) -> Formula:
    return Not(Diamond(steps, Not(sub)))


def MightKnow(agent: str, sub: Formula) -> Formula:
    return Not(Know(agent, Not(sub)))


def big_and(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# --- printing ----------------------------------------------------------------

def trace_text(steps: Trace) -> str:
    return ";".join(f"{d}.{e}" for d, e in steps)


def to_text(f: Formula) -> str:
    """Canonical text: binary connectives fully parenthesized, prefixes bare."""
    if isinstance(f, Truth):
        return "true"
    if isinstance(f, Falsity):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, ExpAtom):
        return "e{" + f.agent + "; " + trace_text(f.steps) + "}"
    if isinstance(f, Not):
        return "!" + to_text(f.sub)
    if isinstance(f, And):
        return "(" + to_text(f.left) + " & " + to_text(f.right) + ")"
    if isinstance(f, Know):
        return "K{" + f.agent + "} " + to_text(f.sub)
    if isinstance(f, Diamond):
        return "<" + trace_text(f.steps) + "> " + to_text(f.sub)
    if isinstance(f, Ought):
        return "O{" + f.agent + "}(" + trace_text(f.steps) + " | " + to_text(f.body) + ")"
    raise TypeError(f"not a formula: {f!r}")


# --- complexity --------------------------------------------------------------

def trace_pre_complexity(steps: Trace, env) -> int:
    """Complexity of the (composed) precondition of a trace's final event.

    For a one-step trace this is the declared precondition's complexity; a
    longer trace folds left: c(pre(t ; s)) = (4 + c(pre(t))) * c(pre(s)).
    """
    acc = None
    for dp_id, ev in steps:
        point = env[dp_id]
        single = complexity(point.pre[ev], env)
        acc = single if acc is None else (4 + acc) * single
    return acc


def complexity(f: Formula, env) -> int:
    """Size measure used to certify that obligation rewrites shrink formulas."""
    if isinstance(f, (Truth, Falsity, Atom, ExpAtom)):
        return 1
    if isinstance(f, Not):
        return 1 + complexity(f.sub, env)
    if isinstance(f, And):
        return 1 + max(complexity(f.left, env), complexity(f.right, env))
    if isinstance(f, Know):
        return 1 + complexity(f.sub, env)
    if isinstance(f, Diamond):
        return (4 + trace_pre_complexity(f.steps, env)) * complexity(f.sub, env)
    if isinstance(f, Ought):
        return (5 + trace_pre_complexity(f.steps, env)) * complexity(f.body, env)
    raise TypeError(f"not a formula: {f!r}")


def contains_ought(f: Formula) -> bool:
    if isinstance(f, Ought):
        return True
    if isinstance(f, Not):
        return contains_ought(f.sub)
    if isinstance(f, And):
        return contains_ought(f.left) or contains_ought(f.right)
    if isinstance(f, (Know,)):
        return contains_ought(f.sub)
    if isinstance(f, Diamond):
        return contains_ought(f.sub)
    return False


def contains_diamond(f: Formula) -> bool:
    if isinstance(f, Diamond):
        return True
    if isinstance(f, Not):
        return contains_diamond(f.sub)
    if isinstance(f, And):
        return contains_diamond(f.left) or contains_diamond(f.right)
    if isinstance(f, Know):
        return contains_diamond(f.sub)
    if isinstance(f, Ought):
        return True  # its trace is an update
    return False
