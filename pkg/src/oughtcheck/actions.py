"""Decision points (single-owner action models) and their composition.

A decision point bundles at least two mutually exclusive-feeling events,
each guarded by a precondition in the obligation-free fragment.  Event
relations default to the identity for every agent (an agent can always tell
which event happened); extra edges are accepted but flagged, since most of
the theory is exercised with identity relations only.

Composition pairs every event of the first point with every event of the
second.  Composed events are flattened traces, their preconditions are
after-run formulas over the first point, and relations are pairwise.  With
product worlds keyed by (base, trace), updating by a composition yields the
very same model as updating twice, which the tests assert as equality.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .errors import ValidationError, OughtInPrecondition, UnknownEvent
from .formula import Diamond, Formula, Trace, contains_ought


class DecisionPoint:
    """A named decision point owned by one agent.

    events: ordered tuple of event names (at least two).
    pre: event name -> precondition Formula (obligation-free).
    relations: agent -> set of (event, event) pairs; the identity is always
    included.  `extra_edges` records whether anything beyond it was given.
    """

    def __init__(self, dp_id, owner, events, pre, relations=None, agents=None, env=None):
        self.id = str(dp_id)
        self.owner = str(owner)
        # resolution environment for decision points mentioned inside the
        # preconditions (earlier declarations only); includes this point
        self.env = dict(env or {})
        self.env[self.id] = self
        self.events: Tuple[str, ...] = tuple(str(e) for e in events)
        if len(self.events) < 2:
            raise ValidationError(
                f"decision point {self.id!r} needs at least two events"
            )
        if len(set(self.events)) != len(self.events):
            raise ValidationError(f"duplicate event names in {self.id!r}")
        self.pre: Dict[str, Formula] = {}
        for ev in self.events:
            if ev not in pre:
                raise ValidationError(f"event {ev!r} of {self.id!r} has no precondition")
            f = pre[ev]
            if contains_ought(f):
                raise OughtInPrecondition(
                    f"precondition of {self.id}.{ev} contains an obligation"
                )
            self.pre[ev] = f
        self.agents = tuple(agents) if agents is not None else (self.owner,)
        if self.owner not in self.agents:
            self.agents = self.agents + (self.owner,)
        identity = frozenset((e, e) for e in self.events)
        self.relations: Dict[str, frozenset] = {}
        self.extra_edges = False
        for a in self.agents:
            given = frozenset(tuple(p) for p in (relations or {}).get(a, ()))
            for e1, e2 in given:
                if e1 not in self.events or e2 not in self.events:
                    raise UnknownEvent(
                        f"relation of {self.id!r} mentions unknown event {e1!r}/{e2!r}"
                    )
            if given - identity:
                self.extra_edges = True
            self.relations[a] = identity | given

    # Every action-like object exposes: event_keys, pre_formula, q_related, owner.

    @property
    def event_keys(self) -> Tuple[Trace, ...]:
        return tuple(((self.id, ev),) for ev in self.events)

    def pre_formula(self, key: Trace) -> Formula:
        ((dp, ev),) = key
        if dp != self.id or ev not in self.pre:
            raise UnknownEvent(f"{dp}.{ev} is not an event of {self.id!r}")
        return self.pre[ev]

    def q_related(self, agent: str, k1: Trace, k2: Trace) -> bool:
        rel = self.relations.get(agent)
        if rel is None:
            # agents the point does not mention can only tell an event from itself
            return k1 == k2
        return (k1[0][1], k2[0][1]) in rel

    def __repr__(self):
        return f"DecisionPoint({self.id!r}, owner={self.owner!r}, events={self.events})"


class ComposedAction:
    """The composition of two action-like objects (left applied first)."""

    def __init__(self, first, second):
        last_dp = first.event_keys[0][-1][0]
        first_dp = second.event_keys[0][0][0]
        if last_dp == first_dp:
            raise ValidationError(
                f"cannot compose {last_dp!r} with itself back to back"
            )
        self.first = first
        self.second = second
        self.id = f"{first.id};{second.id}"
        self.owner = second.owner
        self.env = {**getattr(first, "env", {}), **getattr(second, "env", {})}
        self.agents = tuple(dict.fromkeys(tuple(first.agents) + tuple(second.agents)))
        self.event_keys: Tuple[Trace, ...] = tuple(
            ka + kb for ka in first.event_keys for kb in second.event_keys
        )
        self.extra_edges = first.extra_edges or second.extra_edges

    def pre_formula(self, key: Trace) -> Formula:
        split = len(key) - len(self.second.event_keys[0])
        ka, kb = key[:split], key[split:]
        return Diamond(ka, self.second.pre_formula(kb))

    def q_related(self, agent: str, k1: Trace, k2: Trace) -> bool:
        split = len(k1) - len(self.second.event_keys[0])
        return self.first.q_related(agent, k1[:split], k2[:split]) and self.second.q_related(
            agent, k1[split:], k2[split:]
        )

    def __repr__(self):
        return f"ComposedAction({self.id!r})"


def compose(first, second) -> ComposedAction:
    return ComposedAction(first, second)


def compose_all(actions) -> object:
    actions = list(actions)
    if not actions:
        raise ValidationError("nothing to compose")
    out = actions[0]
    for nxt in actions[1:]:
        out = ComposedAction(out, nxt)
    return out


def validate_decision_point(point: DecisionPoint) -> list:
    """Report of advisory findings for a decision point."""
    notes = []
    if point.extra_edges:
        notes.append(
            f"decision point {point.id!r} declares event relations beyond the "
            f"identity; downstream guarantees are only exercised without them"
        )
    return notes


def env_of(actions) -> Dict[str, DecisionPoint]:
    """Map decision-point ids to points, rejecting duplicates."""
    env: Dict[str, DecisionPoint] = {}
    for p in actions:
        if p.id in env:
            raise ValidationError(f"duplicate decision point id {p.id!r}")
        env[p.id] = p
    return env
