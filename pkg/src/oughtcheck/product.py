"""Product update: restricting a model by a decision point's preconditions.

The updated model's worlds are (base, trace) keys: every world of the input
paired with every event whose precondition it satisfies.  Edges require both
an edge in the input and event relatedness; valuation and desirability are
inherited — acting never changes the facts' value, only what is reachable.

Worlds are ordered base-first, then by event order, which keeps every
report deterministic.  Retained evaluation roots propagate: their images
survive as evaluation-only worlds with outgoing edges only.
"""

from __future__ import annotations

from .errors import EmptyProduct, TraceLeak
from .kripke import GradedKripkeModel, extend_world, trace_of, world_id


def product(model: GradedKripkeModel, action) -> GradedKripkeModel:
    """The update of `model` by `action` (memoized on the model)."""
    cache_key = ("product", action)
    hit = model._cache.get(cache_key)
    if hit is not None:
        return hit

    from .semantics import evaluate_plain  # late import: semantics uses products

    env = getattr(action, "env", None) or {}
    keys = action.event_keys
    survives = {}
    for w in model.worlds:
        for key in keys:
            if evaluate_plain(model, w, action.pre_formula(key), env):
                survives.setdefault(w, []).append(key)

    worlds = []
    eval_only = set()
    for w in model.worlds:
        for key in survives.get(w, ()):
            pw = extend_world(w, key)
            worlds.append(pw)
            if w in model.eval_only:
                eval_only.add(pw)
    if all(pw in eval_only for pw in worlds):
        raise EmptyProduct(
            f"no world of {model.name or 'the model'} satisfies any precondition "
            f"of {getattr(action, 'id', action)!r}"
        )

    agents = model.agents
    relations = {a: {} for a in agents}
    for w in model.worlds:
        w_keys = survives.get(w, ())
        if not w_keys:
            continue
        for a in agents:
            succ_w = model.successors(a, w)
            for key in w_keys:
                targets = []
                for u in succ_w:
                    for ukey in survives.get(u, ()):
                        if action.q_related(a, key, ukey):
                            targets.append(extend_world(u, ukey))
                relations[a][extend_world(w, key)] = frozenset(targets)

    valuation = {}
    desirability = {}
    for pw in worlds:
        base_len = len(trace_of(pw)) - len(keys[0])
        parent = (pw[0], pw[1][:base_len]) if base_len else pw[0]
        valuation[pw] = model.valuation[parent]
        desirability[pw] = model.desirability[parent]

    out = GradedKripkeModel(
        agents=agents,
        atoms=model.atoms,
        worlds=worlds,
        relations=relations,
        valuation=valuation,
        desirability=desirability,
        frame="K",
        eval_only=frozenset(eval_only),
        name=f"{model.name or 'model'}*{getattr(action, 'id', '?')}",
    )
    _check_traces(model, out, keys[0])
    model._cache[cache_key] = out
    return out


def _check_traces(parent: GradedKripkeModel, child: GradedKripkeModel, sample_key):
    """Internal invariant: every product world extends a parent world's trace
    by exactly one event key of the applied action."""
    step_len = len(sample_key)
    for pw in child.worlds:
        trace = trace_of(pw)
        if len(trace) < step_len:
            raise TraceLeak(f"product world {world_id(pw)} lost its trace")
        parent_key = (pw[0], trace[:-step_len]) if len(trace) > step_len else pw[0]
        if not parent.has_world(parent_key):
            raise TraceLeak(
                f"product world {world_id(pw)} does not extend a parent world"
            )


def apply_sequence(model: GradedKripkeModel, actions) -> GradedKripkeModel:
    """Update by each action in turn."""
    out = model
    for action in actions:
        out = product(out, action)
    return out
