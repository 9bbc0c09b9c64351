"""JSON documents for models and decision points, plus DOT export."""

import json

import pytest

from oughtcheck.docio import (
    actions_from_doc,
    actions_to_doc,
    dump_json,
    load_actions_file,
    load_model_file,
    model_from_doc,
    model_to_doc,
    to_dot,
)
from oughtcheck.errors import (
    CyclicPrecondition,
    UnknownAgent,
    UnknownEvent,
    UnknownWorld,
    ValidationError,
)
from oughtcheck.kripke import GradedKripkeModel
from oughtcheck.scenarios import allergy_model


def _same_model(a: GradedKripkeModel, b: GradedKripkeModel) -> None:
    assert [str(w) for w in b.worlds] == [str(w) for w in a.worlds]
    assert b.agents == a.agents
    assert set(b.atoms) == set(a.atoms)
    assert b.frame == a.frame
    for w, u in zip(a.worlds, b.worlds):
        assert b.atoms_at(u) == a.atoms_at(w)
        assert b.value_of(u) == a.value_of(w)
    for ag in a.agents:
        assert set(b.pairs(ag)) == set(a.pairs(ag))


def test_model_round_trip(line_model):
    doc = model_to_doc(line_model)
    back, point = model_from_doc(doc)
    assert point is None
    _same_model(line_model, back)


def test_model_round_trip_with_extras():
    m = GradedKripkeModel(
        agents=["a"],
        atoms=["p"],
        worlds=["u", "v"],
        relations={"a": {"u": {"u", "v"}, "v": {"v"}}},
        valuation={"u": {"p"}, "v": set()},
        desirability={"u": 1, "v": 2},
        frame="K",
        root="u",
        eval_only=frozenset({"u"}),
        name="tiny",
    )
    doc = model_to_doc(m, point="v")
    back, point = model_from_doc(doc)
    assert point == "v"
    assert back.name == "tiny"
    assert back.root == "u"
    assert back.eval_only == frozenset({"u"})
    _same_model(m, back)


def test_model_doc_validation():
    with pytest.raises(ValidationError, match="lacks"):
        model_from_doc({"agents": ["a"], "atoms": [], "worlds": []})
    base = {
        "agents": ["a"],
        "atoms": [],
        "worlds": [{"id": "u"}],
        "relations": {"a": [["u", "u"]]},
    }
    bad_agent = dict(base, relations={"b": []})
    with pytest.raises(UnknownAgent):
        model_from_doc(bad_agent)
    bad_pair = dict(base, relations={"a": [["u", "zz"]]})
    with pytest.raises(UnknownWorld):
        model_from_doc(bad_pair)
    bad_point = dict(base, point="zz")
    with pytest.raises(UnknownWorld):
        model_from_doc(bad_point)


def test_strict_frame_loading():
    doc = {
        "agents": ["a"],
        "atoms": [],
        "frame": "S5",
        "worlds": [{"id": "u"}, {"id": "v"}],
        "relations": {"a": [["u", "u"]]},  # v has no loop: not reflexive
    }
    with pytest.raises(ValidationError, match="frame"):
        model_from_doc(doc)
    m, _ = model_from_doc(doc, strict_frame=False)
    assert m.frame == "S5"


def test_actions_round_trip():
    _, points = allergy_model()
    doc = actions_to_doc(points)
    back, notes = actions_from_doc(doc)
    assert notes == []
    assert [p.id for p in back] == [p.id for p in points]
    for orig, loaded in zip(points, back):
        assert loaded.owner == orig.owner
        assert loaded.events == orig.events
        assert loaded.agents == orig.agents
        assert loaded.pre == orig.pre
        for ag in orig.agents:
            assert set(loaded.relations[ag]) == set(orig.relations[ag])


def test_single_entry_and_list_docs():
    entry = {
        "id": "U",
        "owner": "i",
        "events": [{"name": "x", "pre": "true"}, {"name": "y", "pre": "p"}],
    }
    points, _ = actions_from_doc(entry)
    assert [p.id for p in points] == ["U"]
    points, _ = actions_from_doc([entry])
    assert [p.id for p in points] == ["U"]


def test_earlier_point_may_appear_in_later_pre():
    doc = {
        "actions": [
            {
                "id": "U",
                "owner": "i",
                "events": [{"name": "x", "pre": "true"}, {"name": "y", "pre": "true"}],
            },
            {
                "id": "V",
                "owner": "i",
                "events": [
                    {"name": "go", "pre": "<U.x> true"},
                    {"name": "stay", "pre": "true"},
                ],
            },
        ]
    }
    points, _ = actions_from_doc(doc)
    assert [p.id for p in points] == ["U", "V"]


def test_pre_reference_errors():
    u = {
        "id": "U",
        "owner": "i",
        "events": [{"name": "x", "pre": "true"}, {"name": "y", "pre": "true"}],
    }

    def v(pre):
        return {
            "id": "V",
            "owner": "i",
            "events": [{"name": "go", "pre": pre}, {"name": "stay", "pre": "true"}],
        }

    with pytest.raises(CyclicPrecondition):  # self-reference
        actions_from_doc({"actions": [v("<V.go> true")]})
    with pytest.raises(CyclicPrecondition):  # point declared later in the doc
        actions_from_doc({"actions": [v("<U.x> true"), u]})
    with pytest.raises(UnknownEvent):  # undeclared point
        actions_from_doc({"actions": [u, v("<W.z> true")]})
    with pytest.raises(UnknownEvent):  # undeclared event of a declared point
        actions_from_doc({"actions": [u, v("<U.zz> true")]})
    with pytest.raises(ValidationError, match="own"):  # wrong owner in e-atom
        actions_from_doc({"actions": [u, v("e{j; U.x}")]})
    with pytest.raises(ValidationError, match="duplicate"):
        actions_from_doc({"actions": [u, u]})


def test_dump_json_round():
    _, points = allergy_model()
    text = dump_json(actions_to_doc(points))
    assert json.loads(text) == actions_to_doc(points)


def test_file_loaders(tmp_path, line_model):
    mp = tmp_path / "model.json"
    mp.write_text(dump_json(model_to_doc(line_model, point="w0")))
    m, point = load_model_file(str(mp))
    assert point == "w0"
    _same_model(line_model, m)

    ap = tmp_path / "actions.json"
    _, points = allergy_model()
    ap.write_text(dump_json(actions_to_doc(points)))
    back, notes = load_actions_file(str(ap))
    assert [p.id for p in back] == ["U", "U2"]


def test_dot_output():
    m = GradedKripkeModel(
        agents=["a", "b"],
        atoms=["p"],
        worlds=["u", "v"],
        relations={
            "a": {"u": {"u", "v"}, "v": {"v"}},
            "b": {"u": {"u"}, "v": {"v"}},
        },
        valuation={"u": {"p"}, "v": set()},
        desirability={"u": 1, "v": 2},
        frame="K",
        root="u",
        eval_only=frozenset({"v"}),
    )
    dot = to_dot(m)
    assert dot == to_dot(m)  # deterministic
    assert dot.startswith("digraph model {")
    assert dot.endswith("}\n")
    assert '"u" [label="u\\np\\nf=1", peripheries=2];' in dot
    assert '"v" [label="v\\n-\\nf=2", style=dashed];' in dot
    assert '"u" -> "u" [label="a,b"];' in dot
    assert '"u" -> "v" [label="a"];' in dot
    # edge order follows world order
    assert dot.index('"u" -> "u"') < dot.index('"u" -> "v"') < dot.index('"v" -> "v"')

    bare = to_dot(m, include_loops=False)
    assert '"u" -> "u"' not in bare
    assert '"v" -> "v"' not in bare
    assert '"u" -> "v"' in bare


def test_dot_quotes_awkward_ids():
    m = GradedKripkeModel(
        agents=["a"],
        atoms=[],
        worlds=['w "q"'],
        relations={"a": {'w "q"': {'w "q"'}}},
        valuation={'w "q"': set()},
        desirability={'w "q"': 0},
        frame="K",
    )
    dot = to_dot(m)
    assert '"w \\"q\\""' in dot
