import pytest

from oughtcheck.actions import DecisionPoint, env_of
from oughtcheck.docio import actions_to_doc, dump_json, model_to_doc
from oughtcheck.formula import Atom, TRUE
from oughtcheck.kripke import GradedKripkeModel
from oughtcheck.scenarios import allergy_model, miners_model, run_scenario


@pytest.fixture(scope="session")
def miners_report():
    return run_scenario("miners")


@pytest.fixture(scope="session")
def allergy_report():
    return run_scenario("allergy")


def square(agents, worlds):
    """Universal relation for every agent — the simplest S5 shape."""
    return {a: {w: set(worlds) for w in worlds} for a in agents}


@pytest.fixture
def line_model():
    """Two agents on four worlds; agent x sees a 2+2 partition, agent y is
    universal.  Values 0..3, atoms p (left half) and q (alternating)."""
    worlds = ["w0", "w1", "w2", "w3"]
    parts = {"x": [{"w0", "w1"}, {"w2", "w3"}], "y": [set(worlds)]}
    relations = {
        a: {w: next(b for b in blocks if w in b) for w in worlds}
        for a, blocks in parts.items()
    }
    return GradedKripkeModel(
        agents=["x", "y"],
        atoms=["p", "q"],
        worlds=worlds,
        relations=relations,
        valuation={
            "w0": {"p", "q"},
            "w1": {"p"},
            "w2": {"q"},
            "w3": set(),
        },
        desirability={"w0": 0, "w1": 1, "w2": 2, "w3": 3},
        frame="S5",
    )


@pytest.fixture
def pick(line_model):
    """A two-event decision point owned by x: 'hi' needs q, 'lo' is free."""
    return DecisionPoint(
        "P",
        "x",
        ["hi", "lo"],
        {"hi": Atom("q"), "lo": TRUE},
        agents=["x", "y"],
    )


@pytest.fixture
def pick_env(pick):
    return env_of([pick])


@pytest.fixture(scope="session")
def scenario_docs(tmp_path_factory):
    """Miners and allergy scenario documents written out as JSON files."""
    root = tmp_path_factory.mktemp("docs")
    paths = {}
    for name, builder, point in (
        ("miners", miners_model, "A9"),
        ("allergy", allergy_model, "w2"),
    ):
        model, points = builder()
        mp = root / f"{name}-model.json"
        ap = root / f"{name}-actions.json"
        mp.write_text(dump_json(model_to_doc(model, point=point)) + "\n")
        ap.write_text(dump_json(actions_to_doc(points)) + "\n")
        paths[name] = (str(mp), str(ap))
    return paths
