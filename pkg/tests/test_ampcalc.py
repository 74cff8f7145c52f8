import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from modbgg.ampcalc import (
    ContradictoryFact,
    ScenarioError,
    Session,
    load_scenario,
    minimality,
    rank_q,
    run_scenario,
    run_steps,
    scenario_names,
    soundness_trial,
)


def test_gl3_two_term_complex():
    s = Session(0, 4)
    s.declare("A", 0, 2)
    s.declare("B", 0, 2)
    s.assert_support("A", [0])
    s.assert_support("B", [0])
    s.map_fact("F2", 0, "injective")
    s.filtration("F2", [("A", 1), ("B", 2)])
    s.propagate()
    assert s.support("F2") == {2}


def test_zero_terms_give_zero_total():
    s = Session(0, 3)
    for name in ("X", "Y"):
        s.assert_support(name, [])
    s.filtration("T", [("X", 0), ("Y", 1)])
    s.propagate()
    assert s.support("T") == frozenset()


def test_filtration_of_middle_pieces():
    s = Session(0, 4)
    for name in ("a", "b", "c"):
        s.assert_support(name, [2])
    s.triangle("a", "ab", "b")
    s.triangle("ab", "T", "c")
    s.propagate()
    assert s.support("T") <= {2}


def test_triangle_shift_and_nonzero():
    s = Session(0, 4)
    s.assert_support("A", [])
    s.assert_nonzero("B", 3)
    s.triangle("A", "B", "C")
    s.propagate()
    assert 3 in s.nonzero("C")
    # H^n(X[1]) = H^(n+1)(X)
    t = Session(0, 4)
    t.assert_support("A", [])
    t.assert_support("C", [2])
    t.triangle("A", "B", ("C", 1))
    t.propagate()
    assert t.support("B") == {1}


def test_surjection_and_duality():
    s = Session(0, 3)
    s.assert_nonzero("Y", 1)
    s.surjection(("X", 1), ("Y", 1))
    s.duality("X", "Z", 3)
    s.propagate()
    assert 1 in s.nonzero("X") and 2 in s.nonzero("Z")


def test_contradictions():
    s = Session(0, 2)
    s.assert_nonzero("X", 1)
    with pytest.raises(ContradictoryFact):
        s.assert_support("X", [0])
    t = Session(0, 2)
    t.assert_support("X", [0])
    with pytest.raises(ContradictoryFact):
        t.assert_nonzero("X", 1)
    u = Session(0, 2)
    u.assert_nonzero("Y", 1)
    u.assert_support("X", [])
    u.injection(("Y", 1), ("X", 1))
    assert u.propagate()["contradictions"]


def test_scenario_errors():
    with pytest.raises(ScenarioError):
        load_scenario("no_such_scenario")
    with pytest.raises(ScenarioError):
        Session(0, 2).map_fact("X", 0, "bijective")
    with pytest.raises(ScenarioError):
        run_steps({"steps": [{"op": "teleport"}]})


def test_bundled_scenarios():
    assert scenario_names() == ["gl3_concentration", "gsp4_c1", "gsp4_entailment"]
    gl3 = run_scenario("gl3_concentration")
    assert gl3["verdict"] == "PASS"
    for piece in ("F2", "gr1", "gr0", "dR"):
        assert gl3["report"]["supports"][piece] == [2]
    gsp4 = run_scenario("gsp4_entailment")
    assert gsp4["verdict"] == "PASS"
    assert 3 in gsp4["report"]["nonzero"]["dR"]
    c1 = run_scenario("gsp4_c1")
    assert c1["verdict"] == "CONDITIONAL PASS"
    assert c1["hypotheses"]


def test_injectivity_needed():
    res = run_scenario("gl3_concentration", drop={"inj_theta"})
    assert res["verdict"] == "FAIL"
    assert res["report"]["supports"]["dR"] == [1, 2]


@pytest.mark.parametrize("name", ["gl3_concentration", "gsp4_entailment"])
def test_minimality(name):
    rows = minimality(name)
    assert rows and all(r["breaks_scenario"] for r in rows)


def test_entailment_step_only_fact():
    rows = {r["fact"]: r for r in minimality("gsp4_entailment")}
    assert not rows["inj_theta"]["breaks_conclusion"]
    assert rows["inj_theta"]["first_failure"] == "F3_degree3"


def test_scenario_from_path(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps([
        {"op": "assert_support", "id": "x", "object": "X", "support": [1]},
        {"op": "expect", "id": "e", "object": "X", "vanishes": 0, "final": True},
    ]))
    assert run_scenario(str(path))["verdict"] == "PASS"


def test_rank():
    assert rank_q([[1, 2], [2, 4]]) == 1
    assert rank_q([[1, 0], [0, 1]]) == 2
    assert rank_q([]) == 0


@st.composite
def random_session(draw):
    names = ["A", "B", "C", "D", "E"]
    s = Session(0, 4)
    for n in names:
        s.declare(n)
    allowed = {n: set(range(5)) for n in names}
    claimed = {n: set() for n in names}
    for _ in range(draw(st.integers(1, 6))):
        kind = draw(st.sampled_from(["support", "triangle", "filtration", "nonzero"]))
        x, y, z = draw(st.permutations(names))[:3]
        if kind == "support":
            sup = draw(st.sets(st.integers(0, 4))) | claimed[x]
            s.assert_support(x, sup)
            allowed[x] &= sup
        elif kind == "nonzero" and allowed[x]:
            n = draw(st.sampled_from(sorted(allowed[x])))
            s.assert_nonzero(x, n)
            claimed[x].add(n)
        elif kind == "triangle":
            s.triangle(x, y, z)
        else:
            s.filtration(x, [(y, 0), (z, 1)])
    return s, names


@settings(max_examples=100, deadline=None)
@given(random_session())
def test_monotone_convergence(args):
    s, names = args
    before = {n: s.support(n) for n in names}
    report = s.propagate()
    slots = len(names) * 5
    kills = sum(1 for t in s.trace if "!=" not in t)
    assert kills <= slots
    assert len(s.trace) <= 2 * slots
    assert report["rounds"] <= len(s.trace) + 1
    for n in names:
        assert s.support(n) <= before[n]


def test_soundness_seeded():
    rng = random.Random(0)
    for _ in range(200):
        ok, info = soundness_trial(rng)
        assert ok, info
