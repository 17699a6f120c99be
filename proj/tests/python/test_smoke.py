"""Smoke tests for the python bindings: build an engine from inline
documents, evaluate, and touch each exported helper once."""

import pytest

import relbac

MODEL = """
type user
type res
label r1
label r2
label r3
perm user r1 res
perm user r2 res
perm res r3 res
"""

GRAPH = """
node v1 : user
node v2 : user
node v3 : res
node v4 : res
edge v1 r1 v3
edge v2 r2 v3
edge v3 r3 v4
"""

POLICY = """
pm r1 -> p1
pm r2 -> p2
pm r3 -> p3
pm r1 . r3 -> p4
pm r2 . r3 -> p5
auth p5 * a1 allow
auth p5 * a2 deny
"""


@pytest.fixture
def engine():
    return relbac.Engine(MODEL, GRAPH, POLICY)


def test_evaluate_and_cache(engine):
    first = engine.evaluate("v2", "v4", "a1")
    assert first.allowed
    assert first.decision == "allow"
    assert first.matched_principals == ["p5"]
    assert not first.cache_hit
    assert first.nodes_visited > 0 and first.edges_considered > 0

    second = engine.evaluate("v2", "v4", "a2")
    assert not second.allowed
    assert second.cache_hit
    assert second.nodes_visited == 0 and second.edges_considered == 0

    stats = engine.cache_stats()
    assert stats["size"] == 1 and stats["hits"] == 1 and stats["misses"] == 1


def test_mutation_invalidates(engine):
    engine.evaluate("v2", "v4", "a1")
    assert engine.cache_stats()["size"] == 1
    engine.add_edge("v1", "r2", "v3")
    assert engine.cache_stats()["size"] == 0


def test_audit_log_and_dump(engine):
    engine.evaluate("v2", "v4", "a1")
    assert engine.audit_log() == ["1 v2 v4 a1 allow"]
    assert "decision v2 v4 allow a1" in engine.dump_graph()
    assert "decision" not in engine.dump_graph(include_overlay=False)


def test_unknown_node_raises(engine):
    with pytest.raises(relbac.UnknownNodeError):
        engine.evaluate("ghost", "v4", "a1")
    with pytest.raises(relbac.Error):  # subclass of the package base error
        engine.evaluate("ghost", "v4", "a1")


def test_parse_and_simplify():
    assert relbac.parse_path("r1.r2+") == "r1 . r2+"
    assert relbac.simplify_path("~( r1 . r2 )") == "~r2 . ~r1"
    with pytest.raises(relbac.ParseError):
        relbac.parse_path("r1 .")


def test_policy_generation():
    sod = relbac.generate_sod(
        "pm r -> p\nauth p o * allow\n",
        mode="general",
        object="o",
        actions=["a1", "a2"],
        principals=["s1", "s2"],
    )
    assert "pm allow!a1 -> s1" in sod
    assert "auth s1 o a2 deny" in sod

    cw = relbac.generate_chinese_wall(
        "pm w . s . ~d -> p\nauth p * read allow\n",
        "cw.enabled = true\ncw.member_label = m\ncw.paths = d\n",
        "p_cw",
    )
    assert "pm @blocked . ~d -> p_cw" in cw
    assert "auth p_cw * * deny" in cw
