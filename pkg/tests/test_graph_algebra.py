import random

from hypothesis import given, settings
from hypothesis import strategies as st

from semcurate.rdf import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    Triple,
    apply_diff,
    graph_diff,
    skolemize,
)

from randgen import random_graph

BASE = "https://db.example.org"


def _t(s, p, o):
    return Triple(Iri(s), Iri(p), o if not isinstance(o, str) else Iri(o))


def test_diff_identity():
    rng = random.Random(1)
    g = random_graph(rng)
    assert graph_diff(g, g) == (frozenset(), frozenset())


def test_diff_single_addition():
    t1 = _t("http://x/a", "http://x/p", "http://x/b")
    t2 = _t("http://x/a", "http://x/p", Literal("v"))
    added, removed = graph_diff(Graph([t1]), Graph([t1, t2]))
    assert added == {t2}
    assert removed == frozenset()


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_diff_soundness_property(seed):
    rng = random.Random(seed)
    g1 = random_graph(rng, max_triples=50)
    g2 = random_graph(rng, max_triples=50)
    added, removed = graph_diff(g1, g2)
    assert added.isdisjoint(removed)
    assert apply_diff(g1, added, removed) == g2


def test_skolemize_no_blank_nodes_is_identity():
    rng = random.Random(2)
    g = random_graph(rng, allow_blank=False)
    assert skolemize(g, BASE) == g


def test_skolemize_same_label_same_iri():
    b = BlankNode("b")
    g = Graph([
        _t("http://x/a", "http://x/p", b),
        Triple(b, Iri("http://x/q"), Literal("v")),
    ])
    out = skolemize(g, BASE)
    refs = [t.object for t in out.match(Iri("http://x/a"), Iri("http://x/p"))]
    subjects = [t.subject for t in out.match(None, Iri("http://x/q"))]
    assert refs == subjects
    assert refs[0].value.startswith(BASE + "/.well-known/genid/")


def test_skolemize_distinct_labels_distinct_iris():
    g = Graph([
        _t("http://x/a", "http://x/p", BlankNode("b1")),
        _t("http://x/a", "http://x/p", BlankNode("b2")),
    ])
    out = skolemize(g, BASE)
    objs = {t.object for t in out}
    assert len(objs) == 2
    assert all(isinstance(o, Iri) for o in objs)


def test_skolemize_is_idempotent():
    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng)
        once = skolemize(g, BASE)
        assert skolemize(once, BASE) == once
        assert graph_diff(once, once) == (frozenset(), frozenset())
