"""Random shapes-model and data-graph generator for oracle equivalence runs."""

from __future__ import annotations

import random

from semcurate.rdf import (
    RDF_TYPE,
    XSD_INTEGER,
    XSD_STRING,
    Graph,
    Iri,
    Literal,
    Term,
    Triple,
)
from semcurate.shacl import NodeKind, NodeShape, PropertyShape, ShapesModel

CLASSES = [f"http://example.org/class/C{i}" for i in range(4)]
PREDICATES = [f"http://example.org/prop/p{i}" for i in range(6)]
NODES = [f"http://example.org/node/n{i}" for i in range(10)]
PATTERNS = ["^a", "ia$", "li", "^[0-9]+$", "sch"]
WORDS = ["alpha", "scholia", "117", "beta", "elegia"]


def _random_value_term(rng: random.Random) -> Term:
    roll = rng.random()
    if roll < 0.4:
        return Literal(rng.choice(WORDS), rng.choice([XSD_STRING, XSD_INTEGER]))
    return Iri(rng.choice(NODES))


def random_property(rng: random.Random, shape_iris: list[str]) -> PropertyShape:
    kwargs: dict = {
        "path": rng.choice(PREDICATES),
        "inverse": rng.random() < 0.15,
    }
    if rng.random() < 0.5:
        kwargs["min_count"] = rng.randint(0, 2)
    if rng.random() < 0.4:
        kwargs["max_count"] = rng.randint(max(kwargs.get("min_count", 0), 1), 3)

    roll = rng.random()
    if roll < 0.25:
        kwargs["datatype"] = rng.choice([XSD_STRING, XSD_INTEGER])
    elif roll < 0.45:
        kwargs["class_constraint"] = rng.choice(CLASSES)

    if rng.random() < 0.3:
        kwargs["node_kind"] = rng.choice(list(NodeKind))
    if rng.random() < 0.25:
        count = rng.randint(1, 3)
        kwargs["in_list"] = tuple(_random_value_term(rng) for _ in range(count))
    if rng.random() < 0.25:
        kwargs["pattern"] = rng.choice(PATTERNS)
    if rng.random() < 0.2:
        kwargs["has_value"] = _random_value_term(rng)
    if shape_iris and rng.random() < 0.3:
        kwargs["node_shape"] = rng.choice(shape_iris)
    return PropertyShape(**kwargs)


def random_shapes(rng: random.Random) -> ShapesModel:
    count = rng.randint(1, 3)
    iris = [f"http://example.org/shape/S{i}" for i in range(count)]
    shapes = []
    for i, iri in enumerate(iris):
        properties = tuple(
            random_property(rng, iris) for _ in range(rng.randint(0, 4))
        )
        target = rng.choice(CLASSES) if rng.random() < 0.9 else None
        shapes.append(NodeShape(iri=iri, target_class=target, properties=properties))
    # Distinct target classes: the loader enforces this, so the generator does too.
    seen: set[str] = set()
    unique = []
    for s in shapes:
        if s.target_class in seen:
            unique.append(NodeShape(iri=s.iri, target_class=None, properties=s.properties))
        else:
            if s.target_class:
                seen.add(s.target_class)
            unique.append(s)
    return ShapesModel(shapes=tuple(unique))


def random_data(rng: random.Random, max_nodes: int = 10) -> Graph:
    node_count = rng.randint(1, max_nodes)
    nodes = rng.sample(NODES, node_count)
    triples: list[Triple] = []
    for node in nodes:
        subject = Iri(node)
        if rng.random() < 0.85:
            triples.append(Triple(subject, Iri(RDF_TYPE), Iri(rng.choice(CLASSES))))
        for _ in range(rng.randint(0, 4)):
            triples.append(
                Triple(subject, Iri(rng.choice(PREDICATES)), _random_value_term(rng))
            )
    return Graph(triples)
