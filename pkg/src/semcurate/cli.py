"""Operator command line: serve the API, validate and bulk-import Turtle
data, export the dataset, inspect history, restore versions.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .api import create_app, load_config
from .api.config import AppConfig, ConfigError
from .namespaces import PRISM_KEYWORD
from .profile import ProfileBundle, ProfileError, load_profile
from .rdf import (
    RDF_TYPE,
    BlankNode,
    Graph,
    Iri,
    Literal,
    ParseError,
    parse_turtle,
    serialize_nquads,
    skolemize,
)
from .shacl import validate
from .store import QuadStore
from .vocab import validate_keywords
from .versioning import NoChangeError, VersionStore, VersioningError

EXIT_VALIDATION = 1
EXIT_IO = 3

GENID_MARKER = "/.well-known/genid/"


def _fail_io(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_IO)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail_io(str(exc))
        raise AssertionError("unreachable")


def _resolve_config(ctx: click.Context) -> AppConfig:
    params = ctx.obj
    try:
        return load_config(
            params.get("config_file"),
            profile_dir=params.get("profile_dir"),
            data_dir=params.get("data_dir"),
            port=params.get("port"),
        )
    except ConfigError as exc:
        raise click.UsageError(str(exc))


def _load_profile_or_fail(config: AppConfig) -> ProfileBundle:
    try:
        return load_profile(config.profile_dir)
    except ProfileError as exc:
        _fail_io(f"profile does not load: {exc}")
        raise AssertionError("unreachable")


def split_entities(graph: Graph, bundle: ProfileBundle) -> dict[str, Graph]:
    """Split a document into per-entity graphs.

    Roots are IRI subjects typed with a profile class; each entity takes the
    triples reachable from its root through blank or skolemized nodes.
    Other IRIs are boundary references and stay with their own root.
    """
    targets = set(bundle.shapes.by_target)
    roots = sorted(
        {
            t.subject.value
            for t in graph.match(None, Iri(RDF_TYPE))
            if isinstance(t.subject, Iri)
            and GENID_MARKER not in t.subject.value
            and isinstance(t.object, Iri)
            and t.object.value in targets
        }
    )
    entities: dict[str, Graph] = {}
    for root in roots:
        triples = []
        queue: list = [Iri(root)]
        seen = set()
        while queue:
            node = queue.pop()
            if node in seen:
                continue
            seen.add(node)
            for t in graph.match(node, None, None):
                triples.append(t)
                nested = isinstance(t.object, BlankNode) or (
                    isinstance(t.object, Iri) and GENID_MARKER in t.object.value
                )
                if nested:
                    queue.append(t.object)
        entities[root] = Graph(triples)
    return entities


def _stable_skolemizer(root: str):
    """Blank-node ids derived from (root, label): re-importing the same file
    reproduces the same node IRIs, so unchanged entities commit no snapshot."""
    import hashlib

    def fresh_id(label: str) -> str:
        return hashlib.sha256(f"{root}|{label}".encode("utf-8")).hexdigest()[:32]

    return fresh_id


@click.group()
@click.option("--config", "config_file", envvar="SEMCURATE_CONFIG", default=None,
              help="Path to the JSON config file.")
@click.option("--profile", "profile_dir", envvar="SEMCURATE_PROFILE_DIR", default=None,
              help="Profile directory (shapes, vocabulary, display config).")
@click.option("--data", "data_dir", envvar="SEMCURATE_DATA_DIR", default=None,
              help="Data directory for the store and journal.")
@click.pass_context
def main(ctx: click.Context, config_file, profile_dir, data_dir) -> None:
    """Semantic data curation: schema-driven editing with full provenance."""
    ctx.obj = {
        "config_file": config_file,
        "profile_dir": profile_dir,
        "data_dir": data_dir,
    }


@main.command()
@click.option("--port", type=int, default=None, help="Port to listen on.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.pass_context
def serve(ctx: click.Context, port, host) -> None:
    """Run the HTTP API (and the UI, when configured)."""
    ctx.obj["port"] = port
    config = _resolve_config(ctx)
    import uvicorn

    app = create_app(config)
    click.echo(f"serving on http://{host}:{config.port}")
    uvicorn.run(app, host=host, port=config.port, log_level="info")


@main.command("validate")
@click.argument("file", type=click.Path(dir_okay=False))
@click.pass_context
def cmd_validate(ctx: click.Context, file) -> None:
    """Validate a Turtle document against the profile shapes."""
    config = _resolve_config(ctx)
    bundle = _load_profile_or_fail(config)
    text = _read_text(file)
    try:
        graph = skolemize(parse_turtle(text), config.base_iri)
    except ParseError as exc:
        click.echo(f"{file}: {exc}")
        sys.exit(EXIT_VALIDATION)
    report = validate(graph, bundle.shapes)
    if report.conforms:
        click.echo(f"{file}: conforms ({len(graph)} triples checked)")
        return
    for result in report.results:
        click.echo(
            f"{result.component.value}: focus {result.focus!r} path <{result.path}>: "
            f"{result.message}"
        )
    click.echo(f"{file}: {len(report.results)} violation(s)")
    sys.exit(EXIT_VALIDATION)


@main.command("import")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--agent", required=True, help="IRI of the editor the import is attributed to.")
@click.pass_context
def cmd_import(ctx: click.Context, file, agent) -> None:
    """Bulk-import entities from a Turtle document.

    Failures are per-entity: invalid records are skipped and reported,
    valid ones are committed. Keywords are taken as-is (lenient mode);
    closure gaps are reported as warnings.
    """
    config = _resolve_config(ctx)
    bundle = _load_profile_or_fail(config)
    text = _read_text(file)
    try:
        doc_graph = parse_turtle(text)
    except ParseError as exc:
        click.echo(f"{file}: {exc}")
        sys.exit(EXIT_VALIDATION)

    entities = {
        root: skolemize(graph, config.base_iri, fresh_id=_stable_skolemizer(root))
        for root, graph in split_entities(doc_graph, bundle).items()
    }
    store = QuadStore(config.data_dir)
    versions = VersionStore(store)

    # Validation context: everything in this document plus the stored states
    # of entities not being (re)imported here.
    context: set = set()
    for graph in entities.values():
        context |= graph.triples
    for known in versions.entities():
        if known not in entities:
            context |= versions.current_state(known).triples
    report = validate(Graph(context), bundle.shapes)

    imported = 0
    skipped = 0
    for root, entity_graph in entities.items():
        subjects = {t.subject for t in entity_graph}
        problems = [r for r in report.results if r.focus in subjects]
        if problems:
            skipped += 1
            click.echo(f"skipped <{root}>: {len(problems)} violation(s), e.g. {problems[0].message}")
            continue
        keywords = {
            t.object.lexical
            for t in entity_graph.match(Iri(root), Iri(PRISM_KEYWORD))
            if isinstance(t.object, Literal)
        }
        for violation in validate_keywords(keywords, bundle.vocabulary):
            click.echo(f"warning: <{root}>: {violation.message}")
        try:
            record = versions.commit(root, entity_graph, agent, description="import")
        except NoChangeError:
            skipped += 1
            click.echo(f"skipped <{root}>: no change against stored state")
            continue
        except VersioningError as exc:
            skipped += 1
            click.echo(f"skipped <{root}>: {exc}")
            continue
        imported += 1
        click.echo(f"imported <{root}> (snapshot {record.index})")

    store.persist()
    store.close()
    click.echo(f"imported {imported} entities, skipped {skipped}")


@main.command("export")
@click.argument("out", type=click.Path(dir_okay=False))
@click.pass_context
def cmd_export(ctx: click.Context, out) -> None:
    """Write the full dataset (data and provenance) as sorted N-Quads."""
    config = _resolve_config(ctx)
    store = QuadStore(config.data_dir)
    text = serialize_nquads(store.dataset_copy())
    store.close()
    try:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        _fail_io(str(exc))
    click.echo(f"exported {len(text.splitlines())} quads to {out}")


@main.command("history")
@click.argument("iri")
@click.pass_context
def cmd_history(ctx: click.Context, iri) -> None:
    """Print the snapshot table for an entity."""
    config = _resolve_config(ctx)
    store = QuadStore(config.data_dir)
    versions = VersionStore(store)
    entity = iri if iri.startswith(("http://", "https://", "urn:")) else f"{config.base_iri}/{iri}"
    history = versions.history(entity)
    store.close()
    if not history.snapshots:
        click.echo(f"no history for <{entity}>")
        sys.exit(EXIT_VALIDATION)
    click.echo(f"history of <{entity}>" + (" [deleted]" if history.tombstoned else ""))
    for s in history.snapshots:
        description = f" {s.description}" if s.description else ""
        click.echo(
            f"  #{s.index} {s.generated_at} by <{s.agent}> "
            f"(+{len(s.delta.added)}/-{len(s.delta.removed)}){description}"
        )


@main.command("restore")
@click.argument("iri")
@click.argument("n", type=int)
@click.option("--agent", required=True, help="IRI of the editor performing the restore.")
@click.pass_context
def cmd_restore(ctx: click.Context, iri, n, agent) -> None:
    """Restore an entity to an earlier snapshot (appends a new one)."""
    config = _resolve_config(ctx)
    store = QuadStore(config.data_dir)
    versions = VersionStore(store)
    entity = iri if iri.startswith(("http://", "https://", "urn:")) else f"{config.base_iri}/{iri}"
    try:
        record = versions.restore(entity, n, agent)
    except VersioningError as exc:
        store.close()
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    store.persist()
    store.close()
    click.echo(f"restored <{entity}> to snapshot {n}; new snapshot #{record.index} at {record.generated_at}")


if __name__ == "__main__":  # pragma: no cover
    main()
