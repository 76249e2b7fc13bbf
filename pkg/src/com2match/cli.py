"""Batch command-line interface: compare, check, export, serve.

Exit codes: 0 success, 1 internal error, 2 input/validation error,
3 policy (incomplete decisions with --require-complete).
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .correspondence import (
    CorrespondenceError,
    element_names,
    link_row,
    parse_correspondence,
    serialize_correspondence,
)
from .engine import CompareConfig, compare_models, unmatched_elements
from .model_ir import Model, ModelFormatError, parse_model, validate_model
from .resources import OntologyError, load_lexicon, load_ontology

EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_POLICY = 3

_INPUT_ERRORS = (ModelFormatError, OntologyError, CorrespondenceError, ValueError)


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise click.ClickException(f"input file not found: {path}")
    return p.read_text(encoding="utf-8")


def _load_config(local_coverage: float | None) -> CompareConfig:
    kwargs = {}
    config_path = os.environ.get("COM2MATCH_CONFIG")
    if config_path:
        doc = json.loads(_read(config_path))
        kwargs = {
            "local_coverage": doc.get("localCoverage", 1.0),
            "emit_homonyms": doc.get("emitHomonyms", True),
            "include_self_evident_pairs": doc.get("includeSelfEvidentPairs", False),
        }
    if local_coverage is not None:
        kwargs["local_coverage"] = local_coverage
    return CompareConfig(**kwargs)


@click.group()
def main() -> None:
    """Compare UML class-diagram models and manage the resulting mappings."""


def _fail_input(message: str) -> None:
    click.echo(message, err=True)
    sys.exit(EXIT_INPUT)


@main.command()
@click.option("--left", "left_path", required=True)
@click.option("--right", "right_path", required=True)
@click.option("--ontology", "ontology_path", default=None)
@click.option("--synonyms", "synonyms_path", default=None)
@click.option("--abbrev", "abbrev_path", default=None)
@click.option("--acronyms", "acronyms_path", default=None)
@click.option("--out", "out_path", default=None)
@click.option("--format", "output_format", type=click.Choice(["table", "json"]),
              default="table")
@click.option("--local-coverage", type=float, default=None)
def compare(left_path, right_path, ontology_path, synonyms_path, abbrev_path,
            acronyms_path, out_path, output_format, local_coverage) -> None:
    """Compare two models and write the correspondence file."""
    try:
        m1 = parse_model(_read(left_path))
        m2 = parse_model(_read(right_path))
        onto = load_ontology(_read(ontology_path)) if ontology_path else None
        lex = load_lexicon(
            _read(synonyms_path) if synonyms_path else "",
            _read(abbrev_path) if abbrev_path else "",
            _read(acronyms_path) if acronyms_path else "",
        )
        cfg = _load_config(local_coverage)
    except click.ClickException as exc:
        _fail_input(exc.message)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))

    wm = compare_models(m1, m2, onto, lex, cfg)
    serialized = serialize_correspondence(wm)
    if out_path:
        try:
            Path(out_path).write_text(serialized, encoding="utf-8")
        except OSError as exc:
            click.echo(f"cannot write {out_path}: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)
    if output_format == "json":
        click.echo(serialized, nl=False)
    else:
        _print_summary(wm, m1, m2)


_COLUMNS = ("M1", "M2", "Syn or Sem", "Explanation", "Global", "Local", "Level")


def _print_summary(wm, m1: Model, m2: Model) -> None:
    left_names, right_names = element_names(m1), element_names(m2)
    rows = [link_row(l, left_names, right_names) for l in wm.links]
    sections = (("Sure mapping", "sure"), ("Moderately sure mapping", "moderatelySure"),
                ("Improbable mapping", "improbable"))
    for title, confidence in sections:
        click.echo(f"== {title} ==")
        section = [r for r in rows if r["confidence"] == confidence]
        table = [_COLUMNS] + [
            (r["leftName"], r["rightName"], r["synOrSem"], r["explanation"],
             r["global"], r["local"], r["level"])
            for r in section
        ]
        widths = [max(len(row[i]) for row in table) for i in range(len(_COLUMNS))]
        for row in table:
            click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        click.echo("")


@main.command()
@click.argument("path")
@click.option("--kind", type=click.Choice(["model", "ontology", "correspondence"]),
              default="model")
@click.option("--left", "left_path", default=None,
              help="left model, for correspondence reference checking")
@click.option("--right", "right_path", default=None)
def check(path, kind, left_path, right_path) -> None:
    """Validate a model, ontology, or correspondence file."""
    try:
        text = _read(path)
        if kind == "model":
            # parse without invariant enforcement so violations are reported
            try:
                model = parse_model(text, enforce_invariants=False)
            except ModelFormatError as exc:
                _fail_input(str(exc))
            violations = validate_model(model)
            for v in violations:
                click.echo(f"{v.element_id}: [{v.invariant}] {v.message}")
            if violations:
                sys.exit(EXIT_INPUT)
        elif kind == "ontology":
            load_ontology(text)
        else:
            left = parse_model(_read(left_path)) if left_path else None
            right = parse_model(_read(right_path)) if right_path else None
            parse_correspondence(text, left, right)
        click.echo("ok")
    except click.ClickException as exc:
        _fail_input(exc.message)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))


@main.command()
@click.option("--in", "in_path", required=True)
@click.option("--left", "left_path", required=True)
@click.option("--right", "right_path", required=True)
@click.option("--out", "out_path", required=True)
@click.option("--require-complete", is_flag=True, default=False)
def export(in_path, left_path, right_path, out_path, require_complete) -> None:
    """Write the validated-only subset plus the unmatched-elements report."""
    try:
        m1 = parse_model(_read(left_path))
        m2 = parse_model(_read(right_path))
        wm = parse_correspondence(_read(in_path), m1, m2)
    except click.ClickException as exc:
        _fail_input(exc.message)
    except _INPUT_ERRORS as exc:
        _fail_input(str(exc))

    pending = [l.id for l in wm.links if l.decision == "pending"]
    if require_complete and pending:
        click.echo(f"{len(pending)} links still pending", err=True)
        sys.exit(EXIT_POLICY)
    document = build_export(wm, m1, m2)
    try:
        Path(out_path).write_text(json.dumps(document, indent=2) + "\n",
                                  encoding="utf-8")
    except OSError as exc:
        click.echo(f"cannot write {out_path}: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    click.echo(f"exported {len(document['correspondence']['links'])} validated links")


def build_export(wm, m1: Model, m2: Model) -> dict:
    """Hand-off artifact: validated links + unmatched elements, per side."""
    from dataclasses import replace

    validated = replace(wm, links=tuple(l for l in wm.links
                                        if l.decision == "validated"))
    left_only, right_only = unmatched_elements(wm, m1, m2)
    return {
        "correspondence": json.loads(serialize_correspondence(validated)),
        "unmatched": {"leftOnly": left_only, "rightOnly": right_only},
        "pending": sum(1 for l in wm.links if l.decision == "pending"),
    }


@main.command()
@click.option("--data-dir", default="./sessions", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--static-dir", default=None,
              help="directory with the built review UI bundle")
def serve(data_dir, host, port, static_dir) -> None:
    """Run the review HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(Path(data_dir), Path(static_dir) if static_dir else None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
