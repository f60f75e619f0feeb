"""Command-line front end.

Subcommands mirror the analyses: ``eval`` (value of a sentence over a
structure), ``provenance`` (dual polynomial under a tracking), ``models``
(witness structures per monomial), ``maximize`` (best-confidence monomial
and model), ``clearance`` (access levels), ``update`` (provenance after
editing a structure) and ``oracle`` (proof-tree counting).

Exit codes: 0 ok, 2 parse error, 3 semantic error, 4 cap exceeded.
Commands that emit models accept ``--figures DIR`` to render each model
as a PNG next to the textual report.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import click

from . import analysis, formats, prooftrees, semirings
from .errors import CapExceeded, InputError, SemanticError
from .formulas import parse_formula
from .interpretations import evaluate, truth_lift
from .polynomials import parse_poly


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def _formula_options(fn):
    fn = click.option("--formula", "-f", "formula_text", help="formula text")(fn)
    fn = click.option(
        "--formula-file",
        type=click.Path(exists=True, dir_okay=False),
        help="file holding one formula",
    )(fn)
    return fn


def _get_formula(formula_text, formula_file, vocabulary):
    if (formula_text is None) == (formula_file is None):
        raise click.UsageError("give exactly one of --formula or --formula-file")
    src = formula_text if formula_text is not None else _read(formula_file)
    return parse_formula(src.strip(), vocabulary)


def _render_confidence(value) -> str:
    if isinstance(value, Fraction):
        return f"{value} ≈ {float(value):.6f}"
    return str(value)


def _format_witness(index, witness):
    lines = [f"model {index}: {witness.monomial}"]
    if witness.coefficient > 1:
        lines.append(f"  coefficient: {witness.coefficient}")
    facts = witness.model.facts()
    lines.append("  facts: " + (" ".join(str(f) for f in facts) if facts else "(none)"))
    free = sorted(witness.free_facts, key=lambda l: l.sort_key)
    lines.append("  free: " + (" ".join(str(f) for f in free) if free else "(none)"))
    return "\n".join(lines)


def _save_figure(directory, filename, model, title, free_facts=()):
    from . import figures

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    figures.render_structure(
        model, directory / filename, title=title, free_facts=free_facts
    )


@click.group()
def cli():
    """Semiring semantics and provenance analysis for first-order sentences."""


@cli.command("eval")
@click.argument("structure_file", type=click.Path(exists=True, dir_okay=False))
@_formula_options
@click.option(
    "--semiring", "-k", "semiring_name", default="bool", show_default=True,
    help="one of: " + " ".join(sorted(semirings.SEMIRINGS)),
)
@click.option(
    "--scores", type=click.Path(exists=True, dir_okay=False),
    help="literal-keyed score file annotating the literals directly",
)
def cmd_eval(structure_file, formula_text, formula_file, semiring_name, scores):
    """Evaluate a sentence over a structure in the chosen semiring.

    Without --scores, literals take the canonical truth values (1 where the
    structure makes them true, 0 elsewhere); with --scores, the score file
    defines the interpretation and the structure only fixes the universe.
    """
    structure = formats.load_structure(_read(structure_file))
    semiring = semirings.by_name(semiring_name)
    formula = _get_formula(formula_text, formula_file, structure.vocabulary)
    if scores is None:
        interpretation = truth_lift(structure, semiring)
    else:
        score_file = formats.load_scores(
            _read(scores), structure.vocabulary, structure.universe
        )
        interpretation = formats.literal_interpretation(
            score_file, semiring, structure.vocabulary, structure.universe
        )
    click.echo(semiring.render(evaluate(interpretation, formula)))


@cli.command("provenance")
@click.argument("tracking_file", type=click.Path(exists=True, dir_okay=False),
                required=False)
@_formula_options
@click.option(
    "--expanded", "form", flag_value="expanded", default=True,
    help="print the expanded canonical polynomial (default)",
)
@click.option(
    "--factored-input", "factored_input", default=None,
    help="expand a factored polynomial expression instead of evaluating",
)
def cmd_provenance(tracking_file, formula_text, formula_file, form, factored_input):
    """Provenance polynomial of a sentence under a tracking."""
    if factored_input is not None:
        if tracking_file or formula_text or formula_file:
            raise click.UsageError(
                "--factored-input expands an expression on its own; drop the "
                "tracking and formula arguments"
            )
        click.echo(str(parse_poly(factored_input)))
        return
    if tracking_file is None:
        raise click.UsageError("give a tracking file (or --factored-input)")
    assumptions = formats.load_tracking(_read(tracking_file))
    formula = _get_formula(
        formula_text, formula_file, assumptions.interpretation.vocabulary
    )
    click.echo(str(analysis.provenance(assumptions, formula)))


@cli.command("models")
@click.argument("tracking_file", type=click.Path(exists=True, dir_okay=False))
@_formula_options
@click.option("--canonical", "completion", flag_value="canonical", default=True,
              help="one minimal model per monomial (default)")
@click.option("--all", "completion", flag_value="enumerate",
              help="every completion of each monomial's free facts")
@click.option("--cap", default=64, show_default=True,
              help="max completions per monomial")
@click.option("--figures", type=click.Path(file_okay=False),
              help="directory for one PNG per model")
def cmd_models(tracking_file, formula_text, formula_file, completion, cap, figures):
    """List the models extracted from each provenance monomial."""
    assumptions = formats.load_tracking(_read(tracking_file))
    formula = _get_formula(
        formula_text, formula_file, assumptions.interpretation.vocabulary
    )
    found = analysis.witnesses(assumptions, formula, completion=completion, cap=cap)
    for index, witness in enumerate(found, start=1):
        click.echo(_format_witness(index, witness))
        if figures:
            _save_figure(
                figures, f"model_{index:03d}.png", witness.model,
                title=str(witness.monomial), free_facts=witness.free_facts,
            )


@cli.command("maximize")
@click.argument("tracking_file", type=click.Path(exists=True, dir_okay=False))
@_formula_options
@click.option("--confidence", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="token confidence scores in [0, 1]")
@click.option("--figures", type=click.Path(file_okay=False),
              help="directory for a PNG of the best model")
def cmd_maximize(tracking_file, formula_text, formula_file, confidence, figures):
    """Pick the provenance monomial (and model) of maximal confidence."""
    assumptions = formats.load_tracking(_read(tracking_file))
    formula = _get_formula(
        formula_text, formula_file, assumptions.interpretation.vocabulary
    )
    score_file = formats.load_scores(
        _read(confidence),
        assumptions.interpretation.vocabulary,
        assumptions.interpretation.universe,
    )
    scores = formats.token_scores(score_file, assumptions, semirings.VITERBI)
    monomial, value, witness = analysis.maximize_confidence(
        assumptions, formula, scores
    )
    click.echo(f"{monomial}  {_render_confidence(value)}")
    click.echo(_format_witness(1, witness).split("\n", 1)[1])
    if figures:
        _save_figure(
            figures, "best_model.png", witness.model,
            title=f"{monomial}  {_render_confidence(value)}",
            free_facts=witness.free_facts,
        )


@cli.command("clearance")
@click.argument("tracking_file", type=click.Path(exists=True, dir_okay=False))
@_formula_options
@click.option("--levels", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="token clearance levels (P C S T 0)")
def cmd_clearance(tracking_file, formula_text, formula_file, levels):
    """Overall clearance of a sentence plus per-monomial proof levels."""
    assumptions = formats.load_tracking(_read(tracking_file))
    formula = _get_formula(
        formula_text, formula_file, assumptions.interpretation.vocabulary
    )
    score_file = formats.load_scores(
        _read(levels),
        assumptions.interpretation.vocabulary,
        assumptions.interpretation.universe,
    )
    level_map = formats.token_scores(score_file, assumptions, semirings.ACCESS)
    overall, per_monomial = analysis.clearance(assumptions, formula, level_map)
    click.echo(f"overall: {overall}")
    for monomial, level in per_monomial:
        click.echo(f"{monomial}  {level}")


def _split_facts(chunk):
    # commas separate facts only outside parentheses
    parts, depth, current = [], 0, []
    for ch in chunk:
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _parse_fact_list(values, vocabulary, universe):
    literals = []
    for chunk in values:
        for item in _split_facts(chunk):
            literal = formats.parse_literal(item, vocabulary, universe)
            if not literal.positive:
                raise SemanticError("insert/delete lists name positive facts")
            literals.append(literal)
    return literals


@cli.command("update")
@click.argument("tracking_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("structure_file", type=click.Path(exists=True, dir_okay=False))
@_formula_options
@click.option("--insert", multiple=True, help="facts to insert, comma separated")
@click.option("--delete", multiple=True, help="facts to delete, comma separated")
@click.option("--show-structure", is_flag=True, help="also print the new facts")
@click.option("--figures", type=click.Path(file_okay=False),
              help="directory for a PNG of the updated model")
def cmd_update(tracking_file, structure_file, formula_text, formula_file,
               insert, delete, show_structure, figures):
    """Insert/delete facts in a structure and reprint the provenance."""
    assumptions = formats.load_tracking(_read(tracking_file))
    vocabulary = assumptions.interpretation.vocabulary
    universe = assumptions.interpretation.universe
    structure = formats.load_structure(_read(structure_file))
    formula = _get_formula(formula_text, formula_file, vocabulary)
    inserts = _parse_fact_list(insert, vocabulary, universe)
    deletes = _parse_fact_list(delete, vocabulary, universe)
    new_structure, poly = analysis.update_model(
        assumptions, structure, inserts, deletes, formula
    )
    click.echo(str(poly))
    if show_structure:
        facts = new_structure.facts()
        click.echo(
            "facts: " + (" ".join(str(f) for f in facts) if facts else "(none)")
        )
    if figures:
        _save_figure(figures, "updated_model.png", new_structure, title=str(poly))


@cli.command("oracle")
@click.argument("source_file", type=click.Path(exists=True, dir_okay=False))
@_formula_options
@click.option("--cap", default=100000, show_default=True,
              help="abort when more proof trees than this exist")
@click.option("--print-trees", is_flag=True, help="print every proof tree")
def cmd_oracle(source_file, formula_text, formula_file, cap, print_trees):
    """Count (and optionally print) the proof trees of a sentence.

    SOURCE_FILE is either a tracking file or a plain structure file; a
    structure is lifted to the untracked 0/1 interpretation.
    """
    text = _read(source_file)
    if formats.sniff_tracking(text):
        interpretation = formats.load_tracking(text).interpretation
    else:
        interpretation = truth_lift(formats.load_structure(text), semirings.DUALPOLY)
    formula = _get_formula(formula_text, formula_file, interpretation.vocabulary)
    trees = prooftrees.enumerate_trees(interpretation, formula, cap=cap)
    click.echo(str(len(trees)))
    if print_trees:
        for index, tree in enumerate(trees, start=1):
            click.echo(f"tree {index}")
            click.echo(prooftrees.format_tree(tree, interpretation))


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.ClickException as err:
        err.show()
        sys.exit(err.exit_code)
    except click.Abort:
        sys.exit(1)
    except InputError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)
    except CapExceeded as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(4)
    except SemanticError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(3)
    sys.exit(0)


if __name__ == "__main__":
    main()
