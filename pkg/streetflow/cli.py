"""
Command Line Interface for Streetflow.

This module provides the CLI entrypoints, one subcommand per engine layer:
- Street triples of each plane (`streetflow streets`)
- The broken isometry of a spec (`streetflow transition`)
- Word enumeration and orbit coding (`streetflow words`)
- Fundamental group representatives (`streetflow pi1`)
- Torus curve words and the matrix semigroup (`streetflow curve`, `streetflow matrix`)
- Building data classification (`streetflow build`)
- Hyperelliptic class tests (`streetflow hyper`)
- Geometric oracle comparison (`streetflow simulate`)
- A new configuration file (`streetflow generate-config`)

Results are printed as JSON on stdout; errors as a JSON error object on
stderr with the error's exit status.
"""

import json
import logging
import sys
from typing import Any, List, Optional

import click

from streetflow.builder import (
    MinimalKind,
    classify,
    flux_check,
    glue,
    load_building,
    load_flux,
    maximal_diagram,
    minimal_diagram,
    psi_events,
    segment_cycles,
)
from streetflow.config import Config, OutputFormat
from streetflow.core import load_spec
from streetflow.curves import (
    CurveClass,
    UniMatrix,
    curve_word,
    cutting_word,
    fiber,
    is_embedded,
    lift,
    matrix_factor,
    segment_chain,
    triangle_domains,
    upper_triangle,
)
from streetflow.errors import (
    CommandUsageError,
    DomainError,
    ModelViolationError,
    ResourceLimitError,
    StreetflowError,
)
from streetflow.homotopy import abelianize, dehn_reduce, represent, to_original_basis
from streetflow.hyperelliptic import FormSpec, RealHyperelliptic, classify_class, perturbation_bound_note
from streetflow.oracle import (
    CheckResult,
    compare_coding,
    compare_streets,
    compare_transition,
    fit_log_slope,
    sample_points,
    street_profiles,
)
from streetflow.semigroup import closed_curve_verdict, code_trajectory, enumerate_level, word_from_itinerary
from streetflow.streets import mbasis_homology, street_triple
from streetflow.svg import streets_svg, tree_svg
from streetflow.transition import almost_transversal_passes, check_conservation, transition_for

logger = logging.getLogger(__name__)

SLOPE_TOLERANCE = 0.01


def _emit(data: Any) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _fail(e: StreetflowError) -> None:
    click.echo(json.dumps(e.to_dict(), sort_keys=True), err=True)
    sys.exit(e.exit_code)


def _config(ctx: click.Context) -> Config:
    return Config.load(ctx.obj.get("config_path"))


def _write(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as f:
            f.write(text)
        click.echo(f"SVG written to {output}", err=True)
    else:
        click.echo(text, nl=False)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}")


class StreetflowGroup(click.Group):
    """Command group that reports click usage errors as JSON with exit status 1."""

    def main(self, *args, standalone_mode: bool = True, **kwargs):
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as e:
            _fail(CommandUsageError(e.format_message()))
        except click.Abort:
            _fail(CommandUsageError("aborted"))
        if not standalone_mode:
            return rv
        sys.exit(rv if isinstance(rv, int) else 0)


@click.group(cls=StreetflowGroup)
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log debug records on stderr.")
@click.option("--config", default=None, help="Path to configuration file (default: search local)")
@click.pass_context
def cli(ctx, verbose, config):
    """Streetflow - combinatorics of genus-2 foliations with transversal bases"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config


@cli.command()
@click.option("--spec", "spec_path", required=True, help="Foliation spec (JSON or YAML).")
@click.option("--plane", type=click.Choice(["1", "2"]), default=None, help="Only this plane.")
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=None)
@click.option("--output", default=None, help="SVG destination (default: stdout).")
@click.pass_context
def streets(ctx, spec_path, plane, fmt, output):
    """Street triples and m-dependent bases of the spec's planes."""
    try:
        cfg = _config(ctx)
        spec = load_spec(spec_path)
        planes = [int(plane)] if plane else [1, 2]
        triples = [street_triple(spec, k) for k in planes]
        if OutputFormat(fmt or cfg.output_format) == OutputFormat.SVG:
            _write(streets_svg(triples), output)
            return
        _emit(
            {
                "spec": spec.to_dict(),
                "planes": [dict(t.to_dict(), m_basis=mbasis_homology(t).to_dict()) for t in triples],
            }
        )
    except StreetflowError as e:
        _fail(e)


@cli.command()
@click.option("--spec", "spec_path", required=True, help="Foliation spec (JSON or YAML).")
@click.pass_context
def transition(ctx, spec_path):
    """Type, permutation, pieces and shifts of the transition map."""
    try:
        spec = load_spec(spec_path)
        bi = transition_for(spec)
        data = bi.to_dict()
        data["spec"] = spec.to_dict()
        data["conservation_failures"] = check_conservation(bi)
        data["passes"] = almost_transversal_passes(bi).to_dict()
        _emit(data)
    except StreetflowError as e:
        _fail(e)


@cli.command()
@click.option("--spec", "spec_path", required=True, help="Foliation spec (JSON or YAML).")
@click.option("--depth", type=int, default=1, show_default=True, help="Word length.")
@click.option("--code", "x0", default=None, help="Also code the orbit of this point.")
@click.option("--steps", type=int, default=20, show_default=True, help="Steps of the coded orbit.")
@click.pass_context
def words(ctx, spec_path, depth, x0, steps):
    """Nonzero semigroup words of one length, optionally an orbit coding."""
    try:
        cfg = _config(ctx)
        bi = transition_for(load_spec(spec_path))
        level = enumerate_level(bi, depth, cfg.max_depth)
        data = {"type": bi.type.value, "depth": depth, "words": []}
        for w in level:
            entry = w.to_dict()
            if w.shift.sign() != 0:
                entry["closed_curve"] = closed_curve_verdict(w).kind.value
            data["words"].append(entry)
        if x0 is not None:
            if steps > cfg.max_steps:
                raise ResourceLimitError(f"{steps} steps exceed max_steps {cfg.max_steps}", steps=steps)
            data["coding"] = {"x0": x0, "letters": code_trajectory(bi, x0, steps)}
        _emit(data)
    except StreetflowError as e:
        _fail(e)


@cli.command()
@click.option("--spec", "spec_path", required=True, help="Foliation spec (JSON or YAML).")
@click.option("--word", "letters", required=True, help="Itinerary letters, e.g. 1,3,2,5.")
@click.option("--negative", is_flag=True, default=False, help="Read the trajectory in negative time.")
def pi1(spec_path, letters, negative):
    """Fundamental group element and homology of a semigroup word."""
    try:
        bi = transition_for(load_spec(spec_path))
        w = word_from_itinerary(bi, _int_list(letters))
        g = represent(w, bi.type, negative)
        h = abelianize(g)
        _emit(
            {
                "type": bi.type.value,
                "letters": list(w.itinerary),
                "free_word": g.to_string(),
                "reduced_word": dehn_reduce(g).to_string(),
                "homology4": h.to_list(),
                "homology_original_basis": to_original_basis(h, bi.t1, bi.t2),
            }
        )
    except StreetflowError as e:
        _fail(e)


@cli.command()
@click.option("--k", "k", type=int, required=True)
@click.option("--l", "l", type=int, required=True)  # noqa: E741
@click.option("--marker", type=int, default=None, help="Marker r for the upper-triangle word.")
def curve(k, l, marker):  # noqa: E741
    """Positive word of the class k[a'] + l[b'] on the punctured torus."""
    try:
        c = CurveClass(k, l, marker)
        data = {"k": k, "l": l, "word": curve_word(c).to_string("")}
        if c.is_standard:
            data["chain"] = [s.to_dict() for s in segment_chain(c)]
            data["embedded"] = is_embedded(c)
            r = marker if marker is not None else k + l
            data["marker"] = r
            data["domains"] = [d.to_dict() for d in triangle_domains(c, r)]
            data["upper_triangle"] = upper_triangle(c, r).to_string()
            data["cutting_word"] = cutting_word(c, r).to_string()
        _emit(data)
    except StreetflowError as e:
        _fail(e)


@cli.command()
@click.option("--entries", required=True, help="Matrix entries k,l,p,q.")
def matrix(entries):
    """Factorization, lift and fiber of a unimodular nonnegative matrix."""
    try:
        t = UniMatrix.parse(entries)
        data = {"matrix": t.to_list(), "factors": matrix_factor(t)}
        if not t.is_identity:
            data["lift"] = lift(t).to_dict()
            data["fiber"] = fiber(t).to_dict() if sum(t.entries) >= 3 else None
        _emit(data)
    except StreetflowError as e:
        _fail(e)


@cli.command()
@click.option("--spec", "spec_path", default=None, help="Building data (JSON or YAML).")
@click.option("--minimal", type=click.Choice([k.value for k in MinimalKind]), default=None)
@click.option("--genus", type=int, default=None, help="Genus of a generated minimal diagram.")
@click.option("--maximal", default=None, help="Cycle type of a generated genus 4 maximal diagram, e.g. 1,1.")
@click.option("--flux", "flux_path", default=None, help="Flux measures {measures, areas} to check.")
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=None)
@click.option("--output", default=None, help="SVG destination (default: stdout).")
@click.pass_context
def build(ctx, spec_path, minimal, genus, maximal, flux_path, fmt, output):
    """Glue building data and classify the resulting foliation."""
    try:
        cfg = _config(ctx)
        if spec_path:
            data = load_building(spec_path)
        elif minimal:
            if genus is None:
                raise click.UsageError("--minimal needs --genus")
            data = minimal_diagram(MinimalKind(minimal), genus)
        elif maximal:
            data = maximal_diagram(_int_list(maximal))
        else:
            raise click.UsageError("give --spec, --minimal or --maximal")
        if OutputFormat(fmt or cfg.output_format) == OutputFormat.SVG:
            _write(tree_svg(data), output)
            return
        surface = glue(data)
        report = {
            "building": data.to_dict(),
            "classification": classify(surface).to_dict(),
            "psi_events": [ev.to_dict() for ev in psi_events(data)],
            "segment_cycles": segment_cycles(surface),
        }
        if flux_path:
            measures, areas = load_flux(flux_path)
            report["flux"] = flux_check(measures, areas).to_dict()
        _emit(report)
    except StreetflowError as e:
        _fail(e)


@cli.command()
@click.option("--roots", required=True, help="Branch points z_1 < ... < z_2g+2, comma-separated.")
@click.option("--u", "u", required=True, help="Real part of P as a polynomial in z.")
@click.option("--v", "v", required=True, help="Imaginary part of P as a polynomial in z.")
def hyper(roots, u, v):
    """Transversal class of a real hyperelliptic curve with form (u + iv) dz / w."""
    try:
        c = RealHyperelliptic.parse(roots)
        f = FormSpec.of(u, v)
        data = classify_class(c, f).to_dict()
        data["form"] = f.to_dict()
        data["perturbation"] = perturbation_bound_note(c, f).to_dict()
        _emit(data)
    except StreetflowError as e:
        _fail(e)


def _slope_checks(cfg: Config, spec) -> List[CheckResult]:
    tp_cfg = cfg.time_profile
    results = []
    for plane in (1, 2):
        t = street_triple(spec, plane)
        for tp in street_profiles(t, tp_cfg.c1, tp_cfg.c2, tp_cfg.t0):
            slope = fit_log_slope(tp)
            ok = abs(slope - tp.c_near0) <= SLOPE_TOLERANCE * tp.c_near0
            results.append(CheckResult(f"time_slope_plane_{plane}_street_{tp.street}", ok, f"{slope:.6f}"))
    return results


@cli.command()
@click.option("--spec", "spec_path", required=True, help="Foliation spec (JSON or YAML).")
@click.option("--points", type=int, default=None, help="Sample points (default: from config).")
@click.option("--steps", type=int, default=100, show_default=True, help="Steps of the coded orbit.")
@click.option("--seed", type=int, default=None, help="Sampling seed (default: from config).")
@click.pass_context
def simulate(ctx, spec_path, points, steps, seed):
    """Compare the combinatorial model with exact ray shooting."""
    try:
        cfg = _config(ctx)
        if steps > cfg.max_steps:
            raise ResourceLimitError(f"{steps} steps exceed max_steps {cfg.max_steps}", steps=steps)
        spec = load_spec(spec_path)
        count = points if points is not None else cfg.oracle.sample_points
        if count < 1:
            raise DomainError(f"need at least one sample point, got {count}")
        sample = sample_points(spec.m, count, cfg.seed if seed is None else seed)
        checks = compare_streets(spec)
        checks.append(compare_transition(spec, sample))
        checks.append(compare_coding(spec, sample[0], steps))
        checks.extend(_slope_checks(cfg, spec))
        ok = all(c.ok for c in checks)
        _emit({"spec": spec.to_dict(), "ok": ok, "checks": [c.to_dict() for c in checks]})
        if not ok:
            sys.exit(ModelViolationError.exit_code)
    except StreetflowError as e:
        _fail(e)


@cli.command()
def generate_config():
    """Generate a new Streetflow configuration file interactively.

    This command will guide you through creating a new streetflow.config.json file.
    """
    click.echo("Welcome to Streetflow configuration generator!")

    max_depth = click.prompt("Longest word to enumerate", type=int, default=16)
    max_steps = click.prompt("Longest orbit to code", type=int, default=100000)
    seed = click.prompt("Sampling seed", type=int, default=0)
    output_format = click.prompt(
        "Default output format",
        type=click.Choice([f.value for f in OutputFormat]),
        default=OutputFormat.JSON.value,
    )
    c1 = click.prompt("Saddle constant c1", type=float, default=1.0)
    c2 = click.prompt("Saddle constant c2", type=float, default=1.0)

    try:
        config = Config(
            max_depth=max_depth,
            max_steps=max_steps,
            seed=seed,
            output_format=output_format,
            time_profile={"c1": c1, "c2": c2},
        )
        config.save("streetflow.config.json")
        click.echo("\nConfiguration saved to streetflow.config.json")
    except Exception as e:
        click.echo(f"Error saving configuration: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    cli()
