"""fwcalc command line: classify, invariant, apply, fuzz, check.

Exit status is 0 exactly when every requested check passes. Failure records
go to stdout as JSON lines. Nothing depends on the clock or hidden entropy.
"""

from __future__ import annotations

import json
from typing import Optional

import click

from . import checks
from .invariant import compute_I
from .moves import MoveError, apply_script, parse_script
from .system import (
    ParseError,
    SystemError_,
    classify_position,
    cycle_decomposition,
    key_example,
    pad_eyes,
    parse,
    serialize,
    standard_system,
    validate,
)


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse(text)
    except ParseError as exc:
        click.echo(f"{path}: parse error: {exc}", err=True)
        raise SystemExit(2)


def _emit_failures(res: checks.CheckResult):
    for f in res.failures:
        click.echo(json.dumps(f, sort_keys=True, default=str))


def _parse_order(specs) -> dict[int, tuple[str, ...]]:
    out = {}
    for spec in specs:
        eye, _, ids = spec.partition(":")
        if not ids:
            raise click.BadParameter(f"expected EYE:w1,w2,..., got {spec!r}", param_hint="--order")
        out[int(eye)] = tuple(ids.split(","))
    return out


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Finger/Whitney systems and the loop invariant I."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def classify(file):
    """Per-eye position (EA, G-EA, R-EA, IA, FingerFirstGeneral) and cycle count."""
    s = _load(file)
    for eye, pos in sorted(classify_position(s).items()):
        n = len(cycle_decomposition(s, eye).cycles)
        tail = f", {n} cycle{'s' if n != 1 else ''}" if n else ""
        click.echo(f"eye {eye}: {pos}{tail}")


@main.command()
@click.argument("file", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--example", type=click.Choice(["key", "standard", "padded"]), help="Use a built-in system instead of FILE.")
@click.option("--k", "k", default=1, show_default=True, help="Number of eyes for --example.")
@click.option("--eye", default=1, show_default=True, help="Eye carrying the key pair for --example key/padded.")
@click.option("--order", multiple=True, help="Whitney order for one eye, as EYE:w1,w2,... (repeatable).")
@click.option("--emit-script", is_flag=True, help="Print the normalization script after the result.")
def invariant(file, example, k, eye, order, emit_script):
    """Compute I by switching to IA, sliding to EA and summing the IA ordering."""
    if (file is None) == (example is None):
        raise click.UsageError("give exactly one of FILE or --example")
    if example == "key":
        s = key_example(k, eye)
    elif example == "standard":
        s = standard_system([1] * k)
    elif example == "padded":
        if not 1 <= eye <= k:
            raise click.BadParameter("need 1 <= eye <= k", param_hint="--eye")
        s = pad_eyes(key_example(eye, eye), k - eye)
    else:
        s = _load(file)
    try:
        res = compute_I(s, _parse_order(order))
    except SystemError_ as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(1)
    click.echo(f"I = {res}")
    if emit_script:
        for rec in res.script:
            click.echo(rec.to_text())


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the result here instead of stdout.")
@click.option("--check-invariant", is_flag=True, help="Recompute I before and after.")
def apply(file, script, output, check_invariant):
    """Apply a move script to a system file."""
    s = _load(file)
    with open(script, encoding="utf-8") as fh:
        try:
            recs = parse_script(fh.read())
        except MoveError as exc:
            click.echo(f"{script}: {exc}", err=True)
            raise SystemExit(2)
    try:
        out = apply_script(s, recs)
    except (MoveError, SystemError_) as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(1)
    text = serialize(out)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    report = click.echo if output else (lambda m: click.echo(m, err=True))
    report(f"applied {len(recs)} moves; {len(out.discs)} discs")
    bad = [str(v) for v in validate(out)]
    if bad:
        click.echo(json.dumps({"check": "validate", "violations": bad}))
        raise SystemExit(1)
    if check_invariant:
        before, after = compute_I(s).bits, compute_I(out).bits
        if before != after:
            click.echo(json.dumps({"check": "invariant", "before": list(before), "after": list(after)}))
            raise SystemExit(1)
        report("I preserved")


@main.command()
@click.option("--seed", default=0, show_default=True)
@click.option("--trials", default=10_000, show_default=True)
@click.option("--max-eyes", default=2, show_default=True)
@click.option("--max-discs", default=4, show_default=True)
@click.option("--moves-per-trial", default=5, show_default=True)
@click.option("--corpus-dir", type=click.Path(file_okay=False), help="Write failing cases here.")
@click.option("--inject-fault", is_flag=True, help="Use a deliberately wrong Clifford delta (negative control).")
@click.option("--jobs", default=1, show_default=True, help="Worker processes; output does not depend on it.")
def fuzz(seed, trials, max_eyes, max_discs, moves_per_trial, corpus_dir, inject_fault, jobs):
    """Random systems and random legal moves; I must never change."""
    res = checks.fuzz(
        seed, trials, max_eyes, max_discs, moves_per_trial, corpus_dir,
        apply=checks.faulty_apply if inject_fault else checks.apply_move, jobs=jobs,
    )
    click.echo(res.line())
    _emit_failures(res)
    raise SystemExit(0 if res.ok else 1)


@main.command()
@click.argument("lemma", type=click.Choice(sorted(checks.SUITES) + ["all"]))
@click.option("--seed", default=0, show_default=True)
@click.option("--trials", type=int, help="Defaults to the suite's standard size.")
@click.option("--depth", default=4, show_default=True, help="Script depth for slide-scripts.")
@click.option("--corpus-dir", type=click.Path(file_okay=False), help="Write cross-layer mismatches here.")
def check(lemma, seed, trials, depth, corpus_dir):
    """Run one lemma suite (or all of them)."""
    names = sorted(checks.SUITES) if lemma == "all" else [lemma]
    ok = True
    for name in names:
        n = trials if trials is not None else checks.DEFAULT_TRIALS[name]
        kwargs: dict[str, Optional[object]] = {}
        if name == "slide-scripts":
            kwargs["depth"] = depth
        if name == "cross-layer":
            kwargs["corpus_dir"] = corpus_dir
        res = checks.SUITES[name](seed, n, **kwargs)
        click.echo(res.line())
        _emit_failures(res)
        ok &= res.ok
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
