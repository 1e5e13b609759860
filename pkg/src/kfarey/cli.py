"""Command line workbench over the library.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input,
3 a resource limit was hit.  File outputs are written atomically.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import tempfile

import click

from .cliques import (bounds_table, lower_bound_from_construction, max_clique,
                      search_with_growing_window)
from .core import (FareyVertex, InvalidInputError, ResourceLimitError,
                   det_pair, parse_vertex)
from .dualtree import (construct_R, construct_S, construct_T,
                       continuant_numerator, incident_vertices, lr_sequence)
from .levelgraph import (AT_MOST, EXACT, WORKERS_ENV, build, component_sweep,
                         count_components, denom_window, level_window)
from .verify import SUITES, run_suite


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text if text.endswith("\n") else text + "\n")
        click.echo(f"wrote {out}")
    else:
        click.echo(text)


def parse_budget(text: str) -> float:
    """Accepts '300', '300s' or '5m'."""
    text = text.strip().lower()
    try:
        if text.endswith("m"):
            return float(text[:-1]) * 60
        if text.endswith("s"):
            return float(text[:-1])
        return float(text)
    except ValueError:
        raise InvalidInputError(f"cannot parse budget {text!r}")


def parse_certificate(path: str) -> list[FareyVertex]:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    return [parse_vertex(ln) for ln in lines if ln and not ln.startswith("#")]


class _Fail(click.ClickException):
    """Verification failure; exit code 1."""

    exit_code = 1


class _BadInput(click.ClickException):
    exit_code = 2


class _Limit(click.ClickException):
    exit_code = 3


def library_errors(fn):
    """Map library exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InvalidInputError as exc:
            raise _BadInput(str(exc))
        except ResourceLimitError as exc:
            raise _Limit(str(exc))

    return wrapper


@click.group()
@click.option("--workers", type=int, default=None,
              help="Worker processes for pairwise edge scans.")
def main(workers):
    """Explore determinant-k graphs on Farey fractions."""
    if workers is not None:
        os.environ[WORKERS_ENV] = str(workers)


@main.command()
@library_errors
@click.option("--k", required=True, type=int)
@click.option("--level", "level_cap", type=int, default=None,
              help="Single window at this level cap.")
@click.option("--level-sweep", "sweep_range", default=None, metavar="LO..HI",
              help="Track component counts as the cap grows.")
@click.option("--mode", type=click.Choice([EXACT, AT_MOST]), default=EXACT)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--svg", "svg_path", default=None,
              help="Render the half-plane picture (or the sweep curve).")
@click.option("--out", default=None, help="Write the report here.")
def components(k, level_cap, sweep_range, mode, fmt, svg_path, out):
    """Component census of a windowed graph."""
    if (level_cap is None) == (sweep_range is None):
        raise click.UsageError("pass exactly one of --level / --level-sweep")
    if sweep_range is not None:
        try:
            lo, hi = (int(s) for s in sweep_range.split("..", 1))
        except ValueError:
            raise click.UsageError("--level-sweep wants LO..HI")
        if mode != EXACT:
            raise click.UsageError("--level-sweep only applies to exact-k")
        res = component_sweep(k, hi)
        keep = [i for i, m in enumerate(res.levels) if m >= lo]
        levels = [res.levels[i] for i in keep]
        b0 = [res.b0[i] for i in keep]
        if fmt == "json":
            text = json.dumps({"k": k, "levels": levels, "b0": b0,
                               "merges_above_k": len(res.merges_above(k))},
                              indent=2)
        else:
            rows = "\n".join(f"  m={m:<4d} b0={b}" for m, b in zip(levels, b0))
            text = (f"exact-{k} component counts\n{rows}\n"
                    f"merges above level {k}: {len(res.merges_above(k))}")
        emit(text, out)
        if svg_path:
            from .render import sweep_figure
            sweep_figure(levels, b0, k, svg_path)
            click.echo(f"wrote {svg_path}")
        return
    g = build(mode, k, level_window(level_cap))
    rep = count_components(g)
    if fmt == "json":
        text = json.dumps(rep.to_dict(), indent=2)
    else:
        pieces = [f"{mode} k={k} level<={level_cap}: "
                  f"{len(g.vertices)} vertices, {g.edge_count()} edges, "
                  f"b0={rep.b0}"]
        pieces += [f"  component of {v}: {n} vertices"
                   for v, n in zip(rep.reps, rep.sizes)]
        if rep.isolated:
            pieces.append("  isolated: " +
                          " ".join(str(v) for v in rep.isolated))
        text = "\n".join(pieces)
    emit(text, out)
    if svg_path:
        from .render import component_scene, draw_scene
        draw_scene(component_scene(g), svg_path)
        click.echo(f"wrote {svg_path}")


@main.command(context_settings={"ignore_unknown_options": True})
@library_errors
@click.argument("v", metavar="P/Q")
@click.argument("w", metavar="A/B")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
def intersect(v, w, fmt):
    """Determinant pairing of two vertices, with left-right sequences."""
    a, b = parse_vertex(v), parse_vertex(w)
    d = det_pair(a, b)
    payload = {"v": str(a), "w": str(b), "det": d}
    if d >= 2:
        seq = lr_sequence(a, b)
        co = lr_sequence(a, b, co=True)
        payload["lr_sequence"] = list(seq.terms)
        payload["co_sequence"] = list(co.terms)
        payload["continuant"] = continuant_numerator(seq)
        if payload["continuant"] != d:  # pragma: no cover
            raise _Fail(f"continuant {payload['continuant']} != det {d}")
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
        return
    lines = [f"det({a}, {b}) = {d}"]
    if d == 0:
        lines.append("same vertex")
    elif d == 1:
        lines.append("neighbors: no LR sequence")
    elif d >= 2:
        lines.append(f"sequence    {seq}")
        lines.append(f"co-sequence {co}")
        lines.append(f"continuant numerator = {payload['continuant']}")
    click.echo("\n".join(lines))


@main.command()
@library_errors
@click.argument("family", type=click.Choice(["R", "S", "T"]))
@click.argument("n", type=int)
@click.option("--out", default=None, help="Certificate file (one p/q per line).")
@click.option("--svg", "svg_path", default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
def construct(family, n, out, svg_path, fmt):
    """Emit the vertex certificate of a dual-tree construction."""
    builder = {"R": construct_R, "S": construct_S, "T": construct_T}[family]
    sub = builder(n)
    res = incident_vertices(sub)
    cert = "\n".join(str(v) for v in res.v_k)
    if fmt == "json":
        click.echo(json.dumps({"family": family, "n": n,
                               "vertices": [str(v) for v in res.v_k],
                               "size": len(res.v_k), "max_det": res.i_k,
                               "subgraph": sub.to_dict()},
                              indent=2))
    else:
        click.echo(f"{family}_{n}: {len(res.v_k)} vertices, "
                   f"max pairwise det {res.i_k}")
    if out:
        write_atomic(out, cert + "\n")
        click.echo(f"wrote {out}")
    if svg_path:
        from .render import certificate_scene, draw_scene
        draw_scene(certificate_scene(res.v_k, res.i_k), svg_path)
        click.echo(f"wrote {svg_path}")


@main.command()
@library_errors
@click.option("--k", required=True, type=int)
@click.option("--denom-cap", default="auto",
              help="Window cap N, or 'auto' to grow it adaptively.")
@click.option("--budget", default="300s", help="Time budget like 120s or 5m.")
@click.option("--seed-certificate", "seed_path", default=None,
              help="Newline-separated p/q list priming the incumbent.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--out", default=None)
def clique(k, denom_cap, budget, seed_path, fmt, out):
    """Search a windowed at-most-k graph for its largest clique."""
    budget_s = parse_budget(budget)
    seed = parse_certificate(seed_path) if seed_path else None
    if denom_cap == "auto":
        res = search_with_growing_window(k, time_budget=budget_s)
    else:
        try:
            cap = int(denom_cap)
        except ValueError:
            raise click.UsageError("--denom-cap wants an integer or 'auto'")
        if seed is None:
            seed = lower_bound_from_construction(k).witness
        seed = [v for v in seed if denom_window(cap).contains(v)]
        res = max_clique(k, denom_window(cap), time_budget=budget_s,
                         seed_witness=seed)
    if fmt == "json":
        emit(json.dumps(res.to_dict(), indent=2), out)
    else:
        w = res.window
        win = f"{w.kind} {w.bound}" if w else "none"
        emit("\n".join([
            f"k={res.k}: clique of size {res.size} "
            f"({'window-optimal' if res.optimal_within_window else 'best found'})",
            f"window {win}, {res.nodes_explored} nodes, "
            f"{res.elapsed:.1f}s, source {res.source}",
            "witness: " + " ".join(str(v) for v in res.witness),
        ]), out)


@main.command()
@library_errors
@click.option("--k-max", required=True, type=int)
@click.option("--budget-per-k", default=None,
              help="Optional search budget per k, like 30s.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv")
@click.option("--out", default=None)
@click.option("--figure", "fig_path", default=None,
              help="Also chart the bounds to this file.")
def table(k_max, budget_per_k, fmt, out, fig_path):
    """Clique lower bounds against coloring upper bounds for k = 1..k-max."""
    if k_max < 1:
        raise click.UsageError("--k-max must be >= 1")
    budget = parse_budget(budget_per_k) if budget_per_k else None
    rows = bounds_table(range(1, k_max + 1), time_budget_per_k=budget)
    if fmt == "json":
        emit(json.dumps([r.to_dict() for r in rows], indent=2), out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["k", "lower", "upper", "agol_bound", "gap_closed",
                         "lower_source", "window"])
        for r in rows:
            w = r.window
            writer.writerow([r.k, r.lower, r.upper, r.agol_bound,
                             r.gap_closed, r.lower_source,
                             f"{w.kind}={w.bound}" if w else ""])
        emit(buf.getvalue().rstrip("\n"), out)
    if fig_path:
        from .render import table_figure
        table_figure(rows, fig_path)
        click.echo(f"wrote {fig_path}")


@main.command()
@library_errors
@click.argument("suite", type=click.Choice(sorted(SUITES)))
def verify(suite):
    """Run one named verification battery."""
    checks = run_suite(suite)
    for c in checks:
        click.echo(c.line())
    bad = sum(not c.ok for c in checks)
    if bad:
        raise _Fail(f"{bad} of {len(checks)} checks failed")
    click.echo(f"{suite}: all {len(checks)} checks passed")
