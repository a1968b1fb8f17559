"""Command-line front end: catalog reports, spectra and conjecture scans.

Standard output is deterministic for a given invocation.  Timings and progress
go to standard error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import ekr_verify as ev
from . import families as fam
from . import partitions_chars as pc
from . import singlecc
from .cayley import alt_cayley_spectrum, alt_class_list, cayley_graph, class_algebra_spectrum, sym_cayley_spectrum
from .graphs import complete_graph
from .perm_core import CapExceeded, cycle_type, parse_catalog
from .spectral import DEFAULT_SEED, exact_rank, spectrum

DEFAULT_CAP = 200_000


def _log(msg: str) -> None:
    click.echo(msg, err=True)


# ------------------------------------------------------------------ report

def _unknown_row(entry, order, note: str) -> ev.EkrReport:
    cols = {k: "?" for k in ("least", "max_clique", "ekr", "unique", "clique_coclique", "rank", "strict")}
    return ev.EkrReport(entry.name, entry.degree, order or 0, 0, "", ev.ConditionA(None, "not-run"),
                        ev.ConditionB(None, "not-run"), ev.ConditionC(None, None),
                        "unknown", "unknown", cols, notes=[note])


def _report_job(job):
    entry, mode, cap, oracle_cap, budget, seed, witness_seconds = job
    t0 = time.perf_counter()
    order = int(entry.notes["order"]) if "order" in entry.notes else None
    try:
        if order is not None and order > cap:
            rep = _unknown_row(entry, order, f"skipped: order {order} exceeds --cap {cap}")
        else:
            g = entry.group()
            g.elements(cap=cap)
            rep = ev.strict_ekr_verdict(g, mode=mode, notes=entry.notes, budget=budget, seed=seed,
                                        witness_seconds=witness_seconds, cap=oracle_cap)
            rep.group = entry.name
    except CapExceeded:
        rep = _unknown_row(entry, order, f"skipped: more than {cap} elements")
    except Exception as exc:  # recorded per row; the run goes on
        rep = _unknown_row(entry, order, f"error: {type(exc).__name__}: {exc}")
    return rep, time.perf_counter() - t0


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Erdos-Ko-Rado verification for permutation groups."""


@main.command("report")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True, dir_okay=False),
              help="Catalog file (default: the bundled table of small 2-transitive groups).")
@click.option("--group", "groups", multiple=True, help="Only these groups (repeatable).")
@click.option("--max-degree", type=int, default=None, help="Skip groups of larger degree.")
@click.option("--mode", type=click.Choice(ev.MODES), default="classic", show_default=True)
@click.option("--cap", type=int, default=DEFAULT_CAP, show_default=True,
              help="Largest group order that is enumerated.")
@click.option("--oracle-cap", type=int, default=ev.BRUTE_CAP, show_default=True,
              help="Largest order for exhaustive search (extended mode).")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--budget", type=int, default=ev.DEFAULT_BUDGET, show_default=True,
              help="Node budget for each clique or independent-set search.")
@click.option("--witness-seconds", type=float, default=ev.WITNESS_SECONDS, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def cmd_report(catalog_path, groups, max_degree, mode, cap, oracle_cap, seed, budget,
               witness_seconds, fmt, jobs, output):
    """One verdict row per catalog group."""
    if catalog_path:
        entries = parse_catalog(Path(catalog_path).read_text())
    else:
        entries = fam.catalog_entries()
    if groups:
        wanted = set(groups)
        entries = [e for e in entries if e.name in wanted]
        missing = wanted - {e.name for e in entries}
        if missing:
            raise click.BadParameter(f"unknown group(s): {', '.join(sorted(missing))}", param_hint="--group")
    if max_degree is not None:
        entries = [e for e in entries if e.degree <= max_degree]
    job_list = [(e, mode, cap, oracle_cap, budget, seed, witness_seconds) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_report_job, job_list))
    else:
        results = [_report_job(j) for j in job_list]
    reports = []
    for rep, secs in results:
        _log(f"{rep.group}: strict={rep.strict} ({secs:.1f}s)")
        reports.append(rep)
    text = format_reports(reports, fmt)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)
    bad = [r.group for r in reports if not r.consistent]
    if bad:
        _log(f"oracle disagreement: {', '.join(bad)}")
        sys.exit(1)


def format_reports(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ev.EkrReport.CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


# ------------------------------------------------------------------ spectrum

def _parse_types(classes) -> list:
    out = []
    for c in classes:
        out.append(tuple(sorted((int(x) for x in c.replace(" ", "").split(",") if x), reverse=True)))
    return out


def _family_group(spec: str):
    """sym:N, alt:N, psl:Q, pgl:Q or a catalog name."""
    kind, _, arg = spec.partition(":")
    builders = {"sym": fam.symmetric, "alt": fam.alternating, "psl": fam.psl2, "pgl": fam.pgl2}
    if kind in builders and arg:
        return builders[kind](int(arg))
    return fam.catalog_entry(spec).group()


@main.command("spectrum")
@click.argument("target")
@click.option("--class", "classes", multiple=True,
              help="Cycle type such as 5 or 2,2,1 (repeatable; default: every derangement class).")
@click.option("--dot", type=click.Path(dir_okay=False), help="Write the graph in DOT format.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the graph as JSON.")
@click.option("--cap", type=int, default=DEFAULT_CAP, show_default=True)
def cmd_spectrum(target, classes, dot, json_path, cap):
    """Print a spectrum.

    TARGET is complete:N, gamma:N,M (all M-cycles of Sym(N)), sym:N, alt:N,
    psl:Q, pgl:Q or a catalog group name.
    """
    kind, _, arg = target.partition(":")
    graph = None
    if kind == "complete":
        graph = complete_graph(int(arg))
        spec = spectrum(graph)
    elif kind == "gamma":
        n, m = (int(x) for x in arg.split(","))
        spec = singlecc.gamma_nm_spectrum(n, m)
    elif kind in ("sym", "alt") and (dot is None and json_path is None):
        n = int(arg)
        types = _parse_types(classes) or pc.derangement_types(n)
        if kind == "sym":
            spec = sym_cayley_spectrum(n, types)
        else:
            types = [t for t in types if pc.sign_of_type(t) == 1]
            spec = alt_cayley_spectrum(n, types if classes else alt_class_list(n))
    else:
        g = _family_group(target)
        g.elements(cap=cap)
        types = _parse_types(classes)
        members = [e for e in g.elements() if cycle_type(e) in types] if types else g.derangements()
        spec = class_algebra_spectrum(g, members)
        if dot or json_path:
            graph = cayley_graph(g, members)
    click.echo(str(spec))
    if graph is not None and dot:
        Path(dot).write_text(graph.to_dot())
    if graph is not None and json_path:
        Path(json_path).write_text(graph.to_json())


# ------------------------------------------------------------------ conjecture scans

CONJECTURE_LIMITS = {"char-bound": 30, "psl-rank": 11, "alt-least": 12}


def _parse_range(text: str) -> list:
    """'10..20' or '3,5,7'."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x]


def psl_rank_row(q: int):
    g = fam.psl2(q)
    mm = ev.build_matrix_M(g)
    r = exact_rank(mm.array)
    target = q * (q - 1)
    return r.rank, target, r.exact


@main.command("conjecture")
@click.argument("name", type=click.Choice(sorted(CONJECTURE_LIMITS)))
@click.argument("values")
def cmd_conjecture(name, values):
    """Scan a conjecture over VALUES ('10..20' or '3,5,7'); one pass/fail line each.

    Exit status 0 means the scan ran; failures are data, not errors.
    """
    vals = _parse_range(values)
    limit = CONJECTURE_LIMITS[name]
    if name == "psl-rank":
        vals = [q for q in vals if q % 2 == 1 and fam.prime_power(q)]
    if any(v > limit for v in vals):
        raise click.BadParameter(f"{name} is limited to values <= {limit}", param_hint="VALUES")
    for v in vals:
        try:
            status, detail = _conjecture_row(name, v)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="VALUES") from exc
        click.echo(f"{name} {v} {status} {detail}")


def _conjecture_row(name: str, v: int):
    t0 = time.perf_counter()
    if name == "char-bound":
        scan = pc.character_bound_scan(v)
        status = "pass" if scan.passed else "fail"
        detail = f"checked={scan.checked} violations={len(scan.violations)}"
        if scan.violations:
            first = scan.violations[0]
            detail += f" first=chi{list(first.lam)}@{list(first.rho)}:{first.value}/{first.dim}"
    elif name == "psl-rank":
        rank, target, exact = psl_rank_row(v)
        status = "pass" if rank == target and exact else "fail"
        detail = f"rank={rank} target={target}"
    else:
        chk = singlecc.alt_least_scan(v)
        status = "pass" if chk.holds else "fail"
        detail = f"least={chk.least} standard={chk.standard} multiplicity={chk.multiplicity}"
    _log(f"{name} {v}: {time.perf_counter() - t0:.2f}s")
    return status, detail


if __name__ == "__main__":
    main()
