"""Command-line interface: tables, verify, enumerate, residue.

Exit codes: 0 success, 1 table mismatch or failed verification, 2 input error.
"""

from __future__ import annotations

import json
import re
import sys
import time
from fractions import Fraction
from typing import Callable, Optional

import click

from . import kernels
from .exactalg import set_zeta_order

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


# -- parsing -------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise InputError(f"not an exact rational: {text!r}")
    return Fraction(text)


def parse_range(text: str, step: Fraction) -> list[Fraction]:
    """'a..b' (inclusive, given step) or a comma-separated list of rationals."""
    text = text.strip()
    if ".." in text:
        lo_s, _, hi_s = text.partition("..")
        lo, hi = parse_rational(lo_s), parse_rational(hi_s)
        if hi < lo:
            raise InputError(f"empty range {text!r}")
        out = []
        x = lo
        while x <= hi:
            out.append(x)
            x += step
        return out
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def parse_int_range(text: str) -> list[int]:
    vals = parse_range(text, Fraction(1))
    if any(v.denominator != 1 or v < 0 for v in vals):
        raise InputError(f"ranks must be non-negative integers: {text!r}")
    return [int(v) for v in vals]


def _params_pair(text: str) -> tuple[Fraction, Fraction]:
    parts = [t for t in text.split(",")]
    if len(parts) != 2:
        raise InputError(f"--params expects two comma-separated values, got {text!r}")
    return parse_rational(parts[0]), parse_rational(parts[1])


def build_system(system: str, params: str, base: int = 1):
    """'G2' / 'F4' with (long, short) parameters, or 'B<n>' with (m-, m+)."""
    from .mu import classical_spec, exceptional_spec

    a, b = _params_pair(params)
    if system in ("G2", "F4"):
        if a.denominator != 1 or b.denominator != 1:
            raise InputError("exceptional parameters must be integers")
        return exceptional_spec(system, int(a), int(b))
    m = re.fullmatch(r"B(\d+)", system)
    if not m:
        raise InputError(f"unknown system {system!r} (use G2, F4 or B<n>)")
    n = int(m.group(1))
    if n > 4:
        raise InputError("rank > 4 is not supported")
    try:
        return classical_spec(n, a, b, base)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# -- output --------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _markdown(title: str, rows: list[dict], ok: bool, extra: str = "") -> str:
    lines = [f"## {title}", ""]
    if rows:
        keys = list(rows[0].keys())
        lines.append("| " + " | ".join(keys) + " |")
        lines.append("|" + "---|" * len(keys))
        for r in rows:
            lines.append("| " + " | ".join(str(_jsonable(r[k])) for k in keys) + " |")
        lines.append("")
    if extra:
        lines += [extra, ""]
    lines.append(f"**{'OK' if ok else 'FAILED'}**")
    return "\n".join(lines) + "\n"


def _emit(ctx: click.Context, command: str, title: str, rows: list[dict], ok: bool,
          started: float, extra: Optional[dict] = None, note: str = "") -> None:
    cfg = ctx.obj
    elapsed = round((time.perf_counter() - started) * 1000, 3) if cfg["timings"] else None
    if cfg["format"] == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config": {k: v for k, v in cfg.items() if k != "out"},
            "rows": rows,
            "ok": ok,
            "elapsed_ms": elapsed,
        }
        if extra:
            report.update(extra)
        text = json.dumps(_jsonable(report), indent=2, sort_keys=False) + "\n"
    else:
        text = _markdown(title, rows, ok, note)
        if elapsed is not None:
            text += f"\nelapsed: {elapsed} ms\n"
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    ctx.exit(EXIT_OK if ok else EXIT_FAIL)


# -- commands ------------------------------------------------------------------

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--zeta-order", type=int, default=24, show_default=True,
              help="Order N of the root of unity used for unit parts (even).")
@click.option("--cyclo-bound", type=int, default=64, show_default=True,
              help="Largest n tried when dividing by Phi_n(q).")
@click.option("--exp-bound", type=int, default=None,
              help="Bound on |v-exponent| in enumeration (default 2 max(m+) rank + 2).")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized checks.")
@click.option("--format", "fmt", type=click.Choice(["json", "markdown"]), default="markdown",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here.")
@click.option("--timings", is_flag=True, help="Record elapsed time (reports stop being byte-stable).")
@click.pass_context
def main(ctx, zeta_order, cyclo_bound, exp_bound, seed, fmt, out, timings):
    """Residues of Hecke-algebra mu-functions and spectral transfer morphisms."""
    if zeta_order < 2 or zeta_order % 2:
        raise InputError("--zeta-order must be a positive even integer")
    set_zeta_order(zeta_order)
    ctx.obj = {"zeta_order": zeta_order, "cyclo_bound": cyclo_bound, "exp_bound": exp_bound,
               "seed": seed, "format": fmt, "out": out, "timings": timings,
               "kernels": kernels.IMPLEMENTATION}


@main.command()
@click.argument("which", type=click.Choice(["3D4", "2E6", "all"]), default="all")
@click.option("--golden", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Alternative golden-table JSON file.")
@click.pass_context
def tables(ctx, which, golden):
    """Recompute the residue tables and diff them against the golden data."""
    from .tables import TABLE_NAMES, check_table, load_golden

    started = time.perf_counter()
    try:
        data = load_golden(golden)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read golden tables: {exc}") from exc
    rows = []
    names = TABLE_NAMES if which == "all" else (which,)
    try:
        for name in names:
            for r in check_table(name, data, ctx.obj["cyclo_bound"]):
                rows.append({
                    "table": name, "s": r.label, "point": str(r.point),
                    "evaluated_at": str(r.evaluated_at) if r.evaluated_at else None,
                    "printed": str(r.golden), "computed": str(r.computed) if r.computed else None,
                    "match": r.match, "diff": {f"Phi{n}": e for n, e in r.diff().items()},
                    "note": r.note,
                })
    except (KeyError, ValueError) as exc:
        raise InputError(f"malformed golden data: {exc}") from exc
    ok = all(r["match"] for r in rows)
    _emit(ctx, "tables", f"tables {which}", rows, ok, started)


def _sweep(family: str, mminus: list[Fraction], mplus: list[Fraction]) -> list[tuple[Fraction, Fraction]]:
    pairs = []
    for mp in mplus:
        for mm in mminus:
            if family in ("phi", "xi") and mp < mm:
                continue
            pairs.append((mm, mp))
    return pairs


_DEFAULTS = {
    "phi": ("1/2..3/2", "3/2..7/2", "0..3", Fraction(1)),
    "psi": ("0..2", "1..3", "0..3", Fraction(1)),
    "xi": ("1/4..7/4", "1/4..7/4", "0..2", Fraction(1, 2)),
}

_BASE_CASES = [(Fraction(1, 4), Fraction(1, 4)), (Fraction(3, 4), Fraction(1, 4)),
               (Fraction(1, 4), Fraction(3, 4)), (Fraction(3, 4), Fraction(3, 4))]


@main.command()
@click.argument("family", type=click.Choice(["phi", "psi", "xi", "all"]), default="all")
@click.option("--mminus", default=None, help="m- values: 'a..b' or a comma list of rationals.")
@click.option("--mplus", default=None, help="m+ values: 'a..b' or a comma list of rationals.")
@click.option("--rank", "ranks", default=None, help="Source ranks, e.g. '0..3'.")
@click.option("--base-cases", is_flag=True, help="xi only: the four smallest parameter pairs, ranks 0..3.")
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.pass_context
def verify(ctx, family, mminus, mplus, ranks, base_cases, seed):
    """Check that pulled-back target mu equals c v^k times source mu."""
    from .stm import phi, psi, verify_T3, xi

    if seed is not None:
        ctx.obj["seed"] = seed
    started = time.perf_counter()
    builders: dict[str, Callable] = {"phi": phi, "psi": psi, "xi": xi}
    families = ["phi", "psi", "xi"] if family == "all" else [family]
    if base_cases and families != ["xi"]:
        raise InputError("--base-cases applies to xi only")
    rows = []
    for fam in families:
        dm, dp, dr, step = _DEFAULTS[fam]
        if base_cases:
            pairs, rank_list = _BASE_CASES, [0, 1, 2, 3]
        else:
            pairs = _sweep(fam, parse_range(mminus or dm, step), parse_range(mplus or dp, step))
            rank_list = parse_int_range(ranks or dr)
        for mm, mp in pairs:
            for n in rank_list:
                t0 = time.perf_counter()
                try:
                    morph = builders[fam](n, mm, mp)
                except ValueError as exc:
                    raise InputError(f"{fam}({mm}, {mp}): {exc}") from exc
                rep = verify_T3(morph, seed=ctx.obj["seed"])
                row = {"family": fam, "mminus": mm, "mplus": mp, "rank": n,
                       "target_rank": morph.target_rank, "ok": rep.ok, "c": rep.c, "vexp": rep.vexp,
                       "codim_check": rep.codim_check, "random_agrees": rep.random_agrees}
                if not rep.ok:
                    row["leftover"] = rep.diagnostics_str()
                if ctx.obj["timings"]:
                    row["ms"] = round((time.perf_counter() - t0) * 1000, 3)
                rows.append(row)
    _emit(ctx, "verify", f"verify {family}", rows, all(r["ok"] for r in rows), started)


@main.command("enumerate")
@click.argument("system")
@click.option("--params", required=True, help="G2/F4: 'long,short'; B<n>: 'm-,m+'.")
@click.option("--base", type=int, default=1, show_default=True, help="B<n> only: parameter q^base.")
@click.option("--no-galois", is_flag=True, help="Do not merge Galois-conjugate orbits.")
@click.option("--expect", type=int, default=None, help="Exit 1 unless exactly this many orbits are found.")
@click.pass_context
def enumerate_cmd(ctx, system, params, base, no_galois, expect):
    """Search residual points up to Weyl orbit."""
    from .residual import SearchConfig, enumerate_residual_points

    started = time.perf_counter()
    spec = build_system(system, params, base)
    if spec.rank > 4:
        raise InputError("rank > 4 is not supported")
    search = SearchConfig(ctx.obj["exp_bound"], None, not no_galois, ctx.obj["cyclo_bound"])
    res = enumerate_residual_points(spec, search)
    rows = [{"representative": str(o.representative), "orbit_size": o.orbit_size,
             "residue": str(o.report.residue) if o.report.residue else None,
             "note": o.report.note} for o in res.orbits]
    extra = {"orbits": res.orbit_count, "galois_classes": res.galois_classes,
             "exp_bound": res.exp_bound, "candidates": res.candidates,
             "residual_points": res.residual_points, "disclaimer": res.disclaimer}
    ok = expect is None or res.orbit_count == expect
    note = f"{res.orbit_count} orbits. {res.disclaimer}"
    _emit(ctx, "enumerate", f"enumerate {spec.label}", rows, ok, started, extra, note)


@main.command()
@click.argument("system")
@click.argument("params")
@click.argument("point")
@click.option("--base", type=int, default=1, show_default=True, help="B<n> only: parameter q^base.")
@click.pass_context
def residue(ctx, system, params, point, base):
    """Residue of mu at one point, e.g. residue G2 3,1 "(1,q)"."""
    from .exactalg import IrrationalCoefficients, NonCyclotomicRemainder
    from .residual import parse_point, residue_at

    started = time.perf_counter()
    spec = build_system(system, params, base)
    try:
        pt = parse_point(point)
        rep = residue_at(spec, pt, ctx.obj["cyclo_bound"])
    except (IrrationalCoefficients, NonCyclotomicRemainder) as exc:
        rows = [{"point": point, "is_residual": True, "residue": None, "note": str(exc)}]
        _emit(ctx, "residue", f"residue {spec.label}", rows, False, started)
        return
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rows = [{"point": str(pt), "is_residual": rep.is_residual, "dropped_num": rep.dropped_num,
             "dropped_den": rep.dropped_den, "residue": str(rep.residue) if rep.residue else None}]
    _emit(ctx, "residue", f"residue {spec.label}", rows, True, started)


def run(argv=None) -> int:
    try:
        rc = main.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return EXIT_INPUT
    # without standalone mode click hands back the ctx.exit code instead of raising
    return rc if isinstance(rc, int) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(run())
