"""Command-line interface.

Exit codes: 0 when every check passes, 1 for a verified mathematical
violation (or no duplicate-column pair in ``witness --method direct``), 2 for
usage, parse and precondition errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import bounds, search
from .bounds import SK_TABLE, Verdict
from .errors import BadParameters, NoPairFound, PreconditionViolated, UCDensityError
from .family import (
    SetFamily,
    UnionClosedFamily,
    abundance_profile,
    chain_family,
    density,
    is_union_closed,
    popcount,
    union_closure,
    wojcik_family,
)
from .fileformat import emit_family, inline_family, load_family
from .reports import FORMATS, dec, frac, render
from .witness import check_frankl, equal_pair_direct, lemma2_witness, same_column

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
FRANKL_VERIFIED_MAX_N = 11


class Result:
    def __init__(self, text: str, code: int = EXIT_OK, note: str = ""):
        self.text = text
        self.code = code
        self.note = note  # goes to stderr, never part of the report


def parse_range(text: str) -> range:
    for sep in ("..", ":", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return range(int(lo), int(hi) + 1)
    n = int(text)
    return range(n, n + 1)


# -- check ------------------------------------------------------------------

def theorem1_summary(family: SetFamily) -> tuple[str, list[str]]:
    proven = checked = 0
    refuted = []
    for mask in family.members:
        k = popcount(mask)
        if k == 0 or k not in SK_TABLE:
            continue
        outcome = bounds.check_theorem1(family, mask)
        checked += 1
        if outcome.proven:
            proven += 1
        elif outcome.refuted:
            refuted.append(f"S={mask}: {outcome.certificate}")
    return f"{proven}/{checked} proven", refuted


def check_report(family: SetFamily, fmt: str = "human") -> Result:
    closed = is_union_closed(family)
    profile = abundance_profile(family)
    d = density(family)
    labels = family.labels
    row = {
        "n": family.n,
        "members": family.m,
        "union_closed": closed,
        "density": frac(d),
        "density_decimal": dec(d),
        "abundance": " ".join(map(str, profile.counts)),
        "argmax": labels[profile.argmax],
    }
    code = EXIT_OK
    problems = []
    if closed:
        ok, _ = check_frankl(family)
        row["frankl"] = ok
        if not ok and family.n <= FRANKL_VERIFIED_MAX_N:
            code = EXIT_VIOLATION
            problems.append("Frankl fails below the verified frontier")
        checks = {
            "density_lower": bounds.check_density_lower(family),
            "reimer": bounds.check_reimer(family),
            "corollary2": bounds.check_corollary2(family) if family.n >= 16 else None,
        }
        for name, outcome in checks.items():
            row[name] = str(outcome.verdict) if outcome else "n/a"
            row[name + "_certificate"] = outcome.certificate if outcome else ""
            if outcome and outcome.refuted:
                code = EXIT_VIOLATION
                problems.append(f"{name}: {outcome.certificate}")
        summary, refuted = theorem1_summary(family)
        row["theorem1"] = summary
        if refuted:
            code = EXIT_VIOLATION
            problems += [f"theorem1 {r}" for r in refuted]
    else:
        row["frankl"] = None
        for name in ("density_lower", "reimer", "corollary2"):
            row[name] = "skipped"
            row[name + "_certificate"] = ""
        row["theorem1"] = "skipped"
    text = render([row], fmt)
    if problems and fmt == "human":
        text += "".join(f"VIOLATION {p}\n" for p in problems)
    return Result(text, code)


# -- construct / closure ------------------------------------------------------

def construct_family(kind: str, n: int, k: int | None = None) -> UnionClosedFamily:
    if kind == "wojcik":
        return wojcik_family(n, bounds.ceil_log2(n) if k is None else k)
    if kind == "chain":
        return chain_family(n)
    raise ValueError(f"unknown construction {kind!r}")


# -- witness ----------------------------------------------------------------

def witness_report(family: SetFamily, method: str = "direct", fmt: str = "human") -> Result:
    labels = family.labels
    if method == "direct":
        w = equal_pair_direct(family)
        if w is None:
            raise NoPairFound("all element columns are pairwise distinct")
    elif method == "constructive":
        if not is_union_closed(family):
            raise PreconditionViolated("the constructive witness needs a union-closed family")
        if family.n < 2 or family.m >= family.n:
            raise PreconditionViolated(
                f"the constructive witness needs n >= 2 and |F| < n (got n={family.n}, |F|={family.m})"
            )
        w = lemma2_witness(UnionClosedFamily.from_family(family))
    else:
        raise ValueError(f"unknown method {method!r}")
    if not (w.a != w.b and same_column(family, w.a, w.b)):
        raise AssertionError("witness failed re-verification")
    trace = " > ".join(
        f"{s.branch}@{s.depth}({labels[s.pair[0]]},{labels[s.pair[1]]})" for s in w.trace
    )
    row = {
        "a": labels[w.a],
        "b": labels[w.b],
        "method": str(w.method),
        "verified": True,
        "trace": trace,
    }
    return Result(render([row], fmt))


# -- search -----------------------------------------------------------------

def search_rows(report: search.Conjecture2Report) -> dict:
    rec = report.record
    return {
        "n": rec.n,
        "s_n": frac(rec.sn),
        "s_n_decimal": dec(rec.sn),
        "method": str(rec.method),
        "size_cap": rec.size_cap,
        "families_explored": rec.families_explored,
        "minimizer_count": len(rec.minimizers),
        "conjectured_k": " ".join(map(str, search.conjecture_k_values(rec.n))),
        "exists_reading": report.exists_reading,
        "forall_reading": report.forall_reading,
        "minimizers": " | ".join(inline_family(f.to_family()) for f in rec.minimizers),
        "counterexamples": " | ".join(inline_family(f.to_family()) for f in report.counterexamples),
    }


def search_report(n, mode="pruned", max_m=None, workers=1, fmt="human") -> Result:
    started = time.perf_counter()
    mode = search.Mode.NAIVE if mode == "naive" else search.Mode.PRUNED
    report = search.verify_conjecture2(n, mode, workers=workers, max_m=max_m)
    elapsed = time.perf_counter() - started
    row = search_rows(report)
    rec = report.record
    if fmt == "human":
        lines = [
            f"s_{n} = {frac(rec.sn)}  (~{dec(rec.sn)})",
            f"method: {rec.method}   size cap: {rec.size_cap}   families explored: {rec.families_explored}",
            f"Wojcik k values: {row['conjectured_k']}",
            f"exists reading: {'true' if report.exists_reading else 'false'}",
            f"forall reading: {'true' if report.forall_reading else 'false'}",
            f"minimizers: {len(rec.minimizers)}",
        ]
        for i, form in enumerate(rec.minimizers, 1):
            lines.append(f"# minimizer {i}")
            lines.extend(emit_family(form.to_family()).splitlines())
        for i, form in enumerate(report.counterexamples, 1):
            lines.append(f"# forall-reading counterexample {i}")
            lines.extend(emit_family(form.to_family()).splitlines())
        text = "\n".join(lines) + "\n"
    else:
        text = render([row], fmt)
    return Result(text, EXIT_OK, f"wall time: {elapsed:.3f} s")


# -- bounds -----------------------------------------------------------------

def bounds_row(n: int) -> dict:
    table = bounds.bound_table(n)
    return {
        "n": n,
        "theorem3_lower": dec(table.theorem3_lower),
        "conjectured_sn": frac(table.conjectured_sn),
        "conjectured_sn_decimal": dec(table.conjectured_sn),
        "corollary1_upper_ceil": frac(table.corollary1_upper_ceil),
        "corollary1_upper_ceil_decimal": dec(table.corollary1_upper_ceil),
        "corollary2_threshold": dec(table.corollary2_threshold) if table.corollary2_threshold is not None else None,
        "g_of_n": dec(table.g_of_n) if table.g_of_n is not None else None,
        "lower_le_conjectured": str(table.consistency.verdict),
    }


def bounds_report(ns: range, fmt: str = "human") -> Result:
    if len(ns) == 0 or ns.start < 1:
        raise BadParameters("n must be >= 1 and the range nonempty")
    rows = [bounds_row(n) for n in ns]
    code = EXIT_OK
    if any(r["lower_le_conjectured"] == str(Verdict.REFUTED) for r in rows):
        code = EXIT_VIOLATION
    return Result(render(rows, fmt), code)


def table_report(ns: range, mode="pruned", max_m=None, workers=1, fmt="human") -> Result:
    if len(ns) == 0 or ns.start < 1:
        raise BadParameters("n must be >= 1 and the range nonempty")
    started = time.perf_counter()
    mode = search.Mode.NAIVE if mode == "naive" else search.Mode.PRUNED
    rows = []
    for n in ns:
        rep = search.verify_conjecture2(n, mode, workers=workers, max_m=max_m if n >= 6 else None)
        srow = search_rows(rep)
        brow = bounds_row(n)
        lower_ok = all(bounds.check_density_lower(f.to_family()).proven for f in rep.record.minimizers)
        rows.append({
            "n": n,
            "s_n": srow["s_n"],
            "s_n_decimal": srow["s_n_decimal"],
            "theorem3_lower": brow["theorem3_lower"],
            "conjectured_sn": brow["conjectured_sn"],
            "sn_equals_conjectured": rep.record.sn == bounds.conjectured_sn(n),
            "lower_certified": lower_ok,
            "minimizer_count": srow["minimizer_count"],
            "exists_reading": srow["exists_reading"],
            "forall_reading": srow["forall_reading"],
        })
    elapsed = time.perf_counter() - started
    return Result(render(rows, fmt), EXIT_OK, f"wall time: {elapsed:.3f} s")


# -- sample -----------------------------------------------------------------

def sample_report(n, count, seed, bias=0.3, fmt="human") -> Result:
    tallies = {
        "reimer": 0,
        "density_lower": 0,
        "corollary2": 0,
        "theorem1": 0,
        "lemma2": 0,
        "frankl": 0,
    }
    violations: list[tuple[int, str, SetFamily]] = []
    discoveries: list[tuple[int, SetFamily]] = []
    for idx, fam in enumerate(search.sample_random_ucf(n, count, seed, bias)):
        checks = [("reimer", bounds.check_reimer(fam)), ("density_lower", bounds.check_density_lower(fam))]
        if n >= 16:
            checks.append(("corollary2", bounds.check_corollary2(fam)))
        for name, outcome in checks:
            if outcome.proven:
                tallies[name] += 1
            else:
                violations.append((idx, f"{name}: {outcome.verdict} {outcome.certificate}", fam))
        _, refuted = theorem1_summary(fam)
        if refuted:
            violations.append((idx, "theorem1: " + "; ".join(refuted), fam))
        else:
            tallies["theorem1"] += 1
        if n >= 2 and fam.m < n:
            try:
                w = lemma2_witness(fam)
                direct = equal_pair_direct(fam)
                if direct is None or not same_column(fam, w.a, w.b):
                    raise AssertionError("witness does not share a column")
                tallies["lemma2"] += 1
            except (UCDensityError, AssertionError) as exc:
                violations.append((idx, f"lemma2: {exc}", fam))
        ok, _ = check_frankl(fam)
        if ok:
            tallies["frankl"] += 1
        elif n <= FRANKL_VERIFIED_MAX_N:
            violations.append((idx, "frankl: no element in half the members", fam))
        else:
            discoveries.append((idx, fam))
    row = {
        "n": n,
        "count": count,
        "seed": seed,
        "bias": bias,
        **{f"{k}_passed": v for k, v in tallies.items()},
        "violations": len(violations),
        "frankl_discoveries": len(discoveries),
    }
    if n < 16:
        row["corollary2_passed"] = None
    text = render([row], fmt)
    if fmt == "human":
        for idx, why, fam in violations:
            text += f"# VIOLATION sample {idx}: {why}\n" + emit_family(fam)
        for idx, fam in discoveries:
            text += f"# FRANKL DISCOVERY sample {idx}\n" + emit_family(fam)
    return Result(text, EXIT_VIOLATION if violations else EXIT_OK)


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="human")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="ucdensity",
        description="Densities, abundances and minimum-density search for union-closed families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="density, abundance and bound checks for a family file")
    p.add_argument("path")

    p = sub.add_parser("closure", parents=[common], help="emit the union closure of a family file")
    p.add_argument("path")

    p = sub.add_parser("construct", parents=[common], help="emit a Wojcik or chain family")
    p.add_argument("kind", choices=("wojcik", "chain"))
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int, default=None, help="cube dimension (default ceil(log2 n))")

    p = sub.add_parser("witness", parents=[common], help="find two elements with identical columns")
    p.add_argument("path")
    p.add_argument("--method", choices=("direct", "constructive"), default="direct")

    p = sub.add_parser("search", parents=[common], help="exact s_n and the Wojcik-form conjecture report")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=("naive", "pruned"), default="pruned")
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("bounds", parents=[common], help="bound table for n or a range A:B")
    p.add_argument("n")

    p = sub.add_parser("table", parents=[common], help="search and bounds rows for a range A:B")
    p.add_argument("n")
    p.add_argument("--mode", choices=("naive", "pruned"), default="pruned")
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sample", parents=[common], help="checker battery on random union closures")
    p.add_argument("n", type=int)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0, help="unsigned 64-bit seed")
    p.add_argument("--bias", type=float, default=0.3)
    return parser


def run(args) -> Result:
    fmt = args.format
    cmd = args.command
    if cmd == "check":
        return check_report(load_family(args.path), fmt)
    if cmd == "closure":
        return Result(emit_family(union_closure(load_family(args.path))))
    if cmd == "construct":
        return Result(emit_family(construct_family(args.kind, args.n, args.k)))
    if cmd == "witness":
        return witness_report(load_family(args.path), args.method, fmt)
    if cmd == "search":
        return search_report(args.n, args.mode, args.max_m, args.workers, fmt)
    if cmd == "bounds":
        return bounds_report(parse_range(args.n), fmt)
    if cmd == "table":
        return table_report(parse_range(args.n), args.mode, args.max_m, args.workers, fmt)
    if cmd == "sample":
        if not 0 <= args.seed < 1 << 64:
            raise BadParameters("seed must be an unsigned 64-bit integer")
        return sample_report(args.n, args.count, args.seed, args.bias, fmt)
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = run(args)
    except NoPairFound as exc:
        print(f"no pair found: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (UCDensityError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(result.text, encoding="utf-8")
    else:
        sys.stdout.write(result.text)
    if result.note:
        print(result.note, file=sys.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
