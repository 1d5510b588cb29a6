"""Command-line front end.

    hecke-orbits count --from 1 --to 100 --format json --out counts.json
    hecke-orbits enumerate --n 14
    hecke-orbits reduce --n 2 --a 2 --c 2
    hecke-orbits verify --max-n 100
    hecke-orbits graph --n 5 --a 1 --c -2 --depth 3 --out orbit.dot

Exit codes: 0 success, 1 usage or I/O error, 2 failed mathematical check or
invalid element.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .classification import classify
from .core import is_squarefree, make_element
from .counting import (
    OrbitReport,
    bound_violations,
    divisor_count,
    enable_sieve,
    orbit_count_enumerative,
    pi_elements,
    pi_pairs,
)
from .errors import HeckeError, InternalCheckError, ValidationError
from .reduction import (
    MAX_GRAPH_DEPTH,
    canonical_class,
    enumerate_canonical_classes,
    local_orbit_graph,
    reduce_to_canonical,
    sample_elements,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2
THREADS_ENV = "HECKE_ORBITS_THREADS"
CSV_FIELDS = ("n", "orbit_count", "enumerative_count", "closed_form_count", "tn_count", "pi_pair_count")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_from: int = 1
    n_to: int = 1
    output_format: str = "text"
    output_path: Path | None = None
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.n_from > self.n_to:
            raise UsageError(f"empty range: --from {self.n_from} > --to {self.n_to}")
        if self.n_from < 1:
            raise UsageError("n must be positive")
        if self.threads < 1:
            raise UsageError("threads must be >= 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


# -- count -------------------------------------------------------------------


def render_reports(reports: list[OrbitReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in reports:
            w.writerow(r.to_dict())
        return buf.getvalue()
    lines = []
    for r in reports:
        lines.append(
            f"n={r.n}: {r.orbit_count} orbits (enumerative {r.enumerative_count}, "
            f"closed form {r.closed_form_count}), |TN|={r.tn_count}, |PI|={r.pi_pair_count}"
        )
    return "".join(line + "\n" for line in lines)


def compute_reports(ns: list[int], threads: int = 1) -> list[OrbitReport]:
    """Reports for each ``n`` in ``ns``, in input order regardless of threads."""
    if threads == 1:
        return [orbit_count_enumerative(n) for n in ns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(orbit_count_enumerative, ns))


def cmd_count(cfg: RunConfig) -> int:
    ns = []
    for n in range(cfg.n_from, cfg.n_to + 1):
        if is_squarefree(n):
            ns.append(n)
        else:
            print(f"skipping n={n}: not square-free", file=sys.stderr)
    reports = compute_reports(ns, cfg.threads)
    _emit(render_reports(reports, cfg.output_format), cfg.output_path)
    status = EXIT_OK
    for r in reports:
        for check in r.failed_checks():
            print(f"check failed: n={r.n} {check}", file=sys.stderr)
            status = EXIT_CHECK
    return status


# -- enumerate ---------------------------------------------------------------


def cmd_enumerate(n: int, fmt: str = "text", out: Path | None = None) -> int:
    classes = enumerate_canonical_classes(n)
    if fmt == "json":
        doc = {
            "n": n,
            "classes": [
                {"kind": str(k.kind), "key": str(k.key), "members": [str(m) for m in k.members]}
                for k in classes
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"n={n}: {len(classes)} canonical classes"]
        for k in classes:
            lines.append(f"{k.kind} key={k.key} members: {', '.join(str(m) for m in k.members)}")
        text = "\n".join(lines) + "\n"
    _emit(text, out)
    return EXIT_OK


# -- reduce ------------------------------------------------------------------


def render_trace(trace) -> str:
    lines = [f"start: {trace.start} [{classify(trace.start)}]"]
    for i, s in enumerate(trace.steps, 1):
        lines.append(f"step {i}: {s.word} -> {s.element} [{s.cls}]")
    members = ", ".join(str(m) for m in trace.end_class.members)
    lines.append(f"end: {trace.end_class.kind} {{{members}}}")
    lines.append(f"witness: {trace.witness}")
    return "\n".join(lines) + "\n"


def cmd_reduce(n: int, a: int, c: int, out: Path | None = None) -> int:
    e = make_element(a, c, n)
    _emit(render_trace(reduce_to_canonical(e)), out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def verify_n(n: int, seed: int = 0, samples: int = 20) -> list[str]:
    """Names of the checks that fail for a single square-free ``n``."""
    failed = []
    report = orbit_count_enumerative(n)
    classes = enumerate_canonical_classes(n)
    if not report.closed_form_count == report.enumerative_count == len(classes):
        failed.append("formula-equality")
    failed.extend(report.failed_checks())
    if bound_violations(n):
        failed.append("signature-bound")
    if n % 2 == 0:
        pis = pi_elements(n)
        expected_pairs = 2 if n == 2 else divisor_count(n // 2)
        if len(pis) != 2 * divisor_count(n // 2) or len(pi_pairs(n)) != expected_pairs:
            failed.append("pi-census")
    elif pi_elements(n):
        failed.append("pi-census")
    if samples:
        known = set(classes)
        for e in itertools.islice(sample_elements(n, 2 * n, seed + n), samples):
            if canonical_class(e) not in known:
                failed.append("reduction-completeness")
                break
    return sorted(set(failed))


def cmd_verify(max_n: int, seed: int = 0, samples: int = 20) -> int:
    if max_n < 1:
        raise UsageError("--max-n must be >= 1")
    # the signature-bound scan factors i^2 + n for i up to 3n
    enable_sieve(min(9 * max_n * max_n + max_n, 20_000_000))
    checked = 0
    failures = []
    for n in range(1, max_n + 1):
        if not is_squarefree(n):
            continue
        checked += 1
        try:
            bad = verify_n(n, seed, samples)
        except InternalCheckError as exc:
            bad = [f"internal ({exc})"]
        failures.extend((n, name) for name in bad)
    for n, name in failures:
        print(f"FAIL n={n}: {name}")
    print(f"verified {checked} square-free n <= {max_n}: {len(failures)} failures")
    return EXIT_CHECK if failures else EXIT_OK


# -- graph -------------------------------------------------------------------


def cmd_graph(n: int, a: int, c: int, depth: int, out: Path) -> int:
    if not 0 <= depth <= MAX_GRAPH_DEPTH:
        raise UsageError(f"--depth must be in 0..{MAX_GRAPH_DEPTH}")
    g = local_orbit_graph(make_element(a, c, n), depth)
    out.write_text(g.to_dot(), encoding="utf-8")
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hecke-orbits", description="Orbits of H(lambda_4) on Q*(sqrt(-n)).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="orbit counts for a range of n")
    c.add_argument("--from", dest="n_from", type=int, required=True)
    c.add_argument("--to", dest="n_to", type=int, required=True)
    c.add_argument("--format", choices=("json", "csv", "text"), default="text")
    c.add_argument("--out", type=Path)
    c.add_argument("--threads", type=int)

    e = sub.add_parser("enumerate", help="list canonical classes for one n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--format", choices=("json", "text"), default="text")
    e.add_argument("--out", type=Path)

    r = sub.add_parser("reduce", help="reduce (a + sqrt(-n))/c to its canonical class")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--a", type=int, required=True)
    r.add_argument("--c", type=int, required=True)

    v = sub.add_parser("verify", help="cross-check all formulas for n <= max-n")
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=20, help="sampled reductions per n")

    g = sub.add_parser("graph", help="write the local orbit graph as DOT")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--a", type=int, required=True)
    g.add_argument("--c", type=int, required=True)
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--out", type=Path, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "count":
            threads = args.threads if args.threads is not None else _default_threads()
            cfg = RunConfig("count", args.n_from, args.n_to, args.format, args.out, threads=threads)
            return cmd_count(cfg)
        if args.command == "enumerate":
            return cmd_enumerate(args.n, args.format, args.out)
        if args.command == "reduce":
            return cmd_reduce(args.n, args.a, args.c)
        if args.command == "verify":
            return cmd_verify(args.max_n, args.seed, args.samples)
        return cmd_graph(args.n, args.a, args.c, args.depth, args.out)
    except UsageError as exc:
        print(f"hecke-orbits: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"hecke-orbits: invalid input: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except InternalCheckError as exc:
        print(f"hecke-orbits: internal check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except OSError as exc:
        print(f"hecke-orbits: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HeckeError as exc:
        print(f"hecke-orbits: error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    raise SystemExit(main())
