"""Command line entry point: ``gwknots <command> ...``.

Exit codes: 0 success, 2 verification mismatch, 3 resource abort, 4 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import signal
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from .braid_homotopy import DEFAULT_CONVENTION
from .cache import Cache
from .exact_linalg import ResourceLimitError
from .lie_core import RewritingFuelExhausted

EXIT_OK, EXIT_MISMATCH, EXIT_RESOURCE, EXIT_INPUT = 0, 2, 3, 4
CONVENTIONS = ("graded-symmetric", "classical")
DEFAULT_MAX_M = 6

log = logging.getLogger("gwknots")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    m_values: list[int] = field(default_factory=list)
    convention: str = DEFAULT_CONVENTION
    max_m: int = DEFAULT_MAX_M
    seed: int = 0
    samples: int = 1000
    tol: float = 1e-9
    cache_dir: str | None = None
    out: str | None = None
    fmt: str = "json"

    def validate(self) -> None:
        if self.convention not in CONVENTIONS:
            raise InputError(f"unknown convention {self.convention!r}")
        for m in self.m_values:
            if m > self.max_m:
                raise InputError(f"m = {m} exceeds the configured maximum {self.max_m}")
        if not self.tol > 0:
            raise InputError("tolerance must be positive")
        if self.samples < 1:
            raise InputError("samples must be at least 1")


def parse_range(text: str, low: int) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            vals = list(range(int(a), int(b) + 1))
        else:
            vals = [int(text)]
    except ValueError:
        raise InputError(f"cannot read range {text!r} (use 3 or 2..5)") from None
    if not vals or min(vals) < low:
        raise InputError(f"range {text!r} must start at {low} or above")
    return vals


# ---------------------------------------------------------------------------
# output


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _flatten(obj, prefix="") -> dict:
    out = {}
    for k in sorted(obj):
        v = obj[k]
        name = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, name + "."))
        elif isinstance(v, list):
            out[name] = " ".join(str(x) for x in v)
        else:
            out[name] = v
    return out


def to_csv(reports: list[dict]) -> str:
    rows = [_flatten(r) for r in reports]
    header = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def emit(reports: list[dict], cfg: RunConfig, stem: str) -> None:
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        for r in reports:
            name = f"{stem}_m{r['m']}.{cfg.fmt}" if "m" in r else f"{stem}.{cfg.fmt}"
            (out / name).write_text(to_csv([r]) if cfg.fmt == "csv" else dumps(r))
        return
    if cfg.fmt == "csv":
        sys.stdout.write(to_csv(reports))
    else:
        sys.stdout.write(dumps(reports[0] if len(reports) == 1 else reports))


@contextmanager
def time_budget(seconds: float | None):
    if not seconds:
        yield
        return

    def expire(signum, frame):
        raise ResourceLimitError(f"time budget of {seconds} s exhausted")

    old = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# ---------------------------------------------------------------------------
# commands


def _e2_report(m: int, convention: str) -> dict:
    from .tower_ss import verify_e2comp

    report = verify_e2comp(m, convention)
    report["gating"] = convention == DEFAULT_CONVENTION
    if not report["match"]:
        report["diff"] = {
            "free": [report["e2"]["free"], report["chord_side"]["free"]],
            "torsion": [report["e2"]["torsion"], report["chord_side"]["torsion"]],
        }
    return report


def run_e2(cfg: RunConfig, cache: Cache, jobs: int = 1) -> int:
    params = {m: {"m": m, "convention": cfg.convention} for m in cfg.m_values}
    found = {m: cache.lookup("e2", params[m]) for m in cfg.m_values}
    todo = [m for m in cfg.m_values if found[m] is None]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_e2_report, todo, [cfg.convention] * len(todo)))
    else:
        results = [_e2_report(m, cfg.convention) for m in todo]
    for m, r in zip(todo, results):
        cache.misses += 1
        cache.store("e2", params[m], r)
        found[m] = r
    reports = [found[m] for m in cfg.m_values]
    emit(reports, cfg, "e2")
    bad = [r["m"] for r in reports if not r["match"]]
    if bad and cfg.convention == DEFAULT_CONVENTION:
        log.warning("E2 and chord presentations differ at m = %s", bad)
        return EXIT_MISMATCH
    return EXIT_OK


def run_chords(cfg: RunConfig, cache: Cache, sparse: bool, pattern: str) -> int:
    from .chord_diagrams import report

    reports = [
        cache.get_or_compute("chord", {"m": m, "pattern": pattern}, lambda m=m: report(m, pattern, True if sparse else None))
        for m in cfg.m_values
    ]
    emit(reports, cfg, "chord")
    return EXIT_OK


def run_e1(cfg: RunConfig, cache: Cache, degree: int) -> int:
    from .tower_ss import e1

    def compute(m):
        col = e1(m, degree, cfg.convention)
        return {
            "m": m,
            "total_degree": degree,
            "convention": cfg.convention,
            "free": col.free_rank,
            "torsion2": col.torsion_rank,
            "eta_special": col.eta_special,
            "lattice": col.free_lattice.to_json(),
        }

    reports = [
        cache.get_or_compute("e1", {"m": m, "degree": degree, "convention": cfg.convention}, lambda m=m: compute(m))
        for m in cfg.m_values
    ]
    emit(reports, cfg, "e1")
    return EXIT_OK


def run_d1(cfg: RunConfig, cache: Cache) -> int:
    from .exact_linalg import cokernel
    from .tower_ss import d1_into_zero_line

    def compute(m):
        mat = d1_into_zero_line(m, cfg.convention).matrix
        return {
            "m": m,
            "convention": cfg.convention,
            "rows": mat.rows,
            "cols": mat.cols,
            "rank": mat.rows - cokernel(mat).free_rank,
            "matrix": mat.to_json(),
        }

    if min(cfg.m_values) < 3:
        raise InputError("d1 into the 0-line needs m >= 3")
    reports = [
        cache.get_or_compute("d1", {"m": m, "convention": cfg.convention}, lambda m=m: compute(m)) for m in cfg.m_values
    ]
    emit(reports, cfg, "d1")
    return EXIT_OK


def run_hall(cfg: RunConfig, alphabet: str | None, length: int | None, multilinear: int | None) -> int:
    from .lie_core import hall_words, multilinear_rank, word_text

    reports = []
    if multilinear is not None:
        if multilinear < 1:
            raise InputError("multilinear degree must be positive")
        reports.append({"k": multilinear, "multilinear_rank": multilinear_rank(multilinear)})
    if alphabet is not None:
        letters = []
        for a in alphabet.split(","):
            a = a.strip()
            if not a:
                raise InputError("empty letter in alphabet")
            letters.append(int(a) if a.isdigit() else a)
        if length is None or length < 1:
            raise InputError("--length must be a positive integer")
        words = hall_words(letters, length, cfg.convention)
        reports.append({
            "alphabet": [str(a) for a in letters],
            "length": length,
            "convention": cfg.convention,
            "count": len(words),
            "words": [word_text(w) for w in words],
        })
    if not reports:
        raise InputError("give --alphabet/--length or --multilinear")
    emit(reports, cfg, "hall")
    return EXIT_OK


def run_config_checks(cfg: RunConfig, knot_path: str | None, full: bool) -> int:
    from .config_checks import run_checks, summarize, to_csv as checks_csv
    from .config_kernel import ConfigError, FramedKnot

    knot = None
    if knot_path:
        try:
            knot = FramedKnot.load(knot_path)
        except (OSError, ConfigError) as exc:
            raise InputError(f"cannot use knot file {knot_path}: {exc}") from None
    rows = run_checks(cfg.seed, cfg.samples, cfg.tol, knot)
    shown = rows if full else summarize(rows)
    text = checks_csv(shown)
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    failed = sorted({r.check for r in rows if not r.passed})
    if failed:
        log.warning("checks above tolerance: %s", ", ".join(failed))
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gwknots", description="Tower, E2 and chord diagram computations.", allow_abbrev=False)
    p.add_argument("--cache-dir", help="cache directory (default: $GW_CACHE or .gw-cache/)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--max-m", type=int, default=DEFAULT_MAX_M)
    p.add_argument("--max-seconds", type=float, help="abort with exit code 3 after this long")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_m=True, m_low=2):
        if with_m:
            sp.add_argument("--m", required=True, help="column or range, e.g. 3 or 2..5")
        sp.add_argument("--convention", default=DEFAULT_CONVENTION, choices=CONVENTIONS)
        sp.add_argument("--out")
        sp.add_argument("--format", dest="fmt", default="json", choices=("json", "csv"))
        sp.set_defaults(m_low=m_low)

    e2 = sub.add_parser("e2", allow_abbrev=False, help="0-line E2 against chord diagrams")
    common(e2)
    e2.add_argument("--jobs", type=int, default=1)

    ch = sub.add_parser("chord", allow_abbrev=False, help="presentation of A^I_m")
    common(ch, m_low=1)
    ch.add_argument("--sparse", action="store_true")
    ch.add_argument("--pattern", default="standard", choices=("standard", "crossed"))

    e1 = sub.add_parser("e1", allow_abbrev=False, help="E1 column in total degree 0 or 1")
    common(e1)
    e1.add_argument("--degree", type=int, default=0, choices=(0, 1))

    d1 = sub.add_parser("d1", allow_abbrev=False, help="d1 matrix into the 0-line")
    common(d1, m_low=3)

    hall = sub.add_parser("hall", allow_abbrev=False, help="Hall (Lyndon) basis words")
    common(hall, with_m=False)
    hall.add_argument("--alphabet", help="comma separated letters")
    hall.add_argument("--length", type=int)
    hall.add_argument("--multilinear", type=int, help="rank of the multilinear part on k letters")

    cc = sub.add_parser("config-check", allow_abbrev=False, help="numeric identity checks (CSV)")
    cc.add_argument("--seed", type=int, default=0)
    cc.add_argument("--samples", type=int, default=1000)
    cc.add_argument("--tol", type=float, default=1e-9)
    cc.add_argument("--knot")
    cc.add_argument("--out")
    cc.add_argument("--all-rows", action="store_true", help="one row per seed instead of the worst per check")

    cache = sub.add_parser("cache", allow_abbrev=False, help="cache maintenance")
    cache.add_argument("action", choices=("gc",))
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    cache = Cache.from_env(args.cache_dir, enabled=not args.no_cache)
    try:
        cfg = RunConfig(
            command=args.command,
            m_values=parse_range(args.m, args.m_low) if getattr(args, "m", None) else [],
            convention=getattr(args, "convention", DEFAULT_CONVENTION),
            max_m=args.max_m,
            seed=getattr(args, "seed", 0),
            samples=getattr(args, "samples", 1000),
            tol=getattr(args, "tol", 1e-9),
            cache_dir=args.cache_dir,
            out=getattr(args, "out", None),
            fmt=getattr(args, "fmt", "json"),
        )
        cfg.validate()
        with time_budget(args.max_seconds):
            if args.command == "e2":
                return run_e2(cfg, cache, args.jobs)
            if args.command == "chord":
                return run_chords(cfg, cache, args.sparse, args.pattern)
            if args.command == "e1":
                return run_e1(cfg, cache, args.degree)
            if args.command == "d1":
                return run_d1(cfg, cache)
            if args.command == "hall":
                return run_hall(cfg, args.alphabet, args.length, args.multilinear)
            if args.command == "config-check":
                return run_config_checks(cfg, args.knot, args.all_rows)
            if args.command == "cache":
                sys.stdout.write(dumps(cache.gc()))
                return EXIT_OK
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceLimitError, RewritingFuelExhausted, MemoryError, RecursionError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_INPUT


def entry() -> None:
    sys.exit(main())

