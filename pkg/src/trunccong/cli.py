"""Command-line driver: single checks, parameter sweeps, JSON reports.

Exit codes: 0 all checks hold (skips allowed), 1 some check failed, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from . import congruences as cg
from . import series, zerosum
from .gfq import build_field
from .modmath import BadParameter, BadPrime, PrimePower, odd_primes
from .report import CongruenceReport, dumps, skipped

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

THEOREMS = {
    "thm3.2": "sum C(2k+e,k) c^k against h_(mq-e)",
    "thm3.4": "sum C(3k+e,k) x^k, x = c^2/(1-c)^3, against g + 3h - 2(-c)^N",
    "cor3.5": "the e = 0 case in closed form with (1-4c)^((q-1)/2)",
    "range-relation": "short-range sum against the two-thirds-range sum",
    "zws": "the two congruences modulo c^q - c",
    "zws-linkage": "pointwise link between the short and full sums",
    "thm6.2": "the three congruences in s, x = 4s^2/(27(s^2-1))",
    "p2-fib": "parity of sum C(3k,k) over k < 2^r",
    "thm-zero": "short sum vanishes iff a(1-z)^3 - z^2 splits",
    "special": "vanishing sums at special values of a",
    "numeric": "closed forms at x = 1/6, 1/9, -1/27, 1/3, 4/27",
    "tail": "congruences in s evaluated at x = -16/27, 1/3, 1/27, 2/27",
    "oracle": "exact rational series identities",
}

# theorems whose instances are indexed by a prime power
_PER_Q = ("thm3.2", "thm3.4", "cor3.5", "range-relation", "zws", "zws-linkage", "thm6.2", "thm-zero")
_NEEDS_P5 = ("zws", "zws-linkage", "thm6.2", "thm-zero")


@dataclass(frozen=True)
class SweepConfig:
    theorems: tuple[str, ...] = ("all",)
    p_max: int = 97
    q_exponents: tuple[int, ...] = (1,)
    e_extras: tuple[int, ...] = ()
    budget_symq: int = cg.DEFAULT_SYMQ
    budget_terms: int = zerosum.DEFAULT_BUDGET_TERMS
    scan_q: int = zerosum.DEFAULT_SCAN_Q
    order: int = series.DEFAULT_ORDER
    r_max: int = 5
    e_max: int = 4
    p2_rmax: int = 20
    q2_pmax: int = 31
    big: bool = False
    seed: int = 0
    points: int = cg.DEFAULT_POINTS
    output: str | None = None
    fmt: str = "text"
    jobs: int = 1
    special_cases: tuple[str, ...] = field(default=zerosum.SPECIAL_CASES)

    def __post_init__(self):
        for name in ("budget_symq", "budget_terms", "scan_q", "order", "jobs", "p_max"):
            if getattr(self, name) <= 0:
                raise BadParameter(f"{name} must be positive")
        if not self.q_exponents or min(self.q_exponents) < 1:
            raise BadParameter("q exponents must be positive")
        unknown = [t for t in self.theorems if t != "all" and t not in THEOREMS]
        if unknown:
            raise BadParameter(f"unknown theorem ids {unknown}; choose from {sorted(THEOREMS)} or 'all'")
        if self.fmt not in ("text", "json"):
            raise BadParameter("format must be text or json")
        bad_cases = [c for c in self.special_cases if c not in zerosum.SPECIAL_CASES]
        if bad_cases:
            raise BadParameter(f"unknown special cases {bad_cases}")

    def selected(self) -> list[str]:
        if "all" in self.theorems:
            return list(THEOREMS)
        return list(dict.fromkeys(self.theorems))

    @property
    def options(self) -> cg.CheckOptions:
        return cg.CheckOptions(seed=self.seed, points=self.points, symq_cap=self.budget_symq)


@dataclass(frozen=True)
class Task:
    theorem: str
    args: tuple = ()


def _prime_powers(config: SweepConfig, min_p: int) -> list[PrimePower]:
    return [PrimePower(p, n) for n in config.q_exponents for p in odd_primes(min_p, config.p_max + 1)]


def plan(config: SweepConfig) -> list[Task]:
    """Every check the sweep will run, in a fixed order."""
    tasks = []
    for thm in config.selected():
        if thm in _PER_Q:
            for pp in _prime_powers(config, 5 if thm in _NEEDS_P5 else 3):
                cap = config.scan_q if thm == "thm-zero" else config.budget_symq
                if pp.q > cap:
                    tasks.append(Task("skip", (thm, pp.p, pp.n, f"q={pp.q} above cap {cap}")))
                    continue
                if thm == "thm3.2":
                    tasks += [Task(thm, (pp.p, pp.n, e, m)) for e in cg.e_grid(pp.q, config.e_extras, True) for m in (1, 2)]
                elif thm == "thm3.4":
                    tasks += [Task(thm, (pp.p, pp.n, e, m)) for e in cg.e_grid(pp.q, config.e_extras) for m in (1, 2, 3)]
                elif thm == "cor3.5":
                    tasks += [Task(thm, (pp.p, pp.n, m)) for m in (1, 2)]
                else:
                    tasks.append(Task(thm, (pp.p, pp.n)))
        elif thm == "special":
            tasks += [Task(thm, (case,)) for case in config.special_cases]
        else:
            tasks.append(Task(thm))
    return tasks


def run_task(task: Task, config: SweepConfig) -> list[CongruenceReport]:
    thm, args, opts = task.theorem, task.args, config.options
    if thm == "skip":
        name, p, n, reason = args
        return [skipped(name, {"p": p, "n": n, "q": p**n}, reason)]
    if thm in _PER_Q:
        pp = PrimePower(args[0], args[1])
        rest = args[2:]
        if thm == "thm3.2":
            return [cg.check_thm_2k(pp, *rest, opts)]
        if thm == "thm3.4":
            return [cg.check_thm_3k(pp, *rest, opts)]
        if thm == "cor3.5":
            return [cg.check_cor_3k(pp, *rest, opts)]
        if thm == "range-relation":
            return [cg.check_range_relation(pp, opts)]
        if thm == "zws":
            return [cg.check_zws(pp, opts)]
        if thm == "zws-linkage":
            return [zerosum.check_short_full_linkage(pp, config.budget_terms)]
        if thm == "thm6.2":
            return [cg.check_cardano(pp, opts)]
        ctx = zerosum.prime_field(pp.p) if pp.n == 1 else build_field(pp.p, pp.n, config.seed)
        return [zerosum.check_thm_zero(ctx, config.budget_terms, config.scan_q)]
    if thm == "p2-fib":
        return [cg.check_p2_fibonacci(config.p2_rmax)]
    if thm == "special":
        case = args[0]
        p_list = args[1] if len(args) > 1 else None
        return zerosum.special_value_scan(case, p_list, config.big, config.budget_terms)
    if thm == "numeric":
        return zerosum.numeric_suite(config.p_max, config.q2_pmax, config.budget_terms)
    if thm == "tail":
        return zerosum.tail_suite(config.p_max, config.budget_terms)
    if thm == "oracle":
        reports = series.check_section2_identities(config.r_max, config.e_max, config.order)
        return reports + [series.check_cardano_series(config.order)]
    raise BadParameter(f"unknown theorem {thm!r}")


def _run_one(item):
    task, config = item
    return run_task(task, config)


def run_all(tasks: list[Task], config: SweepConfig) -> list[CongruenceReport]:
    """Run the tasks (in a process pool when jobs > 1), sorted for stable output."""
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(_run_one, [(t, config) for t in tasks], chunksize=4))
    else:
        chunks = [run_task(t, config) for t in tasks]
    reports = [r for chunk in chunks for r in chunk]
    return sorted(reports, key=CongruenceReport.sort_key)


def summarize(reports) -> tuple[int, int, int]:
    fails = sum(r.holds is False for r in reports)
    skips = sum(r.holds is None for r in reports)
    return len(reports), fails, skips


def emit(reports, config: SweepConfig, out=None) -> int:
    """Print (and optionally save) the reports; return the exit code."""
    out = out or sys.stdout
    total, fails, skips = summarize(reports)
    summary = f"{total} checks, {fails} failures" + (f", {skips} skipped" if skips else "")
    if config.fmt == "json":
        print(dumps(reports), file=out)
        print(summary, file=sys.stderr)
    else:
        for r in reports:
            print(r.line(), file=out)
        print(summary, file=out)
    if config.output:
        try:
            with open(config.output, "w") as fh:
                fh.write(dumps(reports) + "\n")
        except OSError as exc:
            print(f"cannot write {config.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_FAIL if fails else EXIT_OK


# argument handling


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def read_config_file(path: str) -> list[str]:
    """key = value lines ('#' starts a comment) turned into the equivalent long flags.
    Boolean keys take true/false."""
    tokens = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise BadParameter(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                tokens.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                tokens += [flag, value]
    return tokens


def _add_common(ap: argparse.ArgumentParser):
    ap.add_argument("--seed", type=int, default=0, help="seed for evaluation points and field construction")
    ap.add_argument("--budget-terms", type=int, default=zerosum.DEFAULT_BUDGET_TERMS, help="max terms per numeric sum")
    ap.add_argument("--budget-symq", type=int, default=cg.DEFAULT_SYMQ, help="largest q for symbolic checks")
    ap.add_argument("--big", action="store_true", help="run the q = p^12 special values")
    ap.add_argument("--json", metavar="PATH", help="also write the reports as a JSON array")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--order", type=int, default=series.DEFAULT_ORDER, help="series order for the oracle")
    ap.add_argument("--rmax", type=int, default=5, help="largest r for the series oracle")
    ap.add_argument("--emax", type=int, default=4, help="largest e for the series oracle")
    ap.add_argument("--points", type=int, default=cg.DEFAULT_POINTS, help="random evaluation points per check")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trunccong", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one check")
    v.add_argument("theorem", choices=sorted(THEOREMS))
    v.add_argument("--p", type=int)
    v.add_argument("--n", type=int, default=1)
    v.add_argument("--e", type=int, default=0)
    v.add_argument("--m", type=int, default=1)
    v.add_argument("--pmax", type=int, help="prime bound for numeric / tail")
    v.add_argument("--case", choices=zerosum.SPECIAL_CASES, help="special-value case")
    v.add_argument("--r", type=int, default=20, help="largest r for p2-fib")
    _add_common(v)

    s = sub.add_parser("sweep", help="run many checks")
    s.add_argument("--config", metavar="FILE", help="key = value file mirroring these flags")
    s.add_argument("--theorems", type=_str_list, default=("all",))
    s.add_argument("--pmax", type=int, default=97)
    s.add_argument("--qexp", type=_int_list, default=(1,), help="exponents n for q = p^n, e.g. 1,2")
    s.add_argument("--e", type=_int_list, default=(), help="extra shifts e added to the boundary grid")
    s.add_argument("--jobs", type=int, default=1)
    _add_common(s)

    z = sub.add_parser("zero-scan", help="vanishing criterion over all a in F_q, with the zero set")
    z.add_argument("--p", type=int, required=True)
    z.add_argument("--n", type=int, default=1)
    _add_common(z)

    sp = sub.add_parser("special", help="special values of a")
    sp.add_argument("--case", type=_str_list, default=zerosum.SPECIAL_CASES)
    sp.add_argument("--p", type=_int_list, help="primes to scan; for m-family each p is paired with m = 1")
    _add_common(sp)

    o = sub.add_parser("oracle", help="exact series identities")
    _add_common(o)
    return ap


def _config_from(args, **over) -> SweepConfig:
    return SweepConfig(
        seed=args.seed,
        budget_terms=args.budget_terms,
        budget_symq=args.budget_symq,
        big=args.big,
        output=args.json,
        fmt=args.format,
        order=args.order,
        r_max=args.rmax,
        e_max=args.emax,
        points=args.points,
        **over,
    )


def _verify_tasks(args, config: SweepConfig) -> tuple[list[Task], SweepConfig]:
    thm = args.theorem
    if thm in _PER_Q:
        if args.p is None:
            raise BadParameter(f"{thm} needs --p")
        pp = PrimePower(args.p, args.n)
        if thm == "thm3.2":
            return [Task(thm, (pp.p, pp.n, args.e, args.m))], config
        if thm == "thm3.4":
            return [Task(thm, (pp.p, pp.n, args.e, args.m))], config
        if thm == "cor3.5":
            return [Task(thm, (pp.p, pp.n, args.m))], config
        return [Task(thm, (pp.p, pp.n))], config
    if thm == "special":
        cases = (args.case,) if args.case else zerosum.SPECIAL_CASES
        extra = ((tuple([args.p]),) if args.p else ())
        return [Task(thm, (c, *extra)) for c in cases], config
    if thm in ("numeric", "tail"):
        bound = args.pmax or args.p or (10_000 if thm == "numeric" else 500)
        return [Task(thm)], replace(config, p_max=bound, q2_pmax=min(31, bound))
    if thm == "p2-fib":
        return [Task(thm)], replace(config, p2_rmax=args.r)
    return [Task(thm)], config


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if len(argv) >= 1 and argv[0] == "sweep" and "--config" in argv:
            i = argv.index("--config")
            if i + 1 >= len(argv):
                parser.parse_args(argv)  # reports the missing value and exits 2
            path = argv[i + 1]
            argv = ["sweep", *read_config_file(path), *argv[1:i], *argv[i + 2 :]]
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except BadParameter as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "verify":
            config = _config_from(args)
            tasks, config = _verify_tasks(args, config)
        elif args.command == "sweep":
            config = _config_from(
                args, theorems=args.theorems, p_max=args.pmax, q_exponents=args.qexp, e_extras=args.e, jobs=args.jobs
            )
            tasks = plan(config)
        elif args.command == "zero-scan":
            config = _config_from(args)
            tasks = [Task("thm-zero", (PrimePower(args.p, args.n).p, args.n))]
        elif args.command == "special":
            config = _config_from(args, special_cases=args.case)
            tasks = [Task("special", (c, args.p) if args.p else (c,)) for c in config.special_cases]
        else:
            config = _config_from(args)
            tasks = [Task("oracle")]
        reports = run_all(tasks, config)
    except (BadParameter, BadPrime) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return emit(reports, config)


if __name__ == "__main__":
    sys.exit(main())
