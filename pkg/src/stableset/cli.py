"""Command-line entry point wiring all solvers, reductions, and oracles.

Exit codes: 0 success, 1 legitimate no-result (a failed randomized trial),
2 invalid input or contract violation. All randomness is surfaced through
explicit seeds; there is no hidden entropy.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .coloring import ColoringOracle, load_coloring, make_rule_coloring
from .core import ElementSet, count_stable, enumerate_stable, is_stable
from .errors import ContractViolation, InsufficientSlackError
from .graphs import (
    DEFAULT_CHI_CAP,
    DEFAULT_VERTEX_CAP,
    Family,
    GraphFamilySpec,
    alpha_u_formula,
    chi_bounds,
    chromatic_number_exact,
    independence_number_exact,
    materialize,
)
from .reductions import (
    CtInstance,
    FiscInstance,
    ct_to_uncovered,
    fisc_to_uncovered,
    verify_ct_solution,
)
from .schrijver import (
    DEFAULT_BRUTE_CAP,
    brute_force_mono_edge,
    interval_solver,
    lift_4k_solver,
    verify_mono_edge,
)
from .uncovered import (
    UncoveredInstance,
    brute_force_solve,
    derandomized_solve,
    four_split,
    randomized_solve,
    relabel_solution,
    validate_and_normalize,
    verify_uncovered_solution,
)


@dataclass
class RunReport:
    """What every subcommand prints: inputs echoed, outputs, and a verified flag."""

    command: str
    digest: str | None = None
    solution: str | None = None
    color: int | None = None
    queries: int | None = None
    millis: float | None = None
    valid: bool | None = None
    extra: dict = field(default_factory=dict)

    def emit(self, as_json: bool) -> None:
        if as_json:
            payload = {"command": self.command}
            for key in ("digest", "solution", "color", "queries", "millis", "valid"):
                value = getattr(self, key)
                if value is not None:
                    payload[key] = value
            payload.update(self.extra)
            print(json.dumps(payload))
            return
        print(f"command: {self.command}")
        for key in ("digest", "solution", "color", "queries", "millis", "valid"):
            value = getattr(self, key)
            if value is not None:
                if key == "valid":
                    value = "true" if value else "false"
                if key == "millis":
                    value = f"{value:.2f}"
                print(f"{key}: {value}")
        for key, value in self.extra.items():
            print(f"{key}: {value}")


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read instance file {path}: {exc}") from None


def _read_uncovered_file(path: str) -> tuple[int, int, list[list[int]], str]:
    data = _load_json(path)
    for key in ("n", "k", "sets"):
        if key not in data:
            raise ValueError(f"{path}: missing field {key!r}")
    canon = json.dumps({"n": data["n"], "k": data["k"], "sets": data["sets"]}, sort_keys=True)
    return int(data["n"]), int(data["k"]), [list(v) for v in data["sets"]], _digest(canon)


def _read_ct_file(path: str) -> tuple[CtInstance, str]:
    data = _load_json(path)
    for key in ("k", "cycle", "triangles"):
        if key not in data:
            raise ValueError(f"{path}: missing field {key!r}")
    k = int(data["k"])
    inst = CtInstance(
        k,
        tuple(int(v) for v in data["cycle"]),
        tuple(ElementSet.of(3 * k, t) for t in data["triangles"]),
    )
    canon = json.dumps({"k": data["k"], "cycle": data["cycle"], "triangles": data["triangles"]}, sort_keys=True)
    return inst, _digest(canon)


def _read_fisc_file(path: str) -> tuple[FiscInstance, str]:
    data = _load_json(path)
    for key in ("n", "parts"):
        if key not in data:
            raise ValueError(f"{path}: missing field {key!r}")
    n = int(data["n"])
    inst = FiscInstance(n, tuple(ElementSet.of(n, p) for p in data["parts"]))
    canon = json.dumps({"n": data["n"], "parts": data["parts"]}, sort_keys=True)
    return inst, _digest(canon)


def _build_coloring(spec: GraphFamilySpec, m: int, source: str, default_seed: int | None) -> ColoringOracle:
    if source.startswith("rule:"):
        body = source[len("rule:") :]
        if "," in body:
            name, seed_text = body.split(",", 1)
            seed = int(seed_text)
        else:
            name, seed = body, default_seed
        return make_rule_coloring(spec, m, name, seed)
    oracle = load_coloring(source)
    if oracle.spec != spec:
        raise ValueError(f"coloring file is for {oracle.spec}, requested {spec}")
    if oracle.m != m:
        raise ValueError(f"coloring file declares m={oracle.m}, requested m={m}")
    return oracle


def _cmd_solve_schrijver(args: argparse.Namespace) -> int:
    spec = GraphFamilySpec(Family.SCHRIJVER, args.n, args.k)
    if args.m is None:
        raise ValueError("--m is required")
    oracle = _build_coloring(spec, args.m, args.coloring, args.seed)
    cap = args.cap or DEFAULT_BRUTE_CAP
    start = time.perf_counter()
    if args.method == "brute":
        edge = brute_force_mono_edge(oracle, cap)
    elif args.method.startswith("interval:"):
        edge = interval_solver(oracle, int(args.method.split(":", 1)[1]))
    elif args.method == "lift4k":
        edge = lift_4k_solver(oracle, lambda sub_oracle: brute_force_mono_edge(sub_oracle, cap))
    else:
        raise ValueError(f"unknown method {args.method!r}; use brute, interval:d, or lift4k")
    millis = 1000 * (time.perf_counter() - start)
    queries = oracle.queries
    valid = verify_mono_edge(oracle, edge)
    report = RunReport(
        command=f"solve schrijver --n {args.n} --k {args.k} --m {args.m} --method {args.method}",
        digest=_digest(f"{spec}|m={args.m}|{args.coloring}|seed={args.seed}"),
        solution=f"{edge.a.canonical()} | {edge.b.canonical()}",
        color=edge.color,
        queries=queries,
        millis=millis,
        valid=valid,
    )
    report.emit(args.json)
    return 0 if valid else 2


def _cmd_solve_uncovered(args: argparse.Namespace) -> int:
    n, k, sets, digest = _read_uncovered_file(args.instance)
    inst, relabeling = validate_and_normalize(n, k, sets)
    method = args.method
    start = time.perf_counter()
    retries_used = None
    if method == "derandomized":
        sol = derandomized_solve(inst)
    elif method == "brute":
        sol = brute_force_solve(inst, args.cap or DEFAULT_BRUTE_CAP)
    elif method.startswith("randomized"):
        seed = int(method.split(":", 1)[1]) if ":" in method else args.seed
        if seed is None:
            raise ValueError("randomized mode needs a seed: use randomized:SEED or --seed")
        sol = None
        for trial in range(max(1, args.retries)):
            trace = randomized_solve(inst, seed + trial)
            if trace.outcome is not None:
                sol = trace.outcome
                retries_used = trial + 1
                break
        if sol is None:
            report = RunReport(
                command=f"solve uncovered --method {method}",
                digest=digest,
                millis=1000 * (time.perf_counter() - start),
                valid=False,
                extra={"retries": max(1, args.retries), "outcome": "failure"},
            )
            report.emit(args.json)
            return 1
    else:
        raise ValueError(f"unknown method {method!r}; use derandomized, randomized[:seed], or brute")
    millis = 1000 * (time.perf_counter() - start)
    valid = verify_uncovered_solution(inst, sol)
    mapped = relabel_solution(sol, relabeling, n)
    report = RunReport(
        command=f"solve uncovered --method {method}",
        digest=digest,
        solution=mapped.canonical(),
        millis=millis,
        valid=valid,
    )
    if retries_used is not None:
        report.extra["retries"] = retries_used
    report.emit(args.json)
    return 0 if valid else 2


def _cmd_solve_ct(args: argparse.Namespace) -> int:
    inst, digest = _read_ct_file(args.infile)
    if not args.method.startswith("via-uncovered:"):
        raise ValueError(f"unknown method {args.method!r}; use via-uncovered:derandomized or via-uncovered:brute")
    inner = args.method.split(":", 1)[1]
    reduced, back = ct_to_uncovered(inst)
    start = time.perf_counter()
    if inner == "derandomized":
        sol = derandomized_solve(reduced)
    elif inner == "brute":
        sol = brute_force_solve(reduced, args.cap or DEFAULT_BRUTE_CAP)
    else:
        raise ValueError(f"unknown inner method {inner!r}")
    mapped = back(sol)
    millis = 1000 * (time.perf_counter() - start)
    valid = verify_ct_solution(inst, mapped)
    report = RunReport(
        command=f"solve ct --method {args.method}",
        digest=digest,
        solution=mapped.canonical(),
        millis=millis,
        valid=valid,
    )
    report.emit(args.json)
    return 0 if valid else 2


def _cmd_reduce(args: argparse.Namespace) -> int:
    if args.what == "fisc-to-uncovered":
        fisc, digest = _read_fisc_file(args.infile)
        reduced, _ = fisc_to_uncovered(fisc)
    else:
        ct, digest = _read_ct_file(args.infile)
        reduced, _ = ct_to_uncovered(ct)
    payload = {"n": reduced.n, "k": reduced.k, "sets": [list(v.elements) for v in reduced.sets]}
    Path(args.outfile).write_text(json.dumps(payload) + "\n")
    report = RunReport(
        command=f"reduce {args.what}",
        digest=digest,
        extra={"out": args.outfile, "n": reduced.n, "k": reduced.k, "l": reduced.ell},
    )
    report.emit(args.json)
    return 0


def _cmd_verify_uncovered(args: argparse.Namespace) -> int:
    n, k, sets, digest = _read_uncovered_file(args.instance)
    sol = ElementSet.parse(args.solution, n)
    # Raw semantics: singleton sets simply force their element out.
    valid = (
        len(sol) == k
        and is_stable(sol, wraparound=True)
        and all(2 * len(set(sol.elements) & set(v)) <= len(v) for v in sets)
    )
    report = RunReport(
        command="verify uncovered",
        digest=digest,
        solution=sol.canonical(),
        valid=valid,
    )
    report.emit(args.json)
    return 0 if valid else 2


def _cmd_enumerate(args: argparse.Namespace) -> int:
    wrap = not args.linear
    sets = [s.canonical() for s in enumerate_stable(args.n, args.k, wraparound=wrap)]
    if args.json:
        print(json.dumps({"command": "enumerate stable", "count": len(sets), "sets": sets}))
    else:
        for line in sets:
            print(line)
    return 0


def _cmd_extremal(args: argparse.Namespace) -> int:
    spec = GraphFamilySpec(Family(args.family), args.n, args.k)
    cap = args.cap or DEFAULT_VERTEX_CAP
    start = time.perf_counter()
    extra: dict = {}
    if args.what == "chi":
        lower, upper = chi_bounds(spec)
        text = f"bounds {lower}..{upper}"
        extra.update({"lower": lower, "upper": upper})
        if args.exact:
            graph = materialize(spec, cap)
            exact = chromatic_number_exact(graph, max(args.cap or 0, DEFAULT_CHI_CAP))
            text += f" exact {exact}"
            extra["exact"] = exact
            if not lower <= exact <= upper:
                raise ContractViolation(f"exact chi {exact} escaped the bounds {lower}..{upper}")
    else:
        parts = []
        if spec.family is Family.UNSTABLE_CYCLIC and spec.k >= 2:
            value = alpha_u_formula(spec.n, spec.k)
            parts.append(f"formula {value}")
            extra["formula"] = value
        if args.exact or not parts:
            graph = materialize(spec, cap)
            exact = independence_number_exact(graph)
            parts.append(f"exact {exact}")
            extra["exact"] = exact
        text = " ".join(parts)
    millis = 1000 * (time.perf_counter() - start)
    if args.json:
        payload = {"command": f"extremal {args.what}", "family": args.family, "n": args.n, "k": args.k, "millis": millis}
        payload.update(extra)
        print(json.dumps(payload))
    else:
        print(text)
    return 0


def _cmd_split4(args: argparse.Namespace) -> int:
    n, k, sets, digest = _read_uncovered_file(args.instance)
    if n != 4 * k:
        raise ValueError(f"split4 needs n = 4k, got n={n}, k={k}")
    parts = [ElementSet.of(n, v) for v in sets]
    start = time.perf_counter()
    classes = four_split(k, parts)
    millis = 1000 * (time.perf_counter() - start)
    valid = (
        sum(len(c) for c in classes) == n
        and all(is_stable(c, wraparound=True) for c in classes)
        and all(all(c.intersection_size(v) == 1 for v in parts) for c in classes)
    )
    report = RunReport(
        command="split4",
        digest=digest,
        solution=" | ".join(c.canonical() for c in classes),
        millis=millis,
        valid=valid,
    )
    report.emit(args.json)
    return 0 if valid else 2


def _bench_rows(suite: str, seed: int) -> list[tuple]:
    rows = []

    def timed(label, n, k, lm, fn):
        start = time.perf_counter()
        queries = fn()
        rows.append((label, n, k, lm, queries, round(1000 * (time.perf_counter() - start), 3)))

    spec = lambda n, k: GraphFamilySpec(Family.SCHRIJVER, n, k)

    def run_interval(n, k, d):
        o = make_rule_coloring(spec(n, k), d * (n // (2 * k + d - 2)) - 1, "random", seed)
        interval_solver(o, d)
        return o.queries

    def run_lift(n, k):
        o = make_rule_coloring(spec(n, k), n // 2 - 2 * k + 1, "random", seed)
        lift_4k_solver(o, brute_force_mono_edge)
        return o.queries

    def run_brute(n, k):
        o = make_rule_coloring(spec(n, k), n - 2 * k + 1, "random", seed)
        brute_force_mono_edge(o)
        return o.queries

    def run_derand(n, k, ell):
        import random as _random

        rng = _random.Random(seed)
        sets = [rng.sample(range(1, n + 1), rng.randint(2, 8)) for _ in range(ell)]
        inst = UncoveredInstance.of(n, k, sets)
        derandomized_solve(inst)
        return None

    for d in (2, 3, 4):
        for n in (24, 48, 60):
            k = 2
            if n // (2 * k + d - 2) >= 1:
                timed(f"solve schrijver interval:{d}", n, k, d * (n // (2 * k + d - 2)) - 1, lambda n=n, k=k, d=d: run_interval(n, k, d))
    for n, k in ((12, 1), (20, 2), (28, 2)):
        timed("solve schrijver lift4k", n, k, n // 2 - 2 * k + 1, lambda n=n, k=k: run_lift(n, k))
    if suite == "solvers":
        for n, k in ((10, 2), (14, 3), (18, 4)):
            timed("solve schrijver brute", n, k, n - 2 * k + 1, lambda n=n, k=k: run_brute(n, k))
    for k in (1, 3, 5):
        n = 68 * k
        timed("solve uncovered derandomized", n, k, n - 2 * k + 1, lambda n=n, k=k: run_derand(n, k, n - 2 * k + 1))
    return rows


def _cmd_bench(args: argparse.Namespace) -> int:
    rows = _bench_rows(args.suite, args.seed if args.seed is not None else 0)
    print("command,n,k,lm,queries,millis")
    for row in rows:
        print(",".join("" if v is None else str(v) for v in row))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as one JSON object")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized modes and rules")
    common.add_argument("--cap", type=int, default=None, help="vertex cap override for exact searches")

    parser = argparse.ArgumentParser(prog="stableset", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run a solver").add_subparsers(dest="target", required=True)
    p = solve.add_parser("schrijver", parents=[common], help="find a monochromatic edge of a stable-set coloring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--coloring", required=True, help="table file path or rule:NAME[,seed]")
    p.add_argument("--method", required=True, help="brute | interval:d | lift4k")
    p.set_defaults(fn=_cmd_solve_schrijver)

    p = solve.add_parser("uncovered", parents=[common], help="find a stable k-set meeting every set in at most half")
    p.add_argument("--instance", required=True, help="JSON file {n, k, sets}")
    p.add_argument("--method", required=True, help="derandomized | randomized[:seed] | brute")
    p.add_argument("--retries", type=int, default=1, help="trials for the randomized mode")
    p.set_defaults(fn=_cmd_solve_uncovered)

    p = solve.add_parser("ct", parents=[common], help="independent set in a cycle-plus-triangles graph")
    p.add_argument("--in", dest="infile", required=True, help="JSON file {k, cycle, triangles}")
    p.add_argument("--method", default="via-uncovered:brute", help="via-uncovered:derandomized | via-uncovered:brute")
    p.set_defaults(fn=_cmd_solve_ct)

    reduce_p = sub.add_parser("reduce", parents=[common], help="transform an instance and write the result")
    reduce_p.add_argument("what", choices=["fisc-to-uncovered", "ct-to-uncovered"])
    reduce_p.add_argument("--in", dest="infile", required=True)
    reduce_p.add_argument("--out", dest="outfile", required=True)
    reduce_p.set_defaults(fn=_cmd_reduce)

    verify = sub.add_parser("verify", help="check a proposed solution").add_subparsers(dest="target", required=True)
    p = verify.add_parser("uncovered", parents=[common])
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True, help="comma-separated elements, e.g. 1,3")
    p.set_defaults(fn=_cmd_verify_uncovered)

    enum = sub.add_parser("enumerate", help="stream combinatorial families").add_subparsers(dest="target", required=True)
    p = enum.add_parser("stable", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--linear", action="store_true", help="drop the wraparound pair (n and 1 not consecutive)")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("extremal", parents=[common], help="chromatic and independence numbers")
    p.add_argument("what", choices=["chi", "alpha"])
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="run the exact search, not just the bounds")
    p.set_defaults(fn=_cmd_extremal)

    p = sub.add_parser("split4", parents=[common], help="split [4k] into four stable k-sets, one element per 4-set")
    p.add_argument("--instance", required=True, help="JSON file {n: 4k, k, sets: k disjoint 4-sets}")
    p.set_defaults(fn=_cmd_split4)

    p = sub.add_parser("bench", parents=[common], help="emit CSV timings")
    p.add_argument("--suite", choices=["acceptance", "solvers"], default="solvers")
    p.set_defaults(fn=_cmd_bench)

    return parser


def dispatch(argv: list[str]) -> int:
    """Route one command line to its handler; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except InsufficientSlackError as exc:
        print(f"insufficient-slack: {exc}", file=sys.stderr)
        return 2
    except (ContractViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
