"""Command-line front end.

Subcommands: find, min, enumerate, verify, estimate, bench. Graph
commands read the text format, resolve node names, and default the
candidate scope r to all observed nodes outside x and y. Output is JSON
by default (one object, or one line per enumerated set plus a count
record); --plain switches to bare values.

Exit codes: 0 success (including verify=false), 1 no FD set exists
(find/min), 2 input or query errors, 4 the --oracle cross-check found a
disagreement between the algorithms and the brute-force oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable

from .bench import ExperimentConfig, run_benchmark, write_csv
from .enumeration import enumerate_fd
from .errors import FrontdoorError, InvalidQueryError
from .estimator import fd_estimate, model_from_json
from .find import FdQuery, find_fd, verify_fd
from .graph import Dag, parse_graph
from .minimal import find_minimal_fd

__all__ = ["main"]

EXIT_OK = 0
EXIT_NONE_EXISTS = 1
EXIT_INPUT = 2
EXIT_ORACLE_MISMATCH = 4


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="frontdoor",
        description="Find, verify, enumerate and use front-door adjustment sets.")
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p, with_ir=True):
        p.add_argument("-g", "--graph", required=True, help="graph text file")
        p.add_argument("-x", "--exposure", required=True,
                       help="comma-separated exposure names")
        p.add_argument("-y", "--outcome", required=True,
                       help="comma-separated outcome names")
        if with_ir:
            p.add_argument("-i", "--include", default="",
                           help="names that must be in the set (default none)")
            p.add_argument("-r", "--restrict", default=None,
                           help="candidate names (default: observed minus x,y)")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--json", dest="plain", action="store_false",
                          default=False, help="JSON output (default)")
        mode.add_argument("--plain", dest="plain", action="store_true",
                          help="bare-value output")
        p.add_argument("--oracle", action="store_true",
                       help="cross-check against the brute-force oracle")

    p_find = sub.add_parser("find", help="find a maximum front-door set")
    add_common(p_find)
    p_min = sub.add_parser("min", help="find an inclusion-minimal front-door set")
    add_common(p_min)
    p_enum = sub.add_parser("enumerate", help="enumerate all front-door sets")
    add_common(p_enum)
    p_enum.add_argument("--limit", type=int, default=None,
                        help="emit at most this many sets")
    p_verify = sub.add_parser("verify", help="check one candidate set")
    add_common(p_verify, with_ir=False)
    p_verify.add_argument("-z", "--set", required=True, dest="zset",
                          help="comma-separated candidate names")

    p_est = sub.add_parser("estimate",
                           help="evaluate the adjustment formula on a model")
    p_est.add_argument("--model", required=True, help="model JSON file")
    p_est.add_argument("--do", required=True, dest="do_assign",
                       help="exposure assignment, e.g. X=1 or X1=0,X2=1")
    p_est.add_argument("--of", required=True, dest="of_assign",
                       help="outcome assignment, e.g. Y=1")
    p_est.add_argument("--via", default="",
                       help="comma-separated adjustment set (default empty)")
    mode = p_est.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="plain", action="store_false",
                      default=False)
    mode.add_argument("--plain", dest="plain", action="store_true")

    p_bench = sub.add_parser("bench", help="run the benchmark harness")
    p_bench.add_argument("--config", required=True,
                         help="JSON config (object or array of objects)")
    p_bench.add_argument("--out", default=None,
                         help="CSV output path (default stdout)")
    return top


def _names(text: str) -> list:
    return [part.strip() for part in text.split(",") if part.strip()]


def _load_graph(path: str) -> Dag:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _query(g: Dag, args) -> FdQuery:
    x = g.indices(_names(args.exposure))
    y = g.indices(_names(args.outcome))
    i = g.indices(_names(args.include))
    if args.restrict is None:
        r = g.default_restricted(x, y)
    else:
        r = g.indices(_names(args.restrict))
    return FdQuery(frozenset(x), frozenset(y), frozenset(i), frozenset(r))


def _family(g: Dag, q: FdQuery) -> list:
    from .oracle import fd_sets_bruteforce
    return fd_sets_bruteforce(g, q)


def _emit_result(g: Dag, res, plain: bool) -> int:
    if plain:
        print(",".join(g.names_of(res.z)) if res.exists else "none")
    elif res.exists:
        print(json.dumps({"exists": True, "set": g.names_of(res.z)}))
    else:
        print(json.dumps({"exists": False, "set": None}))
    return EXIT_OK if res.exists else EXIT_NONE_EXISTS


def _mismatch(message: str) -> int:
    print(f"oracle mismatch: {message}", file=sys.stderr)
    return EXIT_ORACLE_MISMATCH


def _cmd_find(args) -> int:
    g = _load_graph(args.graph)
    q = _query(g, args)
    res = find_fd(g, q)
    if args.oracle:
        fam = _family(g, q)
        ok = res.exists == bool(fam) and (
            not res.exists
            or (res.z in set(fam) and all(s <= res.z for s in fam)))
        if not ok:
            return _mismatch("find result disagrees with the power-set oracle")
    return _emit_result(g, res, args.plain)


def _cmd_min(args) -> int:
    g = _load_graph(args.graph)
    q = _query(g, args)
    res, _ = find_minimal_fd(g, q)
    if args.oracle:
        fam = _family(g, q)
        ok = res.exists == bool(fam) and (
            not res.exists
            or (res.z in set(fam) and not any(s < res.z for s in fam)))
        if not ok:
            return _mismatch("min result disagrees with the power-set oracle")
    return _emit_result(g, res, args.plain)


def _cmd_enumerate(args) -> int:
    g = _load_graph(args.graph)
    q = _query(g, args)
    if args.limit is not None and args.limit < 0:
        raise InvalidQueryError("--limit must be nonnegative")
    emitted = []
    for z in enumerate_fd(g, q, limit=args.limit):
        emitted.append(z)
        if args.plain:
            print(",".join(g.names_of(z)))
        else:
            print(json.dumps(g.names_of(z)))
    if args.plain:
        print(f"count={len(emitted)}")
    else:
        print(json.dumps({"count": len(emitted)}))
    if args.oracle:
        fam = _family(g, q)
        fam_set = set(fam)
        ok = (len(emitted) == len(set(emitted))
              and set(emitted) <= fam_set
              and (args.limit is not None or set(emitted) == fam_set))
        if not ok:
            return _mismatch("enumeration disagrees with the power-set oracle")
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    x = frozenset(g.indices(_names(args.exposure)))
    y = frozenset(g.indices(_names(args.outcome)))
    z = frozenset(g.indices(_names(args.zset)))
    valid = verify_fd(g, x, y, z)
    if args.oracle:
        fam = _family(g, FdQuery(x, y, z, z))
        if valid != bool(fam):
            return _mismatch("verify result disagrees with the oracle")
    if args.plain:
        print("true" if valid else "false")
    else:
        print(json.dumps({"valid": valid}))
    return EXIT_OK


def _parse_assignment(g: Dag, text: str, what: str) -> dict:
    out = {}
    for part in _names(text):
        name, eq, value = part.partition("=")
        if not eq:
            raise InvalidQueryError(f"bad {what} assignment {part!r}, want NAME=STATE")
        try:
            out[g.index(name.strip())] = int(value)
        except ValueError:
            raise InvalidQueryError(
                f"bad {what} state {value!r} in {part!r}") from None
    if not out:
        raise InvalidQueryError(f"{what} assignment must be nonempty")
    return out


def _cmd_estimate(args) -> int:
    model = model_from_json(Path(args.model).read_text(encoding="utf-8"))
    g = model.dag
    x = _parse_assignment(g, args.do_assign, "exposure")
    y = _parse_assignment(g, args.of_assign, "outcome")
    z = frozenset(g.indices(_names(args.via)))
    p = fd_estimate(model, x, y, z)
    print(f"{p:.12g}" if args.plain else f'{{"estimate": {p:.12g}}}')
    return EXIT_OK


def _cmd_bench(args) -> int:
    doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if isinstance(doc, dict):
        doc = [doc]
    records = []
    for cfg in doc:
        try:
            config = ExperimentConfig(**cfg)
        except TypeError as err:
            raise FrontdoorError(f"bad benchmark config: {err}") from None
        records.extend(run_benchmark(config))
    if args.out is None:
        write_csv(records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    return EXIT_OK


_COMMANDS = {
    "find": _cmd_find,
    "min": _cmd_min,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "estimate": _cmd_estimate,
    "bench": _cmd_bench,
}


def main(argv: Iterable[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FrontdoorError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
