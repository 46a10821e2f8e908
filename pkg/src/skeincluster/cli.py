"""Command-line entry point.

One binary, subcommand style.  Computation commands print polynomials in the
text format (or the canonical JSON format under --json); verification
commands print a report and exit 1 on any failed check.  Randomised suites
take --rng-seed, defaulting to the SKEIN_CLUSTER_RNG_SEED environment
variable or a fixed constant, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import bratteli, chebyshev, cluster, crosscheck, skein, tl
from .laurent import format_poly, to_json_obj
from .report import Report

DEFAULT_SEED = 902140


def _seed(args) -> int:
    if args.rng_seed is not None:
        return args.rng_seed
    return int(os.environ.get("SKEIN_CLUSTER_RNG_SEED", DEFAULT_SEED))


def _emit_poly(p, as_json: bool, names=None) -> None:
    if as_json:
        print(json.dumps(to_json_obj(p), separators=(",", ":")))
    else:
        print(format_poly(p, names))


def _emit_report(report: Report, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_json_obj(), separators=(",", ":")))
    else:
        print(report.format_text())
    return 0 if report.passed else 1


def _parse_walk(text: str) -> list[int]:
    if not text.strip():
        return []
    return [int(part) for part in text.split(",")]


def _parse_matrix(text: str) -> cluster.ExchangeMatrix:
    rows = json.loads(text)
    return cluster.ExchangeMatrix.from_rows(rows)


def _cluster_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_cluster_mutate(args) -> int:
    matrix = _parse_matrix(args.matrix)
    if args.seed_vars is not None and args.seed_vars != matrix.n:
        raise ValueError(f"--seed-vars {args.seed_vars} does not match matrix size {matrix.n}")
    seed = cluster.initial_seed(matrix)
    seed = cluster.apply_walk(seed, _parse_walk(args.walk))
    names = _cluster_names(matrix.n)
    if args.json:
        payload = {
            "matrix": [list(row) for row in seed.matrix.rows],
            "cluster": [to_json_obj(entry) for entry in seed.cluster],
        }
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print("matrix:", json.dumps([list(row) for row in seed.matrix.rows]))
        for i, entry in enumerate(seed.cluster):
            print(f"x{i + 1} = {format_poly(entry, names)}")
    return 0


def _cmd_cluster_rank2(args) -> int:
    seq = cluster.rank2_sequence(args.b, args.c, args.count)
    names = ("x1", "x2")
    for i, entry in enumerate(seq):
        if args.json:
            print(json.dumps(to_json_obj(entry), separators=(",", ":")))
        else:
            print(f"x{i + 1} = {format_poly(entry, names)}")
    return 0


def _cmd_cluster_check(args) -> int:
    report = cluster.rank2_phenomenon_check(args.b, args.c, args.depth, require_positive=args.positivity)
    return _emit_report(report, args.json)


def _cmd_jones_torus(args) -> int:
    chain = skein.torus_chain(max(args.n, 1))
    if args.all:
        for n in range(args.n + 1):
            if args.json:
                print(json.dumps({"n": n, "value": to_json_obj(chain[n])}, separators=(",", ":")))
            else:
                print(f"V_{n} = {format_poly(chain[n])}")
    else:
        _emit_poly(chain[args.n], args.json)
    return 0


def _cmd_jones_braid(args) -> int:
    letters = tuple(int(part) for part in args.word.split(",")) if args.word.strip() else ()
    word = tl.BraidWord(args.strands, letters)
    if args.method == "bracket":
        value = tl.jones_via_bracket(word)
    else:
        value = tl.trace_formula_jones(word, kappa=args.kappa, delta_sign=args.delta_sign)
    _emit_poly(value, args.json)
    return 0


def _cmd_chebyshev(args) -> int:
    _emit_poly(chebyshev.chebyshev_T(args.n), args.json, names=("x",))
    return 0


def _cmd_basis(args) -> int:
    lo, _, hi = args.window.partition(":")
    window = (int(lo), int(hi) if hi else int(lo))
    elements = chebyshev.basis_elements(window, args.p_max, args.q_max, args.n_max)
    for element in elements:
        _emit_poly(element, args.json)
    return 0


def _cmd_bratteli_dims(args) -> int:
    kind = "truncated-pascal" if args.kind == "tl" else args.kind
    diagram = bratteli.build_diagram(kind, args.levels)
    if args.json:
        print(json.dumps(bratteli.to_json_obj(diagram), separators=(",", ":")))
    else:
        for level in range(diagram.levels):
            dims = bratteli.dimension_vector(diagram, level)
            print(f"level {level}: size {diagram.sizes[level]}, dims {list(dims)}")
    return 0


def _verify_reports(args) -> list[Report]:
    name = args.suite
    if name == "skein-chain":
        return [skein.verify_skein_chain(args.max)]
    if name == "correspondence":
        return [skein.verify_correspondence()]
    if name == "oracle":
        return [crosscheck.oracle_agreement(args.n_max)]
    if name == "markov":
        rng = random.Random(_seed(args))
        return [tl.markov_suite(args.trials, args.max_strands, args.max_length, rng)]
    if name == "catalan":
        return [bratteli.catalan_check(args.levels)]
    if name == "inclusion":
        return [bratteli.inclusion_check(args.levels)]
    if name == "all":
        rng = random.Random(_seed(args))
        reports = [
            skein.verify_skein_chain(10),
            skein.verify_correspondence(),
            crosscheck.oracle_agreement(8),
            tl.markov_suite(100, 4, 6, rng),
            bratteli.catalan_check(12),
            bratteli.inclusion_check(8),
        ]
        for b, c in ((2, 2), (1, 4)):
            reports.append(cluster.rank2_phenomenon_check(b, c, 12, require_positive=True))
        return reports
    raise ValueError(f"unknown verification suite {name!r}")


def _cmd_verify(args) -> int:
    reports = _verify_reports(args)
    if args.json:
        print(json.dumps([r.to_json_obj() for r in reports], separators=(",", ":")))
    else:
        for report in reports:
            print(report.format_text())
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skeincluster")
    top = parser.add_subparsers(dest="command", required=True)

    p_cluster = top.add_parser("cluster", help="seed mutation and rank-2 recurrences")
    sub = p_cluster.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("mutate", help="mutate the initial seed along a walk")
    p.add_argument("--matrix", required=True, help="row-major JSON integer matrix")
    p.add_argument("--walk", default="", help="comma-separated 1-based directions")
    p.add_argument("--seed-vars", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_cluster_mutate)
    p = sub.add_parser("rank2", help="rank-2 cluster variable sequence")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_cluster_rank2)
    p = sub.add_parser("check", help="Laurent phenomenon check on a rank-2 seed")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--positivity", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_cluster_check)

    p_jones = top.add_parser("jones", help="Jones polynomials")
    sub = p_jones.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("torus", help="skein recursion along the (2, n) torus family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all", action="store_true", help="print V_0..V_n instead of V_n")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_jones_torus)
    p = sub.add_parser("braid", help="Jones value of a braid closure")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", required=True, help="comma-separated signed generator indices")
    p.add_argument(
        "--method",
        choices=("bracket", "eq25"),
        default="bracket",
        help="bracket state sum, or the literal trace-formula evaluation (eq25)",
    )
    p.add_argument("--kappa", type=int, default=0)
    p.add_argument("--delta-sign", type=int, choices=(-1, 1), default=-1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_jones_braid)

    p = top.add_parser("chebyshev", help="Chebyshev polynomial of the first kind")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_chebyshev)

    p = top.add_parser("basis", help="rank-2 basis elements expanded in x1, x2")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--window", default="1:1", help="inclusive 1-based index range lo:hi")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_basis)

    p_bratteli = top.add_parser("bratteli", help="Bratteli diagrams and path counts")
    sub = p_bratteli.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("dims", help="level sizes and dimension vectors")
    p.add_argument("--kind", choices=("pascal", "tl", "s11"), required=True)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_bratteli_dims)

    p_verify = top.add_parser("verify", help="verification suites")
    sub = p_verify.add_subparsers(dest="suite", required=True)
    p = sub.add_parser("skein-chain")
    p.add_argument("--max", type=int, default=10)
    p = sub.add_parser("correspondence")
    p = sub.add_parser("oracle")
    p.add_argument("--n-max", type=int, default=8)
    p = sub.add_parser("markov")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-strands", type=int, default=4)
    p.add_argument("--max-length", type=int, default=6)
    p = sub.add_parser("catalan")
    p.add_argument("--levels", type=int, default=12)
    p = sub.add_parser("inclusion")
    p.add_argument("--levels", type=int, default=8)
    p = sub.add_parser("all")
    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--rng-seed", type=int, default=None)
        sp.set_defaults(handler=_cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, IndexError, ArithmeticError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
