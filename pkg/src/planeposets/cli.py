"""Command-line interface: ``planeposets <subcommand> ...``.

Exit status: 0 success, 1 usage error, 2 verification failure, 3 guard violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import bruhat, hopf, tamari
from .poset import (
    DEFAULT_MAX_N,
    CardinalityGuardError,
    Permutation,
    PlanePoset,
    PlanePosetError,
    check_guard,
    is_plane_forest,
    iter_posets,
    level,
    parse_poset,
    parse_word,
    poset_from_json,
    psi,
    psi_inverse,
)
from .verify import IDENTITIES, UnknownIdentity, verify_all

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _poset_arg(text: str) -> PlanePoset:
    text = text.strip()
    if text.startswith("{"):
        return poset_from_json(text)
    return parse_poset(text)


def _cmd_enum(args, out):
    posets = iter_posets(args.n, args.limit)
    if args.forests:
        posets = (p for p in posets if is_plane_forest(p))
    if args.format == "json":
        out.write(json.dumps([p.to_json() for p in posets]) + "\n")
    else:
        out.write(" ".join(str(p) for p in posets) + "\n")


def _cmd_psi(args, out):
    out.write(json.dumps(psi(Permutation(parse_word(args.perm))).to_json()) + "\n")


def _cmd_psi_inv(args, out):
    out.write(str(psi_inverse(_poset_arg(args.poset))) + "\n")


def _cmd_order(args, out):
    p, q = _poset_arg(args.left), _poset_arg(args.right)
    if p == q:
        verdict = "EQ"
    elif bruhat.leq(p, q):
        verdict = "LE"
    elif bruhat.leq(q, p):
        verdict = "GE"
    else:
        verdict = "INCOMPARABLE"
    out.write(verdict + "\n")


def _cmd_covers(args, out):
    out.write(" ".join(str(c) for c in bruhat.covers(_poset_arg(args.poset))) + "\n")


def _cmd_level(args, out):
    out.write(f"{level(_poset_arg(args.poset))}\n")


def _cmd_hasse(args, out):
    graph = bruhat.hasse(args.n, forest_only=args.forests, max_n=args.limit)
    name = f"bruhat_{args.n}" + ("_forests" if args.forests else "")
    out.write(graph.to_dot(name) if args.dot else graph.to_json() + "\n")
    if args.figure:
        from .report import plot_hasse

        plot_hasse(graph, args.figure, title=name)


def _cmd_coproduct(args, out):
    p = _poset_arg(args.poset)
    t = hopf.delta_prime_q(p) if args.prime else hopf.delta_q(p)
    out.write(str(t) + "\n")


def _cmd_pair(args, out):
    out.write(str(hopf.pairing(_poset_arg(args.left), _poset_arg(args.right))) + "\n")


def _gram_row(job):
    n, index, q_value, modulus = job
    basis = list(iter_posets(n, None))
    p = basis[index]
    row = [hopf.pairing(p, r) for r in basis]
    if q_value is None:
        return [str(c) for c in row]
    return [c.evaluate(q_value, modulus) for c in row]


def _parse_eval(text: str) -> int:
    name, _, value = text.partition("=")
    if name.strip() != "q" or not value:
        raise UsageError(f"--eval expects q=VALUE, got {text!r}")
    return int(value)


def _cmd_gram(args, out):
    check_guard(args.n, args.limit)
    q_value = _parse_eval(args.eval) if args.eval else None
    if args.mod is not None and q_value is None:
        raise UsageError("--mod requires --eval")
    basis = list(iter_posets(args.n, args.limit))
    jobs = [(args.n, k, q_value, args.mod) for k in range(len(basis))]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_gram_row, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    else:
        rows = [_gram_row(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    labels = [str(p) for p in basis]
    writer.writerow([""] + labels)
    for label, row in zip(labels, rows):
        writer.writerow([label] + row)
    out.write(buf.getvalue())
    if args.rank:
        if args.mod is None:
            raise UsageError("--rank requires --eval and --mod")
        args.err.write(f"rank {hopf.rank_mod_p(rows, args.mod)}\n")
    if args.figure:
        from .report import plot_gram

        plot_gram(hopf.gram_matrix(args.n, args.limit, basis), labels, args.figure)


def _cmd_tamari(args, out):
    check_guard(args.n, args.limit)
    ok = tamari.check_tamari_isomorphism(args.n, args.limit)
    out.write(json.dumps({"n": args.n, "isomorphic": ok}) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_verify(args, out):
    check_guard(args.max_n, args.limit)
    names = list(IDENTITIES) if args.suite == "all" else [args.suite]
    reports = verify_all(args.max_n, names, jobs=args.jobs)
    payload = [r.to_dict() for r in reports]
    out.write(json.dumps(payload[0] if len(payload) == 1 else payload) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="planeposets", description="Plane posets, weak Bruhat order and q-deformed Hopf structures.")
    parser.add_argument("--unsafe-n", action="store_true",
                        help=f"lift the cardinality guard (default limit n <= {DEFAULT_MAX_N})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enum", help="list all plane posets of size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forests", action="store_true")
    p.add_argument("--format", choices=["words", "json"], default="words")
    p.set_defaults(func=_cmd_enum)

    p = sub.add_parser("psi", help="permutation word -> E-set JSON")
    p.add_argument("--perm", required=True)
    p.set_defaults(func=_cmd_psi)

    p = sub.add_parser("psi-inv", help="poset (word or E-set JSON) -> permutation word")
    p.add_argument("--poset", required=True)
    p.set_defaults(func=_cmd_psi_inv)

    p = sub.add_parser("order", help="compare two posets: LE, GE, EQ or INCOMPARABLE")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("covers", help="upper covers of a poset")
    p.add_argument("--poset", required=True)
    p.set_defaults(func=_cmd_covers)

    p = sub.add_parser("level", help="number of r-pairs")
    p.add_argument("--poset", required=True)
    p.set_defaults(func=_cmd_level)

    p = sub.add_parser("hasse", help="Hasse graph as DOT (--dot) or JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forests", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--figure", metavar="PATH", help="also render the graph to an image file")
    p.set_defaults(func=_cmd_hasse)

    p = sub.add_parser("coproduct", help="Delta_q (or Delta'_q with --prime), symbolic in q")
    p.add_argument("--poset", required=True)
    p.add_argument("--prime", action="store_true")
    p.set_defaults(func=_cmd_coproduct)

    p = sub.add_parser("pair", help="Hopf pairing of two posets")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("gram", help="pairing matrix as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eval", metavar="q=V")
    p.add_argument("--mod", type=int)
    p.add_argument("--rank", action="store_true", help="report the rank on stderr")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--figure", metavar="PATH", help="also render an exponent heatmap")
    p.set_defaults(func=_cmd_gram)

    p = sub.add_parser("tamari", help="check the forest order against the Tamari lattice")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_tamari)

    p = sub.add_parser("verify", help="exhaustive identity checks")
    p.add_argument("--suite", required=True, choices=["all", *IDENTITIES])
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    args.err = err
    args.limit = None if args.unsafe_n else DEFAULT_MAX_N
    if args.unsafe_n:
        err.write("warning: cardinality guard disabled\n")
    try:
        status = args.func(args, out)
    except CardinalityGuardError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_GUARD
    except (UsageError, PlanePosetError, UnknownIdentity, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK if status is None else status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
