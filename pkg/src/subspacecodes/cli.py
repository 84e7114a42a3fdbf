"""Command-line interface: ``subspacecodes <command> ...``.

Exit status: 0 success, 1 negative decision (not isometric, not conjugate,
a failed check), 2 error or refusal.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .action import NotAnAutomorphism, automorphism_group
from .codes import analyze, desarguesian_spread, lift, orbit_code
from .field import FieldError, default_modulus, field_make
from .fileio import (
    FormatError,
    parse_code,
    parse_generators,
    parse_rank_code,
    serialize_code,
    serialize_generators,
)
from .isometry import cyclic_conjugate, isometric
from .linalg import DEFAULT_CAP, CapExceeded, SingularMatrix
from .poly import PolyGF
from .rcf import rational_canonical_form
from .search import default_jobs
from .verify import verify_paper

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _jobs(args) -> int:
    return default_jobs() if args.jobs is None else args.jobs


def _first_generator(path: str):
    gens = parse_generators(_read(path))
    if not gens:
        raise UsageError(f"{path} holds no generators")
    return gens[0]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# --- subcommands ---------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.kind == "spread":
        if args.p is None or args.k is None or args.n is None:
            raise UsageError("construct spread needs --p, --k and --n")
        F = field_make(args.p)
        tail = _int_list(args.poly) if args.poly else list(default_modulus(args.p, args.k))
        if len(tail) != args.k or any(not 0 <= c < args.p for c in tail):
            raise UsageError(f"--poly needs {args.k} coefficients in [0, {args.p})")
        C = desarguesian_spread(F, args.k, args.n, PolyGF.monic_from_tail(tail, F))
    elif args.kind == "orbit":
        if not args.base or not args.gens:
            raise UsageError("construct orbit needs --base and --gens")
        base = parse_code(_read(args.base))
        if len(base) != 1:
            raise UsageError(f"{args.base} must hold exactly one codeword, found {len(base)}")
        gens = parse_generators(_read(args.gens))
        (U,) = base.words
        if gens and (gens[0].field != U.field or gens[0].n != U.n):
            raise UsageError("generators and base codeword live in different spaces")
        C = orbit_code(U, gens)
    else:
        if not args.rank:
            raise UsageError("construct lift needs --rank")
        C = lift(parse_rank_code(_read(args.rank)))
    _emit(serialize_code(C), args.output)
    return OK


def cmd_analyze(args) -> int:
    rep = analyze(parse_code(_read(args.code)))
    print("\n".join(rep.lines()))
    return OK


def cmd_aut(args) -> int:
    C = parse_code(_read(args.code))
    mode = "semilinear" if args.semilinear else "linear"
    gens = parse_generators(_read(args.gens)) if args.gens else None
    if args.strategy == "verify" and not gens:
        raise UsageError("--strategy verify needs --gens")
    try:
        G = automorphism_group(C, mode, args.strategy, gens, cap=args.cap, jobs=_jobs(args))
    except NotAnAutomorphism as exc:
        print(f"not an automorphism: {exc}")
        return NEGATIVE
    print(f"mode: {mode}")
    print(f"strategy: {args.strategy}")
    print(f"order: {G.order}")
    if G.maximal:
        print(f"candidates: {G.notes['candidates']}")
        print("maximal: yes")
    else:
        print("maximal: not established (group generated by the given maps)")
    if args.emit:
        _emit(serialize_generators(list(G), C.field, C.n), args.emit)
    return OK


def cmd_isometric(args) -> int:
    C1, C2 = parse_code(_read(args.a)), parse_code(_read(args.b))
    mode = "semilinear" if args.semilinear else "linear"
    w = isometric(C1, C2, mode, cap=args.cap, jobs=_jobs(args))
    if w.found is None:
        print(w.certificate)
        return ERROR
    if not w.found:
        print(f"not isometric: {w.certificate}")
        return NEGATIVE
    print(f"isometric ({mode}): {w.certificate}")
    sys.stdout.write(serialize_generators([w.map]))
    return OK


def cmd_rcf(args) -> int:
    g = _first_generator(args.matrix)
    rep = rational_canonical_form(g.A)
    print("invariant factors: " + ", ".join(str(f) for f in rep.invariant_factors))
    print("elementary divisors: " + ", ".join(f"({f})^{e}" for f, e in rep.elementary_divisors))
    print(f"minimal polynomial: {rep.minimal_polynomial}")
    print(f"characteristic polynomial: {rep.characteristic_polynomial()}")
    print("rcf:")
    print(rep.rcf_matrix)
    return OK


def cmd_conjugate(args) -> int:
    g1, g2 = _first_generator(args.g1), _first_generator(args.g2)
    if cyclic_conjugate(g1.A, g2.A):
        print("conjugate: the cyclic groups are conjugate in GL_n")
        return OK
    print("not conjugate")
    return NEGATIVE


def cmd_verify_paper(args) -> int:
    checks = verify_paper(args.cap, _jobs(args), args.full_scan)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return OK if not failed else NEGATIVE


# --- parser --------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subspacecodes", description="Subspace codes, their automorphisms and isometries.")
    parser.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="refuse searches larger than this (default %(default)s)")
    parser.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: all cores)")
    # the same flags after the subcommand name; SUPPRESS keeps the global value unless given
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_positive, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=_positive, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a spread, orbit code or lifted code")
    p.add_argument("kind", choices=["spread", "orbit", "lift"])
    p.add_argument("--p", type=int, help="field characteristic (spread)")
    p.add_argument("--k", type=int, help="block size (spread)")
    p.add_argument("--n", type=int, help="ambient dimension (spread)")
    p.add_argument("--poly", help="c_0,...,c_{k-1} of the monic irreducible (spread)")
    p.add_argument("--base", help=".sc file with the base codeword (orbit)")
    p.add_argument("--gens", help=".gl generator file (orbit)")
    p.add_argument("--rank", help=".rm rank-metric code (lift)")
    p.add_argument("-o", "--output", help="write the code here instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", parents=[common], help="size, dimensions and distance distributions")
    p.add_argument("code")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("aut", parents=[common], help="automorphism group order")
    p.add_argument("code")
    p.add_argument("--semilinear", action="store_true")
    p.add_argument("--strategy", choices=["brute", "verify"], default="brute")
    p.add_argument("--gens", help=".gl generators (needed by --strategy verify)")
    p.add_argument("--emit", help="write every group element to this .gl file")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("isometric", parents=[common], help="search for a map carrying A onto B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--semilinear", action="store_true")
    p.set_defaults(func=cmd_isometric)

    p = sub.add_parser("rcf", parents=[common], help="rational canonical form of a matrix")
    p.add_argument("--matrix", required=True, help=".gl file; its first generator is used")
    p.set_defaults(func=cmd_rcf)

    p = sub.add_parser("conjugate", parents=[common], help="conjugacy of two cyclic subgroups of GL_n")
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("verify-paper", parents=[common], help="reproduce the worked examples")
    p.add_argument("--full-scan", action="store_true", help="also repeat the brute searches without pruning")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return ERROR
    except (UsageError, FormatError, FieldError, SingularMatrix, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
