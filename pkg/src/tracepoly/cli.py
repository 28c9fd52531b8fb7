"""Command-line interface: ``tracepoly <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 cap exceeded, 4 math domain error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .characters import char_table, dim_hook, partitions
from .group_algebra import gram_matrix, kernel_generator
from .gue import mc_report, wick_moment
from .perm import Perm, enumerate_partial_perms
from .scalar import LaurentScalar, eval_at_q, parse_q, rank, sym_rank_psd
from .textio import ParseError, element_to_json, format_element, parse_element
from .trace_algebra import hermite_transform, inner_product_q, multiply, state_phi

EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_DOMAIN = 1, 2, 3, 4


class CapExceeded(Exception):
    pass


def _q(text: str):
    try:
        return parse_q(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--q must be 'symbolic' or a rational p/r, got {text!r}") from None


def _cap(degree: int, cap: int, what: str) -> None:
    if degree > cap:
        raise CapExceeded(f"{what} has degree {degree}, above the cap {cap}")


def _element(args, text: str):
    x = parse_element(text, args.basis)
    _cap(x.max_degree(), args.max_degree, "element")
    return x


def _scalar_out(val, q0, fmt: str) -> str:
    if q0 is not None:
        val = eval_at_q(val, q0)
        return json.dumps({"value": str(val)}) if fmt == "json" else str(val)
    if fmt == "json":
        return json.dumps(val.to_json())
    return val.to_text()


def _element_out(x, q0, fmt: str) -> str:
    if q0 is not None:
        x = x.map_coeffs(lambda c: LaurentScalar.const(eval_at_q(c, q0)))
    if fmt == "json":
        return json.dumps(element_to_json(x))
    return format_element(x)


def parse_vectors(text: str, n: int | None = None) -> list[list[Fraction]]:
    """``e1,e2`` or ``[1 1/2],e2``: unit vectors or explicit coordinates."""
    items = [t for t in re.split(r",(?![^\[]*\])", text.strip()) if t.strip()] if text.strip() else []
    vecs = []
    for it in items:
        it = it.strip()
        m = re.fullmatch(r"e(\d+)", it)
        if m:
            k = int(m.group(1))
            if k < 1:
                raise ParseError("unit vectors start at e1")
            vecs.append([Fraction(int(i == k)) for i in range(1, k + 1)])
        elif it.startswith("[") and it.endswith("]"):
            try:
                vecs.append([Fraction(x) for x in it[1:-1].replace(",", " ").split()])
            except ValueError:
                raise ParseError(f"bad vector {it!r}") from None
        else:
            raise ParseError(f"bad vector {it!r}")
    if n is not None and len(vecs) != n:
        raise ParseError(f"need {n} vectors, got {len(vecs)}")
    return vecs


def cmd_expand(args) -> str:
    x = _element(args, args.element)
    res = hermite_transform("to_I" if args.to == "I" else "to_T", x)
    return _element_out(res, _q(args.q), args.format)


def cmd_mul(args) -> str:
    x, y = _element(args, args.x), _element(args, args.y)
    _cap(x.max_degree() + y.max_degree(), args.max_degree, "product")
    return _element_out(multiply(x, y, args.route), _q(args.q), args.format)


def cmd_state(args) -> str:
    return _scalar_out(state_phi(_element(args, args.element)), _q(args.q), args.format)


def cmd_inner(args) -> str:
    return _scalar_out(inner_product_q(_element(args, args.x), _element(args, args.y)), _q(args.q), args.format)


def cmd_chartable(args) -> str:
    _cap(args.n, args.max_degree, "character table")
    t = char_table(args.n)
    if args.format == "json":
        return json.dumps({"irreps": [list(l) for l in t.irreps], "classes": [list(c) for c in t.classes],
                           "values": [[t.values[(l, c)] for c in t.classes] for l in t.irreps]})
    return t.to_tsv()


def _rational_q(args) -> Fraction:
    q0 = _q(args.q)
    if q0 is None:
        raise ParseError("this command needs a rational --q")
    return q0


def cmd_gram(args) -> str:
    _cap(args.n, min(args.max_degree, 4), "Gram matrix")
    q0 = _rational_q(args)
    G = gram_matrix(args.n, q0)
    if args.format == "tsv":
        return G.to_tsv()
    rk, psd = sym_rank_psd(G)
    rep = {"n": args.n, "q": str(q0), "size": G.rows, "rank": rk, "psd": psd}
    if args.format == "json":
        return json.dumps(rep)
    return "\n".join(f"{k}\t{v}" for k, v in rep.items())


def cmd_kernel(args) -> str:
    _cap(args.n, min(args.max_degree, 4), "kernel computation")
    N = args.N
    if N < 1:
        raise ParseError("--N must be a positive integer")
    q0 = Fraction(1 if args.sign == "-" else -1, N)
    rk, psd = sym_rank_psd(gram_matrix(args.n, q0))
    size = len(gram_matrix(args.n, 0).entries)
    expected = sum(dim_hook(l) ** 2 for l in partitions(args.n + 1) if len(l) > N)
    from .group_algebra import coordinates
    gens = [kernel_generator(p, args.sign) for p in enumerate_partial_perms(args.n, N + 1)]
    span = rank(coordinates(gens, q0, args.n)) if gens else 0
    rep = {"n": args.n, "N": N, "q": str(q0), "gram_rank": rk, "kernel_dim": size - rk,
           "expected_kernel_dim": expected, "generator_span_dim": span, "psd": psd}
    if args.format == "json":
        return json.dumps(rep)
    return "\n".join(f"{k}\t{v}" for k, v in rep.items())


def cmd_wick(args) -> str:
    try:
        alpha = Perm.parse(args.perm)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    _cap(alpha.n, args.max_degree, "permutation")
    vecs = parse_vectors(args.vecs, alpha.n)
    val = wick_moment(alpha, vecs, args.N)
    if args.format == "json":
        return json.dumps({"perm": alpha.to_text(), "N": args.N, "value": str(val)})
    return str(val)


def cmd_mc(args) -> str:
    try:
        alpha = Perm.parse(args.perm)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    _cap(alpha.n, args.max_degree, "permutation")
    vecs = parse_vectors(args.vecs, alpha.n)
    return json.dumps(mc_report(alpha, vecs, args.N, args.samples, args.seed))


def cmd_verify(args) -> tuple[str, int]:
    from .verify import run_suite
    caps = {"max_degree": args.max_degree, "seed": args.seed, "samples": args.samples, "dim": args.dim}
    if args.N is not None:
        caps["N"] = args.N
    q0 = _q(args.q)
    if q0 is not None:
        caps["q"] = q0
    if args.suite in ("fock",):
        caps["max_degree"] = min(args.max_degree, 3)
    rep = run_suite(args.suite, **caps)
    failed = any(c["status"] != "pass" for c in rep["checks"])
    if args.format == "text":
        lines = [f"{c['status'].upper():5s} {c['name']}" + (f"  ({c['detail']})" if c["detail"] else "")
                 for c in rep["checks"]]
        return "\n".join(lines), EXIT_FAIL if failed else 0
    return json.dumps(rep, indent=2), EXIT_FAIL if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="symbolic", help="'symbolic' or a rational p/r")
    common.add_argument("--N", type=int, default=None, help="matrix size, q = 1/N")
    common.add_argument("--dim", type=int, default=2, help="dimension of the vector space")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100_000)
    # None means the per-command default, resolved in main(); parent actions are
    # shared between subparsers, so set_defaults there would leak across commands
    common.add_argument("--max-degree", type=int, default=None, help="degree cap (default 6, verify 4)")
    common.add_argument("--format", choices=("json", "tsv", "text"), default=None,
                        help="output format (default text, verify and mc json)")
    common.add_argument("--basis", choices=("T", "I"), default="T", help="basis of input elements")

    p = argparse.ArgumentParser(prog="tracepoly", description="Hermite trace polynomials indexed by permutations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="expand I[x] in T (--to I) or T[x] in I (--to T)")
    s.add_argument("--to", choices=("I", "T"), required=True)
    s.add_argument("element")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("mul", parents=[common], help="multiply two elements")
    s.add_argument("--route", choices=("T", "I"), default="T")
    s.add_argument("x")
    s.add_argument("y")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("state", parents=[common], help="evaluate the state")
    s.add_argument("element")
    s.set_defaults(func=cmd_state)

    s = sub.add_parser("inner", parents=[common], help="q-inner product <x, y>")
    s.add_argument("x")
    s.add_argument("y")
    s.set_defaults(func=cmd_inner)

    s = sub.add_parser("chartable", parents=[common], help="character table of S_0(n)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_chartable)

    s = sub.add_parser("gram", parents=[common], help="Gram matrix of chi_q on C[S_0(n)]")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("kernel", parents=[common], help="kernel of chi_{+-1/N} on C[S_0(n)]")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--sign", choices=("+", "-"), default="-", help="'-' for q = 1/N, '+' for q = -1/N")
    s.set_defaults(func=cmd_kernel)

    s = sub.add_parser("wick", parents=[common], help="exact Wick moment")
    s.add_argument("--perm", required=True)
    s.add_argument("--vecs", default="")
    s.set_defaults(func=cmd_wick)

    s = sub.add_parser("mc", parents=[common], help="Monte Carlo estimate against the Wick moment")
    s.add_argument("--perm", required=True)
    s.add_argument("--vecs", default="")
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("verify", parents=[common], help="run property suites")
    s.add_argument("--suite", choices=("perm", "algebra", "characters", "fock", "oracle", "mc", "all"), default="all")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    if args.format is None:
        args.format = "json" if args.command in ("verify", "mc") else "text"
    if args.max_degree is None:
        args.max_degree = 4 if args.command == "verify" else 6
    if args.command in ("wick", "mc", "kernel") and args.N is None:
        print("error: --N is required", file=sys.stderr)
        return EXIT_PARSE
    try:
        out = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ZeroDivisionError as exc:
        print(f"math domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    code = 0
    if isinstance(out, tuple):
        out, code = out
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
