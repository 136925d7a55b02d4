"""Command-line front end.

Exit codes: 0 success (for ``verify``, the input is a regular antilattice),
1 negative verdict or failed self-check, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import counting
from .config import AlgebraError, CapacityError, enum_max_order
from .core import (
    FLAT_ORDER,
    DoubleAlgebra,
    direct_product,
    flat_class,
    is_antilattice,
    is_band,
    is_quasilattice,
    is_rectangular,
    is_skew_lattice,
    make_flat,
)
from .enumeration import (
    congruences_bruteforce,
    default_jobs,
    enumerate_antilattices,
    find_nonregular_witness,
    subalgebras_bruteforce,
)
from .structure import FlatSignature, canonical_product, decompose, is_regular, regularity_certificate
from .varieties import SYMBOLS, membership_of_signature, parse_variety, variety_name


class CLIError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def load_algebra(path: str) -> DoubleAlgebra:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[min(exc.lineno, len(lines)) - 1] if lines else ""
        raise CLIError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {context}") from None
    try:
        return DoubleAlgebra.from_json(data)
    except (AlgebraError, TypeError) as exc:
        raise CLIError(f"{path}: invalid algebra: {exc}") from None


def _emit(args, text: str, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _require_regular(A: DoubleAlgebra):
    if not is_antilattice(A):
        raise CLIError("not an antilattice: a reduct is not a rectangular band", code=1)
    cert = regularity_certificate(A)
    if cert is not None:
        raise CLIError(
            f"not regular: {cert['relation']} is not a congruence of the {cert['operation']} "
            f"(x, y, z) = {tuple(cert['triple'])} on the {cert['side']} side",
            code=1,
        )


# --- commands -----------------------------------------------------------------

def cmd_verify(args) -> int:
    A = load_algebra(args.file)
    report = {
        "n": A.n,
        "join_band": is_band(A.join),
        "join_rectangular": is_rectangular(A.join),
        "meet_band": is_band(A.meet),
        "meet_rectangular": is_rectangular(A.meet),
    }
    anti = is_antilattice(A)
    both_bands = report["join_band"] and report["meet_band"]
    report["antilattice"] = anti
    report["quasilattice"] = is_quasilattice(A) if both_bands else False
    report["skew_lattice"] = is_skew_lattice(A) if both_bands else False
    cert = regularity_certificate(A) if anti else None
    report["regular"] = anti and cert is None
    report["certificate"] = cert
    fc = flat_class(A) if anti else None
    report["flat"] = None if fc is None else str(fc)

    lines = [
        f"order: {A.n}",
        f"join: band: {_yes(report['join_band'])}, rectangular: {_yes(report['join_rectangular'])}",
        f"meet: band: {_yes(report['meet_band'])}, rectangular: {_yes(report['meet_rectangular'])}",
        f"antilattice: {_yes(anti)}",
        f"quasilattice: {_yes(report['quasilattice'])}",
        f"skew lattice: {_yes(report['skew_lattice'])}",
        f"regular: {_yes(report['regular'])}" if anti else "regular: n/a",
    ]
    if cert is not None:
        x, y, z = cert["triple"]
        lines.append(
            f"  {cert['relation']} is not a congruence of the {cert['operation']}: "
            f"{x} ~ {y} but z = {z} separates them on the {cert['side']}"
        )
    lines.append(f"flat: {report['flat'] or 'no'}")
    _emit(args, "\n".join(lines), report)
    return 0 if report["regular"] else 1


def cmd_classify(args) -> int:
    A = load_algebra(args.file)
    _require_regular(A)
    sig = decompose(A).signature
    V = membership_of_signature(sig)
    payload = {"variety": variety_name(V), "signature": list(sig)}
    _emit(args, f"variety: {payload['variety']}\nsignature: {sig}", payload)
    return 0


def cmd_decompose(args) -> int:
    A = load_algebra(args.file)
    _require_regular(A)
    dec = decompose(A)
    payload = dec.to_json()
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "decomposition.json").write_text(
            json.dumps({"signature": payload["signature"], "iso": payload["iso"]}) + "\n"
        )
        for c, F in zip(FLAT_ORDER, dec.factors):
            (out / f"factor_{c}.json").write_text(F.dumps() + "\n")
    if args.format == "text":
        print(f"signature: {dec.signature}")
        for c, F in zip(FLAT_ORDER, dec.factors):
            print(f"{c}: {F.n} element{'s' if F.n != 1 else ''}")
    else:
        print(json.dumps(payload))
    return 0


def _parse_sig(text: str) -> FlatSignature:
    try:
        return FlatSignature.of(int(v) for v in text.split(","))
    except ValueError as exc:
        raise CLIError(f"bad signature {text!r}: {exc}") from None


def cmd_gen(args) -> int:
    try:
        if args.sig is not None:
            if args.n is not None or args.cls is not None:
                raise CLIError("give either N CLASS or --sig, not both")
            A = canonical_product(_parse_sig(args.sig))
        else:
            if args.n is None or args.cls is None:
                raise CLIError("gen needs N and CLASS (one of LL, LR, RL, RR) or --sig a,b,c,d")
            if args.cls not in {str(c) for c in FLAT_ORDER}:
                raise CLIError(f"unknown flat class {args.cls!r}; valid: LL, LR, RL, RR")
            A = make_flat(args.n, args.cls)
    except CapacityError as exc:
        raise CLIError(str(exc)) from None
    print(A.dumps())
    return 0


def cmd_product(args) -> int:
    A, B = load_algebra(args.file1), load_algebra(args.file2)
    try:
        print(direct_product(A, B).dumps())
    except CapacityError as exc:
        raise CLIError(str(exc)) from None
    return 0


def cmd_count(args) -> int:
    if args.n < 1:
        raise CLIError("n must be positive")
    if args.all:
        counts = counting.all_variety_counts(args.n)
        _emit(args, "\n".join(f"{s}: {v}" for s, v in counts.items()), counts)
        return 0
    if args.variety is not None:
        try:
            V = parse_variety(args.variety)
        except ValueError as exc:
            raise CLIError(str(exc)) from None
        value = counting.count_in_variety(V, args.n)
    else:
        value = counting.rho(args.n)
    _emit(args, str(value), value)
    return 0


def cmd_subalgebras(args) -> int:
    A = load_algebra(args.file)
    try:
        subs = subalgebras_bruteforce(A)
    except CapacityError as exc:
        raise CLIError(str(exc)) from None
    payload = {"count": len(subs)}
    lines = [f"subalgebras: {len(subs)}"]
    if is_antilattice(A) and is_regular(A):
        formula = counting.subalgebra_count(decompose(A).signature)
        payload["formula"] = formula
        lines.append(f"formula: {formula}")
    if args.list:
        payload["subalgebras"] = [list(s) for s in subs]
        lines += ["{" + ", ".join(map(str, s)) + "}" for s in subs]
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_congruences(args) -> int:
    A = load_algebra(args.file)
    try:
        congs = congruences_bruteforce(A)
    except CapacityError as exc:
        raise CLIError(str(exc)) from None
    payload = {"count": len(congs)}
    lines = [f"congruences: {len(congs)}"]
    if is_antilattice(A) and is_regular(A):
        formula = counting.congruence_count(decompose(A).signature)
        payload["formula"] = formula
        lines.append(f"formula: {formula}")
    if args.list:
        payload["congruences"] = [p.to_json() for p in congs]
        lines += [" | ".join(",".join(map(str, c)) for c in p.classes()) for p in congs]
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_enumerate(args) -> int:
    bound = args.max_order if args.max_order is not None else enum_max_order()
    try:
        report = enumerate_antilattices(args.n, max_order=bound, jobs=args.jobs, check=False)
    except CapacityError as exc:
        raise CLIError(str(exc)) from None
    expected = counting.rho(args.n)
    if args.json or args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(f"n: {report.n}")
        print(f"antilattices (labeled): {report.total_antilattices}")
        print(f"regular (labeled): {report.regular_labeled}")
        print(f"regular up to isomorphism: {report.regular_up_to_iso} (formula: {expected})")
        for sig, count in report.signatures.items():
            print(f"  {sig}: {count}")
        if report.witness_certificate is not None:
            cert = report.witness_certificate
            print(f"non-regular witness: {report.nonregular_witness.dumps()}")
            print(f"  {cert['relation']} vs {cert['operation']}, triple {tuple(cert['triple'])}, {cert['side']} side")
        else:
            print("non-regular witness: none")
    return 0 if report.regular_up_to_iso == expected else 1


def cmd_table(args) -> int:
    if args.max_n < 1:
        raise CLIError("MAXN must be positive")
    rows = counting.oeis_table(args.max_n)
    if args.json or args.format == "json":
        sys.stdout.write(counting.table_json(rows))
    else:
        sys.stdout.write(counting.format_table(rows))
    return 0


def cmd_witness(args) -> int:
    try:
        w = find_nonregular_witness(args.n, max_order=args.max_order)
    except CapacityError as exc:
        raise CLIError(str(exc)) from None
    if w is None:
        _emit(args, f"no non-regular antilattice of order {args.n}", None)
        return 1
    if args.format == "json":
        print(json.dumps(w.to_json()))
    else:
        cert = w.certificate
        print(w.algebra.dumps())
        print(f"{cert['relation']} is not a congruence of the {cert['operation']}: "
              f"triple {tuple(cert['triple'])}, {cert['side']} side")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antilattice", description="Finite antilattices: checks, decompositions, counts.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="axiom and regularity report; exit 0 iff regular antilattice")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("classify", help="least variety containing a regular antilattice")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", help="four-factor flat decomposition")
    s.add_argument("file")
    s.add_argument("-o", "--output", help="directory for decomposition.json and factor files")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("gen", help="flat algebra (N CLASS) or canonical product (--sig)")
    s.add_argument("n", nargs="?", type=int)
    s.add_argument("cls", nargs="?", metavar="CLASS")
    s.add_argument("--sig", help="signature a,b,c,d in LL,LR,RL,RR order")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("product", help="direct product of two algebras")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("count", help="rho(n) or a per-variety count")
    s.add_argument("n", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--variety", metavar="SYM", help="one of " + ", ".join(SYMBOLS))
    g.add_argument("--all", action="store_true", help="all sixteen varieties")
    s.set_defaults(func=cmd_count)

    for name, func, what in (
        ("subalgebras", cmd_subalgebras, "closed subsets"),
        ("congruences", cmd_congruences, "congruence partitions"),
    ):
        s = sub.add_parser(name, help=f"brute-force {what}")
        s.add_argument("file")
        s.add_argument("--list", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("enumerate", help="exhaustive census; exit 1 if it disagrees with rho(n)")
    s.add_argument("n", type=int)
    s.add_argument("--max-order", type=int)
    s.add_argument("--jobs", type=int, default=default_jobs())
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("table", help="counts table for n = 1..MAXN")
    s.add_argument("max_n", type=int, metavar="MAXN")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("witness", help="least non-regular antilattice of order N")
    s.add_argument("n", type=int)
    s.add_argument("--max-order", type=int)
    s.set_defaults(func=cmd_witness)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
