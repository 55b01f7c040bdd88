"""``evolab analyze|lattice|check|verify``.

Exit codes: 0 success or property holds, 1 property fails or a verify
suite has a hard failure, 2 unreadable input, 3 characteristic two,
4 enumeration cap exceeded, 5 enumeration needs a finite field,
6 structural precondition failed, 7 any other library error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .algebra import EvolutionAlgebra
from .documents import (
    AlgebraDocument,
    VerdictDocument,
    field_to_json,
    load_document,
    scalar_to_json,
    witness_to_json,
)
from .errors import (
    CharacteristicTwoError,
    EnumerationCapExceeded,
    EvolabError,
    ParseError,
    StructuralPreconditionFailed,
    UnsupportedOverInfiniteField,
)
from .field import FieldSpec
from .lattice import (
    Labels,
    Lattice,
    build_lattice,
    emit_hasse_dot,
    is_distributive,
    is_j_algebra,
    is_lower_semimodular,
    is_modular,
    is_upper_semimodular,
    quasi_ideal_mask,
)
from .render import format_subspace, parse_subspace
from .structure import analyze, is_supersolvable
from .subalgebras import enumerate_brute_force, enumerate_structural, enumerate_subalgebras, is_quasi_ideal
from .verify import Suite, run_suite

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_CHAR_TWO = 3
EXIT_CAP = 4
EXIT_INFINITE = 5
EXIT_PRECONDITION = 6
EXIT_OTHER = 7

_ERROR_CODES = (
    (ParseError, EXIT_PARSE),
    (CharacteristicTwoError, EXIT_CHAR_TWO),
    (EnumerationCapExceeded, EXIT_CAP),
    (UnsupportedOverInfiniteField, EXIT_INFINITE),
    (StructuralPreconditionFailed, EXIT_PRECONDITION),
)

METHODS = {
    "brute": enumerate_brute_force,
    "structural": enumerate_structural,
    "auto": enumerate_subalgebras,
}

LATTICE_CHECKS = {
    "distributive": is_distributive,
    "modular": is_modular,
    "usemi": is_upper_semimodular,
    "lsemi": is_lower_semimodular,
    "jalgebra": is_j_algebra,
}


def _field_arg(text: str) -> FieldSpec:
    if text.upper() in ("Q", "QQ"):
        return FieldSpec.rationals()
    try:
        return FieldSpec.gf(int(text.upper().removeprefix("GF").strip("():")))
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be Q or a prime such as 5 or GF5, got {text!r}")


def _load(args) -> tuple:
    if args.file == "-":
        doc = AlgebraDocument.parse(sys.stdin.read())
    else:
        try:
            doc = load_document(args.file)
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
    a = doc.algebra()
    if getattr(args, "field", None) is not None:
        a = a.over(args.field)
    return doc, a


def _subalgebras(a: EvolutionAlgebra, method: str):
    return METHODS[method](a)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- analyze ------------------------------------------------------------------

def _lattice_summary(lat: Lattice, labels) -> tuple:
    props, witnesses = {}, {}
    for name, check in LATTICE_CHECKS.items():
        v = check(lat)
        props[name] = v.holds
        if not v.holds:
            witnesses[name] = witness_to_json(v.witness, labels)
    props["chain"] = lat.is_chain()
    summary = {"nodes": len(lat), "covers": len(lat.hasse), "properties": props}
    return summary, witnesses


def build_verdict(doc: AlgebraDocument, a: EvolutionAlgebra, method: Optional[str] = "auto") -> VerdictDocument:
    sv = analyze(a)
    labels = doc.basis_labels
    flags = {
        "nilpotent": sv.nilpotent,
        "solvable": sv.solvable,
        "max_solvability_index": sv.max_solvability_index,
        "max_nilpotency_index": sv.max_nilpotency_index,
        "supersolvable": sv.supersolvable,
        "degenerate": sv.degenerate,
    }
    indices = {"nilpotency": sv.nilpotency_index, "solvability": sv.solvability_index}
    series = {
        "derived": list(a.derived_series.dims),
        "lower_central": list(a.lower_central_series.dims),
        "derived_basic": [a.is_basic_ideal(t) for t in a.derived_series.terms],
        "annihilator": a.annihilator.dim,
        "E2": a.E2.dim,
    }
    nf = None
    if sv.normal_form is not None:
        ch = sv.normal_form.change
        nf = {
            "m": sv.normal_form.m,
            "order": [i + 1 for i in ch.order],
            "scales": [scalar_to_json(a.field, c) for c in ch.scales],
            "matrix": AlgebraDocument.from_algebra(sv.normal_form.algebra).to_json()["matrix"],
        }
    pairs = None if sv.lambda_pairs is None else [[i + 1, j + 1] for i, j in sv.lambda_pairs]
    notes = list(sv.notes)
    witnesses = {}
    counts = lattice = None
    if method is not None:
        try:
            subs = _subalgebras(a, method)
        except UnsupportedOverInfiniteField as exc:
            notes.append(f"subalgebra lattice skipped: {exc}")
        else:
            counts = {str(d): c for d, c in sorted(subs.counts_by_dim().items())}
            lat = build_lattice(a, subs)
            lattice, witnesses = _lattice_summary(lat, labels)
            lattice["method"] = subs.method.value
    if not sv.supersolvable:
        witnesses["supersolvable"] = witness_to_json(is_supersolvable(a).witness)
    return VerdictDocument(
        name=doc.name,
        field=a.field,
        dim=a.n,
        flags=flags,
        indices=indices,
        series=series,
        normal_form=nf,
        lambda_pairs=pairs,
        subalgebra_counts=counts,
        lattice=lattice,
        witnesses=witnesses,
        notes=notes,
    )


def cmd_analyze(args) -> int:
    doc, a = _load(args)
    method = None if args.no_lattice else args.method
    sys.stdout.write(build_verdict(doc, a, method).render())
    return EXIT_OK


# -- lattice ------------------------------------------------------------------

def lattice_json(lat: Lattice, a: EvolutionAlgebra, method: str, labels=None) -> dict:
    return {
        "schema": 1,
        "field": field_to_json(a.field),
        "dim": a.n,
        "method": method,
        "nodes": [{"id": i, "dim": u.dim, "basis": format_subspace(u, labels)} for i, u in enumerate(lat.nodes)],
        "covers": [list(e) for e in lat.hasse],
    }


def cmd_lattice(args) -> int:
    doc, a = _load(args)
    subs = _subalgebras(a, args.method)
    lat = build_lattice(a, subs)
    if args.emit == "dot":
        if doc.basis_labels:
            lat.names = tuple(format_subspace(u, doc.basis_labels) for u in lat.nodes)
        sys.stdout.write(emit_hasse_dot(lat, Labels(args.labels)))
    else:
        sys.stdout.write(_dump(lattice_json(lat, a, subs.method.value, doc.basis_labels)))
    return EXIT_OK


# -- check --------------------------------------------------------------------

def _check_quasi_ideals(args, a: EvolutionAlgebra, labels) -> tuple:
    subs = _subalgebras(a, args.method)
    if args.subspace:
        u = parse_subspace(a.field, args.subspace, a.n)
        if not a.is_subalgebra(u):
            raise ParseError(f"{args.subspace} is not a subalgebra")
        v = is_quasi_ideal(a, u, subs)
        w = None if v.holds else {"U": format_subspace(u, labels), "V": format_subspace(v.witness, labels)}
        return v.holds, w
    lat = build_lattice(a, subs)
    mask = quasi_ideal_mask(lat)
    w = {"quasi_ideals": [format_subspace(u, labels) for u, ok in zip(lat.nodes, mask) if ok]}
    if not mask.all():
        u = lat.nodes[int((~mask).argmax())]
        w.update(U=format_subspace(u, labels), V=format_subspace(is_quasi_ideal(a, u, subs).witness, labels))
    return bool(mask.all()), w


def cmd_check(args) -> int:
    doc, a = _load(args)
    labels = doc.basis_labels
    prop = args.property
    if prop == "supersolvable":
        v = is_supersolvable(a)
        holds = v.holds
        witness = {"flag": witness_to_json(v.witness, labels)} if holds else {"stuck_quotient": witness_to_json(v.witness)}
    elif prop == "quasi-ideals":
        holds, witness = _check_quasi_ideals(args, a, labels)
    else:
        lat = build_lattice(a, _subalgebras(a, args.method))
        v = LATTICE_CHECKS[prop](lat)
        holds, witness = v.holds, (None if v.holds else witness_to_json(v.witness, labels))
    print(f"{prop}: {'true' if holds else 'false'}")
    if witness is not None and (args.witness or not holds):
        sys.stdout.write(_dump({"witness": witness}))
    return EXIT_OK if holds else EXIT_FALSE


# -- verify -------------------------------------------------------------------

def cmd_verify(args) -> int:
    suites = list(Suite) if args.suite == "all" else [Suite(args.suite)]
    ok = True
    for s in suites:
        report = run_suite(s, seed=args.seed, count=args.count)
        print("\n".join(report.lines()))
        ok &= report.ok
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evolab", description="Evolution algebras and their subalgebra lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("file", help="algebra JSON document, or - for standard input")
        sp.add_argument("--field", type=_field_arg, default=None, help="reinterpret the matrix over Q or GF(p)")

    def with_method(sp, default="auto"):
        sp.add_argument("--method", choices=sorted(METHODS), default=default)

    sp = sub.add_parser("analyze", help="structural flags, series and lattice summary as JSON")
    with_file(sp)
    with_method(sp)
    sp.add_argument("--no-lattice", action="store_true", help="skip subalgebra enumeration")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("lattice", help="emit the subalgebra lattice")
    with_file(sp)
    with_method(sp)
    sp.add_argument("--emit", choices=("dot", "json"), default="dot")
    sp.add_argument("--labels", choices=[x.value for x in Labels], default=Labels.DIMS.value)
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("check", help="decide one property; exit 0 if it holds, 1 if not")
    with_file(sp)
    with_method(sp)
    sp.add_argument(
        "--property",
        required=True,
        choices=[*LATTICE_CHECKS, "supersolvable", "quasi-ideals"],
    )
    sp.add_argument("--subspace", help="with quasi-ideals: test only this subalgebra, e.g. 'e1+e2;e4'")
    sp.add_argument("--witness", action="store_true", help="print the witness also when the property holds")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verify", help="run property suites and golden examples")
    sp.add_argument("--suite", choices=[s.value for s in Suite] + ["all"], default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=None, help="samples per property suite")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EvolabError as exc:
        for kind, code in _ERROR_CODES:
            if isinstance(exc, kind):
                break
        else:
            code = EXIT_OTHER
        print(f"evolab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
