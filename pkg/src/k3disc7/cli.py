"""Command-line front end: ``k3disc7 <command> [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__

SCHEMA = "1"


def _emit(obj, args) -> None:
    if isinstance(obj, dict):
        obj = {"schema": SCHEMA, **obj}
    indent = 2 if args.pretty else None
    print(json.dumps(obj, indent=indent))


def _load_json(text: str, what: str, parser: argparse.ArgumentParser):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        parser.error(f"malformed JSON for {what}: {exc}")


# ---------------------------------------------------------------- commands

def cmd_steiner(args, parser) -> int:
    from .golay import build_steiner_system

    octads = build_steiner_system().octads
    if args.json:
        _emit({"count": len(octads), "octads": [str(o).split() for o in octads]}, args)
    else:
        for o in octads:
            print(o)
    return 0


def cmd_graph(args, parser) -> int:
    from .ns_embed import build_coxeter_graph

    g = build_coxeter_graph()
    dot = g.to_dot()
    if args.dot_file:
        with open(args.dot_file, "w") as fh:
            fh.write(dot)
    if args.dot:
        sys.stdout.write(dot)
        return 0
    data = g.to_json()
    _emit({"nodes": len(g.vertices), "edges": len(g.edges), **data, "dot": dot}, args)
    return 0


def cmd_faces(args, parser) -> int:
    from .faces import enumerate_face_roots

    faces = [f for f in enumerate_face_roots() if args.type is None or f.rtype == args.type]
    _emit({"count": len(faces), "faces": [f.to_json() for f in faces]}, args)
    return 0


def cmd_symmetry(args, parser) -> int:
    from .faces import enumerate_face_roots
    from .symmetry import element_order_profile, generating_set, graph_automorphism_group, orbits_on_faces

    group = graph_automorphism_group()
    data = orbits_on_faces()
    faces = enumerate_face_roots()
    orbits = []
    for orbit in data.orbits:
        stab = data.stabilizers[orbit[0]]
        orbits.append({
            "type": faces[orbit[0]].rtype,
            "size": len(orbit),
            "representative": faces[orbit[0]].name,
            "stabilizer_order": len(stab),
            "stabilizer_element_orders": {str(k): v for k, v in element_order_profile(stab).items()},
        })
    gens = generating_set(list(group))
    _emit({"order": len(group), "orbits": orbits, "generators": [g.cycles() for g in gens]}, args)
    return 0


def cmd_fibration(args, parser) -> int:
    from .faces import get_face
    from .fibrations import FibrationError, build_model, inversion_isometry

    try:
        face = get_face(args.face)
        model = build_model(face, args.zero_section)
    except (KeyError, FibrationError) as exc:
        parser.error(str(exc))
    inv = inversion_isometry(model)
    _emit({**model.to_json(), "involution": inv.matrix.to_json()}, args)
    return 0


def _parse_vector(obj, parser) -> list[int]:
    from .lorentzian import IIVector
    from .ns_embed import build_ns_lattice

    ns = build_ns_lattice()
    try:
        if isinstance(obj, dict):
            return ns.coords_of(IIVector.from_json(obj).coords)
        if isinstance(obj, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
            return obj
    except (KeyError, TypeError, ValueError) as exc:
        parser.error(f"bad vector: {exc}")
    parser.error("vector must be a list of 20 integers or an object {\"m\", \"n\", \"lambda\"}")


def cmd_reduce(args, parser) -> int:
    from .reduction import ReductionError, reduce_vector

    v = _parse_vector(_load_json(args.vector, "--vector", parser), parser)
    try:
        word, terminal, _ = reduce_vector(v)
    except ReductionError as exc:
        parser.error(str(exc))
    _emit({**word.to_json(), "terminal": list(terminal)}, args)
    return 0


def cmd_decompose(args, parser) -> int:
    from .reduction import NotInGroupError, ReductionError, as_array, decompose, evaluate_word, letter_json, parse_letter, recompose

    if (args.word is None) == (args.matrix is None):
        parser.error("give exactly one of --word and --matrix")
    if args.word is not None:
        raw = _load_json(args.word, "--word", parser)
        if not isinstance(raw, list):
            parser.error("--word must be a JSON list")
        try:
            letters = [parse_letter(x) for x in raw]
        except (KeyError, ValueError) as exc:
            parser.error(f"bad word: {exc}")
        phi = evaluate_word(letters)
        extra = {"word": [letter_json(x) for x in letters]}
    else:
        raw = _load_json(args.matrix, "--matrix", parser)
        try:
            phi = as_array(raw)
        except (TypeError, ValueError) as exc:
            parser.error(f"bad matrix: {exc}")
        extra = {}
    try:
        word = decompose(phi)
    except NotInGroupError as exc:
        _emit({"error": str(exc), "witness": list(exc.witness)}, args)
        return 1
    except ReductionError as exc:
        parser.error(str(exc))
    ok = bool((recompose(word) == phi).all())
    _emit({**extra, **word.to_json(), "recomposed": ok}, args)
    return 0 if ok else 1


def _print_table(report: dict) -> None:
    print("Faces of D'")
    print(f"  {'type':<6}{'count':>6}{'norm':>8}{'<w,r>':>7}")
    for row in report["table"]:
        print(f"  {row['type']:<6}{row['count']:>6}{row['norm']:>8}{row['pairing']:>7}")
    print()
    for c in report["criteria"]:
        status = "PASS" if c["pass"] else "FAIL"
        print(f"  [{status}] {c['id']:>2}. {c['title']} ({len(c['claims'])} claims)")
    print()
    for c in report["checks"]:
        if not c["pass"]:
            print(f"  failed {c['claim']}: expected {c['expected']}, computed {c['computed']}")
    print("all checks pass" if report["pass"] else "FAILING: " + ", ".join(report["failing"]))


def cmd_verify(args, parser) -> int:
    from .verify import run_report

    report = run_report(n_words=args.words, seed=args.seed)
    if args.json or args.pretty:
        _emit(report, args)
    else:
        _print_table(report)
    if not report["pass"]:
        print("failing claims: " + " ".join(report["failing"]), file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--pretty", action="store_true", help="indented JSON")

    p = argparse.ArgumentParser(prog="k3disc7", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("steiner", parents=[common], help="list the 759 octads")
    s.set_defaults(func=cmd_steiner, parser=s)

    s = sub.add_parser("graph", parents=[common], help="Coxeter's graph as JSON adjacency and DOT")
    s.add_argument("--dot", action="store_true", help="print only the DOT source")
    s.add_argument("--dot-file", metavar="PATH", help="also write the DOT source to PATH")
    s.set_defaults(func=cmd_graph, parser=s)

    s = sub.add_parser("faces", parents=[common], help="face roots of D'")
    s.add_argument("--type", choices=["A6A1", "A7", "D7", "E7"])
    s.set_defaults(func=cmd_faces, parser=s)

    s = sub.add_parser("symmetry", parents=[common], help="graph automorphisms and face orbits")
    s.set_defaults(func=cmd_symmetry, parser=s)

    s = sub.add_parser("fibration", parents=[common], help="elliptic fibration and inversion of a face")
    s.add_argument("--face", required=True, help="face index or name, e.g. E7p.1")
    s.add_argument("--zero-section", type=int, default=None, help="curve number of the zero section")
    s.set_defaults(func=cmd_fibration, parser=s)

    s = sub.add_parser("reduce", parents=[common], help="reduce a vector into D'")
    s.add_argument("--vector", required=True, help="JSON: 20 basis coordinates or {\"m\",\"n\",\"lambda\"}")
    s.set_defaults(func=cmd_reduce, parser=s)

    s = sub.add_parser("decompose", parents=[common], help="decompose an isometry")
    s.add_argument("--word", help="JSON list of face ids and cycle strings, composed left to right")
    s.add_argument("--matrix", help="JSON 20x20 integer matrix")
    s.set_defaults(func=cmd_decompose, parser=s)

    s = sub.add_parser("verify", parents=[common], help="check all claims")
    s.add_argument("--seed", type=int, default=0, help="seed of the random word suite")
    s.add_argument("--words", type=int, default=1000, help="number of random words")
    s.set_defaults(func=cmd_verify, parser=s)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, args.parser)


if __name__ == "__main__":
    sys.exit(main())
