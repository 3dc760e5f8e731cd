"""Command-line interface.

Exit codes: 0 success, 2 malformed input, 3 input that is well formed but
mathematically invalid, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .complexes import BigradedComplex, require_valid
from .documents import (ClassReport, DiagramSummary, H1Report, KnotInvariants,
                        ResultDocument, SurgeryReport, emit, load_knot_document,
                        parse_matrix_document, read_json)
from .errors import DomainError, InternalInvariantError, SchemaError
from .heegaard_h1 import IntersectionMatrix, h1_group, hf_dimension_check
from .homology import DvrResult
from .knots import build, euler_characteristic, genus, hfk_hat, hfk_minus, is_fibered
from .modules import d_invariant, plus_and_hat_views
from .oneone import cfk_from_diagram, count_bigons, diagram_from_json, enumerate_generators
from .surgery import (SurgeryError, large_surgery_result, spinc_representatives,
                      surgery_homology)

EXIT_OK, EXIT_SCHEMA, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4


# ---------------------------------------------------------------------------
# commands (each returns a ResultDocument)

def knot_invariants(c: BigradedComplex, truncation: Optional[int] = None) -> KnotInvariants:
    return KnotInvariants(hfk_hat(c), hfk_minus(c, truncation), genus(c), is_fibered(c),
                          euler_characteristic(c))


def cmd_hfk(spec_path, truncation: Optional[int] = None) -> ResultDocument:
    spec, opts = load_knot_document(spec_path)
    c = require_valid(build(spec), "knot complex")
    return ResultDocument("hfk", invariants=knot_invariants(c, truncation or opts.truncation))


def _class_report(r: int, res: DvrResult) -> ClassReport:
    m = res.module
    return ClassReport(r, m, d_invariant(m), m.is_torsion_free,
                       plus_and_hat_views(m).hat_dimension, res.stable, res.truncation)


def surgery_report(c: BigradedComplex, n: int, verify: bool = False,
                   truncation: Optional[int] = None, window_slack: int = 0) -> SurgeryReport:
    """HF⁻ of n-surgery with the large-surgery shortcut when it applies."""
    if n == 0:
        raise SurgeryError("n = 0: the surgered manifold has b_1 = 1, which is not supported")
    g = genus(c)
    large = n >= 1 and n >= 2 * g - 1
    if large:
        results = {r: large_surgery_result(c, n, r, truncation) for r in spinc_representatives(n)}
        method = "large_surgery"
    else:
        results = surgery_homology(c, n, window_slack, truncation).classes
        method = "mapping_cone"
    verified = None
    if verify:
        # an independent path: the cone (for the shortcut) or a wider cone window
        other = surgery_homology(c, n, window_slack + (0 if large else 2), truncation).modules
        verified = other == {r: res.module for r, res in results.items()}
        if not verified:
            raise InternalInvariantError(f"{n}-surgery: large-surgery and mapping-cone results differ")
    classes = tuple(_class_report(r, results[r]) for r in sorted(results))
    order = h1_group(IntersectionMatrix(((n,),))).order
    if order != len(classes):
        raise InternalInvariantError(f"{len(classes)} spin^c classes but |H_1| = {order}")
    check = hf_dimension_check(IntersectionMatrix(((n,),)), [k.hat_dimension for k in classes])
    if not check:
        raise InternalInvariantError("; ".join(check.problems))
    return SurgeryReport(n, method, classes, all(k.l_space for k in classes), order, verified)


def cmd_surgery(spec_path, n: int, verify: bool = False, truncation: Optional[int] = None,
                window_slack: Optional[int] = None) -> ResultDocument:
    spec, opts = load_knot_document(spec_path)
    c = require_valid(build(spec), "knot complex")
    rep = surgery_report(c, n, verify or opts.verify, truncation or opts.truncation,
                         opts.window_slack if window_slack is None else window_slack)
    return ResultDocument("surgery", surgery=rep)


def cmd_diagram(path, verify: bool = False, truncation: Optional[int] = None) -> ResultDocument:
    d = diagram_from_json(read_json(path))
    gens = enumerate_generators(d)
    bigons = tuple(count_bigons(d, verify))
    c = cfk_from_diagram(d)
    return ResultDocument("diagram",
                          invariants=knot_invariants(c, truncation),
                          diagram=DiagramSummary(tuple(g.label for g in gens), bigons, c))


def cmd_h1(path) -> ResultDocument:
    rows = parse_matrix_document(read_json(path))
    m = IntersectionMatrix.from_rows(rows)
    return ResultDocument("h1", h1=H1Report(m.entries, h1_group(m)))


# ---------------------------------------------------------------------------
# table output

def _module_text(m, var: str) -> str:
    return m.describe(var)


def render_table(doc: ResultDocument) -> str:
    out = []
    if doc.diagram is not None:
        dg = doc.diagram
        out.append(f"generators ({dg.generator_count}): {', '.join(map(str, dg.generators))}")
        out.append("bigons:")
        for b in dg.bigons:
            out.append(f"  {b.from_gen} -> {b.to_gen}  n_w={b.n_w} n_z={b.n_z}")
        out.append("complex:")
        out += ["  " + line for line in dg.complex.describe().splitlines()]
    if doc.invariants is not None:
        inv = doc.invariants
        out.append("HFK-hat (m, s): dim")
        for (m, s), v in sorted(inv.hfk_hat.dims.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            out.append(f"  ({m}, {s}): {v}")
        out.append(f"HFK-minus: {_module_text(inv.hfk_minus, 'U')}")
        out.append(f"genus: {inv.genus}")
        out.append(f"fibered: {str(inv.fibered).lower()}")
        out.append(f"Alexander polynomial: {inv.alexander}")
    if doc.surgery is not None:
        s = doc.surgery
        out.append(f"HF-minus of {s.n}-surgery ({s.method}, gradings relative per class)")
        for k in s.classes:
            flag = "  L-space class" if k.l_space else ""
            out.append(f"  [{k.spin_c}]: {_module_text(k.module, 'U')}  "
                       f"hat dim {k.hat_dimension}  N={k.truncation}{flag}")
        out.append(f"|H_1| = {s.h1_order}")
        out.append(f"L-space: {str(s.l_space).lower()}")
        if s.verified is not None:
            out.append(f"cross-check: {str(s.verified).lower()}")
    if doc.h1 is not None:
        out.append(f"H_1 = {doc.h1.group.describe()}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# entry point

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotfloer",
                                description="Knot Floer complexes and HF⁻ of integer surgeries.")
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json",
                   help="emit a JSON result document")
    g.add_argument("--table", dest="fmt", action="store_const", const="table",
                   help="emit a human-readable report (default)")
    fmt.add_argument("--truncation", type=int, default=None, metavar="N",
                     help="initial truncation order W^N for module computations")
    sub = p.add_subparsers(dest="command", required=True)
    h = sub.add_parser("hfk", parents=[fmt], help="knot invariants from a knot specification")
    h.add_argument("spec")
    s = sub.add_parser("surgery", parents=[fmt], help="HF⁻ of n-surgery on a knot")
    s.add_argument("spec")
    s.add_argument("--n", type=int, required=True, help="surgery coefficient (nonzero)")
    s.add_argument("--verify", action="store_true", help="cross-check with a second method")
    s.add_argument("--window-slack", type=int, default=None, metavar="K",
                   help="widen the mapping-cone window by K columns on each side")
    d = sub.add_parser("diagram", parents=[fmt], help="complex and invariants of a (1,1) diagram")
    d.add_argument("file")
    d.add_argument("--verify", action="store_true", help="recount bigons in a doubled window")
    m = sub.add_parser("h1", parents=[fmt], help="first homology from an intersection matrix")
    m.add_argument("file")
    c = sub.add_parser("corpus", help="run the regression corpus of worked examples")
    c.add_argument("--json", action="store_true", help="emit results as JSON lines")
    return p


def run(args: argparse.Namespace) -> ResultDocument:
    if args.command == "hfk":
        return cmd_hfk(args.spec, args.truncation)
    if args.command == "surgery":
        if args.window_slack is not None and args.window_slack < 0:
            raise SchemaError("--window-slack must be nonnegative")
        return cmd_surgery(args.spec, args.n, args.verify, args.truncation, args.window_slack)
    if args.command == "diagram":
        return cmd_diagram(args.file, args.verify, args.truncation)
    return cmd_h1(args.file)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if getattr(args, "truncation", None) is not None and args.truncation < 1:
            raise SchemaError("--truncation must be positive")
        if args.command == "corpus":
            from .corpus import run_corpus
            return run_corpus(json_lines=args.json)
        doc = run(args)
        print(emit(doc) if args.fmt == "json" else render_table(doc))
        return EXIT_OK
    except SchemaError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except DomainError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except InternalInvariantError as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
