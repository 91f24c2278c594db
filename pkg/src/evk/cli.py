"""Command-line entry point: ``evk analyze | generate | bounds | verify-paper``.

Exit codes: 0 ok, 1 unparsable input, 2 input outside the theory's
preconditions, 3 internal inconsistency (a computed quantity broke a proven
relation, or the Perron iteration failed on a valid input).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import hypergraph as hg
from . import regression
from .eigenvariety import analyze, cyclic_index, enumerate_ps0
from .errors import BadParameters, NoConvergence, ParseError, PreconditionError, TheoremViolation
from .spectral import eigen_residual, eigenvector_sweep, perron_vector, reconstruct_eigenvector
from .tensor import SymTensorSupport, is_weakly_irreducible, parse_tensor

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_VIOLATION = 0, 1, 2, 3


def load_input(path: str) -> tuple[SymTensorSupport, hg.UniformHypergraph | None]:
    """Read a tensor or hypergraph file, deciding by its header line."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    header = next((ln.split()[0] for ln in text.splitlines()
                   if ln.strip() and not ln.lstrip().startswith("#")), "")
    if header == "tensor":
        return parse_tensor(text), None
    if header == "hypergraph":
        G = hg.parse_hypergraph(text)
        if not G.edges:
            raise PreconditionError("hypergraph has no edges")
        return hg.adjacency_tensor(G), G
    raise ParseError(f"{path}: first line must start with 'tensor' or 'hypergraph'")


def _cplx(z: complex) -> list[float]:
    return [z.real, z.imag]


def analysis_report(A: SymTensorSupport, perron: bool = False, enumerate_cap: int | None = None,
                    tol: float = 1e-8) -> dict:
    irreducible = is_weakly_irreducible(A)
    es = analyze(A)
    ell = cyclic_index(A)
    report = {
        "m": es.m,
        "n": es.n,
        "weaklyIrreducible": irreducible,
        "cyclicIndex": ell,
        "invariantDivisorsZm": list(es.zm_divisors),
        "smithDivisorsZm": list(es.zm_divisors_all),
        "unitDivisors": es.unit_divisor_count,
        "freeRank": es.free_rank,
        "stabilizingIndex": str(es.stabilizing_index),
        "stabilizingDimension": es.stabilizing_dimension,
        "generators": [list(g.phases) for g, _ in es.generators],
        "generatorOrders": [o for _, o in es.generators],
        "decomposition": es.decomposition(),
    }
    if enumerate_cap is not None:
        report["ps0"] = [list(p.phases) for p in enumerate_ps0(es, enumerate_cap)]
    if perron:
        pr = perron_vector(A)
        report["perron"] = {
            "rho": pr.rho,
            "v": pr.v.tolist(),
            "residual": pr.residual,
            "iterations": pr.iterations,
        }
        sweep = eigenvector_sweep(A, es, pr, ell, tol=tol, cap=enumerate_cap or 10**6)
        report["eigenvectors"] = {
            "count": sweep.count,
            "accepted": sweep.accepted,
            "distinct": sweep.distinct_accepted,
            "maxResidual": sweep.max_residual,
            "cosetResiduals": [{"j": j, "residual": r} for j, r in sweep.coset_residuals],
        }
        if enumerate_cap is not None:
            vecs = []
            for p in enumerate_ps0(es, enumerate_cap):
                pair = reconstruct_eigenvector(p, 0, 1, pr)
                vecs.append({
                    "phases": list(p.phases),
                    "lambda": _cplx(pair.lam),
                    "y": [_cplx(z) for z in pair.y],
                    "residual": eigen_residual(A, pair.y, pair.lam),
                })
            report["eigenvectors"]["vectors"] = vecs
        if sweep.distinct_accepted != es.stabilizing_index:
            raise TheoremViolation(
                f"{sweep.distinct_accepted} eigenvectors pass tol={tol}, expected s(A)={es.stabilizing_index}"
            )
    return report


def format_table(report: dict) -> str:
    lines = [
        f"m = {report['m']}, n = {report['n']}, weakly irreducible: {report['weaklyIrreducible']}",
        f"cyclic index          {report['cyclicIndex']}",
        f"Z_m divisors          {report['smithDivisorsZm']}",
        f"unit divisors         {report['unitDivisors']}",
        f"free rank             {report['freeRank']}",
        f"PS_0                  {report['decomposition']}",
        f"stabilizing index     {report['stabilizingIndex']}",
        f"stabilizing dimension {report['stabilizingDimension']}",
    ]
    for g, o in zip(report["generators"], report["generatorOrders"]):
        lines.append(f"  generator (order {o}): {tuple(g)}")
    if "perron" in report:
        p = report["perron"]
        lines.append(f"rho = {p['rho']:.12g}  (residual {p['residual']:.2e}, {p['iterations']} iterations)")
        ev = report["eigenvectors"]
        lines.append(f"eigenvectors: {ev['distinct']} of {ev['count']} accepted, max residual {ev['maxResidual']:.2e}")
        for c in ev["cosetResiduals"]:
            lines.append(f"  coset j={c['j']}: residual {c['residual']:.2e}")
    if "ps0" in report:
        lines.append(f"PS_0 elements ({len(report['ps0'])}):")
        lines += [f"  {tuple(p)}" for p in report["ps0"]]
    return "\n".join(lines)


def _parse_int_list(vals: list[str], k: int, family: str) -> list[int]:
    if len(vals) != k:
        raise BadParameters(f"{family} takes {k} integer parameters, got {len(vals)}")
    try:
        return [int(v) for v in vals]
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc


def generate_family(family: str, params: list[str]) -> hg.UniformHypergraph:
    if family == "complete":
        n, m = _parse_int_list(params, 2, family)
        return hg.complete(n, m)
    if family == "hyperpath":
        n, m = _parse_int_list(params, 2, family)
        return hg.hyperpath(n, m)
    if family == "squid":
        m, t = _parse_int_list(params, 2, family)
        return hg.squid(m, t)
    if family == "wheel":
        (n,) = _parse_int_list(params, 1, family)
        return hg.wheel(n)
    if family == "power":
        # power N M U-V [U-V ...]
        if len(params) < 3:
            raise BadParameters("power takes N M followed by graph edges written U-V")
        n, m = _parse_int_list(params[:2], 2, family)
        try:
            edges = [tuple(int(t) for t in e.split("-")) for e in params[2:]]
        except ValueError as exc:
            raise BadParameters(str(exc)) from exc
        if any(len(e) != 2 for e in edges):
            raise BadParameters("graph edges must be written U-V")
        return hg.power(n, edges, m)
    raise BadParameters(f"unknown family {family!r}")


def bounds_dict(rep: hg.BoundReport) -> dict:
    return {
        "m": rep.m,
        "n": rep.n,
        "edges": rep.n_edges,
        "stabilizingIndex": str(rep.stabilizing_index),
        "stabilizingDimension": rep.stabilizing_dimension,
        "pathCoverNumber": rep.path_cover_number,
        "matchingNumber": rep.matching_number,
        "maxPathLength": rep.max_path_length,
        "cored": rep.cored,
        "rows": [
            {"name": r.name, "quantity": r.quantity, "value": str(r.value), "relation": r.relation,
             "bound": str(r.bound), "holds": r.holds, "tight": r.tight}
            for r in rep.rows
        ],
    }


def format_bounds(rep: hg.BoundReport) -> str:
    lines = [
        f"m = {rep.m}, n = {rep.n}, |E| = {rep.n_edges}, cored: {rep.cored}",
        f"s = {rep.stabilizing_index}, gamma = {rep.stabilizing_dimension}, "
        f"pc = {rep.path_cover_number}, mu = {rep.matching_number}, d = {rep.max_path_length}",
    ]
    for r in rep.rows:
        flag = "ok" if r.holds else "VIOLATED"
        tight = " (tight)" if r.tight and r.holds else ""
        lines.append(f"  {r.name:<13} {r.quantity:<6} {r.value} {r.relation} {r.bound}  {flag}{tight}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    A, _ = load_input(args.path)
    report = analysis_report(A, perron=args.perron, enumerate_cap=args.enumerate, tol=args.tol)
    print(json.dumps(report, indent=2, ensure_ascii=False) if args.json else format_table(report))
    return EXIT_OK


def cmd_generate(args) -> int:
    text = hg.format_hypergraph(generate_family(args.family, args.params))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    _, G = load_input(args.path)
    if G is None:
        raise PreconditionError("bounds needs a hypergraph file")
    try:
        rep = hg.bound_report(G)
    except TheoremViolation as exc:
        rep = getattr(exc, "report", None)
        if rep is not None:
            print(json.dumps(bounds_dict(rep), indent=2) if args.json else format_bounds(rep))
        raise
    print(json.dumps(bounds_dict(rep), indent=2) if args.json else format_bounds(rep))
    return EXIT_OK


def cmd_verify(args) -> int:
    return EXIT_OK if regression.run_all() else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evk", description="Eigenvariety structure of symmetric tensors and uniform hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="stabilizing index, dimension and cyclic index of a tensor or hypergraph")
    a.add_argument("path")
    a.add_argument("--perron", action="store_true", help="also compute the Perron vector and check every eigenvector")
    a.add_argument("--enumerate", nargs="?", type=int, const=10**5, default=None, metavar="CAP",
                   help="list PS_0 (and the eigenvectors with --perron), refusing if s(A) > CAP")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--table", action="store_true", help="plain-text report (default)")
    a.add_argument("--tol", type=float, default=1e-8, help="eigenpair residual tolerance")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="write a hypergraph family: complete N M | hyperpath N M | squid M T | wheel N | power N M U-V ...")
    g.add_argument("family", choices=["complete", "power", "hyperpath", "squid", "wheel"])
    g.add_argument("params", nargs="*")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bounds", help="compare s and gamma with the path-cover, matching and longest-path bounds")
    b.add_argument("path")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify-paper", help="run the built-in regression table")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (TheoremViolation, NoConvergence) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
