"""Command-line front end.

Subcommands:
  catalog-build   build and persist the group catalog
  check           membership verdict for one group against one spec
  sweep           catalog-wide property sweeps (regularity, saturation,
                  formation-laws, vstar-idempotence)
  graph           DOT export of the non-member pair graph
  sn              supernatural-number calculator

Exit codes: 0 all assertions hold, 1 usage or I/O error, 2 a theorem-backed
property was violated.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .config import limits
from .constructions import (
    CatalogConfig,
    alternating,
    build_catalog,
    cyclic,
    dihedral,
    field_action_group,
    quaternion,
    read_catalog,
    symmetric,
    write_catalog,
)
from .classes import (
    ClassSpec,
    SOLUBLE,
    VStarClass,
    is_member,
    parse_spec,
    residual,
)
from .errors import FormatioError, TheoremViolation
from .groups import FiniteGroup, group_from_json, quotient
from .regularity import (
    graph_to_dot,
    non_class_graph,
    regularity_sweep,
    report_to_text,
)
from .structure import chief_series, frattini, minimal_normal_subgroups
from .supernatural import (
    decode_supernatural,
    divides,
    encode_function,
    format_exponent_function,
    format_supernatural,
    gcd,
    lcm,
    parse_exponent_function,
    parse_supernatural,
)

_BUILTIN_GROUPS = {
    "S3": lambda: symmetric(3), "S4": lambda: symmetric(4),
    "S5": lambda: symmetric(5), "A4": lambda: alternating(4),
    "A5": lambda: alternating(5), "Q8": quaternion,
}


def _resolve_group(token: str, catalog_dir: str | None) -> FiniteGroup:
    path = Path(token)
    if path.suffix == ".json" and path.exists():
        return group_from_json(path.read_text(encoding="utf-8"))
    if token in _BUILTIN_GROUPS:
        return _BUILTIN_GROUPS[token]()
    m = re.fullmatch(r"Z(\d+)", token)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"D(\d+)", token)
    if m:
        return dihedral(int(m.group(1)))
    m = re.fullmatch(r"E\((\d+)\|(\d+)\)", token)
    if m:
        return field_action_group(int(m.group(1)), int(m.group(2)))
    if catalog_dir:
        for entry in read_catalog(catalog_dir):
            if entry.group.name == token:
                return entry.group
    raise FormatioError(f"cannot resolve group {token!r}; give a builder name "
                        f"(S3, A4, Z12, D6, Q8, E(4|3), ...), a .json file, or "
                        f"a catalog name with --catalog")


def _catalog_groups(catalog_dir: str | None,
                    max_order: int | None) -> list[FiniteGroup]:
    if catalog_dir and (Path(catalog_dir) / "manifest.json").exists():
        entries = read_catalog(catalog_dir)
    else:
        config = CatalogConfig(max_order=max_order) if max_order else CatalogConfig()
        entries = build_catalog(config)
    groups = [e.group for e in entries]
    if max_order:
        groups = [G for G in groups if G.order <= max_order]
    return groups


def _emit(args, payload: dict, text: str) -> None:
    rendered = (json.dumps(payload, indent=1, sort_keys=True) + "\n"
                if args.format == "json" else text)
    if getattr(args, "out", None):
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_catalog_build(args) -> int:
    out_dir = Path(args.out or args.catalog or "catalog")
    manifest = out_dir / "manifest.json"
    if manifest.exists() and not args.force:
        try:
            read_catalog(out_dir)
        except Exception:
            sys.stderr.write(
                f"existing catalog at {out_dir} is unreadable; use --force\n")
            return 1
    entries = build_catalog(CatalogConfig(max_order=args.max_order))
    path = write_catalog(entries, out_dir)
    sys.stdout.write(f"wrote {len(entries)} groups to {path}\n")
    return 0


def _explain_failure(G: FiniteGroup, spec: ClassSpec) -> dict:
    from .arith import is_prime
    from .classes import SupersolubleClass, ProductClass, ExponentFormationClass
    from .classes import VSupersolubleClass
    from .subnormality import vstar_obstruction, vu_obstruction

    detail: dict = {}
    if isinstance(spec, SupersolubleClass):
        series = chief_series(G)
        detail["violating_chief_factor_orders"] = [
            o for o in series.factor_orders if not is_prime(o)]
    elif isinstance(spec, VStarClass):
        stuck = vstar_obstruction(G, spec.inner)
        if stuck is not None:
            detail["stuck_cyclic_subgroup"] = list(stuck.elems)
    elif isinstance(spec, VSupersolubleClass):
        stuck = vu_obstruction(G)
        if stuck is not None:
            detail["stuck_cyclic_subgroup"] = list(stuck.elems)
    elif isinstance(spec, ProductClass):
        R = residual(G, spec.outer)
        detail["residual"] = list(R.elems)
    elif isinstance(spec, ExponentFormationClass):
        if not is_member(G, SOLUBLE):
            detail["reason"] = "not soluble"
    return detail


def cmd_check(args) -> int:
    G = _resolve_group(args.group, args.catalog)
    spec = parse_spec(args.spec)
    verdict = is_member(G, spec)
    payload = {"group": G.name, "order": G.order, "spec": spec.text(),
               "member": verdict}
    if not verdict:
        payload["detail"] = _explain_failure(G, spec)
    text = (f"{G.name} (order {G.order}) "
            f"{'IS' if verdict else 'is NOT'} in {spec.text()}\n")
    if not verdict and payload.get("detail"):
        text += f"  detail: {payload['detail']}\n"
    _emit(args, payload, text)
    return 0


def _saturation_rows(groups, spec):
    rows = []
    for G in groups:
        Q, _ = quotient(G, frattini(G))
        quotient_member = is_member(Q, spec)
        member = is_member(G, spec)
        rows.append({"group": G.name, "order": G.order,
                     "frattini_quotient_member": quotient_member,
                     "member": member,
                     "ok": member or not quotient_member})
    return rows


def _formation_law_rows(groups, spec):
    from .structure import all_subgroups

    rows = []
    for G in groups:
        mins = minimal_normal_subgroups(G)
        for i, N1 in enumerate(mins):
            if not spec.formation:
                break
            for N2 in mins[:i]:
                Q1, _ = quotient(G, N1)
                Q2, _ = quotient(G, N2)
                if not (is_member(Q1, spec) and is_member(Q2, spec)):
                    continue
                # distinct minimal normals intersect trivially
                ok = is_member(G, spec)
                rows.append({"group": G.name, "law": "subdirect",
                             "n1": N1.order, "n2": N2.order, "ok": ok})
        if spec.hereditary and is_member(G, spec):
            ok = all(is_member(H.as_group(), spec)
                     for H in all_subgroups(G).subgroups)
            rows.append({"group": G.name, "law": "hereditary", "ok": ok})
    return rows


def _vstar_idempotence_rows(groups, spec):
    rows = []
    once = VStarClass(spec)
    twice = VStarClass(once)
    for G in groups:
        a = is_member(G, once)
        b = is_member(G, twice)
        rows.append({"group": G.name, "vstar": a, "vstar_vstar": b, "ok": a == b})
    return rows


def _regularity_worker(payload):
    """Runs in a pool worker: rebuild the group, compute one sweep row."""
    table, name, spec_text = payload
    from .groups import _trusted_group
    from .regularity import regularity_row

    G = _trusted_group(tuple(tuple(r) for r in table), name)
    return regularity_row(G, parse_spec(spec_text))


def _parallel_regularity(groups, spec, workers: int):
    from concurrent.futures import ProcessPoolExecutor

    from .regularity import RegularityReport, is_theorem_backed_regular

    payloads = [(G.table, G.name, spec.text()) for G in groups]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(_regularity_worker, payloads))
    rows = tuple(sorted(rows, key=lambda r: (r.order, r.group_name)))
    report = RegularityReport(spec.text(), is_theorem_backed_regular(spec), rows)
    if report.violations:
        bad = ", ".join(r.group_name for r in report.violations)
        raise TheoremViolation(
            f"regular spec {spec.text()} has unequal sets on: {bad}", report)
    return report


def cmd_sweep(args) -> int:
    groups = _catalog_groups(args.catalog, args.max_order)
    spec = parse_spec(args.spec)
    if args.mode == "regularity":
        try:
            if args.workers > 1:
                report = _parallel_regularity(groups, spec, args.workers)
            else:
                report = regularity_sweep(groups, spec)
        except TheoremViolation as exc:
            sys.stderr.write(f"THEOREM VIOLATION: {exc}\n")
            if exc.report is not None:
                _emit(args, exc.report.to_json(), report_to_text(exc.report))
            return 2
        _emit(args, report.to_json(), report_to_text(report))
        return 0
    if args.mode == "saturation":
        rows = _saturation_rows(groups, spec)
    elif args.mode == "formation-laws":
        rows = _formation_law_rows(groups, spec)
    elif args.mode == "vstar-idempotence":
        rows = _vstar_idempotence_rows(groups, spec)
    else:
        raise FormatioError(f"unknown sweep mode {args.mode}")
    failures = [r for r in rows if not r["ok"]]
    payload = {"spec": spec.text(), "mode": args.mode, "rows": rows,
               "failures": failures}
    text_lines = [f"{args.mode} sweep for {spec.text()}: "
                  f"{len(rows) - len(failures)}/{len(rows)} ok"]
    for r in failures:
        text_lines.append(f"  FAIL {r}")
    _emit(args, payload, "\n".join(text_lines) + "\n")
    if failures and spec.saturated and args.mode == "saturation":
        return 2
    if failures and args.mode in ("formation-laws", "vstar-idempotence"):
        return 2
    return 0


def cmd_graph(args) -> int:
    G = _resolve_group(args.group, args.catalog)
    spec = parse_spec(args.spec)
    graph = non_class_graph(G, spec)
    if args.format == "json":
        payload = {"group": G.name, "spec": spec.text(),
                   "isolated": list(graph.isolated),
                   "edges": graph.edge_count}
        _emit(args, payload, "")
    else:
        dot = graph_to_dot(graph)
        if args.out:
            Path(args.out).write_text(dot, encoding="utf-8")
        else:
            sys.stdout.write(dot)
    return 0


_SN_CALL = re.compile(r"^(lcm|gcd|divides|encode|decode|complement)\((.*)\)$")


def _split_top(body: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in body:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p for p in (s.strip() for s in parts) if p]


def _eval_sn(expr: str):
    from .supernatural import complement as sn_complement

    s = expr.strip()
    m = _SN_CALL.match(s)
    if not m:
        return parse_supernatural(s)
    head, body = m.group(1), m.group(2)
    if head == "encode":
        return encode_function(parse_exponent_function(body))
    if head == "decode":
        return decode_supernatural(_eval_sn(body))
    if head == "complement":
        return sn_complement(_eval_sn(body))
    parts = _split_top(body)
    if len(parts) != 2:
        raise FormatioError(f"{head} takes two arguments")
    a, b = _eval_sn(parts[0]), _eval_sn(parts[1])
    if head == "lcm":
        return lcm(a, b)
    if head == "gcd":
        return gcd(a, b)
    return divides(a, b)


def cmd_sn(args) -> int:
    value = _eval_sn(args.expression)
    if isinstance(value, bool):
        sys.stdout.write(("true" if value else "false") + "\n")
    elif hasattr(value, "at"):  # an exponent function, from decode
        sys.stdout.write(format_exponent_function(value) + "\n")
    else:
        sys.stdout.write(format_supernatural(value) + "\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formatio",
        description="Formation calculus on concrete finite groups.")
    parser.add_argument("--budget-subgroups", type=int, default=None,
                        help="cap on enumerated subgroups per group")
    parser.add_argument("--horizon-primes", type=int, default=None,
                        help="materialized positions of the pairing codec")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog-build", help="build and persist the catalog")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--catalog", default=os.environ.get("FORMATIO_CATALOG"))
    p.add_argument("--max-order", type=int, default=60)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_catalog_build)

    p = sub.add_parser("check", help="membership verdict for one group")
    p.add_argument("group")
    p.add_argument("spec")
    p.add_argument("--catalog", default=os.environ.get("FORMATIO_CATALOG"))
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="catalog-wide property sweep")
    p.add_argument("--spec", required=True)
    p.add_argument("--mode", default="regularity",
                   choices=["regularity", "saturation", "formation-laws",
                            "vstar-idempotence"])
    p.add_argument("--catalog", default=os.environ.get("FORMATIO_CATALOG"))
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("graph", help="export the non-member pair graph")
    p.add_argument("group")
    p.add_argument("spec")
    p.add_argument("--catalog", default=os.environ.get("FORMATIO_CATALOG"))
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("sn", help="supernatural-number calculator")
    p.add_argument("expression")
    p.set_defaults(func=cmd_sn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget_subgroups:
        limits.subgroup_budget = args.budget_subgroups
    if args.horizon_primes:
        limits.prime_horizon = args.horizon_primes
    try:
        return args.func(args)
    except TheoremViolation as exc:
        sys.stderr.write(f"THEOREM VIOLATION: {exc}\n")
        return 2
    except FormatioError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
