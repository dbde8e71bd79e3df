"""Command-line interface.

Reports are plain text: ``key: value`` lines grouped into blank-line
separated blocks, with tab-separated tables introduced by a
``#table <name>`` line.  Rationals print reduced (``p/q``, or ``p`` for
integers).  Output for identical inputs is byte-identical.

Exit codes: 0 for pass/certified, 1 for a failed hypothesis or verdict,
2 for unparseable input or bad command lines.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import sys
from fractions import Fraction

from . import brill_noether as bn
from . import components as comp
from .curve import CurveError, NodalCurve, NotCompactTypeError, chain_curve, comb_curve
from .ordering import order_components
from .parsing import (
    ParseError,
    parse_curve_with_sheaf,
    parse_ints,
    parse_rationals,
    render_curve,
)
from .polarization import (
    Polarization,
    PolarizationError,
    canonical,
    goodness_proxy,
)
from .sheaf import (
    DescriptorError,
    SheafDescriptor,
    degree_defect,
    global_ext_defect,
    wdeg,
    wrank,
    wslope,
)


class Report:
    """Accumulates the key/value and table lines of one command's output."""

    def __init__(self, argv: list[str]):
        self.lines: list[str] = ["command: nodalbn " + " ".join(argv)]

    def blank(self) -> None:
        if self.lines and self.lines[-1] != "":
            self.lines.append("")

    def kv(self, key: str, value: object) -> None:
        self.lines.append(f"{key}: {_fmt(value)}")

    def table(self, name: str, header: list[str], rows: list[list[object]]) -> None:
        self.blank()
        self.lines.append(f"#table {name}")
        self.lines.append("\t".join(header))
        for row in rows:
            self.lines.append("\t".join(_fmt(cell) for cell in row))

    def raw(self, text: str) -> None:
        self.lines.append(text)

    def emit(self) -> None:
        sys.stdout.write("\n".join(self.lines).rstrip("\n") + "\n")


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, frozenset):
        return ",".join(str(i) for i in sorted(value))
    if isinstance(value, (tuple, list)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _load_curve(path: str) -> tuple[NodalCurve, SheafDescriptor | None, str]:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise CurveError(f"cannot read {path}: {exc.strerror}") from exc
    text = data.decode("utf-8")
    curve, sheaf = parse_curve_with_sheaf(text)
    return curve, sheaf, hashlib.sha256(data).hexdigest()[:12]


def _resolve_omega(text: str, curve: NodalCurve) -> Polarization:
    if text == "canonical":
        return canonical(curve)
    try:
        return Polarization(parse_rationals(text))
    except PolarizationError as exc:
        raise ValueError(f"bad omega: {exc}") from exc


def _begin(args: argparse.Namespace) -> tuple[Report, NodalCurve, SheafDescriptor | None]:
    report = Report(args.argv)
    curve, sheaf, digest = _load_curve(args.curve)
    report.kv("curve_digest", digest)
    report.blank()
    return report, curve, sheaf


# -- curve ------------------------------------------------------------


def cmd_curve_validate(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    report.kv("gamma", curve.gamma)
    report.kv("delta", curve.delta)
    report.kv("genera", curve.genera)
    report.kv("arithmetic_genus", curve.arithmetic_genus())
    report.kv("compact_type", curve.is_compact_type())
    report.kv("classification", curve.classify().value)
    if args.echo:
        report.blank()
        report.raw("#echo")
        report.raw(render_curve(curve).rstrip("\n"))
    report.emit()
    return 0


def cmd_curve_classify(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    report.kv("classification", curve.classify().value)
    report.emit()
    return 0


def cmd_order(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    deco = order_components(curve, args.root)
    report.kv("root", deco.root)
    report.kv("order", deco.order)
    rows = [
        [j, A, p]
        for j, (A, p) in enumerate(zip(deco.subcurves, deco.separating_nodes), start=1)
    ]
    report.table("decomposition", ["j", "subcurve", "separating_node"], rows)
    report.emit()
    return 0


# -- polarization -----------------------------------------------------


def _proxy_section(report: Report, curve: NodalCurve, omega: Polarization) -> bool:
    good = goodness_proxy(curve, omega)
    report.kv("goodness_proxy", _verdict(good.passed))
    report.table(
        "splits",
        ["node", "side", "defect", "verdict"],
        [[row.node, row.side, row.defect, _verdict(row.ok)] for row in good.splits],
    )
    return good.passed


def cmd_polarization_canonical(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    eta = canonical(curve)
    report.kv("eta", eta.weights)
    if curve.is_compact_type():
        _proxy_section(report, curve, eta)
    report.emit()
    return 0


def cmd_polarization_check(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    omega = _resolve_omega(args.omega, curve)
    report.kv("omega", omega.weights)
    passed = _proxy_section(report, curve, omega)
    report.emit()
    return 0 if passed else 1


# -- sheaf ------------------------------------------------------------


def cmd_sheaf_info(args: argparse.Namespace) -> int:
    report, curve, sheaf = _begin(args)
    if sheaf is None:
        raise DescriptorError(f"{args.curve} has no sheaf block")
    omega = _resolve_omega(args.omega, curve)
    report.kv("multirank", sheaf.multirank)
    report.kv("chi", sheaf.chi)
    report.kv("locally_free", sheaf.is_locally_free())
    r = wrank(sheaf, omega)
    report.kv("wrank", r)
    report.kv("wdeg", wdeg(sheaf, omega))
    if r > 0:
        report.kv("wslope", wslope(sheaf, omega))
    if sheaf.degrees is not None:
        report.kv("degrees", sheaf.degrees)
        report.kv("degree_defect", degree_defect(sheaf, omega))
    report.kv("ext_defect_self", global_ext_defect(sheaf, sheaf))
    report.table(
        "stalks",
        ["node", "free_rank", "a_first", "a_second"],
        [[nid, lt.free_rank, lt.a_first, lt.a_second] for nid, lt in sheaf.stalks],
    )
    report.emit()
    return 0


# -- components -------------------------------------------------------


def _catalog_table(
    report: Report,
    curve: NodalCurve,
    omega: Polarization,
    deco,
    catalog: list[comp.ComponentTuple],
) -> None:
    header = ["tuple"]
    for j in range(1, curve.gamma):
        header += [f"j{j}_lower", f"j{j}_sigma", f"j{j}_upper"]
    header += ["verdict", "radius"]
    rows = []
    for t in catalog:
        rep = comp.stability_conditions(curve, omega, deco, t)
        row: list[object] = [t.degrees]
        for r in rep.rows:
            row += [r.lower, r.partial_sum, r.upper]
        row.append(_verdict(rep.passed))
        if rep.passed:
            radius = comp.robustness_radius(curve, omega, deco, t)
            row.append("unbounded" if radius is None else radius)
        else:
            row.append("-")
        rows.append(row)
    report.table("catalog", header, rows)


def cmd_components_enumerate(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    omega = _resolve_omega(args.omega, curve)
    root = args.root if args.root is not None else curve.gamma
    deco = order_components(curve, root)
    catalog = comp.enumerate_components(curve, omega, deco, args.rank, args.degree)
    if args.small_slope:
        catalog = comp.small_slope_filter(catalog, args.rank)
    report.kv("omega", omega.weights)
    report.kv("rank", args.rank)
    report.kv("degree", args.degree)
    report.kv("root", root)
    report.kv("order", deco.order)
    report.kv("count", len(catalog))
    _catalog_table(report, curve, omega, deco, catalog)
    report.emit()
    return 0


def _tuple_setup(args: argparse.Namespace):
    report, curve, _ = _begin(args)
    omega = _resolve_omega(args.omega, curve)
    root = args.root if args.root is not None else curve.gamma
    deco = order_components(curve, root)
    degrees = parse_ints(args.tuple)
    if len(degrees) != curve.gamma:
        raise ParseError(0, f"tuple has {len(degrees)} degrees for {curve.gamma} components")
    ctuple = comp.ComponentTuple(rank=args.rank, degrees=degrees)
    report.kv("omega", omega.weights)
    report.kv("rank", args.rank)
    report.kv("tuple", ctuple.degrees)
    report.kv("degree", ctuple.total)
    return report, curve, omega, deco, ctuple


def cmd_components_check(args: argparse.Namespace) -> int:
    report, curve, omega, deco, ctuple = _tuple_setup(args)
    rep = comp.stability_conditions(curve, omega, deco, ctuple)
    report.kv("verdict", _verdict(rep.passed))
    report.table(
        "conditions",
        ["j", "subcurve", "lower", "sigma", "upper", "verdict", "slack_lower", "slack_upper"],
        [
            [r.j, r.subcurve, r.lower, r.partial_sum, r.upper, _verdict(r.ok), r.slack_lower, r.slack_upper]
            for r in rep.rows
        ],
    )
    report.emit()
    return 0 if rep.passed else 1


def cmd_components_radius(args: argparse.Namespace) -> int:
    report, curve, omega, deco, ctuple = _tuple_setup(args)
    radius = comp.robustness_radius(curve, omega, deco, ctuple)
    report.kv("radius", "unbounded" if radius is None else radius)
    report.emit()
    return 0


def cmd_components_invariance(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    omega = _resolve_omega(args.omega, curve)
    inv = comp.catalog_invariance_check(curve, omega, args.rank, args.degree)
    report.kv("omega", omega.weights)
    report.kv("rank", args.rank)
    report.kv("degree", args.degree)
    report.kv("invariance", _verdict(inv.passed))
    report.kv("count", len(inv.catalog))
    if not inv.passed:
        report.table(
            "mismatches",
            ["root", "missing", "extra"],
            [
                [m.root, [t.degrees for t in m.missing] or "-", [t.degrees for t in m.extra] or "-"]
                for m in inv.mismatches
            ],
        )
    report.emit()
    return 0 if inv.passed else 1


# -- brill-noether ----------------------------------------------------


def cmd_bn_number(args: argparse.Namespace) -> int:
    report = Report(args.argv)
    report.kv("beta", bn.bn_number(args.pa, args.r, args.d, args.k))
    report.emit()
    return 0


def cmd_bn_bounds(args: argparse.Namespace) -> int:
    report = Report(args.argv)
    verdict = bn.bgn_bounds(args.pa, args.r, args.d, args.k)
    report.kv("bgn_bounds", _verdict(verdict.ok))
    for failure in verdict.failures:
        report.kv("failure", failure)
    report.emit()
    return 0 if verdict.ok else 1


def cmd_bn_certify(args: argparse.Namespace) -> int:
    report, curve, _ = _begin(args)
    omega = _resolve_omega(args.omega, curve)
    result = bn.certify_bn_component(curve, omega, args.s, args.k, args.d)
    certified = isinstance(result, bn.BNCertificate)
    report.kv("certified", certified)
    report.kv("omega", omega.weights)
    report.kv("s", args.s)
    report.kv("k", args.k)
    report.kv("d", args.d)
    if certified:
        report.kv("r", result.r)
        report.kv("tuple", result.degree_tuple.degrees)
        report.kv("beta", result.beta)
        report.kv("moduli_dim", result.moduli_dim)
        report.kv("h1_dual", result.h1_dual)
        report.kv("fiber_dim", result.fiber_dim)
        report.kv(
            "identity",
            f"{result.beta} = {result.moduli_dim} + {result.fiber_dim}",
        )
    report.table(
        "checklist",
        ["item", "verdict", "detail"],
        [[item.name, _verdict(item.ok), item.detail] for item in result.checklist],
    )
    report.emit()
    return 0 if certified else 1


def _scan_family(family: str, gamma_max: int, genus_max: int) -> list[NodalCurve]:
    curves = []
    if family == "chain":
        for gamma in range(2, gamma_max + 1):
            for genera in _genus_vectors(gamma, genus_max):
                if genera <= tuple(reversed(genera)):  # dedupe path reversal
                    curves.append(chain_curve(genera))
    elif family == "comb":
        for gamma in range(3, gamma_max + 1):
            for genera in _genus_vectors(gamma, genus_max):
                if tuple(sorted(genera[:-1])) == genera[:-1]:  # teeth sorted once
                    curves.append(comb_curve(genera))
    else:
        raise ParseError(0, f"unknown family {family!r}")
    return curves


def _genus_vectors(gamma: int, genus_max: int):
    yield from itertools.product(range(2, genus_max + 1), repeat=gamma)


def cmd_bn_scan(args: argparse.Namespace) -> int:
    report = Report(args.argv)
    curves = _scan_family(args.family, args.gamma_max, args.genus_max)
    rows = bn.conjecture_scan(curves, range(1, args.s_max + 1))
    open_rows = [r for r in rows if not r.certified]
    report.kv("family", args.family)
    report.kv("curves", len(curves))
    report.kv("rows", len(rows))
    report.kv("open", len(open_rows))
    report.table(
        "scan",
        ["shape", "gamma", "genera", "s", "d", "k", "status", "beta"],
        [
            [r.shape, r.gamma, r.genera, r.s, r.d, r.k, r.status, r.beta]
            for r in rows
        ],
    )
    report.emit()
    return 0 if not open_rows else 1


# -- wiring -----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nodalbn",
        description="Exact-rational Brill-Noether toolkit for nodal reducible curves",
    )
    top = parser.add_subparsers(dest="group", required=True)

    def curve_arg(p):
        p.add_argument("--curve", required=True, help="curve file")

    def omega_arg(p):
        p.add_argument("--omega", default="canonical", help="'canonical' or w_1,...,w_gamma")

    curve_p = top.add_parser("curve", help="validate and classify curve files")
    curve_sub = curve_p.add_subparsers(dest="action", required=True)
    p = curve_sub.add_parser("validate")
    curve_arg(p)
    p.add_argument("--echo", action="store_true", help="re-emit the canonical file")
    p.set_defaults(func=cmd_curve_validate)
    p = curve_sub.add_parser("classify")
    curve_arg(p)
    p.set_defaults(func=cmd_curve_classify)

    p = top.add_parser("order", help="root-first component order of a tree curve")
    curve_arg(p)
    p.add_argument("--root", type=int, required=True)
    p.set_defaults(func=cmd_order)

    pol_p = top.add_parser("polarization", help="canonical weights and goodness proxy")
    pol_sub = pol_p.add_subparsers(dest="action", required=True)
    p = pol_sub.add_parser("canonical")
    curve_arg(p)
    p.set_defaults(func=cmd_polarization_canonical)
    p = pol_sub.add_parser("check")
    curve_arg(p)
    p.add_argument("--omega", required=True, help="w_1,...,w_gamma")
    p.set_defaults(func=cmd_polarization_check)

    sheaf_p = top.add_parser("sheaf", help="weighted invariants of a sheaf block")
    sheaf_sub = sheaf_p.add_subparsers(dest="action", required=True)
    p = sheaf_sub.add_parser("info")
    curve_arg(p)
    omega_arg(p)
    p.set_defaults(func=cmd_sheaf_info)

    comp_p = top.add_parser("components", help="degree-tuple catalogs and stability")
    comp_sub = comp_p.add_subparsers(dest="action", required=True)
    p = comp_sub.add_parser("enumerate")
    curve_arg(p)
    omega_arg(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--small-slope", action="store_true")
    p.add_argument("--root", type=int, default=None)
    p.set_defaults(func=cmd_components_enumerate)
    for name, func in (
        ("check", cmd_components_check),
        ("radius", cmd_components_radius),
    ):
        p = comp_sub.add_parser(name)
        curve_arg(p)
        omega_arg(p)
        p.add_argument("--rank", type=int, required=True)
        p.add_argument("--tuple", required=True, help="d_1,...,d_gamma")
        p.add_argument("--root", type=int, default=None)
        p.set_defaults(func=func)
    p = comp_sub.add_parser("invariance")
    curve_arg(p)
    omega_arg(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_components_invariance)

    bn_p = top.add_parser("bn", help="Brill-Noether numbers and certificates")
    bn_sub = bn_p.add_subparsers(dest="action", required=True)
    p = bn_sub.add_parser("number")
    for flag in ("--pa", "--r", "--d", "--k"):
        p.add_argument(flag, type=int, required=True)
    p.set_defaults(func=cmd_bn_number)
    p = bn_sub.add_parser("bounds")
    for flag in ("--pa", "--r", "--d", "--k"):
        p.add_argument(flag, type=int, required=True)
    p.set_defaults(func=cmd_bn_bounds)
    p = bn_sub.add_parser("certify")
    curve_arg(p)
    omega_arg(p)
    for flag in ("--s", "--k", "--d"):
        p.add_argument(flag, type=int, required=True)
    p.set_defaults(func=cmd_bn_certify)
    p = bn_sub.add_parser("scan")
    p.add_argument("--family", required=True, choices=["chain", "comb"])
    p.add_argument("--gamma-max", type=int, required=True)
    p.add_argument("--genus-max", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.set_defaults(func=cmd_bn_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    args.argv = argv
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except comp.HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NotCompactTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PolarizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CurveError, DescriptorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
