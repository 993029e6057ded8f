"""Command-line surface: per-prime reports, verification suites, batch scans.

Output is deterministic: floats are serialized with repr (shortest string that
round-trips binary64), exact rationals as "num/den" strings, and the JSON
layout is frozen as {schema_version, command, params, results}.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from fractions import Fraction

from . import arakelov, eisenstein, fiber, modular, quadforms
from .numerics import DomainError, extrapolate_to_zero

SCHEMA_VERSION = 1


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(payload: dict, fmt: str, out: str | None, text_renderer) -> None:
    if fmt == "json":
        body = json.dumps(_jsonable(payload), indent=2, allow_nan=False) + "\n"
    elif fmt == "csv":
        body = payload["results"].get("csv", "")
    else:
        buf = io.StringIO()
        text_renderer(payload, buf)
        body = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _require_prime(p: int, minimum: int) -> None:
    if not modular.is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p < minimum:
        raise DomainError(f"prime must be >= {minimum} for this command, got {p}")


# ---------------------------------------------------------------------------
# info
# ---------------------------------------------------------------------------

def cmd_info(args) -> int:
    _require_prime(args.prime, 7)
    lv = modular.curve_level(args.prime)
    results = {
        "genus": lv.genus,
        "cusp_count": len(modular.cusps(args.prime)),
        "volume": lv.volume,
        "index": lv.index,
        "c": lv.c,
        "s_p": arakelov.s_p(args.prime),
        "residue_mod_12": lv.residue,
        "e_p_flag": arakelov.e_p_flag(args.prime),
    }
    payload = {"schema_version": SCHEMA_VERSION, "command": "info",
               "params": {"prime": args.prime}, "results": results}

    def render(pl, buf):
        for k, v in pl["results"].items():
            buf.write(f"{k}: {v}\n")

    _emit(payload, args.format, args.out, render)
    return 0


# ---------------------------------------------------------------------------
# fiber
# ---------------------------------------------------------------------------

def cmd_fiber(args) -> int:
    _require_prime(args.prime, 7)
    model = fiber.edixhoven_fiber(args.prime)
    checks = fiber.validate_fiber(model)
    names = model.names()
    results = {
        "components": [{"name": c.name, "multiplicity": c.multiplicity} for c in model.components],
        "intersection": {a: {b: model.pairing(a, b) for b in names} for a in names},
        "canonical_degrees": dict(zip(names, fiber.canonical_degrees(model))),
        "adjunction_sum": 2 * modular.genus(args.prime) - 2,
        "checks": checks,
    }
    if args.minimal:
        mm, pull = fiber.minimal_model(model)
        results["minimal"] = {
            "components": list(mm.names()),
            "intersection": {a: {b: mm.pairing(a, b) for b in mm.names()} for a in mm.names()},
            "off_diagonal": arakelov.s_p(args.prime),
            "pullbacks": {k: dict(v) for k, v in pull.coeffs.items()},
        }
    payload = {"schema_version": SCHEMA_VERSION, "command": "fiber",
               "params": {"prime": args.prime, "minimal": bool(args.minimal)},
               "results": results}

    def render(pl, buf):
        r = pl["results"]
        buf.write(f"special fiber at p={args.prime}\n")
        for comp in r["components"]:
            buf.write(f"  {comp['name']}: multiplicity {comp['multiplicity']}\n")
        buf.write("intersection table (local numbers, log p factored out):\n")
        for a in names:
            row = " ".join(str(r["intersection"][a][b]) for b in names)
            buf.write(f"  {a}: {row}\n")
        buf.write(f"adjunction: 2g-2 = {r['adjunction_sum']}\n")
        if "minimal" in r:
            buf.write(f"minimal model off-diagonal: {r['minimal']['off_diagonal']}\n")
            for k, v in r["minimal"]["pullbacks"].items():
                terms = " + ".join(f"{coef}*{name}" if coef != 1 else name
                                   for name, coef in v.items())
                buf.write(f"  pullback {k}: {terms}\n")

    _emit(payload, args.format, args.out, render)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_eisenstein(p: int, box: int, precision: float, checks: list) -> None:
    vol = modular.volume(p)
    hs = [(1.0 + h) - 1.0 for h in (1e-3, 1e-4, 1e-5)]
    for pair in (eisenstein.CuspPair.INF_INF, eisenstein.CuspPair.INF_ZERO):
        res = extrapolate_to_zero(hs, [h * eisenstein.phi_closed(pair, 1.0 + h, p) for h in hs])
        checks.append((f"residue_{pair.value}", abs(res - 1.0 / vol), 1e-8))
        sc = eisenstein.scattering_expansion(pair, p)
        con = extrapolate_to_zero(
            hs, [eisenstein.phi_closed(pair, 1.0 + h, p) - 1.0 / (vol * h) for h in hs])
        checks.append((f"constant_{pair.value}", abs(con - sc.piece.constant), 1e-6))
    checks.append(("es1_residual", eisenstein.verify_es1(1j, 3.0, p, box), 1e-6))
    for s in (1.5, 2.0):
        # truncation chosen so the series tail bound meets the precision target
        c_max = math.ceil((2.0 / ((2 * s - 2) * precision)) ** (1.0 / (2 * s - 2)))
        c_max = min(max(c_max, 10 ** 4), 10 ** 6)
        ser = eisenstein.phi_series(eisenstein.CuspPair.INF_INF, s, p, c_max)
        clo = eisenstein.phi_closed(eisenstein.CuspPair.INF_INF, s, p)
        budget = ser.tail_bound + 1e-12 * abs(clo) + 1e-15
        checks.append((f"series_closed_s{s}", abs(ser.value - clo), budget))
    lhs = eisenstein.L_series(1, 1.7, p)
    rhs = (p ** 3.4 - 1) / (p - 1) * eisenstein.L_series(p, 1.7, p)
    checks.append(("parabolic_identity", abs(lhs - rhs) / abs(lhs), 1e-12))


def _verify_fiber(p: int, checks: list) -> None:
    model = fiber.edixhoven_fiber(p)
    for name, ok in fiber.validate_fiber(model).items():
        checks.append((name, 0.0 if ok else 1.0, 0.5))
    mm, pull = fiber.minimal_model(model)
    s = arakelov.s_p(p)
    checks.append(("minimal_off_diagonal", 0.0 if mm.pairing("C20", "C02") == s else 1.0, 0.5))
    ortho = all(
        sum(coef * model.pairing(b, contracted) for b, coef in pull.coeffs[c].items()) == 0
        for c in ("C20", "C02") for contracted in ("C11", "E", "F"))
    checks.append(("pullback_orthogonality", 0.0 if ortho else 1.0, 0.5))
    if p >= 11:
        checks.append(("dm_orthogonal", 0.0 if arakelov.check_dm_orthogonal(p).ok else 1.0, 0.5))


def _verify_quadforms(p: int, checks: list) -> None:
    nu2 = 1 + quadforms.legendre_symbol(-1, p)
    nu3 = 1 + quadforms.legendre_symbol(-3, p)
    for l, expect in ((0, nu2), (1, nu3), (-1, nu3)):
        got = len(quadforms.enumerate_classes(l, p * p))
        checks.append((f"class_count_l{l}", abs(got - expect), 0.5))
    for disc, expect in ((5, (3, 1)), (12, (4, 1)), (21, (5, 1))):
        sol = quadforms.pell_min(disc)
        checks.append((f"pell_{disc}", 0.0 if (sol.x, sol.y) == expect else 1.0, 0.5))
    one = quadforms.QuadForm(1, 0, 1)
    direct = quadforms.epstein_zeta_definite(one, 2.0, 400)
    ana = quadforms.epstein_zeta_analytic(one, 2.0)
    checks.append(("epstein_direct_vs_analytic", abs(direct.value - ana),
                   direct.tail_bound + 1e-12))
    hs = [0.2, 0.1, 0.05, 0.025]
    res = extrapolate_to_zero(hs, [h * quadforms.epstein_zeta_analytic(one, 1 + h) for h in hs])
    checks.append(("epstein_residue", abs(res - math.pi / 4), 1e-4))


_SUITE_MIN_PRIME = {"eisenstein": 2, "fiber": 7, "quadforms": 5}


def cmd_verify(args) -> int:
    _require_prime(args.prime, 2)
    if args.suite == "all":
        # with "all", suites whose prime bound fails are skipped rather than fatal
        suites = [s for s, m in _SUITE_MIN_PRIME.items() if args.prime >= m]
    else:
        _require_prime(args.prime, _SUITE_MIN_PRIME[args.suite])
        suites = [args.suite]
    checks: list[tuple[str, float, float]] = []
    for suite in suites:
        if suite == "eisenstein":
            _verify_eisenstein(args.prime, args.bound, args.precision, checks)
        elif suite == "fiber":
            _verify_fiber(args.prime, checks)
        elif suite == "quadforms":
            _verify_quadforms(args.prime, checks)
    results = {"checks": [{"name": n, "residual": r, "tolerance": t, "pass": r <= t}
                          for n, r, t in checks],
               "all_pass": all(r <= t for _, r, t in checks)}
    payload = {"schema_version": SCHEMA_VERSION, "command": "verify",
               "params": {"prime": args.prime, "suite": args.suite, "bound": args.bound},
               "results": results}

    def render(pl, buf):
        for ch in pl["results"]["checks"]:
            status = "PASS" if ch["pass"] else "FAIL"
            buf.write(f"{status} {ch['name']}: residual {ch['residual']:.3e} (tol {ch['tolerance']:.1e})\n")
        buf.write("all checks passed\n" if pl["results"]["all_pass"] else "FAILURES present\n")

    _emit(payload, args.format, args.out, render)
    return 0 if results["all_pass"] else 1


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

CSV_HEADER = "p,g,algebraic,analytic,total,target,ratio"


def cmd_scan(args) -> int:
    if args.pmin > args.pmax:
        raise DomainError(f"empty prime range [{args.pmin}, {args.pmax}]")
    result = arakelov.scan(args.pmin, args.pmax, args.mode)
    lines = [CSV_HEADER]
    for r in result.rows:
        lines.append(f"{r.p},{r.g},{r.algebraic!r},{r.analytic!r},"
                     f"{r.total!r},{r.target!r},{r.ratio!r}")
    csv_body = "\n".join(lines) + "\n"
    results = {
        "rows": [{"p": r.p, "g": r.g, "algebraic": r.algebraic, "analytic": r.analytic,
                  "total": r.total, "target": r.target, "ratio": r.ratio} for r in result.rows],
        "largest_residual": result.largest_residual,
        "csv": csv_body,
    }
    payload = {"schema_version": SCHEMA_VERSION, "command": "scan",
               "params": {"pmin": args.pmin, "pmax": args.pmax, "mode": args.mode},
               "results": results}
    if args.format == "json":
        del results["csv"]

    def render(pl, buf):
        buf.write(csv_body)
        buf.write(f"# largest |ratio-1| = {result.largest_residual!r}\n")

    _emit(payload, args.format, args.out, render)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="x0p2", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", default=None, help="write output to this path")
        sp.add_argument("--precision", type=float, default=1e-10,
                        help="target precision for truncated evaluations")

    sp = sub.add_parser("info", help="genus, cusps, volume, index for one prime")
    sp.add_argument("--prime", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("fiber", help="special-fiber intersection report")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--minimal", action="store_true",
                    help="also contract to the minimal model and report pullbacks")
    common(sp)
    sp.set_defaults(func=cmd_fiber)

    sp = sub.add_parser("verify", help="run a module verification suite")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--suite", choices=("eisenstein", "fiber", "quadforms", "all"),
                    default="all")
    sp.add_argument("--bound", type=int, default=300, help="lattice truncation box")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", help="per-prime self-intersection table")
    sp.add_argument("--pmin", type=int, required=True)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--mode", choices=("main_term", "constants"), default="main_term")
    common(sp)
    sp.set_defaults(func=cmd_scan)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
