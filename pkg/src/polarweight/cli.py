"""Command-line interface: ``polarweight {analyze,verify,isolated,strata,zeta}``.

Every command emits one report dictionary (see ``schema/analysis_report.schema.json``);
``--json`` prints it, otherwise it is rendered as text by :func:`render_text`.
Exit codes: 0 success, 1 usage or parse error, 2 not polar weighted,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any

import numpy as np

from . import families as fam
from .invariants import NotSimplicial, invariants
from .mixed import MixedPolynomial, ParseError, parse, render
from .numerics import SampleConfig, g1_singular_family, g2_singular_family, run_checks
from .strata import stratify
from .weights import NotPolarWeighted, compute_weights, diagnostics, is_full, is_simplicial

EXIT_OK, EXIT_USAGE, EXIT_NOT_POLAR, EXIT_VERIFY = 0, 1, 2, 3
SAFE_INT = 2 ** 53
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def enc(x: int) -> int | str:
    """JSON-safe integer: beyond 2^53 it travels as a decimal string."""
    x = int(x)
    return x if abs(x) <= SAFE_INT else str(x)


def dec(x: int | str) -> int:
    return int(x)


def frac(x: Fraction) -> str:
    return str(Fraction(x))


def one_based(I) -> list[int]:
    return [i + 1 for i in sorted(I)]


# -- report ----------------------------------------------------------------

SECTIONS = ("input", "weights", "diagnostics", "strata", "invariants", "verification",
            "isolated", "error")


@dataclass
class AnalysisReport:
    """Plain-JSON sections; absent sections are None and omitted."""

    command: str
    sections: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "command": self.command}
        for key in SECTIONS:
            if self.sections.get(key) is not None:
                out[key] = self.sections[key]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "AnalysisReport":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError("unsupported report version")
        return cls(data["command"], {k: data[k] for k in SECTIONS if k in data})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def text(self) -> str:
        return render_text(self.to_json())


def input_section(f: MixedPolynomial, source: dict) -> dict:
    return {"poly": render(f), "n": f.n, **source}


def weights_section(W) -> dict:
    return {"q": [enc(x) for x in W.q], "m_r": enc(W.m_r),
            "p": [enc(x) for x in W.p], "m_p": enc(W.m_p),
            "u": [frac(x) for x in W.u], "v": [frac(x) for x in W.v]}


def diagnostics_section(f, W, strat) -> dict:
    d = diagnostics(W, f)
    return {"semipositive": d.semipositive, "strictly_positive": d.strictly_positive,
            "retract_subspace": one_based(d.retract_subspace),
            "simplicial": is_simplicial(f), "full": is_full(f),
            "convenience": strat.convenience}


def strata_section(strat) -> list[dict]:
    return [{"I": one_based(st.I), "full": st.full,
             "d_I": None if st.d_I is None else enc(st.d_I),
             "r_I": enc(st.r_I), "m_p_I": enc(st.m_p_I), "chi": enc(st.chi_stratum),
             "zeta_exponent": frac(st.zeta_exponent)}
            for st in strat.strata]


def invariants_section(strat) -> dict:
    try:
        inv = invariants(strat)
    except NotSimplicial as exc:
        return {"available": False, "reason": str(exc)}
    n = strat.n
    betti = {"0": 1}
    if n == 1:
        betti = {"0": enc(inv.middle_betti)}
    elif inv.middle_betti is not None:
        betti[str(n - 1)] = enc(inv.middle_betti)
    return {"available": True, "chi": enc(inv.chi),
            "zeta": _factors_json(inv.zeta.factors, "e"), "zeta_text": str(inv.zeta),
            "divisor": _factors_json(inv.divisor.coeffs, "c"), "divisor_text": str(inv.divisor),
            "connectivity": inv.connectivity, "betti": betti,
            "monodromy_order": enc(inv.monodromy_order),
            "top_charpoly": None if inv.top_charpoly is None
            else _factors_json(inv.top_charpoly.factors, "e")}


def _factors_json(mapping, key: str) -> list[dict]:
    return [{"m": enc(m), key: enc(e)} for m, e in mapping.items()]


# -- text ------------------------------------------------------------------

def _fmt_factors(items, key) -> str:
    if not items:
        return "1"
    return " ".join(f"(1-t^{x['m']})^{x[key]}" for x in items)


def render_text(data: dict) -> str:
    """Deterministic text view of a report dictionary."""
    lines = [f"command: {data['command']}"]
    inp = data.get("input")
    if inp:
        lines.append(f"f = {inp['poly']}  (n = {inp['n']})")
        if inp.get("family"):
            lines.append(f"family: {inp['family']}")
    err = data.get("error")
    if err:
        lines.append(f"error: {err['kind']}: {err['message']}")
    W = data.get("weights")
    if W:
        lines.append(f"radial weights q = {tuple(W['q'])}, m_r = {W['m_r']}  (u = {', '.join(W['u'])})")
        lines.append(f"polar weights  p = {tuple(W['p'])}, m_p = {W['m_p']}  (v = {', '.join(W['v'])})")
    D = data.get("diagnostics")
    if D:
        lines.append(f"simplicial: {D['simplicial']}, full: {D['full']}, "
                     f"convenience k = {D['convenience']}")
        lines.append(f"semipositive: {D['semipositive']}, strictly positive: "
                     f"{D['strictly_positive']}, retract subspace: {D['retract_subspace']}")
    S = data.get("strata")
    if S is not None:
        lines.append("strata:")
        lines.append(f"  {'I':<14}{'full':<7}{'d_I':>6}{'r_I':>6}{'m_p,I':>7}{'chi':>6}  exponent")
        for st in S:
            label = "{" + ",".join(map(str, st["I"])) + "}"
            d = "-" if st["d_I"] is None else st["d_I"]
            lines.append(f"  {label:<14}{str(st['full']):<7}{d:>6}{st['r_I']:>6}"
                         f"{st['m_p_I']:>7}{st['chi']:>6}  {st['zeta_exponent']}")
    inv = data.get("invariants")
    if inv:
        if not inv["available"]:
            lines.append(f"invariants unavailable: {inv['reason']}")
        else:
            lines.append(f"euler characteristic: {inv['chi']}")
            lines.append(f"zeta: {_fmt_factors(inv['zeta'], 'e')}")
            lines.append(f"divisor: {inv['divisor_text']}")
            lines.append(f"connectivity: {inv['connectivity']}")
            lines.append("betti: " + ", ".join(f"b{k} = {v}" for k, v in inv["betti"].items()))
            lines.append(f"monodromy order: {inv['monodromy_order']}")
            if inv["top_charpoly"] is not None:
                lines.append(f"P2: {_fmt_factors(inv['top_charpoly'], 'e')}")
    V = data.get("verification")
    if V:
        cfg = V["config"]
        lines.append(f"verification (samples={cfg['count']}, seed={cfg['seed']}, tol={cfg['tol']}):")
        for c in V["checks"]:
            mark = "PASS" if c["pass"] else "FAIL"
            lines.append(f"  {mark}  {c['name']:<20} max residual {c['max_relative_residual']:.3e}")
        for name in V["skipped"]:
            lines.append(f"  SKIP  {name}")
        lines.append("all checks passed" if V["pass"] else "verification FAILED")
    iso = data.get("isolated")
    if iso:
        lines.append(f"verdict: {iso['verdict']}")
        for fac in iso.get("factors", []):
            lines.append(f"  cycle {tuple(fac['cycle'])}: {'isolated' if fac['isolated'] else 'non-isolated'}")
        if iso.get("fixed_point_rule_used"):
            lines.append("  note: fixed points of sigma judged by the rule a_j >= 2")
        if iso.get("locus"):
            lines.append(f"singular locus: {iso['locus']}")
        if iso.get("witness"):
            pts = ", ".join(f"{re:+.6f}{im:+.6f}i" for re, im in iso["witness"])
            lines.append(f"witness: ({pts})")
    return "\n".join(lines)


# -- argument handling -----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("exponents must be positive integers")
    return vals


FAMILY_ALIASES = {"sigma": "sigma_twisted"}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--poly", help='mixed polynomial, e.g. "z1^2*zbar2 + z2^3"')
    common.add_argument("--family", choices=sorted(set(fam.KINDS) | set(FAMILY_ALIASES)))
    common.add_argument("--a", type=_int_list, help="exponents a_i, comma separated")
    common.add_argument("--b", type=_int_list, help="exponents b_i, comma separated")
    common.add_argument("--perm", help='permutation in cycle notation, e.g. "(1 2)(3 4)"')
    common.add_argument("--samples", type=int, default=500)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9)
    # negative-control hook for tests: perturb one weight before verifying
    common.add_argument("--corrupt-weight", choices=["q1", "p1", "m_r", "m_p"],
                        help=argparse.SUPPRESS)
    parser = _Parser(prog="polarweight", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {"analyze": "weights, strata and invariants",
             "verify": "numerical identity checks on seeded samples",
             "isolated": "isolatedness criterion for g1, g2 or sigma families",
             "strata": "stratification table",
             "zeta": "Euler characteristic, zeta function and divisor"}
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _family_spec(args) -> fam.FamilySpec:
    if args.a is None:
        raise UsageError("--family needs --a")
    kind = FAMILY_ALIASES.get(args.family, args.family)
    sigma = ()
    if kind == "sigma_twisted":
        if args.perm is None:
            raise UsageError("sigma family needs --perm")
        sigma = fam.parse_cycles(args.perm, len(args.a))
    return fam.FamilySpec(kind, args.a, args.b or (), sigma)


def polynomial_from_args(args) -> tuple[MixedPolynomial, dict]:
    if (args.poly is None) == (args.family is None):
        raise UsageError("give exactly one of --poly or --family")
    if args.poly is not None:
        return parse(args.poly), {"source": "poly"}
    spec = _family_spec(args)
    desc = {"kind": spec.kind, "a": list(spec.a)}
    if spec.b:
        desc["b"] = list(spec.b)
    if spec.sigma:
        desc["perm"] = args.perm
    return fam.build(spec), {"source": "family", "family": desc}


def _corrupt(W, which):
    if which is None:
        return W
    if which == "q1":
        return replace(W, q=(W.q[0] + 1,) + W.q[1:])
    if which == "p1":
        return replace(W, p=(W.p[0] + 1,) + W.p[1:])
    if which == "m_r":
        return replace(W, m_r=W.m_r + 1)
    return replace(W, m_p=W.m_p + 1)


# -- commands --------------------------------------------------------------

def cmd_analyze(args, sections: dict) -> int:
    f, src = polynomial_from_args(args)
    sections["input"] = input_section(f, src)
    W = compute_weights(f)
    sections["weights"] = weights_section(W)
    strat = stratify(f, W)
    if args.command in ("analyze", "strata"):
        sections["diagnostics"] = diagnostics_section(f, W, strat)
        sections["strata"] = strata_section(strat)
    if args.command in ("analyze", "zeta"):
        sections["invariants"] = invariants_section(strat)
    return EXIT_OK


def cmd_verify(args, sections: dict) -> int:
    f, src = polynomial_from_args(args)
    sections["input"] = input_section(f, src)
    W = compute_weights(f)
    sections["weights"] = weights_section(W)
    try:
        cfg = SampleConfig(args.samples, args.seed, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc))
    reports = run_checks(f, _corrupt(W, args.corrupt_weight), cfg)
    names = {r.name for r in reports}
    ok = all(r.passed for r in reports)
    sections["verification"] = {
        "config": {"count": cfg.count, "seed": cfg.seed, "tol": cfg.tol,
                   "radius_range": list(cfg.radius_range)},
        "checks": [r.to_json() for r in reports],
        "skipped": [] if "torus_diffeo" in names else ["torus_diffeo"],
        "pass": ok,
    }
    return EXIT_OK if ok else EXIT_VERIFY


def _witness_json(z) -> list[list[float]]:
    return [[float(np.real(x)), float(np.imag(x))] for x in z]


def _g1_locus(a) -> str:
    n = len(a)
    big = [i for i, x in enumerate(a) if x >= 2]
    keep = list(range(big[0] % 2, n, 2))
    zero = [i for i in range(n) if i not in keep]
    return (f"z_j = 0 for j in {one_based(zero)}; on j in {one_based(keep)} the chain "
            f"z_(j+2) = alpha z_j^(a_j) (indices mod {n}) with |alpha| = 1, "
            "together with its radial orbit")


def _g2_locus(a) -> str:
    n = len(a)
    block = [t for t in range(n - 1) if (t - (n - 1)) % 2 == 0 and a[t] >= 2]
    start = block[-1] + 1 if block else (n - 2) % 2
    keep = list(range(start, n - 1, 2))
    zero = [i for i in range(n) if i not in keep]
    return (f"z_j = 0 for j in {one_based(zero)}; on j in {one_based(keep)} the chain "
            f"z_(j+2) = alpha z_j^(a_j) ending with alpha z_{n - 1}^(a_{n - 1}) = 1, "
            "|alpha| = 1, together with its radial orbit")


def cmd_isolated(args, sections: dict) -> int:
    kind = FAMILY_ALIASES.get(args.family, args.family)
    if kind not in ("g1", "g2", "sigma_twisted"):
        raise UsageError("isolated supports --family g1, g2 or sigma")
    spec = _family_spec(args)
    f = fam.build(spec)
    sections["input"] = input_section(f, {"source": "family",
                                          "family": {"kind": kind, "a": list(spec.a),
                                                     **({"perm": args.perm} if args.perm else {})}})
    a = spec.a
    out: dict[str, Any] = {"locus": None, "witness": None}
    if kind == "g1":
        ok = fam.isolated_g1(a)
        if not ok:
            out["locus"] = _g1_locus(a)
            out["witness"] = _witness_json(g1_singular_family(a))
    elif kind == "g2":
        ok = fam.isolated_g2(a)
        if not ok:
            out["locus"] = _g2_locus(a)
            out["witness"] = _witness_json(g2_singular_family(a))
    else:
        rep = fam.isolated_sigma_twisted_report(spec.sigma, a)
        ok = rep.isolated
        # fixed points z_j^a_j zbar_j are judged by the adopted rule a_j >= 2
        out["fixed_point_rule_used"] = rep.fixed_point_rule_used
        out["factors"] = [{"cycle": one_based(c) if len(c) == 1 else [j + 1 for j in c],
                           "isolated": good} for c, good in rep.factors]
        bad = [c for c, good in rep.factors if not good]
        if bad:
            c = bad[0]
            sub = [a[j] for j in c]
            label = "(" + " ".join(str(j + 1) for j in c) + ")"
            if len(c) > 1 and max(sub) >= 2:
                z = np.zeros(len(a), dtype=complex)
                z[list(c)] = g1_singular_family(sub)
                out["witness"] = _witness_json(z)
                out["locus"] = f"cycle {label} behaves as g1 with exponents {tuple(sub)}: " \
                               + _g1_locus(sub).replace("z_j", "w_j")
            else:
                out["locus"] = (f"cycle {label} has all exponents 1, so its factor is "
                                "real valued and admits no polar action")
    out["isolated"] = ok
    out["verdict"] = "isolated" if ok else "non-isolated"
    sections["isolated"] = out
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "strata": cmd_analyze, "zeta": cmd_analyze,
            "verify": cmd_verify, "isolated": cmd_isolated}


def run(argv=None) -> tuple[int, AnalysisReport | None, bool]:
    """Parse and execute; returns (exit code, report, json flag)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return EXIT_USAGE, AnalysisReport("usage", {"error": {"kind": "UsageError",
                                                              "message": str(exc)}}), False
    sections: dict[str, Any] = {}
    try:
        code = COMMANDS[args.command](args, sections)
    except NotPolarWeighted as exc:
        sections["error"] = {"kind": "NotPolarWeighted", "message": str(exc),
                             "system": exc.system, "rows": [list(r) for r in exc.rows]}
        code = EXIT_NOT_POLAR
    except (UsageError, ParseError, ValueError) as exc:
        sections["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        code = EXIT_USAGE
    return code, AnalysisReport(args.command, sections), args.json


def main(argv=None) -> int:
    code, report, as_json = run(argv)
    if as_json:
        print(report.dumps())
    else:
        text = report.text()
        stream = sys.stdout if code in (EXIT_OK, EXIT_VERIFY) else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
