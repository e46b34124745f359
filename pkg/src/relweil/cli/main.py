"""``relweil`` command line: run a job file and print a report.

Exit status: 0 success, 1 computation error, 2 parse/schema error,
3 regression mismatch (paper suite).
"""

import argparse
import json
import sys
from fractions import Fraction

from relweil.arith.multipoly import MultiPoly
from relweil.arith.rational import format_rational
from relweil.arith.unipoly import UniPoly
from relweil.chabauty import ChabautyInput, applicability_report
from relweil.cli.jobs import COMMANDS, JobSpec, parse_job
from relweil.cli.suite import config_key, run_paper_suite, table1_rows
from relweil.errors import ParseError, PreconditionError, RelWeilError, SchemaError
from relweil.number_field import NumberField, embed_poly
from relweil.ramgenus import (
    FiberType,
    ProfilePoint,
    RamificationProfile,
    enumerate_deg3_configs,
    fiber_product_genus,
    fiber_type_over,
    hurwitz_contribution,
    hyperelliptic_genus,
    profile_points,
    ramification_profile,
)
from relweil.weilres import (
    CurveOverL,
    MorphismData,
    derive_ecc_curve,
    derive_example_D,
    quotient_even,
    relative_restrict,
)

EXIT_OK, EXIT_COMPUTATION, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


# ------------------------------------------------------------- helpers
def _field(spec):
    if spec.field is None:
        return None
    return NumberField(spec.field.monic() if spec.field.lc != 1 else spec.field, spec.generator)


def _over(p, L, generator):
    return embed_poly(p, L, generator) if L is not None else p


def _univariate(p, L, generator):
    """A MultiPoly in one variable (plus the generator) as a UniPoly over L or Q."""
    q = _over(p, L, generator)
    used = q.used_vars()
    if len(used) > 1:
        raise PreconditionError(f"expected a univariate polynomial, got variables {used}")
    var = used[0] if used else "x"
    if L is None:
        return q.to_unipoly(var)
    deg = q.degree(var)
    coeffs = [L.zero] * (deg + 1)
    i = q.vars.index(var) if var in q.vars else None
    for e, c in q.terms.items():
        k = e[i] if i is not None else 0
        coeffs[k] = coeffs[k] + c
    return UniPoly(coeffs, var)


def _ratfn(item, L, generator):
    num = _univariate(item["num"], L, generator)
    den = _univariate(item["den"], L, generator) if "den" in item else UniPoly((1,), num.var)
    if den.degree > 0 and num.degree >= 0 and den.var != num.var:
        raise PreconditionError("numerator and denominator use different variables")
    den = UniPoly(den.coeffs, num.var)
    return num, den


def _rat(v):
    return format_rational(v) if isinstance(v, Fraction) else str(v)


# ------------------------------------------------------------ commands
def cmd_restrict(spec, log):
    inp = spec.inputs
    if "model" in inp:
        params = inp["params"]
        if inp["model"] == "example-D":
            model = derive_example_D(params["a"], params["b"], params["d"])
            if inp.get("quotient"):
                model = quotient_even(model)
        else:
            keys = ("a0", "a1", "a2", "b1", "b2", "d")
            missing = [k for k in keys if k not in params]
            if missing:
                raise SchemaError([(f"inputs/params/{k}", "required") for k in missing])
            model = derive_ecc_curve(*(params[k] for k in keys))
        log.extend(model.derivation_log)
        out = {"model": inp["model"], "variables": list(model.variables), "equation": str(model.equation)}
        if model.rhs is not None:
            out["rhs"] = str(model.rhs)
            out["genus"] = hyperelliptic_genus(model.rhs)
        if model.invariants:
            out["invariants"] = {k: _rat(v) for k, v in model.invariants.items()}
        return out
    L = _field(spec)
    if L is None:
        raise PreconditionError("restrict needs a field")
    g = spec.generator
    curve = CurveOverL(L, tuple(inp["variables"]),
                       tuple(_over(e, L, g) for e in inp.get("equations", [])),
                       tuple(inp.get("parameters", [])))
    pairs = []
    for item in inp.get("morphism", []):
        num = _over(item["num"], L, g)
        den = _over(item["den"], L, g) if "den" in item else MultiPoly.const(L.one, num.vars)
        pairs.append((num, den))
    res = relative_restrict(curve, MorphismData(tuple(pairs)))
    log.append({"step": "expand", "detail": "variable expansion",
                "result": json.dumps({k: list(v) for k, v in res.variable_expansion.items()}, sort_keys=True)})
    return {
        "variable_expansion": {k: list(v) for k, v in res.variable_expansion.items()},
        "restriction_equations": [str(e) for e in res.restriction_equations],
        "rationality_equations": [str(e) for e in res.rationality_equations],
        "denominator_nonvanishing": [str(e) for e in res.denominator_nonvanishing],
    }


def _profile_from_points(inp):
    pts = []
    for i, p in enumerate(inp.get("points", [])):
        pts.append(ProfilePoint(tuple(FiberType(t) for t in p["types"]), p.get("residue_degree", 1),
                                p.get("label", f"p{i + 1}")))
    return RamificationProfile(tuple(inp["degrees"]), tuple(pts))


def cmd_genus(spec, log):
    inp = spec.inputs
    L, g = _field(spec), spec.generator
    out = {}
    if "hyperelliptic" in inp:
        rhs = _univariate(inp["hyperelliptic"], None, g)
        out["hyperelliptic_genus"] = hyperelliptic_genus(rhs)
    if "maps" in inp:
        profile = ramification_profile([_ratfn(m, L, g) for m in inp["maps"]])
    elif "degrees" in inp:
        profile = _profile_from_points(inp)
    else:
        if not out:
            raise PreconditionError("genus needs maps, degrees/points or hyperelliptic")
        return out
    report = fiber_product_genus(profile, inp.get("g_S", 0))
    out.update({
        "arithmetic_genus": report.arithmetic_genus,
        "formula_a": _rat(report.formula_a_value),
        "formula_b": _rat(report.formula_b_value),
        "degrees": list(profile.degrees),
        "r": profile.r,
        "per_point": report.per_point_contributions,
        "possibly_disconnected": report.possibly_disconnected,
    })
    return out


def cmd_fiber_types(spec, log):
    inp = spec.inputs
    L, g = _field(spec), spec.generator
    maps = inp.get("maps") or ([inp["map"]] if "map" in inp else None)
    if not maps:
        raise PreconditionError("fiber-types needs map or maps")
    fs = [_ratfn(m, L, g) for m in maps]
    if "at" in inp:
        rows = []
        for v in inp["at"]:
            if v == "oo":
                value, label = None, "oo"
            else:
                c = _over(v, L, g)
                if c.used_vars():
                    raise PreconditionError(f"value {v} is not a constant")
                value, label = c.constant_value(), str(v)
                if L is not None:
                    value = L.coerce(value)
            rows.append({"value": label, "types": [str(fiber_type_over(f, value)) for f in fs]})
        return {"fibers": rows}
    rows = []
    for bp, types in profile_points(fs):
        rows.append({
            "branch_point": bp.label,
            "residue_degree": bp.residue_degree,
            "types": [str(t) for t in types],
            "hurwitz": [hurwitz_contribution(t) for t in types],
        })
    return {"branch_points": rows}


def cmd_chabauty(spec, log):
    inp = dict(spec.inputs)
    inp["degrees"] = tuple(inp.get("degrees", ()))
    report = applicability_report(ChabautyInput(**inp))
    return report.as_dict()


def cmd_table1(spec, log):
    keys = ("pair_F", "pair_conj", "combined", "contributions", "combined_contribution",
            "symmetrized", "symmetrized_combined")
    return {"rows": [dict(zip(keys, row)) for row in table1_rows()]}


def cmd_enum_deg3(spec, log):
    return {"configurations": [config_key(c) for c in enumerate_deg3_configs()]}


HANDLERS = {
    "restrict": cmd_restrict,
    "genus": cmd_genus,
    "fiber-types": cmd_fiber_types,
    "chabauty": cmd_chabauty,
    "table1": cmd_table1,
    "enum-deg3": cmd_enum_deg3,
}


def run_job(spec, log_derivation=False):
    """Execute a :class:`JobSpec`; returns the output document (a dict)."""
    log = []
    doc = {"command": spec.command}
    if spec.command == "paper-suite":
        results, ok = run_paper_suite()
        doc["results"] = {"targets": results, "passed": sum(r["passed"] for r in results), "total": len(results)}
        doc["exit_status"] = EXIT_OK if ok else EXIT_MISMATCH
        return doc
    try:
        doc["results"] = HANDLERS[spec.command](spec, log)
        doc["exit_status"] = EXIT_OK
    except (SchemaError, ParseError):
        raise
    except (RelWeilError, ArithmeticError, ValueError) as exc:
        doc["results"] = {"error": f"{type(exc).__name__}: {exc}"}
        doc["exit_status"] = EXIT_COMPUTATION
    if log_derivation:
        doc["derivation_log"] = log
    return doc


def render(doc, fmt):
    if fmt == "structured":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    lines = [f"command: {doc['command']}"]
    res = doc.get("results", {})
    if doc["command"] == "paper-suite":
        for r in res["targets"]:
            mark = "PASS" if r["passed"] else "FAIL"
            lines.append(f"[{mark}] {r['target']}")
            if not r["passed"]:
                if "error" in r:
                    lines.append(f"    error: {r['error']}")
                else:
                    lines.append(f"    expected: {r['expected']}")
                    lines.append(f"    actual:   {r['actual']}")
        lines.append(f"{res['passed']}/{res['total']} targets passed")
    else:
        lines.extend(_text_tree(res, 0))
    if doc.get("derivation_log"):
        lines.append("derivation:")
        for i, step in enumerate(doc["derivation_log"], 1):
            lines.append(f"  {i}. {step['step']}: {step['detail']}")
            if "result" in step:
                lines.append(f"     -> {step['result']}")
    lines.append(f"exit status: {doc['exit_status']}")
    return "\n".join(lines) + "\n"


def _text_tree(value, depth):
    pad = "  " * depth
    out = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text_tree(v, depth + 1))
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                out.extend(_text_tree(v, depth + 1))
            else:
                out.append(f"{pad}- {v}")
    else:
        out.append(f"{pad}{value}")
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="relweil",
        description="Relative Weil restrictions, fibered-product genera and Chabauty bookkeeping.",
    )
    parser.add_argument("command", nargs="?", choices=("table1", "enum-deg3", "paper-suite"),
                        help="run a built-in command without a job file")
    parser.add_argument("--job", help="job file (JSON); '-' reads standard input")
    parser.add_argument("--out", help="write the report here instead of standard output")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--log-derivation", action="store_true",
                        help="include elimination/substitution steps in the report")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if (args.job is None) == (args.command is None):
        parser.error("give exactly one of --job or a built-in command")
    try:
        if args.job is not None:
            if args.job == "-":
                text = sys.stdin.read()
            else:
                with open(args.job, encoding="utf-8") as fh:
                    text = fh.read()
            spec = parse_job(text)
        else:
            spec = JobSpec(args.command)
        doc = run_job(spec, args.log_derivation)
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = render(doc, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return doc["exit_status"]


if __name__ == "__main__":
    sys.exit(main())
