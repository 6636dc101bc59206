"""Command line front end: JSON jobs in, canonical JSON reports out.

Every command reads one JSON object (except `quintic`, which needs no
input), runs the corresponding library operation, and writes a single
canonical JSON document: keys sorted, no whitespace, one trailing
newline.  Exit status 0 means every verified statement held, 1 means
the mathematics failed somewhere and the report carries a witness, 2
means the input could not be interpreted.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from .fans import Fan, is_complete, is_dual_pair, is_smooth, validate_fan
from .mirrors import (
    bb_mirror_pair,
    bhk_pair,
    givental_mirror,
    hori_vafa_mirror,
    is_reflexive,
    phase_symmetries,
    quintic_pipeline,
    verify_bhk_criterion,
)
from .polyhedra import Cone
from .toric_lg import ToricDivisor, is_cartier, section_polytope, split_bundle_fan

SCHEMA_VERSION = 1

# integers at or beyond 2^53 are not exact in common JSON consumers
_INT_LIMIT = 2 ** 53


class InputError(ValueError):
    """A job payload that cannot be interpreted."""


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= _INT_LIMIT else x
    if isinstance(x, Fraction):
        return _jsonable(int(x)) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True,
                      separators=(",", ":")) + "\n"


def _require(obj, key, what):
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be an object")
    if key not in obj:
        raise InputError(f"{what} is missing the field {key!r}")
    return obj[key]


def _as_int(x, what):
    if isinstance(x, bool):
        raise InputError(f"{what} must be an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            raise InputError(f"{what} is not an integer: {x!r}")
    raise InputError(f"{what} must be an integer")


def _int_vector(v, what):
    if not isinstance(v, (list, tuple)):
        raise InputError(f"{what} must be a list")
    return tuple(_as_int(x, f"entry of {what}") for x in v)


def _int_matrix(m, what):
    if not isinstance(m, (list, tuple)) or not m:
        raise InputError(f"{what} must be a nonempty list of rows")
    return tuple(_int_vector(row, f"row of {what}") for row in m)


def _fraction(x, what):
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"{what} must be an integer or a fraction string")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{what} is not a fraction: {x!r}")
    raise InputError(f"{what} must be an integer or a fraction string")


def parse_fan(obj):
    """(Fan, warnings).  Without a "marked" field the given vectors are
    normalized into rays and kept as the markers, with a warning for
    every vector that was not primitive."""
    rank = _as_int(_require(obj, "rank", "fan"), "fan rank")
    rays = [_int_vector(r, "ray") for r in _require(obj, "rays", "fan")]
    cones = [_int_vector(c, "cone") for c in _require(obj, "max_cones", "fan")]
    warnings = []
    try:
        if "marked" in obj:
            marked = [_int_vector(m, "marked generator") for m in obj["marked"]]
            fan = Fan(rays, cones, rank, marked_generators=marked)
        else:
            fan = Fan.from_generators(rays, cones, rank)
            for given, ray in zip(fan.marked_generators, fan.rays):
                if given != ray:
                    warnings.append(
                        f"ray {list(given)} was normalized to {list(ray)}; "
                        "the given vector is kept as its marker")
    except ValueError as e:
        raise InputError(f"bad fan: {e}")
    return fan, tuple(warnings)


def emit_fan(fan):
    out = {
        "rank": fan.lattice_rank,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }
    if any(m != r for m, r in zip(fan.marked_generators, fan.rays)):
        out["marked"] = [list(m) for m in fan.marked_generators]
    return out


def _parse_divisor(fan, obj, what):
    coeffs = _int_vector(_require(obj, "coeffs", what), f"{what} coeffs")
    try:
        return ToricDivisor(fan, coeffs)
    except ValueError as e:
        raise InputError(f"bad {what}: {e}")


def _duality_json(rep):
    if rep.witness is None:
        witness = None
    else:
        m, n, value = rep.witness
        witness = {"m": list(m), "n": list(n), "pairing": value}
    return {"verdict": rep.verdict, "witness": witness}


def _base_change_json(rep):
    if rep is None:
        return None
    return {
        "verdict": rep.verdict,
        "is_isomorphism": rep.is_isomorphism,
        "surviving": list(rep.surviving),
        "witness": None if rep.witness is None else list(rep.witness),
    }


def _potential_json(pot):
    return [{"exponent": list(e), "coefficient": str(c)} for e, c in pot.terms]


def _mirror_json(rep):
    return {
        "passed": rep.passed,
        "sigma_x": emit_fan(rep.sigma_x),
        "sigma_x_prime": emit_fan(rep.sigma_x_prime),
        "duality": _duality_json(rep.duality),
        "to_gamma": _base_change_json(rep.to_gamma),
        "to_gamma_prime": _base_change_json(rep.to_gamma_prime),
        "checks": dict(rep.checks),
        "counts": dict(rep.counts),
        "potentials": {name: _potential_json(p) for name, p in rep.potentials},
        "notes": list(rep.notes),
    }


class JobRequest:
    """One parsed command invocation."""

    __slots__ = ("command", "payload", "height_bound")

    def __init__(self, command, payload, height_bound=3):
        object.__setattr__(self, "command", str(command))
        object.__setattr__(self, "payload", payload)
        object.__setattr__(self, "height_bound", int(height_bound))

    def __setattr__(self, name, value):
        raise AttributeError("JobRequest is immutable")


class ReportDocument:
    """A command's output, ready to serialize; `failed` drives exit 1."""

    __slots__ = ("command", "body", "failed")

    def __init__(self, command, body, failed):
        object.__setattr__(self, "command", str(command))
        object.__setattr__(self, "body", dict(body))
        object.__setattr__(self, "failed", bool(failed))

    def __setattr__(self, name, value):
        raise AttributeError("ReportDocument is immutable")

    def to_json(self) -> str:
        doc = {"schema_version": SCHEMA_VERSION, "command": self.command}
        doc.update(self.body)
        return canonical_json(doc)


def _cmd_dualcheck(request):
    payload = request.payload
    fan, w1 = parse_fan(_require(payload, "fan", "job"))
    dual, w2 = parse_fan(_require(payload, "dual_fan", "job"))
    try:
        rep = is_dual_pair(fan, dual)
    except ValueError as e:
        raise InputError(str(e))
    body = {"duality": _duality_json(rep), "warnings": list(w1 + w2)}
    return ReportDocument(request.command, body, not rep.verdict)


def _cmd_fan_validate(request):
    fan, warnings = parse_fan(_require(request.payload, "fan", "job"))
    v = validate_fan(fan)
    body = {
        "ok": v.ok,
        "diagnostics": list(v.diagnostics),
        "complete": is_complete(fan),
        "smooth": is_smooth(fan),
        "rank": fan.lattice_rank,
        "ray_count": len(fan.rays),
        "warnings": list(warnings),
    }
    return ReportDocument(request.command, body, not v.ok)


def _parse_bhk_input(payload):
    p = _int_matrix(_require(_require(payload, "P", "job"), "entries", "P"),
                    "P entries")
    phases = []
    if payload.get("Q") is not None:
        for row in _require(payload["Q"], "phases", "Q"):
            if not isinstance(row, (list, tuple)):
                raise InputError("phase must be a list")
            phases.append(tuple(_fraction(x, "phase entry") for x in row))
    return p, phases


def _cmd_bhk(request):
    p, phases = _parse_bhk_input(request.payload)
    rep = bhk_pair(p, phases)
    crit = verify_bhk_criterion(p, phases)
    groups = {
        "symmetry_factors": list(phase_symmetries(p).invariant_factors),
        "q_factors": list(crit.q_group.invariant_factors),
        "q_dual_factors": list(crit.q_dual_group.invariant_factors),
        "quotient_factors": list(crit.quotient_factors),
        "dual_quotient_factors": list(crit.dual_quotient_factors),
        "criterion_holds": crit.holds,
    }
    body = {"report": _mirror_json(rep), "groups": groups}
    return ReportDocument(request.command, body, not rep.passed)


def _cmd_bb(request):
    payload = request.payload
    rank = _as_int(_require(payload, "rank", "job"), "rank")
    gens = _int_matrix(_require(payload, "generators", "job"), "generators")
    if any(len(g) != rank for g in gens):
        raise InputError("generator length does not match the rank")
    ell_dual = _int_vector(_require(payload, "ell_dual", "job"), "ell_dual")
    splitting = _int_matrix(_require(payload, "splitting", "job"), "splitting")
    dual_splitting = None
    if payload.get("dual_splitting") is not None:
        dual_splitting = _int_matrix(payload["dual_splitting"],
                                     "dual_splitting")
    try:
        cone = Cone(list(gens), rank)
        refl = is_reflexive(cone, request.height_bound)
    except ValueError as e:
        raise InputError(str(e))
    if refl.cone_report.functional is not None \
            and tuple(ell_dual) != refl.cone_report.functional:
        raise InputError(
            f"ell_dual {list(ell_dual)} does not match the height functional "
            f"{list(refl.cone_report.functional)} of the cone")
    rep = bb_mirror_pair(gens, splitting, dual_splitting,
                         height_bound=request.height_bound)
    return ReportDocument(request.command, {"report": _mirror_json(rep)},
                          not rep.passed)


def _parse_bundle_input(payload):
    fan, warnings = parse_fan(_require(payload, "fan", "job"))
    bundles = _require(payload, "bundles", "job")
    if not isinstance(bundles, (list, tuple)) or not bundles:
        raise InputError("bundles must be a nonempty list")
    divisors = [_parse_divisor(fan, b, "bundle summand") for b in bundles]
    basis = None
    if payload.get("basis_rays") is not None:
        basis = []
        for el in payload["basis_rays"]:
            if isinstance(el, (list, tuple)):
                basis.append(_int_vector(el, "basis ray"))
            else:
                basis.append(_as_int(el, "basis ray index"))
    return fan, divisors, basis, warnings


def _cmd_givental(request, build):
    fan, divisors, basis, warnings = _parse_bundle_input(request.payload)
    rep = build(fan, divisors, basis)
    body = {"report": _mirror_json(rep), "warnings": list(warnings)}
    return ReportDocument(request.command, body, not rep.passed)


def _cmd_quintic(request):
    rep = quintic_pipeline()
    body = {
        "report": _mirror_json(rep),
        "dual_fans": rep.duality.verdict,
        "xi_count": rep.count("xi_count"),
        "xi_prime_count": rep.count("xi_prime_count"),
    }
    return ReportDocument(request.command, body, not rep.passed)


def _cmd_section_polytope(request):
    payload = request.payload
    fan, warnings = parse_fan(_require(payload, "fan", "job"))
    divisor = _parse_divisor(fan, _require(payload, "divisor", "job"),
                             "divisor")
    try:
        poly = section_polytope(divisor)
    except ValueError as e:
        raise InputError(str(e))
    body = {
        "cartier": is_cartier(divisor) is not None,
        "vertices": [list(v) for v in poly.vertices],
        "lattice_points": [list(p) for p in poly.lattice_points()],
        "count": len(poly.lattice_points()),
        "warnings": list(warnings),
    }
    return ReportDocument(request.command, body, False)


def _cmd_bundle_fan(request):
    payload = request.payload
    fan, warnings = parse_fan(_require(payload, "fan", "job"))
    summands = _require(payload, "divisors", "job")
    if not isinstance(summands, (list, tuple)) or not summands:
        raise InputError("divisors must be a nonempty list")
    divisors = [_parse_divisor(fan, d, "divisor") for d in summands]
    try:
        total = split_bundle_fan(divisors)
    except ValueError as e:
        raise InputError(str(e))
    body = {"fan": emit_fan(total), "warnings": list(warnings)}
    return ReportDocument(request.command, body, False)


_COMMANDS = {
    "dualcheck": (_cmd_dualcheck, True,
                  "test two marked fans for nonnegative marker pairing"),
    "fan-validate": (_cmd_fan_validate, True,
                     "run the fan condition and report diagnostics"),
    "bhk": (_cmd_bhk, True,
            "mirror pair from an exponent matrix and a symmetry group"),
    "bb": (_cmd_bb, True,
           "mirror pair from a reflexive cone and a splitting"),
    "givental": (lambda r: _cmd_givental(r, givental_mirror), True,
                 "split-bundle mirror with positive fiber signs"),
    "hori-vafa": (lambda r: _cmd_givental(r, hori_vafa_mirror), True,
                  "split-bundle mirror with negative fiber signs"),
    "quintic": (_cmd_quintic, False,
                "the built-in degree-five pipeline"),
    "section-polytope": (_cmd_section_polytope, True,
                         "sections of one divisor on a complete fan"),
    "bundle-fan": (_cmd_bundle_fan, True,
                   "total-space fan of a sum of Cartier divisors"),
}


def _load_payload(args):
    if not _COMMANDS[args.command][1]:
        return None
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {args.input}: {e}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}")


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write the report here instead of stdout")
    common.add_argument("--height-bound", type=int, default=3, metavar="H",
                        help="reflexivity scan depth (default 3)")
    common.add_argument("--verbose", action="store_true",
                        help="print timing to stderr")
    parser = argparse.ArgumentParser(
        prog="dualfan",
        description="dual fans, bundle total spaces, and mirror pipelines")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_input, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if needs_input:
            p.add_argument("input",
                           help="path to a JSON job file, or - for stdin")
    args = parser.parse_args(argv)

    started = time.monotonic()
    try:
        payload = _load_payload(args)
        request = JobRequest(args.command, payload, args.height_bound)
        document = _COMMANDS[args.command][0](request)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = document.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.verbose:
        elapsed = time.monotonic() - started
        print(f"{args.command} finished in {elapsed:.3f}s", file=sys.stderr)
    return 1 if document.failed else 0


if __name__ == "__main__":
    sys.exit(main())
