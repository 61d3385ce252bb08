"""Command-line front end.  JSON in, JSON/DOT/text out.

Exit codes: 0 on success (verdicts are reported, not enforced), 1 when an
``--expect`` assertion fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from . import serialize as ser
from .additive import additive_act, additive_act_X, build_paper_fan, ga_orbit_report, orbit_dimension_Y
from .cox import ChartPoint, character_relations, lift, quasitorus, ray_matrix
from .fans import (dual_fan_of_polytope, fan_isomorphic, fan_validate, is_complete, is_smooth,
                   orbit_poset, primitive_collections, star_fan)
from .linalg import rational_str
from .lp import feasible, verify_farkas
from .projectivity import is_projective


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(text: str, path: Optional[str], stdout: TextIO) -> None:
    if path is None or path == "-":
        stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _expectations(items: Sequence[str]) -> dict[str, bool]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or val.lower() not in ("true", "false"):
            raise UsageError(f"--expect takes prop=true|false, got {item!r}")
        out[key] = val.lower() == "true"
    return out


def _check_expect(result: dict, expect: dict[str, bool], stderr: TextIO) -> int:
    code = 0
    for key, want in expect.items():
        if key not in result:
            raise UsageError(f"--expect {key}: property was not computed")
        got = result[key]
        if isinstance(got, dict):
            got = got.get("projective")
        if got is not want:
            stderr.write(f"expectation failed: {key} is {str(got).lower()}, expected {str(want).lower()}\n")
            code = 1
    return code


# -- subcommands ------------------------------------------------------------------

def _fan(args, io):
    return ser.fan_from_json(ser.loads(_read(args.fan, io[0])))


def cmd_paperfan(args, io):
    _write(ser.dumps(ser.fan_to_json(build_paper_fan(args.n))), args.output, io[1])
    return 0


def cmd_validate(args, io):
    f = _fan(args, io)
    rep = fan_validate(f)
    result = {"valid": rep.ok,
              "violations": [{"cone_a": list(v.cone_a), "cone_b": list(v.cone_b),
                              "point": list(v.point)} for v in rep.violations]}
    io[1].write(ser.dumps(result))
    return _check_expect(result, _expectations(args.expect), io[2])


def cmd_props(args, io):
    f = _fan(args, io)
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    known = {"smooth", "complete", "projective"}
    bad = [c for c in checks if c not in known]
    if bad:
        raise UsageError(f"unknown property {bad[0]!r}; choose from {', '.join(sorted(known))}")
    result: dict = {}
    if "smooth" in checks:
        result["smooth"] = is_smooth(f)
    if "complete" in checks:
        result["complete"] = is_complete(f)
    if "projective" in checks:
        v = is_projective(f)
        doc = ser.verdict_to_json(v)
        doc["verdict"] = "projective" if v.projective else "non_projective"
        result["projective"] = doc
        if args.certificate:
            if not v.verify(f):  # pragma: no cover - is_projective already re-verified
                raise AssertionError("evidence failed re-verification")
            _write(ser.dumps(doc), args.certificate, io[1])
    elif args.certificate:
        raise UsageError("--certificate needs --check projective")
    io[1].write(ser.dumps(result))
    return _check_expect(result, _expectations(args.expect), io[2])


def cmd_primcoll(args, io):
    f = _fan(args, io)
    io[1].write(ser.dumps([[f.label(i) for i in c] for c in primitive_collections(f)]))
    return 0


def cmd_star(args, io):
    f = _fan(args, io)
    try:
        ray = int(args.ray)
    except ValueError:
        ray = f.index(args.ray)
    if not 0 <= ray < len(f.rays):
        raise UsageError(f"ray index {ray} out of range")
    star, P = star_fan(f, (ray,))
    io[1].write(ser.dumps({"ray": f.label(ray), "projection": [list(r) for r in P],
                           "fan": ser.fan_to_json(star)}))
    return 0


def cmd_cox(args, io):
    f = _fan(args, io)
    data = quasitorus(f)
    io[1].write(ser.dumps({
        "rays": [f.label(i) for i in range(len(f.rays))],
        "ray_matrix": ray_matrix(f),
        "relations": character_relations(f),
        "kernel_basis": [list(r) for r in data.kernel_basis],
        "invariant_factors": list(data.invariant_factors),
        "torsion": list(data.torsion),
    }))
    return 0


def cmd_dualfan(args, io):
    P = ser.polytope_from_json(ser.loads(_read(args.polytope, io[0])))
    _write(ser.dumps(ser.fan_to_json(dual_fan_of_polytope(P))), args.output, io[1])
    return 0


def _point(args, io):
    return ser.point_from_json(ser.loads(_read(args.point, io[0])))


def cmd_act(args, io):
    f = _fan(args, io)
    try:
        c = [ser.rat_in(x.strip()) for x in args.params.split(",")]
    except ser.FormatError as exc:
        raise UsageError(f"--params: {exc}") from exc
    if len(c) != f.rank:
        raise UsageError(f"--params needs {f.rank} values")
    p = _point(args, io)
    if isinstance(p, ChartPoint):
        out = ser.chart_point_to_json(additive_act_X(c, p, f))
    else:
        out = ser.point_to_json(additive_act(c, p, f))
    io[1].write(ser.dumps(out))
    return 0


def cmd_orbitdim(args, io):
    f = _fan(args, io)
    p = _point(args, io)
    y = lift(p, f) if isinstance(p, ChartPoint) else p
    io[1].write(ser.dumps({"orbit_dimension": orbit_dimension_Y(y, f)}))
    return 0


def cmd_report3(args, io):
    rep = ga_orbit_report(3)
    io[1].write(ser.dumps(rep.to_dict()) if args.json else rep.render())
    return 0


def cmd_isom(args, io):
    if args.fan1 == "-" and args.fan2 == "-":
        raise UsageError("at most one fan can come from stdin")
    f1 = ser.fan_from_json(ser.loads(_read(args.fan1, io[0])))
    f2 = ser.fan_from_json(ser.loads(_read(args.fan2, io[0])))
    A = fan_isomorphic(f1, f2)
    result = {"isomorphic": A is not None, "matrix": A}
    io[1].write(ser.dumps(result))
    return _check_expect(result, _expectations(args.expect), io[2])


def cmd_export_dot(args, io):
    f = _fan(args, io)
    io[1].write(orbit_poset(f).to_dot(f))
    return 0


def cmd_feasible(args, io):
    s = ser.system_from_json(ser.loads(_read(args.system, io[0])))
    res = feasible(s)
    if res.feasible:
        result = {"feasible": True, "witness": [rational_str(x) for x in res.witness]}
    else:
        assert verify_farkas(s, res.certificate)
        result = {"feasible": False, "certificate": ser.certificate_to_json(res.certificate)}
    io[1].write(ser.dumps(result))
    return _check_expect(result, _expectations(args.expect), io[2])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toricfan", description="Exact computations with smooth complete fans.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fan_cmd(name, func, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("fan", nargs="?", default="-", help="fan JSON file (default: stdin)")
        s.set_defaults(func=func)
        return s

    def expect(s):
        s.add_argument("--expect", action="append", default=[], metavar="PROP=BOOL",
                       help="exit 1 unless the property has this value")

    s = sub.add_parser("paperfan", help="the fan Sigma_n")
    s.add_argument("n", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_paperfan)

    expect(fan_cmd("validate", cmd_validate, "check that cones meet in common faces"))
    s = fan_cmd("props", cmd_props, "smoothness, completeness, projectivity")
    s.add_argument("--check", default="smooth,complete,projective")
    s.add_argument("--certificate", metavar="OUT", help="write the verified projectivity verdict here")
    expect(s)
    fan_cmd("primcoll", cmd_primcoll, "primitive collections")
    fan_cmd("star", cmd_star, "star fan of a ray").add_argument("--ray", required=True,
                                                                help="ray index or label")
    fan_cmd("cox", cmd_cox, "quasitorus of the quotient construction")
    fan_cmd("export-dot", cmd_export_dot, "orbit poset as DOT")

    s = sub.add_parser("dualfan", help="normal fan of a simple polytope")
    s.add_argument("polytope", nargs="?", default="-")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dualfan)

    s = fan_cmd("act", cmd_act, "additive action on a point")
    s.add_argument("--point", required=True)
    s.add_argument("--params", required=True, help="comma-separated c1,...,cn")
    fan_cmd("orbitdim", cmd_orbitdim, "dimension of the additive orbit").add_argument("--point", required=True)

    s = sub.add_parser("report3", help="orbit structure for n = 3")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_report3)

    s = sub.add_parser("isom", help="search for a lattice isomorphism of fans")
    s.add_argument("fan1")
    s.add_argument("fan2")
    expect(s)
    s.set_defaults(func=cmd_isom)

    s = sub.add_parser("feasible", help="exact feasibility of a linear system")
    s.add_argument("system", nargs="?", default="-")
    expect(s)
    s.set_defaults(func=cmd_feasible)
    return p


def run(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, stdout: TextIO = None,
        stderr: TextIO = None) -> int:
    io = (stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, io)
    except (UsageError, ValueError) as exc:
        # FormatError and FanError are ValueErrors
        io[2].write(f"toricfan: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
