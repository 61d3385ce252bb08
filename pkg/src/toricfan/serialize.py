"""JSON encodings of fans, polytopes, systems, verdicts and points.

Rationals are written as ints when integral and as ``"p/q"`` strings
otherwise, so every document round-trips exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cox import ChartPoint
from .fans import Fan, Polytope
from .linalg import rational_str
from .lp import FarkasCertificate, LinearSystem
from .projectivity import ProjectivityVerdict


class FormatError(ValueError):
    pass


def rat_out(x) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else rational_str(x)


def rat_in(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {x!r}") from exc


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"expected an integer, got {x!r}")
    return x


def _list(x, what: str) -> list:
    if not isinstance(x, list):
        raise FormatError(f"{what} must be a list")
    return x


def _obj(d, keys: tuple[str, ...], what: str) -> dict:
    if not isinstance(d, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise FormatError(f"{what} is missing {', '.join(missing)}")
    return d


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc


# -- fans and polytopes ----------------------------------------------------------

def fan_to_json(f: Fan) -> dict:
    d = {"rank": f.rank, "rays": [list(r) for r in f.rays],
         "max_cones": [list(c) for c in f.max_cones]}
    if f.labels is not None:
        d["labels"] = list(f.labels)
    return d


def fan_from_json(d) -> Fan:
    d = _obj(d, ("rank", "rays", "max_cones"), "fan")
    rays = tuple(tuple(_int(x) for x in _list(r, "ray")) for r in _list(d["rays"], "rays"))
    cones = tuple(tuple(_int(i) for i in _list(c, "cone")) for c in _list(d["max_cones"], "max_cones"))
    labels = d.get("labels")
    if labels is not None:
        if not all(isinstance(x, str) for x in _list(labels, "labels")):
            raise FormatError("labels must be strings")
        labels = tuple(labels)
    return Fan(_int(d["rank"]), rays, cones, labels)


def polytope_to_json(P: Polytope) -> dict:
    return {"rank": P.rank, "vertices": [list(v) for v in P.vertices]}


def polytope_from_json(d) -> Polytope:
    d = _obj(d, ("rank", "vertices"), "polytope")
    verts = tuple(tuple(_int(x) for x in _list(v, "vertex")) for v in _list(d["vertices"], "vertices"))
    return Polytope(_int(d["rank"]), verts)


# -- systems and verdicts --------------------------------------------------------

def system_to_json(s: LinearSystem) -> dict:
    def rows(rs):
        return [[rat_out(x) for x in a] + [rat_out(b)] for a, b in rs]
    return {"vars": s.num_vars, "eq": rows(s.equalities), "ge": rows(s.inequalities)}


def system_from_json(d) -> LinearSystem:
    d = _obj(d, ("vars",), "system")
    n = _int(d["vars"])

    def rows(key):
        out = []
        for r in _list(d.get(key, []), key):
            r = [rat_in(x) for x in _list(r, "row")]
            if len(r) != n + 1:
                raise FormatError(f"each {key} row needs {n} coefficients and a right-hand side")
            out.append((r[:-1], r[-1]))
        return out
    return LinearSystem(n, rows("eq"), rows("ge"))


def certificate_to_json(c: FarkasCertificate) -> dict:
    return {"eq": [rat_out(x) for x in c.eq_multipliers], "ge": [rat_out(x) for x in c.ineq_multipliers]}


def certificate_from_json(d) -> FarkasCertificate:
    d = _obj(d, ("eq", "ge"), "certificate")
    return FarkasCertificate([rat_in(x) for x in _list(d["eq"], "eq")],
                             [rat_in(x) for x in _list(d["ge"], "ge")])


def verdict_to_json(v: ProjectivityVerdict) -> dict:
    return {
        "projective": v.projective,
        "witness": None if v.support is None
        else [[rat_out(x) for x in u] for u in v.support.functionals],
        "certificate": None if v.certificate is None else certificate_to_json(v.certificate),
        "system": system_to_json(v.system),
    }


# -- points ----------------------------------------------------------------------

def point_to_json(y) -> dict:
    return {"coords": [rational_str(x) for x in y]}


def chart_point_to_json(x: ChartPoint) -> dict:
    return {"cone": list(x.cone), "coords": [rational_str(c) for c in x.coords]}


def point_from_json(d) -> tuple[Fraction, ...] | ChartPoint:
    """PointY ``{"coords"}`` or ChartPoint ``{"cone", "coords"}``."""
    d = _obj(d, ("coords",), "point")
    coords = tuple(rat_in(x) for x in _list(d["coords"], "coords"))
    if "cone" in d:
        return ChartPoint(tuple(_int(i) for i in _list(d["cone"], "cone")), coords)
    return coords
