"""The fan family Sigma_n and its additive action.

Rays are ordered ``(b0, b1, ..., bn, a1, ..., an)`` with ``a_i = e_i``,
``b0 = -(e_1 + ... + e_n)`` and ``b_i = b0 + a_i``; homogeneous coordinates
``(x0, ..., xn, x'1, ..., x'n)`` follow the same order.  The vector group
acts upstairs by ``x'_j -> x'_j + c_j * x0 x1 ... (no x_j) ... xn``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .cox import (ChartPoint, chart_origin, in_Y, lift, points_equal, quasitorus,
                  quotient_map, random_point, zero_support)
from .fans import Cone, Fan, closure_intersection, fan_isomorphic, star_fan, verify_isomorphism

P2_FAN = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
# blowup of F_1 at a torus-fixed point; cones on cyclically adjacent rays
BLOWUP_F1_FAN = Fan(2, ((0, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)),
                    ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4)))


def family_labels(n: int) -> tuple[str, ...]:
    return tuple(f"b{i}" for i in range(n + 1)) + tuple(f"a{j}" for j in range(1, n + 1))


def _cyclic(i: int, n: int) -> list[int]:
    # (i+1, ..., i+n-1) reduced into 1..n
    return [(i + t - 1) % n + 1 for t in range(1, n)]


def family_cones(n: int) -> dict[str, tuple[str, ...]]:
    """Maximal cones of Sigma_n by name: ``A0`` and ``A'(i,j)`` over the subdivided faces."""
    if n < 3:
        raise ValueError("the family is defined for n >= 3")
    cones = {"A0": tuple(f"a{j}" for j in range(1, n + 1))}
    for i in range(1, n + 1):
        c = _cyclic(i, n)
        for j in range(1, n):
            cones[f"A'({i},{j})"] = (tuple(f"a{k}" for k in c[j - 1:])
                                     + tuple(f"b{k}" for k in c[:j]))
        cones[f"A'({i},{n})"] = tuple(f"b{k}" for k in c) + ("b0",)
    return cones


def build_paper_fan(n: int) -> Fan:
    if n < 3:
        raise ValueError("the family is defined for n >= 3")
    b0 = (-1,) * n
    e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays = [b0] + [tuple(x + y for x, y in zip(b0, e[i])) for i in range(n)] + e
    labels = family_labels(n)
    pos = {lab: k for k, lab in enumerate(labels)}
    cones = [tuple(pos[x] for x in c) for c in family_cones(n).values()]
    return Fan(n, tuple(rays), tuple(cones), labels)


def cone_names(f: Fan, n: int) -> dict[Cone, str]:
    return {f.cone_of(c): name for name, c in family_cones(n).items()}


def _dim(f: Fan) -> int:
    n, rem = divmod(len(f.rays) - 1, 2)
    if rem or n != f.rank:
        raise ValueError("not a fan of the family Sigma_n")
    return n


def family_monomials(n: int) -> list[tuple[int, ...]]:
    """Exponent vectors of ``x0 x1 ... (no x_j) ... xn`` for ``j = 1..n``."""
    return [tuple(int(i <= n and i != j) for i in range(2 * n + 1)) for j in range(1, n + 1)]


def additive_act(c: Sequence, y: Sequence, f: Optional[Fan] = None,
                 monomials: Optional[Sequence[Sequence[int]]] = None) -> tuple[Fraction, ...]:
    """Upstairs action of ``(c_1, ..., c_n)`` on homogeneous coordinates.

    The zero-support may change on the ``x'`` coordinates; when ``f`` is
    given the result is checked to stay in Y.
    """
    n = len(c)
    if len(y) != 2 * n + 1:
        raise ValueError(f"point has {len(y)} coordinates, expected {2 * n + 1}")
    monomials = monomials or family_monomials(n)
    out = [Fraction(x) for x in y]
    for j in range(n):
        cj = Fraction(c[j])
        if cj:
            m = Fraction(1)
            for x, ex in zip(y, monomials[j]):
                if ex:
                    m *= Fraction(x) ** ex
            out[n + 1 + j] += cj * m
    out = tuple(out)
    if f is not None and not in_Y(out, f):  # pragma: no cover - would contradict G-equivariance
        raise AssertionError("additive action left Y")
    return out


def check_equivariance(f: Fan, monomials: Optional[Sequence[Sequence[int]]] = None) -> bool:
    """Does ``x'_j`` carry the same G-character as the monomial it is shifted by?"""
    n = _dim(f)
    monomials = monomials or family_monomials(n)
    kernel = quasitorus(f).kernel_basis
    for j in range(n):
        diff = [-x for x in monomials[j]]
        diff[n + 1 + j] += 1
        if any(linalg.dot(row, diff) for row in kernel):
            return False
    return True


def additive_act_X(c: Sequence, x: ChartPoint, f: Fan) -> ChartPoint:
    """Induced action on X; stays in the input chart whenever the image lies in it."""
    y = additive_act(c, lift(x, f), f)
    cone = x.cone if set(zero_support(y)) <= set(x.cone) else None
    return quotient_map(y, f, cone)


def orbit_dimension_Y(y: Sequence, f: Fan) -> int:
    """Dimension of the additive orbit through ``pi(y)``.

    Rank of the tangent vectors of the additive action together with the
    G-orbit, minus the rank of the G-orbit tangents alone.
    """
    n = _dim(f)
    kernel = quasitorus(f).kernel_basis
    W = [[Fraction(k) * Fraction(x) for k, x in zip(row, y)] for row in kernel]
    V = []
    for j, mono in enumerate(family_monomials(n)):
        v = [Fraction(0)] * len(y)
        v[n + 1 + j] = Fraction(1)
        for x, ex in zip(y, mono):
            if ex:
                v[n + 1 + j] *= Fraction(x) ** ex
        V.append(v)
    return linalg.rank(V + W) - linalg.rank(W)


def orbit_dimension(x: ChartPoint, f: Fan) -> int:
    return orbit_dimension_Y(lift(x, f), f)


def base_point(n: int) -> tuple[Fraction, ...]:
    """``x0 = ... = xn = 1``, ``x'_j = 0``: its orbit is the open one."""
    return tuple(Fraction(int(i <= n)) for i in range(2 * n + 1))


# -- the n = 3 report ------------------------------------------------------------------

@dataclass
class OrbitReport:
    components: list[dict] = field(default_factory=list)
    curves: list[dict] = field(default_factory=list)
    intersections: list[dict] = field(default_factory=list)
    representatives: list[dict] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def check(self, name: str, passed: bool) -> bool:
        self.checks.append((name, bool(passed)))
        return passed

    def to_dict(self) -> dict:
        return {
            "components": self.components,
            "curves": self.curves,
            "intersections": self.intersections,
            "representatives": self.representatives,
            "checks": [{"name": n, "passed": p} for n, p in self.checks],
            "ok": self.ok,
        }

    def render(self) -> str:
        lines = ["Additive orbit structure on X(Sigma_3)", ""]
        lines.append("Components of the complement of the open orbit:")
        for comp in self.components:
            lines.append(f"  {comp['name']} = V({comp['ray']}): {comp['identified_as']}, "
                         f"sampled orbit dims {comp['sampled_orbit_dims']}")
        lines.append("")
        lines.append("Fixed curves:")
        for cur in self.curves:
            lines.append(f"  {cur['name']} = V({cur['cone']}), orbit dims {cur['sampled_orbit_dims']}")
        lines.append("")
        lines.append("Intersections:")
        for it in self.intersections:
            lines.append(f"  {it['name']}: {it['kind']}"
                         + (f" ({it['points']} point{'s' if it['points'] != 1 else ''})"
                            if it["kind"] == "points" else "")
                         + (f" = {it['equals']}" if it.get("equals") else ""))
        lines.append("")
        lines.append("Representatives:")
        for rep in self.representatives:
            point = "(" + ", ".join(rep["point"]["coords"]) + ")"
            lines.append(f"  {rep['name']} = G*{point} -> fixed point of {rep['cone']}")
        lines.append("")
        for name, passed in self.checks:
            lines.append(f"[{'PASS' if passed else 'FAIL'}] {name}")
        return "\n".join(lines) + "\n"


def _fmt_point(y) -> str:
    return "(" + ", ".join(linalg.rational_str(x) for x in y) + ")"


def component_star_check(n: int = 3) -> list[dict]:
    """Identify the star fans of the four components with the reference surfaces."""
    if n != 3:
        raise ValueError("the component identification is stated for n = 3")
    f = build_paper_fan(3)
    out = []
    for i in range(4):
        star, P = star_fan(f, (f.index(f"b{i}"),))
        ref, name = (P2_FAN, "P2") if i == 0 else (BLOWUP_F1_FAN, "blowup of F1 at a point")
        A = fan_isomorphic(star, ref)
        if A is None:
            raise ValueError(f"star fan of b{i} is not isomorphic to {name}")
        out.append({
            "ray": f"b{i}",
            "star_rays": [list(r) for r in star.rays],
            "projection": P,
            "reference": name,
            "witness": A,
            "verified": verify_isomorphism(A, star, ref),
        })
    return out


def ga_orbit_report(n: int = 3, samples: int = 20, seed: int = 0) -> OrbitReport:
    if n != 3:
        raise ValueError("the orbit report is stated for n = 3")
    f = build_paper_fan(3)
    rng = random.Random(seed)
    rep = OrbitReport()
    b = [f.index(f"b{i}") for i in range(4)]

    # components X_i = V(b_i) and their surfaces
    stars = component_star_check(3)
    for i in range(4):
        dims = set()
        for _ in range(samples):
            # generic point of X_i: only x_i vanishes
            dims.add(orbit_dimension_Y(random_point(f, rng, (b[i],)), f))
        rep.components.append({
            "name": f"X{i}", "ray": f"b{i}", "identified_as": stars[i]["reference"],
            "isomorphism_verified": stars[i]["verified"], "sampled_orbit_dims": sorted(dims),
        })
    rep.check("four components X0..X3", len(rep.components) == 4)
    rep.check("star fans identified (P2, and the blowup of F1 three times)",
              all(s["verified"] for s in stars))

    fixed = set()
    for _ in range(samples):
        cone = rng.choice([c for c in sorted(f.cones) if b[0] in c])
        fixed.add(orbit_dimension_Y(random_point(f, rng, cone), f))
    rep.check(f"X0 pointwise fixed ({samples} samples)", fixed == {0})
    rep.check("generic points of X1, X2, X3 lie on one-dimensional orbits",
              all(c["sampled_orbit_dims"] == [1] for c in rep.components[1:]))
    rep.check("base point orbit has dimension 3", orbit_dimension_Y(base_point(3), f) == 3)

    # fixed curves S_jk = V({b_j, b_k}) inside X_j
    for j in (1, 2, 3):
        others = [k for k in (0, 1, 2, 3) if k != j]
        for k in others:
            cone = tuple(sorted((b[j], b[k])))
            dims = {orbit_dimension_Y(random_point(f, rng, cone), f) for _ in range(5)}
            rep.curves.append({"name": f"S{j}{k}", "cone": f.render(cone),
                               "is_cone": f.is_cone(cone), "sampled_orbit_dims": sorted(dims)})
        k1, k2 = [k for k in others if k != 0]
        p1 = closure_intersection(f, (b[j], b[0]), (b[j], b[k1]))
        p2 = closure_intersection(f, (b[j], b[0]), (b[j], b[k2]))
        rep.check(f"|S{j}0 ∩ S{j}{k1}| = |S{j}0 ∩ S{j}{k2}| = 1",
                  len(p1) == 1 and len(p2) == 1 and len(p1[0]) == 3 and len(p2[0]) == 3)
        rep.check(f"S{j}0 ∩ S{j}{k1} != S{j}0 ∩ S{j}{k2}",
                  not points_equal(chart_origin(f, p1[0]), chart_origin(f, p2[0]), f))
        rep.check(f"S{j}{k1} ∩ S{j}{k2} = ∅",
                  closure_intersection(f, (b[j], b[k1]), (b[j], b[k2])) == [])
    rep.check("every S_jk is a fixed curve P1",
              all(c["is_cone"] and c["sampled_orbit_dims"] == [0] for c in rep.curves))

    # component intersections
    def record(name, cones, equals=None):
        if not cones:
            kind, pts = "empty", 0
        elif all(len(c) == 3 for c in cones):
            kind, pts = "points", len(cones)
        else:
            kind, pts = "curve", None
        rep.intersections.append({"name": name, "kind": kind, "points": pts, "equals": equals,
                                  "cones": [f.render(c) for c in cones]})
        return cones

    for j, l in ((1, 2), (1, 3), (2, 3)):
        cones = record(f"X{j} ∩ X{l}", closure_intersection(f, (b[j],), (b[l],)), f"S{j}{l}")
        rep.check(f"X{j} ∩ X{l} = S{j}{l}",
                  cones == closure_intersection(f, tuple(sorted((b[j], b[l])))))
    triple = record("X1 ∩ X2 ∩ X3", closure_intersection(f, (b[1],), (b[2],), (b[3],)))
    rep.check("X1 ∩ X2 ∩ X3 = ∅", triple == [])
    for j in (1, 2, 3):
        cones = record(f"X0 ∩ X{j}", closure_intersection(f, (b[0],), (b[j],)), f"S{j}0")
        rep.check(f"X0 ∩ X{j} = S{j}0", cones == closure_intersection(f, tuple(sorted((b[0], b[j])))))
    points = []
    for j, l in ((1, 2), (1, 3), (2, 3)):
        cones = record(f"X0 ∩ X{j} ∩ X{l}", closure_intersection(f, (b[0],), (b[j],), (b[l],)))
        rep.check(f"|X0 ∩ X{j} ∩ X{l}| = 1", len(cones) == 1 and len(cones[0]) == 3)
        if cones:
            points.append(chart_origin(f, cones[0]))
    rep.check("the three triple points are pairwise distinct",
              len(points) == 3 and not any(points_equal(points[s], points[t], f)
                                           for s in range(3) for t in range(s + 1, 3)))

    # representatives of S'_10 ∩ S'_12 and S'_10 ∩ S'_13
    for name, y in (("S'10 ∩ S'12", (0, 0, 0, 1, 1, 1, 1)), ("S'10 ∩ S'13", (0, 0, 1, 0, 1, 1, 1))):
        y = tuple(Fraction(v) for v in y)
        cone = zero_support(y)
        rep.representatives.append({"name": name, "point": {"coords": [linalg.rational_str(v) for v in y]},
                                    "cone": f.render(cone)})
        rep.check(f"{name} = G*{_fmt_point(y)}",
                  in_Y(y, f) and points_equal(quotient_map(y, f), chart_origin(f, cone), f))
    return rep
