"""Quotient construction of a smooth toric variety.

Points of ``X`` are handled through homogeneous coordinates ``y`` on
``C^{Sigma(1)} \\ Z`` (here with rational entries) and through the affine
charts ``U_sigma`` of the maximal cones, whose coordinates are the monomials
``prod_rho y_rho^<u_k, p_rho>`` for the dual basis ``u_k`` of the cone's
generators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .fans import Cone, Fan


def ray_matrix(f: Fan) -> list[list[int]]:
    """``n x |Sigma(1)|`` matrix whose columns are the ray generators."""
    return linalg.transpose(f.rays)


@dataclass(frozen=True)
class QuasitorusData:
    relations: tuple[tuple[int, ...], ...]
    kernel_basis: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def quasitorus(f: Fan) -> QuasitorusData:
    """Character relations and exponent lattice of ``G_Sigma``.

    ``G_Sigma = {t : prod_rho t_rho^<f_i, p_rho> = 1}``; its elements are
    ``t_rho = prod_k s_k^K[k][rho]`` for the kernel basis ``K``.
    """
    R = ray_matrix(f)
    if linalg.rank(R) != f.rank:
        raise ValueError("rays do not span N_Q; the quotient construction needs them to")
    return QuasitorusData(
        tuple(tuple(r) for r in R),
        tuple(tuple(r) for r in linalg.kernel_basis_Z(R)),
        tuple(linalg.invariant_factors(R)),
    )


def character_relations(f: Fan, symbol: str = "w") -> list[str]:
    """Relations among the diagonal characters, one per row of the ray matrix.

    Rendered as ``positive side = negative side``, e.g. ``w[a1] = w[b0] + w[b2] + w[b3]``.
    """
    out = []
    for row in ray_matrix(f):
        def side(sign):
            terms = []
            for i, x in enumerate(row):
                if x * sign > 0:
                    k = abs(x)
                    terms.append((f"{k}*" if k != 1 else "") + f"{symbol}[{f.label(i)}]")
            return " + ".join(terms) or "0"
        out.append(f"{side(1)} = {side(-1)}")
    return out


def cox_fan(f: Fan) -> Fan:
    """The fan of ``C^{Sigma(1)} \\ Z``: coordinate cones over the ray sets of ``f``."""
    m = len(f.rays)
    rays = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    return Fan(m, rays, f.max_cones, f.labels)


# -- points ------------------------------------------------------------------------

def zero_support(y: Sequence) -> Cone:
    return tuple(i for i, x in enumerate(y) if x == 0)


def in_Y(y: Sequence, f: Fan) -> bool:
    """Is ``y`` outside the irrelevant locus ``Z(Sigma)``?"""
    if len(y) != len(f.rays):
        raise ValueError(f"point has {len(y)} coordinates, fan has {len(f.rays)} rays")
    return f.is_cone(zero_support(y))


def group_act(g: Sequence, y: Sequence, f: Fan, data: Optional[QuasitorusData] = None) -> tuple:
    """Act by the element of ``G_Sigma`` with free parameters ``g``."""
    data = data or quasitorus(f)
    if len(g) != len(data.kernel_basis):
        raise ValueError(f"expected {len(data.kernel_basis)} group parameters")
    if any(Fraction(s) == 0 for s in g):
        raise ValueError("group parameters must be nonzero")
    out = []
    for rho, x in enumerate(y):
        t = Fraction(1)
        for s, row in zip(g, data.kernel_basis):
            if row[rho]:
                t *= Fraction(s) ** row[rho]
        out.append(Fraction(x) * t)
    return tuple(out)


@dataclass(frozen=True)
class ChartPoint:
    cone: Cone
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "cone", tuple(self.cone))
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))
        if len(self.cone) != len(self.coords):
            raise ValueError("one chart coordinate per generator of the cone")


def dual_basis(f: Fan, cone: Cone) -> list[tuple[int, ...]]:
    """Rows ``u_k`` with ``<u_k, p_{cone[j]}> = delta_kj``; the cone must be unimodular."""
    if len(cone) != f.rank or cone not in f.max_cones:
        raise ValueError(f"{f.render(cone)} is not a full-dimensional maximal cone")
    inv = f._inverses[cone]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError(f"cone {f.render(cone)} is not smooth")
    return [tuple(int(x) for x in row) for row in inv]


def _monomial(y: Sequence, exps: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for x, e in zip(y, exps):
        if e:
            out *= Fraction(x) ** e
    return out


def chart_for(y: Sequence, f: Fan) -> Cone:
    """Lexicographically first maximal cone whose rays contain the zero-support."""
    zs = set(zero_support(y))
    for c in f.max_cones:
        if zs <= set(c):
            return c
    raise ValueError("point lies in the irrelevant locus")


def quotient_map(y: Sequence, f: Fan, cone: Optional[Cone] = None) -> ChartPoint:
    if not in_Y(y, f):
        raise ValueError("point lies in the irrelevant locus")
    if cone is None:
        cone = chart_for(y, f)
    else:
        cone = tuple(sorted(cone))
        if not set(zero_support(y)) <= set(cone):
            raise ValueError(f"point is not in the chart of {f.render(cone)}")
    U = dual_basis(f, cone)
    coords = []
    for u in U:
        exps = [linalg.dot(u, p) for p in f.rays]
        coords.append(_monomial(y, exps))
    return ChartPoint(cone, tuple(coords))


def lift(x: ChartPoint, f: Fan) -> tuple[Fraction, ...]:
    """Section of the quotient over a chart: chart coordinates on the cone's rays, 1 elsewhere."""
    y = [Fraction(1)] * len(f.rays)
    for rho, c in zip(x.cone, x.coords):
        y[rho] = c
    return tuple(y)


def chart_transition(x: ChartPoint, target: Cone, f: Fan) -> ChartPoint:
    return quotient_map(lift(x, f), f, cone=target)


def points_equal(x1: ChartPoint, x2: ChartPoint, f: Fan) -> bool:
    """Equality on X: compare in any chart containing both points."""
    z1, z2 = set(zero_support(lift(x1, f))), set(zero_support(lift(x2, f)))
    for c in f.max_cones:
        if z1 <= set(c) and z2 <= set(c):
            return chart_transition(x1, c, f) == chart_transition(x2, c, f)
    return False


def orbit_label(x: ChartPoint, f: Fan) -> Cone:
    """The cone whose torus orbit contains ``x``."""
    return tuple(rho for rho, c in zip(x.cone, x.coords) if c == 0)


def chart_origin(f: Fan, cone: Cone) -> ChartPoint:
    """The torus-fixed point of a maximal cone."""
    return ChartPoint(tuple(cone), (0,) * len(cone))


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x:
            return x


def random_point(f: Fan, rng: random.Random, zeros: Optional[Sequence[int]] = None) -> tuple[Fraction, ...]:
    """A point of Y vanishing exactly on ``zeros`` (default: a random cone of the fan)."""
    if zeros is None:
        zeros = rng.choice(sorted(f.cones))
    if not f.is_cone(zeros):
        raise ValueError("zero set must be a cone, otherwise the point lies in Z")
    zs = set(zeros)
    return tuple(Fraction(0) if i in zs else random_rational(rng) for i in range(len(f.rays)))
