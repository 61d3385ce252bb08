"""Simplicial fans in a lattice ``N = Z^n``.

A :class:`Fan` stores primitive ray generators and its maximal cones as
sorted tuples of ray indices.  Because every cone is simplicial, the faces
of a cone are exactly the subsets of its ray set, so most of the
combinatorics here is set arithmetic once :func:`fan_validate` has checked
that cones meet along common faces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from . import linalg
from .lp import LinearSystem, feasible

Cone = tuple[int, ...]


class FanError(ValueError):
    """Structurally invalid fan data."""


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[Cone, ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted({tuple(sorted(set(int(i) for i in c))) for c in self.max_cones}))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(rays) or len(set(self.labels)) != len(rays):
                raise FanError("labels must be distinct, one per ray")
        n = self.rank
        if n < 1:
            raise FanError("rank must be positive")
        for r in rays:
            if len(r) != n:
                raise FanError(f"ray {r} does not have length {n}")
            if not any(r):
                raise FanError("zero ray")
            if linalg.primitive(r) != r:
                raise FanError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays")
        for c in cones:
            if any(not 0 <= i < len(rays) for i in c):
                raise FanError(f"cone {c} refers to a missing ray")
            if c and linalg.rank([rays[i] for i in c]) != len(c):
                raise FanError(f"cone {c} is not simplicial")
        cone_sets = [set(c) for c in cones]
        for a, b in itertools.permutations(range(len(cones)), 2):
            if cone_sets[a] < cone_sets[b]:
                raise FanError(f"cone {cones[a]} is a face of {cones[b]}, not maximal")

    # -- basic accessors -----------------------------------------------------

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def index(self, label: str) -> int:
        if self.labels and label in self.labels:
            return self.labels.index(label)
        return int(label)

    def cone_of(self, labels: Iterable[str]) -> Cone:
        return tuple(sorted(self.index(x) for x in labels))

    def generators(self, cone: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in cone]

    def render(self, cone: Sequence[int]) -> str:
        return "{" + ",".join(self.label(i) for i in cone) + "}"

    @cached_property
    def cones(self) -> frozenset[Cone]:
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(itertools.combinations(c, k))
        return frozenset(out)

    @cached_property
    def _face_masks(self) -> frozenset[int]:
        return frozenset(sum(1 << i for i in c) for c in self.cones)

    def is_cone(self, cone: Iterable[int]) -> bool:
        return sum(1 << i for i in set(cone)) in self._face_masks

    @cached_property
    def _inverses(self) -> dict[Cone, list[list[Fraction]]]:
        # inverse generator matrices of the full-dimensional maximal cones
        out = {}
        for c in self.max_cones:
            if len(c) == self.rank:
                out[c] = linalg.inverse(linalg.transpose(self.generators(c)))
        return out

    @cached_property
    def _dual_rows(self) -> dict[Cone, list[list]]:
        """Inverses with integral entries stored as ints, for fast exact dot products."""
        out = {}
        for c, inv in self._inverses.items():
            out[c] = [[int(x) if x.denominator == 1 else x for x in row] for row in inv]
        return out

    def coefficients(self, cone: Cone, v: Sequence) -> Optional[tuple[Fraction, ...]]:
        """Coordinates of ``v`` in the generators of ``cone``, or None if outside its span."""
        if not cone:
            return () if not any(v) else None
        inv = self._inverses.get(cone)
        if inv is not None:
            return linalg.matvec(inv, [Fraction(x) for x in v])
        B = linalg.transpose(self.generators(cone))
        return linalg.solve_rational(B, list(v))

    def in_cone(self, cone: Cone, v: Sequence) -> bool:
        lam = self.coefficients(cone, v)
        return lam is not None and all(x >= 0 for x in lam)

    def locate(self, v: Sequence) -> Optional[Cone]:
        """First maximal cone containing ``v``."""
        return next((c for c in self.max_cones if self.in_cone(c, v)), None)


@dataclass(frozen=True)
class Wall:
    shared: Cone
    incident: tuple[int, ...]  # indices into Fan.max_cones


def walls(f: Fan) -> list[Wall]:
    """Codimension-one faces of the full-dimensional maximal cones."""
    seen: dict[Cone, list[int]] = {}
    for idx, c in enumerate(f.max_cones):
        if len(c) != f.rank:
            continue
        for w in itertools.combinations(c, f.rank - 1):
            seen.setdefault(w, []).append(idx)
    return [Wall(w, tuple(inc)) for w, inc in sorted(seen.items())]


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    cone_a: Cone
    cone_b: Cone
    point: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def _separating_system(f: Fan, a: Cone, b: Cone) -> LinearSystem:
    shared = set(a) & set(b)
    eqs = [(f.rays[i], 0) for i in sorted(shared)]
    ge = [(f.rays[i], 1) for i in a if i not in shared]
    ge += [(tuple(-x for x in f.rays[i]), 1) for i in b if i not in shared]
    return LinearSystem(f.rank, eqs, ge)


def _overlap_point(f: Fan, a: Cone, b: Cone, cert) -> tuple[int, ...]:
    """Read an illegal overlap point off the separation system's Farkas certificate.

    The certificate gives ``sum lam_a r_a + sum mu_s r_s = sum lam_b r_b`` with
    some ``lam > 0``; moving negative ``mu`` to the other side yields one point
    written inside both cones, outside the shared face.
    """
    shared = sorted(set(a) & set(b))
    mu = dict(zip(shared, cert.eq_multipliers))
    lam_a = [l for l in cert.ineq_multipliers[:len(a) - len(shared)]]
    a_off = [i for i in a if i not in mu]
    p = [Fraction(0)] * f.rank
    for l, i in list(zip(lam_a, a_off)) + [(max(m, 0), i) for i, m in mu.items()]:
        for row in range(f.rank):
            p[row] += l * f.rays[i][row]
    return linalg.integral_direction(p)


def _quick_separation(f: Fan, a: Cone, b: Cone) -> bool:
    """Try functionals from the dual bases before falling back to an LP."""
    if len(a) != f.rank or len(b) != f.rank:
        return False
    shared = set(a) & set(b)
    ia, ib = f._dual_rows[a], f._dual_rows[b]
    la = [sum(ia[k][t] for k, r in enumerate(a) if r not in shared) for t in range(f.rank)]
    lb = [-sum(ib[k][t] for k, r in enumerate(b) if r not in shared) for t in range(f.rank)]
    for t in (1, 0, 2, Fraction(1, 2), 4, Fraction(1, 4), None):
        ell = la if t is None else [x * t + y for x, y in zip(la, lb)]
        if (all(linalg.dot(ell, f.rays[r]) == 0 for r in shared)
                and all(linalg.dot(ell, f.rays[r]) > 0 for r in a if r not in shared)
                and all(linalg.dot(ell, f.rays[r]) < 0 for r in b if r not in shared)):
            return True
    return False


def fan_validate(f: Fan) -> ValidationReport:
    """Check that every pair of maximal cones meets in their common face.

    For each pair a linear functional is sought that is positive on the
    unshared generators of one cone, negative on those of the other and zero
    on the shared ones; it exists iff the intersection is the cone over the
    shared rays.  Failures carry an integral point of the illegal overlap.
    """
    bad = []
    for a, b in itertools.combinations(f.max_cones, 2):
        if _quick_separation(f, a, b):
            continue
        res = feasible(_separating_system(f, a, b))
        if not res.feasible:
            bad.append(Violation(a, b, _overlap_point(f, a, b, res.certificate)))
    return ValidationReport(tuple(bad))


# -- global properties ---------------------------------------------------------

def is_smooth(f: Fan) -> bool:
    for c in f.max_cones:
        if not c:
            continue
        gens = f.generators(c)
        if len(c) == f.rank:
            if abs(linalg.det(gens)) != 1:
                return False
        elif any(d != 1 for d in linalg.invariant_factors(gens)):
            return False
    return True


def is_complete(f: Fan) -> bool:
    if not f.max_cones or any(len(c) != f.rank for c in f.max_cones):
        return False
    return all(len(w.incident) == 2 for w in walls(f))


def primitive_collections(f: Fan) -> list[Cone]:
    """Minimal non-faces of the complex of ray sets, sorted."""
    faces = f._face_masks
    n_rays = len(f.rays)
    found = set()
    for face in faces:
        for r in range(n_rays):
            bit = 1 << r
            if face & bit:
                continue
            cand = face | bit
            if cand in faces:
                continue
            if all((cand & ~(1 << s)) in faces for s in range(n_rays) if cand >> s & 1):
                found.add(cand)
    out = [tuple(i for i in range(n_rays) if m >> i & 1) for m in found]
    return sorted(out, key=lambda c: (len(c), c))


# -- star fans -------------------------------------------------------------------

def _check_projection(P: Sequence[Sequence[int]], f: Fan, tau: Cone) -> None:
    if len(P) != f.rank - len(tau) or any(len(row) != f.rank for row in P):
        raise ValueError("projection has the wrong shape")
    if any(linalg.invariant_factors(P)[i] != 1 for i in range(len(P))):
        raise ValueError("projection is not surjective onto Z^(n-k)")
    if not linalg.same_lattice(linalg.kernel_basis_Z(P), f.generators(tau)):
        raise ValueError("projection kernel is not the lattice spanned by the cone")


def star_fan(f: Fan, tau: Sequence[int], projection: Optional[Sequence[Sequence[int]]] = None
             ) -> tuple[Fan, list[list[int]]]:
    """Fan of the orbit closure V(tau) in ``N / N_tau``.

    Without an explicit ``projection`` the quotient coordinates are taken
    from the dual basis of the first maximal cone containing ``tau``; a
    supplied projection is checked to be surjective with kernel ``N_tau``.
    """
    tau = tuple(sorted(tau))
    if not f.is_cone(tau):
        raise ValueError(f"{f.render(tau)} is not a cone of the fan")
    if len(tau) == f.rank:
        raise ValueError("star of a full-dimensional cone is a point")
    star = [c for c in f.max_cones if set(tau) <= set(c)]
    if projection is not None:
        P = [[int(x) for x in row] for row in projection]
        _check_projection(P, f, tau)
    elif not tau:
        P = linalg.identity(f.rank)
    else:
        sigma = next((c for c in star if len(c) == f.rank), None)
        if sigma is None:
            raise ValueError("no full-dimensional cone contains tau")
        inv = linalg.inverse(linalg.transpose(f.generators(sigma)))
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("fan is not smooth at tau")
        P = [[int(x) for x in inv[k]] for k, i in enumerate(sigma) if i not in tau]
    ray_ids = sorted({i for c in star for i in c if i not in tau})
    images = [linalg.primitive(linalg.matvec(P, f.rays[i])) for i in ray_ids]
    pos = {i: k for k, i in enumerate(ray_ids)}
    cones = [[pos[i] for i in c if i not in tau] for c in star]
    labels = tuple(f.label(i) for i in ray_ids) if f.labels else None
    return Fan(f.rank - len(tau), tuple(images), tuple(tuple(c) for c in cones), labels), P


# -- orbit-cone correspondence ---------------------------------------------------

@dataclass(frozen=True)
class OrbitPoset:
    rank: int
    cones: tuple[Cone, ...]
    covers: tuple[tuple[Cone, Cone], ...]

    def orbit_dim(self, cone: Cone) -> int:
        return self.rank - len(cone)

    def closure(self, tau: Sequence[int]) -> list[Cone]:
        """Cones sigma with tau a face of sigma: V(tau) is the union of their orbits."""
        t = set(tau)
        return [c for c in self.cones if t <= set(c)]

    def counts(self) -> list[int]:
        out = [0] * (max(len(c) for c in self.cones) + 1)
        for c in self.cones:
            out[len(c)] += 1
        return out

    def to_dot(self, fan: Optional[Fan] = None) -> str:
        def name(c):
            return "c" + "".join(f"_{i}" for i in c) if c else "origin"

        def text(c):
            body = fan.render(c) if fan is not None else "{" + ",".join(map(str, c)) + "}"
            return f"{body}\\ndim O = {self.orbit_dim(c)}"

        lines = ["digraph orbits {", "  rankdir=BT;"]
        for c in self.cones:
            lines.append(f'  {name(c)} [label="{text(c)}"];')
        for lo, hi in self.covers:
            lines.append(f"  {name(lo)} -> {name(hi)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def orbit_poset(f: Fan) -> OrbitPoset:
    cones = tuple(sorted(f.cones, key=lambda c: (len(c), c)))
    covers = []
    for c in cones:
        for r in range(len(f.rays)):
            if r not in c:
                up = tuple(sorted(c + (r,)))
                if f.is_cone(up):
                    covers.append((c, up))
    return OrbitPoset(f.rank, cones, tuple(covers))


def closure_intersection(f: Fan, *taus: Sequence[int]) -> list[Cone]:
    """Cones containing every given cone; their orbits make up the intersection of the V(tau)."""
    union = set()
    for t in taus:
        if not f.is_cone(t):
            raise ValueError(f"{f.render(sorted(t))} is not a cone of the fan")
        union |= set(t)
    return sorted((c for c in f.cones if union <= set(c)), key=lambda c: (len(c), c))


# -- toric morphisms -------------------------------------------------------------

def _images(A, f_src: Fan, cone: Cone) -> list[tuple]:
    return [linalg.matvec(A, v) for v in f_src.generators(cone)]


def map_compatible(A: Sequence[Sequence[int]], f_src: Fan, f_dst: Fan) -> bool:
    """Does every cone of ``f_src`` map into some cone of ``f_dst``?"""
    if len(A) != f_dst.rank or any(len(row) != f_src.rank for row in A):
        raise ValueError("map has the wrong shape")
    for c in f_src.max_cones:
        imgs = _images(A, f_src, c)
        if not any(all(f_dst.in_cone(s, w) for w in imgs) for s in f_dst.max_cones):
            return False
    return True


def orbit_image(A: Sequence[Sequence[int]], f_src: Fan, f_dst: Fan, cone: Sequence[int]) -> Cone:
    """Minimal cone of ``f_dst`` containing the image of ``cone``."""
    cone = tuple(sorted(cone))
    imgs = _images(A, f_src, cone)
    found = set()
    for s in f_dst.max_cones:
        lams = [f_dst.coefficients(s, w) for w in imgs]
        if all(lam is not None and all(x >= 0 for x in lam) for lam in lams):
            found.add(tuple(sorted({s[k] for lam in lams for k, x in enumerate(lam) if x})))
    if not found:
        raise ValueError("map is not compatible with the fans on this cone")
    if len(found) != 1:
        raise ValueError("containing cones disagree on the minimal face; fan is invalid")
    return found.pop()


# -- isomorphism -------------------------------------------------------------------

def fan_isomorphic(f1: Fan, f2: Fan) -> Optional[list[list[int]]]:
    """A unimodular matrix carrying ``f1`` onto ``f2``, or None.

    Fixes a full-dimensional cone of ``f1`` and tries every maximal cone of
    ``f2`` under every ordering of its generators.
    """
    if not (is_smooth(f1) and is_smooth(f2)):
        raise ValueError("fan isomorphism search needs smooth fans")
    if (f1.rank != f2.rank or len(f1.rays) != len(f2.rays)
            or len(f1.max_cones) != len(f2.max_cones)):
        return None
    n = f1.rank
    base = next((c for c in f1.max_cones if len(c) == n), None)
    if base is None:
        raise ValueError("isomorphism search needs a full-dimensional cone")
    inv1 = linalg.inverse(linalg.transpose(f1.generators(base)))
    rays2 = {r: i for i, r in enumerate(f2.rays)}
    cones2 = set(f2.max_cones)
    for target in f2.max_cones:
        if len(target) != n:
            continue
        for perm in itertools.permutations(target):
            B2 = linalg.transpose(f2.generators(perm))
            A = [[int(x) for x in row] for row in linalg.matmul(B2, inv1)]
            idx = []
            for r in f1.rays:
                img = rays2.get(linalg.matvec(A, r))
                if img is None:
                    break
                idx.append(img)
            else:
                mapped = {tuple(sorted(idx[i] for i in c)) for c in f1.max_cones}
                if mapped == cones2:
                    return A
    return None


def verify_isomorphism(A: Sequence[Sequence[int]], f1: Fan, f2: Fan) -> bool:
    """Exact check that ``A`` is unimodular and maps rays and maximal cones bijectively."""
    if f1.rank != f2.rank or len(A) != f2.rank or any(len(row) != f1.rank for row in A):
        return False
    if abs(linalg.det(A)) != 1:
        return False
    rays2 = {r: i for i, r in enumerate(f2.rays)}
    idx = [rays2.get(linalg.matvec(A, r)) for r in f1.rays]
    if None in idx or sorted(idx) != list(range(len(f2.rays))):
        return False
    mapped = {tuple(sorted(idx[i] for i in c)) for c in f1.max_cones}
    return mapped == set(f2.max_cones)


# -- polytopes ---------------------------------------------------------------------

@dataclass(frozen=True)
class Polytope:
    rank: int
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if any(len(v) != self.rank for v in verts):
            raise ValueError("vertex of the wrong length")


def facets(P: Polytope) -> list[tuple[tuple[int, ...], int]]:
    """Facets as ``(inner normal, c)`` with ``<u, normal> >= c`` on P, by brute force."""
    pts = sorted(set(P.vertices))
    n = P.rank
    if len(pts) <= n or linalg.rank([[x - y for x, y in zip(p, pts[0])] for p in pts[1:]]) != n:
        raise ValueError("degenerate polytope: vertices do not span the space")
    out = set()
    for sub in itertools.combinations(pts, n):
        diffs = [[x - y for x, y in zip(p, sub[0])] for p in sub[1:]]
        ns = linalg.nullspace_Q(diffs, ncols=n)
        if len(ns) != 1:
            continue
        v = linalg.integral_direction(ns[0])
        c = linalg.dot(v, sub[0])
        vals = [linalg.dot(v, p) for p in pts]
        if all(x >= c for x in vals):
            out.add((v, c))
        elif all(x <= c for x in vals):
            out.add((tuple(-x for x in v), -c))
    return sorted(out)


def dual_fan_of_polytope(P: Polytope) -> Fan:
    """Normal fan: one maximal cone per vertex, spanned by the inner facet normals there."""
    if P.rank > 3:
        raise ValueError("dual fan is implemented for rank <= 3")
    fs = facets(P)
    if any(c >= 0 for _, c in fs):
        raise ValueError("0 is not in the interior of the polytope")
    cones = []
    for p in sorted(set(P.vertices)):
        tight = [k for k, (v, c) in enumerate(fs) if linalg.dot(v, p) == c]
        if not tight or linalg.rank([fs[k][0] for k in tight]) != P.rank:
            continue  # not a vertex
        if len(tight) != P.rank:
            raise ValueError(f"polytope is not simple at {p}; its normal fan is not simplicial")
        cones.append(tuple(tight))
    return Fan(P.rank, tuple(v for v, _ in fs), tuple(cones))
