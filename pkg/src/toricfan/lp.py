"""Exact rational feasibility with Farkas certificates.

A :class:`LinearSystem` holds equalities ``a.x = b`` and inequalities
``a.x >= b`` over free rational variables.  :func:`feasible` either returns
a witness satisfying every constraint exactly or a :class:`FarkasCertificate`:
multipliers (nonnegative on inequalities) under which the left-hand sides sum
to the zero vector while the right-hand sides sum to something positive.

The solver first eliminates the equalities exactly, then runs a phase-1
simplex with Bland's rule on the remaining inequalities in the free
parameters.  :func:`fm_project` is a deliberately naive Fourier-Motzkin step
kept as an independent oracle for tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import linalg

Row = tuple[tuple[Fraction, ...], Fraction]


def _row(coeffs: Iterable, rhs) -> Row:
    return tuple(Fraction(c) for c in coeffs), Fraction(rhs)


@dataclass(frozen=True)
class LinearSystem:
    num_vars: int
    equalities: tuple[Row, ...] = ()
    inequalities: tuple[Row, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "equalities", tuple(_row(*r) for r in self.equalities))
        object.__setattr__(self, "inequalities", tuple(_row(*r) for r in self.inequalities))
        for coeffs, _ in self.equalities + self.inequalities:
            if len(coeffs) != self.num_vars:
                raise ValueError(
                    f"constraint has {len(coeffs)} coefficients, expected {self.num_vars}")

    def satisfied_by(self, x: Sequence) -> bool:
        return (all(linalg.dot(a, x) == b for a, b in self.equalities)
                and all(linalg.dot(a, x) >= b for a, b in self.inequalities))


@dataclass(frozen=True)
class FarkasCertificate:
    eq_multipliers: tuple[Fraction, ...]
    ineq_multipliers: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "eq_multipliers", tuple(Fraction(x) for x in self.eq_multipliers))
        object.__setattr__(self, "ineq_multipliers", tuple(Fraction(x) for x in self.ineq_multipliers))


@dataclass(frozen=True)
class Feasibility:
    witness: Optional[tuple[Fraction, ...]] = None
    certificate: Optional[FarkasCertificate] = None

    def __post_init__(self):
        if (self.witness is None) == (self.certificate is None):
            raise ValueError("exactly one of witness and certificate must be given")

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def verify_farkas(sys: LinearSystem, cert: FarkasCertificate) -> bool:
    if (len(cert.eq_multipliers) != len(sys.equalities)
            or len(cert.ineq_multipliers) != len(sys.inequalities)):
        raise ValueError("multiplier counts do not match the constraint counts")
    if any(y < 0 for y in cert.ineq_multipliers):
        return False
    lhs = [Fraction(0)] * sys.num_vars
    rhs = Fraction(0)
    for y, (a, b) in zip(cert.eq_multipliers + cert.ineq_multipliers,
                         sys.equalities + sys.inequalities):
        if y:
            for k, c in enumerate(a):
                lhs[k] += y * c
            rhs += y * b
    return not any(lhs) and rhs > 0


def _normalized(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    # scale a nonzero multiplier vector to coprime integers
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints) if g else tuple(values)


class _Phase1:
    """Phase-1 simplex over Z with Bland's rule, fraction-free.

    Solves ``find z >= 0 with A z = b`` (integral, ``b >= 0``) given a list of
    columns forming an identity, one per row, to start from; missing rows get
    an artificial column.  The tableau holds integers over the common
    denominator ``D`` (the current basis determinant); pivots divide exactly.
    """

    def __init__(self, A: list[list[int]], b: list[int], start: list[Optional[int]]):
        m = len(A)
        ncols = len(A[0]) if m else 0
        self.n_real = ncols
        self.art = []
        basis = []
        for i in range(m):
            if start[i] is None:
                basis.append(ncols + len(self.art))
                self.art.append(i)
            else:
                basis.append(start[i])
        self.width = ncols + len(self.art)
        self.T = []
        for i, row in enumerate(A):
            self.T.append(list(row) + [int(basis[i] == ncols + k) for k in range(len(self.art))] + [b[i]])
        # reduced costs of "minimize the sum of artificials"
        cost = [0] * ncols + [1] * len(self.art) + [0]
        for i, bcol in enumerate(basis):
            if cost[bcol]:
                f = cost[bcol]
                cost = [c - f * t for c, t in zip(cost, self.T[i])]
        self.cost = cost
        self.D = 1
        self.basis = basis
        self.start = basis[:]

    def run(self) -> None:
        while True:
            cost = self.cost
            enter = next((j for j in range(self.width) if cost[j] < 0), None)
            if enter is None:
                return
            leave = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    if leave is None:
                        leave = i
                        continue
                    lrow = self.T[leave]
                    # compare row[-1]/a with lrow[-1]/lrow[enter]
                    lhs, rhs = row[-1] * lrow[enter], lrow[-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[leave]):
                        leave = i
            if leave is None:  # pragma: no cover - phase 1 is bounded below by 0
                raise RuntimeError("unbounded phase-1 problem")
            self._pivot(leave, enter)

    def _pivot(self, r: int, c: int) -> None:
        prow = self.T[r]
        pv, D = prow[c], self.D
        for row in self.T + [self.cost]:
            if row is prow:
                continue
            f = row[c]
            if f:
                for j in range(len(row)):
                    row[j] = (pv * row[j] - f * prow[j]) // D
            elif pv != D:
                for j in range(len(row)):
                    if row[j]:
                        row[j] = pv * row[j] // D
        self.D = pv
        self.basis[r] = c

    @property
    def objective(self) -> Fraction:
        return Fraction(-self.cost[-1], self.D)

    def duals(self) -> list[Fraction]:
        # y_i = c_j - rbar_j for the column j that started basic in row i
        full = [0] * self.n_real + [1] * len(self.art)
        return [full[j] - Fraction(self.cost[j], self.D) for j in self.start]

    def solution(self) -> list[Fraction]:
        z = [Fraction(0)] * self.width
        for i, bcol in enumerate(self.basis):
            z[bcol] = Fraction(self.T[i][-1], self.D)
        return z[:self.n_real]


def _integral_row(g: Sequence[Fraction], h: Fraction) -> tuple[list[int], int, int]:
    """Scale ``g z >= h`` to integers; returns the row, rhs and the scale factor."""
    L = 1
    for x in list(g) + [h]:
        L = L * x.denominator // gcd(L, x.denominator)
    return [int(x * L) for x in g], int(h * L), L


def _inequality_phase1(G: list[list[Fraction]], h: list[Fraction]):
    """Phase 1 for ``G z >= h`` with z free.

    Returns ``("feasible", z)`` or ``("infeasible", lam)`` where ``lam >= 0``,
    ``lam @ G == 0`` and ``lam @ h > 0``.
    """
    m = len(G)
    k = len(G[0]) if m else 0
    # columns: z+ (k), z- (k), slack (m);  row i: sign*(G_i z+ - G_i z- - s_i) = sign*h_i
    A, b, start, scale = [], [], [], []
    for i, (g, hi) in enumerate(zip(G, h)):
        g, hi, L = _integral_row(g, hi)
        sign = -1 if hi < 0 else 1
        slack = [0] * m
        slack[i] = -sign
        A.append([sign * x for x in g] + [-sign * x for x in g] + slack)
        b.append(sign * hi)
        scale.append(sign * L)
        start.append(2 * k + i if sign < 0 else None)
    tab = _Phase1(A, b, start)
    tab.run()
    if tab.objective == 0:
        z = tab.solution()
        return "feasible", [z[j] - z[k + j] for j in range(k)]
    y = tab.duals()
    return "infeasible", [s * yi for s, yi in zip(scale, y)]


def _equality_certificate(sys: LinearSystem) -> Optional[FarkasCertificate]:
    E = [list(a) for a, _ in sys.equalities]
    e = [b for _, b in sys.equalities]
    m = len(E)
    # rows of [E | e | I] reduced: a zero row on E with nonzero rhs exposes the combination
    aug = [E[i] + [e[i]] + [Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    R, pivots = linalg.rref(aug)
    n = sys.num_vars
    for row in R:
        if not any(row[:n]) and row[n]:
            mult = row[n + 1:]
            if row[n] < 0:
                mult = [-x for x in mult]
            return FarkasCertificate(_normalized(mult), (Fraction(0),) * len(sys.inequalities))
    return None


def _trivial_system(sys: LinearSystem) -> Feasibility:
    eqs = [Fraction(0)] * len(sys.equalities)
    ineqs = [Fraction(0)] * len(sys.inequalities)
    for i, (_, b) in enumerate(sys.equalities):
        if b:
            eqs[i] = Fraction(1 if b > 0 else -1)
            return Feasibility(certificate=FarkasCertificate(eqs, ineqs))
    for i, (_, b) in enumerate(sys.inequalities):
        if b > 0:
            ineqs[i] = Fraction(1)
            return Feasibility(certificate=FarkasCertificate(eqs, ineqs))
    return Feasibility(witness=())


def feasible(sys: LinearSystem) -> Feasibility:
    """Decide feasibility exactly; deterministic for identical input."""
    n = sys.num_vars
    if n == 0:
        return _trivial_system(sys)
    if sys.equalities:
        cert = _equality_certificate(sys)
        if cert is not None:
            return Feasibility(certificate=cert)
        E = [list(a) for a, _ in sys.equalities]
        x0 = linalg.solve_rational(E, [b for _, b in sys.equalities])
        K = linalg.nullspace_Q(E)
    else:
        x0 = (Fraction(0),) * n
        K = None  # identity

    if not sys.inequalities:
        return Feasibility(witness=tuple(x0))

    # x = x0 + z @ K ;  G x >= h  <=>  (G K^T) z >= h - G x0
    G = [list(a) for a, _ in sys.inequalities]
    h = [b - linalg.dot(a, x0) for a, b in sys.inequalities]
    if K is None:
        GK = G
    elif K:
        support = [[(j, x) for j, x in enumerate(kv) if x] for kv in K]
        GK = [[sum((g[j] * x for j, x in sp if g[j]), Fraction(0)) for sp in support] for g in G]
    else:
        GK = [[] for _ in G]

    if K == []:
        bad = [i for i, hi in enumerate(h) if hi > 0]
        if not bad:
            return Feasibility(witness=tuple(x0))
        lam = [Fraction(int(i == bad[0])) for i in range(len(G))]
        status = "infeasible"
    else:
        status, out = _inequality_phase1(GK, h)
        if status == "feasible":
            if K is None:
                K = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            x = list(x0)
            for zj, kv in zip(out, K):
                if zj:
                    x = [xi + zj * ki for xi, ki in zip(x, kv)]
            x = tuple(x)
            if not sys.satisfied_by(x):  # pragma: no cover - guards the solver
                raise AssertionError("simplex witness fails exact substitution")
            return Feasibility(witness=x)
        lam = out

    # lam @ G lies in the row space of E: find mu with E^T mu = -(lam @ G)
    target = [-sum(l * g[j] for l, g in zip(lam, G)) for j in range(n)]
    if sys.equalities:
        mu = linalg.solve_rational(linalg.transpose([list(a) for a, _ in sys.equalities]), target)
        if mu is None:  # pragma: no cover
            raise AssertionError("inequality multipliers do not reduce to the equality span")
    else:
        mu = ()
    scaled = _normalized(list(mu) + list(lam))
    cert = FarkasCertificate(scaled[:len(mu)], scaled[len(mu):])
    if not verify_farkas(sys, cert):  # pragma: no cover
        raise AssertionError("simplex produced an invalid Farkas certificate")
    return Feasibility(certificate=cert)


# -- Fourier-Motzkin oracle -------------------------------------------------

def _primitive_row(coeffs: Sequence[Fraction], rhs: Fraction) -> Row:
    vals = list(coeffs) + [rhs]
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for x in ints[:-1]:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in coeffs), Fraction(rhs)
    return tuple(Fraction(x, g) for x in ints[:-1]), Fraction(ints[-1], g)


def fm_project(sys: LinearSystem, var_index: int) -> LinearSystem:
    """Eliminate one variable by Fourier-Motzkin.

    Equalities are split into pairs of inequalities.  The result has one
    fewer variable and is feasible iff the input is.
    """
    if not 0 <= var_index < sys.num_vars:
        raise IndexError("variable index out of range")
    rows = list(sys.inequalities)
    for a, b in sys.equalities:
        rows.append((a, b))
        rows.append((tuple(-x for x in a), -b))
    pos, neg, keep = [], [], []
    for a, b in rows:
        c = a[var_index]
        (pos if c > 0 else neg if c < 0 else keep).append((a, b))
    new = list(keep)
    for ap, bp in pos:
        for an, bn in neg:
            cp, cn = ap[var_index], -an[var_index]
            new.append((tuple(cn * x + cp * y for x, y in zip(ap, an)), cn * bp + cp * bn))
    out = set()
    for a, b in new:
        a = a[:var_index] + a[var_index + 1:]
        a, b = _primitive_row(a, b)
        if not any(a) and b <= 0:
            continue  # 0 >= b holds trivially
        out.add((a, b))
    return LinearSystem(sys.num_vars - 1, (), tuple(sorted(out)))


def fm_feasible(sys: LinearSystem) -> bool:
    """Full Fourier-Motzkin elimination; cheapest variable first."""
    while sys.num_vars:
        def cost(j):
            p = sum(1 for a, _ in sys.inequalities if a[j] > 0)
            q = sum(1 for a, _ in sys.inequalities if a[j] < 0)
            e = sum(1 for a, _ in sys.equalities if a[j])
            return (p + e) * (q + e) - p - q - 2 * e
        j = min(range(sys.num_vars), key=cost)
        sys = fm_project(sys, j)
    return all(b <= 0 for _, b in sys.inequalities) and all(b == 0 for _, b in sys.equalities)
