"""Exact linear feasibility: find x >= 0 with E x = f, or a Farkas certificate.

Phase-1 simplex over fractions with Bland's rule.  Artificial variables are
driven out of the basis at the optimum so a feasible answer is a vertex.
When the phase-1 optimum is positive, the simplex multipliers give y with
``y^T E <= 0`` and ``y^T f > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import ZERO, RMatrix, RVector, as_matrix, to_fraction
from .errors import ShapeError


@dataclass(frozen=True)
class FeasibilitySystem:
    E: RMatrix
    f: RVector

    def __post_init__(self):
        E = as_matrix(self.E)
        f = tuple(to_fraction(x) for x in self.f)
        if E.n_rows != len(f):
            raise ShapeError(f"E has {E.n_rows} rows but f has length {len(f)}")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "f", f)


@dataclass(frozen=True)
class Feasible:
    x: RVector

    feasible = True


@dataclass(frozen=True)
class Infeasible:
    certificate: RVector

    feasible = False


FeasibilityOutcome = Union[Feasible, Infeasible]


def verify_solution(E: Sequence[Sequence[Fraction]], f: Sequence[Fraction], x: Sequence[Fraction]) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(sum((a * v for a, v in zip(row, x) if a), ZERO) == b for row, b in zip(E, f))


def verify_certificate(E: Sequence[Sequence[Fraction]], f: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    n_cols = len(E[0]) if E else 0
    for j in range(n_cols):
        if sum((y[i] * E[i][j] for i in range(len(E)) if y[i]), ZERO) > 0:
            return False
    return sum((a * b for a, b in zip(y, f)), ZERO) > 0


def solve_feasibility(system: FeasibilitySystem) -> FeasibilityOutcome:
    return solve_rows(system.E.rows, system.f)


def solve_rows(E: Sequence[Sequence[Fraction]], f: Sequence[Fraction]) -> FeasibilityOutcome:
    """Same as :func:`solve_feasibility` on raw row lists (no RMatrix wrapping)."""
    k = len(E)
    if k != len(f):
        raise ShapeError(f"E has {k} rows but f has length {len(f)}")
    if k == 0:
        raise ShapeError("empty constraint system")
    N = len(E[0])
    if any(len(r) != N for r in E):
        raise ShapeError("ragged constraint matrix")

    signs = [-1 if b < 0 else 1 for b in f]
    width = N + k
    T = []
    rhs = []
    for i in range(k):
        s = signs[i]
        row = [s * a for a in E[i]] + [ZERO] * k
        row[N + i] = Fraction(1)
        T.append(row)
        rhs.append(s * f[i])
    basis = [N + i for i in range(k)]

    # reduced costs of the phase-1 objective (sum of artificials)
    z = [ZERO] * width
    for row in T:
        for j in range(N):
            if row[j]:
                z[j] -= row[j]
    z_rhs = -sum(rhs, ZERO)

    def pivot(p: int, q: int) -> None:
        nonlocal z_rhs
        pr = T[p]
        piv = pr[q]
        if piv != 1:
            inv = 1 / piv
            for j in range(width):
                if pr[j]:
                    pr[j] *= inv
            rhs[p] *= inv
        nz = [(j, v) for j, v in enumerate(pr) if v]
        rp = rhs[p]
        for i in range(k):
            if i == p:
                continue
            fac = T[i][q]
            if fac:
                row = T[i]
                for j, v in nz:
                    row[j] -= fac * v
                rhs[i] -= fac * rp
        fac = z[q]
        if fac:
            for j, v in nz:
                z[j] -= fac * v
            z_rhs -= fac * rp
        basis[p] = q

    while True:
        # Bland: lowest-index improving column; artificials never re-enter
        q = next((j for j in range(N) if z[j] < 0), None)
        if q is None:
            break
        best = None
        for i in range(k):
            a = T[i][q]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        # phase 1 is bounded below by 0, so a leaving row always exists
        pivot(best[1], q)

    if -z_rhs > 0:
        y = []
        for a in range(k):
            col = N + a
            y.append(sum((T[i][col] for i in range(k) if basis[i] >= N and T[i][col]), ZERO))
        cert = tuple(signs[i] * y[i] for i in range(k))
        assert verify_certificate(E, f, cert), "internal error: bad Farkas certificate"
        return Infeasible(cert)

    for i in range(k):
        if basis[i] >= N:
            q = next((j for j in range(N) if T[i][j]), None)
            if q is not None:
                pivot(i, q)
            # otherwise the row is redundant and its artificial stays at 0
    x = [ZERO] * N
    for i, b in enumerate(basis):
        if b < N:
            x[b] = rhs[i]
    x = tuple(x)
    assert verify_solution(E, f, x), "internal error: bad feasible point"
    return Feasible(x)
