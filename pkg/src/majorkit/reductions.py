"""Reductions of majorization instances to column stochastic instances.

Two routes are provided.  ``reduce_shift_normalize`` adds ``lam*J``, divides
by ``mu`` and adds ``e v^T`` so that B' has unit column sums.
``reduce_diag_scale`` adds ``lam*J`` and divides every column by the
corresponding column sum of ``B + lam*J``.  Both preserve strong, weak and
directional majorization verdicts, and both accept caller-pinned parameters
so published worked examples can be replayed exactly.

Passing ``anchor="A"`` normalizes against A instead of B (the variant that
makes A' column stochastic, useful for weak majorization).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import PreconditionError, ShapeError, UnsupportedError
from .exact import (
    ONE,
    ZERO,
    RMatrix,
    RVector,
    Scalar,
    as_matrix,
    is_zero_one,
    to_fraction,
)
from .matrix import check_directional, check_strong, check_strong_equiv

SHIFT = "shift-normalize"
DIAG = "diag-scale"


@dataclass(frozen=True)
class ReductionCertificate:
    method: str
    lam: Fraction
    mu: Optional[Fraction] = None
    v: Optional[RVector] = None
    D: Optional[RMatrix] = None
    anchor: str = "B"

    def replay(self, A, B) -> Tuple[RMatrix, RMatrix]:
        """Apply the recorded transformation to ``(A, B)``."""
        A, B = as_matrix(A), as_matrix(B)
        n, m = A.shape
        A1 = A + self.lam * RMatrix.ones(n, m)
        B1 = B + self.lam * RMatrix.ones(n, m)
        if self.method == SHIFT:
            shift = RMatrix.outer((ONE,) * n, self.v)
            return A1 / self.mu + shift, B1 / self.mu + shift
        Dinv = RMatrix.diag(1 / d for d in (self.D[j, j] for j in range(m)))
        return A1 @ Dinv, B1 @ Dinv


def _check_pair(A, B):
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch: {A.shape} vs {B.shape}")
    return A, B


def _check_anchor(anchor: str) -> None:
    if anchor not in ("A", "B"):
        raise UnsupportedError(f"anchor must be 'A' or 'B', got {anchor!r}")


def _canonical_shift(A: RMatrix, B: RMatrix) -> Fraction:
    return max(ZERO, -min(A.min_entry(), B.min_entry()))


def reduce_shift_normalize(
    A, B, lam: Optional[Scalar] = None, mu: Optional[Scalar] = None, anchor: str = "B"
) -> Tuple[RMatrix, RMatrix, ReductionCertificate]:
    """Shift by ``lam*J``, scale by ``1/mu``, then add ``e v^T``.

    Defaults: ``lam = max(0, -min entry)`` and ``mu = max(1, largest column
    sum of A + lam*J and B + lam*J)``.  ``v = (e^T - e^T B2) / n`` where
    ``B2 = (B + lam*J) / mu`` (A2 when ``anchor="A"``).
    """
    A, B = _check_pair(A, B)
    _check_anchor(anchor)
    n, m = A.shape
    J = RMatrix.ones(n, m)
    lam = _canonical_shift(A, B) if lam is None else to_fraction(lam)
    if lam < 0:
        raise PreconditionError("lam must be nonnegative")
    A1, B1 = A + lam * J, B + lam * J
    if not (A1.is_nonnegative() and B1.is_nonnegative()):
        raise PreconditionError(f"lam = {lam} leaves negative entries")
    top = max(A1.column_sums() + B1.column_sums())
    mu = max(ONE, top) if mu is None else to_fraction(mu)
    if mu <= 0:
        raise PreconditionError("mu must be positive")
    if top > mu:
        raise PreconditionError(f"mu = {mu} leaves a column sum above 1")
    A2, B2 = A1 / mu, B1 / mu
    ref = B2 if anchor == "B" else A2
    v = tuple((1 - s) / n for s in ref.column_sums())
    shift = RMatrix.outer((ONE,) * n, v)
    cert = ReductionCertificate(SHIFT, lam, mu=mu, v=v, anchor=anchor)
    return A2 + shift, B2 + shift, cert


def reduce_diag_scale(
    A, B, lam: Optional[Scalar] = None, anchor: str = "B"
) -> Tuple[RMatrix, RMatrix, ReductionCertificate]:
    """Shift by ``lam*J`` and divide column j by the j-th column sum of ``B + lam*J``.

    The default ``lam`` is ``max(0, -min entry)``, plus one if the anchor
    matrix would then contain a zero column.
    """
    A, B = _check_pair(A, B)
    _check_anchor(anchor)
    n, m = A.shape
    J = RMatrix.ones(n, m)
    if lam is None:
        lam = _canonical_shift(A, B)
        ref1 = (B if anchor == "B" else A) + lam * J
        if any(all(x == 0 for x in c) for c in ref1.columns):
            lam += 1
    else:
        lam = to_fraction(lam)
    if lam < 0:
        raise PreconditionError("lam must be nonnegative")
    A1, B1 = A + lam * J, B + lam * J
    if not (A1.is_nonnegative() and B1.is_nonnegative()):
        raise PreconditionError(f"lam = {lam} leaves negative entries")
    ref = B1 if anchor == "B" else A1
    sums = ref.column_sums()
    if any(s == 0 for s in sums):
        raise PreconditionError(f"lam = {lam} leaves a zero column in {anchor}")
    D = RMatrix.diag(sums)
    Dinv = RMatrix.diag(1 / s for s in sums)
    cert = ReductionCertificate(DIAG, lam, D=D, anchor=anchor)
    return A1 @ Dinv, B1 @ Dinv, cert


def theta(A) -> RMatrix:
    """Normalize every nonzero column to unit sum; zero columns become ``e/n``.

    Meant for nonnegative input, where the result is column stochastic.  A
    nonzero column whose entries sum to 0 has no normalization and raises.
    """
    A = as_matrix(A)
    n = A.n_rows
    cols = []
    for j, c in enumerate(A.columns):
        if all(x == 0 for x in c):
            cols.append((Fraction(1, n),) * n)
            continue
        s = sum(c, ZERO)
        if s == 0:
            raise PreconditionError(f"column {j + 1} is nonzero but sums to 0; theta is undefined")
        cols.append(tuple(x / s for x in c))
    return RMatrix.from_columns(cols)


@dataclass(frozen=True)
class ZeroOneBridge:
    """The five conditions relating a (0,1) pair to its theta images.

    The two directional entries are semi-decisions: True means no refuting
    direction was found (or strong majorization settled it).
    """

    directional: bool
    strong: bool
    permutation: bool
    theta_directional: bool
    theta_strong: bool

    def decided_agree(self) -> bool:
        return self.strong == self.permutation == self.theta_strong

    def all_agree(self) -> bool:
        vals = {self.directional, self.strong, self.permutation, self.theta_directional, self.theta_strong}
        return len(vals) == 1


def zero_one_bridge(A, B, budget: int = 50, seed: int = 0) -> ZeroOneBridge:
    A, B = _check_pair(A, B)
    if not (is_zero_one(A) and is_zero_one(B)):
        raise PreconditionError("zero_one_bridge needs (0,1) matrices")
    if A.column_sums() != B.column_sums():
        raise PreconditionError("zero_one_bridge needs e^T A = e^T B")
    tA, tB = theta(A), theta(B)
    return ZeroOneBridge(
        directional=not check_directional(A, B, budget=budget, seed=seed).refuted,
        strong=check_strong(A, B).holds,
        permutation=check_strong_equiv(A, B) is not None,
        theta_directional=not check_directional(tA, tB, budget=budget, seed=seed).refuted,
        theta_strong=check_strong(tA, tB).holds,
    )
