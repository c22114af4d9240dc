"""Vector majorization: decision, doubly stochastic witnesses, equivalence."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import NotMajorizedError, PreconditionError, ShapeError
from .exact import (
    ONE,
    ZERO,
    Permutation,
    RMatrix,
    RVector,
    Scalar,
    sort_desc,
    to_fraction,
    vector,
    vsum,
)


def _pair(a, b) -> Tuple[RVector, RVector]:
    a, b = vector(a), vector(b)
    if len(a) != len(b):
        raise ShapeError(f"length mismatch: {len(a)} vs {len(b)}")
    return a, b


def check_vector_majorization(a: Sequence[Scalar], b: Sequence[Scalar]) -> bool:
    """True iff ``a`` is majorized by ``b``."""
    a, b = _pair(a, b)
    if vsum(a) != vsum(b):
        return False
    sa, _ = sort_desc(a)
    sb, _ = sort_desc(b)
    pa = pb = ZERO
    for x, y in zip(sa[:-1], sb[:-1]):
        pa += x
        pb += y
        if pa > pb:
            return False
    return True


@dataclass(frozen=True)
class TTransform:
    """``t*I + (1 - t)*P_(ij)`` acting on n coordinates."""

    n: int
    i: int
    j: int
    t: Fraction

    def to_matrix(self) -> RMatrix:
        rows = [[ONE if r == c else ZERO for c in range(self.n)] for r in range(self.n)]
        s = 1 - self.t
        rows[self.i][self.i] = rows[self.j][self.j] = self.t
        rows[self.i][self.j] = rows[self.j][self.i] = s
        return RMatrix(rows)

    def apply(self, v: Sequence[Fraction]) -> RVector:
        out = list(v)
        s = 1 - self.t
        out[self.i] = self.t * v[self.i] + s * v[self.j]
        out[self.j] = s * v[self.i] + self.t * v[self.j]
        return tuple(out)


@dataclass(frozen=True)
class HLPWitness:
    """``D = sigma_a^{-1} T_r ... T_1 sigma_b`` with ``a = D b``."""

    sigma_a: Permutation
    sigma_b: Permutation
    chain: Tuple[TTransform, ...]

    def matrix(self) -> RMatrix:
        M = self.sigma_b.to_matrix()
        for T in self.chain:
            M = T.to_matrix() @ M
        return self.sigma_a.inverse().apply_rows(M)


def hlp_chain(a: Sequence[Scalar], b: Sequence[Scalar]) -> HLPWitness:
    """Constructive T-transform chain taking ``b`` to ``a``.

    On the sorted vectors, repeatedly pick the first index j where b exceeds
    a and the first k > j where b falls short, then move
    ``min(b_j - a_j, a_k - b_k)`` from coordinate j to k.  Every step settles
    at least one coordinate for good, so at most n - 1 steps are taken.
    """
    a, b = _pair(a, b)
    if not check_vector_majorization(a, b):
        raise NotMajorizedError("a is not majorized by b; no doubly stochastic witness exists")
    n = len(a)
    sa, sig_a = sort_desc(a)
    sb, sig_b = sort_desc(b)
    cur = list(sb)
    chain: List[TTransform] = []
    while True:
        j = next((i for i in range(n) if cur[i] > sa[i]), None)
        if j is None:
            break
        k = next(i for i in range(j + 1, n) if cur[i] < sa[i])
        delta = min(cur[j] - sa[j], sa[k] - cur[k])
        # new cur_j = t*cur_j + (1-t)*cur_k = cur_j - delta
        t = 1 - delta / (cur[j] - cur[k])
        T = TTransform(n, j, k, t)
        cur = list(T.apply(cur))
        chain.append(T)
    assert tuple(cur) == sa
    return HLPWitness(sig_a, sig_b, tuple(chain))


def hlp_witness(a: Sequence[Scalar], b: Sequence[Scalar]) -> RMatrix:
    """Doubly stochastic ``D`` with ``a = D b``; raises if ``a`` is not majorized by ``b``."""
    return hlp_chain(a, b).matrix()


def check_vector_equiv(a: Sequence[Scalar], b: Sequence[Scalar]) -> Optional[Permutation]:
    """Permutation ``P`` with ``a = P b``, or None when the entry multisets differ."""
    a, b = _pair(a, b)
    sa, sig_a = sort_desc(a)
    sb, sig_b = sort_desc(b)
    if sa != sb:
        return None
    return sig_a.inverse() @ sig_b


@dataclass(frozen=True)
class VectorReduction:
    a: RVector
    b: RVector
    shift: Fraction
    scale: Fraction


def reduce_vector_to_distributions(
    a: Sequence[Scalar], b: Sequence[Scalar], shift: Optional[Scalar] = None
) -> VectorReduction:
    """Shift and rescale ``(a, b)`` to a pair of probability distributions.

    Returns ``a' = (a + shift*e) / scale`` and likewise ``b'`` where
    ``scale = e^T a + n*shift``.  Majorization is unchanged.  The default
    shift is ``max(0, -min entry)``, bumped by one when that would leave both
    vectors identically zero.
    """
    a, b = _pair(a, b)
    if vsum(a) != vsum(b):
        raise NotMajorizedError("e^T a != e^T b, so a is not majorized by b")
    n = len(a)
    if shift is None:
        lam = max(ZERO, -min(a + b))
        if vsum(a) + n * lam == 0:
            lam += 1
    else:
        lam = to_fraction(shift)
        if lam < 0:
            raise PreconditionError("shift must be nonnegative")
    if min(a + b) + lam < 0:
        raise PreconditionError(f"shift {lam} leaves negative entries")
    scale = vsum(a) + n * lam
    if scale == 0:
        raise PreconditionError(f"shift {lam} leaves both vectors zero")
    a2 = tuple((x + lam) / scale for x in a)
    b2 = tuple((x + lam) / scale for x in b)
    return VectorReduction(a2, b2, lam, scale)
