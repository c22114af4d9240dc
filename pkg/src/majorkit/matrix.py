"""Strong, weak and directional matrix majorization.

Strong and weak majorization are existence questions (``A = DB`` with D
doubly stochastic, ``A = RB`` with R row stochastic) and are decided exactly
through :mod:`majorkit.lp`.  Directional majorization has no finite decision
procedure here: :func:`check_directional` is a sound refuter that returns a
definite ``holds`` only when strong majorization holds.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import lp
from .errors import ShapeError, UnsupportedError
from .exact import (
    ONE,
    ZERO,
    Permutation,
    RMatrix,
    RVector,
    as_matrix,
    is_doubly_stochastic,
    is_row_stochastic,
    rref,
)
from .vector import check_vector_majorization, hlp_witness

HOLDS = "holds"
FAILS = "fails"
REFUTED = "refuted"
NOT_REFUTED = "not-refuted"

MAX_EXHAUSTIVE_COLUMNS = 16


@dataclass(frozen=True)
class MajorizationVerdict:
    relation: str
    status: str
    witness: Optional[RMatrix] = None
    reason: Optional[str] = None
    direction: Optional[RVector] = None
    trials: Optional[int] = None
    certificate: Optional[RVector] = None

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def refuted(self) -> bool:
        return self.status in (FAILS, REFUTED)

    def __bool__(self) -> bool:
        return self.holds


def _pair(A, B) -> Tuple[RMatrix, RMatrix]:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch: {A.shape} vs {B.shape}")
    return A, B


def strong_system(A: RMatrix, B: RMatrix) -> lp.FeasibilitySystem:
    """Constraints on vec(D) (row-major): De = e, e^T D = e^T, DB = A."""
    A, B = _pair(A, B)
    n, m = A.shape
    N = n * n
    E, f = [], []
    for i in range(n):
        row = [ZERO] * N
        for k in range(n):
            row[i * n + k] = ONE
        E.append(row)
        f.append(ONE)
    for k in range(n):
        row = [ZERO] * N
        for i in range(n):
            row[i * n + k] = ONE
        E.append(row)
        f.append(ONE)
    for i in range(n):
        for j in range(m):
            row = [ZERO] * N
            for k in range(n):
                row[i * n + k] = B[k, j]
            E.append(row)
            f.append(A[i, j])
    return lp.FeasibilitySystem(RMatrix._trusted(tuple(tuple(r) for r in E)), tuple(f))


def _unique_candidate(A: RMatrix, B: RMatrix):
    """If ``[B | e]`` has full row rank, D is pinned down by ``D [B | e] = [A | e]``.

    Returns ``(True, D or None)`` when the rank condition applies (None when
    the linear system is inconsistent), ``(False, None)`` otherwise.
    """
    n, m = B.shape
    if m + 1 < n:
        return False, None
    # rows of D solve  [B | e]^T d_i = [A_i | 1]^T ; eliminate all right-hand sides at once
    Mt = [list(B.col(j)) for j in range(m)] + [[ONE] * n]
    rhs_cols = [list(A.row(i)) + [ONE] for i in range(n)]
    aug = [Mt[r] + [rhs_cols[i][r] for i in range(n)] for r in range(m + 1)]
    R, pivots = rref(aug)
    if sum(1 for p in pivots if p < n) < n:
        return False, None
    if len(pivots) > n:
        return True, None
    rows = [[R[k][n + i] for k in range(n)] for i in range(n)]
    return True, RMatrix._trusted(tuple(tuple(r) for r in rows))


def _columns_differ(A: RMatrix, B: RMatrix) -> Optional[int]:
    sa, sb = A.column_sums(), B.column_sums()
    return next((j for j in range(len(sa)) if sa[j] != sb[j]), None)


def check_strong(A, B, method: str = "auto") -> MajorizationVerdict:
    """Decide ``A = D B`` for some doubly stochastic D.

    ``method="lp"`` skips the shortcuts (column-sum and column-wise screens,
    single-column case, uniquely determined D) and always runs the
    feasibility solver.
    """
    A, B = _pair(A, B)
    n, m = A.shape
    if method not in ("auto", "lp"):
        raise UnsupportedError(f"unknown method {method!r}")
    if method == "auto":
        j = _columns_differ(A, B)
        if j is not None:
            return MajorizationVerdict("strong", FAILS, reason=f"column {j + 1} sums differ")
        if m == 1:
            a, b = A.col(0), B.col(0)
            if check_vector_majorization(a, b):
                return MajorizationVerdict("strong", HOLDS, witness=hlp_witness(a, b))
            return MajorizationVerdict("strong", FAILS, reason="sorted prefix sums of A exceed those of B")
        # A = DB forces every column of A to be majorized by that of B
        for j in range(m):
            if not check_vector_majorization(A.col(j), B.col(j)):
                return MajorizationVerdict(
                    "strong", FAILS, reason=f"column {j + 1} of A is not majorized by column {j + 1} of B"
                )
        applies, D = _unique_candidate(A, B)
        if applies:
            if D is not None and D.is_nonnegative() and D @ B == A and is_doubly_stochastic(D):
                return MajorizationVerdict("strong", HOLDS, witness=D)
            reason = "the only solution of D[B|e] = [A|e] is not doubly stochastic" if D is not None \
                else "D[B|e] = [A|e] has no solution"
            return MajorizationVerdict("strong", FAILS, reason=reason)
    system = strong_system(A, B)
    out = lp.solve_feasibility(system)
    if out.feasible:
        D = RMatrix._trusted(tuple(tuple(out.x[i * n:(i + 1) * n]) for i in range(n)))
        return MajorizationVerdict("strong", HOLDS, witness=D)
    return MajorizationVerdict(
        "strong", FAILS, reason="no doubly stochastic D with A = DB", certificate=out.certificate
    )


def weak_row_system(a_row: Sequence[Fraction], B: RMatrix) -> lp.FeasibilitySystem:
    """Row ``a_row`` as a convex combination of the rows of B."""
    n, m = B.shape
    E = [[ONE] * n] + [list(B.col(j)) for j in range(m)]
    f = [ONE] + list(a_row)
    return lp.FeasibilitySystem(RMatrix._trusted(tuple(tuple(r) for r in E)), tuple(f))


def check_weak(A, B) -> MajorizationVerdict:
    """Decide ``A = R B`` for some row stochastic R, one row at a time."""
    A, B = _pair(A, B)
    rows = []
    for i in range(A.n_rows):
        out = lp.solve_feasibility(weak_row_system(A.row(i), B))
        if not out.feasible:
            return MajorizationVerdict(
                "weak",
                FAILS,
                reason=f"row {i + 1} of A is not a convex combination of the rows of B",
                certificate=out.certificate,
            )
        rows.append(out.x)
    return MajorizationVerdict("weak", HOLDS, witness=RMatrix(rows))


def _random_direction(rng: random.Random, m: int, bound: int = 9, max_den: int = 4) -> RVector:
    return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, max_den)) for _ in range(m))


def refute_direction(A: RMatrix, B: RMatrix, v: Sequence[Fraction]) -> bool:
    """True when ``Av`` is not majorized by ``Bv``."""
    return not check_vector_majorization(A @ v, B @ v)


def check_directional(
    A,
    B,
    budget: int = 200,
    seed: int = 0,
    exhaustive: bool = True,
    use_strong: bool = True,
) -> MajorizationVerdict:
    """Semi-decide ``Av ≼ Bv`` for all directions v.

    Refutations are exact.  ``holds`` is reported only through the strong
    majorization shortcut; otherwise the result is ``not-refuted`` together
    with the number of directions tried.
    """
    A, B = _pair(A, B)
    m = A.n_cols
    j = _columns_differ(A, B)
    if j is not None:
        e_j = tuple(ONE if k == j else ZERO for k in range(m))
        return MajorizationVerdict("directional", REFUTED, direction=e_j, reason="column sums differ")
    if exhaustive and m > MAX_EXHAUSTIVE_COLUMNS:
        raise UnsupportedError(f"exhaustive 0/1 directions need m <= {MAX_EXHAUSTIVE_COLUMNS}, got {m}")
    if use_strong:
        strong = check_strong(A, B)
        if strong.holds:
            return MajorizationVerdict("directional", HOLDS, witness=strong.witness)
    tried = 0
    if exhaustive:
        for bits in itertools.product((ZERO, ONE), repeat=m):
            tried += 1
            if refute_direction(A, B, bits):
                return MajorizationVerdict("directional", REFUTED, direction=bits, trials=tried)
    rng = random.Random(seed)
    for _ in range(budget):
        v = _random_direction(rng, m)
        tried += 1
        if refute_direction(A, B, v):
            return MajorizationVerdict("directional", REFUTED, direction=v, trials=tried)
    return MajorizationVerdict("directional", NOT_REFUTED, trials=tried)


def check_strong_equiv(A, B) -> Optional[Permutation]:
    """Permutation P with ``A = P B`` (rows matched first-fit), or None."""
    A, B = _pair(A, B)
    n = A.n_rows
    used = [False] * n
    images = [0] * n
    for i, row in enumerate(A.rows):
        k = next((k for k in range(n) if not used[k] and B.row(k) == row), None)
        if k is None:
            return None
        used[k] = True
        images[k] = i
    return Permutation(images)


def verify_strong_witness(A: RMatrix, B: RMatrix, D: RMatrix) -> bool:
    return is_doubly_stochastic(D) and D @ B == A


def verify_weak_witness(A: RMatrix, B: RMatrix, R: RMatrix) -> bool:
    return R.is_square() and is_row_stochastic(R) and R @ B == A
