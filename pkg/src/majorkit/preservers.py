"""Linear operators on vectors and on n x m matrices, and their preserver forms.

A matrix operator is stored as an ``m x m`` grid of ``n x n`` blocks;
``blocks[i][j]`` maps input column j to output column i, so
``apply(X)[:, i] = sum_j blocks[i][j] @ X[:, j]``.  Whole-operator matrices
use column-major vectorization: entry ``(q, j)`` of X sits at index
``q + j*n``.

Classifiers are structural.  Each reads the normal form off the entry
pattern and then rebuilds the operator to confirm an exact match.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .errors import ShapeError
from .exact import (
    ONE,
    ZERO,
    Permutation,
    RMatrix,
    RVector,
    Scalar,
    as_matrix,
    basis_vector,
    to_fraction,
    vector,
)


# ---------------------------------------------------------------- operators


@dataclass(frozen=True)
class VectorOperator:
    matrix: RMatrix

    def __post_init__(self):
        M = as_matrix(self.matrix)
        if not M.is_square():
            raise ShapeError(f"vector operator must be square, got {M.shape}")
        object.__setattr__(self, "matrix", M)

    @property
    def n(self) -> int:
        return self.matrix.n_rows

    def apply(self, v: Sequence[Scalar]) -> RVector:
        return self.matrix @ vector(v)

    __call__ = apply


@dataclass(frozen=True)
class OperatorGrid:
    blocks: Tuple[Tuple[RMatrix, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(as_matrix(b) for b in row) for row in self.blocks)
        m = len(blocks)
        if m == 0 or any(len(row) != m for row in blocks):
            raise ShapeError("operator grid must be a non-empty m x m grid")
        n = blocks[0][0].n_rows
        if any(b.shape != (n, n) for row in blocks for b in row):
            raise ShapeError("every block must be n x n with a common n")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return self.blocks[0][0].n_rows

    @property
    def m(self) -> int:
        return len(self.blocks)

    def block(self, i: int, j: int) -> RMatrix:
        return self.blocks[i][j]

    def apply(self, X) -> RMatrix:
        X = as_matrix(X)
        if X.shape != (self.n, self.m):
            raise ShapeError(f"operator acts on {self.n}x{self.m} matrices, got {X.shape}")
        cols = []
        for i in range(self.m):
            acc = [ZERO] * self.n
            for j in range(self.m):
                for r, x in enumerate(self.blocks[i][j] @ X.col(j)):
                    acc[r] += x
            cols.append(acc)
        return RMatrix.from_columns(cols)

    __call__ = apply

    def row_sum_operator(self, k: int) -> VectorOperator:
        """``sum_j blocks[k][j]``: the action on column k of ``a e^T``."""
        acc = RMatrix.zeros(self.n)
        for B in self.blocks[k]:
            acc = acc + B
        return VectorOperator(acc)


def compose_operator(grid: OperatorGrid) -> RMatrix:
    """The ``nm x nm`` matrix of the operator under column-major vectorization."""
    n, m = grid.n, grid.m
    rows = [[ZERO] * (n * m) for _ in range(n * m)]
    for i in range(m):
        for j in range(m):
            B = grid.blocks[i][j]
            for p in range(n):
                for q in range(n):
                    rows[p + i * n][q + j * n] = B[p, q]
    return RMatrix(rows)


def basis_matrix(n: int, m: int, q: int, j: int) -> RMatrix:
    return RMatrix.outer(basis_vector(n, q), basis_vector(m, j))


def decompose_operator(
    phi: Union[RMatrix, Sequence[Sequence[Scalar]], Callable[[RMatrix], RMatrix]], n: int, m: int
) -> OperatorGrid:
    """Split an operator on ``n x m`` matrices into its ``m x m`` block grid.

    ``phi`` is either the ``nm x nm`` matrix (column-major vectorization) or
    a callable evaluated on the basis matrices ``e_q e_j^T``.
    """
    if callable(phi):
        images = {}
        for j in range(m):
            for q in range(n):
                Y = as_matrix(phi(basis_matrix(n, m, q, j)))
                if Y.shape != (n, m):
                    raise ShapeError(f"callback returned {Y.shape}, expected {(n, m)}")
                images[q, j] = Y
        blocks = [
            [RMatrix.from_columns(images[q, j].col(i) for q in range(n)) for j in range(m)]
            for i in range(m)
        ]
        return OperatorGrid(tuple(tuple(r) for r in blocks))
    M = as_matrix(phi)
    if M.shape != (n * m, n * m):
        raise ShapeError(f"operator matrix must be {n * m}x{n * m}, got {M.shape}")
    blocks = [
        [RMatrix([[M[p + i * n, q + j * n] for q in range(n)] for p in range(n)]) for j in range(m)]
        for i in range(m)
    ]
    return OperatorGrid(tuple(tuple(r) for r in blocks))


def grid_equal_on_basis(G: OperatorGrid, H: OperatorGrid) -> bool:
    """Exact comparison of two operators on all ``nm`` basis matrices."""
    if (G.n, G.m) != (H.n, H.m):
        return False
    return all(
        G.apply(basis_matrix(G.n, G.m, q, j)) == H.apply(basis_matrix(G.n, G.m, q, j))
        for j in range(G.m)
        for q in range(G.n)
    )


# -------------------------------------------------------------------- forms


@dataclass(frozen=True)
class Ando1:
    """``x -> (e^T x) s``."""

    s: RVector

    def operator(self) -> VectorOperator:
        return make_ando1(self.s)


@dataclass(frozen=True)
class Ando2:
    """``x -> alpha P x + beta J x``."""

    alpha: Fraction
    beta: Fraction
    P: Permutation

    def operator(self) -> VectorOperator:
        return make_ando2(self.alpha, self.beta, self.P)


@dataclass(frozen=True)
class ZeroSumForm:
    """``X = v e^T + lam P``; for n = 2 ``alternate`` holds the other representation."""

    v: RVector
    lam: Fraction
    P: Permutation
    alternate: Optional["ZeroSumForm"] = field(default=None, compare=False)

    def operator(self) -> VectorOperator:
        return make_zero_sum(self.v, self.lam, self.P)


@dataclass(frozen=True)
class LiPoon1:
    """``X -> sum_j (e^T X^(j)) S_j``."""

    S: Tuple[RMatrix, ...]

    def operator(self) -> OperatorGrid:
        return make_li_poon1(self.S)


@dataclass(frozen=True)
class LiPoon2:
    """``X -> P X R + J X S``."""

    R: RMatrix
    S: RMatrix
    P: Permutation

    def operator(self) -> OperatorGrid:
        return make_li_poon2(self.P, self.R, self.S)


@dataclass(frozen=True)
class CSForm:
    """``X -> sum_j (e^T X^(j)) S_j + P X R``.

    ``constraint_ok`` is True when R = 0 or every column of ``sum_j S_j`` is
    constant.  Exactly those operators preserve strong majorization on
    column stochastic matrices.
    """

    S: Tuple[RMatrix, ...]
    P: Permutation
    R: RMatrix
    constraint_ok: bool

    def operator(self) -> OperatorGrid:
        return make_cs_form(self.S, self.P, self.R)


PreserverForm = Union[Ando1, Ando2, ZeroSumForm, LiPoon1, LiPoon2, CSForm]


# ------------------------------------------------------------- constructors


def _as_vector_operator(X) -> VectorOperator:
    return X if isinstance(X, VectorOperator) else VectorOperator(as_matrix(X))


def make_ando1(s: Sequence[Scalar]) -> VectorOperator:
    s = vector(s)
    return VectorOperator(RMatrix.outer(s, (ONE,) * len(s)))


def make_ando2(alpha: Scalar, beta: Scalar, P: Permutation) -> VectorOperator:
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    n = P.n
    return VectorOperator(P.to_matrix() * alpha + RMatrix.ones(n) * beta)


def make_zero_sum(v: Sequence[Scalar], lam: Scalar, P: Permutation) -> VectorOperator:
    v = vector(v)
    if len(v) != P.n:
        raise ShapeError(f"v has length {len(v)} but P acts on {P.n} coordinates")
    return VectorOperator(RMatrix.outer(v, (ONE,) * len(v)) + P.to_matrix() * to_fraction(lam))


def _grid(blocks) -> OperatorGrid:
    return OperatorGrid(tuple(tuple(r) for r in blocks))


def _check_S(S: Sequence) -> Tuple[RMatrix, ...]:
    S = tuple(as_matrix(x) for x in S)
    if not S:
        raise ShapeError("need at least one S_j")
    m = len(S)
    n = S[0].n_rows
    if any(x.shape != (n, m) for x in S):
        raise ShapeError(f"every S_j must be {n}x{m}")
    return S


def make_li_poon1(S: Sequence) -> OperatorGrid:
    S = _check_S(S)
    m = len(S)
    n = S[0].n_rows
    e = (ONE,) * n
    return _grid([[RMatrix.outer(S[j].col(i), e) for j in range(m)] for i in range(m)])


def make_li_poon2(P: Permutation, R, S) -> OperatorGrid:
    R, S = as_matrix(R), as_matrix(S)
    m = R.n_rows
    if R.shape != (m, m) or S.shape != (m, m):
        raise ShapeError("R and S must be square of the same size")
    n = P.n
    Pm, J = P.to_matrix(), RMatrix.ones(n)
    return _grid([[Pm * R[j, i] + J * S[j, i] for j in range(m)] for i in range(m)])


def make_cs_form(S: Sequence, P: Permutation, R) -> OperatorGrid:
    S = _check_S(S)
    R = as_matrix(R)
    m = len(S)
    n = S[0].n_rows
    if R.shape != (m, m):
        raise ShapeError(f"R must be {m}x{m}")
    if P.n != n:
        raise ShapeError(f"P must act on {n} coordinates")
    e = (ONE,) * n
    Pm = P.to_matrix()
    return _grid([[RMatrix.outer(S[j].col(i), e) + Pm * R[j, i] for j in range(m)] for i in range(m)])


# -------------------------------------------------------------- classifiers


def _columns_equal(X: RMatrix) -> bool:
    first = X.col(0)
    return all(X.col(j) == first for j in range(1, X.n_cols))


def classify_zero_sum_preserver(X) -> Optional[ZeroSumForm]:
    """Write ``X`` as ``v e^T + lam P``, or return None.

    n >= 3: either all columns agree (lam = 0), or every row has one value
    repeated n - 1 times plus a single deviant, deviants sit in distinct
    columns and all deviate by the same lam.  n = 2: equal column sums
    suffice; the P = I representation is returned with the swap one as
    ``alternate``.  n = 1: always, with lam = 0.
    """
    X = _as_vector_operator(X).matrix
    n = X.n_rows
    if n == 1:
        return ZeroSumForm((X[0, 0],), ZERO, Permutation.identity(1))
    if n == 2:
        (a, b), (c, d) = X.rows
        if a + c != b + d:
            return None
        lam = a - b
        swap = ZeroSumForm((b + lam, c + lam), -lam, Permutation([1, 0]))
        return ZeroSumForm((b, c), lam, Permutation.identity(2), alternate=swap)
    if _columns_equal(X):
        return ZeroSumForm(X.col(0), ZERO, Permutation.identity(n))
    v, dev_cols, lam = [], [], None
    for r, row in enumerate(X.rows):
        counts = Counter(row)
        base, hits = counts.most_common(1)[0]
        if hits != n - 1:
            return None
        c = next(k for k, x in enumerate(row) if x != base)
        d = row[c] - base
        if lam is None:
            lam = d
        elif d != lam:
            return None
        v.append(base)
        dev_cols.append(c)
    if len(set(dev_cols)) != n:
        return None
    form = ZeroSumForm(tuple(v), lam, Permutation.from_row_map(dev_cols))
    assert form.operator().matrix == X
    return form


def check_condition_alpha(X) -> Optional[Fraction]:
    """Common alpha > 0 with every column difference a rearrangement of ``alpha(e_1 - e_2)``."""
    X = _as_vector_operator(X).matrix
    n = X.n_rows
    alpha = None
    for i in range(n):
        for j in range(i + 1, n):
            diff = [x - y for x, y in zip(X.col(i), X.col(j))]
            nz = [x for x in diff if x]
            if len(nz) != 2 or nz[0] != -nz[1]:
                return None
            a = abs(nz[0])
            if alpha is None:
                alpha = a
            elif a != alpha:
                return None
    return alpha


def classify_vector_preserver(X) -> Optional[Union[Ando1, Ando2]]:
    """The two vector preserver forms: ``(e^T x) s`` or ``alpha P x + beta J x`` with alpha != 0."""
    X = _as_vector_operator(X).matrix
    if _columns_equal(X):
        return Ando1(X.col(0))
    form = classify_zero_sum_preserver(X)
    if form is None or form.lam == 0:
        return None
    beta = form.v[0]
    if any(x != beta for x in form.v):
        return None
    out = Ando2(form.lam, beta, form.P)
    assert out.operator().matrix == X
    return out


def classify_prob_preserver(X) -> Optional[Union[Ando1, Ando2]]:
    """Preservers of majorization on probability distributions; same set as for all vectors."""
    return classify_vector_preserver(X)


def _common_permutation(forms: Sequence[ZeroSumForm], n: int) -> Optional[Permutation]:
    """A permutation shared by every form with lam != 0 (identity if none constrains it)."""
    P = None
    for f in forms:
        if f.lam == 0:
            continue
        if P is None:
            P = f.P
        elif f.P != P:
            return None
    return P if P is not None else Permutation.identity(n)


def classify_strong_preserver(G: OperatorGrid) -> Optional[Union[LiPoon1, LiPoon2]]:
    """Global strong majorization preservers: Li-Poon forms 1 and 2."""
    n, m = G.n, G.m
    if all(_columns_equal(G.blocks[i][j]) for i in range(m) for j in range(m)):
        S = [RMatrix.from_columns(G.blocks[i][j].col(0) for i in range(m)) for j in range(m)]
        out = LiPoon1(tuple(S))
        assert grid_equal_on_basis(out.operator(), G)
        return out
    forms = {}
    for i in range(m):
        for j in range(m):
            f = classify_zero_sum_preserver(G.blocks[i][j])
            if f is None or any(x != f.v[0] for x in f.v):
                return None
            forms[i, j] = f
    P = _common_permutation(list(forms.values()), n)
    if P is None:
        return None
    R = RMatrix([[forms[i, j].lam for i in range(m)] for j in range(m)])
    S = RMatrix([[forms[i, j].v[0] for i in range(m)] for j in range(m)])
    out = LiPoon2(R, S, P)
    if not grid_equal_on_basis(out.operator(), G):
        return None
    return out


def _columns_constant(M: RMatrix) -> bool:
    return all(all(x == c[0] for x in c) for c in M.columns)


def extract_cs_preserver_form(G: OperatorGrid) -> Optional[CSForm]:
    """Write ``G`` as ``sum_j (e^T X^(j)) S_j + P X R``, or return None.

    Each block must be ``v e^T + lam P`` with one P shared by all blocks
    whose lam is nonzero.  For n = 2 the P = I representation of every block
    is used, which always reaches consensus.
    """
    n, m = G.n, G.m
    forms = {}
    for i in range(m):
        for j in range(m):
            f = classify_zero_sum_preserver(G.blocks[i][j])
            if f is None:
                return None
            forms[i, j] = f
    P = _common_permutation(list(forms.values()), n)
    if P is None:
        return None
    S = tuple(RMatrix.from_columns(forms[i, j].v for i in range(m)) for j in range(m))
    R = RMatrix([[forms[i, j].lam for i in range(m)] for j in range(m)])
    total = S[0]
    for Sj in S[1:]:
        total = total + Sj
    ok = R.is_zero() or _columns_constant(total)
    out = CSForm(S, P, R, ok)
    assert grid_equal_on_basis(out.operator(), G)
    return out


def is_cs_preserver(G: OperatorGrid) -> bool:
    """True iff ``G`` preserves strong majorization on column stochastic matrices."""
    form = extract_cs_preserver_form(G)
    return form is not None and form.constraint_ok
