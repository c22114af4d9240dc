"""Exact rational vectors, matrices and permutations.

Scalars are :class:`fractions.Fraction`.  Vectors are plain tuples of
fractions; matrices are immutable :class:`RMatrix` values.  Nothing in this
module (or anywhere in the decision paths) touches floating point.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Tuple, Union

from .errors import ParseError, PreconditionError, ShapeError

Rational = Fraction
RVector = Tuple[Fraction, ...]
Scalar = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and floats are rejected."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        hint = ""
        if re.match(r"^\s*[+-]?\d*\.\d*(e[+-]?\d+)?\s*$", text, re.IGNORECASE):
            hint = " (decimal input is not accepted; write it as p/q)"
        raise ParseError(f"malformed rational {text!r}{hint}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def to_fraction(x: Scalar) -> Fraction:
    if isinstance(x, bool):
        raise ParseError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise ParseError(f"cannot convert {type(x).__name__} {x!r} to an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector(values: Iterable[Scalar]) -> RVector:
    v = tuple(to_fraction(x) for x in values)
    if not v:
        raise ShapeError("vectors must have length >= 1")
    return v


def basis_vector(n: int, i: int) -> RVector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def ones(n: int) -> RVector:
    return (ONE,) * n


def vsum(v: Sequence[Fraction]) -> Fraction:
    return sum(v, ZERO)


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> RVector:
    _same_length(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> RVector:
    _same_length(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Scalar, v: Sequence[Fraction]) -> RVector:
    c = to_fraction(c)
    return tuple(c * x for x in v)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    _same_length(a, b)
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _same_length(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise ShapeError(f"length mismatch: {len(a)} vs {len(b)}")


class RMatrix:
    """Dense immutable matrix of fractions."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        data = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ShapeError("matrices must have at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ShapeError("ragged matrix rows")
        self._rows = data
        self._hash = None

    @classmethod
    def _trusted(cls, rows: Tuple[Tuple[Fraction, ...], ...]) -> "RMatrix":
        obj = cls.__new__(cls)
        obj._rows = rows
        obj._hash = None
        return obj

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[Scalar]]) -> "RMatrix":
        cols = [vector(c) for c in columns]
        return cls(zip(*cols))

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls._trusted(tuple(basis_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "RMatrix":
        m = n if m is None else m
        return cls._trusted(tuple((ZERO,) * m for _ in range(n)))

    @classmethod
    def ones(cls, n: int, m: int | None = None) -> "RMatrix":
        """The all-ones matrix J."""
        m = n if m is None else m
        return cls._trusted(tuple((ONE,) * m for _ in range(n)))

    @classmethod
    def diag(cls, values: Iterable[Scalar]) -> "RMatrix":
        d = vector(values)
        n = len(d)
        return cls._trusted(
            tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n))
        )

    @classmethod
    def outer(cls, u: Sequence[Fraction], w: Sequence[Fraction]) -> "RMatrix":
        return cls._trusted(tuple(tuple(a * b for b in w) for a in u))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self._rows), len(self._rows[0])

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_cols(self) -> int:
        return len(self._rows[0])

    @property
    def rows(self) -> Tuple[RVector, ...]:
        return self._rows

    @property
    def columns(self) -> Tuple[RVector, ...]:
        return tuple(zip(*self._rows))

    def row(self, i: int) -> RVector:
        return self._rows[i]

    def col(self, j: int) -> RVector:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, idx: Tuple[int, int]) -> Fraction:
        i, j = idx
        return self._rows[i][j]

    def entries(self) -> Iterable[Fraction]:
        for r in self._rows:
            yield from r

    @property
    def T(self) -> "RMatrix":
        return RMatrix._trusted(tuple(zip(*self._rows)))

    def column_sums(self) -> RVector:
        return tuple(vsum(c) for c in zip(*self._rows))

    def row_sums(self) -> RVector:
        return tuple(vsum(r) for r in self._rows)

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def is_zero(self) -> bool:
        return not any(self.entries())

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries())

    def min_entry(self) -> Fraction:
        return min(self.entries())

    def with_columns(self, columns: Sequence[Sequence[Fraction]]) -> "RMatrix":
        return RMatrix.from_columns(columns)

    def __matmul__(self, other):
        if isinstance(other, RMatrix):
            if self.n_cols != other.n_rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns
            return RMatrix._trusted(
                tuple(tuple(_dot(r, c) for c in cols) for r in self._rows)
            )
        v = tuple(other)
        if len(v) != self.n_cols:
            raise ShapeError(f"cannot multiply {self.shape} by vector of length {len(v)}")
        return tuple(_dot(r, v) for r in self._rows)

    def __add__(self, other: "RMatrix") -> "RMatrix":
        self._check_same(other)
        return RMatrix._trusted(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        self._check_same(other)
        return RMatrix._trusted(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __neg__(self) -> "RMatrix":
        return RMatrix._trusted(tuple(tuple(-x for x in r) for r in self._rows))

    def __mul__(self, c: Scalar) -> "RMatrix":
        c = to_fraction(c)
        return RMatrix._trusted(tuple(tuple(c * x for x in r) for r in self._rows))

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "RMatrix":
        c = to_fraction(c)
        if c == 0:
            raise ZeroDivisionError("matrix divided by zero")
        return self * (1 / c)

    def _check_same(self, other: "RMatrix") -> None:
        if not isinstance(other, RMatrix):
            raise TypeError(f"expected RMatrix, got {type(other).__name__}")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        return isinstance(other, RMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            "[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows
        )
        return f"RMatrix([{body}])"

    def tolist(self) -> list:
        return [list(r) for r in self._rows]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def as_matrix(obj) -> RMatrix:
    return obj if isinstance(obj, RMatrix) else RMatrix(obj)


def is_row_stochastic(A: RMatrix) -> bool:
    return A.is_nonnegative() and all(s == 1 for s in A.row_sums())


def is_column_stochastic(A: RMatrix) -> bool:
    return A.is_nonnegative() and all(s == 1 for s in A.column_sums())


def is_doubly_stochastic(A: RMatrix) -> bool:
    return A.is_square() and is_row_stochastic(A) and is_column_stochastic(A)


def is_distribution(v: Sequence[Fraction]) -> bool:
    return all(x >= 0 for x in v) and vsum(v) == 1


def is_zero_one(A: RMatrix) -> bool:
    return all(x == 0 or x == 1 for x in A.entries())


def positive_part_sum(v: Sequence[Fraction]) -> Fraction:
    """Sum of the positive entries of ``v``."""
    return sum((x for x in v if x > 0), ZERO)


class Permutation:
    """A bijection of {0, ..., n-1}.

    ``images[j]`` is where position ``j`` is sent, so the matrix has a one in
    entry ``(images[j], j)`` and ``P @ v`` places ``v[j]`` at ``images[j]``.
    Textual forms (JSON, repr) use 1-based indices.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))) or not imgs:
            raise PreconditionError(f"not a permutation of 0..n-1: {imgs}")
        self.images = imgs

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        imgs = list(range(n))
        imgs[i], imgs[j] = j, i
        return cls(imgs)

    @classmethod
    def from_row_map(cls, cols: Sequence[int]) -> "Permutation":
        """Permutation matrix with a one in entry ``(i, cols[i])`` for every row i."""
        imgs = [0] * len(cols)
        for i, c in enumerate(cols):
            imgs[c] = i
        return cls(imgs)

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> "Permutation":
        return cls(i - 1 for i in images)

    @classmethod
    def from_matrix(cls, P: RMatrix) -> "Permutation":
        if not P.is_square() or not is_zero_one(P):
            raise PreconditionError("not a permutation matrix")
        cols = P.columns
        imgs = []
        for c in cols:
            hits = [i for i, x in enumerate(c) if x == 1]
            if len(hits) != 1:
                raise PreconditionError("not a permutation matrix")
            imgs.append(hits[0])
        return cls(imgs)

    @property
    def n(self) -> int:
        return len(self.images)

    def row_map(self) -> Tuple[int, ...]:
        """Column index of the one in each row."""
        return self.inverse().images

    def to_matrix(self) -> RMatrix:
        n = self.n
        rows = [[ZERO] * n for _ in range(n)]
        for j, i in enumerate(self.images):
            rows[i][j] = ONE
        return RMatrix._trusted(tuple(tuple(r) for r in rows))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.n:
            raise ShapeError(f"permutation of size {self.n} applied to length {len(v)}")
        out = [None] * self.n
        for j, i in enumerate(self.images):
            out[i] = v[j]
        return tuple(out)

    def apply_rows(self, A: RMatrix) -> RMatrix:
        """The product ``P @ A`` computed by moving rows."""
        return RMatrix._trusted(self.apply(A.rows))

    def __matmul__(self, other):
        if isinstance(other, Permutation):
            if other.n != self.n:
                raise ShapeError("permutation sizes differ")
            return Permutation(self.images[k] for k in other.images)
        if isinstance(other, RMatrix):
            return self.apply_rows(other)
        return self.apply(tuple(other))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, i in enumerate(self.images):
            inv[i] = j
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for j, i in enumerate(self.images))

    def one_based(self) -> list:
        return [i + 1 for i in self.images]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.one_based()})"


def sort_desc(v: Sequence[Fraction]) -> Tuple[RVector, Permutation]:
    """Stable non-increasing sort; returns ``(v_sorted, sigma)`` with ``sigma @ v == v_sorted``."""
    order = sorted(range(len(v)), key=lambda i: -v[i])
    sigma = [0] * len(v)
    for k, i in enumerate(order):
        sigma[i] = k
    return tuple(v[i] for i in order), Permutation(sigma)


# Gaussian elimination helpers --------------------------------------------


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[list, list]:
    """Reduced row echelon form and the pivot column list."""
    M = [[to_fraction(x) for x in r] for r in rows]
    if not M:
        return M, []
    n_rows, n_cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        if piv != 1:
            M[r] = [x / piv for x in M[r]]
        pr = M[r]
        nz = [(k, x) for k, x in enumerate(pr) if x]
        for i in range(n_rows):
            if i != r:
                f = M[i][c]
                if f:
                    row = M[i]
                    for k, x in nz:
                        row[k] -= f * x
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: RMatrix | Sequence[Sequence[Fraction]]) -> int:
    rows = A.rows if isinstance(A, RMatrix) else A
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int | None = None) -> list:
    """Basis of the right null space {x : M x = 0}."""
    if n_cols is None:
        n_cols = len(rows[0])
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n_cols
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -R[r][f]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """One solution of ``M x = rhs`` (free variables set to 0), or None if inconsistent."""
    n_cols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [ZERO] * n_cols
    for r, p in enumerate(pivots):
        x[p] = R[r][n_cols]
    return tuple(x)


def is_invertible(A: RMatrix) -> bool:
    return A.is_square() and rank(A) == A.n_rows
