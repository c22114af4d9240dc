"""Birkhoff decomposition and seeded generators of exact stochastic objects."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import PreconditionError
from .exact import ONE, ZERO, Permutation, RMatrix, RVector, as_matrix, is_doubly_stochastic, nullspace

Seed = Union[int, str]


@dataclass(frozen=True)
class BirkhoffDecomposition:
    terms: Tuple[Tuple[Fraction, Permutation], ...]

    def matrix(self) -> RMatrix:
        n = self.terms[0][1].n
        acc = [[ZERO] * n for _ in range(n)]
        for w, P in self.terms:
            for j, i in enumerate(P.images):
                acc[i][j] += w
        return RMatrix(acc)

    def __len__(self) -> int:
        return len(self.terms)


def _perfect_matching(support: List[List[bool]]) -> Optional[List[int]]:
    """Row -> column perfect matching by depth-first augmenting paths."""
    n = len(support)
    match_col: List[Optional[int]] = [None] * n  # column -> row

    def augment(r: int, seen: List[bool]) -> bool:
        for c in range(n):
            if support[r][c] and not seen[c]:
                seen[c] = True
                if match_col[c] is None or augment(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        if not augment(r, [False] * n):
            return None
    row_to_col = [0] * n
    for c, r in enumerate(match_col):
        row_to_col[r] = c
    return row_to_col


def _prune(terms: List[Tuple[Fraction, Permutation]], n: int) -> List[Tuple[Fraction, Permutation]]:
    """Drop terms along affine dependencies until at most (n-1)^2 + 1 remain.

    Permutation matrices span an affine space of dimension (n-1)^2, so any
    larger family is affinely dependent; moving weight along a dependency
    zeroes at least one coefficient without changing the sum.
    """
    bound = (n - 1) ** 2 + 1
    while len(terms) > bound:
        group = terms[: bound + 1]
        # columns are vec(P_t) with an extra row of ones for the affine condition
        rows = [[ONE] * len(group)]
        for i in range(n):
            for j in range(n):
                rows.append([ONE if P.images[j] == i else ZERO for _, P in group])
        c = nullspace(rows, len(group))[0]
        if not any(x > 0 for x in c):
            c = tuple(-x for x in c)
        step = min(w / x for (w, _), x in zip(group, c) if x > 0)
        kept = [(w - step * x, P) for (w, P), x in zip(group, c)]
        terms = [t for t in kept if t[0] != 0] + terms[bound + 1:]
    return terms


def birkhoff_decompose(D) -> BirkhoffDecomposition:
    """Exact convex combination of permutation matrices equal to ``D``.

    Each round matches rows to columns inside the support of the remainder
    and removes the smallest matched entry times that permutation.
    """
    D = as_matrix(D)
    if not is_doubly_stochastic(D):
        raise PreconditionError("birkhoff_decompose needs a doubly stochastic matrix")
    n = D.n_rows
    rest = [list(r) for r in D.rows]
    terms: List[Tuple[Fraction, Permutation]] = []
    remaining = ONE
    while remaining > 0:
        rows_to_cols = _perfect_matching([[x != 0 for x in r] for r in rest])
        # a positive multiple of a doubly stochastic matrix always has one
        assert rows_to_cols is not None, "internal error: no perfect matching"
        w = min(rest[i][c] for i, c in enumerate(rows_to_cols))
        for i, c in enumerate(rows_to_cols):
            rest[i][c] -= w
        remaining -= w
        terms.append((w, Permutation.from_row_map(rows_to_cols)))
    terms = _prune(terms, n)
    out = BirkhoffDecomposition(tuple(terms))
    assert out.matrix() == D, "internal error: reconstruction mismatch"
    return out


def _rng(seed: Seed, kind: str) -> random.Random:
    return random.Random(f"{kind}:{seed}")


def _random_weights(rng: random.Random, k: int, allow_zero: bool = False) -> RVector:
    lo = 0 if allow_zero else 1
    while True:
        raw = [rng.randint(lo, 9) for _ in range(k)]
        total = sum(raw)
        if total:
            return tuple(Fraction(x, total) for x in raw)


def random_permutation(n: int, rng: random.Random) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)


def random_doubly_stochastic(n: int, k: int, seed: Seed) -> RMatrix:
    """Convex combination of ``k`` random permutation matrices with random weights."""
    if n < 1 or k < 1:
        raise PreconditionError("need n >= 1 and k >= 1")
    rng = _rng(seed, "ds")
    weights = _random_weights(rng, k)
    acc = [[ZERO] * n for _ in range(n)]
    for w in weights:
        for j, i in enumerate(random_permutation(n, rng).images):
            acc[i][j] += w
    return RMatrix(acc)


def random_distribution(n: int, seed: Seed) -> RVector:
    if n < 1:
        raise PreconditionError("need n >= 1")
    return _random_weights(_rng(seed, "dist"), n, allow_zero=True)


def random_column_stochastic(n: int, m: int, seed: Seed) -> RMatrix:
    if n < 1 or m < 1:
        raise PreconditionError("need n >= 1 and m >= 1")
    rng = _rng(seed, "cs")
    return RMatrix.from_columns(_random_weights(rng, n, allow_zero=True) for _ in range(m))


def random_zero_sum(n: int, seed: Seed) -> RVector:
    if n < 1:
        raise PreconditionError("need n >= 1")
    rng = _rng(seed, "zs")
    raw = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
    mean = sum(raw, ZERO) / n
    return tuple(x - mean for x in raw)


def decompose_and_check(D: RMatrix, terms: Sequence[Tuple[Fraction, Permutation]]) -> bool:
    """True when ``terms`` is a valid decomposition of ``D`` within the length bound."""
    n = D.n_rows
    if len(terms) > (n - 1) ** 2 + 1 or any(w <= 0 for w, _ in terms):
        return False
    if sum((w for w, _ in terms), ZERO) != 1:
        return False
    return BirkhoffDecomposition(tuple(terms)).matrix() == D
