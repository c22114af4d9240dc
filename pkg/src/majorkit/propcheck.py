"""Seeded generators of majorized pairs, a preserver fuzzer and the lemma suite.

All randomness is derived from string seeds of the form ``"<seed>:<key>"``,
so any trial can be replayed on its own from the seed printed in a report.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .birkhoff import (
    random_column_stochastic,
    random_distribution,
    random_doubly_stochastic,
    random_permutation,
    random_zero_sum,
)
from .errors import ShapeError, UnsupportedError
from .exact import (
    ONE,
    ZERO,
    Permutation,
    RMatrix,
    RVector,
    basis_vector,
    is_column_stochastic,
    is_distribution,
    is_invertible,
    is_zero_one,
    vsub,
    vsum,
)
from .matrix import (
    check_strong,
    check_strong_equiv,
    check_weak,
    refute_direction,
    verify_strong_witness,
    verify_weak_witness,
)
from .preservers import (
    OperatorGrid,
    VectorOperator,
    check_condition_alpha,
    classify_vector_preserver,
    classify_zero_sum_preserver,
    extract_cs_preserver_form,
    is_cs_preserver,
    make_ando1,
    make_ando2,
    make_cs_form,
    make_li_poon1,
    make_zero_sum,
)
from .reductions import theta, zero_one_bridge
from .vector import check_vector_equiv, check_vector_majorization

RELATIONS = ("vector", "strong", "weak")
DOMAINS = ("all", "distributions", "zero-sum", "column-stochastic", "zero-one")
DOMAIN_ALIASES = {
    "cs": "column-stochastic",
    "col": "column-stochastic",
    "dist": "distributions",
    "prob": "distributions",
    "zerosum": "zero-sum",
    "zs": "zero-sum",
    "01": "zero-one",
}
SUPPORTED = {
    "vector": ("all", "distributions", "zero-sum", "zero-one"),
    "strong": ("all", "column-stochastic", "zero-one"),
    "weak": ("all", "zero-one"),
}

Pair = Tuple[Union[RVector, RMatrix], Union[RVector, RMatrix]]


@dataclass(frozen=True)
class RelationSpec:
    relation: str
    domain: str = "all"

    def __post_init__(self):
        domain = DOMAIN_ALIASES.get(self.domain, self.domain)
        object.__setattr__(self, "domain", domain)
        if self.relation not in RELATIONS:
            raise UnsupportedError(f"unknown relation {self.relation!r}; expected one of {RELATIONS}")
        if domain not in DOMAINS:
            raise UnsupportedError(f"unknown domain {self.domain!r}; expected one of {DOMAINS}")
        if domain not in SUPPORTED[self.relation]:
            raise UnsupportedError(
                f"no generator for ({self.relation}, {domain}); supported domains: {SUPPORTED[self.relation]}"
            )

    @property
    def is_vector(self) -> bool:
        return self.relation == "vector"


def _rng(seed, key: str) -> random.Random:
    return random.Random(f"{seed}:{key}")


def _int_vector(rng: random.Random, n: int, lo: int = -6, hi: int = 6) -> RVector:
    return tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))


def _int_matrix(rng: random.Random, n: int, m: int, lo: int = -6, hi: int = 6) -> RMatrix:
    return RMatrix([[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)])


def _zero_one_matrix(rng: random.Random, n: int, m: int) -> RMatrix:
    return RMatrix([[rng.randint(0, 1) for _ in range(m)] for _ in range(n)])


def _random_row_stochastic(rng: random.Random, n: int) -> RMatrix:
    return RMatrix([random_distribution(n, rng.random()) for _ in range(n)])


def _ds(rng: random.Random, n: int) -> RMatrix:
    return random_doubly_stochastic(n, rng.randint(1, 3), rng.random())


# ---------------------------------------------------------- relation checks


def relation_holds(relation: str, a, b) -> bool:
    """Exact decision of the relation on a pair."""
    if relation == "vector":
        return check_vector_majorization(a, b)
    if relation == "strong":
        return check_strong(a, b).holds
    if relation == "weak":
        return check_weak(a, b).holds
    raise UnsupportedError(f"unknown relation {relation!r}")


def in_domain(domain: str, x) -> bool:
    if domain == "all":
        return True
    if isinstance(x, RMatrix):
        if domain == "column-stochastic":
            return is_column_stochastic(x)
        if domain == "zero-one":
            return is_zero_one(x)
        return False
    if domain == "distributions":
        return is_distribution(x)
    if domain == "zero-sum":
        return vsum(x) == 0
    if domain == "zero-one":
        return all(v in (0, 1) for v in x)
    return False


# ---------------------------------------------------------------- gen_pair


def gen_pair(spec: RelationSpec, n: int, m: int = 1, seed=0) -> Pair:
    """A pair ``(A, B)`` with ``A ≼ B`` for the requested relation, inside its domain.

    The pair is built from an explicit witness and the witness is verified
    before returning.  Vector relations ignore ``m``.
    """
    rng = _rng(seed, f"gen:{spec.relation}:{spec.domain}:{n}:{m}")
    rel, dom = spec.relation, spec.domain
    if rel == "vector":
        if dom == "zero-one":
            b = tuple(Fraction(rng.randint(0, 1)) for _ in range(n))
            a = random_permutation(n, rng).apply(b)
            ok = vsum(a) == vsum(b)
        else:
            if dom == "all":
                b = _int_vector(rng, n)
            elif dom == "distributions":
                b = random_distribution(n, rng.random())
            else:
                b = random_zero_sum(n, rng.random())
            D = _ds(rng, n)
            a = D @ b
            ok = verify_strong_witness(RMatrix.from_columns([a]), RMatrix.from_columns([b]), D)
        pair: Pair = (a, b)
    elif rel == "strong":
        if dom == "zero-one":
            B = _zero_one_matrix(rng, n, m)
            A = random_permutation(n, rng).apply_rows(B)
            ok = check_strong_equiv(A, B) is not None
        else:
            B = _int_matrix(rng, n, m) if dom == "all" else random_column_stochastic(n, m, rng.random())
            D = _ds(rng, n)
            A = D @ B
            ok = verify_strong_witness(A, B, D)
        pair = (A, B)
    else:
        if dom == "zero-one":
            B = _zero_one_matrix(rng, n, m)
            picks = [rng.randrange(n) for _ in range(n)]
            R = RMatrix([[ONE if c == k else ZERO for c in range(n)] for k in picks])
        else:
            B = _int_matrix(rng, n, m)
            R = _random_row_stochastic(rng, n)
        A = R @ B
        ok = verify_weak_witness(A, B, R)
        pair = (A, B)
    assert ok and all(in_domain(dom, x) for x in pair), "internal error: generator produced an invalid pair"
    return pair


# ------------------------------------------------------------ fuzz battery


def _transpositions(n: int) -> List[Permutation]:
    return [Permutation.transposition(n, i, j) for i in range(n) for j in range(i + 1, n)]


def _vector_battery(spec: RelationSpec, n: int) -> Iterator[Pair]:
    basis = [basis_vector(n, i) for i in range(n)]
    if spec.domain in ("all", "distributions", "zero-one"):
        for i in range(n):
            for j in range(n):
                if i != j:
                    yield basis[i], basis[j]
    if spec.domain in ("all", "zero-sum"):
        diffs = [vsub(basis[g], basis[h]) for g in range(n) for h in range(n) if g != h]
        for d1 in diffs:
            for d2 in diffs:
                if d1 != d2:
                    yield d1, d2
    if spec.domain in ("all", "distributions") and n >= 3:
        # (2, 1, 0, ...) against its transpositions, scaled to a distribution
        a = tuple(Fraction(max(0, 2 - k), 3) for k in range(n))
        for Q in _transpositions(n):
            yield a, Q.apply(a)
    if spec.domain in ("all", "zero-sum") and n >= 3:
        a = (Fraction(2), Fraction(-1), Fraction(-1)) + (ZERO,) * (n - 3)
        for Q in _transpositions(n):
            yield a, Q.apply(a)


def _matrix_battery(spec: RelationSpec, n: int, m: int) -> Iterator[Pair]:
    if spec.domain == "column-stochastic":
        # (J + (e_g - e_h) e_k^T) / n against its row transpositions
        J = RMatrix.ones(n, m)
        for k in range(m):
            for g in range(n):
                for h in range(g + 1, n):
                    col = [ZERO] * n
                    col[g], col[h] = ONE, -ONE
                    A = (J + RMatrix.outer(col, basis_vector(m, k))) / n
                    for Q in _transpositions(n):
                        B = Q.apply_rows(A)
                        yield A, B
                        yield B, A
        # columns drawn from the standard basis, against row transpositions
        for rest in itertools.product(range(n), repeat=m - 1):
            A = RMatrix.from_columns(basis_vector(n, c) for c in (0,) + rest)
            for Q in _transpositions(n):
                yield A, Q.apply_rows(A)
        return
    # e_g e_k^T against e_h e_k^T; valid for all, zero-one and weak
    for k in range(m):
        for g in range(n):
            for h in range(n):
                if g != h:
                    yield (
                        RMatrix.outer(basis_vector(n, g), basis_vector(m, k)),
                        RMatrix.outer(basis_vector(n, h), basis_vector(m, k)),
                    )


def structured_battery(spec: RelationSpec, n: int, m: int = 1) -> List[Pair]:
    """Deduplicated proof-guided pairs tried before any random draw."""
    raw = _vector_battery(spec, n) if spec.is_vector else _matrix_battery(spec, n, m)
    seen, out = set(), []
    for a, b in raw:
        key = (a, b)
        if a == b or key in seen:
            continue
        seen.add(key)
        out.append((a, b))
    return out


# -------------------------------------------------------------- the fuzzer


@dataclass(frozen=True)
class Counterexample:
    """A pair satisfying the relation whose images do not."""

    relation: str
    domain: str
    A: Union[RVector, RMatrix]
    B: Union[RVector, RMatrix]
    image_A: Union[RVector, RMatrix]
    image_B: Union[RVector, RMatrix]
    source: str
    replay_seed: Optional[str]
    transcript: Tuple[str, ...]

    def verify(self, op=None) -> bool:
        """Re-check from the stored data alone (and against ``op`` when given)."""
        if op is not None and (_apply(op, self.A), _apply(op, self.B)) != (self.image_A, self.image_B):
            return False
        return (
            in_domain(self.domain, self.A)
            and in_domain(self.domain, self.B)
            and relation_holds(self.relation, self.A, self.B)
            and not relation_holds(self.relation, self.image_A, self.image_B)
        )


@dataclass(frozen=True)
class FuzzReport:
    counterexample: Optional[Counterexample]
    battery_size: int
    battery_tried: int
    random_tried: int

    @property
    def found_in_battery(self) -> bool:
        return self.counterexample is not None and self.counterexample.source.startswith("battery")


def _apply(op, x):
    return op.apply(x)


def _check_operator(op, spec: RelationSpec) -> Tuple[int, int]:
    if spec.is_vector:
        if not isinstance(op, VectorOperator):
            raise ShapeError("vector relations need a VectorOperator")
        return op.n, 1
    if not isinstance(op, OperatorGrid):
        raise ShapeError(f"{spec.relation} majorization needs an OperatorGrid")
    return op.n, op.m


def _images_fail(spec: RelationSpec, ia, ib) -> Optional[str]:
    """Why the images violate the relation, or None when they satisfy it."""
    if spec.relation == "vector":
        return None if check_vector_majorization(ia, ib) else "image of a is not majorized by image of b"
    if spec.relation == "strong":
        verdict = check_strong(ia, ib)
    else:
        verdict = check_weak(ia, ib)
    return None if verdict.holds else verdict.reason


def fuzz_report(op, spec: RelationSpec, trials: int = 200, seed=0) -> FuzzReport:
    """Search for a pair in the requested relation whose images are not related.

    The structured battery runs first, then ``trials`` draws from
    :func:`gen_pair` with replay seeds ``"<seed>:<t>"``.
    """
    n, m = _check_operator(op, spec)
    battery = structured_battery(spec, n, m)

    def found(a, b, ia, ib, source, replay, why):
        transcript = (
            f"pair from {source}" + (f" (replay seed {replay})" if replay else ""),
            f"{spec.relation} majorization holds on the pair",
            f"{spec.relation} majorization fails on the images: {why}",
        )
        return Counterexample(spec.relation, spec.domain, a, b, ia, ib, source, replay, transcript)

    for t, (a, b) in enumerate(battery):
        ia, ib = _apply(op, a), _apply(op, b)
        why = _images_fail(spec, ia, ib)
        if why is not None:
            cx = found(a, b, ia, ib, f"battery #{t}", None, why)
            return FuzzReport(cx, len(battery), t + 1, 0)
    for t in range(trials):
        replay = f"{seed}:{t}"
        a, b = gen_pair(spec, n, m, replay)
        ia, ib = _apply(op, a), _apply(op, b)
        why = _images_fail(spec, ia, ib)
        if why is not None:
            cx = found(a, b, ia, ib, f"random trial {t}", replay, why)
            return FuzzReport(cx, len(battery), len(battery), t + 1)
    return FuzzReport(None, len(battery), len(battery), trials)


def fuzz_preserver(op, spec: RelationSpec, trials: int = 200, seed=0) -> Optional[Counterexample]:
    """First counterexample to ``op`` preserving the relation on the domain, or None."""
    return fuzz_report(op, spec, trials, seed).counterexample


# ----------------------------------------------------------- lemma suite

DEFAULT_SIZES: Tuple[Tuple[int, int], ...] = tuple(
    (n, m) for n in (2, 3, 4, 5) for m in (1, 2, 3, 4)
)


def _default_checkers() -> Dict[str, Callable]:
    return {
        "strong": lambda A, B: check_strong(A, B).holds,
        "weak": lambda A, B: check_weak(A, B).holds,
        "vector": check_vector_majorization,
        "vector_equiv": lambda a, b: check_vector_equiv(a, b) is not None,
        "strong_equiv": lambda A, B: check_strong_equiv(A, B) is not None,
        "refute_direction": refute_direction,
    }


@dataclass(frozen=True)
class PropertyResult:
    name: str
    cases: int
    failures: int
    first_failure_seed: Optional[str] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class SuiteReport:
    seed: object
    results: Tuple[PropertyResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> List[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.name}: {r.cases - r.failures}/{r.cases}"
            if not r.passed:
                line += f" (replay seed {r.first_failure_seed}: {r.detail})"
            out.append(line)
        return out


def _strong_pair(rng: random.Random, n: int, m: int) -> Tuple[RMatrix, RMatrix]:
    """Half the time A = DB, otherwise an independent A with the same column sums."""
    B = _int_matrix(rng, n, m)
    if rng.random() < 0.5:
        return _ds(rng, n) @ B, B
    A = _int_matrix(rng, n, m)
    fix = [b - a for a, b in zip(A.column_sums(), B.column_sums())]
    return A + RMatrix.outer(basis_vector(n, rng.randrange(n)), fix), B


def _weak_pair(rng: random.Random, n: int, m: int) -> Tuple[RMatrix, RMatrix]:
    B = _int_matrix(rng, n, m)
    if rng.random() < 0.5:
        return _random_row_stochastic(rng, n) @ B, B
    return _int_matrix(rng, n, m), B


def _invertible(rng: random.Random, m: int) -> RMatrix:
    while True:
        Y = _int_matrix(rng, m, m, -3, 3)
        if is_invertible(Y):
            return Y


def _nonzero(rng: random.Random) -> Fraction:
    while True:
        x = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if x:
            return x


def _p_right_inv(rng, n, m, ck):
    A, B = _strong_pair(rng, n, m)
    Y = _invertible(rng, m)
    if ck["strong"](A, B) != ck["strong"](A @ Y, B @ Y):
        return "strong verdict changed under A, B -> AY, BY"
    A, B = _weak_pair(rng, n, m)
    if ck["weak"](A, B) != ck["weak"](A @ Y, B @ Y):
        return "weak verdict changed under A, B -> AY, BY"
    return None


def _p_ev(rng, n, m, ck):
    A, B = _strong_pair(rng, n, m)
    shift = RMatrix.outer((ONE,) * n, _int_vector(rng, m))
    if ck["strong"](A, B) != ck["strong"](A + shift, B + shift):
        return "strong verdict changed under adding e v^T"
    return None


def _p_lambda(rng, n, m, ck):
    A, B = _strong_pair(rng, n, m)
    lam = _nonzero(rng)
    if ck["strong"](A, B) != ck["strong"](A * lam, B * lam):
        return f"strong verdict changed under scaling by {lam}"
    return None


def _p_ad_bd(rng, n, m, ck):
    D = RMatrix.diag(_nonzero(rng) for _ in range(m))
    A, B = _strong_pair(rng, n, m)
    if ck["strong"](A, B) != ck["strong"](A @ D, B @ D):
        return "strong verdict changed under a nonsingular diagonal on the right"
    A, B = _weak_pair(rng, n, m)
    if ck["weak"](A, B) != ck["weak"](A @ D, B @ D):
        return "weak verdict changed under a nonsingular diagonal on the right"
    return None


def _p_plus_j(rng, n, m, ck):
    A, B = _strong_pair(rng, n, m)
    lam = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    J = RMatrix.ones(n, m)
    if ck["strong"](A, B) != ck["strong"](A + J * lam, B + J * lam):
        return f"strong verdict changed under adding {lam} J"
    return None


def _p_d_ev(rng, n, m, ck):
    A, B = _strong_pair(rng, n, m)
    v = _int_vector(rng, m)
    shift = RMatrix.outer((ONE,) * n, v)
    J = RMatrix.ones(n, m) * Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    for _ in range(8):
        x = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m))
        base = ck["refute_direction"](A, B, x)
        if base != ck["refute_direction"](A + shift, B + shift, x):
            return f"direction {x} refutes exactly one of (A, B) and (A + e v^T, B + e v^T)"
        if base != ck["refute_direction"](A + J, B + J, x):
            return f"direction {x} refutes exactly one of (A, B) and (A + lam J, B + lam J)"
    return None


def _p_vector_symmetry(rng, n, m, ck):
    b = _int_vector(rng, n, -4, 4)
    roll = rng.random()
    if roll < 0.4:
        a = random_permutation(n, rng).apply(b)
    elif roll < 0.8:
        a = _ds(rng, n) @ b
    else:
        a = _int_vector(rng, n, -4, 4)
    both = ck["vector"](a, b) and ck["vector"](b, a)
    if both != ck["vector_equiv"](a, b):
        return "mutual majorization disagrees with permutation equivalence"
    return None


def _p_sim_strong(rng, n, m, ck):
    B = _int_matrix(rng, n, m, -3, 3)
    roll = rng.random()
    if roll < 0.4:
        A = random_permutation(n, rng).apply_rows(B)
    elif roll < 0.8:
        A = _ds(rng, n) @ B
    else:
        A = _strong_pair(rng, n, m)[0]
    both = ck["strong"](A, B) and ck["strong"](B, A)
    if both != ck["strong_equiv"](A, B):
        return "mutual strong majorization disagrees with A = PB"
    return None


def _p_01_vector(rng, n, m, ck):
    a = tuple(Fraction(rng.randint(0, 1)) for _ in range(n))
    b = tuple(Fraction(rng.randint(0, 1)) for _ in range(n))
    if ck["vector"](a, b) != (vsum(a) == vsum(b)):
        return "(0,1) vector majorization disagrees with equal sums"
    return None


def _zero_one_pair(rng, n, m) -> Tuple[RMatrix, RMatrix]:
    B = _zero_one_matrix(rng, n, m)
    if rng.random() < 0.5:
        return random_permutation(n, rng).apply_rows(B), B
    # same column sums, rows shuffled independently per column
    cols = []
    for c in B.columns:
        c = list(c)
        rng.shuffle(c)
        cols.append(c)
    return RMatrix.from_columns(cols), B


def _p_01_strong(rng, n, m, ck):
    A, B = _zero_one_pair(rng, n, m)
    strong = ck["strong"](A, B)
    perm = ck["strong_equiv"](A, B)
    th = ck["strong"](theta(A), theta(B))
    if not (strong == perm == th):
        return f"(0,1) strong={strong}, permutation={perm}, theta strong={th} disagree"
    return None


def _random_cs_preserver(rng, n, m) -> OperatorGrid:
    P = random_permutation(n, rng)
    R = _int_matrix(rng, m, m, -2, 2)
    S = [_int_matrix(rng, n, m, -2, 2) for _ in range(m)]
    if not R.is_zero():
        # force sum_j S_j = e w^T by fixing the last S_j
        w = _int_vector(rng, m, -2, 2)
        total = S[0]
        for X in S[1:-1]:
            total = total + X
        S[-1] = RMatrix.outer((ONE,) * n, w) - total if m > 1 else RMatrix.outer((ONE,) * n, w)
    return make_cs_form(S, P, R)


def _p_theta_composition(rng, n, m, ck):
    G = _random_cs_preserver(rng, n, m)
    B = _zero_one_matrix(rng, n, m)
    A = random_permutation(n, rng).apply_rows(B)
    if not ck["strong"](G.apply(theta(A)), G.apply(theta(B))):
        return "Phi(theta(A)) is not strongly majorized by Phi(theta(B)) for A = PB"
    return None


def _random_vector_preserver(rng, n) -> VectorOperator:
    if rng.random() < 0.5:
        return make_ando1(_int_vector(rng, n, -3, 3))
    return make_ando2(_nonzero(rng), Fraction(rng.randint(-3, 3)), random_permutation(n, rng))


def _p_vector_01(rng, n, m, ck):
    op = _random_vector_preserver(rng, n)
    b = tuple(Fraction(rng.randint(0, 1)) for _ in range(n))
    a = random_permutation(n, rng).apply(b)
    if not ck["vector"](op.apply(a), op.apply(b)):
        return "a vector majorization preserver broke (0,1) majorization"
    return None


def _random_zero_sum_operator(rng, n) -> VectorOperator:
    lam = Fraction(rng.randint(-3, 3))
    return make_zero_sum(_int_vector(rng, n, -3, 3), lam, random_permutation(n, rng))


def _p_zero_sum_necessary(rng, n, m, ck):
    X = _random_zero_sum_operator(rng, n).matrix
    sums = X.column_sums()
    if len(set(sums)) > 1:
        return "columns of a zero-sum preserver have different sums"
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    i, j = rng.choice(pairs)
    k, l = rng.choice(pairs)
    d1 = vsub(X.col(i), X.col(j))
    d2 = vsub(X.col(k), X.col(l))
    if not ck["vector_equiv"](d1, d2):
        return f"X^({i + 1}) - X^({j + 1}) is not a rearrangement of X^({k + 1}) - X^({l + 1})"
    z = random_zero_sum(n, rng.random())
    if vsum(X @ z) != 0:
        return "a zero-sum preserver mapped a zero-sum vector outside the zero-sum set"
    return None


def _p_condition_zero(rng, n, m, ck):
    X = _random_zero_sum_operator(rng, n)
    if classify_zero_sum_preserver(X) is None:
        return "classifier rejected a constructed zero-sum form"
    a = random_zero_sum(n, rng.random())
    P = random_permutation(n, rng)
    if not ck["vector_equiv"](X.apply(a), X.apply(P.apply(a))):
        return "Xa and XPa are not rearrangements of each other"
    return None


def _p_condition_alpha(rng, n, m, ck):
    X = _random_zero_sum_operator(rng, n).matrix
    if rng.random() < 0.3:
        r, c = rng.randrange(n), rng.randrange(n)
        X = X + RMatrix.outer(basis_vector(n, r), basis_vector(n, c))
    form = classify_zero_sum_preserver(X)
    alpha = check_condition_alpha(X)
    expected = abs(form.lam) if form is not None and form.lam != 0 else None
    if n >= 2 and alpha != expected:
        return f"condition (alpha) gave {alpha} but the zero-sum form gives {expected}"
    return None


def _p_sum_preserves(rng, n, m, ck):
    G = _random_cs_preserver(rng, n, m)
    if not is_cs_preserver(G):
        return "constructed column stochastic preserver was not recognised"
    for k in range(m):
        if classify_vector_preserver(G.row_sum_operator(k)) is None:
            return f"sum of the blocks feeding output column {k + 1} is not a vector preserver"
    return None


def _p_blocks_zero_sum(rng, n, m, ck):
    G = _random_cs_preserver(rng, n, m)
    for i in range(m):
        for j in range(m):
            if classify_zero_sum_preserver(G.blocks[i][j]) is None:
                return f"block ({i + 1},{j + 1}) of a preserver is not of the form v e^T + lam P"
    return None


PROPERTIES: Dict[str, Callable] = {
    "right-inv": _p_right_inv,
    "ev^t": _p_ev,
    "lambda": _p_lambda,
    "AD<BD": _p_ad_bd,
    "+J": _p_plus_j,
    "d:ev^t": _p_d_ev,
    "vector-symmetry": _p_vector_symmetry,
    "sim-strong": _p_sim_strong,
    "01-vector": _p_01_vector,
    "01-strong-theta": _p_01_strong,
    "theta-composition": _p_theta_composition,
    "vector-preservers-01": _p_vector_01,
    "zero-sum-necessary": _p_zero_sum_necessary,
    "condition-0": _p_condition_zero,
    "condition-alpha": _p_condition_alpha,
    "block-sums-preserve": _p_sum_preserves,
    "blocks-zero-sum": _p_blocks_zero_sum,
}


def run_case(name: str, case_seed: str, sizes: Sequence[Tuple[int, int]] = DEFAULT_SIZES,
             checkers: Optional[Dict[str, Callable]] = None) -> Optional[str]:
    """Run one registered property on one seed; returns a failure message or None."""
    if name not in PROPERTIES:
        raise UnsupportedError(f"unknown property {name!r}; known: {sorted(PROPERTIES)}")
    ck = {**_default_checkers(), **(checkers or {})}
    rng = random.Random(case_seed)
    n, m = rng.choice(list(sizes))
    return PROPERTIES[name](rng, n, m, ck)


def lemma_suite(
    seed=0,
    sizes: Sequence[Tuple[int, int]] = DEFAULT_SIZES,
    cases: int = 200,
    checkers: Optional[Dict[str, Callable]] = None,
    only: Optional[Sequence[str]] = None,
) -> SuiteReport:
    """Run every registered property ``cases`` times.

    Case ``i`` of property ``name`` uses the replay seed ``"<seed>:<name>:<i>"``;
    ``checkers`` replaces decision procedures (used to test the harness).
    """
    names = list(only) if only else list(PROPERTIES)
    results = []
    for name in names:
        failures, first, detail = 0, None, None
        for i in range(cases):
            case_seed = f"{seed}:{name}:{i}"
            msg = run_case(name, case_seed, sizes, checkers)
            if msg is not None:
                failures += 1
                if first is None:
                    first, detail = case_seed, msg
        results.append(PropertyResult(name, cases, failures, first, detail))
    return SuiteReport(seed, tuple(results))
