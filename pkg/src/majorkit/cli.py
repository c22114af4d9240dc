"""``majorkit`` command line.

Exit codes: 0 when the relation holds, the classification succeeds or the
suite passes; 1 when it fails, nothing is found, or a counterexample turns
up; 2 on usage or input errors (reported on stderr as JSON).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import List, Optional, Sequence

from . import birkhoff, matrix, preservers, propcheck, reductions, vector
from .errors import MajorkitError, ShapeError
from .exact import to_fraction
from .serialize import (
    SCHEMA,
    load_matrix,
    load_operator,
    load_vector,
    payload_to_csv,
    to_jsonable,
)

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would print plain text and exit 2
        raise UsageError(message)


def _emit(args, payload: dict) -> None:
    body = {"schema": SCHEMA, "command": args.command, **payload}
    encoded = to_jsonable(body)
    if getattr(args, "format", "json") == "csv":
        sys.stdout.write(payload_to_csv(encoded))
    else:
        sys.stdout.write(json.dumps(encoded, indent=2) + "\n")


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"schema": SCHEMA, "error": kind, "message": message}) + "\n")
    return EXIT_USAGE


def _form_payload(form) -> dict:
    if form is None:
        return {"form": None}
    fields = {f.name: getattr(form, f.name) for f in dataclasses.fields(form) if f.name != "alternate"}
    out = {"form": type(form).__name__, **fields}
    alt = getattr(form, "alternate", None)
    if alt is not None:
        out["alternate"] = {f.name: getattr(alt, f.name) for f in dataclasses.fields(alt) if f.name != "alternate"}
    return out


def _verdict_payload(v: matrix.MajorizationVerdict) -> dict:
    out = {"relation": v.relation, "verdict": v.status}
    for key in ("witness", "reason", "direction", "trials", "certificate"):
        value = getattr(v, key)
        if value is not None:
            out[key] = value
    return out


# ----------------------------------------------------------------- commands


def cmd_check(args) -> int:
    kind = args.kind
    if kind == "vector":
        a, b = load_vector(args.A), load_vector(args.B)
        holds = vector.check_vector_majorization(a, b)
        _emit(args, {"relation": "vector", "verdict": matrix.HOLDS if holds else matrix.FAILS})
        return EXIT_OK if holds else EXIT_NO
    if kind == "vector-equiv":
        P = vector.check_vector_equiv(load_vector(args.A), load_vector(args.B))
        _emit(args, {"relation": "vector-equiv", "verdict": matrix.HOLDS if P else matrix.FAILS, "permutation": P})
        return EXIT_OK if P else EXIT_NO
    A, B = load_matrix(args.A), load_matrix(args.B)
    if kind == "equiv":
        P = matrix.check_strong_equiv(A, B)
        _emit(args, {"relation": "strong-equiv", "verdict": matrix.HOLDS if P else matrix.FAILS, "permutation": P})
        return EXIT_OK if P else EXIT_NO
    if kind == "strong":
        v = matrix.check_strong(A, B, method=args.method)
    elif kind == "weak":
        v = matrix.check_weak(A, B)
    else:
        v = matrix.check_directional(A, B, budget=args.budget, seed=args.seed)
    _emit(args, _verdict_payload(v))
    return EXIT_OK if v.holds else EXIT_NO


def cmd_witness(args) -> int:
    if args.kind == "vector":
        a, b = load_vector(args.A), load_vector(args.B)
        if not vector.check_vector_majorization(a, b):
            _emit(args, {"relation": "vector", "verdict": matrix.FAILS, "witness": None})
            return EXIT_NO
        chain = vector.hlp_chain(a, b)
        steps = [{"i": T.i + 1, "j": T.j + 1, "t": T.t} for T in chain.chain]
        _emit(args, {"relation": "vector", "verdict": matrix.HOLDS, "witness": chain.matrix(), "t_transforms": steps})
        return EXIT_OK
    A, B = load_matrix(args.A), load_matrix(args.B)
    v = matrix.check_strong(A, B) if args.kind == "strong" else matrix.check_weak(A, B)
    _emit(args, {"relation": v.relation, "verdict": v.status, "witness": v.witness})
    return EXIT_OK if v.holds else EXIT_NO


def cmd_reduce(args) -> int:
    A, B = load_matrix(args.A), load_matrix(args.B)
    lam = to_fraction(args.lam) if args.lam is not None else None
    if args.method == "shift":
        mu = to_fraction(args.mu) if args.mu is not None else None
        A2, B2, cert = reductions.reduce_shift_normalize(A, B, lam=lam, mu=mu, anchor=args.anchor)
        certificate = {"method": cert.method, "lambda": cert.lam, "mu": cert.mu, "v": cert.v, "anchor": cert.anchor}
    else:
        if args.mu is not None:
            raise UsageError("--mu only applies to --method shift")
        A2, B2, cert = reductions.reduce_diag_scale(A, B, lam=lam, anchor=args.anchor)
        certificate = {"method": cert.method, "lambda": cert.lam, "D": cert.D, "anchor": cert.anchor}
    _emit(args, {"A": A2, "B": B2, "certificate": certificate})
    return EXIT_OK


def cmd_theta(args) -> int:
    _emit(args, {"theta": reductions.theta(load_matrix(args.A))})
    return EXIT_OK


def cmd_birkhoff(args) -> int:
    dec = birkhoff.birkhoff_decompose(load_matrix(args.D))
    terms = [{"weight": w, "permutation": P, "matrix": P.to_matrix()} for w, P in dec.terms]
    _emit(args, {"terms": terms, "count": len(terms)})
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "ds":
        out = birkhoff.random_doubly_stochastic(args.n, args.k, args.seed)
    elif args.kind == "cs":
        out = birkhoff.random_column_stochastic(args.n, args.m, args.seed)
    elif args.kind == "zerosum":
        out = birkhoff.random_zero_sum(args.n, args.seed)
    else:
        out = birkhoff.random_distribution(args.n, args.seed)
    _emit(args, {"kind": args.kind, "seed": args.seed, "value": out})
    return EXIT_OK


def cmd_classify(args) -> int:
    op = load_operator(args.op)
    target = args.target
    if target in ("vector", "prob", "zerosum"):
        if not isinstance(op, preservers.VectorOperator):
            raise ShapeError(f"--target {target} needs a vector operator ({{\"vecop\": ...}})")
        fn = {
            "vector": preservers.classify_vector_preserver,
            "prob": preservers.classify_prob_preserver,
            "zerosum": preservers.classify_zero_sum_preserver,
        }[target]
        form = fn(op)
        payload = _form_payload(form)
        if target == "zerosum":
            payload["alpha"] = preservers.check_condition_alpha(op)
        ok = form is not None
    else:
        if not isinstance(op, preservers.OperatorGrid):
            raise ShapeError(f"--target {target} needs a block operator ({{\"n\", \"m\", \"blocks\"}})")
        if target == "strong":
            form = preservers.classify_strong_preserver(op)
            ok = form is not None
        else:
            form = preservers.extract_cs_preserver_form(op)
            ok = form is not None and form.constraint_ok
        payload = _form_payload(form)
    payload["target"] = target
    payload["verified"] = form is not None and _reconstructs(form, op)
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_NO


def _reconstructs(form, op) -> bool:
    built = form.operator()
    if isinstance(op, preservers.VectorOperator):
        return built.matrix == op.matrix
    return preservers.grid_equal_on_basis(built, op)


def cmd_fuzz(args) -> int:
    op = load_operator(args.op)
    spec = propcheck.RelationSpec(args.relation, args.domain)
    rep = propcheck.fuzz_report(op, spec, trials=args.trials, seed=args.seed)
    cx = rep.counterexample
    payload = {
        "relation": spec.relation,
        "domain": spec.domain,
        "battery_size": rep.battery_size,
        "battery_tried": rep.battery_tried,
        "random_tried": rep.random_tried,
        "counterexample": None,
    }
    if cx is not None:
        payload["counterexample"] = {
            "A": cx.A,
            "B": cx.B,
            "image_A": cx.image_A,
            "image_B": cx.image_B,
            "source": cx.source,
            "replay_seed": cx.replay_seed,
            "transcript": list(cx.transcript),
            "verified": cx.verify(op),
        }
    _emit(args, payload)
    return EXIT_NO if cx is not None else EXIT_OK


def _parse_sizes(text: str):
    sizes = []
    for part in text.split(","):
        try:
            n, m = part.lower().split("x")
            sizes.append((int(n), int(m)))
        except ValueError:
            raise UsageError(f"bad size {part!r}; use NxM, e.g. 3x2") from None
        if sizes[-1][0] < 1 or sizes[-1][1] < 1:
            raise UsageError(f"bad size {part!r}; dimensions must be positive")
    return sizes


def cmd_suite(args) -> int:
    sizes = _parse_sizes(args.sizes) if args.sizes else propcheck.DEFAULT_SIZES
    only = args.only.split(",") if args.only else None
    rep = propcheck.lemma_suite(seed=args.seed, sizes=sizes, cases=args.cases, only=only)
    results = [
        {
            "property": r.name,
            "cases": r.cases,
            "failures": r.failures,
            "passed": r.passed,
            "replay_seed": r.first_failure_seed,
            "detail": r.detail,
        }
        for r in rep.results
    ]
    _emit(args, {"seed": args.seed, "passed": rep.passed, "results": results})
    return EXIT_OK if rep.passed else EXIT_NO


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="majorkit", description="Exact matrix majorization toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--format", choices=("json", "csv"), default="json", help="output encoding")
        return sp

    sp = add("check", "decide a majorization relation between two inputs")
    sp.add_argument("--kind", required=True,
                    choices=("vector", "vector-equiv", "strong", "weak", "directional", "equiv"))
    sp.add_argument("-A", required=True, help="path to A (JSON or CSV, '-' for stdin)")
    sp.add_argument("-B", required=True, help="path to B")
    sp.add_argument("--method", choices=("auto", "lp"), default="auto", help="strong: solver route")
    sp.add_argument("--budget", type=int, default=200, help="directional: random directions to try")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check)

    sp = add("witness", "emit a witness matrix for A majorized by B")
    sp.add_argument("--kind", required=True, choices=("vector", "strong", "weak"))
    sp.add_argument("-A", required=True)
    sp.add_argument("-B", required=True)
    sp.set_defaults(func=cmd_witness)

    sp = add("reduce", "reduce (A, B) to a column stochastic instance")
    sp.add_argument("--method", required=True, choices=("shift", "diag"))
    sp.add_argument("--lambda", dest="lam", help="pinned shift (p/q)")
    sp.add_argument("--mu", help="pinned scale (p/q), shift method only")
    sp.add_argument("--anchor", choices=("A", "B"), default="B", help="matrix made column stochastic")
    sp.add_argument("-A", required=True)
    sp.add_argument("-B", required=True)
    sp.set_defaults(func=cmd_reduce)

    sp = add("theta", "normalize columns to unit sums (zero columns become e/n)")
    sp.add_argument("-A", required=True)
    sp.set_defaults(func=cmd_theta)

    sp = add("birkhoff", "decompose a doubly stochastic matrix into permutations")
    sp.add_argument("-D", required=True)
    sp.set_defaults(func=cmd_birkhoff)

    sp = add("gen", "generate a seeded random stochastic object")
    sp.add_argument("--kind", required=True, choices=("ds", "cs", "zerosum", "dist"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=1, help="columns (cs)")
    sp.add_argument("--k", type=int, default=3, help="permutation terms (ds)")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_gen)

    sp = add("classify", "match an operator against the characterized preserver forms")
    sp.add_argument("--target", required=True, choices=("vector", "prob", "zerosum", "strong", "cs"))
    sp.add_argument("--op", required=True, help="operator JSON")
    sp.set_defaults(func=cmd_classify)

    sp = add("fuzz", "search for a counterexample to an operator preserving a relation")
    sp.add_argument("--op", required=True)
    sp.add_argument("--relation", required=True, choices=propcheck.RELATIONS)
    sp.add_argument("--domain", default="all",
                    help="all | distributions | zero-sum | column-stochastic (cs) | zero-one")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_fuzz)

    sp = add("suite", "run the registered invariance properties")
    sp.add_argument("--sizes", help="comma separated NxM list, e.g. 2x1,3x2")
    sp.add_argument("--cases", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--only", help="comma separated property names")
    sp.set_defaults(func=cmd_suite)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc))
    except MajorkitError as exc:
        return _fail(type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail("io", str(exc))


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
