"""Command-line front end: generate, reduce, evaluate, verify, export.

Exit codes: 0 pass/success, 1 verification failure, 2 budget exceeded
(skip), 3 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize
from .geometry import EnumerationBudgetError, GeometryError, HPolytope
from .gsa import GsaInstance, OracleBudgetError, gsa_count, gsa_decide
from .oracle import (
    eval_q3sat,
    eval_sentence,
    eval_two_quantifier,
    project_count,
    project_count_union,
)
from .reductions import (
    Literal,
    Q3SatInstance,
    QuantSentence,
    complement_to_simplices,
    count_gsa_to_projection,
    gsa_to_three_quantifiers,
    gsa_to_two_quantifiers,
    q3sat_to_sentence,
)

PASS, FAIL, SKIP, USAGE = 0, 1, 2, 3

REDUCE_TARGETS = ("eae", "qsat", "proj", "simplices", "two-quant")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="quantip")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a seeded instance file")
    gen.add_argument("kind", choices=("gsa", "q3sat"))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--d", type=int, default=2, help="gsa: number of targets")
    gen.add_argument("--N", type=int, default=10, help="gsa: search bound")
    gen.add_argument("--den", type=int, default=8, help="gsa: max denominator")
    gen.add_argument("--eps", default=None, help="gsa: tolerance as p/q")
    gen.add_argument("--k", type=int, default=1, help="q3sat: quantifier blocks")
    gen.add_argument("--ell", type=int, default=2, help="q3sat: variables per block")
    gen.add_argument("--clauses", type=int, default=3, help="q3sat: clause count")

    reduce_p = sub.add_parser("reduce", help="compile an instance")
    reduce_p.add_argument("--target", choices=REDUCE_TARGETS, required=True)
    reduce_p.add_argument("--in", dest="infile", required=True)
    reduce_p.add_argument("--out", required=True)

    decide = sub.add_parser("decide", help="brute-force decision")
    decide.add_argument("--in", dest="infile", required=True)

    count = sub.add_parser("count", help="brute-force count")
    count.add_argument("--in", dest="infile", required=True)

    verify = sub.add_parser("verify", help="reduce and compare both oracles")
    verify.add_argument("--target", choices=REDUCE_TARGETS)
    verify.add_argument("--in", dest="infile")
    verify.add_argument("--sweep", choices=("small",))
    verify.add_argument("--budget", type=int, default=10**8)

    export = sub.add_parser("export", help="rewrite a sentence file")
    export.add_argument("--format", choices=("native-json", "smtlib2-lia"), required=True)
    export.add_argument("--in", dest="infile", required=True)
    export.add_argument("--out", required=True)

    return parser


def _load(path):
    return serialize.from_json(serialize.loads(Path(path).read_text()))


def _write(path, payload: dict):
    Path(path).write_text(serialize.dumps(payload))


def _gen_gsa(args) -> dict:
    rng = random.Random(args.seed)
    if args.d < 1 or args.N < 1 or args.den < 2:
        raise _UsageError("gen gsa requires d >= 1, N >= 1, den >= 2")
    alpha = []
    for _ in range(args.d):
        den = rng.randrange(2, args.den + 1)
        num = rng.randrange(1, den)
        alpha.append(Fraction(num, den))
    if args.eps is not None:
        eps = Fraction(args.eps)
    else:
        den = rng.randrange(3, max(4, args.den + 1))
        eps = Fraction(rng.randrange(1, (den + 1) // 2), den)
    inst = GsaInstance(tuple(alpha), args.N, eps)
    return serialize.gsa_to_json(inst)


def _gen_q3sat(args) -> dict:
    rng = random.Random(args.seed)
    if args.k < 1 or args.ell < 1 or args.clauses < 1:
        raise _UsageError("gen q3sat requires k, ell, clauses >= 1")
    prefix = tuple(
        "exists" if (args.k - j) % 2 == 0 else "forall" for j in range(1, args.k + 1)
    )
    clauses = []
    for _ in range(args.clauses):
        clauses.append(tuple(
            Literal(rng.randrange(1, args.k + 1), rng.randrange(1, args.ell + 1),
                    rng.random() < 0.5)
            for _ in range(3)
        ))
    inst = Q3SatInstance(args.k, args.ell, prefix, tuple(clauses))
    return serialize.q3sat_to_json(inst)


def _padded(inst: GsaInstance) -> GsaInstance:
    """Duplicate a lone target so the staircase has two chain points."""
    if inst.d >= 2:
        return inst
    return GsaInstance(inst.alpha * 2, inst.N, inst.eps)


def _gadget_provenance(inst: GsaInstance, with_spacing: bool) -> dict:
    from .reductions import _ceil_height, _spacings

    out = {
        "d": serialize.int_to_json(inst.d),
        "fold_width": serialize.int_to_json(2),
        "T": serialize.frac_to_json(1 + inst.N * max(inst.alpha)),
    }
    if with_spacing:
        out["m"] = [serialize.int_to_json(m) for m in _spacings(inst)]
        out["ceil_T"] = serialize.int_to_json(_ceil_height(inst))
    return out


def _reduce(target: str, instance):
    if target == "eae":
        if not isinstance(instance, GsaInstance):
            raise _UsageError("target eae expects a gsa instance")
        inst = _padded(instance)
        payload = serialize.sentence_to_json(gsa_to_three_quantifiers(inst))
        payload["provenance"] = {
            "target": target,
            "instance": serialize.gsa_to_json(instance),
            "gadget": _gadget_provenance(inst, with_spacing=False),
        }
        return payload
    if target == "qsat":
        if not isinstance(instance, Q3SatInstance):
            raise _UsageError("target qsat expects a q3sat instance")
        payload = serialize.sentence_to_json(q3sat_to_sentence(instance))
        payload["provenance"] = {
            "target": target,
            "instance": serialize.q3sat_to_json(instance),
            "gadget": {
                "d": serialize.int_to_json(max(2, len(instance.clauses))),
                "fold_width": serialize.int_to_json(2),
            },
        }
        return payload
    if target == "proj":
        if not isinstance(instance, GsaInstance):
            raise _UsageError("target proj expects a gsa instance")
        payload = serialize.projection_to_json(count_gsa_to_projection(instance))
        payload["provenance"] = {
            "target": target,
            "instance": serialize.gsa_to_json(instance),
            "gadget": _gadget_provenance(instance, with_spacing=True),
        }
        return payload
    if target == "simplices":
        if not isinstance(instance, GsaInstance):
            raise _UsageError("target simplices expects a gsa instance")
        proj = count_gsa_to_projection(instance)
        payload = serialize.simplices_to_json(
            complement_to_simplices(proj.inner, proj.outer)
        )
        payload["provenance"] = {
            "target": target,
            "instance": serialize.gsa_to_json(instance),
            "gadget": _gadget_provenance(instance, with_spacing=True),
        }
        return payload
    if target == "two-quant":
        if not isinstance(instance, GsaInstance):
            raise _UsageError("target two-quant expects a gsa instance")
        inst = _padded(instance)
        payload = serialize.two_quant_to_json(gsa_to_two_quantifiers(inst))
        payload["provenance"] = {
            "target": target,
            "instance": serialize.gsa_to_json(instance),
            "gadget": _gadget_provenance(inst, with_spacing=False),
        }
        return payload
    raise _UsageError(f"unknown target {target}")


def _verify_one(target: str, instance, budget: int) -> int:
    if target == "eae":
        inst = _padded(instance)
        sentence = gsa_to_three_quantifiers(inst)
        got = eval_sentence(sentence, budget=budget)
        want = gsa_decide(instance)
        print(f"eae: sentence={got} decide={want}")
        return PASS if got == want else FAIL
    if target == "qsat":
        sentence = q3sat_to_sentence(instance)
        got = eval_sentence(sentence, budget=budget)
        want = eval_q3sat(instance)
        print(f"qsat: sentence={got} direct={want}")
        return PASS if got == want else FAIL
    if target == "proj":
        proj = count_gsa_to_projection(instance)
        got = instance.N - project_count(proj.outer, proj.inner)
        want = gsa_count(instance)
        print(f"proj: N-projcount={got} count={want}")
        return PASS if got == want else FAIL
    if target == "simplices":
        proj = count_gsa_to_projection(instance)
        simplices = complement_to_simplices(proj.inner, proj.outer)
        got = project_count_union(simplices)
        want = project_count(proj.outer, proj.inner)
        print(f"simplices: union={got} direct={want}")
        return PASS if got == want else FAIL
    if target == "two-quant":
        inst = _padded(instance)
        form = gsa_to_two_quantifiers(inst)
        got = eval_two_quantifier(form, budget=budget)
        want = gsa_decide(instance)
        print(f"two-quant: sentence={got} decide={want}")
        return PASS if got == want else FAIL
    raise _UsageError(f"unknown target {target}")


def _verify_sweep(budget: int) -> int:
    fracs = (Fraction(1, 2), Fraction(1, 3), Fraction(3, 4))
    passed = trials = 0
    for a1 in fracs:
        for a2 in fracs:
            for eps in (Fraction(1, 4), Fraction(1, 3)):
                inst = GsaInstance((a1, a2), 4, eps)
                trials += 1
                ok = (
                    _verify_one("eae", inst, budget) == PASS
                    and _verify_one("proj", inst, budget) == PASS
                    and _verify_one("two-quant", inst, budget) == PASS
                )
                passed += ok
    print(f"sweep: {passed}/{trials} instances passed all targets")
    return PASS if passed == trials else FAIL


def _smt_int(value: int) -> str:
    return str(value) if value >= 0 else f"(- {-value})"


def _smt_rows(constraint: HPolytope, names) -> str:
    rows = []
    for row in constraint.rows:
        terms = [
            f"(* {_smt_int(c)} {names[i]})"
            for i, c in enumerate(row.coeffs)
            if c != 0
        ]
        if not terms:
            lhs = "0"
        elif len(terms) == 1:
            lhs = terms[0]
        else:
            lhs = f"(+ {' '.join(terms)})"
        rows.append(f"(<= {lhs} {_smt_int(row.rhs)})")
    if not rows:
        return "true"
    if len(rows) == 1:
        return rows[0]
    return f"(and {' '.join(rows)})"


def _smt_sentence(sentence: QuantSentence) -> str:
    if not isinstance(sentence.constraint, HPolytope):
        raise _UsageError("vertex-form constraints have no smtlib2 rendering")
    names = [f"v{i}" for i in range(sentence.constraint.dim)]
    offset = sentence.constraint.dim
    body = _smt_rows(sentence.constraint, names)
    for block in reversed(sentence.blocks):
        offset -= block.dim
        decls = " ".join(f"({names[offset + j]} Int)" for j in range(block.dim))
        if block.box is None:
            body = f"(exists ({decls}) {body})"
            continue
        bounds = []
        for j in range(block.dim):
            bounds.append(f"(<= {_smt_int(block.box.lo[j])} {names[offset + j]})")
            bounds.append(f"(<= {names[offset + j]} {_smt_int(block.box.hi[j])})")
        guard = f"(and {' '.join(bounds)})"
        if block.quantifier == "exists":
            body = f"(exists ({decls}) (and {guard} {body}))"
        else:
            body = f"(forall ({decls}) (=> {guard} {body}))"
    return f"(set-logic LIA)\n(assert {body})\n(check-sat)\n"


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return USAGE

    try:
        if args.command == "gen":
            payload = _gen_gsa(args) if args.kind == "gsa" else _gen_q3sat(args)
            _write(args.out, payload)
            print(f"wrote {args.out}")
            return PASS
        if args.command == "reduce":
            payload = _reduce(args.target, _load(args.infile))
            _write(args.out, payload)
            print(f"wrote {args.out}")
            return PASS
        if args.command == "decide":
            instance = _load(args.infile)
            if isinstance(instance, GsaInstance):
                print("true" if gsa_decide(instance) else "false")
            elif isinstance(instance, Q3SatInstance):
                print("true" if eval_q3sat(instance) else "false")
            elif isinstance(instance, QuantSentence):
                print("true" if eval_sentence(instance) else "false")
            else:
                raise _UsageError("decide expects a gsa, q3sat, or sentence file")
            return PASS
        if args.command == "count":
            instance = _load(args.infile)
            if not isinstance(instance, GsaInstance):
                raise _UsageError("count expects a gsa instance file")
            print(gsa_count(instance))
            return PASS
        if args.command == "verify":
            if args.sweep:
                return _verify_sweep(args.budget)
            if not args.target or not args.infile:
                raise _UsageError("verify needs --target and --in (or --sweep)")
            code = _verify_one(args.target, _load(args.infile), args.budget)
            print("PASS" if code == PASS else "FAIL")
            return code
        if args.command == "export":
            instance = _load(args.infile)
            if not isinstance(instance, QuantSentence):
                raise _UsageError("export expects a sentence file")
            if args.format == "native-json":
                _write(args.out, serialize.sentence_to_json(instance))
            else:
                Path(args.out).write_text(_smt_sentence(instance))
            print(f"wrote {args.out}")
            return PASS
        raise _UsageError(f"unknown command {args.command}")
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return USAGE
    except (EnumerationBudgetError, OracleBudgetError) as err:
        print(f"SKIP: {err}")
        return SKIP
    except (GeometryError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    raise SystemExit(main())
