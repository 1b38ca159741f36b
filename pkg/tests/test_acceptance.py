"""Acceptance suite: one test per acceptance criterion, each printing a
PASS line when its assertions hold (run with `pytest -s` to see them).

Expected values follow the oracle-first rule: every nontrivial constant
asserted here is recomputed by an independent oracle inside the test
before being trusted.
"""

import json
import random
import struct
from fractions import Fraction

from vnnlib2 import (
    MINI_THEORY,
    build_environment,
    check_assignment,
    check_models,
    eval_arith,
    eval_query,
    load_model,
    parse_query,
    print_query,
    type_query,
    wrap_theory,
)
from vnnlib2.cli import run as cli_run
from vnnlib2.mini import DTYPES
from vnnlib2.numerics import (
    BINARY16,
    BINARY32,
    BINARY64,
    narrow_to_binary16,
    narrow_to_binary32,
    round_nearest_even,
)

from conftest import GOLDEN, NEGATIVE, run_case
from genqueries import random_queries
from oracle import (
    eval_bool_reference,
    flatten,
    generate_case,
    run_graph_reference,
)

REAL = wrap_theory(MINI_THEORY)


def bits(x: float) -> bytes:
    return struct.pack("<d", x)


def report(name: str):
    print(f"ACCEPTANCE  {name}: PASS")


# -- criterion: golden corpus --------------------------------------------------


def test_golden_corpus(golden_manifest):
    assert len(golden_manifest) >= 10
    for case in golden_manifest:
        result = run_case(case, GOLDEN)
        assert result == {"status": case["expect"]}, case["name"]
    names = {case["name"] for case in golden_manifest}
    # the required corpus members are all present
    assert {"single-network-check", "multi-io-check", "teacher-student-satisfied",
            "equal-pair-check", "isomorphic-pair-check", "hidden-node-satisfied",
            "real-check"} <= names
    report(f"golden corpus ({len(golden_manifest)} cases parse, type-check, "
           "and match their model/verdict expectations)")


# -- criterion: negative typing suite -------------------------------------------


def test_negative_suite(negative_manifest):
    type_cases = [c for c in negative_manifest if c["expect"]["kind"] == "type"]
    assert len(type_cases) >= 12
    for case in negative_manifest:
        result = run_case(case, NEGATIVE)
        assert result["status"] == "error", case["name"]
        assert result["kind"] == case["expect"]["kind"], case["name"]
        if "code" in case["expect"]:
            assert result["code"] == case["expect"]["code"], case["name"]
    codes = {c["expect"]["code"] for c in type_cases}
    assert len(codes) == 18  # one rejection path per error code
    report(f"negative typing suite ({len(type_cases)} cases, "
           f"{len(codes)} distinct codes, all rejected as expected)")


# -- criterion: evaluator oracle equivalence -------------------------------------


def test_evaluator_matches_brute_force_oracle():
    rng = random.Random(0xE7A1)
    agree = 0
    for round_no in range(100):
        raw, query_text, assignment_doc = generate_case(
            rng, "float64", integer_values=False
        )
        doc = json.loads(raw)
        model = load_model(raw)
        query = parse_query(query_text)
        type_query(query, MINI_THEORY)
        check_models(query, {"net": model}, MINI_THEORY)
        assignment = {
            name: MINI_THEORY.tensor_from_json(obj, name)
            for name, obj in assignment_doc.items()
        }
        check_assignment(query, assignment, MINI_THEORY)

        env = build_environment(query.networks, {"net": model}, assignment,
                                MINI_THEORY)
        ref_inputs = []
        for entry, decl in zip(doc["inputs"], query.networks[0].inputs):
            data = assignment_doc[decl.var_name]["data"]
            shape = entry["shape"]
            ref_inputs.append(
                [[float(data[i * shape[1] + j]) for j in range(shape[1])]
                 for i in range(shape[0])]
            )
        ref_env = run_graph_reference(doc, ref_inputs, scalar=float)

        net = query.networks[0]
        pairs = [(d.var_name, doc["inputs"][i]["name"])
                 for i, d in enumerate(net.inputs)]
        pairs += [(h.var_name, h.node_ref) for h in net.hidden]
        pairs += [(d.var_name, ref) for d, ref in zip(net.outputs, doc["outputs"])]
        for var_name, ref_name in pairs:
            mine = env[var_name].values
            theirs = flatten(ref_env[ref_name])
            assert len(mine) == len(theirs)
            for a, b in zip(mine, theirs):
                assert bits(a) == bits(b), (round_no, var_name)

        verdict = eval_query(query, {"net": model}, assignment, MINI_THEORY)
        ref_env_by_var = {v: ref_env[r] for v, r in pairs}
        ref_verdict = all(
            eval_bool_reference(a.expr, ref_env_by_var) for a in query.asserts
        )
        assert verdict.satisfied == ref_verdict, round_no
        agree += 1
    assert agree == 100
    report("evaluator oracle equivalence (100/100 random float64 models: "
           "environments bit-for-bit, verdicts agree)")


# -- criterion: n-ary minus desugaring -------------------------------------------


def test_nary_sub_desugaring():
    # oracle first: exact rationals + round-to-nearest-even at each step
    inner_sum = Fraction(round_nearest_even(Fraction("0.5") + Fraction("0.5"),
                                            BINARY32))
    desugared_exact = round_nearest_even(
        Fraction("16777216.0") - inner_sum, BINARY32
    )
    assert desugared_exact == 16777215.0
    step1 = round_nearest_even(Fraction("16777216.0") - Fraction("0.5"), BINARY32)
    leftfold_exact = round_nearest_even(Fraction(step1) - Fraction("0.5"), BINARY32)
    assert leftfold_exact == 16777216.0

    expr = parse_query(
        "(vnnlib-version <2.0>)\n(declare-network d "
        "(declare-input I float32 [1]) (declare-output O float32 [1]))\n"
        "(assert (>= (- 16777216.0 0.5 0.5) 0.0))"
    ).asserts[0].expr.lhs
    assert eval_arith(expr, {}, MINI_THEORY, "float32") == 16777215.0

    # a deliberately wrong left-fold reference yields the other value,
    # confirming the test can tell the two definitions apart
    f32 = DTYPES["float32"]
    acc = f32.of_decimal("16777216.0")
    for text in ("0.5", "0.5"):
        acc = f32.sub(acc, f32.of_decimal(text))
    assert acc == 16777216.0
    report("n-ary minus desugaring ((- 16777216.0 0.5 0.5) = 16777215.0 at "
           "float32; left fold would give 16777216.0)")


# -- criterion: float/real divergence --------------------------------------------


def test_float_real_divergence(capsys):
    model = str(GOLDEN / "divergence.nn.json")
    float_code = cli_run([
        "eval", str(GOLDEN / "divergence_float.vnnlib"),
        "--network", f"adder={model}",
        "--assignment", str(GOLDEN / "divergence_x.json"),
    ])
    real_code = cli_run([
        "eval", str(GOLDEN / "divergence_real.vnnlib"), "--real",
        "--network", f"adder={model}",
        "--assignment", str(GOLDEN / "divergence_x_real.json"),
    ])
    out = capsys.readouterr().out
    assert float_code == 1 and "VIOLATED" in out
    assert real_code == 0 and "SATISFIED-BY-WITNESS" in out
    with capsys.disabled():
        report("float/real divergence (x + 1e-10 > 1 with x = 1: VIOLATED at "
               "float32, SATISFIED under --real)")


# -- criterion: correct rounding ---------------------------------------------------


def _random_value(rng, narrow, emin, emax):
    kind = rng.random()
    if kind < 0.05:
        return 0.0 if rng.random() < 0.5 else -0.0
    magnitude = rng.uniform(1.0, 2.0) * 2.0 ** rng.randint(emin, emax)
    return narrow(magnitude if rng.random() < 0.5 else -magnitude)


def test_correct_rounding_against_rational_oracle():
    rng = random.Random(0x5EED)
    cases = [
        # float16 production is emulated; its oracle is the exact binary64
        # op (lossless for binary16 operands) narrowed once by struct
        ("float16", BINARY16, narrow_to_binary16, -16, 14,
         lambda exact, a, b, op: narrow_to_binary16(op(a, b))),
        # float32/float64 production uses native IEEE ops; the oracle is
        # exact rational arithmetic + software round-to-nearest-even
        ("float32", BINARY32, narrow_to_binary32, -40, 40,
         lambda exact, a, b, op: round_nearest_even(exact, BINARY32)),
        ("float64", BINARY64, float, -200, 200,
         lambda exact, a, b, op: round_nearest_even(exact, BINARY64)),
    ]
    ops = {
        "+": (lambda d, a, b: d.add(a, b), lambda a, b: a + b,
              lambda fa, fb: fa + fb),
        "-": (lambda d, a, b: d.sub(a, b), lambda a, b: a - b,
              lambda fa, fb: fa - fb),
        "*": (lambda d, a, b: d.mul(a, b), lambda a, b: a * b,
              lambda fa, fb: fa * fb),
    }
    for name, fmt, narrow, emin, emax, oracle in cases:
        dtype = DTYPES[name]
        for op_name, (produce, native, exact_op) in ops.items():
            for i in range(10_000):
                a = _random_value(rng, narrow, emin, emax)
                b = _random_value(rng, narrow, emin, emax)
                got = produce(dtype, a, b)
                exact = exact_op(Fraction(a), Fraction(b))
                want = oracle(exact, a, b, native)
                if exact == 0:
                    # zero results compare equal regardless of sign; the
                    # IEEE sign rules get their own unit tests
                    assert got == want == 0.0, (name, op_name, a, b)
                else:
                    assert bits(got) == bits(want), (name, op_name, a, b, i)
    report("correct rounding (10,000 random pairs x 3 ops x 3 float dtypes, "
           "bit-for-bit against the exact-rational oracle)")


# -- criterion: parser round trip ---------------------------------------------------


def test_parser_round_trip_1000():
    queries = random_queries(seed=0xACCE97, count=1000)
    for i, q in enumerate(queries):
        assert parse_query(print_query(q)) == q, f"query #{i}"
    report("parser round trip (1000 generated queries, parse . print = id)")


# -- criterion: integer exactness regime ---------------------------------------------


def test_exactness_regime_across_theories():
    rng = random.Random(0x1A7E6E5)
    for round_no in range(50):
        raw32, query32, assign32 = generate_case(rng, "float32",
                                                 integer_values=True)
        raw64 = raw32.replace(b"float32", b"float64")
        model32, model64 = load_model(raw32), load_model(raw64)
        q32 = parse_query(query32)
        q64 = parse_query(query32.replace("float32", "float64"))
        qreal = parse_query(query32.replace("float32", "real"))
        for q, theory in ((q32, MINI_THEORY), (q64, MINI_THEORY), (qreal, REAL)):
            type_query(q, theory)

        def tensors(dtype, theory):
            return {
                name: theory.tensor_from_json({**obj, "dtype": dtype}, name)
                for name, obj in assign32.items()
            }

        env32 = build_environment(q32.networks, {"net": model32},
                                  tensors("float32", MINI_THEORY), MINI_THEORY)
        env64 = build_environment(q64.networks, {"net": model64},
                                  tensors("float64", MINI_THEORY), MINI_THEORY)
        env_real = build_environment(qreal.networks, {"net": model32},
                                     tensors("real", REAL), REAL)
        for var, exact_tensor in env_real.items():
            for v32, v64, exact in zip(env32[var].values, env64[var].values,
                                       exact_tensor.values):
                assert exact.denominator == 1 and abs(exact) < 2**24, round_no
                # the two float theories agree bit for bit (including zero
                # signs); the rationals have a single zero, so they are
                # compared by value
                assert bits(v32) == bits(v64), (round_no, var)
                assert v32 == float(exact) and v64 == float(exact), (round_no, var)
    report("integer exactness regime (50 random integer-weight models: "
           "float32 = float64 = exact rationals, elementwise)")
