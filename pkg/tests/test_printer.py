import random

from hypothesis import given, settings
from hypothesis import strategies as st

from vnnlib2.parser import parse_query
from vnnlib2.printer import print_arith, print_query
from vnnlib2.syntax import Const, NaryAdd,NarySub, Neg, Var

from conftest import GOLDEN
from genqueries import QueryGen, random_queries


def test_golden_corpus_round_trips():
    for path in sorted(GOLDEN.glob("*.vnnlib")):
        q = parse_query(path.read_text())
        printed = print_query(q)
        assert parse_query(printed) == q, path.name


def test_printer_is_idempotent_on_corpus():
    for path in sorted(GOLDEN.glob("*.vnnlib")):
        once = print_query(parse_query(path.read_text()))
        assert print_query(parse_query(once)) == once, path.name


def test_empty_assert_list_round_trips():
    src = "(vnnlib-version <2.0>)\n(declare-network f " \
          "(declare-input X float32 [1]) (declare-output Y float32 [1]))"
    q = parse_query(src)
    assert q.asserts == ()
    assert parse_query(print_query(q)) == q


def test_expression_printing():
    expr = NarySub(
        items=(
            Const("16777216.0"),
            Neg(operand=Var("X", (0, 1))),
            NaryAdd(items=(Var("U", None), Var("V", ()), Const("-2"))),
        )
    )
    assert print_arith(expr) == "(- 16777216.0 (- X[0,1]) (+ U V[] -2))"


def test_thousand_random_queries_round_trip():
    for i, q in enumerate(random_queries(seed=20260810, count=1000)):
        printed = print_query(q)
        assert parse_query(printed) == q, f"query #{i}"


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_round_trip_property(seed):
    q = QueryGen(random.Random(seed)).query()
    assert parse_query(print_query(q)) == q
