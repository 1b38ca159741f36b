"""Witness evaluation: build the environment mapping every declared
variable to a concrete tensor, then evaluate assertions by delegating the
scalar work to the theory.

Evaluating a query against one input assignment checks a single witness
of the query's existential semantics; it does not decide satisfiability.
`search_witness` is a best-effort sampler on top of it and an exhausted
search proves nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import MathTensor, element_count, flat_index
from .syntax import (
    And,
    Cmp,
    CmpOp,
    Const,
    NaryAdd,
    NaryMul,
    NarySub,
    Neg,
    Or,
    Query,
    Span,
    Var,
)
from .theory import NetworkTheory
from .typecheck import TypingContext, build_context, type_joint


@dataclass(frozen=True)
class Verdict:
    """Per-assertion truth values; satisfied iff all assertions hold."""

    satisfied: bool
    per_assertion: tuple[tuple[Span, bool], ...]


def build_environment(
    networks, models: dict, assignment: dict, theory: NetworkTheory
) -> dict[str, MathTensor]:
    """Map every declared variable to its value.

    Inputs take the assigned tensor's denotation; hidden and output
    variables take the model's value at the referenced node output, with
    outputs paired positionally with the model's final outputs.
    """
    env: dict[str, MathTensor] = {}
    for decl in networks:
        model = models[decl.name]
        inputs = [theory.sem_tensor(assignment[d.var_name]) for d in decl.inputs]
        for d, tensor in zip(decl.inputs, inputs):
            env[d.var_name] = tensor
        for h in decl.hidden:
            env[h.var_name] = theory.sem_model(model, inputs, h.node_ref)
        refs = theory.network_outputs(model)
        for d, ref in zip(decl.outputs, refs):
            env[d.var_name] = theory.sem_model(model, inputs, ref)
    return env


def eval_arith(expr, env: dict, theory: NetworkTheory, element_type: str):
    """Value of an arithmetic expression, a zero-dimensional tensor.

    The n-ary minus is exactly `e1 + (-(e2 + ... + en))`: the subtrahends
    are summed first, then negated, then added once.  This is observable
    in floats and is not the same as a left fold of binary subtraction.
    """
    if isinstance(expr, Const):
        return theory.scalar_of_literal(expr.text, element_type)
    if isinstance(expr, Var):
        tensor = env[expr.name]
        indices = expr.indices if expr.indices is not None else ()
        return tensor.values[flat_index(tensor.shape, indices)]
    if isinstance(expr, Neg):
        return theory.neg(element_type, eval_arith(expr.operand, env, theory, element_type))
    if isinstance(expr, (NaryAdd, NaryMul)):
        op = theory.add if isinstance(expr, NaryAdd) else theory.mul
        values = [eval_arith(item, env, theory, element_type) for item in expr.items]
        acc = values[0]
        for value in values[1:]:
            acc = op(element_type, acc, value)
        return acc
    if isinstance(expr, NarySub):
        values = [eval_arith(item, env, theory, element_type) for item in expr.items]
        rest = values[1]
        for value in values[2:]:
            rest = theory.add(element_type, rest, value)
        return theory.add(element_type, values[0], theory.neg(element_type, rest))
    raise TypeError(f"not an arithmetic expression: {expr!r}")


def eval_bool(expr, env: dict, theory: NetworkTheory, ctx: TypingContext) -> bool:
    if isinstance(expr, (And, Or)):
        results = [eval_bool(item, env, theory, ctx) for item in expr.items]
        return all(results) if isinstance(expr, And) else any(results)
    if isinstance(expr, Cmp):
        element_type = type_joint(ctx, [expr.lhs, expr.rhs], theory, expr.span)
        lhs = eval_arith(expr.lhs, env, theory, element_type)
        rhs = eval_arith(expr.rhs, env, theory, element_type)
        return theory.compare(expr.op.value, element_type, lhs, rhs)
    raise TypeError(f"not a boolean expression: {expr!r}")


def eval_query(
    query: Query, models: dict, assignment: dict, theory: NetworkTheory
) -> Verdict:
    """Evaluate every assertion under the environment; an empty assertion
    list is the empty conjunction and is always satisfied.

    Precondition: the query, models and assignment passed all typing
    judgements for this theory.
    """
    ctx = build_context(query.networks, theory)
    env = build_environment(query.networks, models, assignment, theory)
    per = tuple(
        (a.span, eval_bool(a.expr, env, theory, ctx)) for a in query.asserts
    )
    return Verdict(satisfied=all(holds for _, holds in per), per_assertion=per)


# -- best-effort witness search -------------------------------------------------


def _harvest_bounds(query: Query, ctx: TypingContext, theory: NetworkTheory):
    """Per-element lower/upper corner values from simple bound assertions
    of the shapes `(op var const)` / `(op const var)`, looked for at the
    top level and under `and`."""
    lows: dict[tuple[str, tuple[int, ...]], object] = {}
    highs: dict[tuple[str, tuple[int, ...]], object] = {}

    def record(var: Var, op: CmpOp, const: Const, var_on_left: bool):
        info = ctx.variables.get(var.name)
        if info is None or info.role != "input":
            return
        indices = var.indices if var.indices is not None else ()
        if len(indices) != len(info.shape):
            return
        value = theory.scalar_of_literal(const.text, info.element_type)
        key = (var.name, tuple(indices))
        # orient the comparison so it reads `var <op> const`
        if not var_on_left:
            op = {
                CmpOp.LT: CmpOp.GT,
                CmpOp.LE: CmpOp.GE,
                CmpOp.GT: CmpOp.LT,
                CmpOp.GE: CmpOp.LE,
            }.get(op, op)
        if op in (CmpOp.GE, CmpOp.GT, CmpOp.EQ):
            if key not in lows or theory.compare(">", info.element_type, value, lows[key]):
                lows[key] = value
        if op in (CmpOp.LE, CmpOp.LT, CmpOp.EQ):
            if key not in highs or theory.compare("<", info.element_type, value, highs[key]):
                highs[key] = value

    def walk(expr):
        if isinstance(expr, And):
            for item in expr.items:
                walk(item)
        elif isinstance(expr, Cmp):
            if isinstance(expr.lhs, Var) and isinstance(expr.rhs, Const):
                record(expr.lhs, expr.op, expr.rhs, var_on_left=True)
            elif isinstance(expr.lhs, Const) and isinstance(expr.rhs, Var):
                record(expr.rhs, expr.op, expr.lhs, var_on_left=False)

    for assertion in query.asserts:
        walk(assertion.expr)
    return lows, highs


def search_witness(
    query: Query,
    models: dict,
    theory: NetworkTheory,
    samples: int = 256,
    seed: int = 0,
):
    """Look for an input assignment satisfying every assertion.

    Deterministic for a given seed: a few corner-point assignments built
    from harvested bounds come first, then uniform random fill, and the
    first satisfying assignment (lowest sample index) wins.  Returns the
    assignment map, or None once the budget is exhausted — which is NOT
    an unsatisfiability proof.
    """
    ctx = build_context(query.networks, theory)
    lows, highs = _harvest_bounds(query, ctx, theory)
    rng = random.Random(seed)

    input_decls = [(n, d) for n in query.networks for d in n.inputs]

    def zero(element_type: str):
        return theory.scalar_of_literal("0", element_type)

    def assignment_with(pick) -> dict:
        out = {}
        for _, d in input_decls:
            values = []
            for flat in range(element_count(d.shape)):
                key = (d.var_name, _unflatten(flat, d.shape))
                values.append(pick(d.element_type, key))
            out[d.var_name] = theory.tensor_of_values(
                d.element_type, d.shape, tuple(values)
            )
        return out

    def corner(prefer: dict, fallback: dict):
        def pick(element_type, key):
            if key in prefer:
                return prefer[key]
            if key in fallback:
                return fallback[key]
            return zero(element_type)

        return pick

    def random_pick(element_type, key):
        return theory.random_scalar(
            element_type, rng, lows.get(key), highs.get(key)
        )

    structured = [
        corner(lows, highs),
        corner(highs, lows),
        lambda element_type, key: zero(element_type),
    ]
    for index in range(samples):
        pick = structured[index] if index < len(structured) else random_pick
        candidate = assignment_with(pick)
        if eval_query(query, models, candidate, theory).satisfied:
            return candidate
    return None


def _unflatten(flat: int, shape) -> tuple[int, ...]:
    indices = []
    for extent in reversed(shape):
        indices.append(flat % extent)
        flat //= extent
    return tuple(reversed(indices))
