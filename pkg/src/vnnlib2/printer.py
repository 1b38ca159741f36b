"""Canonical formatter: one declaration or assertion per line, two-space
indents, comma-separated shapes and indices, the version in angle brackets.

`parse_query(print_query(q))` returns a tree structurally equal to `q`,
and printing a freshly parsed tree is idempotent.
"""

from __future__ import annotations

from .syntax import (
    And,
    Cmp,
    Const,
    NaryAdd,
    NaryMul,
    NarySub,
    Neg,
    NetworkDecl,
    Or,
    Query,
    Var,
)


def _dims(values) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


def print_arith(a) -> str:
    if isinstance(a, Const):
        return a.text
    if isinstance(a, Var):
        if a.indices is None:
            return a.name
        return a.name + _dims(a.indices)
    if isinstance(a, Neg):
        return f"(- {print_arith(a.operand)})"
    if isinstance(a, (NaryAdd, NaryMul, NarySub)):
        op = {NaryAdd: "+", NaryMul: "*", NarySub: "-"}[type(a)]
        return f"({op} " + " ".join(print_arith(x) for x in a.items) + ")"
    raise TypeError(f"not an arithmetic expression: {a!r}")


def print_bool(b) -> str:
    if isinstance(b, (And, Or)):
        op = "and" if isinstance(b, And) else "or"
        return f"({op} " + " ".join(print_bool(x) for x in b.items) + ")"
    if isinstance(b, Cmp):
        return f"({b.op.value} {print_arith(b.lhs)} {print_arith(b.rhs)})"
    raise TypeError(f"not a boolean expression: {b!r}")


def _print_network(n: NetworkDecl) -> str:
    lines = [f"(declare-network {n.name}"]
    if n.equiv is not None:
        lines.append(f"  ({n.equiv.kind.value} {n.equiv.target})")
    for d in n.inputs:
        lines.append(f"  (declare-input {d.var_name} {d.element_type} {_dims(d.shape)})")
    for d in n.hidden:
        lines.append(
            f"  (declare-hidden {d.var_name} {d.element_type} "
            f'{_dims(d.shape)} "{d.node_ref}")'
        )
    for d in n.outputs:
        lines.append(f"  (declare-output {d.var_name} {d.element_type} {_dims(d.shape)})")
    lines[-1] += ")"
    return "\n".join(lines)


def print_query(q: Query) -> str:
    major, minor = q.version
    blocks = [f"(vnnlib-version <{major}.{minor}>)"]
    blocks.extend(_print_network(n) for n in q.networks)
    if q.asserts:
        blocks.append("\n".join(f"(assert {print_bool(a.expr)})" for a in q.asserts))
    return "\n\n".join(blocks) + "\n"
