"""AST for the query language.

Every node carries a source span, but spans are excluded from equality so
that round-trip tests can compare trees structurally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import Shape


@dataclass(frozen=True)
class Span:
    """Half-open [start, end) character offsets into the source text."""

    start: int
    end: int

    def to_json(self) -> list[int]:
        return [self.start, self.end]


NO_SPAN = Span(0, 0)


def _span_field() -> Span:
    return field(default=NO_SPAN, compare=False)  # type: ignore[return-value]


class EquivKind(enum.Enum):
    EQUAL_TO = "equal-to"
    ISOMORPHIC_TO = "isomorphic-to"


class CmpOp(enum.Enum):
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    EQ = "=="
    NE = "!="


# -- arithmetic expressions --------------------------------------------------


@dataclass(frozen=True)
class Const:
    """A numeric literal, kept verbatim as written."""

    text: str
    span: Span = _span_field()


@dataclass(frozen=True)
class Var:
    """A variable occurrence; `indices` is None when no brackets were given."""

    name: str
    indices: Optional[tuple[int, ...]]
    span: Span = _span_field()


@dataclass(frozen=True)
class Neg:
    operand: "ArithExpr"
    span: Span = _span_field()


@dataclass(frozen=True)
class NaryAdd:
    items: tuple["ArithExpr", ...]
    span: Span = _span_field()


@dataclass(frozen=True)
class NaryMul:
    items: tuple["ArithExpr", ...]
    span: Span = _span_field()


@dataclass(frozen=True)
class NarySub:
    items: tuple["ArithExpr", ...]
    span: Span = _span_field()


ArithExpr = Union[Const, Var, Neg, NaryAdd, NaryMul, NarySub]


# -- boolean expressions -----------------------------------------------------


@dataclass(frozen=True)
class And:
    items: tuple["BoolExpr", ...]
    span: Span = _span_field()


@dataclass(frozen=True)
class Or:
    items: tuple["BoolExpr", ...]
    span: Span = _span_field()


@dataclass(frozen=True)
class Cmp:
    op: CmpOp
    lhs: ArithExpr
    rhs: ArithExpr
    span: Span = _span_field()


BoolExpr = Union[And, Or, Cmp]


# -- declarations ------------------------------------------------------------


@dataclass(frozen=True)
class Equiv:
    kind: EquivKind
    target: str
    span: Span = _span_field()


@dataclass(frozen=True)
class IoDecl:
    """declare-input / declare-output: a named, typed, shaped variable."""

    var_name: str
    element_type: str
    shape: Shape
    span: Span = _span_field()


@dataclass(frozen=True)
class HiddenDecl:
    """declare-hidden: additionally names the node output it refers to."""

    var_name: str
    element_type: str
    shape: Shape
    node_ref: str
    span: Span = _span_field()


@dataclass(frozen=True)
class NetworkDecl:
    name: str
    equiv: Optional[Equiv]
    inputs: tuple[IoDecl, ...]
    hidden: tuple[HiddenDecl, ...]
    outputs: tuple[IoDecl, ...]
    span: Span = _span_field()

    def declared_vars(self) -> tuple[tuple[str, str, Shape], ...]:
        """(name, element type, shape) of every variable, declaration order."""
        decls: list[tuple[str, str, Shape]] = []
        for d in (*self.inputs, *self.hidden, *self.outputs):
            decls.append((d.var_name, d.element_type, d.shape))
        return tuple(decls)


@dataclass(frozen=True)
class Assertion:
    expr: BoolExpr
    span: Span = _span_field()


@dataclass(frozen=True)
class Query:
    version: tuple[int, int]
    networks: tuple[NetworkDecl, ...]
    asserts: tuple[Assertion, ...]
    span: Span = _span_field()


# -- JSON rendering of the tree (for the `--ast-json` tooling mode) ----------


def ast_to_json(node) -> object:
    """A stable JSON tree: kind tag, children, spans."""
    if isinstance(node, Query):
        return {
            "kind": "query",
            "version": list(node.version),
            "networks": [ast_to_json(n) for n in node.networks],
            "asserts": [ast_to_json(a) for a in node.asserts],
            "span": node.span.to_json(),
        }
    if isinstance(node, NetworkDecl):
        return {
            "kind": "network",
            "name": node.name,
            "equiv": ast_to_json(node.equiv) if node.equiv else None,
            "inputs": [ast_to_json(d) for d in node.inputs],
            "hidden": [ast_to_json(d) for d in node.hidden],
            "outputs": [ast_to_json(d) for d in node.outputs],
            "span": node.span.to_json(),
        }
    if isinstance(node, Equiv):
        return {
            "kind": node.kind.value,
            "target": node.target,
            "span": node.span.to_json(),
        }
    if isinstance(node, IoDecl):
        return {
            "kind": "io-decl",
            "name": node.var_name,
            "elementType": node.element_type,
            "shape": list(node.shape),
            "span": node.span.to_json(),
        }
    if isinstance(node, HiddenDecl):
        return {
            "kind": "hidden-decl",
            "name": node.var_name,
            "elementType": node.element_type,
            "shape": list(node.shape),
            "nodeRef": node.node_ref,
            "span": node.span.to_json(),
        }
    if isinstance(node, Assertion):
        return {
            "kind": "assert",
            "expr": ast_to_json(node.expr),
            "span": node.span.to_json(),
        }
    if isinstance(node, (And, Or)):
        return {
            "kind": "and" if isinstance(node, And) else "or",
            "items": [ast_to_json(b) for b in node.items],
            "span": node.span.to_json(),
        }
    if isinstance(node, Cmp):
        return {
            "kind": "cmp",
            "op": node.op.value,
            "lhs": ast_to_json(node.lhs),
            "rhs": ast_to_json(node.rhs),
            "span": node.span.to_json(),
        }
    if isinstance(node, Const):
        return {"kind": "const", "text": node.text, "span": node.span.to_json()}
    if isinstance(node, Var):
        return {
            "kind": "var",
            "name": node.name,
            "indices": list(node.indices) if node.indices is not None else None,
            "span": node.span.to_json(),
        }
    if isinstance(node, Neg):
        return {
            "kind": "neg",
            "operand": ast_to_json(node.operand),
            "span": node.span.to_json(),
        }
    if isinstance(node, (NaryAdd, NaryMul, NarySub)):
        kind = {NaryAdd: "add", NaryMul: "mul", NarySub: "sub"}[type(node)]
        return {
            "kind": kind,
            "items": [ast_to_json(a) for a in node.items],
            "span": node.span.to_json(),
        }
    raise TypeError(f"not an AST node: {node!r}")
