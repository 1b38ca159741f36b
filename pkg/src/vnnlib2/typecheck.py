"""Typing judgements: context construction from network declarations,
assertion typing, and the model / input-assignment compatibility checks.

All judgements are parameterized by a NetworkTheory.  Checking stops at
the first failure in source order; every failure carries exactly one code
from ErrorCode.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .core import ModelType, Shape, TensorType
from .syntax import (
    And,
    Cmp,
    Const,
    EquivKind,
    NaryAdd,
    NaryMul,
    NarySub,
    Neg,
    NetworkDecl,
    Or,
    Query,
    Span,
    Var,
)
from .theory import NetworkTheory


class ErrorCode(enum.Enum):
    DUPLICATE_NAME = "DuplicateName"
    UNKNOWN_NETWORK = "UnknownNetwork"
    EQUIV_CHAIN = "EquivChain"
    SHAPE_MISMATCH = "ShapeMismatch"
    ELEMENT_TYPE_MISMATCH = "ElementTypeMismatch"
    UNTYPABLE_COMPARISON = "UntypableComparison"
    MIXED_TYPES = "MixedTypes"
    BAD_CONSTANT = "BadConstant"
    UNKNOWN_VARIABLE = "UnknownVariable"
    RANK_MISMATCH = "RankMismatch"
    INDEX_OUT_OF_BOUNDS = "IndexOutOfBounds"
    MODEL_TYPE_MISMATCH = "ModelTypeMismatch"
    MODEL_NOT_EQUAL = "ModelNotEqual"
    MODEL_NOT_ISOMORPHIC = "ModelNotIsomorphic"
    HIDDEN_NODE_MISSING = "HiddenNodeMissing"
    ASSIGNMENT_MISSING = "AssignmentMissing"
    ASSIGNMENT_TYPE_MISMATCH = "AssignmentTypeMismatch"
    UNKNOWN_ELEMENT_TYPE = "UnknownElementType"


class TypeCheckError(Exception):
    def __init__(self, code: ErrorCode, span: Span, message: str):
        self.code = code
        self.span = span
        self.message = message
        super().__init__(f"{code.value}: {message}")


def _fail(code: ErrorCode, span: Span, message: str):
    raise TypeCheckError(code, span, message)


@dataclass(frozen=True)
class VarInfo:
    network: str
    element_type: str
    shape: Shape
    role: str  # input | hidden | output
    node_ref: Optional[str] = None


@dataclass
class TypingContext:
    """Network declarations in scope plus a flat variable table.

    Variable names are globally unique across networks, so the flat table
    is well-defined and environment construction needs no qualification.
    """

    networks: dict[str, NetworkDecl] = dc_field(default_factory=dict)
    variables: dict[str, VarInfo] = dc_field(default_factory=dict)

    def copy(self) -> "TypingContext":
        return TypingContext(dict(self.networks), dict(self.variables))


def model_type_of(decl: NetworkDecl) -> ModelType:
    """The model type a declaration's input/output lists describe."""
    return ModelType(
        inputs=tuple(TensorType(d.element_type, d.shape) for d in decl.inputs),
        outputs=tuple(TensorType(d.element_type, d.shape) for d in decl.outputs),
    )


def check_equiv(ctx: TypingContext, decl: NetworkDecl) -> None:
    """Validate an equal-to / isomorphic-to statement against the context.

    equal-to demands positionwise shape and element-type agreement on
    inputs and outputs, and agreement on any hidden declarations that
    share a name; isomorphic-to demands shapes only and ignores hidden
    declarations.  Either way the target must itself be equivalence-free.
    """
    equiv = decl.equiv
    if equiv is None:
        return
    target = ctx.networks.get(equiv.target)
    if target is None:
        _fail(
            ErrorCode.UNKNOWN_NETWORK,
            equiv.span,
            f"network {equiv.target!r} is not in scope",
        )
    if target.equiv is not None:
        _fail(
            ErrorCode.EQUIV_CHAIN,
            equiv.span,
            f"network {equiv.target!r} has an equivalence statement of its own; "
            "chains are not allowed",
        )
    exact = equiv.kind is EquivKind.EQUAL_TO
    for role, ours, theirs in (
        ("input", decl.inputs, target.inputs),
        ("output", decl.outputs, target.outputs),
    ):
        if len(ours) != len(theirs):
            _fail(
                ErrorCode.SHAPE_MISMATCH,
                equiv.span,
                f"{decl.name!r} declares {len(ours)} {role}(s) but "
                f"{equiv.target!r} declares {len(theirs)}",
            )
        for a, b in zip(ours, theirs):
            if a.shape != b.shape:
                _fail(
                    ErrorCode.SHAPE_MISMATCH,
                    a.span,
                    f"{role} {a.var_name!r} has shape {list(a.shape)} but the "
                    f"corresponding {role} of {equiv.target!r} has {list(b.shape)}",
                )
            if exact and a.element_type != b.element_type:
                _fail(
                    ErrorCode.ELEMENT_TYPE_MISMATCH,
                    a.span,
                    f"{role} {a.var_name!r} is {a.element_type} but the "
                    f"corresponding {role} of {equiv.target!r} is {b.element_type}",
                )
    if exact:
        theirs_by_name = {h.var_name: h for h in target.hidden}
        for h in decl.hidden:
            other = theirs_by_name.get(h.var_name)
            if other is None:
                continue
            if h.shape != other.shape:
                _fail(
                    ErrorCode.SHAPE_MISMATCH,
                    h.span,
                    f"hidden {h.var_name!r} has shape {list(h.shape)} but "
                    f"{equiv.target!r} declares {list(other.shape)}",
                )
            if h.element_type != other.element_type:
                _fail(
                    ErrorCode.ELEMENT_TYPE_MISMATCH,
                    h.span,
                    f"hidden {h.var_name!r} is {h.element_type} but "
                    f"{equiv.target!r} declares {other.element_type}",
                )


def build_context(
    networks,
    theory: NetworkTheory,
    base: Optional[TypingContext] = None,
) -> TypingContext:
    """Fold declarations left to right, checking each under the context so
    far, then inserting it."""
    ctx = base.copy() if base is not None else TypingContext()
    for decl in networks:
        if decl.name in ctx.networks:
            _fail(
                ErrorCode.DUPLICATE_NAME,
                decl.span,
                f"network {decl.name!r} is declared twice",
            )
        check_equiv(ctx, decl)
        role_decls = (
            [("input", d) for d in decl.inputs]
            + [("hidden", d) for d in decl.hidden]
            + [("output", d) for d in decl.outputs]
        )
        for role, d in role_decls:
            if d.var_name in ctx.variables:
                prev = ctx.variables[d.var_name]
                _fail(
                    ErrorCode.DUPLICATE_NAME,
                    d.span,
                    f"variable {d.var_name!r} is already declared "
                    f"by network {prev.network!r}",
                )
            if d.element_type not in theory.element_types:
                _fail(
                    ErrorCode.UNKNOWN_ELEMENT_TYPE,
                    d.span,
                    f"{d.element_type!r} is not an element type of this theory "
                    f"(expected one of {sorted(theory.element_types)})",
                )
            ctx.variables[d.var_name] = VarInfo(
                network=decl.name,
                element_type=d.element_type,
                shape=d.shape,
                role=role,
                node_ref=getattr(d, "node_ref", None),
            )
        ctx.networks[decl.name] = decl
    return ctx


# -- expression typing --------------------------------------------------------


def _scan(expr, variables: list[Var], constants: list[Const]) -> None:
    if isinstance(expr, Const):
        constants.append(expr)
    elif isinstance(expr, Var):
        variables.append(expr)
    elif isinstance(expr, Neg):
        _scan(expr.operand, variables, constants)
    elif isinstance(expr, (NaryAdd, NaryMul, NarySub)):
        for item in expr.items:
            _scan(item, variables, constants)
    else:
        raise TypeError(f"not an arithmetic expression: {expr!r}")


def _variable_type(ctx: TypingContext, var: Var) -> str:
    info = ctx.variables.get(var.name)
    if info is None:
        _fail(
            ErrorCode.UNKNOWN_VARIABLE,
            var.span,
            f"variable {var.name!r} is not declared by any network",
        )
    rank = len(info.shape)
    if var.indices is None:
        if rank != 0:
            _fail(
                ErrorCode.RANK_MISMATCH,
                var.span,
                f"{var.name!r} has rank {rank} and must be fully indexed",
            )
    else:
        if len(var.indices) != rank:
            _fail(
                ErrorCode.RANK_MISMATCH,
                var.span,
                f"{var.name!r} has rank {rank}, got {len(var.indices)} indices",
            )
        for pos, (idx, extent) in enumerate(zip(var.indices, info.shape)):
            if idx >= extent:
                _fail(
                    ErrorCode.INDEX_OUT_OF_BOUNDS,
                    var.span,
                    f"index {idx} at position {pos} of {var.name!r} exceeds "
                    f"extent {extent} (valid range 0..{extent - 1})",
                )
    return info.element_type


def type_joint(ctx: TypingContext, exprs, theory: NetworkTheory, owner_span: Span) -> str:
    """Type a group of arithmetic expressions that must share one type.

    Variables are the source of typing: every occurrence must agree on one
    element type, and each constant is then judged against it by the
    theory.  A group without any variable occurrence is untypable.
    """
    variables: list[Var] = []
    constants: list[Const] = []
    for expr in exprs:
        _scan(expr, variables, constants)
    if not variables:
        _fail(
            ErrorCode.UNTYPABLE_COMPARISON,
            owner_span,
            "no variable occurs, so no element type can be inferred "
            "(constant-only comparisons are not typable)",
        )
    element_type = None
    for var in variables:
        this = _variable_type(ctx, var)
        if element_type is None:
            element_type = this
        elif this != element_type:
            _fail(
                ErrorCode.MIXED_TYPES,
                var.span,
                f"{var.name!r} is {this} but the expression already has "
                f"type {element_type} (no implicit coercions)",
            )
    for const in constants:
        if not theory.judge_element(const.text, element_type):
            _fail(
                ErrorCode.BAD_CONSTANT,
                const.span,
                f"literal {const.text} is not a value of {element_type}",
            )
    return element_type


def type_arith(ctx: TypingContext, expr, theory: NetworkTheory) -> str:
    return type_joint(ctx, [expr], theory, expr.span)


def type_bool(ctx: TypingContext, expr, theory: NetworkTheory) -> None:
    if isinstance(expr, (And, Or)):
        for item in expr.items:
            type_bool(ctx, item, theory)
    elif isinstance(expr, Cmp):
        type_joint(ctx, [expr.lhs, expr.rhs], theory, expr.span)
    else:
        raise TypeError(f"not a boolean expression: {expr!r}")


def type_query(query: Query, theory: NetworkTheory) -> TypingContext:
    """Build the context from the declarations, then type every assertion."""
    ctx = build_context(query.networks, theory)
    for assertion in query.asserts:
        type_bool(ctx, assertion.expr, theory)
    return ctx


# -- models and input assignments ---------------------------------------------


def check_models(query: Query, models: dict, theory: NetworkTheory) -> None:
    """Every declaration needs a model that honours its equivalence
    statement, its declared model type, and its hidden declarations.

    equal-to is absolute: the two bindings must be the same artifact
    byte for byte, not merely semantically equal models.
    """
    for decl in query.networks:
        if decl.name not in models:
            _fail(
                ErrorCode.UNKNOWN_NETWORK,
                decl.span,
                f"no model bound for network {decl.name!r}",
            )
        model = models[decl.name]
        if decl.equiv is not None:
            target_model = models.get(decl.equiv.target)
            if target_model is None:
                _fail(
                    ErrorCode.UNKNOWN_NETWORK,
                    decl.equiv.span,
                    f"no model bound for network {decl.equiv.target!r}",
                )
            if decl.equiv.kind is EquivKind.EQUAL_TO:
                if theory.model_bytes(model) != theory.model_bytes(target_model):
                    _fail(
                        ErrorCode.MODEL_NOT_EQUAL,
                        decl.equiv.span,
                        f"{decl.name!r} and {decl.equiv.target!r} are bound to "
                        "different artifacts (equal-to requires the same "
                        "model file)",
                    )
            else:
                if not theory.judge_isomorphic(target_model, model):
                    _fail(
                        ErrorCode.MODEL_NOT_ISOMORPHIC,
                        decl.equiv.span,
                        f"models bound to {decl.name!r} and "
                        f"{decl.equiv.target!r} do not share graph structure",
                    )
        if not theory.judge_model(model, model_type_of(decl)):
            _fail(
                ErrorCode.MODEL_TYPE_MISMATCH,
                decl.span,
                f"model bound to {decl.name!r} does not have the declared "
                "input/output types",
            )
        for h in decl.hidden:
            if not theory.judge_node_output(
                model, h.node_ref, TensorType(h.element_type, h.shape)
            ):
                _fail(
                    ErrorCode.HIDDEN_NODE_MISSING,
                    h.span,
                    f"model bound to {decl.name!r} has no node output "
                    f"{h.node_ref!r} of type {h.element_type} {list(h.shape)}",
                )


def check_assignment(query: Query, assignment: dict, theory: NetworkTheory) -> None:
    """Every declared input variable needs a tensor of its declared type."""
    for decl in query.networks:
        for d in decl.inputs:
            if d.var_name not in assignment:
                _fail(
                    ErrorCode.ASSIGNMENT_MISSING,
                    d.span,
                    f"assignment provides no tensor for input {d.var_name!r}",
                )
            if not theory.judge_tensor(
                assignment[d.var_name], TensorType(d.element_type, d.shape)
            ):
                _fail(
                    ErrorCode.ASSIGNMENT_TYPE_MISMATCH,
                    d.span,
                    f"tensor for {d.var_name!r} does not have type "
                    f"{d.element_type} {list(d.shape)}",
                )
