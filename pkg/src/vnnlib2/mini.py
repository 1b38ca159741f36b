"""A concrete network theory over a small JSON tensor-graph model format.

Models are UTF-8 JSON files (extension ``.nn.json``) holding a flat list
of nodes in topological order over named tensors.  Scalars in files are
decimal strings, so values survive serialization exactly and can later be
reinterpreted at a different precision (see `real`).  The op set is
MatMul (2-D), elementwise Add/Sub/Mul, and Relu.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .core import MathTensor, ModelType, Shape, TensorType, element_count
from .numerics import (
    DATA_STRING_RE,
    BINARY16,
    BINARY32,
    BINARY64,
    FloatDType,
    IntDType,
    compare,
    shortest_decimal,
)
from .theory import NetworkTheory, ValueSet

FORMAT_TAG = "mini-nn-v1"

DTYPES = {
    "float16": FloatDType("float16", BINARY16),
    "float32": FloatDType("float32", BINARY32),
    "float64": FloatDType("float64", BINARY64),
    "int16": IntDType("int16", 16),
    "int32": IntDType("int32", 32),
    "int64": IntDType("int64", 64),
}

OPS = ("MatMul", "Add", "Sub", "Mul", "Relu")
_OP_ARITY = {"MatMul": 2, "Add": 2, "Sub": 2, "Mul": 2, "Relu": 1}


class FormatError(Exception):
    """A JSON artifact does not follow its schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class ModelFormatError(FormatError):
    pass


class AssignmentFormatError(FormatError):
    pass


class UnreachableNodeError(Exception):
    """Asked to evaluate a node output the graph does not define."""

    def __init__(self, ref: str):
        self.ref = ref
        super().__init__(f"no node output named {ref!r}")


# -- data ---------------------------------------------------------------------


@dataclass(frozen=True)
class MiniTensor:
    """A serialized tensor: dtype, shape, and per-entry decimal strings.

    `values` holds the scalars the strings denote at `dtype` (floats are
    correctly rounded once, integers exact).
    """

    dtype: str
    shape: Shape
    data: tuple[str, ...]
    values: tuple = field(compare=False)

    @staticmethod
    def from_strings(dtype: str, shape: Shape, data: tuple[str, ...]) -> "MiniTensor":
        ops = DTYPES[dtype]
        return MiniTensor(dtype, shape, data, tuple(ops.of_decimal(t) for t in data))

    @staticmethod
    def from_values(dtype: str, shape: Shape, values: tuple) -> "MiniTensor":
        ops = DTYPES[dtype]
        return MiniTensor(
            dtype, shape, tuple(shortest_decimal(v, ops) for v in values), tuple(values)
        )


@dataclass(frozen=True)
class GraphNode:
    op: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]


@dataclass(frozen=True)
class ModelInput:
    name: str
    dtype: str
    shape: Shape


@dataclass(frozen=True)
class MiniModel:
    opset: int
    inputs: tuple[ModelInput, ...]
    outputs: tuple[str, ...]
    initializers: tuple[tuple[str, MiniTensor], ...]
    nodes: tuple[GraphNode, ...]
    raw_bytes: bytes = field(compare=False)
    # name -> (dtype, shape) for every node output, filled in by the loader
    node_output_types: dict = field(compare=False)


# -- loading and validation ----------------------------------------------------


def _require(cond: bool, path: str, message: str):
    if not cond:
        raise ModelFormatError(path, message)


def _check_keys(obj: dict, path: str, keys: tuple[str, ...]):
    _require(isinstance(obj, dict), path, "expected an object")
    for key in obj:
        _require(key in keys, f"{path}.{key}", "unknown key")
    for key in keys:
        _require(key in obj, path, f"missing key {key!r}")


def _check_shape(obj: Any, path: str) -> Shape:
    _require(isinstance(obj, list), path, "expected a list of dimensions")
    for i, dim in enumerate(obj):
        _require(
            isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0,
            f"{path}[{i}]",
            "dimensions are non-negative integers",
        )
    return tuple(obj)


def _check_name(obj: Any, path: str) -> str:
    _require(isinstance(obj, str) and obj != "", path, "expected a non-empty string")
    return obj


def _check_tensor_body(obj: dict, path: str, error: type) -> MiniTensor:
    dtype = _check_name(obj["dtype"], f"{path}.dtype")
    if dtype not in DTYPES:
        raise error(f"{path}.dtype", f"unknown dtype {dtype!r}")
    shape = _check_shape(obj["shape"], f"{path}.shape")
    data = obj["data"]
    if not isinstance(data, list):
        raise error(f"{path}.data", "expected a list of decimal strings")
    if len(data) != element_count(shape):
        raise error(
            f"{path}.data",
            f"{len(data)} entries for shape {list(shape)} "
            f"(needs {element_count(shape)})",
        )
    for i, text in enumerate(data):
        if not isinstance(text, str) or not DATA_STRING_RE.fullmatch(text):
            raise error(f"{path}.data[{i}]", f"not a decimal string: {text!r}")
        try:
            DTYPES[dtype].of_decimal(text)
        except ValueError as exc:
            raise error(f"{path}.data[{i}]", str(exc)) from None
    return MiniTensor.from_strings(dtype, shape, tuple(data))


def _infer_node(
    node: GraphNode, operand_types: list[tuple[str, Shape]], path: str
) -> tuple[str, Shape]:
    dtypes = {d for d, _ in operand_types}
    _require(len(dtypes) == 1, path, f"{node.op} operands must share one dtype")
    dtype = dtypes.pop()
    shapes = [s for _, s in operand_types]
    if node.op == "MatMul":
        a, b = shapes
        _require(len(a) == 2 and len(b) == 2, path, "MatMul operands must be 2-D")
        _require(
            a[1] == b[0], path, f"MatMul inner dimensions differ: {a[1]} vs {b[0]}"
        )
        return dtype, (a[0], b[1])
    if node.op == "Relu":
        _require(DTYPES[dtype].kind == "float", path, "Relu requires a float dtype")
        return dtype, shapes[0]
    _require(
        shapes[0] == shapes[1],
        path,
        f"{node.op} operands must have equal shapes: "
        f"{list(shapes[0])} vs {list(shapes[1])}",
    )
    return dtype, shapes[0]


def load_model(raw: bytes) -> MiniModel:
    """Parse and validate a model artifact, keeping the exact bytes."""
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError("$", f"not valid UTF-8 JSON: {exc}") from None
    _check_keys(
        doc, "$", ("format", "opset", "inputs", "outputs", "initializers", "nodes")
    )
    _require(doc["format"] == FORMAT_TAG, "$.format", f"expected {FORMAT_TAG!r}")
    _require(
        isinstance(doc["opset"], int) and not isinstance(doc["opset"], bool)
        and doc["opset"] >= 0,
        "$.opset",
        "expected a non-negative integer",
    )

    _require(
        isinstance(doc["inputs"], list) and len(doc["inputs"]) > 0,
        "$.inputs",
        "expected a non-empty list",
    )
    defined: dict[str, tuple[str, Shape]] = {}
    inputs = []
    for i, entry in enumerate(doc["inputs"]):
        path = f"$.inputs[{i}]"
        _check_keys(entry, path, ("name", "dtype", "shape"))
        name = _check_name(entry["name"], f"{path}.name")
        dtype = _check_name(entry["dtype"], f"{path}.dtype")
        _require(dtype in DTYPES, f"{path}.dtype", f"unknown dtype {dtype!r}")
        shape = _check_shape(entry["shape"], f"{path}.shape")
        _require(name not in defined, f"{path}.name", f"duplicate tensor name {name!r}")
        defined[name] = (dtype, shape)
        inputs.append(ModelInput(name, dtype, shape))

    _require(
        isinstance(doc["initializers"], list), "$.initializers", "expected a list"
    )
    initializers = []
    for i, entry in enumerate(doc["initializers"]):
        path = f"$.initializers[{i}]"
        _check_keys(entry, path, ("name", "dtype", "shape", "data"))
        name = _check_name(entry["name"], f"{path}.name")
        tensor = _check_tensor_body(entry, path, ModelFormatError)
        _require(name not in defined, f"{path}.name", f"duplicate tensor name {name!r}")
        defined[name] = (tensor.dtype, tensor.shape)
        initializers.append((name, tensor))

    _require(isinstance(doc["nodes"], list), "$.nodes", "expected a list")
    nodes = []
    node_output_types: dict[str, tuple[str, Shape]] = {}
    for i, entry in enumerate(doc["nodes"]):
        path = f"$.nodes[{i}]"
        _check_keys(entry, path, ("op", "inputs", "outputs"))
        op = _check_name(entry["op"], f"{path}.op")
        _require(op in OPS, f"{path}.op", f"unknown op {op!r}")
        _require(
            isinstance(entry["inputs"], list)
            and len(entry["inputs"]) == _OP_ARITY[op],
            f"{path}.inputs",
            f"{op} takes exactly {_OP_ARITY[op]} input(s)",
        )
        _require(
            isinstance(entry["outputs"], list) and len(entry["outputs"]) == 1,
            f"{path}.outputs",
            f"{op} produces exactly one output",
        )
        operand_types = []
        for j, ref in enumerate(entry["inputs"]):
            ref = _check_name(ref, f"{path}.inputs[{j}]")
            _require(
                ref in defined,
                f"{path}.inputs[{j}]",
                f"undefined tensor {ref!r} (inputs must be a model input, an "
                "initializer, or an earlier node output)",
            )
            operand_types.append(defined[ref])
        node = GraphNode(op, tuple(entry["inputs"]), tuple(entry["outputs"]))
        out_name = _check_name(entry["outputs"][0], f"{path}.outputs[0]")
        _require(
            out_name not in defined,
            f"{path}.outputs[0]",
            f"duplicate tensor name {out_name!r}",
        )
        out_type = _infer_node(node, operand_types, path)
        defined[out_name] = out_type
        node_output_types[out_name] = out_type
        nodes.append(node)

    _require(
        isinstance(doc["outputs"], list) and len(doc["outputs"]) > 0,
        "$.outputs",
        "expected a non-empty list",
    )
    seen = set()
    for i, ref in enumerate(doc["outputs"]):
        ref = _check_name(ref, f"$.outputs[{i}]")
        _require(
            ref in node_output_types,
            f"$.outputs[{i}]",
            f"{ref!r} does not name a node output",
        )
        _require(ref not in seen, f"$.outputs[{i}]", f"duplicate output {ref!r}")
        seen.add(ref)

    return MiniModel(
        opset=doc["opset"],
        inputs=tuple(inputs),
        outputs=tuple(doc["outputs"]),
        initializers=tuple(initializers),
        nodes=tuple(nodes),
        raw_bytes=bytes(raw),
        node_output_types=node_output_types,
    )


def load_model_file(path: str) -> MiniModel:
    with open(path, "rb") as fh:
        return load_model(fh.read())


# -- graph interpretation -------------------------------------------------------


def _matmul(ops, a: MathTensor, b: MathTensor) -> MathTensor:
    n, k = a.shape
    _, m = b.shape
    av, bv = a.values, b.values
    out = []
    for i in range(n):
        for j in range(m):
            if k == 0:
                out.append(ops.zero())
                continue
            # dot product folded left to right, no fused multiply-add
            acc = ops.mul(av[i * k], bv[j])
            for step in range(1, k):
                acc = ops.add(acc, ops.mul(av[i * k + step], bv[step * m + j]))
            out.append(acc)
    return MathTensor((n, m), tuple(out))


def interpret_graph(model: MiniModel, inputs, *, scalar_ops, initializer_value):
    """Run the whole graph once; returns name -> MathTensor for every tensor.

    `scalar_ops(dtype)` supplies add/sub/mul/relu/zero for one node, and
    `initializer_value(tensor)` turns a stored initializer into a
    MathTensor, letting callers pick the value domain (rounded floats for
    this theory, exact rationals for the real wrapper).
    """
    env: dict[str, MathTensor] = {}
    if len(inputs) != len(model.inputs):
        raise ValueError(
            f"model takes {len(model.inputs)} input(s), got {len(inputs)}"
        )
    for declared, tensor in zip(model.inputs, inputs):
        if tensor.shape != declared.shape:
            raise ValueError(
                f"input {declared.name!r} expects shape {list(declared.shape)}"
            )
        env[declared.name] = tensor
    for name, init in model.initializers:
        env[name] = initializer_value(init)
    for node in model.nodes:
        dtype = model.node_output_types[node.outputs[0]][0]
        ops = scalar_ops(dtype)
        args = [env[ref] for ref in node.inputs]
        if node.op == "MatMul":
            result = _matmul(ops, *args)
        elif node.op == "Relu":
            result = MathTensor(args[0].shape, tuple(ops.relu(x) for x in args[0].values))
        else:
            fn = {"Add": ops.add, "Sub": ops.sub, "Mul": ops.mul}[node.op]
            a, b = args
            result = MathTensor(a.shape, tuple(fn(x, y) for x, y in zip(a.values, b.values)))
        env[node.outputs[0]] = result
    return env


# -- the theory -----------------------------------------------------------------


class _DTypeValues(ValueSet):
    def __init__(self, dtype):
        self._dtype = dtype

    def __contains__(self, scalar) -> bool:
        return self._dtype.contains(scalar)


def _canonical_signature(model: MiniModel):
    """Graph structure with tensor names canonicalized and dtypes/weights
    erased; equal signatures define isomorphism."""
    rename = {mi.name: f"i{i}" for i, mi in enumerate(model.inputs)}
    init_shapes = dict(
        (name, tensor.shape) for name, tensor in model.initializers
    )
    init_order: list[str] = []
    for node in model.nodes:
        for ref in node.inputs:
            if ref in init_shapes and ref not in rename:
                rename[ref] = f"c{len(init_order)}"
                init_order.append(ref)
    for name in sorted(
        (n for n in init_shapes if n not in rename),
        key=lambda n: init_shapes[n],
    ):
        rename[name] = f"c{len(init_order)}"
        init_order.append(name)
    for k, node in enumerate(model.nodes):
        for j, out in enumerate(node.outputs):
            rename[out] = f"n{k}_{j}"
    return (
        tuple(mi.shape for mi in model.inputs),
        tuple(init_shapes[name] for name in init_order),
        tuple(
            (node.op, tuple(rename[r] for r in node.inputs), len(node.outputs))
            for node in model.nodes
        ),
        tuple(rename[o] for o in model.outputs),
        tuple(model.node_output_types[o][1] for o in model.outputs),
    )


class MiniTheory(NetworkTheory):
    """Floating-point/integer semantics of the JSON graph format."""

    name = "mini"

    @property
    def element_types(self) -> frozenset[str]:
        return frozenset(DTYPES)

    def network_outputs(self, model: MiniModel) -> tuple[str, ...]:
        return model.outputs

    def model_bytes(self, model: MiniModel) -> bytes:
        return model.raw_bytes

    def judge_element(self, literal: str, element_type: str) -> bool:
        dtype = DTYPES.get(element_type)
        return dtype is not None and dtype.judge_literal(literal)

    def judge_tensor(self, tensor, tensor_type: TensorType) -> bool:
        return (
            isinstance(tensor, MiniTensor)
            and tensor.dtype == tensor_type.element_type
            and tensor.shape == tensor_type.shape
        )

    def judge_model(self, model: MiniModel, model_type: ModelType) -> bool:
        if len(model.inputs) != len(model_type.inputs):
            return False
        for mi, want in zip(model.inputs, model_type.inputs):
            if mi.dtype != want.element_type or mi.shape != want.shape:
                return False
        if len(model.outputs) != len(model_type.outputs):
            return False
        for ref, want in zip(model.outputs, model_type.outputs):
            if model.node_output_types[ref] != (want.element_type, want.shape):
                return False
        return True

    def judge_node_output(self, model: MiniModel, ref: str, tensor_type: TensorType) -> bool:
        actual = model.node_output_types.get(ref)
        return actual == (tensor_type.element_type, tensor_type.shape)

    def judge_isomorphic(self, model_a: MiniModel, model_b: MiniModel) -> bool:
        return _canonical_signature(model_a) == _canonical_signature(model_b)

    def sem_element_type(self, element_type: str) -> ValueSet:
        return _DTypeValues(DTYPES[element_type])

    def sem_tensor(self, tensor: MiniTensor) -> MathTensor:
        return MathTensor(tensor.shape, tensor.values)

    def sem_model(self, model: MiniModel, inputs, ref: str) -> MathTensor:
        env = interpret_graph(
            model,
            inputs,
            scalar_ops=DTYPES.__getitem__,
            initializer_value=self.sem_tensor,
        )
        if ref not in model.node_output_types:
            raise UnreachableNodeError(ref)
        return env[ref]

    def scalar_of_literal(self, literal: str, element_type: str):
        return DTYPES[element_type].of_decimal(literal)

    def add(self, element_type: str, a, b):
        return DTYPES[element_type].add(a, b)

    def mul(self, element_type: str, a, b):
        return DTYPES[element_type].mul(a, b)

    def neg(self, element_type: str, a):
        return DTYPES[element_type].neg(a)

    def compare(self, op: str, element_type: str, a, b) -> bool:
        return compare(op, a, b)

    # -- plumbing ---------------------------------------------------------

    def tensor_from_json(self, obj: Any, where: str) -> MiniTensor:
        if not isinstance(obj, dict):
            raise AssignmentFormatError(where, "expected an object")
        for key in obj:
            if key not in ("dtype", "shape", "data"):
                raise AssignmentFormatError(f"{where}.{key}", "unknown key")
        for key in ("dtype", "shape", "data"):
            if key not in obj:
                raise AssignmentFormatError(where, f"missing key {key!r}")
        return _check_tensor_body(obj, where, AssignmentFormatError)

    def tensor_to_json(self, tensor: MiniTensor) -> dict:
        return {
            "dtype": tensor.dtype,
            "shape": list(tensor.shape),
            "data": list(tensor.data),
        }

    def tensor_of_values(self, element_type: str, shape, values) -> MiniTensor:
        return MiniTensor.from_values(element_type, tuple(shape), tuple(values))

    def random_scalar(self, element_type: str, rng, lo, hi):
        dtype = DTYPES[element_type]
        if dtype.kind == "int":
            lo = dtype.min if lo is None else int(lo)
            hi = dtype.max if hi is None else int(hi)
            if lo > hi:
                lo, hi = hi, lo
            return rng.randint(max(lo, dtype.min), min(hi, dtype.max))
        lo = -1.0 if lo is None else float(lo)
        hi = 1.0 if hi is None else float(hi)
        if lo > hi:
            lo, hi = hi, lo
        return dtype.of_decimal(repr(rng.uniform(lo, hi)))


MINI_THEORY = MiniTheory()
