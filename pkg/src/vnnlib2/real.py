"""A real-valued theory wrapping the graph theory.

It exposes the single element type ``real``, keeps the very same model
artifacts, types them by shape only (the stored dtypes are irrelevant),
and interprets graphs with exact rational arithmetic: every stored weight
decimal converts exactly, every op is exact, so no rounding happens
anywhere.  The op set (MatMul/Add/Sub/Mul/Relu) is closed over the
rationals; if an op ever breaks that closure this module must fail loudly
rather than approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .core import MathTensor, ModelType, Shape, TensorType, element_count
from .mini import (
    AssignmentFormatError,
    MiniModel,
    MiniTheory,
    UnreachableNodeError,
    interpret_graph,
)
from .numerics import DATA_STRING_RE, compare
from .theory import NetworkTheory, ValueSet


@dataclass(frozen=True)
class RealTensor:
    """A shape plus exact rational entries; it denotes itself."""

    shape: Shape
    data: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.data) != element_count(self.shape):
            raise ValueError("buffer size does not match shape")


class _RationalOps:
    @staticmethod
    def add(a: Fraction, b: Fraction) -> Fraction:
        return a + b

    @staticmethod
    def sub(a: Fraction, b: Fraction) -> Fraction:
        return a - b

    @staticmethod
    def mul(a: Fraction, b: Fraction) -> Fraction:
        return a * b

    @staticmethod
    def relu(a: Fraction) -> Fraction:
        return a if a > 0 else Fraction(0)

    @staticmethod
    def zero() -> Fraction:
        return Fraction(0)


_OPS = _RationalOps()


def real_model(model: MiniModel, inputs, ref: str) -> MathTensor:
    """Exact rational value of node output `ref`; the same artifact the
    float theory runs, with its weights reinterpreted rather than
    re-serialized."""
    env = interpret_graph(
        model,
        inputs,
        scalar_ops=lambda _dtype: _OPS,
        initializer_value=lambda t: MathTensor(
            t.shape, tuple(Fraction(text) for text in t.data)
        ),
    )
    if ref not in model.node_output_types:
        raise UnreachableNodeError(ref)
    return env[ref]


def fraction_to_decimal(value: Fraction) -> str:
    """Finite decimal form; fails for denominators outside 2^a * 5^b."""
    numerator, denominator = value.numerator, value.denominator
    twos = fives = 0
    d = denominator
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        raise ValueError(f"{value} has no finite decimal representation")
    digits = max(twos, fives)
    scaled = abs(numerator) * (10**digits) // denominator
    sign = "-" if numerator < 0 else ""
    if digits == 0:
        return f"{sign}{scaled}"
    text = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


class _Reals(ValueSet):
    def __contains__(self, scalar) -> bool:
        return isinstance(scalar, Fraction)


class RealTheory(NetworkTheory):
    """Shape-only typing over the base theory's models, exact semantics."""

    name = "real"

    def __init__(self, base: MiniTheory):
        self.base = base

    @property
    def element_types(self) -> frozenset[str]:
        return frozenset({"real"})

    def network_outputs(self, model: MiniModel) -> tuple[str, ...]:
        return self.base.network_outputs(model)

    def model_bytes(self, model: MiniModel) -> bytes:
        return self.base.model_bytes(model)

    def judge_element(self, literal: str, element_type: str) -> bool:
        return element_type == "real"

    def judge_tensor(self, tensor, tensor_type: TensorType) -> bool:
        return (
            isinstance(tensor, RealTensor)
            and tensor_type.element_type == "real"
            and tensor.shape == tensor_type.shape
        )

    def judge_model(self, model: MiniModel, model_type: ModelType) -> bool:
        if len(model.inputs) != len(model_type.inputs):
            return False
        if any(
            mi.shape != want.shape
            for mi, want in zip(model.inputs, model_type.inputs)
        ):
            return False
        if len(model.outputs) != len(model_type.outputs):
            return False
        return all(
            model.node_output_types[ref][1] == want.shape
            for ref, want in zip(model.outputs, model_type.outputs)
        )

    def judge_node_output(self, model: MiniModel, ref: str, tensor_type: TensorType) -> bool:
        actual = model.node_output_types.get(ref)
        return actual is not None and actual[1] == tensor_type.shape

    def judge_isomorphic(self, model_a: MiniModel, model_b: MiniModel) -> bool:
        return self.base.judge_isomorphic(model_a, model_b)

    def sem_element_type(self, element_type: str) -> ValueSet:
        return _Reals()

    def sem_tensor(self, tensor: RealTensor) -> MathTensor:
        return MathTensor(tensor.shape, tensor.data)

    def sem_model(self, model: MiniModel, inputs, ref: str) -> MathTensor:
        return real_model(model, inputs, ref)

    def scalar_of_literal(self, literal: str, element_type: str) -> Fraction:
        return Fraction(literal)

    def add(self, element_type: str, a, b):
        return a + b

    def mul(self, element_type: str, a, b):
        return a * b

    def neg(self, element_type: str, a):
        return -a

    def compare(self, op: str, element_type: str, a, b) -> bool:
        return compare(op, a, b)

    # -- plumbing ---------------------------------------------------------

    def tensor_from_json(self, obj: Any, where: str) -> RealTensor:
        if not isinstance(obj, dict):
            raise AssignmentFormatError(where, "expected an object")
        for key in obj:
            if key not in ("dtype", "shape", "data"):
                raise AssignmentFormatError(f"{where}.{key}", "unknown key")
        for key in ("dtype", "shape", "data"):
            if key not in obj:
                raise AssignmentFormatError(where, f"missing key {key!r}")
        if obj["dtype"] != "real":
            raise AssignmentFormatError(
                f"{where}.dtype", f"expected 'real', got {obj['dtype']!r}"
            )
        shape = obj["shape"]
        if not isinstance(shape, list) or any(
            not isinstance(d, int) or isinstance(d, bool) or d < 0 for d in shape
        ):
            raise AssignmentFormatError(f"{where}.shape", "expected natural dimensions")
        shape = tuple(shape)
        data = obj["data"]
        if not isinstance(data, list) or len(data) != element_count(shape):
            raise AssignmentFormatError(
                f"{where}.data", f"expected {element_count(shape)} decimal strings"
            )
        values = []
        for i, text in enumerate(data):
            if not isinstance(text, str) or not DATA_STRING_RE.fullmatch(text):
                raise AssignmentFormatError(
                    f"{where}.data[{i}]", f"not a decimal string: {text!r}"
                )
            values.append(Fraction(text))
        return RealTensor(shape, tuple(values))

    def tensor_to_json(self, tensor: RealTensor) -> dict:
        return {
            "dtype": "real",
            "shape": list(tensor.shape),
            "data": [fraction_to_decimal(v) for v in tensor.data],
        }

    def tensor_of_values(self, element_type: str, shape, values) -> RealTensor:
        return RealTensor(tuple(shape), tuple(Fraction(v) for v in values))

    def random_scalar(self, element_type: str, rng, lo, hi) -> Fraction:
        lo = Fraction(-1) if lo is None else Fraction(lo)
        hi = Fraction(1) if hi is None else Fraction(hi)
        if lo > hi:
            lo, hi = hi, lo
        step = Fraction(rng.randint(0, 10**6), 10**6)
        return lo + (hi - lo) * step


def wrap_theory(base: MiniTheory) -> RealTheory:
    """Build the real-valued theory over a base graph theory."""
    return RealTheory(base)
