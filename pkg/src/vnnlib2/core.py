"""Shared shape/type vocabulary used by the grammar, the type checker and
the network theories.

A shape is a plain tuple of non-negative ints; rank-0 (the empty tuple) is
a valid shape whose element count is 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

Shape = tuple[int, ...]

# Numeric literals: optional minus, digits, optional dot + digits.
# No exponent, no leading '+', no bare trailing dot.
ELEMENT_LITERAL_RE = re.compile(r"-?[0-9]+(\.[0-9]+)?")

IDENTIFIER_RE = re.compile(r"[A-Za-z][_A-Za-z0-9]*")


def is_element_literal(text: str) -> bool:
    return ELEMENT_LITERAL_RE.fullmatch(text) is not None


class RankMismatchError(ValueError):
    """Number of indices does not equal the rank of the shape."""


class IndexOutOfBoundsError(ValueError):
    """An index is not below the extent of its dimension."""

    def __init__(self, position: int, index: int, extent: int):
        self.position = position
        self.index = index
        self.extent = extent
        super().__init__(
            f"index {index} at position {position} out of bounds for extent {extent}"
        )


def element_count(shape: Shape) -> int:
    """Number of scalar entries in a tensor of this shape (1 for rank-0)."""
    return math.prod(shape)


def flat_index(shape: Shape, indices: tuple[int, ...]) -> int:
    """Row-major linear offset of `indices` into `shape`.

    Bijective from the full index grid onto [0, element_count(shape)).
    """
    if len(indices) != len(shape):
        raise RankMismatchError(
            f"got {len(indices)} indices for rank-{len(shape)} shape"
        )
    offset = 0
    for pos, (idx, extent) in enumerate(zip(indices, shape)):
        if not 0 <= idx < extent:
            raise IndexOutOfBoundsError(pos, idx, extent)
        offset = offset * extent + idx
    return offset


@dataclass(frozen=True)
class TensorType:
    """An element-type token paired with a shape (the type of one tensor)."""

    element_type: str
    shape: Shape


@dataclass(frozen=True)
class ModelType:
    """Input and output tensor types of a model; both lists are non-empty."""

    inputs: tuple[TensorType, ...]
    outputs: tuple[TensorType, ...]

    def __post_init__(self):
        if not self.inputs or not self.outputs:
            raise ValueError("model type requires at least one input and one output")


@dataclass(frozen=True)
class MathTensor:
    """A mathematical tensor: a shape plus a flat row-major scalar buffer.

    The scalar domain depends on the owning theory (floats/ints for the
    graph theory, exact rationals for the real theory).
    """

    shape: Shape
    values: tuple

    def __post_init__(self):
        if len(self.values) != element_count(self.shape):
            raise ValueError(
                f"buffer has {len(self.values)} entries, "
                f"shape {list(self.shape)} needs {element_count(self.shape)}"
            )

    def __getitem__(self, indices: tuple[int, ...]):
        return self.values[flat_index(self.shape, indices)]
