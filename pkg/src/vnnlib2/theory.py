"""The abstract network-theory interface.

A network theory supplies everything the query language leaves open: the
set of element types, the representation of tensors and models, how node
outputs are referenced, the typing judgements over those objects, and the
scalar semantics of arithmetic and comparisons.  The parser, type checker
and evaluator are written against this interface only.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any

from .core import MathTensor, ModelType, TensorType

COMPARISON_OPS = ("<", "<=", ">", ">=", "==", "!=")


class NetworkTheory(ABC):
    """Contract every concrete theory must satisfy.

    Interface laws (exercised by the shared conformance suite):
      * judge_tensor(t, d) implies sem_tensor(t) has element_count(d.shape)
        entries, each belonging to sem_element_type(d.element_type);
      * judge_model(m, g) implies network_outputs(m) has exactly
        len(g.outputs) entries and judge_node_output holds pointwise;
      * judge_isomorphic is reflexive and symmetric.
    """

    name: str = "abstract"

    @property
    @abstractmethod
    def element_types(self) -> frozenset[str]:
        """The finite set of element-type tokens this theory understands."""

    # -- models ---------------------------------------------------------

    @abstractmethod
    def network_outputs(self, model) -> tuple[str, ...]:
        """References to the model's final outputs, in declaration order."""

    @abstractmethod
    def model_bytes(self, model) -> bytes:
        """The exact serialized artifact the model was loaded from.

        `equal-to` compatibility is absolute (same model file), so it is
        checked on these bytes rather than on any theory-level equality.
        """

    # -- typing judgements ----------------------------------------------

    @abstractmethod
    def judge_element(self, literal: str, element_type: str) -> bool:
        """Is this numeric literal a value of the element type?"""

    @abstractmethod
    def judge_tensor(self, tensor, tensor_type: TensorType) -> bool:
        """Does this tensor have the given element type and shape?"""

    @abstractmethod
    def judge_model(self, model, model_type: ModelType) -> bool:
        """Do the model's inputs and outputs match the model type positionally?"""

    @abstractmethod
    def judge_node_output(self, model, ref: str, tensor_type: TensorType) -> bool:
        """Does the model contain a node output `ref` of the given type?"""

    @abstractmethod
    def judge_isomorphic(self, model_a, model_b) -> bool:
        """Do the two models share graph structure (weights aside)?"""

    # -- semantics -------------------------------------------------------

    @abstractmethod
    def sem_element_type(self, element_type: str) -> "ValueSet":
        """The set of scalar values the element type denotes."""

    @abstractmethod
    def sem_tensor(self, tensor) -> MathTensor:
        """The mathematical tensor a syntactic tensor denotes."""

    @abstractmethod
    def sem_model(self, model, inputs: list[MathTensor], ref: str) -> MathTensor:
        """The value the model computes for node output `ref` on `inputs`."""

    @abstractmethod
    def scalar_of_literal(self, literal: str, element_type: str):
        """The scalar a literal denotes at an element type (a 0-dim tensor)."""

    @abstractmethod
    def add(self, element_type: str, a, b):
        ...

    @abstractmethod
    def mul(self, element_type: str, a, b):
        ...

    @abstractmethod
    def neg(self, element_type: str, a):
        ...

    @abstractmethod
    def compare(self, op: str, element_type: str, a, b) -> bool:
        """Pointwise comparison; `op` is one of COMPARISON_OPS."""

    # -- plumbing hooks (used by the CLI and witness search) --------------

    @abstractmethod
    def tensor_from_json(self, obj: Any, where: str):
        """Build a syntactic tensor from one assignment-file entry."""

    @abstractmethod
    def tensor_to_json(self, tensor) -> dict:
        """Serialize a syntactic tensor to the assignment-file schema."""

    @abstractmethod
    def tensor_of_values(self, element_type: str, shape, values):
        """Build a syntactic tensor from already-converted scalars."""

    @abstractmethod
    def random_scalar(self, element_type: str, rng, lo, hi):
        """A pseudo-random scalar in [lo, hi] (either bound may be None)."""


class ValueSet(ABC):
    """Descriptor for the set of values an element type denotes."""

    @abstractmethod
    def __contains__(self, scalar) -> bool:
        ...
