import json
from pathlib import Path

import pytest

from vnnlib2 import (
    MINI_THEORY,
    TypeCheckError,
    check_assignment,
    check_models,
    eval_query,
    load_model_file,
    parse_query,
    type_query,
    wrap_theory,
)
from vnnlib2.lexer import SourceError

CORPUS = Path(__file__).parent / "corpus"
GOLDEN = CORPUS / "golden"
NEGATIVE = CORPUS / "negative"


@pytest.fixture(scope="session")
def golden_manifest():
    return json.loads((GOLDEN / "manifest.json").read_text())


@pytest.fixture(scope="session")
def negative_manifest():
    return json.loads((NEGATIVE / "manifest.json").read_text())


def run_case(case: dict, base: Path) -> dict:
    """Drive a manifest case through the library, mirroring the CLI flow.

    Returns {"status": "ok"|"satisfied"|"violated"} or
    {"status": "error", "kind": ..., "code": ...}.
    """
    theory = wrap_theory(MINI_THEORY) if case.get("real") else MINI_THEORY
    try:
        query = parse_query((base / case["query"]).read_text())
    except SourceError:
        return {"status": "error", "kind": "parse"}
    try:
        type_query(query, theory)
        models = {
            name: load_model_file(str(base / path))
            for name, path in case.get("models", {}).items()
        }
        if case.get("models") is not None and "models" in case:
            check_models(query, models, theory)
        if "assignment" in case:
            doc = json.loads((base / case["assignment"]).read_text())
            assignment = {
                name: theory.tensor_from_json(obj, name)
                for name, obj in doc.items()
            }
            check_assignment(query, assignment, theory)
            verdict = eval_query(query, models, assignment, theory)
            return {"status": "satisfied" if verdict.satisfied else "violated"}
    except TypeCheckError as exc:
        return {"status": "error", "kind": "type", "code": exc.code.value}
    return {"status": "ok"}
