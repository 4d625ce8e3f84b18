import json

import pytest

from hopftwist import InputError, ValidationError
from hopftwist.catalog import CATALOG_KEYS, catalog_text, load_example
from hopftwist.document import load_definition


def minimal_doc(**overrides):
    doc = {
        "name": "tiny",
        "group": {"laurent": [], "unipotent": ["X", "V"], "q": {}},
        "twist": {"kind": "expR",
                  "support": {"laurent": [], "unipotent": ["X", "V"]},
                  "pairs": [["X", "V", "1"]], "scale": "1/2",
                  "embed": {"X": "X", "V": "V"}},
        "tasks": [],
    }
    doc.update(overrides)
    return doc


def test_load_dim4_base_example():
    doc = load_example("dim4-base")
    assert len(doc.presentation.vars.unipotent) == 4
    assert doc.twist.kind == "expR"


def test_undeclared_variable_in_defect():
    raw = minimal_doc(group={"laurent": [], "unipotent": ["X", "V"],
                             "q": {"V": [["Z", "X", "1"]]}})
    with pytest.raises(InputError) as exc:
        load_definition(json.dumps(raw))
    assert "Z" in str(exc.value)


def test_empty_tasks_is_valid_noop():
    from hopftwist.catalog import run_tasks
    doc = load_definition(json.dumps(minimal_doc()))
    report, status = run_tasks(doc)
    assert status == 0
    assert "SUMMARY PASS tasks=0" in report


def test_invalid_twist_rejected_at_load():
    raw = minimal_doc()
    raw["twist"]["embed"] = {"X": "X^2", "V": "V"}
    with pytest.raises(ValidationError):
        load_definition(json.dumps(raw))


def test_bad_json_is_input_error():
    with pytest.raises(InputError):
        load_definition("{not json")


def test_unknown_task_op_rejected():
    raw = minimal_doc(tasks=[{"op": "frobnicate"}])
    with pytest.raises(InputError):
        load_definition(json.dumps(raw))


def test_unknown_point_coordinate_rejected():
    raw = minimal_doc(points={"g": {"Z": "1"}})
    with pytest.raises(InputError):
        load_definition(json.dumps(raw))


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_catalog_round_trip(key):
    doc = load_example(key)
    again = load_definition(json.dumps(doc.to_dict()))
    assert doc == again
    assert doc.presentation == again.presentation
    assert doc.tasks == again.tasks


@pytest.mark.parametrize("key", CATALOG_KEYS)
def test_catalog_documents_parse_and_validate(key):
    from hopftwist import validate_presentation
    doc = load_example(key)
    errors, _ = validate_presentation(doc.presentation)
    assert errors == []
