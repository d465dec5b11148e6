# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause

import json
from io import StringIO
from textwrap import dedent
from typing import List

import numpy as np
import pytest

from monorel.exceptions import MonorelError, SpecParseError, SpecValidationError
from monorel.gallery import random_maximal_monotone, volterra
from monorel.relation import from_matrix, relations_equal
from monorel.spec_file import BaseDocument, RelationSpec, dump_yaml


def test_matrix_spec():
    spec = RelationSpec.parse('{"kind": "matrix", "payload": [[1, 0], [0, 1]]}')
    assert spec.n == 2
    assert relations_equal(spec.to_relation(), from_matrix(np.eye(2)))


def test_graph_spec(r_ind):
    spec = RelationSpec.parse('{"kind": "graph", "payload": [[1, 0, 0, 0], [0, 0, 0, 1]]}')
    assert spec.n == 2
    assert relations_equal(spec.to_relation(), r_ind)


def test_empty_graph_spec():
    spec = RelationSpec.parse('{"kind": "graph", "n": 3, "payload": []}')
    A = spec.to_relation()
    assert A.n == 3
    assert A.dim == 0


def test_operator_on_subspace_spec(r_mix):
    document = {"kind": "operator_on_subspace", "domain": [[1, 0]], "matrix": [[1, 1], [-1, 1]]}
    spec = RelationSpec.parse(json.dumps(document))
    assert relations_equal(spec.to_relation(), r_mix)


def test_gallery_spec():
    spec = RelationSpec.parse('{"kind": "gallery", "name": "volterra", "n": 8}')
    assert relations_equal(spec.to_relation(), volterra(8))


@pytest.mark.parametrize(
    "document, message",
    [
        ({"kind": "graph", "payload": [[1, 0, 0]]}, "even length"),
        ({"kind": "graph", "payload": [[1, 0, 0, 0], [1, 0]]}, "mismatched lengths"),
        ({"kind": "graph", "payload": []}, "n must be a positive integer"),
        ({"kind": "matrix"}, "needs a payload"),
        ({"kind": "matrix", "payload": [[1, 2]]}, "square matrix"),
        ({"kind": "matrix", "n": 3, "payload": [[1]]}, "n = 3"),
        ({"kind": "matrix", "payload": [[1]], "name": "volterra"}, "does not take name"),
        ({"kind": "matrix", "payload": [[1]], "tol": -1.0}, "tol must be nonnegative"),
        ({"kind": "operator_on_subspace", "domain": [[1, 0, 0]], "matrix": [[1, 0], [0, 1]]}, "length 2"),
        ({"kind": "gallery", "name": "volterra"}, "n must be a positive integer"),
        ({"kind": "gallery", "name": "hilbert", "n": 4}, "Unknown gallery relation"),
    ],
)
def test_inconsistent_spec(document, message):
    with pytest.raises(SpecValidationError) as excinfo:
        RelationSpec.parse(json.dumps(document))

    assert message in str(excinfo.value)


@pytest.mark.parametrize(
    "document, field",
    [
        ({"kind": "tensor", "payload": [[1]]}, "kind"),
        ({"kind": "matrix", "payload": [[1, "a"]]}, "payload"),
        ({"kind": "matrix", "payload": [[1]], "colour": "red"}, "colour"),
        ({"payload": [[1]]}, "kind"),
    ],
)
def test_malformed_fields(document, field):
    with pytest.raises(SpecParseError) as excinfo:
        RelationSpec.parse(json.dumps(document))

    assert field in str(excinfo.value)
    assert "Failed to read RelationSpec" in str(excinfo.value)


@pytest.mark.parametrize(
    "text, field",
    [
        ('{"kind": "matrix", "payload": [[NaN, 0], [0, 1]]}', "payload"),
        ('{"kind": "matrix", "payload": [[1e400, 0], [0, 1]]}', "payload"),
        ('{"kind": "graph", "payload": [[1, 0, -Infinity, 0]]}', "payload"),
        ('{"kind": "operator_on_subspace", "domain": [[NaN, 0]], "matrix": [[1, 0], [0, 1]]}', "domain"),
        ('{"kind": "matrix", "payload": [[1]], "tol": NaN}', "tol"),
    ],
)
def test_non_finite_numbers(text, field):
    with pytest.raises(SpecParseError) as excinfo:
        RelationSpec.parse(text)

    assert field in str(excinfo.value)


def test_malformed_json():
    text = dedent(
        """\
        {"kind": "matrix",
         "payload": [[1, 2]
        """
    )
    with pytest.raises(SpecParseError) as excinfo:
        RelationSpec.parse(text)

    assert "Malformed JSON at line" in str(excinfo.value)


@pytest.mark.parametrize("text", ["", "   \n", "[1, 2]", "3"])
def test_not_a_document(text):
    with pytest.raises(SpecParseError):
        RelationSpec.parse(text)


def test_spec_errors_are_package_errors():
    assert issubclass(SpecParseError, MonorelError)
    assert issubclass(SpecValidationError, MonorelError)


def test_from_dict_wraps_validation_errors():
    with pytest.raises(SpecValidationError):
        RelationSpec.from_dict({"kind": "graph", "payload": [[1, 0, 0]]})


def test_round_trip_is_exact():
    A = random_maximal_monotone(5, 3, seed=0)
    spec = RelationSpec.from_relation(A)
    again = RelationSpec.parse(spec.to_json())
    assert again.payload == spec.payload
    assert relations_equal(again.to_relation(), A)


def test_to_json_skips_missing_fields():
    spec = RelationSpec.parse('{"kind": "gallery", "name": "rotation", "n": 4}')
    assert json.loads(spec.to_json()) == {"kind": "gallery", "n": 4, "name": "rotation"}


def test_yaml_skips_empty_keys():
    spec = RelationSpec.parse('{"kind": "gallery", "name": "rotation", "n": 4}')
    stream = StringIO()
    spec.yaml(stream)
    assert stream.getvalue() == "kind: gallery\nn: 4\nname: rotation\n"


def test_dump_yaml_with_indent():
    stream = StringIO()
    dump_yaml({"command": "check", "stuff": ["thing1", "thing2"], "missing": None}, stream)
    assert stream.getvalue() == "command: check\nstuff:\n  - thing1\n  - thing2\n"


def test_base_document_forbids_extra_keys():
    class Document(BaseDocument):
        attribute: str
        values: List[float] = []

    assert Document.parse('{"attribute": "correct"}').values == []
    with pytest.raises(SpecParseError) as excinfo:
        Document.parse('{"attribute": "correct", "more_attributes": "wrong"}')

    assert "more_attributes" in str(excinfo.value)
