# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
"""The JSON document describing a relation, and the YAML writer for text reports."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, TextIO, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator
from ruamel.yaml import YAML

from .exceptions import SpecParseError, SpecValidationError
from .gallery import NAMED, named
from .relation import LinearRelation, from_graph, from_matrix, make_maximal
from .subspace import RANK_TOL, span

logger = logging.getLogger(__name__)

yaml = YAML(typ="rt")
yaml.default_flow_style = False
yaml.block_seq_indent = 2
yaml.indent = 2

Rows = List[List[float]]


def _cleandict(d: Dict) -> Dict:
    return {k: v for k, v in d.items() if v is not None}


def dump_yaml(data: Any, stream: Union[TextIO, Path]) -> None:
    # Round-trip through JSON so only plain types reach ruamel.
    encoded = json.loads(json.dumps(data), object_hook=_cleandict)
    yaml.dump(encoded, stream)


def _square(rows: Rows, field: str) -> int:
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValueError(f"{field} must be a non-empty square matrix.")
    return n


class BaseDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    def yaml(self, stream: Union[TextIO, Path]) -> None:
        dump_yaml(json.loads(self.model_dump_json()), stream)

    @classmethod
    def parse(cls, text: str) -> Any:
        """Read a JSON document.

        Raises:
            SpecParseError if the text is not JSON or a field is missing or mistyped
            SpecValidationError if the fields are well-formed but inconsistent

        """
        if not text.strip():
            raise SpecParseError(f"Failed to read {cls.__name__}. The document appears to be empty.")
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecParseError(f"Malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}")
        if not isinstance(d, dict):
            raise SpecParseError(f"Failed to read {cls.__name__}: the document must be a JSON object.")
        return cls.from_dict(d)

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> Any:
        """Validate a decoded document, raising the package errors of :meth:`parse`."""
        try:
            return cls(**d)
        except ValidationError as e:
            if all(error["type"] == "value_error" for error in e.errors()):
                raise SpecValidationError(f"Inconsistent {cls.__name__}\n{str(e)}")
            fields = ", ".join(".".join(str(part) for part in error["loc"]) for error in e.errors())
            raise SpecParseError(f"Failed to read {cls.__name__} (fields: {fields})\n{str(e)}")

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


class RelationSpec(BaseDocument):
    """A relation on R^n given as a matrix, graph vectors, an operator on a subspace or a gallery name.

    ``payload`` holds the matrix rows for ``matrix`` and the graph vectors
    (u; v) for ``graph``. ``operator_on_subspace`` uses ``domain`` (spanning
    vectors) and ``matrix``. ``n`` is inferred when it can be.
    """

    kind: Literal["matrix", "graph", "operator_on_subspace", "gallery"]
    n: Optional[int] = None
    payload: Optional[Rows] = None
    domain: Optional[Rows] = None
    matrix: Optional[Rows] = None
    name: Optional[str] = None
    tol: Optional[float] = None

    @model_validator(mode="after")
    def dimensions_match_kind(self) -> "RelationSpec":
        allowed = {
            "matrix": {"payload"},
            "graph": {"payload"},
            "operator_on_subspace": {"domain", "matrix"},
            "gallery": {"name"},
        }[self.kind]
        given = {f for f in ("payload", "domain", "matrix", "name") if getattr(self, f) is not None}
        extra = sorted(given - allowed)
        if extra:
            raise ValueError(f"A {self.kind} spec does not take {', '.join(extra)}.")
        if self.tol is not None and self.tol < 0:
            raise ValueError(f"tol must be nonnegative, got {self.tol}.")

        inferred = getattr(self, f"_infer_{self.kind}")()
        if self.n is not None and inferred is not None and self.n != inferred:
            raise ValueError(f"n = {self.n} but the {self.kind} data has dimension {inferred}.")
        n = self.n if self.n is not None else inferred
        if n is None or n < 1:
            raise ValueError("n must be a positive integer.")
        self.n = n
        return self

    def _infer_matrix(self) -> Optional[int]:
        if self.payload is None:
            raise ValueError("A matrix spec needs a payload.")
        return _square(self.payload, "payload")

    def _infer_graph(self) -> Optional[int]:
        if self.payload is None:
            raise ValueError("A graph spec needs a payload.")
        lengths = sorted({len(row) for row in self.payload})
        if len(lengths) > 1:
            raise ValueError(f"Graph vectors have mismatched lengths {lengths}.")
        if lengths and lengths[0] % 2:
            raise ValueError(f"Graph vectors must have even length, got {lengths[0]}.")
        return lengths[0] // 2 if lengths else None

    def _infer_operator_on_subspace(self) -> Optional[int]:
        if self.domain is None or self.matrix is None:
            raise ValueError("An operator_on_subspace spec needs domain and matrix.")
        n = _square(self.matrix, "matrix")
        if any(len(row) != n for row in self.domain):
            raise ValueError(f"Domain vectors must have length {n}.")
        return n

    def _infer_gallery(self) -> Optional[int]:
        if self.name is None:
            raise ValueError("A gallery spec needs a name.")
        if self.name not in NAMED:
            raise ValueError(f"Unknown gallery relation {self.name!r}; choose from {sorted(NAMED)}.")
        return None

    def to_relation(self, tol: float = RANK_TOL) -> LinearRelation:
        assert self.n is not None
        if self.kind == "matrix":
            return from_matrix(np.array(self.payload), tol)
        if self.kind == "graph":
            return from_graph(self.payload or [], n=self.n, tol=tol)
        if self.kind == "operator_on_subspace":
            return make_maximal(span(self.domain or [], tol, ambient_dim=self.n), np.array(self.matrix), tol)
        assert self.name is not None
        return named(self.name, self.n)

    @classmethod
    def from_relation(cls, A: LinearRelation, tol: Optional[float] = None) -> "RelationSpec":
        return cls.from_dict({"kind": "graph", "n": A.n, "payload": A.graph.basis.T.tolist(), "tol": tol})
