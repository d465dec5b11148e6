# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from monorel.gallery import random_maximal_monotone
from monorel.relation import LinearRelation, from_graph, from_matrix

J = np.array([[0.0, -1.0], [1.0, 0.0]])


@pytest.fixture()
def rotation_matrix():
    return J.copy()


@pytest.fixture()
def r_ind() -> LinearRelation:
    """Normal cone of Y = R x {0} in R^2."""
    return from_graph([[1, 0, 0, 0], [0, 0, 0, 1]])


@pytest.fixture()
def r_mix() -> LinearRelation:
    """Identity on span{e1} with values x + span{e2}."""
    return from_graph([[1, 0, 1, 0], [0, 0, 0, 1]])


@pytest.fixture()
def r_rot() -> LinearRelation:
    return from_matrix(J)


def random_suite(count: int, max_n: int = 20, seed: int = 0) -> list[LinearRelation]:
    """Seeded maximal monotone relations covering every domain dimension."""
    rng = np.random.default_rng(seed)
    relations = []
    for i in range(count):
        n = int(rng.integers(1, max_n + 1))
        dim_dom = int(rng.integers(0, n + 1))
        relations.append(random_maximal_monotone(n, dim_dom, seed=seed * 100_003 + i))
    return relations


@pytest.fixture(scope="session")
def small_suite() -> list[LinearRelation]:
    return random_suite(40, max_n=8, seed=1)


@pytest.fixture(scope="session")
def large_suite() -> list[LinearRelation]:
    return random_suite(1000, max_n=20, seed=2)


@pytest.fixture()
def spec_file_factory(tmp_path):
    """A fixture returning a factory function that writes a spec document to a temporary file.

    Args to the factory:
        document: A dict that is dumped as JSON, or a string written as given.
        name: The file name inside the temporary directory.

    Returns:
        The path of the written file, as a string.

    """

    def create_spec_file(document: Any, name: str = "relation.json") -> str:
        path: Path = tmp_path / name
        text = document if isinstance(document, str) else json.dumps(document)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return create_spec_file
