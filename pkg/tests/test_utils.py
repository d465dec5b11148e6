# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause

import io
import os

import pytest

from monorel.exceptions import MonorelError
from monorel.utils import TOLERANCE_ENV_VAR, env_variable, read_text, resolve_tolerance


def test_env_var_context():
    foo = "_monorel_foo"
    assert foo not in os.environ

    with env_variable(foo, "bar"):
        assert os.getenv(foo) == "bar"

    assert foo not in os.environ


def test_replace_env_var_context():
    foo = "_monorel_foo"
    os.environ[foo] = "bar"

    with env_variable(foo, "baz"):
        assert os.getenv(foo) == "baz"

    assert os.getenv(foo) == "bar"
    del os.environ[foo]


def test_tolerance_precedence(monkeypatch):
    monkeypatch.delenv(TOLERANCE_ENV_VAR, raising=False)
    assert resolve_tolerance(None, None, 1e-10) == 1e-10

    with env_variable(TOLERANCE_ENV_VAR, "1e-7"):
        assert resolve_tolerance(None, None, 1e-10) == 1e-7
        assert resolve_tolerance(None, 1e-6, 1e-10) == 1e-6
        assert resolve_tolerance(1e-3, 1e-6, 1e-10) == 1e-3


@pytest.mark.parametrize("raw", ["tiny", "-1e-3"])
def test_bad_tolerance_from_environment(raw):
    with env_variable(TOLERANCE_ENV_VAR, raw):
        with pytest.raises(MonorelError):
            resolve_tolerance(None, None, 1e-10)


def test_negative_flag_tolerance():
    with pytest.raises(MonorelError) as excinfo:
        resolve_tolerance(-1.0, None, 1e-10)

    assert "nonnegative" in str(excinfo.value)


def test_read_text(tmp_path, monkeypatch):
    path = tmp_path / "spec.json"
    path.write_text('{"kind": "matrix"}')
    assert read_text(path) == '{"kind": "matrix"}'

    monkeypatch.setattr("sys.stdin", io.StringIO("from stdin"))
    assert read_text("-") == "from stdin"

    with pytest.raises(MonorelError) as excinfo:
        read_text(tmp_path / "missing.json")

    assert "No spec file was found" in str(excinfo.value)
