# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest
from numpy.testing import assert_allclose

from monorel.decomposition import QuadraticOnSubspace, bw_decompose
from monorel.exceptions import DimensionMismatchError, InvalidInputError
from monorel.gallery import random_maximal_monotone
from monorel.relation import add, from_graph, from_matrix
from monorel.splitting import (
    DEFAULT_MAX_ITER,
    DEFAULT_SOLVER_TOL,
    IterateTrace,
    douglas_rachford,
    proximal_point,
    resolvent,
    resolvent_residual,
)
from monorel.subspace import full_space, span


def test_resolvent_examples(r_ind, r_rot):
    assert_allclose(resolvent(from_matrix(np.eye(3))), 0.5 * np.eye(3), atol=1e-12)
    assert_allclose(resolvent(from_matrix(np.eye(2)), lam=2.0), np.eye(2) / 3, atol=1e-12)
    assert_allclose(resolvent(r_ind), np.diag([1.0, 0.0]), atol=1e-12)
    assert_allclose(resolvent(r_rot), 0.5 * np.array([[1.0, 1.0], [-1.0, 1.0]]), atol=1e-12)


@pytest.mark.parametrize("lam", [0.0, -1.0])
def test_resolvent_needs_positive_lambda(r_rot, lam):
    with pytest.raises(InvalidInputError) as excinfo:
        resolvent(r_rot, lam)

    assert "positive" in str(excinfo.value)


def test_resolvent_needs_maximal():
    with pytest.raises(InvalidInputError):
        resolvent(from_graph([[1, 0, 0, 0]]))
    with pytest.raises(InvalidInputError):
        resolvent(from_matrix(-np.eye(2)))


def test_resolvent_residual(r_ind):
    assert resolvent_residual(r_ind, [3, 0]) == pytest.approx(0.0, abs=1e-12)
    assert resolvent_residual(r_ind, [3, 4]) == pytest.approx(4.0)


def test_proximal_point_rotation(r_rot):
    trace = proximal_point(r_rot, [1, 0])
    assert trace.converged
    assert trace.iterations_used == 39
    assert trace.final_residual <= DEFAULT_SOLVER_TOL
    assert_allclose(trace.residuals, 2.0 ** (-(np.arange(40) + 1) / 2), rtol=1e-9)
    assert np.linalg.norm(trace.final) <= 1e-5


def test_proximal_point_from_ones(r_rot):
    trace = proximal_point(r_rot, [1, 1])
    assert trace.converged
    assert trace.iterations_used == 40


def test_proximal_point_identity():
    trace = proximal_point(from_matrix(np.eye(2)), [4, -2])
    assert trace.converged
    assert_allclose(trace.final, [0, 0], atol=1e-5)


def test_proximal_point_normal_cone(r_ind):
    trace = proximal_point(r_ind, [3, 4])
    assert trace.converged
    assert trace.iterations_used == 1
    assert_allclose(trace.final, [3, 0], atol=1e-12)
    assert trace.iterates.shape == (2, 2)


def test_proximal_point_budget(r_rot):
    trace = proximal_point(r_rot, [1, 0], max_iter=5)
    assert not trace.converged
    assert trace.iterations_used == 5
    assert len(trace.iterates) == 6
    assert len(trace.residuals) == 6


def test_proximal_point_starts_at_zero(r_rot):
    trace = proximal_point(r_rot, [0, 0])
    assert trace.converged
    assert trace.iterations_used == 0


def test_douglas_rachford_rotation(rotation_matrix):
    f = QuadraticOnSubspace(full_space(2), np.eye(2))
    trace = douglas_rachford(f, rotation_matrix, [1, 0])
    assert trace.converged
    assert trace.iterations_used == 19
    assert_allclose(trace.residuals, 2.0 ** -(np.arange(20) + 1.0), rtol=1e-9)


def test_douglas_rachford_indicator():
    f = QuadraticOnSubspace(span([[1, 0]]), np.zeros((2, 2)))
    trace = douglas_rachford(f, np.zeros((2, 2)), [3, 4])
    assert trace.converged
    assert trace.iterations_used == 0
    assert_allclose(trace.final, [3, 0], atol=1e-12)


def test_douglas_rachford_budget(rotation_matrix):
    f = QuadraticOnSubspace(full_space(2), np.eye(2))
    trace = douglas_rachford(f, rotation_matrix, [1, 0], max_iter=3)
    assert not trace.converged
    assert trace.iterations_used == 3
    assert trace.final_residual == pytest.approx(1 / 16)


def test_douglas_rachford_errors(rotation_matrix):
    f = QuadraticOnSubspace(full_space(2), np.eye(2))
    with pytest.raises(InvalidInputError):
        douglas_rachford(f, rotation_matrix, [1, 0], lam=0.0)
    with pytest.raises(DimensionMismatchError):
        douglas_rachford(f, np.eye(3), [1, 0])
    with pytest.raises(InvalidInputError):
        douglas_rachford(QuadraticOnSubspace(full_space(2), -np.eye(2)), rotation_matrix, [1, 0])


def test_trace_summary(r_rot):
    summary = proximal_point(r_rot, [1, 0], max_iter=2).summary()
    assert set(summary) == {"converged", "iterations_used", "final_residual", "final_iterate", "residuals"}
    assert summary["iterations_used"] == 2
    assert len(summary["residuals"]) == 3
    assert isinstance(summary["final_iterate"], list)


def test_trace_properties():
    trace = IterateTrace(np.array([[1.0, 0.0], [0.5, 0.0]]), np.array([0.5, 0.25]), False, 1)
    assert_allclose(trace.final, [0.5, 0.0])
    assert trace.final_residual == 0.25


def test_default_budget():
    assert DEFAULT_MAX_ITER == 10_000
    assert DEFAULT_SOLVER_TOL == 1e-6


@pytest.mark.parametrize("seed", range(10))
def test_resolvent_is_firmly_nonexpansive(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    A = random_maximal_monotone(n, int(rng.integers(0, n + 1)), seed=seed)
    R = resolvent(A, lam=float(rng.uniform(0.1, 3.0)))
    for _ in range(10):
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        d = R @ x - R @ y
        assert d @ d <= d @ (x - y) + 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_proximal_point_and_douglas_rachford_agree(seed):
    n = 5
    A = add(random_maximal_monotone(n, n, seed=seed), from_matrix(np.eye(n)))
    dec = bw_decompose(A)
    x0 = np.ones(n)

    pp = proximal_point(A, x0, tol=1e-10)
    dr = douglas_rachford(dec.f, dec.S, x0, tol=1e-10)
    assert pp.converged
    assert dr.converged
    assert np.linalg.norm(pp.final - dr.final) <= 1e-5
    assert resolvent_residual(A, dr.final) <= 1e-6
