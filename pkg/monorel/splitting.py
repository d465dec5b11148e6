# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
"""Resolvents and the proximal point and Douglas-Rachford iterations."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np
import numpy.typing as npt
import scipy.linalg as spla

from .decomposition import QuadraticOnSubspace, subdifferential_graph
from .exceptions import DimensionMismatchError, InconsistencyError, InvalidInputError
from .monotone import is_maximal_monotone
from .relation import LinearRelation, make_maximal
from .subspace import RANK_TOL, Array, as_vector, projector

logger = logging.getLogger(__name__)

DEFAULT_LAMBDA = 1.0
DEFAULT_SOLVER_TOL = 1e-6
DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True, eq=False)
class IterateTrace:
    """The iterates of a solver run and their residuals.

    Attributes:
        iterates: k x n array, one iterate per row, starting with x0.
        residuals: The residual of every iterate.
        converged: True iff the last residual is within the tolerance.
        iterations_used: Number of steps taken after x0.

    """

    iterates: Array
    residuals: Array
    converged: bool
    iterations_used: int

    @property
    def final(self) -> Array:
        return self.iterates[-1]

    @property
    def final_residual(self) -> float:
        return float(self.residuals[-1])

    def summary(self) -> Dict[str, Any]:
        return {
            "converged": self.converged,
            "iterations_used": self.iterations_used,
            "final_residual": self.final_residual,
            "final_iterate": self.final.tolist(),
            "residuals": self.residuals.tolist(),
        }


def _check_lambda(lam: float) -> None:
    if not lam > 0:
        raise InvalidInputError(f"The resolvent parameter must be positive, got {lam}.")


def resolvent(A: LinearRelation, lam: float = DEFAULT_LAMBDA, tol: float = RANK_TOL) -> Array:
    """Return the matrix of J = (I + lam A)^-1.

    With graph basis blocks U and V, gra J = {((U + lam V) c, U c)}, so
    J = U (U + lam V)^-1.

    Raises:
        InvalidInputError if lam <= 0 or A is not maximal monotone
        InconsistencyError if U + lam V is singular for a maximal monotone A

    """
    _check_lambda(lam)
    certificate = is_maximal_monotone(A, tol)
    if not certificate.holds:
        raise InvalidInputError(f"The resolvent needs a maximal monotone relation: {certificate.detail}")

    U, V = A.primal_block, A.dual_block
    W = U + lam * V
    singular_values = spla.svdvals(W)
    if singular_values[-1] <= tol * singular_values[0]:
        raise InconsistencyError(
            f"U + lam V is singular (smallest singular value {singular_values[-1]:.3e}) "
            "although A passed the maximality test."
        )
    return spla.solve(W.T, U.T).T


def resolvent_residual(A: LinearRelation, x: npt.ArrayLike, lam: float = DEFAULT_LAMBDA) -> float:
    """The distance ||x - J x|| / lam, which vanishes exactly at zeros of A."""
    vector = as_vector(x, A.n)
    return float(np.linalg.norm(vector - resolvent(A, lam) @ vector) / lam)


def proximal_point(
    A: LinearRelation,
    x0: npt.ArrayLike,
    lam: float = DEFAULT_LAMBDA,
    tol: float = DEFAULT_SOLVER_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> IterateTrace:
    """Iterate x_{k+1} = J x_k until ||x_k - J x_k|| / lam <= tol."""
    R = resolvent(A, lam)
    x = as_vector(x0, A.n)
    iterates: List[Array] = [x]
    residuals: List[float] = [float(np.linalg.norm(x - R @ x) / lam)]

    steps = 0
    while residuals[-1] > tol and steps < max_iter:
        x = R @ x
        steps += 1
        iterates.append(x)
        residuals.append(float(np.linalg.norm(x - R @ x) / lam))

    converged = residuals[-1] <= tol
    logger.info(f"proximal point stopped after {steps} steps, residual {residuals[-1]:.3e}")
    return IterateTrace(np.array(iterates), np.array(residuals), converged, steps)


def douglas_rachford(
    f: QuadraticOnSubspace,
    S: npt.ArrayLike,
    x0: npt.ArrayLike,
    lam: float = DEFAULT_LAMBDA,
    tol: float = DEFAULT_SOLVER_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> IterateTrace:
    """Find a zero of df + S by splitting df from S maximalized on dom f.

    The recorded iterates are the shadow points x_k = J_1 z_k. The residual is
    ||J_2(2 x_k - z_k) - x_k|| / lam, the length of the step on z.
    """
    _check_lambda(lam)
    n = f.n
    S = np.asarray(S, dtype=float)
    if S.shape != (n, n):
        raise DimensionMismatchError(f"S must be {n}x{n}, got shape {S.shape}.")

    P = projector(f.domain)
    R1 = resolvent(subdifferential_graph(f), lam)
    R2 = resolvent(make_maximal(f.domain, P @ S @ P), lam)

    z = as_vector(x0, n)
    iterates: List[Array] = []
    residuals: List[float] = []
    steps = 0
    while True:
        x = R1 @ z
        y = R2 @ (2 * x - z)
        iterates.append(x)
        residuals.append(float(np.linalg.norm(y - x) / lam))
        if residuals[-1] <= tol or steps >= max_iter:
            break
        z = z + y - x
        steps += 1

    converged = residuals[-1] <= tol
    logger.info(f"Douglas-Rachford stopped after {steps} steps, residual {residuals[-1]:.3e}")
    return IterateTrace(np.array(iterates), np.array(residuals), converged, steps)
