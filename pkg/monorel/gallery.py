# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
"""Example relations: discretized integral and difference operators, the
partial-sum shift on sequences, small named relations and a seeded generator.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import numpy.typing as npt

from .exceptions import InvalidInputError
from .relation import LinearRelation, from_matrix, inverse, make_maximal, normal_cone
from .subspace import Array, Subspace, column_span, complement, span

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridConvention:
    """Right-endpoint grid t_i = i h, i = 1..n, on [0, 1] with h = 1/n.

    A function x is stored as sqrt(h) x(t_i), so the Euclidean pairing of two
    samples is the rectangle rule for the L2 pairing on [0, 1].
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInputError(f"A grid needs at least one cell, got n = {self.n}.")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def points(self) -> Array:
        return np.arange(1, self.n + 1) * self.h

    def sample(self, fn: Callable[[Array], npt.ArrayLike]) -> Array:
        values = np.broadcast_to(np.asarray(fn(self.points), dtype=float), (self.n,))
        return np.sqrt(self.h) * values

    def ones(self) -> Array:
        return self.sample(np.ones_like)


def _check_size(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise InvalidInputError(f"Expected n >= {minimum}, got {n}.")


def volterra(n: int) -> LinearRelation:
    """Integration x -> (t -> integral of x over [0, t]) on the grid: h times lower-triangular ones."""
    _check_size(n)
    grid = GridConvention(n)
    return from_matrix(grid.h * np.tril(np.ones((n, n))))


def derivative_relation(n: int) -> LinearRelation:
    """Differentiation with x(0) = 0, the inverse of :func:`volterra`."""
    return inverse(volterra(n))


def shift_matrix(n: int) -> Array:
    """(S y)_k = y_k / 2 + sum of y_i over i < k."""
    _check_size(n)
    return 0.5 * np.eye(n) + np.tril(np.ones((n, n)), k=-1)


def shift_skew(n: int) -> LinearRelation:
    """The shift on {y : sum y_i = 0} with values S y + span{1}."""
    _check_size(n, 2)
    D = complement(span([np.ones(n)]))
    return make_maximal(D, shift_matrix(n))


def _coordinate_subspace(n: int, k: int) -> np.ndarray:
    if not 0 <= k <= n:
        raise InvalidInputError(f"Expected 0 <= k <= {n}, got k = {k}.")
    return np.eye(n)[:, :k]


def rotation(n: int) -> LinearRelation:
    """Quarter turns in consecutive coordinate planes; a trailing odd coordinate maps to 0."""
    _check_size(n)
    M = np.zeros((n, n))
    for i in range(0, n - 1, 2):
        M[i, i + 1] = -1.0
        M[i + 1, i] = 1.0
    return from_matrix(M)


def subspace_indicator(n: int, k: int) -> LinearRelation:
    """Normal cone of span{e_1, ..., e_k}."""
    _check_size(n)
    return normal_cone(column_span(_coordinate_subspace(n, k)))


def restricted_identity(n: int, k: int) -> LinearRelation:
    """The identity restricted to span{e_1, ..., e_k} and made maximal."""
    _check_size(n)
    return make_maximal(column_span(_coordinate_subspace(n, k)), np.eye(n))


NAMED: Dict[str, Callable[[int], LinearRelation]] = {
    "volterra": volterra,
    "derivative": derivative_relation,
    "shift_skew": shift_skew,
    "rotation": rotation,
    "subspace_indicator": lambda n: subspace_indicator(n, n // 2),
    "restricted_identity": lambda n: restricted_identity(n, n // 2),
}


def named(name: str, n: int) -> LinearRelation:
    """Build a gallery relation by name.

    Raises:
        InvalidInputError if the name is unknown

    """
    if name not in NAMED:
        raise InvalidInputError(f"Unknown gallery relation {name!r}; choose from {sorted(NAMED)}.")
    return NAMED[name](n)


def random_operator_on_subspace(
    n: int,
    dim_dom: int,
    psd_scale: float = 1.0,
    skew_scale: float = 1.0,
    seed: Optional[int] = None,
) -> Tuple[Subspace, Array]:
    """Draw a random dim_dom-dimensional D and M = psd_scale G G^T + skew_scale (K - K^T).

    Raises:
        InvalidInputError if dim_dom is outside [0, n] or psd_scale is negative

    """
    _check_size(n)
    if not 0 <= dim_dom <= n:
        raise InvalidInputError(f"dim_dom must lie in [0, {n}], got {dim_dom}.")
    if psd_scale < 0:
        raise InvalidInputError(f"psd_scale must be nonnegative, got {psd_scale}.")

    rng = np.random.default_rng(seed)
    D = column_span(rng.standard_normal((n, dim_dom)))
    G = rng.standard_normal((n, n))
    K = rng.standard_normal((n, n))
    return D, psd_scale * G @ G.T + skew_scale * (K - K.T)


def random_maximal_monotone(
    n: int,
    dim_dom: int,
    psd_scale: float = 1.0,
    skew_scale: float = 1.0,
    seed: Optional[int] = None,
) -> LinearRelation:
    """Return make_maximal(D, M) for the draw of :func:`random_operator_on_subspace`.

    The result is deterministic for a fixed seed.
    """
    D, M = random_operator_on_subspace(n, dim_dom, psd_scale, skew_scale, seed)
    logger.info(f"drawing a maximal monotone relation on R^{n} with seed {seed}")
    return make_maximal(D, M)
