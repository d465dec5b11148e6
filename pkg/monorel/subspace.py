# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
"""Linear subspaces of R^k stored through orthonormal bases.

Every rank decision in the package goes through :func:`numerical_rank`, so
spans, complements, kernels and pseudo-inverses agree on what counts as zero.
"""
from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg as spla

from .exceptions import DimensionMismatchError

Array = npt.NDArray[np.float64]

RANK_TOL = 1e-10
CONTAINMENT_TOL = 1e-8


def _svd(matrix: Array, full_matrices: bool = False) -> Tuple[Array, Array, Array]:
    return spla.svd(matrix, full_matrices=full_matrices, lapack_driver="gesvd")


def numerical_rank(singular_values: Array, tol: float, scale: Optional[float] = None) -> int:
    """Count singular values above ``tol * scale``.

    ``scale`` defaults to the largest singular value. Callers working on blocks
    of an orthonormal basis pass ``scale=1.0`` so that pure rounding noise is
    never promoted to rank.
    """
    if singular_values.size == 0:
        return 0
    reference = singular_values[0] if scale is None else scale
    if reference == 0:
        return 0
    return int(np.count_nonzero(singular_values > tol * reference))


def as_vector(x: npt.ArrayLike, dim: int) -> Array:
    vector = np.asarray(x, dtype=float).ravel()
    if vector.size != dim:
        raise DimensionMismatchError(f"Expected a vector of length {dim}, got length {vector.size}.")
    return vector


class Subspace:
    """A linear subspace of R^k.

    Attributes:
        ambient_dim: The dimension k of the surrounding space.
        basis: A read-only k x d array whose columns are orthonormal.
        tol: The rank tolerance used when the subspace was built.

    Args:
        basis: Orthonormal columns. They are trusted as given; use :func:`span`
            or :func:`column_span` to build a subspace from arbitrary vectors.
        tol: Rank tolerance recorded with the subspace.

    """

    __slots__ = ("ambient_dim", "basis", "tol")

    def __init__(self, basis: npt.ArrayLike, tol: float = RANK_TOL):
        matrix = np.array(basis, dtype=float)
        if matrix.ndim != 2:
            raise DimensionMismatchError(f"A basis must be a 2-D array, got {matrix.ndim} dimensions.")
        if matrix.shape[0] < 1:
            raise DimensionMismatchError("The ambient dimension must be positive.")
        if matrix.shape[1] > matrix.shape[0]:
            raise DimensionMismatchError(
                f"{matrix.shape[1]} basis vectors cannot be independent in R^{matrix.shape[0]}."
            )
        matrix.setflags(write=False)
        self.ambient_dim: int = matrix.shape[0]
        self.basis: Array = matrix
        self.tol = tol

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def zero_subspace(ambient_dim: int, tol: float = RANK_TOL) -> Subspace:
    return Subspace(np.zeros((ambient_dim, 0)), tol)


def full_space(ambient_dim: int, tol: float = RANK_TOL) -> Subspace:
    return Subspace(np.eye(ambient_dim), tol)


def column_span(matrix: npt.ArrayLike, tol: float = RANK_TOL, scale: Optional[float] = None) -> Subspace:
    """Return the span of the columns of ``matrix``."""
    columns = np.asarray(matrix, dtype=float)
    if columns.ndim != 2:
        raise DimensionMismatchError(f"Expected a 2-D array of columns, got {columns.ndim} dimensions.")
    if columns.shape[1] == 0:
        return zero_subspace(columns.shape[0], tol)

    U, s, _ = _svd(columns)
    rank = numerical_rank(s, tol, scale)
    return Subspace(U[:, :rank], tol)


def span(
    vectors: Sequence[npt.ArrayLike],
    tol: float = RANK_TOL,
    ambient_dim: Optional[int] = None,
) -> Subspace:
    """Return the subspace spanned by ``vectors``.

    Singular values at or below ``tol`` times the largest one are dropped.
    An empty list needs ``ambient_dim``.

    Raises:
        DimensionMismatchError if the vectors differ in length

    """
    rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if not rows:
        if ambient_dim is None:
            raise DimensionMismatchError("The ambient dimension of an empty span must be given.")
        return zero_subspace(ambient_dim, tol)

    lengths = sorted({row.size for row in rows})
    if len(lengths) > 1:
        raise DimensionMismatchError(f"Vectors have mismatched lengths {lengths}.")
    if ambient_dim is not None and lengths[0] != ambient_dim:
        raise DimensionMismatchError(f"Vectors have length {lengths[0]}, expected {ambient_dim}.")

    return column_span(np.column_stack(rows), tol)


def _check_ambient(S: Subspace, T: Subspace) -> None:
    if S.ambient_dim != T.ambient_dim:
        raise DimensionMismatchError(
            f"Subspaces live in R^{S.ambient_dim} and R^{T.ambient_dim}."
        )


def complement(S: Subspace) -> Subspace:
    """Return the orthogonal complement, of dimension exactly k - dim S."""
    if S.dim == 0:
        return full_space(S.ambient_dim, S.tol)
    if S.dim == S.ambient_dim:
        return zero_subspace(S.ambient_dim, S.tol)

    U, _, _ = _svd(S.basis, full_matrices=True)
    return Subspace(U[:, S.dim :], S.tol)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    return column_span(np.hstack([S.basis, T.basis]), max(S.tol, T.tol))


def intersect(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    return complement(subspace_sum(complement(S), complement(T)))


def projector(S: Subspace) -> Array:
    return S.basis @ S.basis.T


def project(S: Subspace, x: npt.ArrayLike) -> Array:
    vector = as_vector(x, S.ambient_dim)
    return S.basis @ (S.basis.T @ vector)


def contains(S: Subspace, T: Subspace, tol: float = CONTAINMENT_TOL) -> bool:
    """Return True if T is a subspace of S, up to ``tol`` in Frobenius norm."""
    _check_ambient(S, T)
    if T.dim == 0:
        return True
    residual = T.basis - S.basis @ (S.basis.T @ T.basis)
    return bool(np.linalg.norm(residual) <= tol)


def equals(S: Subspace, T: Subspace, tol: float = CONTAINMENT_TOL) -> bool:
    return contains(S, T, tol) and contains(T, S, tol)


def subspace_distance(S: Subspace, T: Subspace) -> float:
    """Frobenius distance between the orthogonal projectors onto S and T."""
    _check_ambient(S, T)
    return float(np.linalg.norm(projector(S) - projector(T)))


def range_and_kernel(
    matrix: Array, tol: float = RANK_TOL, scale: Optional[float] = None
) -> Tuple[Array, Array]:
    """Orthonormal bases of the range and the kernel of ``matrix`` from one SVD."""
    m, p = matrix.shape
    if p == 0:
        return np.zeros((m, 0)), np.zeros((0, 0))
    if m == 0:
        return np.zeros((0, 0)), np.eye(p)

    U, s, Vh = _svd(matrix, full_matrices=True)
    rank = numerical_rank(s, tol, scale)
    return U[:, :rank], Vh[rank:].T


def kernel(matrix: Array, tol: float = RANK_TOL, scale: Optional[float] = None) -> Array:
    return range_and_kernel(matrix, tol, scale)[1]


def pseudo_inverse(matrix: Array, tol: float = RANK_TOL, scale: Optional[float] = None) -> Array:
    """Moore-Penrose inverse truncated with the same rank policy as :func:`column_span`."""
    m, p = matrix.shape
    if m == 0 or p == 0:
        return np.zeros((p, m))

    U, s, Vh = _svd(matrix)
    rank = numerical_rank(s, tol, scale)
    return (Vh[:rank].T / s[:rank]) @ U[:, :rank].T

