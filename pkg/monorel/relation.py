# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
"""Linear relations on R^n, represented by their graphs in R^n x R^n.

A graph vector is stored as the concatenation (u; v), meaning the pair
(x, x*) = (u, v). The primal block is always the first n coordinates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import numpy as np
import numpy.typing as npt
import scipy.linalg as spla

from .exceptions import DimensionMismatchError, InvalidInputError
from .subspace import (
    CONTAINMENT_TOL,
    RANK_TOL,
    Array,
    Subspace,
    as_vector,
    column_span,
    complement,
    contains,
    equals,
    kernel,
    project,
    projector,
    pseudo_inverse,
    range_and_kernel,
    span,
    subspace_distance,
)

logger = logging.getLogger(__name__)


class RelationParts(NamedTuple):
    dom: Subspace
    ran: Subspace
    ker: Subspace
    image_of_zero: Subspace


@dataclass(frozen=True, eq=False)
class AffineSet:
    """The value set ``point + direction`` of a relation, or the empty set.

    ``point`` is None for the empty set.
    """

    point: Optional[Array]
    direction: Subspace

    @property
    def is_empty(self) -> bool:
        return self.point is None

    def contains(self, z: npt.ArrayLike, tol: float = CONTAINMENT_TOL) -> bool:
        if self.point is None:
            return False
        offset = as_vector(z, self.direction.ambient_dim) - self.point
        residual = np.linalg.norm(offset - project(self.direction, offset))
        return bool(residual <= tol * max(1.0, float(np.linalg.norm(offset))))


class LinearRelation:
    """A set-valued linear map A on R^n given by its graph.

    Attributes:
        n: Dimension of the space X = X* = R^n.
        graph: The subspace gra A of R^(2n).

    Args:
        n: Dimension of the space.
        graph: A subspace of R^(2n).

    Raises:
        DimensionMismatchError if the graph does not live in R^(2n)

    """

    def __init__(self, n: int, graph: Subspace):
        if n < 1:
            raise DimensionMismatchError(f"The space dimension must be positive, got {n}.")
        if graph.ambient_dim != 2 * n:
            raise DimensionMismatchError(
                f"A relation on R^{n} needs a graph in R^{2 * n}, got R^{graph.ambient_dim}."
            )
        self.n = n
        self.graph = graph

    @property
    def dim(self) -> int:
        return self.graph.dim

    @property
    def primal_block(self) -> Array:
        return self.graph.basis[: self.n]

    @property
    def dual_block(self) -> Array:
        return self.graph.basis[self.n :]

    @cached_property
    def parts(self) -> RelationParts:
        return parts(self)

    @property
    def dom(self) -> Subspace:
        return self.parts.dom

    @property
    def ran(self) -> Subspace:
        return self.parts.ran

    @property
    def ker(self) -> Subspace:
        return self.parts.ker

    @property
    def image_of_zero(self) -> Subspace:
        return self.parts.image_of_zero

    def __repr__(self) -> str:
        return f"LinearRelation(n={self.n}, dim_graph={self.dim})"


def _square(matrix: npt.ArrayLike, n: Optional[int] = None) -> Array:
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {M.shape}.")
    if n is not None and M.shape[0] != n:
        raise DimensionMismatchError(f"Expected a {n}x{n} matrix, got shape {M.shape}.")
    return M


def _check_same_space(A: LinearRelation, B: LinearRelation) -> None:
    if A.n != B.n:
        raise DimensionMismatchError(f"Relations act on R^{A.n} and R^{B.n}.")


def from_matrix(matrix: npt.ArrayLike, tol: float = RANK_TOL) -> LinearRelation:
    """Identify the linear map x -> Mx with the relation of its graph."""
    M = _square(matrix)
    n = M.shape[0]
    return LinearRelation(n, column_span(np.vstack([np.eye(n), M]), tol))


def from_graph(
    vectors: Sequence[npt.ArrayLike], n: Optional[int] = None, tol: float = RANK_TOL
) -> LinearRelation:
    """Build the relation whose graph is spanned by the concatenated pairs (u; v).

    Raises:
        DimensionMismatchError if a vector has odd length, the lengths differ,
        or ``n`` is missing for an empty list

    """
    rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if not rows:
        if n is None:
            raise DimensionMismatchError("The space dimension of an empty graph must be given.")
        return LinearRelation(n, span([], tol, ambient_dim=2 * n))

    odd = [row.size for row in rows if row.size % 2]
    if odd:
        raise DimensionMismatchError(f"Graph vectors must have even length, got {odd[0]}.")
    graph = span(rows, tol, ambient_dim=None if n is None else 2 * n)
    return LinearRelation(graph.ambient_dim // 2, graph)


def normal_cone(Z: Subspace) -> LinearRelation:
    """The subdifferential of the indicator of Z, with graph Z x Z-perp."""
    N = complement(Z)
    return LinearRelation(Z.ambient_dim, Subspace(spla.block_diag(Z.basis, N.basis), Z.tol))


def indicator_mapping(Z: Subspace) -> LinearRelation:
    """The relation mapping x in Z to {0} and everything else to the empty set."""
    n = Z.ambient_dim
    graph = np.vstack([Z.basis, np.zeros((n, Z.dim))])
    return LinearRelation(n, Subspace(graph, Z.tol))


def make_maximal(D: Subspace, matrix: npt.ArrayLike, tol: float = RANK_TOL) -> LinearRelation:
    """Return the maximal monotone relation x -> P_D M x + D-perp on dom = D.

    Raises:
        InvalidInputError if M is not monotone

    """
    from .monotone import is_monotone

    n = D.ambient_dim
    M = _square(matrix, n)
    certificate = is_monotone(from_matrix(M, tol), tol)
    if not certificate.holds:
        raise InvalidInputError(f"make_maximal needs a monotone matrix: {certificate.detail}")

    N = complement(D)
    top = np.hstack([D.basis, np.zeros((n, N.dim))])
    bottom = np.hstack([projector(D) @ M @ D.basis, N.basis])
    logger.info(f"maximalizing a {n}x{n} matrix on a {D.dim}-dimensional domain")
    return LinearRelation(n, column_span(np.vstack([top, bottom]), tol))


def parts(A: LinearRelation) -> RelationParts:
    """Return dom A, ran A, ker A and A0.

    The kernel and A0 are read from the kernels of the graph basis blocks, so
    dim gra A = dim dom A + dim A0 holds by construction.
    """
    tol = A.graph.tol
    U, V = A.primal_block, A.dual_block
    dom_basis, u_null = range_and_kernel(U, tol, scale=1.0)
    ran_basis, v_null = range_and_kernel(V, tol, scale=1.0)
    return RelationParts(
        dom=Subspace(dom_basis, tol),
        ran=Subspace(ran_basis, tol),
        ker=column_span(U @ v_null, tol, scale=1.0),
        image_of_zero=column_span(V @ u_null, tol, scale=1.0),
    )


def evaluate(A: LinearRelation, x: npt.ArrayLike, tol: float = CONTAINMENT_TOL) -> AffineSet:
    """Return Ax as an affine set, empty when x lies outside dom A.

    The particular point is V c for the minimum-norm c solving U c = x, which
    lies in (A0)-perp.
    """
    vector = as_vector(x, A.n)
    off_domain = np.linalg.norm(vector - project(A.dom, vector))
    if off_domain > tol * max(1.0, float(np.linalg.norm(vector))):
        return AffineSet(None, A.image_of_zero)

    coords = pseudo_inverse(A.primal_block, A.graph.tol, scale=1.0) @ vector
    return AffineSet(A.dual_block @ coords, A.image_of_zero)


def inverse(A: LinearRelation) -> LinearRelation:
    swapped = np.vstack([A.dual_block, A.primal_block])
    return LinearRelation(A.n, Subspace(swapped, A.graph.tol))


def adjoint(A: LinearRelation) -> LinearRelation:
    """gra A* = {(x, x*) : (x*, -x) is orthogonal to gra A}.

    This is the orthogonal complement of the rotated graph {(v, -u)}.
    """
    rotated = np.vstack([A.dual_block, -A.primal_block])
    return LinearRelation(A.n, complement(Subspace(rotated, A.graph.tol)))


def add(A: LinearRelation, B: LinearRelation) -> LinearRelation:
    """Return A + B, with dom(A + B) = dom A intersected with dom B.

    Pairs of graph coordinates (c, e) with U_A c = U_B e form the kernel of
    [U_A, -U_B]; each one contributes the graph vector (U_A c, V_A c + V_B e).
    """
    _check_same_space(A, B)
    tol = max(A.graph.tol, B.graph.tol)
    coords = kernel(np.hstack([A.primal_block, -B.primal_block]), tol, scale=1.0)
    c, e = coords[: A.dim], coords[A.dim :]
    vectors = np.vstack([A.primal_block @ c, A.dual_block @ c + B.dual_block @ e])
    return LinearRelation(A.n, column_span(vectors, tol, scale=1.0))


def scale(A: LinearRelation, alpha: float) -> LinearRelation:
    """Return alpha A; for alpha = 0 this keeps dom A and collapses values to A0."""
    if alpha == 0:
        graph = spla.block_diag(A.dom.basis, A.image_of_zero.basis)
        return LinearRelation(A.n, Subspace(graph, A.graph.tol))
    return LinearRelation(A.n, column_span(np.vstack([A.primal_block, alpha * A.dual_block]), A.graph.tol))


def restrict_extend(A: LinearRelation, Z: Subspace) -> LinearRelation:
    """Return (A + I_Z) + Z-perp, which is maximal monotone on Z for monotone A.

    Raises:
        InvalidInputError if Z is not contained in dom A

    """
    if Z.ambient_dim != A.n:
        raise DimensionMismatchError(f"Z lives in R^{Z.ambient_dim}, A acts on R^{A.n}.")
    if not contains(A.dom, Z):
        raise InvalidInputError("restrict_extend needs Z to be a subspace of dom A.")
    return add(add(A, indicator_mapping(Z)), normal_cone(Z))


def graph_distance(A: LinearRelation, B: LinearRelation) -> float:
    _check_same_space(A, B)
    return subspace_distance(A.graph, B.graph)


def relations_equal(A: LinearRelation, B: LinearRelation, tol: float = CONTAINMENT_TOL) -> bool:
    _check_same_space(A, B)
    return equals(A.graph, B.graph, tol)
