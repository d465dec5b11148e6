# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
"""Borwein-Wiersma decompositions A = df + S of maximal monotone linear relations.

The convex part is always a quadratic restricted to a subspace, so it is held
as a :class:`QuadraticOnSubspace`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg as spla

from .exceptions import DimensionMismatchError, InconsistencyError, InvalidInputError
from .monotone import Certificate, is_maximal_monotone, is_monotone, is_symmetric
from .relation import (
    LinearRelation,
    add,
    adjoint,
    evaluate,
    from_matrix,
    graph_distance,
    inverse,
    make_maximal,
    relations_equal,
    scale,
)
from .subspace import (
    CONTAINMENT_TOL,
    RANK_TOL,
    Array,
    Subspace,
    as_vector,
    column_span,
    complement,
    contains,
    intersect,
    project,
    projector,
    pseudo_inverse,
    subspace_sum,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuadraticOnSubspace:
    """The function f(x) = x^T H x / 2 + offset on ``domain`` and +inf elsewhere.

    Only P_D H P_D matters. ``hessian`` is stored symmetrized.

    Raises:
        DimensionMismatchError if H is not n x n for the ambient dimension n of D
        InvalidInputError if H is not symmetric

    """

    domain: Subspace
    hessian: Array
    offset: float = 0.0

    def __post_init__(self) -> None:
        H = np.array(self.hessian, dtype=float)
        n = self.domain.ambient_dim
        if H.shape != (n, n):
            raise DimensionMismatchError(f"The Hessian must be {n}x{n}, got shape {H.shape}.")
        if np.linalg.norm(H - H.T) > RANK_TOL * max(1.0, float(np.linalg.norm(H))):
            raise InvalidInputError("The Hessian of a quadratic must be symmetric.")
        H = 0.5 * (H + H.T)
        H.setflags(write=False)
        object.__setattr__(self, "hessian", H)

    @property
    def n(self) -> int:
        return self.domain.ambient_dim

    @property
    def restricted_hessian(self) -> Array:
        P = projector(self.domain)
        return P @ self.hessian @ P

    def _on_domain(self, x: npt.ArrayLike) -> Optional[Array]:
        vector = as_vector(x, self.n)
        inside = project(self.domain, vector)
        if np.linalg.norm(vector - inside) > CONTAINMENT_TOL * max(1.0, float(np.linalg.norm(vector))):
            return None
        return inside

    def __call__(self, x: npt.ArrayLike) -> float:
        inside = self._on_domain(x)
        if inside is None:
            return float("inf")
        return float(0.5 * inside @ self.hessian @ inside + self.offset)

    def gradient(self, x: npt.ArrayLike) -> Array:
        """The gradient P_D H x of f along D.

        Raises:
            InvalidInputError if x is not in the domain

        """
        inside = self._on_domain(x)
        if inside is None:
            raise InvalidInputError("The gradient is only defined on the domain of the quadratic.")
        return self.restricted_hessian @ inside

    def is_convex(self, tol: float = RANK_TOL) -> bool:
        B = self.domain.basis
        if B.shape[1] == 0:
            return True
        reduced = B.T @ self.hessian @ B
        lowest = spla.eigvalsh(0.5 * (reduced + reduced.T))[0]
        return bool(lowest >= -tol * max(1.0, float(np.linalg.norm(reduced, 2))))


@dataclass(frozen=True, eq=False)
class BWDecomposition:
    """A convex quadratic f and a matrix S that is skew on dom f."""

    f: QuadraticOnSubspace
    S: Array
    source: Optional[LinearRelation] = field(default=None)

    def __post_init__(self) -> None:
        S = np.array(self.S, dtype=float)
        if S.shape != (self.f.n, self.f.n):
            raise DimensionMismatchError(f"S must be {self.f.n}x{self.f.n}, got shape {S.shape}.")
        S.setflags(write=False)
        object.__setattr__(self, "S", S)

    @property
    def domain(self) -> Subspace:
        return self.f.domain

    @property
    def restricted_skew(self) -> Array:
        P = projector(self.domain)
        return P @ self.S @ P

    def reconstruct(self, tol: float = RANK_TOL) -> LinearRelation:
        """Return the relation df + S."""
        return add(subdifferential_graph(self.f, tol), from_matrix(self.S, tol))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "domain_basis": self.domain.basis.tolist(),
            "H": self.f.hessian.tolist(),
            "offset": self.f.offset,
            "S": self.S.tolist(),
        }


def _require_maximal(A: LinearRelation, operation: str, tol: float = RANK_TOL) -> None:
    certificate = is_maximal_monotone(A, tol)
    if not certificate.holds:
        raise InvalidInputError(f"{operation} needs a maximal monotone relation: {certificate.detail}")


def symmetric_part(A: LinearRelation) -> LinearRelation:
    """A+ = A/2 + A*/2."""
    return add(scale(A, 0.5), scale(adjoint(A), 0.5))


def skew_part(A: LinearRelation) -> LinearRelation:
    """Ao = A/2 - A*/2."""
    return add(scale(A, 0.5), scale(adjoint(A), -0.5))


def q_value(A: LinearRelation, x: npt.ArrayLike, tol: float = RANK_TOL) -> float:
    """Return q_A(x) = <x, x*>/2 for any x* in Ax, or +inf off dom A.

    Raises:
        InvalidInputError if A is not monotone

    """
    if not is_monotone(A, tol).holds:
        raise InvalidInputError("q_A is only well defined for monotone relations.")
    value = evaluate(A, x)
    if value.point is None:
        return float("inf")
    return float(0.5 * as_vector(x, A.n) @ value.point)


def linear_selection(A: LinearRelation, tol: float = RANK_TOL) -> Array:
    """The selection Q_A x = P_{(A0)-perp}(Ax) on dom A, extended by zero on (dom A)-perp.

    Raises:
        InvalidInputError if A is not maximal monotone

    """
    _require_maximal(A, "linear_selection", tol)
    coords = pseudo_inverse(A.primal_block, A.graph.tol, scale=1.0)
    values = projector(complement(A.image_of_zero)) @ A.dual_block @ coords
    return values @ projector(A.dom)


def bw_decomposable(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    """Test dom A in dom A*, cross-checked against A = A+ + Ao.

    Raises:
        InvalidInputError if A is not maximal monotone
        InconsistencyError if the two criteria disagree

    """
    _require_maximal(A, "bw_decomposable", tol)
    by_domains = contains(adjoint(A).dom, A.dom)
    by_parts = relations_equal(add(symmetric_part(A), skew_part(A)), A)
    if by_domains != by_parts:
        raise InconsistencyError(
            f"dom A in dom A* is {by_domains} but A = A+ + Ao is {by_parts}."
        )
    detail = "dom A lies in dom A*" if by_domains else "dom A is not contained in dom A*"
    return Certificate(name="bw_decomposable", verdict=by_domains, detail=detail)


def bw_decompose(A: LinearRelation, tol: float = RANK_TOL) -> BWDecomposition:
    """Build the canonical decomposition from B = P_D Q_A P_D with D = dom A.

    f(x) = x^T sym(B) x / 2 on D and S = skew(B).

    Raises:
        InvalidInputError if A is not maximal monotone

    """
    _require_maximal(A, "bw_decompose", tol)
    D = A.dom
    P = projector(D)
    B = P @ linear_selection(A, tol) @ P
    H = 0.5 * (B + B.T)
    S = 0.5 * (B - B.T)
    logger.info(f"decomposed a relation on R^{A.n} with a {D.dim}-dimensional domain")
    return BWDecomposition(QuadraticOnSubspace(D, H), S, A)


def subdifferential_graph(f: QuadraticOnSubspace, tol: float = RANK_TOL) -> LinearRelation:
    """Return df = {(x, P_D H x + z) : x in D, z in D-perp}.

    Raises:
        InvalidInputError if f is not convex

    """
    if not f.is_convex(tol):
        raise InvalidInputError("Only convex quadratics have a maximal monotone subdifferential.")
    return make_maximal(f.domain, f.restricted_hessian, tol)


def quad_conjugate(f: QuadraticOnSubspace, tol: float = RANK_TOL) -> QuadraticOnSubspace:
    """Return the Fenchel conjugate, finite on ran H_D + D-perp with Hessian pinv(H_D).

    Raises:
        InvalidInputError if f is not convex

    """
    if not f.is_convex(tol):
        raise InvalidInputError("The conjugate is only computed for convex quadratics.")
    H_D = f.restricted_hessian
    domain = subspace_sum(column_span(H_D, tol), complement(f.domain))
    H = pseudo_inverse(H_D, tol)
    return QuadraticOnSubspace(domain, 0.5 * (H + H.T), -f.offset)


def _worst_column(S: Subspace, T: Subspace) -> Optional[Array]:
    if T.dim == 0:
        return None
    residual = T.basis - S.basis @ (S.basis.T @ T.basis)
    return T.basis[:, int(np.argmax(np.linalg.norm(residual, axis=0)))]


def verify_decomposition(A: LinearRelation, dec: BWDecomposition, tol: float = CONTAINMENT_TOL) -> Certificate:
    """Check that ``dec`` is a Borwein-Wiersma decomposition of A.

    The checks are reconstruction of gra A, skewness of S on D and, for
    maximal monotone A, agreement with the canonical decomposition: the same
    subdifferential part and a skew part that differs by an A0-valued map.
    """
    data: Dict[str, Any] = {}
    if dec.f.n != A.n:
        return Certificate(
            name="bw_decomposition", verdict=False, detail=f"f acts on R^{dec.f.n}, A acts on R^{A.n}"
        )
    try:
        recon = dec.reconstruct()
    except InvalidInputError as e:
        return Certificate(name="bw_decomposition", verdict=False, detail=f"cannot reconstruct: {e}")

    distance = graph_distance(recon, A)
    data["reconstruction_distance"] = distance
    if distance > tol:
        witness = _worst_column(recon.graph, A.graph)
        detail = "the witness lies in gra A but not in gra(df + S)"
        if witness is None or np.linalg.norm(witness - projector(recon.graph) @ witness) <= tol:
            witness = _worst_column(A.graph, recon.graph)
            detail = "the witness lies in gra(df + S) but not in gra A"
        return Certificate(
            name="bw_decomposition",
            verdict=False,
            witness=None if witness is None else [float(v) for v in witness],
            detail=detail,
            data=data,
        )

    PSP = dec.restricted_skew
    defect = float(np.linalg.norm(PSP + PSP.T))
    data["skew_defect"] = defect
    if defect > tol * max(1.0, float(np.linalg.norm(PSP))):
        return Certificate(name="bw_decomposition", verdict=False, detail="S is not skew on dom f", data=data)

    try:
        maximal = is_maximal_monotone(A).holds
        canonical = bw_decompose(A) if maximal else None
    except (InconsistencyError, InvalidInputError) as e:
        return Certificate(name="bw_decomposition", verdict=False, detail=f"cannot compare with A: {e}", data=data)

    if canonical is None:
        return Certificate(
            name="bw_decomposition",
            verdict=True,
            detail="reconstruction and skewness hold, uniqueness not checked for non-maximal A",
            data=data,
        )

    same_subdifferential = relations_equal(subdifferential_graph(dec.f), subdifferential_graph(canonical.f), tol)
    P_dom = projector(A.dom)
    drift = projector(complement(A.image_of_zero)) @ (dec.S - canonical.S) @ P_dom
    skew_in_zero_image = bool(np.linalg.norm(drift) <= tol * max(1.0, float(np.linalg.norm(dec.S))))
    data.update(unique_subdifferential=same_subdifferential, skew_difference_in_image_of_zero=skew_in_zero_image)
    if same_subdifferential and skew_in_zero_image:
        return Certificate(name="bw_decomposition", verdict=True, detail="valid decomposition", data=data)
    return Certificate(
        name="bw_decomposition",
        verdict=False,
        detail="the decomposition disagrees with the canonical one beyond A0",
        data=data,
    )


def sum_decompose(A1: LinearRelation, A2: LinearRelation, tol: float = RANK_TOL) -> BWDecomposition:
    """Decompose A1 + A2 as d(f1 + f2) + (S1 + S2).

    Raises:
        InvalidInputError if A1, A2 or their sum is not maximal monotone
        InconsistencyError if the assembled decomposition fails verification

    """
    _require_maximal(A1, "sum_decompose", tol)
    _require_maximal(A2, "sum_decompose", tol)
    total = add(A1, A2)
    _require_maximal(total, "sum_decompose (for the sum)", tol)

    first, second = bw_decompose(A1, tol), bw_decompose(A2, tol)
    D = intersect(first.domain, second.domain)
    P = projector(D)
    f = QuadraticOnSubspace(D, P @ (first.f.hessian + second.f.hessian) @ P)
    dec = BWDecomposition(f, P @ (first.S + second.S) @ P, total)

    certificate = verify_decomposition(total, dec)
    if not certificate.holds:
        raise InconsistencyError(f"The sum rule failed verification: {certificate.detail}")
    logger.info(f"sum rule verified with reconstruction distance {certificate.data['reconstruction_distance']:.3e}")
    return dec


def is_subdifferential(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    """A maximal monotone relation is a subdifferential iff it is symmetric.

    Raises:
        InconsistencyError if A is symmetric but the canonical quadratic does not reproduce it

    """
    maximal = is_maximal_monotone(A, tol)
    if not maximal.holds:
        return Certificate(
            name="subdifferential",
            verdict=False,
            witness=maximal.witness,
            detail=f"not maximal monotone: {maximal.detail}",
        )

    symmetric = is_symmetric(A)
    if not symmetric.holds:
        return Certificate(
            name="subdifferential", verdict=False, witness=symmetric.witness, detail=symmetric.detail
        )

    f = bw_decompose(A, tol).f
    distance = graph_distance(subdifferential_graph(f, tol), A)
    if distance > CONTAINMENT_TOL:
        raise InconsistencyError(f"A is symmetric but df differs from A by {distance:.3e}.")
    return Certificate(
        name="subdifferential",
        verdict=True,
        detail="A is the subdifferential of the quadratic in data",
        data={"domain_dim": f.domain.dim, "H": f.hessian.tolist(), "distance": distance},
    )


def inverse_decompose(A: LinearRelation, tol: float = RANK_TOL) -> BWDecomposition:
    """Return A^-1 = d(q_A)* + 0 for symmetric maximal monotone A.

    Raises:
        InvalidInputError if A is not symmetric maximal monotone

    """
    _require_maximal(A, "inverse_decompose", tol)
    if not is_symmetric(A).holds:
        raise InvalidInputError("inverse_decompose needs a symmetric relation.")
    conjugate = quad_conjugate(bw_decompose(A, tol).f, tol)
    return BWDecomposition(conjugate, np.zeros((A.n, A.n)), inverse(A))


def adjoint_decompose(A: LinearRelation, tol: float = RANK_TOL) -> BWDecomposition:
    """Return A* = df - S from the canonical decomposition (f, S) of A.

    Raises:
        InvalidInputError if A is not maximal monotone

    """
    dec = bw_decompose(A, tol)
    return BWDecomposition(dec.f, -dec.S, adjoint(A))
