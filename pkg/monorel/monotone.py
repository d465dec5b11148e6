# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
"""Certificates for monotonicity-type properties of linear relations.

For a graph basis G = (U; V) the monotonicity form is bounded by ||U|| ||V||
in the spectral norm. Every threshold on the form is taken relative to that
product, with a floor at the precision of the basis, so the verdicts do not
change when A is replaced by cA for c > 0.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
import scipy.linalg as spla
from pydantic import BaseModel, ConfigDict

from .exceptions import InconsistencyError, InvalidInputError
from .relation import LinearRelation, adjoint
from .subspace import CONTAINMENT_TOL, RANK_TOL, Array, complement, contains, equals, projector

logger = logging.getLogger(__name__)

INCONCLUSIVE = "inconclusive"


class Certificate(BaseModel):
    """The outcome of checking one property.

    When ``verdict`` is False the ``witness`` (a graph vector (u; v) unless the
    detail says otherwise) violates the property on its own.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    verdict: Union[bool, Literal["inconclusive"]]
    witness: Optional[List[float]] = None
    detail: str = ""
    data: Dict[str, Any] = {}

    @property
    def holds(self) -> bool:
        return self.verdict is True

    @property
    def fails(self) -> bool:
        return self.verdict is False

    @property
    def inconclusive(self) -> bool:
        return self.verdict == INCONCLUSIVE


def _witness(vector: Array) -> List[float]:
    return [float(value) for value in vector]


def monotonicity_form(A: LinearRelation) -> Array:
    """The symmetric d x d matrix M with <x, x*> = c^T M c for (x, x*) = G c."""
    U, V = A.primal_block, A.dual_block
    cross = U.T @ V
    return 0.5 * (cross + cross.T)


def form_scale(A: LinearRelation) -> float:
    """||U|| ||V|| for the graph basis blocks, an upper bound on the form."""
    if A.dim == 0:
        return 0.0
    return float(np.linalg.norm(A.primal_block, 2) * np.linalg.norm(A.dual_block, 2))


def _form_threshold(A: LinearRelation, tol: float) -> float:
    # the basis itself is only orthonormal to machine precision
    return tol * form_scale(A) + A.dim * np.finfo(float).eps


def _spectrum(A: LinearRelation) -> tuple:
    form = monotonicity_form(A)
    if form.size == 0:
        return np.zeros(0), np.zeros((0, 0))
    return spla.eigh(form)


def is_monotone(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    eigenvalues, eigenvectors = _spectrum(A)
    scale = form_scale(A)
    if eigenvalues.size == 0 or eigenvalues[0] >= -_form_threshold(A, tol):
        lowest = float(eigenvalues[0]) if eigenvalues.size else 0.0
        return Certificate(
            name="monotone",
            verdict=True,
            detail="the monotonicity form is positive semidefinite",
            data={"min_eigenvalue": lowest, "form_scale": scale},
        )

    witness = A.graph.basis @ eigenvectors[:, 0]
    return Certificate(
        name="monotone",
        verdict=False,
        witness=_witness(witness),
        detail=f"the graph pair in the witness has pairing {eigenvalues[0]:.3e} < 0",
        data={"min_eigenvalue": float(eigenvalues[0]), "form_scale": scale},
    )


def is_skew(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    eigenvalues, eigenvectors = _spectrum(A)
    if eigenvalues.size == 0:
        return Certificate(name="skew", verdict=True, detail="the graph is trivial", data={"form_norm": 0.0})

    worst = int(np.argmax(np.abs(eigenvalues)))
    form_norm = float(abs(eigenvalues[worst]))
    scale = form_scale(A)
    data = {"form_norm": form_norm, "form_scale": scale}
    if form_norm <= _form_threshold(A, tol):
        return Certificate(name="skew", verdict=True, detail="the pairing vanishes on the graph", data=data)
    return Certificate(
        name="skew",
        verdict=False,
        witness=_witness(A.graph.basis @ eigenvectors[:, worst]),
        detail=f"the graph pair in the witness has pairing {eigenvalues[worst]:.3e}",
        data=data,
    )


def is_symmetric(A: LinearRelation, tol: float = CONTAINMENT_TOL) -> Certificate:
    """gra A is contained in gra A*."""
    adj = adjoint(A)
    if contains(adj.graph, A.graph, tol):
        return Certificate(name="symmetric", verdict=True, detail="gra A lies in gra A*")

    residual = A.graph.basis - projector(adj.graph) @ A.graph.basis
    worst = int(np.argmax(np.linalg.norm(residual, axis=0)))
    return Certificate(
        name="symmetric",
        verdict=False,
        witness=_witness(A.graph.basis[:, worst]),
        detail="the witness lies in gra A but not in gra A*",
        data={"residual": float(np.linalg.norm(residual[:, worst]))},
    )


def is_maximal_monotone(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    """A monotone relation on R^n is maximal monotone iff dim gra A = n.

    The dimension count is cross-checked against (dom A)-perp = A0.

    Raises:
        InconsistencyError if the two criteria disagree

    """
    monotone = is_monotone(A, tol)
    data = {"graph_dim": A.dim, "n": A.n}
    if not monotone.holds:
        return Certificate(
            name="maximal_monotone",
            verdict=False,
            witness=monotone.witness,
            detail=f"not monotone: {monotone.detail}",
            data=data,
        )

    by_dimension = A.dim == A.n
    by_zero_image = equals(complement(A.dom), A.image_of_zero)
    if by_dimension != by_zero_image:
        raise InconsistencyError(
            f"dim gra A = {A.dim} (n = {A.n}) disagrees with the test (dom A)-perp = A0 "
            f"(dim dom A = {A.dom.dim}, dim A0 = {A.image_of_zero.dim})."
        )

    if by_dimension:
        return Certificate(name="maximal_monotone", verdict=True, detail=f"dim gra A = n = {A.n}", data=data)
    return Certificate(
        name="maximal_monotone",
        verdict=False,
        detail=f"dim gra A = {A.dim} < n = {A.n}",
        data=data,
    )


def _graph_residual(A: LinearRelation, vector: Array) -> float:
    P = projector(A.graph)
    return float(np.linalg.norm(vector - P @ vector))


def is_paramonotone(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    """Zero pairing forces cross-membership.

    By linearity it is enough that every graph pair (u, v) in the kernel of the
    monotonicity form has (u, 0) and (0, v) in gra A.

    Raises:
        InvalidInputError if A is not monotone

    """
    if not is_monotone(A, tol).holds:
        raise InvalidInputError("Paramonotonicity is only defined here for monotone relations.")

    eigenvalues, eigenvectors = _spectrum(A)
    threshold = _form_threshold(A, tol)
    null = eigenvectors[:, np.abs(eigenvalues) <= threshold] if eigenvalues.size else np.zeros((0, 0))
    if null.shape[1] == 0:
        return Certificate(name="paramonotone", verdict=True, detail="the monotonicity form is definite")

    n = A.n
    zeros = np.zeros(n)
    worst_residual, worst_pair = 0.0, None
    for c in null.T:
        pair = A.graph.basis @ c
        u, v = pair[:n], pair[n:]
        residual = max(
            _graph_residual(A, np.concatenate([u, zeros])),
            _graph_residual(A, np.concatenate([zeros, v])),
        )
        if residual > worst_residual:
            worst_residual, worst_pair = residual, pair

    data = {"kernel_dim": int(null.shape[1]), "residual": worst_residual}
    if worst_pair is None or worst_residual <= CONTAINMENT_TOL:
        return Certificate(
            name="paramonotone",
            verdict=True,
            detail="every zero-pairing graph pair splits inside the graph",
            data=data,
        )
    return Certificate(
        name="paramonotone",
        verdict=False,
        witness=_witness(worst_pair),
        detail="the witness has zero pairing but (u, 0) or (0, v) is not in gra A",
        data=data,
    )


def brezis_browder_report(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    """For monotone A: A maximal, A* maximal and A* monotone are equivalent."""
    adj = adjoint(A)
    triple = {
        "maximal": is_maximal_monotone(A, tol).holds,
        "adjoint_maximal": is_maximal_monotone(adj, tol).holds,
        "adjoint_monotone": is_monotone(adj, tol).holds,
    }
    if not is_monotone(A, tol).holds:
        return Certificate(
            name="brezis_browder",
            verdict=True,
            detail="A is not monotone, the equivalence does not apply",
            data=triple,
        )

    agree = len(set(triple.values())) == 1
    detail = "the three conditions agree" if agree else "the three conditions disagree"
    logger.info(f"Brezis-Browder triple {triple}")
    return Certificate(name="brezis_browder", verdict=agree, detail=detail, data=triple)


def irreducible_by_skew_criterion(A: LinearRelation, tol: float = RANK_TOL) -> Certificate:
    """Sufficient test for irreducibility: monotone, at most single-valued, skew.

    The verdict is never False; failing the criterion leaves the question open.
    """
    eigenvalues, eigenvectors = _spectrum(A)
    form_norm = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    data: Dict[str, Any] = {"form_norm": form_norm, "dim_image_of_zero": A.image_of_zero.dim}

    failed = []
    if not is_monotone(A, tol).holds:
        failed.append("not monotone")
    if A.image_of_zero.dim > 0:
        failed.append("A0 is not {0}")
    if form_norm > _form_threshold(A, tol):
        failed.append("the monotonicity form does not vanish")
        top = A.primal_block @ eigenvectors[:, int(np.argmax(np.abs(eigenvalues)))]
        data["peak_index"] = int(np.argmax(np.abs(top)))

    if failed:
        return Certificate(
            name="irreducible",
            verdict=INCONCLUSIVE,
            detail="criterion not met: " + ", ".join(failed),
            data=data,
        )
    return Certificate(
        name="irreducible",
        verdict=True,
        detail="single-valued monotone skew relations are irreducible",
        data=data,
    )
