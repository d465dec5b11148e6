# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
import json
import logging
import sys
from argparse import Namespace
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from .. import __version__
from ..decomposition import (
    BWDecomposition,
    bw_decomposable,
    bw_decompose,
    is_subdifferential,
    quad_conjugate,
    subdifferential_graph,
    sum_decompose,
    verify_decomposition,
)
from ..exceptions import MonorelError
from ..gallery import random_operator_on_subspace
from ..monotone import (
    INCONCLUSIVE,
    Certificate,
    brezis_browder_report,
    irreducible_by_skew_criterion,
    is_maximal_monotone,
    is_monotone,
    is_paramonotone,
    is_skew,
    is_symmetric,
)
from ..relation import LinearRelation, adjoint as adjoint_relation, graph_distance, inverse, relations_equal
from ..spec_file import RelationSpec, dump_yaml
from ..splitting import DEFAULT_SOLVER_TOL, douglas_rachford, proximal_point
from ..splitting import resolvent as resolvent_matrix
from ..subspace import RANK_TOL
from ..utils import read_text, resolve_tolerance

logger = logging.getLogger(__name__)

EXIT_ASSERTION_FAILED = 2

# report keys that differ from the certificate name
CHECK_KEYS = {"maximal_monotone": "maximal"}


def handle_errors(func: Callable[[Namespace], Any]) -> Callable[[Namespace], int]:
    """Wrap a subcommand function to catch exceptions and return an appropriate error code.

    A falsy return value means an ``--assert`` check failed.
    """

    @wraps(func)
    def wrapper(args: Namespace) -> int:
        try:
            ret = func(args)
            if ret:
                return 0
            else:
                return EXIT_ASSERTION_FAILED
        except MonorelError as e:
            print(f"{e.__class__.__name__}: {e}", file=sys.stderr)
            return 1

    return wrapper


def _load(source: str, flag: Optional[float], default: float = RANK_TOL) -> Tuple[RelationSpec, float]:
    spec = RelationSpec.parse(read_text(source))
    return spec, resolve_tolerance(flag, spec.tol, default)


def _emit(args: Namespace, command: str, tol: float, body: Dict[str, Any]) -> None:
    report = {"command": command, "tolerance": tol, "version": __version__, **body}
    if args.format == "text":
        dump_yaml(report, sys.stdout)
    else:
        print(json.dumps(report, indent=2))


def _verdicts_hold(certificates: Iterable[Certificate]) -> bool:
    return not any(c.fails for c in certificates)


def _not_applicable(name: str, reason: str) -> Certificate:
    return Certificate(name=name, verdict=INCONCLUSIVE, detail=f"not checked: {reason}")


def _decomposition_body(dec: BWDecomposition, verification: Certificate) -> Dict[str, Any]:
    return {
        "decomposition": dec.to_dict(),
        "reconstruction_distance": verification.data.get("reconstruction_distance"),
        "verification": verification.model_dump(),
    }


@handle_errors
def check(args: Namespace) -> bool:
    spec, tol = _load(args.spec, args.tol)
    A = spec.to_relation(tol)

    monotone = is_monotone(A, tol)
    maximal = is_maximal_monotone(A, tol)
    certificates = [monotone, is_skew(A, tol), is_symmetric(A), maximal]
    if monotone.holds:
        certificates.append(is_paramonotone(A, tol))
    else:
        certificates.append(_not_applicable("paramonotone", "the relation is not monotone"))
    if maximal.holds:
        certificates.append(bw_decomposable(A, tol))
    else:
        certificates.append(_not_applicable("bw_decomposable", "the relation is not maximal monotone"))
    certificates.extend(
        [brezis_browder_report(A, tol), irreducible_by_skew_criterion(A, tol), is_subdifferential(A, tol)]
    )

    _emit(
        args,
        "check",
        tol,
        {
            "n": A.n,
            "graph_dim": A.dim,
            "verdicts": {CHECK_KEYS.get(c.name, c.name): c.verdict for c in certificates},
            "certificates": {CHECK_KEYS.get(c.name, c.name): c.model_dump() for c in certificates},
        },
    )
    return not args.assert_ or _verdicts_hold(certificates)


@handle_errors
def adjoint(args: Namespace) -> bool:
    spec, tol = _load(args.spec, args.tol)
    A = spec.to_relation(tol)
    adj = adjoint_relation(A)
    _emit(
        args,
        "adjoint",
        tol,
        {
            "relation": json.loads(RelationSpec.from_relation(adj).to_json()),
            "self_adjoint": relations_equal(A, adj),
            "graph_distance_to_input": graph_distance(A, adj),
        },
    )
    return True


@handle_errors
def decompose(args: Namespace) -> bool:
    spec, tol = _load(args.spec, args.tol)
    A = spec.to_relation(tol)

    if args.second is None:
        dec = bw_decompose(A, tol)
        body: Dict[str, Any] = {"sum_rule": False}
    else:
        second, _ = _load(args.second, args.tol)
        dec = sum_decompose(A, second.to_relation(tol), tol)
        body = {"sum_rule": True}

    assert dec.source is not None
    verification = verify_decomposition(dec.source, dec)
    body.update(_decomposition_body(dec, verification))
    _emit(args, "decompose", tol, body)
    return not args.assert_ or verification.holds


@handle_errors
def conjugate(args: Namespace) -> bool:
    spec, tol = _load(args.spec, args.tol)
    A = spec.to_relation(tol)
    f = bw_decompose(A, tol).f
    g = quad_conjugate(f, tol)

    body: Dict[str, Any] = {
        "conjugate": {
            "domain_basis": g.domain.basis.tolist(),
            "H": g.hessian.tolist(),
            "offset": g.offset,
        }
    }
    symmetric = is_symmetric(A)
    body["symmetric"] = symmetric.holds
    if symmetric.holds:
        body["distance_to_inverse"] = graph_distance(subdifferential_graph(g, tol), inverse(A))
    _emit(args, "conjugate", tol, body)
    return True


@handle_errors
def resolvent(args: Namespace) -> bool:
    spec, tol = _load(args.spec, args.tol)
    A = spec.to_relation(tol)
    R = resolvent_matrix(A, args.lam, tol)
    _emit(args, "resolvent", tol, {"lambda": args.lam, "matrix": R.tolist()})
    return True


def _starting_point(raw: Optional[str], n: int) -> np.ndarray:
    if raw is None:
        return np.ones(n)
    try:
        x0 = np.array([float(part) for part in raw.split(",")])
    except ValueError:
        raise MonorelError(f"--x0 must be a comma separated list of numbers, got {raw!r}.")
    if not np.all(np.isfinite(x0)):
        raise MonorelError(f"--x0 must have finite entries, got {raw!r}.")
    if x0.size != n:
        raise MonorelError(f"--x0 has {x0.size} entries, the relation acts on R^{n}.")
    return x0


@handle_errors
def solve(args: Namespace) -> bool:
    spec, tol = _load(args.spec, args.tol, DEFAULT_SOLVER_TOL)
    A = spec.to_relation()
    x0 = _starting_point(args.x0, A.n)

    if args.method == "pp":
        trace = proximal_point(A, x0, args.lam, tol, args.max_iter)
    else:
        dec = bw_decompose(A)
        trace = douglas_rachford(dec.f, dec.S, x0, args.lam, tol, args.max_iter)

    _emit(args, "solve", tol, {"method": args.method, "lambda": args.lam, **trace.summary()})
    return not args.assert_ or trace.converged


def _write_spec(spec: RelationSpec, output: Optional[str]) -> None:
    if output is not None:
        Path(output).write_text(spec.to_json() + "\n", encoding="utf-8")
        logger.info(f"wrote {spec.kind} spec to {output}")


@handle_errors
def gen(args: Namespace) -> bool:
    tol = resolve_tolerance(args.tol, None, RANK_TOL)
    dim_dom = args.n if args.dim_dom is None else args.dim_dom
    D, M = random_operator_on_subspace(args.n, dim_dom, args.psd_scale, args.skew_scale, args.seed)
    spec = RelationSpec.from_dict(
        {"kind": "operator_on_subspace", "n": args.n, "domain": D.basis.T.tolist(), "matrix": M.tolist()}
    )
    _write_spec(spec, args.output)
    _emit(args, "gen", tol, {"seed": args.seed, "output": args.output, "spec": json.loads(spec.to_json())})
    return True


@handle_errors
def example(args: Namespace) -> bool:
    tol = resolve_tolerance(args.tol, None, RANK_TOL)
    spec = RelationSpec.from_dict({"kind": "gallery", "name": args.name, "n": args.n})
    A: LinearRelation = spec.to_relation(tol)
    _write_spec(spec, args.output)
    _emit(
        args,
        "example",
        tol,
        {"output": args.output, "graph_dim": A.dim, "spec": json.loads(spec.to_json())},
    )
    return True
