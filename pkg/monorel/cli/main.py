# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
from __future__ import annotations

import logging
import os
import sys
import typing
from argparse import ArgumentParser

from monorel import __version__

from ..gallery import NAMED
from ..splitting import DEFAULT_LAMBDA, DEFAULT_MAX_ITER
from . import commands

if typing.TYPE_CHECKING:
    # This is here to prevent potential future breaking API changes
    # in argparse from affecting at runtime
    from argparse import _SubParsersAction

logging.basicConfig(level=os.environ.get("MONOREL_LOGLEVEL", "WARNING"))

EX_USAGE = 64


class MonorelArgumentParser(ArgumentParser):
    """An ArgumentParser that exits with EX_USAGE on bad arguments."""

    def error(self, message: str) -> typing.NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def cli() -> ArgumentParser:
    """Construct the command-line argument parser."""
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help=(
            "Tolerance for rank and definiteness decisions, or the stopping tolerance for solve. "
            "Overrides the tol field of the spec and the MONOREL_TOL environment variable."
        ),
    )
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default="json",
        help="Report format (default json).",
    )
    common.add_argument(
        "--assert",
        dest="assert_",
        action="store_true",
        help="Exit with status 2 if any certificate verdict is false or the solver did not converge.",
    )

    p = MonorelArgumentParser(
        description="Calculus of monotone linear relations on R^n",
        conflict_handler="resolve",
    )
    p.add_argument(
        "-V",
        "--version",
        action="version",
        help="Show the monorel version number and exit.",
        version="monorel %s" % __version__,
    )

    subparsers = p.add_subparsers(metavar="command", required=True)

    _create_check_parser(subparsers, common)
    _create_adjoint_parser(subparsers, common)
    _create_decompose_parser(subparsers, common)
    _create_conjugate_parser(subparsers, common)
    _create_resolvent_parser(subparsers, common)
    _create_solve_parser(subparsers, common)
    _create_gen_parser(subparsers, common)
    _create_example_parser(subparsers, common)

    return p


def _add_spec_argument(p: ArgumentParser) -> None:
    p.add_argument("spec", help="Path to a relation spec JSON file, or - for stdin.")


def _add_lambda_argument(p: ArgumentParser) -> None:
    p.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        default=DEFAULT_LAMBDA,
        help=f"Resolvent parameter, must be positive (default {DEFAULT_LAMBDA}).",
    )


def _add_output_argument(p: ArgumentParser) -> None:
    p.add_argument(
        "-o",
        "--output",
        default=None,
        help="Also write the generated spec document to this file.",
    )


def _create_check_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "check" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = (
        "Report the monotone, skew, symmetric, maximal monotone, paramonotone, Brezis-Browder, "
        "decomposability, irreducibility and subdifferential certificates of a relation."
    )

    p = subparsers.add_parser(
        "check", description=desc, help=desc, parents=[parent_parser]
    )
    _add_spec_argument(p)

    p.set_defaults(func=commands.check)


def _create_adjoint_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "adjoint" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = "Compute the adjoint relation and report it as a graph spec."

    p = subparsers.add_parser(
        "adjoint", description=desc, help=desc, parents=[parent_parser]
    )
    _add_spec_argument(p)

    p.set_defaults(func=commands.adjoint)


def _create_decompose_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "decompose" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = (
        "Build the Borwein-Wiersma decomposition of a maximal monotone relation. "
        "With two specs, decompose their sum with the sum rule."
    )

    p = subparsers.add_parser(
        "decompose", description=desc, help=desc, parents=[parent_parser]
    )
    _add_spec_argument(p)
    p.add_argument(
        "second",
        nargs="?",
        default=None,
        help="Optional second spec; the sum of both relations is decomposed.",
    )

    p.set_defaults(func=commands.decompose)


def _create_conjugate_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "conjugate" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = (
        "Report the conjugate of the convex part of the decomposition. For symmetric input also "
        "report its distance to the inverse relation."
    )

    p = subparsers.add_parser(
        "conjugate", description=desc, help=desc, parents=[parent_parser]
    )
    _add_spec_argument(p)

    p.set_defaults(func=commands.conjugate)


def _create_resolvent_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "resolvent" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = "Compute the resolvent matrix (I + lambda A)^-1 of a maximal monotone relation."

    p = subparsers.add_parser(
        "resolvent", description=desc, help=desc, parents=[parent_parser]
    )
    _add_spec_argument(p)
    _add_lambda_argument(p)

    p.set_defaults(func=commands.resolvent)


def _create_solve_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "solve" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = "Find a zero of a maximal monotone relation with the proximal point or Douglas-Rachford method."

    p = subparsers.add_parser(
        "solve", description=desc, help=desc, parents=[parent_parser]
    )
    _add_spec_argument(p)
    p.add_argument(
        "--method",
        choices=("pp", "dr"),
        default="pp",
        help="pp for proximal point, dr for Douglas-Rachford on the decomposition (default pp).",
    )
    _add_lambda_argument(p)
    p.add_argument(
        "--max-iter",
        type=int,
        default=DEFAULT_MAX_ITER,
        help=f"Iteration budget (default {DEFAULT_MAX_ITER}).",
    )
    p.add_argument(
        "--x0",
        default=None,
        help="Comma separated starting point. The default is the all-ones vector.",
    )

    p.set_defaults(func=commands.solve)


def _create_gen_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "gen" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = "Generate a seeded random maximal monotone relation as an operator_on_subspace spec."

    p = subparsers.add_parser(
        "gen", description=desc, help=desc, parents=[parent_parser]
    )
    p.add_argument("--n", type=int, required=True, help="Space dimension.")
    p.add_argument(
        "--dim-dom",
        type=int,
        default=None,
        help="Dimension of the domain. Defaults to n.",
    )
    p.add_argument("--psd-scale", type=float, default=1.0, help="Weight of the PSD part (default 1).")
    p.add_argument("--skew-scale", type=float, default=1.0, help="Weight of the skew part (default 1).")
    p.add_argument("--seed", type=int, default=None, help="Seed for the random generator.")
    _add_output_argument(p)

    p.set_defaults(func=commands.gen)


def _create_example_parser(
    subparsers: "_SubParsersAction", parent_parser: ArgumentParser
) -> None:
    """Add a subparser for the "example" subcommand.

    Args:
        subparsers: The existing subparsers corresponding to the "command" meta-variable.
        parent_parser: The parent parser, which is used to pass common arguments into the subcommands.

    """
    desc = "Emit the spec of a gallery relation."

    p = subparsers.add_parser(
        "example", description=desc, help=desc, parents=[parent_parser]
    )
    p.add_argument("name", choices=sorted(NAMED), help="Gallery relation.")
    p.add_argument("--n", type=int, default=8, help="Space dimension (default 8).")
    _add_output_argument(p)

    p.set_defaults(func=commands.example)


def parse_and_run(args: list[str] | None = None) -> int:
    """Parse the command-line arguments and run the appropriate sub-command.

    Args:
        args: Command-line arguments. Defaults to system arguments.

    Returns:
        The return code to pass to the operating system.

    """
    p = cli()
    parsed_args = p.parse_args(args)
    return parsed_args.func(parsed_args)


def main() -> int:
    """Main entry-point into the `monorel` command-line interface."""
    if len(sys.argv) == 1:
        args = ["-h"]
    else:
        args = sys.argv[1:]

    retcode = parse_and_run(args)
    return retcode
