# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause


class MonorelError(Exception):
    pass


class DimensionMismatchError(MonorelError):
    pass


class InvalidInputError(MonorelError):
    pass


class InconsistencyError(MonorelError):
    """Two equivalent numerical criteria disagreed."""


class SpecParseError(MonorelError):
    pass


class SpecValidationError(MonorelError):
    pass
