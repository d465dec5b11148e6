# -*- coding: utf-8 -*-
# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause
from ._version import __version__

# flake8: noqa
from .exceptions import MonorelError
from .relation import LinearRelation
from .subspace import Subspace
