# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause

import re
from pathlib import Path

from setuptools import find_packages, setup

with open("README.md", "r") as fh:
    long_description = fh.read()

version = re.search(
    r'__version__ = "([^"]+)"', Path("monorel/_version.py").read_text()
).group(1)

requirements = [
    "numpy>=1.21",
    "scipy>=1.7",
    "ruamel.yaml",
    "pydantic>=2",
]
docs_requirements = [
    "Sphinx>=5.1.1",
    "sphinx-autobuild>=2021.3.14",
    "sphinx-autodoc-typehints>=1.19.2",
    "myst-parser>=0.18.0",
    "pydata-sphinx-theme>=0.9.0",
]

setup(
    name="monorel",
    version=version,
    description="Calculus of monotone linear relations: certificates, decompositions and splitting solvers",
    license="BSD",
    packages=find_packages(exclude=["tests", "tests.*"]),
    entry_points={"console_scripts": ["monorel=monorel.cli.main:main"]},
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={
        "docs": docs_requirements,
    },
    keywords="monotone-operators linear-relations",
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    long_description=long_description,
    long_description_content_type="text/markdown",
)
