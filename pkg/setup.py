#!/usr/bin/env python
# -*- encoding: utf-8 -*-

"""Setup Module for Quipu"""

from __future__ import absolute_import, print_function

# Standard Library Imports
import io
import re

from os.path import dirname, join

# Quipu
from setuptools import find_packages, setup


def read(*names, **kwargs):
    """Helper method to read files"""
    return io.open(
        join(dirname(__file__), *names), encoding=kwargs.get("encoding", "utf8"),
    ).read()


marshmallow_requires = ["marshmallow>=3.5.1"]
numeric_requires = [
    "mpmath>=1.1.0",
    "numpy>=1.18.0",
    "networkx>=2.5",
    "sympy>=1.6",
]

install_requires = (
    marshmallow_requires
    + numeric_requires
    + [
        "click>=8.0",
        "werkzeug>=1.0.0",
    ]
)

testing_requires = [
    "pytest-cov>=2.8.1",
    "pytest-flake8>=1.0.6",
    "pytest>=5.4.2",
]

dev_requires = testing_requires + [
    "black==19.10b0",
    "check-manifest==0.42",
    "coverage==5.1",
    "docutils==0.16",
    "pre-commit==2.6.0",
    "tox==3.15.0",
    "twine==3.1.1",
]

setup(
    name="quipu",
    version="0.1.0",
    license="BSD 3-Clause License",
    description="Trees of given order and diameter with minimal spectral radius",
    long_description="%s\n%s"
    % (
        re.compile("^.. start-badges.*^.. end-badges", re.M | re.S).sub(
            "", read("README.rst")
        ),
        re.sub(":[a-z]+:`~?(.*?)`", r"``\1``", read("CHANGELOG.rst")),
    ),
    packages=find_packages("src"),
    package_dir={"": "src"},
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.7",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords=["spectral graph theory", "spectral radius", "trees", "diameter"],
    install_requires=install_requires,
    extras_require={
        "test": testing_requires,
        "tests": testing_requires,
        "testing": testing_requires,
        "dev": dev_requires,
        "all": dev_requires,
    },
    entry_points={"console_scripts": ["quipu = quipu.cli:main"]},
)
