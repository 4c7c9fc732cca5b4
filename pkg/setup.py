# Package setup file.
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

import qzonal
from setuptools import setup, find_packages

with open("README.rst", "r") as fh:
    long_description = fh.read()

with open("requirements.txt") as fh:
    requirements = fh.read().replace("==", ">=")

setup(
    name="qzonal",
    version=qzonal.__version__,
    author="Yuriy Sverchkov",
    author_email="yuriy.sverchkov@wisc.edu",
    description="Exact verification of quantum-group identities and Macdonald polynomials as zonal spherical functions",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    license="BSD (3 clause)",
    keywords="quantum groups Macdonald polynomials symmetric functions computer algebra",
    packages=find_packages(exclude=['*.tests']),
    install_requires=requirements,
    entry_points={'console_scripts': ['qzonal=qzonal.cli:main']},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Development Status :: 2 - Pre-Alpha",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.10'
)
