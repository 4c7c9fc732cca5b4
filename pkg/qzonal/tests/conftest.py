# Definitions for shared test fixtures
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov


import pytest

from qzonal.exactfield import context


@pytest.fixture(scope="module")
def q_context():
    return context('q')


@pytest.fixture(scope="module")
def qt_context():
    return context('q', 't')


@pytest.fixture(scope="module")
def algebra_n2():
    from qzonal.ncalg import QuantumMatrixAlgebra
    return QuantumMatrixAlgebra(2)


@pytest.fixture(scope="module")
def algebra_n3():
    # Shared so that the rewrite memo is reused across examples
    from qzonal.ncalg import QuantumMatrixAlgebra
    return QuantumMatrixAlgebra(3)


@pytest.fixture(scope="module")
def so_product():
    from qzonal.zonal import CaseConfig, ConstantTermScalarProduct
    return ConstantTermScalarProduct(CaseConfig('so', 2), 10)
