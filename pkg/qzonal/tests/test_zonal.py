# Tests for zonal spherical functions, norm identities and the series oracle
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

import pytest


## Case configuration

def test_case_configuration(q_context):
    from qzonal.exactfield import UnsupportedRangeError
    from qzonal.zonal import CaseConfig

    q = q_context['q']

    so = CaseConfig('so', 3)
    assert so.big_n == 3
    assert (so.q_m, so.t_m) == (q ** 4, q ** 2)
    assert so.a_values() == {'a1': q ** 2, 'a2': q, 'a3': 1}

    sp = CaseConfig('SP', 2)
    assert sp.big_n == 4
    assert (sp.q_m, sp.t_m) == (q ** 2, q ** 4)
    assert sp.radial_prefactor == 1 + q ** 2

    with pytest.raises(UnsupportedRangeError):
        CaseConfig('sp', 9)

    with pytest.raises(ValueError):
        CaseConfig('gl', 2)


@pytest.mark.parametrize('case, mu, ell, n, expected', [
    ('so', (2, 1), 0, 2, (4, 2)),
    ('so', (1,), 1, 3, (3, 1, 1)),
    ('sp', (2, 1), 0, 2, (2, 2, 1, 1)),
    ('sp', (), 1, 1, (1, 1)),
])
def test_duplicate_partition(case, mu, ell, n, expected):
    from qzonal.macdonald import Partition
    from qzonal.zonal import duplicate_partition

    assert duplicate_partition(case, Partition(mu), ell, n) == expected


## Restriction to the torus

def test_zonal_restriction():
    from qzonal.exactfield import MultiLaurent
    from qzonal.macdonald import Partition
    from qzonal.zonal import zonal_restriction

    assert zonal_restriction('so', Partition.of(1), 0, 2) == MultiLaurent(('z1', 'z2'), {(2, 0): 1, (0, 2): 1})
    assert zonal_restriction('so', Partition(), 1, 2) == MultiLaurent(('z1', 'z2'), {(1, 1): 1})
    assert zonal_restriction('sp', Partition(), 1, 1) == MultiLaurent(('z1', 'z2'), {(1, 1): 1})
    assert zonal_restriction('sp', Partition.of(2), 0, 1) == MultiLaurent(('z1', 'z2'), {(2, 2): 1})


def test_radial_eigenvalue(q_context):
    from qzonal.macdonald import Partition
    from qzonal.zonal import CaseConfig, central_character, duplicate_partition, radial_eigenvalue

    q = q_context['q']

    so = CaseConfig('so', 2)
    assert radial_eigenvalue(so, Partition.of(1)) == q ** 6 + 1

    sp = CaseConfig('sp', 2)
    assert radial_eigenvalue(sp, Partition()) == (1 + q ** 2) * (q ** 4 + 1)
    assert central_character(sp, duplicate_partition('sp', Partition(), 0, 2)) == q ** 6 + q ** 4 + q ** 2 + 1


@pytest.mark.parametrize('case, mu, n', [
    ('so', '', 1), ('so', '1', 1), ('so', '2', 1),
    ('so', '1', 2), ('so', '11', 2), ('so', '21', 2),
    ('sp', '1', 1), ('sp', '2', 1), ('sp', '11', 2),
    pytest.param('so', '111', 3, marks=pytest.mark.slow),
    pytest.param('sp', '21', 2, marks=pytest.mark.slow),
])
def test_zonal(case, mu, n, caplog):
    import logging
    from qzonal.macdonald import Partition
    from qzonal.zonal import verify_zonal

    logger = logging.getLogger()
    caplog.set_level(logging.DEBUG)

    report = verify_zonal(case, Partition.parse(mu), n)
    logger.info(f'\n{report.to_pretty()}')

    assert report.passed
    assert {'radial-eigen-equation', 'radial-eigen-restricted', 'radial-eigenvalue-character',
            'determinant-twist'} <= \
        {c.identity_id for c in report}


def test_zonal_fundamental_restriction():
    from qzonal.macdonald import Partition
    from qzonal.zonal import verify_zonal

    report = verify_zonal('so', Partition.of(1, 1), 2)

    assert 'fundamental-restriction' in {c.identity_id for c in report}
    assert report.passed


def test_zonal_mutation():
    from qzonal.macdonald import Partition
    from qzonal.zonal import verify_zonal

    # Swapping q and t leaves the eigenvalue of m_(1) unchanged
    report = verify_zonal('so', Partition.of(2), 2, 'swap-parameters')

    assert {c.identity_id for c in report.failures} == {'radial-eigen-equation', 'radial-eigen-restricted'}


def test_zonal_range():
    from qzonal.exactfield import UnsupportedRangeError
    from qzonal.macdonald import Partition
    from qzonal.zonal import verify_zonal

    with pytest.raises(UnsupportedRangeError):
        verify_zonal('so', Partition.of(6), 1)

    with pytest.raises(UnsupportedRangeError):
        verify_zonal('so', Partition.of(1, 1, 1), 2)


## Rank one

def test_rank_one_fixed_vector():
    from qzonal.exactfield import context
    from qzonal.zonal import NoSolution, rank_one_closed_form, rank_one_fixed_vector

    ctx = context('q', 'a')
    q, a = ctx.gens('q', 'a')

    assert rank_one_fixed_vector(0) == [1]
    assert rank_one_fixed_vector(2) == [1, 0, a ** -1 * q ** -2]
    assert rank_one_fixed_vector(2) == rank_one_closed_form(2)
    assert rank_one_fixed_vector(3) == NoSolution(3, 3)


def test_rank_one():
    from qzonal.zonal import verify_rank_one

    report = verify_rank_one(9)

    assert report.passed
    assert len(report) == 10
    assert [c.parameters['l'] for c in report if c.identity_id == 'rank-one-no-solution'] == [1, 3, 5, 7, 9]


def test_rank_one_mutation():
    from qzonal.zonal import verify_rank_one

    report = verify_rank_one(4, 'shift-exponent')

    assert not report.passed
    assert {c.identity_id for c in report.failures} == {'rank-one-closed-form'}


## Norms

def test_principal_values(q_context):
    from qzonal.macdonald import Partition
    from qzonal.zonal import c_lambda, c_lambda_direct, d_lambda

    q = q_context['q']

    assert c_lambda('so', Partition.of(1), 2) == 1 + q ** 2
    assert d_lambda('so', Partition.of(1), 2) == q ** 4 + q ** 2 + 1
    assert c_lambda('sp', Partition.of(1), 1) == q
    assert d_lambda('sp', Partition.of(1), 1) == q ** 2
    assert c_lambda_direct('so', Partition.of(2), 2) == c_lambda('so', Partition.of(2), 2)


def test_principal_point_from_restriction(q_context):
    from qzonal.macdonald import Partition
    from qzonal.zonal import CaseConfig, c_lambda, c_lambda_direct, rho_point

    q = q_context['q']

    assert rho_point(CaseConfig('so', 2)) == [q, 1]
    assert rho_point(CaseConfig('sp', 2)) == [q ** 3, q ** 2, q, 1]

    assert c_lambda_direct('so', Partition.of(1), 2) == q ** 2 + 1
    assert c_lambda_direct('sp', Partition.of(1), 1) == q
    assert c_lambda_direct('sp', Partition.of(2, 1), 2) == c_lambda('sp', Partition.of(2, 1), 2)
    assert c_lambda_direct('sp', Partition.of(1), 2) != c_lambda('sp', Partition.of(1), 2, prefactor=False)


def test_principal_prefactor_mutation():
    from qzonal.macdonald import Partition
    from qzonal.zonal import verify_norm_identity

    report = verify_norm_identity('sp', Partition.of(1), 1, 'drop-prefactor')

    assert 'principal-point-value' in {c.identity_id for c in report.failures}

    # SO carries no prefactor
    assert verify_norm_identity('so', Partition.of(1), 2, 'drop-prefactor').passed


@pytest.mark.parametrize('case', ['so', 'sp'])
def test_norms(case):
    from qzonal.zonal import norm_table, verify_norms

    report = verify_norms(case, 2, 2)

    assert report.passed
    assert all(row.equal for row in norm_table(case, 2, 2))


@pytest.mark.slow
@pytest.mark.parametrize('case, n', [('so', 1), ('so', 2), ('so', 3), ('sp', 1), ('sp', 2), ('sp', 3)])
def test_norms_full_range(case, n):
    from qzonal.zonal import verify_norms

    assert verify_norms(case, n).passed


def test_norms_mutation():
    from qzonal.zonal import verify_norms

    report = verify_norms('so', 2, 2, 'no-square')

    assert not report.passed
    assert {c.identity_id for c in report.failures} == {'norm-identity'}


## Constant-term scalar product

def test_series_unit(so_product):
    assert so_product(so_product.constant(1), so_product.constant(1)).scalars() == [1] + [0] * 10


def test_series_orthogonality(so_product):
    from qzonal.macdonald import Partition

    config = so_product.config
    p2 = so_product.lift(config.macdonald_p(Partition.of(2)))
    p11 = so_product.lift(config.macdonald_p(Partition.of(1, 1)))

    assert so_product.pair(p2, p11).is_zero()
    assert not so_product.pair(p2, p2).is_zero()


def test_series_norm(so_product):
    from qzonal.exactfield import TruncatedQSeries
    from qzonal.macdonald import Partition, norm_ratio_formula

    config = so_product.config
    mu = Partition.of(1)
    p = config.macdonald_p(mu)
    formula = norm_ratio_formula(mu, 2, config.ctx, config.q_m, config.t_m)

    assert so_product(p, p) == TruncatedQSeries.from_rational(formula, 10)


@pytest.mark.parametrize('case', ['so', 'sp'])
def test_series_oracle(case):
    from qzonal.zonal import verify_series

    report = verify_series(case, 2, 2, 10)

    assert report.passed
    assert {c.identity_id for c in report} == {'series-norm', 'series-orthogonality'}


@pytest.mark.slow
@pytest.mark.parametrize('case', ['so', 'sp'])
def test_series_oracle_default_order(case):
    from qzonal.zonal import verify_series

    assert verify_series(case).passed


@pytest.mark.parametrize('case', ['so', 'sp'])
def test_gram_schmidt(case):
    from qzonal.zonal import verify_gram_schmidt

    report = verify_gram_schmidt(case, 2, 2, 10)

    assert report.passed
    assert len(report) == 3


def test_series_range():
    from qzonal.exactfield import UnsupportedRangeError
    from qzonal.zonal import CaseConfig, ConstantTermScalarProduct, verify_gram_schmidt

    with pytest.raises(UnsupportedRangeError):
        verify_gram_schmidt('so', 3)

    with pytest.raises(UnsupportedRangeError):
        ConstantTermScalarProduct(CaseConfig('so', 1), 30)
