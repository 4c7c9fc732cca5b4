# Tests for R-matrices, reflection matrices and their matrix identities
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

import pytest


## Matrix helpers

def test_partial_transpose(q_context):
    from qzonal.qmatrix import FMatrix, r_matrix

    r = r_matrix(3, '+', q_context)

    assert r.partial_transpose(1).partial_transpose(1) == r
    assert r.partial_transpose(2).partial_transpose(2) == r
    assert r.partial_transpose(2) != r

    with pytest.raises(ValueError):
        r.partial_transpose(3)

    with pytest.raises(ValueError):
        FMatrix.identity(3).partial_transpose(1)


def test_exact_elimination(q_context):
    from qzonal.qmatrix import FMatrix

    q = q_context['q']
    m = FMatrix([[q, q_context.one], [q_context.one, q]])

    assert m.determinant() == q ** 2 - 1
    assert m @ m.inverse() == FMatrix.identity(2, q_context.one)
    assert m ** -1 == m.inverse()

    with pytest.raises(ZeroDivisionError):
        FMatrix([[1, 1], [1, 1]]).inverse()


def test_flip_is_an_involution():
    from qzonal.qmatrix import FMatrix, flip

    for n in range(1, 4):
        assert flip(n) @ flip(n) == FMatrix.identity(n * n)


## Yang-Baxter equation

def test_r_matrix_entries(q_context):
    from qzonal.qmatrix import FMatrix, r_matrix

    q = q_context['q']

    assert r_matrix(1, '+', q_context) == FMatrix([[q]])
    assert r_matrix(1, '-', q_context) == FMatrix([[q ** -1]])
    assert r_matrix(2, '+', q_context).entry(1, 1) == q
    assert r_matrix(2, '+', q_context).entry(2, 2) == 1


@pytest.mark.parametrize('n', [2, 3, pytest.param(4, marks=pytest.mark.slow)])
def test_yang_baxter(n, caplog):
    import logging
    from qzonal.qmatrix import verify_ybe

    logger = logging.getLogger()
    caplog.set_level(logging.DEBUG)

    report = verify_ybe(n)
    logger.info(f'\n{report.to_pretty()}')

    assert report.passed
    assert [c.parameters['epsilon'] for c in report if c.identity_id == 'yang-baxter'] == ['+', '-']
    assert {c.identity_id for c in report} == {
        'yang-baxter', 'r-plus-inverse', 'r-difference',
        'partial-transpose-involution', 'partial-transpose-legs', 'hecke'}


def test_yang_baxter_mutation():
    from qzonal.qmatrix import verify_ybe

    report = verify_ybe(2, 'zero-offdiagonal')

    # A diagonal R still solves the braid relation but loses the Hecke relation
    assert not report.passed
    assert {'r-difference', 'hecke'} <= {c.identity_id for c in report.failures}


def test_yang_baxter_range():
    from qzonal.exactfield import UnsupportedRangeError
    from qzonal.qmatrix import verify_ybe

    with pytest.raises(UnsupportedRangeError):
        verify_ybe(5)

    with pytest.raises(ValueError):
        verify_ybe(2, 'no-such-rule')


## Reflection equation

def test_a_specialization(q_context):
    from qzonal.qmatrix import a_specialization

    q = q_context['q']

    assert a_specialization('so', 3, q_context) == {'a1': q ** 2, 'a2': q, 'a3': 1}
    assert a_specialization('sp', 2, q_context) == {'a1': q ** 2, 'a2': 1}


@pytest.mark.parametrize('case, n', [
    ('so', 1), ('so', 2), ('sp', 1),
    pytest.param('so', 3, marks=pytest.mark.slow),
    pytest.param('so', 4, marks=pytest.mark.slow),
    pytest.param('sp', 2, marks=pytest.mark.slow),
])
def test_reflection(case, n):
    from qzonal.qmatrix import verify_reflection

    report = verify_reflection(case, n)

    assert report.passed
    assert [c.identity_id for c in report] == ['reflection-equation', 'j-inverse', 'w-eigenvector', 'star-twist']


def test_reflection_mutation():
    from qzonal.qmatrix import verify_reflection

    report = verify_reflection('so', 2, 'perturb-j')

    assert not report.passed
    assert 'j-inverse' in {c.identity_id for c in report.failures}


## Vector representation and the Gavrilik-Klimyk relations

@pytest.mark.parametrize('n', [2, 3])
def test_vector_representation(n):
    from qzonal.qmatrix import verify_vector_rep

    assert verify_vector_rep(n).passed


def test_vector_representation_torus(q_context):
    from qzonal.qmatrix import FMatrix, vector_rep

    q, one = q_context['q'], q_context.one
    rep = vector_rep(2, q_context)

    assert rep.k[0] == FMatrix.diagonal([q, one])
    assert rep.k[1] == FMatrix.diagonal([one, q])
    assert rep.k[0] @ rep.k_inverse[0] == FMatrix.identity(2, one)


def test_vector_representation_mutation():
    from qzonal.qmatrix import verify_vector_rep

    report = verify_vector_rep(2, 'swap-commutator')

    assert {c.identity_id for c in report.failures} == {'e-f-commutator'}


@pytest.mark.parametrize('n', [3, 4])
def test_gavrilik_klimyk(n):
    from qzonal.qmatrix import verify_gk_relations

    report = verify_gk_relations(n)

    assert report.passed
    assert len(report) > 0


def test_gavrilik_klimyk_mutation():
    from qzonal.qmatrix import verify_gk_relations

    report = verify_gk_relations(3, 'drop-rhs')

    assert {c.identity_id for c in report.failures} == {'gk-adjacent'}


## Triangular matrices

def test_a_matrix_inverse(q_context):
    from qzonal.qmatrix import FMatrix, a_matrix, a_matrix_inverse

    t = q_context['q'] ** 2

    assert a_matrix(3, t) @ a_matrix_inverse(3, t) == FMatrix.identity(3, q_context.one)


def test_vandermonde_is_exact():
    from qzonal.exactfield import RationalFunction
    from qzonal.qmatrix import section54_context, vandermonde

    ctx = section54_context(2)
    x1, x2 = ctx.gens('x1', 'x2')

    assert vandermonde([x1, x2], ctx) == x1 - x2
    assert vandermonde([], ctx) == 1

    # A one-point window is the empty product; its quotients must stay in the field
    single = vandermonde([x1], ctx)
    assert isinstance(single, RationalFunction)
    assert isinstance(vandermonde([x2], ctx) / single, RationalFunction)


def test_f_matrix():
    from qzonal.qmatrix import FMatrix, f_matrix, section54_context

    ctx = section54_context(2)
    t, x1, x2, xi1, xi2 = ctx.gens('t', 'x1', 'x2', 'xi1', 'xi2')

    f = f_matrix(2, ctx=ctx)
    assert f.entry(1, 2) == (1 - t) * x2 * (xi1 - xi2) / (t * (x2 - x1))
    assert f.entry(2, 1) == 0
    assert f_matrix(2, 'closed', ctx) == f

    assert f_matrix(2, ctx=ctx, xi=[1, 1]) == FMatrix.identity(2, ctx.one)

    with pytest.raises(ValueError):
        f_matrix(2, 'no-such-mode', ctx)


@pytest.mark.parametrize('n', [2, pytest.param(3, marks=pytest.mark.slow), pytest.param(4, marks=pytest.mark.slow)])
def test_triangular_matrices(n):
    from qzonal.qmatrix import verify_section54

    report = verify_section54(n)

    assert report.passed
    column_sums = [c for c in report if c.identity_id == 'g-plus-column-sum']
    assert {c.parameters['i'] for c in column_sums if c.parameters['i'] == c.parameters['j']} == set(range(1, n + 1))
    if n <= 3:
        assert 'f-from-g' in {c.identity_id for c in report}
        assert 'hall-littlewood-row' in {c.identity_id for c in report}
    else:
        assert 'f-from-g' not in {c.identity_id for c in report}


def test_triangular_matrices_mutation():
    from qzonal.qmatrix import verify_section54

    report = verify_section54(2, 'a-offdiag')

    assert not report.passed
    assert 'a-inverse' in {c.identity_id for c in report.failures}


## Intertwiners

@pytest.mark.parametrize('case, n', [
    ('so', 1), ('so', 2), ('sp', 1),
    pytest.param('so', 3, marks=pytest.mark.slow),
    pytest.param('sp', 2, marks=pytest.mark.slow),
])
def test_intertwiners(case, n):
    from qzonal.qmatrix import lemma56_check

    report = lemma56_check(case, n)

    assert report.passed
    assert [c.identity_id for c in report] == [
        'rt2-flip-expansion', 'projection-intertwines', 'injection-intertwines']


def test_intertwiners_mutation():
    from qzonal.qmatrix import lemma56_check

    report = lemma56_check('so', 1, 'drop-q')

    assert {c.identity_id for c in report.failures} == {'projection-intertwines', 'injection-intertwines'}
