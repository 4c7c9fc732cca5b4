# Tests for verification reports
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

import pytest


def test_matrix_counterexample_cell(caplog):
    import logging
    from qzonal.qmatrix import FMatrix
    from qzonal.report import Report, Status

    logger = logging.getLogger()
    caplog.set_level(logging.DEBUG)

    report = Report()
    report.check('identity', {'N': 2}, FMatrix.identity(2), FMatrix.identity(2))
    failed = report.check('identity', {'N': 2}, FMatrix([[1, 0], [1, 1]]), FMatrix.identity(2))

    logger.info(f'Failed check: {failed}')

    assert not report.passed
    assert len(report) == 2
    assert failed.status is Status.FAIL
    assert failed.counterexample_cell == (1, 0)
    assert report.failures == [failed]


def test_json_output():
    import json
    from fractions import Fraction
    from qzonal.report import Report

    report = Report()
    report.record('first', {'N': 3, 'epsilon': '+'}, True)
    report.record('second', {'weight': Fraction(1, 2)}, False, cell=(0, 2), detail='example')

    decoded = json.loads(report.to_json())

    assert decoded == [
        {'identity_id': 'first', 'parameters': {'N': 3, 'epsilon': '+'}, 'status': 'pass'},
        {'identity_id': 'second', 'parameters': {'weight': [1, 2]}, 'status': 'fail',
         'counterexample_cell': [0, 2], 'detail': 'example'}]

    assert report.to_json() == Report(list(report)).to_json()


def test_extend_keeps_order():
    from qzonal.report import Report

    first, second = Report(), Report()
    first.record('a', {}, True)
    second.record('b', {}, True)
    second.record('c', {}, True)

    assert [c.identity_id for c in first.extend(second)] == ['a', 'b', 'c']
    assert first.passed


@pytest.mark.parametrize('lhs, rhs, expected', [
    ([1, 2, 3], [1, 5, 3], (1,)),
    ([1], [1, 2], ('length', 1, 2)),
    ({'a': 1, 'b': 0}, {'a': 1}, None),
    ({'a': 1}, {'a': 2}, 'a'),
    (3, 4, ()),
    (3, 3, None),
])
def test_first_difference(lhs, rhs, expected):
    from qzonal.report import first_difference

    assert first_difference(lhs, rhs) == expected


def test_first_difference_of_laurent_polynomials():
    from qzonal.exactfield import MultiLaurent
    from qzonal.report import first_difference

    variables = ('x', 'y')
    x = MultiLaurent.monomial(variables, {'x': 1})
    y = MultiLaurent.monomial(variables, {'y': 1})

    assert first_difference(x + y, x + y) is None
    assert first_difference(x + y, x) == (0, 1)


def test_simplify():
    from fractions import Fraction
    from qzonal.exactfield import context
    from qzonal.report import Status, simplify

    q = context('q')['q']

    assert simplify(Fraction(1, 2)) == [1, 2]
    assert simplify(Status.PASS) == 'pass'
    assert simplify({1: (2, 3)}) == {'1': [2, 3]}
    assert simplify(q + 1) == {
        'numerator': [{'exponents': [1], 'coeff': [1, 1]}, {'exponents': [0], 'coeff': [1, 1]}],
        'denominator': [{'exponents': [0], 'coeff': [1, 1]}]}


def test_tabular_and_pretty_output():
    from qzonal.report import Report

    report = Report()
    report.record('hecke', {'N': 2}, True)
    report.record('hecke', {'N': 3}, False, cell=(4, 1))

    frame = report.to_frame()
    assert list(frame.columns) == ['identity_id', 'parameters', 'status', 'counterexample_cell']
    assert list(frame['status']) == ['pass', 'fail']
    assert frame['counterexample_cell'][1] == '[4, 1]'

    pretty = report.to_pretty()
    assert '[FAIL] hecke (N=3) at [4, 1]' in pretty
    assert pretty.endswith('1/2 identities hold')
