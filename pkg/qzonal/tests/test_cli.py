# Tests for the command-line surface
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

import json

import pytest


def test_verify_json(capsys):
    from qzonal.cli import run

    assert run(['verify', 'ybe', '--N', '3']) == 0

    entries = json.loads(capsys.readouterr().out)
    assert entries
    assert all(entry['status'] == 'pass' for entry in entries)
    assert {'identity_id', 'parameters', 'status'} <= set(entries[0])


def test_output_is_deterministic(capsys):
    from qzonal.cli import run

    outputs = []
    for _ in range(2):
        assert run(['macdonald', 'compute', '--mu', '21', '--n', '3']) == 0
        outputs.append(capsys.readouterr().out)

    assert outputs[0] == outputs[1]


def test_verify_pretty(capsys):
    from qzonal.cli import run

    assert run(['verify', 'reflection', '--case', 'so', '--n', '1', '--format', 'pretty']) == 0
    assert capsys.readouterr().out.strip().endswith('4/4 identities hold')


def test_mutation_exit_code(capsys):
    from qzonal.cli import run

    assert run(['verify', 'ybe', '--N', '2', '--mutate', 'zero-offdiagonal']) == 1

    entries = json.loads(capsys.readouterr().out)
    failures = [entry for entry in entries if entry['status'] == 'fail']
    assert failures
    assert all('counterexample_cell' in entry for entry in failures)


@pytest.mark.parametrize('argv', [
    [],
    ['verify'],
    ['verify', 'ybe', '--N', '2', '--mutate', 'no-such-rule'],
    ['verify', 'zonal', '--case', 'sp', '--n', '9', '--mu', '1'],
    ['verify', 'zonal', '--case', 'so', '--n', '2', '--mu', '1,2'],
    ['verify', 'ybe'],
    ['verify', 'reflection', '--case', 'gl', '--n', '1'],
    ['verify', 'zonal', '--case', 'so', '--n', '1', '--mu', '11'],
    ['macdonald', 'compute', '--mu', '111', '--n', '2'],
    ['verify', 'zonal', '--case', 'so', '--n', '2', '--mu', '1', '--mutate', 'no-square'],
])
def test_usage_errors(argv, capsys):
    from qzonal.cli import run

    assert run(argv) == 2
    assert capsys.readouterr().err


@pytest.mark.parametrize('error', [
    'PoleError', 'DivisionByZeroError', 'NonUnitSeriesError', 'NotLaurentError', 'VariableSetMismatch'])
def test_computation_errors(error, monkeypatch, capsys):
    from qzonal import exactfield
    from qzonal.cli import COMPUTATION_ERROR, VERIFIERS, run

    def failing(config):
        raise getattr(exactfield, error)('denominator vanished')

    monkeypatch.setitem(VERIFIERS, 'ybe', failing)

    assert run(['verify', 'ybe', '--N', '2']) == COMPUTATION_ERROR
    err = capsys.readouterr().err
    assert error in err
    assert 'usage:' not in err


def test_range_error_is_usage(capsys):
    from qzonal.cli import run

    assert run(['verify', 'ybe', '--N', '5']) == 2
    assert 'usage:' in capsys.readouterr().err


def test_triangular_matrices_command(capsys):
    from qzonal.cli import run

    assert run(['verify', 'sec54', '--n', '2']) == 0
    assert all(entry['status'] == 'pass' for entry in json.loads(capsys.readouterr().out))


def test_help(capsys):
    from qzonal.cli import run

    assert run(['--help']) == 0
    assert 'qzonal verify ybe --N 3' in capsys.readouterr().out


def test_macdonald_compute(capsys):
    from qzonal.cli import run

    assert run(['macdonald', 'compute', '--mu', '2', '--n', '2']) == 0

    document = json.loads(capsys.readouterr().out)
    assert document['mu'] == [2]
    assert document['n'] == 2
    assert set(document['coefficients']) == {'(2)', '(1,1)'}
    assert document['coefficients']['(2)'] == {
        'numerator': [{'exponents': [0, 0], 'coeff': [1, 1]}],
        'denominator': [{'exponents': [0, 0], 'coeff': [1, 1]}]}


def test_macdonald_norm_csv(capsys):
    from qzonal.cli import run

    assert run(['macdonald', 'norm', '--mu', '1', '--n', '2', '--format', 'csv']) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header == 'mu,n,principal_specialization,norm_ratio'


def test_norm_table_file(tmp_path):
    import pandas as pd
    from qzonal.cli import NORM_COLUMNS, run

    output = tmp_path / 'tables' / 'norms.csv'

    assert run(['tables', 'norms', '--case', 'so', '--n', '2', '--max-size', '2', '--output', str(output)]) == 0

    frame = pd.read_csv(output)
    assert list(frame.columns) == NORM_COLUMNS
    assert len(frame) == 4
    assert frame['equal'].all()


def test_output_directory(tmp_path, monkeypatch, capsys):
    from qzonal.cli import OUTPUT_DIR_VARIABLE, run

    monkeypatch.setenv(OUTPUT_DIR_VARIABLE, str(tmp_path))

    assert run(['verify', 'rank-one', '--max-l', '4']) == 0
    assert capsys.readouterr().out == ''

    entries = json.loads((tmp_path / 'verify-rank-one.json').read_text())
    assert len(entries) == 5


def test_oracle(capsys):
    from qzonal.cli import run

    assert run(['oracle', 'gram-schmidt', '--case', 'sp', '--n', '2', '--degree', '1', '--K', '8']) == 0
    assert all(entry['status'] == 'pass' for entry in json.loads(capsys.readouterr().out))


def test_run_config(monkeypatch):
    from qzonal.cli import RunConfig, UsageError, _build_parser
    from qzonal.macdonald import Partition
    from qzonal.qmatrix import Case

    monkeypatch.delenv('QZONAL_OUTPUT_DIR', raising=False)
    parser = _build_parser()

    config = RunConfig.from_args(parser.parse_args(['verify', 'zonal', '--case', 'sp', '--n', '2', '--mu', '21']))
    assert config.case is Case.SP
    assert config.mu == Partition.of(2, 1)
    assert config.output is None
    assert config.output_format == 'json'
    assert config.parameters == {'case': Case.SP, 'n': 2, 'mu': Partition.of(2, 1)}

    tables = RunConfig.from_args(parser.parse_args(['tables', 'norms', '--case', 'so', '--n', '1']))
    assert tables.output_format == 'csv'
    assert tables.max_size == 4

    with pytest.raises(UsageError):
        RunConfig.from_args(parser.parse_args(['verify', 'pfaffian', '--n', '-1']))
