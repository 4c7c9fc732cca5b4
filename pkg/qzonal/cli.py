# Command-line surface: verifiers, Macdonald computations, the series oracle and norm tables
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from logging import getLogger
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from qzonal.exactfield import QZonalError, UnsupportedRangeError
from qzonal.macdonald import Partition, macdonald_p, norm_ratio_formula, principal_specialization_formula
from qzonal.ncalg import (
    CENTRALITY_MUTATIONS, PFAFFIAN_MUTATIONS, RESTRICTION_MUTATIONS, X_MUTATIONS, centrality_check,
    quantum_pfaffian_check, verify_restriction, verify_x_relations)
from qzonal.qmatrix import (
    GK_MUTATIONS, LEMMA56_MUTATIONS, REFLECTION_MUTATIONS, SECTION54_MUTATIONS, VECTOR_REP_MUTATIONS,
    YBE_MUTATIONS, Case, lemma56_check, verify_gk_relations, verify_reflection, verify_section54,
    verify_vector_rep, verify_ybe)
from qzonal.report import Report, simplify
from qzonal.zonal import (
    DEFAULT_ORDER, MAX_NORM_SIZE, NORM_MUTATIONS, RANK_ONE_MUTATIONS, ZONAL_MUTATIONS, norm_table,
    verify_gram_schmidt, verify_norms, verify_rank_one, verify_zonal)

logger = getLogger()

OUTPUT_DIR_VARIABLE = 'QZONAL_OUTPUT_DIR'
FORMATS = ('json', 'csv', 'pretty')
COMPUTATION_ERROR = 3
NORM_COLUMNS = ['case', 'mu', 'n', 'c_lambda', 'd_lambda', 'ratio', 'formula_ratio', 'equal']

# Mutation rules accepted by each verify action
MUTATIONS: Dict[str, Tuple[str, ...]] = {
    'ybe': YBE_MUTATIONS,
    'reflection': REFLECTION_MUTATIONS,
    'xalg': X_MUTATIONS,
    'pfaffian': PFAFFIAN_MUTATIONS,
    'gk': GK_MUTATIONS,
    'sec54': SECTION54_MUTATIONS,
    'lemma56': LEMMA56_MUTATIONS,
    'zonal': ZONAL_MUTATIONS,
    'norms': NORM_MUTATIONS,
    'centrality': CENTRALITY_MUTATIONS,
    'restriction': RESTRICTION_MUTATIONS,
    'vector-rep': VECTOR_REP_MUTATIONS,
    'rank-one': RANK_ONE_MUTATIONS,
}


class UsageError(QZonalError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one invocation."""

    command: str
    action: str
    case: Optional[Case] = None
    n: Optional[int] = None
    mu: Optional[Partition] = None
    max_size: Optional[int] = None
    max_l: Optional[int] = None
    degree: Optional[int] = None
    order: int = DEFAULT_ORDER
    mutation: Optional[str] = None
    output_format: str = 'json'
    output: Optional[Path] = None
    verbose: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        if args.command is None or getattr(args, 'action', None) is None:
            raise UsageError('A command and an action are required, see --help')

        n = getattr(args, 'n', None)
        if n is not None and n < 0:
            raise UsageError(f'Dimension must be nonnegative, got {n}')

        try:
            case = Case.parse(args.case) if getattr(args, 'case', None) else None
            mu = Partition.parse(args.mu) if getattr(args, 'mu', None) is not None else None
        except ValueError as e:
            raise UsageError(str(e)) from None
        if mu is not None and n is not None and mu.length > n:
            raise UsageError(f'{mu} has more than {n} parts')

        mutation = getattr(args, 'mutate', None)
        if mutation is not None and mutation not in MUTATIONS[args.action]:
            raise UsageError(f'Unknown mutation {mutation}; expected one of {MUTATIONS[args.action]}')

        output_format = args.format or ('csv' if args.command == 'tables' else 'json')

        return cls(
            command=args.command,
            action=args.action,
            case=case,
            n=n,
            mu=mu,
            max_size=getattr(args, 'max_size', None),
            max_l=getattr(args, 'max_l', None),
            degree=getattr(args, 'degree', None),
            order=getattr(args, 'order', None) or DEFAULT_ORDER,
            mutation=mutation,
            output_format=output_format,
            output=resolve_output(args.output, args.command, args.action, output_format),
            verbose=args.verbose)

    @property
    def parameters(self) -> Dict[str, object]:
        names = ('case', 'n', 'mu', 'max_size', 'max_l', 'degree', 'mutation')
        return {name: getattr(self, name) for name in names if getattr(self, name) is not None}


def resolve_output(output: Optional[str], command: str, action: str, output_format: str) -> Optional[Path]:
    """Explicit path, else a file in $QZONAL_OUTPUT_DIR, else None for standard output."""

    if output is not None:
        return Path(output)
    directory = os.environ.get(OUTPUT_DIR_VARIABLE)
    if directory:
        extension = 'txt' if output_format == 'pretty' else output_format
        return Path(directory) / f'{command}-{action}.{extension}'
    return None


## Parser

def _build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(
        prog='qzonal',
        description='Exact verification of quantum-group identities and Macdonald zonal spherical functions.',
        epilog=(
            'Examples:\n'
            '  qzonal verify ybe --N 3\n'
            '  qzonal verify zonal --case so --n 2 --mu 2,1\n'
            '  qzonal macdonald compute --mu 2 --n 2\n'
            '  qzonal tables norms --case sp --n 2 --max-size 3 --output norms.csv\n'),
        formatter_class=argparse.RawTextHelpFormatter)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, help='Output format (default json; csv for tables)')
    common.add_argument('--output', help=f'Output file (default: ${OUTPUT_DIR_VARIABLE} or standard output)')
    common.add_argument('--verbose', '-v', action='store_true', help='Log progress at DEBUG level to stderr')

    sub = parser.add_subparsers(dest='command')

    # verify
    p_verify = sub.add_parser('verify', help='Check identities exactly and report each one.')
    verify_sub = p_verify.add_subparsers(dest='action')

    def verifier(name: str, help_text: str, *arguments: str) -> argparse.ArgumentParser:
        p = verify_sub.add_parser(name, help=help_text, parents=[common])
        _add_arguments(p, arguments)
        p.add_argument('--mutate', metavar='RULE', help='Apply a documented mutation to demonstrate failure detection')
        return p

    verifier('ybe', 'Yang-Baxter equation and R-matrix identities', 'N')
    verifier('reflection', 'Reflection equation for J(a)', 'case', 'n')
    verifier('xalg', 'Relations of X = T J T^t in the quantum matrix algebra', 'case', 'n')
    verifier('pfaffian', 'Quantum Pfaffian identity', 'n')
    verifier('gk', 'Gavrilik-Klimyk relations in the vector representation', 'n')
    verifier('sec54', 'A(t), F and G matrix identities and the one-row Hall-Littlewood polynomial', 'n')
    verifier('lemma56', 'Intertwiners between R-matrix partial transposes', 'case', 'n')
    verifier('zonal', 'Radial eigen-equation and restriction of a zonal spherical function', 'case', 'n', 'mu')
    verifier('norms', 'c(lambda)^2 / d(lambda) against the Macdonald norm formula', 'case', 'n', 'max_size')
    verifier('centrality', 'Centrality of the quantum determinant', 'N')
    verifier('restriction', 'Torus restriction of fundamental spherical functions', 'case', 'n')
    verifier('vector-rep', 'Vector representation relations from R-matrix entries', 'N')
    verifier('rank-one', 'Rank-one fixed vectors against their closed form', 'max_l')

    # macdonald
    p_macdonald = sub.add_parser('macdonald', help='Macdonald polynomials P_mu(x; q, t).')
    macdonald_sub = p_macdonald.add_subparsers(dest='action')
    _add_arguments(macdonald_sub.add_parser('compute', help='P_mu on the monomial basis', parents=[common]),
                   ('mu', 'n'))
    _add_arguments(macdonald_sub.add_parser('norm', help='Norm ratio and principal specialization',
                                            parents=[common]), ('mu', 'n'))

    # oracle
    p_oracle = sub.add_parser('oracle', help='Independent truncated q-series oracles.')
    oracle_sub = p_oracle.add_subparsers(dest='action')
    p_gram = oracle_sub.add_parser('gram-schmidt', help='Gram-Schmidt in the constant-term scalar product',
                                   parents=[common])
    _add_arguments(p_gram, ('case', 'n', 'degree', 'K'))

    # tables
    p_tables = sub.add_parser('tables', help='Tabulated computations.')
    tables_sub = p_tables.add_subparsers(dest='action')
    _add_arguments(tables_sub.add_parser('norms', help='Norm identity rows', parents=[common]),
                   ('case', 'n', 'max_size'))

    return parser


def _add_arguments(parser: argparse.ArgumentParser, arguments: Sequence[str]):
    for argument in arguments:
        if argument == 'N':
            parser.add_argument('--N', dest='n', type=int, required=True, help='Matrix size N')
        elif argument == 'n':
            parser.add_argument('--n', dest='n', type=int, required=True, help='Rank n')
        elif argument == 'case':
            parser.add_argument('--case', choices=[c.value for c in Case], required=True)
        elif argument == 'mu':
            parser.add_argument('--mu', required=True, help="Partition, e.g. '2,1' or '21'")
        elif argument == 'max_size':
            parser.add_argument('--max-size', dest='max_size', type=int, default=MAX_NORM_SIZE)
        elif argument == 'max_l':
            parser.add_argument('--max-l', dest='max_l', type=int, required=True)
        elif argument == 'degree':
            parser.add_argument('--degree', type=int, required=True)
        elif argument == 'K':
            parser.add_argument('--K', dest='order', type=int, default=DEFAULT_ORDER, help='Truncation order')


## Dispatch

VERIFIERS: Dict[str, Callable[[RunConfig], Report]] = {
    'ybe': lambda c: verify_ybe(c.n, c.mutation),
    'reflection': lambda c: verify_reflection(c.case, c.n, c.mutation),
    'xalg': lambda c: verify_x_relations(c.case, c.n, c.mutation),
    'pfaffian': lambda c: quantum_pfaffian_check(c.n, c.mutation),
    'gk': lambda c: verify_gk_relations(c.n, c.mutation),
    'sec54': lambda c: verify_section54(c.n, c.mutation),
    'lemma56': lambda c: lemma56_check(c.case, c.n, c.mutation),
    'zonal': lambda c: verify_zonal(c.case, c.mu, c.n, c.mutation),
    'norms': lambda c: verify_norms(c.case, c.n, c.max_size, c.mutation),
    'centrality': lambda c: centrality_check(c.n, c.mutation),
    'restriction': lambda c: verify_restriction(c.case, c.n, c.mutation),
    'vector-rep': lambda c: verify_vector_rep(c.n, c.mutation),
    'rank-one': lambda c: verify_rank_one(c.max_l, c.mutation),
}


def _format_report(report: Report, config: RunConfig) -> str:
    if config.output_format == 'csv':
        return report.to_frame().to_csv(index=False)
    if config.output_format == 'pretty':
        return report.to_pretty() + '\n'
    return report.to_json() + '\n'


def _format_records(records: List[dict], config: RunConfig) -> str:
    if config.output_format == 'json':
        return json.dumps(simplify(records), indent=2, sort_keys=True) + '\n'
    frame = pd.DataFrame.from_records(
        [{k: str(v) if not isinstance(v, (bool, int)) else v for k, v in r.items()} for r in records])
    if config.output_format == 'csv':
        return frame.to_csv(index=False)
    return frame.to_string(index=False) + '\n'


def run_verify(config: RunConfig) -> Tuple[str, int]:
    report = VERIFIERS[config.action](config)
    logger.debug(f'{len(report)} identities checked, {len(report.failures)} failed')
    return _format_report(report, config), 0 if report.passed else 1


def run_oracle(config: RunConfig) -> Tuple[str, int]:
    report = verify_gram_schmidt(config.case, config.n, config.degree, config.order)
    return _format_report(report, config), 0 if report.passed else 1


def run_macdonald(config: RunConfig) -> Tuple[str, int]:
    if config.action == 'compute':
        p = macdonald_p(config.mu, config.n)
        if config.output_format == 'json':
            document = {
                'mu': config.mu, 'n': config.n,
                'coefficients': {str(nu): c for nu, c in p.coeffs.items()}}
            return json.dumps(simplify(document), indent=2, sort_keys=True) + '\n', 0
        records = [{'partition': str(nu), 'coeff': p.coeffs[nu]} for nu in sorted(p.coeffs, reverse=True)]
        return _format_records(records, config), 0

    record = {
        'mu': str(config.mu),
        'n': config.n,
        'principal_specialization': principal_specialization_formula(config.mu, config.n),
        'norm_ratio': norm_ratio_formula(config.mu, config.n)}
    return _format_records([record], config), 0


def run_tables(config: RunConfig) -> Tuple[str, int]:
    rows = norm_table(config.case, config.n, config.max_size)
    records = [
        {'case': row.case, 'mu': str(row.mu), 'n': row.n, 'c_lambda': row.c_lambda, 'd_lambda': row.d_lambda,
         'ratio': row.ratio, 'formula_ratio': row.formula_ratio, 'equal': row.equal}
        for row in rows]
    if config.output_format == 'json':
        return _format_records(records, config), 0 if all(row.equal for row in rows) else 1
    frame = pd.DataFrame.from_records(
        [{k: v if isinstance(v, (bool, int)) else str(v) for k, v in r.items()} for r in records],
        columns=NORM_COLUMNS)
    text = frame.to_csv(index=False) if config.output_format == 'csv' else frame.to_string(index=False) + '\n'
    return text, 0 if all(row.equal for row in rows) else 1


COMMANDS: Dict[str, Callable[[RunConfig], Tuple[str, int]]] = {
    'verify': run_verify,
    'oracle': run_oracle,
    'macdonald': run_macdonald,
    'tables': run_tables,
}


def _write(text: str, output: Optional[Path]):
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text)
    logger.info(f'Wrote {output}')


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse, validate, dispatch and write.

    Returns 0 when all identities hold, 1 when some identity failed, 2 on a usage or range error and 3 when the
    exact arithmetic itself fails (a pole, a division by zero, a non-unit series).
    """

    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (None, 0) else 2

    logging.basicConfig(
        level=logging.DEBUG if getattr(args, 'verbose', False) else logging.WARNING,
        format='%(levelname)s:%(name)s:%(message)s',
        stream=sys.stderr)

    try:
        config = RunConfig.from_args(args)
        logger.debug(f'Running {config.command} {config.action} with {config.parameters}')
        text, code = COMMANDS[config.command](config)
    except (UsageError, UnsupportedRangeError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f'qzonal: error: {e}\n')
        return 2
    except QZonalError as e:
        logger.debug('Computation failed', exc_info=True)
        sys.stderr.write(f'qzonal: computation error: {type(e).__name__}: {e}\n')
        return COMPUTATION_ERROR

    _write(text, config.output)
    return code


def main():
    sys.exit(run())
