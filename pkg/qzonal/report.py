# Verification reports and their JSON-native form
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from logging import getLogger
from typing import Any, Iterator, List, Mapping, Optional

import numpy as np
import pandas as pd

logger = getLogger()


class Status(Enum):
    PASS = 'pass'
    FAIL = 'fail'


def simplify(value: Any) -> Any:
    """Convert a value to JSON-native structures."""

    if isinstance(value, Enum):
        return value.value
    if hasattr(value, 'serialize'):
        return simplify(value.serialize())
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    if isinstance(value, np.ndarray) or isinstance(value, np.generic):
        return simplify(value.tolist())
    if isinstance(value, Mapping):
        return {str(simplify(k)): simplify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [simplify(v) for v in value]
    return value


@dataclass(frozen=True)
class IdentityCheck:
    identity_id: str
    parameters: Mapping[str, Any]
    status: Status
    counterexample_cell: Optional[Any] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_simplified(self) -> dict:
        simplified = {
            'identity_id': self.identity_id,
            'parameters': simplify(self.parameters),
            'status': self.status.value}
        if self.counterexample_cell is not None:
            simplified['counterexample_cell'] = simplify(self.counterexample_cell)
        if self.detail is not None:
            simplified['detail'] = self.detail
        return simplified


def first_difference(lhs: Any, rhs: Any) -> Optional[Any]:
    """
    Locate the first cell where two values differ.

    Returns None when they agree, () when scalars differ, an index tuple for matrices
    and arrays, or a key for mappings.
    """

    lhs_entries = getattr(lhs, 'entries', lhs)
    rhs_entries = getattr(rhs, 'entries', rhs)

    if isinstance(lhs_entries, np.ndarray) or isinstance(rhs_entries, np.ndarray):
        lhs_entries, rhs_entries = np.asarray(lhs_entries, dtype=object), np.asarray(rhs_entries, dtype=object)
        if lhs_entries.shape != rhs_entries.shape:
            return ('shape', list(lhs_entries.shape), list(rhs_entries.shape))
        for index in np.ndindex(*lhs_entries.shape):
            if lhs_entries[index] != rhs_entries[index]:
                return tuple(int(i) for i in index)
        return None

    if isinstance(lhs, Mapping) and isinstance(rhs, Mapping):
        for key in sorted(set(lhs) | set(rhs), key=str):
            if lhs.get(key, 0) != rhs.get(key, 0):
                return key
        return None

    if isinstance(lhs, (list, tuple)) and isinstance(rhs, (list, tuple)):
        if len(lhs) != len(rhs):
            return ('length', len(lhs), len(rhs))
        for index, (a, b) in enumerate(zip(lhs, rhs)):
            if a != b:
                return (index,)
        return None

    for attribute in ('terms', 'coeffs'):
        if type(lhs) is type(rhs) and isinstance(getattr(lhs, attribute, None), Mapping):
            if lhs == rhs:
                return None
            return min(getattr(lhs - rhs, attribute), default=())

    return None if lhs == rhs else ()


class Report:
    """Ordered, append-only collection of identity checks."""

    def __init__(self, checks: Optional[List[IdentityCheck]] = None):
        self.checks: List[IdentityCheck] = list(checks or [])

    def record(
            self, identity_id: str, parameters: Mapping[str, Any], holds: bool,
            cell: Optional[Any] = None, detail: Optional[str] = None) -> IdentityCheck:

        check = IdentityCheck(
            identity_id=identity_id,
            parameters=dict(parameters),
            status=Status.PASS if holds else Status.FAIL,
            counterexample_cell=None if holds else cell,
            detail=detail)

        if holds:
            logger.debug(f'{identity_id} {dict(parameters)}: pass')
        else:
            logger.info(f'{identity_id} {dict(parameters)}: FAIL at {cell}')

        self.checks.append(check)
        return check

    def check(self, identity_id: str, parameters: Mapping[str, Any], lhs: Any, rhs: Any,
              detail: Optional[str] = None) -> IdentityCheck:
        cell = first_difference(lhs, rhs)
        return self.record(identity_id, parameters, cell is None, cell, detail)

    def extend(self, other: 'Report') -> 'Report':
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def __iter__(self) -> Iterator[IdentityCheck]:
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def to_simplified(self) -> List[dict]:
        return [c.to_simplified() for c in self.checks]

    def to_json(self) -> str:
        return json.dumps(self.to_simplified(), indent=2, sort_keys=True)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame.from_records(
            [{
                'identity_id': c.identity_id,
                'parameters': json.dumps(simplify(c.parameters), sort_keys=True),
                'status': c.status.value,
                'counterexample_cell': json.dumps(simplify(c.counterexample_cell))
                if c.counterexample_cell is not None else ''}
             for c in self.checks],
            columns=['identity_id', 'parameters', 'status', 'counterexample_cell'])

    def to_pretty(self) -> str:
        lines = []
        for c in self.checks:
            params = ', '.join(f'{k}={simplify(v)}' for k, v in c.parameters.items())
            mark = 'PASS' if c.passed else 'FAIL'
            cell = f' at {simplify(c.counterexample_cell)}' if not c.passed else ''
            lines.append(f'[{mark}] {c.identity_id} ({params}){cell}')
        lines.append(f'{len(self.checks) - len(self.failures)}/{len(self.checks)} identities hold')
        return '\n'.join(lines)
