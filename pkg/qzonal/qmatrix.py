# Matrices over the rational-function field: R-matrices, reflection equation,
# vector representation and the triangular matrix calculus behind the Macdonald operator
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

from enum import Enum
from logging import getLogger
from math import isqrt
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from qzonal.exactfield import Context, RationalFunction, UnsupportedRangeError, context
from qzonal.macdonald import hall_littlewood_row
from qzonal.report import Report

logger = getLogger()


class Case(Enum):
    SO = 'so'
    SP = 'sp'

    @classmethod
    def parse(cls, value) -> 'Case':
        if isinstance(value, Case):
            return value
        return cls(str(value).lower())

    def dimension(self, n: int) -> int:
        return n if self is Case.SO else 2 * n


## Dense matrices

class FMatrix:
    """
    Dense matrix with exact entries, stored as a numpy object array.

    Entries may be rational functions, integers, or noncommutative polynomials;
    products keep the left factor's entries on the left and skip zero entries.
    """

    __slots__ = ('entries',)

    def __init__(self, entries):
        if isinstance(entries, FMatrix):
            entries = entries.entries
        if isinstance(entries, np.ndarray):
            array = entries.astype(object)
        else:
            rows = [list(row) for row in entries]
            array = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
            for i, row in enumerate(rows):
                for j, value in enumerate(row):
                    array[i, j] = value
        if array.ndim != 2:
            raise ValueError(f'Expected a 2-dimensional array, got shape {array.shape}')
        self.entries = array

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> 'FMatrix':
        array = np.empty((rows, rows if cols is None else cols), dtype=object)
        array.fill(0)
        return cls(array)

    @classmethod
    def identity(cls, n: int, one=1) -> 'FMatrix':
        m = cls.zeros(n)
        for i in range(n):
            m.entries[i, i] = one
        return m

    @classmethod
    def diagonal(cls, values: Sequence) -> 'FMatrix':
        m = cls.zeros(len(values))
        for i, v in enumerate(values):
            m.entries[i, i] = v
        return m

    @classmethod
    def from_function(cls, rows: int, cols: int, function: Callable[[int, int], object]) -> 'FMatrix':
        """Build from a function of 1-based row and column indices."""
        m = cls.zeros(rows, cols)
        for i in range(rows):
            for j in range(cols):
                m.entries[i, j] = function(i + 1, j + 1)
        return m

    @classmethod
    def unit(cls, n: int, i: int, j: int, value=1) -> 'FMatrix':
        """Matrix unit e_ij (1-based) scaled by value."""
        m = cls.zeros(n)
        m.entries[i - 1, j - 1] = value
        return m

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def __getitem__(self, index):
        return self.entries[index]

    def entry(self, i: int, j: int):
        """1-based access."""
        return self.entries[i - 1, j - 1]

    # Arithmetic

    def _check_shape(self, other: 'FMatrix'):
        if self.shape != other.shape:
            raise ValueError(f'Shape mismatch: {self.shape} and {other.shape}')

    def __add__(self, other):
        if not isinstance(other, FMatrix): return NotImplemented
        self._check_shape(other)
        return FMatrix(self.entries + other.entries)

    def __sub__(self, other):
        if not isinstance(other, FMatrix): return NotImplemented
        self._check_shape(other)
        return FMatrix(self.entries - other.entries)

    def __neg__(self):
        return FMatrix(-self.entries)

    def __mul__(self, scalar):
        if isinstance(scalar, FMatrix): return NotImplemented
        return self.map(lambda e: e * scalar if e else e)

    def __rmul__(self, scalar):
        return self.map(lambda e: scalar * e if e else e)

    def __matmul__(self, other):
        if not isinstance(other, FMatrix): return NotImplemented
        rows, inner = self.shape
        if inner != other.shape[0]:
            raise ValueError(f'Cannot multiply {self.shape} by {other.shape}')
        cols = other.shape[1]
        result = FMatrix.zeros(rows, cols)
        right_support = [[j for j in range(cols) if other.entries[k, j]] for k in range(inner)]
        for i in range(rows):
            for k in range(inner):
                a = self.entries[i, k]
                if not a:
                    continue
                for j in right_support[k]:
                    term = a * other.entries[k, j]
                    current = result.entries[i, j]
                    result.entries[i, j] = term if isinstance(current, int) and current == 0 else current + term
        return result

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FMatrix.identity(self.shape[0])
        for _ in range(exponent):
            result = result @ self
        return result

    def __eq__(self, other):
        if not isinstance(other, FMatrix): return NotImplemented
        if self.shape != other.shape: return False
        return all(self.entries[index] == other.entries[index] for index in np.ndindex(*self.shape))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(bool(e) for e in self.entries.flat)

    def map(self, function: Callable) -> 'FMatrix':
        result = FMatrix.zeros(*self.shape)
        for index in np.ndindex(*self.shape):
            result.entries[index] = function(self.entries[index])
        return result

    def substitute(self, bindings: Mapping, target: Optional[Context] = None) -> 'FMatrix':
        return self.map(lambda e: e.substitute(bindings, target) if isinstance(e, RationalFunction) else e)

    @property
    def T(self) -> 'FMatrix':
        return FMatrix(self.entries.T.copy())

    def kron(self, other: 'FMatrix') -> 'FMatrix':
        return FMatrix(np.kron(self.entries, other.entries))

    def partial_transpose(self, leg: int) -> 'FMatrix':
        """Transpose one tensor leg of an operator on V x V (leg 1 slow, leg 2 fast)."""

        rows, cols = self.shape
        n = isqrt(rows)
        if rows != cols or n * n != rows:
            raise ValueError(f'Partial transpose needs a square N^2 x N^2 matrix, got {self.shape}')
        axes = (0, 3, 2, 1) if leg == 2 else (2, 1, 0, 3)
        if leg not in (1, 2):
            raise ValueError(f'Leg must be 1 or 2, got {leg}')
        return FMatrix(self.entries.reshape(n, n, n, n).transpose(axes).reshape(rows, cols).copy())

    # Exact elimination for commutative entries

    def determinant(self):
        rows, cols = self.shape
        if rows != cols:
            raise ValueError('Determinant of a non-square matrix')
        work = [list(row) for row in self.entries]
        det = 1
        for c in range(rows):
            pivot = next((r for r in range(c, rows) if work[r][c]), None)
            if pivot is None:
                return 0 * det
            if pivot != c:
                work[c], work[pivot] = work[pivot], work[c]
                det = -det
            det = det * work[c][c]
            for r in range(c + 1, rows):
                if work[r][c]:
                    ratio = work[r][c] / work[c][c]
                    work[r] = [a - ratio * b for a, b in zip(work[r], work[c])]
        return det

    def inverse(self) -> 'FMatrix':
        n, cols = self.shape
        if n != cols:
            raise ValueError('Inverse of a non-square matrix')
        work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.entries)]
        for c in range(n):
            pivot = next((r for r in range(c, n) if work[r][c]), None)
            if pivot is None:
                raise ZeroDivisionError('Singular matrix')
            work[c], work[pivot] = work[pivot], work[c]
            lead = work[c][c]
            work[c] = [e / lead if e else e for e in work[c]]
            for r in range(n):
                if r != c and work[r][c]:
                    factor = work[r][c]
                    work[r] = [a - factor * b for a, b in zip(work[r], work[c])]
        return FMatrix([row[n:] for row in work])

    def serialize(self):
        from qzonal.report import simplify
        return [[simplify(e) for e in row] for row in self.entries]

    def __str__(self):
        return '\n'.join('[' + ', '.join(str(e) for e in row) + ']' for row in self.entries)

    def __repr__(self):
        return f'FMatrix{self.shape}'


## Tensor helpers

def flip(n: int) -> FMatrix:
    """P = sum_ij e_ij (x) e_ji"""
    m = FMatrix.zeros(n * n)
    for i in range(n):
        for j in range(n):
            m.entries[i * n + j, j * n + i] = 1
    return m


def swap_legs(m: FMatrix) -> FMatrix:
    """M_21 = P M_12 P"""
    p = flip(isqrt(m.shape[0]))
    return p @ m @ p


def embed(m: FMatrix, legs: Tuple[int, int]) -> FMatrix:
    """Embed an operator on V x V into V x V x V at the given pair of legs."""

    n = isqrt(m.shape[0])
    eye = FMatrix.identity(n)
    if legs == (1, 2):
        return m.kron(eye)
    if legs == (2, 3):
        return eye.kron(m)
    if legs == (1, 3):
        p23 = eye.kron(flip(n))
        return p23 @ m.kron(eye) @ p23
    raise ValueError(f'Unsupported legs {legs}')


## R-matrices

MAX_R_DIMENSION = 4


def r_matrix(n: int, sign: str = '+', ctx: Optional[Context] = None, mutation: Optional[str] = None) -> FMatrix:
    """
    R^+ = sum q^{d_ij} e_ii (x) e_jj + (q - q^-1) sum_{i<j} e_ij (x) e_ji
    R^- = sum q^{-d_ij} e_ii (x) e_jj - (q - q^-1) sum_{i>j} e_ij (x) e_ji

    Rows and columns are indexed by (i, k) -> i*N + k.
    """

    if sign not in ('+', '-'):
        raise ValueError(f'Sign must be + or -, got {sign}')
    ctx = ctx or context('q')
    q = ctx['q']
    diagonal = q if sign == '+' else q ** -1
    off = (q - q ** -1) if sign == '+' else -(q - q ** -1)

    m = FMatrix.zeros(n * n)
    for i in range(n):
        for j in range(n):
            m.entries[i * n + j, i * n + j] = diagonal if i == j else ctx.one
            if (i < j) if sign == '+' else (i > j):
                m.entries[i * n + j, j * n + i] = off

    if mutation == 'zero-offdiagonal' and n > 1:
        if sign == '+':
            m.entries[0 * n + 1, 1 * n + 0] = 0
        else:
            m.entries[1 * n + 0, 0 * n + 1] = 0
    elif mutation is not None and mutation != 'zero-offdiagonal':
        raise ValueError(f'Unknown R-matrix mutation {mutation}')

    return m


YBE_MUTATIONS = ('zero-offdiagonal',)


def verify_ybe(n: int, mutation: Optional[str] = None) -> Report:
    """Yang-Baxter equation for both R-matrices plus their basic relations."""

    if not 1 <= n <= MAX_R_DIMENSION:
        raise UnsupportedRangeError(f'N must be between 1 and {MAX_R_DIMENSION}, got {n}')
    if mutation is not None and mutation not in YBE_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {YBE_MUTATIONS}')

    ctx = context('q')
    q = ctx['q']
    report = Report()
    r = {s: r_matrix(n, s, ctx, mutation) for s in '+-'}
    params = {'N': n}

    for sign, rm in r.items():
        logger.debug(f'Checking Yang-Baxter equation for R{sign} at N={n}')
        r12, r13, r23 = embed(rm, (1, 2)), embed(rm, (1, 3)), embed(rm, (2, 3))
        report.check('yang-baxter', {**params, 'epsilon': sign}, r12 @ r13 @ r23, r23 @ r13 @ r12)

    report.check('r-plus-inverse', params, r['+'] @ swap_legs(r['-']), FMatrix.identity(n * n))
    report.check('r-difference', params, r['+'] - r['-'], flip(n) * (q - q ** -1))

    rt2 = r['+'].partial_transpose(2)
    report.check('partial-transpose-involution', params, rt2.partial_transpose(2), r['+'])
    report.check('partial-transpose-legs', params, swap_legs(r['+']).partial_transpose(1), rt2)

    braid = r['+'] @ flip(n)
    eye = FMatrix.identity(n * n)
    report.check(
        'hecke', params,
        (braid - eye * q) @ (braid + eye * q ** -1), FMatrix.zeros(n * n))

    return report


## J(a) and the reflection equation

def a_names(n: int) -> Tuple[str, ...]:
    return tuple(f'a{k}' for k in range(1, n + 1))


def h_names(n: int) -> Tuple[str, ...]:
    return tuple(f'h{k}' for k in range(1, n + 1))


def a_specialization(case: Case, n: int, ctx: Context) -> Dict[str, RationalFunction]:
    """a = (q^{n-1}, ..., 1) for SO and (q^{2(n-1)}, ..., 1) for Sp."""

    case = Case.parse(case)
    q = ctx['q']
    step = 1 if case is Case.SO else 2
    return {f'a{k}': q ** (step * (n - k)) for k in range(1, n + 1)}


def j_matrix(case: Case, n: int, ctx: Optional[Context] = None, a: Optional[Sequence] = None) -> FMatrix:
    """
    SO: J(a) = sum_k a_k e_kk
    Sp: J(a) = sum_k a_k (e_{2k-1,2k} - q e_{2k,2k-1})
    """

    case = Case.parse(case)
    ctx = ctx or context('q', *a_names(n))
    if a is None:
        a = [ctx[name] for name in a_names(n)]
    q = ctx['q']

    if case is Case.SO:
        return FMatrix.diagonal(list(a))

    m = FMatrix.zeros(2 * n)
    for k in range(n):
        m.entries[2 * k, 2 * k + 1] = a[k]
        m.entries[2 * k + 1, 2 * k] = -q * a[k]
    return m


def j_inverse(case: Case, n: int, ctx: Optional[Context] = None, a: Optional[Sequence] = None) -> FMatrix:
    """J(a)^-1 = J(a^-1) for SO and -q^-1 J(a^-1) for Sp."""

    case = Case.parse(case)
    ctx = ctx or context('q', *a_names(n))
    if a is None:
        a = [ctx[name] for name in a_names(n)]
    inverted = j_matrix(case, n, ctx, [x ** -1 for x in a])
    return inverted if case is Case.SO else inverted * (-ctx['q'] ** -1)


def w_vector(j: FMatrix) -> FMatrix:
    """Column vector sum_ij J_ij v_i (x) v_j."""
    n = j.shape[0]
    return FMatrix(j.entries.reshape(n * n, 1).copy())


MAX_REFLECTION = {Case.SO: 4, Case.SP: 2}
REFLECTION_MUTATIONS = ('perturb-j',)


def verify_reflection(case: Case, n: int, mutation: Optional[str] = None) -> Report:
    """Reflection equation for symbolic J(a), inverse formula, w_J eigenvector, star twist."""

    case = Case.parse(case)
    if not 1 <= n <= MAX_REFLECTION[case]:
        raise UnsupportedRangeError(f'n must be between 1 and {MAX_REFLECTION[case]} for {case.name}, got {n}')
    if mutation is not None and mutation not in REFLECTION_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {REFLECTION_MUTATIONS}')

    dim = case.dimension(n)
    ctx = context('q', *a_names(n))
    q = ctx['q']
    params = {'case': case.name, 'n': n}
    report = Report()

    j = j_matrix(case, n, ctx)
    if mutation == 'perturb-j' and dim > 1:
        j = j + FMatrix.unit(dim, 1, 2)

    r = r_matrix(dim, '+', ctx)
    rt2 = r.partial_transpose(2)
    eye = FMatrix.identity(dim)
    j1, j2 = j.kron(eye), eye.kron(j)

    logger.debug(f'Checking reflection equation for {case.name} n={n}')
    report.check('reflection-equation', params, r @ j2 @ rt2 @ j1, j1 @ rt2 @ j2 @ r)

    report.check('j-inverse', params, j @ j_inverse(case, n, ctx), FMatrix.identity(dim, ctx.one))

    eigenvalue = q if case is Case.SO else -q ** -1
    w = w_vector(j)
    report.check('w-eigenvector', params, r @ flip(dim) @ w, w * eigenvalue)

    special = a_specialization(case, n, ctx)
    a_values = [special[name] for name in a_names(n)]
    d_inverse = FMatrix.diagonal([q ** -(dim - 1 - k) for k in range(dim)])
    twisted = d_inverse @ j_matrix(case, n, ctx, a_values) @ d_inverse
    scale = ctx.one if case is Case.SO else q ** -1
    report.check(
        'star-twist', params, twisted,
        j_matrix(case, n, ctx, [x ** -1 for x in a_values]) * scale)

    return report


## Vector representation

class VectorRepresentation(NamedTuple):
    """Images of the generators on V, read off the R-matrices."""
    l_plus: Dict[Tuple[int, int], FMatrix]
    l_minus: Dict[Tuple[int, int], FMatrix]
    k: List[FMatrix]
    k_inverse: List[FMatrix]
    e: List[FMatrix]
    f: List[FMatrix]


def r_block(r: FMatrix, i: int, j: int) -> FMatrix:
    """The N x N block with entries R[(i,k),(j,l)] (1-based i, j)."""
    n = isqrt(r.shape[0])
    return FMatrix(r.entries[(i - 1) * n:i * n, (j - 1) * n:j * n].copy())


def vector_rep(n: int, ctx: Optional[Context] = None) -> VectorRepresentation:
    """
    L^+_ii gives q^{eps_i}; L^+_{i,i+1} = (q - q^-1) q^{eps_i} E_{i+1,i} gives f_i;
    L^-_{i+1,i} = -(q - q^-1) E_{i,i+1} q^{-eps_i} gives e_i.
    """

    if n < 2:
        raise UnsupportedRangeError(f'Vector representation needs N >= 2, got {n}')
    ctx = ctx or context('q')
    q = ctx['q']
    r_plus, r_minus = r_matrix(n, '+', ctx), r_matrix(n, '-', ctx)

    l_plus = {(i, j): r_block(r_plus, i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    l_minus = {(i, j): r_block(r_minus, i, j) for i in range(1, n + 1) for j in range(1, n + 1)}

    k = [l_plus[(i, i)] for i in range(1, n + 1)]
    k_inverse = [l_minus[(i, i)] for i in range(1, n + 1)]
    scale = (q - q ** -1) ** -1

    f = [k_inverse[i - 1] @ l_plus[(i, i + 1)] * scale for i in range(1, n)]
    e = [l_minus[(i + 1, i)] @ k[i - 1] * (-scale) for i in range(1, n)]

    return VectorRepresentation(l_plus, l_minus, k, k_inverse, e, f)


VECTOR_REP_MUTATIONS = ('swap-commutator',)


def verify_vector_rep(n: int, mutation: Optional[str] = None) -> Report:
    """Defining relations of the quantized enveloping algebra on the vector representation."""

    if not 2 <= n <= MAX_R_DIMENSION:
        raise UnsupportedRangeError(f'N must be between 2 and {MAX_R_DIMENSION}, got {n}')
    if mutation is not None and mutation not in VECTOR_REP_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {VECTOR_REP_MUTATIONS}')

    ctx = context('q')
    q = ctx['q']
    rep = vector_rep(n, ctx)
    report = Report()
    eye = FMatrix.identity(n, ctx.one)
    zero = FMatrix.zeros(n)

    report.check('k-of-first-weight', {'N': n}, rep.k[0],
                 FMatrix.diagonal([q] + [ctx.one] * (n - 1)))

    for i in range(n):
        report.check('k-inverse', {'N': n, 'i': i + 1}, rep.k[i] @ rep.k_inverse[i], eye)
        for j in range(n):
            report.check('k-commute', {'N': n, 'i': i + 1, 'j': j + 1},
                         rep.k[i] @ rep.k[j], rep.k[j] @ rep.k[i])

    for i in range(n - 1):
        report.check('e-matrix-unit', {'N': n, 'i': i + 1}, rep.e[i], FMatrix.unit(n, i + 1, i + 2, ctx.one))
        report.check('f-matrix-unit', {'N': n, 'i': i + 1}, rep.f[i], FMatrix.unit(n, i + 2, i + 1, ctx.one))
        for j in range(n):
            power = (1 if i == j else 0) - (1 if j == i + 1 else 0)
            report.check('k-conjugates-e', {'N': n, 'i': i + 1, 'j': j + 1},
                         rep.k[j] @ rep.e[i] @ rep.k_inverse[j], rep.e[i] * q ** power)
            report.check('k-conjugates-f', {'N': n, 'i': i + 1, 'j': j + 1},
                         rep.k[j] @ rep.f[i] @ rep.k_inverse[j], rep.f[i] * q ** (-power))

    for i in range(n - 1):
        big_k = rep.k[i] @ rep.k_inverse[i + 1]
        big_k_inverse = rep.k_inverse[i] @ rep.k[i + 1]
        for j in range(n - 1):
            commutator = rep.e[i] @ rep.f[j] - rep.f[j] @ rep.e[i]
            if mutation == 'swap-commutator':
                commutator = -commutator
            expected = (big_k - big_k_inverse) * (q - q ** -1) ** -1 if i == j else zero
            report.check('e-f-commutator', {'N': n, 'i': i + 1, 'j': j + 1}, commutator, expected)

    for i in range(n - 1):
        for j in range(n - 1):
            if abs(i - j) == 1:
                for gens, name in ((rep.e, 'serre-e'), (rep.f, 'serre-f')):
                    a, b = gens[i], gens[j]
                    report.check(name, {'N': n, 'i': i + 1, 'j': j + 1},
                                 a @ a @ b - a @ b @ a * (q + q ** -1) + b @ a @ a, zero)
            elif abs(i - j) > 1:
                report.check('e-far-commute', {'N': n, 'i': i + 1, 'j': j + 1},
                             rep.e[i] @ rep.e[j], rep.e[j] @ rep.e[i])

    return report


GK_MUTATIONS = ('drop-rhs',)


def theta_images(n: int, ctx: Optional[Context] = None) -> List[FMatrix]:
    """theta_j = f_j - q t_j^-1 e_j with t_j = q^{eps_j - eps_{j+1}}."""

    ctx = ctx or context('q')
    q = ctx['q']
    rep = vector_rep(n, ctx)
    thetas = []
    for j in range(n - 1):
        t_inverse = rep.k_inverse[j] @ rep.k[j + 1]
        thetas.append(rep.f[j] - t_inverse @ rep.e[j] * q)
    return thetas


def verify_gk_relations(n: int, mutation: Optional[str] = None) -> Report:
    """Gavrilik-Klimyk relations for the images of theta_j on the vector representation."""

    if not 2 <= n <= MAX_R_DIMENSION:
        raise UnsupportedRangeError(f'n must be between 2 and {MAX_R_DIMENSION}, got {n}')
    if mutation is not None and mutation not in GK_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {GK_MUTATIONS}')

    ctx = context('q')
    q = ctx['q']
    thetas = theta_images(n, ctx)
    report = Report()

    for i, a in enumerate(thetas):
        for j, b in enumerate(thetas):
            params = {'n': n, 'i': i + 1, 'j': j + 1}
            if abs(i - j) == 1:
                lhs = a @ a @ b - a @ b @ a * (q + q ** -1) + b @ a @ a
                rhs = FMatrix.zeros(n) if mutation == 'drop-rhs' else -b
                report.check('gk-adjacent', params, lhs, rhs)
            elif abs(i - j) > 1:
                report.check('gk-commute', params, a @ b, b @ a)

    return report


## Triangular matrices of the Macdonald operator

def section54_context(n: int) -> Context:
    names = ['t']
    names += [f'x{k}' for k in range(1, n + 1)]
    names += [f'xi{k}' for k in range(1, n + 1)]
    names += [f'eta{k}' for k in range(1, n + 1)]
    return context(*names)


def vandermonde(values: Sequence[RationalFunction], ctx: Context) -> RationalFunction:
    """Delta(v_1, ..., v_m) = prod_{i<j} (v_i - v_j), as an element of the field of `ctx`."""
    result = ctx.one
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            result = result * (values[i] - values[j])
    return result


def a_matrix(n: int, t, offdiagonal: Optional[Callable] = None) -> FMatrix:
    """A(t) = I + (1 - t^-1) sum_{i<j} e_ij"""
    coefficient = (1 - t ** -1) if offdiagonal is None else offdiagonal(t)
    return FMatrix.from_function(n, n, lambda i, j: t ** 0 if i == j else (coefficient if i < j else 0))


def a_matrix_inverse(n: int, t) -> FMatrix:
    """A(t)^-1 = I + (1 - t) sum_{i<j} t^{i-j} e_ij"""
    return FMatrix.from_function(n, n, lambda i, j: t ** 0 if i == j else ((1 - t) * t ** (i - j) if i < j else 0))


def _symbols(ctx: Context, prefix: str, n: int) -> List[RationalFunction]:
    return [ctx[f'{prefix}{k}'] for k in range(1, n + 1)]


def f_matrix(n: int, mode: str = 'recurrence', ctx: Optional[Context] = None,
             xi: Optional[Sequence] = None) -> FMatrix:
    """
    Upper triangular F(x, xi; t) commuting with A(x; t).

    `mode` is 'recurrence' (diagonal xi, then increasing j - i) or 'closed' (explicit sums).
    """

    ctx = ctx or section54_context(n)
    t = ctx['t']
    x = _symbols(ctx, 'x', n)
    xi = list(xi) if xi is not None else _symbols(ctx, 'xi', n)

    f = FMatrix.zeros(n)

    if mode == 'recurrence':
        for i in range(n):
            f.entries[i, i] = xi[i] * ctx.one
        for gap in range(1, n):
            for i in range(n - gap):
                j = i + gap
                if x[i] == x[j]:
                    raise ZeroDivisionError(f'x{i + 1} and x{j + 1} collide')
                left = sum((f.entries[i, k] for k in range(i, j)), ctx.zero)
                right = sum((x[k] / x[j] * f.entries[k, j] for k in range(i + 1, j + 1)), ctx.zero)
                f.entries[i, j] = (1 - t) / (t * (1 - x[i] / x[j])) * (left - right)
        return f

    if mode == 'closed':
        for i in range(n):
            for j in range(i, n):
                window = x[i:j + 1]
                total = ctx.zero
                for k in range(i, j + 1):
                    shifted = list(window)
                    shifted[k - i] = t * x[k]
                    total += xi[k] * x[k] * x[j] * vandermonde(shifted, ctx) / (
                        (t * x[k] - x[i]) * (t * x[k] - x[j]) * vandermonde(window, ctx))
                f.entries[i, j] = t ** (i - j) * (1 - t) ** 2 * total
        return f

    raise ValueError(f'Unknown mode {mode}')


def g_matrices(n: int, ctx: Optional[Context] = None) -> Tuple[FMatrix, FMatrix]:
    """G(x; t) diagonalizing A(x; t) and its inverse, from the explicit entry formulas."""

    ctx = ctx or section54_context(n)
    t = ctx['t']
    x = _symbols(ctx, 'x', n)
    g_plus, g_minus = FMatrix.zeros(n), FMatrix.zeros(n)

    for i in range(n):
        for j in range(i, n):
            window = x[i:j + 1]
            delta = vandermonde(window, ctx)
            g_plus.entries[i, j] = t ** (i - j) * (1 - t) * x[j] * vandermonde(
                window[:-1] + [t * x[j]], ctx) / ((x[i] - t * x[j]) * delta)
            g_minus.entries[i, j] = t ** (i - j) * (t - 1) * x[j] * vandermonde(
                [t * x[i]] + window[1:], ctx) / ((t * x[i] - x[j]) * delta)

    return g_plus, g_minus


MAX_SECTION54 = 4
SECTION54_MUTATIONS = ('a-offdiag',)


def verify_section54(n: int, mutation: Optional[str] = None) -> Report:
    """Identities of the F, G and A matrices; the full suite up to n = 3, a reduced one at n = 4."""

    if not 2 <= n <= MAX_SECTION54:
        raise UnsupportedRangeError(f'n must be between 2 and {MAX_SECTION54}, got {n}')
    if mutation is not None and mutation not in SECTION54_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {SECTION54_MUTATIONS}')

    full = n <= 3
    ctx = section54_context(n)
    t = ctx['t']
    x = _symbols(ctx, 'x', n)
    xi = _symbols(ctx, 'xi', n)
    eta = _symbols(ctx, 'eta', n)
    params = {'n': n}
    report = Report()
    eye = FMatrix.identity(n, ctx.one)

    offdiagonal = (lambda s: 1 - s) if mutation == 'a-offdiag' else None
    a = a_matrix(n, t, offdiagonal)
    ax = a @ FMatrix.diagonal(x)

    report.check('a-inverse', params, a @ a_matrix_inverse(n, t), eye)

    logger.debug(f'Building F by recurrence for n={n}')
    f = f_matrix(n, 'recurrence', ctx)

    left = sum((t ** (n - 1 - i) * f.entries[i, j] for i in range(n) for j in range(i, n)), ctx.zero)
    right = ctx.zero
    for k in range(n):
        shifted = list(x)
        shifted[k] = t * x[k]
        right += xi[k] * vandermonde(shifted, ctx) / vandermonde(x, ctx)
    report.check('f-weighted-sum', params, left, right)

    g_plus, g_minus = g_matrices(n, ctx)
    report.check('g-inverse', params, g_plus @ g_minus, eye)

    for i in range(n):
        for j in range(i, n):
            window = x[i:j + 1]
            delta = vandermonde(window, ctx)
            report.check(
                'g-plus-column-sum', {**params, 'i': i + 1, 'j': j + 1},
                sum((t ** (j - k) * g_plus.entries[k, j] for k in range(i, j + 1)), ctx.zero),
                vandermonde(window[:-1] + [t * x[j]], ctx) / delta)
            report.check(
                'g-minus-row-sum', {**params, 'i': i + 1, 'j': j + 1},
                sum((g_minus.entries[i, k] for k in range(i, j + 1)), ctx.zero),
                t ** (i - j) * vandermonde([t * x[i]] + window[1:], ctx) / delta)

    if not full:
        return report

    report.check('f-closed-form', params, f_matrix(n, 'closed', ctx), f)
    report.check('a-commutes-with-f', params, ax @ f, f @ ax)
    report.check('g-diagonalizes-a', params, ax @ g_plus, g_plus @ FMatrix.diagonal(x))
    report.check('f-from-g', params, g_plus @ FMatrix.diagonal(xi) @ g_minus, f)

    for i in range(n):
        for j in range(i + 1, n):
            cell = {**params, 'i': i + 1, 'j': j + 1}
            report.check(
                'g-recurrence', cell,
                (1 - x[i] / x[j]) * g_plus.entries[i, j],
                (1 - t ** -1) * sum((x[k] / x[j] * g_plus.entries[k, j] for k in range(i + 1, j + 1)), ctx.zero))
            report.check(
                'g-ratio', cell, g_plus.entries[i, j],
                t ** -1 * (x[i + 1] - t * x[j]) / (x[i] - x[j]) * g_plus.entries[i + 1, j])
            numerator = ctx.one
            for k in range(i + 1, j + 1):
                numerator *= x[k] - t * x[j]
            denominator = ctx.one
            for k in range(i, j):
                denominator *= x[k] - x[j]
            report.check('g-product', cell, g_plus.entries[i, j], t ** (i - j) * numerator / denominator)
            report.check(
                'g-inverse-recurrence', cell,
                (x[i] / x[j] - 1) * g_plus.entries[i, j],
                (1 - t) * sum((t ** (i - k) * g_plus.entries[k, j] for k in range(i + 1, j + 1)), ctx.zero))

    report.check('f-unit', params, f_matrix(n, 'recurrence', ctx, [ctx.one] * n), eye)
    f_eta = f_matrix(n, 'recurrence', ctx, eta)
    report.check('f-multiplicative', params, f @ f_eta,
                 f_matrix(n, 'recurrence', ctx, [a_ * b_ for a_, b_ in zip(xi, eta)]))
    report.check('f-at-x', params, f_matrix(n, 'recurrence', ctx, x), ax)
    report.check('f-inverse', params, f @ f_matrix(n, 'recurrence', ctx, [v ** -1 for v in xi]), eye)

    for ell in range(1, 4):
        bindings = {f'xi{k}': x[k - 1] ** ell for k in range(1, n + 1)}
        specialized = left.substitute(bindings)
        row = hall_littlewood_row(ell, n)
        expected = t ** (n - 1) * row.to_rational(ctx, {'t': t ** -1})
        report.check('hall-littlewood-row', {**params, 'l': ell}, specialized, expected)

    return report


## Intertwiners of the radial reduction

MAX_LEMMA56 = {Case.SO: 3, Case.SP: 2}
LEMMA56_MUTATIONS = ('drop-q',)


def projections(case: Case, n: int, ctx: Context) -> Tuple[FMatrix, FMatrix]:
    """pi_W (n x N^2) and iota_W (N^2 x n)."""

    case = Case.parse(case)
    dim = case.dimension(n)
    q = ctx['q']
    pi, iota = FMatrix.zeros(n, dim * dim), FMatrix.zeros(dim * dim, n)

    for k in range(n):
        if case is Case.SO:
            pi.entries[k, k * dim + k] = ctx.one
            iota.entries[k * dim + k, k] = ctx.one
        else:
            odd, even = 2 * k, 2 * k + 1
            pi.entries[k, odd * dim + odd] = q
            pi.entries[k, even * dim + even] = q ** -1
            iota.entries[odd * dim + odd, k] = ctx.one
            iota.entries[even * dim + even, k] = ctx.one

    return pi, iota


def lemma56_check(case: Case, n: int, mutation: Optional[str] = None) -> Report:
    """Intertwining identities of R~ = R^t2 P J_2 H_1 J_1^-1 H_1 with pi_W and iota_W."""

    case = Case.parse(case)
    if not 1 <= n <= MAX_LEMMA56[case]:
        raise UnsupportedRangeError(f'n must be between 1 and {MAX_LEMMA56[case]} for {case.name}, got {n}')
    if mutation is not None and mutation not in LEMMA56_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {LEMMA56_MUTATIONS}')

    dim = case.dimension(n)
    ctx = context('q', *a_names(n), *h_names(dim))
    q = ctx['q']
    h = [ctx[name] for name in h_names(dim)]
    params = {'case': case.name, 'n': n}
    report = Report()

    r = r_matrix(dim, '+', ctx)
    rt2p = r.partial_transpose(2) @ flip(dim)

    expansion = FMatrix.zeros(dim * dim)
    for i in range(dim):
        for j in range(dim):
            expansion = expansion + FMatrix.unit(dim, i + 1, j + 1).kron(
                FMatrix.unit(dim, j + 1, i + 1, q if i == j else ctx.one))
            if i < j:
                expansion = expansion + FMatrix.unit(dim, i + 1, j + 1).kron(
                    FMatrix.unit(dim, i + 1, j + 1, q - q ** -1))
    report.check('rt2-flip-expansion', params, rt2p, expansion)

    eye = FMatrix.identity(dim)
    hh = FMatrix.diagonal(h)
    j2 = eye.kron(j_matrix(case, n, ctx))
    h1 = hh.kron(eye)
    j1_inverse = j_inverse(case, n, ctx).kron(eye)
    r_tilde = rt2p @ j2 @ h1 @ j1_inverse @ h1

    if case is Case.SO:
        weights = [h[k] ** 2 for k in range(n)]
        scalar, t = q, q ** 2
    else:
        weights = [h[2 * k] * h[2 * k + 1] for k in range(n)]
        scalar, t = -q ** 2, q ** 4
    if mutation == 'drop-q':
        scalar = ctx.one if case is Case.SO else -ctx.one

    d = a_matrix(n, t) @ FMatrix.diagonal(weights) * scalar
    pi, iota = projections(case, n, ctx)

    logger.debug(f'Checking intertwiners for {case.name} n={n}')
    report.check('projection-intertwines', params, pi @ r_tilde, d @ pi)
    report.check('injection-intertwines', params, r_tilde @ iota, iota @ d)

    return report
