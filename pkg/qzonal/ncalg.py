# The quantum matrix algebra as a normal-ordering rewrite system,
# quantum minors, the X = T J T^t entries and restriction to the diagonal torus
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

from fractions import Fraction
from itertools import permutations
from logging import getLogger
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from qzonal.exactfield import (
    Context, MultiLaurent, RationalFunction, UnsupportedRangeError, VariableSetMismatch,
    context, q_factorial)
from qzonal.qmatrix import Case, FMatrix, a_names, a_specialization, j_matrix, r_matrix
from qzonal.report import Report
from qzonal.util import index_subsets, inversion_count

logger = getLogger()

Monomial = Tuple[int, ...]

MUTATIONS = ('same-row-q2', 'same-column-q2', 'drop-correction')


class QuantumMatrixAlgebra:
    """
    Generators t_ij, 1 <= i, j <= N, with the relations

        t_ki t_kj = q t_kj t_ki,  t_ik t_jk = q t_jk t_ik  (i < j)
        t_ij t_kl = t_kl t_ij  (i < k, j > l)
        t_ij t_kl - t_kl t_ij = (q - q^-1) t_il t_kj  (i < k, j < l)

    Generator t_ij has code (i-1)N + (j-1); a monomial is a nondecreasing tuple of codes.
    Products of a normal monomial by one generator are memoized per instance.
    """

    def __init__(self, n: int, ctx: Optional[Context] = None, mutation: Optional[str] = None):
        if n < 1:
            raise UnsupportedRangeError(f'N must be positive, got {n}')
        if mutation is not None and mutation not in MUTATIONS:
            raise ValueError(f'Unknown rewrite mutation {mutation}; expected one of {MUTATIONS}')
        self.n = n
        self.ctx = ctx or context('q')
        self.mutation = mutation
        q = self.ctx['q']
        self._swap_row = q ** (-2 if mutation == 'same-row-q2' else -1)
        self._swap_column = q ** (-2 if mutation == 'same-column-q2' else -1)
        self._correction = -(q - q ** -1)
        self._memo: Dict[Tuple[Monomial, int], Dict[Monomial, RationalFunction]] = {}

    def __repr__(self):
        return f'QuantumMatrixAlgebra(N={self.n}, mutation={self.mutation})'

    def code(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f'Generator t_{i}{j} outside N={self.n}')
        return (i - 1) * self.n + (j - 1)

    def indices(self, code: int) -> Tuple[int, int]:
        return code // self.n + 1, code % self.n + 1

    def generator(self, i: int, j: int) -> 'NCPolynomial':
        return NCPolynomial(self, {(self.code(i, j),): self.ctx.one})

    def one(self) -> 'NCPolynomial':
        return NCPolynomial(self, {(): self.ctx.one})

    def zero(self) -> 'NCPolynomial':
        return NCPolynomial(self, {})

    def generators(self) -> FMatrix:
        return FMatrix.from_function(self.n, self.n, self.generator)

    # Straightening

    def _swap(self, h: int, g: int) -> List[Tuple[RationalFunction, Tuple[int, int]]]:
        """Rewrite the out-of-order pair h g (h > g) as ordered pairs."""

        a, b = self.indices(h)
        c, d = self.indices(g)

        if a == c:
            return [(self._swap_row, (g, h))]
        if b == d:
            return [(self._swap_column, (g, h))]
        if b < d:
            return [(self.ctx.one, (g, h))]

        terms = [(self.ctx.one, (g, h))]
        if self.mutation != 'drop-correction':
            terms.append((self._correction, (self.code(c, b), self.code(a, d))))
        return terms

    def times_generator(self, monomial: Monomial, g: int) -> Dict[Monomial, RationalFunction]:
        """Normal form of a normal monomial multiplied on the right by one generator."""

        key = (monomial, g)
        cached = self._memo.get(key)
        if cached is not None:
            return cached

        if not monomial or monomial[-1] <= g:
            result = {monomial + (g,): self.ctx.one}
        else:
            prefix, h = monomial[:-1], monomial[-1]
            result: Dict[Monomial, RationalFunction] = {}
            for coeff, (first, second) in self._swap(h, g):
                for m1, c1 in self.times_generator(prefix, first).items():
                    for m2, c2 in self.times_generator(m1, second).items():
                        value = result.get(m2)
                        term = coeff * c1 * c2
                        result[m2] = term if value is None else value + term
            result = {m: c for m, c in result.items() if c}

        self._memo[key] = result
        return result

    def multiply_monomials(self, left: Monomial, right: Monomial) -> Dict[Monomial, RationalFunction]:
        current = {left: self.ctx.one}
        for g in right:
            step: Dict[Monomial, RationalFunction] = {}
            for m, c in current.items():
                for m2, c2 in self.times_generator(m, g).items():
                    value = step.get(m2)
                    step[m2] = c * c2 if value is None else value + c * c2
            current = {m: c for m, c in step.items() if c}
        return current

    @property
    def memo_size(self) -> int:
        return len(self._memo)


class NCPolynomial:
    """Element of the quantum matrix algebra in normal form: monomial -> coefficient."""

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra: QuantumMatrixAlgebra, terms: Optional[Dict[Monomial, RationalFunction]] = None):
        self.algebra = algebra
        self.terms: Dict[Monomial, RationalFunction] = {
            tuple(m): c for m, c in (terms or {}).items() if c}

    def _scalar(self, value) -> Optional[RationalFunction]:
        try:
            return RationalFunction(self.algebra.ctx, self.algebra.ctx.lift(value))
        except TypeError:
            return None

    def _match(self, other) -> Optional['NCPolynomial']:
        if isinstance(other, NCPolynomial):
            if other.algebra is not self.algebra:
                raise VariableSetMismatch(f'Elements of {self.algebra} and {other.algebra} do not mix')
            return other
        scalar = self._scalar(other)
        if scalar is None:
            return None
        return NCPolynomial(self.algebra, {(): scalar})

    def __add__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return NCPolynomial(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, NCPolynomial):
            scalar = self._scalar(other)
            if scalar is None: return NotImplemented
            return NCPolynomial(self.algebra, {m: c * scalar for m, c in self.terms.items()})
        o = self._match(other)
        terms: Dict[Monomial, RationalFunction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                for m, c in self.algebra.multiply_monomials(m1, m2).items():
                    term = c1 * c2 * c
                    terms[m] = terms[m] + term if m in terms else term
        return NCPolynomial(self.algebra, terms)

    def __rmul__(self, other):
        scalar = self._scalar(other)
        if scalar is None: return NotImplemented
        return NCPolynomial(self.algebra, {m: scalar * c for m, c in self.terms.items()})

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError('Negative powers are not available in the quantum matrix algebra')
        result = self.algebra.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        return not (self - o).terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def map_coefficients(self, function, algebra: Optional[QuantumMatrixAlgebra] = None) -> 'NCPolynomial':
        return NCPolynomial(algebra or self.algebra, {m: function(c) for m, c in self.terms.items()})

    def substitute(self, bindings, algebra: Optional[QuantumMatrixAlgebra] = None) -> 'NCPolynomial':
        """Specialize coefficient parameters; the target algebra's context receives the values."""
        algebra = algebra or self.algebra
        return self.map_coefficients(lambda c: c.substitute(bindings, algebra.ctx), algebra)

    def serialize(self):
        n = self.algebra.n
        entries = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            counts: Dict[int, int] = {}
            for g in m:
                counts[g] = counts.get(g, 0) + 1
            entries.append({
                'monomial': [[g // n + 1, g % n + 1, k] for g, k in sorted(counts.items())],
                'coeff': self.terms[m].serialize()})
        return entries

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            word = '*'.join('t{}{}'.format(*self.algebra.indices(g)) for g in m) or '1'
            parts.append(f'({self.terms[m]})*{word}')
        return ' + '.join(parts)

    def __repr__(self):
        return f'NCPolynomial({self})'


def nc_mul(p: NCPolynomial, r: NCPolynomial) -> NCPolynomial:
    return p * r


## Quantum minors

def quantum_minor(algebra: QuantumMatrixAlgebra, rows: Sequence[int], columns: Sequence[int],
                  sign: int = -1) -> NCPolynomial:
    """
    xi^I_J = sum_w (-q)^{l(w)} t_{i_w(1) j_1} ... t_{i_w(r) j_r}

    `sign` = +1 replaces (-q) by (+q).
    """

    rows, columns = tuple(rows), tuple(columns)
    if len(rows) != len(columns) or not rows:
        raise ValueError(f'Minor needs nonempty index sets of equal size, got {rows} and {columns}')
    if list(rows) != sorted(set(rows)) or list(columns) != sorted(set(columns)):
        raise ValueError(f'Minor index sets must be strictly increasing, got {rows} and {columns}')

    q = algebra.ctx['q']
    result = algebra.zero()
    for w in permutations(range(len(rows))):
        term = algebra.one() * (sign * q) ** inversion_count(w)
        for k, j in zip(w, columns):
            term = term * algebra.generator(rows[k], j)
        result = result + term
    return result


def quantum_det(algebra: QuantumMatrixAlgebra) -> NCPolynomial:
    full = tuple(range(1, algebra.n + 1))
    return quantum_minor(algebra, full, full)


def classical_minor(rows: Sequence[int], columns: Sequence[int], ctx: Context) -> RationalFunction:
    """Determinant of the submatrix of commuting symbols t_ij, via sympy."""
    symbols = sympy.Matrix([[sympy.Symbol(f't{i}{j}') for j in columns] for i in rows])
    return ctx.wrap(ctx.field.from_expr(sympy.expand(symbols.det(method='berkowitz'))))


def commutative_image(p: NCPolynomial, ctx: Context) -> RationalFunction:
    """Image at q = 1 in the commutative field `ctx`, whose parameters include t11 ... tNN."""

    result = ctx.zero
    for m, c in p.terms.items():
        term = c.substitute({'q': 1}, ctx)
        for g in m:
            term = term * ctx['t{}{}'.format(*p.algebra.indices(g))]
        result = result + term
    return result


def verify_classical_limit(n: int) -> Report:
    """Quantum minors at q = 1 against the commutative determinant."""

    if not 1 <= n <= 3:
        raise UnsupportedRangeError(f'N must be between 1 and 3, got {n}')
    algebra = QuantumMatrixAlgebra(n)
    ctx = context('q', *(f't{i}{j}' for i in range(1, n + 1) for j in range(1, n + 1)))
    report = Report()
    for r in range(1, n + 1):
        for rows in index_subsets(n, r):
            for columns in index_subsets(n, r):
                minor = quantum_minor(algebra, rows, columns)
                report.check('classical-minor', {'N': n, 'I': list(rows), 'J': list(columns)},
                             commutative_image(minor, ctx), classical_minor(rows, columns, ctx))
    return report


## X = T J T^t

MAX_X = {Case.SO: 3, Case.SP: 2}


def algebra_for(case: Case, n: int, mutation: Optional[str] = None) -> QuantumMatrixAlgebra:
    case = Case.parse(case)
    return QuantumMatrixAlgebra(case.dimension(n), context('q', *a_names(n)), mutation)


def x_entries(case: Case, n: int, algebra: Optional[QuantumMatrixAlgebra] = None) -> FMatrix:
    """
    SO: x_ij = sum_k t_ik t_jk a_k
    Sp: x_ij = sum_k (t_{i,2k-1} t_{j,2k} - q t_{i,2k} t_{j,2k-1}) a_k
    """

    case = Case.parse(case)
    algebra = algebra or algebra_for(case, n)
    t = algebra.generators()
    return t @ j_matrix(case, n, algebra.ctx) @ t.T


X_MUTATIONS = MUTATIONS


def verify_x_relations(case: Case, n: int, mutation: Optional[str] = None) -> Report:
    """Symmetry relations of X entrywise and the reflection-type relation coefficient by coefficient."""

    case = Case.parse(case)
    if not 1 <= n <= MAX_X[case]:
        raise UnsupportedRangeError(f'n must be between 1 and {MAX_X[case]} for {case.name}, got {n}')
    if mutation is not None and mutation not in X_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {X_MUTATIONS}')

    algebra = algebra_for(case, n, mutation)
    q = algebra.ctx['q']
    dim = case.dimension(n)
    params = {'case': case.name, 'n': n}
    report = Report()

    x = x_entries(case, n, algebra)
    for i in range(dim):
        if case is Case.SP:
            report.check('x-diagonal-vanishes', {**params, 'i': i + 1}, x[i, i], algebra.zero())
        for j in range(i + 1, dim):
            cell = {**params, 'i': i + 1, 'j': j + 1}
            if case is Case.SO:
                report.check('x-q-symmetric', cell, x[i, j], x[j, i] * q)
            else:
                report.check('x-q-antisymmetric', cell, x[i, j] * q + x[j, i], algebra.zero())

    logger.debug(f'Checking reflection-type relation for X at {case.name} n={n}')
    r = r_matrix(dim, '+', algebra.ctx)
    rt2 = r.partial_transpose(2)
    eye = FMatrix.identity(dim)
    x1, x2 = x.kron(eye), eye.kron(x)
    report.check('x-reflection-equation', params, r @ x2 @ rt2 @ x1, x1 @ rt2 @ x2 @ r)
    logger.debug(f'Rewrite memo holds {algebra.memo_size} products')

    return report


## Quantum Pfaffian

PFAFFIAN_MUTATIONS = ('flip-sign',)


def pairings(m: int) -> Iterable[Tuple[int, ...]]:
    """Permutations w of 1..m with w(2k-1) < w(2k)."""
    for w in permutations(range(1, m + 1)):
        if all(w[2 * k] < w[2 * k + 1] for k in range(m // 2)):
            yield w


def quantum_pfaffian_check(n: int, mutation: Optional[str] = None) -> Report:
    """[n]_{q^4}! det_q(T) a_1...a_n = sum_w (-q)^{l(w)} x_{w1 w2} ... x_{w(2n-1) w(2n)}"""

    if not 1 <= n <= 2:
        raise UnsupportedRangeError(f'n must be 1 or 2, got {n}')
    if mutation is not None and mutation not in PFAFFIAN_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {PFAFFIAN_MUTATIONS}')

    algebra = algebra_for(Case.SP, n)
    ctx = algebra.ctx
    q = ctx['q']
    x = x_entries(Case.SP, n, algebra)
    base = q if mutation == 'flip-sign' else -q

    rhs = algebra.zero()
    for w in pairings(2 * n):
        term = algebra.one() * base ** inversion_count(w)
        for k in range(n):
            term = term * x[w[2 * k] - 1, w[2 * k + 1] - 1]
        rhs = rhs + term

    a_product = ctx.one
    for name in a_names(n):
        a_product = a_product * ctx[name]
    lhs = quantum_det(algebra) * (q_factorial(n, 4, ctx) * a_product)

    report = Report()
    report.check('quantum-pfaffian', {'n': n}, lhs, rhs)
    return report


## Torus restriction and fundamental spherical functions

def z_names(n: int) -> Tuple[str, ...]:
    return tuple(f'z{k}' for k in range(1, n + 1))


def restrict_to_torus(p: NCPolynomial) -> MultiLaurent:
    """t_ij -> delta_ij z_j, as a Laurent polynomial with rational-function coefficients."""

    n = p.algebra.n
    terms: Dict[Tuple[int, ...], RationalFunction] = {}
    for m, c in p.terms.items():
        exponents = [0] * n
        for g in m:
            i, j = p.algebra.indices(g)
            if i != j:
                break
            exponents[i - 1] += 1
        else:
            key = tuple(exponents)
            terms[key] = terms[key] + c if key in terms else c
    return MultiLaurent(z_names(n), terms)


def phi_fundamental(case: Case, n: int, r: int, which: str = 'phi',
                    algebra: Optional[QuantumMatrixAlgebra] = None, squared: Optional[bool] = None) -> NCPolynomial:
    """
    SO: phi0 = sum_J (xi^{1..r}_J)^2 a_1^-1...a_r^-1 a_J and phi = sum_{I,J} (xi^I_J)^2 a_I^-1 a_J.
    Sp: the same sums over paired indices {2i-1, 2i}, with plain (unsquared) minors.
    """

    case = Case.parse(case)
    if not 1 <= r <= n:
        raise UnsupportedRangeError(f'r must be between 1 and {n}, got {r}')
    if which not in ('phi0', 'phi'):
        raise ValueError(f'Expected phi0 or phi, got {which}')

    algebra = algebra or algebra_for(case, n)
    squared = case is Case.SO if squared is None else squared
    a = {k: algebra.ctx[f'a{k}'] for k in range(1, n + 1)}

    def weight(subset):
        w = algebra.ctx.one
        for k in subset:
            w = w * a[k]
        return w

    def expand(subset):
        if case is Case.SO:
            return subset
        return tuple(index for k in subset for index in (2 * k - 1, 2 * k))

    row_sets = [tuple(range(1, r + 1))] if which == 'phi0' else list(index_subsets(n, r))
    result = algebra.zero()
    for rows in row_sets:
        for columns in index_subsets(n, r):
            minor = quantum_minor(algebra, expand(rows), expand(columns))
            if squared:
                minor = minor * minor
            result = result + minor * (weight(columns) / weight(rows))
    return result


def elementary_symmetric(values: Sequence[MultiLaurent], r: int) -> MultiLaurent:
    result = MultiLaurent(values[0].variables)
    for subset in index_subsets(len(values), r):
        term = MultiLaurent.constant(values[0].variables)
        for k in subset:
            term = term * values[k - 1]
        result = result + term
    return result


def torus_x_values(case: Case, n: int, coefficient: Optional[RationalFunction] = None) -> List[MultiLaurent]:
    """x_k = z_k^2 (SO) or z_{2k-1} z_{2k} (Sp) as Laurent monomials."""

    case = Case.parse(case)
    names = z_names(case.dimension(n))
    one = coefficient if coefficient is not None else Fraction(1)
    if case is Case.SO:
        return [MultiLaurent.monomial(names, {names[k]: 2}, one) for k in range(n)]
    return [MultiLaurent.monomial(names, {names[2 * k]: 1, names[2 * k + 1]: 1}, one) for k in range(n)]


MAX_RESTRICTION = {Case.SO: 3, Case.SP: 2}
RESTRICTION_MUTATIONS = ('flip-square',)


def verify_restriction(case: Case, n: int, mutation: Optional[str] = None) -> Report:
    """Torus restrictions of phi, phi0 and powers of the quantum determinant."""

    case = Case.parse(case)
    if mutation is not None and mutation not in RESTRICTION_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {RESTRICTION_MUTATIONS}')
    if not 1 <= n <= MAX_RESTRICTION[case]:
        raise UnsupportedRangeError(f'n must be between 1 and {MAX_RESTRICTION[case]} for {case.name}, got {n}')

    algebra = algebra_for(case, n)
    ctx = algebra.ctx
    special = a_specialization(case, n, ctx)
    params = {'case': case.name, 'n': n}
    report = Report()
    x_values = torus_x_values(case, n, ctx.one)
    squared = (case is Case.SO) != (mutation == 'flip-square')

    for r in range(1, n + 1):
        phi = phi_fundamental(case, n, r, 'phi', algebra, squared)
        restricted = restrict_to_torus(phi).map_coefficients(lambda c: c.substitute(special))
        report.check('phi-restriction', {**params, 'r': r}, restricted, elementary_symmetric(x_values, r))

        report.check('phi-restriction-symbolic-a', {**params, 'r': r},
                     restrict_to_torus(phi), elementary_symmetric(x_values, r))

        phi0 = phi_fundamental(case, n, r, 'phi0', algebra, squared)
        leading = MultiLaurent.constant(x_values[0].variables, ctx.one)
        for k in range(r):
            leading = leading * x_values[k]
        report.check('phi0-restriction', {**params, 'r': r}, restrict_to_torus(phi0), leading)

    det = quantum_det(algebra)
    names = z_names(algebra.n)
    volume = MultiLaurent.monomial(names, {name: 1 for name in names}, ctx.one)
    for ell in (1, 2):
        report.check('determinant-power-restriction', {**params, 'l': ell},
                     restrict_to_torus(det ** ell), volume ** ell)

    return report


## Centrality

CENTRALITY_MUTATIONS = ('drop-correction',)


def centrality_check(n: int, mutation: Optional[str] = None) -> Report:
    """det_q(T) t_ij = t_ij det_q(T) for all generators."""

    if not 2 <= n <= 3:
        raise UnsupportedRangeError(f'N must be 2 or 3, got {n}')
    if mutation is not None and mutation not in CENTRALITY_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {CENTRALITY_MUTATIONS}')

    algebra = QuantumMatrixAlgebra(n, mutation=mutation)
    det = quantum_det(algebra)
    report = Report()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t = algebra.generator(i, j)
            report.check('determinant-central', {'N': n, 'i': i, 'j': j}, det * t, t * det)
    return report
