# Zonal spherical functions on the torus: radial eigen-equations, rank-one fixed vectors,
# norm identities and the truncated constant-term scalar product
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from logging import getLogger
from math import factorial
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from qzonal.exactfield import (
    MultiLaurent, RationalFunction, TruncatedQSeries, UnsupportedRangeError, context,
    q_number, q_pochhammer, qseries_expand_infinite_factor)
from qzonal.macdonald import (
    MacdonaldOperator, Partition, SymmetricPolynomial, evaluate, macdonald_p,
    monomial_symmetric_value, norm_ratio_formula, partitions, principal_specialization_formula,
    schur_d, x_names)
from qzonal.ncalg import MAX_RESTRICTION, phi_fundamental, restrict_to_torus, torus_x_values, z_names
from qzonal.qmatrix import Case, a_specialization
from qzonal.report import Report

logger = getLogger()

MAX_RANK = 3
MAX_SIZE = 5
MAX_NORM_SIZE = 4
MAX_SERIES_RANK = 2
MAX_ORDER = 24
DEFAULT_ORDER = 20


## Case configuration

@dataclass(frozen=True)
class CaseConfig:
    """
    SO: N = n, Macdonald parameters (q^4, q^2), x_k = z_k^2.
    Sp: N = 2n, Macdonald parameters (q^2, q^4), x_k = z_{2k-1} z_{2k}.
    """

    case: Case
    n: int

    def __post_init__(self):
        object.__setattr__(self, 'case', Case.parse(self.case))
        if not 1 <= self.n <= MAX_RANK:
            raise UnsupportedRangeError(f'n must be between 1 and {MAX_RANK}, got {self.n}')

    @property
    def big_n(self) -> int:
        return self.case.dimension(self.n)

    @property
    def ctx(self):
        return context('q')

    @property
    def exponents(self) -> Tuple[int, int]:
        return (4, 2) if self.case is Case.SO else (2, 4)

    @property
    def q_m(self) -> RationalFunction:
        return self.ctx['q'] ** self.exponents[0]

    @property
    def t_m(self) -> RationalFunction:
        return self.ctx['q'] ** self.exponents[1]

    @property
    def radial_prefactor(self) -> RationalFunction:
        q = self.ctx['q']
        return self.ctx.one if self.case is Case.SO else 1 + q ** 2

    def a_values(self) -> Dict[str, RationalFunction]:
        return a_specialization(self.case, self.n, self.ctx)

    def x_values(self) -> List[MultiLaurent]:
        return torus_x_values(self.case, self.n, self.ctx.one)

    def operator(self) -> MacdonaldOperator:
        return _operator(self.case, self.n)

    def macdonald_p(self, mu: Partition) -> SymmetricPolynomial:
        return macdonald_p(mu, self.n, operator=self.operator())


@lru_cache(maxsize=None)
def _operator(case: Case, n: int) -> MacdonaldOperator:
    config = CaseConfig(case, n)
    return MacdonaldOperator(n, config.ctx, config.q_m, config.t_m)


def _check_partition(config: CaseConfig, mu: Partition, max_size: int = MAX_SIZE):
    if mu.length > config.n:
        raise UnsupportedRangeError(f'{mu} has more than n={config.n} parts')
    if mu.size > max_size:
        raise UnsupportedRangeError(f'|mu| must be at most {max_size}, got {mu.size}')


## Duplication and restriction

def duplicate_partition(case: Case, mu: Partition, ell: int = 0, n: Optional[int] = None) -> Tuple[int, ...]:
    """SO: (2mu_1, ..., 2mu_n) + l; Sp: (mu_1, mu_1, ..., mu_n, mu_n) + l."""

    case = Case.parse(case)
    n = mu.length if n is None else n
    padded = mu.padded(n)
    if case is Case.SO:
        doubled = [2 * p for p in padded]
    else:
        doubled = [p for p in padded for _ in range(2)]
    return tuple(p + ell for p in doubled)


def zonal_restriction(case: Case, mu: Partition, ell: int = 0, n: Optional[int] = None) -> MultiLaurent:
    """P_mu(x; q_M, t_M) at the torus x-values, times (z_1 ... z_N)^l."""

    config = CaseConfig(case, max(mu.length, 1) if n is None else n)
    names = z_names(config.big_n)
    volume = MultiLaurent.monomial(names, {name: 1 for name in names}, config.ctx.one)
    return restrict_symmetric(config, config.macdonald_p(mu)) * volume ** ell


def restrict_symmetric(config: CaseConfig, f: SymmetricPolynomial) -> MultiLaurent:
    """f at the torus x-values of the case, as a Laurent polynomial in z."""
    value = evaluate(f, config.x_values())
    if not isinstance(value, MultiLaurent):
        value = MultiLaurent.constant(z_names(config.big_n), value)
    return value


def radial_eigenvalue(config: CaseConfig, mu: Partition) -> RationalFunction:
    """SO: sum q^{2(n-k)} q^{4 mu_k}; Sp: (1 + q^2) sum q^{4(n-k)} q^{2 mu_k}."""

    q = config.ctx['q']
    n = config.n
    if config.case is Case.SO:
        return sum((q ** (2 * (n - k) + 4 * p) for k, p in enumerate(mu.padded(n), start=1)), config.ctx.zero)
    return (1 + q ** 2) * sum((q ** (4 * (n - k) + 2 * p) for k, p in enumerate(mu.padded(n), start=1)),
                              config.ctx.zero)


def central_character(config: CaseConfig, weight: Tuple[int, ...]) -> RationalFunction:
    """chi_lambda(C_1) = sum_k q^{2(lambda_k + N - k)}"""
    q = config.ctx['q']
    big_n = config.big_n
    return sum((q ** (2 * (lam + big_n - k)) for k, lam in enumerate(weight, start=1)), config.ctx.zero)


ZONAL_MUTATIONS = ('swap-parameters',)


def verify_radial_eigen(case: Case, mu: Partition, n: int, mutation: Optional[str] = None) -> Report:
    """
    The radial operator against its eigenvalue.

    `radial-eigen-equation` applies D_1 to P_mu in the x variables; `radial-eigen-restricted`
    compares the torus restrictions of both sides as Laurent polynomials in z.
    """

    config = CaseConfig(case, n)
    _check_partition(config, mu)
    if mutation is not None and mutation not in ZONAL_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {ZONAL_MUTATIONS}')

    params = {'case': config.case.name, 'n': n, 'mu': mu}
    report = Report()

    p = config.macdonald_p(mu)
    operator = config.operator()
    if mutation == 'swap-parameters':
        operator = MacdonaldOperator(n, config.ctx, config.t_m, config.q_m)

    eigenvalue = radial_eigenvalue(config, mu)
    logger.debug(f'Radial eigen-equation for {config.case.name} n={n} mu={mu}')
    image = operator.apply(p) * config.radial_prefactor
    report.check('radial-eigen-equation', params, image, p * eigenvalue)
    report.check('radial-eigen-restricted', params, restrict_symmetric(config, image),
                 restrict_symmetric(config, p).map_coefficients(lambda c: c * eigenvalue))
    report.check('radial-eigenvalue-character', params, eigenvalue,
                 central_character(config, duplicate_partition(config.case, mu, 0, n)))

    return report


def verify_zonal(case: Case, mu: Partition, n: int, mutation: Optional[str] = None) -> Report:
    """Radial eigen-equation plus restriction identities of the zonal function for mu."""

    config = CaseConfig(case, n)
    report = verify_radial_eigen(config.case, mu, n, mutation)
    params = {'case': config.case.name, 'n': n, 'mu': mu}

    restricted = zonal_restriction(config.case, mu, 0, n)
    report.check('determinant-twist', params,
                 zonal_restriction(config.case, mu, 1, n),
                 restricted * zonal_restriction(config.case, Partition(), 1, n))

    doubled = duplicate_partition(config.case, mu, 0, n)
    if config.case is Case.SP:
        report.check('duplicated-pairs-equal', params,
                     [doubled[2 * k] for k in range(n)], [doubled[2 * k + 1] for k in range(n)])

    is_column = all(p == 1 for p in mu.parts) and mu.length >= 1
    if is_column and n <= MAX_RESTRICTION[config.case]:
        phi = phi_fundamental(config.case, n, mu.length, 'phi')
        special = a_specialization(config.case, n, config.ctx)
        from_algebra = restrict_to_torus(phi).map_coefficients(lambda c: c.substitute(special, config.ctx))
        report.check('fundamental-restriction', params, restricted, from_algebra)

    return report


## Rank one

class NoSolution(NamedTuple):
    """The fixed-vector system for this l is inconsistent; `equation` is the first failing j."""
    ell: int
    equation: int


RANK_ONE_MUTATIONS = ('shift-exponent',)


def rank_one_fixed_vector(ell: int, mutation: Optional[str] = None) -> Union[List[RationalFunction], NoSolution]:
    """
    Solve a q^{-l+2j+2} [j+1] c_{j+1} = [l-j+1] c_{j-1}, j = 0, ..., l,
    with c_{-1} = c_{l+1} = 0 and c_0 = 1.
    """

    if ell < 0:
        raise UnsupportedRangeError(f'l must be nonnegative, got {ell}')
    ctx = context('q', 'a')
    q, a = ctx['q'], ctx['a']
    shift = 0 if mutation == 'shift-exponent' else 2

    c = [ctx.one] + [ctx.zero] * ell

    def previous(j):
        return c[j - 1] if j >= 1 else ctx.zero

    for j in range(ell + 1):
        rhs = q_number(ell - j + 1, ctx) * previous(j)
        if j + 1 <= ell:
            c[j + 1] = rhs / (a * q ** (-ell + 2 * j + shift) * q_number(j + 1, ctx))
        elif rhs:
            return NoSolution(ell, j)
    return c


def rank_one_closed_form(ell: int) -> List[RationalFunction]:
    """c_{2k} = (-1)^k a^-k q^{2k(l-k)} (q^{-2l}; q^4)_k / (q^4; q^4)_k, odd terms zero."""

    ctx = context('q', 'a')
    q, a = ctx['q'], ctx['a']
    c = [ctx.zero] * (ell + 1)
    for k in range(ell // 2 + 1):
        c[2 * k] = (-1) ** k * a ** -k * q ** (2 * k * (ell - k)) * q_pochhammer(q ** (-2 * ell), q ** 4, k) / \
            q_pochhammer(q ** 4, q ** 4, k)
    return c


MAX_RANK_ONE = 9


def verify_rank_one(max_ell: int, mutation: Optional[str] = None) -> Report:
    if not 0 <= max_ell <= MAX_RANK_ONE:
        raise UnsupportedRangeError(f'max l must be between 0 and {MAX_RANK_ONE}, got {max_ell}')
    if mutation is not None and mutation not in RANK_ONE_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {RANK_ONE_MUTATIONS}')

    report = Report()
    for ell in range(max_ell + 1):
        solution = rank_one_fixed_vector(ell, mutation)
        if ell % 2:
            report.record('rank-one-no-solution', {'l': ell}, isinstance(solution, NoSolution))
        elif isinstance(solution, NoSolution):
            report.record('rank-one-closed-form', {'l': ell}, False, solution.equation, 'unexpected NoSolution')
        else:
            report.check('rank-one-closed-form', {'l': ell}, solution, rank_one_closed_form(ell))
    return report


## Norms

def c_lambda(case: Case, mu: Partition, n: int, prefactor: bool = True) -> RationalFunction:
    """P_mu at the principal point of the case, with the extra q^{|mu|} for Sp."""

    config = CaseConfig(case, n)
    value = principal_specialization_formula(mu, n, config.ctx, config.q_m, config.t_m)
    if config.case is Case.SP and prefactor:
        value = value * config.ctx['q'] ** mu.size
    return value


def rho_point(config: CaseConfig) -> List[RationalFunction]:
    """z = q^rho: SO z_k = q^{n-k}; Sp z = (q^{2n-1}, ..., q, 1)."""
    q = config.ctx['q']
    return [q ** (config.big_n - k) for k in range(1, config.big_n + 1)]


def c_lambda_direct(case: Case, mu: Partition, n: int) -> RationalFunction:
    """The restricted zonal function evaluated at z = q^rho."""

    config = CaseConfig(case, n)
    return zonal_restriction(config.case, mu, 0, n).evaluate(rho_point(config), config.ctx)


def d_lambda(case: Case, mu: Partition, n: int) -> RationalFunction:
    config = CaseConfig(case, n)
    return schur_d(Partition(duplicate_partition(config.case, mu, 0, n)), config.big_n, config.ctx)


NORM_MUTATIONS = ('no-square', 'drop-prefactor')


class NormRow(NamedTuple):
    case: str
    mu: Partition
    n: int
    c_lambda: RationalFunction
    d_lambda: RationalFunction
    ratio: RationalFunction
    formula_ratio: RationalFunction

    @property
    def equal(self) -> bool:
        return self.ratio == self.formula_ratio


def norm_row(case: Case, mu: Partition, n: int, mutation: Optional[str] = None) -> NormRow:
    config = CaseConfig(case, n)
    _check_partition(config, mu, MAX_NORM_SIZE)
    c = c_lambda(config.case, mu, n, prefactor=mutation != 'drop-prefactor')
    d = d_lambda(config.case, mu, n)
    ratio = c / d if mutation == 'no-square' else c ** 2 / d
    formula = norm_ratio_formula(mu, n, config.ctx, config.q_m, config.t_m)
    return NormRow(config.case.value, mu, n, c, d, ratio, formula)


def verify_norm_identity(case: Case, mu: Partition, n: int, mutation: Optional[str] = None) -> Report:
    """c(lambda)^2 / d(lambda) against the box product at the case's parameters."""

    if mutation is not None and mutation not in NORM_MUTATIONS:
        raise ValueError(f'Unknown mutation {mutation}; expected one of {NORM_MUTATIONS}')
    row = norm_row(case, mu, n, mutation)
    params = {'case': row.case, 'n': n, 'mu': mu}
    report = Report()
    report.check('principal-point-value', params, row.c_lambda, c_lambda_direct(case, mu, n))
    report.check('norm-identity', params, row.ratio, row.formula_ratio)
    return report


def verify_norms(case: Case, n: int, max_size: int = MAX_NORM_SIZE, mutation: Optional[str] = None) -> Report:
    config = CaseConfig(case, n)
    if not 0 <= max_size <= MAX_NORM_SIZE:
        raise UnsupportedRangeError(f'max size must be between 0 and {MAX_NORM_SIZE}, got {max_size}')
    report = Report()
    for size in range(max_size + 1):
        for mu in partitions(size, n):
            report.extend(verify_norm_identity(config.case, mu, n, mutation))
    return report


def norm_table(case: Case, n: int, max_size: int = MAX_NORM_SIZE) -> List[NormRow]:
    config = CaseConfig(case, n)
    if not 0 <= max_size <= MAX_NORM_SIZE:
        raise UnsupportedRangeError(f'max size must be between 0 and {MAX_NORM_SIZE}, got {max_size}')
    return [norm_row(config.case, mu, n) for size in range(max_size + 1) for mu in partitions(size, n)]


## Constant-term scalar product

class ConstantTermScalarProduct:
    """
    <F, G> = (1/n!) [F(x^-1) G(x) w(x)]_1 / (the same with F = G = 1), as truncated q-series.

    w = prod_{i<j} (x_i/x_j; q_M)_inf (x_j/x_i; q_M)_inf / ((t_M x_i/x_j; q_M)_inf (t_M x_j/x_i; q_M)_inf)
    with q_M = q^alpha and t_M = q^beta.
    """

    def __init__(self, config: CaseConfig, order: int = DEFAULT_ORDER):
        if config.n > MAX_SERIES_RANK:
            raise UnsupportedRangeError(f'Series oracle supports n <= {MAX_SERIES_RANK}, got {config.n}')
        if not 0 <= order <= MAX_ORDER:
            raise UnsupportedRangeError(f'Truncation order must be between 0 and {MAX_ORDER}, got {order}')
        self.config = config
        self.order = order
        self.variables = x_names(config.n)
        self.weight = self._weight()
        self._unit = self.pair(self.constant(1), self.constant(1))

    def _weight(self) -> TruncatedQSeries:
        alpha, beta = self.config.exponents
        n = self.config.n
        weight = TruncatedQSeries.constant(self.order, self.variables)
        for i in range(n):
            for j in range(i + 1, n):
                for u in (self._ratio(i, j), self._ratio(j, i)):
                    weight = weight * qseries_expand_infinite_factor(u, 0, alpha, False, self.order)
                    weight = weight * qseries_expand_infinite_factor(u, beta, alpha, True, self.order)
        logger.debug(f'Weight series for {self.config.case.name} n={n} through q^{self.order}')
        return weight

    def _ratio(self, i: int, j: int) -> MultiLaurent:
        return MultiLaurent.monomial(self.variables, {self.variables[i]: 1, self.variables[j]: -1})

    def constant(self, value) -> TruncatedQSeries:
        return TruncatedQSeries.constant(self.order, self.variables, Fraction(value))

    def scalar_series(self, value: RationalFunction) -> TruncatedQSeries:
        return TruncatedQSeries.from_rational(value, self.order, self.variables)

    def monomial(self, nu: Partition) -> MultiLaurent:
        x = [MultiLaurent.monomial(self.variables, {name: 1}) for name in self.variables]
        value = monomial_symmetric_value(nu, x)
        return value if isinstance(value, MultiLaurent) else MultiLaurent.constant(self.variables, value)

    def lift(self, f: Union[SymmetricPolynomial, TruncatedQSeries]) -> TruncatedQSeries:
        """A symmetric polynomial with q-dependent coefficients as a series in q."""

        if isinstance(f, TruncatedQSeries):
            return f
        result = TruncatedQSeries(self.order, self.variables)
        for nu, c in f.coeffs.items():
            result = result + self.scalar_series(c) * self.monomial(nu)
        return result

    def pair(self, f: TruncatedQSeries, g: TruncatedQSeries) -> TruncatedQSeries:
        """(1/n!) [F* G w]_1, unnormalized."""
        product = f.map(lambda c: c.invert()) * g * self.weight
        return product.constant_term() * Fraction(1, factorial(self.config.n))

    def __call__(self, f, g) -> TruncatedQSeries:
        return self.pair(self.lift(f), self.lift(g)) / self._unit

    def coefficient(self, f: TruncatedQSeries, nu: Partition) -> TruncatedQSeries:
        """Series coefficient of m_nu, read from the monomial x^nu."""
        exponents = nu.padded(self.config.n)
        return TruncatedQSeries(
            self.order, (), [MultiLaurent.constant((), c.terms.get(exponents, 0)) for c in f.coeffs])

    def as_coefficient(self, s: TruncatedQSeries) -> TruncatedQSeries:
        """A scalar series over no variables, re-expressed over the x variables."""
        return TruncatedQSeries(
            self.order, self.variables, [MultiLaurent.constant(self.variables, c.constant_term()) for c in s.coeffs])


def scalar_product_series(f: SymmetricPolynomial, g: SymmetricPolynomial, case: Case, n: int,
                          order: int = DEFAULT_ORDER) -> TruncatedQSeries:
    return ConstantTermScalarProduct(CaseConfig(case, n), order)(f, g)


def compare_series(report: Report, identity_id: str, params: dict, lhs: TruncatedQSeries, rhs: TruncatedQSeries,
                   vanishing: bool = False):
    """`vanishing` marks identities whose right-hand side is zero by construction."""
    if not vanishing and lhs.is_zero() and rhs.is_zero():
        logger.warning(f'{identity_id} {params}: every compared coefficient vanishes through q^{lhs.order}')
    report.check(identity_id, params, list(lhs.scalars()), list(rhs.scalars()))


def verify_series(case: Case, n: int = 2, max_size: int = 3, order: int = DEFAULT_ORDER) -> Report:
    """Orthogonality of distinct P's and their normalized norms, as truncated series."""

    config = CaseConfig(case, n)
    product = ConstantTermScalarProduct(config, order)
    params = {'case': config.case.name, 'n': n, 'K': order}
    report = Report()

    family = [mu for size in range(max_size + 1) for mu in partitions(size, n)]
    lifted = {mu: product.lift(config.macdonald_p(mu)) for mu in family}

    for mu in family:
        norm = product(lifted[mu], lifted[mu])
        formula = norm_ratio_formula(mu, n, config.ctx, config.q_m, config.t_m)
        compare_series(report, 'series-norm', {**params, 'mu': mu}, norm,
                       TruncatedQSeries.from_rational(formula, order))
        for nu in family:
            if nu < mu:
                compare_series(report, 'series-orthogonality', {**params, 'mu': mu, 'nu': nu},
                               product.pair(lifted[mu], lifted[nu]), TruncatedQSeries(order, ()), vanishing=True)

    return report


def gram_schmidt(config: CaseConfig, degree: int, order: int = DEFAULT_ORDER,
                 product: Optional[ConstantTermScalarProduct] = None) -> Dict[Partition, TruncatedQSeries]:
    """Orthogonalize the m-basis of `degree` in increasing dominance order."""

    product = product or ConstantTermScalarProduct(config, order)
    family: Dict[Partition, TruncatedQSeries] = {}
    norms: Dict[Partition, TruncatedQSeries] = {}

    for nu in partitions(degree, config.n):
        vector = TruncatedQSeries(product.order, product.variables, [product.monomial(nu)])
        current = vector
        for rho, p_rho in family.items():
            projection = product.pair(p_rho, vector) / norms[rho]
            current = current - product.as_coefficient(projection) * p_rho
        family[nu] = current
        norms[nu] = product.pair(current, current)
        logger.debug(f'Orthogonalized m{nu} in degree {degree}')

    return family


def verify_gram_schmidt(case: Case, n: int = 2, degree: int = 2, order: int = DEFAULT_ORDER) -> Report:
    """Gram-Schmidt family against the eigen-solve, coefficient by coefficient."""

    config = CaseConfig(case, n)
    if config.n > MAX_SERIES_RANK or not 0 <= degree <= 3:
        raise UnsupportedRangeError(f'Gram-Schmidt oracle supports n <= {MAX_SERIES_RANK} and degree <= 3')
    product = ConstantTermScalarProduct(config, order)
    family = gram_schmidt(config, degree, order, product)
    params = {'case': config.case.name, 'n': n, 'K': order}
    report = Report()

    for mu, series in family.items():
        p = config.macdonald_p(mu)
        for nu in partitions(degree, n):
            if nu > mu:
                continue
            expected = TruncatedQSeries.from_rational(p.coefficient(nu), order)
            compare_series(report, 'gram-schmidt-coefficient', {**params, 'mu': mu, 'nu': nu},
                           product.coefficient(series, nu), expected)

    return report
