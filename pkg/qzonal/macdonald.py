# Partitions, symmetric polynomials and the Macdonald q-difference operator
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from logging import getLogger
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from qzonal.exactfield import Context, QZonalError, RationalFunction, Scalar, context, serialize_scalar
from qzonal.util import inversion_count, order_by

logger = getLogger()


class PartitionError(QZonalError):
    pass


class SymmetryError(QZonalError):
    """A polynomial expected to be symmetric (or divisible by the Vandermonde product) is not."""


## Partitions

@order_by('size', 'parts')
@dataclass(frozen=True, eq=False)
class Partition:
    """
    Weakly decreasing sequence of positive integers (trailing zeros are dropped).

    Ordered graded-lexicographically, which refines dominance.
    Box coordinates (i, j) are 1-based: row i, column j.
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise PartitionError(f'Negative part in {parts}')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise PartitionError(f'Parts of {parts} are not weakly decreasing')
        object.__setattr__(self, 'parts', tuple(p for p in parts if p > 0))

    @classmethod
    def of(cls, *parts: int) -> 'Partition':
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> 'Partition':
        """'2,1' or '21' or '' (empty partition)."""

        text = text.strip().strip('()[]')
        if not text or text in ('0', 'empty'):
            return cls()
        try:
            if ',' in text:
                values = [int(part) for part in text.split(',') if part.strip()]
            else:
                values = [int(ch) for ch in text]
        except ValueError:
            raise PartitionError(f'Cannot read a partition from {text!r}') from None
        return cls(tuple(values))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """mu_i, 1-based, zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def padded(self, n: int) -> Tuple[int, ...]:
        if self.length > n:
            raise PartitionError(f'{self} has more than {n} parts')
        return self.parts + (0,) * (n - self.length)

    @property
    def conjugate(self) -> 'Partition':
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def boxes(self) -> Iterator[Tuple[int, int]]:
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield i, j

    def arm(self, i: int, j: int) -> int:
        return self.part(i) - j

    def coarm(self, i: int, j: int) -> int:
        return j - 1

    def leg(self, i: int, j: int) -> int:
        return self.conjugate.part(j) - i

    def coleg(self, i: int, j: int) -> int:
        return i - 1

    def content(self, i: int, j: int) -> int:
        return j - i

    def hook(self, i: int, j: int) -> int:
        return self.arm(i, j) + self.leg(i, j) + 1

    def weighted_size(self) -> int:
        """n(mu) = sum (i-1) mu_i"""
        return sum((i - 1) * p for i, p in enumerate(self.parts, start=1))

    def serialize(self) -> List[int]:
        return list(self.parts)

    def __str__(self):
        return '(' + ','.join(str(p) for p in self.parts) + ')'

    def __repr__(self):
        return f'Partition{self}'


def partitions(size: int, max_length: Optional[int] = None, max_part: Optional[int] = None) -> List[Partition]:
    """All partitions of `size`, increasing in graded-lexicographic order."""

    max_part = size if max_part is None else max_part
    max_length = size if max_length is None else max_length

    def generate(remaining: int, largest: int, slots: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in generate(remaining - first, first, slots - 1):
                yield (first,) + rest

    return sorted(Partition(p) for p in generate(size, max_part, max_length))


def dominance_less(nu: Partition, mu: Partition) -> bool:
    """Strict dominance nu < mu."""

    if nu.size != mu.size:
        raise PartitionError(f'Dominance compares partitions of equal size, got {nu} and {mu}')
    if nu == mu:
        return False
    length = max(nu.length, mu.length)
    total_nu = total_mu = 0
    for i in range(1, length + 1):
        total_nu += nu.part(i)
        total_mu += mu.part(i)
        if total_nu > total_mu:
            return False
    return True


def dominated_by(mu: Partition, n: int) -> List[Partition]:
    """Partitions nu <= mu with at most n parts, increasing."""
    return [nu for nu in partitions(mu.size, n) if nu == mu or dominance_less(nu, mu)]


## Symmetric polynomials

def x_names(n: int) -> Tuple[str, ...]:
    return tuple(f'x{k}' for k in range(1, n + 1))


def distinct_permutations(exponents: Sequence[int]) -> List[Tuple[int, ...]]:
    return sorted(set(permutations(exponents)))


class SymmetricPolynomial:
    """
    sum_mu c_mu m_mu(x_1, ..., x_n) with coefficients in the field of `ctx`.

    Zero coefficients are never stored.
    """

    __slots__ = ('n', 'ctx', 'coeffs')

    def __init__(self, n: int, coeffs: Mapping[Partition, Scalar], ctx: Optional[Context] = None):
        self.n = n
        self.ctx = ctx or context('q', 't')
        stored: Dict[Partition, RationalFunction] = {}
        for mu, c in coeffs.items():
            if mu.length > n:
                raise PartitionError(f'{mu} has more than {n} parts')
            value = RationalFunction(self.ctx, self.ctx.lift(c))
            if value:
                stored[mu] = value
        self.coeffs = stored

    @classmethod
    def monomial(cls, mu: Partition, n: int, ctx: Optional[Context] = None) -> 'SymmetricPolynomial':
        return cls(n, {mu: 1}, ctx)

    def coefficient(self, mu: Partition) -> RationalFunction:
        return self.coeffs.get(mu, self.ctx.zero)

    def _match(self, other) -> 'SymmetricPolynomial':
        if not isinstance(other, SymmetricPolynomial):
            return SymmetricPolynomial(self.n, {Partition(): other}, self.ctx)
        if other.n != self.n or other.ctx is not self.ctx:
            raise PartitionError(f'Symmetric polynomials in {self.n} and {other.n} variables do not mix')
        return other

    def __add__(self, other):
        o = self._match(other)
        coeffs = dict(self.coeffs)
        for mu, c in o.coeffs.items():
            coeffs[mu] = coeffs[mu] + c if mu in coeffs else c
        return SymmetricPolynomial(self.n, coeffs, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return SymmetricPolynomial(self.n, {mu: -c for mu, c in self.coeffs.items()}, self.ctx)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __mul__(self, other):
        if isinstance(other, SymmetricPolynomial):
            o = self._match(other)
            return SymmetricPolynomial.from_poly(self.to_poly() * o.to_poly(), self.n, self.ctx)
        return SymmetricPolynomial(self.n, {mu: c * other for mu, c in self.coeffs.items()}, self.ctx)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, SymmetricPolynomial):
            return NotImplemented
        return self.n == other.n and not (self - other).coeffs

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return max((mu.size for mu in self.coeffs), default=0)

    def leading(self) -> Optional[Partition]:
        return max(self.coeffs, default=None)

    # Monomial expansion

    def to_poly(self):
        """Expansion in the x-monomial basis, as a sympy polynomial over the coefficient field."""

        ring = self.ctx.polynomial_ring(x_names(self.n))
        terms = {}
        for mu, c in self.coeffs.items():
            for exponents in distinct_permutations(mu.padded(self.n)):
                terms[exponents] = c.value
        return ring.from_dict(terms) if terms else ring.zero

    @classmethod
    def from_poly(cls, poly, n: int, ctx: Context) -> 'SymmetricPolynomial':
        """Collect a symmetric polynomial on the m-basis; asymmetric input raises SymmetryError."""

        terms = dict(poly.terms())
        coeffs = {}
        for exponents, c in terms.items():
            representative = tuple(sorted(exponents, reverse=True))
            if representative not in terms or ctx.wrap(terms[representative]) != ctx.wrap(c):
                raise SymmetryError(f'Polynomial is not symmetric: coefficient of x^{exponents} differs')
            if exponents == representative:
                if any(image not in terms for image in distinct_permutations(exponents)):
                    raise SymmetryError(f'Polynomial is not symmetric: orbit of x^{exponents} is incomplete')
                coeffs[Partition(representative)] = ctx.wrap(c)
        return cls(n, coeffs, ctx)

    # Specialization

    def substitute(self, bindings: Mapping[str, Scalar], target: Optional[Context] = None) -> 'SymmetricPolynomial':
        target = target or self.ctx
        return SymmetricPolynomial(
            self.n, {mu: c.substitute(bindings, target) for mu, c in self.coeffs.items()}, target)

    def to_rational(self, ctx: Context, bindings: Optional[Mapping[str, Scalar]] = None) -> RationalFunction:
        """The polynomial as an element of `ctx`, whose parameters include x1 ... xn."""

        x = [ctx[name] for name in x_names(self.n)]
        return evaluate(self.substitute(bindings or {}, ctx), x)

    def serialize(self):
        return [
            {'partition': mu.serialize(), 'coeff': serialize_scalar(self.coeffs[mu])}
            for mu in sorted(self.coeffs, reverse=True)]

    def __str__(self):
        if not self.coeffs:
            return '0'
        return ' + '.join(f'({self.coeffs[mu]})*m{mu}' for mu in sorted(self.coeffs, reverse=True))

    def __repr__(self):
        return f'SymmetricPolynomial(n={self.n}, {self})'


def monomial_symmetric_value(mu: Partition, point: Sequence[Scalar]):
    result = 0
    for exponents in distinct_permutations(mu.padded(len(point))):
        term = 1
        for value, e in zip(point, exponents):
            if e:
                term = term * value ** e
        result = result + term
    return result


def evaluate(f: SymmetricPolynomial, point: Sequence[Scalar]):
    """Value of f at an n-tuple of scalars."""

    if len(point) != f.n:
        raise PartitionError(f'Expected {f.n} values, got {len(point)}')
    result = f.ctx.zero
    for mu, c in f.coeffs.items():
        result = result + c * monomial_symmetric_value(mu, point)
    return result


def restrict_variables(f: SymmetricPolynomial, m: int) -> SymmetricPolynomial:
    """Set x_{m+1}, ..., x_n to zero."""
    if m > f.n:
        raise PartitionError(f'Cannot restrict {f.n} variables to {m}')
    return SymmetricPolynomial(m, {mu: c for mu, c in f.coeffs.items() if mu.length <= m}, f.ctx)


## The Macdonald operator

class MacdonaldOperator:
    """
    D = sum_k Delta(x_1, ..., t x_k, ..., x_n) / Delta(x) T_{q, x_k}

    q and t may be specialized to any values of the coefficient field.
    Images of the m-basis are computed once and memoized.
    """

    def __init__(self, n: int, ctx: Optional[Context] = None, q_val: Optional[Scalar] = None,
                 t_val: Optional[Scalar] = None):
        self.n = n
        self.ctx = ctx or context('q', 't')
        self.q_val = self.ctx['q'] if q_val is None else self.ctx.one * q_val
        self.t_val = self.ctx['t'] if t_val is None else self.ctx.one * t_val
        self.ring = self.ctx.polynomial_ring(x_names(n))
        self._images: Dict[Partition, SymmetricPolynomial] = {}

        x = self.ring.gens
        self._delta = self._vandermonde(x)
        t = self.t_val.value
        self._shifted_deltas = [
            self._vandermonde([g * t if i == k else g for i, g in enumerate(x)]) for k in range(n)]

    def _vandermonde(self, values):
        result = self.ring.one
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                result *= values[i] - values[j]
        return result

    def _shift(self, poly, k: int):
        """T_{q, x_k}"""
        q = self.q_val.value
        powers = {}
        terms = {}
        for exponents, c in poly.terms():
            e = exponents[k]
            if e not in powers:
                powers[e] = q ** e
            terms[exponents] = c * powers[e]
        return self.ring.from_dict(terms) if terms else self.ring.zero

    def image(self, mu: Partition) -> SymmetricPolynomial:
        if mu not in self._images:
            poly = SymmetricPolynomial.monomial(mu, self.n, self.ctx).to_poly()
            numerator = self.ring.zero
            for k in range(self.n):
                numerator += self._shifted_deltas[k] * self._shift(poly, k)
            quotient, remainder = divmod(numerator, self._delta)
            if remainder:
                raise SymmetryError(f'Vandermonde division leaves a remainder for m{mu}')
            self._images[mu] = SymmetricPolynomial.from_poly(quotient, self.n, self.ctx)
            logger.debug(f'Computed operator image of m{mu} with n={self.n}')
        return self._images[mu]

    def apply(self, f: SymmetricPolynomial) -> SymmetricPolynomial:
        if f.n != self.n or f.ctx is not self.ctx:
            raise PartitionError('Operator and polynomial live in different settings')
        result = SymmetricPolynomial(self.n, {}, self.ctx)
        for mu, c in f.coeffs.items():
            result = result + self.image(mu) * c
        return result

    __call__ = apply

    def eigenvalue(self, mu: Partition) -> RationalFunction:
        """sum_k t^{n-k} q^{mu_k}"""
        return sum((self.t_val ** (self.n - k) * self.q_val ** part
                    for k, part in enumerate(mu.padded(self.n), start=1)), self.ctx.zero)

    def matrix(self, degree: int) -> Tuple[List[Partition], np.ndarray]:
        """Matrix on the m-basis of `degree`, basis increasing; entry [row nu, column mu]."""

        basis = partitions(degree, self.n)
        entries = np.empty((len(basis), len(basis)), dtype=object)
        for col, mu in enumerate(basis):
            image = self.image(mu)
            for row, nu in enumerate(basis):
                entries[row, col] = image.coefficient(nu)
        return basis, entries


def apply_d1(f: SymmetricPolynomial, q_val: Optional[Scalar] = None, t_val: Optional[Scalar] = None) -> SymmetricPolynomial:
    return MacdonaldOperator(f.n, f.ctx, q_val, t_val).apply(f)


def macdonald_p(mu: Partition, n: int, ctx: Optional[Context] = None, q_val: Optional[Scalar] = None,
                t_val: Optional[Scalar] = None, operator: Optional[MacdonaldOperator] = None) -> SymmetricPolynomial:
    """The monic eigenfunction m_mu + lower terms, by back substitution in dominance order."""

    if mu.length > n:
        raise PartitionError(f'{mu} has more than {n} parts')
    operator = operator or MacdonaldOperator(n, ctx, q_val, t_val)
    ctx = operator.ctx

    basis = dominated_by(mu, n)
    target = operator.eigenvalue(mu)
    coeffs: Dict[Partition, RationalFunction] = {mu: ctx.one}

    for nu in reversed(basis[:-1]):
        total = ctx.zero
        for rho, c in coeffs.items():
            total = total + c * operator.image(rho).coefficient(nu)
        gap = target - operator.eigenvalue(nu)
        if not gap:
            raise SymmetryError(f'Eigenvalues of {mu} and {nu} coincide')
        coeffs[nu] = total / gap

    logger.debug(f'Solved for P{mu} in {n} variables over {len(basis)} partitions')
    return SymmetricPolynomial(n, coeffs, ctx)


## Box formulas

def _params(ctx: Optional[Context], q_val, t_val) -> Tuple[Context, RationalFunction, RationalFunction]:
    ctx = ctx or context('q', 't')
    q = ctx['q'] if q_val is None else ctx.one * q_val
    t = ctx['t'] if t_val is None else ctx.one * t_val
    return ctx, q, t


def principal_specialization_formula(mu: Partition, n: int, ctx: Optional[Context] = None,
                                     q_val: Optional[Scalar] = None, t_val: Optional[Scalar] = None) -> RationalFunction:
    """P_mu(t^{n-1}, ..., 1) = t^{sum (k-1) mu_k} prod_s (1 - q^{a'} t^{n-l'}) / (1 - q^a t^{l+1})"""

    if mu.length > n:
        raise PartitionError(f'{mu} has more than {n} parts')
    ctx, q, t = _params(ctx, q_val, t_val)
    result = t ** mu.weighted_size()
    for i, j in mu.boxes():
        result = result * (1 - q ** mu.coarm(i, j) * t ** (n - mu.coleg(i, j))) / (
            1 - q ** mu.arm(i, j) * t ** (mu.leg(i, j) + 1))
    return result


def norm_ratio_formula(mu: Partition, n: int, ctx: Optional[Context] = None,
                       q_val: Optional[Scalar] = None, t_val: Optional[Scalar] = None) -> RationalFunction:
    """<P_mu, P_mu> / <1, 1> as a product over the boxes of mu."""

    if mu.length > n:
        raise PartitionError(f'{mu} has more than {n} parts')
    ctx, q, t = _params(ctx, q_val, t_val)
    result = ctx.one
    for i, j in mu.boxes():
        a, a_co, l, l_co = mu.arm(i, j), mu.coarm(i, j), mu.leg(i, j), mu.coleg(i, j)
        result = result * (1 - q ** a_co * t ** (n - l_co)) * (1 - q ** (a + 1) * t ** l) / (
            (1 - q ** (a_co + 1) * t ** (n - 1 - l_co)) * (1 - q ** a * t ** (l + 1)))
    return result


def complete_homogeneous_value(k: int, point: Sequence[Scalar]):
    if k < 0:
        return 0
    result = 0
    for indices in combinations_with_replacement(range(len(point)), k):
        term = 1
        for i in indices:
            term = term * point[i]
        result = result + term
    return result


def _jacobi_trudi_determinant(lam: Partition, h) -> object:
    """det(h(lam_i - i + j)) by permutation expansion; h maps an integer to a ring element."""

    size = lam.length
    if size == 0:
        return h(0)
    result = 0
    for w in permutations(range(size)):
        term = -1 if inversion_count(w) % 2 else 1
        for i in range(size):
            term = term * h(lam.parts[i] - (i + 1) + (w[i] + 1))
        result = result + term
    return result


def jacobi_trudi(lam: Partition, n: int, ctx: Optional[Context] = None) -> SymmetricPolynomial:
    """Schur polynomial s_lambda(x_1, ..., x_n) on the m-basis."""

    ctx = ctx or context('q', 't')

    def h(k: int) -> SymmetricPolynomial:
        if k < 0:
            return SymmetricPolynomial(n, {}, ctx)
        return SymmetricPolynomial(n, {nu: 1 for nu in partitions(k, n)}, ctx)

    value = _jacobi_trudi_determinant(lam, h)
    if not isinstance(value, SymmetricPolynomial):
        value = SymmetricPolynomial(n, {Partition(): value}, ctx)
    return value


def schur_d_hook_content(lam: Partition, big_n: int, ctx: Optional[Context] = None) -> RationalFunction:
    """s_lambda(q^{2(N-1)}, ..., q^2, 1) = q^{2 n(lambda)} prod (1 - q^{2(N + c)}) / (1 - q^{2h})"""

    if lam.length > big_n:
        raise PartitionError(f'{lam} has more than {big_n} parts')
    ctx = ctx or context('q')
    q = ctx['q']
    result = q ** (2 * lam.weighted_size())
    for i, j in lam.boxes():
        result = result * (1 - q ** (2 * (big_n + lam.content(i, j)))) / (1 - q ** (2 * lam.hook(i, j)))
    return result


def schur_d_jacobi_trudi(lam: Partition, big_n: int, ctx: Optional[Context] = None) -> RationalFunction:
    ctx = ctx or context('q')
    q = ctx['q']
    point = [q ** (2 * (big_n - k)) for k in range(1, big_n + 1)]
    return ctx.one * _jacobi_trudi_determinant(lam, lambda k: complete_homogeneous_value(k, point) if k >= 0 else 0)


def schur_d(lam: Partition, big_n: int, ctx: Optional[Context] = None) -> RationalFunction:
    """d(lambda) = s_lambda(q^{2 rho}), by hook-content and checked against Jacobi-Trudi."""

    hooks = schur_d_hook_content(lam, big_n, ctx)
    determinant = schur_d_jacobi_trudi(lam, big_n, ctx)
    if hooks != determinant:
        raise SymmetryError(f'Hook-content and Jacobi-Trudi disagree for {lam} with N={big_n}')
    return hooks


def hall_littlewood_row(ell: int, n: int, ctx: Optional[Context] = None, t_val: Optional[Scalar] = None) -> SymmetricPolynomial:
    """P_(l)(x; t) = sum_k x_k^l prod_{j != k} (x_k - t x_j) / (x_k - x_j)"""

    if ell < 1:
        raise PartitionError(f'Row length must be positive, got {ell}')
    ctx = ctx or context('t')
    t = (ctx['t'] if t_val is None else ctx.one * t_val).value
    ring = ctx.polynomial_ring(x_names(n))
    x = ring.gens

    delta = ring.one
    for i in range(n):
        for j in range(i + 1, n):
            delta *= x[i] - x[j]

    numerator = ring.zero
    for k in range(n):
        weight, cofactor = ring.one, ring.one
        for j in range(n):
            if j != k:
                weight *= x[k] - x[j] * t
                cofactor *= x[k] - x[j]
        complement, remainder = divmod(delta, cofactor)
        if remainder:
            raise SymmetryError('Vandermonde cofactor division leaves a remainder')
        numerator += x[k] ** ell * weight * complement

    quotient, remainder = divmod(numerator, delta)
    if remainder:
        raise SymmetryError(f'Row polynomial of length {ell} is not a polynomial')
    return SymmetricPolynomial.from_poly(quotient, n, ctx)
