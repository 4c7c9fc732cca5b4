# Exact arithmetic: rational functions, Laurent polynomials and truncated q-series
#
# Licensed under the BSD 3-Clause License
# Copyright (c) 2020, Yuriy Sverchkov

from fractions import Fraction
from functools import lru_cache, reduce
from logging import getLogger
from math import gcd, lcm
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

logger = getLogger()

Exponents = Tuple[int, ...]


## Errors

class QZonalError(ValueError):
    """Base class for errors raised by this package."""


class DivisionByZeroError(QZonalError, ZeroDivisionError):
    pass


class PoleError(QZonalError):
    """A substitution made a denominator vanish."""

    def __init__(self, message: str, factor: Optional[str] = None):
        super().__init__(message)
        self.factor = factor


class VariableSetMismatch(QZonalError):
    pass


class NotLaurentError(QZonalError):
    pass


class NonUnitSeriesError(QZonalError):
    pass


class UnsupportedRangeError(QZonalError):
    pass


## Variable universes

class Context:
    """
    A declared set of formal parameters.

    Wraps a sympy fraction field over QQ in graded-lexicographic order.
    Values built in different contexts never mix implicitly.
    Obtain instances through `context(*names)` so that equal name tuples share one object.
    """

    def __init__(self, names: Tuple[str, ...]):
        if len(set(names)) != len(names):
            raise VariableSetMismatch(f'Repeated variable names in {names}')
        self.names = tuple(names)
        self.field: FracField = FracField(self.names, QQ, grlex)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __repr__(self):
        return f'Context{self.names}'

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise VariableSetMismatch(f'Variable {name} is not declared in {self}') from None

    def __getitem__(self, name: str) -> 'RationalFunction':
        return RationalFunction(self, self.field.gens[self.index(name)])

    def gens(self, *names: str) -> Tuple['RationalFunction', ...]:
        return tuple(self[name] for name in names)

    def const(self, value: Union[int, Fraction]) -> 'RationalFunction':
        return RationalFunction(self, self.lift(value))

    @property
    def one(self) -> 'RationalFunction':
        return self.const(1)

    @property
    def zero(self) -> 'RationalFunction':
        return self.const(0)

    def lift(self, value: Any) -> FracElement:
        """Convert an int, Fraction or RationalFunction of this context to a field element."""

        if isinstance(value, RationalFunction):
            if value.context is not self:
                raise VariableSetMismatch(
                    f'Value from {value.context} used in {self}')
            return value.value
        if isinstance(value, Fraction):
            return self.field(QQ(value.numerator, value.denominator))
        if isinstance(value, int):
            return self.field(value)
        raise TypeError(f'Cannot use {type(value).__name__} as a coefficient in {self}')

    def wrap(self, element: Union[FracElement, PolyElement]) -> 'RationalFunction':
        return RationalFunction(self, self.field(element))

    def extend(self, *names: str) -> 'Context':
        return context(*self.names, *(name for name in names if name not in self))

    def polynomial_ring(self, variables: Sequence[str]) -> PolyRing:
        """Polynomial ring in `variables` over the fraction field of this context."""
        return _polynomial_ring(tuple(variables), self)


@lru_cache(maxsize=None)
def context(*names: str) -> Context:
    return Context(names)


@lru_cache(maxsize=None)
def _polynomial_ring(variables: Tuple[str, ...], ctx: Context) -> PolyRing:
    return PolyRing(variables, ctx.field.to_domain(), grlex)


## Rational functions

def _to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _content(poly: PolyElement) -> Fraction:
    coeffs = [_to_fraction(c) for c in poly.coeffs()]
    content = Fraction(
        reduce(gcd, (c.numerator for c in coeffs)),
        reduce(lcm, (c.denominator for c in coeffs)))
    return -content if coeffs[0] < 0 else content


def _evaluate(poly: PolyElement, images: Sequence[FracElement], field: FracField) -> FracElement:
    """Evaluate a QQ-polynomial at field elements, term by term."""

    powers: Dict[Tuple[int, int], FracElement] = {}
    result = field.zero

    for monom, coeff in poly.terms():
        term = field(coeff)
        for i, e in enumerate(monom):
            if e:
                if (i, e) not in powers:
                    powers[(i, e)] = images[i] ** e
                term = term * powers[(i, e)]
        result += term

    return result


class RationalFunction:
    """
    Exact quotient of polynomials over the rationals in the parameters of a Context.

    The wrapped sympy field element is kept reduced by polynomial GCD after every operation.
    Equality is decided by cross-multiplication; hashing uses the canonical form
    (denominator with positive leading coefficient and content 1).
    """

    __slots__ = ('context', 'value')

    def __init__(self, ctx: Context, value: FracElement):
        self.context = ctx
        self.value = value

    def _lift(self, other) -> Optional[FracElement]:
        try:
            return self.context.lift(other)
        except TypeError:
            return None

    # Arithmetic

    def __add__(self, other):
        o = self._lift(other)
        if o is None: return NotImplemented
        return RationalFunction(self.context, self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None: return NotImplemented
        return RationalFunction(self.context, self.value - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None: return NotImplemented
        return RationalFunction(self.context, o - self.value)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None: return NotImplemented
        return RationalFunction(self.context, self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None: return NotImplemented
        if not o:
            raise DivisionByZeroError(f'Division of {self} by zero')
        return RationalFunction(self.context, self.value / o)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None: return NotImplemented
        if not self.value:
            raise DivisionByZeroError(f'Division of {other} by zero')
        return RationalFunction(self.context, o / self.value)

    def __neg__(self):
        return RationalFunction(self.context, -self.value)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if exponent < 0:
            if not self.value:
                raise DivisionByZeroError('Negative power of zero')
            return RationalFunction(self.context, self.context.field.one / self.value ** (-exponent))
        return RationalFunction(self.context, self.value ** exponent)

    # Comparison

    def __eq__(self, other):
        o = self._lift(other)
        if o is None: return NotImplemented
        return self.value.numer * o.denom == o.numer * self.value.denom

    def __hash__(self):
        numer, denom = self.canonical()
        return hash((self.context.names, tuple(numer.terms()), tuple(denom.terms())))

    def __bool__(self):
        return bool(self.value.numer)

    def is_zero(self) -> bool:
        return not self.value.numer

    # Canonical form

    def canonical(self) -> Tuple[PolyElement, PolyElement]:
        """Numerator and denominator with the denominator's content 1 and leading coefficient positive."""

        numer, denom = self.value.numer, self.value.denom
        content = _content(denom)
        scale = QQ(content.numerator, content.denominator)
        return numer.quo_ground(scale), denom.quo_ground(scale)

    @property
    def numerator(self) -> 'MultiLaurent':
        return MultiLaurent.from_poly(self.context.names, self.canonical()[0])

    @property
    def denominator(self) -> 'MultiLaurent':
        return MultiLaurent.from_poly(self.context.names, self.canonical()[1])

    def is_polynomial(self) -> bool:
        return self.value.denom.is_ground

    def to_laurent(self) -> 'MultiLaurent':
        """Exact Laurent expansion; only monomial denominators qualify."""

        numer, denom = self.value.numer, self.value.denom
        if len(denom) != 1:
            raise NotLaurentError(f'Denominator of {self} is not a monomial')
        [(d_monom, d_coeff)] = denom.terms()
        d_coeff = _to_fraction(d_coeff)
        return MultiLaurent(
            self.context.names,
            {tuple(e - d for e, d in zip(monom, d_monom)): _to_fraction(c) / d_coeff
             for monom, c in numer.terms()})

    # Substitution

    def substitute(self, bindings: Mapping[str, Any], target: Optional[Context] = None) -> 'RationalFunction':
        """
        Simultaneous substitution of variables.

        `bindings` maps variable names of this function's context to ints, Fractions or
        RationalFunctions of the target context (defaults to the own context).
        Unbound variables must also be declared in the target context and map to themselves.
        """

        target = target or self.context

        for name in bindings:
            if name not in self.context:
                raise VariableSetMismatch(f'Cannot bind {name}: not declared in {self.context}')

        images = [
            target.lift(bindings[name]) if name in bindings else target.field.gens[target.index(name)]
            for name in self.context.names]

        numer = _evaluate(self.value.numer, images, target.field)
        denom = _evaluate(self.value.denom, images, target.field)

        if not denom:
            offending = None
            for factor, _ in self.value.denom.sqf_list()[1]:
                if not _evaluate(factor, images, target.field):
                    offending = str(factor.as_expr())
                    break
            raise PoleError(
                f'Substitution {dict(bindings)} makes the denominator of {self} vanish'
                f' (factor {offending})',
                offending)

        return RationalFunction(target, numer / denom)

    # Output

    def serialize(self) -> Dict[str, Any]:
        return {
            'numerator': self.numerator.serialize(),
            'denominator': self.denominator.serialize()}

    def __str__(self):
        return str(self.value.as_expr())

    def __repr__(self):
        return f'RationalFunction({self})'


Scalar = Union[int, Fraction, RationalFunction]


def serialize_scalar(value: Scalar):
    if isinstance(value, RationalFunction):
        return value.serialize()
    value = Fraction(value)
    return [value.numerator, value.denominator]


def is_zero_scalar(value: Scalar) -> bool:
    return value == 0


## Laurent polynomials

def _grlex_key(exponents: Exponents):
    return (sum(exponents), exponents)


class MultiLaurent:
    """
    Laurent polynomial in a declared tuple of variables.

    Terms map signed exponent tuples to exact coefficients (Fractions, or RationalFunctions
    when symbolic parameters are kept in the coefficient field). Zero coefficients are never stored.
    """

    __slots__ = ('variables', 'terms')

    def __init__(self, variables: Sequence[str], terms: Union[Mapping[Exponents, Scalar], Iterable] = ()):
        self.variables = tuple(variables)
        stored: Dict[Exponents, Scalar] = {}
        for exponents, coeff in dict(terms).items():
            exponents = tuple(exponents)
            if len(exponents) != len(self.variables):
                raise VariableSetMismatch(
                    f'Exponent vector {exponents} does not match variables {self.variables}')
            if coeff != 0:
                stored[exponents] = coeff
        self.terms = stored

    @classmethod
    def constant(cls, variables: Sequence[str], value: Scalar = 1) -> 'MultiLaurent':
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Mapping[str, int], coeff: Scalar = 1) -> 'MultiLaurent':
        variables = tuple(variables)
        for name in exponents:
            if name not in variables:
                raise VariableSetMismatch(f'{name} is not among {variables}')
        return cls(variables, {tuple(exponents.get(v, 0) for v in variables): coeff})

    @classmethod
    def from_poly(cls, variables: Sequence[str], poly: PolyElement) -> 'MultiLaurent':
        return cls(variables, {monom: _to_fraction(c) for monom, c in poly.terms()})

    def _match(self, other) -> Optional['MultiLaurent']:
        if isinstance(other, MultiLaurent):
            if other.variables != self.variables:
                raise VariableSetMismatch(
                    f'Laurent polynomials over {self.variables} and {other.variables}')
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return MultiLaurent.constant(self.variables, other)
        return None

    def __add__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiLaurent(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        terms: Dict[Exponents, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return MultiLaurent(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            if len(self.terms) != 1:
                raise NotLaurentError('Only monomials are invertible Laurent polynomials')
            [(e, c)] = self.terms.items()
            inverse = MultiLaurent(self.variables, {tuple(-k for k in e): Fraction(1) / c})
            return inverse ** (-exponent)
        result = MultiLaurent.constant(self.variables)
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

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.variables), 0)

    def invert(self) -> 'MultiLaurent':
        """The star operation: every variable replaced by its inverse."""
        return MultiLaurent(self.variables, {tuple(-k for k in e): c for e, c in self.terms.items()})

    def map_coefficients(self, function) -> 'MultiLaurent':
        return MultiLaurent(self.variables, {e: function(c) for e, c in self.terms.items()})

    def rename(self, variables: Sequence[str]) -> 'MultiLaurent':
        """Embed into a larger variable tuple containing all current variables."""

        variables = tuple(variables)
        positions = [variables.index(v) if v in variables else None for v in self.variables]
        if None in positions:
            raise VariableSetMismatch(f'{self.variables} is not contained in {variables}')
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for p, k in zip(positions, e):
                new[p] = k
            terms[tuple(new)] = c
        return MultiLaurent(variables, terms)

    def to_rational(self, ctx: Context) -> RationalFunction:
        """The same Laurent polynomial as an element of the field of `ctx`."""

        result = ctx.zero
        gens = [ctx[v] for v in self.variables]
        for e, c in self.terms.items():
            term = ctx.one * c
            for g, k in zip(gens, e):
                if k:
                    term = term * g ** k
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar], ctx: Context) -> RationalFunction:
        """Value with the variables set to `point`; coefficients must live in `ctx` or be rational."""

        if len(point) != len(self.variables):
            raise VariableSetMismatch(f'Expected {len(self.variables)} values, got {len(point)}')
        result = ctx.zero
        for e, c in self.terms.items():
            term = ctx.one * c
            for value, k in zip(point, e):
                if k:
                    term = term * (ctx.one * value) ** k
            result = result + term
        return result

    def serialize(self) -> List[Dict[str, Any]]:
        return [
            {'exponents': list(e), 'coeff': serialize_scalar(self.terms[e])}
            for e in sorted(self.terms, key=_grlex_key, reverse=True)]

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            factors = [f'{v}^{k}' if k != 1 else v for v, k in zip(self.variables, e) if k]
            coeff = self.terms[e]
            if not factors:
                parts.append(f'({coeff})')
            elif coeff == 1:
                parts.append('*'.join(factors))
            else:
                parts.append(f'({coeff})*' + '*'.join(factors))
        return ' + '.join(parts)

    def __repr__(self):
        return f'MultiLaurent({self.variables}, {self})'


## q-combinatorics

def q_pochhammer(a: Scalar, base: Scalar, k: int) -> Scalar:
    """(a; base)_k = (1 - a)(1 - a base)...(1 - a base^(k-1))"""

    if k < 0:
        raise ValueError(f'Pochhammer length must be nonnegative, got {k}')
    result = 1 + 0 * a
    factor = a
    for _ in range(k):
        result = result * (1 - factor)
        factor = factor * base
    return result


def q_number(j: int, ctx: Optional[Context] = None, q: str = 'q') -> RationalFunction:
    """Symmetric q-number [j] = (q^j - q^-j)/(q - q^-1)."""

    ctx = ctx or context(q)
    qq = ctx[q]
    return (qq ** j - qq ** (-j)) / (qq - qq ** (-1))


def q_factorial(r: int, base_power: int = 2, ctx: Optional[Context] = None, q: str = 'q') -> RationalFunction:
    """[r]_{q^b}! = (q^b; q^b)_r / (1 - q^b)^r"""

    ctx = ctx or context(q)
    base = ctx[q] ** base_power
    return q_pochhammer(base, base, r) / (1 - base) ** r


## Truncated q-series

class TruncatedQSeries:
    """
    Power series in q with Laurent-polynomial coefficients, kept through q^order.

    Coefficient m is a MultiLaurent over `variables`; products never read
    coefficients above the shared order.
    """

    __slots__ = ('order', 'variables', 'coeffs')

    def __init__(self, order: int, variables: Sequence[str], coeffs: Sequence[MultiLaurent] = ()):
        if order < 0:
            raise ValueError(f'Truncation order must be nonnegative, got {order}')
        self.order = order
        self.variables = tuple(variables)
        zero = MultiLaurent(self.variables)
        padded = list(coeffs)[:order + 1]
        padded += [zero] * (order + 1 - len(padded))
        for c in padded:
            if c.variables != self.variables:
                raise VariableSetMismatch(f'Series coefficient over {c.variables}, expected {self.variables}')
        self.coeffs: Tuple[MultiLaurent, ...] = tuple(padded)

    @classmethod
    def constant(cls, order: int, variables: Sequence[str], value: Union[Scalar, MultiLaurent] = 1) -> 'TruncatedQSeries':
        if not isinstance(value, MultiLaurent):
            value = MultiLaurent.constant(variables, value)
        return cls(order, variables, [value])

    @classmethod
    def from_rational(cls, f: RationalFunction, order: int, variables: Sequence[str] = (), q: str = 'q') -> 'TruncatedQSeries':
        """Expand a rational function of q alone as a power series."""

        qi = f.context.index(q)

        def coefficient_list(poly: PolyElement) -> List[Fraction]:
            coeffs = [Fraction(0)] * (poly.degree(qi) + 1 if poly else 1)
            for monom, c in poly.terms():
                if any(k for i, k in enumerate(monom) if i != qi):
                    raise VariableSetMismatch(f'{f} depends on variables other than {q}')
                coeffs[monom[qi]] += _to_fraction(c)
            return coeffs

        numer = coefficient_list(f.value.numer)
        denom = coefficient_list(f.value.denom)

        if denom[0] == 0:
            raise NonUnitSeriesError(f'{f} has a pole at {q} = 0')

        result: List[Fraction] = []
        for m in range(order + 1):
            acc = numer[m] if m < len(numer) else Fraction(0)
            for i in range(1, min(m, len(denom) - 1) + 1):
                acc -= denom[i] * result[m - i]
            result.append(acc / denom[0])

        return cls(order, variables, [MultiLaurent.constant(variables, c) for c in result])

    def _match(self, other) -> Optional['TruncatedQSeries']:
        if isinstance(other, TruncatedQSeries):
            if other.variables != self.variables:
                raise VariableSetMismatch(f'Series over {self.variables} and {other.variables}')
            return other
        if isinstance(other, (int, Fraction, RationalFunction, MultiLaurent)):
            return TruncatedQSeries.constant(self.order, self.variables, other)
        return None

    def __add__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        order = min(self.order, o.order)
        return TruncatedQSeries(order, self.variables, [a + b for a, b in zip(self.coeffs[:order + 1], o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedQSeries(self.order, self.variables, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        order = min(self.order, o.order)
        zero = MultiLaurent(self.variables)
        coeffs = [zero] * (order + 1)
        for i, a in enumerate(self.coeffs[:order + 1]):
            if not a: continue
            for j, b in enumerate(o.coeffs[:order + 1 - i]):
                if b:
                    coeffs[i + j] = coeffs[i + j] + a * b
        return TruncatedQSeries(order, self.variables, coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        lead = o.coeffs[0]
        if not lead.is_monomial():
            raise NonUnitSeriesError(f'Leading coefficient {lead} of the divisor is not a unit')
        lead_inverse = lead ** (-1)
        order = min(self.order, o.order)
        result: List[MultiLaurent] = []
        for m in range(order + 1):
            acc = self.coeffs[m]
            for i in range(1, m + 1):
                if o.coeffs[i] and result[m - i]:
                    acc = acc - o.coeffs[i] * result[m - i]
            result.append(acc * lead_inverse)
        return TruncatedQSeries(order, self.variables, result)

    def __eq__(self, other):
        o = self._match(other)
        if o is None: return NotImplemented
        order = min(self.order, o.order)
        return all(a == b for a, b in zip(self.coeffs[:order + 1], o.coeffs))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coefficient(self, m: int) -> MultiLaurent:
        if not 0 <= m <= self.order:
            raise IndexError(f'Coefficient {m} outside truncation order {self.order}')
        return self.coeffs[m]

    def constant_term(self) -> 'TruncatedQSeries':
        """Series of x-constant terms, as a series without variables."""
        return TruncatedQSeries(
            self.order, (), [MultiLaurent.constant((), c.constant_term()) for c in self.coeffs])

    def map(self, function) -> 'TruncatedQSeries':
        return TruncatedQSeries(self.order, self.variables, [function(c) for c in self.coeffs])

    def scalars(self) -> List[Scalar]:
        if self.variables:
            raise VariableSetMismatch('Scalar coefficients requested from a series with variables')
        return [c.constant_term() for c in self.coeffs]

    def serialize(self) -> Dict[str, Any]:
        return {'order': self.order, 'coefficients': [c.serialize() for c in self.coeffs]}

    def __str__(self):
        parts = [f'({c})*q^{m}' for m, c in enumerate(self.coeffs) if c]
        return (' + '.join(parts) or '0') + f' + O(q^{self.order + 1})'


def qseries_expand_infinite_factor(
        monomial: MultiLaurent, shift: int, base_exp: int, inverted: bool, order: int) -> TruncatedQSeries:
    """
    Expand (u q^shift; q^base_exp)_infinity, or its inverse, through q^order.

    `monomial` is the single-term Laurent polynomial u.
    """

    if not monomial.is_monomial():
        raise ValueError(f'Expected a single-term monomial, got {monomial}')
    if base_exp < 1:
        raise ValueError(f'Base exponent must be positive, got {base_exp}')
    if shift < 0:
        raise ValueError(f'Shift must be nonnegative, got {shift}')
    if inverted and shift < 1:
        raise NonUnitSeriesError('Inverted factor with shift 0 has no unit leading term')

    variables = monomial.variables
    one = MultiLaurent.constant(variables)
    result = TruncatedQSeries.constant(order, variables)

    exponent = shift
    while exponent <= order:
        if inverted:
            coeffs: List[MultiLaurent] = [MultiLaurent(variables)] * (order + 1)
            power = one
            for j in range(0, order // exponent + 1):
                coeffs[j * exponent] = power
                power = power * monomial
            factor = TruncatedQSeries(order, variables, coeffs)
        else:
            coeffs = [MultiLaurent(variables)] * (order + 1)
            coeffs[0] = one
            coeffs[exponent] = coeffs[exponent] - monomial
            factor = TruncatedQSeries(order, variables, coeffs)
        result = result * factor
        exponent += base_exp

    logger.debug(f'Expanded infinite factor of {monomial} (shift {shift}, base {base_exp}) to order {order}')
    return result
