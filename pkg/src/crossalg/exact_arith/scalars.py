"""Exact scalar fields: Gaussian rationals Q(i) and cyclotomic fields Q(w_N).

Rationals are plain :class:`fractions.Fraction` values; both field types
interoperate with ``int`` and ``Fraction`` operands, which embed as real
constants.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import DivisionByZero, MixedScalarFields, SchemaError

Rational = Fraction

__all__ = [
    'Rational', 'GaussianRational', 'CyclotomicScalar',
    'GaussianField', 'CyclotomicField', 'GAUSSIAN',
    'cyclotomic_polynomial', 'parse_scalar', 'format_scalar', 'field_of',
    'scalar_from_json', 'scalar_to_json',
]


class GaussianRational:
    """An element (a + b*i)/d of Q(i), stored with d > 0 and gcd(a, b, d) = 1."""

    __slots__ = ('_a', '_b', '_d')

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._a = re.numerator * (d // re.denominator)
        self._b = im.numerator * (d // im.denominator)
        self._d = d

    @classmethod
    def _make(cls, a, b, d):
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d) if d != 1 else 1
        if g != 1:
            a //= g
            b //= g
            d //= g
        z = object.__new__(cls)
        z._a = a
        z._b = b
        z._d = d
        return z

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational._make(self._a, -self._b, self._d)

    conj = conjugate

    def abs2(self) -> Fraction:
        """Squared modulus re^2 + im^2, an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def inverse(self) -> GaussianRational:
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise DivisionByZero('inverse of zero')
        return GaussianRational._make(a * d, -b * d, n)

    # --- arithmetic ---------------------------------------------------------

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussianRational):
            return x._a, x._b, x._d
        if isinstance(x, int):
            return x, 0, 1
        if isinstance(x, Fraction):
            return x.numerator, 0, x.denominator
        return None

    def __add__(self, other):
        if type(other) is GaussianRational:
            a2, b2, d2 = other._a, other._b, other._d
        else:
            p = self._parts(other)
            if p is None:
                return NotImplemented
            a2, b2, d2 = p
        a1, b1, d1 = self._a, self._b, self._d
        if d1 == d2:
            return GaussianRational._make(a1 + a2, b1 + b2, d1)
        return GaussianRational._make(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        z = object.__new__(GaussianRational)
        z._a, z._b, z._d = -self._a, -self._b, self._d
        return z

    def __pos__(self):
        return self

    def __sub__(self, other):
        if type(other) is GaussianRational:
            a2, b2, d2 = other._a, other._b, other._d
        else:
            p = self._parts(other)
            if p is None:
                return NotImplemented
            a2, b2, d2 = p
        a1, b1, d1 = self._a, self._b, self._d
        if d1 == d2:
            return GaussianRational._make(a1 - a2, b1 - b2, d1)
        return GaussianRational._make(a1 * d2 - a2 * d1, b1 * d2 - b2 * d1, d1 * d2)

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational._make(*p) - self

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a2, b2, d2 = other._a, other._b, other._d
        else:
            p = self._parts(other)
            if p is None:
                return NotImplemented
            a2, b2, d2 = p
        a1, b1, d1 = self._a, self._b, self._d
        if b1 == 0 and b2 == 0:
            return GaussianRational._make(a1 * a2, 0, d1 * d2)
        return GaussianRational._make(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self * GaussianRational._make(*p).inverse()

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational._make(*p) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational._make(1, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, int):
            return self._b == 0 and self._d == 1 and self._a == other
        if isinstance(other, Fraction):
            return (self._b == 0 and self._d == other.denominator
                    and self._a == other.numerator)
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f'GaussianRational({format_scalar(self)!r})'

    def __str__(self):
        return format_scalar(self)


# --- polynomial helpers over Q (coefficient lists, low degree first) ---------

def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = _trim(den)
    if not den:
        raise DivisionByZero('polynomial division by zero')
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    while len(_trim(num)) >= len(den):
        num = _trim(num)
        shift = len(num) - len(den)
        c = num[-1] / lead
        q[shift] = c
        for i, dc in enumerate(den):
            num[i + shift] -= c * dc
    return _trim(q), _trim(num)


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed by dividing x^n - 1 by the product of Phi_d over proper divisors d.
    """
    if n < 1:
        raise ValueError('cyclotomic_polynomial needs n >= 1')
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod(num, den)
    assert not r, 'x^n - 1 not divisible by proper cyclotomic factors'
    assert all(c.denominator == 1 for c in q)
    return tuple(int(c) for c in q)


@lru_cache(maxsize=None)
def _reduction_table(n: int):
    """Rows x^k mod Phi_n for 0 <= k < 2*deg - 1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(2 * deg - 1, 1)):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return deg, tuple(rows)


class CyclotomicScalar:
    """An element of Q[x]/(Phi_N); the class of x is a primitive N-th root of unity."""

    __slots__ = ('modulus', 'coeffs')

    def __init__(self, modulus: int, coeffs):
        deg, table = _reduction_table(modulus)
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > deg:
            red = [Fraction(0)] * deg
            for k, c in enumerate(coeffs):
                if c:
                    row = table[k] if k < len(table) else _power_row(modulus, k)
                    for i, r in enumerate(row):
                        if r:
                            red[i] += c * r
            coeffs = red
        else:
            coeffs = coeffs + [Fraction(0)] * (deg - len(coeffs))
        self.modulus = modulus
        self.coeffs = tuple(coeffs)

    @classmethod
    def root_of_unity(cls, modulus: int, power: int = 1) -> CyclotomicScalar:
        return cls(modulus, [0, 1]) ** power

    @classmethod
    def constant(cls, modulus: int, value) -> CyclotomicScalar:
        return cls(modulus, [value])

    def _coerce(self, other):
        if isinstance(other, CyclotomicScalar):
            if other.modulus != self.modulus:
                raise MixedScalarFields(
                    f'cyclotomic moduli {self.modulus} and {other.modulus} differ')
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (len(self.coeffs) - 1)
        if isinstance(other, GaussianRational):
            raise MixedScalarFields('cannot mix GaussianRational and CyclotomicScalar')
        return None

    def _new(self, coeffs):
        z = object.__new__(CyclotomicScalar)
        z.modulus = self.modulus
        z.coeffs = tuple(coeffs)
        return z

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(a + b for a, b in zip(self.coeffs, o))

    __radd__ = __add__

    def __neg__(self):
        return self._new(-a for a in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(a - b for a, b in zip(self.coeffs, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new(a * other for a in self.coeffs)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        deg, table = _reduction_table(self.modulus)
        prod = [0] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        out = [Fraction(0)] * deg
        for k, c in enumerate(prod):
            if c:
                for i, r in enumerate(table[k]):
                    if r:
                        out[i] += c * r
        return self._new(out)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicScalar:
        if not self:
            raise DivisionByZero('inverse of zero')
        # extended Euclid: s*self + t*Phi = 1
        phi = list(cyclotomic_polynomial(self.modulus))
        r0, r1 = phi, _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            prod = _poly_mul(q, s1)
            n = max(len(s0), len(prod))
            s0, s1 = s1, _trim([(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                                for i in range(n)])
        # r0 is a nonzero constant because Phi is irreducible
        assert len(r0) == 1
        return CyclotomicScalar(self.modulus, [c / r0[0] for c in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero('division by zero')
            return self._new(a / other for a in self.coeffs)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicScalar.constant(self.modulus, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CyclotomicScalar:
        """Complex conjugation, i.e. the automorphism x -> x^(N-1)."""
        n = self.modulus
        w_inv = CyclotomicScalar.root_of_unity(n, n - 1)
        out = CyclotomicScalar.constant(n, 0)
        p = CyclotomicScalar.constant(n, 1)
        for c in self.coeffs:
            if c:
                out = out + p * c
            p = p * w_inv
        return out

    conj = conjugate

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except MixedScalarFields:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.modulus, self.coeffs))

    def __repr__(self):
        return f'CyclotomicScalar({self.modulus}, [{", ".join(str(c) for c in self.coeffs)}])'

    __str__ = __repr__


def _power_row(modulus, k):
    # x^k mod Phi_N via x^N = 1
    k %= modulus
    deg, table = _reduction_table(modulus)
    if k < len(table):
        return table[k]
    phi = cyclotomic_polynomial(modulus)
    cur = list(table[-1])
    for _ in range(k - len(table) + 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(cur)


# --- fields -----------------------------------------------------------------

class GaussianField:
    name = 'gaussian'
    zero = GaussianRational(0)
    one = GaussianRational(1)

    def coerce(self, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise MixedScalarFields(f'cannot coerce {x!r} into Q(i)')

    def __eq__(self, other):
        return isinstance(other, GaussianField)

    def __hash__(self):
        return hash('gaussian')

    def __repr__(self):
        return 'GaussianField()'


GAUSSIAN = GaussianField()


class CyclotomicField:
    def __init__(self, modulus: int):
        self.modulus = modulus
        self.name = f'cyclotomic{modulus}'
        self.zero = CyclotomicScalar.constant(modulus, 0)
        self.one = CyclotomicScalar.constant(modulus, 1)

    @property
    def degree(self) -> int:
        return len(cyclotomic_polynomial(self.modulus)) - 1

    def root(self, power: int = 1) -> CyclotomicScalar:
        return CyclotomicScalar.root_of_unity(self.modulus, power % self.modulus)

    def coerce(self, x) -> CyclotomicScalar:
        if isinstance(x, CyclotomicScalar):
            if x.modulus != self.modulus:
                raise MixedScalarFields(f'modulus {x.modulus} is not {self.modulus}')
            return x
        if isinstance(x, (int, Fraction)):
            return CyclotomicScalar.constant(self.modulus, x)
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise MixedScalarFields(f'cannot coerce {x!r} into Q(w_{self.modulus})')

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(('cyclotomic', self.modulus))

    def __repr__(self):
        return f'CyclotomicField({self.modulus})'


def field_of(x):
    """Field tag of a scalar: None for int/Fraction (embeds anywhere)."""
    if isinstance(x, GaussianRational):
        return 'gaussian'
    if isinstance(x, CyclotomicScalar):
        return ('cyclotomic', x.modulus)
    if isinstance(x, (int, Fraction)):
        return None
    raise MixedScalarFields(f'unsupported scalar {x!r}')


# --- serialization ----------------------------------------------------------

_SCALAR_RE = re.compile(
    r'^(?P<re>[+-]?\d+(?:/\d+)?)?'
    r'(?:(?P<sign>[+-])?(?P<im>\d+(?:/\d+)?)?\*?(?P<i>i))?$')


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``"p/q"``, ``"p/q+r/s*i"``, ``"-i"`` and similar forms."""
    s = str(text).replace(' ', '')
    m = _SCALAR_RE.match(s)
    if not s or m is None:
        raise SchemaError(f'cannot parse scalar {text!r}')
    re_part, sign, im_part, i = m.group('re', 'sign', 'im', 'i')
    if i is None:
        if re_part is None:
            raise SchemaError(f'cannot parse scalar {text!r}')
        return GaussianRational(Fraction(re_part))
    if re_part is not None and sign is None:
        # "4/5*i": the leading number was the imaginary coefficient
        if im_part is not None:
            raise SchemaError(f'cannot parse scalar {text!r}')
        return GaussianRational(0, Fraction(re_part))
    im = Fraction(im_part) if im_part is not None else Fraction(1)
    if sign == '-':
        im = -im
    return GaussianRational(Fraction(re_part) if re_part else 0, im)


def format_scalar(z) -> str:
    if isinstance(z, (int, Fraction)):
        return str(Fraction(z))
    if isinstance(z, CyclotomicScalar):
        return repr(z)
    re_, im = z.re, z.im
    if im == 0:
        return str(re_)
    im_abs = '' if abs(im) == 1 else f'{abs(im)}*'
    if re_ == 0:
        return f'{"-" if im < 0 else ""}{im_abs}i'
    return f'{re_}{"-" if im < 0 else "+"}{im_abs}i'


def scalar_to_json(z):
    if isinstance(z, CyclotomicScalar):
        return {'modulus': z.modulus, 'coeffs': [str(c) for c in z.coeffs]}
    return format_scalar(z)


def scalar_from_json(obj, field=GAUSSIAN):
    if isinstance(obj, dict):
        try:
            return CyclotomicScalar(int(obj['modulus']), [Fraction(c) for c in obj['coeffs']])
        except (KeyError, ValueError, TypeError) as exc:
            raise SchemaError(f'bad cyclotomic scalar {obj!r}') from exc
    if isinstance(obj, bool):
        raise SchemaError(f'bad scalar {obj!r}')
    if isinstance(obj, int):
        return field.coerce(obj)
    if isinstance(obj, str):
        if isinstance(field, CyclotomicField):
            try:
                return field.coerce(Fraction(obj))
            except ValueError as exc:
                raise SchemaError(f'bad scalar {obj!r}') from exc
        return parse_scalar(obj)
    raise SchemaError(f'bad scalar {obj!r}')
