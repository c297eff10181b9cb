"""Group algebras of Z_N, their exact Fourier transform and dual-induced automorphisms.

Scalars live in Q(w_N) with w_N the class of x modulo the N-th cyclotomic
polynomial.  The dual group is identified with Z_N through
gamma(x) = w_N^(gamma*x), so that hat(f)(gamma) = sum_x f(x) w_N^(-gamma*x).

On a finite dual the coset ring is the full power set, so every permutation
of the dual is piecewise affine; no affine structure is required of a dual
map beyond bijectivity.  A finite dual is never connected, which is why the
fix-evens/shift-odds map below serves as the disconnected-dual example.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .crossed import (CrossedContext, commutant_degree, commutant_degree_oracle,
                      is_maximal_abelian)
from .dynamics import SubAlgebra
from .errors import InternalInvariantViolation, ModulusMismatch, NIsOdd, NotBijective
from .exact_arith import CyclotomicField, canonical_basis, scalar_to_json
from .gelfand import CharacterSpace, GelfandIsomorphism, induced_homeomorphism, validate_characters


@dataclass(frozen=True)
class GroupAlgebraElement:
    N: int
    coeffs: tuple

    @classmethod
    def delta(cls, N: int, x: int = 0) -> GroupAlgebraElement:
        F = CyclotomicField(N)
        return cls(N, tuple(F.one if y == x % N else F.zero for y in range(N)))

    @classmethod
    def from_values(cls, N: int, values) -> GroupAlgebraElement:
        F = CyclotomicField(N)
        values = tuple(F.coerce(v) for v in values)
        if len(values) != N:
            raise ModulusMismatch(f'{len(values)} values for Z_{N}')
        return cls(N, values)

    def __add__(self, other):
        if self.N != other.N:
            raise ModulusMismatch(f'Z_{self.N} vs Z_{other.N}')
        return GroupAlgebraElement(self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        return convolve(self, other)


def _convolve(u, v, N, zero):
    out = [zero] * N
    for y, a in enumerate(u):
        if a:
            for z, b in enumerate(v):
                if b:
                    k = (y + z) % N
                    out[k] = out[k] + a * b
    return tuple(out)


def convolve(f: GroupAlgebraElement, g: GroupAlgebraElement) -> GroupAlgebraElement:
    """(f*g)(x) = sum_y f(y) g(x - y)."""
    if f.N != g.N:
        raise ModulusMismatch(f'Z_{f.N} vs Z_{g.N}')
    return GroupAlgebraElement(f.N, _convolve(f.coeffs, g.coeffs, f.N, CyclotomicField(f.N).zero))


def _dft(values, N, sign):
    F = CyclotomicField(N)
    roots = [F.root(sign * k) for k in range(N)]
    out = []
    for gamma in range(N):
        acc = F.zero
        for x, v in enumerate(values):
            if v:
                acc = acc + v * roots[(gamma * x) % N]
        out.append(acc)
    return tuple(out)


def fourier_transform(f) -> tuple:
    """hat(f)(gamma) = sum_x f(x) w^(-gamma x)."""
    if isinstance(f, GroupAlgebraElement):
        f = f.coeffs
    return _dft(f, len(f), -1)


def inverse_fourier(fhat) -> tuple:
    N = len(fhat)
    return tuple(v * Fraction(1, N) for v in _dft(fhat, N, 1))


# --- dual maps --------------------------------------------------------------

@dataclass(frozen=True)
class AffineDualMap:
    """gamma -> a + u*gamma on Z_N, u a unit mod N."""

    a: int
    u: int

    def permutation(self, N: int) -> tuple[int, ...]:
        if math.gcd(self.u, N) != 1:
            raise NotBijective(f'u = {self.u} is not a unit mod {N}')
        return tuple((self.a + self.u * g) % N for g in range(N))

    def __call__(self, gamma: int, N: int) -> int:
        return (self.a + self.u * gamma) % N

    def compose(self, other: AffineDualMap, N: int) -> AffineDualMap:
        """self o other."""
        return AffineDualMap((self.a + self.u * other.a) % N, (self.u * other.u) % N)


def piecewise_permutation(N: int, pieces) -> tuple[int, ...]:
    """Permutation that equals a given affine map on each listed subset of the dual."""
    out: list = [None] * N
    for subset, amap in pieces:
        for g in subset:
            g %= N
            if out[g] is not None:
                raise NotBijective(f'gamma = {g} lies in two pieces')
            out[g] = amap(g, N)
    if None in out:
        raise NotBijective('pieces do not cover the dual group')
    return check_permutation(out)


def check_permutation(m) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if sorted(m) != list(range(len(m))):
        raise NotBijective(f'{m} is not a bijection')
    return m


def invert_permutation(m) -> tuple[int, ...]:
    inv = [0] * len(m)
    for i, j in enumerate(m):
        inv[j] = i
    return tuple(inv)


def disco_dual_map(N: int) -> tuple[int, ...]:
    """Fix even characters and move odd ones by +2."""
    if N % 2:
        raise NIsOdd(f'N = {N} is odd')
    return tuple(g if g % 2 == 0 else (g + 2) % N for g in range(N))


# --- the group algebra as a coefficient algebra ------------------------------

class GroupAlgebra:
    """C[Z_N] under convolution with an automorphism given by a matrix.

    Implements the coefficient-algebra interface used by the crossed product
    (``dim``, ``field``, ``act``, ``mul``, ...). It has no underlying point
    set, so only the brute-force routes apply directly; the closed forms are
    reached through the Gelfand transform.
    """

    kind = 'group'

    def __init__(self, N: int, matrix=None, inverse_matrix=None):
        self.N = N
        self.field = CyclotomicField(N)
        F = self.field
        ident = tuple(tuple(F.one if i == j else F.zero for j in range(N)) for i in range(N))
        self.matrix = tuple(tuple(r) for r in matrix) if matrix is not None else ident
        self.inverse_matrix = (tuple(tuple(r) for r in inverse_matrix)
                               if inverse_matrix is not None else ident)
        self._powers = {0: ident, 1: self.matrix, -1: self.inverse_matrix}

    @property
    def dim(self) -> int:
        return self.N

    unbounded_dim = dim

    def _matrix_power(self, k: int):
        M = self._powers.get(k)
        if M is None:
            step = self._matrix_power(1 if k > 0 else -1)
            prev = self._matrix_power(k - 1 if k > 0 else k + 1)
            M = self._powers[k] = _matmul(step, prev, self.field.zero)
        return M

    def act(self, f, k: int = 1):
        if k == 0:
            return tuple(f)
        M = self._matrix_power(k)
        zero = self.field.zero
        out = []
        for row in M:
            acc = zero
            for a, b in zip(row, f):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def mul(self, u, v):
        return _convolve(u, v, self.N, self.field.zero)

    product_unbounded = mul

    def embed_unbounded(self, u):
        return tuple(u)

    def one(self):
        return GroupAlgebraElement.delta(self.N).coeffs

    def __repr__(self):
        return f'GroupAlgebra(N={self.N})'


def _matmul(P, Q, zero):
    cols = list(zip(*Q))
    out = []
    for row in P:
        r = []
        for col in cols:
            acc = zero
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def _dual_matrix(N: int, m) -> tuple:
    # column x is F^-1( gamma -> hat(delta_x)(m(gamma)) )
    F = CyclotomicField(N)
    cols = []
    for x in range(N):
        precomposed = tuple(F.root(-m[g] * x) for g in range(N))
        cols.append(inverse_fourier(precomposed))
    return tuple(tuple(cols[x][y] for x in range(N)) for y in range(N))


class DualAutomorphism:
    """sigma~ = F^-1 o (precompose with m) o F, i.e. hat(sigma~ f) = hat(f) o m."""

    def __init__(self, m):
        self.m = check_permutation(m)
        self.N = len(self.m)
        self.algebra = GroupAlgebra(self.N, _dual_matrix(self.N, self.m),
                                    _dual_matrix(self.N, invert_permutation(self.m)))

    def __call__(self, f):
        if isinstance(f, GroupAlgebraElement):
            return GroupAlgebraElement(f.N, self.algebra.act(f.coeffs, 1))
        return self.algebra.act(f, 1)

    def is_algebra_automorphism(self, rng: random.Random, trials: int = 10) -> bool:
        """sigma~(f*g) = sigma~(f)*sigma~(g) on random pairs (and on all basis pairs)."""
        N = self.N
        F = self.algebra.field
        mul, act = self.algebra.mul, self.algebra.act
        pairs = [(GroupAlgebraElement.delta(N, x).coeffs, GroupAlgebraElement.delta(N, y).coeffs)
                 for x in range(N) for y in range(x, N)]
        for _ in range(trials):
            pairs.append((tuple(F.coerce(rng.randint(-3, 3)) for _ in range(N)),
                          tuple(F.coerce(rng.randint(-3, 3)) for _ in range(N))))
        return all(act(mul(f, g), 1) == mul(act(f, 1), act(g, 1)) for f, g in pairs)


def dual_induced_automorphism(m) -> DualAutomorphism:
    return DualAutomorphism(m)


def group_character_space(A: SubAlgebra) -> CharacterSpace:
    """Delta(C[Z_N]) as the Fourier characters f -> hat(f)(gamma), gamma = 0..N-1."""
    system = A.system
    N = system.N
    rows = []
    for gamma in range(N):
        # value of the character on each basis element of A
        rows.append(tuple(fourier_transform(b)[gamma] for b in A.basis))
    validate_characters(A, rows)
    return CharacterSpace(tuple(rows), induced_homeomorphism(rows, A),
                          tuple(f'gamma={g}' for g in range(N)))


def group_algebra_context(m) -> tuple[DualAutomorphism, CrossedContext]:
    aut = dual_induced_automorphism(m)
    system = aut.algebra
    A = SubAlgebra(system, [GroupAlgebraElement.delta(system.N, x).coeffs
                            for x in range(system.N)])
    return aut, CrossedContext(A)


def dual_map_report(m, window: int, oracle_only: bool = False) -> dict:
    """Commutant of C[Z_N] x| Z for the automorphism induced by a dual permutation m.

    The commutant is computed on the character side (closed form over the
    induced permutation of the dual) and independently on the group-algebra
    side (brute-force solve under convolution); the two are compared after
    transport by the Fourier transform. With ``oracle_only`` just the
    brute-force side is computed and maximality is read off the window.
    """
    m = check_permutation(m)
    N = len(m)
    aut, ctx = group_algebra_context(m)
    cs = group_character_space(ctx.A)
    iso = GelfandIsomorphism(ctx, cs)
    hat = iso.target
    degrees = []
    mismatched = []
    for n in range(-window, window + 1):
        oracle = canonical_basis([iso.transform(v) for v in commutant_degree_oracle(ctx, n)], N)
        entry = {'degree': n, 'dim': len(oracle)}
        if not oracle_only:
            theorem = commutant_degree(hat, n)
            if theorem != oracle:
                mismatched.append(n)
            entry['theorem_equals_oracle'] = theorem == oracle
        entry['fourier_support'] = sorted({g for v in oracle for g, x in enumerate(v) if x})
        degrees.append(entry)
    if mismatched:
        n = min(mismatched, key=abs)
        raise InternalInvariantViolation(
            'group algebra: theorem and oracle commutants differ',
            {'N': N, 'dual_map': list(m), 'degree': n})
    induced = cs.induced_sigma
    if oracle_only:
        nonzero = [e['degree'] for e in degrees if e['degree'] and e['dim']]
        maximality = {'route': 'oracle within window', 'maximal_abelian': not nonzero}
    else:
        maximality = is_maximal_abelian(hat).to_json()
    return {
        'N': N,
        'window': window,
        'dual_map': list(m),
        'induced_on_characters': list(induced),
        'induced_equals_dual_map': induced == m,
        'induced_is_inverse_of_dual_map': induced == invert_permutation(m),
        'automorphism_order': _perm_order(m),
        'degrees': degrees,
        'theorem_equals_oracle': None if oracle_only else True,
        'maximal_abelian': maximality['maximal_abelian'],
        'maximality': maximality,
    }


def disco_analog(N: int, window: int) -> dict:
    """dual_map_report for the fix-evens/shift-odds map, plus support checks.

    ``even_support_all_nonzero_degrees`` is the literal condition that every
    coefficient at a degree n != 0 has Fourier support in the even
    characters. On a finite dual the odd characters are periodic, so at
    degrees where m^n fixes them the commutant also contains odd support;
    ``support_in_evens_or_periodic_odds`` is the condition that holds in
    general.
    """
    m = disco_dual_map(N)
    report = dual_map_report(m, window)
    strict_ok = finite_ok = True
    for entry in report['degrees']:
        n = entry['degree']
        if n == 0:
            continue
        odd_support = [g for g in entry['fourier_support'] if g % 2]
        periodic_odds = [g for g in range(N) if g % 2 and _perm_power(m, n)[g] == g]
        entry['even_support'] = not odd_support
        entry['odd_characters_periodic_under_n'] = periodic_odds
        strict_ok = strict_ok and not odd_support
        finite_ok = finite_ok and set(odd_support) <= set(periodic_odds)
    report['even_support_all_nonzero_degrees'] = strict_ok
    report['support_in_evens_or_periodic_odds'] = finite_ok
    return report


def _perm_power(m, n):
    N = len(m)
    out = list(range(N))
    step = m if n >= 0 else invert_permutation(m)
    for _ in range(abs(n)):
        out = [step[i] for i in out]
    return out


def _perm_order(m):
    k = 1
    p = list(m)
    while p != list(range(len(m))):
        p = [m[i] for i in p]
        k += 1
    return k


def element_to_json(f: GroupAlgebraElement) -> dict:
    return {'N': f.N, 'coeffs': [scalar_to_json(x) for x in f.coeffs]}
