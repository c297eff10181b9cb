"""Discrete dynamical systems, invariant function algebras and Sep/Per sets.

Two kinds of base system are modelled exactly:

* :class:`FiniteSystem` -- a finite set with a permutation ``sigma``;
  functions are value vectors indexed by points.
* :class:`RotationSystem` -- the circle rotated by a unimodular Gaussian
  rational ``zeta``; functions are Laurent polynomials ``sum c_k z^k`` with
  ``|k| <= window``, stored as coefficient vectors from ``z^-window`` up.

Both act on functions by ``act(f, k) = f o sigma^-k``, the k-th power of the
induced automorphism.  For rotations this is ``z^k -> zeta^-k z^k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ClosureExceedsWindow, NoSolution, NotInAlgebra, WrongVariant, ZeroIndex
from .exact_arith import GAUSSIAN, GaussianRational, Matrix, canonical_basis, kernel, solve_linear
from .exact_arith.linalg import rref

DEFAULT_ROOT_BOUND = 64
DEFAULT_ZETA = GaussianRational(Fraction(3, 5), Fraction(4, 5))


# --- systems ----------------------------------------------------------------

class FiniteSystem:
    kind = 'finite'

    def __init__(self, sigma, labels=None, field=GAUSSIAN):
        sigma = tuple(int(s) for s in sigma)
        n = len(sigma)
        if sorted(sigma) != list(range(n)):
            raise ValueError(f'sigma {sigma} is not a permutation of 0..{n - 1}')
        if n == 0:
            raise ValueError('X must be non-empty')
        self.sigma = sigma
        self.size = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError('one label per point')
        self.field = field
        self._powers = {0: tuple(range(n)), 1: sigma}

    @property
    def dim(self) -> int:
        return self.size

    unbounded_dim = dim

    def power(self, k: int) -> tuple[int, ...]:
        """sigma^k as an index array."""
        k %= self.order
        p = self._powers.get(k)
        if p is None:
            prev = self.power(k - 1)
            p = self._powers[k] = tuple(self.sigma[i] for i in prev)
        return p

    @cached_property
    def order(self) -> int:
        return cycle_decomposition(self)[1]

    def act(self, f, k: int = 1):
        if k % self.order == 0:
            return tuple(f)
        p = self.power(k)
        out = [None] * self.size
        for x, y in enumerate(p):
            out[y] = f[x]
        return tuple(out)

    def mul(self, u, v):
        zero = self.field.zero
        return tuple(a * b if a and b else zero for a, b in zip(u, v))

    product_unbounded = mul

    def embed_unbounded(self, u):
        return tuple(u)

    def one(self):
        return (self.field.one,) * self.size

    def indicator(self, points):
        pts = set(points)
        return tuple(self.field.one if x in pts else self.field.zero for x in range(self.size))

    def __repr__(self):
        return f'FiniteSystem(sigma={list(self.sigma)})'


def unit_circle_point(t: Fraction) -> GaussianRational:
    """Rational parametrisation ((1 - t^2) + 2t i)/(1 + t^2) of the unit circle."""
    t = Fraction(t)
    den = 1 + t * t
    return GaussianRational((1 - t * t) / den, 2 * t / den)


def root_of_unity_order(zeta, bound: int = DEFAULT_ROOT_BOUND) -> int | None:
    """Smallest q <= bound with zeta^q = 1, or None if there is none up to bound."""
    p = zeta
    for q in range(1, bound + 1):
        if p == 1:
            return q
        p = p * zeta
    return None


class RotationSystem:
    kind = 'rotation'

    def __init__(self, zeta=DEFAULT_ZETA, window: int = 8, root_bound: int = DEFAULT_ROOT_BOUND):
        zeta = GAUSSIAN.coerce(zeta)
        if zeta.abs2() != 1:
            raise ValueError(f'zeta = {zeta} is not unimodular')
        if window < 1:
            raise ValueError('window must be positive')
        self.zeta = zeta
        self.window = int(window)
        self.root_bound = int(root_bound)
        self.field = GAUSSIAN
        self._zpow = {0: GAUSSIAN.one}

    @property
    def dim(self) -> int:
        return 2 * self.window + 1

    @property
    def unbounded_dim(self) -> int:
        return 4 * self.window + 1

    @cached_property
    def zeta_order(self) -> int | None:
        """Root-of-unity order of zeta, or None (certified up to root_bound)."""
        return root_of_unity_order(self.zeta, self.root_bound)

    @property
    def order(self) -> int | None:
        return self.zeta_order

    def exponents(self):
        return range(-self.window, self.window + 1)

    def zeta_power(self, k: int):
        p = self._zpow.get(k)
        if p is None:
            p = self._zpow[k] = self.zeta ** k
        return p

    def act(self, f, k: int = 1):
        if k == 0:
            return tuple(f)
        D = self.window
        return tuple(c * self.zeta_power(-k * (i - D)) if c else c for i, c in enumerate(f))

    def _convolve(self, u, v, size, offset):
        zero = self.field.zero
        out = [zero] * size
        D = self.window
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        k = i + j - 2 * D + offset
                        out[k] = out[k] + a * b
        return out

    def mul(self, u, v):
        """Laurent product; raises ClosureExceedsWindow outside the window."""
        D = self.window
        wide = self._convolve(u, v, 4 * D + 1, 2 * D)
        if any(wide[:D]) or any(wide[3 * D + 1:]):
            raise ClosureExceedsWindow(
                f'product has terms beyond |k| <= {D}; widen the window')
        return tuple(wide[D:3 * D + 1])

    def product_unbounded(self, u, v):
        """Product in the ring, as a vector over exponents -2D..2D."""
        D = self.window
        if len(u) == self.dim:
            u = self.embed_unbounded(u)
        if len(v) == self.dim:
            v = self.embed_unbounded(v)
        # both are now wide; convolve at full width
        zero = self.field.zero
        out = [zero] * (4 * D + 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        k = i + j - 2 * D
                        if not 0 <= k <= 4 * D:
                            raise ClosureExceedsWindow('product beyond the doubled window')
                        out[k] = out[k] + a * b
        return tuple(out)

    def embed_unbounded(self, u):
        pad = (self.field.zero,) * self.window
        return pad + tuple(u) + pad

    def monomial(self, k: int, coeff=None):
        if abs(k) > self.window:
            raise ClosureExceedsWindow(f'z^{k} lies outside the window')
        v = [self.field.zero] * self.dim
        v[k + self.window] = self.field.one if coeff is None else coeff
        return tuple(v)

    def one(self):
        return self.monomial(0)

    def evaluate(self, f, point):
        """Exact value of a window (or doubled-window) Laurent vector at a point of the circle."""
        D = (len(f) - 1) // 2
        inv = point.conjugate()
        total = self.field.zero
        for i, c in enumerate(f):
            if c:
                e = i - D
                total = total + c * (point ** e if e >= 0 else inv ** (-e))
        return total

    def __repr__(self):
        return f'RotationSystem(zeta={self.zeta}, window={self.window})'


def cycle_decomposition(system) -> tuple[list[tuple[int, ...]], int]:
    """Disjoint cycles of sigma (each starting at its smallest point) and its order."""
    if getattr(system, 'kind', None) != 'finite':
        raise WrongVariant('cycle_decomposition needs a finite system')
    seen = [False] * system.size
    cycles = []
    for start in range(system.size):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = system.sigma[x]
        cycles.append(tuple(cyc))
    order = 1
    for c in cycles:
        order = order * len(c) // math.gcd(order, len(c))
    return cycles, order


# --- subalgebras ------------------------------------------------------------

class SubAlgebra:
    """A linear subspace of functions on ``system`` given by basis vectors.

    The basis is stored in reduced row-echelon form, so the coordinates of a
    member are read off at the pivot positions.
    """

    def __init__(self, system, basis):
        self.system = system
        red, pivots = rref([tuple(b) for b in basis], system.dim) if basis else ([], [])
        self.basis = tuple(red)
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def full(cls, system) -> SubAlgebra:
        if system.kind == 'rotation':
            raise WrongVariant('use multiplicative_closure for rotation algebras')
        return cls(system, [system.indicator([x]) for x in range(system.size)])

    @classmethod
    def constants(cls, system) -> SubAlgebra:
        return cls(system, [system.one()])

    def coords(self, v):
        """Coordinates of v in the basis; raises NotInAlgebra otherwise."""
        v = tuple(v)
        if len(v) != self.system.dim:
            raise NotInAlgebra(f'vector of length {len(v)} for ambient dimension {self.system.dim}')
        c = tuple(v[p] for p in self.pivots)
        if self.combine(c) != v:
            raise NotInAlgebra('vector is not in the algebra')
        return c

    def contains(self, v) -> bool:
        try:
            self.coords(v)
        except NotInAlgebra:
            return False
        return True

    def combine(self, coords):
        zero = self.system.field.zero
        out = [zero] * self.system.dim
        for c, b in zip(coords, self.basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        out[i] = out[i] + c * x
        return tuple(out)

    def matrix(self) -> Matrix:
        return Matrix.from_rows(self.basis, self.system.dim)

    def is_closed(self) -> bool:
        """Products of basis elements stay in the span (rotation: those inside the window)."""
        for i, a in enumerate(self.basis):
            for b in self.basis[i:]:
                try:
                    p = self.system.mul(a, b)
                except ClosureExceedsWindow:
                    continue
                if not self.contains(p):
                    return False
        return True

    @cached_property
    def unit(self):
        """The identity element of the algebra, or None if it has none."""
        n = self.dim
        if n == 0:
            return None
        # unknown e = sum c_j b_j with e * b_i = b_i for every i, in the unbounded ring
        prod, embed = self.system.product_unbounded, self.system.embed_unbounded
        rows, rhs = [], []
        for bi in self.basis:
            prods = [prod(bj, bi) for bj in self.basis]
            target = embed(bi)
            for k in range(self.system.unbounded_dim):
                rows.append([p[k] for p in prods])
                rhs.append(target[k])
        try:
            c = solve_linear(rows, rhs)
        except NoSolution:
            return None
        return self.combine(c)

    def __repr__(self):
        return f'SubAlgebra(dim={self.dim}, system={self.system!r})'


def check_invariance(A: SubAlgebra) -> bool:
    """True iff the basis images under sigma~ and sigma~^-1 stay in A."""
    for b in A.basis:
        for k in (1, -1):
            if not A.contains(A.system.act(b, k)):
                return False
    return True


def _add_to_span(red, pivots, v, dim):
    red2, piv2 = rref(list(red) + [v], dim)
    return red2, piv2, len(piv2) > len(pivots)


def _linear_invariant_closure(system, vectors):
    red, pivots = rref(list(vectors), system.dim) if vectors else ([], [])
    queue = list(red)
    while queue:
        v = queue.pop()
        for k in (1, -1):
            w = system.act(v, k)
            red, pivots, grew = _add_to_span(red, pivots, w, system.dim)
            if grew:
                queue.append(w)
    return red, pivots


def multiplicative_closure(system, generators) -> SubAlgebra:
    """Smallest subalgebra invariant under sigma~ and its inverse containing the generators."""
    gens = [tuple(system.field.coerce(x) for x in g) for g in generators]
    for g in gens:
        if len(g) != system.dim:
            raise ValueError(f'generator of length {len(g)}; expected {system.dim}')
        if not any(g):
            raise ValueError('generators must be nonzero')
    red, pivots = _linear_invariant_closure(system, gens)
    if system.kind == 'rotation' and all(sum(1 for x in r if x) == 1 for r in red):
        return _monomial_closure(system, [p - system.window for p in pivots])
    # iterate products and images until the span stabilises
    while True:
        grew_any = False
        for i in range(len(red)):
            for j in range(i, len(red)):
                p = system.mul(red[i], red[j])  # may raise ClosureExceedsWindow
                if not any(p):
                    continue
                new, newp, grew = _add_to_span(red, pivots, p, system.dim)
                if grew:
                    red, pivots = _linear_invariant_closure(system, new)
                    grew_any = True
                    break
            if grew_any:
                break
        if not grew_any:
            return SubAlgebra(system, red)


def _monomial_closure(system, exps) -> SubAlgebra:
    """Window slice of the semigroup of exponents generated by ``exps``.

    Invariant subspaces are spanned by monomials when zeta is not a root of
    unity of small order, and then the algebra is spanned by z^k over the
    additive semigroup generated by the exponents, which is computed exactly.
    """
    D = system.window
    pos = sorted(e for e in exps if e > 0)
    neg = sorted(-e for e in exps if e < 0)
    if pos and neg:
        g = math.gcd(*pos, *neg)
        reach = {k for k in range(-D, D + 1) if k % g == 0}
    else:
        reach = {0} if 0 in exps else set()
        for gens, sign in ((pos, 1), (neg, -1)):
            frontier = set(gens)
            found = set()
            while frontier:
                found |= frontier
                frontier = {a + b for a in frontier for b in gens if a + b <= D} - found
            reach |= {sign * k for k in found if k <= D}
    return SubAlgebra(system, [system.monomial(k) for k in sorted(reach)])


# --- point sets -------------------------------------------------------------

@dataclass(frozen=True)
class PointSet:
    """A subset of X.

    Finite systems use ``kind='finite'`` with a membership mask.  Rotation
    systems use symbolic kinds: ``all``, ``empty``, ``cofinite`` (everything
    except the union over ``groups`` of the common zeros of each group of
    Laurent polynomials) and ``zeros`` (the common zeros of one group).
    """

    kind: str
    mask: tuple = ()
    groups: tuple = ()

    @classmethod
    def finite(cls, mask) -> PointSet:
        return cls('finite', tuple(bool(m) for m in mask))

    def is_empty(self) -> bool:
        if self.kind == 'finite':
            return not any(self.mask)
        return self.kind == 'empty'

    def points(self) -> list[int]:
        if self.kind != 'finite':
            raise WrongVariant('symbolic point sets have no point list')
        return [i for i, m in enumerate(self.mask) if m]

    def complement(self) -> PointSet:
        if self.kind == 'finite':
            return PointSet.finite(not m for m in self.mask)
        if self.kind == 'all':
            return PointSet('empty')
        if self.kind == 'empty':
            return PointSet('all')
        if self.kind == 'cofinite' and len(self.groups) == 1:
            return PointSet('zeros', groups=self.groups)
        if self.kind == 'zeros':
            return PointSet('cofinite', groups=self.groups)
        raise NotImplementedError('complement of a union of zero sets')

    def intersect(self, other: PointSet) -> PointSet:
        if self.kind == 'finite' and other.kind == 'finite':
            return PointSet.finite(a and b for a, b in zip(self.mask, other.mask))
        if self.kind == 'empty' or other.kind == 'empty':
            return PointSet('empty')
        if self.kind == 'all':
            return other
        if other.kind == 'all':
            return self
        if self.kind == 'cofinite' and other.kind == 'cofinite':
            return PointSet('cofinite', groups=self.groups + other.groups)
        raise NotImplementedError(f'intersection of {self.kind} and {other.kind} sets')

    def contains_point(self, system, point) -> bool:
        """Membership of a circle point (rotation systems only)."""
        if self.kind == 'all':
            return True
        if self.kind == 'empty':
            return False
        in_zeros = any(all(not system.evaluate(p, point) for p in g) for g in self.groups)
        if self.kind == 'cofinite':
            return not in_zeros
        if self.kind == 'zeros':
            return in_zeros
        raise WrongVariant('finite point set queried with a circle point')

    def describe(self, labels=None) -> str:
        if self.kind == 'finite':
            pts = self.points()
            names = [labels[i] for i in pts] if labels else [str(i) for i in pts]
            return '{' + ', '.join(names) + '}'
        if self.kind in ('all', 'empty'):
            return self.kind.capitalize()
        n = sum(len(g) for g in self.groups)
        if self.kind == 'cofinite':
            return f'AllButFinite(common zeros of {n} Laurent polynomial(s))'
        return f'Finite(common zeros of {n} Laurent polynomial(s))'


def _is_monomial(v) -> bool:
    return sum(1 for x in v if x) == 1


def sep_sets(A: SubAlgebra, n: int) -> tuple[PointSet, PointSet]:
    """(Sep_A^n, Per_A^n): points moved / not moved by sigma^n as seen through A."""
    if n == 0:
        raise ZeroIndex('Sep_A^n is defined for nonzero n only')
    system = A.system
    if system.kind == 'finite':
        back = system.power(-n)
        mask = [False] * system.size
        for h in A.basis:
            for x in range(system.size):
                if not mask[x] and h[x] != h[back[x]]:
                    mask[x] = True
        sep = PointSet.finite(mask)
        return sep, sep.complement()
    if system.kind == 'rotation':
        diffs = [tuple(a - b for a, b in zip(system.act(h, n), h)) for h in A.basis]
        diffs = canonical_basis([d for d in diffs if any(d)], system.dim)
        if not diffs:
            sep = PointSet('empty')
        elif any(_is_monomial(d) for d in diffs):
            # a monomial has no zeros on the circle
            sep = PointSet('all')
        else:
            sep = PointSet('cofinite', groups=(diffs,))
        return sep, sep.complement()
    raise WrongVariant(f'no point model for {system.kind} systems')


def per_infinity(A: SubAlgebra) -> PointSet:
    """Intersection of Sep_A^n over all nonzero n (named Per_A^infinity).

    Sep_A^n depends on sigma^n only, so finite systems need n = 1..order and
    rotations by a root of unity of order q need n = 1..q.  Otherwise zeta is
    certified to be no root of unity up to ``root_bound`` and n runs that far.
    """
    system = A.system
    if system.kind == 'finite':
        bound = system.order
    elif system.kind == 'rotation':
        bound = system.zeta_order or system.root_bound
    else:
        raise WrongVariant(f'no point model for {system.kind} systems')
    acc = sep_sets(A, 1)[0]
    for n in range(2, bound + 1):
        if acc.is_empty():
            break
        acc = acc.intersect(sep_sets(A, n)[0])
    return acc


def sample_points(system: RotationSystem, S: PointSet, count: int):
    """``count`` distinct Gaussian-rational points of the circle lying in S."""
    pts = []
    t = 0
    while len(pts) < count:
        p = unit_circle_point(Fraction(t))
        if S.contains_point(system, p):
            pts.append(p)
        t += 1
    return pts


def restriction_rows(A: SubAlgebra, S: PointSet) -> list[list]:
    """Linear conditions on A-coordinates expressing "vanishes on S"."""
    system = A.system
    if S.is_empty():
        return []
    if system.kind == 'finite':
        return [[b[x] for b in A.basis] for x in S.points()]
    if system.kind == 'rotation':
        if S.kind == 'zeros':
            raise NotImplementedError('vanishing on a finite set of algebraic circle points')
        # z^D f has degree <= 2D, so 2D + 1 points of S decide vanishing on S
        pts = sample_points(system, S, system.dim)
        return [[system.evaluate(b, p) for b in A.basis] for p in pts]
    raise WrongVariant(f'no point model for {system.kind} systems')


def vanishing_coords(A: SubAlgebra, S: PointSet) -> list[tuple]:
    """Coordinate vectors (in A's basis) of the functions in A vanishing on S."""
    field = A.system.field
    return kernel(restriction_rows(A, S), A.dim, field.zero, field.one) if A.dim else []


def is_domain_of_uniqueness(A: SubAlgebra, S: PointSet) -> bool:
    """S is non-empty and every f in A vanishing on S vanishes identically."""
    if S.is_empty():
        return False
    return not vanishing_coords(A, S)


def separates_points(A: SubAlgebra) -> bool:
    if A.system.kind != 'finite':
        raise WrongVariant('finite systems only')
    cols = {tuple(b[x] for b in A.basis) for x in range(A.system.size)}
    return len(cols) == A.system.size
