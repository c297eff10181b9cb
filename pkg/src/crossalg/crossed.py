"""The crossed product A x| Z of an invariant function algebra by sigma~.

Elements are finite sums ``sum f_n delta^n`` with ``f_n`` in A, multiplied by
twisted convolution ``(f_n delta^n)(g_m delta^m) = f_n sigma~^n(g_m) delta^(n+m)``.

Every structural computation comes in two independent flavours: a closed
form read off the dynamics (Sep sets, invariance) and a brute-force linear
solve built from the multiplication rule alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from .dynamics import SubAlgebra, check_invariance, restriction_rows, sep_sets, vanishing_coords
from .errors import (ClosureExceedsWindow, InternalInvariantViolation, NotAnAutomorphism,
                     NotFiniteDimensional, NotInAlgebra, NotUnital)
from .exact_arith import EchelonSpan, canonical_basis, kernel, scalar_to_json, span_contains


@dataclass(frozen=True)
class CrossedElement:
    """``sum f_n delta^n``, stored as sorted ``(n, f_n)`` pairs without zero terms."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, terms: dict) -> CrossedElement:
        return cls(tuple(sorted((int(n), tuple(v)) for n, v in terms.items() if any(v))))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coeff(self, n: int):
        for m, v in self.terms:
            if m == n:
                return v
        return None

    def support(self) -> list[int]:
        return [n for n, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: CrossedElement) -> CrossedElement:
        return add_scale(self, other, 1)

    def __sub__(self, other: CrossedElement) -> CrossedElement:
        return add_scale(self, other, -1)

    def __neg__(self) -> CrossedElement:
        return CrossedElement(tuple((n, tuple(-x for x in v)) for n, v in self.terms))

    def scaled(self, alpha) -> CrossedElement:
        if not alpha:
            return CrossedElement()
        return CrossedElement(tuple((n, tuple(alpha * x for x in v)) for n, v in self.terms))

    def to_json(self) -> dict:
        return {'terms': {str(n): [scalar_to_json(x) for x in v] for n, v in self.terms}}


def add_scale(f: CrossedElement, g: CrossedElement, alpha=1) -> CrossedElement:
    """f + alpha*g, pruning zero coefficients."""
    out = dict(f.terms)
    for n, v in g.terms:
        if n in out:
            out[n] = tuple(a + alpha * b for a, b in zip(out[n], v))
        else:
            out[n] = tuple(alpha * b for b in v)
    return CrossedElement.from_dict(out)


@dataclass
class DegreeBasis:
    """Per-degree bases (RREF, ambient coordinates) of coefficient spaces."""

    dim: int
    degrees: dict = field(default_factory=dict)

    def dims(self) -> dict:
        return {n: len(b) for n, b in self.degrees.items()}

    def nonzero_degrees(self) -> list[int]:
        return sorted(n for n, b in self.degrees.items() if b)

    def __eq__(self, other):
        if not isinstance(other, DegreeBasis):
            return NotImplemented
        return (self.dim == other.dim and self.degrees.keys() == other.degrees.keys()
                and all(self.degrees[n] == other.degrees[n] for n in self.degrees))

    def mismatches(self, other: DegreeBasis) -> list[int]:
        keys = sorted(set(self.degrees) | set(other.degrees))
        return [n for n in keys if self.degrees.get(n, ()) != other.degrees.get(n, ())]

    def contains(self, other: DegreeBasis) -> bool:
        return all(span_contains(self.degrees.get(n, ()), b, self.dim)
                   for n, b in other.degrees.items())

    def to_json(self) -> dict:
        return {'degrees': {str(n): [[scalar_to_json(x) for x in v] for v in b]
                            for n, b in sorted(self.degrees.items())}}


class CrossedContext:
    """A x| Z for an invariant subalgebra A; sigma~ is ``A.system.act``."""

    def __init__(self, A: SubAlgebra):
        if not check_invariance(A):
            raise NotAnAutomorphism('A is not invariant under sigma~ and its inverse')
        self.A = A
        self.system = A.system
        self.field = A.system.field
        self._cache: dict = {}

    def psi(self, f, k: int = 1):
        return self.system.act(f, k)

    def element(self, terms: dict, check: bool = True) -> CrossedElement:
        terms = {int(n): tuple(self.field.coerce(x) for x in v) for n, v in terms.items()}
        if check:
            for n, v in terms.items():
                if not self.A.contains(v):
                    raise NotInAlgebra(f'coefficient of delta^{n} is not in A')
        return CrossedElement.from_dict(terms)

    def from_coords(self, terms: dict) -> CrossedElement:
        """Element whose degree-n coefficient has the given A-coordinates."""
        return CrossedElement.from_dict({n: self.A.combine(c) for n, c in terms.items()})

    def delta(self, n: int = 1) -> CrossedElement:
        """``e delta^n`` with e the unit of A (the constant 1 when 1 is in A)."""
        e = self.A.unit
        if e is None:
            raise NotUnital('delta^n needs a unital A')
        return CrossedElement.from_dict({n: e})

    def zero_vector(self):
        return (self.field.zero,) * self.system.dim

    def _power_key(self, n: int):
        # sigma~^n depends on n modulo the order of sigma for finite systems
        if self.system.kind == 'finite':
            return self.system.power(n)
        return n

    def cached(self, name: str, n: int, compute):
        key = (name, self._power_key(n))
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]


def _twisted(ctx: CrossedContext, f: CrossedElement, g: CrossedElement, product) -> dict:
    out: dict[int, Any] = {}
    for k, fk in f.terms:
        for m, gm in g.terms:
            c = product(fk, ctx.psi(gm, k))
            r = k + m
            if r in out:
                out[r] = tuple(a + b for a, b in zip(out[r], c))
            else:
                out[r] = c
    return out


def multiply(ctx: CrossedContext, f: CrossedElement, g: CrossedElement) -> CrossedElement:
    """Twisted convolution (f*g)(n) = sum_k f(k) sigma~^k(g(n-k))."""
    return CrossedElement.from_dict(_twisted(ctx, f, g, ctx.system.mul))


def _eq1_sides(ctx, f, g):
    # the commutation identity, degree by degree, without calling multiply
    fd, gd = f.as_dict(), g.as_dict()
    mul = ctx.system.mul
    lhs: dict = {}
    rhs: dict = {}
    for n, fn in fd.items():
        for m, gm in gd.items():
            # sum_n f_n psi^n(g_{r-n}) and sum_m g_m psi^m(f_{r-m}) at r = n + m
            for side, p in ((lhs, mul(fn, ctx.psi(gm, n))), (rhs, mul(gm, ctx.psi(fn, m)))):
                r = n + m
                side[r] = tuple(a + b for a, b in zip(side[r], p)) if r in side else p
    for r in lhs.keys() | rhs.keys():
        zero = ctx.zero_vector()
        if lhs.get(r, zero) != rhs.get(r, zero):
            return False
    return True


def commutes(ctx: CrossedContext, f: CrossedElement, g: CrossedElement) -> bool:
    """f*g == g*f, checked through multiply and through the degree-wise identity."""
    via_product = multiply(ctx, f, g) == multiply(ctx, g, f)
    via_identity = _eq1_sides(ctx, f, g)
    if via_product != via_identity:
        raise InternalInvariantViolation(
            'multiply and the commutation identity disagree',
            {'f': f.to_json(), 'g': g.to_json()})
    return via_product


# --- commutant and center ---------------------------------------------------

def _coords_to_vectors(ctx, coords):
    return canonical_basis([ctx.A.combine(c) for c in coords], ctx.system.dim)


def commutant_degree(ctx: CrossedContext, n: int) -> tuple:
    """Allowed coefficients of delta^n in A': members of A vanishing on Sep_A^n."""
    def compute():
        if n == 0:
            return tuple(ctx.A.basis)
        sep = sep_sets(ctx.A, n)[0]
        return _coords_to_vectors(ctx, vanishing_coords(ctx.A, sep))
    return ctx.cached('commutant', n, compute)


def commutant_basis(ctx: CrossedContext, window: int) -> DegreeBasis:
    return DegreeBasis(ctx.system.dim,
                       {n: commutant_degree(ctx, n) for n in range(-window, window + 1)})


def commutant_degree_oracle(ctx: CrossedContext, n: int) -> tuple:
    """Solve f * sigma~^n(h) = f * h for every basis h of A, over f in A."""
    def compute():
        A = ctx.A
        system = ctx.system
        prod = system.product_unbounded
        columns = []
        for b in A.basis:
            col = []
            for h in A.basis:
                left = prod(b, ctx.psi(h, n))
                right = prod(b, h)
                col.extend(a - c for a, c in zip(left, right))
            columns.append(col)
        if not columns:
            return ()
        rows = [list(r) for r in zip(*columns)]
        return _coords_to_vectors(ctx, kernel(rows, A.dim, ctx.field.zero, ctx.field.one))
    return ctx.cached('commutant_oracle', n, compute)


def commutant_basis_oracle(ctx: CrossedContext, window: int) -> DegreeBasis:
    return DegreeBasis(ctx.system.dim,
                       {n: commutant_degree_oracle(ctx, n) for n in range(-window, window + 1)})


def center_degree(ctx: CrossedContext, m: int) -> tuple:
    """Coefficients g of delta^m with sigma~(g) = g and g vanishing on Sep_A^m."""
    def compute():
        A = ctx.A
        rows = []
        images = [ctx.psi(b, 1) for b in A.basis]
        for k in range(ctx.system.dim):
            rows.append([img[k] - b[k] for img, b in zip(images, A.basis)])
        if m != 0:
            rows.extend(restriction_rows(A, sep_sets(A, m)[0]))
        if not A.dim:
            return ()
        return _coords_to_vectors(ctx, kernel(rows, A.dim, ctx.field.zero, ctx.field.one))
    return ctx.cached('center', m, compute)


def center_basis(ctx: CrossedContext, window: int) -> DegreeBasis:
    return DegreeBasis(ctx.system.dim,
                       {m: center_degree(ctx, m) for m in range(-window, window + 1)})


def center_degree_oracle(ctx: CrossedContext, m: int) -> tuple:
    """g delta^m commuting with every h delta^k, h a basis element of A, k in {-1, 0, 1}.

    These elements generate the crossed product whenever A is unital; the
    commutators are formed with the multiplication rule itself.
    """
    def compute():
        A = ctx.A
        prod = ctx.system.product_unbounded
        columns = []
        for b in A.basis:
            g = CrossedElement.from_dict({m: b})
            col = []
            for h in A.basis:
                for k in (-1, 0, 1):
                    t = CrossedElement.from_dict({k: h})
                    gt = _twisted(ctx, g, t, prod)
                    tg = _twisted(ctx, t, g, prod)
                    zero = (ctx.field.zero,) * ctx.system.unbounded_dim
                    col.extend(a - c for a, c in zip(gt.get(m + k, zero), tg.get(m + k, zero)))
            columns.append(col)
        if not columns:
            return ()
        rows = [list(r) for r in zip(*columns)]
        return _coords_to_vectors(ctx, kernel(rows, A.dim, ctx.field.zero, ctx.field.one))
    return ctx.cached('center_oracle', m, compute)


def center_basis_oracle(ctx: CrossedContext, window: int) -> DegreeBasis:
    return DegreeBasis(ctx.system.dim,
                       {m: center_degree_oracle(ctx, m) for m in range(-window, window + 1)})


# --- maximal abelian --------------------------------------------------------

@dataclass
class MaximalityResult:
    decision: bool
    failing_degree: int | None = None
    witness: tuple | None = None
    checked: tuple = ()
    zeta_certified_to: int | None = None
    assumptions: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {'maximal_abelian': self.decision, 'checked_degrees': list(self.checked)}
        if self.failing_degree is not None:
            out['failing_degree'] = self.failing_degree
            out['witness'] = [scalar_to_json(x) for x in self.witness]
        if self.zeta_certified_to is not None:
            out['zeta_not_root_of_unity_up_to'] = self.zeta_certified_to
        if self.assumptions:
            out['assumptions'] = list(self.assumptions)
        return out


def _maximality_range(system):
    if system.kind == 'finite':
        return system.order, None, []
    if system.kind == 'rotation':
        q = system.zeta_order
        if q is not None:
            return q, None, [f'zeta is a root of unity of order {q}']
        b = system.root_bound
        return b, b, [f'zeta^n != 1 verified exactly for 1 <= n <= {b}',
                      f'Laurent polynomials restricted to |k| <= {system.window}']
    raise NotFiniteDimensional(f'no point model for {system.kind} systems')


def is_maximal_abelian(ctx: CrossedContext) -> MaximalityResult:
    """A = A' iff every Sep_A^n (n != 0) is a domain of uniqueness for A.

    Sep_A^n depends on sigma^n only, so n runs over 1..order for finite
    systems; for rotations up to the root-of-unity order, or up to the
    certification bound when zeta is not a root of unity.
    """
    bound, certified, assumptions = _maximality_range(ctx.system)
    seen: dict = {}
    for n in range(1, bound + 1):
        sep = sep_sets(ctx.A, n)[0]
        if sep not in seen:
            seen[sep] = vanishing_coords(ctx.A, sep) if not sep.is_empty() else None
        coords = seen[sep]
        if sep.is_empty() or coords:
            witness = ctx.A.basis[0] if coords is None else ctx.A.combine(coords[0])
            return MaximalityResult(False, n, witness, (1, n), None, assumptions)
    return MaximalityResult(True, checked=(1, bound), zeta_certified_to=certified,
                            assumptions=assumptions)


# --- generators --------------------------------------------------------------

def automorphism_order(ctx: CrossedContext) -> int:
    """Smallest n >= 1 with sigma~^n = id on A."""
    if ctx.system.kind != 'finite' and ctx.system.kind != 'group':
        raise NotFiniteDimensional('needs a finite-dimensional algebra')
    n = 1
    while True:
        if all(ctx.psi(b, n) == b for b in ctx.A.basis):
            return n
        n += 1


def extract_commutant_generators(ctx: CrossedContext) -> list[CrossedElement]:
    """Finite generating set of A' for finite-dimensional unital A.

    With n0 the common period, the generators are e delta^l for e running
    over bases of the degree-l coefficient spaces (1 <= l <= n0), a basis of A
    in degree 0 and unit * delta^-n0.
    """
    if ctx.system.kind != 'finite':
        raise NotFiniteDimensional('generator extraction needs a finite system')
    unit = ctx.A.unit
    if unit is None:
        raise NotUnital('A has no identity element')
    n0 = automorphism_order(ctx)
    gens = []
    for l in range(1, n0 + 1):
        gens.extend(CrossedElement.from_dict({l: v}) for v in commutant_degree(ctx, l))
    gens.extend(CrossedElement.from_dict({0: b}) for b in ctx.A.basis)
    gens.append(CrossedElement.from_dict({-n0: unit}))
    return gens


def closure_by_degree(ctx: CrossedContext, generators, window: int, margin: int) -> DegreeBasis:
    """Per-degree span of all products of homogeneous generators.

    Products are tracked on degrees |d| <= window + margin; the result is
    reported for |d| <= window.
    """
    dim = ctx.system.dim
    limit = window + margin
    gens = []
    for g in generators:
        if len(g.terms) != 1:
            raise ValueError('generators must be homogeneous')
        gens.append(g.terms[0])
    spans = {d: EchelonSpan(dim) for d in range(-limit, limit + 1)}
    queue = []
    for d, v in gens:
        if abs(d) <= limit and spans[d].add(v):
            queue.append((d, v))
    mul, psi = ctx.system.mul, ctx.psi
    # every new vector is multiplied by every generator on both sides
    while queue:
        d, v = queue.pop()
        for gd, gv in gens:
            t = d + gd
            if abs(t) > limit:
                continue
            for p in (mul(v, psi(gv, d)), mul(gv, psi(v, gd))):
                if any(p) and spans[t].add(p):
                    queue.append((t, p))
    return DegreeBasis(dim, {d: spans[d].basis() for d in range(-window, window + 1)})


# --- random elements (property tests and the CLI sampler) --------------------

def random_coeff(ctx: CrossedContext, rng: random.Random, lo: int = -3, hi: int = 3):
    c = [ctx.field.coerce(rng.randint(lo, hi)) for _ in range(ctx.A.dim)]
    return ctx.A.combine(c)


def random_element(ctx: CrossedContext, rng: random.Random, degrees, max_terms: int = 3,
                   space: DegreeBasis | None = None) -> CrossedElement:
    """Random element with support in ``degrees``.

    With ``space`` given, coefficients are random combinations of its
    per-degree bases instead of arbitrary members of A.
    """
    degrees = list(degrees)
    if space is not None:
        degrees = [d for d in degrees if space.degrees.get(d)]
    if not degrees:
        return CrossedElement()
    terms = {}
    for d in rng.sample(degrees, min(max_terms, len(degrees))):
        if space is not None:
            basis = space.degrees[d]
            c = [ctx.field.coerce(rng.randint(-3, 3)) for _ in basis]
            v = [ctx.field.zero] * ctx.system.dim
            for ci, b in zip(c, basis):
                v = [x + ci * y for x, y in zip(v, b)]
            terms[d] = tuple(v)
        else:
            terms[d] = random_coeff(ctx, rng)
    return CrossedElement.from_dict(terms)


def safe_multiply(ctx, f, g):
    """multiply, or None when a rotation product leaves the window."""
    try:
        return multiply(ctx, f, g)
    except ClosureExceedsWindow:
        return None
