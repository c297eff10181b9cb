"""Characters of finite-dimensional algebras and the Gelfand transform.

For a finite-dimensional subalgebra A of C^X the characters are the point
evaluations, one per class of points that A does not separate, excluding the
points where every function of A vanishes.  A is reduced, so it is semisimple
and the number of characters must equal dim A; that count is checked rather
than assumed.  Delta(A) is finite and discrete, so the induced map is
automatically a homeomorphism and complete regularity holds trivially.
"""

from __future__ import annotations

from dataclasses import dataclass

from .crossed import CrossedContext, CrossedElement
from .dynamics import FiniteSystem, SubAlgebra
from .errors import (CharacterCountMismatch, InternalInvariantViolation, NotAnAutomorphism,
                     WrongVariant)
from .exact_arith import dot, scalar_to_json, span_membership


@dataclass(frozen=True)
class CharacterSpace:
    """Characters as rows of values on A's basis, plus the induced permutation."""

    characters: tuple
    induced_sigma: tuple
    labels: tuple = ()

    def __len__(self):
        return len(self.characters)

    def to_json(self) -> dict:
        return {
            'characters': [[scalar_to_json(x) for x in row] for row in self.characters],
            'permutation': list(self.induced_sigma),
            'labels': list(self.labels),
        }


def validate_characters(A: SubAlgebra, rows) -> None:
    """Check that rows are distinct, nonzero, multiplicative functionals and |rows| = dim A."""
    rows = [tuple(r) for r in rows]
    if len(rows) != A.dim:
        raise CharacterCountMismatch(f'{len(rows)} characters for an algebra of dimension {A.dim}')
    if len(set(rows)) != len(rows):
        raise InternalInvariantViolation('characters are not pairwise distinct')
    mul = A.system.mul
    for chi in rows:
        if not any(chi):
            raise InternalInvariantViolation('zero functional among the characters')
        for i, a in enumerate(A.basis):
            for j in range(i, A.dim):
                c = A.coords(mul(a, A.basis[j]))
                if dot(chi, c) != chi[i] * chi[j]:
                    raise InternalInvariantViolation('functional is not multiplicative')


def induced_homeomorphism(chars, A: SubAlgebra, power: int = 1) -> tuple[int, ...]:
    """Permutation chi -> chi o sigma~^-power of the character list."""
    rows = list(chars.characters if isinstance(chars, CharacterSpace) else chars)
    index = {r: i for i, r in enumerate(rows)}
    # coordinates of sigma~^-power(b_i) in A's basis
    back = [A.coords(A.system.act(b, -power)) for b in A.basis]
    perm = []
    for chi in rows:
        image = tuple(dot(chi, c) for c in back)
        if image not in index:
            raise NotAnAutomorphism('chi o sigma~^-1 is not a character of A')
        perm.append(index[image])
    return tuple(perm)


def character_space(A: SubAlgebra) -> CharacterSpace:
    """Delta(A) for a subalgebra of functions on a finite system."""
    system = A.system
    if system.kind != 'finite':
        raise WrongVariant('character_space needs a finite system')
    classes: dict = {}
    for x in range(system.size):
        key = tuple(b[x] for b in A.basis)
        if any(key):
            classes.setdefault(key, []).append(x)
    rows = list(classes)
    labels = tuple('~'.join(system.labels[x] for x in pts) for pts in classes.values())
    validate_characters(A, rows)
    return CharacterSpace(tuple(rows), induced_homeomorphism(rows, A), labels)


def gelfand_transform(cs: CharacterSpace, A: SubAlgebra, a) -> tuple:
    """The function chi -> chi(a) on Delta(A); raises NotInAlgebra for a not in A."""
    c = A.coords(a)
    return tuple(dot(chi, c) for chi in cs.characters)


class GelfandIsomorphism:
    """sum a_n delta^n -> sum hat(a_n) delta^n onto the crossed product over Delta(A)."""

    def __init__(self, ctx: CrossedContext, cs: CharacterSpace | None = None):
        self.source = ctx
        A = ctx.A
        self.cs = cs if cs is not None else character_space(A)
        labels = self.cs.labels or None
        hat_system = FiniteSystem(self.cs.induced_sigma, labels, field=A.system.field)
        self.transforms = [gelfand_transform(self.cs, A, b) for b in A.basis]
        self.hatA = SubAlgebra(hat_system, self.transforms)
        self.target = CrossedContext(self.hatA)

    def transform(self, a) -> tuple:
        return gelfand_transform(self.cs, self.source.A, a)

    def __call__(self, f: CrossedElement) -> CrossedElement:
        return CrossedElement.from_dict({n: self.transform(v) for n, v in f.terms})

    def inverse(self, F: CrossedElement) -> CrossedElement:
        A = self.source.A
        out = {}
        for n, v in F.terms:
            ok, c = span_membership(self.transforms, v)
            if not ok:
                raise NotAnAutomorphism(f'coefficient of delta^{n} is not a Gelfand transform')
            out[n] = A.combine(c)
        return CrossedElement.from_dict(out)


def crossed_isomorphism(ctx: CrossedContext, element: CrossedElement,
                        iso: GelfandIsomorphism | None = None) -> CrossedElement:
    return (iso or GelfandIsomorphism(ctx))(element)
