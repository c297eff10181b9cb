import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _instances import addpt_context, algebra
from crossalg.crossed import (CrossedContext, automorphism_order, commutant_basis, is_maximal_abelian, multiply,
                              random_element)
from crossalg.dynamics import FiniteSystem, RotationSystem, SubAlgebra
from crossalg.errors import CharacterCountMismatch, NotInAlgebra, WrongVariant
from crossalg.gelfand import (GelfandIsomorphism, character_space, crossed_isomorphism,
                              gelfand_transform, induced_homeomorphism, validate_characters)


def test_constants_have_one_character():
    s = FiniteSystem([1, 2, 0])
    cs = character_space(SubAlgebra.constants(s))
    assert len(cs) == 1 and cs.induced_sigma == (0,)


def test_fixed_point_where_everything_vanishes_is_dropped():
    ctx = addpt_context()
    cs = character_space(ctx.A)
    assert len(cs) == 5
    assert '*' not in cs.labels
    assert cs.induced_sigma == (1, 2, 3, 4, 0)


def test_full_algebra_characters_are_the_points():
    s = FiniteSystem([2, 0, 1, 3])
    cs = character_space(SubAlgebra.full(s))
    assert len(cs) == 4
    # ev_x o sigma~^-1 = ev_sigma(x)
    assert cs.induced_sigma == s.sigma


def test_identity_induces_identity():
    s = FiniteSystem([0, 1, 2])
    assert character_space(SubAlgebra.full(s)).induced_sigma == (0, 1, 2)


def test_gelfand_transform_examples():
    s = FiniteSystem([1, 2, 0])
    A = SubAlgebra.full(s)
    cs = character_space(A)
    assert gelfand_transform(cs, A, (1, 2, 3)) == (1, 2, 3)
    assert gelfand_transform(cs, A, s.one()) == (1, 1, 1)
    addpt = addpt_context().A
    cs2 = character_space(addpt)
    assert gelfand_transform(cs2, addpt, addpt.unit) == (1,) * 5
    with pytest.raises(NotInAlgebra):
        gelfand_transform(cs2, addpt, (0, 0, 0, 0, 0, 1))


def test_character_count_is_checked():
    s = FiniteSystem([1, 2, 0])
    A = SubAlgebra.full(s)
    with pytest.raises(CharacterCountMismatch):
        validate_characters(A, [(1, 0, 0), (0, 1, 0)])


def test_rotation_algebras_have_no_computed_spectrum():
    r = RotationSystem(window=2)
    with pytest.raises(WrongVariant):
        character_space(SubAlgebra.constants(r))


def test_induced_map_respects_powers():
    s = FiniteSystem([1, 2, 3, 0, 5, 4])
    A = SubAlgebra.full(s)
    cs = character_space(A)
    p1 = cs.induced_sigma
    for k in range(1, 5):
        pk = induced_homeomorphism(cs, A, k)
        expect = tuple(range(6))
        for _ in range(k):
            expect = tuple(p1[i] for i in expect)
        assert pk == expect


def test_isomorphism_on_added_point():
    ctx = addpt_context()
    iso = GelfandIsomorphism(ctx)
    f = ctx.element({0: (1, 2, 3, 4, 5, 0)})
    assert iso(f) == iso.target.element({0: (1, 2, 3, 4, 5)})
    lhs = iso(multiply(ctx, ctx.delta(1), f))
    rhs = iso(ctx.element({1: ctx.psi(f.coeff(0), 1)}))
    assert lhs == rhs
    assert is_maximal_abelian(ctx).decision == is_maximal_abelian(iso.target).decision
    assert crossed_isomorphism(ctx, f, iso) == iso(f)


perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))))


@settings(max_examples=50, deadline=None)
@given(perms, st.sampled_from(['constants', 'full', 'orbit']), st.integers(0, 10 ** 6))
def test_isomorphism_properties(sigma, kind, seed):
    rng = random.Random(seed)
    s = FiniteSystem(sigma)
    ctx = CrossedContext(algebra(s, kind, rng))
    iso = GelfandIsomorphism(ctx)
    hat = iso.target
    assert len(iso.cs) == ctx.A.dim
    for _ in range(5):
        f = random_element(ctx, rng, range(-3, 4))
        g = random_element(ctx, rng, range(-3, 4))
        assert iso(multiply(ctx, f, g)) == multiply(hat, iso(f), iso(g))
        assert iso(f + g) == iso(f) + iso(g)
        assert iso.inverse(iso(f)) == f
    W = s.order + 1
    assert commutant_basis(ctx, W).dims() == commutant_basis(hat, W).dims()
    # order of the induced permutation equals the order of sigma~ on A
    hat_order = FiniteSystem(iso.cs.induced_sigma).order
    assert hat_order == automorphism_order(ctx)
