import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossalg.errors import ModulusMismatch, NIsOdd, NotBijective
from crossalg.exact_arith import CyclotomicField
from crossalg.fourier import (AffineDualMap, GroupAlgebraElement, convolve, disco_analog,
                              disco_dual_map, dual_induced_automorphism, dual_map_report,
                              fourier_transform, group_algebra_context, group_character_space,
                              invert_permutation, inverse_fourier, piecewise_permutation)


def element(N, values):
    return GroupAlgebraElement.from_values(N, values)


def random_element(N, rng):
    return element(N, [rng.randint(-3, 3) for _ in range(N)])


def test_convolution_examples():
    f = element(4, [1, 2, 3, 4])
    assert convolve(f, GroupAlgebraElement.delta(4)) == f
    d1 = GroupAlgebraElement.delta(4, 1)
    assert d1 * d1 == GroupAlgebraElement.delta(4, 2)
    assert element(4, [1, 1, 0, 0]) * element(4, [1, 0, 1, 0]) == element(4, [1, 1, 1, 1])
    with pytest.raises(ModulusMismatch):
        convolve(f, GroupAlgebraElement.delta(3))


def test_transform_examples():
    F = CyclotomicField(4)
    assert fourier_transform(GroupAlgebraElement.delta(4)) == (F.one,) * 4
    assert fourier_transform(element(4, [1, 1, 1, 1])) == (F.coerce(4), F.zero, F.zero, F.zero)


@pytest.mark.parametrize('N', [2, 3, 4, 6, 8])
def test_convolution_theorem_and_inversion(N):
    rng = random.Random(N)
    for _ in range(10):
        f, g = random_element(N, rng), random_element(N, rng)
        lhs = fourier_transform(f * g)
        rhs = tuple(a * b for a, b in zip(fourier_transform(f), fourier_transform(g)))
        assert lhs == rhs
        assert inverse_fourier(fourier_transform(f)) == f.coeffs


def test_identity_dual_map_gives_identity():
    aut = dual_induced_automorphism(tuple(range(5)))
    f = element(5, [1, 2, 3, 4, 5])
    assert aut(f) == f


@pytest.mark.parametrize('N', [3, 4, 5, 8])
def test_negation_on_dual_reflects_the_group(N):
    aut = dual_induced_automorphism(AffineDualMap(0, -1).permutation(N))
    f = element(N, list(range(1, N + 1)))
    assert aut(f).coeffs == tuple(f.coeffs[(-x) % N] for x in range(N))


def test_affine_map_validation_and_composition():
    with pytest.raises(NotBijective):
        AffineDualMap(0, 2).permutation(4)
    a, b = AffineDualMap(1, 3), AffineDualMap(2, 5)
    N = 8
    comp = a.compose(b, N).permutation(N)
    assert comp == tuple(a(b(g, N), N) for g in range(N))
    with pytest.raises(NotBijective):
        piecewise_permutation(4, [([0, 1], AffineDualMap(0, 1)), ([2, 3], AffineDualMap(0, 1)),
                                  ([1], AffineDualMap(1, 1))])
    with pytest.raises(NotBijective):
        piecewise_permutation(4, [([0, 1, 2, 3], AffineDualMap(0, 2))])


def test_disco_map():
    assert disco_dual_map(8) == (0, 3, 2, 5, 4, 7, 6, 1)
    with pytest.raises(NIsOdd):
        disco_dual_map(5)
    with pytest.raises(NIsOdd):
        disco_analog(7, 2)
    pw = piecewise_permutation(8, [([0, 2, 4, 6], AffineDualMap(0, 1)),
                                   ([1, 3, 5, 7], AffineDualMap(2, 1))])
    assert pw == disco_dual_map(8)


perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))))


@settings(max_examples=25, deadline=None)
@given(perms, st.integers(0, 10 ** 6))
def test_dual_automorphism_round_trip(m, seed):
    m = tuple(m)
    aut, ctx = group_algebra_context(m)
    assert aut.is_algebra_automorphism(random.Random(seed), trials=3)
    cs = group_character_space(ctx.A)
    # chi_gamma o sigma~^-1 = chi_{m^-1(gamma)}
    assert cs.induced_sigma == invert_permutation(m)


@pytest.mark.parametrize('N', [4, 6])
def test_affine_maps_compose_under_induction(N):
    units = [u for u in range(1, N) if math.gcd(u, N) == 1]
    for a1, u1, a2, u2 in [(1, units[-1], 2, 1), (0, units[0], 3, units[-1])]:
        m1 = AffineDualMap(a1, u1).permutation(N)
        m2 = AffineDualMap(a2, u2).permutation(N)
        s1 = dual_induced_automorphism(m1)
        s2 = dual_induced_automorphism(m2)
        comp = tuple(m2[m1[g]] for g in range(N))  # hat(s1 s2 f) = hat(f) o m2 o m1
        s12 = dual_induced_automorphism(comp)
        f = element(N, list(range(N)))
        assert s1(s2(f)) == s12(f)
        _, ctx = group_algebra_context(comp)
        induced = group_character_space(ctx.A).induced_sigma
        i1, i2 = invert_permutation(m1), invert_permutation(m2)
        assert induced == tuple(i1[i2[g]] for g in range(N))


def test_disco_report_small_cases():
    r2 = disco_analog(2, 2)
    assert r2['dual_map'] == [0, 1]
    assert all(d['dim'] == 2 for d in r2['degrees'])
    r4 = disco_analog(4, 2)
    assert r4['theorem_equals_oracle'] and not r4['maximal_abelian']
    assert r4['support_in_evens_or_periodic_odds']


def test_disco_on_eight():
    r = disco_analog(8, 4)
    assert not r['maximal_abelian']
    assert r['induced_is_inverse_of_dual_map']
    dims = {d['degree']: d['dim'] for d in r['degrees']}
    assert dims == {-4: 8, -3: 4, -2: 4, -1: 4, 0: 8, 1: 4, 2: 4, 3: 4, 4: 8}
    for d in r['degrees']:
        if d['degree'] and abs(d['degree']) < 4:
            assert d['fourier_support'] == [0, 2, 4, 6]
    assert r['support_in_evens_or_periodic_odds']


def test_oracle_only_report():
    r = dual_map_report(disco_dual_map(4), 2, oracle_only=True)
    assert r['theorem_equals_oracle'] is None
    assert not r['maximal_abelian']
