"""Algebra-level behaviour: products, embeddings, orbit basis,
conditional expectations, traces, specialization, the ideal."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partalg.algebra import (
    AlgebraElement,
    as_scalar,
    coarsenings,
    diagram_element,
    element,
    embed,
    eps_down,
    eps_one,
    eps_up,
    from_orbit_basis,
    generator_element,
    ideal_basis,
    mobius_coefficient,
    multiply,
    one,
    orbit_element,
    refinements,
    specialize,
    to_orbit_basis,
    trace,
    zero,
)
from partalg.diagrams import (
    Diagram,
    coarsens,
    enumerate_diagrams,
    generator,
    identity_diagram,
    make_diagram,
    propagating_number,
)
from partalg.errors import (
    DenominatorVanishes,
    InvalidTarget,
    ModeMismatch,
    NonHalfIntegerRank,
    NonIntegerRank,
    RankMismatch,
)
from partalg.linalg import invert
from partalg.scalars import Poly, RatFunc

X = Poly.x()
A1 = list(enumerate_diagrams(2))
A1H = list(enumerate_diagrams(3))
A2 = list(enumerate_diagrams(4))
A2H = list(enumerate_diagrams(5))
A3 = list(enumerate_diagrams(6))


def elem(d: Diagram) -> AlgebraElement:
    return diagram_element(d)


def test_multiply_p1_squared():
    p1 = generator_element("p", 1, 2)
    assert multiply(p1, p1) == p1.scale(X)


def test_multiply_worked_pair():
    d1 = make_diagram(
        14, [[1, 3, -4], [2], [4, 5, 6], [7], [-1], [-2, -3], [-5, -7], [-6]]
    )
    d2 = make_diagram(
        14, [[1], [2, 4], [5, 7], [3, -4, -5, -6], [6, -2, -7], [-1], [-3]]
    )
    expect = make_diagram(
        14, [[1, 3, -4, -5, -6], [2], [4, 5, 6], [7], [-1], [-2, -7], [-3]]
    )
    product = multiply(elem(d1), elem(d2))
    assert product == diagram_element(expect, X**2)


def test_multiply_specialized():
    n = Fraction(3)
    e1 = generator_element("e", 1, 4, mode=n)
    assert multiply(e1, e1) == e1.scale(3)
    assert e1.terms[generator("e", 1, 4)] == Fraction(1)


def test_multiply_mode_and_rank_guards():
    a = one(2)
    with pytest.raises(ModeMismatch):
        multiply(a, one(2, mode=Fraction(3)))
    with pytest.raises(RankMismatch):
        multiply(a, one(4))
    with pytest.raises(ModeMismatch):
        element(2, {identity_diagram(2): X}, mode=Fraction(3))


def test_embed_single_steps():
    assert embed(one(2), 3) == one(3)
    two_step = embed(generator_element("p", 1, 2), 4)
    assert two_step == generator_element("p", 1, 4)
    assert two_step.terms.keys() == {make_diagram(4, [[1], [-1], [2, -2]])}
    with pytest.raises(InvalidTarget):
        embed(one(4), 2)


def test_embed_is_algebra_map():
    for src, target in ((A1, 4), (A1H, 4), (A2, 5)):
        images = {embed(elem(d), target) for d in src}
        assert len(images) == len(src)
        for a in src:
            for b in src:
                lhs = embed(multiply(elem(a), elem(b)), target)
                rhs = multiply(embed(elem(a), target), embed(elem(b), target))
                assert lhs == rhs


def test_orbit_elements_of_a1():
    expect = generator_element("p", 1, 2) - one(2)
    assert orbit_element(make_diagram(2, [[1], [-1]])) == expect
    assert orbit_element(identity_diagram(2)) == one(2)


def test_orbit_round_trip_a2():
    for d in A2:
        a = elem(d)
        assert from_orbit_basis(to_orbit_basis(a), 4) == a
        back = to_orbit_basis(from_orbit_basis({d: Poly.const(1)}, 4))
        assert back == {d: Poly.const(1)}


def test_orbit_sum_over_coarsenings_gives_diagram():
    finest = make_diagram(4, [[1], [2], [-1], [-2]])
    assert len(coarsenings(finest)) == 15
    assert len(refinements(make_diagram(4, [[1, 2, -1, -2]]))) == 15
    total = zero(4)
    for coarser in coarsenings(finest):
        total = total + orbit_element(coarser)
    assert total == elem(finest)


def test_mobius_against_zeta_inversion():
    for double_rank in (2, 3, 4):
        basis = list(enumerate_diagrams(double_rank))
        size = len(basis)
        zeta = [
            [Fraction(1 if coarsens(basis[i], basis[j]) else 0) for j in range(size)]
            for i in range(size)
        ]
        mu = invert(zeta)
        for i in range(size):
            for j in range(size):
                if coarsens(basis[i], basis[j]):
                    assert mu[i][j] == mobius_coefficient(basis[i], basis[j])
                else:
                    assert mu[i][j] == 0


def test_eps_down_examples():
    assert eps_down(one(2)) == element(1, {make_diagram(1, [[1, -1]]): 1})
    s1 = generator_element("s", 1, 4)
    assert eps_down(s1) == element(3, {make_diagram(3, [[1, 2, -1, -2]]): 1})
    with pytest.raises(NonIntegerRank):
        eps_down(one(3))
    with pytest.raises(InvalidTarget):
        eps_down(one(0))


def test_eps_down_rank5_picture():
    d = make_diagram(10, [[1, 3, -3], [2], [4, -2], [5], [-1], [-4, -5]])
    merged = make_diagram(9, [[1, 3, -3], [2], [4, -2], [5, -4, -5], [-1]])
    assert eps_down(elem(d)) == elem(merged)
    d2 = make_diagram(10, [[1, 3, -3], [2], [4, -2], [5], [-1], [-4], [-5]])
    merged2 = make_diagram(9, [[1, 3, -3], [2], [4, -2], [5, -5], [-1], [-4]])
    assert eps_down(elem(d2)) == elem(merged2)


def test_eps_up_factor_rule():
    kept = make_diagram(9, [[1, 3, -3], [2], [4, -2], [5, -4, -5], [-1]])
    dropped = make_diagram(8, [[1, 3, -3], [2], [4, -2], [-1], [-4]])
    assert eps_up(elem(kept)) == elem(dropped)

    bare = make_diagram(9, [[1, 3, -3], [2], [4, -2], [5, -5], [-1], [-4]])
    assert eps_up(elem(bare)) == diagram_element(dropped, X)

    assert eps_up(one(3)) == one(2).scale(X)
    assert eps_up(one(3, mode=Fraction(3))) == one(2, mode=Fraction(3)).scale(3)
    with pytest.raises(NonHalfIntegerRank):
        eps_up(one(2))


def test_eps_one_and_trace_identification():
    empty = diagram_element(Diagram(0, []))
    assert eps_one(one(2)) == empty.scale(X)
    assert eps_one(generator_element("p", 1, 2)) == empty.scale(X)
    with pytest.raises(NonIntegerRank):
        eps_one(one(3))
    for d in A1:
        assert as_scalar(eps_one(elem(d))) == trace(elem(d))
    for d in A2:
        assert as_scalar(eps_one(eps_one(elem(d)))) == trace(elem(d))
    with pytest.raises(RankMismatch):
        as_scalar(one(2))


def test_trace_examples():
    assert trace(one(2)) == X
    assert trace(one(4)) == X**2
    assert trace(one(6)) == X**3
    assert trace(generator_element("e", 1, 4)) == X
    assert trace(generator_element("s", 1, 4)) == X
    assert trace(one(4, mode=Fraction(5))) == Fraction(25)


def test_specialize():
    p1 = generator_element("p", 1, 2).scale(X)
    assert specialize(p1, 4) == generator_element("p", 1, 2, mode=Fraction(4)).scale(4)
    rng = random.Random(11)
    for _ in range(30):
        a, b = elem(rng.choice(A2)), elem(rng.choice(A2))
        lhs = specialize(multiply(a, b), Fraction(3))
        rhs = multiply(specialize(a, 3), specialize(b, 3))
        assert lhs == rhs
    pole = diagram_element(
        identity_diagram(2), RatFunc(Poly.const(1), X - Poly.const(1))
    )
    with pytest.raises(DenominatorVanishes):
        specialize(pole, 1)
    assert specialize(pole, 2) == one(2, mode=Fraction(2))
    with pytest.raises(ModeMismatch):
        specialize(one(2, mode=Fraction(3)), 3)


def test_ideal_basis():
    assert ideal_basis(2) == [make_diagram(2, [[1], [-1]])]
    ideal2 = ideal_basis(4)
    assert len(ideal2) == 13
    span = set(ideal2)
    for d in A2:
        for i in ideal2:
            left = multiply(elem(d), elem(i))
            right = multiply(elem(i), elem(d))
            assert set(left.terms) <= span and set(right.terms) <= span


def test_associativity():
    for a in A2:
        ea = elem(a)
        for b in A2:
            ab = multiply(ea, elem(b))
            for c in A2:
                assert multiply(ab, elem(c)) == multiply(ea, multiply(elem(b), elem(c)))
    rng = random.Random(7)
    for _ in range(500):
        a, b, c = (elem(rng.choice(A3)) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_bimodule_property():
    for b in A2:
        eb = eps_down(elem(b))
        for a1 in A1H:
            for a2 in A1H:
                lhs = eps_down(
                    multiply(multiply(embed(elem(a1), 4), elem(b)), embed(elem(a2), 4))
                )
                rhs = multiply(multiply(elem(a1), eb), elem(a2))
                assert lhs == rhs


def test_sandwich_identities():
    p_half = generator_element("p", Fraction(5, 2), 5)
    for b in A2:
        eb = embed(elem(b), 5)
        lhs = multiply(multiply(p_half, eb), p_half)
        rhs = multiply(embed(eps_down(elem(b)), 5), p_half)
        assert lhs == rhs

    p2 = generator_element("p", 2, 4)
    for b in A1H:
        eb = embed(elem(b), 4)
        lhs = multiply(multiply(p2, eb), p2)
        rhs = multiply(embed(eps_up(elem(b)), 4), p2)
        assert lhs == rhs

    e2 = generator_element("e", 2, 6)
    for b in A2:
        eb = embed(elem(b), 6)
        lhs = multiply(multiply(e2, eb), e2)
        rhs = multiply(embed(eps_one(elem(b)), 6), e2)
        assert lhs == rhs


def test_trace_compatibility():
    for double_rank in (2, 4, 6):
        for d in enumerate_diagrams(double_rank):
            assert trace(elem(d)) == trace(eps_down(elem(d)))
    for double_rank in (1, 3, 5):
        for d in enumerate_diagrams(double_rank):
            assert trace(elem(d)) == trace(eps_up(elem(d)))


def test_trace_is_symmetric():
    for a in A2:
        for b in A2:
            assert trace(multiply(elem(a), elem(b))) == trace(multiply(elem(b), elem(a)))
    rng = random.Random(23)
    for _ in range(200):
        a, b = elem(rng.choice(A3)), elem(rng.choice(A3))
        assert trace(multiply(a, b)) == trace(multiply(b, a))


def test_quotient_dimension():
    for double_rank in (2, 3, 4, 5, 6):
        total = len(list(enumerate_diagrams(double_rank)))
        gap = total - len(ideal_basis(double_rank))
        perm_letters = double_rank // 2
        expect = 1
        for j in range(2, perm_letters + 1):
            expect *= j
        assert gap == expect


def test_json_round_trip_and_stability():
    a = generator_element("p", 1, 2).scale(X) + one(2).scale(Fraction(1, 2))
    data = a.to_json()
    assert AlgebraElement.from_json(data) == a
    assert json.dumps(data) == json.dumps(a.to_json())

    rat = diagram_element(
        identity_diagram(2), RatFunc(Poly.const(1), X + Poly.const(2))
    )
    assert AlgebraElement.from_json(rat.to_json()) == rat

    s = one(4, mode=Fraction(5, 2)) + generator_element("e", 1, 4, mode=Fraction(5, 2))
    assert AlgebraElement.from_json(s.to_json()) == s


small_coeffs = st.integers(min_value=-3, max_value=3)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.sampled_from(A2), small_coeffs), max_size=4),
    st.lists(st.tuples(st.sampled_from(A2), small_coeffs), max_size=4),
    st.lists(st.tuples(st.sampled_from(A2), small_coeffs), max_size=4),
    small_coeffs,
)
def test_bilinearity(ta, tb, tc, scale):
    a, b, c = (element(4, terms) for terms in (ta, tb, tc))
    assert multiply(a, b + c) == multiply(a, b) + multiply(a, c)
    assert multiply(a + b, c) == multiply(a, c) + multiply(b, c)
    assert multiply(a.scale(scale), b) == multiply(a, b).scale(scale)
    assert trace(a + b) == trace(a) + trace(b)
