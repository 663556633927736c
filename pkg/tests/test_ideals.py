import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpw import coeff as cf
from cpw.commutant import in_commutant_direct, in_commutant_structural
from cpw.crossed import CrossedElement, parse_element, unit_element
from cpw.dynsys import CirclePoint, FinitePermutation, FinitePoint
from cpw.errors import EmptyGenerators, PreconditionFailed, WindowOverflow, ZeroElement
from cpw.exactnum import GaussianRational as G
from cpw.ideals import (
    IntersectionCertificate,
    Window,
    certificate_from_json,
    contains_unit,
    ideal_window_span,
    in_paired_form,
    indicator_in_ideal,
    intersect_with_A_window,
    membership,
    prime_refutation,
    prime_witness,
    proper_ideal_from_nondense_orbit,
    verify_paired_form,
    witness_in_A,
    witness_in_commutant,
    zero_intersection_generator,
)
from cpw.sampling import ElementSampler


def el(s, text):
    return parse_element(s, text)


def roundtrip(s, cert):
    back = certificate_from_json(s, json.loads(json.dumps(cert.to_json())))
    return back.verify() and back.claim == cert.claim


def test_window_validation():
    with pytest.raises(ValueError):
        Window(0, 1)
    with pytest.raises(ValueError):
        Window(1, 0)


def test_span_basics(swap, shift):
    span = ideal_window_span(swap, [el(swap, "e_0")], Window(1))
    assert membership(span, el(swap, "e_1")) is not None
    assert membership(span, el(swap, "e_0")) is not None
    with pytest.raises(EmptyGenerators):
        ideal_window_span(swap, [CrossedElement.zero(swap)], Window(1))
    with pytest.raises(WindowOverflow):
        ideal_window_span(shift, [el(shift, "e_0")], Window(1)).vector_of(el(shift, "e_40"))


def test_span_rows_are_products(two_orbit):
    span = ideal_window_span(two_orbit, [el(two_orbit, "e_0 + e_2*d^1")], Window(2))
    for i, row in enumerate(span.rows):
        x = span.row_element(i)
        assert row.gen == 0
        assert row.left is None or row.left.num_terms() == 1
        assert row.right is None or row.right.num_terms() == 1
        assert span.vector_of(x) is not None
    assert all(membership(span, b) is not None for b in span.basis_elements())


def test_membership_absent_on_invariant_block(two_orbit):
    for b in (2, 4):
        span = ideal_window_span(two_orbit, [el(two_orbit, "e_0 + e_1")], Window(b))
        assert membership(span, el(two_orbit, "e_2")) is None


def test_contains_unit_circle(circle_irr):
    cert = contains_unit(circle_irr, [el(circle_irr, "t - 1")], Window(1))
    assert cert is not None and cert.verify()
    assert cert.claim == unit_element(circle_irr)
    assert roundtrip(circle_irr, cert)


def test_contains_unit_finite():
    one = FinitePermutation([0])
    for b in range(1, 7):
        assert contains_unit(one, [el(one, "1 - d^1")], Window(b)) is None
    three = FinitePermutation([1, 2, 0])
    cert = contains_unit(three, [el(three, "e_0")], Window(2))
    assert cert is not None and cert.verify()


def test_intersect_with_A(shift, swap):
    span = ideal_window_span(shift, [el(shift, "e_0 + e_1*d^1")], Window(2, 4))
    assert cf.indicator(shift, 0) in intersect_with_A_window(span)
    for b in (1, 2, 3):
        span = ideal_window_span(swap, [el(swap, "1 + d^2")], Window(b))
        assert intersect_with_A_window(span) == []
    span = ideal_window_span(swap, [el(swap, "e_0")], Window(1))
    assert intersect_with_A_window(span)


def test_indicator_in_ideal(shift):
    k, cert = indicator_in_ideal(shift, [el(shift, "e_0 + e_1*d^1")], Window(2, 5))
    assert cert.verify() and cert.claim == el(shift, f"e_{k}")


def test_witness_in_A(shift, swap):
    a, cert = witness_in_A(shift, el(shift, "e_0 + e_1*d^1"))
    assert a == cf.indicator(shift, 0) and cert.verify() and cert.kind == "chain"
    a, cert = witness_in_A(shift, el(shift, "e_5*d^3"))
    assert a == cf.indicator(shift, 5) and cert.verify()
    assert roundtrip(shift, cert)
    with pytest.raises(ZeroElement):
        witness_in_A(shift, CrossedElement.zero(shift))
    with pytest.raises(PreconditionFailed) as err:
        witness_in_A(swap, el(swap, "e_0"))
    assert err.value.capability == "aperiodic_points_dense"


def test_zero_intersection_generator(swap, circle_i, shift):
    gen, f = zero_intersection_generator(swap, 2)
    assert gen == el(swap, "1 + d^2") and f == cf.unit(swap)
    gen, _ = zero_intersection_generator(circle_i, 4)
    assert gen == el(circle_i, "1 + d^4")
    assert zero_intersection_generator(swap)[0] == el(swap, "1 + d^2")
    with pytest.raises(PreconditionFailed):
        zero_intersection_generator(shift, 3)


def test_paired_form(swap, circle_i):
    assert verify_paired_form(swap, 2, el(swap, "1 + d^2"), Window(3))
    assert verify_paired_form(circle_i, 4, el(circle_i, "1 + d^4"), Window(5))
    assert not in_paired_form(el(swap, "e_0"), 2)
    assert in_paired_form(el(swap, "e_0 + e_0*d^2 - e_1*d^1 - e_1*d^3"), 2)
    assert not in_paired_form(el(swap, "e_0 + e_1*d^2"), 2)


def test_witness_in_commutant_examples(swap, shift):
    c, cert, iters = witness_in_commutant(swap, el(swap, "1 + d^1"))
    assert c == el(swap, "e_0") and iters == 1 and cert.verify()
    assert cert.steps[1] == (el(swap, "e_0"), el(swap, "e_1"))
    c, cert, iters = witness_in_commutant(swap, el(swap, "e_0*d^2"))
    assert c == el(swap, "e_0") and iters == 0
    c, cert, iters = witness_in_commutant(shift, el(shift, "e_0 + e_1*d^1"))
    assert c == el(shift, "e_0") and iters == 0


def test_proper_ideal_from_nondense_orbit(two_orbit, circle_i, three_cycle):
    gens, check = proper_ideal_from_nondense_orbit(two_orbit, FinitePoint(2))
    assert gens == [el(two_orbit, "e_0"), el(two_orbit, "e_1")] and check
    assert contains_unit(two_orbit, gens, Window(4)) is None
    gens, check = proper_ideal_from_nondense_orbit(circle_i, CirclePoint(G(1)))
    assert gens == [el(circle_i, "-1 + t^4")] and check
    with pytest.raises(PreconditionFailed):
        proper_ideal_from_nondense_orbit(three_cycle, FinitePoint(0))


def test_prime_refutation(two_orbit):
    g1, g2, ok = prime_refutation(two_orbit)
    assert ok
    assert g1 == [el(two_orbit, "e_2")]
    assert g2 == [el(two_orbit, "e_0"), el(two_orbit, "e_1")]
    double = FinitePermutation([1, 0, 3, 2])
    g1, g2, ok = prime_refutation(double)
    assert ok and g1 == [el(double, "e_2"), el(double, "e_3")]
    with pytest.raises(PreconditionFailed):
        prime_refutation(FinitePermutation([1, 2, 3, 0]))


def test_prime_witness(three_cycle, shift, two_orbit):
    cert = prime_witness(three_cycle, el(three_cycle, "e_0"), el(three_cycle, "e_1"), Window(1))
    assert isinstance(cert, IntersectionCertificate) and cert.verify()
    assert roundtrip(three_cycle, cert)
    cert = prime_witness(shift, el(shift, "e_0"), el(shift, "e_3"), Window(2, 5))
    assert cert is not None and cert.verify()
    for b in (1, 3):
        assert prime_witness(two_orbit, el(two_orbit, "e_0"), el(two_orbit, "e_2"), Window(b)) is None


@pytest.mark.parametrize("model", ["swap", "two_orbit", "three_cycle", "shift"])
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_commutant_witness_properties(model, request, seed):
    s = request.getfixturevalue(model)
    f = ElementSampler(s, seed=seed).element()
    c, cert, iters = witness_in_commutant(s, f)
    assert c and cert.verify()
    assert in_commutant_structural(s, c).member and in_commutant_direct(s, c)
    assert iters <= f.num_terms()
    assert roundtrip(s, cert)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_membership_certificates_replay(seed):
    s = FinitePermutation([1, 0, 2])
    rng = ElementSampler(s, seed=seed)
    f = rng.element()
    span = ideal_window_span(s, [f], Window(2))
    for x in span.basis_elements()[:5]:
        cert = membership(span, x)
        assert cert is not None and cert.verify()
