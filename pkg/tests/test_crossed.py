import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpw import coeff as cf
from cpw.crossed import (
    CrossedElement,
    delta_power,
    e_map,
    format_element,
    monomial,
    parse_element,
    support_degrees,
    unit_element,
    x_add,
    x_equal,
    x_mul,
    x_scale,
)
from cpw.errors import ModelMismatch, NotUnital, ParseError
from cpw.exactnum import GaussianRational as G
from cpw.sampling import ElementSampler

from conftest import q

MODELS = ["swap", "two_orbit", "shift", "circle_i", "circle_irr"]


def el(s, text):
    return parse_element(s, text)


def test_add_and_scale(swap):
    f = el(swap, "e_0*d^1 - 1/2*e_1*d^-2")
    assert not x_add(f, x_scale(G(-1), f))
    assert x_add(el(swap, "e_0*d^1"), el(swap, "e_1*d^1")) == monomial(cf.unit(swap), 1, swap)
    assert x_scale(G(2), el(swap, "e_0")) == monomial(cf.indicator(swap, 0).scale(G(2)), 0, swap)


def test_mul_examples(swap, circle_i):
    assert not x_mul(el(swap, "e_0*d^1"), el(swap, "e_0*d^1"))
    assert x_mul(el(swap, "e_0*d^1"), el(swap, "e_1*d^1")) == el(swap, "e_0*d^2")
    f = el(swap, "2*e_0*d^3 + (i)*e_1*d^-1")
    assert unit_element(swap) * f == f == f * unit_element(swap)
    assert x_mul(el(circle_i, "d^1"), el(circle_i, "t")) == el(circle_i, "(i)*t*d^1")


def test_monomials(circle_i, shift):
    assert not monomial(cf.zero(circle_i), 5, circle_i)
    assert delta_power(circle_i, -1) == el(circle_i, "d^-1")
    with pytest.raises(NotUnital):
        delta_power(shift, 1)


def test_e_map_and_degrees(swap):
    f = el(swap, "e_0 + e_1*d^3")
    assert e_map(f) == cf.indicator(swap, 0)
    assert e_map(el(swap, "e_1*d^3")) == cf.zero(swap)
    assert e_map(CrossedElement.zero(swap)) == cf.zero(swap)
    assert x_equal(f, f)
    assert support_degrees(f) == [0, 3]
    assert support_degrees(CrossedElement.zero(swap)) == []


def test_model_mismatch(swap, two_orbit):
    with pytest.raises(ModelMismatch):
        el(swap, "e_0") + el(two_orbit, "e_0")


def test_parse_examples(swap, circle_irr):
    f = el(swap, "e_0 + e_1*d^3")
    assert f.terms == {0: cf.indicator(swap, 0), 3: cf.indicator(swap, 1)}
    g = el(circle_irr, "(3/5+4/5i)*t^2*d^-1")
    assert g.terms == {-1: cf.monomial_t(2, q("3/5+4/5i"))}


@pytest.mark.parametrize(
    "model, text, canonical",
    [
        ("swap", "e_1*d^2 + e_0", "e_0 + e_1*d^2"),
        ("swap", "e_0 + e_1", "1"),
        ("swap", "3*e_0 + 3*e_1", "3"),
        ("swap", "e_0*e_1", "0"),
        ("swap", "-e_0*d^-1 - 2/4*e_1", "-e_0*d^-1 - 1/2*e_1"),
        ("shift", "e_-2 - e_3*d^1", "e_-2 - e_3*d^1"),
        ("circle_i", "t * t^-1 * d^1", "d^1"),
        ("circle_i", "(1-i)*t^3", "(1-i)*t^3"),
        ("circle_i", "(2i) * t", "(2i)*t"),
        ("circle_i", "0", "0"),
    ],
)
def test_canonical_form(request, model, text, canonical):
    s = request.getfixturevalue(model)
    assert format_element(el(s, text)) == canonical


@pytest.mark.parametrize(
    "model, text, pos",
    [
        ("swap", "e_0 +", 5),
        ("swap", "e_5", 0),
        ("swap", "d^1*e_0", 3),
        ("swap", "t", 0),
        ("shift", "1", 0),
        ("circle_i", "e_0", 0),
        ("swap", "(1+2i*e_0", 5),
        ("swap", "e_0 e_1", 4),
    ],
)
def test_parse_errors(request, model, text, pos):
    s = request.getfixturevalue(model)
    with pytest.raises(ParseError) as err:
        el(s, text)
    assert err.value.position == pos


@pytest.mark.parametrize("model", MODELS)
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_ring_axioms(model, request, seed):
    s = request.getfixturevalue(model)
    rng = ElementSampler(s, seed=seed)
    f, g, h = rng.element(), rng.element(), rng.element()
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    c = rng.scalar()
    assert (f * g).scale(c) == f.scale(c) * g == f * g.scale(c)


@pytest.mark.parametrize("model", MODELS)
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(-4, 4), m=st.integers(-4, 4))
def test_monomial_rule(model, request, seed, n, m):
    s = request.getfixturevalue(model)
    rng = ElementSampler(s, seed=seed)
    a, b = rng.coefficient(), rng.coefficient()
    assert monomial(a, n, s) * monomial(b, m, s) == monomial(a.product(cf.sigma_hat(s, b, n)), n + m, s)


@pytest.mark.parametrize("model", MODELS)
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_format_parse_roundtrip(model, request, seed):
    s = request.getfixturevalue(model)
    f = ElementSampler(s, seed=seed).element()
    text = format_element(f)
    assert el(s, text) == f
    assert format_element(el(s, text)) == text
