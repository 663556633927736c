"""The crossed product of a coefficient algebra by Z.

Elements are finite sums ``sum f_n d^n`` stored as ``{n: CoeffFn}``; products
use twisted convolution ``(a d^n)(b d^m) = a * sigma_hat^n(b) d^(n+m)``.

The text grammar (whitespace-insensitive)::

    element = [sign] term { ("+" | "-") term }
    term    = [scalar "*"] [coeff "*"] "d^" int | scalar ["*" coeff] | coeff
    coeff   = atom { "*" atom }
    atom    = "e_" int | "t" ["^" int] | "1"
    scalar  = "(" complex ")" | rat | rat "i" | "i"

A complex scalar with both parts must be parenthesized inside an element, so
``3/5+4/5i*t`` reads as ``3/5 + (4/5i)*t``.
"""

from . import coeff as cf
from .dynsys import CircleRotation, FinitePermutation, IntegerShift
from .errors import ModelMismatch, ParseError
from .exactnum import ONE, GaussianRational, _parse_scalar_body, _ScalarScanner, format_rational, gr_format

__all__ = [
    "CrossedElement",
    "x_add",
    "x_scale",
    "x_mul",
    "monomial",
    "delta_power",
    "e_map",
    "x_equal",
    "support_degrees",
    "parse_element",
    "format_element",
    "unit_element",
]


class CrossedElement:
    __slots__ = ("model", "terms", "_hash")

    def __init__(self, model, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for n, f in items:
            cf._expect(model, f)
            if f.terms:
                clean[int(n)] = clean[int(n)] + f if int(n) in clean else f
                if not clean[int(n)].terms:
                    del clean[int(n)]
        self.model = model
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, model, terms):
        x = object.__new__(cls)
        x.model = model
        x.terms = terms
        x._hash = None
        return x

    @classmethod
    def zero(cls, model):
        return cls._make(model, {})

    def _check(self, other):
        if not isinstance(other, CrossedElement):
            raise TypeError(f"expected CrossedElement, got {type(other).__name__}")
        if self.model is not other.model and self.model != other.model:
            raise ModelMismatch(f"{self.model!r} vs {other.model!r}")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted(self.terms)

    def num_terms(self):
        return len(self.terms)

    def coefficient(self, n):
        f = self.terms.get(n)
        return f if f is not None else cf.zero(self.model)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for n, f in other.terms.items():
            cur = out.get(n)
            if cur is None:
                out[n] = f
            else:
                s = cur + f
                if s.terms:
                    out[n] = s
                else:
                    del out[n]
        return CrossedElement._make(self.model, out)

    def __neg__(self):
        return CrossedElement._make(self.model, {n: -f for n, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = GaussianRational.coerce(c)
        if not c:
            return CrossedElement.zero(self.model)
        return CrossedElement._make(self.model, {n: f.scale(c) for n, f in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CrossedElement):
            return self.twisted_product(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, c):
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    def twisted_product(self, other):
        self._check(other)
        s = self.model
        out = {}
        for n, a in self.terms.items():
            for m, b in other.terms.items():
                c = a.product(cf.sigma_hat(s, b, n))
                if not c.terms:
                    continue
                k = n + m
                cur = out.get(k)
                if cur is None:
                    out[k] = c
                else:
                    c = cur + c
                    if c.terms:
                        out[k] = c
                    else:
                        del out[k]
        return CrossedElement._make(s, out)

    def __eq__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"CrossedElement({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


def x_add(f, g):
    return f + g


def x_scale(c, f):
    return f.scale(c)


def x_mul(f, g):
    return f.twisted_product(g)


def monomial(a, n, model):
    """The single-term element ``a d^n``."""
    return CrossedElement(model, {n: a})


def delta_power(s, n):
    """``1 d^n``; raises NotUnital for the shift model."""
    return CrossedElement._make(s, {n: cf.unit(s)})


def unit_element(s):
    return delta_power(s, 0)


def e_map(f):
    """Degree-0 coefficient of ``f``."""
    return f.coefficient(0)


def x_equal(f, g):
    f._check(g)
    return f.terms == g.terms


def support_degrees(f):
    return f.degrees()


# -- text form ---------------------------------------------------------------


def _coefficient_terms(f):
    """(scalar, atom) pairs for one coefficient, in canonical order."""
    if isinstance(f, cf.FiniteFn):
        c = f.constant_value()
        if c is not None:
            return [(c, "1")]
    return [(f.terms[k], cf.atom_text(f, k)) for k in sorted(f.terms)]


def format_element(x):
    """Canonical text: ascending degree, then ascending label."""
    pieces = []
    for n in sorted(x.terms):
        for c, atom in _coefficient_terms(x.terms[n]):
            factors = []
            if atom != "1":
                factors.append(atom)
            if n != 0:
                factors.append(f"d^{n}")
            negative = False
            if c.is_real():
                r = c.re
                negative = r < 0
                mag = -r if negative else r
                if mag != 1 or not factors:
                    factors.insert(0, format_rational(mag))
            else:
                factors.insert(0, f"({gr_format(c)})")
            pieces.append((negative, "*".join(factors)))
    if not pieces:
        return "0"
    out = []
    for i, (neg, body) in enumerate(pieces):
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class _ElementParser:
    def __init__(self, model, text):
        self.model = model
        self.sc = _ScalarScanner(text)
        self.text = text

    def error(self, message, expected):
        return self.sc.error(message, expected)

    def integer(self):
        sc = self.sc
        sign = 1
        if sc.peek() == "-":
            sc.pos += 1
            sign = -1
        if not sc.peek().isdigit():
            raise self.error("expected an integer", ["digit", "-"])
        return sign * sc.digits()

    def expect(self, literal):
        sc = self.sc
        sc.skip()
        if not self.text.startswith(literal, sc.pos):
            raise self.error(f"expected {literal!r}", [repr(literal)])
        sc.pos += len(literal)

    def parse(self):
        sc = self.sc
        if not sc.peek():
            raise self.error("empty expression", ["term"])
        sign = ONE
        if sc.peek() == "-":
            sc.pos += 1
            sign = -ONE
        total = self.term().scale(sign)
        while True:
            ch = sc.peek()
            if not ch:
                return total
            if ch not in "+-":
                raise self.error(f"unexpected character {ch!r}", ["+", "-", "*", "end of input"])
            sc.pos += 1
            t = self.term()
            total = total + t if ch == "+" else total - t
        return total

    def atom(self):
        """Parse one atom; returns its coefficient function."""
        sc = self.sc
        s = self.model
        ch = sc.peek()
        start = sc.pos
        if ch == "e":
            self.expect("e_")
            k = self.integer()
            if isinstance(s, CircleRotation):
                raise ParseError("indicators e_k do not exist in the circle model", start, ["t", "1"], self.text)
            if isinstance(s, FinitePermutation) and not 0 <= k < s.size:
                raise ParseError(f"e_{k} outside 0..{s.size - 1}", start, [], self.text)
            return cf.indicator(s, k)
        if ch == "t":
            sc.pos += 1
            m = 1
            if sc.peek() == "^":
                sc.pos += 1
                m = self.integer()
            if not isinstance(s, CircleRotation):
                raise ParseError("t exists only in the circle model", start, ["e_"], self.text)
            return cf.monomial_t(m)
        if ch == "1":
            sc.pos += 1
            return self.unit(start)
        raise self.error("expected an atom", ["e_", "t", "1"])

    def unit(self, pos):
        if isinstance(self.model, IntegerShift):
            raise ParseError("the shift model has no unit", pos, ["e_"], self.text)
        return cf.unit(self.model)

    def term(self):
        sc = self.sc
        start = sc.pos
        scalar = None
        coeff = None
        degree = 0
        ch = sc.peek()
        if ch == "(":
            sc.pos += 1
            scalar = _parse_scalar_body(sc, allow_complex=True)
            if sc.peek() != ")":
                raise self.error("unbalanced parenthesis", [")"])
            sc.pos += 1
        elif ch.isdigit() or ch == "i" or ch == "-":
            scalar = _parse_scalar_body(sc, allow_complex=False)
        while True:
            if scalar is not None or coeff is not None:
                if sc.peek() != "*":
                    break
                sc.pos += 1
            ch = sc.peek()
            if ch == "d":
                self.expect("d^")
                degree = self.integer()
                if sc.peek() == "*":
                    raise self.error("d^n must be the last factor of a term", ["+", "-", "end of input"])
                break
            if ch in ("e", "t", "1"):
                a = self.atom()
                coeff = a if coeff is None else coeff.product(a)
                continue
            raise self.error("expected a factor", ["e_", "t", "1", "d^"])
        if scalar is None:
            scalar = ONE
        if coeff is None:
            if not scalar:
                return CrossedElement.zero(self.model)
            coeff = self.unit(start)
        return CrossedElement(self.model, {degree: coeff.scale(scalar)})


def parse_element(s, text):
    return _ElementParser(s, text).parse()
