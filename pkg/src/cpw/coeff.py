"""Coefficient algebras, one per dynamical-system model.

* :class:`FiniteFn` -- functions on ``{0..N-1}`` (pointwise product).
* :class:`FinSuppFn` -- finitely supported functions on the integers.
* :class:`LaurentPoly` -- Laurent polynomials in ``t``, read as functions on
  the unit circle.

All three store a sparse ``dict`` from an integer label (point index,
integer, or exponent) to a nonzero :class:`GaussianRational`.
"""

from .dynsys import (
    CircleRotation,
    FinitePermutation,
    FinitePoint,
    IntegerShift,
    PointSet,
    ShiftPoint,
)
from .errors import KindMismatch, NotRegularModel, NotUnital, Unsupported
from .exactnum import ONE, ZERO, GaussianRational

__all__ = [
    "CoeffFn",
    "FiniteFn",
    "FinSuppFn",
    "LaurentPoly",
    "coeff_arith",
    "sigma_hat",
    "evaluate",
    "bump",
    "supp",
    "vanishing_generators",
    "unit",
    "zero",
    "indicator",
    "monomial_t",
    "coefficient_basis",
    "atom_text",
]


class CoeffFn:
    __slots__ = ("terms", "_hash")
    kind = None

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for k, v in items:
            v = GaussianRational.coerce(v)
            if v:
                clean[int(k)] = v
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, terms, like=None):
        # terms must already be free of zeros
        f = object.__new__(cls)
        f.terms = terms
        f._hash = None
        return f

    def _compatible(self, other):
        if type(self) is not type(other):
            raise KindMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def _like(self, terms):
        return type(self)._make(terms, self)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def labels(self):
        return sorted(self.terms)

    def __getitem__(self, label):
        return self.terms.get(label, ZERO)

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            if cur is None:
                out[k] = v
            else:
                s = cur + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return self._like(out)

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = GaussianRational.coerce(c)
        if not c:
            return self._like({})
        return self._like({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CoeffFn):
            return self.product(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, c):
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    def product(self, other):
        # pointwise; LaurentPoly overrides with convolution
        self._compatible(other)
        a, b = (self.terms, other.terms) if len(self.terms) <= len(other.terms) else (other.terms, self.terms)
        out = {}
        for k, v in a.items():
            w = b.get(k)
            if w is not None:
                out[k] = v * w
        return self._like(out)

    def _key(self):
        return (type(self).__name__, frozenset(self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, CoeffFn):
            return NotImplemented
        return type(self) is type(other) and self.terms == other.terms and self._extra_eq(other)

    def _extra_eq(self, other):
        return True

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self.terms.items()))
        return f"{type(self).__name__}({{{inner}}})"


class FiniteFn(CoeffFn):
    """A function on ``{0..size-1}``; ``values()`` gives the dense vector."""

    __slots__ = ("size",)
    kind = "finite"

    def __init__(self, size, terms=()):
        super().__init__(terms)
        if any(not 0 <= k < size for k in self.terms):
            raise KindMismatch(f"index outside 0..{size - 1}")
        self.size = size

    @classmethod
    def _make(cls, terms, like=None):
        f = super()._make(terms)
        f.size = like.size
        return f

    @classmethod
    def from_values(cls, values):
        return cls(len(values), enumerate(values))

    def values(self):
        return [self.terms.get(i, ZERO) for i in range(self.size)]

    def _compatible(self, other):
        super()._compatible(other)
        if self.size != other.size:
            raise KindMismatch(f"functions on {self.size} and {other.size} points")

    def _extra_eq(self, other):
        return self.size == other.size

    def _key(self):
        return (self.size, frozenset(self.terms.items()))

    def constant_value(self):
        """The common value if the function is a nonzero constant, else ``None``."""
        if len(self.terms) != self.size:
            return None
        vals = set(self.terms.values())
        return next(iter(vals)) if len(vals) == 1 else None


class FinSuppFn(CoeffFn):
    __slots__ = ()
    kind = "shift"


class LaurentPoly(CoeffFn):
    __slots__ = ()
    kind = "circle"

    def product(self, other):
        self._compatible(other)
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                cur = out.get(k)
                out[k] = a * b if cur is None else cur + a * b
        return self._like({k: v for k, v in out.items() if v})

    def evaluate_at(self, z):
        total = ZERO
        for m, c in self.terms.items():
            total = total + c * z ** m
        return total


def _expect(s, f):
    want = {"finite": FiniteFn, "shift": FinSuppFn, "circle": LaurentPoly}[s.kind]
    if not isinstance(f, want):
        raise KindMismatch(f"{type(f).__name__} does not belong to the {s.kind} model")
    if isinstance(f, FiniteFn) and f.size != s.size:
        raise KindMismatch(f"function on {f.size} points, model has {s.size}")


def zero(s):
    if isinstance(s, FinitePermutation):
        return FiniteFn(s.size)
    if isinstance(s, IntegerShift):
        return FinSuppFn()
    return LaurentPoly()


def unit(s):
    """The constant function 1; only unital models have one."""
    if isinstance(s, FinitePermutation):
        return FiniteFn(s.size, {i: ONE for i in range(s.size)})
    if isinstance(s, CircleRotation):
        return LaurentPoly({0: ONE})
    raise NotUnital("finitely supported functions on Z have no unit")


def indicator(s, k):
    if isinstance(s, FinitePermutation):
        return FiniteFn(s.size, {k: ONE})
    if isinstance(s, IntegerShift):
        return FinSuppFn({k: ONE})
    raise KindMismatch("indicators exist only in discrete models")


def monomial_t(m, c=ONE):
    return LaurentPoly({m: c})


def coeff_arith(op, f, g=None, c=None):
    """``op`` is "add" (f + g), "mul" (f * g) or "scale" (c * f)."""
    if op == "add":
        return f + g
    if op == "mul":
        return f.product(g)
    if op == "scale":
        return f.scale(c)
    raise ValueError(f"unknown operation {op!r}")


def sigma_hat(s, f, k):
    """``f o sigma_tilde^(-k)``: the k-th power of the induced automorphism."""
    if k == 0 or not f.terms:
        return f
    if isinstance(s, FinitePermutation):
        m = s.power_map(k)
        return f._like({m[x]: v for x, v in f.terms.items()})
    if isinstance(s, IntegerShift):
        return f._like({x + k: v for x, v in f.terms.items()})
    if isinstance(s, CircleRotation):
        return f._like({m: v * _q_power(s, k * m) for m, v in f.terms.items()})
    raise KindMismatch(f"unknown model {s!r}")


def _q_power(s, e):
    cache = s.__dict__.setdefault("_qpow", {})
    v = cache.get(e)
    if v is None:
        v = s.q ** e
        cache[e] = v
    return v


def evaluate(s, f, p):
    _expect(s, f)
    s.check_point(p)
    if isinstance(p, FinitePoint):
        return f[p.index]
    if isinstance(p, ShiftPoint):
        return f[p.n]
    return f.evaluate_at(p.z)


def _point(s, label):
    if isinstance(s, FinitePermutation):
        return FinitePoint(label)
    return ShiftPoint(label)


def bump(s, p):
    """Indicator of ``{p}``; singletons are open only in the discrete models."""
    if isinstance(s, CircleRotation):
        raise NotRegularModel("a nonzero Laurent polynomial cannot vanish on an open arc")
    s.check_point(p)
    return indicator(s, p.index if isinstance(p, FinitePoint) else p.n)


def supp(s, f):
    _expect(s, f)
    if isinstance(s, CircleRotation):
        # a nonzero Laurent polynomial has finitely many zeros on the circle
        return PointSet.all() if f.terms else PointSet.empty()
    return s.finite_set(_point(s, k) for k in f.terms)


def vanishing_generators(s, closed, radius=3):
    """Functions vanishing on ``closed`` that generate (radius-bounded) its vanishing ideal."""
    if closed.is_all():
        return []
    if isinstance(s, FinitePermutation):
        return [indicator(s, x) for x in range(s.size) if FinitePoint(x) not in closed]
    if isinstance(s, IntegerShift):
        return [indicator(s, x) for x in range(-radius, radius + 1) if ShiftPoint(x) not in closed]
    if closed.kind == PointSet.COFINITE:
        raise Unsupported("no nonzero Laurent polynomial vanishes on a cofinite set", "regular_bumps")
    poly = LaurentPoly({0: ONE})
    for p in closed.points:
        poly = poly.product(LaurentPoly({1: ONE, 0: -p.z}))
    return [poly]


def coefficient_basis(s, radius):
    """Basis functions used to enumerate window monomials, in label order."""
    if isinstance(s, FinitePermutation):
        return [indicator(s, x) for x in range(s.size)]
    if isinstance(s, IntegerShift):
        return [indicator(s, x) for x in range(-radius, radius + 1)]
    return [monomial_t(m) for m in range(-radius, radius + 1)]


def atom_text(f, label):
    if isinstance(f, LaurentPoly):
        if label == 0:
            return "1"
        if label == 1:
            return "t"
        return f"t^{label}"
    return f"e_{label}"
