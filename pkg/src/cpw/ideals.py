"""Two-sided ideals: window-truncated spans, certificates, and the constructive
arguments relating ideals of the crossed product to the dynamics.

An ideal generated by ``gens`` consists of finite sums of ``m * g * m'``.
:func:`ideal_window_span` enumerates these products for monomials ``m, m'``
inside a :class:`Window` and keeps an exact reduced echelon basis of their
span.  Membership found in a window is a proof; absence only means "not found
within this window".

Positive claims come with a :class:`Certificate` that replays against the
generators:

* ``chain``: start from the generator and apply ``x -> left * x * right`` per
  step (a missing side means no multiplication on that side);
* ``lincomb``: a linear combination of product rows ``left * gen * right``.
"""

from dataclasses import dataclass, field
from typing import Optional

from . import coeff as cf
from .commutant import in_commutant_structural
from .crossed import CrossedElement, delta_power, e_map, format_element, monomial, parse_element, unit_element
from .dynsys import CircleRotation, FinitePermutation, FinitePoint, IntegerShift, PointSet, ShiftPoint, disjoint_invariant_open_sets
from .errors import (
    EmptyGenerators,
    ModelMismatch,
    NotUnital,
    PreconditionFailed,
    Unsupported,
    WindowOverflow,
    ZeroElement,
)
from .exactnum import SparseEchelon, gr_format, gr_parse

__all__ = [
    "Window",
    "ProductRow",
    "Certificate",
    "IntersectionCertificate",
    "IdealWindowSpan",
    "ideal_window_span",
    "window_monomials",
    "membership",
    "contains_unit",
    "intersect_with_A_window",
    "span_intersection",
    "indicator_in_ideal",
    "witness_in_A",
    "zero_intersection_generator",
    "in_paired_form",
    "verify_paired_form",
    "witness_in_commutant",
    "proper_ideal_from_nondense_orbit",
    "prime_refutation",
    "prime_witness",
    "replay",
    "certificate_from_json",
]


@dataclass(frozen=True)
class Window:
    degree_bound: int
    support_radius: int = 1

    def __post_init__(self):
        if self.degree_bound < 1 or self.support_radius < 1:
            raise ValueError("window bounds must be >= 1")


@dataclass(frozen=True)
class ProductRow:
    """``left * generators[gen] * right``; ``None`` means no factor on that side."""

    left: Optional[CrossedElement]
    gen: int
    right: Optional[CrossedElement]

    def evaluate(self, generators):
        x = generators[self.gen]
        if self.left is not None:
            x = self.left * x
        if self.right is not None:
            x = x * self.right
        return x

    def to_json(self):
        return {
            "left": None if self.left is None else format_element(self.left),
            "gen": self.gen,
            "right": None if self.right is None else format_element(self.right),
        }


@dataclass
class Certificate:
    kind: str  # "chain" or "lincomb"
    claim: CrossedElement
    generators: tuple
    steps: tuple = ()  # chain: ((left, right), ...)
    coeffs: tuple = ()  # lincomb: ((scalar, row_index), ...)
    rows: dict = field(default_factory=dict)  # lincomb: row_index -> ProductRow
    description: str = ""

    def replay(self):
        return replay(self)

    def verify(self):
        return replay(self) == self.claim

    def to_json(self):
        fmt = format_element
        out = {"kind": self.kind}
        if self.kind == "chain":
            out["steps"] = [
                {"left": None if l is None else fmt(l), "right": None if r is None else fmt(r)}
                for l, r in self.steps
            ]
        else:
            out["coeffs"] = [[gr_format(c), i] for c, i in self.coeffs]
            out["rows"] = {str(i): self.rows[i].to_json() for _, i in self.coeffs}
        out["generators"] = [fmt(g) for g in self.generators]
        out["claim"] = fmt(self.claim)
        if self.description:
            out["description"] = self.description
        return out


@dataclass
class IntersectionCertificate:
    """A common nonzero element of two ideals with one certificate per ideal."""

    claim: CrossedElement
    first: Certificate
    second: Certificate

    def verify(self):
        return (
            bool(self.claim)
            and self.first.claim == self.claim
            and self.second.claim == self.claim
            and self.first.verify()
            and self.second.verify()
        )

    def to_json(self):
        return {
            "kind": "intersection",
            "claim": format_element(self.claim),
            "first": self.first.to_json(),
            "second": self.second.to_json(),
        }


def replay(cert):
    """Recompute the element a certificate vouches for."""
    gens = cert.generators
    if cert.kind == "chain":
        x = gens[0]
        for left, right in cert.steps:
            if left is not None:
                x = left * x
            if right is not None:
                x = x * right
        return x
    if cert.kind == "lincomb":
        model = gens[0].model
        total = CrossedElement.zero(model)
        for c, i in cert.coeffs:
            total = total + cert.rows[i].evaluate(gens).scale(c)
        return total
    raise ValueError(f"unknown certificate kind {cert.kind!r}")


def certificate_from_json(model, obj):
    """Inverse of :meth:`Certificate.to_json`."""

    def el(text):
        return None if text is None else parse_element(model, text)

    if obj["kind"] == "intersection":
        return IntersectionCertificate(
            el(obj["claim"]), certificate_from_json(model, obj["first"]), certificate_from_json(model, obj["second"])
        )
    gens = tuple(el(t) for t in obj["generators"])
    claim = el(obj["claim"])
    if obj["kind"] == "chain":
        steps = tuple((el(s["left"]), el(s["right"])) for s in obj["steps"])
        return Certificate("chain", claim, gens, steps=steps, description=obj.get("description", ""))
    if obj["kind"] == "lincomb":
        coeffs = tuple((gr_parse(c), int(i)) for c, i in obj["coeffs"])
        rows = {
            int(k): ProductRow(el(r["left"]), int(r["gen"]), el(r["right"]))
            for k, r in obj["rows"].items()
        }
        return Certificate("lincomb", claim, gens, coeffs=coeffs, rows=rows, description=obj.get("description", ""))
    raise ValueError(f"unknown certificate kind {obj['kind']!r}")


# -- window spans ------------------------------------------------------------


def window_monomials(s, window):
    """``a d^i`` for ``|i| <= degree_bound`` and ``a`` in the coefficient basis."""
    basis = cf.coefficient_basis(s, window.support_radius)
    return [
        monomial(a, i, s)
        for i in range(-window.degree_bound, window.degree_bound + 1)
        for a in basis
    ]


def _label_preimages(s, element):
    """Labels ``l`` with ``element * (e_l d^j)`` possibly nonzero (discrete models)."""
    out = set()
    for d, c in element.terms.items():
        for p in c.terms:
            if isinstance(s, FinitePermutation):
                out.add(s.power_map(-d)[p])
            else:
                out.add(p - d)
    return out


def _window_products(s, gens, window):
    """Yield ``(ProductRow, product)`` for every nonzero window product, deterministically."""
    monos = window_monomials(s, window)
    discrete = not isinstance(s, CircleRotation)
    by_label = {}
    if discrete:
        for m in monos:
            (i, a), = m.terms.items()
            (label,) = a.terms
            by_label.setdefault(label, []).append(m)
    for gi, g in enumerate(gens):
        yield ProductRow(None, gi, None), g
        for r in monos:
            x = g * r
            if x:
                yield ProductRow(None, gi, r), x
        for m in monos:
            left = m * g
            if not left:
                continue
            yield ProductRow(m, gi, None), left
            if discrete:
                rights = [r for lab in sorted(_label_preimages(s, left)) for r in by_label.get(lab, ())]
            else:
                rights = monos
            for r in rights:
                x = left * r
                if x:
                    yield ProductRow(m, gi, r), x


def _reach(gens):
    deg = max((abs(n) for g in gens for n in g.terms), default=0)
    lab = max((abs(k) for g in gens for c in g.terms.values() for k in c.terms), default=0)
    return deg, lab


def collection_window(s, gens, window):
    """``(degree_limit, labels)`` of the coordinate space for a span."""
    deg, lab = _reach(gens)
    dlim = window.degree_bound + deg
    if isinstance(s, FinitePermutation):
        labels = list(range(s.size))
    elif isinstance(s, IntegerShift):
        r = window.support_radius + lab
        labels = list(range(-r, r + 1))
    else:
        r = 2 * window.support_radius + lab
        labels = list(range(-r, r + 1))
    return dlim, labels


class IdealWindowSpan:
    """Exact span of the window products of a generating set.

    ``rows`` lists the (deduplicated, in-window) products in generation order;
    ``coordinate_index`` orders coordinates by degree, then label.
    """

    def __init__(self, model, generators, window, collection=None):
        self.model = model
        self.generators = tuple(generators)
        self.window = window
        dlim, labels = collection if collection is not None else collection_window(model, self.generators, window)
        self.degree_limit = dlim
        self.labels = list(labels)
        self.coordinate_index = [(d, l) for d in range(-dlim, dlim + 1) for l in self.labels]
        self._col = {c: i for i, c in enumerate(self.coordinate_index)}
        self.rows = []
        self.discarded = 0
        self.echelon = SparseEchelon()
        seen = set()
        for row, x in _window_products(model, self.generators, window):
            vec = self._vector(x)
            if vec is None:
                self.discarded += 1
                continue
            key = frozenset(vec.items())
            if key in seen:
                continue
            seen.add(key)
            self.echelon.insert(vec, len(self.rows))
            self.rows.append(row)

    def _vector(self, x):
        col = self._col
        vec = {}
        for n, c in x.terms.items():
            for k, v in c.terms.items():
                j = col.get((n, k))
                if j is None:
                    return None
                vec[j] = v
        return vec

    def vector_of(self, x):
        """Coordinates of ``x``; raises WindowOverflow outside the window."""
        vec = self._vector(x)
        if vec is None:
            raise WindowOverflow(f"{format_element(x)} does not fit in the coordinate window")
        return vec

    def element_of(self, vec):
        terms = {}
        proto = cf.zero(self.model)
        for j, v in vec.items():
            n, k = self.coordinate_index[j]
            terms.setdefault(n, {})[k] = v
        return CrossedElement(self.model, {n: proto._like(t) for n, t in terms.items()})

    @property
    def rank(self):
        return len(self.echelon)

    @property
    def basis(self):
        return self.echelon.to_matrix(len(self.coordinate_index))

    def basis_elements(self):
        return [self.element_of(r) for r in self.echelon.basis_rows()]

    def row_element(self, i):
        return self.rows[i].evaluate(self.generators)


def ideal_window_span(s, gens, w, collection=None):
    gens = [g for g in gens]
    if not gens or all(not g for g in gens):
        raise EmptyGenerators("an ideal needs at least one nonzero generator")
    for g in gens:
        if g.model != s:
            raise ModelMismatch(f"generator over {g.model!r}, expected {s!r}")
    return IdealWindowSpan(s, [g for g in gens if g], w, collection)


def membership(span, target, description=""):
    """Lincomb certificate for ``target`` in the window span, or ``None``."""
    vec = span.vector_of(target)
    residual, combo = span.echelon.reduce(vec)
    if residual:
        return None
    coeffs = tuple((c, i) for i, c in sorted(combo.items()))
    rows = {i: span.rows[i] for _, i in coeffs}
    return Certificate("lincomb", target, span.generators, coeffs=coeffs, rows=rows, description=description)


def contains_unit(s, gens, w):
    """Certificate that the unit lies in the ideal, when found in the window."""
    if not s.capabilities.unital:
        raise NotUnital("the unit does not exist in this model")
    span = ideal_window_span(s, gens, w)
    return membership(span, unit_element(s), "unit in ideal")


def _reordered_echelon(rows, key_of):
    ech = SparseEchelon(track=False)
    for i, r in enumerate(rows):
        ech.insert({key_of(j): v for j, v in r.items()}, i)
    return ech


def intersect_with_A_window(span):
    """Basis of (window span) intersected with the degree-0 coordinates, as coefficients."""
    ncols = len(span.coordinate_index)
    zero_cols = {j for j, (n, _) in enumerate(span.coordinate_index) if n == 0}
    # degree-0 columns are ordered last, so rows pivoting there live entirely in degree 0
    ech = _reordered_echelon(span.echelon.basis_rows(), lambda j: j + ncols if j in zero_cols else j)
    out = []
    proto = cf.zero(span.model)
    for p in ech.pivots():
        if p >= ncols:
            row = ech.rows[p][0]
            out.append(proto._like({span.coordinate_index[j - ncols][1]: v for j, v in row.items()}))
    return out


def span_intersection(span1, span2):
    """Basis (as elements) of the intersection of two spans on the same coordinates."""
    if span1.coordinate_index != span2.coordinate_index:
        raise ValueError("spans use different coordinate windows")
    c = len(span1.coordinate_index)
    ech = SparseEchelon(track=False)
    i = 0
    for r in span1.echelon.basis_rows():
        v = dict(r)
        v.update({j + c: x for j, x in r.items()})
        ech.insert(v, i)
        i += 1
    for r in span2.echelon.basis_rows():
        ech.insert(dict(r), i)
        i += 1
    out = []
    for p in ech.pivots():
        if p >= c:
            out.append(span1.element_of({j - c: x for j, x in ech.rows[p][0].items()}))
    return out


def indicator_in_ideal(s, gens, w):
    """First indicator ``e_k`` (degree 0) found in the window span, with certificate."""
    if isinstance(s, CircleRotation):
        raise Unsupported("indicators exist only in discrete models", "regular_bumps")
    span = ideal_window_span(s, gens, w)
    for k in sorted(span.labels, key=lambda k: (abs(k), k)):
        target = monomial(cf.indicator(s, k), 0, s)
        cert = membership(span, target, f"e_{k} in ideal")
        if cert is not None:
            return k, cert
    return None


# -- constructive arguments --------------------------------------------------


def _first_support_point(s, f):
    k = min(f.terms)
    return FinitePoint(k) if isinstance(s, FinitePermutation) else ShiftPoint(k)


def witness_in_A(s, f):
    """Nonzero ``a`` in the coefficient algebra inside the ideal ``(f)``.

    Needs bump functions and dense aperiodic points (the shift model).
    Multiplying by bumps at ``x`` and ``sigma^-n1(x)`` isolates the lowest
    degree term at a non-periodic point ``x``; a remaining monomial ``a d^i``
    is squared away by ``(a d^i)(sigma_hat^-i(a) d^-i) = a^2``.
    """
    if not f:
        raise ZeroElement("the zero element generates the zero ideal")
    caps = s.capabilities
    if not caps.regular_bumps:
        raise PreconditionFailed("bump functions are unavailable", "regular_bumps")
    if not s.aperiodic_points_dense():
        raise PreconditionFailed("aperiodic points are not dense", "aperiodic_points_dense")
    n1 = f.degrees()[0]
    x = _first_support_point(s, f.terms[n1])
    g = monomial(cf.bump(s, s.apply_sigma_tilde(x, -n1)), 0, s)
    h = monomial(cf.bump(s, x), 0, s)
    steps = [(h, g)]
    mono = h * f * g
    if n1 != 0:
        a = mono.terms[n1]
        right = monomial(cf.sigma_hat(s, a, -n1), -n1, s)
        steps.append((None, right))
        mono = mono * right
    a = mono.terms[0]
    cert = Certificate("chain", mono, (f,), steps=tuple(steps), description="nonzero element of A in (f)")
    return a, cert


def zero_intersection_generator(s, n=None):
    """``f + f d^n`` with ``supp(f) <= Per^n``; its ideal meets A only in 0."""
    if n is None:
        n = next(
            (k for k in range(1, s.period_bound() + 1) if not s.has_empty_interior(s.per_n(k))),
            None,
        )
        if n is None:
            raise PreconditionFailed("every Per^n has empty interior", "periodic_interior")
    if n < 1:
        raise ValueError("n must be positive")
    per = s.per_n(n)
    if s.has_empty_interior(per):
        raise PreconditionFailed(f"Per^{n} has empty interior", "periodic_interior")
    f = cf.unit(s) if per.is_all() else cf.bump(s, per.points[0])
    gen = monomial(f, 0, s) + monomial(f, n, s)
    return gen, f


def in_paired_form(h, n):
    """Is ``h == sum_i (b_i d^i + b_i d^(i+n))`` for finitely many ``b_i``?

    Solves ``b_d = h_d - b_(d-n)`` upward from the lowest degree; the
    solution has finite support exactly when ``b_d`` vanishes above
    ``max_degree - n``.
    """
    if not h:
        return True
    degs = h.degrees()
    lo, hi = degs[0], degs[-1]
    zero = cf.zero(h.model)
    b = {}
    for d in range(lo, hi + 1):
        bd = h.terms.get(d, zero) - b.get(d - n, zero)
        b[d] = bd
        if d > hi - n and bd:
            return False
    return True


def verify_paired_form(s, n, gen, w):
    """Check that every window product of ``gen`` is paired and that A meets the paired set in 0."""
    degs = gen.degrees()
    if degs != [0, n] or gen.terms[0] != gen.terms[n]:
        raise PreconditionFailed(f"{format_element(gen)} is not of the form f + f*d^{n}")
    if not cf.supp(s, gen.terms[0]).issubset(s.per_n(n)):
        raise PreconditionFailed(f"support of the coefficient is not inside Per^{n}")
    products_paired = all(in_paired_form(x, n) for _, x in _window_products(s, [gen], w))
    basis = cf.coefficient_basis(s, w.support_radius)
    a_excluded = n >= 1 and not any(in_paired_form(monomial(a, 0, s), n) for a in basis)
    return products_paired and a_excluded


def witness_in_commutant(s, f):
    """Nonzero element of ``(f)`` commuting with A, by induction on the number of terms.

    Returns ``(c, certificate, iterations)`` where ``iterations`` counts the
    term-reducing steps.
    """
    if not f:
        raise ZeroElement("the zero element generates the zero ideal")
    if not s.capabilities.regular_bumps:
        raise PreconditionFailed("bump functions are unavailable", "regular_bumps")
    if s.aperiodic_points_dense():
        a, cert = witness_in_A(s, f)
        return cert.claim, cert, 0
    steps = []
    g = f
    iterations = 0
    while True:
        n1 = g.degrees()[0]
        right = monomial(cf.sigma_hat(s, g.terms[n1], -n1), -n1, s)
        g = g * right
        steps.append((None, right))
        verdict = in_commutant_structural(s, g)
        if verdict.member:
            break
        j, x = verdict.failing_degree, verdict.failing_point
        a = monomial(cf.bump(s, x), 0, s)
        h = monomial(cf.bump(s, s.apply_sigma_tilde(x, -j)), 0, s)
        g = a * g * h
        steps.append((a, h))
        iterations += 1
    cert = Certificate("chain", g, (f,), steps=tuple(steps), description="nonzero commutant element in (f)")
    return g, cert, iterations


def _orbit_closure(s, mu):
    if isinstance(s, FinitePermutation):
        pts, _ = s.orbit(mu, s.size)
        return s.finite_set(pts)
    if isinstance(s, CircleRotation) and s.is_root_of_unity():
        pts, _ = s.orbit(mu, 4)
        return PointSet.finite(pts)
    return PointSet.all()


def proper_ideal_from_nondense_orbit(s, mu, radius=2, window=None):
    """Generators vanishing on a non-dense orbit closure, plus the vanishing check.

    The check evaluates every coefficient of every window product at ``mu``;
    all zero means the unit (value 1 at ``mu``) is not in the ideal.
    """
    s.check_point(mu)
    closed = _orbit_closure(s, mu)
    if closed.is_all():
        raise PreconditionFailed(f"the orbit of {mu} is dense", "nondense_orbit")
    gens = [monomial(g, 0, s) for g in cf.vanishing_generators(s, closed, radius)]
    w = window or Window(radius, radius)
    span = ideal_window_span(s, gens, w)
    check = all(
        not cf.evaluate(s, c, mu)
        for i in range(len(span.rows))
        for c in span.row_element(i).terms.values()
    )
    return gens, check


def prime_refutation(s, window=None):
    """Two nonzero ideals with zero intersection in a non-transitive finite system.

    Returns ``(gens1, gens2, verification)``.  ``verification`` requires an
    empty window intersection, disjoint supports of the degree-0 parts of the
    two spans, and the identity ``E(F * d^-i) == F_i`` on every basis element
    (the reason an ideal with ``E(I) == 0`` is zero in a unital model).
    """
    if s.is_topologically_transitive():
        raise PreconditionFailed("the system is topologically transitive", "non_transitive")
    if not isinstance(s, FinitePermutation):
        raise Unsupported(f"open sets of the {s.kind} model are not representable", "open_sets")
    w = window or Window(4, 1)
    o1, o2 = disjoint_invariant_open_sets(s)
    gens1 = [monomial(g, 0, s) for g in cf.vanishing_generators(s, s.closure(o1))]
    gens2 = [monomial(g, 0, s) for g in cf.vanishing_generators(s, s.closure(o2))]
    coll = collection_window(s, gens1 + gens2, w)
    span1 = ideal_window_span(s, gens1, w, coll)
    span2 = ideal_window_span(s, gens2, w, coll)
    common = span_intersection(span1, span2)
    e_zero = all(not e_map(x) for x in common)
    supp1 = set()
    supp2 = set()
    for i in range(len(span1.rows)):
        supp1.update(e_map(span1.row_element(i)).terms)
    for i in range(len(span2.rows)):
        supp2.update(e_map(span2.row_element(i)).terms)
    lemma = all(
        e_map(F * delta_power(s, -i)) == F.terms[i]
        for sp in (span1, span2)
        for F in sp.basis_elements()
        for i in F.terms
    )
    verification = not common and e_zero and not (supp1 & supp2) and lemma
    return gens1, gens2, verification


def prime_witness(s, f, g, w):
    """Search the window intersection of ``(f)`` and ``(g)`` for a nonzero element."""
    if not f or not g:
        raise ZeroElement("both generators must be nonzero")
    coll = collection_window(s, [f, g], w)
    span1 = ideal_window_span(s, [f], w, coll)
    span2 = ideal_window_span(s, [g], w, coll)
    common = span_intersection(span1, span2)
    if not common:
        return None
    x = common[0]
    c1 = membership(span1, x, "common element in (f)")
    c2 = membership(span2, x, "common element in (g)")
    return IntersectionCertificate(x, c1, c2)
