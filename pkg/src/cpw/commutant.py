"""The commutant of the coefficient algebra inside the crossed product.

Two independent membership tests are provided.  The structural test checks,
degree by degree, that the support of ``f_n`` lies inside ``Per^n``; the
direct test multiplies ``f`` against a generating family of the coefficient
algebra and compares both orders.  Their agreement is the commutant
description, so the test suite runs them against each other.
"""

from dataclasses import dataclass
from typing import Optional

from . import coeff as cf
from .crossed import monomial
from .dynsys import CircleRotation, FinitePermutation, PointSet, rational_circle_points

__all__ = [
    "CommutantVerdict",
    "in_commutant_structural",
    "in_commutant_direct",
    "default_probe_radius",
    "commutant_basis_window",
    "is_maximal_abelian",
]


@dataclass(frozen=True)
class CommutantVerdict:
    member: bool
    failing_degree: Optional[int] = None
    failing_point: object = None

    def __bool__(self):
        return self.member


def _witness_point(s, f, region):
    """First canonical point of ``region`` where ``f`` is nonzero."""
    if region.kind == PointSet.FINITE:
        for p in region.points:
            if cf.evaluate(s, f, p):
                return p
        return None
    if isinstance(s, CircleRotation):
        # a nonzero Laurent polynomial has finitely many roots, so a short scan finds one
        for p in rational_circle_points(4 * len(f.terms) + 8):
            if p in region and cf.evaluate(s, f, p):
                return p
        return None
    if isinstance(s, FinitePermutation):
        candidates = s.points()
    else:
        candidates = sorted(cf.supp(s, f).points, key=lambda p: p.sort_key())
    return next((p for p in candidates if p in region and cf.evaluate(s, f, p)), None)


def in_commutant_structural(s, f):
    """Degreewise check ``supp(f_n) <= Per^n`` for every ``n != 0``."""
    for n in f.degrees():
        if n == 0:
            continue
        fn = f.terms[n]
        bad = cf.supp(s, fn).difference(s.per_n(n))
        if not bad.is_empty():
            return CommutantVerdict(False, n, _witness_point(s, fn, bad))
    return CommutantVerdict(True)


def default_probe_radius(f):
    """Largest degree plus largest support index of ``f``, plus one."""
    deg = max((abs(n) for n in f.terms), default=0)
    idx = max((abs(k) for c in f.terms.values() for k in c.terms), default=0)
    return deg + idx + 1


def _probes(s, f, probe_radius):
    if isinstance(s, FinitePermutation):
        return [cf.indicator(s, x) for x in range(s.size)]
    if isinstance(s, CircleRotation):
        # t generates the Laurent algebra together with its inverse and scalars
        return [cf.monomial_t(1)]
    indices = set(range(-probe_radius, probe_radius + 1))
    for n, c in f.terms.items():
        for k in c.terms:
            indices.add(k)
            indices.add(k - n)
    return [cf.indicator(s, k) for k in sorted(indices)]


def in_commutant_direct(s, f, probe_radius=None):
    """Does ``f`` commute with every probe of a generating family?"""
    if probe_radius is None:
        probe_radius = default_probe_radius(f)
    for a in _probes(s, f, probe_radius):
        x = monomial(a, 0, s)
        if f * x != x * f:
            return False
    return True


def commutant_basis_window(s, degree_bound, radius=1):
    """Monomials ``a d^n`` spanning the commutant inside the window.

    ``a`` runs over the coefficient basis (indicators, or Laurent monomials
    with ``|exponent| <= radius``); a monomial is kept when ``n == 0`` or
    ``supp(a) <= Per^n``.
    """
    out = []
    basis = cf.coefficient_basis(s, radius)
    for n in range(-degree_bound, degree_bound + 1):
        per = s.per_n(n) if n else PointSet.all()
        for a in basis:
            if cf.supp(s, a).issubset(per):
                out.append(monomial(a, n, s))
    return out


def is_maximal_abelian(s):
    """True iff no nonzero coefficient is supported inside any ``Per^n``, ``n != 0``.

    A nonzero function can live inside ``Per^n`` exactly when that set has
    nonempty interior (indicators in discrete spaces; constants on the circle
    when ``Per^n`` is everything).  Only ``0 < n <= period_bound`` can matter,
    and ``Per^-n == Per^n``.
    """
    for n in range(1, s.period_bound() + 1):
        per = s.per_n(n)
        if isinstance(s, CircleRotation):
            if per.is_all():
                return False
        elif not per.is_empty():
            return False
    return True
