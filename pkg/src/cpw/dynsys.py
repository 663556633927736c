"""Concrete topological dynamical systems on character spaces.

Three models stand in for the pair (character space, induced homeomorphism):

* :class:`FinitePermutation` -- a finite discrete space ``{0..N-1}`` moved by a
  permutation; the homeomorphism maps ``x`` to ``perm[x]``.
* :class:`IntegerShift` -- the integers with translation ``n -> n + 1``.
* :class:`CircleRotation` -- the unit circle.  The coefficient automorphism is
  ``t -> q*t``, so the induced map on points is rotation by ``q**-1``.

Subsets of the space are symbolic :class:`PointSet` values so that the
infinite models remain exactly computable.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import (
    ConfigError,
    KindMismatch,
    NotSeparable,
    ParseError,
    Unsupported,
    ZeroPeriod,
)
from .exactnum import ONE, GaussianRational, gr_format, gr_parse

__all__ = [
    "Capabilities",
    "FinitePoint",
    "ShiftPoint",
    "CirclePoint",
    "PointSet",
    "SystemModel",
    "FinitePermutation",
    "IntegerShift",
    "CircleRotation",
    "FOURTH_ROOTS_OF_UNITY",
    "rational_circle_points",
    "model_from_config",
    "apply_sigma_tilde",
    "per_n",
    "aperiodic_points_dense",
    "has_empty_interior",
    "check_baire_lemma",
    "orbit",
    "is_minimal",
    "is_topologically_transitive",
    "disjoint_invariant_open_sets",
    "separated_neighborhood",
    "verify_toptraper",
]


# The only roots of unity in Q(i) are the fourth roots: a primitive n-th root
# generates a field of degree phi(n) over Q, and phi(n) <= 2 forces n in
# {1, 2, 3, 4, 6}; the cube and sixth roots need sqrt(-3), which Q(i) lacks.
FOURTH_ROOTS_OF_UNITY = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
)


@dataclass(frozen=True)
class Capabilities:
    unital: bool
    regular_bumps: bool
    character_space_infinite: bool

    def as_dict(self):
        return {
            "unital": self.unital,
            "regular_bumps": self.regular_bumps,
            "character_space_infinite": self.character_space_infinite,
        }


@dataclass(frozen=True, order=True)
class FinitePoint:
    index: int

    kind = "finite"

    def sort_key(self):
        return (self.index,)

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True, order=True)
class ShiftPoint:
    n: int

    kind = "shift"

    def sort_key(self):
        return (self.n,)

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class CirclePoint:
    z: GaussianRational

    kind = "circle"

    def __post_init__(self):
        if self.z.norm2() != 1:
            raise ValueError(f"{gr_format(self.z)} is not on the unit circle")

    def sort_key(self):
        return self.z.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return gr_format(self.z)


@dataclass(frozen=True)
class PointSet:
    """``Empty``, ``All``, ``Finite(points)`` or ``Cofinite(points)``.

    ``points`` is duplicate-free and sorted canonically.  Build instances
    through the constructors below (or :meth:`SystemModel.finite_set`, which
    also collapses a finite set covering a finite space to ``All``).
    """

    kind: str
    points: tuple = ()

    EMPTY = "empty"
    ALL = "all"
    FINITE = "finite"
    COFINITE = "cofinite"

    @classmethod
    def empty(cls):
        return cls(cls.EMPTY)

    @classmethod
    def all(cls):
        return cls(cls.ALL)

    @classmethod
    def finite(cls, points):
        pts = tuple(sorted(set(points), key=lambda p: p.sort_key()))
        return cls(cls.FINITE, pts) if pts else cls.empty()

    @classmethod
    def cofinite(cls, points):
        pts = tuple(sorted(set(points), key=lambda p: p.sort_key()))
        return cls(cls.COFINITE, pts) if pts else cls.all()

    def is_empty(self):
        return self.kind == self.EMPTY

    def is_all(self):
        return self.kind == self.ALL

    def __contains__(self, p):
        if self.kind == self.EMPTY:
            return False
        if self.kind == self.ALL:
            return True
        if self.kind == self.FINITE:
            return p in self.points
        return p not in self.points

    def complement(self):
        if self.kind == self.EMPTY:
            return PointSet.all()
        if self.kind == self.ALL:
            return PointSet.empty()
        if self.kind == self.FINITE:
            return PointSet.cofinite(self.points)
        return PointSet.finite(self.points)

    def union(self, other):
        if self.is_all() or other.is_all():
            return PointSet.all()
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        a, b = set(self.points), set(other.points)
        if self.kind == other.kind == self.FINITE:
            return PointSet.finite(a | b)
        if self.kind == other.kind == self.COFINITE:
            return PointSet.cofinite(a & b)
        fin, cof = (a, b) if self.kind == self.FINITE else (b, a)
        return PointSet.cofinite(cof - fin)

    def intersection(self, other):
        return self.complement().union(other.complement()).complement()

    def difference(self, other):
        return self.intersection(other.complement())

    def issubset(self, other):
        return self.difference(other).is_empty()

    def __str__(self):
        if self.kind in (self.EMPTY, self.ALL):
            return self.kind.capitalize()
        inner = ", ".join(str(p) for p in self.points)
        return f"{self.kind.capitalize()}{{{inner}}}"


def rational_circle_points(count):
    """The first ``count`` rational points of the unit circle, deterministically.

    Starts with the fourth roots of unity, then points coming from primitive
    Pythagorean triples in order of hypotenuse, with all sign/swap variants.
    """
    out = [CirclePoint(z) for z in FOURTH_ROOTS_OF_UNITY]
    m = 2
    while len(out) < count:
        for n in range(1, m):
            if (m - n) % 2 == 1 and gcd(m, n) == 1:
                a, b, c = m * m - n * n, 2 * m * n, m * m + n * n
                for x, y in ((a, b), (b, a)):
                    for sx in (1, -1):
                        for sy in (1, -1):
                            out.append(CirclePoint(GaussianRational(Fraction(sx * x, c), Fraction(sy * y, c))))
        m += 1
    return out[:count]


class SystemModel:
    """Common interface of the three dynamical-system models."""

    kind = None
    capabilities = None

    def check_point(self, p):
        raise NotImplementedError

    def apply_sigma_tilde(self, p, k=1):
        raise NotImplementedError

    def per_n(self, n):
        raise NotImplementedError

    def aperiodic_points_dense(self):
        raise NotImplementedError

    def is_minimal(self):
        raise NotImplementedError

    def is_topologically_transitive(self):
        raise NotImplementedError

    def period_bound(self):
        """An ``n0`` such that any nonempty-interior ``Per^n`` occurs for some ``0 < n <= n0``."""
        raise NotImplementedError

    def sample_points(self, count=12):
        raise NotImplementedError

    def has_empty_interior(self, ps):
        if self.kind == "circle":
            return ps.kind in (PointSet.EMPTY, PointSet.FINITE)
        return ps.is_empty()

    def finite_set(self, points):
        return PointSet.finite(points)

    def closure(self, ps):
        """Closure in the symbolic representation (discrete spaces: identity)."""
        return ps

    def orbit(self, p, radius):
        self.check_point(p)
        if radius < 1:
            raise ValueError("radius must be positive")
        pts = {self.apply_sigma_tilde(p, k) for k in range(-radius, radius + 1)}
        complete = all(self.apply_sigma_tilde(x, 1) in pts for x in pts)
        return sorted(pts, key=lambda x: x.sort_key()), complete

    def to_config(self):
        raise NotImplementedError


class FinitePermutation(SystemModel):
    kind = "finite"
    capabilities = Capabilities(unital=True, regular_bumps=True, character_space_infinite=False)

    def __init__(self, perm):
        perm = tuple(int(x) for x in perm)
        if not perm:
            raise ValueError("permutation must act on at least one point")
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{list(perm)} is not a bijection of 0..{len(perm) - 1}")
        self.perm = perm

    @classmethod
    def from_cycles(cls, size, cycles):
        perm = list(range(size))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                perm[a] = b
        return cls(perm)

    @property
    def size(self):
        return len(self.perm)

    def __eq__(self, other):
        return isinstance(other, FinitePermutation) and self.perm == other.perm

    def __hash__(self):
        return hash(("finite", self.perm))

    def __repr__(self):
        return f"FinitePermutation({list(self.perm)})"

    @cached_property
    def cycles(self):
        seen = set()
        out = []
        for start in range(self.size):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.perm[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.perm[x]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def order(self):
        o = 1
        for c in self.cycles:
            o = o * len(c) // gcd(o, len(c))
        return o

    @cached_property
    def _cycle_position(self):
        # point -> (cycle, index in cycle)
        pos = {}
        for c in self.cycles:
            for i, x in enumerate(c):
                pos[x] = (c, i)
        return pos

    def power_map(self, k):
        """Tuple ``m`` with ``m[x] == perm^k(x)``."""
        return self._power_map(k % self.order)

    def _power_map(self, k):
        cache = self.__dict__.setdefault("_powers", {})
        m = cache.get(k)
        if m is None:
            pos = self._cycle_position
            m = tuple(pos[x][0][(pos[x][1] + k) % len(pos[x][0])] for x in range(self.size))
            cache[k] = m
        return m

    def points(self):
        return [FinitePoint(i) for i in range(self.size)]

    def sample_points(self, count=12):
        return self.points()

    def check_point(self, p):
        if not isinstance(p, FinitePoint):
            raise KindMismatch(f"expected a finite point, got {p!r}")
        if not 0 <= p.index < self.size:
            raise KindMismatch(f"point {p.index} outside 0..{self.size - 1}")

    def apply_sigma_tilde(self, p, k=1):
        self.check_point(p)
        return FinitePoint(self.power_map(k)[p.index])

    def finite_set(self, points):
        ps = PointSet.finite(points)
        if len(ps.points) == self.size:
            return PointSet.all()
        return ps

    def per_n(self, n):
        if n == 0:
            raise ZeroPeriod("Per^0 is undefined")
        m = self.power_map(n)
        return self.finite_set(FinitePoint(x) for x in range(self.size) if m[x] == x)

    def aperiodic_points_dense(self):
        # every point of a finite system is periodic
        return False

    def is_minimal(self):
        return len(self.cycles) == 1

    def is_topologically_transitive(self):
        # singletons are open, so transitivity means one orbit
        return len(self.cycles) == 1

    def period_bound(self):
        return self.order

    def to_config(self):
        return {"model": "finite", "permutation": list(self.perm)}


class IntegerShift(SystemModel):
    kind = "shift"
    capabilities = Capabilities(unital=False, regular_bumps=True, character_space_infinite=True)

    def __eq__(self, other):
        return isinstance(other, IntegerShift)

    def __hash__(self):
        return hash("shift")

    def __repr__(self):
        return "IntegerShift()"

    def check_point(self, p):
        if not isinstance(p, ShiftPoint):
            raise KindMismatch(f"expected an integer point, got {p!r}")

    def apply_sigma_tilde(self, p, k=1):
        self.check_point(p)
        return ShiftPoint(p.n + k)

    def sample_points(self, count=12):
        half = count // 2
        return [ShiftPoint(n) for n in range(-half, count - half)]

    def per_n(self, n):
        if n == 0:
            raise ZeroPeriod("Per^0 is undefined")
        return PointSet.empty()

    def aperiodic_points_dense(self):
        return True

    def is_minimal(self):
        return True

    def is_topologically_transitive(self):
        return True

    def period_bound(self):
        return 1

    def to_config(self):
        return {"model": "shift"}


class CircleRotation(SystemModel):
    kind = "circle"
    capabilities = Capabilities(unital=True, regular_bumps=False, character_space_infinite=True)

    def __init__(self, q):
        q = GaussianRational.coerce(q)
        if q.norm2() != 1:
            raise ValueError(f"q = {gr_format(q)} is not on the unit circle (|q|^2 = {q.norm2()})")
        self.q = q
        self.q_inv = q.conjugate()

    def __eq__(self, other):
        return isinstance(other, CircleRotation) and self.q == other.q

    def __hash__(self):
        return hash(("circle", self.q))

    def __repr__(self):
        return f"CircleRotation({gr_format(self.q)!r})"

    def is_root_of_unity(self):
        return self.q in FOURTH_ROOTS_OF_UNITY

    def root_order(self):
        """Multiplicative order of ``q``, or ``None`` when infinite."""
        if not self.is_root_of_unity():
            return None
        x = self.q
        n = 1
        while x != ONE:
            x = x * self.q
            n += 1
        return n

    def check_point(self, p):
        if not isinstance(p, CirclePoint):
            raise KindMismatch(f"expected a circle point, got {p!r}")

    def apply_sigma_tilde(self, p, k=1):
        self.check_point(p)
        return CirclePoint(p.z * self.q ** (-k))

    def sample_points(self, count=12):
        return rational_circle_points(count)

    def per_n(self, n):
        if n == 0:
            raise ZeroPeriod("Per^0 is undefined")
        return PointSet.all() if self.q ** n == ONE else PointSet.empty()

    def aperiodic_points_dense(self):
        return not self.is_root_of_unity()

    def is_minimal(self):
        # irrational rotations have dense orbits; rotations of finite order have finite orbits
        return not self.is_root_of_unity()

    def is_topologically_transitive(self):
        return not self.is_root_of_unity()

    def period_bound(self):
        return 4

    def closure(self, ps):
        # finite sets are closed; a cofinite subset of the circle is dense
        if ps.kind == PointSet.COFINITE:
            return PointSet.all()
        return ps

    def to_config(self):
        return {"model": "circle", "q": gr_format(self.q)}


# -- module-level operations ------------------------------------------------


def apply_sigma_tilde(s, p, k):
    return s.apply_sigma_tilde(p, k)


def per_n(s, n):
    return s.per_n(n)


def aperiodic_points_dense(s):
    return s.aperiodic_points_dense()


def has_empty_interior(s, ps):
    return s.has_empty_interior(ps)


def check_baire_lemma(s, n_max):
    """Compare aperiodic density with "every Per^n has empty interior".

    The right-hand side is evaluated directly for ``0 < n <= max(n_max, bound)``
    where ``bound`` is the model's closed-form period bound, so the finite
    range covers every period that can carry a nonempty interior.
    """
    lhs = s.aperiodic_points_dense()
    top = max(n_max, s.period_bound())
    rhs = all(s.has_empty_interior(s.per_n(n)) for n in range(1, top + 1))
    return lhs == rhs


def orbit(s, p, radius):
    return s.orbit(p, radius)


def is_minimal(s):
    return s.is_minimal()


def is_topologically_transitive(s):
    return s.is_topologically_transitive()


def disjoint_invariant_open_sets(s):
    """Two disjoint invariant nonempty open sets whose closures cover the space.

    Returns ``None`` for transitive systems.  Only the finite model can
    enumerate open sets; a non-transitive circle rotation raises
    :class:`Unsupported`.
    """
    if s.is_topologically_transitive():
        return None
    if not isinstance(s, FinitePermutation):
        raise Unsupported(f"open sets of the {s.kind} model are not representable", "open_sets")
    # U = {0}; V is any point outside its orbit, which exists since there are >= 2 cycles
    u = FinitePoint(0)
    o1 = s.finite_set(s.apply_sigma_tilde(u, k) for k in range(s.order))
    closed = s.closure(o1)
    o2 = s.finite_set(p for p in s.points() if p not in closed)
    return o1, o2


def separated_neighborhood(s, p, m, n):
    """Open ``U`` containing ``p`` whose iterates for ``-m <= i <= n`` are disjoint."""
    if isinstance(s, CircleRotation):
        raise Unsupported("open arcs on the circle are not representable", "open_sets")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    iterates = [s.apply_sigma_tilde(p, i) for i in range(-m, n + 1)]
    if len(set(iterates)) != len(iterates):
        raise NotSeparable(f"iterates of {p} for {-m} <= i <= {n} are not distinct")
    return s.finite_set([p])


def verify_toptraper(s, n0):
    """Check: transitive and ``Per^n0`` is everything implies a single finite orbit."""
    if n0 < 1:
        raise ValueError("n0 must be positive")
    premise = s.is_topologically_transitive() and s.per_n(n0).is_all()
    if not premise:
        return True
    if not isinstance(s, FinitePermutation):
        # the other character spaces are infinite, so a single finite orbit is impossible
        return False
    pts, complete = s.orbit(FinitePoint(0), s.size)
    return complete and len(pts) == s.size


# -- configuration -----------------------------------------------------------


def model_from_config(cfg):
    """Build a model from its JSON configuration, reporting errors with field paths."""
    if not isinstance(cfg, dict):
        raise ConfigError("configuration must be an object", "$")
    model = cfg.get("model")
    if model is None:
        raise ConfigError("missing required field", "$.model")
    if model == "finite":
        extra = set(cfg) - {"model", "permutation"}
        if extra:
            raise ConfigError(f"unknown field(s) {sorted(extra)}", "$")
        perm = cfg.get("permutation")
        if perm is None:
            raise ConfigError("missing required field", "$.permutation")
        if not isinstance(perm, list) or not perm:
            raise ConfigError("must be a non-empty list of integers", "$.permutation")
        for i, x in enumerate(perm):
            if not isinstance(x, int) or isinstance(x, bool):
                raise ConfigError("must be an integer", f"$.permutation[{i}]")
            if not 0 <= x < len(perm):
                raise ConfigError(f"{x} out of range 0..{len(perm) - 1}", f"$.permutation[{i}]")
        seen = {}
        for i, x in enumerate(perm):
            if x in seen:
                raise ConfigError(f"duplicate image {x} (also at index {seen[x]})", f"$.permutation[{i}]")
            seen[x] = i
        return FinitePermutation(perm)
    if model == "shift":
        extra = set(cfg) - {"model"}
        if extra:
            raise ConfigError(f"unknown field(s) {sorted(extra)}", "$")
        return IntegerShift()
    if model == "circle":
        extra = set(cfg) - {"model", "q"}
        if extra:
            raise ConfigError(f"unknown field(s) {sorted(extra)}", "$")
        q = cfg.get("q")
        if q is None:
            raise ConfigError("missing required field", "$.q")
        if not isinstance(q, str):
            raise ConfigError("must be a scalar string such as \"3/5+4/5i\"", "$.q")
        try:
            value = gr_parse(q)
        except ParseError as exc:
            raise ConfigError(str(exc), "$.q") from exc
        if value.norm2() != 1:
            raise ConfigError(f"|q|^2 = {value.norm2()}, must be exactly 1", "$.q")
        return CircleRotation(value)
    raise ConfigError(f"unknown model {model!r} (expected finite, shift or circle)", "$.model")
