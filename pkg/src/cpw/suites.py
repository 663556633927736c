"""Check suites run by ``cpw check``.

Each suite returns a :class:`CheckSuiteResult`.  Items carry a certificate
for positive claims or the structural argument behind negative ones.  A
model lacking a capability yields ``unsupported`` items naming the flag.
"""

import time
from dataclasses import dataclass, field

from . import coeff as cf
from . import commutant as cm
from . import dynsys as ds
from . import ideals as idl
from .crossed import e_map, format_element, monomial, parse_element
from .errors import PreconditionFailed, Unsupported
from .sampling import ElementSampler

__all__ = ["SUITES", "CheckItem", "CheckSuiteResult", "CheckOptions", "run_suite"]

PASS, FAIL, UNSUPPORTED = "pass", "fail", "unsupported"


@dataclass
class CheckOptions:
    degree: int = 5
    radius: int = 2
    samples: int = 20
    seed: int = 0


@dataclass
class CheckItem:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0
    capability: str = None

    def to_json(self, timings=False):
        out = {"name": self.name, "status": self.status, "detail": self.detail}
        if self.capability:
            out["capability"] = self.capability
        if timings:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out


@dataclass
class CheckSuiteResult:
    suite: str
    system: dict
    items: list
    options: dict = field(default_factory=dict)

    @property
    def status(self):
        states = {i.status for i in self.items}
        if FAIL in states:
            return FAIL
        if UNSUPPORTED in states:
            return UNSUPPORTED
        return PASS

    def to_json(self, timings=False):
        return {
            "schema_version": 1,
            "suite": self.suite,
            "system": self.system,
            "options": self.options,
            "status": self.status,
            "items": [i.to_json(timings) for i in self.items],
        }


class _Collector:
    def __init__(self):
        self.items = []

    def run(self, name, fn):
        """Run ``fn() -> (ok, detail)``; capability errors become unsupported items."""
        start = time.perf_counter()
        try:
            ok, detail = fn()
            item = CheckItem(name, PASS if ok else FAIL, detail)
        except (Unsupported, PreconditionFailed) as exc:
            item = CheckItem(name, UNSUPPORTED, {"reason": str(exc)}, capability=getattr(exc, "capability", None))
        item.elapsed = time.perf_counter() - start
        self.items.append(item)
        return item


def _fmt(x):
    return format_element(x)


def _grow(search, bounds):
    """First non-None result of ``search(b)`` over ``bounds``, with the bound used."""
    for b in bounds:
        r = search(b)
        if r is not None:
            return b, r
    return None, None


def _search_window(s, b):
    """Window for growing searches: labels need room for the generator's own reach.

    Laurent coefficients already spread by the degree bound, so the circle
    keeps radius ``b``; discrete models get three extra labels.
    """
    return idl.Window(b, b if isinstance(s, ds.CircleRotation) else b + 3)


# -- suites ------------------------------------------------------------------


def suite_triquiv(s, opts, col):
    dense = s.aperiodic_points_dense()
    maxab = cm.is_maximal_abelian(s)
    col.run("maximal_abelian_iff_aperiodic_dense", lambda: (
        maxab == dense,
        {"aperiodic_dense": dense, "maximal_abelian": maxab},
    ))
    if dense:
        sampler = ElementSampler(s, seed=opts.seed)
        for k in range(opts.samples):
            f = sampler.element()

            def check(f=f):
                a, cert = idl.witness_in_A(s, f)
                ok = bool(a) and not [n for n in cert.claim.terms if n != 0] and cert.verify()
                return ok, {"element": _fmt(f), "witness": _fmt(cert.claim), "certificate": cert.to_json()}

            col.run(f"witness_in_A[{k}]", check)
        return

    found = {}

    def generator():
        gen, f = idl.zero_intersection_generator(s)
        found.update(gen=gen, f=f, n=gen.degrees()[1])
        return True, {"generator": _fmt(gen), "period": found["n"]}

    if col.run("zero_intersection_generator", generator).status != PASS:
        return
    gen, f, n = found["gen"], found["f"], found["n"]
    for b in range(3, max(3, opts.degree) + 1):
        w = idl.Window(b, opts.radius)
        col.run(f"paired_form[bound={b}]", lambda w=w: (
            idl.verify_paired_form(s, n, gen, w),
            {"argument": "every window product is sum(b_i d^i + b_i d^(i+n)); no nonzero element of A has that form"},
        ))
    w = idl.Window(max(3, opts.degree), opts.radius)

    def intersect():
        span = idl.ideal_window_span(s, [gen], w)
        got = idl.intersect_with_A_window(span)
        return not got, {"window": [w.degree_bound, w.support_radius], "rank": span.rank,
                         "intersection_with_A": [str(monomial(c, 0, s)) for c in got]}

    col.run("intersection_with_A_empty", intersect)

    def outside():
        x = monomial(f, n, s)
        ok = bool(x) and cm.in_commutant_structural(s, x).member and cm.in_commutant_direct(s, x)
        return ok, {"element": _fmt(x), "argument": f"supp(f) is inside Per^{n} and the degree {n} != 0"}

    col.run("commutant_element_outside_A", outside)


def suite_commint(s, opts, col):
    sampler = ElementSampler(s, seed=opts.seed)
    for k in range(opts.samples):
        f = sampler.element()

        def check(f=f):
            c, cert, iters = idl.witness_in_commutant(s, f)
            ok = (
                bool(c)
                and cm.in_commutant_structural(s, c).member
                and cm.in_commutant_direct(s, c)
                and iters <= f.num_terms()
                and cert.verify()
            )
            return ok, {"element": _fmt(f), "witness": _fmt(c), "iterations": iters,
                        "terms": f.num_terms(), "certificate": cert.to_json()}

        col.run(f"witness_in_commutant[{k}]", check)


def suite_simplicity(s, opts, col):
    minimal = s.is_minimal()
    col.run("minimality", lambda: (True, {"minimal": minimal}))
    if isinstance(s, ds.FinitePermutation):
        if minimal:
            gen = parse_element(s, f"1 - d^{s.size}")
            w = idl.Window(opts.degree, opts.radius)
            cert = idl.contains_unit(s, [gen], w)
            col.run("boundary_finite_minimal_not_simple", lambda: (cert is None, {
                "generator": _fmt(gen),
                "observation": "1 not found in (1 - d^N) although the system is minimal; "
                               "the character space is finite, so the simplicity criterion does not apply",
            }))
            return
        for mu in s.points():
            def proper(mu=mu):
                gens, check = idl.proper_ideal_from_nondense_orbit(s, mu, opts.radius, idl.Window(4, opts.radius))
                cert = idl.contains_unit(s, gens, idl.Window(4, opts.radius))
                return check and cert is None, {
                    "point": str(mu),
                    "generators": [_fmt(g) for g in gens],
                    "argument": "every coefficient of every window product vanishes at the point, so 1 is not in the ideal",
                }
            col.run(f"proper_ideal[mu={mu}]", proper)
        return
    if isinstance(s, ds.CircleRotation):
        if minimal:
            gen = parse_element(s, "-1 + t")

            def unit():
                cert = idl.contains_unit(s, [gen], idl.Window(1, 1))
                if cert is None:
                    return False, {"generator": _fmt(gen), "reason": "unit not found within window"}
                return cert.verify(), {"generator": _fmt(gen), "certificate": cert.to_json()}

            col.run("unit_in_ideal", unit)
            return
        mu = ds.CirclePoint(ds.FOURTH_ROOTS_OF_UNITY[0])

        def proper():
            gens, check = idl.proper_ideal_from_nondense_orbit(s, mu, opts.radius, idl.Window(4, opts.radius))
            cert = idl.contains_unit(s, gens, idl.Window(4, opts.radius))
            return check and cert is None, {"point": str(mu), "generators": [_fmt(g) for g in gens]}

        col.run("proper_ideal[mu=1]", proper)
        return
    # shift: non-unital, so simplicity is probed by finding indicators in (f)
    sampler = ElementSampler(s, seed=opts.seed)
    bounds = range(1, max(6, opts.degree) + 1)
    for k in range(opts.samples):
        f = sampler.element()

        def probe(f=f):
            b, found = _grow(lambda b: idl.indicator_in_ideal(s, [f], _search_window(s, b)), bounds)
            if found is None:
                return False, {"element": _fmt(f), "reason": "no indicator found within window bound 6"}
            label, cert = found
            return cert.verify(), {"element": _fmt(f), "indicator": f"e_{label}", "bound": b,
                                   "certificate": cert.to_json()}

        col.run(f"indicator_in_ideal[{k}]", probe)


def suite_primeness(s, opts, col):
    transitive = s.is_topologically_transitive()
    col.run("transitivity", lambda: (True, {"transitive": transitive}))
    if not transitive:
        def refute():
            g1, g2, ok = idl.prime_refutation(s, idl.Window(4, opts.radius))
            return ok, {"gens1": [_fmt(g) for g in g1], "gens2": [_fmt(g) for g in g2],
                        "argument": "window intersection is zero and E(I1), E(I2) have disjoint supports"}

        col.run("prime_refutation", refute)
        return
    sampler = ElementSampler(s, seed=opts.seed)
    bounds = range(1, opts.degree + 1)
    for k in range(opts.samples):
        f, g = sampler.element(), sampler.element()

        def witness(f=f, g=g):
            b, cert = _grow(lambda b: idl.prime_witness(s, f, g, _search_window(s, b)), bounds)
            if cert is None:
                return False, {"pair": [_fmt(f), _fmt(g)], "reason": "no common element within window"}
            return cert.verify(), {"pair": [_fmt(f), _fmt(g)], "bound": b, "certificate": cert.to_json()}

        col.run(f"prime_witness[{k}]", witness)


def suite_baire(s, opts, col):
    col.run("baire_lemma", lambda: (ds.check_baire_lemma(s, max(6, opts.degree)), {
        "aperiodic_dense": s.aperiodic_points_dense(),
    }))
    for n0 in range(1, 7):
        col.run(f"toptraper[n0={n0}]", lambda n0=n0: (ds.verify_toptraper(s, n0), {}))

    def invariant_sets():
        out = ds.disjoint_invariant_open_sets(s)
        if out is None:
            return s.is_topologically_transitive(), {"transitive": True}
        o1, o2 = out
        pts = s.points()
        ok = (
            not o1.is_empty() and not o2.is_empty()
            and o1.intersection(o2).is_empty()
            and all((s.apply_sigma_tilde(p, 1) in o) == (p in o) for o in (o1, o2) for p in pts)
            and all(p in o1 or p in o2 for p in pts)
        )
        return ok, {"O1": str(o1), "O2": str(o2)}

    col.run("disjoint_invariant_open_sets", invariant_sets)


def suite_algebra(s, opts, col):
    sampler = ElementSampler(s, seed=opts.seed)
    triples = [(sampler.element(), sampler.element(), sampler.element()) for _ in range(opts.samples)]

    def assoc():
        bad = next(((f, g, h) for f, g, h in triples if (f * g) * h != f * (g * h)), None)
        return bad is None, {"checked": len(triples)} if bad is None else {"counterexample": [_fmt(x) for x in bad]}

    def distrib():
        bad = next(((f, g, h) for f, g, h in triples
                    if f * (g + h) != f * g + f * h or (f + g) * h != f * h + g * h), None)
        return bad is None, {"checked": len(triples)} if bad is None else {"counterexample": [_fmt(x) for x in bad]}

    def monomial_rule():
        for _ in range(opts.samples):
            a, b = sampler.coefficient(), sampler.coefficient()
            n, m = sampler.rng.randint(-3, 3), sampler.rng.randint(-3, 3)
            lhs = monomial(a, n, s) * monomial(b, m, s)
            rhs = monomial(a.product(cf.sigma_hat(s, b, n)), n + m, s)
            if lhs != rhs:
                return False, {"counterexample": [_fmt(monomial(a, n, s)), _fmt(monomial(b, m, s))]}
        return True, {"checked": opts.samples}

    def e_bimodule():
        for f, _, _ in triples:
            a, b = sampler.coefficient(), sampler.coefficient()
            if e_map(monomial(a, 0, s) * f * monomial(b, 0, s)) != a.product(e_map(f)).product(b):
                return False, {"counterexample": _fmt(f)}
        return True, {"checked": len(triples)}

    col.run("associativity", assoc)
    col.run("distributivity", distrib)
    col.run("monomial_rule", monomial_rule)
    col.run("e_map_bimodule", e_bimodule)


SUITES = {
    "triquiv": suite_triquiv,
    "commint": suite_commint,
    "simplicity": suite_simplicity,
    "primeness": suite_primeness,
    "baire": suite_baire,
    "algebra": suite_algebra,
}


def run_suite(name, s, opts=None):
    opts = opts or CheckOptions()
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    col = _Collector()
    if name == "commint" and not s.capabilities.regular_bumps:
        col.items.append(CheckItem("witness_in_commutant", UNSUPPORTED,
                                   {"reason": "bump functions are unavailable"}, capability="regular_bumps"))
    else:
        SUITES[name](s, opts, col)
    return CheckSuiteResult(name, s.to_config(), col.items, {
        "degree": opts.degree, "radius": opts.radius, "samples": opts.samples, "seed": opts.seed,
    })

