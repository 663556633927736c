"""Seeded random elements for property checks and CLI suites.

Defaults: degrees uniform in [-3, 3], one to four nonzero terms, coefficient
labels within radius 3, scalars drawn from {+-1, +-i, +-1/2, 2}.
"""

import random
from fractions import Fraction
from itertools import permutations

from . import coeff as cf
from .crossed import CrossedElement
from .dynsys import FinitePermutation
from .exactnum import GaussianRational

__all__ = ["SCALARS", "ElementSampler", "all_permutation_models"]

SCALARS = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
    GaussianRational(Fraction(1, 2)),
    GaussianRational(Fraction(-1, 2)),
    GaussianRational(2),
)


class ElementSampler:
    def __init__(self, model, seed=0, degree=3, radius=3, max_terms=4, max_labels=3):
        self.model = model
        self.rng = random.Random(seed)
        self.degree = degree
        self.radius = radius
        self.max_terms = max_terms
        self.max_labels = max_labels

    def labels(self):
        if isinstance(self.model, FinitePermutation):
            return list(range(self.model.size))
        return list(range(-self.radius, self.radius + 1))

    def coefficient(self):
        """A nonzero coefficient function."""
        labels = self.labels()
        k = self.rng.randint(1, min(self.max_labels, len(labels)))
        chosen = self.rng.sample(labels, k)
        terms = {lab: self.rng.choice(SCALARS) for lab in chosen}
        return cf.zero(self.model)._like(terms)

    def element(self, nonzero=True):
        degrees = list(range(-self.degree, self.degree + 1))
        k = self.rng.randint(1, min(self.max_terms, len(degrees)))
        chosen = self.rng.sample(degrees, k)
        return CrossedElement(self.model, {n: self.coefficient() for n in chosen})

    def elements(self, count):
        return [self.element() for _ in range(count)]

    def scalar(self):
        return self.rng.choice(SCALARS)


def all_permutation_models(max_points=5):
    """Every permutation of ``{0..N-1}`` for ``1 <= N <= max_points`` (153 for 5)."""
    out = []
    for n in range(1, max_points + 1):
        out.extend(FinitePermutation(p) for p in permutations(range(n)))
    return out
