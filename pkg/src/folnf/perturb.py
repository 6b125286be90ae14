"""Seeded random identity-tangent maps, used to perturb forms for round-trip checks."""
import random

from .errors import ValidationError
from .jets import FormalMapJet, Jet2


def random_identity_tangent_map(seed, degree=3, order=12, bound=3):
    """``(x + u, y + v)`` with ``u``, ``v`` of degrees ``2..degree``.

    Coefficients are integers drawn uniformly from ``[-bound, bound]`` by a
    :class:`random.Random` seeded with ``seed``; monomials are visited by
    degree, then decreasing power of x, U before V.
    """
    if degree < 1:
        raise ValidationError("perturbation degree must be at least 1")
    rng = random.Random(seed)
    U = {(1, 0): 1}
    V = {(0, 1): 1}
    for d in range(2, degree + 1):
        for i in range(d, -1, -1):
            U[(i, d - i)] = rng.randint(-bound, bound)
            V[(i, d - i)] = rng.randint(-bound, bound)
    return FormalMapJet(Jet2(U, order), Jet2(V, order))
