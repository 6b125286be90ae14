"""Tangent cone, residues and the genericity verdict for order-two 1-forms.

The engine only analyses cones that are an exact nonzero multiple of
``xy(x - y)``; other cones have to be moved there first with
:func:`apply_linear_change`. Residues are reported for the lines
``x = 0``, ``y = 0``, ``x = y`` in that order.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ValidationError
from .field import ONE_F, FieldElement, as_element, fsum, is_rational_constant
from .jets import FormalMapJet, Jet2, OneFormJet, jet_mul, pullback

# T = xy(x - y) = x^2 y - x y^2
CONE_SHAPE = {(2, 1): 1, (1, 2): -1}


def quadratic_part(eta: OneFormJet) -> OneFormJet:
    """``eta_0``; raises unless the form has order exactly two."""
    v = eta.valuation()
    if v != 2:
        raise ValidationError(f"form must have order exactly 2, found {v}")
    if eta.order < 3:
        raise ValidationError("truncation order must be at least 3")
    return eta.homogeneous(2)


def tangent_cone(eta: OneFormJet) -> Jet2:
    """``x P_2 + y Q_2``, a homogeneous cubic (zero iff dicritic)."""
    return quadratic_part(eta).contract_radial().homogeneous(3)


def cone_scale(T: Jet2) -> Optional[FieldElement]:
    """``c`` with ``T = c xy(x - y)``, or ``None`` if ``T`` has another shape (or is 0)."""
    c = T[(2, 1)]
    if not c or T[(1, 2)] != -c or len(T) != 2:
        return None
    return c


@dataclass(frozen=True)
class ResidueTriple:
    alpha1: FieldElement
    alpha2: FieldElement
    alpha3: FieldElement

    def __iter__(self):
        return iter((self.alpha1, self.alpha2, self.alpha3))

    def total(self):
        return self.alpha1 + self.alpha2 + self.alpha3

    def is_nonrational(self):
        return not any(is_rational_constant(a) for a in self)

    def support_mask(self):
        m = 0
        for a in self:
            m |= a.support_mask()
        return m


@dataclass(frozen=True)
class GenericityReport:
    dicritic: bool
    cone_normalized: bool
    residues: Optional[ResidueTriple]
    generic: bool
    cone_scale: Optional[FieldElement] = None

    def reason(self):
        if self.dicritic:
            return "dicritic: the tangent cone vanishes"
        if not self.cone_normalized:
            return "tangent cone is not a nonzero multiple of xy(x-y)"
        if not self.generic:
            return "a residue is a rational number"
        return "generic"


def residues_of(eta0: OneFormJet, c=ONE_F) -> ResidueTriple:
    """Residues of the quadratic part ``eta0`` divided by the cone scalar ``c``."""
    P2, Q2 = eta0.P, eta0.Q
    inv = as_element(c).inverse()
    a1 = -P2[(0, 2)] * inv
    a2 = Q2[(2, 0)] * inv
    a3 = fsum([P2[(2, 0)], P2[(1, 1)], P2[(0, 2)]]) * inv
    return ResidueTriple(a1, a2, a3)


def check_genericity(eta: OneFormJet) -> GenericityReport:
    eta0 = quadratic_part(eta)
    T = eta0.contract_radial().homogeneous(3)
    if not T:
        return GenericityReport(True, False, None, False)
    c = cone_scale(T)
    if c is None:
        return GenericityReport(False, False, None, False)
    res = residues_of(eta0, c)
    return GenericityReport(False, True, res, res.is_nonrational(), c)


def apply_linear_change(eta: OneFormJet, M) -> OneFormJet:
    """Pullback of ``eta`` by ``(x, y) -> (a x + b y, c x + d y)`` with ``M = ((a, b), (c, d))``."""
    phi = FormalMapJet.linear(M, eta.order)
    return pullback(eta, phi)


def _linear_form(f):
    """Coerce ``(a, c)`` or a degree-one :class:`Jet2` to a coefficient pair."""
    if isinstance(f, Jet2):
        if not f.is_homogeneous(1):
            raise ValidationError("line must be a homogeneous linear form")
        return f[(1, 0)], f[(0, 1)]
    a, c = f
    return as_element(a), as_element(c)


def construct_example(lam: Sequence, f: Sequence, b: Sequence, N: int) -> OneFormJet:
    """Jet of ``f1 f2 f3 sum(lam_j df_j / f_j) + sum_k b_k x^(k+2) (x dy - y dx)``.

    ``lam`` is a triple with sum one, ``f`` three pairwise non-proportional
    linear forms given as ``(a, c)`` for ``a x + c y``.
    """
    if len(lam) != 3 or len(f) != 3:
        raise ValidationError("need exactly three residues and three lines")
    lam = [as_element(v) for v in lam]
    if fsum(lam) != ONE_F:
        raise ValidationError("residues must sum to 1")
    lines = [_linear_form(g) for g in f]
    for i in range(3):
        ai, ci = lines[i]
        if not ai and not ci:
            raise ValidationError("zero linear form")
        for j in range(i):
            aj, cj = lines[j]
            if not (ai * cj - aj * ci):
                raise ValidationError("linear forms must be pairwise non-proportional")
    if N < 4:
        raise ValidationError("truncation order must be at least 4")
    b = [as_element(v) for v in b]
    if len(b) > N - 2:
        raise ValidationError(f"at most {N - 2} correction coefficients fit at order {N}")
    jets = [Jet2({(1, 0): a, (0, 1): c}, N) for a, c in lines]
    P = Jet2.zero(N)
    Q = Jet2.zero(N)
    for j in range(3):
        others = [jets[i] for i in range(3) if i != j]
        prod = jet_mul(others[0], others[1])
        a, c = lines[j]
        P = P + prod.scale(lam[j] * a)
        Q = Q + prod.scale(lam[j] * c)
    corr_P, corr_Q = {}, {}
    for k, bk in enumerate(b):
        if bk:
            corr_P[(k + 2, 1)] = -bk
            corr_Q[(k + 3, 0)] = bk
    return OneFormJet(P + Jet2(corr_P, N), Q + Jet2(corr_Q, N))


STANDARD_LINES = ((1, 0), (0, 1), (1, -1))
