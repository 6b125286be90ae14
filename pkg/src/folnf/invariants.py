"""Normal forms, the homothety action on them, and equivalence up to homothety."""
from dataclasses import dataclass
from math import gcd
from typing import Tuple

from .cone import STANDARD_LINES, ResidueTriple, construct_example
from .errors import ValidationError
from .field import FieldDescriptor, FieldElement, as_element


@dataclass(frozen=True)
class NormalForm:
    """``eta_0(residues) + sum_k b_k x^(k+2) (x dy - y dx)`` truncated at order ``N``.

    ``b`` holds indices ``0 .. N-3``; coefficients beyond that are cut off.
    """

    residues: ResidueTriple
    b: Tuple[FieldElement, ...]
    field: FieldDescriptor
    N: int

    def __post_init__(self):
        if len(self.b) != self.N - 2:
            raise ValidationError(f"normal form of order {self.N} needs {self.N - 2} b coefficients")

    @classmethod
    def build(cls, residues, b, N):
        res = ResidueTriple(*(as_element(a) for a in residues))
        b = tuple(as_element(v) for v in b)
        return cls(res, b, FieldDescriptor.of(list(res) + list(b)), N)

    @property
    def b_cutoff(self):
        """Largest index of ``b`` that is determined at this order."""
        return self.N - 3

    def form(self):
        return construct_example(tuple(self.residues), STANDARD_LINES, self.b, self.N)


def homothety_action(nf: NormalForm, s) -> NormalForm:
    """Normal form of the conjugate by ``(x, y) -> (s x, s y)``: ``b_k -> s^(k+1) b_k``."""
    s = as_element(s)
    if not s:
        raise ValidationError("homothety scale must be nonzero")
    b = []
    p = s
    for bk in nf.b:
        b.append(bk * p)
        p = p * s
    return NormalForm.build(tuple(nf.residues), b, nf.N)


def _bezout(values):
    """``g, coeffs`` with ``sum(c * v) == g == gcd(values)``."""
    g, coeffs = values[0], [1]
    for v in values[1:]:
        # extended Euclid on (g, v)
        r0, r1, s0, s1, t0, t1 = g, v, 1, 0, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        coeffs = [c * s0 for c in coeffs] + [t0]
        g = r0
    assert g == gcd(*values)
    return g, coeffs


def homothety_scale_power(nf1: NormalForm, nf2: NormalForm):
    """``(g, R)`` with ``s^g = R`` for every homothety ``s`` carrying ``nf1`` to ``nf2``.

    Returns ``None`` if no scale exists over an algebraic closure and
    ``(0, 1)`` when both ``b`` vanish identically (any scale works).
    """
    if nf1.N != nf2.N:
        raise ValidationError(f"truncation orders differ: {nf1.N} vs {nf2.N}")
    ratios, exps = [], []
    for k, (u, v) in enumerate(zip(nf1.b, nf2.b)):
        if bool(u) != bool(v):
            return None
        if u:
            ratios.append(v / u)
            exps.append(k + 1)
    if not exps:
        return 0, FieldElement(1)
    g, coeffs = _bezout(exps)
    R = FieldElement(1)
    for r, c in zip(ratios, coeffs):
        if c:
            R = R * r ** c
    for r, e in zip(ratios, exps):
        if R ** (e // g) != r:
            return None
    return g, R


def invariant_equivalent(nf1: NormalForm, nf2: NormalForm) -> bool:
    """Equal residues and ``b'_k = s^(k+1) b_k`` for some scale ``s`` over the closure."""
    if nf1.N != nf2.N:
        raise ValidationError(f"truncation orders differ: {nf1.N} vs {nf2.N}")
    if tuple(nf1.residues) != tuple(nf2.residues):
        return False
    return homothety_scale_power(nf1, nf2) is not None


def cross_ratios_agree(nf1: NormalForm, nf2: NormalForm) -> bool:
    """Pairwise test ``b_j^(k+1) / b_k^(j+1)`` equal for both forms.

    Necessary for equivalence but weaker than :func:`invariant_equivalent`
    (it cannot see sign or root-of-unity mismatches).
    """
    nz = [k for k, (u, v) in enumerate(zip(nf1.b, nf2.b)) if u or v]
    if any(not nf1.b[k] or not nf2.b[k] for k in nz):
        return False
    for a, j in enumerate(nz):
        for k in nz[a + 1:]:
            lhs = nf1.b[j] ** (k + 1) / nf1.b[k] ** (j + 1)
            rhs = nf2.b[j] ** (k + 1) / nf2.b[k] ** (j + 1)
            if lhs != rhs:
                return False
    return True


def field_report(nf: NormalForm) -> FieldDescriptor:
    """Generators actually occurring in the residues and ``b``."""
    return FieldDescriptor.of(list(nf.residues) + list(nf.b))
