"""Reduction of a generic order-two 1-form to its formal normal form.

Pipeline: divide by the cone scalar so the cone is exactly ``xy(x - y)``,
rectify the separatrix tangent to ``x = 0`` with maps
``(x + c_k y^k, y)``, then for ``m = 3 .. N`` solve the degree-``m``
homological system and apply ``H = (x + alpha, y + beta)`` followed by the
unit ``1 - delta``.  After step ``m`` the degree-``m`` part of the form is
``b x^(m-1) (x dy - y dx)`` with ``b`` the coefficient ``b_(m-3)``.

Homological unknowns are ordered: ``alpha`` (degree ``m-1``, grlex, i.e.
``x^(m-1), x^(m-2) y, ...``), ``beta`` (same), ``delta`` (degree ``m-2``),
then ``b``.  Equations are the degree-``m`` coefficients of P then of Q, in
the same grlex order.
"""
import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .cone import check_genericity
from .errors import FolnfError, GenericityError, NormalFormObstruction, ResonanceError, ValidationError
from .field import ONE_F, ZERO_F, FieldElement, RowReduction
from .invariants import NormalForm
from .jets import Jet2, OneFormJet, identity_tangent_map, jet_mul, pullback


class ResidualError(FolnfError):
    """An internal exactness check failed; this indicates a defect, not bad input."""


@dataclass(frozen=True)
class RectificationStep:
    k: int
    c: FieldElement


@dataclass(frozen=True)
class ReductionStep:
    m: int
    alpha: Jet2
    beta: Jet2
    delta: Jet2
    b: FieldElement
    b_unique: bool = True

    def support_mask(self):
        return (self.alpha.support_mask() | self.beta.support_mask()
                | self.delta.support_mask() | self.b.support_mask())


@dataclass(frozen=True)
class ReductionTranscript:
    input_digest: str
    N: int
    cone_scale: FieldElement
    rectification: Tuple[RectificationStep, ...] = ()
    steps: Tuple[ReductionStep, ...] = ()

    def coefficients(self):
        yield self.cone_scale
        for r in self.rectification:
            yield r.c
        for s in self.steps:
            yield from s.alpha.coeffs.values()
            yield from s.beta.coeffs.values()
            yield from s.delta.coeffs.values()
            yield s.b

    def support_mask(self):
        m = 0
        for c in self.coefficients():
            m |= c.support_mask()
        return m


def form_digest(eta: OneFormJet) -> str:
    """SHA-256 of a canonical text rendering of ``eta``."""
    lines = [f"order {eta.order}"]
    for name, jet in (("P", eta.P), ("Q", eta.Q)):
        for (i, j), c in sorted(jet.items()):
            lines.append(f"{name} {i} {j} {c}")
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


# -- rectification --------------------------------------------------------------
def rectification_multiplier(eta: OneFormJet, k: int) -> FieldElement:
    """Coefficient of ``c_k`` in the ``y^(k+1)`` coefficient of ``Q(0, y)`` after ``phi_k``."""
    return eta.Q[(1, 1)] + eta.P[(0, 2)] * k


def rectification_map(c, k, N):
    return identity_tangent_map(Jet2({(0, k): c}, N), Jet2.zero(N))


def rectify_separatrix(eta: OneFormJet):
    """Make ``Q(0, y)`` vanish to the truncation order; returns ``(eta, steps)``."""
    if eta.valuation() != 2:
        raise ValidationError("rectification needs a form of order exactly 2")
    if eta.Q[(0, 2)]:
        raise ValidationError("the line x = 0 is not tangent to the cone")
    N = eta.order
    steps = []
    for k in range(2, N):
        q = eta.Q[(0, k + 1)]
        if not q:
            continue
        mult = rectification_multiplier(eta, k)
        if not mult:
            raise ResonanceError(k)
        c = -q / mult
        eta = pullback(eta, rectification_map(c, k, N))
        if eta.Q[(0, k + 1)]:
            raise ResidualError(f"rectification step k={k} did not cancel y^{k + 1}")
        steps.append(RectificationStep(k, c))
    return eta, tuple(steps)


# -- homological system -----------------------------------------------------------
def _grlex_monomials(d):
    return [(d - i, i) for i in range(d + 1)]


def unknown_labels(m):
    """Names of the unknowns in column order."""
    labels = [("alpha", e) for e in _grlex_monomials(m - 1)]
    labels += [("beta", e) for e in _grlex_monomials(m - 1)]
    labels += [("delta", e) for e in _grlex_monomials(m - 2)]
    labels.append(("b", None))
    return labels


def equation_labels(m):
    return [("P", e) for e in _grlex_monomials(m)] + [("Q", e) for e in _grlex_monomials(m)]


def _column(P, Q, m, rows):
    col = [ZERO_F] * (2 * (m + 1))
    for (i, j), c in P.items():
        col[rows[("P", (i, j))]] = c
    for (i, j), c in Q.items():
        col[rows[("Q", (i, j))]] = c
    return col


@lru_cache(maxsize=256)
def _homological_matrix(P2: Jet2, Q2: Jet2, m: int):
    rows = {lab: r for r, lab in enumerate(equation_labels(m))}
    P2 = P2.with_order(m)
    Q2 = Q2.with_order(m)
    P2x, P2y, Q2x, Q2y = P2.partial_x(), P2.partial_y(), Q2.partial_x(), Q2.partial_y()
    cols = []
    for kind, (a, c) in unknown_labels(m)[:-1]:
        mono = Jet2({(a, c): ONE_F}, m)
        if kind == "alpha":
            P = jet_mul(mono, P2x) + jet_mul(P2, mono.partial_x())
            Q = jet_mul(mono, Q2x) + jet_mul(P2, mono.partial_y())
        elif kind == "beta":
            P = jet_mul(mono, P2y) + jet_mul(Q2, mono.partial_x())
            Q = jet_mul(mono, Q2y) + jet_mul(Q2, mono.partial_y())
        else:
            P = -jet_mul(mono, P2)
            Q = -jet_mul(mono, Q2)
        cols.append(_column(P, Q, m, rows))
    bcol = [ZERO_F] * (2 * (m + 1))
    bcol[rows[("P", (m - 1, 1))]] = ONE_F
    bcol[rows[("Q", (m, 0))]] = -ONE_F
    cols.append(bcol)
    A = tuple(tuple(col[r] for col in cols) for r in range(2 * (m + 1)))
    return A


@lru_cache(maxsize=256)
def _factorization(P2: Jet2, Q2: Jet2, m: int):
    A = _homological_matrix(P2, Q2, m)
    rr = RowReduction(A)
    kernel = rr.kernel_basis()
    return rr, kernel


def homological_matrix(eta2: OneFormJet, m: int):
    """Matrix of the degree-``m`` system; depends only on the quadratic part."""
    if m < 3:
        raise ValidationError("homological steps start at degree 3")
    return [list(r) for r in _homological_matrix(eta2.P.with_order(2), eta2.Q.with_order(2), m)]


def homological_rhs(eta_m: OneFormJet, m: int):
    rhs = [-eta_m.P[e] for e in _grlex_monomials(m)]
    rhs += [-eta_m.Q[e] for e in _grlex_monomials(m)]
    return rhs


def assemble_from_form(eta: OneFormJet, m: int):
    """Assemble the degree-``m`` system by actually transforming ``eta``.

    Each column is the degree-``m`` change produced by ``(1 - delta) H^*``
    with one unknown set to 1 (the b column is the change of the target).
    Used to confirm that only the quadratic part enters the matrix.
    """
    N = m
    base = eta.truncate(N)
    labels = unknown_labels(m)
    rows = {lab: r for r, lab in enumerate(equation_labels(m))}
    cols = []
    zero = Jet2.zero(N)
    for kind, e in labels[:-1]:
        mono = Jet2({e: ONE_F}, N)
        if kind == "alpha":
            new = pullback(base, identity_tangent_map(mono, zero))
        elif kind == "beta":
            new = pullback(base, identity_tangent_map(zero, mono))
        else:
            new = base.multiply(Jet2.const(ONE_F, N) - mono)
        diff = (new - base).homogeneous(m)
        cols.append(_column(diff.P, diff.Q, m, rows))
    # moving b x^(m-1) (x dy - y dx) to the left-hand side
    target = OneFormJet(Jet2({(m - 1, 1): -ONE_F}, N), Jet2({(m, 0): ONE_F}, N))
    cols.append(_column((-target).P, (-target).Q, m, rows))
    A = [[col[r] for col in cols] for r in range(2 * (m + 1))]
    return A, homological_rhs(base.homogeneous(m), m)


def homological_solve(m: int, eta2: OneFormJet, eta_m: OneFormJet) -> ReductionStep:
    """Canonical solution of the degree-``m`` homological system."""
    if m < 3:
        raise ValidationError("homological steps start at degree 3")
    rr, kernel = _factorization(eta2.P.with_order(2), eta2.Q.with_order(2), m)
    sol = rr.solve(homological_rhs(eta_m, m))
    if not sol.consistent:
        raise NormalFormObstruction(m)
    x = sol.solution
    N = eta_m.order
    mons1 = _grlex_monomials(m - 1)
    mons2 = _grlex_monomials(m - 2)
    alpha = Jet2(dict(zip(mons1, x[:m])), N)
    beta = Jet2(dict(zip(mons1, x[m:2 * m])), N)
    delta = Jet2(dict(zip(mons2, x[2 * m:3 * m - 1])), N)
    b_unique = all(not v[-1] for v in kernel)
    return ReductionStep(m, alpha, beta, delta, x[-1], b_unique)


def apply_step(eta: OneFormJet, step: ReductionStep) -> OneFormJet:
    """``(1 - delta) H^* eta`` with ``H = (x + alpha, y + beta)``."""
    N = eta.order
    out = pullback(eta, identity_tangent_map(step.alpha.with_order(N), step.beta.with_order(N)))
    if step.delta:
        out = out - out.multiply(step.delta.with_order(N))
    return out


def normal_shape(b, m, N):
    """``b x^(m-1) (x dy - y dx)`` as a jet of order ``N``."""
    return OneFormJet(Jet2({(m - 1, 1): -b}, N), Jet2({(m, 0): b}, N))


def rectified(eta: OneFormJet) -> bool:
    return not eta.Q.restrict_x0()


# -- full pipeline ---------------------------------------------------------------
def reduce_to_normal_form(eta: OneFormJet, verify: bool = True):
    """Return ``(NormalForm, ReductionTranscript)`` for a generic order-two form.

    With ``verify`` every step checks the degree-``m`` residual, the
    b-uniqueness of the homological system and that the separatrix stays
    rectified.
    """
    N = eta.order
    if N < 4:
        raise ValidationError("truncation order must be at least 4")
    report = check_genericity(eta)
    if not report.generic:
        raise GenericityError(report.reason())
    digest = form_digest(eta)
    c = report.cone_scale
    work = eta if c.is_one else eta.scale(c.inverse())
    work, rect = rectify_separatrix(work)
    eta2 = work.homogeneous(2)
    steps = []
    for m in range(3, N + 1):
        step = homological_solve(m, eta2, work.homogeneous(m))
        work = apply_step(work, step)
        if verify:
            if not step.b_unique:
                raise NormalFormObstruction(m, f"b is not determined at degree {m}")
            if work.homogeneous(m) != normal_shape(step.b, m, N):
                raise ResidualError(f"degree-{m} residual is nonzero")
            if not rectified(work):
                raise ResidualError(f"separatrix no longer rectified after degree {m}")
        steps.append(step)
    b = [s.b for s in steps]
    nf = NormalForm.build(tuple(report.residues), b, N)
    if verify and work != nf.form():
        raise ResidualError("final form differs from the normal form")
    transcript = ReductionTranscript(digest, N, c, rect, tuple(steps))
    return nf, transcript


def replay_states(transcript: ReductionTranscript, eta: OneFormJet):
    """Yield ``(label, form)`` after each recorded action.

    Labels are ``("scale", None)``, ``("rectify", k)`` and ``("step", m)``.
    """
    if eta.order != transcript.N:
        raise ValidationError(f"transcript is for order {transcript.N}, form has order {eta.order}")
    if form_digest(eta) != transcript.input_digest:
        from .errors import DigestMismatch
        raise DigestMismatch("form does not match the transcript's input digest")
    N = eta.order
    if not transcript.cone_scale.is_one:
        eta = eta.scale(transcript.cone_scale.inverse())
        yield ("scale", None), eta
    for r in transcript.rectification:
        eta = pullback(eta, rectification_map(r.c, r.k, N))
        yield ("rectify", r.k), eta
    for s in transcript.steps:
        eta = apply_step(eta, s)
        yield ("step", s.m), eta


def replay(transcript: ReductionTranscript, eta: OneFormJet) -> OneFormJet:
    """Apply the recorded maps and units to ``eta``; equals the normal form's jet."""
    out = eta
    for _, out in replay_states(transcript, eta):
        pass
    return out
