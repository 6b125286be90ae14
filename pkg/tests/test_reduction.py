import pytest
import sympy as sp

from folnf.cone import STANDARD_LINES, construct_example
from folnf.errors import (DigestMismatch, GenericityError, NormalFormObstruction, ResonanceError,
                          ValidationError)
from folnf.field import FieldDescriptor, FieldElement, RowReduction, gen
from folnf.jets import FormalMapJet, Jet2, OneFormJet, pullback
from folnf.perturb import random_identity_tangent_map
from folnf.reduction import (ReductionTranscript, apply_step, assemble_from_form, form_digest,
                             homological_matrix, homological_rhs, homological_solve, normal_shape,
                             rectify_separatrix, reduce_to_normal_form, replay, replay_states)

import oracle

t1, t2, t3, t4, t5 = (gen(k) for k in range(1, 6))
N = 7


def omega(b=(), n=N):
    return construct_example((t1, t2, 1 - t1 - t2), STANDARD_LINES, list(b), n)


def y3dy(c, n=N):
    return OneFormJet(Jet2.zero(n), Jet2({(0, 3): c}, n))


# -- rectification ----------------------------------------------------------------------
def test_rectified_input_has_no_steps():
    eta, steps = rectify_separatrix(omega([t3]))
    assert steps == () and eta == omega([t3])


def test_first_rectification_coefficient():
    eta, steps = rectify_separatrix(omega() + y3dy(t3))
    assert steps[0].k == 2 and steps[0].c == t3 / (1 + t1)
    assert not eta.Q.restrict_x0()
    # oracle: y^3 coefficient of Q(0, y) after (x + c y^2, y) is t3 - c (1 + t1)
    x, y, c, s1, s2, s3 = sp.symbols("x y c t1 t2 t3")
    P = (1 - s2) * x * y - s1 * y ** 2
    Q = s2 * x ** 2 - (1 - s1) * x * y + s3 * y ** 3
    U = x + c * y ** 2
    Qn = P.subs(x, U) * sp.diff(U, y) + Q.subs(x, U)
    coeff = sp.expand(Qn.subs(x, 0)).coeff(y, 3)
    assert sp.simplify(coeff - (s3 - c * (1 + s1))) == 0
    assert sp.simplify(sp.solve(coeff, c)[0] - oracle.to_sympy(steps[0].c)) == 0


def test_rectification_under_homothety():
    s = 2
    eta = omega() + y3dy(t3) + OneFormJet(Jet2({(0, 4): t4}, N), Jet2({(1, 4): 1}, N))
    conj = pullback(eta, FormalMapJet.homothety(s, N)).scale(FieldElement(s) ** -3)
    _, st1 = rectify_separatrix(eta)
    _, st2 = rectify_separatrix(conj)
    assert [r.k for r in st1] == [r.k for r in st2]
    for a, b in zip(st1, st2):
        assert b.c == a.c * FieldElement(s) ** (a.k - 1)


def test_resonant_rectification():
    eta = construct_example((-1, t2, 2 - t2), STANDARD_LINES, [], N) + y3dy(1)
    with pytest.raises(ResonanceError) as info:
        rectify_separatrix(eta)
    assert info.value.k == 2 and info.value.exit_code == 3


# -- homological step -------------------------------------------------------------------
def test_normal_shape_gives_b():
    step = homological_solve(3, omega().homogeneous(2), normal_shape(FieldElement(5), 3, N))
    assert step.b == 5 and step.b_unique
    eta = omega() + normal_shape(FieldElement(5), 3, N)
    assert apply_step(eta, step).homogeneous(3) == normal_shape(FieldElement(5), 3, N)


def test_zero_part_gives_zero_step():
    step = homological_solve(4, omega().homogeneous(2), OneFormJet.zero(N))
    assert not step.b and not step.alpha and not step.beta and not step.delta


def test_x3dy_over_example():
    eta3 = OneFormJet(Jet2.zero(N), Jet2({(3, 0): 1}, N))
    step = homological_solve(3, omega().homogeneous(2), eta3)
    # frozen from an independent sympy solve of the 8 x 9 system
    assert step.b == FieldElement.parse("(t1 + 2*t2 - 2)/(t1 + t2 - 2)")
    assert apply_step(omega() + eta3, step).homogeneous(3) == normal_shape(step.b, 3, N)


def test_system_shape_and_kernel():
    for m in range(3, 7):
        A = homological_matrix(omega().homogeneous(2), m)
        assert len(A) == 2 * m + 2 and len(A[0]) == 3 * m
        assert all(not v[-1] for v in RowReduction(A).kernel_basis())


def test_matrix_depends_only_on_quadratic_part():
    eta = pullback(omega([t3, t4]) + y3dy(2), random_identity_tangent_map(3, 3, N))
    eta, _ = rectify_separatrix(eta)
    for m in range(3, 6):
        A, rhs = assemble_from_form(eta, m)
        assert A == homological_matrix(eta.homogeneous(2), m)
        assert rhs == homological_rhs(eta.homogeneous(m), m)
        eta = apply_step(eta, homological_solve(m, eta.homogeneous(2), eta.homogeneous(m)))


def test_obstruction_is_reported():
    eta2 = OneFormJet(Jet2({(1, 1): 1}, N), Jet2.zero(N))
    with pytest.raises(NormalFormObstruction) as info:
        homological_solve(3, eta2, OneFormJet(Jet2({(0, 3): 1}, N), Jet2.zero(N)))
    assert info.value.m == 3 and info.value.exit_code == 3


# -- full reduction ------------------------------------------------------------------------
def test_idempotent_on_normal_form():
    nf, tr = reduce_to_normal_form(omega([t3, t4]))
    assert list(nf.b) == [t3, t4, 0, 0, 0]
    assert tuple(nf.residues) == (t1, t2, 1 - t1 - t2)
    assert tr.rectification == () and all(not s.alpha and not s.beta and not s.delta for s in tr.steps)
    assert nf.form() == omega([t3, t4])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_invariance_under_tangent_maps(seed):
    base, _ = reduce_to_normal_form(omega([t3, t4, t5]))
    eta = pullback(omega([t3, t4, t5]), random_identity_tangent_map(seed, 3, N))
    nf, tr = reduce_to_normal_form(eta)
    assert nf.b == base.b
    assert replay(tr, eta) == nf.form()
    assert FieldDescriptor.of(list(tr.coefficients())).issubset(FieldDescriptor.of(list(eta.coefficients())))


def test_replay_states_and_residuals():
    eta = pullback(omega([t3], 6) + y3dy(1, 6), random_identity_tangent_map(5, 3, 6))
    nf, tr = reduce_to_normal_form(eta)
    assert tr.rectification
    for (kind, m), state in replay_states(tr, eta):
        if kind == "step":
            assert state.homogeneous(m) == normal_shape(nf.b[m - 3], m, 6)
            assert not state.Q.restrict_x0()


def test_cone_scalar_is_normalized():
    nf1, _ = reduce_to_normal_form(omega([t3]))
    nf2, tr = reduce_to_normal_form(omega([t3]).scale(t4))
    assert nf1 == nf2 and tr.cone_scale == t4
    assert replay(tr, omega([t3]).scale(t4)) == nf1.form()


def test_replay_digest_mismatch_and_empty():
    _, tr = reduce_to_normal_form(omega([t3]))
    with pytest.raises(DigestMismatch):
        replay(tr, omega([t4]))
    empty = ReductionTranscript(form_digest(omega()), N, FieldElement(1))
    assert replay(empty, omega()) == omega()


def test_rejections():
    half, third, sixth = (FieldElement.parse(v) for v in ("1/2", "1/3", "1/6"))
    with pytest.raises(GenericityError):
        reduce_to_normal_form(construct_example((half, third, sixth), STANDARD_LINES, [], N))
    with pytest.raises(GenericityError):
        reduce_to_normal_form(OneFormJet(Jet2({(1, 1): -1, (0, 3): t1}, N), Jet2({(2, 0): 1}, N)))
    with pytest.raises(ValidationError):
        reduce_to_normal_form(OneFormJet(Jet2({(0, 1): 1}, N), Jet2.zero(N)))
    with pytest.raises(ValidationError):
        reduce_to_normal_form(omega(n=4).truncate(3))
