from fractions import Fraction

import pytest
import sympy as sp

from folnf.cone import (STANDARD_LINES, apply_linear_change, check_genericity, construct_example,
                        tangent_cone)
from folnf.errors import ValidationError
from folnf.field import FieldElement, gen
from folnf.jets import Jet2, OneFormJet

import oracle

t1, t2, t3 = gen(1), gen(2), gen(3)
N = 6


def omega0(b=()):
    return construct_example((t1, t2, 1 - t1 - t2), STANDARD_LINES, list(b), N)


def test_quadratic_part_of_example():
    eta = omega0()
    assert eta.P == Jet2({(1, 1): 1 - t2, (0, 2): -t1}, N)
    assert eta.Q == Jet2({(2, 0): t2, (1, 1): t1 - 1}, N)


def test_correction_term():
    diff = omega0([t3]) - omega0()
    assert diff == OneFormJet(Jet2({(2, 1): -t3}, N), Jet2({(3, 0): t3}, N))


def test_tangent_cone_examples():
    assert tangent_cone(OneFormJet(Jet2({(0, 2): 1}, N), Jet2.zero(N))) == Jet2({(1, 2): 1}, N)
    dic = OneFormJet(Jet2({(1, 1): -1}, N), Jet2({(2, 0): 1}, N))
    assert not tangent_cone(dic)
    assert tangent_cone(omega0([t3])) == Jet2({(2, 1): 1, (1, 2): -1}, N)


def test_order_must_be_two():
    with pytest.raises(ValidationError):
        tangent_cone(OneFormJet(Jet2({(1, 0): 1}, N), Jet2.zero(N)))


def _partial_fraction_oracle(eta):
    """Residues by matching eta_0 = sum a_j T dl_j/l_j with unknown a_j (sympy)."""
    x, y = sp.symbols("x y")
    a = sp.symbols("a1:4")
    lines = [x, y, x - y]
    T = x * y * (x - y)
    P = sum(a[j] * sp.cancel(T / lines[j]) * sp.diff(lines[j], x) for j in range(3))
    Q = sum(a[j] * sp.cancel(T / lines[j]) * sp.diff(lines[j], y) for j in range(3))
    P2 = sum(oracle.to_sympy(c) * x ** i * y ** j for (i, j), c in eta.P.items() if i + j == 2)
    Q2 = sum(oracle.to_sympy(c) * x ** i * y ** j for (i, j), c in eta.Q.items() if i + j == 2)
    eqs = sp.Poly(sp.expand(P - P2), x, y).coeffs() + sp.Poly(sp.expand(Q - Q2), x, y).coeffs()
    return sp.solve(eqs, a, dict=True)[0]


def test_residues_against_partial_fractions():
    rep = check_genericity(omega0([t3]))
    sol = _partial_fraction_oracle(omega0())
    got = [oracle.to_sympy(r) for r in rep.residues]
    assert [sp.simplify(g - sol[s]) for g, s in zip(got, sp.symbols("a1:4"))] == [0, 0, 0]
    assert tuple(rep.residues) == (t1, t2, 1 - t1 - t2)
    assert rep.generic and not rep.dicritic and rep.cone_normalized
    assert rep.residues.total() == 1


def test_scaled_cone_residues():
    rep = check_genericity(omega0().scale(t3))
    assert rep.cone_scale == t3
    assert tuple(rep.residues) == (t1, t2, 1 - t1 - t2)


def test_rational_residues_not_generic():
    eta = construct_example([Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)], STANDARD_LINES, [], N)
    rep = check_genericity(eta)
    assert rep.cone_normalized and not rep.generic


def test_dicritic_report():
    rep = check_genericity(OneFormJet(Jet2({(1, 1): -1, (0, 4): 1}, N), Jet2({(2, 0): 1}, N)))
    assert rep.dicritic and not rep.generic and rep.residues is None


def test_other_cone_not_normalized():
    eta = OneFormJet(Jet2({(0, 2): 1}, N), Jet2.zero(N))
    rep = check_genericity(eta)
    assert not rep.dicritic and not rep.cone_normalized and not rep.generic


def test_linear_changes():
    eta = omega0([t3])
    assert apply_linear_change(eta, ((1, 0), (0, 1))) == eta
    swapped = apply_linear_change(eta, ((0, 1), (1, 0)))
    assert tangent_cone(swapped) == Jet2({(2, 1): -1, (1, 2): 1}, N)
    s = FieldElement(3)
    scaled = apply_linear_change(eta, ((s, 0), (0, s)))
    for d in range(2, N + 1):
        assert scaled.homogeneous(d) == eta.homogeneous(d).scale(s ** (d + 1))
    with pytest.raises(ValidationError):
        apply_linear_change(eta, ((1, 1), (1, 1)))


def test_construct_validation():
    with pytest.raises(ValidationError):
        construct_example((t1, t2, t3), STANDARD_LINES, [], N)
    with pytest.raises(ValidationError):
        construct_example((t1, t2, 1 - t1 - t2), ((1, 0), (2, 0), (1, -1)), [], N)


def test_general_lines_cone_is_product():
    lines = ((1, 1), (2, -1), (t3, 1))
    eta = construct_example((t1, t2, 1 - t1 - t2), lines, [t3], N)
    x, y = Jet2.x(N), Jet2.y(N)
    f = [x.scale(a) + y.scale(c) for a, c in lines]
    from folnf.jets import jet_mul
    assert tangent_cone(eta) == jet_mul(jet_mul(f[0], f[1]), f[2])
