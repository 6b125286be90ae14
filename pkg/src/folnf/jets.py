"""Truncated bivariate jets over Q(t), 1-form jets and formal map jets.

Truncation is by total degree: a jet of order ``N`` keeps monomials
``x^i y^j`` with ``i + j <= N`` and every operation re-truncates to ``N``.
Binary operations require equal orders; use :meth:`Jet2.truncate` to
re-truncate explicitly.

Sign convention for the separatrix test: ``eta ^ dx = Q dy ^ dx`` and
:func:`wedge_dx_restrict` returns ``+Q(0, y)``.
"""
from bisect import bisect_right
from math import comb

from .errors import ValidationError
from .field import ONE_F, ZERO_F, FieldElement, as_element, fsum


def _check_order(a, b):
    if a.order != b.order:
        raise ValidationError(f"truncation orders differ: {a.order} vs {b.order}")


class Jet2:
    """Polynomial in x, y truncated at total degree ``order``.

    ``coeffs`` maps ``(i, j)`` to a nonzero :class:`FieldElement`.
    Treat instances as immutable.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs=None, order=None):
        if order is None or order < 0:
            raise ValidationError("a jet needs a nonnegative truncation order")
        self.order = order
        out = {}
        if coeffs:
            for (i, j), c in coeffs.items():
                if i < 0 or j < 0:
                    raise ValidationError(f"negative exponent in ({i}, {j})")
                if i + j > order:
                    continue
                c = as_element(c)
                if c:
                    out[(i, j)] = c
        self.coeffs = out

    @classmethod
    def _trusted(cls, coeffs, order):
        self = object.__new__(cls)
        self.order = order
        self.coeffs = coeffs
        return self

    @classmethod
    def zero(cls, order):
        return cls._trusted({}, order)

    @classmethod
    def const(cls, c, order):
        return cls({(0, 0): c}, order)

    @classmethod
    def x(cls, order):
        return cls._trusted({(1, 0): ONE_F} if order >= 1 else {}, order)

    @classmethod
    def y(cls, order):
        return cls._trusted({(0, 1): ONE_F} if order >= 1 else {}, order)

    @classmethod
    def monomial(cls, i, j, c, order):
        return cls({(i, j): c}, order)

    # -- access -------------------------------------------------------------
    def __getitem__(self, key):
        return self.coeffs.get(key, ZERO_F)

    def items(self):
        return self.coeffs.items()

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Jet2):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"x^{i}y^{j}: {c}" for (i, j), c in sorted(self.coeffs.items()))
        return f"Jet2(order={self.order}, {{{terms}}})"

    def valuation(self):
        """Lowest total degree with a nonzero coefficient (``None`` for 0)."""
        return min((i + j for i, j in self.coeffs), default=None)

    def degree(self):
        return max((i + j for i, j in self.coeffs), default=None)

    def is_homogeneous(self, d):
        return all(i + j == d for i, j in self.coeffs)

    def homogeneous(self, d):
        return Jet2._trusted({k: c for k, c in self.coeffs.items() if k[0] + k[1] == d}, self.order)

    def truncate(self, order):
        return Jet2._trusted({k: c for k, c in self.coeffs.items() if k[0] + k[1] <= order}, order)

    def with_order(self, order):
        """Same coefficients under a different truncation (dropping any beyond it)."""
        return self.truncate(order)

    def support_mask(self):
        m = 0
        for c in self.coeffs.values():
            m |= c.support_mask()
        return m

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        _check_order(self, other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Jet2._trusted(out, self.order)

    def __neg__(self):
        return Jet2._trusted({k: -c for k, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_element(c)
        if not c:
            return Jet2.zero(self.order)
        if c.is_one:
            return self
        return Jet2._trusted({k: v * c for k, v in self.coeffs.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            return jet_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def partial_x(self):
        return Jet2._trusted({(i - 1, j): c * i for (i, j), c in self.coeffs.items() if i}, self.order)

    def partial_y(self):
        return Jet2._trusted({(i, j - 1): c * j for (i, j), c in self.coeffs.items() if j}, self.order)

    def restrict_x0(self):
        """The series ``F(0, y)`` as a jet with only ``y^j`` terms."""
        return Jet2._trusted({k: c for k, c in self.coeffs.items() if k[0] == 0}, self.order)

    def subs(self, U, V):
        """Composition ``F(U(x, y), V(x, y))``; ``U`` and ``V`` have zero constant term."""
        return substitute(self, U, V)


def _by_degree(jet):
    items = sorted(jet.coeffs.items(), key=lambda kv: kv[0][0] + kv[0][1])
    degs = [i + j for (i, j), _ in items]
    return items, degs


def _mul_into(acc, a, b, limit):
    """Accumulate products of ``a`` and ``b`` with total degree ``<= limit`` into ``acc``."""
    if not a.coeffs or not b.coeffs:
        return
    if len(a.coeffs) > len(b.coeffs):
        a, b = b, a
    bitems, bdegs = _by_degree(b)
    for (i, j), ca in a.coeffs.items():
        room = limit - i - j
        if room < 0:
            continue
        stop = bisect_right(bdegs, room)
        for idx in range(stop):
            (k, l), cb = bitems[idx]
            key = (i + k, j + l)
            lst = acc.get(key)
            prod = ca * cb
            if lst is None:
                acc[key] = [prod]
            else:
                lst.append(prod)


def _collect(acc, order):
    out = {}
    for k, lst in acc.items():
        v = lst[0] if len(lst) == 1 else fsum(lst)
        if v:
            out[k] = v
    return Jet2._trusted(out, order)


def jet_mul(a, b, limit=None):
    """Truncated product; ``limit`` optionally truncates lower than the order."""
    _check_order(a, b)
    acc = {}
    _mul_into(acc, a, b, a.order if limit is None else min(limit, a.order))
    return _collect(acc, a.order)


def jet_add(a, b):
    return a + b


def jet_scale(a, c):
    return a.scale(c)


def partial_x(a):
    return a.partial_x()


def partial_y(a):
    return a.partial_y()


# -- substitution -------------------------------------------------------------
def _linear_coeffs(U):
    return U[(1, 0)], U[(0, 1)]


def _subs_linear(F, a, b, c, d):
    """``F(a x + b y, c x + d y)`` degree by degree."""
    N = F.order
    if not b and not c:
        apow, dpow = [ONE_F], [ONE_F]
        out = {}
        for (i, j), f in F.coeffs.items():
            while len(apow) <= i:
                apow.append(apow[-1] * a)
            while len(dpow) <= j:
                dpow.append(dpow[-1] * d)
            v = f * apow[i] * dpow[j]
            if v:
                out[(i, j)] = v
        return Jet2._trusted(out, N)
    maxdeg = F.degree() or 0
    # binomial expansions of (a x + b y)^i and (c x + d y)^j as {xpower: coeff}
    lp1 = [{0: ONE_F}]
    lp2 = [{0: ONE_F}]
    for n in range(1, maxdeg + 1):
        lp1.append({k: a ** k * b ** (n - k) * comb(n, k) for k in range(n + 1)
                    if (k == 0 or a) and (k == n or b)})
        lp2.append({k: c ** k * d ** (n - k) * comb(n, k) for k in range(n + 1)
                    if (k == 0 or c) and (k == n or d)})
    acc = {}
    for (i, j), f in F.coeffs.items():
        n = i + j
        for k1, v1 in lp1[i].items():
            if not v1:
                continue
            fv1 = f * v1
            for k2, v2 in lp2[j].items():
                if not v2:
                    continue
                xp = k1 + k2
                acc.setdefault((xp, n - xp), []).append(fv1 * v2)
    return _collect(acc, N)


def _subs_identity_tangent(F, u, v):
    """``F(x + u, y + v)`` with ``u``, ``v`` of valuation >= 2 (or zero)."""
    N = F.order
    if not u and not v:
        return F
    ou = u.valuation() if u else None
    ov = v.valuation() if v else None
    if (ou is not None and ou < 2) or (ov is not None and ov < 2):
        raise ValidationError("substitution is not tangent to the identity")
    # per (i, j): derivative jet D_ij = sum f_ab C(a,i) C(b,j) x^(a-i) y^(b-j)
    acc = {}
    imax = 0 if u is None or not u else N
    jmax = 0 if v is None or not v else N
    fitems = list(F.coeffs.items())
    minF = F.valuation() or 0
    upow = [Jet2.const(ONE_F, N)]
    vpow = [Jet2.const(ONE_F, N)]
    for i in range(imax + 1):
        gain_i = i * (ou - 1) if i else 0
        if gain_i + minF > N:
            break
        if i >= len(upow):
            upow.append(jet_mul(upow[-1], u))
        for j in range(jmax + 1):
            gain = gain_i + (j * (ov - 1) if j else 0)
            if gain + minF > N:
                break
            if i == 0 and j == 0:
                for k, c in fitems:
                    acc.setdefault(k, []).append(c)
                continue
            if j >= len(vpow):
                vpow.append(jet_mul(vpow[-1], v))
            D = {}
            for (a, b), f in fitems:
                if a < i or b < j:
                    continue
                da = a + b - i - j
                if da + i * (ou or 0) + j * (ov or 0) > N:
                    continue
                D[(a - i, b - j)] = f * (comb(a, i) * comb(b, j))
            if not D:
                continue
            Dj = Jet2._trusted(D, N)
            dmin = Dj.valuation()
            W = jet_mul(upow[i], vpow[j], N - dmin) if i and j else (upow[i] if i else vpow[j])
            _mul_into(acc, Dj, W, N)
    return _collect(acc, N)


def _subs_generic(F, U, V):
    N = F.order
    vpow = [Jet2.const(ONE_F, N)]
    # Horner in x: F = sum_i x^i F_i(y)
    rows = {}
    for (i, j), f in F.coeffs.items():
        rows.setdefault(i, {})[(0, j)] = f
    result = Jet2.zero(N)
    for i in range(max(rows, default=-1), -1, -1):
        row = rows.get(i, {})
        term = {}
        for (_, j), f in row.items():
            while len(vpow) <= j:
                vpow.append(jet_mul(vpow[-1], V))
            for k, c in vpow[j].coeffs.items():
                term.setdefault(k, []).append(c * f)
        result = jet_mul(result, U) + _collect(term, N)
    return result


def substitute(F, U, V):
    """``F(U, V)`` for jets ``U``, ``V`` without constant term (same order as ``F``)."""
    _check_order(F, U)
    _check_order(F, V)
    if U[(0, 0)] or V[(0, 0)]:
        raise ValidationError("substituted jets must have zero constant term")
    a, b = _linear_coeffs(U)
    c, d = _linear_coeffs(V)
    det = a * d - b * c
    if not det:
        return _subs_generic(F, U, V)
    N = F.order
    lin_u = Jet2._trusted({k: w for k, w in ((((1, 0), a), ((0, 1), b))) if w}, N)
    lin_v = Jet2._trusted({k: w for k, w in ((((1, 0), c), ((0, 1), d))) if w}, N)
    hu, hv = U - lin_u, V - lin_v
    if a.is_one and d.is_one and not b and not c:
        return _subs_identity_tangent(F, hu, hv)
    G = _subs_linear(F, a, b, c, d)
    if not hu and not hv:
        return G
    inv = det.inverse()
    gu = hu.scale(d * inv) - hv.scale(b * inv)
    gv = hv.scale(a * inv) - hu.scale(c * inv)
    return _subs_identity_tangent(G, gu, gv)


# -- 1-forms ------------------------------------------------------------------------
class OneFormJet:
    """Jet of the 1-form ``P dx + Q dy``."""

    __slots__ = ("P", "Q")

    def __init__(self, P, Q):
        _check_order(P, Q)
        self.P = P
        self.Q = Q

    @property
    def order(self):
        return self.P.order

    @classmethod
    def zero(cls, order):
        return cls(Jet2.zero(order), Jet2.zero(order))

    def __eq__(self, other):
        if not isinstance(other, OneFormJet):
            return NotImplemented
        return self.P == other.P and self.Q == other.Q

    def __hash__(self):
        return hash((self.P, self.Q))

    def __repr__(self):
        return f"OneFormJet(P={self.P!r}, Q={self.Q!r})"

    def __bool__(self):
        return bool(self.P) or bool(self.Q)

    def valuation(self):
        """Order of the form: lowest total degree among the coefficients of P and Q."""
        vals = [v for v in (self.P.valuation(), self.Q.valuation()) if v is not None]
        return min(vals, default=None)

    def homogeneous(self, d):
        return OneFormJet(self.P.homogeneous(d), self.Q.homogeneous(d))

    def truncate(self, order):
        return OneFormJet(self.P.truncate(order), self.Q.truncate(order))

    def __add__(self, other):
        return OneFormJet(self.P + other.P, self.Q + other.Q)

    def __sub__(self, other):
        return OneFormJet(self.P - other.P, self.Q - other.Q)

    def __neg__(self):
        return OneFormJet(-self.P, -self.Q)

    def scale(self, c):
        return OneFormJet(self.P.scale(c), self.Q.scale(c))

    def multiply(self, f):
        """Product with the function jet ``f``."""
        return OneFormJet(jet_mul(self.P, f), jet_mul(self.Q, f))

    def contract_radial(self):
        """``x P + y Q``: the form evaluated on the radial field."""
        N = self.order
        return jet_mul(Jet2.x(N), self.P) + jet_mul(Jet2.y(N), self.Q)

    def support_mask(self):
        return self.P.support_mask() | self.Q.support_mask()

    def coefficients(self):
        yield from self.P.coeffs.values()
        yield from self.Q.coeffs.values()

    def pullback(self, phi):
        return pullback(self, phi)


def wedge_dx_restrict(eta):
    """``Q(0, y)``: coefficient of ``dy ^ dx`` in ``eta ^ dx`` on the line x = 0."""
    return eta.Q.restrict_x0()


# -- formal maps ------------------------------------------------------------------
class FormalMapJet:
    """Jet of the map ``(x, y) -> (U, V)`` with ``U(0) = V(0) = 0``, invertible linear part."""

    __slots__ = ("U", "V")

    def __init__(self, U, V, check=True):
        _check_order(U, V)
        self.U = U
        self.V = V
        if check:
            if U[(0, 0)] or V[(0, 0)]:
                raise ValidationError("formal map must fix the origin")
            if not self.jacobian_det():
                raise ValidationError("formal map has a singular linear part")

    @property
    def order(self):
        return self.U.order

    @classmethod
    def identity(cls, order):
        return cls(Jet2.x(order), Jet2.y(order))

    @classmethod
    def linear(cls, M, order):
        """Map ``(x, y) -> (a x + b y, c x + d y)`` for ``M = ((a, b), (c, d))``."""
        (a, b), (c, d) = M
        return cls(Jet2({(1, 0): a, (0, 1): b}, order), Jet2({(1, 0): c, (0, 1): d}, order))

    @classmethod
    def homothety(cls, s, order):
        return cls.linear(((s, 0), (0, s)), order)

    def linear_part(self):
        return (_linear_coeffs(self.U), _linear_coeffs(self.V))

    def jacobian_det(self):
        (a, b), (c, d) = self.linear_part()
        return a * d - b * c

    @property
    def is_identity_tangent(self):
        (a, b), (c, d) = self.linear_part()
        return a.is_one and d.is_one and not b and not c

    def __eq__(self, other):
        if not isinstance(other, FormalMapJet):
            return NotImplemented
        return self.U == other.U and self.V == other.V

    def __hash__(self):
        return hash((self.U, self.V))

    def __repr__(self):
        return f"FormalMapJet(U={self.U!r}, V={self.V!r})"

    def support_mask(self):
        return self.U.support_mask() | self.V.support_mask()

    def __call__(self, F):
        """Compose a function jet with this map: ``F(U, V)``."""
        return substitute(F, self.U, self.V)


def compose_map(outer, inner):
    """``outer o inner``: ``(x, y) -> outer(inner(x, y))``."""
    _check_order(outer.U, inner.U)
    return FormalMapJet(substitute(outer.U, inner.U, inner.V),
                        substitute(outer.V, inner.U, inner.V))


def pullback(eta, phi):
    """``phi^* eta = (P o phi) dU + (Q o phi) dV``, truncated at the common order.

    Forms without constant term pull back exactly at the truncation order,
    so ``(phi o psi)^* = psi^* phi^*`` holds on them jet for jet.
    """
    _check_order(eta.P, phi.U)
    Pc = substitute(eta.P, phi.U, phi.V)
    Qc = substitute(eta.Q, phi.U, phi.V)
    Ux, Uy = phi.U.partial_x(), phi.U.partial_y()
    Vx, Vy = phi.V.partial_x(), phi.V.partial_y()
    N = eta.order
    accP, accQ = {}, {}
    _mul_into(accP, Pc, Ux, N)
    _mul_into(accP, Qc, Vx, N)
    _mul_into(accQ, Pc, Uy, N)
    _mul_into(accQ, Qc, Vy, N)
    return OneFormJet(_collect(accP, N), _collect(accQ, N))


def identity_tangent_map(u, v):
    """``(x + u, y + v)`` from correction jets ``u``, ``v``."""
    N = u.order
    return FormalMapJet(Jet2.x(N) + u, Jet2.y(N) + v)


def as_jet(terms, order):
    """Build a :class:`Jet2` from ``{(i, j): value}`` with coercion."""
    return Jet2({k: as_element(v) for k, v in terms.items()}, order)


__all__ = [
    "Jet2", "OneFormJet", "FormalMapJet", "jet_mul", "jet_add", "jet_scale",
    "partial_x", "partial_y", "compose_map", "pullback", "wedge_dx_restrict",
    "substitute", "identity_tangent_map", "as_jet", "FieldElement",
]
