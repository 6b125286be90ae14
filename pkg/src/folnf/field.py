"""Exact arithmetic in Q(t0, t1, ...) with purely transcendental generators.

A :class:`FieldElement` is stored as a reduced fraction ``num/den`` of integer
polynomials: ``gcd(num, den) = 1`` in Z[t] (integer content included) and
``den`` has a positive leading coefficient.  That representative is unique,
so ``==`` and ``hash`` are structural.  :meth:`FieldElement.monic_form`
gives the equivalent Q-coefficient pair with a grlex-monic denominator.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _igcd
import re

from . import poly as _poly
from .poly import ONE, ZERO, Poly, cofactors

_GEN_RE = re.compile(r"t(0|[1-9][0-9]*)\Z")


@dataclass(frozen=True, order=True)
class Generator:
    """A transcendental generator ``t<index>``; ordered by index."""

    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 0:
            raise ValueError(f"bad generator index {self.index!r}")

    @property
    def name(self):
        return f"t{self.index}"

    @classmethod
    def parse(cls, name):
        m = _GEN_RE.match(name)
        if m is None:
            raise ValueError(f"not a generator name: {name!r}")
        return cls(int(m.group(1)))

    def __repr__(self):
        return f"Generator({self.name!r})"

    def __str__(self):
        return self.name


def generators_of_mask(mask):
    return tuple(Generator(k) for k in _poly._slots(mask))


@dataclass(frozen=True)
class FieldDescriptor:
    """Generators of a finitely generated purely transcendental extension of Q."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(sorted(set(self.generators)))
        object.__setattr__(self, "generators", gens)

    @property
    def transcendence_degree(self):
        return len(self.generators)

    @property
    def names(self):
        return [g.name for g in self.generators]

    @classmethod
    def of(cls, elements):
        mask = 0
        for e in elements:
            mask |= e.support_mask()
        return cls(generators_of_mask(mask))

    def __contains__(self, g):
        return g in self.generators

    def issubset(self, other):
        return set(self.generators) <= set(other.generators)


class FieldElement:
    """Immutable element of Q(t0, t1, ...) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, FieldElement):
            self.num, self.den = value.num, value.den
        elif isinstance(value, int):
            self.num, self.den = Poly.const(value), ONE
        elif isinstance(value, Fraction):
            self.num, self.den = Poly.const(value.numerator), Poly.const(value.denominator)
        else:
            raise TypeError(f"cannot convert {type(value).__name__} to FieldElement")
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def from_polys(cls, num, den=ONE):
        """Canonicalize ``num/den``."""
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ZERO_F
        if den.is_one:
            return cls._raw(num, ONE)
        _, num, den = cofactors(num, den)
        if den.lc() < 0:
            num, den = -num, -den
        return cls._raw(num, den)

    @classmethod
    def gen(cls, g):
        """The generator ``g`` (a :class:`Generator`, an index, or a name)."""
        if isinstance(g, str):
            g = Generator.parse(g)
        elif isinstance(g, int):
            g = Generator(g)
        return cls._raw(Poly.gen(g.index), ONE)

    @classmethod
    def parse(cls, text, generators=None):
        from .expr import parse_expr

        return parse_expr(text, generators)

    # -- predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_one(self):
        return self.den.is_one and self.num.is_one

    @property
    def is_constant(self):
        return self.num.is_ground and self.den.is_ground

    @property
    def is_polynomial(self):
        return self.den.is_one

    def to_fraction(self):
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(self.num.ground, self.den.ground)

    def support_mask(self):
        return self.num.mask() | self.den.mask()

    def support(self):
        return frozenset(generators_of_mask(self.support_mask()))

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FieldElement):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        an, ad, bn, bd = self.num, self.den, other.num, other.den
        if not an:
            return other
        if not bn:
            return self
        if ad.is_one:
            if bd.is_one:
                return FieldElement._raw(an + bn, ONE)
            return FieldElement._raw(an * bd + bn, bd)
        if bd.is_one:
            return FieldElement._raw(an + bn * ad, ad)
        if ad == bd:
            n = an + bn
            if not n:
                return ZERO_F
            _, n, d = cofactors(n, ad)
            return FieldElement._raw(n, d)
        g, ad_g, bd_g = cofactors(ad, bd)
        if g.is_one:
            return FieldElement._raw(an * bd + bn * ad, ad * bd)
        n = an * bd_g + bn * ad_g
        if not n:
            return ZERO_F
        _, n, g2 = cofactors(n, g)
        return FieldElement._raw(n, ad_g * bd_g * g2)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return FieldElement._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._mul_int(other)
        if not isinstance(other, FieldElement):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        an, ad, bn, bd = self.num, self.den, other.num, other.den
        if not an or not bn:
            return ZERO_F
        if ad.is_one and bd.is_one:
            return FieldElement._raw(an * bn, ONE)
        if not bd.is_one:
            _, an, bd = cofactors(an, bd)
        if not ad.is_one:
            _, bn, ad = cofactors(bn, ad)
        return FieldElement._raw(an * bn, ad * bd)

    __rmul__ = __mul__

    def _mul_int(self, k):
        if not k or not self.num:
            return ZERO_F
        if self.den.is_one:
            return FieldElement._raw(self.num * k, ONE)
        g = _igcd(k, self.den.content())
        if g == 1:
            return FieldElement._raw(self.num * k, self.den)
        return FieldElement._raw(self.num * (k // g), self.den.exquo_ground(g))

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        n, d = self.den, self.num
        if d.lc() < 0:
            n, d = -n, -d
        return FieldElement._raw(n, d)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.den.is_one:
            return FieldElement._raw(self.num ** n, ONE)
        return FieldElement._raw(self.num ** n, self.den ** n)

    # -- comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.num == other.num and self.den == other.den
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_constant:
                h = hash(Fraction(self.num.ground, self.den.ground))
            else:
                h = hash((self.num, self.den))
            self._hash = h
        return h

    # -- printing -------------------------------------------------------------
    def __str__(self):
        num = _poly.to_str(self.num)
        if self.den.is_one:
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = _poly.to_str(self.den)
        if not self.den.is_ground:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"FieldElement({str(self)!r})"

    def monic_form(self):
        """``(numerator, denominator)`` as ``{exponents: Fraction}`` with grlex-monic denominator."""
        lc = self.den.lc_grlex()

        def conv(p):
            return {_poly.unpack(m): Fraction(c, lc) for m, c in p.terms.items()}

        return conv(self.num), conv(self.den)


def _coerce(x):
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement(x)
    return NotImplemented


ZERO_F = FieldElement._raw(ZERO, ONE)
ONE_F = FieldElement._raw(ONE, ONE)


def as_element(x):
    """Coerce ints, Fractions, generator names and FieldElements."""
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, str):
        return FieldElement.parse(x)
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to FieldElement")
    return y


def gen(g):
    return FieldElement.gen(g)


def const(q):
    return FieldElement(Fraction(q))


def field_add(a, b):
    return a + b


def field_sub(a, b):
    return a - b


def field_mul(a, b):
    return a * b


def field_div(a, b):
    return a / b


def is_rational_constant(a):
    """True iff ``a`` lies in Q."""
    return a.is_constant


def support(a):
    """Generators occurring in the canonical form of ``a``."""
    return a.support()


def fsum(elements):
    """Sum of field elements, merging numerators over shared denominators first."""
    groups = {}
    for e in elements:
        if not e.num:
            continue
        d = e.den
        acc = groups.get(d)
        groups[d] = e.num if acc is None else acc + e.num
    total = ZERO_F
    for d, n in groups.items():
        if n:
            total = total + FieldElement.from_polys(n, d)
    return total


# -- linear algebra -------------------------------------------------------------
@dataclass(frozen=True)
class LinearSolution:
    """Outcome of :func:`solve_linear_system`.

    ``solution`` is ``None`` exactly when the system is inconsistent.
    """

    consistent: bool
    solution: tuple
    kernel_basis: tuple
    pivots: tuple

    @property
    def rank(self):
        return len(self.pivots)


class RowReduction:
    """Reduced row echelon form of a matrix together with the row transform.

    Pivot rule: scan columns left to right; the pivot of a column is the first
    nonzero entry among the rows not yet used.  ``transform @ A == rref``.
    The factorization can be reused for many right-hand sides.
    """

    def __init__(self, A):
        A = [[as_element(x) for x in row] for row in A]
        nrows = len(A)
        ncols = len(A[0]) if A else 0
        self.nrows, self.ncols = nrows, ncols
        R = [list(row) for row in A]
        E = [[ONE_F if i == j else ZERO_F for j in range(nrows)] for i in range(nrows)]
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            p = next((i for i in range(r, nrows) if R[i][c]), None)
            if p is None:
                continue
            if p != r:
                R[p], R[r] = R[r], R[p]
                E[p], E[r] = E[r], E[p]
            inv = R[r][c].inverse()
            if not inv.is_one:
                R[r] = [x * inv if x else x for x in R[r]]
                E[r] = [x * inv if x else x for x in E[r]]
            rcols = [j for j in range(c, ncols) if R[r][j]]
            ecols = [j for j in range(nrows) if E[r][j]]
            for i in range(nrows):
                if i == r:
                    continue
                f = R[i][c]
                if not f:
                    continue
                Ri, Ei, Rr, Er = R[i], E[i], R[r], E[r]
                for j in rcols:
                    Ri[j] = Ri[j] - f * Rr[j]
                for j in ecols:
                    Ei[j] = Ei[j] - f * Er[j]
            pivots.append(c)
            r += 1
        self.rref = R
        self.transform = E
        self.pivots = tuple(pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def kernel_basis(self):
        pivset = set(self.pivots)
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [ZERO_F] * self.ncols
            v[f] = ONE_F
            for r, pc in enumerate(self.pivots):
                if self.rref[r][f]:
                    v[pc] = -self.rref[r][f]
            basis.append(tuple(v))
        return tuple(basis)

    def reduce_rhs(self, rhs):
        rhs = [as_element(x) for x in rhs]
        if len(rhs) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        return [fsum(e * b for e, b in zip(row, rhs) if e and b) for row in self.transform]

    def solve(self, rhs):
        c = self.reduce_rhs(rhs)
        consistent = all(not x for x in c[self.rank:])
        kernel = self.kernel_basis()
        if not consistent:
            return LinearSolution(False, None, kernel, self.pivots)
        x = [ZERO_F] * self.ncols
        for r, pc in enumerate(self.pivots):
            x[pc] = c[r]
        return LinearSolution(True, tuple(x), kernel, self.pivots)


def solve_linear_system(A, rhs):
    """Solve ``A x = rhs`` exactly.

    Returns a :class:`LinearSolution`; free variables are set to zero in the
    particular solution and the kernel basis has one vector per free column
    (1 at that column).
    """
    if not A:
        return LinearSolution(True, (), (), ())
    return RowReduction(A).solve(rhs)


def mat_vec(A, v):
    return [fsum(a * x for a, x in zip(row, v) if a and x) for row in A]
