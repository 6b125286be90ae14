"""Sparse multivariate polynomials over Z in the generators t0, t1, ...

This is the ring layer under :mod:`folnf.field`.  Terms live in a ``dict``
keyed by packed monomials (see :mod:`folnf._kernels_py`); the hot loops are
delegated to the kernel backend chosen in :mod:`folnf._backend`.

Two gcd routes are provided:

* :func:`gcd_prs` -- recursive content/primitive-part scheme with a primitive
  pseudo-remainder sequence in the top generator.  Always succeeds.
* :func:`cofactors` -- tries the heuristic gcd (evaluation at large integers,
  integer gcd, symmetric interpolation, verification by exact division) and
  falls back to :func:`gcd_prs`.  A heuristic answer is only accepted after
  it divides both inputs, so both routes return the same normalized gcd.
"""
from math import gcd as igcd, isqrt

from ._backend import kernels as K

SHIFT = K.SHIFT
MASK = K.MASK
MAX_EXPONENT = (1 << (SHIFT - 1)) - 1

HEU_GCD_MAX = 6


class HeuristicGCDFailed(Exception):
    pass


def pack(exponents):
    """Pack an exponent sequence ``(e0, e1, ...)`` into a monomial key."""
    m = 0
    for k, e in enumerate(exponents):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        m |= e << (SHIFT * k)
    return m


def unpack(m):
    """Inverse of :func:`pack`; trailing zero exponents are dropped."""
    out = []
    while m:
        out.append(m & MASK)
        m >>= SHIFT
    return tuple(out)


def grlex_key(m):
    """Sort key for graded lex with t0 > t1 > t2 > ..."""
    e = unpack(m)
    return (sum(e), e)


def _slots(mask):
    k = 0
    out = []
    while mask:
        if mask & MASK:
            out.append(k)
        mask >>= SHIFT
        k += 1
    return out


def _top_slot(mask):
    return (mask.bit_length() - 1) // SHIFT


class Poly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}
        self._hash = None

    @classmethod
    def const(cls, n):
        return cls({0: n} if n else {})

    @classmethod
    def gen(cls, k):
        return cls({1 << (SHIFT * k): 1})

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    @property
    def is_ground(self):
        t = self.terms
        return not t or (len(t) == 1 and 0 in t)

    @property
    def is_one(self):
        t = self.terms
        return len(t) == 1 and t.get(0) == 1

    @property
    def ground(self):
        """Integer value of a ground polynomial."""
        return self.terms.get(0, 0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(frozenset(self.terms.items()))
        return h

    def __repr__(self):
        return f"Poly({to_str(self)})"

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return Poly(K.add(self.terms, other.terms))

    def __sub__(self, other):
        return Poly(K.sub(self.terms, other.terms))

    def __neg__(self):
        return Poly(K.neg(self.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(K.scale(self.terms, other))
        return Poly(K.mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exquo_ground(self, n):
        return Poly(K.exquo_ground(self.terms, n))

    def divexact(self, other):
        """``self / other`` when the division is exact, else ``None``."""
        q = K.divexact(self.terms, other.terms)
        return None if q is None else Poly(q)

    def __floordiv__(self, other):
        q = self.divexact(other)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return q

    # -- structure --------------------------------------------------------
    def lm(self):
        return max(self.terms)

    def lc(self):
        """Leading coefficient in the packed (lex, highest generator first) order."""
        return self.terms[max(self.terms)]

    def lc_grlex(self):
        return self.terms[max(self.terms, key=grlex_key)]

    def content(self):
        return K.content(self.terms)

    def primitive(self):
        c = K.content(self.terms)
        if c in (0, 1):
            return c, self
        return c, Poly(K.exquo_ground(self.terms, c))

    def normal(self):
        """Associate with positive leading coefficient."""
        if self.terms and self.lc() < 0:
            return -self
        return self

    def mask(self):
        return K.var_mask(self.terms)

    def slots(self):
        """Indices of generators that occur."""
        return _slots(K.var_mask(self.terms))

    def max_norm(self):
        return K.max_norm(self.terms)

    def degree(self):
        return max((sum(unpack(m)) for m in self.terms), default=-1)

    def degree_in(self, k):
        shift = SHIFT * k
        return max(((m >> shift) & MASK for m in self.terms), default=-1)

    def coeffs_in(self, k):
        """Split as a univariate polynomial in generator ``k``: ``{e: Poly}``."""
        shift = SHIFT * k
        parts = {}
        for m, c in self.terms.items():
            e = (m >> shift) & MASK
            parts.setdefault(e, {})[m - (e << shift)] = c
        return {e: Poly(t) for e, t in parts.items()}

    def evaluate(self, k, xi):
        return Poly(K.evaluate(self.terms, k, xi))


ZERO = Poly.const(0)
ONE = Poly.const(1)


# -- printing ---------------------------------------------------------------
def _monomial_str(m):
    parts = []
    for k, e in enumerate(unpack(m)):
        if e == 1:
            parts.append(f"t{k}")
        elif e > 1:
            parts.append(f"t{k}^{e}")
    return "*".join(parts)


def to_str(p):
    """Render in grlex-descending order using the coefficient grammar."""
    if not p.terms:
        return "0"
    out = []
    for m in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[m]
        mon = _monomial_str(m)
        a = abs(c)
        if not mon:
            body = str(a)
        elif a == 1:
            body = mon
        else:
            body = f"{a}*{mon}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- gcd ----------------------------------------------------------------------
def _split(f, k):
    shift = SHIFT * k
    parts = {}
    for m, c in f.items():
        e = (m >> shift) & MASK
        parts.setdefault(e, {})[m - (e << shift)] = c
    return parts


def _normal_terms(f):
    if f and f[max(f)] < 0:
        return K.neg(f)
    return f


def _gcd_prs_terms(f, g):
    if not f:
        return _normal_terms(g)
    if not g:
        return _normal_terms(f)
    fmask, gmask = K.var_mask(f), K.var_mask(g)
    if not (fmask | gmask):
        return {0: igcd(f[0], g[0])}
    k = _main_slot(f, g, fmask, gmask)
    cf, pf = _content_pp(f, k)
    cg, pg = _content_pp(g, k)
    c = _gcd_prs_terms(cf, cg)
    shift = SHIFT * k

    def deg(p):
        return max((m >> shift) & MASK for m in p)

    if deg(pf) == 0 or deg(pg) == 0:
        return c
    a, b = (pf, pg) if deg(pf) >= deg(pg) else (pg, pf)
    while True:
        r = _prem(a, b, k)
        if not r:
            h = b
            break
        if deg(r) == 0:
            return c
        a, b = b, _content_pp(r, k)[1]
    h = _content_pp(h, k)[1]
    return _normal_terms(K.mul(c, h))


def _main_slot(f, g, fmask, gmask):
    only = _slots((fmask | gmask) & ~(fmask & gmask))
    if only:
        return only[0]
    best = None
    for k in _slots(fmask):
        shift = SHIFT * k
        d = max(max((m >> shift) & MASK for m in f), max((m >> shift) & MASK for m in g))
        if best is None or d < best[0]:
            best = (d, k)
    return best[1]


def _content_pp(f, k):
    """Content w.r.t. generator ``k`` (a polynomial in lower generators) and primitive part."""
    parts = sorted(_split(f, k).values(), key=len)
    c = parts[0]
    for p in parts[1:]:
        if len(c) == 1 and 0 in c and abs(c[0]) == 1:
            break
        c = _gcd_prs_terms(c, p)
    c = _normal_terms(c)
    if len(c) == 1 and c.get(0) == 1:
        return c, _normal_terms(f)
    pp = K.divexact(f, c)
    return c, _normal_terms(pp)


def _prem(a, b, k):
    """Pseudo-remainder of ``a`` by ``b`` in generator ``k`` (up to a unit of the coefficient ring)."""
    shift = SHIFT * k
    bparts = _split(b, k)
    db = max(bparts)
    lcb = bparts[db]
    r = a
    while r:
        rparts = _split(r, k)
        dr = max(rparts)
        if dr < db:
            break
        lcr = rparts[dr]
        r = K.sub(K.mul(r, lcb), K.mul(K.mul_term(lcr, (dr - db) << shift, 1), b))
    return r


def gcd_prs(f, g):
    """Normalized gcd via the recursive content / primitive PRS scheme."""
    return Poly(_gcd_prs_terms(f.terms, g.terms))


def _heugcd(f, g):
    """Heuristic gcd on term dicts; returns ``(h, f/h, g/h)`` or raises."""
    fm, gm = K.var_mask(f), K.var_mask(g)
    if not fm or not gm:
        return _ground_cofactors(f, g)
    c = igcd(K.content(f), K.content(g))
    if c != 1:
        f = K.exquo_ground(f, c)
        g = K.exquo_ground(g, c)
    k = _top_slot(fm | gm)
    f_norm = K.max_norm(f)
    g_norm = K.max_norm(g)
    B = 2 * min(f_norm, g_norm) + 29
    xi = max(min(B, 99 * isqrt(B)),
             2 * min(f_norm // abs(f[max(f)]), g_norm // abs(g[max(g)])) + 4)
    for _ in range(HEU_GCD_MAX):
        ff = K.evaluate(f, k, xi)
        gg = K.evaluate(g, k, xi)
        if ff and gg:
            h, cff, cfg = _heugcd(ff, gg)
            h = _primitive_normal(K.interpolate(h, xi, k))
            qf = K.divexact(f, h)
            if qf is not None:
                qg = K.divexact(g, h)
                if qg is not None:
                    return K.scale(h, c), qf, qg
            cff = _normal_terms(K.interpolate(cff, xi, k))
            if cff:
                h = K.divexact(f, cff)
                if h is not None and h:
                    qg = K.divexact(g, h)
                    if qg is not None:
                        return _finish(h, cff, qg, c)
            cfg = _normal_terms(K.interpolate(cfg, xi, k))
            if cfg:
                h = K.divexact(g, cfg)
                if h is not None and h:
                    qf = K.divexact(f, h)
                    if qf is not None:
                        return _finish(h, qf, cfg, c)
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    raise HeuristicGCDFailed


def _finish(h, cf, cg, c):
    if h[max(h)] < 0:
        h, cf, cg = K.neg(h), K.neg(cf), K.neg(cg)
    return K.scale(h, c), cf, cg


def _primitive_normal(h):
    h = _normal_terms(h)
    c = K.content(h)
    if c > 1:
        h = K.exquo_ground(h, c)
    return h


def _ground_cofactors(f, g):
    if not K.var_mask(f):
        a = f.get(0, 0)
        h = igcd(a, K.content(g)) if g else abs(a)
        if not h:
            return {}, {}, {}
        return {0: h}, ({0: a // h} if a else {}), K.exquo_ground(g, h)
    h, cg, cf = _ground_cofactors(g, f)
    return h, cf, cg


def _monomial_cofactors(f, g):
    # f is a single term
    (m, c), = f.items()
    slots = _slots(m)
    mins = {k: (m >> (SHIFT * k)) & MASK for k in slots}
    for gm in g:
        for k in slots:
            e = (gm >> (SHIFT * k)) & MASK
            if e < mins[k]:
                mins[k] = e
    hm = 0
    for k, e in mins.items():
        hm |= e << (SHIFT * k)
    hc = igcd(c, K.content(g))
    h = {hm: hc}
    return h, {m - hm: c // hc}, {gm - hm: gc // hc for gm, gc in g.items()}


def cofactors(f, g):
    """Return ``(h, f/h, g/h)`` with ``h`` the normalized gcd of ``f`` and ``g``."""
    ft, gt = f.terms, g.terms
    if not ft or not gt:
        if not ft and not gt:
            return ZERO, ZERO, ZERO
        h = _normal_terms(ft or gt)
        one = ONE if h is (ft or gt) else Poly.const(-1)
        return (Poly(h), ZERO, one) if not ft else (Poly(h), one, ZERO)
    if len(ft) == 1 and 0 in ft or len(gt) == 1 and 0 in gt:
        h, cf, cg = _ground_cofactors(ft, gt)
    elif ft == gt:
        h = _normal_terms(ft)
        s = {0: 1 if h is ft else -1}
        h, cf, cg = h, s, s
    elif len(ft) == 1:
        h, cf, cg = _monomial_cofactors(ft, gt)
    elif len(gt) == 1:
        h, cg, cf = _monomial_cofactors(gt, ft)
    else:
        try:
            h, cf, cg = _heugcd(ft, gt)
        except HeuristicGCDFailed:
            h = _gcd_prs_terms(ft, gt)
            cf, cg = K.divexact(ft, h), K.divexact(gt, h)
    return Poly(h), Poly(cf), Poly(cg)


def gcd(f, g):
    return cofactors(f, g)[0]
