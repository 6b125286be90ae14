"""Pure-Python sparse polynomial kernels.

Polynomials are ``dict`` objects mapping a packed monomial to a nonzero
``int`` coefficient.  A packed monomial stores the exponent of generator
``k`` in bits ``[SHIFT*k, SHIFT*(k+1))`` so that monomial multiplication is
integer addition and comparing packed ints is a lex order with the
highest-index generator most significant.

The compiled twin ``_kernels_c`` (built from ``_kernels.pyx``) exposes the
same functions with the same semantics.
"""
import heapq
from math import gcd

SHIFT = 16
MASK = (1 << SHIFT) - 1
GUARD_BIT = 1 << (SHIFT - 1)


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            del out[m]
    return out


def sub(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            del out[m]
    return out


def neg(a):
    return {m: -c for m, c in a.items()}


def scale(a, k):
    if not k:
        return {}
    return {m: c * k for m, c in a.items()}


def exquo_ground(a, k):
    return {m: c // k for m, c in a.items()}


def mul_term(a, mon, k):
    if not k:
        return {}
    return {m + mon: c * k for m, c in a.items()}


def mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    out = {}
    get = out.get
    bitems = list(b.items())
    for m1, c1 in a.items():
        for m2, c2 in bitems:
            k = m1 + m2
            out[k] = get(k, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def content(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def max_norm(a):
    return max(abs(c) for c in a.values()) if a else 0


def var_mask(a):
    r = 0
    for m in a:
        r |= m
    return r


def _guard(nbits):
    slots = (nbits + SHIFT - 1) // SHIFT + 1
    g = 0
    for k in range(slots):
        g |= GUARD_BIT << (SHIFT * k)
    return g


def divexact(f, g):
    """Return ``f / g`` if ``g`` divides ``f`` exactly in Z[t], else ``None``."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return {}
    lm = max(g)
    lc = g[lm]
    rest = [(m - lm, c) for m, c in g.items() if m != lm]
    guard = _guard(max(max(f).bit_length(), lm.bit_length()))
    r = dict(f)
    heap = [-m for m in r]
    heapq.heapify(heap)
    q = {}
    while heap:
        m = -heapq.heappop(heap)
        c = r.pop(m, 0)
        if not c:
            continue
        if ((m | guard) - lm) & guard != guard:
            return None
        qc, rem = divmod(c, lc)
        if rem:
            return None
        qm = m - lm
        q[qm] = qc
        for d, gc in rest:
            k = m + d
            old = r.get(k)
            if old is None:
                r[k] = -qc * gc
                heapq.heappush(heap, -k)
            else:
                v = old - qc * gc
                r[k] = v
    return q


def evaluate(f, k, xi):
    """Substitute the integer ``xi`` for generator slot ``k``."""
    shift = SHIFT * k
    pows = [1]
    out = {}
    get = out.get
    for m, c in f.items():
        e = (m >> shift) & MASK
        while len(pows) <= e:
            pows.append(pows[-1] * xi)
        key = m - (e << shift)
        out[key] = get(key, 0) + c * pows[e]
    return {m: c for m, c in out.items() if c}


def interpolate(h, xi, k):
    """Inverse of ``evaluate`` via symmetric ``xi``-adic digits of each coefficient."""
    shift = SHIFT * k
    half = xi // 2
    out = {}
    for m, c in h.items():
        i = 0
        while c:
            d = c % xi
            if d > half:
                d -= xi
            if d:
                out[m + (i << shift)] = d
            c = (c - d) // xi
            i += 1
    return out
