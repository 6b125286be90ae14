# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels; mirrors ``_kernels_py`` exactly."""
import heapq
from math import gcd

cdef Py_ssize_t SHIFT_C = 16
SHIFT = SHIFT_C
MASK = (1 << SHIFT_C) - 1
GUARD_BIT = 1 << (SHIFT_C - 1)


def add(dict a, dict b):
    cdef dict out
    cdef object m, c, v
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            del out[m]
    return out


def sub(dict a, dict b):
    cdef dict out = a.copy()
    cdef object m, c, v
    for m, c in b.items():
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            del out[m]
    return out


def neg(dict a):
    return {m: -c for m, c in a.items()}


def scale(dict a, object k):
    if not k:
        return {}
    return {m: c * k for m, c in a.items()}


def exquo_ground(dict a, object k):
    return {m: c // k for m, c in a.items()}


def mul_term(dict a, object mon, object k):
    if not k:
        return {}
    return {m + mon: c * k for m, c in a.items()}


def mul(dict a, dict b):
    cdef dict out = {}
    cdef list aitems, bitems
    cdef Py_ssize_t i, j, na, nb
    cdef object m1, c1, m2, c2, k, old
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    aitems = list(a.items())
    bitems = list(b.items())
    na = len(aitems)
    nb = len(bitems)
    for i in range(na):
        m1, c1 = <tuple>aitems[i]
        for j in range(nb):
            m2, c2 = <tuple>bitems[j]
            k = m1 + m2
            old = out.get(k)
            if old is None:
                out[k] = c1 * c2
            else:
                out[k] = old + c1 * c2
    return {m: c for m, c in out.items() if c}


def content(dict a):
    cdef object g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def max_norm(dict a):
    cdef object best = 0
    cdef object c, v
    for c in a.values():
        v = -c if c < 0 else c
        if v > best:
            best = v
    return best


def var_mask(dict a):
    cdef object r = 0
    for m in a:
        r |= m
    return r


cdef object _guard(Py_ssize_t nbits):
    cdef Py_ssize_t slots = (nbits + SHIFT_C - 1) // SHIFT_C + 1
    cdef Py_ssize_t k
    cdef object g = 0
    for k in range(slots):
        g |= GUARD_BIT << (SHIFT_C * k)
    return g


def divexact(dict f, dict g):
    """Return ``f / g`` if ``g`` divides ``f`` exactly in Z[t], else ``None``."""
    cdef object lm, lc, guard, m, c, qc, rem, qm, d, gc, k, old
    cdef list rest, heap
    cdef dict r, q
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return {}
    lm = max(g)
    lc = g[lm]
    rest = [(m - lm, c) for m, c in g.items() if m != lm]
    guard = _guard(max(max(f).bit_length(), lm.bit_length()))
    r = f.copy()
    heap = [-m for m in r]
    heapq.heapify(heap)
    q = {}
    heappop = heapq.heappop
    heappush = heapq.heappush
    while heap:
        m = -heappop(heap)
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
                heappush(heap, -k)
            else:
                r[k] = old - qc * gc
    return q


def evaluate(dict f, Py_ssize_t k, object xi):
    """Substitute the integer ``xi`` for generator slot ``k``."""
    cdef Py_ssize_t shift = SHIFT_C * k
    cdef list pows = [1]
    cdef dict out = {}
    cdef object m, c, key, old
    cdef Py_ssize_t e
    for m, c in f.items():
        e = (m >> shift) & MASK
        while len(pows) <= e:
            pows.append(pows[len(pows) - 1] * xi)
        key = m - ((<object>e) << shift)
        old = out.get(key)
        if old is None:
            out[key] = c * pows[e]
        else:
            out[key] = old + c * pows[e]
    return {m: c for m, c in out.items() if c}


def interpolate(dict h, object xi, Py_ssize_t k):
    """Inverse of ``evaluate`` via symmetric ``xi``-adic digits of each coefficient."""
    cdef Py_ssize_t shift = SHIFT_C * k
    cdef object half = xi // 2
    cdef dict out = {}
    cdef object m, c, d
    cdef Py_ssize_t i
    for m, c in h.items():
        i = 0
        while c:
            d = c % xi
            if d > half:
                d -= xi
            if d:
                out[m + ((<object>i) << shift)] = d
            c = (c - d) // xi
            i += 1
    return out
