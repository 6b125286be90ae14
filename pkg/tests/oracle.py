"""Independent sympy oracles shared by the tests.

Nothing here calls into the package's arithmetic: values cross over only
through canonical strings.
"""
import sympy as sp
from sympy import QQ, field, ring

NGENS = 8
TSYMS = sp.symbols(f"t0:{NGENS}")
K, *TK = field(",".join(f"t{k}" for k in range(NGENS)), QQ)
R2, XR, YR = ring("x,y", K)
_LOCALS = {f"t{k}": TSYMS[k] for k in range(NGENS)}


def to_sympy(value):
    """FieldElement (or its string) -> sympy expression."""
    return sp.sympify(str(value).replace("^", "**"), locals=_LOCALS)


def to_k(value):
    return K.from_expr(to_sympy(value)) if str(value) != "0" else K.zero


def k_to_str_expr(value):
    return sp.sympify(value.as_expr())


def jet_to_ring(jet):
    return R2({(i, j): to_k(c) for (i, j), c in jet.items()}) if len(jet) else R2.zero


def trunc(p, N):
    return R2({m: c for m, c in p.items() if sum(m) <= N})


def compose(p, U, V, N):
    """Truncated ``p(U, V)`` in the ring oracle."""
    out = R2.zero
    up, vp = [R2.one], [R2.one]
    for (i, j), c in p.items():
        while len(up) <= i:
            up.append(trunc(up[-1] * U, N))
        while len(vp) <= j:
            vp.append(trunc(vp[-1] * V, N))
        out += trunc(c * up[i] * vp[j], N)
    return out


def pullback(P, Q, U, V, N):
    Pc, Qc = compose(P, U, V, N), compose(Q, U, V, N)
    newP = trunc(Pc * U.diff(XR) + Qc * V.diff(XR), N)
    newQ = trunc(Pc * U.diff(YR) + Qc * V.diff(YR), N)
    return newP, newQ


def equal_elements(a, b):
    """Equality of two expressions in Q(t) decided by sympy."""
    return sp.cancel(to_sympy(a) - to_sympy(b)) == 0
