# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython kernel for sparse multivariate polynomial arithmetic.

Mirror of ``_poly_py`` (see there for the key layout).  Keys are Python
ints (they can exceed 64 bits once the degree field is included), so the
speedup comes from compiled dict traversal and arithmetic dispatch
rather than raw C integer math.
"""

FIELD_BITS = 10
DEG_BITS = 16
MAX_DEGREE = 511

BACKEND = "cython"


def guard_mask(nvars):
    cdef int i
    m = 1 << (FIELD_BITS * nvars + DEG_BITS - 1)
    for i in range(nvars):
        m |= 1 << (FIELD_BITS * i + FIELD_BITS - 1)
    return m


def add(dict a, dict b, bint mod2):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = dict(a)
    for k, c in b.items():
        nc = out.get(k, 0) + c
        if mod2:
            nc &= 1
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def sub(dict a, dict b, bint mod2):
    cdef dict out = dict(a)
    for k, c in b.items():
        nc = out.get(k, 0) - c
        if mod2:
            nc &= 1
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def scale(dict a, c, bint mod2):
    if mod2:
        c &= 1
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    cdef dict out = {}
    for k, v in a.items():
        out[k] = v * c
    return out


def mul(dict a, dict b, bint mod2):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            nc = out.get(k, 0) + ca * cb
            if mod2:
                nc &= 1
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
    return out


def divexact(dict num, dict den, mask, bint mod2):
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    dk = max(den)
    dc = den[dk]
    cdef dict rem = dict(num)
    cdef dict quo = {}
    cdef list den_items = list(den.items())
    while rem:
        lk = max(rem)
        lc = rem[lk]
        if ((lk | mask) - dk) & mask != mask:
            return None
        if mod2:
            qc = 1
        else:
            if lc % dc:
                return None
            qc = lc // dc
        qk = lk - dk
        quo[qk] = qc
        for k, c in den_items:
            kk = qk + k
            nc = rem.get(kk, 0) - qc * c
            if mod2:
                nc &= 1
            if nc:
                rem[kk] = nc
            else:
                rem.pop(kk, None)
    return quo
