"""Pure-Python kernel for sparse multivariate polynomial arithmetic.

Terms are stored as ``dict`` mapping a packed exponent key to a nonzero
integer coefficient.  A key packs the total degree (16-bit field, high
bits) followed by the per-variable exponents (10-bit fields, variable 0
highest), so plain integer comparison of keys is graded-lex order.  The
top bit of each field is a guard bit used for borrow detection, which
caps every exponent (and the total degree) at 511.

The compiled twin of this module is ``_poly_cy``; both expose the same
functions and are selected in ``_kernel``.
"""

FIELD_BITS = 10
DEG_BITS = 16
MAX_DEGREE = 511

BACKEND = "python"


def guard_mask(nvars):
    """Borrow-guard mask for keys with `nvars` exponent fields."""
    m = 1 << (FIELD_BITS * nvars + DEG_BITS - 1)
    for i in range(nvars):
        m |= 1 << (FIELD_BITS * i + FIELD_BITS - 1)
    return m


def add(a, b, mod2):
    """Sum of two term dicts."""
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        nc = out.get(k, 0) + c
        if mod2:
            nc &= 1
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def sub(a, b, mod2):
    """Difference of two term dicts."""
    out = dict(a)
    for k, c in b.items():
        nc = out.get(k, 0) - c
        if mod2:
            nc &= 1
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def scale(a, c, mod2):
    """Multiply every coefficient by the integer `c`."""
    if mod2:
        c &= 1
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    return {k: v * c for k, v in a.items()}


def mul(a, b, mod2):
    """Product of two term dicts.  Keys add componentwise."""
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            nc = get(k, 0) + ca * cb
            if mod2:
                nc &= 1
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
    return out


def divexact(num, den, mask, mod2):
    """Exact single-divisor long division in graded-lex order.

    Returns the quotient dict with ``quotient * den == num``, or None when
    the division is inexact.  `mask` is ``guard_mask(nvars)`` for the keys.
    """
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    dk = max(den)
    dc = den[dk]
    rem = dict(num)
    quo = {}
    den_items = list(den.items())
    while rem:
        lk = max(rem)
        lc = rem[lk]
        if (lk | mask) - dk & mask != mask:
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
