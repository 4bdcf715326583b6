"""Exact polynomial arithmetic.

Multivariate polynomials over the integers or the two-element field
(``SymPoly``), Laurent polynomials in q (``LaurentQ``), symmetric
function constructors and exact division.  Everything is immutable and
exact; there is no floating point anywhere.

Grading convention: a variable x_i carries degree 2 and the elementary
symmetric e_k carries degree 2k, so internal exponent sums are half the
homological degree.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ._kernel import (
    DEG_BITS,
    FIELD_BITS,
    MAX_DEGREE,
    guard_mask,
    kadd,
    kdivexact,
    kmul,
    kscale,
    ksub,
)


class InexactDivision(ArithmeticError):
    """Raised when exact_divide is asked for a non-multiple."""


# ---------------------------------------------------------------------------
# packed exponent keys


@lru_cache(maxsize=None)
def _masks(n: int):
    return guard_mask(n)


def _pack(exps, n: int) -> int:
    deg = 0
    key = 0
    shift = FIELD_BITS * (n - 1)
    for e in exps:
        deg += e
        key |= e << shift
        shift -= FIELD_BITS
    if deg > MAX_DEGREE:
        raise OverflowError("exponent degree exceeds kernel capacity")
    return key | (deg << (FIELD_BITS * n))


def _unpack(key: int, n: int) -> tuple:
    mask = (1 << FIELD_BITS) - 1
    return tuple(
        (key >> (FIELD_BITS * (n - 1 - i))) & mask for i in range(n)
    )


def _key_degree(key: int, n: int) -> int:
    return key >> (FIELD_BITS * n)


class SymPoly:
    """Sparse polynomial in x_1..x_n over Z (char=0) or F_2 (char=2)."""

    __slots__ = ("n", "char", "terms")

    def __init__(self, n: int, char: int = 0, terms: dict | None = None):
        if char not in (0, 2):
            raise ValueError("coefficient domain must be Z (0) or F2 (2)")
        self.n = n
        self.char = char
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int, char: int = 0) -> "SymPoly":
        return cls(n, char, {})

    @classmethod
    def const(cls, c: int, n: int, char: int = 0) -> "SymPoly":
        if char:
            c &= 1
        if c == 0:
            return cls(n, char, {})
        return cls(n, char, {_pack((0,) * n, n): c})

    @classmethod
    def one(cls, n: int, char: int = 0) -> "SymPoly":
        return cls.const(1, n, char)

    @classmethod
    def variable(cls, i: int, n: int, char: int = 0) -> "SymPoly":
        if not 0 <= i < n:
            raise IndexError("variable index out of range")
        exps = [0] * n
        exps[i] = 1
        return cls(n, char, {_pack(exps, n): 1})

    @classmethod
    def from_terms(cls, items, n: int, char: int = 0) -> "SymPoly":
        """Build from (exponent tuple, coefficient) pairs."""
        terms: dict = {}
        for exps, c in items:
            if len(exps) != n:
                raise ValueError("exponent vector length mismatch")
            k = _pack(exps, n)
            nc = terms.get(k, 0) + c
            if char:
                nc &= 1
            if nc:
                terms[k] = nc
            else:
                terms.pop(k, None)
        return cls(n, char, terms)

    # -- inspection ----------------------------------------------------

    def items(self):
        """Yield (exponent tuple, coefficient), graded-lex descending."""
        n = self.n
        for k in sorted(self.terms, reverse=True):
            yield _unpack(k, n), self.terms[k]

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get(_pack((0,) * self.n, self.n), 0)

    def is_constant(self) -> bool:
        return all(_key_degree(k, self.n) == 0 for k in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {_key_degree(k, self.n) for k in self.terms}
        return len(degs) <= 1

    def degree2(self) -> int | None:
        """Homological degree (2 per x-exponent); None for 0 polynomial."""
        if not self.terms:
            return None
        return 2 * max(_key_degree(k, self.n) for k in self.terms)

    def weighted_degree2(self, weights) -> int | None:
        """Degrees when variable i has weight weights[i] (in units of 2)."""
        if not self.terms:
            return None
        degs = set()
        for exps, _ in self.items():
            degs.add(2 * sum(w * e for w, e in zip(weights, exps)))
        if len(degs) > 1:
            raise ValueError("polynomial is not weighted-homogeneous")
        return degs.pop()

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "SymPoly"):
        if self.n != other.n or self.char != other.char:
            raise ValueError("mixed polynomial rings")

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check(other)
        return SymPoly(self.n, self.char, kadd(self.terms, other.terms, self.char == 2))

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        self._check(other)
        return SymPoly(self.n, self.char, ksub(self.terms, other.terms, self.char == 2))

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.n, self.char, kscale(self.terms, -1, self.char == 2))

    def __mul__(self, other):
        if isinstance(other, int):
            return SymPoly(self.n, self.char, kscale(self.terms, other, self.char == 2))
        self._check(other)
        da = self.degree2()
        db = other.degree2()
        if da is not None and db is not None and (da + db) // 2 > MAX_DEGREE:
            raise OverflowError("product degree exceeds kernel capacity")
        return SymPoly(self.n, self.char, kmul(self.terms, other.terms, self.char == 2))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymPoly":
        if k < 0:
            raise ValueError("negative power")
        out = SymPoly.one(self.n, self.char)
        base = self
        while k:
            if k & 1:
                out = out * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymPoly)
            and self.n == other.n
            and self.char == other.char
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.char, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ------------------------------------------------------

    def reduce_mod2(self) -> "SymPoly":
        """Coefficientwise reduction to the two-element field."""
        if self.char == 2:
            return self
        return SymPoly(self.n, 2, {k: 1 for k, c in self.terms.items() if c & 1})

    def lift_to_z(self) -> "SymPoly":
        """Reinterpret F2 coefficients as 0/1 integers."""
        if self.char == 0:
            return self
        return SymPoly(self.n, 0, dict(self.terms))

    def permute_variables(self, perm) -> "SymPoly":
        """Apply x_i -> x_perm[i]."""
        n = self.n
        out: dict = {}
        for exps, c in self.items():
            ne = [0] * n
            for i, e in enumerate(exps):
                ne[perm[i]] = e
            k = _pack(ne, n)
            out[k] = out.get(k, 0) + c
        return SymPoly(n, self.char, {k: c for k, c in out.items() if c})

    def evaluate_at(self, values: list) -> "SymPoly":
        """Substitute variable i -> values[i] (SymPoly in a common ring)."""
        if len(values) != self.n:
            raise ValueError("need one value per variable")
        if not values:
            raise ValueError("no target ring")
        target_n = values[0].n
        char = values[0].char
        out = SymPoly.zero(target_n, char)
        for exps, c in self.items():
            term = SymPoly.const(c, target_n, char)
            for v, e in zip(values, exps):
                if e:
                    term = term * (v**e)
            out = out + term
        return out

    def subs_int(self, values) -> int:
        """Evaluate at integer arguments."""
        total = 0
        for exps, c in self.items():
            v = c
            for x, e in zip(values, exps):
                v *= x**e
            total += v
        if self.char:
            total &= 1
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, c in self.items():
            mono = "*".join(
                f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                for i, e in enumerate(exps)
                if e
            )
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append("-" + mono)
            else:
                bits.append(f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")

    def to_json(self) -> list:
        """JSON form: graded-lex sorted list of {exponents, coeff}."""
        return [
            {"exponents": list(exps), "coeff": c} for exps, c in self.items()
        ]

    @classmethod
    def from_json(cls, data, n: int, char: int = 0) -> "SymPoly":
        return cls.from_terms(
            ((tuple(t["exponents"]), t["coeff"]) for t in data), n, char
        )


# ---------------------------------------------------------------------------
# operations


def exact_divide(p: SymPoly, q: SymPoly) -> SymPoly:
    """Return r with r*q == p; raise InexactDivision otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p._check(q)
    quo = kdivexact(p.terms, q.terms, _masks(p.n), p.char == 2)
    if quo is None:
        raise InexactDivision("inexact division")
    return SymPoly(p.n, p.char, quo)


def is_symmetric(p: SymPoly) -> bool:
    """True iff p is invariant under all adjacent transpositions."""
    n = p.n
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if p.permute_variables(perm) != p:
            return False
    return True


def elementary_symmetric(k: int, n: int, char: int = 0) -> SymPoly:
    """e_k in n variables; e_0 = 1."""
    if k < 0 or k > n:
        raise ValueError("index out of range")
    items = []
    for combo in itertools.combinations(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] = 1
        items.append((tuple(exps), 1))
    return SymPoly.from_terms(items, n, char)


def complete_homogeneous(k: int, n: int, char: int = 0) -> SymPoly:
    """h_k = sum of all degree-k monomials in n variables."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return SymPoly.one(0, char) if k == 0 else SymPoly.zero(0, char)
    items = []
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(k + n - 1 - prev - 1)
        items.append((tuple(exps), 1))
    return SymPoly.from_terms(items, n, char)


def vandermonde(n: int, char: int = 0) -> SymPoly:
    """prod_{i<j} (x_i - x_j)."""
    out = SymPoly.one(n, char)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (
                SymPoly.variable(i, n, char) - SymPoly.variable(j, n, char)
            )
    return out


def check_partition(lam) -> tuple:
    lam = tuple(lam)
    if any(a < 0 for a in lam):
        raise ValueError("partition parts must be nonnegative")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError("partition must be weakly decreasing")
    return lam


def schur(lam, n: int, char: int = 0) -> SymPoly:
    """Schur polynomial via the bialternant quotient."""
    lam = check_partition(lam)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    if len(lam) > n:
        raise ValueError("partition has more parts than variables")
    full = list(lam) + [0] * (n - len(lam))
    alpha = [full[j] + n - 1 - j for j in range(n)]
    items = []
    for perm in itertools.permutations(range(n)):
        sgn = _perm_sign(perm)
        exps = [0] * n
        for i in range(n):
            exps[i] = alpha[perm[i]]
        items.append((tuple(exps), sgn))
    numer = SymPoly.from_terms(items, n, 0)
    result = exact_divide(numer, vandermonde(n, 0))
    return result.reduce_mod2() if char == 2 else result


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def apply_f0(p: SymPoly):
    """Base change E_i -> 0: the degree-0 coefficient of a symmetric p."""
    if not is_symmetric(p):
        raise ValueError("apply_f0 requires a symmetric polynomial")
    return p.constant_term()


def reduce_mod2(p: SymPoly) -> SymPoly:
    return p.reduce_mod2()


# ---------------------------------------------------------------------------
# Laurent polynomials in q


class LaurentQ:
    """Laurent polynomial in q with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "LaurentQ":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentQ":
        return cls({0: 1})

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "LaurentQ":
        return cls({e: c})

    def __add__(self, other: "LaurentQ") -> "LaurentQ":
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, 0) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return LaurentQ(out)

    def __sub__(self, other: "LaurentQ") -> "LaurentQ":
        return self + LaurentQ({e: -c for e, c in other.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentQ({e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                nc = out.get(e, 0) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return LaurentQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentQ":
        if k < 0:
            raise ValueError("negative power")
        out = LaurentQ.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentQ) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def at_one(self) -> int:
        """Evaluate at q = 1."""
        return sum(self.terms.values())

    def bar(self) -> "LaurentQ":
        """q -> q^{-1}."""
        return LaurentQ({-e: c for e, c in self.terms.items()})

    def is_palindromic(self) -> bool:
        return self == self.bar()

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                bits.append(str(c))
                continue
            qp = "q" if e == 1 else f"q^{e}"
            if c == 1:
                bits.append(qp)
            elif c == -1:
                bits.append("-" + qp)
            else:
                bits.append(f"{c}*{qp}")
        return " + ".join(bits).replace("+ -", "- ")

    def to_json(self) -> list:
        return [
            {"qexp": e, "coeff": self.terms[e]} for e in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, data) -> "LaurentQ":
        return cls({t["qexp"]: t["coeff"] for t in data})


def laurent_divexact(p: LaurentQ, q: LaurentQ) -> LaurentQ:
    """Exact division of Laurent polynomials; raises on a remainder."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero")
    if p.is_zero():
        return LaurentQ.zero()
    rem = dict(p.terms)
    dk = max(q.terms)
    dc = q.terms[dk]
    quo: dict = {}
    while rem:
        lk = max(rem)
        lc = rem[lk]
        if lc % dc:
            raise InexactDivision("inexact Laurent division")
        qc = lc // dc
        qk = lk - dk
        if quo.get(qk):
            raise InexactDivision("inexact Laurent division")
        quo[qk] = qc
        for e, c in q.terms.items():
            ee = qk + e
            nc = rem.get(ee, 0) - qc * c
            if nc:
                rem[ee] = nc
            else:
                rem.pop(ee, None)
        if rem and max(rem) >= lk:
            raise InexactDivision("inexact Laurent division")
    return LaurentQ(quo)


def quantum_integer(n: int) -> LaurentQ:
    """[n] = q^{n-1} + q^{n-3} + ... + q^{-(n-1)}."""
    if n < 0:
        raise ValueError("quantum integer needs n >= 0")
    return LaurentQ({n - 1 - 2 * i: 1 for i in range(n)})


def quantum_binomial(n: int, k: int) -> LaurentQ:
    """[n choose k] via exact Laurent division."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    numer = LaurentQ.one()
    denom = LaurentQ.one()
    for i in range(1, k + 1):
        numer = numer * quantum_integer(n - i + 1)
        denom = denom * quantum_integer(i)
    return laurent_divexact(numer, denom)
