"""The three foam evaluation engines and the degree formula.

Unoriented SL(3): sum of Tait-coloring terms x^d / prod (x_i+x_j)^{chi_ij/2}
over the two-element field, cleared over a common denominator and
divided exactly.  GL(N): the signed Robert-Wagner style sum with
(x_i - x_j) denominators and relabeled dot polynomials.  Oriented SL(3):
surgery on seam circles against the dual bases (1, x, x^2) and
(-x^2, -x, -1), with sphere/torus and dotted-theta closed forms.
"""

from __future__ import annotations

import itertools

from .algebra import (
    InexactDivision,
    SymPoly,
    elementary_symmetric,
    exact_divide,
    is_symmetric,
)
from .coloring import (
    ColoringError,
    bicolored_surface,
    enumerate_gln_colorings,
    enumerate_sl3_colorings,
    unicolored_surface,
    positive_circle_count,
)
from .foam import ClosedFoam, FoamError


class EvalError(ValueError):
    pass


class ColoringTerm:
    """One coloring's contribution: numerator and denominator exponents."""

    __slots__ = ("numerator", "den_exps", "sign_exp")

    def __init__(self, numerator, den_exps, sign_exp=0):
        self.numerator = numerator
        self.den_exps = den_exps  # (i, j) -> chi_ij/2
        self.sign_exp = sign_exp


def _chi_half(foam, coloring, i, j):
    chi = bicolored_surface(foam, coloring, i, j).euler
    return chi // 2


def eval_sl3_term(foam: ClosedFoam, coloring) -> ColoringTerm:
    """<F, c> for a Tait coloring: x1^d1 x2^d2 x3^d3 over
    (x1+x2)^{chi12/2} (x1+x3)^{chi13/2} (x2+x3)^{chi23/2}, char 2."""
    d = [0, 0, 0]
    for fid, f in foam.facets.items():
        d[coloring[fid] - 1] += f.dots
    numerator = SymPoly.from_terms([(tuple(d), 1)], 3, 2)
    den = {}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        try:
            den[(i, j)] = _chi_half(foam, coloring, i, j)
        except ColoringError as exc:
            raise EvalError(str(exc)) from exc
    return ColoringTerm(numerator, den)


def _clear_terms(terms, pair_poly, npairs_vars, char):
    """Sum terms over the common clamped denominator and divide exactly.

    terms: list of ColoringTerm; pair_poly: (i, j) -> SymPoly factor.
    Returns the exact quotient polynomial.
    """
    if not terms:
        return SymPoly.zero(npairs_vars, char)
    pairs = sorted({p for t in terms for p in t.den_exps})
    mexp = {
        p: max(0, max(t.den_exps.get(p, 0) for t in terms)) for p in pairs
    }
    total = SymPoly.zero(npairs_vars, char)
    for t in terms:
        num = t.numerator
        if t.sign_exp % 2:
            num = num * (-1)
        for p in pairs:
            k = mexp[p] - t.den_exps.get(p, 0)
            if k:
                num = num * (pair_poly[p] ** k)
        total = total + num
    denom = SymPoly.one(npairs_vars, char)
    for p in pairs:
        if mexp[p]:
            denom = denom * (pair_poly[p] ** mexp[p])
    try:
        return exact_divide(total, denom)
    except InexactDivision as exc:
        raise EvalError("foam not admissible: inexact division") from exc


def _sl3_pair_polys():
    return {
        (i, j): SymPoly.variable(i - 1, 3, 2) + SymPoly.variable(j - 1, 3, 2)
        for i, j in ((1, 2), (1, 3), (2, 3))
    }


def eval_sl3_unoriented(foam: ClosedFoam) -> SymPoly:
    """<F>: the sum of <F, c> over Tait colorings, a symmetric polynomial
    over the two-element field."""
    parts = [foam.restrict(comp) for comp in foam.components()]
    result = SymPoly.one(3, 2)
    pair_poly = _sl3_pair_polys()
    for part in parts:
        terms = [
            eval_sl3_term(part, c) for c in enumerate_sl3_colorings(part)
        ]
        if not terms:
            return SymPoly.zero(3, 2)
        value = _clear_terms(terms, pair_poly, 3, 2)
        result = result * value
    if not is_symmetric(result):
        raise EvalError("foam not admissible: asymmetric evaluation")
    deg = foam_degree(foam)
    if result.degree2() is not None and result.degree2() != deg:
        raise EvalError("evaluation degree mismatch")
    return result


def eval0(foam: ClosedFoam) -> int:
    """Composite evaluation f0(<F>): 0 or 1 in the two-element field."""
    return eval_sl3_unoriented(foam).constant_term()


def foam_degree(foam: ClosedFoam, theory=None):
    """2 d(F) - (chi12 + chi13 + chi23), checked over every coloring;
    None when the foam has no admissible coloring."""
    theory = theory or foam.theory
    if theory == "gl":
        return _foam_degree_gl(foam)
    degs = set()
    for c in enumerate_sl3_colorings(foam):
        chis = sum(
            bicolored_surface(foam, c, i, j).euler
            for i, j in ((1, 2), (1, 3), (2, 3))
        )
        degs.add(2 * foam.total_dots() - chis)
    if not degs:
        return None
    if len(degs) > 1:
        raise EvalError("degree depends on the coloring; invalid foam")
    return degs.pop()


def _label_degree2(f) -> int:
    total = 0
    for lab in f.labels:
        d = lab.weighted_degree2(list(range(1, lab.n + 1)))
        if d is None:
            raise EvalError("zero dot label")
        total += d
    return total + 2 * f.dots


def _foam_degree_gl(foam: ClosedFoam):
    N = foam.N
    dot_deg = sum(_label_degree2(f) for f in foam.facets.values())
    degs = set()
    for c in enumerate_gln_colorings(foam, N):
        chis = 0
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                chis += bicolored_surface(foam, c, i, j).euler
        degs.add(dot_deg - chis)
    if not degs:
        return None
    if len(degs) > 1:
        raise EvalError("degree depends on the coloring; invalid foam")
    return degs.pop()


# ---------------------------------------------------------------------------
# GL(N)


def _relabel(label: SymPoly, colors, N: int) -> SymPoly:
    """Substitute the facet's symmetric variables by the x's of its colors."""
    xs = [SymPoly.variable(k - 1, N, 0) for k in sorted(colors)]
    values = []
    a = label.n
    for k in range(1, a + 1):
        ek = SymPoly.zero(N, 0)
        for combo in itertools.combinations(range(a), k):
            term = SymPoly.one(N, 0)
            for idx in combo:
                term = term * xs[idx]
            ek = ek + term
        values.append(ek)
    return label.evaluate_at(values)


def eval_gln_term(foam: ClosedFoam, coloring, N: int) -> ColoringTerm:
    num = SymPoly.one(N, 0)
    for fid, f in foam.facets.items():
        labels = list(f.labels)
        if f.dots:
            if f.thickness != 1:
                raise EvalError("integer dots need thickness-1 facets")
            e1 = SymPoly.variable(0, 1, 0)
            labels.append(e1**f.dots)
        for lab in labels:
            num = num * _relabel(lab, coloring[fid], N)
    den = {}
    s = 0
    for i in range(1, N + 1):
        chi = unicolored_surface(foam, coloring, i).euler
        s += i * (chi // 2)
        for j in range(i + 1, N + 1):
            den[(i, j)] = _chi_half(foam, coloring, i, j)
            s += positive_circle_count(foam, coloring, i, j)
    return ColoringTerm(num, den, sign_exp=s)


def eval_gln(foam: ClosedFoam, N: int) -> SymPoly:
    """Robert-Wagner style evaluation: a symmetric integer polynomial."""
    problems = foam.validate()
    if problems:
        raise EvalError("invalid foam: " + "; ".join(problems))
    pair_poly = {
        (i, j): SymPoly.variable(i - 1, N, 0) - SymPoly.variable(j - 1, N, 0)
        for i in range(1, N + 1)
        for j in range(i + 1, N + 1)
    }
    result = SymPoly.one(N, 0)
    for comp in foam.components():
        part = foam.restrict(comp)
        terms = [
            eval_gln_term(part, c, N)
            for c in enumerate_gln_colorings(part, N)
        ]
        if not terms:
            return SymPoly.zero(N, 0)
        result = result * _clear_terms(terms, pair_poly, N, 0)
    if not is_symmetric(result):
        raise EvalError("foam not admissible: asymmetric GL evaluation")
    deg = foam_degree(foam, "gl")
    if result.degree2() is not None and result.degree2() != deg:
        raise EvalError("GL evaluation degree mismatch")
    return result


# ---------------------------------------------------------------------------
# oriented SL(3)


def _epsilon(a, b, c) -> int:
    """Trace of x1^a x2^b x3^c on the degree-six part of the flag
    cohomology: +1 on cyclic shuffles of (0,1,2), -1 on the reversed
    ones, 0 otherwise."""
    if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        return 1
    if (a, b, c) in ((0, 2, 1), (2, 1, 0), (1, 0, 2)):
        return -1
    return 0


def eval_oriented_sl3(foam: ClosedFoam) -> int:
    """Evaluate a vertex-free oriented SL(3) foam by neck-cutting."""
    if foam.vertices:
        raise EvalError("oriented evaluator requires vertex-free foam")
    for s in foam.seams.values():
        if s.kind != "circle":
            raise EvalError("oriented evaluator requires circle seams only")
    total = 1
    for comp in foam.components():
        part = foam.restrict(comp)
        total *= _eval_oriented_component(part)
        if total == 0:
            return 0
    return total


def _eval_oriented_component(foam: ClosedFoam) -> int:
    # cuts: one per (seam, side); facet data: genus and dot budget
    cuts_by_facet = {fid: [] for fid in foam.facets}
    seam_cuts = {}
    for sid in sorted(foam.seams):
        s = foam.seams[sid]
        cut_ids = []
        for k, fid in enumerate(s.sides):
            cut = (sid, k)
            cuts_by_facet[fid].append(cut)
            cut_ids.append(cut)
        seam_cuts[sid] = cut_ids
    base = 1
    targets = {}
    for fid, f in foam.facets.items():
        b = len(cuts_by_facet[fid])
        if (2 - b - f.euler_open) % 2:
            raise EvalError(f"facet {fid}: no closed orientable shape")
        g = (2 - b - f.euler_open) // 2
        if g < 0:
            raise EvalError(f"facet {fid}: negative genus")
        base *= (-1) ** (b + 1) * (-3) ** g
        # the sphere left after all cuts must carry exactly two dots
        targets[fid] = 2 - f.dots - 2 * g
    # enumerate per-facet compositions of the leftover dot budget
    facet_ids = sorted(foam.facets)
    options = []
    for fid in facet_ids:
        k = len(cuts_by_facet[fid])
        t = targets[fid]
        opts = [
            parts
            for parts in itertools.product((0, 1, 2), repeat=k)
            if sum(parts) == t
        ]
        if not opts:
            return 0
        options.append(opts)
    total = 0
    for combo in itertools.product(*options):
        jdots = {}
        for fid, parts in zip(facet_ids, combo):
            for cut, part in zip(cuts_by_facet[fid], parts):
                jdots[cut] = 2 - part  # theta-side dots
        val = 1
        for sid in sorted(foam.seams):
            s = foam.seams[sid]
            js = [jdots[c] for c in seam_cuts[sid]]
            if s.orient:
                val *= _epsilon(js[0], js[1], js[2])
            else:
                val *= _epsilon(js[0], js[2], js[1])
            if val == 0:
                break
        total += val
    return base * total


# ---------------------------------------------------------------------------
# Kempe cancellation check (the integrality mechanism, run directly)


def kempe_classes(foam: ClosedFoam, i, j):
    """Partition of Tait colorings into (i,j)-Kempe equivalence classes."""
    from .coloring import fij_components, kempe_move

    colorings = list(enumerate_sl3_colorings(foam))
    index = {_ckey(c): k for k, c in enumerate(colorings)}
    seen = [False] * len(colorings)
    classes = []
    for k, c in enumerate(colorings):
        if seen[k]:
            continue
        cls = []
        stack = [k]
        seen[k] = True
        while stack:
            cur = stack.pop()
            cls.append(colorings[cur])
            for comp in fij_components(foam, colorings[cur], i, j):
                nb = index[_ckey(kempe_move(foam, colorings[cur], i, j, comp))]
                if not seen[nb]:
                    seen[nb] = True
                    stack.append(nb)
        classes.append(cls)
    return classes


def _ckey(coloring):
    return tuple(sorted(coloring.items()))


def kempe_class_clears_pair(foam: ClosedFoam, cls, i, j) -> bool:
    """Check that the partial sum over one Kempe class has no (x_i+x_j)
    denominator once cleared: the cleared numerator must be divisible by
    the full clamped power of (x_i+x_j)."""
    terms = [eval_sl3_term(foam, c) for c in cls]
    pair_poly = _sl3_pair_polys()
    pairs = sorted({p for t in terms for p in t.den_exps})
    mexp = {p: max(0, max(t.den_exps.get(p, 0) for t in terms)) for p in pairs}
    total = SymPoly.zero(3, 2)
    for t in terms:
        num = t.numerator
        for p in pairs:
            k = mexp[p] - t.den_exps.get(p, 0)
            if k:
                num = num * (pair_poly[p] ** k)
        total = total + num
    target = pair_poly[(i, j)] ** mexp.get((i, j), 0)
    try:
        exact_divide(total, target)
        return True
    except InexactDivision:
        return False
