"""Colorings of foams: Tait colorings, GL(N) subset colorings, bicolored
and unicolored surfaces, singular-circle signs, Kempe moves."""

from __future__ import annotations

import itertools

from .foam import ClosedFoam, FoamError
from .web import _natkey


class ColoringError(ValueError):
    pass


def _facet_order(foam: ClosedFoam):
    return sorted(foam.facets, key=_natkey)


def _seams_by_facet(foam: ClosedFoam):
    by_facet = {f: [] for f in foam.facets}
    for s in foam.seams.values():
        for fid in set(s.sides):
            by_facet[fid].append(s)
    return by_facet


def enumerate_sl3_colorings(foam: ClosedFoam):
    """Yield each Tait coloring (facet -> color in {1,2,3}) once, in
    lexicographic facet-id/color order."""
    order = _facet_order(foam)
    by_facet = _seams_by_facet(foam)
    color = {}

    def seam_ok(s):
        cols = [color.get(f) for f in s.sides]
        known = [c for c in cols if c is not None]
        return len(set(known)) == len(known)

    def rec(i):
        if i == len(order):
            yield dict(color)
            return
        fid = order[i]
        for c in (1, 2, 3):
            color[fid] = c
            if all(seam_ok(s) for s in by_facet[fid]):
                yield from rec(i + 1)
            del color[fid]

    yield from rec(0)


def count_tait_colorings_foam(foam: ClosedFoam) -> int:
    return sum(1 for _ in enumerate_sl3_colorings(foam))


def enumerate_gln_colorings(foam: ClosedFoam, N: int):
    """Yield all subset colorings satisfying the flow rule
    c(thick) = c(thin1) | c(thin2), disjointly."""
    order = _facet_order(foam)
    by_facet = _seams_by_facet(foam)
    for fid in order:
        if foam.facets[fid].thickness > N:
            return
    choices = {
        fid: [frozenset(s) for s in itertools.combinations(
            range(1, N + 1), foam.facets[fid].thickness)]
        for fid in order
    }
    color = {}

    def seam_ok(s):
        c1, c2, ck = (color.get(f) for f in s.sides)
        if c1 is not None and c2 is not None:
            if c1 & c2:
                return False
            if ck is not None and (c1 | c2) != ck:
                return False
        for thin in (c1, c2):
            if thin is not None and ck is not None and not thin <= ck:
                return False
        return True

    def rec(i):
        if i == len(order):
            yield dict(color)
            return
        fid = order[i]
        for subset in choices[fid]:
            color[fid] = subset
            if all(seam_ok(s) for s in by_facet[fid]):
                yield from rec(i + 1)
            del color[fid]

    yield from rec(0)


# ---------------------------------------------------------------------------
# surfaces


class SurfaceSummary:
    __slots__ = ("euler", "facets", "seams", "vertices")

    def __init__(self, euler, facets, seams, vertices):
        self.euler = euler
        self.facets = facets
        self.seams = seams
        self.vertices = vertices

    def __repr__(self):
        return f"SurfaceSummary(euler={self.euler}, facets={sorted(self.facets)})"


def _surface(foam: ClosedFoam, included_facets, *, always_all_seams=False):
    """Assemble a surface from included facets with the interior-cell
    formula; asserts that every touched seam has exactly two included
    facet sides."""
    seams = set()
    for s in foam.seams.values():
        hits = sum(1 for fid in s.sides if fid in included_facets)
        if always_all_seams:
            seams.add(s.id)
            continue
        if hits == 0:
            continue
        if hits != 2:
            raise ColoringError(
                f"seam {s.id}: {hits} included sides; not embeddable/invalid foam"
            )
        seams.add(s.id)
    vertices = {
        v.id
        for v in foam.vertices.values()
        if any(sid in seams for sid, _ in v.seam_ends)
    }
    euler = sum(foam.facets[f].euler_open for f in included_facets)
    euler += sum(-1 for sid in seams if foam.seams[sid].kind == "interval")
    euler += len(vertices)
    if euler % 2:
        raise ColoringError("surface with odd Euler characteristic")
    return SurfaceSummary(euler, set(included_facets), seams, vertices)


def bicolored_surface(foam: ClosedFoam, coloring, i, j) -> SurfaceSummary:
    """F_ij(c): facets colored i or j (SL(3)) or carrying exactly one of
    i, j (GL(N))."""
    if i >= j:
        raise ColoringError("need i < j")
    sample = next(iter(coloring.values())) if coloring else None
    if isinstance(sample, frozenset) or isinstance(sample, set):
        included = {
            f for f, cs in coloring.items() if (i in cs) != (j in cs)
        }
        return _surface(foam, included)
    included = {f for f, c in coloring.items() if c in (i, j)}
    # for Tait-colored foams every seam carries all three colors, so all
    # seams and vertices lie on the bicolored surface
    return _surface(foam, included, always_all_seams=True)


def unicolored_surface(foam: ClosedFoam, coloring, i) -> SurfaceSummary:
    included = {f for f, cs in coloring.items() if i in cs}
    return _surface(foam, included)


# ---------------------------------------------------------------------------
# singular circles (GL(N) signs)


def _singular_seams(foam: ClosedFoam, coloring, i, j):
    """Seams whose two thin facets split {i, j}."""
    out = {}
    for s in foam.seams.values():
        c1, c2 = coloring[s.sides[0]], coloring[s.sides[1]]
        has_i = i in c1 and j not in c1 and j in c2 and i not in c2
        has_j = j in c1 and i not in c1 and i in c2 and j not in c2
        if has_i or has_j:
            out[s.id] = 0 if has_i else 1  # index of the i-carrying thin side
    return out


def positive_circle_count(foam: ClosedFoam, coloring, i, j) -> int:
    """Number of positive singular circles of F_ij(c): circles along
    which the counterclockwise order of sheets, looking along the
    traversal, is (i-thin, j-thin, double) for i < j."""
    if i >= j:
        raise ColoringError("need i < j")
    singular = _singular_seams(foam, coloring, i, j)
    # pair singular seam ends through vertices
    link = {}  # (seam, end) -> (seam, end) through a vertex
    for v in foam.vertices.values():
        ends = [(sid, e) for sid, e in v.seam_ends if sid in singular]
        if len(ends) not in (0, 2):
            raise ColoringError(
                f"vertex {v.id}: {len(ends)} singular seam ends"
            )
        if len(ends) == 2:
            link[ends[0]] = ends[1]
            link[ends[1]] = ends[0]
    count = 0
    seen = set()
    for sid in sorted(singular, key=_natkey):
        if sid in seen:
            continue
        s = foam.seams[sid]
        if s.kind == "circle":
            seen.add(sid)
            if _is_positive(foam, coloring, sid, forward=True, i=i, j=j):
                count += 1
            continue
        # walk the interval chain out of end 1; an open end means the
        # whole chain carries no circle
        chain = [(sid, True)]
        cur, exit_end = sid, 1
        closed = False
        while True:
            nxt = link.get((cur, exit_end))
            if nxt is None:
                break
            nsid, nend = nxt
            if nsid == sid and nend == 0:
                closed = True
                break
            if any(nsid == x for x, _ in chain):
                raise ColoringError("singular chain self-intersects")
            chain.append((nsid, nend == 0))
            cur, exit_end = nsid, 1 - nend
        if not closed:
            # walk the other way just to mark the rest of the open chain
            cur, exit_end = sid, 0
            while True:
                nxt = link.get((cur, exit_end))
                if nxt is None or any(nxt[0] == x for x, _ in chain):
                    break
                chain.append((nxt[0], None))
                cur, exit_end = nxt[0], 1 - nxt[1]
            seen.update(x for x, _ in chain)
            continue
        seen.update(x for x, _ in chain)
        verdicts = {
            _is_positive(foam, coloring, s2, forward=fwd, i=i, j=j)
            for s2, fwd in chain
        }
        if len(verdicts) != 1:
            raise ColoringError("orientation data inconsistent")
        if verdicts.pop():
            count += 1
    return count


def _is_positive(foam, coloring, sid, forward, i, j):
    s = foam.seams[sid]
    thin_i = 0 if (i in coloring[s.sides[0]]) else 1
    thin_j = 1 - thin_i
    # perceived ccw cyclic order along the traversal direction
    order = [0, 1, 2] if s.orient else [0, 2, 1]
    if not forward:
        order = [order[0], order[2], order[1]]
    # positive iff the cyclic successor of the i-thin is the j-thin and
    # then the double facet
    pos_of = {side: k for k, side in enumerate(order)}
    return (pos_of[thin_j] - pos_of[thin_i]) % 3 == 1 and (
        (pos_of[2] - pos_of[thin_j]) % 3 == 1
    )


# ---------------------------------------------------------------------------
# Kempe moves


def fij_components(foam: ClosedFoam, coloring, i, j):
    """Connected components of the bicolored surface F_ij(c), as sets of
    facet ids, labeled by their smallest facet id."""
    surf = bicolored_surface(foam, coloring, i, j)
    parent = {f: f for f in surf.facets}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sid in surf.seams:
        s = foam.seams[sid]
        inc = [f for f in s.sides if f in surf.facets]
        for a, b in zip(inc, inc[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    comps = {}
    for f in surf.facets:
        comps.setdefault(find(f), set()).add(f)
    return {min(fs, key=_natkey): fs for fs in comps.values()}


def kempe_move(foam: ClosedFoam, coloring, i, j, component):
    """Swap colors i <-> j on the named component of F_ij(c)."""
    comps = fij_components(foam, coloring, i, j)
    if component not in comps:
        raise ColoringError(f"no component {component} of F_{i}{j}")
    swap = {i: j, j: i}
    out = dict(coloring)
    for f in comps[component]:
        out[f] = swap.get(out[f], out[f])
    return out
