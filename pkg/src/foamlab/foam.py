"""Combinatorial closed foams, foams with boundary, and movies.

A closed foam is a stratified 2-complex: facets (with an open Euler
characteristic, a thickness and dots), seams (circles or intervals with
exactly three facet sides and an orientation flag), and vertices (four
seam ends, the cone on K4).  Movies build foams with boundary from a
web slice by elementary events; compilation tracks facets through time
and recovers every facet's euler_open by counting interior cells.
"""

from __future__ import annotations

import re

from .algebra import SymPoly
from .web import Web, WebError, _natkey, parse_web, serialize_web


class FoamError(ValueError):
    pass


# ---------------------------------------------------------------------------
# static foam model


class Facet:
    __slots__ = ("id", "thickness", "euler_open", "dots", "labels")

    def __init__(self, fid, thickness=1, euler_open=0, dots=0, labels=None):
        self.id = fid
        self.thickness = thickness
        self.euler_open = euler_open
        self.dots = dots  # plain dot count (SL(3) theories)
        self.labels = list(labels or [])  # SymPoly in e_1..e_thickness (GL(N))


class Seam:
    __slots__ = ("id", "kind", "sides", "ends", "orient")

    def __init__(self, sid, kind, sides, ends=None, orient=True):
        self.id = sid
        self.kind = kind  # "circle" | "interval"
        self.sides = tuple(sides)  # (thin1, thin2, thick) facet ids
        self.ends = tuple(ends) if ends else None
        self.orient = orient


class FoamVertex:
    __slots__ = ("id", "seam_ends")

    def __init__(self, vid, seam_ends):
        self.id = vid
        self.seam_ends = list(seam_ends)  # [(seam id, end index)] * 4


class ClosedFoam:
    def __init__(self, theory="sl3u", N=None):
        self.theory = theory  # "sl3u" | "sl3o" | "gl"
        self.N = N
        self.facets = {}
        self.seams = {}
        self.vertices = {}

    def add_facet(self, fid, **kw):
        self.facets[fid] = Facet(fid, **kw)
        return self.facets[fid]

    def add_seam(self, sid, kind, sides, ends=None, orient=True):
        self.seams[sid] = Seam(sid, kind, sides, ends, orient)
        return self.seams[sid]

    def add_vertex(self, vid, seam_ends):
        self.vertices[vid] = FoamVertex(vid, seam_ends)
        return self.vertices[vid]

    def total_dots(self):
        return sum(f.dots for f in self.facets.values())

    def components(self):
        """Connected components (sets of facet ids) through shared seams."""
        parent = {f: f for f in self.facets}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for s in self.seams.values():
            a = s.sides[0]
            for b in s.sides[1:]:
                union(a, b)
        comps = {}
        for f in self.facets:
            comps.setdefault(find(f), set()).add(f)
        return list(comps.values())

    def restrict(self, facet_ids):
        """Sub-foam spanned by the given facets (a union of components)."""
        sub = ClosedFoam(self.theory, self.N)
        for fid in facet_ids:
            f = self.facets[fid]
            sub.facets[fid] = Facet(fid, f.thickness, f.euler_open, f.dots, f.labels)
        for sid, s in self.seams.items():
            if any(x in facet_ids for x in s.sides):
                if not all(x in facet_ids for x in s.sides):
                    raise FoamError("restriction cuts through a seam")
                sub.seams[sid] = Seam(sid, s.kind, s.sides, s.ends, s.orient)
        for vid, v in self.vertices.items():
            if any(se[0] in sub.seams for se in v.seam_ends):
                sub.vertices[vid] = FoamVertex(vid, v.seam_ends)
        return sub

    def validate(self):
        """Report-style validation; returns a list of violation strings."""
        problems = []
        for s in self.seams.values():
            if len(s.sides) != 3:
                problems.append(f"seam {s.id}: needs exactly three sides")
                continue
            for fid in s.sides:
                if fid not in self.facets:
                    problems.append(f"seam {s.id}: unknown facet {fid}")
            if self.theory == "gl" and all(f in self.facets for f in s.sides):
                t1, t2, tk = (self.facets[f].thickness for f in s.sides)
                if t1 + t2 != tk:
                    problems.append(
                        f"seam {s.id}: thickness additivity {t1}+{t2}!={tk}"
                    )
            if s.kind == "interval":
                if not s.ends:
                    problems.append(f"seam {s.id}: interval needs end vertices")
                else:
                    for end, vid in enumerate(s.ends):
                        if vid not in self.vertices:
                            problems.append(
                                f"seam {s.id}: dangling end {end} ({vid})"
                            )
                        elif (s.id, end) not in self.vertices[vid].seam_ends:
                            problems.append(
                                f"seam {s.id}: end {end} not registered at {vid}"
                            )
            elif s.ends:
                problems.append(f"seam {s.id}: circle seam with end vertices")
        if self.theory != "gl":
            for f in self.facets.values():
                if f.thickness != 1:
                    problems.append(f"facet {f.id}: SL(3) thickness must be 1")
        for f in self.facets.values():
            for lab in f.labels:
                if lab.n != f.thickness:
                    problems.append(
                        f"facet {f.id}: label arity {lab.n} != thickness"
                    )
        for v in self.vertices.values():
            if len(v.seam_ends) != 4:
                problems.append(f"vertex {v.id}: needs exactly four seam ends")
            for sid, end in v.seam_ends:
                s = self.seams.get(sid)
                if s is None or s.kind != "interval":
                    problems.append(f"vertex {v.id}: bad seam end ({sid},{end})")
                elif not s.ends or s.ends[end] != v.id:
                    problems.append(
                        f"vertex {v.id}: seam {sid} end {end} does not return"
                    )
        return problems

    def add_dot(self, fid, label=None, count=1):
        """Append dots (or a GL(N) label polynomial) to a facet."""
        if fid not in self.facets:
            raise FoamError(f"no facet {fid}")
        f = self.facets[fid]
        if label is None:
            f.dots += count
        else:
            if label.n != f.thickness:
                raise FoamError(
                    f"label arity {label.n} != thickness {f.thickness}"
                )
            f.labels.append(label)


# ---------------------------------------------------------------------------
# foam text format


def serialize_foam(foam: ClosedFoam) -> str:
    lines = []
    head = f"THEORY {foam.theory}"
    if foam.theory == "gl":
        head += f" N={foam.N}"
    lines.append(head)
    for fid in sorted(foam.facets, key=_natkey):
        f = foam.facets[fid]
        rec = f"FACET {fid} thickness={f.thickness} chi_open={f.euler_open}"
        if f.labels:
            rec += " dots=" + ";".join(_label_str(p) for p in f.labels)
        else:
            rec += f" dots={f.dots}"
        lines.append(rec)
    for sid in sorted(foam.seams, key=_natkey):
        s = foam.seams[sid]
        rec = f"SEAM {sid} kind={s.kind} sides={','.join(s.sides)}"
        if s.ends:
            rec += f" ends={','.join(s.ends)}"
        rec += f" orient={'+' if s.orient else '-'}"
        lines.append(rec)
    for vid in sorted(foam.vertices, key=_natkey):
        v = foam.vertices[vid]
        rec = "VERTEX {} seams={}".format(
            vid, ",".join(f"{sid}:{end}" for sid, end in v.seam_ends)
        )
        lines.append(rec)
    return "\n".join(lines) + "\n"


def parse_foam(text: str) -> ClosedFoam:
    foam = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0].upper()
        opts = dict(re.findall(r"(\w+)=([^\s]+)", line))
        try:
            if kind == "THEORY":
                theory = parts[1]
                if theory not in ("sl3u", "sl3o", "gl"):
                    raise FoamError(f"unknown theory {theory}")
                foam = ClosedFoam(theory, int(opts["N"]) if theory == "gl" else None)
            elif kind == "FACET":
                if foam is None:
                    raise FoamError("THEORY line must come first")
                fid = parts[1]
                th = int(opts.get("thickness", 1))
                dots_raw = opts.get("dots", "0")
                dots, labels = 0, []
                if re.fullmatch(r"\d+", dots_raw):
                    dots = int(dots_raw)
                else:
                    labels = [_parse_label(s, th) for s in dots_raw.split(";") if s]
                foam.add_facet(
                    fid,
                    thickness=th,
                    euler_open=int(opts.get("chi_open", 0)),
                    dots=dots,
                    labels=labels,
                )
            elif kind == "SEAM":
                sid = parts[1]
                foam.add_seam(
                    sid,
                    opts["kind"],
                    opts["sides"].split(","),
                    ends=opts["ends"].split(",") if "ends" in opts else None,
                    orient=opts.get("orient", "+") == "+",
                )
            elif kind == "VERTEX":
                vid = parts[1]
                ends = []
                for item in opts["seams"].split(","):
                    sid, end = item.split(":")
                    ends.append((sid, int(end)))
                foam.add_vertex(vid, ends)
            else:
                raise FoamError(f"unknown record {parts[0]}")
        except (KeyError, IndexError, ValueError) as exc:
            if isinstance(exc, FoamError):
                raise FoamError(f"line {ln}: {exc}") from None
            raise FoamError(f"line {ln}: {exc}") from exc
    if foam is None:
        raise FoamError("no THEORY record")
    return foam


def _label_str(p: SymPoly) -> str:
    bits = []
    for exps, c in p.items():
        mono = "*".join(
            f"e{i + 1}^{e}" if e > 1 else f"e{i + 1}"
            for i, e in enumerate(exps)
            if e
        )
        if not mono:
            bits.append(str(c))
        elif c == 1:
            bits.append(mono)
        else:
            bits.append(f"{c}*{mono}")
    return "+".join(bits).replace("+-", "-") if bits else "0"


def _parse_label(s: str, arity: int) -> SymPoly:
    """Parse labels like ``e1^2*e2+3*e1`` into a SymPoly in e_1..e_arity."""
    out = SymPoly.zero(arity, 0)
    s = s.replace("-", "+-")
    for term in s.split("+"):
        term = term.strip()
        if not term:
            continue
        coeff = 1
        exps = [0] * arity
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            m = re.fullmatch(r"(-?\d+)", factor)
            if m:
                coeff *= int(m.group(1))
                continue
            m = re.fullmatch(r"-?e(\d+)(?:\^(\d+))?", factor)
            if not m:
                raise FoamError(f"bad dot label factor {factor!r}")
            if factor.startswith("-"):
                coeff = -coeff
            idx = int(m.group(1)) - 1
            if not 0 <= idx < arity:
                raise FoamError(f"label variable e{idx + 1} out of arity {arity}")
            exps[idx] += int(m.group(2) or 1)
        out = out + SymPoly.from_terms([(tuple(exps), coeff)], arity, 0)
    return out




# ---------------------------------------------------------------------------
# movies


class _UF:
    def __init__(self):
        self.parent = {}

    def make(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
        return self.find(a)


SITE_EDGE = "edge"
SITE_CIRCLE = "circle"


class Movie:
    """A time-ordered sequence of elementary web moves.

    Events: birth/death of circles, facet saddles, zips and unzips
    (seam creation/removal), triangle collapse/expand (the only source
    of foam vertices), dots, identity steps.  Ids for created elements
    may be given explicitly; play() freshens the rest in place.
    """

    def __init__(self, initial: Web | None = None, events=None, declared_final=None):
        self.initial = initial if initial is not None else Web()
        self.events = list(events or [])
        self.declared_final = declared_final

    def copy(self) -> "Movie":
        import copy as _copy

        return Movie(
            self.initial.copy(),
            _copy.deepcopy(self.events),
            self.declared_final.copy() if self.declared_final else None,
        )

    def birth(self, cid=None):
        self.events.append({"op": "birth", "circle": cid})
        return self

    def death(self, cid):
        self.events.append({"op": "death", "circle": cid})
        return self

    def dot(self, site, count=1, label=None):
        self.events.append(
            {"op": "dot", "site": tuple(site), "count": count, "label": label}
        )
        return self

    def identity(self):
        self.events.append({"op": "id"})
        return self

    def saddle(self, a, b=None, ids=None):
        """Self-saddle (one strand pinched into two) when b is None."""
        self.events.append(
            {"op": "saddle", "a": tuple(a), "b": tuple(b) if b else None,
             "ids": ids or {}}
        )
        return self

    def zip(self, a, b=None, ids=None):
        """Self-zip when b is None: the strand creases, growing a digon
        (edge) or a second and third parallel strand (circle -> theta)."""
        self.events.append(
            {"op": "zip", "a": tuple(a), "b": tuple(b) if b else None,
             "ids": ids or {}}
        )
        return self

    def unzip(self, m, also=None, ids=None):
        self.events.append({"op": "unzip", "m": m, "also": also, "ids": ids or {}})
        return self

    def collapse(self, edges, ids=None):
        self.events.append({"op": "collapse", "edges": list(edges), "ids": ids or {}})
        return self

    def expand(self, vertex, ids=None, order=None):
        self.events.append(
            {"op": "expand", "vertex": vertex, "ids": ids or {}, "order": order}
        )
        return self


class Playback:
    """Movie playback state: tracked facets, seam curves, interior cells."""

    def __init__(self):
        self.web = None
        self.fuf = _UF()  # facet tracks
        self.ftrack = {}  # live strand id -> facet token
        self.cells = {}  # facet token | ("seam", tok) | "vertices" -> count
        self.dots = {}
        self.labels = {}
        self.vuf = _UF()  # seam curves over vertex-track tokens
        self.vtok = {}  # live web vertex -> track token
        self.seam_sides = {}  # vertex track token -> (f1, f2, f3)
        self.seam_endpoints = {}  # vertex track token -> endpoint kinds
        self.foam_vertices = []  # (token, [(vertex-track token, start|end)])
        self._counter = 0

    def fresh_token(self, prefix):
        self._counter += 1
        return f"{prefix}{self._counter}"

    def facet_of(self, strand_id):
        return self.fuf.find(self.ftrack[strand_id])

    def new_facet(self, strand_id):
        tok = self.fresh_token("F")
        self.fuf.make(tok)
        self.ftrack[strand_id] = tok
        return tok

    def cell(self, token, delta):
        self.cells[token] = self.cells.get(token, 0) + delta

    def new_vertex_track(self, vid, born_at):
        if vid in self.vtok:
            raise FoamError(f"web vertex id {vid} reused")
        tok = self.fresh_token("S")
        self.vtok[vid] = tok
        self.vuf.make(tok)
        self.seam_endpoints[tok] = []
        if born_at in ("vertex", "boundary"):
            self.seam_endpoints[tok].append(born_at)
        return tok


def play(movie: Movie) -> Playback:
    """Run a movie, validating every event (errors name the event index).

    Interior-cell bookkeeping: +1 per edge created, -1 per web vertex
    created, plus per-event locus cells (caps, pinch points, seam
    apexes, cut arcs); this telescopes to the alternating cell count of
    the swept complex.
    """
    pb = Playback()
    w = movie.initial.copy()
    w.validate()
    pb.web = w
    for eid in w.ethick:
        pb.new_facet(eid)
        pb.cell(pb.facet_of(eid), +1)
    for cid in w.circles:
        pb.new_facet(cid)
    for vid in w.rot:
        tok = pb.new_vertex_track(vid, born_at="boundary")
        pb.cell(("seam", tok), -1)

    handlers = {
        "birth": _ev_birth,
        "death": _ev_death,
        "dot": _ev_dot,
        "id": _ev_id,
        "saddle": _ev_saddle,
        "zip": _ev_zip,
        "unzip": _ev_unzip,
        "collapse": _ev_collapse,
        "expand": _ev_expand,
    }
    for idx, ev in enumerate(movie.events):
        edges_before = set(w.ethick)
        verts_before = set(w.rot)
        try:
            handlers[ev["op"]](pb, w, ev)
            w.validate()
        except (WebError, FoamError, KeyError) as exc:
            raise FoamError(f"event {idx} ({ev.get('op')}): {exc}") from exc
        for eid in set(w.ethick) - edges_before:
            pb.cell(pb.facet_of(eid), +1)
        for vid in set(w.rot) - verts_before:
            pb.cell(("seam", pb.vuf.find(pb.vtok[vid])), -1)
    for vid in w.rot:
        pb.seam_endpoints[pb.vtok[vid]].append("boundary")
    if movie.declared_final is not None:
        diff = web_mismatch(w, movie.declared_final)
        if diff:
            raise FoamError(f"final slice mismatch: {diff}")
    return pb


def web_mismatch(w1: Web, w2: Web):
    """First structural difference between two labeled webs, or None."""
    if sorted(w1.circles) != sorted(w2.circles):
        return f"circles {sorted(w1.circles)} vs {sorted(w2.circles)}"
    for eid in sorted(set(w1.ethick) | set(w2.ethick), key=_natkey):
        if eid not in w1.ethick:
            return f"edge {eid} only on the second side"
        if eid not in w2.ethick:
            return f"edge {eid} only on the first side"
        if w1.ethick[eid] != w2.ethick[eid]:
            return f"edge {eid} thickness differs"
    if set(w1.rot) != set(w2.rot):
        return "vertex sets differ"
    for vid in w1.rot:
        r1, r2 = w1.rot[vid], w2.rot[vid]
        if len(r1) != len(r2):
            return f"vertex {vid} arity differs"
        if not any(r1[i:] + r1[:i] == r2 for i in range(len(r1) or 1)):
            return f"vertex {vid} rotation differs"
    return None


def _strand_exists(w: Web, site):
    kind, sid = site
    if kind == SITE_EDGE:
        return sid in w.ethick
    if kind == SITE_CIRCLE:
        return sid in w.circles
    return False


def _want(w: Web, ids: dict, name: str, prefix: str) -> str:
    if not ids.get(name):
        ids[name] = w.fresh(prefix)
    return ids[name]


# -- events ------------------------------------------------------------


def _ev_birth(pb, w, ev):
    cid = ev.get("circle") or w.fresh("c")
    ev["circle"] = cid
    w.add_circle(cid)
    pb.new_facet(cid)
    pb.cell(pb.facet_of(cid), +1)  # birth cap


def _ev_death(pb, w, ev):
    cid = ev["circle"]
    if cid not in w.circles:
        raise FoamError(f"no circle {cid} to die")
    pb.cell(pb.facet_of(cid), +1)  # death cap
    del w.circles[cid]


def _ev_dot(pb, w, ev):
    if not _strand_exists(w, ev["site"]):
        raise FoamError(f"dot site {ev['site']} missing")
    tok = pb.facet_of(ev["site"][1])
    if ev.get("label") is not None:
        pb.labels.setdefault(tok, []).append(ev["label"])
    else:
        pb.dots[tok] = pb.dots.get(tok, 0) + ev.get("count", 1)


def _ev_id(pb, w, ev):
    pass


def _cut_arcs(pb, site):
    """Junction cells for a strand pinched at one point."""
    kind, sid = site
    tok = pb.facet_of(sid)
    pb.cell(tok, -1 if kind == SITE_CIRCLE else -2)
    return tok


def _remove_strand(pb, w, site):
    kind, sid = site
    if kind == SITE_CIRCLE:
        del w.circles[sid]
    else:
        del w.ethick[sid], w.etail[sid]
    del pb.ftrack[sid]


def _ev_saddle(pb, w, ev):
    a, b = ev["a"], ev["b"]
    ids = ev.setdefault("ids", {})
    if not _strand_exists(w, a):
        raise FoamError(f"saddle site {a} missing")
    if b is None:
        # one strand pinched at a regular point and resected
        tok = pb.facet_of(a[1])
        kind, sid = a
        pb.cell(tok, -2 if kind == SITE_CIRCLE else -3)
        pb.cell(tok, +1)  # pinch point
        if kind == SITE_CIRCLE:
            del w.circles[sid]
            del pb.ftrack[sid]
            for key in ("r1", "r2"):
                out = _want(w, ids, key, "c")
                w.add_circle(out)
                pb.ftrack[out] = tok
            ev["_r_kinds"] = (SITE_CIRCLE, SITE_CIRCLE)
        else:
            pos = w.halfedge_pos()
            (v0, s0), (v1, s1) = pos[(sid, 0)], pos[(sid, 1)]
            th = w.ethick[sid]
            del w.ethick[sid], w.etail[sid]
            del pb.ftrack[sid]
            r1 = _want(w, ids, "r1", "e")
            r2 = _want(w, ids, "r2", "c")
            w.rot[v0][s0] = (r1, 0)
            w.rot[v1][s1] = (r1, 1)
            w.ethick[r1] = th
            w.etail[r1] = None
            pb.ftrack[r1] = tok
            w.add_circle(r2)
            pb.ftrack[r2] = tok
            ev["_r_kinds"] = (SITE_EDGE, SITE_CIRCLE)
        return
    if not _strand_exists(w, b):
        raise FoamError(f"saddle site {b} missing")
    if a == b:
        raise FoamError("self-saddle is written saddle(a) with b omitted")
    ta = _cut_arcs(pb, a)
    tb = _cut_arcs(pb, b)
    merged = pb.fuf.union(ta, tb)
    pb.cell(merged, +1)  # pinch point is a regular facet point
    (ka, ia), (kb, ib) = a, b
    if ka == SITE_CIRCLE and kb == SITE_CIRCLE:
        _remove_strand(pb, w, a)
        _remove_strand(pb, w, b)
        out = _want(w, ids, "r1", "c")
        w.add_circle(out)
        pb.ftrack[out] = merged
        ev["_r_kinds"] = (SITE_CIRCLE,)
    elif ka == SITE_CIRCLE or kb == SITE_CIRCLE:
        cid = ia if ka == SITE_CIRCLE else ib
        eid = ib if ka == SITE_CIRCLE else ia
        # absorbing a circle leaves the web combinatorics unchanged
        del w.circles[cid]
        del pb.ftrack[cid]
        pb.ftrack[eid] = merged
        ids["r1"] = eid
        ev["_r_kinds"] = (SITE_EDGE,)
    else:
        pos = w.halfedge_pos()
        (va, sa), (vaa, saa) = pos[(ia, 0)], pos[(ia, 1)]
        (vb, sb), (vbb, sbb) = pos[(ib, 0)], pos[(ib, 1)]
        th = w.ethick[ia]
        if th != w.ethick[ib]:
            raise FoamError("saddle strands of mismatched thickness")
        r1 = _want(w, ids, "r1", "e")
        r2 = _want(w, ids, "r2", "e")
        # r1 runs from a's end 0 to b's end 1; r2 from b's end 0 to a's end 1
        w.rot[va][sa] = (r1, 0)
        w.rot[vbb][sbb] = (r1, 1)
        w.rot[vb][sb] = (r2, 0)
        w.rot[vaa][saa] = (r2, 1)
        _remove_strand(pb, w, a)
        _remove_strand(pb, w, b)
        for nid in (r1, r2):
            w.ethick[nid] = th
            w.etail[nid] = None
            pb.ftrack[nid] = merged
        ev["_r_kinds"] = (SITE_EDGE, SITE_EDGE)


def _ev_zip(pb, w, ev):
    a, b = ev["a"], ev["b"]
    ids = ev.setdefault("ids", {})
    if not _strand_exists(w, a):
        raise FoamError(f"zip site {a} missing")
    if b is not None and not _strand_exists(w, b):
        raise FoamError(f"zip site {b} missing")
    if a[0] == SITE_EDGE and w.ethick[a[1]] != 1:
        raise FoamError("zip needs thickness-1 strands")
    v1 = _want(w, ids, "v1", "v")
    v2 = _want(w, ids, "v2", "v")
    m = _want(w, ids, "m", "e")
    if b is None:
        # self-zip: the strand creases along a new seam arc; two fresh
        # sheets (mid strand and membrane) grow between the crease lines
        tok = _cut_arcs(pb, a)
        apex = _seam_apex(pb, w, v1, v2)
        mid = _want(w, ids, "mid", "e")
        kind, sid = a
        w.add_vertex(v1)
        w.add_vertex(v2)
        if kind == SITE_CIRCLE:
            keep = _want(w, ids, "keep", "e")
            del w.circles[sid]
            del pb.ftrack[sid]
            w.ethick[keep] = 1
            w.etail[keep] = None
            pb.ftrack[keep] = tok
            w.rot[v1] = [(keep, 0), (mid, 0), (m, 0)]
            w.rot[v2] = [(m, 1), (mid, 1), (keep, 1)]
        else:
            e0 = _want(w, ids, "e0", "e")
            e1 = _want(w, ids, "e1", "e")
            pos = w.halfedge_pos()
            (u0, s0), (u1, s1) = pos[(sid, 0)], pos[(sid, 1)]
            w.rot[u0][s0] = (e0, 0)
            w.rot[u1][s1] = (e1, 1)
            del w.ethick[sid], w.etail[sid]
            del pb.ftrack[sid]
            for nid in (e0, e1):
                w.ethick[nid] = 1
                w.etail[nid] = None
                pb.ftrack[nid] = tok
            w.rot[v1] = [(e0, 1), (mid, 0), (m, 0)]
            w.rot[v2] = [(m, 1), (mid, 1), (e1, 0)]
        for nid in (m, mid):
            w.ethick[nid] = 1
            w.etail[nid] = None
            pb.new_facet(nid)
        _apply_rots(w, ev, (v1, v2))
        _record_seam_sides(pb, v1, v2, tok, pb.facet_of(mid), pb.facet_of(m))
    else:
        if a == b:
            raise FoamError("self-zip is written zip(a) with b omitted")
        if b[0] == SITE_EDGE and w.ethick[b[1]] != 1:
            raise FoamError("zip needs thickness-1 strands")
        ta = _cut_arcs(pb, a)
        tb = _cut_arcs(pb, b)
        apex = _seam_apex(pb, w, v1, v2)
        w.add_vertex(v1)
        w.add_vertex(v2)
        stubs_a = _subdivide(pb, w, a, v1, ids, ("a0", "a1"))
        stubs_b = _subdivide(pb, w, b, v2, ids, ("b0", "b1"))
        w.ethick[m] = 1
        w.etail[m] = None
        pb.new_facet(m)
        w.rot[v1] = [stubs_a[0], (m, 0), stubs_a[-1]]
        w.rot[v2] = [stubs_b[0], (m, 1), stubs_b[-1]]
        _apply_rots(w, ev, (v1, v2))
        _record_seam_sides(pb, v1, v2, ta, tb, pb.facet_of(m))


def _subdivide(pb, w, site, vnew, ids, names):
    """Split a strand at one new vertex; returns its stub half-edges."""
    kind, sid = site
    tok = pb.facet_of(sid)
    if kind == SITE_CIRCLE:
        arc = _want(w, ids, names[0], "e")
        del w.circles[sid]
        del pb.ftrack[sid]
        w.ethick[arc] = 1
        w.etail[arc] = None
        pb.ftrack[arc] = tok
        return [(arc, 0), (arc, 1)]
    p0 = _want(w, ids, names[0], "e")
    p1 = _want(w, ids, names[1], "e")
    pos = w.halfedge_pos()
    (v0, s0), (v1, s1) = pos[(sid, 0)], pos[(sid, 1)]
    th = w.ethick[sid]
    w.rot[v0][s0] = (p0, 0)
    w.rot[v1][s1] = (p1, 1)
    del w.ethick[sid], w.etail[sid]
    del pb.ftrack[sid]
    for nid in (p0, p1):
        w.ethick[nid] = th
        w.etail[nid] = None
        pb.ftrack[nid] = tok
    return [(p0, 1), (p1, 0)]


def _apply_rots(w: Web, ev, vertices):
    """Honor an explicit per-vertex rotation override, else pick mirrors
    that keep the map planar."""
    rots = ev.get("rots") or {}
    used = False
    for v in vertices:
        if v in rots:
            want = [tuple(h) for h in rots[v]]
            if sorted(want) != sorted(w.rot[v]):
                raise FoamError(f"rotation override at {v} names wrong edges")
            w.rot[v] = want
            used = True
    if used:
        w.check_planar()
    else:
        _mirror_until_planar(w, *vertices)


def _mirror_until_planar(w: Web, v1, v2):
    """Pick rotation mirrors at the two new vertices that keep the
    component planar; raise if no choice works."""
    for flip1 in (False, True):
        for flip2 in (False, True):
            try:
                w.check_planar()
                return
            except WebError:
                pass
            w.rot[v2] = list(reversed(w.rot[v2]))
        w.rot[v1] = list(reversed(w.rot[v1]))
    w.check_planar()


def _seam_apex(pb, w, v1, v2):
    t1 = pb.new_vertex_track(v1, born_at="apex")
    t2 = pb.new_vertex_track(v2, born_at="apex")
    rep = pb.vuf.union(t1, t2)
    pb.cell(("seam", rep), +1)
    return rep


def _record_seam_sides(pb, v1, v2, f1, f2, f3):
    for v in (v1, v2):
        pb.seam_sides[pb.vtok[v]] = (f1, f2, f3)


def _ev_unzip(pb, w, ev):
    m = ev["m"]
    also = ev.get("also")
    ids = ev.setdefault("ids", {})
    if m not in w.ethick:
        raise FoamError(f"no edge {m} to unzip")
    pos = w.halfedge_pos()
    v1, v2 = pos[(m, 0)][0], pos[(m, 1)][0]
    if v1 == v2:
        raise FoamError("unzip needs a non-loop edge")
    for v in (v1, v2):
        if w.vkind[v] != "internal":
            raise FoamError("unzip endpoint on the boundary")
    ev["_v1"], ev["_v2"] = v1, v2
    ev["_rots"] = {v1: list(w.rot[v1]), v2: list(w.rot[v2])}
    pb.cell(("seam", pb.vuf.union(pb.vtok[v1], pb.vtok[v2])), +1)  # apex
    if also is not None:
        if also == m or also not in w.ethick:
            raise FoamError(f"unzip 'also' edge {also} invalid")
        va, vb = pos[(also, 0)][0], pos[(also, 1)][0]
        if {va, vb} != {v1, v2}:
            raise FoamError("unzip 'also' edge must parallel the rung")
        stubs = []
        for v in (v1, v2):
            rest = [he for he in w.rot[v] if he[0] not in (m, also)]
            if len(rest) != 1:
                raise FoamError("unzip pattern mismatch")
            stubs.append(rest[0])
        for old in (m, also):
            del w.ethick[old], w.etail[old]
            del pb.ftrack[old]
        for v in (v1, v2):
            del w.rot[v], w.vkind[v], pb.vtok[v]
        ha, hb = stubs
        ev["_stub1"], ev["_stub2"] = ha[0], hb[0]
        if ha[0] == hb[0]:
            tok = pb.facet_of(ha[0])
            th = w.ethick[ha[0]]
            _detach(w, ha[0])
            del pb.ftrack[ha[0]]
            out = _want(w, ids, "r1", "c")
            w.add_circle(out)
            pb.ftrack[out] = tok
            ev["_r_kinds"] = (SITE_CIRCLE,)
        else:
            out = _want(w, ids, "r1", "e")
            tok = pb.fuf.union(pb.facet_of(ha[0]), pb.facet_of(hb[0]))
            _join_stubs(pb, w, ha, hb, out)
            pb.ftrack[out] = tok
            ev["_r_kinds"] = (SITE_EDGE,)
        pb.cell(tok, -1)  # critical-slice arc through the apex
    else:
        stubs1 = [he for he in w.rot[v1] if he[0] != m]
        stubs2 = [he for he in w.rot[v2] if he[0] != m]
        if len(stubs1) != 2 or len(stubs2) != 2:
            raise FoamError("unzip pattern mismatch")
        ev["_stubs1"] = [h[0] for h in stubs1]
        ev["_stubs2"] = [h[0] for h in stubs2]
        del w.ethick[m], w.etail[m]
        del pb.ftrack[m]
        for v in (v1, v2):
            del w.rot[v], w.vkind[v], pb.vtok[v]
        kinds = []
        for idx, (ha, hb) in enumerate((stubs1, stubs2)):
            key = f"r{idx + 1}"
            if ha[0] == hb[0]:
                tok = pb.facet_of(ha[0])
                _detach(w, ha[0])
                del pb.ftrack[ha[0]]
                out = _want(w, ids, key, "c")
                w.add_circle(out)
                pb.ftrack[out] = tok
                kinds.append(SITE_CIRCLE)
            else:
                out = _want(w, ids, key, "e")
                tok = pb.fuf.union(pb.facet_of(ha[0]), pb.facet_of(hb[0]))
                _join_stubs(pb, w, ha, hb, out)
                pb.ftrack[out] = tok
                kinds.append(SITE_EDGE)
            pb.cell(tok, -1)  # critical-slice arc
        ev["_r_kinds"] = tuple(kinds)


def _detach(w: Web, eid):
    for v in list(w.rot):
        w.rot[v] = [he for he in w.rot[v] if he[0] != eid]
    w.ethick.pop(eid, None)
    w.etail.pop(eid, None)


def _join_stubs(pb, w: Web, ha, hb, out):
    pos = w.halfedge_pos()
    va, sa = pos[(ha[0], 1 - ha[1])]
    vb, sb = pos[(hb[0], 1 - hb[1])]
    th = w.ethick[ha[0]]
    if th != w.ethick[hb[0]]:
        raise FoamError("splice thickness mismatch")
    w.rot[va][sa] = (out, 0)
    w.rot[vb][sb] = (out, 1)
    for old in {ha[0], hb[0]}:
        del w.ethick[old], w.etail[old]
        pb.ftrack.pop(old, None)
    w.ethick[out] = th
    w.etail[out] = None


def _ev_collapse(pb, w, ev):
    edges = ev["edges"]
    ids = ev.setdefault("ids", {})
    if len(set(edges)) != 3:
        raise FoamError("triangle collapse needs three distinct edges")
    pos = w.halfedge_pos()
    vs = set()
    for eid in edges:
        if eid not in w.ethick:
            raise FoamError(f"no edge {eid}")
        vs.add(pos[(eid, 0)][0])
        vs.add(pos[(eid, 1)][0])
    if len(vs) != 3:
        raise FoamError("edges do not form a triangle")
    vs = sorted(vs, key=_natkey)
    # tri[i] joins vs[i] and vs[(i+1)%3]
    tri = []
    for i in range(3):
        pair = {vs[i], vs[(i + 1) % 3]}
        match = [e for e in edges if {pos[(e, 0)][0], pos[(e, 1)][0]} == pair]
        if len(match) != 1:
            raise FoamError("edges do not form a triangle")
        tri.append(match[0])
    exts = []
    for v in vs:
        ext = [he for he in w.rot[v] if he[0] not in edges]
        if len(ext) != 1:
            raise FoamError(f"vertex {v} is not a triangle corner")
        exts.append(ext[0])
    nv = _want(w, ids, "v", "v")
    old_toks = [pb.vtok[v] for v in vs]
    for eid in edges:
        del w.ethick[eid], w.etail[eid]
        del pb.ftrack[eid]
    for v in vs:
        del w.rot[v], w.vkind[v], pb.vtok[v]
    w.add_vertex(nv)
    ntok = pb.new_vertex_track(nv, born_at="vertex")
    for t in old_toks:
        pb.seam_endpoints[t].append("vertex")
    vtoken = pb.fresh_token("V")
    pb.foam_vertices.append(
        (vtoken, [(t, "end") for t in old_toks] + [(ntok, "start")])
    )
    pb.cell("vertices", +1)
    ev["_vs"] = vs
    ev["_edges"] = tri
    ev["_rots"] = {v: list(w.rot[v]) for v in vs}
    for order in ([0, 1, 2], [0, 2, 1]):
        w.rot[nv] = [exts[i] for i in order]
        try:
            w.check_planar()
            ev["_order"] = order
            return
        except WebError:
            continue
    raise FoamError("collapse breaks planarity")


def _ev_expand(pb, w, ev):
    vid = ev["vertex"]
    ids = ev.setdefault("ids", {})
    if vid not in w.rot or w.vkind[vid] != "internal":
        raise FoamError(f"no internal vertex {vid}")
    u = [_want(w, ids, f"u{i}", "v") for i in range(3)]
    t = [_want(w, ids, f"t{i}", "e") for i in range(3)]
    exts = list(w.rot[vid])
    old_tok = pb.vtok[vid]
    pb.seam_endpoints[old_tok].append("vertex")
    del w.rot[vid], w.vkind[vid], pb.vtok[vid]
    new_toks = []
    for i in range(3):
        w.add_vertex(u[i])
        new_toks.append(pb.new_vertex_track(u[i], born_at="vertex"))
    vtoken = pb.fresh_token("V")
    pb.foam_vertices.append(
        (vtoken, [(old_tok, "end")] + [(tk, "start") for tk in new_toks])
    )
    pb.cell("vertices", +1)
    for i in range(3):
        w.ethick[t[i]] = 1
        w.etail[t[i]] = None
        pb.new_facet(t[i])
    rots = ev.get("rots") or {}
    if rots:
        if sorted(rots) != sorted(u):
            raise FoamError("expand rotation override must cover u0..u2")
        placed = set()
        for i in range(3):
            want = [tuple(h) for h in rots[u[i]]]
            w.rot[u[i]] = want
            placed.update(h for h in want)
        need = set(exts) | {(t[i], 0) for i in range(3)} | {(t[i], 1) for i in range(3)}
        if placed != need:
            raise FoamError("expand rotation override names wrong edges")
        w.check_planar()
        ev["order"] = None
        return
    orders = [ev["order"]] if ev.get("order") else [[0, 1, 2], [0, 2, 1]]
    for order in orders:
        # ext placed at slot k goes to u[order[k]]
        for k in range(3):
            i = order[k]
            w.rot[u[i]] = [exts[k], (t[i], 0), (t[(i - 1) % 3], 1)]
        try:
            w.check_planar()
            ev["order"] = order
            return
        except WebError:
            continue
    raise FoamError("expand breaks planarity")


# ---------------------------------------------------------------------------
# compilation to a closed foam


def movie_to_foam(movie: Movie, theory="sl3u"):
    """Compile a movie into a ClosedFoam plus a boundary interface.

    The foam is closed when the final slice is empty; otherwise the
    interface maps final-web strands to facet ids so the foam can be
    paired by gluing.
    """
    pb = play(movie)
    foam = ClosedFoam(theory)
    live = {pb.fuf.find(t) for t in pb.fuf.parent}
    toks = sorted(live, key=_natkey)
    facet_ids = {tok: f"f{i}" for i, tok in enumerate(toks, 1)}
    dots = {}
    for tok, d in pb.dots.items():
        r = pb.fuf.find(tok)
        dots[r] = dots.get(r, 0) + d
    labels = {}
    for tok, ls in pb.labels.items():
        r = pb.fuf.find(tok)
        labels.setdefault(r, []).extend(ls)
    cells = {}
    for token, n in pb.cells.items():
        if isinstance(token, tuple) and token[0] == "seam":
            key = ("seam", pb.vuf.find(token[1]))
        elif token == "vertices":
            key = "vertices"
        else:
            key = pb.fuf.find(token)
        cells[key] = cells.get(key, 0) + n
    for tok in toks:
        foam.add_facet(
            facet_ids[tok],
            thickness=1,
            euler_open=cells.get(tok, 0),
            dots=dots.get(tok, 0),
            labels=labels.get(tok, []),
        )
    curves = {}
    for vt in pb.vuf.parent:
        curves.setdefault(pb.vuf.find(vt), []).append(vt)
    seam_ids = {rep: f"s{i}" for i, rep in enumerate(sorted(curves, key=_natkey), 1)}
    vertex_ids = {}
    for i, (vtok, _) in enumerate(pb.foam_vertices, 1):
        vertex_ids[vtok] = f"n{i}"
    curve_vertex_ends = {rep: [] for rep in curves}
    for vtok, ends in pb.foam_vertices:
        for tk, which in ends:
            curve_vertex_ends[pb.vuf.find(tk)].append((vertex_ids[vtok], which))
    for rep in sorted(curves, key=_natkey):
        boundary_ends = sum(
            pb.seam_endpoints[tk].count("boundary") for tk in curves[rep]
        )
        v_ends = curve_vertex_ends[rep]
        n_ends = len(v_ends) + boundary_ends
        sides_tok = None
        for tk in curves[rep]:
            if tk in pb.seam_sides:
                sides_tok = pb.seam_sides[tk]
                break
        if sides_tok is None:
            raise FoamError("seam curve without side record")
        sides = tuple(facet_ids[pb.fuf.find(t)] for t in sides_tok)
        if n_ends == 0:
            foam.add_seam(seam_ids[rep], "circle", sides, orient=True)
        elif n_ends == 2:
            ends = [v for v, _ in v_ends] + ["_bd"] * boundary_ends
            foam.add_seam(seam_ids[rep], "interval", sides, ends=ends, orient=True)
        else:
            raise FoamError(f"seam curve with {n_ends} endpoints")
    for vtok, ends in pb.foam_vertices:
        foam.add_vertex(
            vertex_ids[vtok],
            [
                (seam_ids[pb.vuf.find(tk)], 0 if which == "start" else 1)
                for tk, which in ends
            ],
        )
    interface = {
        "web": pb.web,
        "facet_of_strand": {
            sid: facet_ids[pb.facet_of(sid)]
            for sid in list(pb.web.ethick) + list(pb.web.circles)
        },
        "cells": cells,
    }
    foam.closed = pb.web.is_empty()
    return foam, interface


def cell_census(foam: ClosedFoam) -> int:
    """Alternating interior cell count implied by the compiled data:
    facet euler_opens, -1 per interval seam, 0 per circle seam, +1 per
    vertex."""
    total = sum(f.euler_open for f in foam.facets.values())
    total -= sum(1 for s in foam.seams.values() if s.kind == "interval")
    total += len(foam.vertices)
    return total


# ---------------------------------------------------------------------------
# reflect / glue / unions


def final_web(movie: Movie) -> Web:
    return play(movie).web


def _site_of(kind, sid):
    return (kind, sid)


def reflect(movie: Movie) -> Movie:
    """Time-reverse a movie: birth <-> death, zip <-> unzip, collapse <->
    expand; dots ride along on the same strands."""
    movie = movie.copy()
    play(movie)  # validates and resolves every id in place
    rev = []
    for ev in reversed(movie.events):
        op = ev["op"]
        ids = dict(ev.get("ids", {}))
        if op == "birth":
            rev.append({"op": "death", "circle": ev["circle"]})
        elif op == "death":
            rev.append({"op": "birth", "circle": ev["circle"]})
        elif op == "dot":
            rev.append({
                "op": "dot", "site": ev["site"], "count": ev.get("count", 1),
                "label": ev.get("label"),
            })
        elif op == "id":
            rev.append({"op": "id"})
        elif op == "zip":
            if ev["b"] is None:
                back = {"r1": ids["keep"] if ev["a"][0] == SITE_CIRCLE else None}
                rev.append({
                    "op": "unzip", "m": ids["m"], "also": ids["mid"],
                    "ids": {"r1": ev["a"][1]},
                })
            else:
                rev.append({
                    "op": "unzip", "m": ids["m"], "also": None,
                    "ids": {"r1": ev["a"][1], "r2": ev["b"][1]},
                })
        elif op == "unzip":
            kinds = ev["_r_kinds"]
            if ev.get("also") is not None:
                site = (kinds[0], ids["r1"])
                zid = {"m": ev["m"], "mid": ev["also"],
                       "v1": ev["_v1"], "v2": ev["_v2"]}
                if kinds[0] == SITE_CIRCLE:
                    zid["keep"] = ev["_stub1"]
                else:
                    zid["e0"], zid["e1"] = ev["_stub1"], ev["_stub2"]
                rev.append({"op": "zip", "a": site, "b": None, "ids": zid,
                            "rots": ev.get("_rots")})
            else:
                site1 = (kinds[0], ids["r1"])
                site2 = (kinds[1], ids["r2"])
                zid = {"m": ev["m"], "v1": ev["_v1"], "v2": ev["_v2"]}
                s1, s2 = ev["_stubs1"], ev["_stubs2"]
                zid["a0"] = s1[0]
                if kinds[0] == SITE_EDGE:
                    zid["a1"] = s1[1]
                zid["b0"] = s2[0]
                if kinds[1] == SITE_EDGE:
                    zid["b1"] = s2[1]
                rev.append({"op": "zip", "a": site1, "b": site2, "ids": zid,
                            "rots": ev.get("_rots")})
        elif op == "saddle":
            kinds = ev["_r_kinds"]
            if len(kinds) == 1:
                # merged two strands into one: reverse is a self-saddle
                back_ids = {"r1": ev["a"][1], "r2": ev["b"][1]}
                rev.append({
                    "op": "saddle", "a": (kinds[0], ids["r1"]), "b": None,
                    "ids": back_ids,
                })
            else:
                rev.append({
                    "op": "saddle",
                    "a": (kinds[0], ids["r1"]),
                    "b": (kinds[1], ids["r2"]),
                    "ids": {"r1": ev["a"][1], "r2": ev["b"][1] if ev["b"] else None},
                })
        elif op == "collapse":
            rev.append({
                "op": "expand", "vertex": ids["v"],
                "ids": {
                    "u0": ev["_vs"][0], "u1": ev["_vs"][1], "u2": ev["_vs"][2],
                    "t0": ev["_edges"][0], "t1": ev["_edges"][1],
                    "t2": ev["_edges"][2],
                },
                "order": None,
                "rots": ev.get("_rots"),
            })
        elif op == "expand":
            rev.append({
                "op": "collapse",
                "edges": [ids["t0"], ids["t1"], ids["t2"]],
                "ids": {"v": ev["vertex"]},
            })
        else:
            raise FoamError(f"cannot reflect event {op}")
    return Movie(final_web(movie), rev, movie.initial.copy())


def glue(top: Movie, bottom: Movie) -> Movie:
    """Reflect `top` and stack it after `bottom`; both movies must end at
    the same labeled web."""
    w_top = final_web(top)
    w_bot = final_web(bottom)
    diff = web_mismatch(w_top, w_bot)
    if diff:
        raise FoamError(f"boundary mismatch: {diff}")
    lid = reflect(top)
    return Movie(bottom.initial.copy(),
                 [dict(e) for e in bottom.events] + lid.events)


def movie_disjoint_union(m1: Movie, m2: Movie, prefix="D") -> Movie:
    """Place two movies side by side; ids of the second get prefixed."""
    if not m1.initial.is_empty() or not m2.initial.is_empty():
        raise FoamError("disjoint union expects movies from the empty web")
    import copy as _copy

    def ren(x):
        return None if x is None else prefix + x

    events = _copy.deepcopy(m1.events)
    for ev in _copy.deepcopy(m2.events):
        if "circle" in ev:
            ev["circle"] = ren(ev.get("circle"))
        for key in ("a", "b", "site"):
            if ev.get(key):
                ev[key] = (ev[key][0], ren(ev[key][1]))
        for key in ("m", "also", "vertex"):
            if ev.get(key):
                ev[key] = ren(ev[key])
        if ev.get("edges"):
            ev["edges"] = [ren(e) for e in ev["edges"]]
        if ev.get("ids"):
            ev["ids"] = {k: ren(v) for k, v in ev["ids"].items() if v}
        events.append(ev)
    return Movie(Web(), events)


# ---------------------------------------------------------------------------
# movie text format


def serialize_movie(movie: Movie) -> str:
    lines = ["MOVIE"]
    if movie.initial.is_empty():
        lines.append("SLICE empty")
    else:
        lines.append("SLICE inline")
        for ln in serialize_web(movie.initial).splitlines():
            lines.append("  " + ln)
        lines.append("END")

    def site_str(site):
        return f"{site[0]}:{site[1]}"

    for ev in movie.events:
        op = ev["op"]
        if op == "birth" or op == "death":
            rec = f"{op} {ev['circle']}"
        elif op == "dot":
            rec = f"dot {site_str(ev['site'])} {ev.get('count', 1)}"
        elif op == "id":
            rec = "id"
        elif op in ("zip", "saddle"):
            rec = f"{op} {site_str(ev['a'])}"
            if ev.get("b"):
                rec += f" {site_str(ev['b'])}"
        elif op == "unzip":
            rec = f"unzip {ev['m']}"
            if ev.get("also"):
                rec += f" also={ev['also']}"
        elif op == "collapse":
            rec = "collapse " + ",".join(ev["edges"])
        elif op == "expand":
            rec = f"expand {ev['vertex']}"
            if ev.get("order"):
                rec += " order=" + "".join(str(i) for i in ev["order"])
        else:
            raise FoamError(f"cannot serialize event {op}")
        ids = {k: v for k, v in (ev.get("ids") or {}).items() if v}
        if ids:
            rec += " ids " + ",".join(
                f"{k}={v}" for k, v in sorted(ids.items())
            )
        rots = ev.get("rots") or {}
        if rots:
            rec += " rots " + ";".join(
                "{}={}".format(v, "/".join(f"{e}.{d}" for e, d in rots[v]))
                for v in sorted(rots)
            )
        lines.append(rec)
    return "\n".join(lines) + "\n"


def parse_movie(text: str) -> Movie:
    lines = text.splitlines()
    i = 0
    initial = Web()
    movie = None
    while i < len(lines):
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line or line.upper() == "MOVIE":
            continue
        if line.upper().startswith("SLICE"):
            arg = line.split(None, 1)[1] if len(line.split(None, 1)) > 1 else "empty"
            if arg == "empty":
                initial = Web()
            elif arg == "inline":
                block = []
                while i < len(lines) and lines[i].strip().upper() != "END":
                    block.append(lines[i])
                    i += 1
                i += 1
                initial = parse_web("\n".join(block))
            else:
                raise FoamError(f"bad SLICE argument {arg!r}")
            movie = Movie(initial)
            continue
        if movie is None:
            movie = Movie(initial)
        movie.events.append(_parse_event(line))
    return movie if movie is not None else Movie(initial)


def _parse_event(line: str) -> dict:
    parts = line.split()
    op = parts[0]
    ids = {}
    rots = {}
    if "rots" in parts:
        k = parts.index("rots")
        for item in " ".join(parts[k + 1:]).split(";"):
            if item:
                vid, spec = item.split("=")
                rots[vid] = [
                    (p.rsplit(".", 1)[0], int(p.rsplit(".", 1)[1]))
                    for p in spec.split("/")
                ]
        parts = parts[:k]
    if "ids" in parts:
        k = parts.index("ids")
        for item in " ".join(parts[k + 1:]).split(","):
            if item:
                key, val = item.split("=")
                ids[key] = val
        parts = parts[:k]

    def parse_site(tok):
        kind, sid = tok.split(":")
        if kind not in (SITE_EDGE, SITE_CIRCLE):
            raise FoamError(f"bad site {tok!r}")
        return (kind, sid)

    if op in ("birth", "death"):
        return {"op": op, "circle": parts[1]}
    if op == "dot":
        count = int(parts[2]) if len(parts) > 2 else 1
        return {"op": "dot", "site": parse_site(parts[1]), "count": count,
                "label": None}
    if op == "id":
        return {"op": "id"}
    if op in ("zip", "saddle"):
        a = parse_site(parts[1])
        b = parse_site(parts[2]) if len(parts) > 2 else None
        out = {"op": op, "a": a, "b": b, "ids": ids}
        if rots:
            out["rots"] = rots
        return out
    if op == "unzip":
        also = None
        for p in parts[2:]:
            if p.startswith("also="):
                also = p.split("=", 1)[1]
        return {"op": "unzip", "m": parts[1], "also": also, "ids": ids}
    if op == "collapse":
        return {"op": "collapse", "edges": parts[1].split(","), "ids": ids}
    if op == "expand":
        order = None
        for p in parts[2:]:
            if p.startswith("order="):
                order = [int(c) for c in p.split("=", 1)[1]]
        out = {"op": "expand", "vertex": parts[1], "ids": ids, "order": order}
        if rots:
            out["rots"] = rots
        return out
    raise FoamError(f"unknown event {op!r}")


# ---------------------------------------------------------------------------
# stock movies


def cup_movie(dots=0) -> Movie:
    """Disk bounding a circle, optionally dotted."""
    m = Movie()
    m.birth("c1")
    if dots:
        m.dot((SITE_CIRCLE, "c1"), dots)
    return m


def sphere_movie(dots=0) -> Movie:
    m = cup_movie(dots)
    m.death("c1")
    return m


def torus_movie() -> Movie:
    """Genus-one surface: birth, split, merge, death."""
    m = Movie()
    m.birth("c1")
    m.saddle((SITE_CIRCLE, "c1"), None, ids={"r1": "c2", "r2": "c3"})
    m.saddle((SITE_CIRCLE, "c2"), (SITE_CIRCLE, "c3"), ids={"r1": "c4"})
    m.death("c4")
    return m


def theta_cup_movie(dots=(0, 0, 0)) -> Movie:
    """Singular cup bounding the theta web: facets keep/mid/membrane get
    dots[0]/dots[1]/dots[2]."""
    m = Movie()
    m.birth("c1")
    m.zip((SITE_CIRCLE, "c1"), None,
          ids={"keep": "p", "mid": "q", "m": "r", "v1": "v1", "v2": "v2"})
    for strand, d in zip(("p", "q", "r"), dots):
        if d:
            m.dot((SITE_EDGE, strand), d)
    return m


def theta_foam_movie(dots=(0, 0, 0)) -> Movie:
    return glue(theta_cup_movie(), theta_cup_movie(dots))
