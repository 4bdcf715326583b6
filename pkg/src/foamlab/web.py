"""Planar trivalent webs as rotation systems.

A web stores, for every vertex, the counterclockwise cyclic list of
incident (edge, end) pairs.  Verticeless circles are kept separately.
Faces are traced combinatorially; planarity is enforced through the
Euler formula on every connected component, so no coordinates are ever
needed.
"""

from __future__ import annotations

import re

from .algebra import LaurentQ, laurent_divexact, quantum_integer


class WebError(ValueError):
    pass


class Web:
    """Planar trivalent graph, possibly with free circles and boundary
    points (degree-1 marked vertices carrying signs)."""

    def __init__(self):
        self.rot = {}  # vid -> ccw list of (eid, end)
        self.vkind = {}  # vid -> "internal" | "boundary"
        self.bsign = {}  # boundary vid -> +1 | -1
        self.ethick = {}  # eid -> thickness
        self.etail = {}  # eid -> None or end index of the tail
        self.circles = {}  # cid -> {"thickness": int}
        self._next = {}

    # -- construction ---------------------------------------------------

    def fresh(self, prefix: str) -> str:
        n = self._next.get(prefix, 0) + 1
        while f"{prefix}{n}" in self.rot or f"{prefix}{n}" in self.ethick or f"{prefix}{n}" in self.circles:
            n += 1
        self._next[prefix] = n
        return f"{prefix}{n}"

    def add_vertex(self, vid=None, kind="internal", sign=None):
        vid = vid or self.fresh("v")
        if vid in self.rot:
            raise WebError(f"duplicate vertex {vid}")
        self.rot[vid] = []
        self.vkind[vid] = kind
        if kind == "boundary":
            self.bsign[vid] = sign if sign is not None else 1
        return vid

    def add_edge(self, v0, slot0, v1, slot1, eid=None, thickness=1, tail=None):
        """Insert edge end 0 at (v0, slot0) and end 1 at (v1, slot1)."""
        eid = eid or self.fresh("e")
        if eid in self.ethick:
            raise WebError(f"duplicate edge {eid}")
        self.ethick[eid] = thickness
        self.etail[eid] = tail
        pairs = [((eid, 0), v0, slot0), ((eid, 1), v1, slot1)]
        if v0 == v1:
            pairs.sort(key=lambda p: -p[2])  # larger slot first, no shifting
        for he, v, s in pairs:
            self.rot[v].insert(s, he)
        return eid

    def add_circle(self, cid=None, thickness=1):
        cid = cid or self.fresh("c")
        if cid in self.circles:
            raise WebError(f"duplicate circle {cid}")
        self.circles[cid] = {"thickness": thickness}
        return cid

    def copy(self) -> "Web":
        w = Web()
        w.rot = {v: list(r) for v, r in self.rot.items()}
        w.vkind = dict(self.vkind)
        w.bsign = dict(self.bsign)
        w.ethick = dict(self.ethick)
        w.etail = dict(self.etail)
        w.circles = {c: dict(d) for c, d in self.circles.items()}
        w._next = dict(self._next)
        return w

    # -- indexing --------------------------------------------------------

    def halfedge_pos(self):
        """(eid, end) -> (vid, slot)."""
        pos = {}
        for v, r in self.rot.items():
            for slot, he in enumerate(r):
                if he in pos:
                    raise WebError(f"half-edge {he} appears twice")
                pos[he] = (v, slot)
        return pos

    def edge_vertices(self, eid):
        pos = self.halfedge_pos()
        return pos[(eid, 0)][0], pos[(eid, 1)][0]

    def num_vertices(self) -> int:
        return sum(1 for v in self.rot if self.vkind[v] == "internal")

    def num_edges(self) -> int:
        return len(self.ethick)

    def is_empty(self) -> bool:
        return not self.rot and not self.circles

    def is_closed(self) -> bool:
        return not any(k == "boundary" for k in self.vkind.values())

    # -- validation --------------------------------------------------------

    def validate(self):
        pos = self.halfedge_pos()
        for eid in self.ethick:
            for end in (0, 1):
                if (eid, end) not in pos:
                    raise WebError(f"dangling half-edge ({eid},{end})")
        for he in pos:
            if he[0] not in self.ethick:
                raise WebError(f"rotation references unknown edge {he[0]}")
        for v, r in self.rot.items():
            want = 1 if self.vkind[v] == "boundary" else 3
            if len(r) != want:
                raise WebError(
                    f"vertex {v} has {len(r)} half-edges, expected {want}"
                )
        for eid, tail in self.etail.items():
            if tail is not None:
                v0, v1 = self.edge_vertices(eid)
                if v0 == v1:
                    raise WebError(f"oriented loop {eid}")
        self.check_planar()

    def components(self):
        """Connected components of the graph part (vertex id sets)."""
        seen = set()
        comps = []
        pos = self.halfedge_pos()
        adj = {v: set() for v in self.rot}
        for eid in self.ethick:
            a, b = pos[(eid, 0)][0], pos[(eid, 1)][0]
            adj[a].add(b)
            adj[b].add(a)
        for v in self.rot:
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(adj[u] - comp)
            seen |= comp
            comps.append(comp)
        return comps

    def check_planar(self):
        face_of = {}
        for i, f in enumerate(self.trace_faces()):
            for dhe in f:
                face_of[dhe] = i
        for comp in self.components():
            vs = [v for v in comp]
            es = set()
            fs = set()
            for v in vs:
                for (eid, end) in self.rot[v]:
                    es.add(eid)
                    fs.add(face_of[(eid, end)])
            if len(vs) - len(es) + len(fs) != 2:
                raise WebError("rotation system is not planar")

    # -- faces -------------------------------------------------------------

    def trace_faces(self):
        """Orbits of directed half-edges; each orbit is one region."""
        pos = self.halfedge_pos()
        nxt = {}
        for (eid, end), (v, slot) in pos.items():
            partner = (eid, 1 - end)
            w, pslot = pos[partner]
            nxt[(eid, end)] = self.rot[w][(pslot + 1) % len(self.rot[w])]
        faces = []
        seen = set()
        for start in sorted(nxt):
            if start in seen:
                continue
            cyc = []
            h = start
            while h not in seen:
                seen.add(h)
                cyc.append(h)
                h = nxt[h]
            faces.append(cyc)
        return faces

    def regions(self):
        """All regions with side counts; circles give 0-sided regions."""
        pos = self.halfedge_pos()
        out = []
        for f in self.trace_faces():
            touches_boundary = any(
                self.vkind[pos[(eid, end)][0]] == "boundary"
                or self.vkind[pos[(eid, 1 - end)][0]] == "boundary"
                for eid, end in f
            )
            out.append(
                {
                    "sides": len(f),
                    "halfedges": f,
                    "inner": not touches_boundary,
                }
            )
        for cid in sorted(self.circles):
            out.append({"sides": 0, "circle": cid, "inner": True})
        if not out and not self.circles:
            return out
        if not self.ethick and self.circles:
            # a union of bare circles still has the unbounded region
            out.append({"sides": 0, "outer": True, "inner": False})
        return out

    # -- orientation --------------------------------------------------------

    def is_oriented(self) -> bool:
        return all(t is not None for t in self.etail.values())

    def check_oriented(self):
        """Every internal vertex must be all-in or all-out."""
        if not self.is_oriented():
            raise WebError("web is not fully oriented")
        pos = self.halfedge_pos()
        for v, r in self.rot.items():
            if self.vkind[v] != "internal":
                continue
            dirs = set()
            for (eid, end) in r:
                dirs.add("out" if self.etail[eid] == end else "in")
            if len(dirs) != 1:
                raise WebError(f"vertex {v} is neither in- nor out-vertex")


# ---------------------------------------------------------------------------
# parsing / serialization


_TOKEN = re.compile(r"(\w+)=([^\s]+)")


def parse_web(text: str) -> Web:
    """Parse the line-based web format; errors carry line numbers."""
    w = Web()
    rot_specs = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0].upper()
        try:
            if kind == "WEB":
                continue
            elif kind == "VERTEX":
                vid = parts[1]
                opts = dict(_TOKEN.findall(line))
                if "edges" not in opts:
                    raise WebError("VERTEX needs edges=")
                w.add_vertex(vid, kind="internal")
                rot_specs[vid] = opts["edges"].split(",")
            elif kind == "BVERTEX":
                vid = parts[1]
                opts = dict(_TOKEN.findall(line))
                sign = {"+": 1, "-": -1}[opts.get("sign", "+")]
                w.add_vertex(vid, kind="boundary", sign=sign)
                rot_specs[vid] = [opts["edge"]]
            elif kind == "EDGE":
                eid = parts[1]
                opts = dict(_TOKEN.findall(line))
                w.ethick[eid] = int(opts.get("thickness", 1))
                w.etail.setdefault(eid, None)
                if "orient" in opts:
                    w.etail[eid] = opts["orient"]  # resolved below
            elif kind == "CIRCLE":
                cid = parts[1]
                opts = dict(_TOKEN.findall(line))
                w.add_circle(cid, thickness=int(opts.get("thickness", 1)))
            else:
                raise WebError(f"unknown record {parts[0]}")
        except (KeyError, IndexError, ValueError) as exc:
            raise WebError(f"line {ln}: {exc}") from exc

    # materialize rotations; an edge id may appear twice at one vertex (loop)
    counts = {}
    for vid, eids in rot_specs.items():
        for eid in eids:
            end = counts.get(eid, 0)
            if end > 1:
                raise WebError(f"edge {eid} appears more than twice")
            counts[eid] = end + 1
            w.rot[vid].append((eid, end))
            w.ethick.setdefault(eid, 1)
            w.etail.setdefault(eid, None)
    for eid, c in counts.items():
        if c != 2:
            raise WebError(f"dangling half-edge on edge {eid}")
    # resolve orientation clauses "va>vb"
    for eid, tail in list(w.etail.items()):
        if isinstance(tail, str):
            m = re.match(r"^(\w+)>(\w+)$", tail)
            if not m:
                raise WebError(f"bad orient clause on {eid}")
            va, vb = m.group(1), m.group(2)
            v0, v1 = w.edge_vertices(eid)
            if (va, vb) == (v0, v1):
                w.etail[eid] = 0
            elif (va, vb) == (v1, v0):
                w.etail[eid] = 1
            else:
                raise WebError(f"orient clause on {eid} names wrong vertices")
    w.validate()
    return w


def serialize_web(w: Web) -> str:
    lines = ["WEB"]
    for cid in sorted(w.circles, key=_natkey):
        extra = ""
        if w.circles[cid]["thickness"] != 1:
            extra = f" thickness={w.circles[cid]['thickness']}"
        lines.append(f"CIRCLE {cid}{extra}")
    for vid in sorted(w.rot, key=_natkey):
        if w.vkind[vid] == "boundary":
            sign = "+" if w.bsign[vid] > 0 else "-"
            eid = w.rot[vid][0][0]
            lines.append(f"BVERTEX {vid} sign={sign} edge={eid}")
        else:
            eids = ",".join(e for e, _ in w.rot[vid])
            lines.append(f"VERTEX {vid} edges={eids}")
    for eid in sorted(w.ethick, key=_natkey):
        opts = []
        if w.ethick[eid] != 1:
            opts.append(f"thickness={w.ethick[eid]}")
        if w.etail.get(eid) is not None:
            v0, v1 = w.edge_vertices(eid)
            opts.append(
                f"orient={v0}>{v1}" if w.etail[eid] == 0 else f"orient={v1}>{v0}"
            )
        if opts:
            lines.append(f"EDGE {eid} " + " ".join(opts))
    return "\n".join(lines) + "\n"


def _natkey(s: str):
    return (len(s), s)


# ---------------------------------------------------------------------------
# basic web operations


def find_bridge(w: Web):
    """Return the first bridge edge id, or None.  Low-link DFS; a tree
    edge with a parallel copy is never reported."""
    pos = w.halfedge_pos()
    adj = {v: [] for v in w.rot}
    for eid in sorted(w.ethick, key=_natkey):
        a, b = pos[(eid, 0)][0], pos[(eid, 1)][0]
        if a == b:
            continue
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    disc = {}
    low = {}
    clock = [0]
    bridges = []

    def dfs(root):
        disc[root] = low[root] = clock[0]
        clock[0] += 1
        # frame: [vertex, tree edge, neighbor list, cursor, skipped once]
        stack = [[root, None, adj[root], 0, False]]
        while stack:
            fr = stack[-1]
            v = fr[0]
            if fr[3] < len(fr[2]):
                u, eid = fr[2][fr[3]]
                fr[3] += 1
                if eid == fr[1] and not fr[4]:
                    fr[4] = True
                    continue
                if u not in disc:
                    disc[u] = low[u] = clock[0]
                    clock[0] += 1
                    stack.append([u, eid, adj[u], 0, False])
                else:
                    low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        bridges.append(fr[1])

    for root in sorted(w.rot, key=_natkey):
        if root not in disc:
            dfs(root)
    return min(bridges, key=_natkey) if bridges else None


def _detach_edge(w: Web, eid: str):
    for v in list(w.rot):
        w.rot[v] = [he for he in w.rot[v] if he[0] != eid]
    w.ethick.pop(eid, None)
    w.etail.pop(eid, None)


def count_tait_colorings_web(w: Web) -> int:
    """Number of proper 3-edge colorings; each free circle contributes 3."""
    for v in w.rot:
        if w.vkind[v] == "boundary":
            raise WebError("Tait counting needs a closed web")
    pos = w.halfedge_pos()
    edges = sorted(w.ethick, key=_natkey)
    if any(w.ethick[e] != 1 for e in edges):
        raise WebError("Tait colorings need thickness-1 webs")
    vertex_edges = {v: [e for e, _ in w.rot[v]] for v in w.rot}
    for v, es in vertex_edges.items():
        if len(set(es)) != len(es):
            return 0  # loop or doubled slot at a vertex kills all colorings
    # order edges to keep constraint propagation tight
    order = []
    seen = set()
    for e in edges:
        if e in seen:
            continue
        stack = [e]
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            order.append(cur)
            a, b = pos[(cur, 0)][0], pos[(cur, 1)][0]
            for v in (a, b):
                stack.extend(x for x in vertex_edges[v] if x not in seen)
    color = {}

    def ok(eid, c):
        a, b = pos[(eid, 0)][0], pos[(eid, 1)][0]
        for v in (a, b):
            for other in vertex_edges[v]:
                if other != eid and color.get(other) == c:
                    return False
        return True

    def rec(i):
        if i == len(order):
            return 1
        eid = order[i]
        total = 0
        for c in (1, 2, 3):
            if ok(eid, c):
                color[eid] = c
                total += rec(i + 1)
                del color[eid]
        return total

    return rec(0) * 3 ** len(w.circles)


# ---------------------------------------------------------------------------
# reduction engine


class Reduced:
    def __init__(self, t, grk, trace):
        self.t = t
        self.grk = grk
        self.trace = trace

    reducible = True

    def __repr__(self):
        return f"Reduced(t={self.t}, grk={self.grk})"


class Irreducible:
    reducible = False

    def __init__(self, witness):
        self.witness = witness

    def __repr__(self):
        return f"Irreducible({self.witness})"


def _splice(w: Web, ha, hb):
    """Join two edge stubs whose joint vertices were just deleted.

    ha, hb are the (eid, end) entries that sat at the deleted vertices;
    their far ends must still be attached.  Returns ("edge", new_eid),
    or ("circle", new_cid) when both stubs belong to the same edge.
    """
    ea, enda = ha
    eb, endb = hb
    if ea == eb:
        th = w.ethick[ea]
        tail = w.etail[ea]
        _detach_edge(w, ea)
        cid = w.add_circle(thickness=th)
        if tail is not None:
            w.circles[cid]["oriented"] = True
        return ("circle", cid)
    pos = w.halfedge_pos()
    va, slota = pos[(ea, 1 - enda)]
    vb, slotb = pos[(eb, 1 - endb)]
    if w.ethick[ea] != w.ethick[eb]:
        raise WebError("splice of mismatched thickness")
    th = w.ethick[ea]
    # orientation flows through the join point; the stub is directed
    # into the join iff its end is the head of its edge
    tail = None
    ta, tb = w.etail[ea], w.etail[eb]
    if ta is not None or tb is not None:
        into_a = (ta != enda) if ta is not None else None
        into_b = (tb != endb) if tb is not None else None
        if into_a is not None and into_b is not None and into_a == into_b:
            raise WebError("splice with inconsistent orientations")
        if into_a is True or into_b is False:
            tail = 0  # flow runs far(ea) -> join -> far(eb)
        else:
            tail = 1
    eid = w.fresh("e")
    # replace the far-end entries in place so no rotation slots shift
    w.rot[va][slota] = (eid, 0)
    w.rot[vb][slotb] = (eid, 1)
    for old in (ea, eb):
        del w.ethick[old]
        del w.etail[old]
    w.ethick[eid] = th
    w.etail[eid] = tail
    return ("edge", eid)


def _remove_vertex(w: Web, vid):
    del w.rot[vid]
    del w.vkind[vid]
    w.bsign.pop(vid, None)


def _face_vertices(w: Web, face):
    pos = w.halfedge_pos()
    return [pos[(eid, 1 - end)][0] for (eid, end) in face]


def _external_halfedge(w: Web, vid, face_edges):
    for (eid, end) in w.rot[vid]:
        if eid not in face_edges:
            return (eid, end)
    return None


def remove_digon(w: Web, face):
    """Collapse a 2-sided region; returns (new ("edge"|"circle", id), info
    for replaying the inverse move)."""
    (e1, _), (e2, _) = face
    if e1 == e2:
        raise WebError("degenerate digon")
    va, vb = w.edge_vertices(e1)
    xa = _external_halfedge(w, va, {e1, e2})
    xb = _external_halfedge(w, vb, {e1, e2})
    if xa is None or xb is None:
        raise WebError("digon without external legs")
    info = {
        "edges": (e1, e2),
        "vertices": (va, vb),
        "externals": (xa, xb),
        "rots": {va: list(w.rot[va]), vb: list(w.rot[vb])},
    }
    _detach_edge(w, e1)
    _detach_edge(w, e2)
    _remove_vertex(w, va)
    _remove_vertex(w, vb)
    made = _splice(w, xa, xb)
    info["new"] = made
    return made, info


def contract_triangle(w: Web, face):
    """Collapse a 3-sided region to a single trivalent vertex; returns
    (new vertex id, replay info)."""
    edges = [eid for eid, _ in face]
    if len(set(edges)) != 3:
        raise WebError("degenerate triangle")
    vs = _face_vertices(w, face)
    if len(set(vs)) != 3:
        raise WebError("triangle with repeated vertices")
    exts = [_external_halfedge(w, v, set(edges)) for v in vs]
    if any(x is None for x in exts):
        raise WebError("triangle without external legs")
    info = {
        "edges": edges,  # edges[k] joins vs[k-1] and vs[k]
        "vertices": vs,
        "externals": exts,
        "rots": {v: list(w.rot[v]) for v in vs},
    }
    for eid in edges:
        _detach_edge(w, eid)
    for v in vs:
        _remove_vertex(w, v)
    nv = w.add_vertex()
    info["new_vertex"] = nv
    for exts_order in (list(reversed(exts)), list(exts)):
        w.rot[nv] = list(exts_order)
        try:
            w.check_planar()
            break
        except WebError:
            continue
    else:
        raise WebError("triangle contraction breaks planarity")
    info["rot_new"] = list(w.rot[nv])
    return nv, info


def square_branches(w: Web, face):
    """The two arc replacements of a 4-sided region (skein square rule).

    Returns (web_left, web_right, info) where the left web joins the
    external legs (x0-x1, x2-x3) in face order and the right web joins
    (x1-x2, x3-x0).
    """
    edges = [eid for eid, _ in face]
    if len(set(edges)) != 4:
        raise WebError("degenerate square")
    vs = _face_vertices(w, face)
    if len(set(vs)) != 4:
        raise WebError("square with repeated vertices")
    exts = [_external_halfedge(w, v, set(edges)) for v in vs]
    if any(x is None for x in exts):
        raise WebError("square without external legs")

    def build(pairing):
        ww = w.copy()
        for eid in edges:
            _detach_edge(ww, eid)
        for v in vs:
            _remove_vertex(ww, v)
        made = []
        for i, j in pairing:
            made.append(_splice(ww, exts[i], exts[j]))
        ww.check_planar()
        return ww, made

    left, made_l = build([(0, 1), (2, 3)])
    right, made_r = build([(1, 2), (3, 0)])
    info = {
        "edges": edges,  # edges[k] joins vs[k-1] and vs[k]
        "vertices": vs,
        "externals": exts,
        "rots": {v: list(w.rot[v]) for v in vs},
        "left_new": made_l,
        "right_new": made_r,
    }
    return left, right, info


def _candidate_faces(w: Web):
    faces = w.trace_faces()
    by_size = {}
    for f in faces:
        by_size.setdefault(len(f), []).append(f)
    for size in by_size:
        by_size[size].sort(key=lambda f: min((e, d) for e, d in f))
    return by_size


def reduce_web(w: Web, oriented: bool = False) -> Reduced | Irreducible:
    """Skein reduction to the empty web.

    Unoriented flavor: loops and bridges send everything to zero;
    circle, digon, triangle and square rules otherwise.  Oriented
    flavor (`oriented=True`) is the Kuperberg evaluation: only circle,
    digon and square rules may occur and failure is an internal error.
    """
    w = w.copy()
    if not w.is_closed():
        raise WebError("reduction needs a closed web")
    if oriented:
        w.check_oriented()
    return _reduce(w, oriented)


def _reduce(w: Web, oriented: bool):
    if w.is_empty():
        return Reduced(1, LaurentQ.one(), {"kind": "empty"})

    if not oriented:
        br = find_bridge(w)
        if br is not None:
            return Reduced(0, LaurentQ.zero(), {"kind": "bridge", "edge": br})

    # free circle
    if w.circles:
        cid = sorted(w.circles, key=_natkey)[0]
        th = w.circles[cid]["thickness"]
        if th != 1:
            raise WebError("reduction handles thickness-1 circles only")
        ww = w.copy()
        del ww.circles[cid]
        sub = _reduce(ww, oriented)
        if not sub.reducible:
            return sub
        return Reduced(
            3 * sub.t,
            quantum_integer(3) * sub.grk,
            {"kind": "circle", "circle": cid, "web_after": ww, "sub": sub.trace},
        )

    by_size = _candidate_faces(w)

    if 1 in by_size:
        if oriented:
            raise WebError("internal error: loop in an oriented web")
        return Reduced(0, LaurentQ.zero(), {"kind": "loop"})

    if 2 in by_size:
        face = by_size[2][0]
        ww = w.copy()
        made, info = remove_digon(ww, face)
        ww.check_planar()
        sub = _reduce(ww, oriented)
        if not sub.reducible:
            return sub
        return Reduced(
            2 * sub.t,
            quantum_integer(2) * sub.grk,
            {
                "kind": "digon",
                "face": face,
                "new": made,
                "info": info,
                "web_after": ww,
                "sub": sub.trace,
            },
        )

    if 3 in by_size and not oriented:
        face = by_size[3][0]
        ww = w.copy()
        nv, info = contract_triangle(ww, face)
        ww.check_planar()
        sub = _reduce(ww, oriented)
        if not sub.reducible:
            return sub
        return Reduced(
            sub.t,
            sub.grk,
            {
                "kind": "triangle",
                "face": face,
                "new_vertex": nv,
                "info": info,
                "web_after": ww,
                "sub": sub.trace,
            },
        )

    if 4 in by_size:
        face = by_size[4][0]
        left, right, info = square_branches(w, face)
        sub_l = _reduce(left, oriented)
        if not sub_l.reducible:
            return sub_l
        sub_r = _reduce(right, oriented)
        if not sub_r.reducible:
            return sub_r
        return Reduced(
            sub_l.t + sub_r.t,
            sub_l.grk + sub_r.grk,
            {
                "kind": "square",
                "face": face,
                "info": info,
                "web_left": left,
                "web_right": right,
                "sub_left": sub_l.trace,
                "sub_right": sub_r.trace,
            },
        )

    if oriented:
        raise WebError("internal error: oriented web stuck in reduction")
    witness = min(by_size) if by_size else 0
    return Irreducible(witness)


def kuperberg_poly(w: Web) -> LaurentQ:
    """Kuperberg invariant of a closed oriented web: circle -> [3],
    digon -> [2], square -> sum of the two arc replacements."""
    out = reduce_web(w, oriented=True)
    return out.grk


# ---------------------------------------------------------------------------
# webs with boundary


def is_nonelliptic(w: Web) -> bool:
    """True iff every inner region has at least six sides."""
    return all(r["sides"] >= 6 for r in w.regions() if r["inner"])


def is_balanced(signs) -> bool:
    """Sign sequence balance: weight divisible by 3."""
    return sum(signs) % 3 == 0


def close_up(w1: Web, w2: Web) -> Web:
    """Glue the reflection of w1 onto w2 along matching boundaries.

    Boundary points are matched in sign-sequence order; the i-th point
    of each web must carry the same sign (both webs have top boundary
    read left to right).
    """
    b1 = boundary_sequence(w1)
    b2 = boundary_sequence(w2)
    if [s for _, s in b1] != [s for _, s in b2]:
        raise WebError("boundary sign sequences differ")
    glued = Web()
    remap1 = _inject(glued, w1, "A_", mirror=True)
    remap2 = _inject(glued, w2, "B_", mirror=False)
    for (v1, _), (v2, _) in zip(b1, b2):
        ha = glued.rot[remap1[v1]][0]
        hb = glued.rot[remap2[v2]][0]
        _remove_vertex(glued, remap1[v1])
        _remove_vertex(glued, remap2[v2])
        _splice(glued, ha, hb)
    glued.validate()
    return glued


def boundary_sequence(w: Web):
    """Boundary points with signs, sorted by id."""
    return [
        (v, w.bsign[v])
        for v in sorted(w.rot, key=_natkey)
        if w.vkind[v] == "boundary"
    ]


def _inject(dst: Web, src: Web, prefix: str, mirror: bool):
    vmap = {v: prefix + v for v in src.rot}
    emap = {e: prefix + e for e in src.ethick}
    for v in src.rot:
        dst.rot[vmap[v]] = [
            (emap[e], end) for (e, end) in (reversed(src.rot[v]) if mirror else src.rot[v])
        ]
        dst.vkind[vmap[v]] = src.vkind[v]
        if v in src.bsign:
            dst.bsign[vmap[v]] = src.bsign[v]
    for e in src.ethick:
        dst.ethick[emap[e]] = src.ethick[e]
        tail = src.etail[e]
        if tail is not None and mirror:
            tail = 1 - tail
        dst.etail[emap[e]] = tail
    for c in src.circles:
        dst.circles[prefix + c] = dict(src.circles[c])
    return vmap


# ---------------------------------------------------------------------------
# ready-made webs


def circle_web(thickness: int = 1) -> Web:
    w = Web()
    w.add_circle("c1", thickness=thickness)
    return w


def theta_web(oriented: bool = False) -> Web:
    """Two trivalent vertices joined by three parallel edges."""
    w = Web()
    w.add_vertex("v1")
    w.add_vertex("v2")
    # opposite cyclic orders at the two endpoints keep the map planar
    w.rot["v1"] = [("e1", 0), ("e2", 0), ("e3", 0)]
    w.rot["v2"] = [("e3", 1), ("e2", 1), ("e1", 1)]
    for eid in ("e1", "e2", "e3"):
        w.ethick[eid] = 1
        w.etail[eid] = 0 if oriented else None
    w.validate()
    if oriented:
        w.check_oriented()
    return w


def k4_web() -> Web:
    """The complete graph on four vertices, planar embedding."""
    w = Web()
    for v in ("v1", "v2", "v3", "v4"):
        w.add_vertex(v)
    # outer triangle v1 v2 v3, center v4
    w.rot["v1"] = [("e12", 0), ("e14", 0), ("e13", 0)]
    w.rot["v2"] = [("e23", 0), ("e24", 0), ("e12", 1)]
    w.rot["v3"] = [("e13", 1), ("e34", 0), ("e23", 1)]
    w.rot["v4"] = [("e14", 1), ("e24", 1), ("e34", 1)]
    for eid in ("e12", "e13", "e14", "e23", "e24", "e34"):
        w.ethick[eid] = 1
        w.etail[eid] = None
    w.validate()
    return w


def dodecahedron_web() -> Web:
    """The dodecahedron graph: 20 vertices, 30 edges, 12 pentagons."""
    w = Web()
    for i in range(20):
        w.add_vertex(f"v{i}")

    def ring(names):
        return [f"v{i}" for i in names]

    outer = list(range(5))           # v0..v4
    upper = list(range(5, 10))       # v5..v9, spoke to outer
    lower = list(range(10, 15))      # v10..v14
    inner = list(range(15, 20))      # v15..v19

    edges = []

    def add(a, b):
        eid = f"e{len(edges)}"
        edges.append((eid, a, b))
        return eid

    e_outer = [add(outer[i], outer[(i + 1) % 5]) for i in range(5)]
    e_spoke1 = [add(outer[i], upper[i]) for i in range(5)]
    e_up = [add(upper[i], lower[i]) for i in range(5)]
    e_dn = [add(lower[i], upper[(i + 1) % 5]) for i in range(5)]
    e_spoke2 = [add(lower[i], inner[i]) for i in range(5)]
    e_inner = [add(inner[i], inner[(i + 1) % 5]) for i in range(5)]

    rot = {i: [] for i in range(20)}
    for i in range(5):
        rot[outer[i]] = [e_outer[i], e_spoke1[i], e_outer[(i - 1) % 5]]
        rot[upper[i]] = [e_spoke1[i], e_up[i], e_dn[(i - 1) % 5]]
        rot[lower[i]] = [e_dn[i], e_spoke2[i], e_up[i]]
        rot[inner[i]] = [e_spoke2[i], e_inner[i], e_inner[(i - 1) % 5]]

    seen = {}
    for i in range(20):
        r = []
        for eid in rot[i]:
            end = seen.get(eid, 0)
            seen[eid] = end + 1
            r.append((eid, end))
        w.rot[f"v{i}"] = r
    for eid, _, _ in edges:
        w.ethick[eid] = 1
        w.etail[eid] = None
    w.validate()
    return w
