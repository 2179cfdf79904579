"""Oriented combinatorial maps (rotation systems) and their surgeries.

A surface is encoded by half-edges 0..H-1 with two permutations: ``twin``
(fixed-point-free involution pairing the two sides of each edge) and ``next``
(whose orbits are the face boundary walks, each face lying on the left of its
half-edges).  Vertices are derived: the rotation ``h -> next[twin[h]]`` cycles
clockwise through the half-edges leaving a vertex.  Surfaces with boundary
flag whole face orbits as holes via ``boundary_marks``; holes are excluded
from the Euler characteristic.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidMapError, NotEmbeddedError


@dataclass(frozen=True)
class CombMap:
    """Oriented combinatorial map, possibly disconnected, possibly with boundary."""

    twin: tuple[int, ...]
    next: tuple[int, ...]
    boundary_marks: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        h_count = len(self.twin)
        if len(self.next) != h_count:
            raise InvalidMapError("twin and next must have equal length")
        if sorted(self.next) != list(range(h_count)):
            raise InvalidMapError("next is not a permutation")
        for h in range(h_count):
            t = self.twin[h]
            if not 0 <= t < h_count or t == h or self.twin[t] != h:
                raise InvalidMapError("twin is not a fixed-point-free involution")
        for h in self.boundary_marks:
            if not 0 <= h < h_count:
                raise InvalidMapError("boundary mark out of range")
            if self.next[h] not in self.boundary_marks:
                raise InvalidMapError("boundary marks must cover whole face orbits")
            if self.twin[h] in self.boundary_marks:
                raise InvalidMapError("an edge cannot have both sides free")

    # ----- basic counts -----

    @property
    def half_edge_count(self) -> int:
        return len(self.twin)

    @property
    def edge_count(self) -> int:
        return len(self.twin) // 2

    @cached_property
    def prev(self) -> tuple[int, ...]:
        out = [0] * len(self.next)
        for h, n in enumerate(self.next):
            out[n] = h
        return tuple(out)

    # ----- derived cell structure -----

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return _orbits(self.next)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        return _orbit_index(self.faces, len(self.next))

    @cached_property
    def hole_faces(self) -> frozenset[int]:
        return frozenset(
            i for i, f in enumerate(self.faces) if f[0] in self.boundary_marks
        )

    @cached_property
    def real_face_count(self) -> int:
        return len(self.faces) - len(self.hole_faces)

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        rotation = tuple(self.next[self.twin[h]] for h in range(len(self.next)))
        return _orbits(rotation)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Origin vertex index of each half-edge."""
        return _orbit_index(self.vertices, len(self.next))

    def head(self, h: int) -> int:
        return self.vertex_of[self.twin[h]]

    def rotation_at(self, v: int) -> tuple[int, ...]:
        """Half-edges leaving vertex v, in clockwise order."""
        return self.vertices[v]

    def degree(self, v: int) -> int:
        return len(self.vertices[v])

    def is_boundary_vertex(self, v: int) -> bool:
        return any(h in self.boundary_marks for h in self.vertices[v])

    # ----- topology -----

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        """Connected components as half-edge sets, ordered by smallest index."""
        seen: set[int] = set()
        comps = []
        for start in range(len(self.next)):
            if start in seen:
                continue
            comp = set()
            queue = deque([start])
            while queue:
                h = queue.popleft()
                if h in comp:
                    continue
                comp.add(h)
                queue.extend((self.next[h], self.twin[h]))
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    def euler_char(self) -> int:
        """V - E + F over all components, holes not counted as faces."""
        return len(self.vertices) - self.edge_count + self.real_face_count

    def component_euler_char(self, comp: frozenset[int]) -> int:
        v = len({self.vertex_of[h] for h in comp})
        e = len(comp) // 2
        f = len(
            {self.face_of[h] for h in comp} - {self.face_of[h] for h in comp & self.boundary_marks}
        )
        return v - e + f

    def component_boundary_count(self, comp: frozenset[int]) -> int:
        return len({self.face_of[h] for h in comp & self.boundary_marks})

    def component_genus(self, comp: frozenset[int]) -> int:
        chi = self.component_euler_char(comp)
        b = self.component_boundary_count(comp)
        return (2 - chi - b) // 2

    def is_closed(self) -> bool:
        return not self.boundary_marks


def _orbits(perm: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        h = start
        while not seen[h]:
            seen[h] = True
            orbit.append(h)
            h = perm[h]
        out.append(tuple(orbit))
    return tuple(out)


def _orbit_index(orbits: tuple[tuple[int, ...], ...], n: int) -> tuple[int, ...]:
    out = [0] * n
    for i, orbit in enumerate(orbits):
        for h in orbit:
            out[h] = i
    return tuple(out)


# ----- curve systems -----


@dataclass(frozen=True)
class CurveSystem:
    """Disjoint embedded closed curves and properly embedded arcs.

    Each entry is a sequence of half-edges traversed head-to-tail; cycles
    close up, arcs run between boundary vertices.  Orientation is the
    traversal direction of the half-edges.
    """

    cycles: tuple[tuple[int, ...], ...] = ()
    arcs: tuple[tuple[int, ...], ...] = ()

    def all_curves(self) -> tuple[tuple[int, ...], ...]:
        return self.cycles + self.arcs

    def half_edges(self) -> frozenset[int]:
        return frozenset(itertools.chain.from_iterable(self.all_curves()))

    def validate(self, m: CombMap) -> None:
        used_edges: set[frozenset[int]] = set()
        used_vertices: set[int] = set()
        for cycle in self.cycles:
            if not cycle:
                raise NotEmbeddedError("empty cycle")
            verts = [m.vertex_of[h] for h in cycle]
            for i, h in enumerate(cycle):
                if m.head(h) != verts[(i + 1) % len(cycle)]:
                    raise NotEmbeddedError("cycle half-edges are not consecutive")
            if len(set(verts)) != len(verts):
                raise NotEmbeddedError("cycle revisits a vertex")
            _claim(m, cycle, verts, used_edges, used_vertices)
        for arc in self.arcs:
            if not arc:
                raise NotEmbeddedError("empty arc")
            verts = [m.vertex_of[h] for h in arc] + [m.head(arc[-1])]
            for i, h in enumerate(arc[:-1]):
                if m.head(h) != verts[i + 1]:
                    raise NotEmbeddedError("arc half-edges are not consecutive")
            if len(set(verts)) != len(verts):
                raise NotEmbeddedError("arc revisits a vertex")
            if not m.is_boundary_vertex(verts[0]) or not m.is_boundary_vertex(verts[-1]):
                raise NotEmbeddedError("arc endpoints must lie on the boundary")
            _claim(m, arc, verts, used_edges, used_vertices)

    def edge_set(self, m: CombMap) -> frozenset[int]:
        """All half-edges covered by the system, both directions."""
        out = set()
        for h in self.half_edges():
            out.add(h)
            out.add(m.twin[h])
        return frozenset(out)


def _claim(
    m: CombMap,
    curve: tuple[int, ...],
    verts: list[int],
    used_edges: set[frozenset[int]],
    used_vertices: set[int],
) -> None:
    distinct = set(verts)
    if distinct & used_vertices:
        raise NotEmbeddedError("curves of one system must be vertex-disjoint")
    used_vertices |= distinct
    for h in curve:
        edge = frozenset((h, m.twin[h]))
        if edge in used_edges:
            raise NotEmbeddedError("curves reuse an edge")
        used_edges.add(edge)
        if h in m.boundary_marks or m.twin[h] in m.boundary_marks:
            raise NotEmbeddedError("curves may not run along the boundary")


def reverse_cycle(m: CombMap, cycle: tuple[int, ...]) -> tuple[int, ...]:
    """The same cycle traversed the other way."""
    return tuple(m.twin[h] for h in reversed(cycle))


def transverse_crossings(m: CombMap, a: CurveSystem, b: CurveSystem) -> tuple[int, ...]:
    """Vertices where systems a and b cross, verified 4-valent and interleaved."""
    verts_a = _system_vertices(m, a)
    verts_b = _system_vertices(m, b)
    crossings = sorted(verts_a & verts_b)
    he_a = a.edge_set(m)
    he_b = b.edge_set(m)
    for v in crossings:
        rot = m.rotation_at(v)
        if len(rot) != 4:
            raise NotEmbeddedError(f"crossing vertex {v} is not 4-valent")
        tags = []
        for h in rot:
            in_a = h in he_a
            in_b = h in he_b
            if in_a == in_b:
                raise NotEmbeddedError(f"crossing vertex {v} has a stray strand")
            tags.append("a" if in_a else "b")
        if tags not in (["a", "b", "a", "b"], ["b", "a", "b", "a"]):
            raise NotEmbeddedError(f"strands at vertex {v} do not interleave")
    return tuple(crossings)


def _system_vertices(m: CombMap, sys: CurveSystem) -> set[int]:
    out: set[int] = set()
    for curve in sys.all_curves():
        for h in curve:
            out.add(m.vertex_of[h])
        if curve in sys.arcs:
            out.add(m.head(curve[-1]))
    return out


# ----- surgeries -----


@dataclass(frozen=True)
class CutResult:
    map: CombMap
    left: tuple[int, ...]
    right: tuple[int, ...]


def cut_cycle(m: CombMap, cycle: tuple[int, ...]) -> CutResult:
    """Cut the surface along an embedded interior cycle.

    The cycle becomes two free boundary circles: ``left`` lies on the left of
    the traversal direction and runs backward along it, ``right`` on the right
    runs forward.  Existing half-edge indices are preserved; the cycle's
    half-edges keep their geometric position on the left piece.
    """
    CurveSystem(cycles=(tuple(cycle),)).validate(m)
    for h in cycle:
        v = m.vertex_of[h]
        if m.is_boundary_vertex(v):
            raise NotEmbeddedError("cut cycle touches the boundary")
    h_count = len(m.twin)
    k = len(cycle)
    a = tuple(h_count + i for i in range(k))
    b = tuple(h_count + k + i for i in range(k))
    twin = list(m.twin) + [0] * (2 * k)
    nxt = list(m.next) + [0] * (2 * k)
    for i, h in enumerate(cycle):
        t = m.twin[h]
        twin[h] = a[i]
        twin[a[i]] = h
        twin[t] = b[i]
        twin[b[i]] = t
        nxt[a[i]] = a[(i - 1) % k]
        nxt[b[i]] = b[(i + 1) % k]
    marks = m.boundary_marks | frozenset(a) | frozenset(b)
    return CutResult(CombMap(tuple(twin), tuple(nxt), marks), a, b)


def cut_along(m: CombMap, system: CurveSystem) -> CombMap:
    """Cut along every cycle of the system (arcs are not allowed here)."""
    if system.arcs:
        raise NotEmbeddedError("cut_along takes closed cycles only")
    system.validate(m)
    out = m
    for cycle in system.cycles:
        out = cut_cycle(out, cycle).map
    return out


@dataclass(frozen=True)
class ArcCutResult:
    map: CombMap
    left: tuple[int, ...]
    right: tuple[int, ...]


def cut_arc(m: CombMap, arc: tuple[int, ...]) -> ArcCutResult:
    """Cut along a properly embedded arc between two boundary vertices.

    ``left`` holds the new twins of the arc half-edges (left side of the
    traversal), ``right`` the new twins of their old twins.
    """
    CurveSystem(arcs=(tuple(arc),)).validate(m)
    v_start = m.vertex_of[arc[0]]
    v_end = m.head(arc[-1])
    for h in arc[1:]:
        if m.is_boundary_vertex(m.vertex_of[h]):
            raise NotEmbeddedError("arc interior touches the boundary")
    q_in_start, q_out_start = _hole_corner(m, v_start)
    q_in_end, q_out_end = _hole_corner(m, v_end)
    h_count = len(m.twin)
    k = len(arc)
    a = tuple(h_count + i for i in range(k))
    b = tuple(h_count + k + i for i in range(k))
    twin = list(m.twin) + [0] * (2 * k)
    nxt = list(m.next) + [0] * (2 * k)
    for i, h in enumerate(arc):
        t = m.twin[h]
        twin[h] = a[i]
        twin[a[i]] = h
        twin[t] = b[i]
        twin[b[i]] = t
        if i >= 1:
            nxt[a[i]] = a[i - 1]
        if i <= k - 2:
            nxt[b[i]] = b[i + 1]
    nxt[q_in_start] = b[0]
    nxt[b[k - 1]] = q_out_end
    nxt[q_in_end] = a[k - 1]
    nxt[a[0]] = q_out_start
    marks = m.boundary_marks | frozenset(a) | frozenset(b)
    return ArcCutResult(CombMap(tuple(twin), tuple(nxt), marks), a, b)


def _hole_corner(m: CombMap, v: int) -> tuple[int, int]:
    """The unique (incoming, outgoing) hole half-edge pair at a boundary vertex."""
    outgoing = [h for h in m.rotation_at(v) if h in m.boundary_marks]
    if len(outgoing) != 1:
        raise NotEmbeddedError(f"vertex {v} must lie on exactly one hole corner")
    q_out = outgoing[0]
    return m.prev[q_out], q_out


@dataclass(frozen=True)
class SubdivideResult:
    map: CombMap
    first: int
    second: int
    twin_first: int
    twin_second: int


def subdivide_edge(m: CombMap, h: int) -> SubdivideResult:
    """Insert a 2-valent vertex into the edge carrying h.

    The traversal that used h now takes (first, second) = (h, new); the
    reverse traversal that used twin(h) now takes (twin_first, twin_second) =
    (twin(h), new').  Twins pair first<->twin_second and second<->twin_first.
    """
    t = m.twin[h]
    n1 = len(m.twin)
    n2 = n1 + 1
    twin = list(m.twin) + [0, 0]
    nxt = list(m.next) + [0, 0]
    # h: u->w, n1: w->v, t: v->w, n2: w->u
    twin[h] = n2
    twin[n2] = h
    twin[n1] = t
    twin[t] = n1
    nxt[n1] = m.next[h]
    nxt[h] = n1
    nxt[n2] = m.next[t]
    nxt[t] = n2
    marks = set(m.boundary_marks)
    if h in marks:
        marks.add(n1)
    if t in marks:
        marks.add(n2)
    return SubdivideResult(CombMap(tuple(twin), tuple(nxt), frozenset(marks)), h, n1, t, n2)


@dataclass(frozen=True)
class ChordResult:
    map: CombMap
    forward: int
    backward: int


def add_chord(m: CombMap, p: int, q: int) -> ChordResult:
    """Add an edge from origin(p) to origin(q) through their common face.

    p and q must be distinct positions on the walk of one non-hole face; the
    face splits in two.  ``forward`` runs origin(p) -> origin(q).
    """
    if p == q:
        raise NotEmbeddedError("chord endpoints must be distinct corners")
    if m.face_of[p] != m.face_of[q]:
        raise NotEmbeddedError("chord endpoints must lie on one face")
    if p in m.boundary_marks:
        raise NotEmbeddedError("chords may not cross a hole")
    x = len(m.twin)
    y = x + 1
    twin = list(m.twin) + [y, x]
    nxt = list(m.next) + [0, 0]
    nxt[m.prev[p]] = x
    nxt[x] = q
    nxt[m.prev[q]] = y
    nxt[y] = p
    return ChordResult(CombMap(tuple(twin), tuple(nxt), m.boundary_marks), x, y)


@dataclass(frozen=True)
class GlueResult:
    map: CombMap
    old_to_new: tuple[int | None, ...]


def glue_holes(m: CombMap, anchor_a: int, anchor_b: int) -> GlueResult:
    """Glue the hole of anchor_a to the hole of anchor_b, direction reversing.

    The edge under anchor_a is identified with the edge under anchor_b, and
    successive hole edges of A (in next order) with successive hole edges of B
    in prev order.  Both hole faces disappear; indices are compacted.
    """
    if anchor_a not in m.boundary_marks or anchor_b not in m.boundary_marks:
        raise NotEmbeddedError("glue anchors must be hole half-edges")
    if m.face_of[anchor_a] == m.face_of[anchor_b]:
        raise NotEmbeddedError("cannot glue a hole to itself")
    walk_a = _face_from(m, anchor_a)
    walk_b = _face_from(m, anchor_b)
    if len(walk_a) != len(walk_b):
        raise NotEmbeddedError("glued holes must have equal length")
    pairs = [
        (walk_a[i], walk_b[-i % len(walk_b)]) for i in range(len(walk_a))
    ]
    twin = list(m.twin)
    dead = set()
    for ha, hb in pairs:
        ra, rb = m.twin[ha], m.twin[hb]
        twin[ra] = rb
        twin[rb] = ra
        dead.add(ha)
        dead.add(hb)
    old_to_new: list[int | None] = []
    fresh = 0
    for h in range(len(m.twin)):
        if h in dead:
            old_to_new.append(None)
        else:
            old_to_new.append(fresh)
            fresh += 1
    new_twin = [0] * fresh
    new_next = [0] * fresh
    for h in range(len(m.twin)):
        nh = old_to_new[h]
        if nh is None:
            continue
        new_twin[nh] = old_to_new[twin[h]]
        new_next[nh] = old_to_new[m.next[h]]
    marks = frozenset(
        old_to_new[h] for h in m.boundary_marks if old_to_new[h] is not None
    )
    return GlueResult(CombMap(tuple(new_twin), tuple(new_next), marks), tuple(old_to_new))


def _face_from(m: CombMap, start: int) -> list[int]:
    out = [start]
    h = m.next[start]
    while h != start:
        out.append(h)
        h = m.next[h]
    return out


def open_face(m: CombMap, face_index: int) -> CombMap:
    """Turn one real face into a hole (remove an open disk from the surface)."""
    face = m.faces[face_index]
    if face[0] in m.boundary_marks:
        raise InvalidMapError("face is already a hole")
    for h in face:
        if m.twin[h] in m.boundary_marks or m.face_of[m.twin[h]] == face_index:
            raise InvalidMapError("opened face would free both sides of an edge")
    return CombMap(m.twin, m.next, m.boundary_marks | frozenset(face))


@dataclass
class CurveTracker:
    """Transports half-edge paths through subdivisions, chords, and relabelings."""

    map: CombMap
    paths: dict[str, list[int]] = field(default_factory=dict)

    def subdivide(self, h: int) -> tuple[int, int]:
        """Split the edge of h; returns (second, twin_second)."""
        res = subdivide_edge(self.map, h)
        for path in self.paths.values():
            out = []
            for g in path:
                out.append(g)
                if g == res.first:
                    out.append(res.second)
                elif g == res.twin_first:
                    out.append(res.twin_second)
            path[:] = out
        self.map = res.map
        return res.second, res.twin_second

    def add_chord(self, p: int, q: int) -> tuple[int, int]:
        res = add_chord(self.map, p, q)
        self.map = res.map
        return res.forward, res.backward

    def relabel(self, new_map: CombMap, old_to_new: tuple[int | None, ...]) -> None:
        for name, path in self.paths.items():
            out = []
            for g in path:
                ng = old_to_new[g]
                if ng is None:
                    raise InvalidMapError(f"path {name} lost a half-edge in relabeling")
                out.append(ng)
            path[:] = out
        self.map = new_map


def disjoint_union(maps: list[CombMap]) -> tuple[CombMap, tuple[int, ...]]:
    """Concatenate maps into one; returns the index offset of each input."""
    twin: list[int] = []
    nxt: list[int] = []
    marks: set[int] = set()
    offsets = []
    for m in maps:
        off = len(twin)
        offsets.append(off)
        twin.extend(t + off for t in m.twin)
        nxt.extend(n + off for n in m.next)
        marks |= {h + off for h in m.boundary_marks}
    return CombMap(tuple(twin), tuple(nxt), frozenset(marks)), tuple(offsets)


def extract_component(m: CombMap, comp: frozenset[int]) -> tuple[CombMap, tuple[int | None, ...]]:
    """Restrict to one connected component; returns the relabeling."""
    old_to_new: list[int | None] = []
    fresh = 0
    for h in range(len(m.twin)):
        if h in comp:
            old_to_new.append(fresh)
            fresh += 1
        else:
            old_to_new.append(None)
    twin = [0] * fresh
    nxt = [0] * fresh
    for h in comp:
        twin[old_to_new[h]] = old_to_new[m.twin[h]]
        nxt[old_to_new[h]] = old_to_new[m.next[h]]
    marks = frozenset(old_to_new[h] for h in m.boundary_marks & comp)
    return CombMap(tuple(twin), tuple(nxt), marks), tuple(old_to_new)


def region_euler_char(m: CombMap, faces: set[int]) -> int:
    """Euler characteristic of the closure of a union of non-hole faces."""
    half_edges = [h for h in range(len(m.twin)) if m.face_of[h] in faces]
    edges = {frozenset((h, m.twin[h])) for h in half_edges}
    verts = {m.vertex_of[h] for h in half_edges} | {m.head(h) for h in half_edges}
    return len(verts) - len(edges) + len(faces)


# ----- isomorphism -----


def canonical_key(
    m: CombMap, labels: tuple[tuple[int, ...], ...] | None = None
) -> tuple:
    """Canonical form of a labeled map: BFS relabeling from every start, lex min.

    Labels are per-half-edge tuples of ints; the boundary flag is always
    included.  Disconnected maps canonicalize per component, components sorted.
    """
    if labels is None:
        labels = tuple(() for _ in range(len(m.twin)))
    full_labels = tuple(
        ((1 if h in m.boundary_marks else 0),) + tuple(labels[h])
        for h in range(len(m.twin))
    )
    keys = []
    for comp in m.components:
        best = None
        comp_sorted = sorted(comp)
        for start in comp_sorted:
            key = _bfs_key(m, start, comp, full_labels)
            if best is None or key < best:
                best = key
        keys.append(best)
    return tuple(sorted(keys))


def _bfs_key(
    m: CombMap,
    start: int,
    comp: frozenset[int],
    labels: tuple[tuple[int, ...], ...],
) -> tuple:
    order: dict[int, int] = {start: 0}
    queue = deque([start])
    seq = [start]
    while queue:
        h = queue.popleft()
        for g in (m.next[h], m.twin[h]):
            if g not in order:
                order[g] = len(order)
                queue.append(g)
                seq.append(g)
    twin = tuple(order[m.twin[h]] for h in seq)
    nxt = tuple(order[m.next[h]] for h in seq)
    labs = tuple(labels[h] for h in seq)
    return (len(comp), twin, nxt, labs)


def isomorphic(
    a: CombMap,
    b: CombMap,
    labels_a: tuple[tuple[int, ...], ...] | None = None,
    labels_b: tuple[tuple[int, ...], ...] | None = None,
) -> bool:
    """Label- and orientation-preserving map isomorphism via canonical forms."""
    return canonical_key(a, labels_a) == canonical_key(b, labels_b)


def is_null_homotopic(m: CombMap, cycle: tuple[int, ...]) -> bool:
    """True iff the embedded cycle bounds a disk: some cut piece has chi = 1."""
    cut = cut_cycle(m, cycle)
    mm = cut.map
    comps = {}
    for side in (cut.left[0], cut.right[0]):
        for comp in mm.components:
            if side in comp:
                comps[comp] = True
    return any(mm.component_euler_char(c) == 1 for c in comps)
