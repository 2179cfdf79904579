"""Cutting surfaces with divides: validity checks and bounded enumeration.

A surface with divides carries a multicurve sigma of properly embedded arcs
and closed curves splitting it into signed regions, plus marked points
(slots) on its boundary where the host's dividing set will cross after a
split.  Slots and sigma endpoints alternate around every boundary circle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from .combmap import (
    CombMap,
    CurveSystem,
    add_chord,
    canonical_key,
    cut_arc,
    disjoint_union,
    is_null_homotopic,
    region_euler_char,
    reverse_cycle,
)
from .errors import (
    InvalidMapError,
    SignConflictError,
    UnsupportedTopologyError,
)
from .library import disk_polygon, from_polygons

if TYPE_CHECKING:
    from .convex import MarkedSurface
    from .split import SplitEmbedding


@dataclass(frozen=True)
class DividesOptions:
    """Bounds making the configuration space finite."""

    allow_closed: int = 0
    twist_bound: int = 0
    boundary_parallel_only: bool = False

    def __post_init__(self) -> None:
        if self.allow_closed < 0 or self.twist_bound < 0:
            raise InvalidMapError("enumeration bounds must be nonnegative")


@dataclass(frozen=True)
class BoundaryWord:
    """Marked points of one boundary circle in word order.

    ``hole`` lists the hole half-edges so that entry i runs from word vertex
    i+1 to word vertex i; letter i labels word vertex i as ("slot", ordinal)
    or ("tail"/"head", arc index).
    """

    hole: tuple[int, ...]
    letters: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class SurfaceWithDivides:
    """Compact surface with boundary, divided by sigma into signed regions.

    ``arcs`` and ``closed`` are oriented half-edge paths; the face on the
    left of sigma is positive.  ``slots`` are hole half-edges whose origin
    vertices mark future crossings with the host dividing set; every
    boundary vertex is either a slot origin or a sigma endpoint.
    """

    map: CombMap
    arcs: tuple[tuple[int, ...], ...]
    closed: tuple[tuple[int, ...], ...] = ()
    slots: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        m = self.map
        CurveSystem(cycles=self.closed, arcs=self.arcs).validate(m)
        for cycle in self.closed:
            for h in cycle:
                if m.is_boundary_vertex(m.vertex_of[h]):
                    raise InvalidMapError("closed sigma curves must stay interior")
        if not self.slots <= m.boundary_marks:
            raise InvalidMapError("slots must be hole half-edges")
        for comp in m.components:
            if not comp & m.boundary_marks:
                raise InvalidMapError("every component needs a boundary circle")
            if not any(a[0] in comp for a in self.arcs):
                raise InvalidMapError("every component needs a sigma arc")
        self.boundary_words

    @cached_property
    def sigma(self) -> CurveSystem:
        return CurveSystem(cycles=self.closed, arcs=self.arcs)

    @cached_property
    def _endpoint_kind(self) -> dict[int, tuple[str, int]]:
        out: dict[int, tuple[str, int]] = {}
        m = self.map
        for i, arc in enumerate(self.arcs):
            for vertex, kind in ((m.vertex_of[arc[0]], "tail"), (m.head(arc[-1]), "head")):
                if vertex in out:
                    raise InvalidMapError("two sigma endpoints share a vertex")
                out[vertex] = (kind, i)
        return out

    @cached_property
    def boundary_words(self) -> tuple[BoundaryWord, ...]:
        m = self.map
        slot_vertices = {m.vertex_of[h]: h for h in self.slots}
        if len(slot_vertices) != len(self.slots):
            raise InvalidMapError("two slots share a vertex")
        endpoint_kind = self._endpoint_kind
        words = []
        for hole in _holes(m):
            slot_rank = {
                v: i
                for i, v in enumerate(
                    sorted(
                        (m.vertex_of[h] for h in hole if h in self.slots),
                        key=lambda v: slot_vertices[v],
                    )
                )
            }
            word_halves = _rotate_word(m, hole, self.slots)
            heads = [m.head(g) for g in word_halves]
            if len(set(heads)) != len(heads):
                raise InvalidMapError("a boundary circle visits a vertex twice")
            letters = []
            for g, v in zip(word_halves, heads):
                if v in slot_rank and v in endpoint_kind:
                    raise InvalidMapError("a slot coincides with a sigma endpoint")
                if v in slot_rank:
                    letters.append(("slot", slot_rank[v]))
                elif v in endpoint_kind:
                    letters.append(endpoint_kind[v])
                else:
                    raise InvalidMapError("unmarked boundary vertex")
            words.append(BoundaryWord(tuple(word_halves), tuple(letters)))
        return tuple(words)

    @cached_property
    def partition(self) -> tuple[tuple[int, ...], tuple[frozenset[int], ...], tuple[int, ...]]:
        """(region_of, regions, signs); hole faces get region -1."""
        return _sign_partition(self.map, self.sigma)

    def sign_of_face(self, face: int) -> int:
        region = self.partition[0][face]
        if region < 0:
            raise InvalidMapError("hole faces carry no sign")
        return self.partition[2][region]

    def chi_signed(self, sign: int) -> int:
        region_of, regions, signs = self.partition
        faces = {f for r, fs in enumerate(regions) if signs[r] == sign for f in fs}
        return region_euler_char(self.map, faces)

    def euler_char(self) -> int:
        return self.map.euler_char()

    def labels(self) -> tuple[tuple[int, ...], ...]:
        """Per-half-edge labels anchoring slots and sigma for isomorphism."""
        m = self.map
        out = [[0, 0] for _ in range(len(m.twin))]
        for word_index, word in enumerate(self.boundary_words):
            for g, (kind, rank) in zip(word.hole, word.letters):
                if kind == "slot":
                    out[g][0] = rank + 1
        for curve in self.arcs + self.closed:
            for h in curve:
                out[h][1] = 1
                out[m.twin[h]][1] = -1
        return tuple(tuple(v) for v in out)

    def reversed_components(self, component_indices: frozenset[int]) -> SurfaceWithDivides:
        """Flip sigma orientations on the chosen map components."""
        m = self.map
        comps = m.components
        flipped = {h for i in component_indices for h in comps[i]}
        arcs = tuple(
            tuple(m.twin[h] for h in reversed(a)) if a[0] in flipped else a
            for a in self.arcs
        )
        closed = tuple(
            reverse_cycle(m, c) if c[0] in flipped else c for c in self.closed
        )
        return SurfaceWithDivides(m, arcs, closed, self.slots)


def _holes(m: CombMap) -> tuple[tuple[int, ...], ...]:
    """Hole orbits ordered and rotated by their smallest half-edge."""
    out = []
    for face_index in sorted(m.hole_faces):
        face = m.faces[face_index]
        start = face.index(min(face))
        out.append(face[start:] + face[:start])
    return tuple(out)


def _rotate_word(m: CombMap, hole: tuple[int, ...], slots: frozenset[int]) -> list[int]:
    """Reverse the hole orbit into word order and start at slot zero.

    Word vertex i is the head of entry i; slot zero is the slot whose
    marking half-edge has the smallest index on this hole.
    """
    slot_halves = [h for h in hole if h in slots]
    if not slot_halves:
        raise InvalidMapError("a boundary circle has no slots")
    anchor_vertex = m.vertex_of[min(slot_halves)]
    word = list(reversed(hole))
    for i, g in enumerate(word):
        if m.head(g) == anchor_vertex:
            return word[i:] + word[:i]
    raise InvalidMapError("slot vertex not found on its hole")


def _sign_partition(
    m: CombMap, sigma: CurveSystem
) -> tuple[tuple[int, ...], tuple[frozenset[int], ...], tuple[int, ...]]:
    sigma_edges = sigma.edge_set(m)
    face_count = len(m.faces)
    parent = list(range(face_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    holes = m.hole_faces
    for h in range(len(m.twin)):
        if h in sigma_edges or h in m.boundary_marks or m.twin[h] in m.boundary_marks:
            continue
        a, b = find(m.face_of[h]), find(m.face_of[m.twin[h]])
        if a != b:
            parent[a] = b

    roots = sorted({find(f) for f in range(face_count) if f not in holes})
    region_index = {r: i for i, r in enumerate(roots)}
    region_of = tuple(
        -1 if f in holes else region_index[find(f)] for f in range(face_count)
    )
    regions: list[set[int]] = [set() for _ in roots]
    for f in range(face_count):
        if region_of[f] >= 0:
            regions[region_of[f]].add(f)

    signs: list[int | None] = [None] * len(roots)

    def assign(region: int, sign: int) -> None:
        if signs[region] is None:
            signs[region] = sign
        elif signs[region] != sign:
            raise SignConflictError("sigma does not separate signed regions")

    for curve in sigma.all_curves():
        for h in curve:
            assign(region_of[m.face_of[h]], +1)
            assign(region_of[m.face_of[m.twin[h]]], -1)
    if any(sg is None for sg in signs):
        raise SignConflictError("a region received no sign from sigma")
    return region_of, tuple(frozenset(r) for r in regions), tuple(signs)  # type: ignore[return-value]


# ----- builders -----


def disk_with_matching(n: int, matching: tuple[tuple[int, int], ...]) -> SurfaceWithDivides:
    """Disk with 2n boundary crossings and sigma from a non-crossing matching.

    Corners 0..4n-1 alternate slot (even) and sigma endpoint (odd); the
    matching pairs odd corners.  Arcs run from corners 3 mod 4 to corners
    1 mod 4, which non-crossing matchings always separate.
    """
    if n < 1:
        raise InvalidMapError("a disk needs at least two crossings")
    k = 4 * n
    m = disk_polygon(k)
    paired = sorted(p for pair in matching for p in pair)
    if paired != [2 * i + 1 for i in range(2 * n)]:
        raise InvalidMapError("matching must pair the odd corners exactly once")
    arcs = []
    for p, q in sorted(matching):
        if (q - p) % 4 == 0:
            raise InvalidMapError("matching pair crosses another; signs cannot alternate")
        tail, headv = (p, q) if p % 4 == 3 else (q, p)
        # inner half-edge j keeps its index and its origin at corner j
        res = add_chord(m, tail, headv)
        m = res.map
        arcs.append((res.forward,))
    slots = frozenset(k + (j - 1) % k for j in range(0, k, 2))
    return SurfaceWithDivides(m, tuple(arcs), (), slots)


def annulus_through(t: int, shift: int) -> SurfaceWithDivides:
    """Annulus with t through arcs, each boundary circle crossed t times.

    Arc j runs between endpoint j on circle A and endpoint j+shift on
    circle B, oriented A->B for even j.  Regions between consecutive arcs
    are hexagons.
    """
    if t < 2 or t % 2:
        raise InvalidMapError("through arcs must come in an even count of at least two")
    if not 0 <= shift < t:
        raise InvalidMapError("shift must lie in [0, t)")

    def sa(i: int) -> int:
        return 4 * (i % t)

    def ua(i: int) -> int:
        return 4 * (i % t) + 1

    def sb(i: int) -> int:
        return 4 * (i % t) + 2

    def ub(i: int) -> int:
        return 4 * (i % t) + 3

    faces = []
    for j in range(t):
        jb = j - shift
        faces.append([ua(j), sa(j + 1), ua(j + 1), ub(jb + 1), sb(jb + 1), ub(jb)])
    m, index = from_polygons(faces)
    arcs = []
    for j in range(t):
        forward = index[(ua(j), ub(j - shift))]
        arcs.append((forward,) if j % 2 == 0 else (m.twin[forward],))
    ends = {m.vertex_of[a[0]] for a in arcs} | {m.head(a[-1]) for a in arcs}
    slot_halves = frozenset(
        h for h in m.boundary_marks if m.vertex_of[h] not in ends
    )
    return SurfaceWithDivides(m, tuple(arcs), (), slot_halves)


def disjoint_divides(*parts: SurfaceWithDivides) -> SurfaceWithDivides:
    """Disjoint union of divided surfaces, boundary circles in part order."""
    if not parts:
        raise InvalidMapError("nothing to join")
    union, offsets = disjoint_union([p.map for p in parts])
    arcs = []
    closed = []
    slots = set()
    for p, off in zip(parts, offsets):
        arcs.extend(tuple(h + off for h in a) for a in p.arcs)
        closed.extend(tuple(h + off for h in c) for c in p.closed)
        slots.update(h + off for h in p.slots)
    return SurfaceWithDivides(union, tuple(arcs), tuple(closed), frozenset(slots))


# ----- enumeration -----


def noncrossing_matchings(points: tuple[int, ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All non-crossing perfect matchings of cyclically ordered points."""
    if len(points) % 2:
        return ()
    if not points:
        return ((),)
    out = []
    first = points[0]
    for j in range(1, len(points), 2):
        inside = points[1:j]
        outside = points[j + 1 :]
        for left in noncrossing_matchings(inside):
            for right in noncrossing_matchings(outside):
                out.append(tuple(sorted(((first, points[j]),) + left + right)))
    return tuple(out)


def enumerate_divides(
    topology: str,
    crossings: tuple[int, ...],
    opts: DividesOptions = DividesOptions(),
) -> tuple[SurfaceWithDivides, ...]:
    """All admissible sigma configurations within the bounds, in stable order.

    Disks realize every non-crossing matching of their sigma endpoints;
    annuli realize through-arc configurations with winding shifts up to the
    twist bound.  Results are deduplicated by anchored map isomorphism.
    """
    for count in crossings:
        if count <= 0 or count % 2:
            raise InvalidMapError("boundary crossing counts must be even and positive")
    if topology == "disk":
        if len(crossings) != 1:
            raise UnsupportedTopologyError("a disk has one boundary circle")
        n = crossings[0] // 2
        odd = tuple(2 * i + 1 for i in range(2 * n))
        candidates = [disk_with_matching(n, mt) for mt in noncrossing_matchings(odd)]
    elif topology == "annulus":
        if len(crossings) != 2:
            raise UnsupportedTopologyError("an annulus has two boundary circles")
        if crossings[0] != crossings[1]:
            raise UnsupportedTopologyError(
                "annulus enumeration covers through-arc configurations only"
            )
        t = crossings[0]
        candidates = [
            annulus_through(t, shift)
            for shift in range(min(t - 1, opts.twist_bound) + 1)
        ]
    else:
        raise UnsupportedTopologyError(f"unsupported topology: {topology}")

    out = []
    seen = set()
    for s in candidates:
        if len(s.closed) > opts.allow_closed:
            continue
        if opts.boundary_parallel_only and not all(
            is_boundary_parallel(s, arc) for arc in s.arcs
        ):
            continue
        _ = s.partition
        key = canonical_key(s.map, s.labels())
        if key in seen:
            continue
        seen.add(key)
        out.append(s)
    return tuple(out)


# ----- properties against a host -----


@dataclass(frozen=True)
class DividesViolation:
    """One failed validity property, tagged by its number."""

    prop: int
    detail: str


def _endpoint_host_signs(
    s: SurfaceWithDivides, host: MarkedSurface, emb: SplitEmbedding
) -> tuple[dict[tuple[int, int], int], tuple[DividesViolation, ...]]:
    """Host-side gap sign seen by each (arc, end) under left-side alignment.

    Boundary circle j of s attaches to walk j; slot zero lands on the
    walk's first crossing, and word intervals run against the walk, so
    sigma endpoint m of circle j sits in walk gap 2n-1-m on the left copy.
    """
    violations = []
    words = s.boundary_words
    if len(words) != len(emb.walks):
        violations.append(
            DividesViolation(1, "boundary circle count differs from walk count")
        )
        return {}, tuple(violations)
    out: dict[tuple[int, int], int] = {}
    for j, word in enumerate(words):
        gap_signs = emb.gap_signs[j]
        two_n = len(gap_signs)
        marks = [kind for kind, _ in word.letters]
        slots_here = marks.count("slot")
        if slots_here != two_n:
            violations.append(
                DividesViolation(
                    1, f"circle {j} has {slots_here} slots for {two_n} crossings"
                )
            )
            continue
        endpoint_ordinal = 0
        expect_slot = True
        for kind, ref in word.letters:
            if (kind == "slot") != expect_slot:
                violations.append(
                    DividesViolation(1, f"circle {j} breaks slot/sigma alternation")
                )
                break
            if kind != "slot":
                gap = (two_n - 1 - endpoint_ordinal) % two_n
                out[(ref, 0 if kind == "tail" else 1)] = gap_signs[gap]
                endpoint_ordinal += 1
            expect_slot = not expect_slot
    return out, tuple(violations)


def validate_divides(
    s: SurfaceWithDivides, host: MarkedSurface, emb: SplitEmbedding
) -> tuple[DividesViolation, ...]:
    """Check the three validity properties of sigma against a host embedding.

    1: sigma endpoints alternate with dividing-set crossings on every
    boundary circle; 2: every arc runs from a negative host gap to a
    positive one; 3: no closed sigma component bounds a disk.
    """
    if emb.host != host:
        raise InvalidMapError("embedding was built on a different host")
    end_signs, violations = _endpoint_host_signs(s, host, emb)
    out = list(violations)
    for (arc_index, end), sign in sorted(end_signs.items()):
        want = -1 if end == 0 else +1
        if sign != want:
            word = "tail" if end == 0 else "head"
            out.append(
                DividesViolation(
                    2, f"arc {arc_index} {word} sits in a {'+' if sign > 0 else '-'} gap"
                )
            )
    for i, cycle in enumerate(s.closed):
        if is_null_homotopic(s.map, cycle):
            out.append(DividesViolation(3, f"closed sigma component {i} bounds a disk"))
    return tuple(out)


def reorient_for_host(
    s: SurfaceWithDivides, host: MarkedSurface, emb: SplitEmbedding
) -> SurfaceWithDivides:
    """Flip sigma on whole components so arcs run negative-to-positive.

    A component whose arcs disagree among themselves cannot be repaired
    and raises; per-arc flips are never performed silently.
    """
    if emb.host != host:
        raise InvalidMapError("embedding was built on a different host")
    end_signs, violations = _endpoint_host_signs(s, host, emb)
    if violations:
        raise SignConflictError(violations[0].detail)
    comps = s.map.components
    flips: dict[int, bool] = {}
    for i, arc in enumerate(s.arcs):
        comp_index = next(ci for ci, comp in enumerate(comps) if arc[0] in comp)
        tail, head = end_signs[(i, 0)], end_signs[(i, 1)]
        if tail == head:
            raise SignConflictError(f"arc {i} joins two gaps of equal sign")
        flip = tail == +1
        if flips.setdefault(comp_index, flip) != flip:
            raise SignConflictError(
                f"component {comp_index} mixes arc orientations against the host"
            )
    chosen = frozenset(ci for ci, flip in flips.items() if flip)
    return s.reversed_components(chosen) if chosen else s


def is_boundary_parallel(s: SurfaceWithDivides, arc: tuple[int, ...]) -> bool:
    """True iff the arc cuts off a disk free of other sigma components."""
    if arc not in s.arcs:
        raise InvalidMapError("arc is not a sigma component")
    cut = cut_arc(s.map, arc)
    mm = cut.map
    side_a = next(c for c in mm.components if cut.left[0] in c)
    side_b = next(c for c in mm.components if cut.right[0] in c)
    if side_a == side_b:
        return False
    others = {
        h
        for curve in s.arcs + s.closed
        if curve != arc
        for g in curve
        for h in (g, s.map.twin[g])
    }
    for side in (side_a, side_b):
        if mm.component_euler_char(side) == 1 and not (others & side):
            return True
    return False
