"""Splitting convex structures along surfaces with divides.

The split cuts each boundary walk open, glues two copies of the cutting
surface into the left and right sides, and rounds the dividing set: between
every crossing copy and the nearest sigma endpoint along a glued circle the
rounding inserts a join run, turning the severed dividing curves and both
sigma copies into the new dividing set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .combmap import (
    CombMap,
    CurveSystem,
    CurveTracker,
    add_chord,
    cut_cycle,
    disjoint_union,
    extract_component,
    glue_holes,
    region_euler_char,
    reverse_cycle,
    subdivide_edge,
    transverse_crossings,
)
from .convex import ConvexStructure, MarkedSurface, structure_obstruction
from .divides import SurfaceWithDivides, validate_divides
from .errors import (
    InvalidMapError,
    SignConflictError,
    SplitPreconditionError,
)

UPPER_PIECE = "y>=0"
LOWER_PIECE = "y<=0"


@dataclass(frozen=True)
class LocalModel:
    """Edge-rounding heights for 2n crossings on a unit-period boundary.

    ``gamma_boundary_z`` are the heights where the host dividing set meets
    the corner circle, ``gamma_s_z`` the heights after rounding; the
    pairings send each host height to the rounded height it joins on the
    upper (y >= 0) and lower (y <= 0) piece.
    """

    n: int
    gamma_boundary_z: tuple[Fraction, ...]
    gamma_s_z: tuple[Fraction, ...]
    pairing_upper: tuple[tuple[Fraction, Fraction], ...]
    pairing_lower: tuple[tuple[Fraction, Fraction], ...]

    def pairing(self, piece: str) -> dict[Fraction, Fraction]:
        if piece == UPPER_PIECE:
            return dict(self.pairing_upper)
        if piece == LOWER_PIECE:
            return dict(self.pairing_lower)
        raise InvalidMapError(f"unknown piece: {piece}")


def local_model(n: int) -> LocalModel:
    """Closed-form rounding data: joins move heights by 1/(4n), down on
    the upper piece toward the positive region and up on the lower one."""
    if n < 1:
        raise InvalidMapError("the local model needs at least one crossing pair")
    quarter = Fraction(1, 4 * n)
    boundary = tuple(Fraction(k, 2 * n) for k in range(2 * n))
    rounded = tuple(Fraction(1 + 2 * k, 4 * n) for k in range(2 * n))
    upper = tuple((z, (z + quarter) % 1) for z in boundary)
    lower = tuple((z, (z - quarter) % 1) for z in boundary)
    return LocalModel(n, boundary, rounded, upper, lower)


@dataclass(frozen=True)
class SplitEmbedding:
    """Walks on a convex boundary along which a surface will be glued.

    Each walk is a directed edge cycle crossing the dividing set
    transversally in a positive even number of points; walks are pairwise
    disjoint and avoid dividing-set edges.
    """

    host: MarkedSurface
    walks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m = self.host.map
        CurveSystem(cycles=self.walks).validate(m)
        for j, positions in enumerate(self.crossing_positions):
            if len(positions) < 2 or len(positions) % 2:
                raise SplitPreconditionError(
                    f"walk {j} crosses the dividing set {len(positions)} times; "
                    "a positive even count is required"
                )

    @cached_property
    def crossing_vertices(self) -> frozenset[int]:
        gamma_sys = CurveSystem(cycles=self.host.gamma)
        walk_sys = CurveSystem(cycles=self.walks)
        return frozenset(transverse_crossings(self.host.map, gamma_sys, walk_sys))

    @cached_property
    def crossing_positions(self) -> tuple[tuple[int, ...], ...]:
        m = self.host.map
        cross = self.crossing_vertices
        return tuple(
            tuple(p for p, h in enumerate(walk) if m.vertex_of[h] in cross)
            for walk in self.walks
        )

    @cached_property
    def gap_signs(self) -> tuple[tuple[int, ...], ...]:
        """Host region sign along each gap between consecutive crossings."""
        m = self.host.map
        out = []
        for walk, positions in zip(self.walks, self.crossing_positions):
            signs = []
            for p in positions:
                face = m.face_of[walk[p]]
                signs.append(self.host.partition.sign_of_face(face))
            out.append(tuple(signs))
        return tuple(out)


def twisting_number(emb: SplitEmbedding, component: int = 0) -> int:
    """Half the crossing count, negated; 2n crossings give -n."""
    return -(len(emb.crossing_positions[component]) // 2)


def nonisolating(host: MarkedSurface, walks: tuple[tuple[int, ...], ...]) -> bool:
    """True iff every complementary region of gamma and the walks touches
    the dividing set."""
    m = host.map
    blocked = set()
    for curve in tuple(host.gamma) + tuple(walks):
        for h in curve:
            blocked.add(h)
            blocked.add(m.twin[h])
    parent = list(range(len(m.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in range(len(m.twin)):
        if h in blocked:
            continue
        a, b = find(m.face_of[h]), find(m.face_of[m.twin[h]])
        if a != b:
            parent[a] = b
    gamma_regions = set()
    for cycle in host.gamma:
        for h in cycle:
            gamma_regions.add(find(m.face_of[h]))
            gamma_regions.add(find(m.face_of[m.twin[h]]))
    regions = {find(f) for f in range(len(m.faces))}
    return regions <= gamma_regions


def replace_boundary(
    c: ConvexStructure, index: int, surface: MarkedSurface
) -> ConvexStructure:
    """Swap one boundary component, keeping name and certificates."""
    boundary = list(c.boundary)
    boundary[index] = surface
    return ConvexStructure(c.name, tuple(boundary), c.certificates, c.lineage)


# ----- splitting -----


def _orbit_from(m: CombMap, h: int) -> list[int]:
    out = [h]
    g = m.next[h]
    while g != h:
        out.append(g)
        g = m.next[g]
    return out


def _gamma_endpoint_vertices(m: CombMap, tracker: CurveTracker) -> set[int]:
    out = set()
    for name, path in tracker.paths.items():
        if not name.startswith("gamma:"):
            continue
        for h in path:
            out.add(m.vertex_of[h])
            out.add(m.head(h))
    return out


def _sigma_endpoint_vertices(m: CombMap, tracker: CurveTracker, copy: str) -> set[int]:
    out = set()
    for name, path in tracker.paths.items():
        if name.startswith(f"{copy}:arc:"):
            out.add(m.vertex_of[path[0]])
            out.add(m.head(path[-1]))
    return out


def _pad_and_glue(
    tracker: CurveTracker,
    host_anchor_key: str,
    s_anchor_key: str,
    crossings: int,
) -> None:
    """Refine both sides of one cut hole to equal interval lengths, then
    glue the matching copy of the cutting surface into it."""
    m = tracker.map
    host_anchor = tracker.paths[host_anchor_key][0]
    s_anchor = tracker.paths[s_anchor_key][-1]
    gamma_vertices = _gamma_endpoint_vertices(m, tracker)
    copy = s_anchor_key.split(":")[-1]
    sigma_vertices = _sigma_endpoint_vertices(m, tracker, copy)

    orbit = _orbit_from(m, host_anchor)
    marks = [t for t, h in enumerate(orbit) if m.vertex_of[h] in gamma_vertices]
    if not marks or marks[0] != 0:
        raise SignConflictError("cut circle does not start at a crossing copy")
    if len(marks) != crossings:
        raise SignConflictError("cut circle lost track of its crossings")

    b_orbit = _orbit_from(m, s_anchor)
    length = len(b_orbit)
    word = [b_orbit[0]] + [b_orbit[length - t] for t in range(1, length)]
    slot_positions = [
        t for t, g in enumerate(word) if m.head(g) not in sigma_vertices
    ]
    if slot_positions != [2 * t for t in range(length // 2)] or length % 2:
        raise SignConflictError("sigma endpoints do not alternate with slots")
    if len(slot_positions) != crossings:
        raise SplitPreconditionError(
            "cutting surface circle has the wrong number of slots"
        )

    host_lengths = [
        (marks[(t + 1) % len(marks)] - marks[t]) % len(orbit) or len(orbit)
        for t in range(len(marks))
    ]
    for t in range(crossings):
        host_len = host_lengths[t]
        s_len = 2
        while s_len < host_len:
            tracker.subdivide(word[2 * t])
            s_len += 1
        while host_len < s_len:
            tracker.subdivide(orbit[marks[t]])
            host_len += 1

    host_anchor = tracker.paths.pop(host_anchor_key)[0]
    s_anchor = tracker.paths.pop(s_anchor_key)[-1]
    res = glue_holes(tracker.map, host_anchor, s_anchor)
    tracker.relabel(res.map, res.old_to_new)


def _trace_circles(m: CombMap, edges: set[int]) -> tuple[tuple[int, ...], ...]:
    """Trace the degree-two graph of undirected edge keys into directed
    cycles; every incident vertex must have exactly two edge ends."""
    incident: dict[int, list[int]] = {}
    for key in sorted(edges):
        a, b = m.vertex_of[key], m.head(key)
        incident.setdefault(a, []).append(key)
        if b != a:
            incident.setdefault(b, []).append(key)
    for v in sorted(incident):
        degree = sum(
            2 if m.vertex_of[k] == m.head(k) else 1 for k in incident[v]
        )
        if degree != 2:
            raise SignConflictError(
                f"rounded dividing set has degree {degree} at a vertex"
            )
    circles = []
    used: set[int] = set()
    for start in sorted(edges):
        if start in used:
            continue
        used.add(start)
        circle = [start]
        while True:
            v = m.head(circle[-1])
            options = [k for k in incident[v] if k not in used]
            if not options:
                if v != m.vertex_of[circle[0]]:
                    raise SignConflictError("rounded dividing set is not a cycle")
                break
            key = options[0]
            used.add(key)
            circle.append(key if m.vertex_of[key] == v else m.twin[key])
        circles.append(tuple(circle))
    return tuple(circles)


def convex_split(
    c: ConvexStructure,
    s: SurfaceWithDivides,
    emb: SplitEmbedding,
    force: bool = False,
) -> ConvexStructure:
    """Split a convex structure along a surface with divides.

    The host boundary component is cut open along the walks, two copies of
    the surface fill the left and right holes, and corner rounding joins
    the severed dividing curves to the sigma copies.  Signs propagate so
    the positive region of the result restricts to the positive side of
    sigma in the left copy and the negative side in the right copy.
    """
    try:
        host_index = c.boundary.index(emb.host)
    except ValueError:
        raise SplitPreconditionError(
            "embedding host is not a boundary component of the structure"
        ) from None
    obstruction = structure_obstruction(c)
    if obstruction is not None and not force:
        raise SplitPreconditionError(
            f"structure violates the tightness criterion: {obstruction.kind}"
        )
    violations = validate_divides(s, emb.host, emb)
    if violations:
        raise SplitPreconditionError(
            "; ".join(f"[{v.prop}] {v.detail}" for v in violations)
        )
    if not nonisolating(emb.host, emb.walks):
        raise SplitPreconditionError(
            "a complementary region never touches the dividing set"
        )

    host = emb.host
    m = host.map

    # cut every walk first; indices survive because cutting only appends
    cut_map = m
    old_twin = list(m.twin)
    anchors = []
    circles_host: list[tuple[str, list[int]]] = []
    for j, walk in enumerate(emb.walks):
        positions = emb.crossing_positions[j]
        p0 = positions[0]
        k = len(walk)
        res = cut_cycle(cut_map, walk)
        cut_map = res.map
        left_anchor = res.left[(p0 - 1) % k]
        right_anchor = res.right[p0]
        anchors.append((left_anchor, right_anchor))
        left_circle = [walk[(p0 + t) % k] for t in range(k)]
        right_circle = [old_twin[walk[(p0 - 1 - t) % k]] for t in range(k)]
        circles_host.append((f"circle:{j}:sl", left_circle))
        circles_host.append((f"circle:{j}:sr", right_circle))

    union, offsets = disjoint_union([cut_map, s.map, s.map])
    off = {"sl": offsets[1], "sr": offsets[2]}

    paths: dict[str, list[int]] = {}
    for i, cycle in enumerate(host.gamma):
        paths[f"gamma:{i}"] = list(cycle)
    for name, circle in circles_host:
        paths[name] = circle
    for copy in ("sl", "sr"):
        for i, arc in enumerate(s.arcs):
            paths[f"{copy}:arc:{i}"] = [h + off[copy] for h in arc]
        for i, cycle in enumerate(s.closed):
            paths[f"{copy}:closed:{i}"] = [h + off[copy] for h in cycle]
    for j, (left_anchor, right_anchor) in enumerate(anchors):
        paths[f"anchor:{j}:sl"] = [left_anchor]
        paths[f"anchor:{j}:sr"] = [right_anchor]
    s_anchor_halves = [
        s.map.prev[min(h for h in word.hole if h in s.slots)]
        for word in s.boundary_words
    ]
    for j in range(len(emb.walks)):
        for copy in ("sl", "sr"):
            paths[f"sanchor:{j}:{copy}"] = [s_anchor_halves[j] + off[copy]]

    tracker = CurveTracker(union, paths)

    for j in range(len(emb.walks)):
        crossings = len(emb.crossing_positions[j])
        for copy in ("sl", "sr"):
            _pad_and_glue(
                tracker, f"anchor:{j}:{copy}", f"sanchor:{j}:{copy}", crossings
            )

    final = tracker.map
    if not final.is_closed():
        raise SignConflictError("splitting left the boundary open")

    gamma_vertices = _gamma_endpoint_vertices(final, tracker)
    sigma_vertices = _sigma_endpoint_vertices(
        final, tracker, "sl"
    ) | _sigma_endpoint_vertices(final, tracker, "sr")

    edge_keys: set[int] = set()
    forced_forward: set[int] = set()
    sl_halves: set[int] = set()
    sr_halves: set[int] = set()
    for name, path in tracker.paths.items():
        if name.startswith("gamma:"):
            for h in path:
                edge_keys.add(min(h, final.twin[h]))
                forced_forward.add(h)
        elif name.startswith("sl:"):
            for h in path:
                edge_keys.add(min(h, final.twin[h]))
                sl_halves.add(h)
        elif name.startswith("sr:"):
            for h in path:
                edge_keys.add(min(h, final.twin[h]))
                sr_halves.add(h)

    # join runs: along each glued circle every sigma endpoint reaches out
    # to the next crossing copy
    for name, path in sorted(tracker.paths.items()):
        if not name.startswith("circle:"):
            continue
        length = len(path)
        for i in range(length):
            if final.vertex_of[path[i]] not in sigma_vertices:
                continue
            t = i
            while True:
                edge_keys.add(min(path[t % length], final.twin[path[t % length]]))
                nxt = final.head(path[t % length])
                if nxt in gamma_vertices:
                    break
                if nxt in sigma_vertices:
                    raise SignConflictError(
                        "two sigma endpoints meet with no crossing between them"
                    )
                t += 1
                if t - i > length:
                    raise SignConflictError("join run never reaches a crossing")

    circles = _trace_circles(final, edge_keys)

    oriented = []
    for circle in circles:
        directed = set(circle)
        vote = 0
        for h in circle:
            if h in forced_forward:
                vote = _vote(vote, +1)
            if final.twin[h] in forced_forward:
                vote = _vote(vote, -1)
            if h in sl_halves:
                vote = _vote(vote, +1)
            if final.twin[h] in sl_halves:
                vote = _vote(vote, -1)
            if h in sr_halves:
                vote = _vote(vote, -1)
            if final.twin[h] in sr_halves:
                vote = _vote(vote, +1)
        if vote == 0:
            raise SignConflictError("a rounded curve has no orientation datum")
        if vote < 0:
            circle = tuple(final.twin[h] for h in reversed(circle))
        oriented.append(circle)

    directed_all = {h for circle in oriented for h in circle}
    for h in forced_forward | sl_halves:
        if h not in directed_all:
            raise SignConflictError("a dividing or sigma edge lost its orientation")
    for h in sr_halves:
        if final.twin[h] not in directed_all:
            raise SignConflictError("right sigma copy failed to reverse")

    new_surfaces = []
    for comp in final.components:
        comp_map, old_to_new = extract_component(final, comp)
        gamma_here = tuple(
            tuple(old_to_new[h] for h in circle)
            for circle in oriented
            if circle[0] in comp
        )
        surface = MarkedSurface(comp_map, gamma_here)
        _ = surface.partition
        new_surfaces.append(surface)

    boundary = tuple(
        b for i, b in enumerate(c.boundary) if i != host_index
    ) + tuple(new_surfaces)
    chi_s = s.euler_char()
    step = f"split(component={host_index},walks={len(emb.walks)},chi={chi_s})"
    lineage = f"{c.lineage};{step}" if c.lineage else step
    certificates = frozenset(c.certificates & {"haken_skeleton_valid"})
    return ConvexStructure(c.name, boundary, certificates, lineage)


def _vote(current: int, datum: int) -> int:
    if current == 0:
        return datum
    if current != datum:
        raise SignConflictError("orientation data disagree along a rounded curve")
    return current


# ----- walk isotopy -----


def _cycle_keys(m: CombMap, cycles) -> set[int]:
    return {min(h, m.twin[h]) for cycle in cycles for h in cycle}


def _rotation_fan(m: CombMap, start: int, stop: int) -> list[int]:
    """Half-edges strictly between two strands around their shared origin."""
    fan = []
    h = m.next[m.twin[start]]
    for _ in range(len(m.twin)):
        if h == stop:
            return fan
        fan.append(h)
        h = m.next[m.twin[h]]
    raise InvalidMapError("rotation never reaches the opposite strand")


def _flood_faces(m: CombMap, blocked: set[int]) -> list[list[int]]:
    """Groups of faces connected across edges outside the blocked set."""
    parent = list(range(len(m.faces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in range(len(m.twin)):
        if min(h, m.twin[h]) in blocked:
            continue
        a, b = find(m.face_of[h]), find(m.face_of[m.twin[h]])
        if a != b:
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for f in range(len(m.faces)):
        groups.setdefault(find(f), []).append(f)
    return sorted(groups.values())


def _boundary_cycles(
    m: CombMap, region: set[int], blocked: set[int]
) -> list[list[int]]:
    """Cycles of blocked halves bounding a region, region kept on the left."""
    rim = [
        h
        for h in range(len(m.twin))
        if m.face_of[h] in region and min(h, m.twin[h]) in blocked
    ]
    succ: dict[int, int] = {}
    for h in rim:
        g = m.next[h]
        for _ in range(len(m.twin)):
            if min(g, m.twin[g]) in blocked:
                break
            g = m.next[m.twin[g]]
        else:
            raise InvalidMapError("region boundary walk does not close")
        succ[h] = g
    cycles = []
    seen: set[int] = set()
    for h in sorted(rim):
        if h in seen:
            continue
        cycle = [h]
        seen.add(h)
        g = succ[h]
        while g != h:
            cycle.append(g)
            seen.add(g)
            g = succ[g]
        cycles.append(cycle)
    return cycles


def _find_bigon(
    m: CombMap, gamma, walk: tuple[int, ...], avoid: set[int]
) -> tuple[list[int], list[bool]] | None:
    """An innermost disk bounded by one walk run and one curve run, if any.

    Returns the boundary cycle (disk on the left) and a per-half flag that
    is True on the walk run, or None when the walk is in minimal position.
    Regions touching an edge in ``avoid`` are never offered as bigons.
    """
    walk_keys = _cycle_keys(m, (walk,))
    gamma_keys = _cycle_keys(m, gamma)
    blocked = walk_keys | gamma_keys | avoid
    for region in _flood_faces(m, blocked):
        faces = set(region)
        cycles = _boundary_cycles(m, faces, blocked)
        if len(cycles) != 1:
            continue
        cycle = cycles[0]
        if region_euler_char(m, faces) != 1:
            continue
        verts = [m.vertex_of[h] for h in cycle]
        if len(set(verts)) != len(verts):
            continue
        edges = [min(h, m.twin[h]) for h in cycle]
        if len(set(edges)) != len(edges):
            continue
        on_walk = [min(h, m.twin[h]) in walk_keys for h in cycle]
        if not any(on_walk) or all(on_walk):
            continue
        if any(
            not w and min(h, m.twin[h]) not in gamma_keys
            for w, h in zip(on_walk, cycle)
        ):
            continue
        runs = sum(1 for t in range(len(cycle)) if on_walk[t] != on_walk[t - 1])
        if runs == 2:
            return cycle, on_walk
    return None


def _retract_bigon(
    m: CombMap,
    gamma,
    walk: tuple[int, ...],
    avoid: set[int],
    cycle: list[int],
    on_walk: list[bool],
) -> tuple[CombMap, tuple[int, ...]]:
    """Pull the walk section bounding a bigon back across its curve run."""
    k = len(cycle)
    start = next(t for t in range(k) if on_walk[t] and not on_walk[t - 1])
    cycle = cycle[start:] + cycle[:start]
    on_walk = on_walk[start:] + on_walk[:start]
    count = sum(on_walk)
    w_run = cycle[:count]
    g_run = cycle[count:]

    walk_pos = {h: t for t, h in enumerate(walk)}
    length = len(walk)
    aligned = w_run[0] in walk_pos
    if aligned:
        i = walk_pos[w_run[0]]
        j = walk_pos[w_run[-1]]
        detour = [m.twin[g] for g in reversed(g_run)]
    else:
        i = walk_pos[m.twin[w_run[-1]]]
        j = walk_pos[m.twin[w_run[0]]]
        detour = list(g_run)
    if [walk[(i + t) % length] for t in range(count)] != (
        list(w_run) if aligned else [m.twin[h] for h in reversed(w_run)]
    ):
        raise InvalidMapError("bigon walk run is not a walk section")

    # Midpoints m0 (on the edge into the section) and m1 (on the edge out),
    # with the abandoned stubs pointing at the two crossings to remove.
    special = (i - 1) % length == (j + 1) % length
    if special:
        sub1 = subdivide_edge(m, walk[(i - 1) % length])
        sub2 = subdivide_edge(sub1.map, sub1.second)
        m = sub2.map
        s_in = sub2.second
        entry = (sub2.first,)
        exit_piece = None
        st_out = sub1.first
        keep: tuple[int, ...] = ()
    else:
        sub_in = subdivide_edge(m, walk[(i - 1) % length])
        sub_out = subdivide_edge(sub_in.map, walk[(j + 1) % length])
        m = sub_out.map
        s_in = sub_in.second
        entry = (sub_in.first,)
        exit_piece = sub_out.second
        st_out = sub_out.first
        keep = tuple(
            walk[(j + 2 + t) % length] for t in range(length - count - 2)
        )

    blocked = _cycle_keys(m, gamma) | _cycle_keys(m, (walk,)) | avoid
    fans = []
    for t in range(len(detour) - 1):
        d1, d2 = detour[t], detour[t + 1]
        if aligned:
            fan = _rotation_fan(m, m.twin[d1], d2)
        else:
            fan = list(reversed(_rotation_fan(m, d2, m.twin[d1])))
        for h in fan:
            if min(h, m.twin[h]) in blocked:
                raise InvalidMapError("bigon channel is blocked by a curve")
        fans.append(fan)

    points = []
    for fan in fans:
        for f in fan:
            sub = subdivide_edge(m, f)
            m = sub.map
            if aligned:
                points.append((sub.second, sub.twin_second))
            else:
                points.append((sub.twin_second, sub.second))

    # Corner designators: the single face corner between the abandoned stub
    # and the curve run, on the side away from the bigon.
    if aligned:
        if m.next[s_in] != detour[0] or m.next[detour[-1]] != st_out:
            raise InvalidMapError("bigon corners are not transverse")
        p_from = s_in
        p_to = m.next[st_out]
    else:
        if (
            m.next[m.twin[detour[0]]] != m.twin[s_in]
            or m.next[m.twin[st_out]] != m.twin[detour[-1]]
        ):
            raise InvalidMapError("bigon corners are not transverse")
        p_from = m.next[m.twin[s_in]]
        p_to = m.twin[st_out]

    chords = []
    prev = p_from
    for enter, leave in points:
        res = add_chord(m, prev, enter)
        m = res.map
        chords.append(res.forward)
        prev = leave
    res = add_chord(m, prev, p_to)
    m = res.map
    chords.append(res.forward)

    if special:
        new_walk = entry + tuple(chords)
    else:
        new_walk = entry + tuple(chords) + (exit_piece,) + keep
    CurveSystem(cycles=(new_walk,)).validate(m)
    return m, new_walk


def _corridor(
    m: CombMap, gamma_keys: set[int], blocked: set[int], walk: tuple[int, ...]
) -> tuple[list[int], int] | None:
    """Shortest face path from beside the walk to a curve-bearing face.

    Returns the crossed halves (each on the earlier face of its step) and
    the chosen curve half, or None when no curve bounds this region.
    """
    start = m.face_of[walk[0]]
    parent: dict[int, tuple[int, int] | None] = {start: None}
    queue = [start]
    while queue:
        f = queue.pop(0)
        gammas = [h for h in m.faces[f] if min(h, m.twin[h]) in gamma_keys]
        if gammas:
            halves = []
            g = f
            while parent[g] is not None:
                pf, h = parent[g]
                halves.append(h)
                g = pf
            halves.reverse()
            return halves, min(gammas)
        for h in m.faces[f]:
            if min(h, m.twin[h]) in blocked:
                continue
            g = m.face_of[m.twin[h]]
            if g not in parent:
                parent[g] = (f, h)
                queue.append(g)
    return None


def _force_two(
    m: CombMap, gamma, walk: tuple[int, ...], avoid: set[int]
) -> tuple[CombMap, tuple, tuple[int, ...]]:
    """Push a disjoint walk across the nearest curve, creating two crossings."""
    gamma_keys = _cycle_keys(m, gamma)
    blocked = gamma_keys | _cycle_keys(m, (walk,)) | avoid
    flipped = False
    path = _corridor(m, gamma_keys, blocked, walk)
    if path is None:
        flipped = True
        walk = reverse_cycle(m, walk)
        path = _corridor(m, gamma_keys, blocked, walk)
    if path is None:
        raise InvalidMapError("no curve is reachable from either side of the walk")
    halves, gamma_half = path
    old_gamma_twin = m.twin[gamma_half]

    sub_a = subdivide_edge(m, walk[0])
    sub_b = subdivide_edge(sub_a.map, sub_a.second)
    m = sub_b.map
    corridor_subs = []
    for h in halves:
        s1 = subdivide_edge(m, h)
        s2 = subdivide_edge(s1.map, h)
        m = s2.map
        corridor_subs.append((s1, s2))
    g1 = subdivide_edge(m, gamma_half)
    g2 = subdivide_edge(g1.map, gamma_half)
    m = g2.map

    out_chords = []
    prev = sub_a.second
    for s1, _ in corridor_subs:
        res = add_chord(m, prev, s1.second)
        m = res.map
        out_chords.append(res.forward)
        prev = s1.twin_second
    res = add_chord(m, prev, g1.second)
    m = res.map
    out_chords.append(res.forward)

    far = add_chord(m, g2.twin_first, g2.twin_second)
    m = far.map

    back_chords = []
    prev = g2.second
    for s1, s2 in reversed(corridor_subs):
        res = add_chord(m, prev, s2.twin_second)
        m = res.map
        back_chords.append(res.forward)
        prev = s2.second
    res = add_chord(m, prev, sub_b.second)
    m = res.map
    back_chords.append(res.forward)

    new_walk = (
        (sub_a.first,)
        + tuple(out_chords)
        + (far.forward,)
        + tuple(back_chords)
        + (sub_b.second,)
        + tuple(walk[1:])
    )
    if flipped:
        new_walk = reverse_cycle(m, new_walk)

    forward = (gamma_half, g2.second, g1.second)
    backward = (old_gamma_twin, g2.twin_first, g2.twin_second)
    new_gamma = []
    for cycle in gamma:
        out: list[int] = []
        for h in cycle:
            if h == gamma_half:
                out.extend(forward)
            elif h == old_gamma_twin:
                out.extend(backward)
            else:
                out.append(h)
        new_gamma.append(tuple(out))
    return m, tuple(new_gamma), new_walk


def prepare_boundary(
    host: MarkedSurface,
    walk: tuple[int, ...],
    keep: tuple[tuple[int, ...], ...] = (),
) -> SplitEmbedding:
    """Isotope a walk into minimal position with at least two crossings.

    Innermost disks between the walk and the dividing set are removed one
    at a time, strictly reducing the crossing count; a walk left disjoint
    from the curves is then pushed across the nearest one.  A walk that is
    already minimal comes back untouched.  Cycles passed in ``keep`` are
    treated as walls: the isotopy never sweeps across them, and their
    half-edge labels remain valid on the returned host.
    """
    m = host.map
    CurveSystem(cycles=(walk,) + keep).validate(m)
    gamma = host.gamma
    before = len(
        transverse_crossings(
            m, CurveSystem(cycles=gamma), CurveSystem(cycles=(walk,))
        )
    )
    changed = False
    while True:
        avoid = _cycle_keys(m, keep)
        found = _find_bigon(m, gamma, walk, avoid)
        if found is None:
            break
        m, walk = _retract_bigon(m, gamma, walk, avoid, *found)
        changed = True
        after = len(
            transverse_crossings(
                m, CurveSystem(cycles=gamma), CurveSystem(cycles=(walk,))
            )
        )
        if after != before - 2:
            raise InvalidMapError("bigon retraction did not drop two crossings")
        before = after
    if before == 0:
        m, gamma, walk = _force_two(m, gamma, walk, _cycle_keys(m, keep))
        changed = True
    if not changed:
        return SplitEmbedding(host, (walk,))
    return SplitEmbedding(MarkedSurface(m, gamma), (walk,))
