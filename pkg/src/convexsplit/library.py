"""Builders for the standard surfaces used by scenarios and tests."""

from __future__ import annotations

from dataclasses import dataclass

from .combmap import (
    CombMap,
    CurveTracker,
    disjoint_union,
    glue_holes,
    open_face,
)
from .errors import InvalidMapError


def from_polygons(faces: list[list[int]]) -> tuple[CombMap, dict[tuple[int, int], int]]:
    """Build a map from face walks given as vertex lists (faces on the left).

    Each directed vertex pair may appear at most once, so the complex must be
    simple (no loops or doubled edges).  Unmatched edges become hole faces.
    Returns the map and the directed-pair -> half-edge index table.
    """
    index: dict[tuple[int, int], int] = {}
    walks: list[list[tuple[int, int]]] = []
    for poly in faces:
        walk = []
        for i, u in enumerate(poly):
            v = poly[(i + 1) % len(poly)]
            if u == v:
                raise InvalidMapError("degenerate edge in face walk")
            pair = (u, v)
            if pair in index:
                raise InvalidMapError(f"directed edge {pair} used twice")
            index[pair] = len(index)
            walk.append(pair)
        walks.append(walk)
    boundary_pairs = [(v, u) for (u, v) in list(index) if (v, u) not in index]
    for pair in boundary_pairs:
        index[pair] = len(index)
    h_count = len(index)
    twin = [0] * h_count
    nxt = [0] * h_count
    for (u, v), h in index.items():
        twin[h] = index[(v, u)]
    for walk in walks:
        for i, pair in enumerate(walk):
            nxt[index[pair]] = index[walk[(i + 1) % len(walk)]]
    hole_out: dict[int, int] = {}
    for u, v in boundary_pairs:
        if u in hole_out:
            raise InvalidMapError("pinched boundary vertex")
        hole_out[u] = index[(u, v)]
    for u, v in boundary_pairs:
        nxt[index[(u, v)]] = hole_out[v]
    marks = frozenset(index[p] for p in boundary_pairs)
    return CombMap(tuple(twin), tuple(nxt), marks), index


def tetrahedron() -> CombMap:
    m, _ = from_polygons([[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
    return m


def square_torus() -> CombMap:
    """Torus from the square identification: one vertex, two loops, one face."""
    twin = (1, 0, 3, 2)
    nxt = [0] * 4
    walk = [0, 2, 1, 3]
    for i, h in enumerate(walk):
        nxt[h] = walk[(i + 1) % 4]
    return CombMap(twin, tuple(nxt))


def octagon_genus2() -> CombMap:
    """Genus-2 surface from the octagon identification."""
    twin = (1, 0, 3, 2, 5, 4, 7, 6)
    nxt = [0] * 8
    walk = [0, 2, 1, 3, 4, 6, 5, 7]
    for i, h in enumerate(walk):
        nxt[h] = walk[(i + 1) % 8]
    return CombMap(twin, tuple(nxt))


def disk_polygon(k: int) -> CombMap:
    """Disk whose boundary circle has k edges; inner half-edge i runs i -> i+1."""
    twin = tuple(list(range(k, 2 * k)) + list(range(k)))
    nxt = [0] * (2 * k)
    for i in range(k):
        nxt[i] = (i + 1) % k
        nxt[k + i] = k + (i - 1) % k
    return CombMap(twin, tuple(nxt), frozenset(range(k, 2 * k)))


@dataclass
class WavySphere:
    """Sphere with an equator circle and a transverse wavy circle."""

    map: CombMap
    gamma: tuple[int, ...]
    walk: tuple[int, ...]
    crossings: tuple[int, ...]


def sphere_wavy(n: int) -> WavySphere:
    """Sphere whose equator is crossed 2n times by a wavy circle.

    Vertices: crossings q_i, equator midpoints m_i, wave midpoints w_i for
    i = 0..2n-1; the wave bulges north on even gaps.  Both circles run with
    increasing longitude; the north side lies on the left of the equator.
    """
    if n < 1:
        raise ValueError("n must be positive")
    g = 2 * n
    q = list(range(g))
    mm = list(range(g, 2 * g))
    w = list(range(2 * g, 3 * g))
    faces = []
    for i in range(g):
        j = (i + 1) % g
        if i % 2 == 0:
            faces.append([q[i], mm[i], q[j], w[i]])
        else:
            faces.append([q[i], w[i], q[j], mm[i]])
    # north cap: forward over all gaps, waves on even gaps, equator on odd gaps
    ncap: list[int] = []
    scap: list[int] = []
    for i in range(g):
        if i % 2 == 0:
            ncap.extend([q[i], w[i]])
        else:
            ncap.extend([q[i], mm[i]])
    for i in range(g - 1, -1, -1):
        if i % 2 == 0:
            scap.extend([q[(i + 1) % g], mm[i]])
        else:
            scap.extend([q[(i + 1) % g], w[i]])
    faces.append(ncap)
    faces.append(scap)
    m, index = from_polygons(faces)
    gamma = []
    walk = []
    for i in range(g):
        j = (i + 1) % g
        gamma.extend([index[(q[i], mm[i])], index[(mm[i], q[j])]])
        walk.extend([index[(q[i], w[i])], index[(w[i], q[j])]])
    return WavySphere(m, tuple(gamma), tuple(walk), tuple(q))


@dataclass
class LatitudeSphere:
    """Sphere with k disjoint latitude circles, adjacent ones anti-parallel."""

    map: CombMap
    circles: tuple[tuple[int, ...], ...]


def sphere_latitudes(k: int) -> LatitudeSphere:
    if k < 1:
        raise ValueError("k must be positive")

    def rid(i: int, j: int) -> int:
        return 3 * i + j % 3

    faces = [[rid(0, 2), rid(0, 1), rid(0, 0)]]
    for i in range(k - 1):
        for j in range(3):
            faces.append([rid(i, j), rid(i, j + 1), rid(i + 1, j + 1), rid(i + 1, j)])
    faces.append([rid(k - 1, 0), rid(k - 1, 1), rid(k - 1, 2)])
    m, index = from_polygons(faces)
    circles = []
    for i in range(k):
        ring = tuple(index[(rid(i, j), rid(i, j + 1))] for j in range(3))
        if i % 2 == 1:
            ring = tuple(m.twin[h] for h in reversed(ring))
        circles.append(ring)
    return LatitudeSphere(m, tuple(circles))


@dataclass
class GridTorus:
    """Torus as a rows x cols quad grid with its row and column circles."""

    map: CombMap
    rows: int
    cols: int
    row_cycles: tuple[tuple[int, ...], ...]
    col_cycles: tuple[tuple[int, ...], ...]
    index: dict[tuple[int, int], int]
    vertex_ids: dict[tuple[int, int], int]


def torus_grid(rows: int, cols: int) -> GridTorus:
    if rows < 3 or cols < 3:
        raise ValueError("grid needs at least 3 rows and 3 columns to stay simple")

    def vid(i: int, j: int) -> int:
        return (i % rows) * cols + (j % cols)

    faces = []
    for i in range(rows):
        for j in range(cols):
            faces.append([vid(i, j), vid(i, j + 1), vid(i + 1, j + 1), vid(i + 1, j)])
    m, index = from_polygons(faces)
    row_cycles = tuple(
        tuple(index[(vid(i, j), vid(i, j + 1))] for j in range(cols))
        for i in range(rows)
    )
    col_cycles = tuple(
        tuple(index[(vid(i, j), vid(i + 1, j))] for i in range(rows))
        for j in range(cols)
    )
    vertex_ids = {(i, j): vid(i, j) for i in range(rows) for j in range(cols)}
    return GridTorus(m, rows, cols, row_cycles, col_cycles, index, vertex_ids)


@dataclass
class GenusTwoHost:
    """Closed genus-2 surface glued from two one-holed grid tori.

    ``seam`` is the separating gluing circle, crossed twice by ``handle_walk``.
    ``row_gammas`` are two parallel nonseparating circles in the first piece,
    each crossed once by ``column_walk`` and once by ``handle_walk``.
    """

    map: CombMap
    seam: tuple[int, ...]
    handle_walk: tuple[int, ...]
    row_gammas: tuple[tuple[int, ...], tuple[int, ...]]
    column_walk: tuple[int, ...]


def _one_holed_torus() -> tuple[CurveTracker, dict[str, int]]:
    """5x3 grid torus with the (3,1) face opened and a cross-handle path.

    The hole walk (after two subdivisions) is [f0, s, f1, f2, s2, f3] where
    f0 covers v31->z, s covers z->v32, f2 covers v42->z2, s2 covers z2->v41.
    The chords run z->y2->y1->y0->z2 around the far side of the torus; the
    hole sits strictly between the row-0 and row-2 circles, so those can
    divide the closed-up surface without meeting the handle region.
    """
    grid = torus_grid(5, 3)
    v = grid.vertex_ids
    m = grid.map
    top = grid.index[(v[(3, 1)], v[(3, 2)])]
    bottom = grid.index[(v[(4, 1)], v[(4, 2)])]
    line2 = grid.index[(v[(2, 1)], v[(2, 2)])]
    line1 = grid.index[(v[(1, 1)], v[(1, 2)])]
    line0 = grid.index[(v[(0, 1)], v[(0, 2)])]
    tracker = CurveTracker(open_face(m, m.face_of[top]))
    tracker.paths["row0"] = list(grid.row_cycles[0])
    tracker.paths["row2"] = list(grid.row_cycles[2])
    tracker.paths["col0"] = list(grid.col_cycles[0])
    s, s_twin = tracker.subdivide(top)          # z on the hole's top edge
    s2, s2_twin = tracker.subdivide(bottom)     # z2 on the hole's bottom edge
    y2, y2_twin = tracker.subdivide(line2)
    y1, y1_twin = tracker.subdivide(line1)
    y0, y0_twin = tracker.subdivide(line0)
    c1, _ = tracker.add_chord(s_twin, y2)
    c2, _ = tracker.add_chord(y2_twin, y1)
    c3, _ = tracker.add_chord(y1_twin, y0)
    c4, _ = tracker.add_chord(y0_twin, s2)
    handles = {
        "f0": top, "s": s, "s2_twin": s2_twin,
        "c1": c1, "c2": c2, "c3": c3, "c4": c4,
        "f1": grid.index[(v[(3, 2)], v[(4, 2)])],
        "f2": grid.index[(v[(4, 2)], v[(4, 1)])],
        "f3": grid.index[(v[(4, 1)], v[(3, 1)])],
    }
    return tracker, handles


def genus_two_host() -> GenusTwoHost:
    (ta, ha), (tb, hb) = _one_holed_torus(), _one_holed_torus()
    union, (off_a, off_b) = disjoint_union([ta.map, tb.map])
    tracker = CurveTracker(union)
    tracker.paths["row0"] = [h + off_a for h in ta.paths["row0"]]
    tracker.paths["row2"] = [h + off_a for h in ta.paths["row2"]]
    tracker.paths["col0"] = [h + off_a for h in ta.paths["col0"]]
    tw_b = tb.map.twin
    tracker.paths["handle"] = [
        ha["c1"] + off_a,
        ha["c2"] + off_a,
        ha["c3"] + off_a,
        ha["c4"] + off_a,
        tw_b[hb["c4"]] + off_b,
        tw_b[hb["c3"]] + off_b,
        tw_b[hb["c2"]] + off_b,
        tw_b[hb["c1"]] + off_b,
    ]
    tracker.paths["seam"] = [
        tw_b[hb["s"]] + off_b,
        tw_b[hb["f0"]] + off_b,
        tw_b[hb["f3"]] + off_b,
        tw_b[hb["s2_twin"]] + off_b,
        tw_b[hb["f2"]] + off_b,
        tw_b[hb["f1"]] + off_b,
    ]
    anchor_a = ha["s"] + off_a
    anchor_b = hb["f0"] + off_b
    glued = glue_holes(union, anchor_a, anchor_b)
    tracker.relabel(glued.map, glued.old_to_new)
    return GenusTwoHost(
        tracker.map,
        seam=tuple(tracker.paths["seam"]),
        handle_walk=tuple(tracker.paths["handle"]),
        row_gammas=(tuple(tracker.paths["row0"]), tuple(tracker.paths["row2"])),
        column_walk=tuple(tracker.paths["col0"]),
    )
