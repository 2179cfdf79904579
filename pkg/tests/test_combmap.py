"""Kernel tests: map validity, surgery, and canonical forms."""

from __future__ import annotations

import random

import pytest

from convexsplit import library as lib
from convexsplit.combmap import (
    CombMap,
    CurveSystem,
    add_chord,
    canonical_key,
    cut_along,
    cut_arc,
    cut_cycle,
    glue_holes,
    is_null_homotopic,
    isomorphic,
    subdivide_edge,
    transverse_crossings,
)
from convexsplit.errors import InvalidMapError, NotEmbeddedError


def _shuffled(m: CombMap, seed: int) -> CombMap:
    rng = random.Random(seed)
    n = len(m.twin)
    perm = list(range(n))
    rng.shuffle(perm)
    twin = [0] * n
    nxt = [0] * n
    for h in range(n):
        twin[perm[h]] = perm[m.twin[h]]
        nxt[perm[h]] = perm[m.next[h]]
    marks = frozenset(perm[h] for h in m.boundary_marks)
    return CombMap(tuple(twin), tuple(nxt), marks)


def test_euler_characteristics():
    assert lib.tetrahedron().euler_char() == 2
    assert lib.square_torus().euler_char() == 0
    assert lib.octagon_genus2().euler_char() == -2
    assert lib.disk_polygon(5).euler_char() == 1
    assert lib.genus_two_host().map.euler_char() == -2
    for n in range(1, 5):
        assert lib.sphere_wavy(n).map.euler_char() == 2


def test_closed_and_boundary_counts():
    assert lib.square_torus().is_closed()
    assert lib.genus_two_host().map.is_closed()
    d = lib.disk_polygon(4)
    assert not d.is_closed()
    assert len(d.hole_faces) == 1


def test_genus():
    m = lib.octagon_genus2()
    (comp,) = m.components
    assert m.component_genus(comp) == 2
    t = lib.square_torus()
    (comp,) = t.components
    assert t.component_genus(comp) == 1


def test_invalid_maps_rejected():
    with pytest.raises(InvalidMapError):
        CombMap((0, 1), (1, 0))  # twin has fixed points
    with pytest.raises(InvalidMapError):
        CombMap((1, 0), (0, 1), frozenset({0, 1}))  # both sides of an edge free
    with pytest.raises(InvalidMapError):
        CombMap((1, 0, 3, 2), (1, 0, 3, 2), frozenset({0, 2}))  # marks not next-closed


def test_curve_system_rejects_nonpaths():
    gt = lib.torus_grid(3, 3)
    row = gt.row_cycles[0]
    with pytest.raises(NotEmbeddedError):
        CurveSystem(cycles=((row[0], row[0]),)).validate(gt.map)
    broken = (row[0], gt.col_cycles[0][0])
    with pytest.raises(NotEmbeddedError):
        CurveSystem(cycles=(broken,)).validate(gt.map)
    # two cycles through a shared vertex
    with pytest.raises(NotEmbeddedError):
        CurveSystem(cycles=(row, gt.col_cycles[0])).validate(gt.map)


def test_cut_torus_meridian_gives_annulus():
    gt = lib.torus_grid(3, 3)
    cut = cut_along(gt.map, CurveSystem(cycles=(gt.row_cycles[0],)))
    assert cut.euler_char() == 0
    assert len(cut.components) == 1
    assert len(cut.hole_faces) == 2


def test_cut_sphere_equator_gives_two_disks():
    ws = lib.sphere_wavy(2)
    cut = cut_along(ws.map, CurveSystem(cycles=(ws.gamma,)))
    chis = sorted(cut.component_euler_char(c) for c in cut.components)
    assert chis == [1, 1]


def test_cut_separating_curve_on_genus_two():
    host = lib.genus_two_host()
    cut = cut_along(host.map, CurveSystem(cycles=(host.seam,)))
    chis = sorted(cut.component_euler_char(c) for c in cut.components)
    assert chis == [-1, -1]


def test_cut_nonseparating_curve_on_genus_two():
    host = lib.genus_two_host()
    cut = cut_along(host.map, CurveSystem(cycles=(host.row_gammas[0],)))
    assert len(cut.components) == 1
    assert cut.euler_char() == -2
    assert len(cut.hole_faces) == 2


def test_cut_preserves_euler_characteristic():
    host = lib.genus_two_host()
    for cycle in (host.seam, *host.row_gammas, host.handle_walk, host.column_walk):
        cut = cut_along(host.map, CurveSystem(cycles=(cycle,)))
        assert cut.euler_char() == host.map.euler_char()


def test_genus_two_host_crossings():
    host = lib.genus_two_host()
    m = host.map

    def count(a, b):
        return len(transverse_crossings(m, CurveSystem(cycles=(a,)), CurveSystem(cycles=(b,))))

    assert count(host.handle_walk, host.seam) == 2
    assert count(host.handle_walk, host.row_gammas[0]) == 1
    assert count(host.handle_walk, host.row_gammas[1]) == 1
    assert count(host.column_walk, host.row_gammas[0]) == 1
    assert count(host.column_walk, host.row_gammas[1]) == 1
    assert count(host.column_walk, host.seam) == 0
    assert count(host.column_walk, host.handle_walk) == 0


def test_null_homotopic():
    gt = lib.torus_grid(3, 3)
    assert not is_null_homotopic(gt.map, gt.row_cycles[0])
    ws = lib.sphere_wavy(2)
    assert is_null_homotopic(ws.map, ws.gamma)
    host = lib.genus_two_host()
    assert not is_null_homotopic(host.map, host.seam)
    assert not is_null_homotopic(host.map, host.row_gammas[0])


def test_isomorphism_invariant_under_relabeling():
    for m in (lib.tetrahedron(), lib.square_torus(), lib.sphere_wavy(2).map,
              lib.disk_polygon(6), lib.genus_two_host().map):
        for seed in (1, 2, 3):
            s = _shuffled(m, seed)
            assert canonical_key(s) == canonical_key(m)
            assert isomorphic(m, s)


def test_isomorphism_distinguishes_surfaces():
    assert not isomorphic(lib.tetrahedron(), lib.square_torus())
    assert not isomorphic(lib.square_torus(), lib.octagon_genus2())
    assert not isomorphic(lib.disk_polygon(4), lib.disk_polygon(5))


def test_isomorphism_respects_labels():
    m = lib.square_torus()
    plain = tuple(() for _ in range(4))
    tagged = ((1,), (), (), ())
    assert isomorphic(m, m, plain, plain)
    assert not isomorphic(m, m, tagged, plain)


def test_cut_and_reglue_roundtrip():
    gt = lib.torus_grid(3, 3)
    res = cut_cycle(gt.map, gt.row_cycles[1])
    glued = glue_holes(res.map, res.left[0], res.right[0])
    assert isomorphic(glued.map, gt.map)

    ws = lib.sphere_wavy(2)
    res = cut_cycle(ws.map, ws.gamma)
    glued = glue_holes(res.map, res.left[0], res.right[0])
    assert isomorphic(glued.map, ws.map)


def test_cut_arc_splits_disk():
    d = lib.disk_polygon(6)
    res = add_chord(d, 1, 4)
    r = cut_arc(res.map, (res.forward,))
    chis = sorted(r.map.component_euler_char(c) for c in r.map.components)
    assert chis == [1, 1]
    assert r.map.euler_char() == d.euler_char() + 1


def test_subdivide_preserves_surface():
    gt = lib.torus_grid(3, 3)
    res = subdivide_edge(gt.map, gt.row_cycles[0][0])
    assert res.map.euler_char() == 0
    assert res.map.is_closed()
    d = lib.disk_polygon(4)
    res = subdivide_edge(d, len(d.twin) - 1)  # a hole half-edge
    assert res.map.euler_char() == 1
    assert len(res.map.hole_faces) == 1


def test_from_polygons_rejects_pinched_boundary():
    # two triangles sharing only a vertex
    with pytest.raises(InvalidMapError):
        lib.from_polygons([[0, 1, 2], [0, 3, 4]])
