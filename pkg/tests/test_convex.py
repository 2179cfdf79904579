"""Region computation, sign discipline, and the tightness obstruction."""

from __future__ import annotations

import pytest

from convexsplit import library as lib
from convexsplit.combmap import is_null_homotopic, reverse_cycle
from convexsplit.convex import (
    ConvexStructure,
    MarkedSurface,
    chi_balance,
    giroux_obstruction,
    is_terminal_ball,
    structure_obstruction,
)
from convexsplit.errors import (
    InvalidMapError,
    MissingCertificateError,
    SignConflictError,
)


def _marked_torus(rows: int = 3, cols: int = 3) -> MarkedSurface:
    gt = lib.torus_grid(rows, cols)
    gamma = (gt.row_cycles[0], reverse_cycle(gt.map, gt.row_cycles[2]))
    return MarkedSurface(gt.map, gamma)


def _torus_with_contractible() -> MarkedSurface:
    gt = lib.torus_grid(5, 3)
    v = gt.vertex_ids
    loop = tuple(
        gt.index[pair]
        for pair in [
            (v[(3, 1)], v[(3, 2)]),
            (v[(3, 2)], v[(4, 2)]),
            (v[(4, 2)], v[(4, 1)]),
            (v[(4, 1)], v[(3, 1)]),
        ]
    )
    gamma = (gt.row_cycles[0], reverse_cycle(gt.map, gt.row_cycles[2]), loop)
    return MarkedSurface(gt.map, gamma)


def test_sphere_equator_two_regions():
    ws = lib.sphere_wavy(1)
    s = MarkedSurface(ws.map, (ws.gamma,))
    part = s.partition
    assert len(part.faces) == 2
    assert sorted(part.signs) == [-1, 1]
    assert (s.chi_signed(+1), s.chi_signed(-1)) == (1, 1)


def test_torus_two_curves_two_annuli():
    s = _marked_torus()
    part = s.partition
    assert len(part.faces) == 2
    assert sorted(part.signs) == [-1, 1]
    assert (s.chi_signed(+1), s.chi_signed(-1)) == (0, 0)


def test_torus_single_curve_rejected():
    gt = lib.torus_grid(3, 3)
    with pytest.raises(SignConflictError):
        MarkedSurface(gt.map, (gt.row_cycles[0],)).partition


def test_parallel_orientations_rejected():
    gt = lib.torus_grid(3, 3)
    with pytest.raises(SignConflictError):
        MarkedSurface(gt.map, (gt.row_cycles[0], gt.row_cycles[2])).partition


def test_seed_conflict_rejected():
    ws = lib.sphere_wavy(1)
    north_face = ws.map.face_of[ws.gamma[0]]
    MarkedSurface(ws.map, (ws.gamma,), seeds=((north_face, +1),)).partition
    with pytest.raises(SignConflictError):
        MarkedSurface(ws.map, (ws.gamma,), seeds=((north_face, -1),)).partition


def test_component_without_gamma_rejected():
    gt = lib.torus_grid(3, 3)
    with pytest.raises(InvalidMapError):
        MarkedSurface(gt.map, ()).partition


def test_one_region_per_side_of_each_curve():
    for s in (
        MarkedSurface(lib.sphere_wavy(2).map, (lib.sphere_wavy(2).gamma,)),
        _marked_torus(),
        _marked_torus(4, 4),
        MarkedSurface(lib.genus_two_host().map, (lib.genus_two_host().seam,)),
    ):
        part = s.partition
        for cycle in s.gamma:
            left = {part.region_of[s.map.face_of[h]] for h in cycle}
            right = {part.region_of[s.map.face_of[s.map.twin[h]]] for h in cycle}
            assert len(left) == 1 and part.signs[left.pop()] == +1
            assert len(right) == 1 and part.signs[right.pop()] == -1


def test_giroux_sphere_counts():
    for k, ok in [(1, True), (2, False), (3, False), (5, False)]:
        ls = lib.sphere_latitudes(k)
        s = MarkedSurface(ls.map, ls.circles)
        ob = giroux_obstruction(s)
        if ok:
            assert ob is None
        else:
            assert ob is not None
            assert ob.kind == "sphere_count"
            assert ob.count == k


def test_giroux_contractible_on_torus():
    s = _torus_with_contractible()
    ob = giroux_obstruction(s)
    assert ob is not None
    assert ob.kind == "null_homotopic"
    assert is_null_homotopic(s.map, ob.curve)


def test_giroux_accepts_essential_torus():
    assert giroux_obstruction(_marked_torus()) is None


def test_giroux_matches_null_homotopy_brute_force():
    surfaces = [
        _marked_torus(),
        _torus_with_contractible(),
        MarkedSurface(lib.genus_two_host().map, (lib.genus_two_host().seam,)),
    ]
    for s in surfaces:
        if giroux_obstruction(s) is not None:
            continue
        sphere = s.map.euler_char() == 2 and len(s.map.components) == 1
        for cycle in s.gamma:
            if sphere:
                assert len(s.gamma) == 1
            else:
                assert not is_null_homotopic(s.map, cycle)


def test_chi_balance_sums_to_surface_chi():
    for s in (
        MarkedSurface(lib.sphere_wavy(3).map, (lib.sphere_wavy(3).gamma,)),
        _marked_torus(),
        MarkedSurface(lib.genus_two_host().map, (lib.genus_two_host().seam,)),
    ):
        c = ConvexStructure("x", (s,))
        plus, minus = chi_balance(c)
        assert plus + minus == s.map.euler_char()


def test_chi_balance_examples():
    ws = lib.sphere_wavy(1)
    ball = ConvexStructure("ball", (MarkedSurface(ws.map, (ws.gamma,)),))
    assert chi_balance(ball) == (1, 1)
    tor = ConvexStructure("st", (_marked_torus(),))
    assert chi_balance(tor) == (0, 0)
    host = lib.genus_two_host()
    g2 = ConvexStructure("g2", (MarkedSurface(host.map, (host.seam,)),))
    assert chi_balance(g2) == (-1, -1)


def test_terminal_ball():
    ws = lib.sphere_wavy(1)
    s = MarkedSurface(ws.map, (ws.gamma,))
    assert is_terminal_ball(ConvexStructure("b", (s,), frozenset({"ball"})))
    with pytest.raises(MissingCertificateError):
        is_terminal_ball(ConvexStructure("b", (s,)))
    two = lib.sphere_latitudes(2)
    s2 = MarkedSurface(two.map, two.circles)
    assert not is_terminal_ball(ConvexStructure("b", (s2,), frozenset({"ball"})))
    tor = ConvexStructure("t", (_marked_torus(),), frozenset({"ball"}))
    assert not is_terminal_ball(tor)


def test_structure_obstruction_scans_all_boundaries():
    ws = lib.sphere_wavy(1)
    good = MarkedSurface(ws.map, (ws.gamma,))
    bad = MarkedSurface(lib.sphere_latitudes(3).map, lib.sphere_latitudes(3).circles)
    c = ConvexStructure("mixed", (good, bad))
    ob = structure_obstruction(c)
    assert ob is not None and ob.kind == "sphere_count"


def test_boundary_required():
    with pytest.raises(InvalidMapError):
        ConvexStructure("empty", ())
    with pytest.raises(InvalidMapError):
        ConvexStructure("odd", (MarkedSurface(lib.sphere_wavy(1).map, (lib.sphere_wavy(1).gamma,)),), frozenset({"nope"}))
