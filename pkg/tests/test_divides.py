"""Sigma enumeration, validity properties, and boundary-parallel detection."""

from __future__ import annotations

import itertools

import pytest

from convexsplit import library as lib
from convexsplit.combmap import canonical_key
from convexsplit.convex import MarkedSurface
from convexsplit.divides import (
    DividesOptions,
    SurfaceWithDivides,
    annulus_through,
    disjoint_divides,
    disk_with_matching,
    enumerate_divides,
    is_boundary_parallel,
    noncrossing_matchings,
    reorient_for_host,
    validate_divides,
)
from convexsplit.errors import (
    InvalidMapError,
    SignConflictError,
    UnsupportedTopologyError,
)
from convexsplit.split import SplitEmbedding


def _all_matchings(points: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    out = []
    for i, partner in enumerate(rest):
        pair = (first, partner)
        remainder = rest[:i] + rest[i + 1 :]
        out.extend((pair,) + tail for tail in _all_matchings(remainder))
    return out


def _chords_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (a0, a1), (b0, b1) = sorted(a), sorted(b)
    return (a0 < b0 < a1 < b1) or (b0 < a0 < b1 < a1)


def _brute_noncrossing(points: tuple[int, ...]) -> set[frozenset[tuple[int, int]]]:
    out = set()
    for mt in _all_matchings(points):
        if not any(_chords_cross(p, q) for p, q in itertools.combinations(mt, 2)):
            out.add(frozenset(tuple(sorted(pair)) for pair in mt))
    return out


def _wavy_embedding(n: int) -> tuple[MarkedSurface, SplitEmbedding]:
    ws = lib.sphere_wavy(n)
    host = MarkedSurface(ws.map, (ws.gamma,))
    return host, SplitEmbedding(host, (ws.walk,))


def test_matchings_agree_with_brute_force():
    for n in range(1, 6):
        odd = tuple(2 * i + 1 for i in range(2 * n))
        enumerated = {
            frozenset(tuple(sorted(pair)) for pair in mt)
            for mt in noncrossing_matchings(odd)
        }
        assert enumerated == _brute_noncrossing(odd)


def test_disk_counts_are_catalan():
    catalan = [1, 2, 5, 14, 42]
    for n, expected in enumerate(catalan, start=1):
        configs = enumerate_divides("disk", (2 * n,))
        assert len(configs) == expected


def test_enumeration_is_deterministic():
    first = enumerate_divides("disk", (6,))
    second = enumerate_divides("disk", (6,))
    keys_a = [canonical_key(s.map, s.labels()) for s in first]
    keys_b = [canonical_key(s.map, s.labels()) for s in second]
    assert keys_a == keys_b
    assert len(set(keys_a)) == len(keys_a)


def test_single_chord_splits_disk_evenly():
    s = disk_with_matching(1, ((1, 3),))
    assert len(s.arcs) == 1
    assert not s.closed
    assert s.chi_signed(+1) == 1
    assert s.chi_signed(-1) == 1
    word = s.boundary_words[0]
    kinds = [kind for kind, _ in word.letters]
    assert sorted(kinds) == ["head", "slot", "slot", "tail"]


def test_enumerated_disks_validate_on_wavy_host():
    for n in (1, 2):
        host, emb = _wavy_embedding(n)
        for s in enumerate_divides("disk", (2 * n,)):
            aligned = reorient_for_host(s, host, emb)
            assert validate_divides(aligned, host, emb) == ()


def test_reversed_arc_violates_gap_signs():
    host, emb = _wavy_embedding(1)
    s = enumerate_divides("disk", (2,))[0]
    aligned = reorient_for_host(s, host, emb)
    flipped = aligned.reversed_components(frozenset({0}))
    props = [v.prop for v in validate_divides(flipped, host, emb)]
    assert props == [2, 2]
    realigned = reorient_for_host(flipped, host, emb)
    assert realigned.arcs == aligned.arcs


def test_circle_count_mismatch_is_reported():
    host, emb = _wavy_embedding(1)
    s = disk_with_matching(2, ((1, 3), (5, 7)))
    violations = validate_divides(s, host, emb)
    assert [v.prop for v in violations] == [1]


def test_null_homotopic_closed_curve_is_reported():
    faces = [
        ["P0", "P1", "P3"],
        ["P1", "P2", "p"],
        ["P2", "q", "p"],
        ["P2", "P3", "q"],
        ["P3", "r", "q"],
        ["P3", "P1", "r"],
        ["P1", "p", "r"],
        ["p", "q", "r"],
    ]
    m, index = lib.from_polygons(faces)
    slot_vertices = {m.vertex_of[index[("P0", "P1")]], m.vertex_of[index[("P2", "P3")]]}
    slots = frozenset(h for h in m.boundary_marks if m.vertex_of[h] in slot_vertices)
    triangle = (index[("p", "q")], index[("q", "r")], index[("r", "p")])
    host, emb = _wavy_embedding(1)
    for chord in (index[("P1", "P3")], index[("P3", "P1")]):
        s = SurfaceWithDivides(m, ((chord,),), (triangle,), slots)
        violations = validate_divides(s, host, emb)
        assert any(v.prop == 3 for v in violations)


def test_boundary_parallel_arcs_cut_off_empty_disks():
    innermost = disk_with_matching(3, ((1, 3), (5, 7), (9, 11)))
    assert all(is_boundary_parallel(innermost, arc) for arc in innermost.arcs)
    outer = disk_with_matching(3, ((1, 11), (3, 5), (7, 9)))
    assert all(is_boundary_parallel(outer, arc) for arc in outer.arcs)
    nested = disk_with_matching(3, ((1, 11), (3, 9), (5, 7)))
    middle = [is_boundary_parallel(nested, arc) for arc in nested.arcs]
    assert sorted(middle) == [False, True, True]
    opts = DividesOptions(boundary_parallel_only=True)
    assert len(enumerate_divides("disk", (6,), opts)) == 2


def test_through_arcs_are_not_boundary_parallel():
    s = annulus_through(2, 0)
    assert all(not is_boundary_parallel(s, arc) for arc in s.arcs)
    opts = DividesOptions(boundary_parallel_only=True)
    assert enumerate_divides("annulus", (2, 2), opts) == ()
    assert len(enumerate_divides("disk", (4,), opts)) == 2


def test_annulus_shifts_collapse_to_one_class():
    opts = DividesOptions(twist_bound=3)
    configs = enumerate_divides("annulus", (4, 4), opts)
    assert len(configs) == 1
    assert len(configs[0].arcs) == 4
    assert len(configs[0].boundary_words) == 2


def test_disjoint_union_keeps_components_apart():
    a = disk_with_matching(1, ((1, 3),))
    b = annulus_through(2, 0)
    s = disjoint_divides(a, b)
    assert len(s.map.components) == 2
    assert len(s.boundary_words) == 3
    assert len(s.arcs) == 3


def test_enumeration_bounds_are_checked():
    with pytest.raises(InvalidMapError):
        DividesOptions(allow_closed=-1)
    with pytest.raises(InvalidMapError):
        enumerate_divides("disk", (3,))
    with pytest.raises(UnsupportedTopologyError):
        enumerate_divides("disk", (2, 2))
    with pytest.raises(UnsupportedTopologyError):
        enumerate_divides("pants", (2, 2, 2))


def test_mixed_component_orientation_is_rejected():
    host, emb = _wavy_embedding(2)
    s = reorient_for_host(enumerate_divides("disk", (4,))[0], host, emb)
    m = s.map
    arc = s.arcs[1]
    flipped_arc = tuple(m.twin[h] for h in reversed(arc))
    mixed = SurfaceWithDivides(m, (s.arcs[0], flipped_arc), s.closed, s.slots)
    with pytest.raises(SignConflictError):
        reorient_for_host(mixed, host, emb)
