"""Randomized invariants over the library surface families."""

from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from convexsplit import library as lib
from convexsplit.combmap import disjoint_union, reverse_cycle
from convexsplit.convex import ConvexStructure, MarkedSurface, structure_key
from convexsplit.decomp import DecompositionStep, step_candidates
from convexsplit.divides import (
    DividesOptions,
    enumerate_divides,
    is_boundary_parallel,
    reorient_for_host,
    validate_divides,
)
from convexsplit.split import (
    SplitEmbedding,
    convex_split,
    prepare_boundary,
    replace_boundary,
)

row_subsets = st.sampled_from(
    [rows for size in (2, 4, 6) for rows in itertools.combinations(range(6), size)]
)


def _torus_structure(rows):
    g = lib.torus_grid(6, 3)
    gamma = tuple(
        g.row_cycles[r] if i % 2 == 0 else reverse_cycle(g.map, g.row_cycles[r])
        for i, r in enumerate(rows)
    )
    surface = MarkedSurface(g.map, gamma)
    return ConvexStructure("torus", (surface,)), g


def _prepared(host, walks):
    walks = list(walks)
    for j in range(len(walks)):
        others = tuple(walks[k] for k in range(len(walks)) if k != j)
        out = prepare_boundary(host, walks[j], keep=others)
        host = out.host
        walks[j] = out.walks[0]
    return host, SplitEmbedding(host, tuple(walks))


@settings(max_examples=40, deadline=None)
@given(rows=row_subsets, column=st.integers(0, 2))
def test_every_enumerated_disk_validates_against_its_host(rows, column):
    structure, g = _torus_structure(rows)
    host, emb = _prepared(structure.boundary[0], (g.col_cycles[column],))
    for sigma in enumerate_divides("disk", (len(emb.crossing_positions[0]),)):
        aligned = reorient_for_host(sigma, host, emb)
        assert validate_divides(aligned, host, emb) == ()


@settings(max_examples=20, deadline=None)
@given(
    rows=row_subsets,
    twist=st.integers(0, 3),
    closed=st.integers(0, 2),
)
def test_every_enumerated_annulus_validates_against_its_host(rows, twist, closed):
    structure, g = _torus_structure(rows)
    walks = (g.col_cycles[0], g.col_cycles[1])
    host, emb = _prepared(structure.boundary[0], walks)
    counts = tuple(len(p) for p in emb.crossing_positions)
    opts = DividesOptions(allow_closed=closed, twist_bound=twist)
    for sigma in enumerate_divides("annulus", counts, opts):
        aligned = reorient_for_host(sigma, host, emb)
        assert validate_divides(aligned, host, emb) == ()
        assert len(sigma.closed) <= closed


@settings(max_examples=15, deadline=None)
@given(half=st.integers(1, 5))
def test_parallel_only_enumeration_keeps_compressible_arcs(half):
    opts = DividesOptions(boundary_parallel_only=True)
    narrowed = enumerate_divides("disk", (2 * half,), opts)
    assert narrowed
    for sigma in narrowed:
        assert all(is_boundary_parallel(sigma, arc) for arc in sigma.arcs)
    everything = enumerate_divides("disk", (2 * half,))
    parallel = [
        s
        for s in everything
        if all(is_boundary_parallel(s, arc) for arc in s.arcs)
    ]
    assert len(narrowed) == len(parallel)


@settings(max_examples=25, deadline=None)
@given(
    rows=st.sampled_from(
        [rows for rows in itertools.combinations(range(6), 4)]
    ),
    columns=st.sampled_from([(0, 1), (0, 2), (1, 2)]),
)
def test_disjoint_splits_commute_up_to_isomorphism(rows, columns):
    structure, g = _torus_structure(rows)
    a, b = (g.col_cycles[columns[0]], g.col_cycles[columns[1]])
    forward = DecompositionStep(0, (a, b), kinds=("disk", "disk"))
    swapped = DecompositionStep(0, (b, a), kinds=("disk", "disk"))
    lead = step_candidates(structure, forward)
    trail = step_candidates(structure, swapped)
    width = len(enumerate_divides("disk", (len(rows),)))
    assert len(lead) == len(trail) == width * width

    def run(step, sigma):
        host, emb = _prepared(structure.boundary[0], step.walks)
        aligned = reorient_for_host(sigma, host, emb)
        return convex_split(replace_boundary(structure, 0, host), aligned, emb)

    for i in range(width):
        for j in range(width):
            left = run(forward, lead[i * width + j])
            right = run(swapped, trail[j * width + i])
            assert structure_key(left) == structure_key(right)


@settings(max_examples=30, deadline=None)
@given(rows=row_subsets, waves=st.integers(1, 3))
def test_euler_characteristic_is_additive_over_disjoint_union(rows, waves):
    g = lib.torus_grid(6, 3)
    ws = lib.sphere_wavy(waves)
    union, _ = disjoint_union([g.map, ws.map])
    assert union.euler_char() == g.map.euler_char() + ws.map.euler_char()
    structure, _ = _torus_structure(rows)
    surface = structure.boundary[0]
    assert surface.chi_signed(+1) + surface.chi_signed(-1) == 0
