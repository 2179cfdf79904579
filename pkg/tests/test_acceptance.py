"""End-to-end acceptance: closed forms, counting laws, worked examples.

One test per guarantee, so the verbose run reads as a checklist.  Oracles
are independent of the implementation: root tracking for the rounding
pairings, brute-force matchings for the disk configurations, and explicit
Euler characteristic bookkeeping for the splitting corpus.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from fractions import Fraction
from importlib import resources

from convexsplit import gallery
from convexsplit import library as lib
from convexsplit.cli import main
from convexsplit.combmap import reverse_cycle
from convexsplit.convex import (
    ConvexStructure,
    MarkedSurface,
    chi_balance,
    giroux_obstruction,
    structure_key,
)
from convexsplit.decomp import DecompositionStep, search, step_candidates, verify_sequence
from convexsplit.divides import annulus_through, enumerate_divides, reorient_for_host
from convexsplit.scenario import chords_of, parse_scenario
from convexsplit.split import (
    LOWER_PIECE,
    UPPER_PIECE,
    SplitEmbedding,
    convex_split,
    local_model,
    prepare_boundary,
    replace_boundary,
)
from convexsplit.sutured import (
    SuturedManifold,
    TautCertificate,
    apply_correspondence,
    canonical_divides,
    sutured_split,
    taut_partial_check,
    thurston_norm,
    to_convex,
)


def _circle_distance(a: float, b: float) -> float:
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def _tracked_root(n: int, z0: Fraction, direction: int) -> float:
    """Follow the zero of sin(2*pi*n*z - direction*theta) from theta 0 to pi/2."""
    z = float(z0)
    steps = 200
    for s in range(1, steps + 1):
        theta = (math.pi / 2) * s / steps
        for _ in range(4):
            phase = 2 * math.pi * n * z - direction * theta
            z -= math.sin(phase) / (2 * math.pi * n * math.cos(phase))
    return z % 1.0


def test_local_model_closed_forms_match_the_root_tracking_oracle():
    for n in range(1, 6):
        lm = local_model(n)
        assert lm.gamma_boundary_z == tuple(Fraction(k, 2 * n) for k in range(2 * n))
        assert lm.gamma_s_z == tuple(
            Fraction(1 + 2 * k, 4 * n) for k in range(2 * n)
        )
        for piece, direction in ((UPPER_PIECE, +1), (LOWER_PIECE, -1)):
            pairing = lm.pairing(piece)
            assert set(pairing) == set(lm.gamma_boundary_z)
            assert sorted(pairing.values()) == sorted(lm.gamma_s_z)
            for z0 in lm.gamma_boundary_z:
                z = _tracked_root(n, z0, direction)
                nearest = min(
                    lm.gamma_s_z, key=lambda w: _circle_distance(z, float(w))
                )
                assert nearest == pairing[z0]
                assert _circle_distance(z, float(pairing[z0])) < 1e-9


def _prepared(host: MarkedSurface, walks):
    walks = list(walks)
    for j in range(len(walks)):
        others = tuple(walks[k] for k in range(len(walks)) if k != j)
        out = prepare_boundary(host, walks[j], keep=others)
        host = out.host
        walks[j] = out.walks[0]
    return host, SplitEmbedding(host, tuple(walks))


def _alternating(m, cycles):
    return tuple(
        c if i % 2 == 0 else reverse_cycle(m, c) for i, c in enumerate(cycles)
    )


def _split_pool():
    pool = []
    for waves in (1, 2, 3):
        ws = lib.sphere_wavy(waves)
        host = ConvexStructure("sphere", (MarkedSurface(ws.map, (ws.gamma,)),))
        pool.append((host, (ws.walk,), ("disk",)))
    g = lib.torus_grid(6, 3)
    pairs = ((0, 1), (0, 2), (1, 2))
    for size in (2, 4, 6):
        for rows in itertools.combinations(range(6), size):
            gamma = _alternating(g.map, [g.row_cycles[r] for r in rows])
            host = ConvexStructure("torus", (MarkedSurface(g.map, gamma),))
            for j in range(3):
                pool.append((host, (g.col_cycles[j],), ("disk",)))
            for j, k in pairs:
                pool.append(
                    (host, (g.col_cycles[j], g.col_cycles[k]), ("disk", "disk"))
                )
    g2 = lib.genus_two_host()
    gamma2 = _alternating(g2.map, g2.row_gammas)
    host2 = ConvexStructure("genus-two", (MarkedSurface(g2.map, gamma2),))
    pool.append((host2, (g2.column_walk,), ("disk",)))
    pool.append((host2, (g2.handle_walk,), ("disk",)))
    return pool


def test_split_corpus_adds_surface_chi_to_both_signed_regions():
    rng = random.Random(20260814)
    tasks = []
    for structure, walks, kinds in _split_pool():
        step = DecompositionStep(0, walks, kinds)
        for sigma in step_candidates(structure, step):
            tasks.append((structure, step, sigma))
    rng.shuffle(tasks)
    tasks = tasks[:240]
    assert len(tasks) >= 200
    assert {structure.name for structure, _, _ in tasks} == {
        "sphere", "torus", "genus-two",
    }
    balanced = 0
    for structure, step, sigma in tasks:
        before = chi_balance(structure)
        host, emb = _prepared(structure.boundary[0], step.walks)
        aligned = reorient_for_host(sigma, host, emb)
        result = convex_split(replace_boundary(structure, 0, host), aligned, emb)
        after = chi_balance(result)
        assert after[0] == before[0] + step.surface_chi()
        assert after[1] == before[1] + step.surface_chi()
        if before[0] == before[1]:
            assert after[0] == after[1]
            balanced += 1
    assert balanced >= 200


def test_tightness_criterion_acceptance_set():
    one = lib.sphere_latitudes(1)
    assert giroux_obstruction(MarkedSurface(one.map, one.circles)) is None
    for count in (2, 3, 5):
        sl = lib.sphere_latitudes(count)
        ob = giroux_obstruction(MarkedSurface(sl.map, sl.circles))
        assert ob is not None
        assert ob.kind == "sphere_count"
        assert ob.count == count
    g = lib.torus_grid(6, 3)
    face_loop = g.map.faces[0]
    ob = giroux_obstruction(MarkedSurface(g.map, (face_loop,)))
    assert ob is not None
    assert ob.kind == "null_homotopic"
    assert ob.curve == face_loop
    essential = _alternating(g.map, [g.row_cycles[0], g.row_cycles[2]])
    assert giroux_obstruction(MarkedSurface(g.map, essential)) is None


def _brute_noncrossing(points: int) -> set[frozenset[frozenset[int]]]:
    def pairings(items):
        if not items:
            yield ()
            return
        first, rest = items[0], items[1:]
        for i, second in enumerate(rest):
            for tail in pairings(rest[:i] + rest[i + 1 :]):
                yield ((first, second),) + tail

    def crossing(p, q):
        (a, b), (c, d) = sorted(p), sorted(q)
        return a < c < b < d or c < a < d < b

    out = set()
    for matching in pairings(tuple(range(points))):
        if any(crossing(p, q) for p, q in itertools.combinations(matching, 2)):
            continue
        out.add(frozenset(frozenset(pair) for pair in matching))
    return out


def _matching_of(sigma) -> frozenset[frozenset[int]]:
    view = chords_of(sigma)
    ends = sorted(pos for arc in view["arcs"] for _, pos in arc)
    rank = {pos: i for i, pos in enumerate(ends)}
    return frozenset(
        frozenset((rank[arc[0][1]], rank[arc[1][1]])) for arc in view["arcs"]
    )


def test_disk_configurations_are_counted_by_catalan():
    catalan = (1, 2, 5, 14, 42, 132)
    for n in range(1, 7):
        started = time.perf_counter()
        found = enumerate_divides("disk", (2 * n,))
        elapsed = time.perf_counter() - started
        assert len(found) == catalan[n - 1]
        matchings = {_matching_of(sigma) for sigma in found}
        assert len(matchings) == catalan[n - 1]
        assert matchings == _brute_noncrossing(2 * n)
        if n == 6:
            assert elapsed < 1.0


def _bundled_scenario(name: str):
    text = (resources.files("convexsplit") / "scenarios" / f"{name}.json").read_text()
    return parse_scenario(text)


def _terminal_profile(structure: ConvexStructure) -> list[tuple[bool, int]]:
    return [
        (s.map.euler_char() == 2, len(s.gamma)) for s in structure.boundary
    ]


def test_worked_decompositions_certify_terminal_balls():
    ball = _bundled_scenario("ball")
    res = search(ball.manifold, ball.steps, ball.options)
    assert res.found
    assert res.branches_explored == 1
    assert "ball" in res.certificate.terminal.certificates
    assert _terminal_profile(res.certificate.terminal) == [(True, 1), (True, 1)]

    torus = _bundled_scenario("solid-torus")
    res = search(torus.manifold, torus.steps, torus.options)
    assert res.found
    assert res.branches_explored == 1
    assert "ball" in res.certificate.terminal.certificates
    assert _terminal_profile(res.certificate.terminal) == [(True, 1)]


def _convex_route(m: SuturedManifold, surface, walks, pairs):
    if pairs:
        structure = apply_correspondence(m, walks, pairs).structure
    else:
        structure = to_convex(m)
    host, emb = _prepared(structure.boundary[0], walks)
    sigma = canonical_divides(emb, surface)
    return convex_split(replace_boundary(structure, 0, host), sigma, emb)


def test_sutured_and_convex_splits_commute():
    ws = lib.sphere_wavy(1)
    ball = SuturedManifold(
        "B", ws.map, (ws.gamma,), certificates=frozenset({"ball"})
    )
    sl = lib.sphere_latitudes(3)
    flat = SuturedManifold("B3", sl.map, (sl.circles[1],))
    g = lib.torus_grid(6, 3)
    m = g.map
    sutures = (g.row_cycles[0], reverse_cycle(m, g.row_cycles[2]))
    st = SuturedManifold(
        "V", m, sutures, certificates=frozenset({"solid_torus"})
    )
    bare = SuturedManifold(
        "V", m, (), unsutured_signs=((0, 1),),
        certificates=frozenset({"solid_torus"}),
    )
    toral = SuturedManifold("T", m, (), toral=frozenset({0}))
    disk = lib.disk_polygon(2)
    annulus = annulus_through(2, 0).map
    band_walks = (reverse_cycle(m, g.row_cycles[3]), g.row_cycles[5])
    examples = [
        (ball, disk, (ws.walk,), {}),
        (flat, disk, (reverse_cycle(sl.map, sl.circles[0]),), {}),
        (st, disk, (g.col_cycles[0],), {}),
        (st, annulus, band_walks, {}),
        (bare, annulus, band_walks, {0: (g.row_cycles[0], g.row_cycles[2])}),
        (toral, disk, (g.col_cycles[0],), {0: (g.row_cycles[1], g.row_cycles[3])}),
    ]
    assert len(examples) >= 5
    for manifold, surface, walks, pairs in examples:
        left = to_convex(sutured_split(manifold, surface, walks, pairs))
        right = _convex_route(manifold, surface, walks, pairs)
        assert structure_key(left) == structure_key(right)


def test_thurston_norm_values_and_taut_checks():
    assert thurston_norm(lib.disk_polygon(3)) == 0
    assert thurston_norm(lib.torus_grid(3, 3).map) == 0
    assert thurston_norm(lib.genus_two_host().map) == 2
    sc = _bundled_scenario("disk-genus-three")
    assert sum(thurston_norm(s.map) for s in sc.manifold.boundary) == 4

    g2 = lib.genus_two_host()
    a, b = g2.row_gammas
    annular = SuturedManifold("W", g2.map, (a, reverse_cycle(g2.map, b)))
    report = taut_partial_check(
        annular, TautCertificate(norm_witnesses=(lib.disk_polygon(1),))
    )
    assert report.verdict == "falsified"
    assert report.region_norm == 2
    assert report.falsifier == 0

    sl = lib.sphere_latitudes(3)
    multi = SuturedManifold(
        "B", sl.map, sl.circles, certificates=frozenset({"ball"})
    )
    assert "ball-with-extra-sutures" in taut_partial_check(multi).flags


def _run(args, capsys) -> tuple[int, str, str]:
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_outputs_and_certificate_replay_are_deterministic(capsys, tmp_path):
    commands = {
        "ball": [["validate"], ["norm"], ["convert", "--to-sutured"],
                 ["enumerate-divides"], ["split", "--step", "0"], ["search"]],
        "solid-torus": [["validate"], ["norm"], ["convert", "--to-sutured"],
                        ["enumerate-divides"], ["split", "--step", "0"], ["search"]],
        "disk-six-crossings": [["validate"], ["norm"], ["convert", "--to-sutured"],
                               ["enumerate-divides"],
                               ["split", "--step", "0", "--candidate", "0"],
                               ["search"]],
        "four-sutures": [["validate"], ["norm"], ["convert", "--to-sutured"],
                         ["enumerate-divides"],
                         ["split", "--step", "0", "--candidate", "0"],
                         ["search"]],
        "disk-genus-three": [["validate"], ["norm"]],
    }
    for name, runs in commands.items():
        path = tmp_path / f"{name}.json"
        path.write_text(
            (resources.files("convexsplit") / "scenarios" / f"{name}.json").read_text()
        )
        for prefix in runs:
            args = prefix + [str(path)]
            first = _run(args, capsys)
            second = _run(args, capsys)
            assert first == second, args
            assert first[0] in (0, 2), (args, first)

    for name in ("ball", "solid-torus"):
        sc = _bundled_scenario(name)
        cert = search(sc.manifold, sc.steps, sc.options).certificate
        assert verify_sequence(cert.initial, cert.steps) == cert
