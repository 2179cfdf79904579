"""Bundled example scenarios, built from library surfaces.

Each entry here regenerates one of the JSON files shipped under
``scenarios/``; a test pins the bytes so the bundle and the builders
cannot drift apart.
"""

from __future__ import annotations

from itertools import combinations
from pathlib import Path

from . import library as lib
from .combmap import CombMap, glue_holes, open_face, reverse_cycle
from .convex import ConvexStructure, MarkedSurface
from .decomp import DecompositionStep
from .scenario import SCENARIO_VERSION, ScenarioFile, print_scenario


def _suture_rows(name: str, rows: tuple[int, ...]) -> tuple[ConvexStructure, lib.GridTorus]:
    g = lib.torus_grid(6, 3)
    gamma = tuple(
        g.row_cycles[r] if i % 2 == 0 else reverse_cycle(g.map, g.row_cycles[r])
        for i, r in enumerate(rows)
    )
    structure = ConvexStructure(
        name,
        (MarkedSurface(g.map, gamma),),
        frozenset({"haken_skeleton_valid"}),
    )
    return structure, g


def _genus_three() -> CombMap:
    m = lib.genus_two_host().map
    sizes = [(len(f), fi) for fi, f in enumerate(m.faces)]
    for (sa, fa), (sb, fb) in combinations(sizes, 2):
        if sa != sb:
            continue
        va = {m.vertex_of[h] for h in m.faces[fa]}
        vb = {m.vertex_of[h] for h in m.faces[fb]}
        if not va & vb:
            break
    mm = open_face(open_face(m, fa), fb)
    holes = sorted({mm.face_of[h] for h in mm.boundary_marks})
    anchors = [
        next(h for h in sorted(mm.boundary_marks) if mm.face_of[h] == hole)
        for hole in holes
    ]
    return glue_holes(mm, anchors[0], anchors[1]).map


def ball() -> ScenarioFile:
    """One-curve sphere with its equatorial cutting walk."""
    wb = lib.sphere_wavy(1)
    structure = ConvexStructure(
        "ball",
        (MarkedSurface(wb.map, (wb.gamma,)),),
        frozenset({"haken_skeleton_valid"}),
    )
    step = DecompositionStep(0, (wb.walk,))
    return ScenarioFile(SCENARIO_VERSION, structure, (step,))


def solid_torus() -> ScenarioFile:
    """Two-suture solid torus with a meridian disk step; one candidate."""
    structure, g = _suture_rows("solid-torus", (0, 2))
    step = DecompositionStep(0, (g.col_cycles[0],))
    return ScenarioFile(SCENARIO_VERSION, structure, (step,))


def disk_six_crossings() -> ScenarioFile:
    """Six-suture solid torus; the meridian disk meets gamma six times."""
    structure, g = _suture_rows("disk-six-crossings", (0, 1, 2, 3, 4, 5))
    step = DecompositionStep(0, (g.col_cycles[0],))
    return ScenarioFile(SCENARIO_VERSION, structure, (step,))


def four_sutures() -> ScenarioFile:
    """Four-suture solid torus cut by two parallel meridian disks at once.

    The candidate pairings that match the suture rows give two one-curve
    spheres; the mismatched pairings give a two-curve sphere.
    """
    structure, g = _suture_rows("four-sutures", (0, 1, 2, 3))
    step = DecompositionStep(
        0, (g.col_cycles[0], g.col_cycles[1]), kinds=("disk", "disk")
    )
    return ScenarioFile(SCENARIO_VERSION, structure, (step,))


def disk_genus_three() -> ScenarioFile:
    """Unmarked disk plus genus-3 surface; norm input only, no steps."""
    structure = ConvexStructure(
        "disk-genus-three",
        (
            MarkedSurface(lib.disk_polygon(3), ()),
            MarkedSurface(_genus_three(), ()),
        ),
    )
    return ScenarioFile(SCENARIO_VERSION, structure)


BUILDERS = {
    "ball": ball,
    "solid-torus": solid_torus,
    "disk-six-crossings": disk_six_crossings,
    "four-sutures": four_sutures,
    "disk-genus-three": disk_genus_three,
}


def write_bundled(directory: str | Path) -> list[Path]:
    """Regenerate every bundled scenario file under ``directory``."""
    out = []
    for name, build in sorted(BUILDERS.items()):
        path = Path(directory) / f"{name}.json"
        path.write_text(print_scenario(build()))
        out.append(path)
    return out
