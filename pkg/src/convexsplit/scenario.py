"""Versioned JSON scenarios: a structure, its cutting steps, and options.

The wire form is hand-editable JSON with a fixed key order, so equal
scenarios print to equal bytes.  Curves are stored as edge-index cycles:
an edge is named by the smaller of its two half-edges and a traversal
direction of +1 or -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .combmap import CombMap
from .convex import ConvexStructure, MarkedSurface
from .decomp import DecompositionStep
from .divides import DividesOptions, SurfaceWithDivides
from .errors import InvalidMapError
from .sutured import SuturedManifold

SCENARIO_VERSION = 1


@dataclass(frozen=True)
class ScenarioFile:
    """A manifold, the cutting steps still to run, and enumeration options."""

    version: int
    manifold: ConvexStructure | SuturedManifold
    steps: tuple[DecompositionStep, ...] = ()
    options: DividesOptions = DividesOptions()

    def __post_init__(self) -> None:
        if self.version != SCENARIO_VERSION:
            raise InvalidMapError(f"scenario version must be {SCENARIO_VERSION}")
        if self.steps and not isinstance(self.manifold, ConvexStructure):
            raise InvalidMapError("steps require a convex manifold")


# ----- encoding -----


def _encode_cycle(m: CombMap, cycle: tuple[int, ...]) -> list[list[int]]:
    out = []
    for h in cycle:
        if not 0 <= h < len(m.twin):
            raise InvalidMapError(f"cycle half-edge {h} is outside its host map")
        edge = min(h, m.twin[h])
        out.append([edge, 1 if h == edge else -1])
    return out


def _encode_map(m: CombMap) -> dict[str, Any]:
    return {
        "twin": list(m.twin),
        "next": list(m.next),
        "marks": sorted(m.boundary_marks),
    }


def _encode_surface(s: MarkedSurface) -> dict[str, Any]:
    return {
        **_encode_map(s.map),
        "gamma": [_encode_cycle(s.map, c) for c in s.gamma],
        "seeds": [list(seed) for seed in s.seeds],
    }


def _encode_convex(c: ConvexStructure) -> dict[str, Any]:
    return {
        "kind": "convex",
        "name": c.name,
        "certificates": sorted(c.certificates),
        "boundary": [_encode_surface(s) for s in c.boundary],
    }


def _encode_sutured(m: SuturedManifold) -> dict[str, Any]:
    return {
        "kind": "sutured",
        "name": m.name,
        "certificates": sorted(m.certificates),
        "boundary": [
            {
                **_encode_map(m.map),
                "sutures": [_encode_cycle(m.map, c) for c in m.sutures],
                "toral": sorted(m.toral),
                "bare_signs": [list(pair) for pair in m.unsutured_signs],
            }
        ],
    }


def sigma_payload(s: SurfaceWithDivides) -> dict[str, Any]:
    """Wire form of a dividing configuration on a splitting surface."""
    return {
        **_encode_map(s.map),
        "arcs": [_encode_cycle(s.map, a) for a in s.arcs],
        "closed": [_encode_cycle(s.map, c) for c in s.closed],
        "slots": sorted(s.slots),
    }


def _encode_step(step: DecompositionStep, host: CombMap) -> dict[str, Any]:
    return {
        "component": step.component,
        "kinds": list(step.kinds),
        "walks": [_encode_cycle(host, w) for w in step.walks],
        "sigma": None if step.sigma is None else sigma_payload(step.sigma),
    }


def print_scenario(sc: ScenarioFile) -> str:
    """Canonical text of a scenario; equal scenarios give equal bytes."""
    if isinstance(sc.manifold, ConvexStructure):
        manifold = _encode_convex(sc.manifold)
        hosts = [s.map for s in sc.manifold.boundary]
    else:
        manifold = _encode_sutured(sc.manifold)
        hosts = [sc.manifold.map]
    for step in sc.steps:
        if not 0 <= step.component < len(hosts):
            raise InvalidMapError(
                f"step component {step.component} has no boundary surface"
            )
    doc = {
        "version": sc.version,
        "manifold": manifold,
        "steps": [_encode_step(step, hosts[step.component]) for step in sc.steps],
        "options": {
            "allow_closed": sc.options.allow_closed,
            "twist_bound": sc.options.twist_bound,
            "boundary_parallel_only": sc.options.boundary_parallel_only,
        },
    }
    return json.dumps(doc, indent=2) + "\n"


# ----- decoding -----


def _fail(where: str, message: str) -> InvalidMapError:
    return InvalidMapError(f"{where}: {message}")


def _int_list(data: Any, where: str) -> list[int]:
    if not isinstance(data, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in data
    ):
        raise _fail(where, "expected a list of integers")
    return data


def _decode_map(data: Any, where: str) -> CombMap:
    if not isinstance(data, dict):
        raise _fail(where, "expected an object")
    twin = _int_list(data.get("twin"), f"{where}.twin")
    nxt = _int_list(data.get("next"), f"{where}.next")
    marks = _int_list(data.get("marks", []), f"{where}.marks")
    size = len(twin)
    for name, values in (("twin", twin), ("next", nxt), ("marks", marks)):
        for x in values:
            if not 0 <= x < size:
                raise _fail(where, f"{name} index {x} out of range")
    return CombMap(tuple(twin), tuple(nxt), frozenset(marks))


def _decode_cycle(m: CombMap, data: Any, where: str) -> tuple[int, ...]:
    if not isinstance(data, list) or not data:
        raise _fail(where, "expected a nonempty list of [edge, orientation] pairs")
    out = []
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise _fail(where, f"entry {i} is not an [edge, orientation] pair")
        edge, orient = pair
        if not 0 <= edge < len(m.twin):
            raise _fail(where, f"edge index {edge} out of range")
        if edge > m.twin[edge]:
            raise _fail(where, f"edge {edge} is not canonical (its twin is smaller)")
        if orient not in (1, -1):
            raise _fail(where, f"orientation {orient} must be 1 or -1")
        out.append(edge if orient == 1 else m.twin[edge])
    return tuple(out)


def _decode_cycles(m: CombMap, data: Any, where: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(data, list):
        raise _fail(where, "expected a list of cycles")
    return tuple(
        _decode_cycle(m, cycle, f"{where}[{i}]") for i, cycle in enumerate(data)
    )


def _decode_pairs(data: Any, where: str) -> tuple[tuple[int, int], ...]:
    if not isinstance(data, list):
        raise _fail(where, "expected a list of pairs")
    out = []
    for i, pair in enumerate(data):
        values = _int_list(pair, f"{where}[{i}]")
        if len(values) != 2:
            raise _fail(where, f"entry {i} must have two integers")
        out.append((values[0], values[1]))
    return tuple(out)


def _decode_surface(data: Any, where: str) -> MarkedSurface:
    m = _decode_map(data, where)
    gamma = _decode_cycles(m, data.get("gamma", []), f"{where}.gamma")
    seeds = _decode_pairs(data.get("seeds", []), f"{where}.seeds")
    for face, _ in seeds:
        if not 0 <= face < len(m.faces):
            raise _fail(where, f"seed face {face} out of range")
    return MarkedSurface(m, gamma, seeds)


def _decode_manifold(data: Any) -> ConvexStructure | SuturedManifold:
    if not isinstance(data, dict):
        raise _fail("manifold", "expected an object")
    kind = data.get("kind")
    name = data.get("name")
    if not isinstance(name, str):
        raise _fail("manifold", "name must be a string")
    certs = data.get("certificates", [])
    if not isinstance(certs, list) or not all(isinstance(c, str) for c in certs):
        raise _fail("manifold", "certificates must be a list of strings")
    boundary = data.get("boundary")
    if not isinstance(boundary, list) or not boundary:
        raise _fail("manifold", "boundary must be a nonempty list")
    if kind == "convex":
        surfaces = tuple(
            _decode_surface(entry, f"boundary[{i}]")
            for i, entry in enumerate(boundary)
        )
        return ConvexStructure(name, surfaces, frozenset(certs))
    if kind == "sutured":
        if len(boundary) != 1:
            raise _fail("manifold", "a sutured manifold has one boundary object")
        entry = boundary[0]
        m = _decode_map(entry, "boundary[0]")
        sutures = _decode_cycles(m, entry.get("sutures", []), "boundary[0].sutures")
        toral = _int_list(entry.get("toral", []), "boundary[0].toral")
        bare = _decode_pairs(entry.get("bare_signs", []), "boundary[0].bare_signs")
        return SuturedManifold(
            name, m, sutures, frozenset(toral), bare, frozenset(certs)
        )
    raise _fail("manifold", "kind must be convex or sutured")


def _decode_step(
    data: Any, hosts: list[CombMap], where: str
) -> DecompositionStep:
    if not isinstance(data, dict):
        raise _fail(where, "expected an object")
    component = data.get("component")
    if not isinstance(component, int) or isinstance(component, bool):
        raise _fail(where, "component must be an integer")
    if not 0 <= component < len(hosts):
        raise _fail(where, f"no boundary surface {component}")
    kinds = data.get("kinds", ["disk"])
    if not isinstance(kinds, list) or not all(isinstance(k, str) for k in kinds):
        raise _fail(where, "kinds must be a list of strings")
    walks = _decode_cycles(hosts[component], data.get("walks"), f"{where}.walks")
    sigma_data = data.get("sigma")
    sigma = None
    if sigma_data is not None:
        sm = _decode_map(sigma_data, f"{where}.sigma")
        arcs = _decode_cycles(sm, sigma_data.get("arcs", []), f"{where}.sigma.arcs")
        closed = _decode_cycles(
            sm, sigma_data.get("closed", []), f"{where}.sigma.closed"
        )
        slots = _int_list(sigma_data.get("slots", []), f"{where}.sigma.slots")
        for h in slots:
            if h not in sm.boundary_marks:
                raise _fail(where, f"sigma slot {h} is not a hole half-edge")
        sigma = SurfaceWithDivides(sm, arcs, closed, frozenset(slots))
    return DecompositionStep(component, walks, tuple(kinds), sigma)


def parse_scenario(text: str) -> ScenarioFile:
    """Parse scenario JSON; printing the result reproduces canonical bytes."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidMapError(f"scenario is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise _fail("scenario", "expected a JSON object")
    version = doc.get("version")
    if version != SCENARIO_VERSION:
        raise _fail("scenario", f"version must be {SCENARIO_VERSION}")
    manifold = _decode_manifold(doc.get("manifold"))
    hosts = (
        [s.map for s in manifold.boundary]
        if isinstance(manifold, ConvexStructure)
        else [manifold.map]
    )
    steps_data = doc.get("steps", [])
    if not isinstance(steps_data, list):
        raise _fail("steps", "expected a list")
    steps = tuple(
        _decode_step(entry, hosts, f"steps[{i}]")
        for i, entry in enumerate(steps_data)
    )
    options_data = doc.get("options", {})
    if not isinstance(options_data, dict):
        raise _fail("options", "expected an object")
    options = DividesOptions(
        allow_closed=options_data.get("allow_closed", 0),
        twist_bound=options_data.get("twist_bound", 0),
        boundary_parallel_only=options_data.get("boundary_parallel_only", False),
    )
    return ScenarioFile(version, manifold, steps, options)


def chords_of(s: SurfaceWithDivides) -> dict[str, Any]:
    """Arc endpoints as (circle, position) pairs for chord-diagram drawing.

    Positions count the marked points around each boundary circle in walk
    order, so equal configurations land on equal coordinates; ``positions``
    gives the marked-point count of each circle, which fixes the angular
    scale of a drawing.
    """
    m = s.map
    tails = {m.vertex_of[a[0]]: i for i, a in enumerate(s.arcs)}
    heads = {m.head(a[-1]): i for i, a in enumerate(s.arcs)}
    slot_vertices = {m.vertex_of[h] for h in s.slots}
    ends: dict[int, list[list[int]]] = {i: [None, None] for i in range(len(s.arcs))}  # type: ignore[misc]
    positions = []
    for circle, hole in enumerate(m.hole_faces):
        position = 0
        for h in m.faces[hole]:
            v = m.vertex_of[h]
            marked = v in tails or v in heads or v in slot_vertices
            if v in tails:
                ends[tails[v]][0] = [circle, position]
            if v in heads:
                ends[heads[v]][1] = [circle, position]
            if marked:
                position += 1
        positions.append(position)
    return {
        "arcs": [ends[i] for i in range(len(s.arcs))],
        "closed": len(s.closed),
        "positions": positions,
    }
