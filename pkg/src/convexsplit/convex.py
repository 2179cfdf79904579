"""Closed marked surfaces with signed regions and the tightness obstruction."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .combmap import (
    CombMap,
    CurveSystem,
    canonical_key,
    is_null_homotopic,
    region_euler_char,
)
from .errors import (
    InvalidMapError,
    MissingCertificateError,
    SignConflictError,
)

CERTIFICATES = frozenset(
    {"irreducible", "handlebody", "ball", "solid_torus", "haken_skeleton_valid"}
)


@dataclass(frozen=True)
class RegionPartition:
    """Faces of a closed surface grouped into signed regions between curves."""

    region_of: tuple[int, ...]
    faces: tuple[frozenset[int], ...]
    signs: tuple[int, ...]

    def sign_of_face(self, face: int) -> int:
        return self.signs[self.region_of[face]]


@dataclass(frozen=True)
class GirouxObstruction:
    """Why a marked surface cannot bound tightly: a trivial curve or a bad
    sphere count."""

    kind: str
    component: int
    curve: tuple[int, ...] | None = None
    count: int | None = None


@dataclass(frozen=True)
class MarkedSurface:
    """Closed oriented surface with an oriented multicurve dividing it.

    Faces on the left of each curve are positive, faces on the right
    negative.  ``seeds`` optionally pins (face, sign) pairs; a seed that
    disagrees with the orientation convention is an error, not a repair.
    """

    map: CombMap
    gamma: tuple[tuple[int, ...], ...]
    seeds: tuple[tuple[int, int], ...] = ()

    @cached_property
    def partition(self) -> RegionPartition:
        return compute_regions(self)

    @cached_property
    def gamma_edges(self) -> frozenset[int]:
        out = set()
        for cycle in self.gamma:
            for h in cycle:
                out.add(h)
                out.add(self.map.twin[h])
        return frozenset(out)

    def curves_on_component(self, comp: frozenset[int]) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.gamma if c[0] in comp)

    def chi_signed(self, sign: int) -> int:
        part = self.partition
        faces = {
            f
            for region, fs in enumerate(part.faces)
            if part.signs[region] == sign
            for f in fs
        }
        return region_euler_char(self.map, faces)

    def curve_count(self) -> int:
        return len(self.gamma)

    def is_sphere_with_one_curve(self) -> bool:
        m = self.map
        return (
            len(m.components) == 1
            and m.is_closed()
            and m.euler_char() == 2
            and len(self.gamma) == 1
        )


def compute_regions(s: MarkedSurface) -> RegionPartition:
    """Partition faces into regions not crossing gamma and assign signs.

    Signs come from the curve orientations (left is positive); regions seen
    from both sides, or seeds disagreeing with the convention, are errors.
    """
    m = s.map
    if not m.is_closed():
        raise InvalidMapError("marked surface must be closed")
    CurveSystem(cycles=s.gamma).validate(m)
    for comp in m.components:
        if not any(c[0] in comp for c in s.gamma):
            raise InvalidMapError("a surface component carries no dividing curve")

    face_count = len(m.faces)
    parent = list(range(face_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in range(len(m.twin)):
        if h not in s.gamma_edges:
            a, b = find(m.face_of[h]), find(m.face_of[m.twin[h]])
            if a != b:
                parent[a] = b

    roots = sorted({find(f) for f in range(face_count)})
    region_index = {r: i for i, r in enumerate(roots)}
    region_of = tuple(region_index[find(f)] for f in range(face_count))
    faces: list[set[int]] = [set() for _ in roots]
    for f in range(face_count):
        faces[region_of[f]].add(f)

    signs: list[int | None] = [None] * len(roots)

    def assign(region: int, sign: int) -> None:
        if signs[region] is None:
            signs[region] = sign
        elif signs[region] != sign:
            raise SignConflictError("gamma does not separate signed regions")

    for cycle in s.gamma:
        for h in cycle:
            assign(region_of[m.face_of[h]], +1)
            assign(region_of[m.face_of[m.twin[h]]], -1)
    for face, sign in s.seeds:
        assign(region_of[face], sign)
    if any(sg is None for sg in signs):
        raise SignConflictError("a region received no sign")
    return RegionPartition(region_of, tuple(frozenset(f) for f in faces), tuple(signs))  # type: ignore[arg-type]


def giroux_obstruction(s: MarkedSurface) -> GirouxObstruction | None:
    """First obstruction to tightness, or None.

    A sphere component must carry exactly one curve; on any other component
    no curve may be null-homotopic.
    """
    s.partition
    m = s.map
    for ci, comp in enumerate(m.components):
        curves = s.curves_on_component(comp)
        if m.component_genus(comp) == 0 and not (m.boundary_marks & comp):
            if len(curves) != 1:
                return GirouxObstruction("sphere_count", ci, count=len(curves))
            continue
        for cycle in curves:
            if is_null_homotopic(m, cycle):
                return GirouxObstruction("null_homotopic", ci, curve=cycle)
    return None


@dataclass(frozen=True)
class ConvexStructure:
    """A 3-manifold presented by its marked boundary plus certificates.

    Certificates record interior facts the boundary cannot determine; the
    engine never invents them and drops all but ``haken_skeleton_valid``
    when splitting.
    """

    name: str
    boundary: tuple[MarkedSurface, ...]
    certificates: frozenset[str] = frozenset()
    lineage: str | None = None

    def __post_init__(self) -> None:
        if not self.boundary:
            raise InvalidMapError("a convex structure needs nonempty boundary")
        unknown = self.certificates - CERTIFICATES
        if unknown:
            raise InvalidMapError(f"unknown certificates: {sorted(unknown)}")


def chi_balance(c: ConvexStructure) -> tuple[int, int]:
    """Euler characteristics (χ(R+), χ(R−)) summed over the boundary."""
    plus = sum(s.chi_signed(+1) for s in c.boundary)
    minus = sum(s.chi_signed(-1) for s in c.boundary)
    return plus, minus


def structure_obstruction(c: ConvexStructure) -> GirouxObstruction | None:
    for s in c.boundary:
        ob = giroux_obstruction(s)
        if ob is not None:
            return ob
    return None


def is_terminal_ball(c: ConvexStructure) -> bool:
    """True iff the structure is a certified union of one-curve sphere balls.

    Passing the boundary test without the ball certificate is reported as a
    distinct error, not as False.
    """
    for s in c.boundary:
        if not s.is_sphere_with_one_curve():
            return False
    if "ball" not in c.certificates:
        raise MissingCertificateError(
            "boundary test passed but no ball certificate is held"
        )
    return True


def surface_key(s: MarkedSurface):
    """Canonical form of a marked surface: the map with curve directions."""
    labels = [(0,)] * len(s.map.twin)
    for cycle in s.gamma:
        for h in cycle:
            labels[h] = (1,)
            labels[s.map.twin[h]] = (-1,)
    return canonical_key(s.map, tuple(labels))


def structure_key(c: ConvexStructure):
    """Canonical form of the boundary, insensitive to component order."""
    return tuple(sorted(surface_key(s) for s in c.boundary))
