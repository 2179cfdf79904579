"""Session API behind the explorer: one scenario, many undoable sessions.

The engine owns all mathematical state; clients fetch every displayed
number from here.  A session is a stack of structures (for undo) plus a
cursor into the scenario's steps, and all access to one session is
serialized by its lock.  Step indices and candidate indices match the
command line: only the pending step can be enumerated or applied, and
candidates come in enumeration order.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace
from typing import Any

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .combmap import region_euler_char
from .convex import ConvexStructure, MarkedSurface, chi_balance, giroux_obstruction
from .decomp import (
    DecompositionStep,
    describe_obstruction,
    execute_step,
    step_candidates,
)
from .divides import DividesOptions, SurfaceWithDivides
from .errors import EngineError, InvalidMapError
from .scenario import ScenarioFile, chords_of, print_scenario, sigma_payload


class ApplyRequest(BaseModel):
    step: int
    candidate_index: int = 0
    session: str = "default"


class UndoRequest(BaseModel):
    session: str = "default"


@dataclass
class _Session:
    structures: list[ConvexStructure]
    history: list[dict[str, Any]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def current(self) -> ConvexStructure:
        return self.structures[-1]

    @property
    def applied(self) -> int:
        return len(self.structures) - 1


def _marked(s: MarkedSurface) -> bool:
    return all(s.curves_on_component(comp) for comp in s.map.components)


def _surface_view(index: int, s: MarkedSurface) -> dict[str, Any]:
    """Region graph of one boundary surface: signed nodes, curves as edges."""
    m = s.map
    part = s.partition if _marked(s) else None
    comp_of = {h: ci for ci, comp in enumerate(m.components) for h in comp}
    region_comp = {}
    if part is not None:
        for r, faces in enumerate(part.faces):
            region_comp[r] = comp_of[m.faces[next(iter(faces))][0]]
    components = []
    for ci, comp in enumerate(m.components):
        curves = []
        for gi, cycle in enumerate(s.gamma):
            if cycle[0] not in comp:
                continue
            entry: dict[str, Any] = {"id": gi, "length": len(cycle)}
            if part is not None:
                entry["plus_region"] = part.region_of[m.face_of[cycle[0]]]
                entry["minus_region"] = part.region_of[m.face_of[m.twin[cycle[0]]]]
            curves.append(entry)
        regions = [
            {
                "id": r,
                "sign": part.signs[r],
                "faces": len(part.faces[r]),
                "chi": region_euler_char(m, set(part.faces[r])),
            }
            for r in sorted(region_comp)
            if part is not None and region_comp[r] == ci
        ]
        components.append(
            {
                "index": ci,
                "genus": m.component_genus(comp),
                "sphere": m.component_genus(comp) == 0,
                "curve_count": len(s.curves_on_component(comp)),
                "regions": regions,
                "curves": curves,
            }
        )
    return {"index": index, "components": components}


def _giroux_view(c: ConvexStructure) -> dict[str, Any]:
    if not all(_marked(s) for s in c.boundary):
        return {"status": "skipped"}
    for si, s in enumerate(c.boundary):
        ob = giroux_obstruction(s)
        if ob is not None:
            return {
                "status": "obstructed",
                "surface": si,
                "kind": ob.kind,
                "component": ob.component,
                "curve": None if ob.curve is None else list(ob.curve),
                "count": ob.count,
                "message": describe_obstruction(ob),
            }
    return {"status": "clear"}


def _state_view(
    name: str, sess: _Session, steps: tuple[DecompositionStep, ...]
) -> dict[str, Any]:
    c = sess.current
    pending = sess.applied if sess.applied < len(steps) else None
    if all(_marked(s) for s in c.boundary):
        plus, minus = chi_balance(c)
        chi = {"plus": plus, "minus": minus, "balanced": plus == minus}
    else:
        chi = None
    return {
        "session": name,
        "name": c.name,
        "steps_total": len(steps),
        "steps_applied": sess.applied,
        "pending_step": pending,
        "terminal": all(s.is_sphere_with_one_curve() for s in c.boundary),
        "chi": chi,
        "giroux": _giroux_view(c),
        "surfaces": [_surface_view(i, s) for i, s in enumerate(c.boundary)],
        "history": list(sess.history),
        "can_undo": sess.applied > 0,
    }


def _resolve_candidates(
    c: ConvexStructure, step: DecompositionStep, opts: DividesOptions
) -> tuple[SurfaceWithDivides, ...]:
    if step.sigma is not None:
        return (step.sigma,)
    return step_candidates(c, step, opts)


def build_app(scenario: ScenarioFile) -> FastAPI:
    if not isinstance(scenario.manifold, ConvexStructure):
        raise InvalidMapError(
            "serving needs a convex scenario; run convert --to-convex first"
        )
    steps = scenario.steps
    options = scenario.options
    app = FastAPI(title="convexsplit session")
    # The explorer page is served separately (any static file server), so
    # its requests arrive cross-origin.  The API is a local tool without
    # credentials; open it up rather than pinning the explorer's port.
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"])
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()

    def session_of(name: str) -> _Session:
        with registry_lock:
            if name not in sessions:
                sessions[name] = _Session([scenario.manifold])
            return sessions[name]

    @app.get("/state")
    def state(session: str = "default") -> dict[str, Any]:
        sess = session_of(session)
        with sess.lock:
            return _state_view(session, sess, steps)

    @app.get("/candidates")
    def candidates(step: int, session: str = "default") -> dict[str, Any]:
        sess = session_of(session)
        with sess.lock:
            pending = sess.applied if sess.applied < len(steps) else None
            if pending is None:
                raise HTTPException(400, detail="no steps remain")
            if step != pending:
                raise HTTPException(
                    400,
                    detail=f"step {step} is not pending (pending step is {pending})",
                )
            try:
                found = _resolve_candidates(sess.current, steps[step], options)
            except EngineError as e:
                raise HTTPException(400, detail=str(e)) from e
            return {
                "step": step,
                "count": len(found),
                "candidates": [
                    {"index": i, "chords": chords_of(sg), "sigma": sigma_payload(sg)}
                    for i, sg in enumerate(found)
                ],
            }

    @app.post("/apply")
    def apply(req: ApplyRequest) -> dict[str, Any]:
        sess = session_of(req.session)
        with sess.lock:

            def refuse(reason: str) -> dict[str, Any]:
                return {
                    "ok": False,
                    "reason": reason,
                    "state": _state_view(req.session, sess, steps),
                }

            pending = sess.applied if sess.applied < len(steps) else None
            if pending is None:
                return refuse("no steps remain")
            if req.step != pending:
                return refuse(
                    f"step {req.step} is not pending (pending step is {pending})"
                )
            step = steps[pending]
            try:
                found = _resolve_candidates(sess.current, step, options)
            except EngineError as e:
                return refuse(str(e))
            if not 0 <= req.candidate_index < len(found):
                return refuse(
                    f"no candidate {req.candidate_index};"
                    f" step {pending} admits {len(found)}"
                )
            chosen = replace(step, sigma=found[req.candidate_index])
            done, reason = execute_step(sess.current, chosen)
            if done is None:
                return refuse(reason or "split failed")
            sess.structures.append(done.result)
            sess.history.append(
                {
                    "step": pending,
                    "component": step.component,
                    "kinds": list(step.kinds),
                    "candidate": req.candidate_index,
                }
            )
            return {
                "ok": True,
                "reason": None,
                "state": _state_view(req.session, sess, steps),
            }

    @app.post("/undo")
    def undo(req: UndoRequest) -> dict[str, Any]:
        sess = session_of(req.session)
        with sess.lock:
            if sess.applied == 0:
                return {
                    "ok": False,
                    "reason": "nothing to undo",
                    "state": _state_view(req.session, sess, steps),
                }
            sess.structures.pop()
            sess.history.pop()
            return {
                "ok": True,
                "reason": None,
                "state": _state_view(req.session, sess, steps),
            }

    @app.get("/scenario")
    def scenario_text(session: str = "default") -> Response:
        sess = session_of(session)
        with sess.lock:
            out = ScenarioFile(
                scenario.version, sess.current, steps[sess.applied :], options
            )
            text = print_scenario(out)
        return Response(content=text, media_type="application/json")

    return app
