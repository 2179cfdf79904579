"""Command line front end for scenario files.

Exit codes: 0 success or certificate found, 1 invalid input or a failed
split, 2 search exhausted.  All machine output is canonical: fixed key
order and stable list orderings, so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .convex import ConvexStructure, chi_balance, structure_obstruction
from .decomp import (
    describe_obstruction,
    execute_step,
    report,
    search,
    step_candidates,
)
from .errors import EngineError, InvalidMapError
from .scenario import (
    ScenarioFile,
    chords_of,
    parse_scenario,
    print_scenario,
)
from .sutured import SuturedManifold, from_convex, thurston_norm, to_convex


def _load(path: str) -> ScenarioFile:
    return parse_scenario(Path(path).read_text())


def _require_convex(sc: ScenarioFile) -> ConvexStructure:
    if not isinstance(sc.manifold, ConvexStructure):
        raise InvalidMapError(
            "this command needs a convex scenario; run convert --to-convex first"
        )
    return sc.manifold


def _marked_everywhere(c: ConvexStructure) -> bool:
    return all(
        s.curves_on_component(comp)
        for s in c.boundary
        for comp in s.map.components
    )


def _resolve_sigma(sc: ScenarioFile, k: int, candidate: int | None):
    c = _require_convex(sc)
    if not 0 <= k < len(sc.steps):
        raise InvalidMapError(f"no step {k}")
    step = sc.steps[k]
    if step.sigma is not None:
        if candidate not in (None, 0):
            raise InvalidMapError(f"step {k} carries a fixed configuration")
        return c, step
    candidates = step_candidates(c, step, sc.options)
    if candidate is None:
        if len(candidates) != 1:
            raise InvalidMapError(
                f"step {k} admits {len(candidates)} configurations; pass --candidate"
            )
        candidate = 0
    if not 0 <= candidate < len(candidates):
        raise InvalidMapError(
            f"no candidate {candidate}; step {k} admits {len(candidates)}"
        )
    return c, replace(step, sigma=candidates[candidate])


def _cmd_validate(args: argparse.Namespace) -> int:
    sc = _load(args.file)
    lines = [f"version: {sc.version}"]
    if isinstance(sc.manifold, ConvexStructure):
        c = sc.manifold
        lines.append(f'manifold: convex "{c.name}"')
        for i, s in enumerate(c.boundary):
            lines.append(
                f"boundary {i}: {len(s.map.components)} component(s), "
                f"{len(s.gamma)} curve(s)"
            )
        if _marked_everywhere(c):
            ob = structure_obstruction(c)
            lines.append(
                "giroux: clear"
                if ob is None
                else f"giroux: {describe_obstruction(ob)}"
            )
            plus, minus = chi_balance(c)
            lines.append(f"chi: ({plus}, {minus})")
        else:
            lines.append("giroux: skipped (unmarked boundary)")
    else:
        m = sc.manifold
        lines.append(f'manifold: sutured "{m.name}"')
        lines.append(
            f"boundary: {len(m.map.components)} component(s), "
            f"{len(m.sutures)} suture(s), toral {len(m.toral)}, "
            f"bare {len(m.unsutured_signs)}"
        )
    for i, step in enumerate(sc.steps):
        kinds = ",".join(step.kinds)
        lines.append(
            f"step {i}: component {step.component}, kinds {kinds}, "
            f"{len(step.walks)} walk(s), "
            f"sigma {'fixed' if step.sigma is not None else 'enumerated'}"
        )
    lines.append("scenario: valid")
    print("\n".join(lines))
    return 0


def _cmd_split(args: argparse.Namespace) -> int:
    sc = _load(args.file)
    c, step = _resolve_sigma(sc, args.step, args.candidate)
    done, reason = execute_step(c, step)
    if done is None:
        print(f"error: {reason}", file=sys.stderr)
        return 1
    out = ScenarioFile(
        sc.version, done.result, sc.steps[args.step + 1 :], sc.options
    )
    sys.stdout.write(print_scenario(out))
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    sc = _load(args.file)
    c = _require_convex(sc)
    if not 0 <= args.surface < len(sc.steps):
        raise InvalidMapError(f"no step {args.surface}")
    step = sc.steps[args.surface]
    if step.sigma is not None:
        candidates = (step.sigma,)
    else:
        candidates = step_candidates(c, step, sc.options)
    print(f"count: {len(candidates)}")
    for i, sigma in enumerate(candidates):
        view = chords_of(sigma)
        arcs = " ".join(
            f"({a[0][0]}:{a[0][1]}>{a[1][0]}:{a[1][1]})" for a in view["arcs"]
        )
        print(f"candidate {i}: arcs {arcs}; closed {view['closed']}")
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    sc = _load(args.file)
    c = _require_convex(sc)
    result = search(c, sc.steps, sc.options)
    print(report(result))
    return 0 if result.found else 2


def _cmd_convert(args: argparse.Namespace) -> int:
    sc = _load(args.file)
    if args.to_convex:
        if isinstance(sc.manifold, ConvexStructure):
            raise InvalidMapError("scenario is already convex")
        out = ScenarioFile(sc.version, to_convex(sc.manifold), (), sc.options)
    else:
        c = _require_convex(sc)
        out = ScenarioFile(sc.version, from_convex(c), (), sc.options)
    sys.stdout.write(print_scenario(out))
    return 0


def _cmd_norm(args: argparse.Namespace) -> int:
    sc = _load(args.file)
    if isinstance(sc.manifold, ConvexStructure):
        total = sum(thurston_norm(s.map) for s in sc.manifold.boundary)
    else:
        total = thurston_norm(sc.manifold.map)
    print(total)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .serve import build_app

    app = build_app(_load(args.file))
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="convexsplit",
        description="Validate, split, search, and serve scenario files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check structure and step validity")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("split", help="apply one cutting step")
    p.add_argument("file")
    p.add_argument("--step", type=int, default=0)
    p.add_argument("--candidate", type=int, default=None)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser(
        "enumerate-divides", help="list dividing configurations for a step"
    )
    p.add_argument("file")
    p.add_argument("--surface", type=int, default=0)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("search", help="search for a decomposition certificate")
    p.add_argument("file")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("convert", help="translate between boundary presentations")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--to-convex", action="store_true")
    group.add_argument("--to-sutured", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("norm", help="Thurston norm of the boundary surfaces")
    p.add_argument("file")
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("serve", help="serve the session API for the explorer")
    p.add_argument("file")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EngineError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
