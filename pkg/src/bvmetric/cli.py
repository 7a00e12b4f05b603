"""Command-line front end.

Exit status is part of the contract: 0 when the claim is upheld or the
computation simply completed, 1 when a claim is refuted (the report holds the
witness), 2 for usage, input or budget errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import axioms, maps, picard
from .core import BMetricError, format_rational, parse_rational
from .gallery import ADJUDICATION_SIZES, FAMILIES, GalleryInstance
from .jsonio import (
    SchemaError,
    bound_to_dict,
    boundedness_to_dict,
    cauchy_to_dict,
    certification_to_dict,
    condition_to_dict,
    contractivity_to_dict,
    diagnostics_csv,
    diagnostics_to_dict,
    dumps,
    parse_input,
    parse_map,
    space_to_dict,
    trace_to_dict,
)

OK, REFUTED, USAGE = 0, 1, 2

COMMANDS = (
    "verify",
    "min-s",
    "contractive",
    "condition-a",
    "condition-b",
    "iterate",
    "orbit-bound",
    "adjudicate",
)

DEFAULT_TOLERANCE = Fraction(1, 10**6)


class UsageError(BMetricError):
    pass


@dataclass
class RunConfig:
    command: str
    gallery: Optional[str] = None
    n: Optional[int] = None
    seed: Optional[int] = None
    space_path: Optional[str] = None
    map_path: Optional[str] = None
    v: Optional[int] = None
    s: Optional[Fraction] = None
    x0: Optional[str] = None
    horizon: int = 32
    max_steps: Optional[int] = None
    tolerance: Fraction = DEFAULT_TOLERANCE
    epsilon: list = field(default_factory=list)
    budget: int = axioms.DEFAULT_BUDGET
    max_bound: Optional[Fraction] = None
    output: Optional[str] = None
    csv: Optional[str] = None
    format: str = "text"

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if (self.gallery is None) == (self.space_path is None):
            raise UsageError("give exactly one of --gallery or --space")
        if self.command == "adjudicate" and self.gallery is None:
            raise UsageError("adjudicate runs on gallery instances only")
        if self.budget <= 0:
            raise UsageError("--budget must be positive")
        if self.horizon < 1:
            raise UsageError("--horizon must be positive")


@dataclass
class Loaded:
    space: object
    tmap: object
    instance: Optional[GalleryInstance]
    source: dict


def _load(cfg: RunConfig) -> Loaded:
    if cfg.gallery is not None:
        doc = {"gallery": cfg.gallery}
        if cfg.n is not None:
            doc["n"] = cfg.n
        if cfg.seed is not None:
            doc["seed"] = cfg.seed
        if cfg.v is not None and cfg.gallery == "random_space":
            doc["v"] = cfg.v
        space, tmap, inst = parse_input(doc)
        return Loaded(space, tmap, inst, inst.spec())
    try:
        text = Path(cfg.space_path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.space_path}: {exc.strerror}") from None
    space, tmap, _ = parse_input(text)
    if cfg.map_path is not None:
        try:
            tmap = parse_map(Path(cfg.map_path).read_text(), space)
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.map_path}: {exc.strerror}") from None
    return Loaded(space, tmap, None, {"file": cfg.space_path})


def _need_map(ld: Loaded):
    if ld.tmap is None:
        raise UsageError("this command needs a self-map (gallery family with a map, or --map)")
    return ld.tmap


def _point(ld: Loaded, label: Optional[str]) -> int:
    if label is None:
        raise UsageError("--x0 is required")
    try:
        return ld.space.index(label)
    except KeyError as exc:
        raise UsageError(str(exc).strip("\"")) from None


def _class_params(cfg: RunConfig, ld: Loaded):
    claim = ld.instance.claim if ld.instance is not None else None
    v = cfg.v if cfg.v is not None else (claim.v if claim else None)
    s = cfg.s if cfg.s is not None else (claim.s if claim else None)
    return v, s


def _grid(cfg: RunConfig):
    return list(cfg.epsilon) or None


def _run_verify(cfg, ld):
    v, s = _class_params(cfg, ld)
    if v is None or s is None:
        raise UsageError("--v and --s are required for a space without a claimed class")
    res = axioms.verify_polygon(ld.space, v, s, budget=cfg.budget)
    return (REFUTED if res.verdict == axioms.REFUTED else OK), certification_to_dict(ld.space, res)


def _run_min_s(cfg, ld):
    v, _ = _class_params(cfg, ld)
    if v is None:
        raise UsageError("--v is required")
    best = axioms.max_ratio(ld.space, v, budget=cfg.budget)
    value = max(Fraction(1), best.ratio)
    rep = {"v": v, "min_s": format_rational(value), "points": ld.space.n, "maximizer": None}
    if best.endpoints is not None:
        x, y = best.endpoints
        rep["maximizer"] = {
            "endpoints": [ld.space.labels[x], ld.space.labels[y]],
            "chain": [ld.space.labels[u] for u in best.chain],
            "ratio": format_rational(best.ratio),
        }
    return OK, rep


def _run_contractive(cfg, ld):
    rep = maps.check_contractive(ld.space, _need_map(ld))
    return (OK if rep.holds else REFUTED), contractivity_to_dict(ld.space, rep)


def _run_condition_a(cfg, ld):
    rep = maps.check_condition_A(ld.space, _need_map(ld), _grid(cfg))
    return (OK if rep.holds else REFUTED), condition_to_dict(ld.space, rep)


def _run_condition_b(cfg, ld):
    if cfg.horizon < 2:
        raise UsageError("--horizon must be at least 2 for condition-b")
    rep = maps.check_condition_B(ld.space, _need_map(ld), _point(ld, cfg.x0), _grid(cfg), cfg.horizon)
    return (OK if rep.holds else REFUTED), condition_to_dict(ld.space, rep)


def _iterate_one(cfg, ld, x0: int) -> dict:
    tmap = _need_map(ld)
    steps = cfg.max_steps or ld.space.n + 1
    trace = picard.picard_iterate(ld.space, tmap, x0, steps)
    diag = picard.orbit_diagnostics(ld.space, trace)
    out = {"trace": trace_to_dict(ld.space, trace), "diagnostics": diagnostics_to_dict(diag)}
    z = trace.fixed_point
    if z is not None:
        conv, first = picard.convergence_check(ld.space, trace, z, cfg.tolerance)
        out["converged"] = conv
        out["first_index"] = first
    else:
        out["converged"] = False
        out["first_index"] = None
    if trace.cycle is not None:
        out["cauchy"] = cauchy_to_dict(
            picard.cauchy_check(ld.space, trace, cfg.tolerance, trace.cycle[0], max(1, trace.cycle[1]))
        )
    out["boundedness"] = boundedness_to_dict(picard.boundedness_check(ld.space, trace))
    if cfg.csv:
        Path(cfg.csv).write_text(diagnostics_csv(ld.space, trace, diag))
    return out


def _run_iterate(cfg, ld):
    return OK, _iterate_one(cfg, ld, _point(ld, cfg.x0))


def _run_orbit_bound(cfg, ld):
    v, _ = _class_params(cfg, ld)
    if v is None:
        raise UsageError("--v is required")
    rep = maps.orbit_bound(ld.space, _need_map(ld), _point(ld, cfg.x0), v, cfg.horizon)
    out = bound_to_dict(ld.space, rep)
    status = OK
    if cfg.max_bound is not None:
        out["claimed_bound"] = format_rational(cfg.max_bound)
        out["within_claim"] = rep.bound <= cfg.max_bound
        status = OK if out["within_claim"] else REFUTED
    return status, out


def adjudicate(inst: GalleryInstance, *, budget=None, tolerance=DEFAULT_TOLERANCE, horizon=32) -> dict:
    """Every applicable check on one gallery instance, in one report."""
    space, tmap = inst.space, inst.map
    rep = {"instance": inst.spec(), "points": space.n, "classification": inst.classification,
           "notes": list(inst.notes), "errata": []}
    if inst.claim is not None:
        res = axioms.verify_polygon(space, inst.claim.v, inst.claim.s, budget=budget)
        rep["claimed_class"] = {"v": inst.claim.v, "s": format_rational(inst.claim.s)}
        rep["certification"] = certification_to_dict(space, res)
        rep["min_s"] = format_rational(axioms.min_s(space, inst.claim.v, budget=budget))
        if res.verdict == axioms.REFUTED:
            rep["errata"].append("claimed class refuted")
    if tmap is None:
        return rep
    contr = maps.check_contractive(space, tmap)
    rep["contractive"] = contractivity_to_dict(space, contr)
    if inst.claims_contractive and not contr.holds:
        rep["errata"].append("claimed contractivity refuted")
    rep["fixed_points"] = [space.labels[i] for i in maps.find_fixed_points(space, tmap)]
    rep["condition_A"] = condition_to_dict(space, maps.check_condition_A(space, tmap))

    cfg = RunConfig("iterate", tolerance=tolerance)
    ld = Loaded(space, tmap, inst, inst.spec())
    v = inst.claim.v if inst.claim is not None else 1
    orbits = {}
    for x0 in tmap.domain:
        entry = _iterate_one(cfg, ld, x0)
        try:
            cb = maps.check_condition_B(space, tmap, x0, None, horizon)
            entry["condition_B"] = condition_to_dict(space, cb)
        except maps.OrbitTooShortError as exc:
            entry["condition_B"] = {"skipped": str(exc)}
        entry["orbit_bound"] = bound_to_dict(space, maps.orbit_bound(space, tmap, x0, v, horizon))
        orbits[space.labels[x0]] = entry
    rep["orbits"] = orbits
    return rep


def _run_adjudicate(cfg, ld):
    rep = adjudicate(ld.instance, budget=cfg.budget, tolerance=cfg.tolerance, horizon=max(2, cfg.horizon))
    return (REFUTED if rep["errata"] else OK), rep


_HANDLERS = {
    "verify": _run_verify,
    "min-s": _run_min_s,
    "contractive": _run_contractive,
    "condition-a": _run_condition_a,
    "condition-b": _run_condition_b,
    "iterate": _run_iterate,
    "orbit-bound": _run_orbit_bound,
    "adjudicate": _run_adjudicate,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns (exit status, JSON-ready report)."""
    try:
        cfg.validate()
        ld = _load(cfg)
        status, body = _HANDLERS[cfg.command](cfg, ld)
    except axioms.BudgetExceededError as exc:
        return USAGE, {"command": cfg.command, "error": str(exc), "required_budget": exc.required}
    except SchemaError as exc:
        return USAGE, {"command": cfg.command, "error": str(exc), "location": exc.pointer}
    except (BMetricError, ValueError) as exc:
        return USAGE, {"command": cfg.command, "error": str(exc)}
    report = {
        "command": cfg.command,
        "status": status,
        "source": ld.source,
        "truncation_size": ld.instance.size if ld.instance is not None else ld.space.n,
        "tuple_budget": cfg.budget,
        "result": body,
    }
    return status, report


def _color() -> bool:
    return os.environ.get("BVMETRIC_COLOR", "").lower() in ("1", "true", "yes") and sys.stdout.isatty()


def render_text(report: dict) -> str:
    lines = []
    if "error" in report:
        return f"error ({report['command']}): {report['error']}\n"
    status = report["status"]
    tag = {OK: "OK", REFUTED: "REFUTED"}[status]
    if _color():
        tag = ("\033[32m" if status == OK else "\033[31m") + tag + "\033[0m"
    lines.append(f"{report['command']}: {tag}")
    lines.append(f"  source: {json.dumps(report['source'])}")
    lines.append(f"  truncation size: {report['truncation_size']}  tuple budget: {report['tuple_budget']}")
    body = json.dumps(report["result"], indent=2)
    lines.extend("  " + ln for ln in body.splitlines())
    return "\n".join(lines) + "\n"


def _rational_arg(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bvmetric",
        description="Certify b_v(s)-metric axioms and analyze self-maps on finite spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_argument_group("input")
        src.add_argument("--gallery", choices=sorted(FAMILIES))
        src.add_argument("--n", type=int, help=f"truncation size (defaults: {ADJUDICATION_SIZES})")
        src.add_argument("--seed", type=int, help="seed for random_space")
        src.add_argument("--space", dest="space_path", help="space JSON document")
        src.add_argument("--map", dest="map_path", help="map JSON document")
        p.add_argument("--v", type=int)
        p.add_argument("--s", type=_rational_arg)
        p.add_argument("--x0", help="starting point label")
        p.add_argument("--horizon", type=int, default=32)
        p.add_argument("--max-steps", type=int)
        p.add_argument("--tolerance", type=_rational_arg, default=DEFAULT_TOLERANCE)
        p.add_argument("--epsilon", type=_rational_arg, action="append", default=[],
                       help="epsilon grid point (repeatable); default grid from realized distances")
        p.add_argument("--budget", type=int, default=axioms.DEFAULT_BUDGET,
                       help="refuse instances with n^(v+2) above this")
        p.add_argument("--max-bound", type=_rational_arg, help="claimed orbit bound M (orbit-bound)")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--csv", help="iterate: write orbit diagnostics CSV here")
        p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    status, report = run(cfg)
    text = dumps(report) if cfg.format == "json" else render_text(report)
    if cfg.output and status != USAGE:
        Path(cfg.output).write_text(text)
    else:
        stream = sys.stderr if status == USAGE and cfg.format == "text" else sys.stdout
        stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
