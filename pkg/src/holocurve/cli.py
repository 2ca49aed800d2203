"""Command-line front end: one verb per operation, JSON in and out.

Exit status is 0 on success, 1 for domain errors (reported as
``{"error": {"code", "message"}}``) and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import io
from .curves import (
    NONE_ADMITTED,
    DevFamily,
    StructureError,
    automorphism_group,
    classify_structures,
    is_conjugate,
    moduli_coordinate,
    schwarzian_fd,
    verify_equivariance,
)
from .lattices import (
    DEFAULT_EXP_BOUND,
    grains_enumerate,
    is_grain,
    is_sublattice,
    symmetry_order,
)
from .lifts import (
    DEFAULT_BRANCH_BOUND,
    EXCEEDS_CAP,
    RepClass,
    RepresentationError,
    classify_surface,
    finite_orbits,
    is_trivial_bundle,
    lift,
    lifted_automorphisms,
    orbit_structure,
    parallel_sections,
    rep_class,
)
from .moebius import act_complex
from .numerics import DEFAULT_EPS, Tolerance, cs
from .subgroups import DEFAULT_CAP, OutsideCatalogue, centralizer, normalizer, recognize

DEFAULT_SAMPLES = 64


@dataclass(frozen=True)
class CommandConfig:
    eps: float = DEFAULT_EPS
    cap: int = DEFAULT_CAP
    exp_bound: int = DEFAULT_EXP_BOUND
    branch_bound: int = DEFAULT_BRANCH_BOUND
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    format: str = "json"

    def __post_init__(self):
        Tolerance(self.eps)
        for name in ("cap", "exp_bound", "branch_bound", "samples"):
            if getattr(self, name) <= 0:
                raise io.SchemaError(f"{name.replace('_', '-')} must be positive")
        if self.format not in ("json", "text"):
            raise io.SchemaError("format must be json or text")

    def with_overrides(self, options: Dict[str, Any]) -> "CommandConfig":
        fields = {"tol": "eps", "cap": "cap", "exp_bound": "exp_bound",
                  "branch_bound": "branch_bound", "seed": "seed", "samples": "samples"}
        kw = {f: getattr(self, f) for f in fields.values()}
        kw["format"] = self.format
        for key, value in options.items():
            if key not in fields:
                raise io.SchemaError(f"unknown option {key!r}")
            kw[fields[key]] = value
        return CommandConfig(**kw)


# ----------------------------------------------------------------------
# handlers


def _gens(payload):
    return io.decode_generators(payload)


def _recognize(p, cfg):
    return io.encode_subgroup(recognize(_gens(p), cfg.cap, cfg.eps))


def _centralizer(p, cfg):
    return io.encode_subgroup(centralizer(_gens(p), cfg.cap, cfg.eps))


def _normalizer(p, cfg):
    return io.encode_subgroup(normalizer(_gens(p), cfg.cap, cfg.eps))


def _lattice_arg(p):
    return io.decode_lattice(p.get("lattice", p) if isinstance(p, dict) else p)


def _lattice_reduce(p, cfg):
    lat = _lattice_arg(p)
    return {**io.encode_lattice(lat), "tau": io.encode_complex(lat.tau)}


def _symmetry(p, cfg):
    return {"order": symmetry_order(_lattice_arg(p), cfg.eps)}


def _sublattice(p, cfg):
    sub = io.decode_lattice(io._require(p, "sub"))
    sup = io.decode_lattice(io._require(p, "sup"))
    return {"index": is_sublattice(sub, sup, cfg.eps)}


def _grain(p, cfg):
    c = io.decode_complex(io._require(p, "c"))
    lat = io.decode_lattice(io._require(p, "lattice"))
    group = io.decode_group(io._require(p, "group"))
    return {"is_grain": is_grain(c, lat, group, cfg.exp_bound, cfg.eps)}


def _grains(p, cfg):
    lat = io.decode_lattice(io._require(p, "lattice"))
    log_lat = io.decode_lattice(io._require(p, "log_lattice"))
    bound = io._require(p, "height_bound")
    found = grains_enumerate(lat, log_lat, bound, cfg.eps)
    return {"grains": [io.encode_complex(c) for c in found.grains]}


def _structure(p, cfg):
    return io.decode_structure(p, exp_bound=cfg.exp_bound, tol=cfg.eps)


def _build(p, cfg):
    return io.encode_structure(_structure(p, cfg))


def _verify(p, cfg):
    report = verify_equivariance(_structure(p, cfg), cfg.samples, cfg.seed, cfg.eps)
    return {"pass": report.passed, "max_residual": report.max_residual, "samples": report.samples}


def _classify(p, cfg):
    model = io.decode_model(io._require(p, "model"))
    curve = io.decode_curve(io._require(p, "curve"))
    desc = classify_structures(model, curve)
    if desc is NONE_ADMITTED:
        return {"result": "none_admitted"}
    return {"result": "moduli", **io.encode_moduli(desc)}


def _moduli(p, cfg):
    return io.encode_coordinate(moduli_coordinate(_structure(p, cfg), cfg.eps))


def _conjugate(p, cfg):
    a = _structure(io._require(p, "a"), cfg)
    b = _structure(io._require(p, "b"), cfg)
    return {"conjugate": is_conjugate(a, b, cfg.exp_bound, cfg.eps)}


def _aut(p, cfg):
    return io.encode_auto(automorphism_group(_structure(p, cfg), cfg.exp_bound, cfg.eps))


def _schwarzian(p, cfg):
    family = DevFamily(io._require(p, "family"))
    c = io.decode_complex(p.get("c", 1))
    z = io.decode_complex(io._require(p, "z"))
    step = p.get("step", 0.1)
    if family is DevFamily.EXPONENTIAL:
        exact = -(c * c) / 2
        f = lambda w: complex((c * cs(w)).exp())  # noqa: E731
    elif family is DevFamily.LINEAR:
        exact = cs(0)
        f = lambda w: complex(c) * w  # noqa: E731
    else:
        exact = cs(0)
        f = lambda w: w  # noqa: E731
    if "moebius" in p:
        m = io.decode_matrix(p["moebius"])
        inner = f
        f = lambda w: act_complex(m, inner(w))  # noqa: E731
    value = schwarzian_fd(f, z, step)
    return {"value": io.encode_complex(value), "exact": io.encode_complex(exact)}


def _rep(p, cfg):
    return io.decode_representation(p, cfg.eps)


def _rep_class(p, cfg):
    return {"class": rep_class(_rep(p, cfg), cfg.cap, cfg.eps).value}


def _bundle_trivial(p, cfg):
    rep = _rep(p, cfg)
    witness = is_trivial_bundle(rep, cfg.branch_bound, cfg.cap, cfg.eps)
    if witness is None:
        never = rep_class(rep, cfg.cap, cfg.eps) is RepClass.KLEIN_FOUR
        return {"trivial": False if never else None, "witness": None,
                "reason": "never trivial" if never else "no witness within bound"}
    return {"trivial": True, "witness": {"b": io.encode_complex(witness.b), "kind": witness.kind,
                                         "conjugator": io.encode_matrix(witness.conjugator)}}


def _sections(p, cfg):
    return {"sections": io.encode_points(parallel_sections(_rep(p, cfg), cfg.eps))}


def _orbits(p, cfg):
    if "structure" in p:
        lg = lift(_structure(p["structure"], cfg), _rep(io._require(p, "rep"), cfg), cfg.eps)
        report = orbit_structure(lg, cfg.cap, cfg.seed, tol=cfg.eps)
        return {"parallel_sections": io.encode_points(report.parallel_sections),
                "multisections": [{"orbit": io.encode_points(o), "size": s}
                                  for o, s in report.multisections],
                "open_orbit": report.open_orbit, "orbit_count": report.orbit_count,
                "summary": report.summary}
    rep = _rep(io._require(p, "rep"), cfg)
    orbit = finite_orbits(rep, io.decode_point(io._require(p, "point")), cfg.cap, cfg.eps)
    if orbit is EXCEEDS_CAP:
        return {"exceeds_cap": True}
    return {"exceeds_cap": False, "orbit": io.encode_points(orbit), "size": len(orbit)}


def _lifted(p, cfg):
    return lift(_structure(io._require(p, "structure"), cfg), _rep(io._require(p, "rep"), cfg), cfg.eps)


def _lift(p, cfg):
    lg = _lifted(p, cfg)
    return {"model_group": lg.model_group, "model_stabilizer": lg.model_stabilizer,
            "developing_map": lg.developing_map,
            "holonomy": [{"base": io.encode_holonomy(h), "fiber": io.encode_matrix(m)}
                         for h, m in lg.holonomy]}


def _lift_aut(p, cfg):
    actions = p.get("base_actions")
    if actions is not None:
        actions = [[[tuple(letter) for letter in word] for word in act] for act in actions]
    res = lifted_automorphisms(_lifted(p, cfg), cfg.cap, actions, cfg.eps)
    return {"group": res.group, "exact_sequence": res.exact_sequence,
            "centralizer": res.centralizer.name, "base": io.encode_auto(res.base),
            "components": [{"k": c.k, "h0": None if c.h0 is None else io.encode_matrix(c.h0)}
                           for c in res.components]}


def _classify_surface(p, cfg):
    kind = io._require(p, "kind")
    if kind == "ruled":
        res = classify_surface(kind, structure=_structure(io._require(p, "structure"), cfg),
                               rep=_rep(io._require(p, "rep"), cfg), tol=cfg.eps)
    else:
        res = classify_surface(kind, p.get("name"))
    out = {"kind": res.kind, "name": res.name, "model_group": res.model_group,
           "stabilizer": res.stabilizer, "flat": res.flat, "description": res.description}
    if res.moduli is not None:
        out["moduli"] = res.moduli
    return out


HANDLERS: Dict[str, Callable[[Any, CommandConfig], Dict]] = {
    "recognize": _recognize,
    "centralizer": _centralizer,
    "normalizer": _normalizer,
    "lattice-reduce": _lattice_reduce,
    "symmetry": _symmetry,
    "sublattice": _sublattice,
    "grain": _grain,
    "grains": _grains,
    "build": _build,
    "verify": _verify,
    "classify": _classify,
    "moduli": _moduli,
    "conjugate": _conjugate,
    "aut": _aut,
    "schwarzian": _schwarzian,
    "rep-class": _rep_class,
    "bundle-trivial": _bundle_trivial,
    "sections": _sections,
    "orbits": _orbits,
    "lift": _lift,
    "lift-aut": _lift_aut,
    "classify-surface": _classify_surface,
}

_DOMAIN_CODES = [
    (OutsideCatalogue, "outside_catalogue"),
    (StructureError, "invalid_structure"),
    (RepresentationError, "invalid_representation"),
    (ZeroDivisionError, "domain_error"),
    (ValueError, "domain_error"),
]


def _error(code: str, message: str) -> Dict:
    return {"schema": io.SCHEMA_VERSION, "error": {"code": code, "message": message}}


def execute(verb: str, payload: Any, cfg: CommandConfig):
    """Run one query; returns ``(exit_code, result_object)``."""
    handler = HANDLERS.get(verb)
    if handler is None:
        return 2, _error("unknown_verb", f"unknown verb {verb!r}")
    try:
        result = handler(payload, cfg)
    except io.SchemaError as exc:
        return 2, _error("schema", str(exc))
    except (KeyError, TypeError, AttributeError) as exc:
        return 2, _error("schema", f"malformed input: {exc}")
    except tuple(e for e, _ in _DOMAIN_CODES) as exc:
        code = next(c for e, c in _DOMAIN_CODES if isinstance(exc, e))
        return 1, _error(code, str(exc))
    return 0, {"schema": io.SCHEMA_VERSION, **result}


def _batch(payload: Any, cfg: CommandConfig, parallel: bool) -> Dict:
    if not isinstance(payload, list):
        raise io.SchemaError("batch input must be a JSON array")

    def one(entry):
        if not isinstance(entry, dict) or "verb" not in entry:
            return _error("schema", "batch entries need a 'verb' and an 'input'")
        try:
            local = cfg.with_overrides(entry.get("options", {}))
        except (io.SchemaError, TypeError, ValueError) as exc:
            return _error("schema", str(exc))
        return execute(entry["verb"], entry.get("input"), local)[1]

    if parallel and len(payload) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(one, payload))
    else:
        results = [one(e) for e in payload]
    return {"schema": io.SCHEMA_VERSION, "results": results}


# ----------------------------------------------------------------------
# argument parsing


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", default=None,
                        help="JSON input file ('-' for stdin)")
    common.add_argument("--tol", type=float, default=DEFAULT_EPS)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--exp-bound", type=int, default=DEFAULT_EXP_BOUND)
    common.add_argument("--branch-bound", type=int, default=DEFAULT_BRANCH_BOUND)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="holocurve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for verb in HANDLERS:
        sp = sub.add_parser(verb, parents=[common])
        if verb == "classify-surface":
            sp.add_argument("--kind", choices=("rational_homogeneous", "ruled"))
            sp.add_argument("--name", choices=("P2", "P1xP1"))
    sp = sub.add_parser("batch", parents=[common])
    sp.add_argument("--parallel", action="store_true")
    return parser


def _text(value, prefix: str = "") -> List[str]:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            lines.extend(_text(v, f"{prefix}{k}."))
        return lines
    return [f"{prefix.rstrip('.')}: {io.dumps(value)}"]


def _read_input(args) -> Any:
    if args.input is None:
        if args.verb == "classify-surface" and args.kind:
            return {"kind": args.kind, "name": args.name}
        raise io.SchemaError("no input: pass --in FILE (or '-' for stdin)")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise io.SchemaError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise io.SchemaError(f"input is not valid JSON: {exc}") from None


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = CommandConfig(args.tol, args.cap, args.exp_bound, args.branch_bound,
                            args.seed, args.samples, args.format)
        payload = _read_input(args)
        if args.verb == "batch":
            code, result = 0, _batch(payload, cfg, args.parallel)
        else:
            code, result = execute(args.verb, payload, cfg)
    except (io.SchemaError, ValueError) as exc:
        code, result = 2, _error("schema", str(exc))
    if args.format == "text":
        out.write("\n".join(_text(result)) + "\n")
    else:
        out.write(io.dumps(result) + "\n")
    return code


def main() -> None:
    sys.exit(run())
