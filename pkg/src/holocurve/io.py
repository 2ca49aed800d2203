"""JSON encoding and decoding of the library's objects.

Complex numbers are ``[re, im]`` pairs whose parts are JSON numbers
(approx) or integer/fraction/decimal strings such as ``"1/3"`` (exact).
Matrices are ``[[a, b], [c, d]]`` or a flat list of four complex numbers.
Sphere points are complex numbers or the string ``"inf"``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any, Dict, List

from .curves import (
    AffineElement,
    AutoDescriptor,
    CurveDescriptor,
    DevelopingSystem,
    ModelGeometry,
    ModelId,
    ModuliCoordinate,
    ModuliDescription,
    build_developing_system,
)
from .lattices import Lattice, MultGroup
from .lifts import Representation
from .moebius import EVERY_POINT, Moebius, SpherePoint
from .numerics import ComplexScalar, cs
from .subgroups import SubgroupClass

SCHEMA_VERSION = "1"


class SchemaError(ValueError):
    """Input does not follow the documented JSON schema."""


def _require(obj: Dict, key: str, what: str = "object"):
    if not isinstance(obj, dict):
        raise SchemaError(f"expected a JSON {what}, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(f"missing field {key!r} in {what}")
    return obj[key]


# ----------------------------------------------------------------------
# decoding


def _real(x):
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise SchemaError(f"not a real number: {x!r}")
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise SchemaError(f"not an exact number string: {x!r}") from None
    return x


def decode_complex(x) -> ComplexScalar:
    if isinstance(x, list):
        if len(x) != 2:
            raise SchemaError(f"complex numbers are [re, im] pairs, got {x!r}")
        return cs(_real(x[0]), _real(x[1]))
    return cs(_real(x))


def decode_matrix(x) -> Moebius:
    if isinstance(x, list) and len(x) == 2 and all(isinstance(r, list) and len(r) == 2 for r in x):
        flat = [x[0][0], x[0][1], x[1][0], x[1][1]]
    elif isinstance(x, list) and len(x) == 4:
        flat = x
    else:
        raise SchemaError(f"matrix must be [[a, b], [c, d]] or four complex entries, got {x!r}")
    return Moebius.from_entries(*(decode_complex(e) for e in flat))


def decode_point(x) -> SpherePoint:
    if x == "inf":
        return SpherePoint(None)
    return SpherePoint(decode_complex(x))


def decode_lattice(x) -> Lattice:
    periods = _require(x, "periods", "lattice")
    if not isinstance(periods, list) or len(periods) != 2:
        raise SchemaError("a lattice needs exactly two periods")
    return Lattice.of(*(decode_complex(p) for p in periods))


def decode_group(x) -> MultGroup:
    gens = _require(x, "generators", "group")
    if not isinstance(gens, list):
        raise SchemaError("group generators must be a list")
    torsion = x.get("torsion")
    if torsion is not None and (not isinstance(torsion, int) or isinstance(torsion, bool)):
        raise SchemaError("torsion must be an integer")
    return MultGroup(tuple(decode_complex(g) for g in gens), torsion)


def decode_generators(x) -> List[Moebius]:
    gens = x.get("generators") if isinstance(x, dict) else x
    if not isinstance(gens, list):
        raise SchemaError("expected a list of matrices under 'generators'")
    return [decode_matrix(m) for m in gens]


def decode_model(x) -> ModelGeometry:
    if isinstance(x, str):
        return ModelGeometry(_model_id(x))
    mid = _model_id(_require(x, "id", "model"))
    n = x.get("n")
    lattice0 = decode_lattice(x["lattice0"]) if "lattice0" in x else None
    group = decode_group(x["group"]) if "group" in x else None
    return ModelGeometry(mid, n, lattice0, group)


def _model_id(s):
    try:
        return ModelId(s)
    except ValueError:
        raise SchemaError(f"unknown model id {s!r}") from None


def decode_curve(x) -> CurveDescriptor:
    genus = _require(x, "genus", "curve")
    if not isinstance(genus, int) or isinstance(genus, bool):
        raise SchemaError("genus must be an integer")
    lattice = decode_lattice(x["lattice"]) if "lattice" in x else None
    return CurveDescriptor(genus, lattice)


def decode_structure(x, **kw) -> DevelopingSystem:
    model = decode_model(_require(x, "model", "structure"))
    curve = decode_curve(_require(x, "curve", "structure"))
    params = x.get("params", {})
    if not isinstance(params, dict):
        raise SchemaError("params must be an object")
    args = {key: decode_complex(params[key]) for key in ("c", "k", "L") if key in params}
    holonomy = None
    if curve.genus >= 2 and model.model_id is ModelId.PROJECTIVE:
        holonomy = [decode_matrix(m) for m in _require(x, "holonomy", "structure")]
    return build_developing_system(model, curve, family=params.get("family"),
                                   holonomy=holonomy, **args, **kw)


def decode_representation(x, tol=None) -> Representation:
    images = [decode_matrix(m) for m in _require(x, "images", "representation")]
    genus = _require(x, "genus", "representation")
    if genus == 1:
        lattice = _require(x, "lattice", "representation")
        periods = [decode_complex(p) for p in _require(lattice, "periods", "lattice")]
        if len(images) != 2:
            raise SchemaError("an elliptic representation needs two images")
        return Representation.on_periods(periods, images, tol)
    return Representation(CurveDescriptor(genus), tuple(images))


# ----------------------------------------------------------------------
# encoding


def _part(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def encode_complex(z) -> list:
    z = cs(z)
    return [_part(z.re), _part(z.im)]


def encode_matrix(m: Moebius) -> list:
    return [[encode_complex(m.a), encode_complex(m.b)], [encode_complex(m.c), encode_complex(m.d)]]


def encode_point(p: SpherePoint):
    return "inf" if p.is_infinite else encode_complex(p.value)


def encode_points(pts):
    if pts is EVERY_POINT:
        return "every_point"
    return [encode_point(p) for p in pts]


def encode_lattice(lattice: Lattice) -> dict:
    return {"periods": [encode_complex(p) for p in lattice.periods]}


def encode_holonomy(h):
    if isinstance(h, Moebius):
        return encode_matrix(h)
    assert isinstance(h, AffineElement)
    return {"a": encode_complex(h.a), "b": encode_complex(h.b), "flip": h.flip}


def encode_model(model: ModelGeometry) -> dict:
    out: Dict[str, Any] = {"id": model.model_id.value, "group_name": model.group_name,
                           "stabilizer": model.stabilizer_name}
    if model.group is not None:
        out["group"] = {"generators": [encode_complex(g) for g in model.group.generators],
                        "torsion": model.group.torsion}
    if model.n is not None:
        out["n"] = model.n
    if model.lattice0 is not None:
        out["lattice0"] = encode_lattice(model.lattice0)
    return out


def encode_curve(curve: CurveDescriptor) -> dict:
    out: Dict[str, Any] = {"genus": curve.genus}
    if curve.lattice is not None:
        out["lattice"] = encode_lattice(curve.lattice)
    return out


def encode_structure(ds: DevelopingSystem) -> dict:
    params: Dict[str, Any] = {"family": ds.family.value if ds.family else None}
    for key in ("c", "k", "L"):
        value = getattr(ds, key)
        if value is not None:
            params[key] = encode_complex(value)
    return {"model": encode_model(ds.model), "curve": encode_curve(ds.curve),
            "params": params, "holonomy": [encode_holonomy(h) for h in ds.holonomy]}


def encode_subgroup(cls: SubgroupClass) -> dict:
    out: Dict[str, Any] = {"class": cls.name, "tag": cls.tag.value}
    if cls.n is not None:
        out["n"] = cls.n
    if cls.witness is not None:
        out["witness"] = encode_matrix(cls.witness)
    if cls.elements is not None:
        out["order"] = len(cls.elements)
        out["elements"] = [encode_matrix(m) for m in cls.elements]
    return out


def encode_moduli(desc: ModuliDescription) -> dict:
    return {"space": desc.space, "dimension": desc.dimension, "punctured": desc.punctured,
            "quotient": desc.quotient, "notes": list(desc.notes)}


def encode_coordinate(x: ModuliCoordinate) -> dict:
    extra = {k: (encode_complex(v) if isinstance(v, ComplexScalar) else v) for k, v in x.extra}
    return {"kind": x.kind, "value": None if x.value is None else encode_complex(x.value), **extra}


def encode_auto(a: AutoDescriptor) -> dict:
    return {"group": a.group, "homogeneous": a.homogeneous, "finite": a.finite,
            "rotation_order": a.rotation_order}


# ----------------------------------------------------------------------
# text emitter


def _emit(value, out: List[str]) -> None:
    if value is None or isinstance(value, (bool, str)):
        out.append(_json_atom(value))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            out.append('"inf"' if value > 0 else '"-inf"' if value < 0 else '"nan"')
        else:
            out.append(format(value, ".17g"))
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(", ")
            out.append(_json_atom(str(k)))
            out.append(": ")
            _emit(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def _json_atom(value) -> str:
    return json.dumps(value, ensure_ascii=False)


def dumps(value) -> str:
    """JSON text with floats at 17 significant digits."""
    out: List[str] = []
    _emit(value, out)
    return "".join(out)
