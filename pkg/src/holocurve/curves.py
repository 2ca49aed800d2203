"""Locally homogeneous structures on compact curves.

The homogeneous models ``G/H`` of complex dimension one, the curves that
carry structures modelled on them, explicit developing maps with their
holonomy, and the invariants used to tell structures apart.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .lattices import (
    DEFAULT_EXP_BOUND,
    Lattice,
    MultGroup,
    is_grain,
    is_sublattice,
    member_mult,
    symmetry_order,
)
from .moebius import (
    IDENTITY,
    Moebius,
    act_complex,
    chordal_complex,
    commutator,
    compose,
    psl_distance,
)
from .numerics import ONE, ZERO, ComplexScalar, TolLike, approx_eq, as_tol, cs


class StructureError(ValueError):
    """Parameters do not describe a structure of the requested kind."""


class ModelId(str, Enum):
    TRANSLATIONS = "translations"
    DISCRETE_AFFINE = "discrete_affine"
    AFFINE = "affine"
    TORUS_TRANSLATIONS = "torus_translations"
    ZN_TORUS = "zn_torus"
    CSTAR = "cstar"
    Z2_CSTAR = "z2_cstar"
    PROJECTIVE = "projective"


@dataclass(frozen=True)
class ModelRow:
    space: str
    group: str
    stabilizer: str


MODEL_TABLE: Dict[ModelId, ModelRow] = {
    ModelId.TRANSLATIONS: ModelRow("ℂ", "ℂ", "0"),
    ModelId.DISCRETE_AFFINE: ModelRow("ℂ", "A ⋉ ℂ", "A"),
    ModelId.AFFINE: ModelRow("ℂ", "ℂ× ⋉ ℂ", "ℂ×"),
    ModelId.TORUS_TRANSLATIONS: ModelRow("ℂ/Λ₀", "ℂ/Λ₀", "0"),
    ModelId.ZN_TORUS: ModelRow("ℂ/Λ₀", "ℤ_n ⋉ ℂ/Λ₀", "ℤ_n"),
    ModelId.CSTAR: ModelRow("ℂ×", "ℂ×", "1"),
    ModelId.Z2_CSTAR: ModelRow("ℂ×", "ℤ_2 ⋉ ℂ×", "ℤ_2"),
    ModelId.PROJECTIVE: ModelRow("ℙ¹", "PSL(2,ℂ)", "Borel [[a, b], [0, 1/a]]"),
}

_TORUS_MODELS = (ModelId.TORUS_TRANSLATIONS, ModelId.ZN_TORUS)


@dataclass(frozen=True)
class ModelGeometry:
    model_id: ModelId
    n: Optional[int] = None
    lattice0: Optional[Lattice] = None
    group: Optional[MultGroup] = None

    def __post_init__(self):
        mid = ModelId(self.model_id)
        object.__setattr__(self, "model_id", mid)
        if mid in _TORUS_MODELS and self.lattice0 is None:
            raise StructureError(f"{mid.value} needs the model lattice")
        if mid is ModelId.ZN_TORUS:
            if self.n not in (2, 3, 4, 6):
                raise StructureError("n must be one of 2, 3, 4, 6")
            if symmetry_order(self.lattice0) % self.n:
                raise StructureError(
                    f"model lattice is not invariant under ℤ_{self.n} "
                    f"(symmetry order {symmetry_order(self.lattice0)})")
        if mid is ModelId.DISCRETE_AFFINE and self.group is None:
            raise StructureError("discrete_affine needs the group A")

    @property
    def row(self) -> ModelRow:
        return MODEL_TABLE[self.model_id]

    @property
    def group_name(self) -> str:
        if self.model_id is ModelId.ZN_TORUS:
            return f"ℤ_{self.n} ⋉ ℂ/Λ₀"
        return self.row.group

    @property
    def stabilizer_name(self) -> str:
        if self.model_id is ModelId.ZN_TORUS:
            return f"ℤ_{self.n}"
        return self.row.stabilizer


@dataclass(frozen=True)
class CurveDescriptor:
    genus: int
    lattice: Optional[Lattice] = None

    def __post_init__(self):
        if self.genus < 0:
            raise StructureError("genus must be non-negative")
        if self.genus == 1 and self.lattice is None:
            raise StructureError("an elliptic curve needs its lattice")

    @classmethod
    def elliptic(cls, p1, p2) -> "CurveDescriptor":
        return cls(1, Lattice.of(p1, p2))

    @property
    def generator_count(self) -> int:
        return 2 * self.genus

    def same_curve(self, other: "CurveDescriptor", tol: TolLike = None) -> bool:
        if self.genus != other.genus:
            return False
        if self.genus != 1:
            return True
        return self.lattice.equals(other.lattice, tol)


class DevFamily(str, Enum):
    LINEAR = "linear"
    AFFINE_LINEAR = "affine_linear"
    EXPONENTIAL = "exponential"
    TORUS_COVER = "torus_cover"
    IDENTITY_P1 = "identity_p1"


@dataclass(frozen=True)
class AffineElement:
    """``z -> a z + b``, or ``z -> a / z`` when ``flip`` (the ℤ_2 ⋉ ℂ× model)."""

    a: ComplexScalar
    b: ComplexScalar = ZERO
    flip: bool = False

    def apply(self, w: complex) -> complex:
        a, b = complex(self.a), complex(self.b)
        return a / w if self.flip else a * w + b

    def scaled(self, factor) -> "AffineElement":
        """Post-compose with ``w -> factor * w``."""
        f = cs(factor)
        return AffineElement(self.a * f, self.b * f, self.flip)


HolonomyValue = Union[AffineElement, Moebius]


@dataclass(frozen=True, eq=False)
class DevelopingSystem:
    model: ModelGeometry
    curve: CurveDescriptor
    family: Optional[DevFamily]
    holonomy: Tuple[HolonomyValue, ...]
    c: Optional[ComplexScalar] = None
    k: Optional[ComplexScalar] = None
    L: Optional[ComplexScalar] = None

    @property
    def model_id(self) -> ModelId:
        return self.model.model_id

    @property
    def periods(self) -> Tuple[ComplexScalar, ...]:
        return self.curve.lattice.periods if self.curve.genus == 1 else ()

    def develop(self, z: complex) -> complex:
        """Developing map in the model coordinate (``inf`` never occurs for these families)."""
        fam = self.family
        if fam is DevFamily.LINEAR:
            return complex(self.c) * z
        if fam in (DevFamily.AFFINE_LINEAR, DevFamily.IDENTITY_P1):
            return z
        if fam is DevFamily.TORUS_COVER:
            return complex(self.L) * z
        if fam is DevFamily.EXPONENTIAL:
            k = complex(self.k) if self.k is not None else 1.0
            return k * cmath.exp(complex(self.c) * z)
        raise StructureError("this structure has no explicit developing map")

    def with_holonomy(self, holonomy: Sequence[HolonomyValue]) -> "DevelopingSystem":
        return DevelopingSystem(self.model, self.curve, self.family, tuple(holonomy),
                                self.c, self.k, self.L)


# ----------------------------------------------------------------------
# construction


def _nonzero(x, what: str) -> ComplexScalar:
    if x is None:
        raise StructureError(f"{what} is required")
    x = cs(x)
    if x.is_zero_exactly() or abs(x) == 0.0:
        raise StructureError(f"{what} must be nonzero")
    return x


def _default_family(model: ModelGeometry, curve: CurveDescriptor, c) -> DevFamily:
    mid = model.model_id
    if mid is ModelId.PROJECTIVE:
        if curve.genus == 0:
            return DevFamily.IDENTITY_P1
        if c is None or cs(c).is_zero_exactly():
            return DevFamily.AFFINE_LINEAR
        return DevFamily.EXPONENTIAL
    if mid is ModelId.AFFINE:
        return DevFamily.AFFINE_LINEAR if c is None or cs(c).is_zero_exactly() else DevFamily.EXPONENTIAL
    return {
        ModelId.TRANSLATIONS: DevFamily.LINEAR,
        ModelId.DISCRETE_AFFINE: DevFamily.LINEAR,
        ModelId.TORUS_TRANSLATIONS: DevFamily.TORUS_COVER,
        ModelId.ZN_TORUS: DevFamily.LINEAR,
        ModelId.CSTAR: DevFamily.EXPONENTIAL,
        ModelId.Z2_CSTAR: DevFamily.EXPONENTIAL,
    }[mid]


_ALLOWED = {
    ModelId.TRANSLATIONS: {DevFamily.LINEAR},
    ModelId.DISCRETE_AFFINE: {DevFamily.LINEAR, DevFamily.EXPONENTIAL},
    ModelId.AFFINE: {DevFamily.AFFINE_LINEAR, DevFamily.EXPONENTIAL},
    ModelId.TORUS_TRANSLATIONS: {DevFamily.TORUS_COVER},
    ModelId.ZN_TORUS: {DevFamily.LINEAR},
    ModelId.CSTAR: {DevFamily.EXPONENTIAL},
    ModelId.Z2_CSTAR: {DevFamily.EXPONENTIAL},
    ModelId.PROJECTIVE: {DevFamily.AFFINE_LINEAR, DevFamily.EXPONENTIAL, DevFamily.IDENTITY_P1},
}


def build_developing_system(model: ModelGeometry, curve: CurveDescriptor, *,
                            family: Optional[Union[DevFamily, str]] = None,
                            c=None, k=None, L=None,
                            holonomy: Optional[Sequence[Moebius]] = None,
                            exp_bound: int = DEFAULT_EXP_BOUND,
                            tol: TolLike = None) -> DevelopingSystem:
    """Developing map and holonomy for one of the catalogued structures.

    Genus >= 2 projective structures have no closed-form developing map;
    pass their ``holonomy`` (2g Moebius images) explicitly.
    """
    if classify_structures(model, curve) is NONE_ADMITTED:
        raise StructureError(f"{model.model_id.value} structures do not exist on a genus-{curve.genus} curve")
    mid = model.model_id

    if mid is ModelId.PROJECTIVE and curve.genus >= 2:
        if holonomy is None or len(holonomy) != 2 * curve.genus:
            raise StructureError(f"genus {curve.genus} needs {2 * curve.genus} holonomy images")
        rel = surface_relation(holonomy)
        if psl_distance(rel, IDENTITY) > as_tol(tol).eps * 100:
            raise StructureError("holonomy images violate the surface-group relation")
        return DevelopingSystem(model, curve, None, tuple(holonomy))

    fam = DevFamily(family) if family is not None else _default_family(model, curve, c)
    if fam not in _ALLOWED[mid]:
        raise StructureError(f"family {fam.value} is not available for {mid.value}")

    if fam is DevFamily.IDENTITY_P1:
        return DevelopingSystem(model, curve, fam, ())
    periods = curve.lattice.periods

    if fam is DevFamily.AFFINE_LINEAR:
        if mid is ModelId.PROJECTIVE:
            hol = tuple(Moebius.translation(lam) for lam in periods)
        else:
            hol = tuple(AffineElement(ONE, lam) for lam in periods)
        return DevelopingSystem(model, curve, fam, hol, c=ZERO)

    if fam is DevFamily.TORUS_COVER:
        L = _nonzero(L, "linear isomorphism L")
        hol = tuple(AffineElement(ONE, cs(model.lattice0.reduce_mod(L * lam))) for lam in periods)
        return DevelopingSystem(model, curve, fam, hol, L=L)

    c = _nonzero(c, "c")
    if fam is DevFamily.LINEAR:
        if mid is ModelId.ZN_TORUS:
            hol = tuple(AffineElement(ONE, cs(model.lattice0.reduce_mod(c * lam))) for lam in periods)
        else:
            hol = tuple(AffineElement(ONE, c * lam) for lam in periods)
        return DevelopingSystem(model, curve, fam, hol, c=c)

    # exponential families
    k = ONE if k is None else _nonzero(k, "k")
    if mid is ModelId.DISCRETE_AFFINE and not is_grain(c, curve.lattice, model.group, exp_bound, tol):
        raise StructureError(f"c = {complex(c)} is not a grain for this lattice and group")
    if mid is ModelId.PROJECTIVE:
        if k != ONE:
            raise StructureError("projective exponential structures are normalized to k = 1")
        hol = tuple(Moebius.diag((c * lam / 2).exp()) for lam in periods)
    else:
        hol = tuple(AffineElement((c * lam).exp()) for lam in periods)
    return DevelopingSystem(model, curve, fam, hol, c=c, k=k)


def surface_relation(images: Sequence[Moebius]) -> Moebius:
    """Product of commutators ``[a1, b1] ... [ag, bg]``."""
    out = IDENTITY
    for j in range(0, len(images), 2):
        out = compose(out, commutator(images[j], images[j + 1]))
    return out


# ----------------------------------------------------------------------
# equivariance


@dataclass(frozen=True)
class EquivarianceReport:
    max_residual: float
    passed: bool
    samples: int


def _residual(ds: DevelopingSystem, z: complex, lam: complex, h: HolonomyValue) -> float:
    lhs = ds.develop(z + lam)
    base = ds.develop(z)
    mid = ds.model_id
    if mid is ModelId.PROJECTIVE:
        rhs = act_complex(h, base)
        if cmath.isinf(rhs):
            return 2.0 / math.sqrt(1.0 + abs(lhs) ** 2)
        # chordal distance is blind near 0 and inf; the relative term is inversion-symmetric
        scale = max(abs(lhs), abs(rhs))
        relative = abs(lhs - rhs) / scale if scale and min(abs(lhs), abs(rhs)) > 0 else 0.0
        return max(chordal_complex(lhs, rhs), relative)
    rhs = h.apply(base)
    if mid in _TORUS_MODELS:
        return ds.model.lattice0.distance_mod(lhs, rhs) / max(1.0, abs(lhs))
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def verify_equivariance(ds: DevelopingSystem, sample_count: int = 64, seed: int = 0,
                        tol: TolLike = None) -> EquivarianceReport:
    """Max residual of ``dev(z + lam) = h(lam) . dev(z)`` over random ``z``.

    Residuals are relative (``|lhs - rhs| / max(1, |lhs|, |rhs|)``) in ℂ and
    ℂ×, taken modulo the model lattice for torus models.  On ℙ¹ the residual
    is the larger of the chordal distance and ``|lhs - rhs| / max(|lhs|, |rhs|)``.
    Genus >= 2 systems check the surface-group relation instead.
    """
    eps = as_tol(tol).eps
    if ds.curve.genus != 1:
        if ds.curve.genus == 0:
            return EquivarianceReport(0.0, True, 0)
        res = psl_distance(surface_relation(ds.holonomy), IDENTITY)
        return EquivarianceReport(res, res <= eps, 0)
    rng = random.Random(seed)
    w1, w2 = (complex(p) for p in ds.periods)
    worst = 0.0
    for _ in range(sample_count):
        z = rng.random() * w1 + rng.random() * w2
        for lam, h in zip((w1, w2), ds.holonomy):
            worst = max(worst, _residual(ds, z, lam, h))
    return EquivarianceReport(worst, worst <= eps, sample_count)


def perturb_holonomy(ds: DevelopingSystem, factor=1.01, index: int = 0) -> DevelopingSystem:
    """Copy of ``ds`` with ``h(lam_index)`` post-composed with ``w -> factor * w``."""
    hol = list(ds.holonomy)
    h = hol[index]
    if isinstance(h, Moebius):
        f = cs(factor)
        hol[index] = compose(Moebius.diag(f.sqrt()), h)
    else:
        hol[index] = h.scaled(factor)
    return ds.with_holonomy(hol)


# ----------------------------------------------------------------------
# moduli


class _NoneAdmitted:
    def __repr__(self):
        return "NONE_ADMITTED"


NONE_ADMITTED = _NoneAdmitted()


@dataclass(frozen=True)
class ModuliDescription:
    space: str
    dimension: int
    punctured: bool = False
    quotient: Optional[str] = None
    notes: Tuple[str, ...] = ()


_TORUS_NOTE = ("table entry H⁰(κ) ≅ ℂ; structures themselves are labelled by a "
               "nonzero linear isomorphism L, see moduli_coordinate")


def classify_structures(model: ModelGeometry, curve: CurveDescriptor):
    """Moduli space of ``model`` structures on ``curve``, or ``NONE_ADMITTED``."""
    mid = model.model_id
    g = curve.genus
    if mid is ModelId.PROJECTIVE:
        if g == 0:
            return ModuliDescription("*", 0)
        if g == 1:
            return ModuliDescription("H⁰(κ^⊗2) ≅ ℂ", 1, quotient="c ≅ −c")
        return ModuliDescription(f"H⁰(κ^⊗2) ≅ ℂ^{3 * g - 3}", 3 * g - 3)
    if g != 1:
        return NONE_ADMITTED
    if mid is ModelId.TRANSLATIONS:
        return ModuliDescription("H⁰(κ) ∖ 0 ≅ ℂ×", 1, punctured=True)
    if mid is ModelId.DISCRETE_AFFINE:
        return ModuliDescription("(H⁰(κ)/A) ∪ ⋃_{c ∈ Γ(Λ,A)} ℂ×/A", 1, quotient="/A",
                                 notes=("set-level description; topology unspecified",))
    if mid is ModelId.AFFINE:
        return ModuliDescription("H⁰(κ) ≅ ℂ", 1)
    if mid is ModelId.TORUS_TRANSLATIONS:
        return ModuliDescription("H⁰(κ) ≅ ℂ", 1, notes=(_TORUS_NOTE,))
    if mid is ModelId.ZN_TORUS:
        return ModuliDescription(f"H⁰(κ^⊗{model.n}) ≅ ℂ", 1, quotient="c ≅ αᵏ c",
                                 notes=("c = 0 is not realized by a developing map",))
    if mid is ModelId.CSTAR:
        return ModuliDescription("H⁰(κ) ∖ 0 ≅ ℂ×", 1, punctured=True)
    if mid is ModelId.Z2_CSTAR:
        return ModuliDescription("H⁰(κ^⊗2) ∖ 0 ≅ ℂ×", 1, punctured=True, quotient="c ≅ −c")
    raise AssertionError(mid)  # pragma: no cover


@dataclass(frozen=True)
class ModuliCoordinate:
    """Canonical label of a structure's conjugacy class."""

    kind: str
    value: Optional[ComplexScalar]
    extra: Tuple[Tuple[str, object], ...] = ()

    def get(self, key, default=None):
        return dict(self.extra).get(key, default)


def moduli_coordinate(ds: DevelopingSystem, tol: TolLike = None) -> ModuliCoordinate:
    mid, fam = ds.model_id, ds.family
    if mid is ModelId.PROJECTIVE:
        if ds.curve.genus == 0:
            return ModuliCoordinate("point", None)
        if ds.curve.genus >= 2:
            raise StructureError("no explicit moduli coordinate for genus >= 2 projective structures")
        return ModuliCoordinate("c^2 dz^2", ds.c * ds.c)
    if mid is ModelId.TRANSLATIONS:
        return ModuliCoordinate("c dz", ds.c)
    if mid is ModelId.AFFINE:
        return ModuliCoordinate("c dz", ds.c if fam is DevFamily.EXPONENTIAL else ZERO)
    if mid is ModelId.ZN_TORUS:
        return ModuliCoordinate(f"(c dz)^{ds.model.n}", ds.c ** ds.model.n)
    if mid is ModelId.CSTAR:
        return ModuliCoordinate("c", ds.c)
    if mid is ModelId.Z2_CSTAR:
        return ModuliCoordinate("c^2", ds.c * ds.c)
    if mid is ModelId.TORUS_TRANSLATIONS:
        # LΛ₁ ⊂ Λ₀ exactly when the developing map descends to a covering of tori
        index = is_sublattice(ds.curve.lattice.scaled(ds.L), ds.model.lattice0, tol)
        return ModuliCoordinate("L", ds.L, (("covering_degree", index), ("note", _TORUS_NOTE)))
    if mid is ModelId.DISCRETE_AFFINE:
        if fam is DevFamily.LINEAR:
            return ModuliCoordinate("c dz mod A", ds.c)
        return ModuliCoordinate("grain", ds.c, (("k mod A", ds.k),))
    raise AssertionError(mid)  # pragma: no cover


def _same_model(m1: ModelGeometry, m2: ModelGeometry, tol) -> bool:
    if m1.model_id is not m2.model_id or m1.n != m2.n:
        return False
    if m1.lattice0 is not None and not m1.lattice0.equals(m2.lattice0, tol):
        return False
    if m1.group is not None and m1.group != m2.group:
        return False
    return True


def _close(a: ComplexScalar, b: ComplexScalar, tol) -> bool:
    eps = as_tol(tol).eps
    return approx_eq(a, b, eps * max(1.0, abs(a), abs(b)))


def is_conjugate(ds1: DevelopingSystem, ds2: DevelopingSystem,
                 exp_bound: int = DEFAULT_EXP_BOUND, tol: TolLike = None) -> bool:
    if not _same_model(ds1.model, ds2.model, tol):
        raise StructureError("structures use different models")
    if not ds1.curve.same_curve(ds2.curve, tol):
        raise StructureError("structures live on different curves")
    x1, x2 = moduli_coordinate(ds1, tol), moduli_coordinate(ds2, tol)
    if x1.kind != x2.kind:
        return False
    if x1.value is None:
        return True
    if ds1.model_id is ModelId.DISCRETE_AFFINE:
        group = ds1.model.group
        if x1.kind == "grain":
            return _close(x1.value, x2.value, tol) and member_mult(
                x2.get("k mod A") / x1.get("k mod A"), group, exp_bound, tol)
        return member_mult(x2.value / x1.value, group, exp_bound, tol)
    return _close(x1.value, x2.value, tol)


# ----------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class AutoDescriptor:
    """Automorphism group of a structure.

    ``rotation_order`` is the order n of the component group when the
    automorphisms are ``ℤ_n ⋉ ℂ`` (n = 1 for plain translations).
    """

    group: str
    homogeneous: bool
    finite: bool = False
    rotation_order: Optional[int] = None


def _semidirect(n: int) -> AutoDescriptor:
    if n == 1:
        return AutoDescriptor("ℂ (translations)", True, rotation_order=1)
    return AutoDescriptor(f"ℤ_{n} ⋉ ℂ", True, rotation_order=n)


def _roots_in_group(lattice: Lattice, group: MultGroup, exp_bound: int, tol) -> int:
    sym = symmetry_order(lattice, tol)
    best = 1
    for d in range(2, sym + 1):
        if sym % d == 0:
            zeta = cs(complex(math.cos(2 * math.pi / d), math.sin(2 * math.pi / d)))
            if d == 2:
                zeta = cs(-1)
            elif d == 4:
                zeta = cs(0, 1)
            if member_mult(zeta, group, exp_bound, tol):
                best = d
    return best


def automorphism_group(ds: DevelopingSystem, exp_bound: int = DEFAULT_EXP_BOUND,
                       tol: TolLike = None) -> AutoDescriptor:
    mid, fam, g = ds.model_id, ds.family, ds.curve.genus
    if g >= 2:
        return AutoDescriptor("finite", False, finite=True)
    if g == 0:
        return AutoDescriptor("PSL(2,ℂ)", True)
    sym = symmetry_order(ds.curve.lattice, tol)
    if mid is ModelId.TRANSLATIONS or mid is ModelId.CSTAR:
        return _semidirect(1)
    if mid in (ModelId.AFFINE, ModelId.PROJECTIVE):
        if fam is DevFamily.AFFINE_LINEAR:
            return _semidirect(sym)
        return _semidirect(1) if mid is ModelId.AFFINE else _semidirect(2)
    if mid is ModelId.Z2_CSTAR:
        return _semidirect(2)
    if mid is ModelId.ZN_TORUS:
        return _semidirect(math.gcd(ds.model.n, sym))
    if mid is ModelId.TORUS_TRANSLATIONS:
        return _semidirect(math.gcd(symmetry_order(ds.model.lattice0, tol), sym))
    if mid is ModelId.DISCRETE_AFFINE:
        if fam is DevFamily.EXPONENTIAL:
            return AutoDescriptor("finite", False, finite=True)
        return _semidirect(_roots_in_group(ds.curve.lattice, ds.model.group, exp_bound, tol))
    raise AssertionError(mid)  # pragma: no cover


# ----------------------------------------------------------------------
# Schwarzian derivative


def _derivatives(f: Callable[[complex], complex], z: complex, radius: float, nodes: int):
    """F, F', F'', F''' from an ``nodes``-point stencil on a circle around ``z``."""
    omegas = [cmath.exp(2j * math.pi * j / nodes) for j in range(nodes)]
    values = [f(z + radius * w) for w in omegas]
    out = []
    for k in range(4):
        s = sum(v * w ** (-k) for v, w in zip(values, omegas)) / nodes
        out.append(s * math.factorial(k) / radius ** k)
    return out, max(abs(v) for v in values)


def schwarzian_fd(dev, z, step: float = 0.1, nodes: int = 32, tol: TolLike = None) -> ComplexScalar:
    """Numerical Schwarzian ``F'''/F' - (3/2)(F''/F')**2`` at ``z``.

    ``dev`` is a callable on Python complex numbers or a
    :class:`DevelopingSystem`.  Derivatives come from an equally spaced
    stencil on the circle of radius ``step`` around ``z``; ``dev`` must be
    holomorphic on a neighbourhood of that disc.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    f = dev.develop if isinstance(dev, DevelopingSystem) else dev
    (_, d1, d2, d3), scale = _derivatives(f, complex(z), step, nodes)
    if abs(d1) <= 1e-12 * max(1.0, scale):
        raise ValueError("derivative vanishes: not a local biholomorphism here")
    return cs(d3 / d1 - 1.5 * (d2 / d1) ** 2)


def schwarzian_central(f: Callable[[complex], complex], z, step: float = 1e-4) -> ComplexScalar:
    """Central differences with one Richardson step; a cruder cross-check."""
    z = complex(z)

    def d123(h):
        fp, fm = f(z + h), f(z - h)
        f2p, f2m = f(z + 2 * h), f(z - 2 * h)
        f0 = f(z)
        d1 = (fp - fm) / (2 * h)
        d2 = (fp - 2 * f0 + fm) / h ** 2
        d3 = (f2p - 2 * fp + 2 * fm - f2m) / (2 * h ** 3)
        return d1, d2, d3

    a, b = d123(step), d123(step / 2)
    d1, d2, d3 = ((4 * y - x) / 3 for x, y in zip(a, b))
    if d1 == 0:
        raise ValueError("derivative vanishes: not a local biholomorphism here")
    return cs(d3 / d1 - 1.5 * (d2 / d1) ** 2)


def schwarzian_exact(ds: DevelopingSystem) -> ComplexScalar:
    """Closed form for the catalogue families: ``-c**2/2`` for exponentials, else 0."""
    if ds.family is DevFamily.EXPONENTIAL:
        return -(ds.c * ds.c) / 2
    if ds.family is None:
        raise StructureError("no explicit developing map")
    return ZERO
