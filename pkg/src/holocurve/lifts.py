"""Flat ℙ¹-bundles over curves and the geometries lifted to them.

A representation of the fundamental group into PSL(2,ℂ) gives a flat
ℙ¹-bundle over the curve; pairing it with a curve structure gives a
product-model geometry on the ruled surface.  For an elliptic base the
images are assigned to the reduced periods ``base.lattice.periods``.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from .curves import (
    AutoDescriptor,
    CurveDescriptor,
    DevelopingSystem,
    HolonomyValue,
    StructureError,
    automorphism_group,
    classify_structures,
)
from .lattices import Lattice
from .moebius import (
    EVERY_POINT,
    IDENTITY,
    Moebius,
    SpherePoint,
    act,
    common_fixed_points,
    commute,
    compose,
    conjugate_by,
    conjugate_to_normal_form,
    inverse,
    is_diagonal,
    is_unipotent_upper,
    power,
    psl_distance,
)
from .numerics import ONE, ZERO, ComplexScalar, TolLike, as_tol, cs
from .subgroups import (
    DEFAULT_CAP,
    OutsideCatalogue,
    SubgroupClass,
    Tag,
    centralizer,
    closure_enumerate,
    normalizer,
    recognize,
)

DEFAULT_BRANCH_BOUND = 50

_SWAP = Moebius(ZERO, cs(0, 1), cs(0, 1), ZERO)


class RepresentationError(ValueError):
    """Images do not define a representation of the fundamental group."""


def surface_relation(images: Sequence[Moebius]) -> Moebius:
    out = IDENTITY
    for j in range(0, len(images), 2):
        a, b = images[j], images[j + 1]
        out = compose(out, compose(compose(a, b), compose(inverse(a), inverse(b))))
    return out


@dataclass(frozen=True, eq=False)
class Representation:
    base: CurveDescriptor
    images: Tuple[Moebius, ...]
    tol: float = as_tol(None).eps

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        g = self.base.genus
        if g == 0:
            if images:
                raise RepresentationError("ℙ¹ is simply connected: no images expected")
            return
        if len(images) != 2 * g:
            raise RepresentationError(f"genus {g} needs {2 * g} images, got {len(images)}")
        if g == 1:
            if not commute(images[0], images[1], self.tol):
                raise RepresentationError("images of an elliptic curve's periods must commute")
        elif psl_distance(surface_relation(images), IDENTITY) > 100 * self.tol:
            raise RepresentationError("images violate the surface-group relation")

    @classmethod
    def on_periods(cls, periods: Sequence, images: Sequence[Moebius],
                   tol: TolLike = None) -> "Representation":
        """Representation given on an arbitrary period basis, re-expressed on the reduced one."""
        base = CurveDescriptor.elliptic(*periods)
        original = Lattice(tuple(cs(p) for p in periods))
        moved = []
        for w in base.lattice.periods:
            coords = original.integer_coordinates(w, tol)
            if coords is None:  # pragma: no cover - reduction stays in the lattice
                raise RepresentationError("reduced period is not in the original lattice")
            m, n = coords
            moved.append(compose(power(images[0], m), power(images[1], n)))
        return cls(base, tuple(moved), as_tol(tol).eps)

    def image_of(self, coords: Sequence[int]) -> Moebius:
        """Image of ``m*w1 + n*w2`` (elliptic bases only)."""
        m, n = coords
        return compose(power(self.images[0], m), power(self.images[1], n))

    def image_of_word(self, word: Sequence[Tuple[int, int]]) -> Moebius:
        """Image of a word given as ``(generator index, exponent)`` pairs."""
        out = IDENTITY
        for index, exponent in word:
            out = compose(out, power(self.images[index], exponent))
        return out


class RepClass(str, Enum):
    TRIVIAL_IMAGE = "trivial_image"
    DIAGONAL_TYPE = "diagonal_type"
    UNIPOTENT_TYPE = "unipotent_type"
    KLEIN_FOUR = "klein_four"
    OTHER = "other"


_CATALOGUED = (RepClass.TRIVIAL_IMAGE, RepClass.DIAGONAL_TYPE,
               RepClass.UNIPOTENT_TYPE, RepClass.KLEIN_FOUR)


def rep_class(rep: Representation, cap: int = DEFAULT_CAP, tol: TolLike = None) -> RepClass:
    nontrivial = [m for m in rep.images if not m.is_identity(tol)]
    if not nontrivial:
        return RepClass.TRIVIAL_IMAGE
    common = common_fixed_points(nontrivial, tol)
    if len(common) in (1, 2):
        _, normal = conjugate_to_normal_form(nontrivial, tol)
        if len(common) == 2 and all(is_diagonal(m, tol) for m in normal):
            return RepClass.DIAGONAL_TYPE
        if len(common) == 1 and all(is_unipotent_upper(m, tol) for m in normal):
            return RepClass.UNIPOTENT_TYPE
        return RepClass.OTHER
    if recognize(nontrivial, cap, tol).tag is Tag.KLEIN_FOUR:
        return RepClass.KLEIN_FOUR
    return RepClass.OTHER


@dataclass(frozen=True, eq=False)
class FlatBundle:
    rep: Representation
    rep_class: RepClass

    @classmethod
    def of(cls, rep: Representation, cap: int = DEFAULT_CAP, tol: TolLike = None) -> "FlatBundle":
        return cls(rep, rep_class(rep, cap, tol))


# ----------------------------------------------------------------------
# triviality


@dataclass(frozen=True, eq=False)
class TrivialityWitness:
    """``rho(lam) = g^-1 exp(b lam X) g`` with ``X`` diagonal or nilpotent.

    ``kind`` is ``"diagonal"`` (``exp(b lam X) = diag(e^{b lam/2}, e^{-b lam/2})``)
    or ``"unipotent"`` (``[[1, b lam], [0, 1]]``).
    """

    b: ComplexScalar
    conjugator: Moebius
    kind: str

    def evaluate(self, lam) -> Moebius:
        lam = cs(lam)
        if self.kind == "unipotent":
            std = Moebius.translation(self.b * lam)
        else:
            std = Moebius.diag((self.b * lam / 2).exp())
        return conjugate_by(inverse(self.conjugator), std)

    def reproduces(self, rep: Representation, tol: TolLike = None) -> bool:
        return all(self.evaluate(lam).equals(img, tol)
                   for lam, img in zip(rep.base.lattice.periods, rep.images))


def _near_int(x: complex, eps: float) -> Optional[int]:
    k = round(x.real)
    return k if abs(x - k) <= eps * max(1.0, abs(x)) else None


def is_trivial_bundle(rep: Representation, search_bound: int = DEFAULT_BRANCH_BOUND,
                      cap: int = DEFAULT_CAP, tol: TolLike = None) -> Optional[TrivialityWitness]:
    """Witness ``b`` of triviality, or ``None`` (no witness within the branch bound).

    For Klein four images ``None`` is definitive: those bundles are never trivial.
    """
    if rep.base.genus != 1:
        raise RepresentationError("triviality test needs an elliptic base")
    cls = rep_class(rep, cap, tol)
    eps = as_tol(tol).eps
    lam1, lam2 = rep.base.lattice.periods
    if cls is RepClass.TRIVIAL_IMAGE:
        return TrivialityWitness(ZERO, IDENTITY, "diagonal")
    if cls is RepClass.KLEIN_FOUR:
        return None
    if cls is RepClass.OTHER:
        raise OutsideCatalogue("representation is outside the catalogue")
    g, normal = conjugate_to_normal_form(rep.images, tol)

    if cls is RepClass.UNIPOTENT_TYPE:
        t1, t2 = (m.b / m.a for m in normal)
        b = t1 / lam1
        rhs = b * lam2
        if abs(complex(t2) - complex(rhs)) <= eps * max(1.0, abs(t2)):
            return TrivialityWitness(b, g, "unipotent")
        return None

    logs = [cmath.log(complex(m.a)) for m in normal]
    l1, l2 = complex(lam1), complex(lam2)
    for k1 in sorted(range(-search_bound, search_bound + 1), key=abs):
        b = 2 * (logs[0] + k1 * math.pi * 1j) / l1
        k2 = _near_int((b * l2 / 2 - logs[1]) / (math.pi * 1j), eps)
        if k2 is not None and abs(k2) <= search_bound:
            witness = TrivialityWitness(cs(b), g, "diagonal")
            if witness.reproduces(rep, tol):
                return witness
    return None


# ----------------------------------------------------------------------
# sections and orbits


def parallel_sections(rep: Representation, tol: TolLike = None):
    """Common fixed points of all images (``EVERY_POINT`` for trivial images)."""
    pts = common_fixed_points(rep.images, tol)
    if pts is EVERY_POINT:
        return EVERY_POINT
    assert all(act(m, p).equals(p, tol) for m in rep.images for p in pts)
    return list(pts)


class _ExceedsCap:
    def __repr__(self):
        return "EXCEEDS_CAP"


EXCEEDS_CAP = _ExceedsCap()


def finite_orbits(rep: Representation, w, cap: int = DEFAULT_CAP, tol: TolLike = None):
    """Orbit of ``w`` under the image group, or ``EXCEEDS_CAP``."""
    start = SpherePoint.of(w)
    moves = [m for m in rep.images] + [inverse(m) for m in rep.images]
    orbit = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for m in moves:
                q = act(m, p)
                if not any(q.equals(r, tol) for r in orbit):
                    orbit.append(q)
                    nxt.append(q)
                    if len(orbit) > cap:
                        return EXCEEDS_CAP
        frontier = nxt
    return sorted(orbit, key=SpherePoint.sort_key)


# ----------------------------------------------------------------------
# lifts


@dataclass(frozen=True, eq=False)
class LiftedGeometry:
    base: DevelopingSystem
    rep: Representation
    holonomy: Tuple[Tuple[HolonomyValue, Moebius], ...]

    @property
    def model_group(self) -> str:
        return f"({self.base.model.group_name}) × PSL(2,ℂ)"

    @property
    def model_stabilizer(self) -> str:
        return f"({self.base.model.stabilizer_name}) × Borel"

    developing_map = "(δ_C, identity on the ℙ¹ factor)"


def lift(ds: DevelopingSystem, rep: Representation, tol: TolLike = None) -> LiftedGeometry:
    if not ds.curve.same_curve(rep.base, tol):
        raise StructureError("structure and representation live on different curves")
    if len(ds.holonomy) != len(rep.images):
        raise StructureError("structure and representation use different generator counts")
    return LiftedGeometry(ds, rep, tuple(zip(ds.holonomy, rep.images)))


@dataclass(frozen=True)
class ComponentLift:
    """A base automorphism ``alpha**k`` (or user action) and a verified ``h0``, if any."""

    k: int
    h0: Optional[Moebius]

    @property
    def found(self) -> bool:
        return self.h0 is not None


@dataclass(frozen=True, eq=False)
class LiftedAutomorphisms:
    group: str
    centralizer: SubgroupClass
    base: AutoDescriptor
    components: Tuple[ComponentLift, ...]
    exact_sequence: str

    @property
    def component_order(self) -> int:
        return sum(1 for c in self.components if c.found)


def _rotation_action(rep: Representation, n: int, k: int, tol) -> List[Moebius]:
    """``rho(alpha**k gamma)`` for each period ``gamma``, ``alpha = exp(2 pi i / n)``."""
    lattice = rep.base.lattice
    if (4 * k) % n == 0:
        zeta = cs(0, 1) ** (4 * k // n)  # exact for the square and rectangular cases
    else:
        theta = 2 * math.pi * k / n
        zeta = cs(complex(math.cos(theta), math.sin(theta)))
    out = []
    for lam in lattice.periods:
        coords = lattice.integer_coordinates(zeta * lam, tol)
        if coords is None:
            raise StructureError(f"rotation of order {n} does not preserve the lattice")
        out.append(rep.image_of(coords))
    return out


def _candidates(rep: Representation, cls: RepClass, targets: Sequence[Moebius],
                cap: int, tol) -> List[Moebius]:
    images = rep.images
    if cls is RepClass.TRIVIAL_IMAGE:
        return [IDENTITY]
    if cls is RepClass.KLEIN_FOUR:
        return list(normalizer([m for m in images if not m.is_identity(tol)], cap, tol).elements)
    g, normal = conjugate_to_normal_form(images, tol)
    back = inverse(g)
    if cls is RepClass.DIAGONAL_TYPE:
        return [IDENTITY, conjugate_by(back, _SWAP)]
    # unipotent: h0 = diag(a) scales translations by a**2 = t' / t
    _, moved = conjugate_to_normal_form(list(images) + list(targets), tol)
    pairs = [(m.b / m.a, t.b / t.a) for m, t in zip(moved[:len(images)], moved[len(images):])]
    for t, t_new in pairs:
        if not t.is_zero(tol):
            return [conjugate_by(back, Moebius.diag((t_new / t).sqrt()))]
    return [IDENTITY]


def _find_h0(rep: Representation, cls: RepClass, targets: Sequence[Moebius], cap: int,
             tol) -> Optional[Moebius]:
    for h in _candidates(rep, cls, targets, cap, tol):
        if all(conjugate_by(h, src).equals(dst, tol) for src, dst in zip(rep.images, targets)):
            return h
    return None


def _cyclic(n: int) -> str:
    return f"C_{n}"


def lifted_automorphisms(lg: LiftedGeometry, cap: int = DEFAULT_CAP,
                         base_actions: Optional[Sequence[Sequence[Sequence[Tuple[int, int]]]]] = None,
                         tol: TolLike = None) -> LiftedAutomorphisms:
    """Automorphisms of a lifted geometry as an extension of base automorphisms.

    Elliptic bases: the component part is searched over the rotations
    ``alpha**k`` of the base's ``ℤ_n ⋉ ℂ``.  Higher genus: ``base_actions``
    lists the finite group F of base automorphisms, each as one word per
    generator (words are ``(generator index, exponent)`` pairs).
    """
    rep = lg.rep
    cls = rep_class(rep, cap, tol)
    if cls is RepClass.OTHER:
        raise OutsideCatalogue("representation is outside the catalogue")
    nontrivial = [m for m in rep.images if not m.is_identity(tol)]
    z = centralizer(nontrivial, cap, tol)
    base = automorphism_group(lg.base, tol=tol)
    components: List[ComponentLift] = []

    if rep.base.genus == 1:
        n = base.rotation_order or 1
        for k in range(n):
            targets = _rotation_action(rep, n, k, tol)
            components.append(ComponentLift(k, _find_h0(rep, cls, targets, cap, tol)))
        identity_part = "ℂ"
    else:
        for k, action in enumerate(base_actions or [[[(j, 1)] for j in range(len(rep.images))]]):
            if len(action) != len(rep.images):
                raise StructureError("each base action needs one word per generator")
            targets = [rep.image_of_word(word) for word in action]
            components.append(ComponentLift(k, _find_h0(rep, cls, targets, cap, tol)))
        identity_part = None

    m = sum(1 for c in components if c.found)
    zname = {"KleinFour": "C_2 × C_2", "Cstar": "ℂ×", "C2xCstar": "C_2 × ℂ×",
             "TranslationsFull": "ℂ", "Full": "PSL(2,ℂ)"}.get(z.name, z.name)
    kernel = f"{zname} × {identity_part}" if identity_part else zname
    sequence = f"1 → {kernel} → Aut(E) → {_cyclic(m)} → 1"
    if cls is RepClass.KLEIN_FOUR and identity_part:
        group = "C_2 × C_2 × ℂ" if m == 1 else f"C_2 × C_2 × ({_cyclic(m)} ⋉ ℂ)"
    else:
        group = sequence
    return LiftedAutomorphisms(group, z, base, tuple(components), sequence)


# ----------------------------------------------------------------------
# orbit structure


@dataclass(frozen=True)
class OrbitReport:
    parallel_sections: Union[List[SpherePoint], object]
    multisections: Tuple[Tuple[Tuple[SpherePoint, ...], int], ...]
    open_orbit: bool
    orbit_count: Optional[int]
    summary: str


def _klein_axes(rep: Representation, tol) -> List[Tuple[SpherePoint, ...]]:
    invs = closure_enumerate(rep.images, 4, tol)
    axes = []
    for m in invs:
        if m.is_identity(tol):
            continue
        pts = tuple(common_fixed_points([m], tol))
        axes.append(pts)
    return sorted(axes, key=lambda ps: [p.sort_key() for p in ps])


def orbit_structure(lg: LiftedGeometry, cap: int = DEFAULT_CAP, seed: int = 0,
                    samples: int = 8, tol: TolLike = None) -> OrbitReport:
    rep = lg.rep
    cls = rep_class(rep, cap, tol)
    if cls is RepClass.OTHER:
        raise OutsideCatalogue("representation is outside the catalogue")
    sections = parallel_sections(rep, tol)

    if cls is RepClass.TRIVIAL_IMAGE:
        return OrbitReport(EVERY_POINT, (), True, 1, "single orbit: homogeneous fiber")

    if cls is RepClass.KLEIN_FOUR:
        multis = []
        for axis in _klein_axes(rep, tol):
            orbit = finite_orbits(rep, axis[0], cap, tol)
            multis.append((tuple(orbit), len(orbit)))
        rng = random.Random(seed)
        for _ in range(samples):
            w = cs(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
            orbit = finite_orbits(rep, w, cap, tol)
            if orbit is not EXCEEDS_CAP and len(orbit) == 4:
                multis.append((tuple(orbit), 4))
        return OrbitReport([], tuple(multis), False, None,
                           "three 2-point multisections, generic 4-point multisections; "
                           "no open orbit; automorphism orbits are unions of at most "
                           "6 parallel elliptic curves")

    homogeneous_base = rep.base.genus == 1
    if cls is RepClass.UNIPOTENT_TYPE:
        multis = ((tuple(sections), 1),)
        if homogeneous_base:
            return OrbitReport(sections, multis, True, 2,
                               "two orbits: the parallel section and its open complement")
        return OrbitReport(sections, multis, False, None,
                           "one parallel section; no open orbit over a finite base group")

    # diagonal type
    auts = lifted_automorphisms(lg, cap, tol=tol)
    swapping = auts.centralizer.tag is Tag.C2_X_CSTAR or any(
        c.found and not act(c.h0, sections[0]).equals(sections[0], tol) for c in auts.components)
    if swapping:
        multis = ((tuple(sections), 2),)
        if homogeneous_base:
            return OrbitReport(sections, multis, True, 2,
                               "two orbits: the pair of parallel sections and its open complement")
    else:
        multis = tuple(((p,), 1) for p in sections)
        if homogeneous_base:
            return OrbitReport(sections, multis, True, 3,
                               "three orbits: each parallel section and the open complement")
    return OrbitReport(sections, multis, False, None,
                       "two parallel sections; no open orbit over a finite base group")


# ----------------------------------------------------------------------
# dispatcher


@dataclass(frozen=True, eq=False)
class SurfaceClassification:
    kind: str
    name: str
    model_group: str
    stabilizer: str
    flat: bool
    description: str
    lifted: Optional[LiftedGeometry] = None
    moduli: Optional[str] = None


_HOMOGENEOUS = {
    "P2": SurfaceClassification("rational_homogeneous", "P2", "PSL(3,ℂ)", "Borel of PSL(3,ℂ)",
                                True, "standard projective structure, G = PSL(3,ℂ)"),
    "P1xP1": SurfaceClassification(
        "rational_homogeneous", "P1xP1", "ℤ_2 ⋉ (PSL(2,ℂ) × PSL(2,ℂ))", "ℤ_2 ⋉ (Borel × Borel)",
        True, "standard structure, G = ℤ_2 ⋉ (PSL(2,ℂ) × PSL(2,ℂ)), preserving both rulings"),
}


def classify_surface(kind: str, name: Optional[str] = None,
                     structure: Optional[DevelopingSystem] = None,
                     rep: Optional[Representation] = None,
                     tol: TolLike = None) -> SurfaceClassification:
    if kind == "rational_homogeneous":
        try:
            return _HOMOGENEOUS[name]
        except KeyError:
            raise ValueError(f"unknown rational homogeneous surface {name!r} (P2 or P1xP1)") from None
    if kind == "ruled":
        if structure is None or rep is None:
            raise ValueError("ruled surfaces need a curve structure and a representation")
        lg = lift(structure, rep, tol)
        curve_moduli = classify_structures(structure.model, structure.curve).space
        return SurfaceClassification(
            "ruled", "ruled", lg.model_group, lg.model_stabilizer, True,
            "lift of a curve structure to a flat ℙ¹-bundle", lg,
            f"product of the curve moduli ({curve_moduli}) with the representation variety "
            "(conjugacy-class representatives)")
    raise ValueError(f"unknown surface kind {kind!r}")
