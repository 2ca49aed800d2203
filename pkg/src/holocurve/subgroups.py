"""Conjugacy classes of subgroups of PSL(2,C), centralizers and normalizers.

Every finitely generated subgroup handled here is moved into one of the
standard representatives below by a *witness* conjugator ``g``:
``g * Gamma * g^-1`` lies inside the standard group.  Centralizers and
normalizers are returned in the caller's frame, i.e. ``g^-1 * Std * g``.

Standard representatives (as matrices up to sign):

* ``Cstar``          diagonal matrices
* ``C2``             ``{I, diag(i, -i)}``
* ``C2xCstar``       diagonal or ``[[0, b], [-1/b, 0]]``
* ``TranslationsFull`` ``[[1, b], [0, 1]]``
* ``CnLtimesC(n)``   ``[[a, b], [0, 1/a]]`` with ``(a**2)**n == 1``
* ``Affine``         upper triangular
* ``KleinFour``      ``{I, diag(i,-i), [[0,i],[i,0]], [[0,-1],[1,0]]}``
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .lattices import reduce_basis, symmetry_order
from .moebius import (
    EVERY_POINT,
    IDENTITY,
    Moebius,
    PairClass,
    common_fixed_points,
    commuting_pair_class,
    compose,
    conjugate_by,
    conjugate_to_normal_form,
    element_order,
    inverse,
    is_diagonal,
    is_unipotent_upper,
    is_upper_triangular,
    klein_four_conjugator,
)
from .numerics import ONE, ZERO, TolLike, as_tol, cs, root_of_unity_order

DEFAULT_CAP = 200


class OutsideCatalogue(ValueError):
    """The group is not one the catalogue can describe."""


class Tag(str, Enum):
    TRIVIAL = "Trivial"
    C2 = "C2"
    CYCLIC_DIAGONAL = "CyclicDiagonal"
    FINITE_TORUS = "FiniteSubgroupOfTorus"
    INFINITE_TORUS = "InfiniteSubgroupOfTorus"
    TRANSLATIONS = "SubgroupOfTranslations"
    KLEIN_FOUR = "KleinFour"
    DIHEDRAL = "Dihedral"
    TETRAHEDRAL = "Tetrahedral"
    OCTAHEDRAL = "Octahedral"
    ICOSAHEDRAL = "Icosahedral"
    C2_X_CSTAR = "C2xCstar"
    CSTAR = "Cstar"
    TRANSLATIONS_FULL = "TranslationsFull"
    CN_LTIMES_C = "CnLtimesC"
    AFFINE = "Affine"
    FULL = "Full"
    UNRECOGNIZED = "Unrecognized"


_TORUS_TAGS = {Tag.C2, Tag.CYCLIC_DIAGONAL, Tag.FINITE_TORUS, Tag.INFINITE_TORUS}
_POLYHEDRAL = {Tag.TETRAHEDRAL: 12, Tag.OCTAHEDRAL: 24, Tag.ICOSAHEDRAL: 60}


@dataclass(frozen=True, eq=False)
class SubgroupClass:
    """A conjugacy class from the catalogue, pinned down in the caller's frame.

    ``witness`` maps the caller's frame into the standard representative.
    Finite groups that are not handled through a standard representative
    carry their ``elements`` (caller's frame) instead.
    """

    tag: Tag
    n: Optional[int] = None
    witness: Optional[Moebius] = None
    elements: Optional[Tuple[Moebius, ...]] = None

    @property
    def name(self) -> str:
        if self.tag in (Tag.CYCLIC_DIAGONAL, Tag.DIHEDRAL, Tag.CN_LTIMES_C) and self.n is not None:
            return f"{self.tag.value}({self.n})"
        return self.tag.value

    def __str__(self):
        return self.name

    def same_class(self, other: "SubgroupClass") -> bool:
        return self.tag == other.tag and self.n == other.n

    @property
    def order(self) -> Optional[int]:
        """Group order, ``None`` when infinite."""
        if self.elements is not None:
            return len(self.elements)
        fixed = {Tag.TRIVIAL: 1, Tag.C2: 2, Tag.KLEIN_FOUR: 4, **_POLYHEDRAL}
        if self.tag in fixed:
            return fixed[self.tag]
        if self.tag is Tag.CYCLIC_DIAGONAL:
            return self.n
        if self.tag is Tag.DIHEDRAL:
            return 2 * self.n
        return None

    def to_standard(self, m: Moebius) -> Moebius:
        return m if self.witness is None else conjugate_by(self.witness, m)

    def from_standard(self, m: Moebius) -> Moebius:
        return m if self.witness is None else conjugate_by(inverse(self.witness), m)

    def contains(self, m: Moebius, tol: TolLike = None) -> bool:
        if self.elements is not None:
            return any(m.equals(x, tol) for x in self.elements)
        return _in_standard(self.tag, self.n, self.to_standard(m), tol)

    def finite_elements(self) -> Optional[List[Moebius]]:
        """Explicit elements (caller's frame) for finite classes with a known list."""
        if self.elements is not None:
            return list(self.elements)
        std = {
            Tag.TRIVIAL: [IDENTITY],
            Tag.C2: [IDENTITY, _DIAG_I],
            Tag.KLEIN_FOUR: list(KLEIN_FOUR),
        }.get(self.tag)
        if std is None and self.tag is Tag.CYCLIC_DIAGONAL:
            std = cyclic_diagonal(self.n)
        if std is None:
            return None
        return [self.from_standard(x) for x in std]

    def sample(self, rng, count: int = 8) -> List[Moebius]:
        """Random members of a continuous class (caller's frame)."""
        out = []
        for _ in range(count):
            a = cs(complex(rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0)))
            b = cs(complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)))
            if self.tag is Tag.FULL:
                m = Moebius.from_entries(a, b, cs(complex(rng.uniform(-1, 1), rng.uniform(-1, 1))),
                                         cs(complex(rng.uniform(0.3, 2.0), 0.0)))
            elif self.tag is Tag.CSTAR:
                m = Moebius.diag(a)
            elif self.tag is Tag.C2_X_CSTAR:
                m = Moebius.diag(a) if rng.random() < 0.5 else Moebius.from_entries(0, b, -1 / b, 0)
            elif self.tag is Tag.TRANSLATIONS_FULL:
                m = Moebius.translation(b)
            elif self.tag is Tag.AFFINE:
                m = Moebius.from_entries(a, b, 0, 1 / a)
            elif self.tag is Tag.CN_LTIMES_C:
                k = rng.randrange(self.n)
                root = cs(complex(math.cos(math.pi * k / self.n), math.sin(math.pi * k / self.n)))
                m = Moebius.from_entries(root, b, 0, 1 / root)
            else:
                elems = self.finite_elements()
                if elems is None:
                    raise ValueError(f"cannot sample {self.name}")
                out.append(elems[rng.randrange(len(elems))])
                continue
            out.append(self.from_standard(m))
        return out


# ----------------------------------------------------------------------
# standard representatives

_I = cs(0, 1)
_DIAG_I = Moebius(_I, ZERO, ZERO, -_I)
_SWAP = Moebius(ZERO, _I, _I, ZERO)
_ROT_Y = Moebius(ZERO, cs(-1), ONE, ZERO)
KLEIN_FOUR: Tuple[Moebius, ...] = (IDENTITY, _DIAG_I, _SWAP, _ROT_Y)

# order-3 rotation cycling the axes {0,inf} -> {1,-1} -> {i,-i}, and z -> i z
_CUBE_R3 = Moebius.from_entries(1, _I, 1, -_I)
_CUBE_R4 = Moebius.diag(complex(math.cos(math.pi / 4), math.sin(math.pi / 4)))


def cyclic_diagonal(n: int) -> List[Moebius]:
    """``{z -> zeta**k z}`` for the n-th roots of unity."""
    out = [IDENTITY]
    for k in range(1, n):
        if 2 * k == n:
            out.append(_DIAG_I)
            continue
        theta = math.pi * k / n
        out.append(Moebius.diag(complex(math.cos(theta), math.sin(theta))))
    return out


def cube_rotations(tol: TolLike = None) -> List[Moebius]:
    """The 24 rotations of the cube whose face axes are {0,inf}, {1,-1}, {i,-i}."""
    elems = closure_enumerate([_CUBE_R3, _CUBE_R4], 24, tol)
    assert elems is not None and len(elems) == 24
    return elems


def _in_standard(tag: Tag, n: Optional[int], m: Moebius, tol) -> bool:
    eps = as_tol(tol).eps
    if tag is Tag.FULL:
        return True
    if tag is Tag.TRIVIAL:
        return m.is_identity(tol)
    if tag is Tag.C2:
        return m.is_identity(tol) or m.equals(_DIAG_I, tol)
    if tag is Tag.KLEIN_FOUR:
        return any(m.equals(k, tol) for k in KLEIN_FOUR)
    if tag in (Tag.CSTAR, Tag.FINITE_TORUS, Tag.INFINITE_TORUS):
        return is_diagonal(m, tol)
    if tag is Tag.CYCLIC_DIAGONAL:
        return is_diagonal(m, tol) and root_of_unity_order(m.a * m.a, n, tol) is not None \
            and n % root_of_unity_order(m.a * m.a, n, tol) == 0
    if tag is Tag.C2_X_CSTAR:
        anti = abs(m.a) <= eps and abs(m.d) <= eps
        return is_diagonal(m, tol) or anti
    if tag in (Tag.TRANSLATIONS_FULL, Tag.TRANSLATIONS):
        return is_unipotent_upper(m, tol)
    if tag is Tag.AFFINE:
        return is_upper_triangular(m, tol)
    if tag is Tag.CN_LTIMES_C:
        if not is_upper_triangular(m, tol):
            return False
        k = root_of_unity_order(m.a * m.a, n, tol)
        return k is not None and n % k == 0
    raise OutsideCatalogue(f"no membership test for {tag.value}")


# ----------------------------------------------------------------------
# closure


def closure_enumerate(gens: Sequence[Moebius], cap: int = DEFAULT_CAP,
                      tol: TolLike = None) -> Optional[List[Moebius]]:
    """Breadth-first closure of ``gens``; ``None`` once more than ``cap`` elements appear.

    ``None`` only means "not finite within budget".
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    eps = as_tol(tol).eps
    step: List[Moebius] = []
    for g in gens:
        for h in (g, inverse(g)):
            if not any(h.equals(x, tol) for x in step):
                step.append(h)
    elements = [IDENTITY]
    keys = [IDENTITY.as_complex()]
    frontier = [IDENTITY]
    while frontier:
        new = []
        for x in frontier:
            for s in step:
                y = compose(s, x)
                if _seen(y, elements, keys, eps):
                    continue
                elements.append(y)
                keys.append(y.as_complex())
                new.append(y)
                if len(elements) > cap:
                    return None
        frontier = new
    return elements


def _seen(y: Moebius, elements: Sequence[Moebius], keys: Sequence[tuple], eps: float) -> bool:
    if y.exact:
        if any(e.exact and y.equals(e) for e in elements):
            return True
    yc = y.as_complex()
    ymax = max(abs(v) for v in yc)
    for e, ec in zip(elements, keys):
        if y.exact and e.exact:
            continue
        bound = eps * max(1.0, ymax, *(abs(v) for v in ec))
        if max(abs(a - b) for a, b in zip(yc, ec)) <= bound or \
                max(abs(a + b) for a, b in zip(yc, ec)) <= bound:
            return True
    return False


def _census(elements: Sequence[Moebius], cap: int, tol) -> Counter:
    return Counter(element_order(m, cap, tol) for m in elements)


def _match_finite(elements: Sequence[Moebius], cap: int, tol) -> Tuple[Tag, Optional[int]]:
    order = len(elements)
    census = _census(elements, cap, tol)
    if None in census:
        return Tag.UNRECOGNIZED, None
    if order == 1:
        return Tag.TRIVIAL, None
    if order == 4 and census[2] == 3:
        return Tag.KLEIN_FOUR, None
    if order == 12 and census[3] == 8:
        return Tag.TETRAHEDRAL, None
    if order == 24 and census[4] == 6 and census[3] == 8:
        return Tag.OCTAHEDRAL, None
    if order == 60 and census[5] == 24:
        return Tag.ICOSAHEDRAL, None
    if order % 2 == 0:
        k = order // 2
        involutions = census[2]
        if census[k] >= 1 and involutions in (k, k + 1):
            return Tag.DIHEDRAL, k
    if census[order] >= 1:
        return Tag.CYCLIC_DIAGONAL, order
    return Tag.UNRECOGNIZED, None


# ----------------------------------------------------------------------
# recognition


def _nontrivial(gens: Sequence[Moebius], tol) -> List[Moebius]:
    return [g for g in gens if not g.is_identity(tol)]


def recognize(gens: Sequence[Moebius], cap: int = DEFAULT_CAP, tol: TolLike = None) -> SubgroupClass:
    gens = _nontrivial(gens, tol)
    if not gens:
        return SubgroupClass(Tag.TRIVIAL, witness=IDENTITY)
    g, normal = conjugate_to_normal_form(gens, tol)
    if all(is_diagonal(m, tol) for m in normal):
        orders = [root_of_unity_order(m.a * m.a, cap, tol) for m in normal]
        if any(o is None for o in orders):
            return SubgroupClass(Tag.INFINITE_TORUS, witness=g)
        n = math.lcm(*orders)
        if n == 2:
            return SubgroupClass(Tag.C2, witness=g)
        return SubgroupClass(Tag.CYCLIC_DIAGONAL, n=n, witness=g)
    if all(is_unipotent_upper(m, tol) for m in normal):
        return SubgroupClass(Tag.TRANSLATIONS, witness=g)
    elements = closure_enumerate(gens, cap, tol)
    if elements is None:
        return SubgroupClass(Tag.UNRECOGNIZED)
    tag, n = _match_finite(elements, cap, tol)
    if tag is Tag.KLEIN_FOUR:
        invs = [m for m in elements if not m.is_identity(tol)]
        return SubgroupClass(Tag.KLEIN_FOUR, witness=klein_four_conjugator(invs, tol))
    if tag is Tag.UNRECOGNIZED:
        return SubgroupClass(tag)
    return SubgroupClass(tag, n=n, elements=tuple(elements))


def translation_parts(gens: Sequence[Moebius], witness: Moebius, tol: TolLike = None) -> List:
    """Translation amounts of unipotent generators in the witness frame."""
    out = []
    for m in _nontrivial(gens, tol):
        x = conjugate_by(witness, m)
        out.append(x.b / x.a)
    return out


# ----------------------------------------------------------------------
# centralizers and normalizers


def centralizer(gens: Sequence[Moebius], cap: int = DEFAULT_CAP, tol: TolLike = None) -> SubgroupClass:
    cls = recognize(gens, cap, tol)
    tag = cls.tag
    if tag is Tag.TRIVIAL:
        return SubgroupClass(Tag.FULL, witness=IDENTITY)
    if tag is Tag.C2:
        return SubgroupClass(Tag.C2_X_CSTAR, witness=cls.witness)
    if tag in _TORUS_TAGS:
        return SubgroupClass(Tag.CSTAR, witness=cls.witness)
    if tag is Tag.TRANSLATIONS:
        return SubgroupClass(Tag.TRANSLATIONS_FULL, witness=cls.witness)
    if tag is Tag.KLEIN_FOUR:
        return SubgroupClass(Tag.KLEIN_FOUR, witness=cls.witness)
    if tag is Tag.UNRECOGNIZED:
        raise OutsideCatalogue("group is outside the catalogue (no finite closure within cap)")
    return SubgroupClass(Tag.TRIVIAL, witness=IDENTITY)


def _translation_symmetry(parts: Sequence, tol) -> int:
    """Order n of the rotation group {zeta : zeta * Gamma = Gamma} for Gamma = span(parts)."""
    parts = [cs(p) for p in parts if not cs(p).is_zero(tol)]
    if len(parts) > 2:
        raise OutsideCatalogue("normalizer of a translation group needs at most two generators")
    if len(parts) == 1:
        return 2
    ratio = parts[1] / parts[0]
    eps = as_tol(tol).eps
    real = ratio.im == 0 if ratio.exact else abs(float(ratio.im)) <= eps * max(1.0, abs(ratio))
    if real:
        if ratio.exact:
            return 2
        q = Fraction(float(ratio.re)).limit_denominator(10_000)
        if abs(float(q) - float(ratio.re)) <= eps * max(1.0, abs(float(q))):
            return 2
        raise OutsideCatalogue("translation generators are dependent over R but not over Q")
    return symmetry_order(reduce_basis(parts[0], parts[1], tol), tol)


def normalizer(gens: Sequence[Moebius], cap: int = DEFAULT_CAP, tol: TolLike = None) -> SubgroupClass:
    """Normalizer in PSL(2,C); finite answers carry their explicit elements."""
    cls = recognize(gens, cap, tol)
    tag = cls.tag
    if tag is Tag.TRIVIAL:
        return SubgroupClass(Tag.FULL, witness=IDENTITY)
    if tag in _TORUS_TAGS:
        return SubgroupClass(Tag.C2_X_CSTAR, witness=cls.witness)
    if tag is Tag.TRANSLATIONS:
        n = _translation_symmetry(translation_parts(gens, cls.witness, tol), tol)
        return SubgroupClass(Tag.CN_LTIMES_C, n=n, witness=cls.witness)
    if tag is Tag.KLEIN_FOUR:
        return _cube_in_frame(cls.witness, tol)
    if tag is Tag.TETRAHEDRAL:
        involutions = [m for m in cls.elements if element_order(m, 2, tol) == 2]
        return _cube_in_frame(klein_four_conjugator(involutions, tol), tol)
    if tag in (Tag.OCTAHEDRAL, Tag.ICOSAHEDRAL):
        return SubgroupClass(tag, elements=cls.elements)
    if tag is Tag.DIHEDRAL:
        return _dihedral_normalizer(cls, cap, tol)
    raise OutsideCatalogue("group is outside the catalogue (no finite closure within cap)")


def _cube_in_frame(witness: Moebius, tol) -> SubgroupClass:
    back = inverse(witness)
    elems = tuple(conjugate_by(back, m) for m in cube_rotations(tol))
    return SubgroupClass(Tag.OCTAHEDRAL, elements=elems)


def _dihedral_normalizer(cls: SubgroupClass, cap: int, tol) -> SubgroupClass:
    n = cls.n
    rotation = next(m for m in cls.elements if element_order(m, cap, tol) == n)
    g, (r,) = conjugate_to_normal_form([rotation], tol)
    half = Moebius.diag(complex(math.cos(math.pi / (2 * n)), math.sin(math.pi / (2 * n))))
    frame = [conjugate_by(g, m) for m in cls.elements] + [half]
    elems = closure_enumerate(frame, max(cap, 4 * n), tol)
    if elems is None:  # pragma: no cover - D_2n is finite
        raise OutsideCatalogue("dihedral normalizer closure failed")
    back = inverse(g)
    return SubgroupClass(Tag.DIHEDRAL, n=2 * n, elements=tuple(conjugate_by(back, m) for m in elems))


def normalizes(h: Moebius, group: Sequence[Moebius], tol: TolLike = None) -> bool:
    """``h Gamma h^-1 == Gamma`` for a finite element list."""
    return all(any(conjugate_by(h, x).equals(y, tol) for y in group) for x in group)


# ----------------------------------------------------------------------
# effectiveness of the homogeneous models


@dataclass(frozen=True)
class Effectiveness:
    model_id: str
    effective: bool
    kernel: str


def is_effective(model_id: str) -> Effectiveness:
    """Kernel of the model pair (largest subgroup of H normal in G).

    All catalogued models act faithfully, so the kernel is trivial.
    """
    from .curves import MODEL_TABLE, ModelId

    try:
        mid = ModelId(model_id)
    except ValueError:
        raise ValueError(f"unknown model id {model_id!r}") from None
    row = MODEL_TABLE[mid]
    return Effectiveness(mid.value, True, f"trivial (G = {row.group}, H = {row.stabilizer})")
