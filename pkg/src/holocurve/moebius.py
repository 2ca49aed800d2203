"""PSL(2,C): Moebius transformations acting on the Riemann sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from .numerics import (
    ONE,
    ZERO,
    ComplexScalar,
    TolLike,
    approx_eq,
    as_tol,
    cs,
    root_of_unity_order,
)


class _EveryPoint:
    """Marker returned where every point of the sphere qualifies."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EVERY_POINT"

    def __reduce__(self):
        return (_EveryPoint, ())


EVERY_POINT = _EveryPoint()


# ----------------------------------------------------------------------
# points of the sphere


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """A point of P^1; ``value is None`` encodes infinity = (1:0)."""

    value: Optional[ComplexScalar]

    @classmethod
    def from_homogeneous(cls, z0, z1, tol: TolLike = None) -> "SpherePoint":
        z0, z1 = cs(z0), cs(z1)
        if z0.is_zero_exactly() and z1.is_zero_exactly():
            raise ValueError("(0:0) is not a point of the sphere")
        if z1.exact:
            if z1.is_zero_exactly():
                return INF
        elif abs(z1) <= as_tol(tol).eps * max(1.0, abs(z0)):
            return INF
        return cls(z0 / z1)

    @classmethod
    def of(cls, z) -> "SpherePoint":
        if isinstance(z, SpherePoint):
            return z
        if z is None or (isinstance(z, str) and z.lower() in ("inf", "infinity", "oo")):
            return INF
        return cls(cs(z))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def homogeneous(self) -> Tuple[ComplexScalar, ComplexScalar]:
        return (ONE, ZERO) if self.value is None else (self.value, ONE)

    def sort_key(self):
        if self.value is None:
            return (1, 0.0, 0.0)
        return (0, float(self.value.re), float(self.value.im))

    def equals(self, other: "SpherePoint", tol: TolLike = None) -> bool:
        if self.value is None or other.value is None:
            if self.value is None and other.value is None:
                return True
            finite = self.value if self.value is not None else other.value
            if finite.exact:
                return False
            return chordal(self, other) <= as_tol(tol).eps
        if self.value.exact and other.value.exact:
            return self.value == other.value
        return chordal(self, other) <= as_tol(tol).eps

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return "SpherePoint(inf)" if self.value is None else f"SpherePoint({self.value!r})"


INF = SpherePoint(None)


def chordal(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal distance on the unit sphere (antipodal points are 2 apart)."""
    if p.value is None and q.value is None:
        return 0.0
    if p.value is None or q.value is None:
        z = complex(q.value if p.value is None else p.value)
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    z, w = complex(p.value), complex(q.value)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def chordal_complex(z: complex, w: complex) -> float:
    """Chordal distance between two finite points given as Python complex numbers."""
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


# ----------------------------------------------------------------------
# group elements


@dataclass(frozen=True, eq=False)
class Moebius:
    """A determinant-one matrix ``[[a, b], [c, d]]`` taken modulo sign.

    Build instances with :meth:`from_entries` (normalizes the determinant)
    rather than the raw constructor.
    """

    a: ComplexScalar
    b: ComplexScalar
    c: ComplexScalar
    d: ComplexScalar

    @classmethod
    def from_entries(cls, a, b, c, d) -> "Moebius":
        a, b, c, d = cs(a), cs(b), cs(c), cs(d)
        det = a * d - b * c
        if det.is_zero_exactly() or (not det.exact and abs(det) == 0.0):
            raise ValueError("singular matrix does not define a Moebius transformation")
        if det.exact and det == ONE:
            return cls(a, b, c, d)
        root = det.sqrt()
        return cls(a / root, b / root, c / root, d / root)

    @classmethod
    def identity(cls) -> "Moebius":
        return IDENTITY

    @classmethod
    def diag(cls, alpha) -> "Moebius":
        alpha = cs(alpha)
        return cls.from_entries(alpha, 0, 0, ONE / alpha)

    @classmethod
    def translation(cls, t) -> "Moebius":
        return cls(ONE, cs(t), ZERO, ONE)

    @classmethod
    def sending_to_zero_inf(cls, p: SpherePoint, q: SpherePoint) -> "Moebius":
        """A transformation with p -> 0 and q -> infinity."""
        if p.is_infinite:
            # z -> 1/(z - q)
            return cls.from_entries(0, 1, 1, -q.value)
        if q.is_infinite:
            return cls.from_entries(1, -p.value, 0, 1)
        return cls.from_entries(1, -p.value, 1, -q.value)

    @property
    def entries(self) -> Tuple[ComplexScalar, ...]:
        return (self.a, self.b, self.c, self.d)

    @property
    def exact(self) -> bool:
        return all(x.exact for x in self.entries)

    def trace(self) -> ComplexScalar:
        return self.a + self.d

    def det(self) -> ComplexScalar:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return compose(self, other)

    def equals(self, other: "Moebius", tol: TolLike = None) -> bool:
        return psl_distance(self, other) <= (0.0 if self.exact and other.exact
                                             else as_tol(tol).eps * self._scale(other))

    def _scale(self, other: "Moebius") -> float:
        return max(1.0, *(abs(x) for x in self.entries + other.entries))

    def is_identity(self, tol: TolLike = None) -> bool:
        return self.equals(IDENTITY, tol)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __call__(self, p):
        return act(self, SpherePoint.of(p))

    def as_complex(self) -> Tuple[complex, complex, complex, complex]:
        return tuple(complex(x) for x in self.entries)

    def __repr__(self):
        return f"Moebius([[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]])"


IDENTITY = Moebius(ONE, ZERO, ZERO, ONE)


def psl_distance(m1: Moebius, m2: Moebius) -> float:
    """Max-entry distance, minimized over the sign ambiguity."""
    if m1.exact and m2.exact:
        if m1.entries == m2.entries or m1.entries == tuple(-x for x in m2.entries):
            return 0.0
    e1 = m1.as_complex()
    e2 = m2.as_complex()
    plus = max(abs(x - y) for x, y in zip(e1, e2))
    minus = max(abs(x + y) for x, y in zip(e1, e2))
    return min(plus, minus)


def compose(m1: Moebius, m2: Moebius) -> Moebius:
    """``m1 o m2`` (apply ``m2`` first)."""
    a = m1.a * m2.a + m1.b * m2.c
    b = m1.a * m2.b + m1.b * m2.d
    c = m1.c * m2.a + m1.d * m2.c
    d = m1.c * m2.b + m1.d * m2.d
    if m1.exact and m2.exact:
        return Moebius(a, b, c, d)
    return Moebius.from_entries(a, b, c, d)


def inverse(m: Moebius) -> Moebius:
    return Moebius(m.d, -m.b, -m.c, m.a)


def conjugate_by(g: Moebius, m: Moebius) -> Moebius:
    """``g m g^-1``."""
    return compose(compose(g, m), inverse(g))


def commutator(m1: Moebius, m2: Moebius) -> Moebius:
    return compose(compose(m1, m2), compose(inverse(m1), inverse(m2)))


def power(m: Moebius, n: int) -> Moebius:
    if n < 0:
        return power(inverse(m), -n)
    result, base = IDENTITY, m
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def act(m: Moebius, p) -> SpherePoint:
    p = SpherePoint.of(p)
    z0, z1 = p.homogeneous()
    return SpherePoint.from_homogeneous(m.a * z0 + m.b * z1, m.c * z0 + m.d * z1)


def act_complex(m: Moebius, w: complex) -> complex:
    """Float-only action on a finite point; returns ``inf`` for the pole."""
    a, b, c, d = m.as_complex()
    den = c * w + d
    if den == 0:
        return complex(math.inf, 0.0)
    return (a * w + b) / den


# ----------------------------------------------------------------------
# fixed points and dynamical type


def fixed_points(m: Moebius, tol: TolLike = None) -> Union[List[SpherePoint], _EveryPoint]:
    """Fixed points sorted by :meth:`SpherePoint.sort_key`; ``EVERY_POINT`` for the identity."""
    if m.is_identity(tol):
        return EVERY_POINT
    eps = as_tol(tol).eps
    a, b, c, d = m.entries

    def small(x: ComplexScalar) -> bool:
        return x.is_zero_exactly() if x.exact else abs(x) <= eps * max(1.0, abs(a), abs(d))

    if small(c):
        diff = d - a
        if small(diff):
            return [INF]
        pts = [SpherePoint(b / diff), INF]
    else:
        disc = (a + d) * (a + d) - 4
        half = (a - d) / (2 * c)
        if small(disc):
            return [SpherePoint(half)]
        root = disc.sqrt() / (2 * c)
        pts = [SpherePoint(half + root), SpherePoint(half - root)]
    return sorted(pts, key=SpherePoint.sort_key)


class ElementKind(str, Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class ElementType:
    kind: ElementKind
    order: Optional[int] = None

    def __str__(self):
        if self.kind is ElementKind.ELLIPTIC:
            return f"elliptic(order={self.order})"
        return self.kind.value


def classify_element(m: Moebius, max_order: int = 200, tol: TolLike = None) -> ElementType:
    eps = as_tol(tol).eps
    t2 = m.trace() * m.trace()
    if approx_eq(t2, 4, eps * 4):
        if m.is_identity(tol):
            return ElementType(ElementKind.IDENTITY, 1)
        return ElementType(ElementKind.PARABOLIC)
    real = t2.im == 0 if t2.exact else abs(float(t2.im)) <= eps * max(1.0, abs(t2))
    if real and -eps <= float(t2.re) < 4:
        t = m.trace()
        lam = (t + (t * t - 4).sqrt()) / 2
        # eigenvalue ratio lam/lam^-1 is the rotation multiplier
        order = root_of_unity_order(lam * lam, max_order, tol)
        return ElementType(ElementKind.ELLIPTIC, order)
    return ElementType(ElementKind.LOXODROMIC)


def element_order(m: Moebius, max_order: int = 200, tol: TolLike = None) -> Optional[int]:
    """Order in PSL(2,C), or ``None`` if infinite or above ``max_order``."""
    et = classify_element(m, max_order, tol)
    if et.kind is ElementKind.IDENTITY:
        return 1
    if et.kind is ElementKind.ELLIPTIC:
        return et.order
    return None


def is_involution(m: Moebius, tol: TolLike = None) -> bool:
    return element_order(m, 2, tol) == 2


def commute(m1: Moebius, m2: Moebius, tol: TolLike = None) -> bool:
    return compose(m1, m2).equals(compose(m2, m1), tol)


class PairClass(str, Enum):
    NOT_COMMUTING = "not_commuting"
    SHARED_FIXED_SET = "shared_fixed_set"
    KLEIN_FOUR_PAIR = "klein_four_pair"


def _disjoint(ps: Sequence[SpherePoint], qs: Sequence[SpherePoint], tol) -> bool:
    return not any(p.equals(q, tol) for p in ps for q in qs)


def commuting_pair_class(m1: Moebius, m2: Moebius, tol: TolLike = None) -> PairClass:
    if not commute(m1, m2, tol):
        return PairClass.NOT_COMMUTING
    if is_involution(m1, tol) and is_involution(m2, tol):
        f1, f2 = fixed_points(m1, tol), fixed_points(m2, tol)
        if _disjoint(f1, f2, tol):
            return PairClass.KLEIN_FOUR_PAIR
    return PairClass.SHARED_FIXED_SET


# ----------------------------------------------------------------------
# normal forms


def _common_fixed_points(gens: Sequence[Moebius], tol) -> Union[List[SpherePoint], _EveryPoint]:
    common: Union[List[SpherePoint], _EveryPoint] = EVERY_POINT
    for g in gens:
        fp = fixed_points(g, tol)
        if fp is EVERY_POINT:
            continue
        if common is EVERY_POINT:
            common = list(fp)
        else:
            common = [p for p in common if any(p.equals(q, tol) for q in fp)]
    return common


def common_fixed_points(gens: Sequence[Moebius], tol: TolLike = None):
    """Points fixed by every generator (``EVERY_POINT`` if all are trivial)."""
    return _common_fixed_points(gens, tol)


def klein_four_conjugator(involutions: Sequence[Moebius], tol: TolLike = None) -> Moebius:
    """Send the axes of three commuting involutions to {0,inf}, {1,-1}, {i,-i}."""
    pairs = [fixed_points(m, tol) for m in involutions[:2]]
    pairs.sort(key=lambda ps: [p.sort_key() for p in ps])
    (p1, q1), (p2, _q2) = pairs
    g = Moebius.sending_to_zero_inf(p1, q1)
    # rescale so that p2 lands on 1
    image = act(g, p2).value
    return compose(Moebius.diag(ONE / image.sqrt()), g)


def conjugate_to_normal_form(gens: Sequence[Moebius], tol: TolLike = None
                             ) -> Tuple[Moebius, List[Moebius]]:
    """Return ``(g, [g m g^-1 for m in gens])`` with the images in normal form.

    A common fixed pair goes to ``{0, inf}`` (diagonal images), a single
    common fixed point to ``inf`` (upper triangular images) and a Klein four
    pair to the standard cube axes.  Otherwise ``g`` is the identity.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    common = _common_fixed_points(gens, tol)
    g = IDENTITY
    if common is EVERY_POINT:
        pass
    elif len(common) == 2:
        p, q = sorted(common, key=SpherePoint.sort_key)
        g = Moebius.sending_to_zero_inf(p, q)
    elif len(common) == 1:
        (p,) = common
        if not p.is_infinite:
            g = Moebius.from_entries(0, 1, 1, -p.value)
    else:
        invs = [m for m in gens if not m.is_identity(tol)]
        pair = _klein_pair(invs, tol)
        if pair is not None:
            g = klein_four_conjugator(pair, tol)
    return g, [conjugate_by(g, m) for m in gens]


def _klein_pair(gens: Sequence[Moebius], tol) -> Optional[Tuple[Moebius, Moebius]]:
    """Two generators spanning a Klein four group containing every generator."""
    for i, m1 in enumerate(gens):
        for m2 in gens[i + 1:]:
            if commuting_pair_class(m1, m2, tol) is PairClass.KLEIN_FOUR_PAIR:
                m3 = compose(m1, m2)
                group = (IDENTITY, m1, m2, m3)
                if all(any(x.equals(y, tol) for y in group) for x in gens):
                    return m1, m2
    return None


def is_diagonal(m: Moebius, tol: TolLike = None) -> bool:
    return _small(m.b, m, tol) and _small(m.c, m, tol)


def is_upper_triangular(m: Moebius, tol: TolLike = None) -> bool:
    return _small(m.c, m, tol)


def is_unipotent_upper(m: Moebius, tol: TolLike = None) -> bool:
    """Upper triangular with both diagonal entries equal to the same sign."""
    return is_upper_triangular(m, tol) and approx_eq(m.a, m.d, as_tol(tol).eps * max(1.0, abs(m.a)))


def _small(x: ComplexScalar, m: Moebius, tol) -> bool:
    if x.exact:
        return x.is_zero_exactly()
    return abs(x) <= as_tol(tol).eps * max(1.0, abs(m.a), abs(m.d))
