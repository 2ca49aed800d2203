"""Lattices in C, multiplicative groups A in C^x, and grains.

A grain for a lattice ``L`` and a group ``A`` is a nonzero ``c`` with
``exp(c * lam)`` in ``A`` for every period ``lam``; equivalently ``c L`` lies in
``A' = {alpha : exp(alpha) in A}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .numerics import ONE, ComplexScalar, TolLike, as_tol, cs

DEFAULT_EXP_BOUND = 20

_ZETA4 = 1j
_ZETA6 = complex(0.5, math.sqrt(3) / 2)
_ZETA3 = complex(-0.5, math.sqrt(3) / 2)


@dataclass(frozen=True)
class Lattice:
    periods: Tuple[ComplexScalar, ComplexScalar]
    reduced: bool = False

    @classmethod
    def of(cls, p1, p2, tol: TolLike = None) -> "Lattice":
        """Reduced lattice spanned by two periods."""
        return reduce_basis(p1, p2, tol)

    @property
    def tau(self) -> ComplexScalar:
        return self.periods[1] / self.periods[0]

    def area(self) -> float:
        w1, w2 = (complex(p) for p in self.periods)
        return abs((w1.conjugate() * w2).imag)

    def scaled(self, c) -> "Lattice":
        c = cs(c)
        return reduce_basis(c * self.periods[0], c * self.periods[1])

    def coordinates(self, z) -> Tuple:
        """Real coordinates ``(m, n)`` with ``z = m*w1 + n*w2``."""
        z = cs(z)
        w1, w2 = self.periods
        if z.exact and w1.exact and w2.exact:
            det = w1.re * w2.im - w1.im * w2.re
            m = (z.re * w2.im - z.im * w2.re) / det
            n = (w1.re * z.im - w1.im * z.re) / det
            return m, n
        zc, a, b = complex(z), complex(w1), complex(w2)
        det = a.real * b.imag - a.imag * b.real
        m = (zc.real * b.imag - zc.imag * b.real) / det
        n = (a.real * zc.imag - a.imag * zc.real) / det
        return m, n

    def integer_coordinates(self, z, tol: TolLike = None) -> Optional[Tuple[int, int]]:
        """Integer coordinates of a lattice vector, or ``None`` if ``z`` is off the lattice."""
        m, n = self.coordinates(z)
        if isinstance(m, Fraction) and isinstance(n, Fraction):
            if m.denominator == 1 and n.denominator == 1:
                return int(m), int(n)
            return None
        eps = as_tol(tol).eps
        rm, rn = round(m), round(n)
        slack = eps * max(1.0, abs(m), abs(n))
        if abs(m - rm) <= slack and abs(n - rn) <= slack:
            return int(rm), int(rn)
        return None

    def contains(self, z, tol: TolLike = None) -> bool:
        return self.integer_coordinates(z, tol) is not None

    def reduce_mod(self, z) -> complex:
        """Representative of ``z`` modulo the lattice, nearest to the origin among neighbours."""
        m, n = self.coordinates(z)
        w1, w2 = (complex(p) for p in self.periods)
        base = complex(z) - math.floor(float(m)) * w1 - math.floor(float(n)) * w2
        return min((base - i * w1 - j * w2 for i in (0, 1) for j in (0, 1)), key=abs)

    def distance_mod(self, z, w) -> float:
        """Distance between ``z`` and ``w`` in ``C / lattice``."""
        return abs(self.reduce_mod(cs(complex(z) - complex(w))))

    def equals(self, other: "Lattice", tol: TolLike = None) -> bool:
        return is_sublattice(self, other, tol) == 1


def reduce_basis(p1, p2, tol: TolLike = None) -> Lattice:
    """Gauss reduction: ``|w1| <= |w2|``, ``|Re(w2/w1)| <= 1/2``, ``Im(w2/w1) > 0``."""
    w1, w2 = cs(p1), cs(p2)
    eps = as_tol(tol).eps
    if w1.is_zero_exactly() or w2.is_zero_exactly():
        raise ValueError("periods must be nonzero")
    tau = w2 / w1
    if tau.exact:
        if tau.im == 0:
            raise ValueError("periods are linearly dependent over R")
    elif abs(float(tau.im)) <= eps * max(1.0, abs(tau)):
        raise ValueError("periods are linearly dependent over R")
    if float(tau.im) < 0:
        w2 = -w2
    for _ in range(10_000):
        m = int(round((w2 / w1).re))
        if m:
            w2 = w2 - m * w1
        # approx ties are left alone so the loop cannot cycle
        slack = 0 if w2.exact and w1.exact else eps * float(w1.abs2())
        if float(w2.abs2()) < float(w1.abs2()) - slack:
            w1, w2 = w2, -w1
            continue
        break
    else:  # pragma: no cover - reduction always terminates
        raise RuntimeError("lattice reduction did not terminate")
    return Lattice((w1, w2), reduced=True)


def symmetry_order(lattice: Lattice, tol: TolLike = None) -> int:
    """Largest n in {2, 4, 6} with exp(2 pi i / n) * L = L."""
    if not lattice.reduced:
        lattice = reduce_basis(*lattice.periods, tol)
    eps = as_tol(tol).eps
    tau = lattice.tau
    if tau.exact:
        if tau == cs(0, 1):
            return 4
        return 2  # hexagonal tau is irrational
    t = complex(tau)
    if abs(t - _ZETA4) <= eps:
        return 4
    if abs(t - _ZETA6) <= eps or abs(t - _ZETA3) <= eps:
        return 6
    return 2


def is_sublattice(sub: Lattice, sup: Lattice, tol: TolLike = None) -> Optional[int]:
    """Index ``[sup : sub]`` when ``sub`` is contained in ``sup``, else ``None``."""
    coords = [sup.integer_coordinates(p, tol) for p in sub.periods]
    if any(c is None for c in coords):
        return None
    (m1, n1), (m2, n2) = coords
    index = abs(m1 * n2 - m2 * n1)
    return index or None


# ----------------------------------------------------------------------
# multiplicative groups


@dataclass(frozen=True)
class MultGroup:
    """Finitely generated subgroup of C^x, optionally with all r-th roots of unity."""

    generators: Tuple[ComplexScalar, ...]
    torsion: Optional[int] = None

    def __post_init__(self):
        gens = tuple(cs(g) for g in self.generators)
        if any(g.is_zero_exactly() or abs(g) == 0.0 for g in gens):
            raise ValueError("generators of a multiplicative group must be nonzero")
        if self.torsion is not None and self.torsion < 1:
            raise ValueError("torsion order must be positive")
        object.__setattr__(self, "generators", gens)


def _is_torsion_root(x: complex, r: Optional[int], rel: float) -> bool:
    if abs(x - 1) <= rel:
        return True
    if r is None or r == 1:
        return False
    if abs(abs(x) - 1) > rel:
        return False
    k = round(math.atan2(x.imag, x.real) * r / (2 * math.pi))
    zeta = complex(math.cos(2 * math.pi * k / r), math.sin(2 * math.pi * k / r))
    return abs(x - zeta) <= rel


def member_mult(x, group: MultGroup, exp_bound: int = DEFAULT_EXP_BOUND,
                tol: TolLike = None) -> bool:
    """Whether ``x = zeta * prod(g_i ** e_i)`` with ``|e_i| <= exp_bound``.

    ``False`` means only "not found within the bound".
    """
    x = cs(x)
    if x.is_zero_exactly() or abs(x) == 0.0:
        raise ValueError("zero is never in a multiplicative group")
    eps = as_tol(tol).eps
    if x.exact and all(g.exact for g in group.generators) and group.torsion in (None, 1, 2, 4):
        return _member_exact(x, group, exp_bound)
    target = complex(x)
    gens = [complex(g) for g in group.generators]
    ranges = [range(-exp_bound, exp_bound + 1)] * len(gens)
    for exps in itertools.product(*ranges):
        prod = complex(1.0)
        for g, e in zip(gens, exps):
            prod *= g ** e
        ratio = target / prod
        if _is_torsion_root(ratio, group.torsion, eps * max(1.0, sum(abs(e) for e in exps))):
            return True
    return False


def _member_exact(x: ComplexScalar, group: MultGroup, exp_bound: int) -> bool:
    r = group.torsion or 1
    roots = [ONE, cs(-1), cs(0, 1), cs(0, -1)][: {1: 1, 2: 2, 4: 4}[r]]
    ranges = [range(-exp_bound, exp_bound + 1)] * len(group.generators)
    for exps in itertools.product(*ranges):
        prod = ONE
        for g, e in zip(group.generators, exps):
            prod = prod * g ** e
        if any(x == z * prod for z in roots):
            return True
    return False


# ----------------------------------------------------------------------
# grains


@dataclass(frozen=True)
class GrainSet:
    lattice: Lattice
    log_lattice: Lattice
    grains: Tuple[ComplexScalar, ...] = field(default_factory=tuple)


def is_grain(c, lattice: Lattice, group: MultGroup, exp_bound: int = DEFAULT_EXP_BOUND,
             tol: TolLike = None) -> bool:
    c = cs(c)
    if c.is_zero_exactly() or abs(c) == 0.0:
        raise ValueError("grain must be nonzero")
    return all(member_mult((c * lam).exp(), group, exp_bound, tol) for lam in lattice.periods)


def grains_enumerate(lattice: Lattice, log_lattice: Lattice, height_bound: int,
                     tol: TolLike = None) -> GrainSet:
    """All grains ``c = a / w1`` with ``a`` in ``log_lattice`` of coefficient height <= bound.

    ``log_lattice`` plays the role of ``A'``; a candidate is kept when both
    ``c * w1`` and ``c * w2`` lie in it.
    """
    w1, w2 = lattice.periods
    a1, a2 = log_lattice.periods
    found: List[ComplexScalar] = []
    for m in range(-height_bound, height_bound + 1):
        for n in range(-height_bound, height_bound + 1):
            if m == 0 and n == 0:
                continue
            a = m * a1 + n * a2
            c = a / w1
            if log_lattice.contains(c * w2, tol):
                found.append(c)
    found.sort(key=lambda z: (abs(z), float(z.re), float(z.im)))
    return GrainSet(lattice, log_lattice, tuple(found))
