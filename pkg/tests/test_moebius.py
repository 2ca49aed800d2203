import math

import pytest
from hypothesis import given, strategies as st

from holocurve.moebius import (
    EVERY_POINT,
    INF,
    ElementKind,
    Moebius,
    PairClass,
    SpherePoint,
    act,
    chordal,
    classify_element,
    commutator,
    commuting_pair_class,
    compose,
    conjugate_by,
    conjugate_to_normal_form,
    fixed_points,
    inverse,
    is_diagonal,
    is_unipotent_upper,
    power,
)
from holocurve.numerics import cs

parts = st.floats(-3, 3, allow_nan=False)


@st.composite
def moebius(draw):
    """Upper translation * diagonal * lower translation: always invertible."""
    t = complex(draw(parts), draw(parts))
    s = complex(draw(parts), draw(parts))
    alpha = complex(draw(st.floats(0.3, 3)), draw(parts))
    upper = Moebius.translation(cs(t))
    lower = Moebius.from_entries(1, 0, cs(s), 1)
    return compose(compose(upper, Moebius.diag(cs(alpha))), lower)


def test_sign_ambiguity():
    m = Moebius.from_entries(1, 2, 3, 7)
    neg = Moebius(-m.a, -m.b, -m.c, -m.d)
    assert m == neg


def test_from_entries_normalizes_det():
    m = Moebius.from_entries(2, 0, 0, 2)
    assert m.is_identity()
    with pytest.raises(ValueError):
        Moebius.from_entries(1, 2, 2, 4)


@given(moebius(), moebius())
def test_group_laws(m, n):
    assert compose(m, inverse(m)).is_identity(1e-7)
    assert inverse(compose(m, n)).equals(compose(inverse(n), inverse(m)), 1e-7)


@given(moebius())
def test_fixed_points_are_fixed(m):
    pts = fixed_points(m, 1e-9)
    if pts is EVERY_POINT:
        return
    for p in pts:
        assert chordal(act(m, p), p) < 1e-6


def test_fixed_points_examples():
    assert fixed_points(Moebius.diag(2)) == [SpherePoint(cs(0)), INF]
    assert fixed_points(Moebius.translation(1)) == [INF]
    assert fixed_points(Moebius.identity()) is EVERY_POINT


@pytest.mark.parametrize("m,kind,order", [
    (Moebius.identity(), ElementKind.IDENTITY, 1),
    (Moebius.diag(cs(0, 1)), ElementKind.ELLIPTIC, 2),
    (Moebius.translation(3), ElementKind.PARABOLIC, None),
    (Moebius.diag(2), ElementKind.LOXODROMIC, None),
    (Moebius.diag(cs(complex(math.cos(math.pi / 5), math.sin(math.pi / 5)))), ElementKind.ELLIPTIC, 5),
])
def test_classify(m, kind, order):
    t = classify_element(m)
    assert t.kind is kind and t.order == order


def test_pair_classes():
    i = Moebius.diag(cs(0, 1))
    swap = Moebius.from_entries(0, cs(0, 1), cs(0, 1), 0)
    assert commuting_pair_class(i, swap) is PairClass.KLEIN_FOUR_PAIR
    assert commuting_pair_class(Moebius.diag(2), Moebius.diag(3)) is PairClass.SHARED_FIXED_SET
    assert commuting_pair_class(Moebius.diag(2), Moebius.translation(1)) is PairClass.NOT_COMMUTING


@given(moebius(), st.floats(0.2, 3), st.floats(0.2, 3))
def test_normal_form_diagonalizes(g, r1, r2):
    gens = [conjugate_by(g, Moebius.diag(cs(r1 + 0.1))), conjugate_by(g, Moebius.diag(cs(complex(0, r2))))]
    _, normal = conjugate_to_normal_form(gens, 1e-7)
    assert all(is_diagonal(m, 1e-6) for m in normal)


def test_normal_form_unipotent():
    g = Moebius.from_entries(1, 2, 3, 7)
    gens = [conjugate_by(g, Moebius.translation(1)), conjugate_by(g, Moebius.translation(cs(0, 1)))]
    _, normal = conjugate_to_normal_form(gens)
    assert all(is_unipotent_upper(m, 1e-9) for m in normal)


def test_power_and_commutator():
    m = Moebius.diag(2)
    assert power(m, 3).equals(Moebius.diag(8))
    assert power(m, -2).equals(Moebius.diag(cs("1/4")))
    assert commutator(m, Moebius.diag(5)).is_identity()


def test_sphere_point_parsing():
    assert SpherePoint.of("inf").is_infinite
    assert SpherePoint.from_homogeneous(cs(1), cs(0)).is_infinite
    assert SpherePoint.of(2).equals(SpherePoint.of(2.0 + 1e-12))
