import math

import pytest
from hypothesis import given, settings, strategies as st

from holocurve.curves import CurveDescriptor, ModelGeometry, StructureError, build_developing_system
from holocurve.lifts import (
    EXCEEDS_CAP,
    RepClass,
    Representation,
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
from holocurve.moebius import EVERY_POINT, INF, Moebius, SpherePoint, act, conjugate_by
from holocurve.numerics import cs
from holocurve.subgroups import KLEIN_FOUR, OutsideCatalogue

SQUARE = CurveDescriptor.elliptic(1, cs(0, 1))
HEXC = CurveDescriptor.elliptic(1, complex(0.5, math.sqrt(3) / 2))
KLEIN = (KLEIN_FOUR[1], KLEIN_FOUR[2])


def rep(*images, base=SQUARE):
    return Representation(base, tuple(images))


def test_rep_class_examples():
    assert rep_class(rep(Moebius.identity(), Moebius.identity())) is RepClass.TRIVIAL_IMAGE
    assert rep_class(rep(Moebius.diag(2), Moebius.diag(cs(0, 3)))) is RepClass.DIAGONAL_TYPE
    assert rep_class(rep(*KLEIN)) is RepClass.KLEIN_FOUR
    assert rep_class(rep(Moebius.translation(1), Moebius.translation(2))) is RepClass.UNIPOTENT_TYPE


def test_non_commuting_rejected():
    with pytest.raises(RepresentationError):
        rep(Moebius.diag(2), Moebius.translation(1))
    with pytest.raises(RepresentationError):
        rep(Moebius.diag(2))


@settings(max_examples=20, deadline=None)
@given(st.floats(0.2, 3), st.floats(-2, 2), st.floats(-2, 2))
def test_rep_class_conjugation_invariant(a, b, c):
    g = Moebius.from_entries(cs(complex(a, b)), cs(c), cs(0.3), 1)
    for images in (KLEIN, (Moebius.diag(2), Moebius.diag(cs(0, 3))),
                   (Moebius.translation(1), Moebius.translation(cs(0, 1)))):
        moved = rep(*(conjugate_by(g, m) for m in images))
        assert rep_class(moved, tol=1e-7) is rep_class(rep(*images))


def test_sections():
    assert parallel_sections(rep(Moebius.identity(), Moebius.identity())) is EVERY_POINT
    diag = parallel_sections(rep(Moebius.diag(2), Moebius.diag(3)))
    assert diag == [SpherePoint(cs(0)), INF]
    assert parallel_sections(rep(Moebius.translation(1), Moebius.translation(2))) == [INF]
    assert parallel_sections(rep(*KLEIN)) == []


def test_sections_fixed_by_every_image():
    g = Moebius.from_entries(1, 2, 3, 7)
    r = rep(conjugate_by(g, Moebius.diag(2)), conjugate_by(g, Moebius.diag(5)))
    for p in parallel_sections(r):
        assert all(act(m, p).equals(p) for m in r.images)


def test_orbits():
    k = rep(*KLEIN)
    assert [p.is_infinite for p in finite_orbits(k, 0)] == [False, True]
    assert len(finite_orbits(k, 2)) == 4
    assert finite_orbits(rep(Moebius.diag(2), Moebius.diag(3)), 2) is EXCEEDS_CAP


def test_triviality():
    w = is_trivial_bundle(rep(Moebius.translation(1), Moebius.translation(cs(0, 1))))
    assert w.b == cs(1)
    assert is_trivial_bundle(rep(Moebius.translation(1), Moebius.translation(2))) is None
    assert is_trivial_bundle(rep(*KLEIN)) is None
    assert is_trivial_bundle(rep(Moebius.identity(), Moebius.identity())).b == cs(0)


def test_reduced_periods_reassign_images():
    # images given on (1, 1+i) are moved onto the reduced basis (1, i)
    r = Representation.on_periods([1, cs(1, 1)], [Moebius.translation(1), Moebius.translation(cs(1, 1))])
    assert r.images[1].equals(Moebius.translation(cs(0, 1)))
    assert is_trivial_bundle(r).b == cs(1)


def test_lift_holonomy_pairs():
    ds = build_developing_system(ModelGeometry("translations"), SQUARE, c=2)
    lg = lift(ds, rep(*KLEIN))
    assert [(h.b, m) for h, m in lg.holonomy] == [(cs(2), KLEIN[0]), (cs(0, 2), KLEIN[1])]
    trivial = lift(ds, rep(Moebius.identity(), Moebius.identity()))
    assert all(m.is_identity() for _, m in trivial.holonomy)
    with pytest.raises(StructureError):
        lift(ds, Representation(HEXC, KLEIN))


@pytest.mark.parametrize("base,n", [(HEXC, 6), (SQUARE, 4)])
def test_klein_lifted_automorphisms(base, n):
    ds = build_developing_system(ModelGeometry("projective"), base, c=0)
    res = lifted_automorphisms(lift(ds, Representation(base, KLEIN)))
    assert res.group == f"C_2 × C_2 × (C_{n} ⋉ ℂ)"
    assert res.component_order == n


def test_translation_base_has_no_components():
    ds = build_developing_system(ModelGeometry("translations"), HEXC, c=1)
    res = lifted_automorphisms(lift(ds, Representation(HEXC, KLEIN)))
    assert res.group == "C_2 × C_2 × ℂ"


def test_unipotent_lift_scaling():
    ds = build_developing_system(ModelGeometry("affine"), SQUARE)
    res = lifted_automorphisms(lift(ds, rep(Moebius.translation(1), Moebius.translation(cs(0, 1)))))
    assert res.component_order == 4
    report = orbit_structure(lift(ds, rep(Moebius.translation(1), Moebius.translation(cs(0, 1)))))
    assert report.orbit_count == 2


def test_genus_two_with_user_actions():
    g2 = CurveDescriptor(2)
    images = (Moebius.diag(2), Moebius.diag(3), Moebius.diag(5), Moebius.diag(7))
    ds = build_developing_system(ModelGeometry("projective"), g2, holonomy=images)
    r = Representation(g2, images)
    swap_pairs = [[[(2, 1)], [(3, 1)], [(0, 1)], [(1, 1)]]]
    inverse_all = [[[(j, -1)] for j in range(4)]]
    res = lifted_automorphisms(lift(ds, r), base_actions=swap_pairs + inverse_all)
    assert [c.found for c in res.components] == [False, True]
    assert "Aut(E)" in res.exact_sequence


def test_orbit_reports():
    ds = build_developing_system(ModelGeometry("affine"), SQUARE)
    trivial = orbit_structure(lift(ds, rep(Moebius.identity(), Moebius.identity())))
    assert trivial.summary.endswith("homogeneous fiber") and trivial.open_orbit
    ds_t = build_developing_system(ModelGeometry("translations"), SQUARE, c=1)
    no_swap = orbit_structure(lift(ds_t, rep(Moebius.diag(2), Moebius.diag(3))))
    assert no_swap.orbit_count == 3
    c2 = orbit_structure(lift(ds_t, rep(Moebius.diag(cs(0, 1)), Moebius.identity())))
    assert c2.orbit_count == 2


def test_other_is_outside_catalogue():
    g2 = CurveDescriptor(2)
    images = (Moebius.diag(2), Moebius.diag(3), Moebius.translation(1), Moebius.translation(2))
    ds = build_developing_system(ModelGeometry("projective"), g2, holonomy=images)
    with pytest.raises(OutsideCatalogue):
        lifted_automorphisms(lift(ds, Representation(g2, images)))


def test_classify_surface():
    assert "PSL(3,ℂ)" in classify_surface("rational_homogeneous", "P2").model_group
    assert classify_surface("rational_homogeneous", "P1xP1").model_group.startswith("ℤ_2 ⋉")
    ds = build_developing_system(ModelGeometry("translations"), SQUARE, c=1)
    rec = classify_surface("ruled", structure=ds, rep=rep(*KLEIN))
    assert rec.lifted is not None and "representation variety" in rec.moduli
    with pytest.raises(ValueError):
        classify_surface("k3")
