import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from holocurve.curves import (
    NONE_ADMITTED,
    CurveDescriptor,
    DevFamily,
    ModelGeometry,
    StructureError,
    automorphism_group,
    build_developing_system,
    classify_structures,
    is_conjugate,
    moduli_coordinate,
    perturb_holonomy,
    schwarzian_central,
    schwarzian_exact,
    schwarzian_fd,
    verify_equivariance,
)
from holocurve.lattices import Lattice, MultGroup
from holocurve.moebius import Moebius, act_complex, compose
from holocurve.numerics import cs

HEX = complex(0.5, math.sqrt(3) / 2)
SQUARE = CurveDescriptor.elliptic(1, cs(0, 1))
GRAIN_CURVE = CurveDescriptor.elliptic(cs(0, 2 * math.pi), math.log(2))
A2 = ModelGeometry("discrete_affine", group=MultGroup((2,)))


def test_translations_holonomy():
    ds = build_developing_system(ModelGeometry("translations"), SQUARE, c=1)
    assert [(h.a, h.b) for h in ds.holonomy] == [(cs(1), cs(1)), (cs(1), cs(0, 1))]
    report = verify_equivariance(ds)
    assert report.passed and report.max_residual == 0.0


def test_projective_unipotent_at_zero():
    ds = build_developing_system(ModelGeometry("projective"), SQUARE, c=0)
    assert ds.family is DevFamily.AFFINE_LINEAR
    assert ds.holonomy[0].equals(Moebius.translation(1))
    assert ds.holonomy[1].equals(Moebius.translation(cs(0, 1)))


def test_cstar_exponential():
    curve = CurveDescriptor.elliptic(cs(0, 2 * math.pi), 3)
    ds = build_developing_system(ModelGeometry("cstar"), curve, c=1, k=1)
    assert verify_equivariance(ds).max_residual <= 1e-9


def test_zn_torus_exact_zero_residual():
    model = ModelGeometry("zn_torus", n=4, lattice0=Lattice.of(1, cs(0, 1)))
    ds = build_developing_system(model, SQUARE, c=cs(2, 1))
    assert verify_equivariance(ds).max_residual <= 1e-15


def test_errors():
    with pytest.raises(StructureError):
        build_developing_system(A2, GRAIN_CURVE, family="exponential", c=cs("1/2"))
    with pytest.raises(StructureError):
        build_developing_system(ModelGeometry("translations"), SQUARE, c=0)
    with pytest.raises(StructureError):
        ModelGeometry("zn_torus", n=3, lattice0=Lattice.of(1, cs(0, 1)))
    with pytest.raises(StructureError):
        build_developing_system(ModelGeometry("cstar"), CurveDescriptor(2), c=1)
    with pytest.raises(StructureError):
        build_developing_system(ModelGeometry("zn_torus", n=2, lattice0=Lattice.of(1, cs(0, 1))),
                                SQUARE, c=0)


def test_fault_detected():
    ds = build_developing_system(ModelGeometry("cstar"), SQUARE, c=cs(0.4, 0.2))
    assert not verify_equivariance(perturb_holonomy(ds)).passed


def test_genus_two_projective():
    images = (Moebius.diag(2), Moebius.diag(3), Moebius.translation(1), Moebius.translation(2))
    ds = build_developing_system(ModelGeometry("projective"), CurveDescriptor(2), holonomy=images)
    assert verify_equivariance(ds).passed
    assert automorphism_group(ds).finite
    with pytest.raises(StructureError):
        moduli_coordinate(ds)
    bad = (Moebius.diag(2), Moebius.translation(1), Moebius.diag(3), Moebius.diag(5))
    with pytest.raises(StructureError):
        build_developing_system(ModelGeometry("projective"), CurveDescriptor(2), holonomy=bad)


def test_classify_rows():
    assert classify_structures(ModelGeometry("projective"), CurveDescriptor(2)).dimension == 3
    assert classify_structures(ModelGeometry("projective"), CurveDescriptor(4)).dimension == 9
    assert classify_structures(ModelGeometry("projective"), CurveDescriptor(0)).space == "*"
    assert classify_structures(ModelGeometry("cstar"), CurveDescriptor(2)) is NONE_ADMITTED
    torus = classify_structures(ModelGeometry("torus_translations", lattice0=Lattice.of(1, cs(0, 1))), SQUARE)
    assert torus.space == "H⁰(κ) ≅ ℂ" and torus.notes


def test_moduli_coordinates():
    zn = ModelGeometry("zn_torus", n=2, lattice0=Lattice.of(1, cs(0, 2)))
    assert moduli_coordinate(build_developing_system(zn, SQUARE, c=3)).value == cs(9)
    proj = ModelGeometry("projective")
    a = moduli_coordinate(build_developing_system(proj, SQUARE, c=cs(2, 1)))
    b = moduli_coordinate(build_developing_system(proj, SQUARE, c=cs(-2, -1)))
    assert a.value == b.value
    t = moduli_coordinate(build_developing_system(ModelGeometry("translations"), SQUARE, c=1))
    assert t.kind == "c dz" and t.value == cs(1)


def test_torus_covering_degree():
    lat0 = Lattice.of(1, cs(0, 1))
    ds = build_developing_system(ModelGeometry("torus_translations", lattice0=lat0), SQUARE, L=2)
    assert moduli_coordinate(ds).get("covering_degree") == 4
    ds = build_developing_system(ModelGeometry("torus_translations", lattice0=lat0), SQUARE, L=cs("1/2"))
    assert moduli_coordinate(ds).get("covering_degree") is None


def test_conjugacy():
    proj = ModelGeometry("projective")
    assert is_conjugate(build_developing_system(proj, SQUARE, c=2), build_developing_system(proj, SQUARE, c=-2))
    zn = ModelGeometry("zn_torus", n=4, lattice0=Lattice.of(1, cs(0, 1)))
    assert is_conjugate(build_developing_system(zn, SQUARE, c=cs(1, 2)),
                        build_developing_system(zn, SQUARE, c=cs(1, 2) * cs(0, 1)))
    tr = ModelGeometry("translations")
    assert not is_conjugate(build_developing_system(tr, SQUARE, c=1), build_developing_system(tr, SQUARE, c=2))
    lin = build_developing_system(A2, SQUARE, c=1)
    assert is_conjugate(lin, build_developing_system(A2, SQUARE, c=4))
    assert not is_conjugate(lin, build_developing_system(A2, SQUARE, c=3))
    with pytest.raises(StructureError):
        is_conjugate(build_developing_system(tr, SQUARE, c=1), build_developing_system(proj, SQUARE, c=1))


def test_grain_structures_compare_by_k():
    a = build_developing_system(A2, GRAIN_CURVE, family="exponential", c=1, k=1)
    b = build_developing_system(A2, GRAIN_CURVE, family="exponential", c=1, k=8)
    c = build_developing_system(A2, GRAIN_CURVE, family="exponential", c=1, k=3)
    assert is_conjugate(a, b) and not is_conjugate(a, c)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 6]), st.floats(0.2, 5), st.floats(0, 2 * math.pi), st.integers(0, 5))
def test_zn_rebuild_from_any_root(n, r, theta, j):
    lat0 = Lattice.of(1, HEX if n in (3, 6) else 1j)
    model = ModelGeometry("zn_torus", n=n, lattice0=lat0)
    ds = build_developing_system(model, SQUARE, c=cmath.rect(r, theta))
    coord = complex(moduli_coordinate(ds).value)
    root = coord ** (1 / n) * cmath.exp(2j * math.pi * (j % n) / n)
    assert is_conjugate(ds, build_developing_system(model, SQUARE, c=root))


def test_automorphisms():
    hexc = CurveDescriptor.elliptic(1, HEX)
    proj = ModelGeometry("projective")
    a = automorphism_group(build_developing_system(proj, hexc, c=1))
    assert (a.group, a.homogeneous) == ("ℤ_2 ⋉ ℂ", True)
    assert automorphism_group(build_developing_system(proj, hexc, c=0)).rotation_order == 6
    assert automorphism_group(build_developing_system(ModelGeometry("affine"), hexc, c=1)).rotation_order == 1
    grain = automorphism_group(build_developing_system(A2, GRAIN_CURVE, family="exponential", c=1))
    assert grain.finite and not grain.homogeneous
    zn = ModelGeometry("zn_torus", n=3, lattice0=Lattice.of(1, HEX))
    assert automorphism_group(build_developing_system(zn, SQUARE, c=1)).rotation_order == 1
    assert automorphism_group(build_developing_system(zn, hexc, c=1)).rotation_order == 3
    a4 = ModelGeometry("discrete_affine", group=MultGroup((2,), torsion=4))
    assert automorphism_group(build_developing_system(a4, SQUARE, c=1)).rotation_order == 4


@pytest.mark.parametrize("f,expected", [
    (lambda z: z, 0), (lambda z: 1 / z, 0), (lambda z: cmath.exp(2 * z), -2),
])
def test_schwarzian_examples(f, expected):
    assert abs(complex(schwarzian_fd(f, complex(0.7, 0.2))) - expected) < 1e-8
    assert abs(complex(schwarzian_central(f, complex(0.7, 0.2))) - expected) < 1e-3


def test_schwarzian_errors_and_exact():
    with pytest.raises(ValueError):
        schwarzian_fd(lambda z: 1.0, 0)
    with pytest.raises(ValueError):
        schwarzian_fd(lambda z: z, 0, step=0)
    ds = build_developing_system(ModelGeometry("cstar"), SQUARE, c=cs(2, 0))
    assert schwarzian_exact(ds) == cs(-2)
    assert abs(complex(schwarzian_fd(ds, 0.1)) + 2) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 3), st.floats(0, 2 * math.pi))
def test_schwarzian_moebius_invariance(r, theta):
    c = cmath.rect(r, theta)
    m = compose(Moebius.translation(cs(0.5)), Moebius.from_entries(2, 0, cs(0.1, 0.1), cs("1/2")))
    f = lambda w: cmath.exp(c * w)  # noqa: E731
    s1 = complex(schwarzian_fd(f, 0.05))
    s2 = complex(schwarzian_fd(lambda w: act_complex(m, f(w)), 0.05))
    assert abs(s1 - s2) <= 1e-6 * max(1.0, abs(s1))
