"""Locally homogeneous structures on compact curves and their lifts to ruled surfaces."""

from .numerics import ComplexScalar, Tolerance, cs
from .moebius import Moebius, SpherePoint
from .lattices import Lattice, MultGroup
from .subgroups import SubgroupClass, centralizer, normalizer, recognize
from .curves import (
    CurveDescriptor,
    DevelopingSystem,
    ModelGeometry,
    ModelId,
    build_developing_system,
    classify_structures,
    verify_equivariance,
)
from .lifts import Representation, lift, rep_class

__version__ = "0.1.0"

__all__ = [
    "ComplexScalar", "Tolerance", "cs", "Moebius", "SpherePoint", "Lattice", "MultGroup",
    "SubgroupClass", "centralizer", "normalizer", "recognize", "CurveDescriptor",
    "DevelopingSystem", "ModelGeometry", "ModelId", "build_developing_system",
    "classify_structures", "verify_equivariance", "Representation", "lift", "rep_class",
]
