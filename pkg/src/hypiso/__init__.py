"""Isometries of real hyperbolic space in the hyperboloid model:
classification, reversibility, conjugacy, and conjugacy-class geometry.

The quadratic form is Q(x) = x_0^2 + ... + x_{n-1}^2 - x_n^2 (time last);
H^n is the upper sheet of Q = -1, and the Moebius group M(n) of the
boundary n-sphere is identified with the sheet-preserving part of
O(n+1,1), with identity component M_o(n) = SO_o(n+1,1).
"""

from .classgeom import (
    BoundaryPair,
    FibrationDescriptor,
    alpha,
    class_descriptor,
    d0,
    descriptor_for,
    dim_decomposition_space,
    dim_rotation_class,
    dim_spaces,
    enumerate_fiber,
    projection,
)
from .classify import (
    ClassificationReport,
    FixedPointClass,
    NormalForm,
    boundary_fixed_points,
    classify,
    fixed_point_class,
    normal_form,
    poincare_extend,
    reconstruct_from_normal_form,
    stretch_factor,
)
from .conjugacy import (
    ConjugacyAnswer,
    InvariantTuple,
    Relation,
    conjugate_in_Mn,
    conjugate_in_Mon,
    find_conjugator,
    invariant_tuple,
)
from .quadspace import (
    CausalType,
    Component,
    LorentzMatrix,
    QuadraticSpace,
    causal_type,
    classify_membership,
    matrix_from_json,
    matrix_to_json,
    q_value,
    subspace_type,
)
from .reality import (
    OracleReport,
    RealityCertificate,
    is_real_Mo,
    is_real_On,
    is_real_SOn,
    is_real_SOo_n1,
    is_strongly_real_SOn,
    reverser_oracle,
)
from .spectral import (
    EigenStructure,
    PlaneDecomposition,
    RotationAngles,
    eigen_structure,
    is_regular,
    is_semisimple,
    plane_decomposition,
    rotation_angles,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryPair",
    "CausalType",
    "ClassificationReport",
    "Component",
    "ConjugacyAnswer",
    "EigenStructure",
    "FibrationDescriptor",
    "FixedPointClass",
    "InvariantTuple",
    "LorentzMatrix",
    "NormalForm",
    "OracleReport",
    "PlaneDecomposition",
    "QuadraticSpace",
    "RealityCertificate",
    "Relation",
    "RotationAngles",
    "alpha",
    "boundary_fixed_points",
    "causal_type",
    "class_descriptor",
    "classify",
    "classify_membership",
    "conjugate_in_Mn",
    "conjugate_in_Mon",
    "d0",
    "descriptor_for",
    "dim_decomposition_space",
    "dim_rotation_class",
    "dim_spaces",
    "eigen_structure",
    "enumerate_fiber",
    "find_conjugator",
    "fixed_point_class",
    "invariant_tuple",
    "is_real_Mo",
    "is_real_On",
    "is_real_SOn",
    "is_real_SOo_n1",
    "is_regular",
    "is_semisimple",
    "is_strongly_real_SOn",
    "matrix_from_json",
    "matrix_to_json",
    "normal_form",
    "plane_decomposition",
    "poincare_extend",
    "projection",
    "q_value",
    "reconstruct_from_normal_form",
    "reverser_oracle",
    "rotation_angles",
    "stretch_factor",
    "subspace_type",
]
