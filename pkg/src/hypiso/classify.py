"""Fixed-point classification of hyperbolic-space isometries.

A validated sheet-preserving matrix T in O(m,1) acts on the hyperboloid
model of H^m whose conformal boundary is S^{m-1}, identified with the
extended Euclidean space E^{m-1} + {inf}.  Throughout, ``n`` denotes the
boundary dimension m - 1.

Exactly one of three classes applies:

* hyperbolic -- a real eigenvalue r > 1 exists (paired with 1/r); two
  boundary fixed points; boundary normal form x -> r A x;
* parabolic  -- all eigenvalues on the unit circle but T is not
  semisimple (the eigenvalue 1 carries one size-3 Jordan block); a single
  boundary fixed point; boundary normal form x -> A x + b with the
  translation part along ker(A - I) nonzero;
* elliptic   -- semisimple with unit spectrum; a fixed point inside H^m
  exists (equivalently a time-like 1-eigenvector).

Model chain, fixed once: the boundary point p in E^n lifts to the null ray
``lift(p) = (p, (1-|p|^2)/2, (1+|p|^2)/2)`` and infinity to the ray
``(0, ..., 0, -1, 1)``; boundary points are represented by null vectors
normalized to time coordinate 1.  Upper-half-space similarities
``x -> rAx + b`` transfer to the hyperboloid through light-cone
coordinates (l+ , l-) = (x_time + x_pole, x_time - x_pole), in which the
transfer is linear with matrix

    [[ A,       b/r,      0 ],
     [ 0,       1/r,      0 ],
     [ 2 b^T A, |b|^2/r,  r ]].

Only conjugation-invariant outputs (class, angle multiset, stretch, fixed
point data up to the group action) are contractual; the chain itself is
pinned by the round-trip tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from . import frames
from .errors import (
    Borderline,
    HypisoError,
    InvalidArg,
    NonpositiveScale,
    NotHyperbolic,
    NotOrthogonal,
)
from .quadspace import (
    DEFAULT_EPS,
    LorentzMatrix,
    QuadraticSpace,
    classify_membership,
    is_orthogonal,
)
from .spectral import DEFAULT_DELTA, RotationAngles, null_space_at, rotation_angles

# residual allowed when re-reading boundary parameters off a standard-position
# matrix; far below the 1e-8 contract, far above accumulated rounding
_STRUCTURE_TOL = 1e-6


class FixedPointClass(Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True, eq=False)
class HyperbolicPair:
    """Unordered boundary fixed-point pair (attracting ray listed first
    internally; serialization orders lexicographically)."""

    attracting: np.ndarray
    repelling: np.ndarray

    def as_sorted(self) -> tuple[np.ndarray, np.ndarray]:
        a, b = self.attracting, self.repelling
        return (a, b) if tuple(a) <= tuple(b) else (b, a)

    def to_json_dict(self) -> dict:
        a, b = self.as_sorted()
        return {"variant": "Hyperbolic", "points": [a.tolist(), b.tolist()]}


@dataclass(frozen=True, eq=False)
class ParabolicPoint:
    point: np.ndarray

    def to_json_dict(self) -> dict:
        return {"variant": "Parabolic", "point": self.point.tolist()}


@dataclass(frozen=True, eq=False)
class EllipticSphere:
    """Frame of ker(T - I); its null rays form the pointwise-fixed sphere."""

    frame: np.ndarray
    sphere_dim: int

    def to_json_dict(self) -> dict:
        return {
            "variant": "EllipticSphere",
            "frame": self.frame.T.tolist(),
            "sphere_dim": self.sphere_dim,
        }


@dataclass(frozen=True, eq=False)
class EllipticPoint:
    """Unique fixed point in H^{n+1} of a full-rotation elliptic (n odd)."""

    point: np.ndarray

    def to_json_dict(self) -> dict:
        return {"variant": "EllipticPoint", "point": self.point.tolist()}


FixedPointData = Union[HyperbolicPair, ParabolicPoint, EllipticSphere, EllipticPoint]


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    fixed_class: FixedPointClass
    k: int
    angles: RotationAngles
    regular: bool
    stretch: Optional[float]
    fixed_data: FixedPointData
    boundary_dim: int

    def to_json_dict(self) -> dict:
        return {
            "class": self.fixed_class.value,
            "k": self.k,
            "angles": list(self.angles.angles),
            "regular": self.regular,
            "stretch": self.stretch,
            "fixed_data": self.fixed_data.to_json_dict(),
        }


@dataclass(frozen=True, eq=False)
class KRotation:
    """Elliptic standard position: fixed point at the hyperboloid apex,
    boundary sphere action by an orthogonal matrix."""

    matrix: np.ndarray
    angles: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class KRotatoryTranslation:
    """Parabolic standard position: fixed point at infinity, boundary
    action x -> Ax + b."""

    rotation: np.ndarray
    translation: np.ndarray
    angles: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class KRotatoryStretch:
    """Hyperbolic standard position: fixed points at 0 and infinity,
    boundary action x -> rAx with r > 1."""

    stretch: float
    rotation: np.ndarray
    angles: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class NormalForm:
    variant: Union[KRotation, KRotatoryTranslation, KRotatoryStretch]
    conjugator: LorentzMatrix  # W with W T W^-1 in standard position


# ---------------------------------------------------------------------------
# model chain
# ---------------------------------------------------------------------------


def infinity_ray(space: QuadraticSpace) -> np.ndarray:
    v = np.zeros(space.dim)
    v[-2] = -1.0
    v[-1] = 1.0
    return v


def zero_ray(space: QuadraticSpace) -> np.ndarray:
    v = np.zeros(space.dim)
    v[-2] = 1.0
    v[-1] = 1.0
    return v


def lift_boundary_point(space: QuadraticSpace, p) -> np.ndarray:
    """Null vector of the ray over p in E^{n}, with l+ component 1."""
    p = np.asarray(p, dtype=float)
    if p.shape != (space.n - 1,):
        raise InvalidArg(
            f"boundary point must have length {space.n - 1}, got {p.shape}"
        )
    sq = float(np.dot(p, p))
    return np.concatenate([p, [(1.0 - sq) / 2.0, (1.0 + sq) / 2.0]])


def boundary_point_of_ray(space: QuadraticSpace, v, tol: float = 1e-12):
    """Inverse of the lift; ``None`` encodes the point at infinity."""
    v = np.asarray(v, dtype=float)
    lplus = v[-1] + v[-2]
    if abs(lplus) <= tol * max(1.0, float(np.max(np.abs(v)))):
        return None
    return v[:-2] / lplus


def _lightcone_change(space: QuadraticSpace) -> tuple[np.ndarray, np.ndarray]:
    """(C, C^-1) with C mapping (x', pole, time) to (x', l+, l-)."""
    d = space.dim
    c = np.eye(d)
    c[-2, -2], c[-2, -1] = 1.0, 1.0
    c[-1, -2], c[-1, -1] = -1.0, 1.0
    cinv = np.eye(d)
    cinv[-2, -2], cinv[-2, -1] = 0.5, -0.5
    cinv[-1, -2], cinv[-1, -1] = 0.5, 0.5
    return c, cinv


def _similarity_lightcone(r: float, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    nb = a.shape[0]
    m = np.zeros((nb + 2, nb + 2))
    m[:nb, :nb] = a
    m[:nb, nb] = b / r
    m[nb, nb] = 1.0 / r
    m[nb + 1, :nb] = 2.0 * (a.T @ b)
    m[nb + 1, nb] = float(np.dot(b, b)) / r
    m[nb + 1, nb + 1] = r
    return m


def halfspace_action(r: float, a: np.ndarray, b: np.ndarray):
    """The upper-half-space isometry (x, t) -> (rAx + b, rt) as a callable."""

    def act(x, t):
        return r * (a @ np.asarray(x, dtype=float)) + b, r * float(t)

    return act


def poincare_extend(
    r: float, a, b=None, eps: float = DEFAULT_EPS
) -> LorentzMatrix:
    """Extend the boundary similarity x -> rAx + b to the hyperboloid model.

    Parameters
    ----------
    r : positive scale factor.
    a : orthogonal n x n matrix.
    b : translation vector in E^n (defaults to zero).

    Returns the validated Lorentz matrix of the extension acting on
    H^{n+1}; the corresponding upper-half-space action is
    ``(x, t) -> (rAx + b, rt)``.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotOrthogonal("boundary rotation must be a square matrix")
    if not is_orthogonal(a, max(eps, 1e-9)):
        raise NotOrthogonal("boundary rotation part is not orthogonal")
    if not (r > 0):
        raise NonpositiveScale(f"scale must be positive, got {r}")
    nb = a.shape[0]
    b = np.zeros(nb) if b is None else np.asarray(b, dtype=float)
    if b.shape != (nb,):
        raise InvalidArg("translation length does not match the rotation size")
    space = QuadraticSpace(nb + 1)
    c, cinv = _lightcone_change(space)
    ext = cinv @ _similarity_lightcone(float(r), a, b) @ c
    return classify_membership(space, ext, max(eps, 1e-9))


def read_boundary_similarity(space: QuadraticSpace, t: np.ndarray):
    """Recover (r, A, b) from a matrix fixing the infinity ray.

    The rotation part is polished to exact orthogonality (polar factor);
    raises when the matrix does not have the stabilizer shape.
    """
    nb = space.n - 1
    c, cinv = _lightcone_change(space)
    mlc = c @ t @ cinv
    scale = max(1.0, float(np.max(np.abs(t))))
    r = float(mlc[-1, -1])
    if r <= 0:
        raise HypisoError("matrix does not preserve the forward infinity ray")
    resid = max(
        float(np.max(np.abs(mlc[nb, :nb]))),
        float(np.max(np.abs(mlc[:nb, nb + 1]))),
        abs(float(mlc[nb, nb + 1])),
        abs(float(mlc[nb, nb]) - 1.0 / r),
    )
    if resid > _STRUCTURE_TOL * scale:
        raise HypisoError(
            f"matrix is not in infinity-stabilizer form (residual {resid:.2e})"
        )
    a = mlc[:nb, :nb]
    u, _, vt = np.linalg.svd(a)
    a = u @ vt
    b = r * mlc[:nb, nb]
    return r, a, b


# ---------------------------------------------------------------------------
# reflections / boosts used to move fixed data into standard position
# ---------------------------------------------------------------------------


def reflection_fixing_hyperplane(space: QuadraticSpace, s: np.ndarray) -> np.ndarray:
    """Q-reflection in the hyperplane orthogonal to a non-null vector s."""
    j = space.form_signs
    q = frames.j_inner(j, s, s)
    return np.eye(space.dim) - (2.0 / q) * np.outer(s, s * j)


def _pole_flip(space: QuadraticSpace) -> np.ndarray:
    """Reflection negating the pole coordinate; swaps the 0 and infinity rays."""
    m = np.eye(space.dim)
    m[-2, -2] = -1.0
    return m


def reflection_to_infinity(space: QuadraticSpace, u: np.ndarray) -> np.ndarray:
    """Sheet-preserving map sending the forward null ray of u to infinity.

    A single Q-reflection works, but it degenerates as the ray approaches
    infinity (the reflection vector blows up like 1/<u, inf>), so rays in
    that hemisphere are first swapped toward zero by the pole flip.  Input
    must be normalized to time coordinate 1.
    """
    if u[-1] <= 0:
        raise HypisoError("null vector is not forward; normalize time > 0 first")
    j = space.form_signs
    target = infinity_ray(space)
    c = frames.j_inner(j, u, target)  # equals -(1 + pole component), in [-2, 0]
    if c > -0.5:
        flip = _pole_flip(space)
        return reflection_to_infinity(space, flip @ u) @ flip
    u2 = u * (-2.0 / c)
    s = (u2 - target) / 2.0
    return reflection_fixing_hyperplane(space, s)


def boost_between(space: QuadraticSpace, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Element of SO_o taking the time-like unit a to the time-like unit b
    (both on the upper sheet); identity on the common orthocomplement."""
    if float(np.max(np.abs(a - b))) <= 1e-13:
        return np.eye(space.dim)
    rho_a = reflection_fixing_hyperplane(space, a)
    rho_w = reflection_fixing_hyperplane(space, a + b)
    return rho_w @ rho_a


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _require_sheet_preserving(t: LorentzMatrix):
    if not t.sheet_preserving:
        raise InvalidArg(
            "classification is defined for sheet-preserving isometries only"
        )


def fixed_point_class(
    t: LorentzMatrix, delta: float = DEFAULT_DELTA
) -> FixedPointClass:
    """Elliptic / parabolic / hyperbolic trichotomy.

    The defective-eigenvalue-1 test runs first because it rests on
    singular values, which perturb linearly; the eigenvalues of a
    unipotent block scatter like the cube root of the backward error and
    would fool a plain modulus threshold.  Among non-defective inputs a
    real eigenvalue is simple and well conditioned, so modulus > 1 + delta
    decides hyperbolic.  ``Borderline`` is raised when the dominant
    modulus falls inside (1 + delta/4, 1 + delta] or when the kernel of
    T - I is itself threshold-ambiguous.
    """
    _require_sheet_preserving(t)
    m = t.entries
    n1 = m - np.eye(m.shape[0])
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    tau = delta * scale
    svals = np.linalg.svd(n1, compute_uv=False)
    if np.any((svals > tau / 2.0) & (svals < 2.0 * tau)):
        raise Borderline(
            "kernel of T - I is threshold-ambiguous; semisimplicity marginal"
        )
    rank1 = int(np.sum(svals > tau))
    rank2 = int(np.sum(np.linalg.svd(n1 @ n1, compute_uv=False) > tau * tau))
    if rank2 < rank1:
        return FixedPointClass.PARABOLIC
    vals = np.linalg.eigvals(m)
    rmax = float(np.max(np.abs(vals)))
    if rmax > 1.0 + delta:
        return FixedPointClass.HYPERBOLIC
    if rmax > 1.0 + delta / 4.0:
        raise Borderline(
            f"dominant eigenvalue modulus {rmax} is inside the tolerance gap"
        )
    return FixedPointClass.ELLIPTIC


def stretch_factor(t: LorentzMatrix, delta: float = DEFAULT_DELTA) -> float:
    """Unit-normalized stretch r > 1 of a hyperbolic isometry."""
    cls = fixed_point_class(t, delta)
    if cls is not FixedPointClass.HYPERBOLIC:
        raise NotHyperbolic("stretch factor is defined for hyperbolic isometries")
    vals = np.linalg.eigvals(t.entries)
    lam = vals[int(np.argmax(np.abs(vals)))]
    if abs(lam.imag) > delta * abs(lam) or lam.real <= 0:
        raise HypisoError("dominant eigenvalue of a hyperbolic isometry must be real positive")
    return float(abs(lam))


def _hyperbolic_rays(t: LorentzMatrix, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Null eigenvectors for (r, 1/r), each normalized to time coordinate 1."""
    r = stretch_factor(t, delta)
    out = []
    for lam in (r, 1.0 / r):
        v = frames.eigvec_min_singular(t.entries, lam)
        v = np.real(v)
        if abs(v[-1]) < 1e-10:
            raise HypisoError("null eigenvector has vanishing time coordinate")
        out.append(v / v[-1])
    return out[0], out[1]


def _parabolic_ray(t: LorentzMatrix, delta: float = DEFAULT_DELTA) -> np.ndarray:
    """The unique boundary fixed ray: the radical of Q on ker(T - I).

    ker(T - I) of a parabolic splits as (null line) + (space-like part),
    so the restricted Gram is positive semidefinite with a one-dimensional
    kernel, which is the fixed ray.
    """
    scale = max(1.0, float(np.linalg.norm(t.entries, 2)))
    kernel = null_space_at(t.entries - np.eye(t.space.dim), delta * scale)
    if kernel.shape[1] == 0:
        raise HypisoError("parabolic isometry with empty fixed space")
    j = t.space.form_signs
    gram = kernel.T @ (j[:, None] * kernel)
    w, e = np.linalg.eigh(gram)
    order = np.argsort(np.abs(w))
    if abs(w[order[0]]) > 1e-8 or (len(w) > 1 and abs(w[order[1]]) < 1e-8):
        raise HypisoError("fixed space of a parabolic must have a 1-dim radical")
    u = kernel @ e[:, order[0]]
    if abs(u[-1]) < 1e-10:
        raise HypisoError("parabolic fixed ray has vanishing time coordinate")
    return u / u[-1]


def _elliptic_fixed_vector(t: LorentzMatrix, delta: float) -> np.ndarray:
    """Time-like unit 1-eigenvector on the upper sheet."""
    scale = max(1.0, float(np.linalg.norm(t.entries, 2)))
    kernel = null_space_at(t.entries - np.eye(t.space.dim), delta * scale)
    if kernel.shape[1] == 0:
        raise HypisoError("elliptic isometry with empty fixed space")
    j = t.space.form_signs
    gram = kernel.T @ (j[:, None] * kernel)
    w, e = np.linalg.eigh(gram)
    if w[0] >= 0:
        raise HypisoError("fixed space of an elliptic isometry must be time-like")
    v = kernel @ e[:, 0]
    v = v / np.sqrt(-frames.j_inner(j, v, v))
    return v if v[-1] > 0 else -v


def boundary_fixed_points(
    t: LorentzMatrix, delta: float = DEFAULT_DELTA
) -> FixedPointData:
    """Fixed-point data on the boundary (or in H^m for full rotations).

    Hyperbolic: the unordered pair of null eigenrays; parabolic: the
    single fixed ray; elliptic: the frame of ker(T - I), whose null rays
    form the fixed sphere.  Rays are normalized to time coordinate 1.
    """
    cls = fixed_point_class(t, delta)
    if cls is FixedPointClass.HYPERBOLIC:
        att, rep = _hyperbolic_rays(t, delta)
        return HyperbolicPair(att, rep)
    if cls is FixedPointClass.PARABOLIC:
        return ParabolicPoint(_parabolic_ray(t))
    scale = max(1.0, float(np.linalg.norm(t.entries, 2)))
    kernel = null_space_at(t.entries - np.eye(t.space.dim), delta * scale)
    return EllipticSphere(kernel, kernel.shape[1] - 2)


def classify(t: LorentzMatrix, delta: float = DEFAULT_DELTA) -> ClassificationReport:
    """Full classification report: class, rotation data, stretch, fixed data."""
    _require_sheet_preserving(t)
    cls = fixed_point_class(t, delta)
    ang = rotation_angles(t, delta)
    k = ang.k
    regular = all(
        ang.angles[i] - ang.angles[i + 1] > delta for i in range(len(ang.angles) - 1)
    )
    stretch = stretch_factor(t, delta) if cls is FixedPointClass.HYPERBOLIC else None
    boundary_dim = t.space.n - 1
    if cls is FixedPointClass.ELLIPTIC and 2 * k == boundary_dim + 1:
        fixed: FixedPointData = EllipticPoint(_elliptic_fixed_vector(t, delta))
    else:
        fixed = boundary_fixed_points(t, delta)
    return ClassificationReport(
        fixed_class=cls,
        k=k,
        angles=ang,
        regular=regular,
        stretch=stretch,
        fixed_data=fixed,
        boundary_dim=boundary_dim,
    )


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------


def _apex(space: QuadraticSpace) -> np.ndarray:
    v = np.zeros(space.dim)
    v[-1] = 1.0
    return v


def _j_inverse(space: QuadraticSpace, w: np.ndarray) -> np.ndarray:
    """Inverse of a J-orthogonal matrix via J W^T J (exact up to rounding)."""
    j = space.form_signs
    return (j[:, None] * w.T) * j[None, :]


def normal_form(
    t: LorentzMatrix, delta: float = DEFAULT_DELTA
) -> NormalForm:
    """Conjugate T into standard position and read the boundary parameters.

    The returned conjugator W is a validated sheet-preserving Lorentz
    matrix (not necessarily in the identity component) with W T W^-1 in
    standard position; re-extending the returned parameters and
    conjugating back reproduces T.
    """
    space = t.space
    report = classify(t, delta)
    if report.fixed_class is FixedPointClass.ELLIPTIC:
        if isinstance(report.fixed_data, EllipticPoint):
            v = report.fixed_data.point
        else:
            v = _elliptic_fixed_vector(t, delta)
        w = boost_between(space, v, _apex(space))
        std = w @ t.entries @ _j_inverse(space, w)
        a = std[:-1, :-1]
        u, _, vt = np.linalg.svd(a)
        variant: Union[KRotation, KRotatoryTranslation, KRotatoryStretch]
        variant = KRotation(matrix=u @ vt, angles=report.angles.angles)
    elif report.fixed_class is FixedPointClass.PARABOLIC:
        ray = _parabolic_ray(t)
        w = reflection_to_infinity(space, ray)
        std = w @ t.entries @ _j_inverse(space, w)
        _, a, b = read_boundary_similarity(space, std)
        kernel = null_space_at(a - np.eye(a.shape[0]), 1e-8)
        if float(np.linalg.norm(kernel.T @ b)) <= 1e-10 * max(1.0, float(np.linalg.norm(b))):
            raise HypisoError(
                "parabolic normal form lost its translation part; inconsistent input"
            )
        variant = KRotatoryTranslation(
            rotation=a, translation=b, angles=report.angles.angles
        )
    else:
        att, rep = _hyperbolic_rays(t, delta)
        w1 = reflection_to_infinity(space, att)
        rep_moved = w1 @ rep
        p = boundary_point_of_ray(space, rep_moved)
        if p is None:
            raise HypisoError("repelling ray collided with infinity; corrupt input")
        w2 = np.asarray(
            poincare_extend(1.0, np.eye(space.n - 1), -p).entries
        )
        w = w2 @ w1
        std = w @ t.entries @ _j_inverse(space, w)
        r, a, _ = read_boundary_similarity(space, std)
        if r <= 1.0:
            raise HypisoError("stretch read-off lost unit normalization")
        variant = KRotatoryStretch(stretch=r, rotation=a, angles=report.angles.angles)
    conj = classify_membership(space, w, max(t.tolerance, 1e-9))
    return NormalForm(variant=variant, conjugator=conj)


def standard_position_matrix(space: QuadraticSpace, variant) -> np.ndarray:
    """Hyperboloid matrix of a normal-form variant in standard position."""
    if isinstance(variant, KRotation):
        out = np.eye(space.dim)
        out[:-1, :-1] = variant.matrix
        return out
    if isinstance(variant, KRotatoryTranslation):
        return np.asarray(
            poincare_extend(1.0, variant.rotation, variant.translation).entries
        )
    if isinstance(variant, KRotatoryStretch):
        return np.asarray(poincare_extend(variant.stretch, variant.rotation).entries)
    raise InvalidArg(f"unknown normal-form variant {type(variant).__name__}")


def reconstruct_from_normal_form(nf: NormalForm) -> np.ndarray:
    """Undo the conjugation: W^-1 (standard matrix) W."""
    space = nf.conjugator.space
    std = standard_position_matrix(space, nf.variant)
    winv = nf.conjugator.inverse().entries
    return winv @ std @ nf.conjugator.entries
