"""Eigenstructure analysis: rotation angles, regularity, invariant 2-planes.

Rotation angles live in the canonical interval (0, pi]: each conjugate
eigenvalue pair {e^{i t}, e^{-i t}} with 0 < t < pi contributes t once per
pair multiplicity, and the eigenvalue -1 contributes the angle pi with pair
multiplicity floor(m/2) where m is its algebraic multiplicity.  An odd m
(possible only for determinant -1 inputs) is reported through a separate
``reflection`` flag rather than as an angle; this extension beyond the
special-orthogonal setting is our own convention and is relied on by the
reality deciders.

With this convention an element and its inverse have the same angle
multiset, and the multiset is a conjugation invariant.

Eigenvalues are clustered at radius ``delta`` (default 1e-7, deliberately
coarser than the membership tolerance because eigenvalues lose roughly half
the input precision).  Two surviving clusters closer than ``2 * delta``
raise :class:`ClusterAmbiguity` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ClusterAmbiguity, HypisoError, NotOrthogonal, NotRegular
from .quadspace import LorentzMatrix, is_orthogonal

DEFAULT_DELTA = 1e-7

# |lambda -+ 1| threshold for eigenvalue +-1 detection.
PM_ONE_TOL = 1e-7


@dataclass(frozen=True)
class EigenCluster:
    value: complex
    algebraic: int
    geometric: int


@dataclass(frozen=True)
class EigenStructure:
    clusters: tuple[EigenCluster, ...]
    dim: int

    def multiplicity_near(self, z: complex, tol: float) -> int:
        """Total algebraic multiplicity of clusters within tol of z."""
        return sum(c.algebraic for c in self.clusters if abs(c.value - z) <= tol)


@dataclass(frozen=True)
class RotationAngles:
    """Multiset of rotation angles, descending, with repetition.

    ``reflection`` marks a leftover odd -1 eigenvalue (determinant -1
    inputs only); it is not part of the angle multiset.
    """

    angles: tuple[float, ...]
    reflection: bool = False

    @property
    def k(self) -> int:
        return len(self.angles)

    @property
    def has_pi(self) -> bool:
        return any(abs(a - np.pi) <= 1e-12 for a in self.angles)


@dataclass(frozen=True, eq=False)
class PlaneDecomposition:
    """Invariant 2-planes of a regular rotation plus its fixed subspace.

    ``planes[i]`` is an (n, 2) orthonormal frame spanning the invariant
    plane for ``angles[i]``; planes are ordered by descending angle and
    oriented so the restriction of the source rotation is B(+angle)
    whenever the angle is not pi.  ``fixed_subspace`` is an (n, n-2k)
    orthonormal frame of the pointwise-fixed subspace.
    """

    planes: tuple[np.ndarray, ...]
    angles: tuple[float, ...]
    fixed_subspace: np.ndarray

    def __post_init__(self):
        for p in self.planes:
            p.setflags(write=False)
        self.fixed_subspace.setflags(write=False)

    @property
    def k(self) -> int:
        return len(self.planes)

    @property
    def dim(self) -> int:
        return self.planes[0].shape[0] if self.planes else self.fixed_subspace.shape[0]


def _cluster_eigenvalues(vals: np.ndarray, delta: float) -> list[list[int]]:
    """Union-find clustering of eigenvalues at merge radius delta."""
    m = len(vals)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(vals[i] - vals[j]) <= delta:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    clusters = list(groups.values())
    # refuse to decide when two surviving clusters nearly touch
    for a in range(len(clusters)):
        for b in range(a + 1, len(clusters)):
            d = min(
                abs(vals[i] - vals[j]) for i in clusters[a] for j in clusters[b]
            )
            if d < 2 * delta:
                raise ClusterAmbiguity(
                    f"clusters separated by {d:.3e}, inside [delta, 2*delta); "
                    "refine delta"
                )
    return clusters


def _rank_at(m: np.ndarray, threshold: float) -> int:
    svals = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(svals > threshold))


def null_space_at(m: np.ndarray, threshold: float) -> np.ndarray:
    """Orthonormal basis of the numerical kernel at an absolute threshold."""
    _, s, vt = np.linalg.svd(m)
    small = np.ones(m.shape[1], dtype=bool)
    small[: len(s)] = s <= threshold
    return vt[small].T


def eigen_structure(m, delta: float = DEFAULT_DELTA) -> EigenStructure:
    """Cluster the spectrum and attach algebraic/geometric multiplicities."""
    m = np.asarray(m, dtype=float)
    vals = np.linalg.eigvals(m)
    clusters = _cluster_eigenvalues(vals, delta)
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    out = []
    for idx in clusters:
        center = complex(np.mean(vals[idx]))
        alg = len(idx)
        geo = m.shape[0] - _rank_at(m - center * np.eye(m.shape[0]), delta * scale)
        out.append(EigenCluster(center, alg, max(geo, 1)))
    out.sort(key=lambda c: (-c.value.real, -abs(c.value.imag)))
    return EigenStructure(tuple(out), m.shape[0])


def is_semisimple(m, delta: float = DEFAULT_DELTA) -> bool:
    """True when no eigenvalue cluster carries a nontrivial Jordan block.

    Tested as rank(M - cI) == rank((M - cI)^2) per cluster; the squared
    matrix is ranked at the squared threshold since small singular values
    square too.
    """
    m = np.asarray(m, dtype=float)
    structure = eigen_structure(m, delta)
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    tau = delta * scale
    eye = np.eye(m.shape[0])
    for c in structure.clusters:
        a = m - c.value.real * eye if abs(c.value.imag) < tau else None
        if a is None:
            # complex cluster: work over C
            a = m - c.value * np.eye(m.shape[0], dtype=complex)
        if _rank_at(a, tau) != _rank_at(a @ a, tau * tau):
            return False
    return True


def _defective_one_scatter(m: np.ndarray, delta: float) -> float:
    """Radius around 1 polluted by a defective eigenvalue-1 block.

    Eigenvalues of a Jordan block scatter like the cube root of the
    backward error, so when T - I is rank-defective the computed spectrum
    near 1 is meaningless inside this radius.
    """
    scale = max(1.0, float(np.linalg.norm(m, 2)))
    tau = delta * scale
    n1 = m - np.eye(m.shape[0])
    r1 = int(np.sum(np.linalg.svd(n1, compute_uv=False) > tau))
    r2 = int(np.sum(np.linalg.svd(n1 @ n1, compute_uv=False) > tau * tau))
    if r2 < r1:
        return 10.0 * float((2.3e-16 * scale**3) ** (1.0 / 3.0))
    return 0.0


def _angle_data(m: np.ndarray, delta: float, unit_only: bool):
    """Shared extraction: (angles desc list, minus-one multiplicity)."""
    vals = np.linalg.eigvals(m)
    if unit_only:
        # drop the meaningless scatter of a defective eigenvalue 1 before
        # clustering; otherwise its random spread trips the ambiguity check
        one_fuzz = _defective_one_scatter(m, delta)
        if one_fuzz > 0.0:
            vals = vals[np.abs(vals - 1.0) > one_fuzz]
    clusters = _cluster_eigenvalues(vals, delta)
    angles: list[float] = []
    m_minus = 0
    for idx in clusters:
        center = complex(np.mean(vals[idx]))
        if unit_only and abs(abs(center) - 1.0) > delta:
            continue
        if abs(center - (-1.0)) <= max(delta, PM_ONE_TOL):
            m_minus = len(idx)
            continue
        if center.imag > delta:
            theta = float(np.arctan2(center.imag, center.real))
            angles.extend([theta] * len(idx))
    angles.extend([float(np.pi)] * (m_minus // 2))
    angles.sort(reverse=True)
    return angles, m_minus


def rotation_angles(
    a, delta: float = DEFAULT_DELTA, eps: float = 1e-9
) -> RotationAngles:
    """Rotation angle multiset of an orthogonal matrix or a Lorentz matrix.

    For a Lorentz matrix the angles are read from the unit-modulus
    non-real spectrum, which matches the associated rotation acting on the
    space-like part.
    """
    if isinstance(a, LorentzMatrix):
        m = a.entries
        unit_only = True
    else:
        m = np.asarray(a, dtype=float)
        if not is_orthogonal(m, eps):
            raise NotOrthogonal("rotation angles need an orthogonal or Lorentz matrix")
        unit_only = False
    angles, m_minus = _angle_data(m, delta, unit_only)
    return RotationAngles(tuple(angles), reflection=bool(m_minus % 2))


def is_regular(a, delta: float = DEFAULT_DELTA, eps: float = 1e-9) -> bool:
    """All rotation angles pairwise distinct, each of pair multiplicity one."""
    ra = rotation_angles(a, delta, eps)
    ang = ra.angles
    return all(ang[i] - ang[i + 1] > delta for i in range(len(ang) - 1))


def _plane_frame_for_angle(
    m: np.ndarray, theta: float, delta: float
) -> np.ndarray:
    """Orthonormal 2-frame of the invariant plane for a simple angle pair."""
    vals, vecs = scipy.linalg.eig(m)
    target = complex(np.cos(theta), np.sin(theta))
    i = int(np.argmin(np.abs(vals - target)))
    v = vecs[:, i]
    u, w = v.real.copy(), v.imag.copy()
    frame, _ = np.linalg.qr(np.column_stack([u, w]))
    # orient so the restriction matrix is B(+theta): positive (2,1) entry
    if frame[:, 1] @ (m @ frame[:, 0]) < 0:
        frame = np.column_stack([frame[:, 0], -frame[:, 1]])
    return frame


def plane_decomposition(
    a, delta: float = DEFAULT_DELTA, eps: float = 1e-9
) -> PlaneDecomposition:
    """Unique invariant-plane decomposition of a regular orthogonal matrix.

    Refused for non-regular input, where the eigenspace decomposition is
    no longer unique.
    """
    m = np.asarray(a, dtype=float)
    if not is_orthogonal(m, eps):
        raise NotOrthogonal("plane decomposition needs an orthogonal matrix")
    if not is_regular(m, delta, eps):
        raise NotRegular(
            "plane decomposition is only canonical for regular rotations"
        )
    ra = rotation_angles(m, delta, eps)
    n = m.shape[0]
    planes = []
    for theta in ra.angles:  # already descending
        if abs(theta - np.pi) <= delta:
            frame = null_space_at(m + np.eye(n), delta * 2.0)
            if frame.shape[1] != 2:
                raise HypisoError(
                    f"expected a 2-dimensional -1 eigenspace, got {frame.shape[1]}"
                )
        else:
            frame = _plane_frame_for_angle(m, theta, delta)
        planes.append(frame)
    fixed = null_space_at(m - np.eye(n), delta * 2.0)
    if 2 * len(planes) + fixed.shape[1] + (1 if ra.reflection else 0) != n:
        raise HypisoError("plane/fixed dimension bookkeeping failed")
    if ra.reflection:
        raise NotRegular(
            "decomposition with a leftover reflection line is not representable"
        )
    return PlaneDecomposition(tuple(planes), ra.angles, fixed)


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def assemble_rotation(
    planes, angles, fixed_subspace: np.ndarray
) -> np.ndarray:
    """Rebuild the block rotation B(t_1) + ... + B(t_k) + I from frames."""
    n = fixed_subspace.shape[0] if fixed_subspace.size else planes[0].shape[0]
    out = np.zeros((n, n))
    for frame, theta in zip(planes, angles):
        out += frame @ rotation_matrix(theta) @ frame.T
    if fixed_subspace.size:
        out += fixed_subspace @ fixed_subspace.T
    return out
