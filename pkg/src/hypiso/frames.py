"""Frame utilities for the diagonal form J = diag(1,...,1,-1) (or J = I).

A *frame* is a matrix whose columns are J-orthonormal vectors; ``signs``
records Q(f_j) = +-1 per column.  For a full J-orthonormal system the
pseudo-inverse of a frame is ``diag(signs) @ F.T @ J``, which lets block
operators be assembled without solving linear systems.

Everything here takes ``j`` as a vector of form signs so the same code
serves the Euclidean case (all ones) and the Lorentzian case.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import HypisoError
from .spectral import _cluster_eigenvalues, null_space_at


def eigvec_min_singular(m: np.ndarray, lam: complex) -> np.ndarray:
    """Right singular vector for the smallest singular value of M - lam*I.

    Robust eigenvector extraction for a simple (well separated) eigenvalue.
    Returns a real vector when lam is real.
    """
    n = m.shape[0]
    if abs(complex(lam).imag) == 0.0:
        a = m - float(np.real(lam)) * np.eye(n)
    else:
        a = m.astype(complex) - complex(lam) * np.eye(n, dtype=complex)
    _, _, vt = np.linalg.svd(a)
    return np.conj(vt[-1])


def j_inner(j: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    """Polarized form x^T J y for real vectors."""
    return float(np.dot(x * j, y))


def frame_pinv(frame: np.ndarray, signs: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Left inverse of a J-orthonormal frame: diag(signs) F^T J."""
    return (signs[:, None] * frame.T) * j[None, :]


def restrict_to_frame(
    m: np.ndarray, frame: np.ndarray, signs: np.ndarray, j: np.ndarray
) -> np.ndarray:
    """Matrix of m on an invariant subspace, in frame coordinates."""
    return frame_pinv(frame, signs, j) @ m @ frame


def assemble_blocks(frames, signs_list, blocks, j: np.ndarray) -> np.ndarray:
    """Block operator sum F_i B_i F_i^+ over a complete J-orthonormal system."""
    n = len(j)
    out = np.zeros((n, n))
    for frame, signs, block in zip(frames, signs_list, blocks):
        out += frame @ block @ frame_pinv(frame, signs, j)
    return out


def orthonormalize_spacelike(basis: np.ndarray, j: np.ndarray) -> np.ndarray:
    """J-orthonormalize a basis of a space-like subspace (symmetric style).

    The restricted Gram must be positive definite; raises otherwise.
    """
    gram = basis.T @ (j[:, None] * basis)
    w, e = np.linalg.eigh(gram)
    if np.any(w <= 0):
        raise HypisoError("subspace is not space-like; cannot orthonormalize")
    return basis @ e @ np.diag(1.0 / np.sqrt(w)) @ e.T


def spacelike_complement(
    frame: np.ndarray, j: np.ndarray, threshold: float = 1e-10
) -> np.ndarray:
    """J-orthonormal frame of the J-orthocomplement of span(frame).

    Only valid when the complement is space-like (the time direction sits
    inside ``frame``).
    """
    a = frame.T * j[None, :]
    basis = null_space_at(a, threshold)
    if basis.shape[1] == 0:
        return basis
    return orthonormalize_spacelike(basis, j)


def invariant_plane_frames(
    m: np.ndarray, j: np.ndarray, delta: float
) -> list[tuple[float, np.ndarray]]:
    """Invariant 2-plane frames for every non-real unit eigenvalue pair.

    Returns (angle, frame) pairs, one frame per pair multiplicity, frames
    J-orthonormal and oriented so the restriction of m is B(+angle).  For
    repeated angles the split into planes is an arbitrary (non-canonical)
    choice, which is all the reverser constructions need.
    """
    vals, vecs = scipy.linalg.eig(m)
    clusters = _cluster_eigenvalues(vals, delta)
    out: list[tuple[float, np.ndarray]] = []
    for idx in clusters:
        center = complex(np.mean(vals[idx]))
        if center.imag <= delta or abs(abs(center) - 1.0) > delta:
            continue
        theta = float(np.arctan2(center.imag, center.real))
        basis = vecs[:, idx]
        # J-Hermitian Gram-Schmidt inside the cluster (positive definite
        # on space-like rotation eigenspaces)
        ortho: list[np.ndarray] = []
        for i in range(basis.shape[1]):
            v = basis[:, i].copy()
            for u in ortho:
                v = v - np.dot(np.conj(u) * j, v) * u
            nrm = np.real(np.dot(np.conj(v) * j, v))
            if nrm <= 0:
                raise HypisoError("rotation eigenspace is not space-like")
            ortho.append(v / np.sqrt(nrm))
        for v in ortho:
            frame = np.sqrt(2.0) * np.column_stack([v.real, v.imag])
            r = restrict_to_frame(m, frame, np.ones(2), j)
            if r[1, 0] < 0:
                frame = np.column_stack([frame[:, 0], -frame[:, 1]])
            out.append((theta, frame))
    out.sort(key=lambda t: -t[0])
    return out


def kernel_frame(m: np.ndarray, shift: float, threshold: float) -> np.ndarray:
    """Euclidean-orthonormal basis of ker(m - shift*I) at a threshold."""
    return null_space_at(m - shift * np.eye(m.shape[0]), threshold)
