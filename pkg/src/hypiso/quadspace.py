"""Lorentzian linear algebra over (V, Q) with signature (n, 1).

Conventions, fixed once for the whole package:

* the ambient space is R^(n+1) with the quadratic form
  ``Q(x) = x_0^2 + ... + x_{n-1}^2 - x_n^2`` (time coordinate last),
  i.e. the form matrix is ``J = diag(1, ..., 1, -1)``;
* the hyperbolic space H^n is the sheet ``{Q(v) = -1, v_n > 0}``;
* an isometry is *sheet-preserving* when it maps that sheet to itself,
  which for a form-preserving matrix M is decided by the sign of
  ``(M e_n)_n = M[n, n]``.

O(n,1) has four components, labelled here by determinant sign and sheet
behaviour.  The isometry group of H^{n+1} (the Moebius group M(n) of the
n-sphere) is identified with the two sheet-preserving components of
O(n+1,1); its identity component M_o(n) is SO_o(n+1,1).  Orientation-
reversing isometries of H^{n+1} are the sheet-preserving matrices of
determinant -1.  No further restriction is applied.

All values are immutable after construction and every operation is a pure
function, so concurrent use needs no coordination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    AmbiguousComponent,
    DependentBasis,
    DimensionMismatch,
    InvalidArg,
    NotAnIsometry,
    ZeroVector,
)

# Relative tolerance for form-preservation residuals.  The residual of a
# product grows with the factors' norms, so every test below scales eps by
# max(1, ||M||_inf^2); causal typing scales by ||v||^2.
DEFAULT_EPS = 1e-9


class CausalType(Enum):
    """Sign class of Q on a vector or subspace.

    ``DEGENERATE`` never applies to a single nonzero vector; it is the
    fourth subspace tag (singular restricted Gram that is not identically
    zero), which the vector trichotomy cannot produce.
    """

    TIME_LIKE = "TimeLike"
    SPACE_LIKE = "SpaceLike"
    LIGHT_LIKE = "LightLike"
    DEGENERATE = "Degenerate"


class Component(Enum):
    """Connected component of O(n,1), labelled (det sign, sheet behaviour)."""

    SO_o = ("SO_o", 1, 1)
    SO_swap = ("SO_swap", 1, -1)
    O_minus_preserving = ("O_minus_preserving", -1, 1)
    O_minus_swapping = ("O_minus_swapping", -1, -1)

    def __init__(self, label: str, det_sign: int, sheet_sign: int):
        self.label = label
        self.det_sign = det_sign
        self.sheet_sign = sheet_sign

    @property
    def sheet_preserving(self) -> bool:
        return self.sheet_sign == 1

    @staticmethod
    def from_signs(det_sign: int, sheet_sign: int) -> "Component":
        for c in Component:
            if c.det_sign == det_sign and c.sheet_sign == sheet_sign:
                return c
        raise ValueError(f"no component for signs ({det_sign}, {sheet_sign})")

    def compose(self, other: "Component") -> "Component":
        """Component of a product, i.e. the Klein four-group law."""
        return Component.from_signs(
            self.det_sign * other.det_sign, self.sheet_sign * other.sheet_sign
        )


@dataclass(frozen=True)
class QuadraticSpace:
    """R^(n+1) with the diagonal form diag(1, ..., 1, -1)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch(f"spatial dimension must be >= 1, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n + 1

    @property
    def form_matrix(self) -> np.ndarray:
        j = np.ones(self.dim)
        j[-1] = -1.0
        return np.diag(j)

    @property
    def form_signs(self) -> np.ndarray:
        j = np.ones(self.dim)
        j[-1] = -1.0
        return j


def _as_vector(space: QuadraticSpace, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (space.dim,):
        raise DimensionMismatch(
            f"expected vector of length {space.dim}, got shape {v.shape}"
        )
    if not np.all(np.isfinite(v)):
        raise InvalidArg("vector entries must be finite")
    return v


def q_value(space: QuadraticSpace, v) -> float:
    """Evaluate Q(v) = x_0^2 + ... + x_{n-1}^2 - x_n^2."""
    v = _as_vector(space, v)
    return float(np.dot(v[:-1], v[:-1]) - v[-1] ** 2)


def q_inner(space: QuadraticSpace, u, v) -> float:
    """Polarized form <u, v> = u^T J v."""
    u = _as_vector(space, u)
    v = _as_vector(space, v)
    return float(np.dot(u[:-1], v[:-1]) - u[-1] * v[-1])


def causal_type(space: QuadraticSpace, v, eps: float = DEFAULT_EPS) -> CausalType:
    """Causal trichotomy of a nonzero vector at relative tolerance eps."""
    v = _as_vector(space, v)
    scale = float(np.dot(v, v))
    if scale == 0.0:
        raise ZeroVector("causal type of the zero vector is undefined")
    q = q_value(space, v)
    if q < -eps * scale:
        return CausalType.TIME_LIKE
    if q > eps * scale:
        return CausalType.SPACE_LIKE
    return CausalType.LIGHT_LIKE


def subspace_type(
    space: QuadraticSpace, basis, eps: float = DEFAULT_EPS
) -> CausalType:
    """Causal type of span(basis) from the restricted Gram matrix.

    Time-like means non-degenerate indefinite, space-like positive
    definite, light-like identically zero.  A singular Gram that is not
    identically zero is reported as ``DEGENERATE`` rather than coerced
    into the trichotomy.
    """
    b = np.column_stack([_as_vector(space, v) for v in basis])
    scale = max(1.0, float(np.max(np.abs(b))) ** 2)
    if np.linalg.matrix_rank(b, tol=eps * max(1.0, np.linalg.norm(b, 2))) < b.shape[1]:
        raise DependentBasis("basis vectors are linearly dependent")
    gram = b.T @ space.form_matrix @ b
    if np.max(np.abs(gram)) <= eps * scale:
        return CausalType.LIGHT_LIKE
    eigs = np.linalg.eigvalsh(gram)
    tol = eps * scale
    n_pos = int(np.sum(eigs > tol))
    n_neg = int(np.sum(eigs < -tol))
    n_zero = len(eigs) - n_pos - n_neg
    if n_zero > 0:
        return CausalType.DEGENERATE
    if n_neg == 0:
        return CausalType.SPACE_LIKE
    return CausalType.TIME_LIKE


@dataclass(frozen=True, eq=False)
class LorentzMatrix:
    """A validated element of O(n,1) with its component label.

    Construct through :func:`classify_membership`; the constructor itself
    does not re-check the form residual.
    """

    entries: np.ndarray
    component: Component
    tolerance: float
    space: QuadraticSpace = field(repr=False)

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def sheet_preserving(self) -> bool:
        return self.component.sheet_preserving

    @property
    def identity_component(self) -> bool:
        return self.component is Component.SO_o

    def inverse(self) -> "LorentzMatrix":
        """Group inverse J M^T J (exact up to rounding; same component)."""
        j = self.space.form_signs
        inv = (j[:, None] * self.entries.T) * j[None, :]
        return LorentzMatrix(inv, self.component, self.tolerance, self.space)

    def __matmul__(self, other: "LorentzMatrix") -> "LorentzMatrix":
        if self.space.n != other.space.n:
            raise DimensionMismatch("cannot compose matrices of different sizes")
        return LorentzMatrix(
            self.entries @ other.entries,
            self.component.compose(other.component),
            max(self.tolerance, other.tolerance),
            self.space,
        )

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


def form_residual(space: QuadraticSpace, m: np.ndarray) -> float:
    """max-norm of M^T J M - J."""
    j = space.form_matrix
    return float(np.max(np.abs(m.T @ j @ m - j)))


def classify_membership(
    space: QuadraticSpace, m, eps: float = DEFAULT_EPS
) -> LorentzMatrix:
    """Validate membership in O(n,1) and assign the component label.

    Raises ``NotAnIsometry`` when the form residual exceeds
    ``eps * max(1, ||M||_inf^2)``, and ``AmbiguousComponent`` when the
    sheet entry ``M[n, n]`` is too close to zero to carry a sign (which
    cannot happen for exact group elements, so it signals corrupt input).
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (space.dim, space.dim):
        raise DimensionMismatch(
            f"expected {space.dim}x{space.dim} matrix, got shape {m.shape}"
        )
    if not np.all(np.isfinite(m)):
        raise NotAnIsometry("matrix entries must be finite")
    scale = max(1.0, float(np.max(np.abs(m))) ** 2)
    resid = form_residual(space, m)
    if resid > eps * scale:
        raise NotAnIsometry(
            f"form residual {resid:.3e} exceeds tolerance {eps * scale:.3e}"
        )
    det = float(np.linalg.det(m))
    sheet_entry = float(m[-1, -1])
    if abs(sheet_entry) <= eps * scale:
        raise AmbiguousComponent(
            f"sheet entry {sheet_entry:.3e} is indistinguishable from zero"
        )
    comp = Component.from_signs(1 if det > 0 else -1, 1 if sheet_entry > 0 else -1)
    return LorentzMatrix(np.array(m), comp, eps, space)


def is_orthogonal(m: np.ndarray, eps: float = DEFAULT_EPS) -> bool:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m.T @ m - np.eye(m.shape[0])))) <= eps * max(
        1.0, float(np.max(np.abs(m))) ** 2
    )


# ---------------------------------------------------------------------------
# Matrix interchange format, shared by every module and the CLI: a JSON
# document {"n": <int>, "matrix": <row-major list of (n+1)^2 floats>}.
# Python's float repr round-trips doubles exactly, which meets the
# full-double-precision requirement for writers.
# ---------------------------------------------------------------------------


def matrix_to_document(m) -> dict:
    m = np.asarray(m, dtype=float)
    n = m.shape[0] - 1
    return {"n": n, "matrix": [float(x) for x in m.ravel(order="C")]}


def matrix_to_json(m) -> str:
    return json.dumps(matrix_to_document(m))


def matrix_from_document(doc: dict) -> tuple[QuadraticSpace, np.ndarray]:
    try:
        n = int(doc["n"])
        flat = np.asarray(doc["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix document: {exc}") from exc
    dim = n + 1
    if flat.shape != (dim * dim,):
        raise ValueError(
            f"matrix field has {flat.size} entries, expected {dim * dim}"
        )
    return QuadraticSpace(n), flat.reshape(dim, dim)


def matrix_from_json(text: str) -> tuple[QuadraticSpace, np.ndarray]:
    return matrix_from_document(json.loads(text))
