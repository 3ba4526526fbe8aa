"""Reality (reversibility) deciders with explicit reverser construction.

An element g of a group G is *real* in G when some h in G satisfies
h g h^-1 = g^-1, and *strongly real* when it is a product of two
involutions in G.  Deciders are provided for O(n), SO(n), SO_o(n,1) and
the Moebius identity component M_o(n) = SO_o(n+1,1).

Every positive decision ships a verified reverser; all constructions here
produce involutions, so reality and strong reality coincide on everything
this module emits (which is also what the theory guarantees).

Decision logic, uniform across classes: a reverser is forced to act with
determinant -1 on every invariant rotation plane with angle in (0, pi),
with determinant -1 on the invariant time-like block of a hyperbolic or
parabolic element, and trivially on the fixed time-like direction of an
elliptic one; it is free on the eigenspaces for +1 and -1.  Reality in the
identity component therefore reduces to parity bookkeeping over those
blocks, which reproduces the mod-4 case analysis of the classification
theorems.

For hyperbolic elements the "eigenvalue 1 or -1" condition is read on the
space-like spectrum (the time-like plane contributes the stretch pair
r, 1/r), matching the proof rather than the looser theorem wording.

The randomized oracle never proves non-reality; its mode (a) enumeration
is exact for regular elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import frames
from .classify import (
    FixedPointClass,
    _elliptic_fixed_vector,
    _hyperbolic_rays,
    _parabolic_ray,
    fixed_point_class,
)
from .errors import (
    BudgetExhausted,
    HypisoError,
    NotInIdentityComponent,
    NotOrthogonal,
    NotSpecialOrthogonal,
)
from .quadspace import (
    Component,
    LorentzMatrix,
    classify_membership,
    is_orthogonal,
)
from .spectral import DEFAULT_DELTA, PM_ONE_TOL, null_space_at, rotation_angles

RESIDUAL_TOL = 1e-8

GROUP_O = "O_n"
GROUP_SO = "SO_n"
GROUP_SOO = "SO_o_n1"
GROUP_MO = "M_o_n"


@dataclass(frozen=True, eq=False)
class RealityCertificate:
    group: str
    decision: bool
    clause: str
    reverser: Optional[np.ndarray]
    involution: bool

    def to_json_dict(self) -> dict:
        rev = None
        if self.reverser is not None:
            rev = {
                "n": self.reverser.shape[0] - 1,
                "matrix": [float(x) for x in self.reverser.ravel()],
            }
        return {
            "group": self.group,
            "decision": self.decision,
            "clause": self.clause,
            "reverser": rev,
            "involution": self.involution,
        }


def reversal_residual(s: np.ndarray, t: np.ndarray) -> float:
    """max-norm of S T S^-1 - T^-1 computed without explicit inverses of S."""
    return float(np.max(np.abs(s @ t @ np.linalg.inv(s) - np.linalg.inv(t))))


def _check_certificate(s: np.ndarray, t: np.ndarray, j: Optional[np.ndarray]) -> None:
    if reversal_residual(s, t) > RESIDUAL_TOL:
        raise HypisoError("constructed reverser failed its residual check")
    if float(np.max(np.abs(s @ s - np.eye(s.shape[0])))) > RESIDUAL_TOL:
        raise HypisoError("constructed reverser is not an involution")
    if j is None:
        if float(np.max(np.abs(s.T @ s - np.eye(s.shape[0])))) > RESIDUAL_TOL:
            raise HypisoError("constructed reverser left the orthogonal group")
    else:
        jj = np.diag(j)
        if float(np.max(np.abs(s.T @ jj @ s - jj))) > RESIDUAL_TOL:
            raise HypisoError("constructed reverser left the Lorentz group")


# ---------------------------------------------------------------------------
# orthogonal groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class _OrthogonalBlocks:
    planes: list  # (angle, frame) with angle in (0, pi)
    fix_frame: np.ndarray  # ker(T - I)
    neg_frame: np.ndarray  # ker(T + I)

    @property
    def p(self) -> int:
        return len(self.planes)

    @property
    def a(self) -> int:
        return self.fix_frame.shape[1]

    @property
    def b(self) -> int:
        return self.neg_frame.shape[1]


def _orthogonal_blocks(t: np.ndarray, delta: float) -> _OrthogonalBlocks:
    n = t.shape[0]
    ones = np.ones(n)
    planes = frames.invariant_plane_frames(t, ones, delta)
    planes = [(theta, fr) for theta, fr in planes if theta < np.pi - delta]
    fix = null_space_at(t - np.eye(n), max(delta, PM_ONE_TOL))
    neg = null_space_at(t + np.eye(n), max(delta, PM_ONE_TOL))
    if 2 * len(planes) + fix.shape[1] + neg.shape[1] != n:
        raise HypisoError("invariant block bookkeeping failed; refine delta")
    return _OrthogonalBlocks(planes, fix, neg)


def _orthogonal_reverser(
    blocks: _OrthogonalBlocks, n: int, target_det: Optional[int]
) -> Optional[np.ndarray]:
    """Involutive reverser from per-plane reflections; determinant adjusted
    on the +-1 eigenspaces when a target is requested."""
    base_det = -1 if blocks.p % 2 else 1
    flip = False
    if target_det is not None and base_det != target_det:
        if blocks.a == 0 and blocks.b == 0:
            return None
        flip = True
    s = np.zeros((n, n))
    for _, fr in blocks.planes:
        s += np.outer(fr[:, 0], fr[:, 0]) - np.outer(fr[:, 1], fr[:, 1])
    for frame in (blocks.fix_frame, blocks.neg_frame):
        for i in range(frame.shape[1]):
            sign = 1.0
            if flip:
                sign, flip = -1.0, False
            s += sign * np.outer(frame[:, i], frame[:, i])
    return s


def is_real_On(
    t, delta: float = DEFAULT_DELTA, eps: float = 1e-9
) -> RealityCertificate:
    """Every orthogonal element is (strongly) real; returns an involutive
    reverser built from per-plane reflections."""
    t = np.asarray(t, dtype=float)
    if not is_orthogonal(t, eps):
        raise NotOrthogonal("input is not orthogonal within tolerance")
    blocks = _orthogonal_blocks(t, delta)
    s = _orthogonal_reverser(blocks, t.shape[0], target_det=None)
    _check_certificate(s, t, None)
    return RealityCertificate(GROUP_O, True, "W", s, True)


def _son_data(t, delta: float, eps: float):
    t = np.asarray(t, dtype=float)
    if not is_orthogonal(t, eps):
        raise NotOrthogonal("input is not orthogonal within tolerance")
    if np.linalg.det(t) < 0:
        raise NotSpecialOrthogonal("input has determinant -1")
    return t, _orthogonal_blocks(t, delta)


def is_real_SOn(
    t, delta: float = DEFAULT_DELTA, eps: float = 1e-9
) -> RealityCertificate:
    """Reality in SO(n): true iff n is not 2 mod 4 or T has eigenvalue +-1.

    On a negative decision the clause names the determinant-parity
    obstruction (n = 2 mod 4 with no +-1 eigenvalue forces every
    orthogonal reverser to have determinant -1).
    """
    t, blocks = _son_data(t, delta, eps)
    n = t.shape[0]
    has_pm1 = blocks.a + blocks.b >= 1
    decision = (n % 4 != 2) or has_pm1
    if not decision:
        return RealityCertificate(GROUP_SO, False, "Thm3.5-mod4", None, False)
    clause = "Thm3.5-mod4" if n % 4 != 2 else "Thm3.5-pm1"
    s = _orthogonal_reverser(blocks, n, target_det=1)
    if s is None:
        raise HypisoError("decision true but construction failed; inconsistent")
    _check_certificate(s, t, None)
    return RealityCertificate(GROUP_SO, True, clause, s, True)


def is_strongly_real_SOn(
    t, delta: float = DEFAULT_DELTA, eps: float = 1e-9
) -> RealityCertificate:
    """Strong reality in SO(n): true iff n is not 2 mod 4 or some
    orthogonally indecomposable invariant summand is odd-dimensional
    (equivalently, T has an eigenvalue +-1).

    The decision provably equals :func:`is_real_SOn`'s; this is asserted,
    not assumed.
    """
    t, blocks = _son_data(t, delta, eps)
    n = t.shape[0]
    odd_summand = blocks.a + blocks.b >= 1  # +-1 eigenspaces split into lines
    decision = (n % 4 != 2) or odd_summand
    if decision != is_real_SOn(t, delta, eps).decision:
        raise HypisoError("strong-reality and reality deciders disagree")
    if not decision:
        return RealityCertificate(GROUP_SO, False, "KN", None, False)
    s = _orthogonal_reverser(blocks, n, target_det=1)
    _check_certificate(s, t, None)
    return RealityCertificate(GROUP_SO, True, "KN", s, True)


# ---------------------------------------------------------------------------
# Lorentzian structure
# ---------------------------------------------------------------------------


_UNIPOTENT_SIGNS = np.array([1.0, 1.0, -1.0])


def _standard_unipotent(c: float) -> np.ndarray:
    """exp(c X) for the translation generator fixing the ray (0, 1, 1)."""
    return np.array(
        [
            [1.0, -c, c],
            [c, 1.0 - c * c / 2.0, c * c / 2.0],
            [c, -c * c / 2.0, 1.0 + c * c / 2.0],
        ]
    )


def _parabolic_frame(t: LorentzMatrix, delta: float = DEFAULT_DELTA) -> tuple[np.ndarray, float]:
    """J-orthonormal frame (f1, f2, f3) of the invariant 3-dim time-like
    block of a parabolic element, in which T restricts to the standard
    unipotent; returns (frame, c)."""
    space = t.space
    j = space.form_signs
    n1 = t.entries - np.eye(space.dim)
    u = _parabolic_ray(t, delta)
    if u[-1] < 0:
        u = -u
    # minimal-norm Jordan chain top: orthogonal to ker((T-I)^2), hence
    # free of rotation-plane components
    w, *_ = np.linalg.lstsq(n1 @ n1, u, rcond=1e-9)
    c_uw = frames.j_inner(j, u, w)
    if abs(c_uw) < 1e-10:
        raise HypisoError("degenerate pairing in the unipotent block")
    # second null direction inside span(u, Nw, w)
    beta = -frames.j_inner(j, w, w) / (2.0 * c_uw)
    u2 = w + beta * u
    if frames.j_inner(j, u, u2) > 0:
        u2 = -u2
    u2 = u2 * (-2.0 / frames.j_inner(j, u, u2))
    f2 = (u - u2) / 2.0
    f3 = (u + u2) / 2.0
    y = n1 @ w
    y = y - frames.j_inner(j, y, f2) * f2 + frames.j_inner(j, y, f3) * f3
    qy = frames.j_inner(j, y, y)
    if qy <= 0:
        raise HypisoError("unipotent block frame is not space-like where expected")
    f1 = y / np.sqrt(qy)
    frame = np.column_stack([f1, f2, f3])
    block = frames.restrict_to_frame(t.entries, frame, _UNIPOTENT_SIGNS, j)
    c = float(block[1, 0])
    if float(np.max(np.abs(block - _standard_unipotent(c)))) > 1e-7:
        raise HypisoError("parabolic block did not reduce to the standard unipotent")
    return frame, c


@dataclass(frozen=True, eq=False)
class _LorentzStructure:
    """Adapted splitting: special time-like block + space-like complement."""

    cls: FixedPointClass
    special_frame: np.ndarray
    special_signs: np.ndarray
    w_frame: np.ndarray
    t_o: np.ndarray  # orthogonal restriction to the space-like complement
    blocks: _OrthogonalBlocks  # invariant blocks of t_o

    @property
    def a(self) -> int:
        return self.blocks.a

    @property
    def b(self) -> int:
        return self.blocks.b

    @property
    def p(self) -> int:
        return self.blocks.p


def _lorentz_structure(t: LorentzMatrix, delta: float) -> _LorentzStructure:
    space = t.space
    j = space.form_signs
    cls = fixed_point_class(t, delta)
    if cls is FixedPointClass.ELLIPTIC:
        v = _elliptic_fixed_vector(t, delta)
        special = v[:, None]
        signs = np.array([-1.0])
    elif cls is FixedPointClass.HYPERBOLIC:
        att, rep = _hyperbolic_rays(t, delta)
        gamma = frames.j_inner(j, att, rep)
        if gamma >= 0:
            raise HypisoError("fixed rays of a hyperbolic element must pair negatively")
        rep2 = rep * (-2.0 / gamma)
        s_vec = (att - rep2) / 2.0
        t_vec = (att + rep2) / 2.0
        special = np.column_stack([s_vec, t_vec])
        signs = np.array([1.0, -1.0])
    else:
        frame, _ = _parabolic_frame(t, delta)
        special = frame
        signs = _UNIPOTENT_SIGNS
    w_frame = frames.spacelike_complement(special, j)
    t_o = frames.restrict_to_frame(t.entries, w_frame, np.ones(w_frame.shape[1]), j)
    blocks = (
        _orthogonal_blocks(t_o, delta)
        if t_o.shape[0]
        else _OrthogonalBlocks([], np.zeros((0, 0)), np.zeros((0, 0)))
    )
    return _LorentzStructure(cls, special, signs, w_frame, t_o, blocks)


def _special_reverser_options(st: _LorentzStructure) -> list[tuple[int, int, np.ndarray]]:
    """(det, sheet, block) choices for the time-like special block."""
    if st.cls is FixedPointClass.ELLIPTIC:
        return [(1, 1, np.array([[1.0]])), (-1, -1, np.array([[-1.0]]))]
    if st.cls is FixedPointClass.HYPERBOLIC:
        return [(-1, 1, np.diag([-1.0, 1.0])), (-1, -1, np.diag([1.0, -1.0]))]
    sigma = np.diag([-1.0, 1.0, 1.0])
    return [(-1, 1, sigma), (1, -1, -sigma)]


def _assemble_lorentz_reverser(
    t: LorentzMatrix,
    st: _LorentzStructure,
    special_block: np.ndarray,
    flip_count: int,
) -> np.ndarray:
    """Global reverser from a special-block choice, forced per-plane
    reflections and ``flip_count`` sign flips on the +-1 eigenspaces."""
    j = t.space.form_signs
    s = st.special_frame @ special_block @ frames.frame_pinv(
        st.special_frame, st.special_signs, j
    )
    w_pinv = frames.frame_pinv(st.w_frame, np.ones(st.w_frame.shape[1]), j)
    n_o = st.t_o.shape[0]
    s_o = np.zeros((n_o, n_o))
    for _, fr in st.blocks.planes:
        s_o += np.outer(fr[:, 0], fr[:, 0]) - np.outer(fr[:, 1], fr[:, 1])
    remaining = flip_count
    for frame in (st.blocks.fix_frame, st.blocks.neg_frame):
        for i in range(frame.shape[1]):
            sign = 1.0
            if remaining > 0:
                sign, remaining = -1.0, remaining - 1
            s_o += sign * np.outer(frame[:, i], frame[:, i])
    if remaining:
        raise HypisoError("not enough +-1 eigendirections for the requested flips")
    if n_o:
        s = s + st.w_frame @ s_o @ w_pinv
    return s


def _lorentz_reverser_for(
    t: LorentzMatrix, st: _LorentzStructure, det: int, sheet: int
) -> Optional[np.ndarray]:
    """A reverser in the requested (determinant, sheet) component, or None."""
    plane_det = -1 if st.p % 2 else 1
    for sp_det, sp_sheet, sp_block in _special_reverser_options(st):
        if sp_sheet != sheet:
            continue
        need = det * sp_det * plane_det  # +1 -> no flip, -1 -> one flip
        if need == 1:
            return _assemble_lorentz_reverser(t, st, sp_block, 0)
        if st.a + st.b >= 1:
            return _assemble_lorentz_reverser(t, st, sp_block, 1)
    return None


def _theorem_clause(n: int, cls: FixedPointClass, a: int, b: int) -> tuple[bool, str]:
    """Decision and clause tag of the reality theorem for SO_o(n,1)."""
    if n % 4 in (0, 3):
        return True, "Thm1.1-1"
    if n % 4 == 1:
        decision = (cls is not FixedPointClass.HYPERBOLIC) or (a + b >= 1)
        return decision, "Thm1.1-2"
    # n = 2 mod 4
    if cls is FixedPointClass.HYPERBOLIC:
        return True, "Thm1.1-3i"
    if b >= 1:
        return True, "Thm1.1-3ii"
    return a >= 1, "Thm1.1-3iii"


def is_real_SOo_n1(
    t: LorentzMatrix, delta: float = DEFAULT_DELTA
) -> RealityCertificate:
    """Reality in the identity component SO_o(n,1).

    Decision per the mod-4 case analysis; on a positive decision the
    reverser is an involution in SO_o(n,1) assembled from the adapted
    block splitting (so strong reality holds whenever reality does).
    """
    if not t.identity_component:
        raise NotInIdentityComponent("element is outside SO_o(n,1)")
    st = _lorentz_structure(t, delta)
    decision, clause = _theorem_clause(t.space.n, st.cls, st.a, st.b)
    if not decision:
        return RealityCertificate(GROUP_SOO, False, clause, None, False)
    s = _lorentz_reverser_for(t, st, det=1, sheet=1)
    if s is None:
        raise HypisoError("positive decision without achievable reverser; inconsistent")
    _check_certificate(s, t.entries, t.space.form_signs)
    comp = classify_membership(t.space, s, 1e-8).component
    if comp is not Component.SO_o:
        raise HypisoError("constructed reverser left the identity component")
    return RealityCertificate(GROUP_SOO, True, clause, s, True)


def is_real_Mo(t: LorentzMatrix, delta: float = DEFAULT_DELTA) -> RealityCertificate:
    """Reality in M_o(n) via the identification M_o(n) = SO_o(n+1,1);
    the element acts on H^{n+1} and n denotes the boundary dimension."""
    inner = is_real_SOo_n1(t, delta)
    return RealityCertificate(GROUP_MO, inner.decision, inner.clause, inner.reverser, inner.involution)


# ---------------------------------------------------------------------------
# independent oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OracleReport:
    """Achievable reverser components.

    ``exact`` lists every achievable (det, sheet) pair for a regular input
    (complete enumeration); ``sampled`` lists pairs found by randomized
    search, which proves existence only.  ``sheet`` is +1 for orthogonal
    groups.
    """

    group: str
    regular: bool
    exact: Optional[frozenset]
    exact_witnesses: dict
    sampled: frozenset
    sampled_witnesses: dict
    samples_used: int
    exhausted: bool

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "regular": self.regular,
            "exact": sorted(list(self.exact)) if self.exact is not None else None,
            "sampled": sorted(list(self.sampled)),
            "samples_used": self.samples_used,
            "exhausted": self.exhausted,
        }


def _exact_orthogonal_enumeration(t: np.ndarray, delta: float):
    blocks = _orthogonal_blocks(t, delta)
    base = -1 if blocks.p % 2 else 1
    achievable = {}
    s0 = _orthogonal_reverser(blocks, t.shape[0], target_det=None)
    achievable[(base, 1)] = s0
    if blocks.a + blocks.b >= 1:
        achievable[(-base, 1)] = _orthogonal_reverser(blocks, t.shape[0], target_det=-base)
    return achievable


def _exact_lorentz_enumeration(t: LorentzMatrix, delta: float):
    st = _lorentz_structure(t, delta)
    achievable = {}
    for det, sheet in itertools.product((1, -1), (1, -1)):
        s = _lorentz_reverser_for(t, st, det, sheet)
        if s is not None:
            achievable[(det, sheet)] = s
    return achievable


def _reverser_solution_basis(t: np.ndarray) -> np.ndarray:
    """Basis of the linear space {X : X T = T^-1 X} (columns are vecs)."""
    n = t.shape[0]
    tinv = np.linalg.inv(t)
    k = np.kron(t.T, np.eye(n)) - np.kron(np.eye(n), tinv)
    _, svals, vt = np.linalg.svd(k)
    tol = max(1.0, svals[0]) * 1e-10
    small = np.ones(n * n, dtype=bool)
    small[: len(svals)] = svals <= tol
    return vt[small].T


def _project_orthogonal_batch(xs: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(xs)
    return u @ vt


def _project_lorentz_batch(
    xs: np.ndarray, j: np.ndarray, iters: int = 50
) -> np.ndarray:
    """Hyperbolic Newton iteration Y <- (Y + J Y^-T J)/2, batched; diverged
    samples come back as NaN.  The iteration preserves the linear solution
    space of X T = T^-1 X, so limits of solution-space samples are group
    reversers."""
    ys = xs.copy()
    jl = j[None, :, None]
    jr = j[None, None, :]
    for _ in range(iters):
        with np.errstate(invalid="ignore", over="ignore"):
            dets = np.linalg.det(ys)
        bad = ~np.isfinite(dets) | (np.abs(dets) < 1e-12)
        ys[bad] = np.nan
        good = ~bad
        if not np.any(good):
            break
        inv_t = np.transpose(np.linalg.inv(ys[good]), (0, 2, 1))
        ys[good] = 0.5 * (ys[good] + jl * inv_t * jr)
    return ys


def _component_key(s: np.ndarray, j: Optional[np.ndarray]) -> tuple[int, int]:
    det = 1 if np.linalg.det(s) > 0 else -1
    if j is None:
        return det, 1
    sheet = 1 if s[-1, -1] > 0 else -1
    return det, sheet


def reverser_oracle(
    t,
    group: str,
    budget: int = 2000,
    seed: int = 0,
    delta: float = DEFAULT_DELTA,
    require: Optional[set] = None,
) -> OracleReport:
    """Survey achievable reverser components by two independent strategies.

    Mode (a), exact: for regular input, enumerate per-block reverser
    choices and read the achievable (det, sheet) set exactly.  Mode (b),
    randomized: sample the linear solution space of X T = T^-1 X, project
    to the group (polar factor, or the hyperbolic Newton iteration for
    Lorentz groups), and record the components of verified witnesses.

    With ``require``, raises :class:`BudgetExhausted` if sampling ends
    before every required component was seen (mode (a) hits are counted).
    """
    lorentzian = group in (GROUP_SOO, GROUP_MO)
    if lorentzian:
        if not isinstance(t, LorentzMatrix):
            raise NotInIdentityComponent("Lorentz oracle needs a validated matrix")
        mat = t.entries
        j = t.space.form_signs
    else:
        mat = np.asarray(t, dtype=float)
        if not is_orthogonal(mat):
            raise NotOrthogonal("orthogonal oracle needs an orthogonal matrix")
        j = None
    ang = rotation_angles(t if lorentzian else mat, delta).angles
    regular = all(ang[i] - ang[i + 1] > delta for i in range(len(ang) - 1))

    exact = None
    exact_witnesses: dict = {}
    if regular:
        exact_witnesses = (
            _exact_lorentz_enumeration(t, delta)
            if lorentzian
            else _exact_orthogonal_enumeration(mat, delta)
        )
        for key, s in exact_witnesses.items():
            if reversal_residual(s, mat) > RESIDUAL_TOL:
                raise HypisoError("exact enumeration produced an invalid witness")
        exact = frozenset(exact_witnesses)

    rng = np.random.default_rng(seed)
    basis = _reverser_solution_basis(mat)
    found: dict = {}
    used = 0
    dim = mat.shape[0]
    jd = np.diag(j) if j is not None else np.eye(dim)
    tinv = np.linalg.inv(mat)
    if basis.shape[1] > 0:
        batch = 512
        while used < budget:
            take = min(batch, budget - used)
            coeffs = rng.standard_normal((basis.shape[1], take))
            used += take
            vecs = basis @ coeffs  # column-major vecs, one sample per column
            xs = np.stack(
                [vecs[:, i].reshape(dim, dim, order="F") for i in range(take)]
            )
            if j is None:
                ss = _project_orthogonal_batch(xs)
            else:
                ss = _project_lorentz_batch(xs, j)
            finite = np.isfinite(ss).all(axis=(1, 2))
            ss = ss[finite]
            if ss.shape[0] == 0:
                continue
            st = np.transpose(ss, (0, 2, 1))
            grp = np.abs(st @ (jd @ ss) - jd).max(axis=(1, 2))
            sinv = st if j is None else jd @ st @ jd
            rev = np.abs(ss @ mat @ sinv - tinv).max(axis=(1, 2))
            ok = (grp <= 1e-9) & (rev <= RESIDUAL_TOL)
            for s in ss[ok]:
                found.setdefault(_component_key(s, j), s)
            if require is not None and require <= (set(found) | set(exact_witnesses)):
                break
    exhausted = used >= budget
    if require is not None and not require <= (set(found) | set(exact_witnesses)):
        raise BudgetExhausted(
            f"required components {require} not all found in {used} samples"
        )
    return OracleReport(
        group=group,
        regular=regular,
        exact=exact,
        exact_witnesses=exact_witnesses,
        sampled=frozenset(found),
        sampled_witnesses=found,
        samples_used=used,
        exhausted=exhausted,
    )
