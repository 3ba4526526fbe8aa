import numpy as np
import pytest

from conftest import block_rotation, boost_matrix, lorentz, maxabs
from hypiso.errors import (
    AmbiguousComponent,
    DependentBasis,
    DimensionMismatch,
    NotAnIsometry,
    ZeroVector,
)
from hypiso.quadspace import (
    CausalType,
    Component,
    QuadraticSpace,
    causal_type,
    classify_membership,
    matrix_from_json,
    matrix_to_json,
    q_value,
    subspace_type,
)
from hypiso.sampling import random_soo


def basis_vector(dim, i):
    v = np.zeros(dim)
    v[i] = 1.0
    return v


class TestFormValues:
    def test_time_axis(self):
        sp = QuadraticSpace(3)
        assert q_value(sp, basis_vector(4, 3)) == -1.0

    def test_space_axis(self):
        sp = QuadraticSpace(3)
        assert q_value(sp, basis_vector(4, 0)) == 1.0

    def test_null_vector(self):
        sp = QuadraticSpace(3)
        assert q_value(sp, basis_vector(4, 0) + basis_vector(4, 3)) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            q_value(QuadraticSpace(3), np.ones(3))


class TestCausalType:
    def test_trichotomy(self):
        sp = QuadraticSpace(2)
        assert causal_type(sp, [0, 0, 1]) is CausalType.TIME_LIKE
        assert causal_type(sp, [1, 0, 0]) is CausalType.SPACE_LIKE
        assert causal_type(sp, [1, 0, 1]) is CausalType.LIGHT_LIKE

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVector):
            causal_type(QuadraticSpace(2), np.zeros(3))

    def test_invariance_under_identity_component(self, rng):
        sp = QuadraticSpace(3)
        vectors = [
            np.array([0.0, 0.0, 0.0, 1.0]),
            np.array([1.0, 2.0, 0.5, 0.2]),
            np.array([0.3, 0.0, 0.0, 2.0]),
        ]
        for _ in range(20):
            w = random_soo(rng, 3)
            for v in vectors:
                assert causal_type(sp, w @ v) is causal_type(sp, v)


class TestSubspaceType:
    def test_time_like_plane(self):
        sp = QuadraticSpace(3)
        assert subspace_type(sp, [basis_vector(4, 0), basis_vector(4, 3)]) is CausalType.TIME_LIKE

    def test_space_like_plane(self):
        sp = QuadraticSpace(3)
        assert subspace_type(sp, [basis_vector(4, 0), basis_vector(4, 1)]) is CausalType.SPACE_LIKE

    def test_light_like_ray(self):
        sp = QuadraticSpace(3)
        assert subspace_type(sp, [basis_vector(4, 0) + basis_vector(4, 3)]) is CausalType.LIGHT_LIKE

    def test_degenerate_plane(self):
        sp = QuadraticSpace(3)
        null = basis_vector(4, 0) + basis_vector(4, 3)
        assert subspace_type(sp, [null, basis_vector(4, 1)]) is CausalType.DEGENERATE

    def test_dependent_basis_rejected(self):
        sp = QuadraticSpace(3)
        v = basis_vector(4, 1)
        with pytest.raises(DependentBasis):
            subspace_type(sp, [v, 2 * v])


class TestMembership:
    def test_identity_is_identity_component(self):
        for n in (1, 2, 5):
            t = classify_membership(QuadraticSpace(n), np.eye(n + 1))
            assert t.component is Component.SO_o

    def test_form_matrix_is_time_reversal(self):
        # J itself: det -1, flips the sheet
        sp = QuadraticSpace(4)
        t = classify_membership(sp, sp.form_matrix)
        assert t.component is Component.O_minus_swapping

    def test_double_flip_is_so_swap(self):
        sp = QuadraticSpace(4)
        m = np.diag([1.0, 1.0, 1.0, -1.0, -1.0])
        assert classify_membership(sp, m).component is Component.SO_swap

    def test_space_reflection_preserves_sheet(self):
        sp = QuadraticSpace(3)
        m = np.diag([-1.0, 1.0, 1.0, 1.0])
        assert classify_membership(sp, m).component is Component.O_minus_preserving

    def test_not_an_isometry(self):
        with pytest.raises(NotAnIsometry):
            classify_membership(QuadraticSpace(2), 2.0 * np.eye(3))

    def test_ambiguous_component_on_corrupt_input(self):
        # only reachable with a huge tolerance: a "matrix" passing the
        # form check whose sheet entry carries no sign information
        sp = QuadraticSpace(1)
        m = np.array([[1.0, 0.0], [0.0, 1e-15]])
        with pytest.raises(AmbiguousComponent):
            classify_membership(sp, m, eps=10.0)

    def test_inverse_stays_in_component(self, rng):
        sp = QuadraticSpace(3)
        t = lorentz(boost_matrix(3, 0.8) @ block_rotation(0.7, pad=2))
        tinv = t.inverse()
        resid = maxabs(t.entries @ tinv.entries - np.eye(4))
        assert resid < 1e-12
        assert tinv.component is t.component


class TestComponentGroupLaw:
    def test_klein_four_table(self):
        flip_det = Component.O_minus_preserving
        flip_sheet = Component.SO_swap
        both = Component.O_minus_swapping
        assert flip_det.compose(flip_det) is Component.SO_o
        assert flip_det.compose(flip_sheet) is both
        assert both.compose(both) is Component.SO_o

    def test_product_labels_on_random_elements(self, rng):
        sp = QuadraticSpace(3)
        reps = {
            Component.SO_o: np.eye(4),
            Component.SO_swap: np.diag([1.0, 1.0, -1.0, -1.0]),
            Component.O_minus_preserving: np.diag([-1.0, 1.0, 1.0, 1.0]),
            Component.O_minus_swapping: np.asarray(sp.form_matrix),
        }
        for _ in range(15):
            w1 = random_soo(rng, 3) @ reps[list(reps)[rng.integers(0, 4)]]
            w2 = random_soo(rng, 3) @ reps[list(reps)[rng.integers(0, 4)]]
            t1 = classify_membership(sp, w1, 1e-8)
            t2 = classify_membership(sp, w2, 1e-8)
            prod = classify_membership(sp, w1 @ w2, 1e-7)
            assert prod.component is t1.component.compose(t2.component)


class TestFormPreservationBound:
    def test_q_preserved_within_stated_constant(self, rng):
        # |Q(Tv) - Q(v)| <= c * resid * |v|^2 with c = dim of the space
        sp = QuadraticSpace(4)
        for _ in range(10):
            w = random_soo(rng, 4)
            t = classify_membership(sp, w, 1e-8)
            resid = 1e-8 * max(1.0, maxabs(w) ** 2)
            for _ in range(5):
                v = rng.standard_normal(5) * 3.0
                drift = abs(q_value(sp, t.entries @ v) - q_value(sp, v))
                assert drift <= sp.dim * resid * float(v @ v)


class TestInterchangeFormat:
    def test_round_trip_is_exact(self, rng):
        m = random_soo(rng, 3)
        space, back = matrix_from_json(matrix_to_json(m))
        assert space.n == 3
        assert np.array_equal(back, m)

    def test_malformed_document_raises_value_error(self):
        with pytest.raises(ValueError):
            matrix_from_json('{"n": 2, "matrix": [1, 2, 3]}')
