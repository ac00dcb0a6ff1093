import numpy as np
import pytest

from leafkit.errors import NotSkewHermitian, NotUnitVector
from leafkit.orbits import kernel_range_split, skew_hermitian_basis
from leafkit.symplectic import (
    kaehler_check,
    omega,
    omega_complexified,
    polarization,
    polarization_properties,
    projective_form_compare,
    radical_check,
)

from conftest import random_skew, random_unitary


class TestOmega:
    def test_antisymmetry_diagonal(self, rng):
        t = random_skew(3, rng)
        x = random_skew(3, rng)
        assert omega(t, x, x) == 0.0

    def test_worked_example(self):
        t = np.diag([1j, -1j])
        x = np.array([[0, 1], [-1, 0]], dtype=complex)
        y = np.array([[0, 1j], [1j, 0]], dtype=complex)
        assert omega(t, x, y) == pytest.approx(-4.0, abs=1e-12)

    def test_zero_reference(self, rng):
        assert omega(np.zeros((3, 3)), random_skew(3, rng), random_skew(3, rng)) == 0.0

    def test_real_valued_and_antisymmetric(self, rng):
        for _ in range(20):
            t, x, y = (random_skew(4, rng) for _ in range(3))
            val = omega_complexified(t, x, y)
            assert abs(val.imag) <= 1e-12 * max(1.0, abs(val))
            assert omega(t, x, y) == pytest.approx(-omega(t, y, x), abs=1e-12)

    def test_ad_invariance(self, rng):
        for _ in range(10):
            t, x, y = (random_skew(4, rng) for _ in range(3))
            u = random_unitary(4, rng)
            conj = lambda m: u @ m @ u.conj().T
            assert omega(t, x, y) == pytest.approx(omega(conj(t), conj(x), conj(y)), abs=1e-9)

    def test_hermitian_reference_promoted(self, rng):
        # a Hermitian reference is accepted and read as its skew partner iT
        t = np.diag([1.0, -1.0]).astype(complex)
        x, y = random_skew(2, rng), random_skew(2, rng)
        assert omega(t, x, y) == pytest.approx(omega(1j * t, x, y), abs=1e-12)

    def test_rejects_general_matrix(self, rng):
        bad = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        bad = bad + bad.conj().T + 1j * np.eye(3)  # neither Hermitian nor skew
        with pytest.raises(NotSkewHermitian):
            omega(bad, random_skew(3, rng), random_skew(3, rng))


def gram_nullity_oracle(t, tol=1e-9):
    """Independent radical dimension: explicit Gram matrix over the
    standard skew basis, nullity by SVD."""
    n = t.shape[0]
    basis = skew_hermitian_basis(n)
    g = np.zeros((len(basis), len(basis)))
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            g[a, b] = np.trace(t @ (x @ y - y @ x)).real
    sv = np.linalg.svd(g, compute_uv=False)
    if sv[0] == 0.0:
        return len(basis)
    return int(np.sum(sv <= tol * sv[0]))


class TestRadical:
    def test_scalar_reference(self):
        res = radical_check(0.5j * np.eye(3), sample_count=10, seed=0)
        assert res.radical_dim == 9
        assert res.isotropy_dim == 9
        assert res.match

    def test_two_point_against_oracle(self):
        t = np.diag([1j, -1j])
        res = radical_check(t, sample_count=10, seed=0)
        assert res.radical_dim == gram_nullity_oracle(t) == 2
        assert res.match

    def test_multiplicity_pattern(self, rng):
        u = random_unitary(3, rng)
        t = u @ np.diag([2j, 2j, 1j]) @ u.conj().T
        res = radical_check(t, sample_count=10, seed=0)
        assert res.radical_dim == gram_nullity_oracle(t) == 5
        assert res.match
        assert res.sampled_pairing_max <= 1e-9

    def test_nondegenerate_on_complement(self, rng):
        # omega restricted to the range basis has full rank for generic T
        t = random_skew(4, rng)
        res = kernel_range_split(t)
        rb = res.range_basis
        g = np.zeros((len(rb), len(rb)))
        for a, x in enumerate(rb):
            for b, y in enumerate(rb):
                g[a, b] = np.trace(t @ (x @ y - y @ x)).real
        sv = np.linalg.svd(g, compute_uv=False)
        assert sv[-1] > 1e-6 * sv[0]


class TestPolarization:
    def test_two_distinct_clusters(self):
        mask = polarization(np.diag([2j, 1j]))
        assert mask.mask == ((0, 0), (0, 1), (1, 1))
        assert mask.complex_dim == 3
        assert mask.thetas == (2.0, 1.0)

    def test_scalar_everything(self):
        mask = polarization(1j * np.eye(3))
        assert mask.mask == ((0, 0),)
        assert mask.complex_dim == 9

    def test_three_clusters_dimensions(self):
        t = np.diag([2j, 1j, 0.0])
        props = polarization_properties(t)
        assert props.dim_p == 6
        assert props.dim_intersection == 3
        assert props.dim_intersection_expected == 3
        assert props.dim_sum == 9

    def test_properties_random(self, rng):
        for _ in range(5):
            u = random_unitary(4, rng)
            t = u @ np.diag([3j, 2j, 2j, 0.0]) @ u.conj().T
            props = polarization_properties(t, seed=7)
            assert props.commutation_residual <= 1e-9
            assert props.dim_intersection == props.dim_intersection_expected == 6
            assert props.dim_sum == 16
            assert props.complemented

    def test_positivity_on_matrix_units(self):
        # -i omega(Z, Z*) on an included off-diagonal unit equals the
        # theta gap of its block pair, hence is nonnegative
        t = np.diag([2j, 1j])
        mask = polarization(t)
        offdiag = [b for b in mask.basis if abs(b[0, 1]) > 0.5]
        assert len(offdiag) == 1
        z = offdiag[0]
        val = (-1j * omega_complexified(t, z, z.conj().T)).real
        assert val == pytest.approx(2.0 - 1.0, abs=1e-12)


class TestKaehler:
    def test_two_cluster_contracts(self):
        res = kaehler_check(np.diag([2j, 1j]), sample_count=100, seed=7)
        assert res.isotropy_max_abs <= 1e-9 * res.scale
        assert res.positivity_min >= -1e-9 * res.scale

    def test_scalar_reference_everything_is_radical(self):
        res = kaehler_check(1j * np.eye(3), sample_count=50, seed=1)
        assert abs(res.positivity_min) <= 1e-12
        assert res.isotropy_max_abs <= 1e-12

    def test_positivity_scales_linearly(self):
        t = np.diag([3j, 1j, 0.0])
        r1 = kaehler_check(t, sample_count=50, seed=3)
        r2 = kaehler_check(2.0 * t, sample_count=50, seed=3)
        assert r2.positivity_min == pytest.approx(2.0 * r1.positivity_min, rel=1e-9)

    def test_random_references(self, rng):
        for _ in range(5):
            u = random_unitary(4, rng)
            t = u @ np.diag([3j, 1j, 1j, -1j]) @ u.conj().T
            res = kaehler_check(t, sample_count=100, seed=5)
            assert res.isotropy_max_abs <= 1e-9 * res.scale
            assert res.positivity_min >= -1e-9 * res.scale


class TestProjectiveCompare:
    def test_equal_directions_vanish(self, rng):
        a = random_skew(3, rng)
        x0 = np.zeros(3, dtype=complex)
        x0[0] = 1.0
        res = projective_form_compare(x0, a, a)
        assert res.orbit_form == pytest.approx(0.0, abs=1e-12)
        assert res.geometric_form == pytest.approx(0.0, abs=1e-12)

    def test_worked_example(self):
        x0 = np.array([1.0, 0.0], dtype=complex)
        a1 = np.array([[0, 1], [-1, 0]], dtype=complex)
        a2 = np.array([[0, 1j], [1j, 0]], dtype=complex)
        res = projective_form_compare(x0, a1, a2)
        assert res.orbit_form == pytest.approx(-2.0, abs=1e-12)
        assert res.geometric_form == pytest.approx(2.0, abs=1e-12)
        assert res.abs_match

    def test_phase_stabilizer_invariance(self, rng):
        x0 = np.zeros(4, dtype=complex)
        x0[0] = 1.0
        a1, a2 = random_skew(4, rng), random_skew(4, rng)
        base = projective_form_compare(x0, a1, a2)
        # unitary fixing x0 up to phase: block diag(phase, anything)
        u = np.zeros((4, 4), dtype=complex)
        u[0, 0] = np.exp(0.9j)
        u[1:, 1:] = random_unitary(3, rng)
        rot = projective_form_compare(x0, u @ a1 @ u.conj().T, u @ a2 @ u.conj().T)
        assert abs(rot.orbit_form) == pytest.approx(abs(base.orbit_form), abs=1e-9)
        assert abs(rot.geometric_form) == pytest.approx(abs(base.geometric_form), abs=1e-9)

    def test_signs_always_opposite(self, rng):
        for _ in range(50):
            x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            x /= np.linalg.norm(x)
            a1, a2 = random_skew(5, rng), random_skew(5, rng)
            res = projective_form_compare(x, a1, a2)
            assert res.abs_match
            assert res.orbit_form == pytest.approx(-res.geometric_form, abs=1e-9)

    def test_rejects_non_unit_vector(self, rng):
        with pytest.raises(NotUnitVector):
            projective_form_compare(np.array([1.0, 1.0]), random_skew(2, rng), random_skew(2, rng))
