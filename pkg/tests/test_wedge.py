import math

import numpy as np
import pytest

from sectorkit import wedge
from sectorkit.errors import (
    FockCapExceeded,
    InterpolationOutOfRange,
    PoleInStrip,
    SupportViolation,
)
from sectorkit.wedge import (
    RapidityGrid,
    TruncatedFockState,
    WedgeBump,
    apply_modular_conjugation,
    crossing_broken_model,
    crossing_check,
    free_model,
    gaussian_wave,
    ising_model,
    kms_fourpoint_check,
    number_operator,
    premodular_apply,
    s_invariance_residual,
    sinh_gordon_model,
    symplectic_pairing,
    unitarity_residuals,
    wedge_wave,
    zf_annihilate,
    zf_create,
    zf_create_smeared,
    zf_relations_check,
)

GRID = RapidityGrid()
COARSE = RapidityGrid(theta_max=4.0, points=25)


class TestGrid:
    def test_symmetric(self):
        assert GRID.thetas[0] == -GRID.thetas[-1]
        assert GRID.weights.min() > 0
        assert np.sum(GRID.weights) == pytest.approx(2 * GRID.theta_max)

    def test_quadrature_of_gaussian(self):
        wave = gaussian_wave(GRID, center=0.0, width=0.8)
        exact = math.sqrt(math.pi) * 0.8
        assert np.sum(GRID.weights * np.abs(wave.values) ** 2) == pytest.approx(exact, rel=1e-10)


class TestPremodular:
    def test_j_involution(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            values = rng.standard_normal(GRID.points) + 1j * rng.standard_normal(GRID.points)
            w = wedge.OneParticleWave(GRID, values)
            back = premodular_apply("j", premodular_apply("j", w))
            assert np.abs(back.values - w.values).max() < 1e-12

    def test_delta_zero_is_identity(self):
        wave = gaussian_wave(GRID, 0.4, 0.5)
        out = premodular_apply("delta", wave, t=0.0)
        assert np.abs(out.values - wave.values).max() == 0.0

    def test_delta_group_law(self):
        wave = gaussian_wave(GRID, 0.0, 0.7)
        a = premodular_apply("delta", premodular_apply("delta", wave, t=0.05), t=-0.02)
        b = premodular_apply("delta", wave, t=0.03)
        assert np.abs(a.values - b.values).max() < 1e-12

    def test_delta_is_unitary_on_grid(self):
        wave = gaussian_wave(GRID, 0.0, 0.5)
        out = premodular_apply("delta", wave, t=0.01)
        assert out.norm_sq() == pytest.approx(wave.norm_sq(), rel=1e-6)

    def test_j_inverts_unbounded_delta(self):
        """j delta(t) j = delta(-t) for imaginary t (real powers of delta),
        checked on entire waves with closed-form continuations."""
        for t in (-0.25j, 0.1j, -0.5j):
            for wave in (gaussian_wave(GRID, 0.3, 0.6),
                         gaussian_wave(GRID, -0.2, 0.4, momentum=1.5)):
                lhs = premodular_apply(
                    "j", premodular_apply("delta", premodular_apply("j", wave), t=t)
                )
                rhs = premodular_apply("delta", wave, t=-t)
                scale = np.abs(rhs.values).max()
                assert np.abs(lhs.values - rhs.values).max() / scale < 1e-10

    def test_imaginary_shift_needs_analytic_backing(self):
        plain = wedge.OneParticleWave(GRID, np.ones(GRID.points, dtype=complex))
        with pytest.raises(InterpolationOutOfRange):
            premodular_apply("delta", plain, t=0.5j)

    def test_grid_shift_out_of_range(self):
        values = np.ones(GRID.points, dtype=complex)
        plain = wedge.OneParticleWave(GRID, values)
        with pytest.raises(InterpolationOutOfRange):
            premodular_apply("delta", plain, t=0.5)


class TestWedgeWaves:
    BUMP = WedgeBump(x0=2.0, t0=0.0, radius=0.3)

    def test_support_guard(self):
        with pytest.raises(SupportViolation):
            wedge_wave(WedgeBump(x0=0.2, t0=0.0, radius=0.3), GRID)
        with pytest.raises(SupportViolation):
            wedge_wave(self.BUMP.reflected(), GRID)

    def test_s_invariance_of_wedge_bump(self):
        assert s_invariance_residual(self.BUMP, GRID) < 1e-6

    def test_s_invariance_via_operator(self):
        wave = wedge_wave(self.BUMP, GRID)
        s_wave = premodular_apply("s", wave)
        scale = np.abs(wave.values).max()
        assert np.abs(s_wave.values - wave.values).max() / scale < 1e-6

    def test_s_squared_contained_in_one(self):
        wave = wedge_wave(self.BUMP, GRID)
        twice = premodular_apply("s", premodular_apply("s", wave))
        scale = np.abs(wave.values).max()
        assert np.abs(twice.values - wave.values).max() / scale < 1e-8

    def test_left_wedge_in_symplectic_complement(self):
        left = wedge_wave(self.BUMP.reflected(), GRID, require_wedge=False)
        for bump in (self.BUMP, WedgeBump(x0=1.5, t0=0.2, radius=0.25),
                     WedgeBump(x0=3.0, t0=-0.4, radius=0.35)):
            right = wedge_wave(bump, GRID)
            pairing = symplectic_pairing(left, right)
            scale = left.norm_sq() ** 0.5 * right.norm_sq() ** 0.5
            assert abs(pairing) / scale < 1e-6

    def test_right_wedge_pair_not_symplectically_orthogonal(self):
        # same-wedge waves have nonvanishing commutator in general
        a = wedge_wave(self.BUMP, GRID)
        b = wedge_wave(WedgeBump(x0=2.2, t0=0.15, radius=0.3), GRID)
        scale = a.norm_sq() ** 0.5 * b.norm_sq() ** 0.5
        assert abs(symplectic_pairing(a, b)) / scale > 1e-4

    def test_zero_function(self):
        zero = WedgeBump(x0=2.0, radius=0.3, amplitude=0.0)
        wave = wedge_wave(zero, GRID)
        assert np.abs(wave.values).max() == 0.0


class TestSMatrixModels:
    @pytest.mark.parametrize("model", [free_model(), ising_model(), sinh_gordon_model(0.4)])
    def test_unitarity_and_hermitian_analyticity(self, model):
        res = unitarity_residuals(model, GRID)
        assert res["modulus"] < 1e-12
        assert res["hermitian_analyticity"] < 1e-12

    def test_crossing_free_and_ising(self):
        assert crossing_check(free_model(), GRID) == 0.0
        assert crossing_check(ising_model(), GRID) == 0.0

    def test_crossing_sinh_gordon(self):
        assert crossing_check(sinh_gordon_model(0.4), GRID) < 1e-12

    def test_crossing_broken_control(self):
        assert crossing_check(crossing_broken_model(0.4, slope=0.1), GRID) > 1e-2

    def test_bound_state_rejected(self):
        model = wedge.SMatrixModel(kind="bound_state", b=0.4)
        with pytest.raises(PoleInStrip):
            crossing_check(model, GRID)

    def test_invalid_parameter(self):
        with pytest.raises(PoleInStrip):
            sinh_gordon_model(1.3)


class TestZFOperators:
    def test_create_from_vacuum(self):
        vac = TruncatedFockState.vacuum(COARSE)
        one = zf_create(10, vac, sinh_gordon_model(0.4))
        assert one.amplitudes == {(10,): 1.0 + 0.0j}

    def test_natural_order_no_factor(self):
        """Z*(theta_2) then Z*(theta_1) with theta_1 > theta_2 builds the
        ordered state with coefficient one."""
        model = sinh_gordon_model(0.4)
        vac = TruncatedFockState.vacuum(COARSE)
        state = zf_create(20, zf_create(5, vac, model), model)  # theta_20 > theta_5
        assert state.amplitudes == {(5, 20): 1.0 + 0.0j}

    def test_reversed_order_picks_up_s(self):
        model = sinh_gordon_model(0.4)
        vac = TruncatedFockState.vacuum(COARSE)
        state = zf_create(5, zf_create(20, vac, model), model)
        ((tup, coeff),) = state.amplitudes.items()
        assert tup == (5, 20)
        expected = model(COARSE.thetas[5] - COARSE.thetas[20])
        assert coeff == pytest.approx(expected)

    def test_fock_cap(self):
        model = free_model()
        state = TruncatedFockState.vacuum(COARSE, n_max=2)
        state = zf_create(3, zf_create(2, state, model), model)
        with pytest.raises(FockCapExceeded):
            zf_create(1, state, model)

    def test_annihilate_adjoint_of_create(self):
        model = sinh_gordon_model(0.4)
        rng = np.random.default_rng(5)
        vac = TruncatedFockState.vacuum(COARSE)
        psi = zf_create(7, zf_create(13, vac, model), model).scaled(0.7 + 0.2j)
        psi = psi.add(zf_create(4, vac, model), 0.5j)
        phi = zf_create(9, zf_create(2, vac, model), model)
        j = 9
        lhs = zf_create(j, psi, model).inner(phi)
        rhs = psi.inner(zf_annihilate(j, phi, model))
        assert lhs == pytest.approx(rhs, rel=1e-10)

    @pytest.mark.parametrize(
        "model", [free_model(), ising_model(), sinh_gordon_model(0.4)]
    )
    def test_relations(self, model):
        report = zf_relations_check(model, COARSE)
        assert report["max_residual"] < 1e-10

    def test_ising_exchange_sign(self):
        model = ising_model()
        vac = TruncatedFockState.vacuum(COARSE)
        ab = zf_create(4, zf_create(11, vac, model), model)
        ba = zf_create(11, zf_create(4, vac, model), model)
        assert ab.add(ba, 1.0).norm() < 1e-12  # anticommuting at distinct rapidities


class TestNormBound:
    def test_number_operator_bound(self):
        """||N^{-1/2} Z*(f) psi|| <= ||f|| ||psi|| on the truncated space."""
        model = sinh_gordon_model(0.4)
        rng = np.random.default_rng(17)
        f_values = rng.standard_normal(COARSE.points) + 1j * rng.standard_normal(COARSE.points)
        f_norm = math.sqrt(float(np.sum(COARSE.weights * np.abs(f_values) ** 2)))
        vac = TruncatedFockState.vacuum(COARSE, n_max=4)
        states = [vac, zf_create(3, vac, model),
                  zf_create(17, zf_create(8, vac, model), model)]
        psi = states[0]
        for extra in states[1:]:
            psi = psi.add(extra, complex(*rng.standard_normal(2)))
        created = zf_create_smeared(f_values, psi, model)
        weighted = TruncatedFockState(
            COARSE, created.n_max,
            {k: v / math.sqrt(len(k)) for k, v in created.amplitudes.items() if k},
        )
        assert weighted.norm() <= f_norm * psi.norm() * (1.0 + 1e-10)


class TestScatteringConjugation:
    def test_free_j_equals_j0(self):
        report = wedge.scattering_conjugation_check(free_model(), COARSE)
        assert report["involution_residual"] < 1e-12
        assert report["isometry_residual"] < 1e-12

    def test_ising_two_particle_sign(self):
        model = ising_model()
        state = TruncatedFockState(COARSE, 4, {(3, 9): 1.0 + 0.0j})
        j_state = apply_modular_conjugation(state, model)
        assert j_state.amplitudes[(3, 9)] == pytest.approx(-1.0)

    @pytest.mark.parametrize("model", [ising_model(), sinh_gordon_model(0.4)])
    def test_involution(self, model):
        report = wedge.scattering_conjugation_check(model, COARSE)
        assert report["involution_residual"] < 1e-12
        assert report["isometry_residual"] < 1e-12

    def test_sinh_gordon_three_particle_phase(self):
        model = sinh_gordon_model(0.4)
        tup = (4, 10, 19)
        expected = 1.0 + 0.0j
        for u in range(3):
            for v in range(u + 1, 3):
                expected *= model(COARSE.thetas[tup[u]] - COARSE.thetas[tup[v]])
        assert wedge.scattering_star_phase(tup, COARSE, model) == pytest.approx(expected)
        assert abs(expected) == pytest.approx(1.0)


F1 = WedgeBump(x0=1.8, t0=0.0, radius=0.3)
F2 = WedgeBump(x0=2.4, t0=0.2, radius=0.3)
F1P = WedgeBump(x0=2.0, t0=-0.3, radius=0.3)
F2P = WedgeBump(x0=2.9, t0=0.1, radius=0.3)


class TestKms:
    @pytest.mark.parametrize(
        "model,tol",
        [(free_model(), 1e-8), (ising_model(), 1e-6), (sinh_gordon_model(0.4), 1e-6)],
    )
    def test_kms_holds_for_crossing_symmetric_models(self, model, tol):
        report = kms_fourpoint_check(model, F1, F2, F1P, F2P, GRID)
        assert report["residual"] < tol

    def test_negative_control(self):
        report = kms_fourpoint_check(crossing_broken_model(0.4, 0.1), F1, F2, F1P, F2P, GRID)
        assert report["residual"] > 1e-2

    def test_bound_state_rejected(self):
        model = wedge.SMatrixModel(kind="bound_state", b=0.4)
        with pytest.raises(PoleInStrip):
            kms_fourpoint_check(model, F1, F2, F1P, F2P, GRID)

    def test_resolution_stability(self):
        model = sinh_gordon_model(0.4)
        lo = kms_fourpoint_check(model, F1, F2, F1P, F2P, GRID, resolution=48)
        hi = kms_fourpoint_check(model, F1, F2, F1P, F2P, GRID, resolution=96)
        assert lo["residual"] < 1e-6 and hi["residual"] < 1e-6
        assert lo["lhs"] == pytest.approx(hi["lhs"], rel=1e-3)
