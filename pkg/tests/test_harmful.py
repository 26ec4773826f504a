"""Coupled spinor systems: solvers, converters, flips, structural identities.

The su(2) frame with [e_1,e_2] = e_3 cyclically and unit signs is the main
oracle: it carries a two-dimensional space of Killing spinors with constant
1/4, scalar curvature 3/2, and a one-parameter family of scalar-A structures
obtained from any Killing spinor.  Expected values below were computed by hand
from those facts.
"""

import numpy as np
import pytest

from liespin.clifford import Signature, build_clifford, u_spinor
from liespin.harmful import (
    KIND_IMAGINARY,
    KIND_REAL,
    HarmfulStructure,
    dim4_identity_report,
    flip_metric,
    generalized_killing_to_harmful,
    harmful_to_killing_pair,
    killing_pair_to_harmful,
    killing_to_harmful,
    lindep_ratio,
    phi_for_real_kind_even,
    scalar_identity_defect,
    sign_symmetry,
    solve_generalized_killing,
    solve_killing,
    verify_harmful,
    verify_via_L,
)
from liespin.liealg import LeviCivita, LieAlgebra, make_algebra

rng = np.random.default_rng(90125)


def su2(sign: float = 1.0):
    return make_algebra(
        (1, 1, 1),
        {(1, 2): {3: sign}, (2, 3): {1: sign}, (1, 3): {2: -sign}},
    )


def abelian(signs):
    n = len(signs)
    return LieAlgebra(Signature(tuple(signs)), np.zeros((n, n, n)))


def killing_defect(alg, w, psi):
    rep = build_clifford(alg.sig)
    lc = LeviCivita(alg)
    worst = 0.0
    for j in range(1, alg.n + 1):
        nab = 0.25 * rep.matrix_of(lc.spin_bivector(j))
        worst = max(worst, np.max(np.abs(nab @ psi - w * rep.gammas[j - 1] @ psi)))
    return worst


def chiral_spinor(rep, seed=None):
    gen = np.random.default_rng(seed) if seed is not None else rng
    plus, _ = rep.chirality_projectors()
    s = gen.normal(size=rep.dim_spinor) + 1j * gen.normal(size=rep.dim_spinor)
    return plus @ s


class TestKillingSolver:
    def test_su2_single_space(self):
        spaces = solve_killing(su2())
        assert len(spaces) == 1
        assert abs(spaces[0].w - 0.25) < 1e-10
        assert spaces[0].basis.shape == (2, 2)
        for col in spaces[0].basis.T:
            assert killing_defect(su2(), 0.25, col) < 1e-10

    def test_su2_reversed_orientation(self):
        spaces = solve_killing(su2(-1.0))
        assert len(spaces) == 1
        assert abs(spaces[0].w + 0.25) < 1e-10
        assert spaces[0].basis.shape[1] == 2

    def test_heisenberg_has_none(self):
        heis = make_algebra((1, 1, 1), {(1, 2): {3: 1.0}})
        assert solve_killing(heis) == []

    def test_abelian_all_parallel(self):
        spaces = solve_killing(abelian((1, 1, 1, -1)))
        assert len(spaces) == 1
        assert spaces[0].w == 0
        assert spaces[0].basis.shape[1] == 4


class TestScalarAFamily:
    def make(self, k):
        alg = su2()
        basis = solve_killing(alg)[0].basis
        psi = basis @ np.array([1.0, 0.5j])
        return killing_to_harmful(alg, psi, 0.25, k)

    def test_half_k_values(self):
        hs = self.make(0.5)
        assert np.max(np.abs(hs.A - 0.3 * np.eye(3))) < 1e-14
        assert abs(hs.lam - 0.2) < 1e-14
        assert verify_harmful(hs).ok(1e-12)
        assert verify_via_L(hs) < 1e-12

    @pytest.mark.parametrize("k", [0.3, 2.0, -1.5, 0.4j, 2.5j])
    def test_k_sweep_verifies(self, k):
        hs = self.make(k)
        report = verify_harmful(hs)
        assert report.ok(1e-10), report
        assert verify_via_L(hs) < 1e-10
        assert scalar_identity_defect(hs) < 1e-12

    def test_singular_k_rejected(self):
        alg = su2()
        with pytest.raises(ValueError):
            killing_to_harmful(alg, u_spinor(build_clifford(alg.sig), 0), 0.25, 1j)

    def test_lindep_ratio_recovered(self):
        hs = self.make(0.5)
        assert abs(lindep_ratio(hs) - 0.5) < 1e-12

    def test_lindep_ratio_none_when_independent(self):
        alg = su2()
        rep = build_clifford(alg.sig)
        hs = HarmfulStructure(
            alg, u_spinor(rep, 0), u_spinor(rep, 1), np.eye(3), 0.0, KIND_REAL
        )
        assert lindep_ratio(hs) is None

    def test_split_into_killing_pair(self):
        hs = self.make(0.5)
        eta, xi, w = harmful_to_killing_pair(hs)
        assert abs(w - 0.25) < 1e-14
        # phi is proportional to psi here, so one member degenerates
        assert np.max(np.abs(xi)) < 1e-13
        assert killing_defect(su2(), 0.25, eta) < 1e-11


class TestPairConverter:
    def test_parallel_pair_even_dimension(self):
        alg = abelian((1, 1, 1, -1))
        rep = build_clifford(alg.sig)
        eta = u_spinor(rep, 0) + 0.3 * u_spinor(rep, 1)
        xi = u_spinor(rep, 3) - 0.3 * u_spinor(rep, 1)
        hs = killing_pair_to_harmful(alg, eta, xi, 0.0, 0.8)
        assert hs.lam == 0.4j
        assert verify_harmful(hs).ok(1e-12)
        assert abs(lindep_ratio(hs) - 1j) < 1e-12

    def test_generalized_killing_promotion(self):
        alg = abelian((1, 1, 1, 1))
        d = build_clifford(alg.sig).dim_spinor
        psi = rng.normal(size=d) + 1j * rng.normal(size=d)
        hs = generalized_killing_to_harmful(alg, psi, np.zeros((4, 4)))
        assert hs.lam == 0
        assert verify_harmful(hs).ok(1e-12)

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError):
            generalized_killing_to_harmful(su2(), np.array([1.0, 0.0]), np.zeros((3, 3)))


class TestGeneralizedKillingSolver:
    def test_su2_scalar_a_space(self):
        alg = su2()
        pairs = solve_generalized_killing(alg, 0.3 * np.eye(3), 0.2, KIND_REAL)
        assert len(pairs) == 2
        for psi, phi in pairs:
            hs = HarmfulStructure(alg, psi, phi, 0.3 * np.eye(3), 0.2, KIND_REAL)
            assert verify_harmful(hs).ok(1e-8)
            assert np.max(np.abs(phi - 0.5 * psi)) < 1e-10

    def test_mismatched_parameters_empty(self):
        pairs = solve_generalized_killing(su2(), 0.3 * np.eye(3), 0.7, KIND_REAL)
        assert pairs == []


class TestVerifyRejections:
    def test_wrong_lambda_fails(self):
        alg = su2()
        basis = solve_killing(alg)[0].basis
        hs = killing_to_harmful(alg, basis[:, 0], 0.25, 0.5)
        bad = HarmfulStructure(alg, hs.psi, hs.phi, hs.A, hs.lam + 1e-3, hs.kind)
        assert verify_harmful(bad).equation_defect > 1e-5
        assert not verify_harmful(bad).ok(1e-9)

    def test_asymmetric_a_flagged(self):
        alg = abelian((1, 1, -1))
        A = np.zeros((3, 3))
        A[0, 1] = 0.2
        hs = HarmfulStructure(alg, np.ones(2), np.ones(2), A, 0.0, KIND_REAL)
        assert verify_harmful(hs).symmetry_defect == pytest.approx(0.2)

    def test_metric_symmetry_uses_signs(self):
        # A with A[1,3] = A[3,1] is symmetric for a definite metric but not
        # for the Lorentz metric, where the compatible condition flips a sign.
        alg = abelian((1, 1, 1, -1))
        A = np.zeros((4, 4))
        A[1, 3] = A[3, 1] = 0.4
        hs = HarmfulStructure(alg, np.ones(4), np.ones(4), A, 0.0, KIND_REAL)
        assert verify_harmful(hs).symmetry_defect == pytest.approx(0.8)

    def test_complex_lambda_flagged(self):
        hs = HarmfulStructure(
            abelian((1, 1, 1)), np.ones(2), np.ones(2), np.eye(3), 0.1 + 0.1j, KIND_REAL
        )
        assert verify_harmful(hs).lambda_defect == pytest.approx(0.01)

    def test_zero_spinor_not_ok(self):
        hs = HarmfulStructure(
            abelian((1, 1, 1)), np.zeros(2), np.ones(2), np.zeros((3, 3)), 0.0, KIND_REAL
        )
        assert not verify_harmful(hs).ok(1e-9)

    def test_divergence_condition(self):
        # on the Heisenberg algebra any diagonal A balances the traces, but a
        # symmetric coupling between e_1 and the center does not: moving in
        # the e_2 direction, Tr(A ad e_2) = -A[1,3] while A e_2 = 0
        heis = make_algebra((1, 1, 1), {(1, 2): {3: 1.0}})
        A = np.zeros((3, 3))
        A[0, 2] = A[2, 0] = 1.0
        hs = HarmfulStructure(heis, np.ones(2), np.ones(2), A, 0.0, KIND_REAL)
        assert verify_harmful(hs).divergence_defect == pytest.approx(1.0)

    def test_chirality_constraint_enforced(self):
        alg = abelian((1, 1, 1, -1))
        rep = build_clifford(alg.sig)
        psi = chiral_spinor(rep, seed=4)
        good = HarmfulStructure(
            alg, psi, phi_for_real_kind_even(rep, psi), 0.8 * np.eye(4), 0.4j, KIND_REAL
        )
        assert verify_harmful(good).ok(1e-12)
        bad = HarmfulStructure(alg, psi, -good.phi, good.A, good.lam, KIND_REAL)
        assert verify_harmful(bad).chirality_defect > 0.1

    def test_via_l_requires_diagonal(self):
        alg = abelian((1, 1, 1))
        A = np.full((3, 3), 0.1)
        hs = HarmfulStructure(alg, np.ones(2), np.ones(2), A, 0.0, KIND_REAL)
        with pytest.raises(ValueError):
            verify_via_L(hs)


class TestScalarIdentity:
    def test_su2_exact(self):
        alg = su2()
        basis = solve_killing(alg)[0].basis
        hs = killing_to_harmful(alg, basis[:, 1], 0.25, 0.5)
        # s = 3/2 while 24 lam^2 + 6 a^2 = 24 (0.04) + 6 (0.09) = 3/2
        assert scalar_identity_defect(hs) < 1e-14

    def test_broken_lambda_detected(self):
        alg = su2()
        basis = solve_killing(alg)[0].basis
        hs = killing_to_harmful(alg, basis[:, 0], 0.25, 0.5)
        bad = HarmfulStructure(alg, hs.psi, hs.phi, hs.A, 0.3, hs.kind)
        assert scalar_identity_defect(bad) > 1e-2


class TestFlipMetric:
    def test_su2_flip_and_back(self):
        alg = su2()
        basis = solve_killing(alg)[0].basis
        hs = killing_to_harmful(alg, basis @ np.array([0.2, 1.0 - 0.5j]), 0.25, 2.0)
        flipped = flip_metric(hs)
        assert flipped.kind == KIND_IMAGINARY
        assert flipped.alg.sig.signs == (-1, -1, -1)
        # q = 0: the partner spinor picks up a factor i, A is unchanged
        assert np.allclose(flipped.phi, 1j * hs.phi, atol=1e-15)
        assert np.allclose(flipped.A, hs.A, atol=1e-15)
        assert flipped.lam == -1j * hs.lam
        assert verify_harmful(flipped).ok(1e-12)
        back = flip_metric(flipped)
        assert back.kind == KIND_REAL
        assert np.allclose(back.psi, hs.psi, atol=1e-15)
        assert np.allclose(back.phi, hs.phi, atol=1e-15)
        assert np.allclose(back.A, hs.A, atol=1e-15)
        assert abs(back.lam - hs.lam) < 1e-15
        assert verify_harmful(back).ok(1e-12)

    def test_lorentz_flip_signs(self):
        alg = abelian((1, 1, 1, -1))
        rep = build_clifford(alg.sig)
        psi = chiral_spinor(rep, seed=11)
        hs = HarmfulStructure(
            alg, psi, phi_for_real_kind_even(rep, psi), 0.6 * np.eye(4), 0.3j, KIND_REAL
        )
        assert verify_harmful(hs).ok(1e-12)
        flipped = flip_metric(hs)
        assert flipped.alg.sig.signs == (-1, -1, -1, 1)
        # q = 1 flips the sign of A and attaches -i to both phi and lam
        assert np.allclose(flipped.phi, -1j * hs.phi, atol=1e-15)
        assert np.allclose(flipped.A, -hs.A, atol=1e-15)
        assert flipped.lam == -1j * hs.lam
        assert verify_harmful(flipped).ok(1e-12)
        back = flip_metric(flipped)
        assert np.allclose(back.phi, hs.phi, atol=1e-15)
        assert np.allclose(back.A, hs.A, atol=1e-15)
        assert abs(back.lam - hs.lam) < 1e-15

    def test_connection_matrices_agree_under_flip(self):
        c = rng.normal(size=(4, 4, 4))
        c = c - c.transpose(1, 0, 2)
        alg = LieAlgebra(Signature((1, 1, 1, -1)), c)
        flipped = LieAlgebra(alg.sig.flipped(), c.copy())
        rep = build_clifford(alg.sig)
        from liespin.clifford import flip_rep

        frep = flip_rep(rep)
        lc, flc = LeviCivita(alg), LeviCivita(flipped)
        for j in range(1, 5):
            a = rep.matrix_of(lc.spin_bivector(j))
            b = frep.matrix_of(flc.spin_bivector(j))
            assert np.max(np.abs(a - b)) < 1e-12


class TestSignSymmetries:
    def make_odd(self):
        alg = su2()
        basis = solve_killing(alg)[0].basis
        return killing_to_harmful(alg, basis @ np.array([1.0, 0.3j]), 0.25, 1.7)

    def make_even(self):
        alg = abelian((1, 1, 1, -1))
        rep = build_clifford(alg.sig)
        psi = chiral_spinor(rep, seed=23)
        return HarmfulStructure(
            alg, psi, phi_for_real_kind_even(rep, psi), 0.5 * np.eye(4), 0.25j, KIND_REAL
        )

    @pytest.mark.parametrize("name", ["odd_lambda", "odd_orientation"])
    def test_odd_symmetries_preserve_verification(self, name):
        hs = self.make_odd()
        out = sign_symmetry(hs, name)
        assert verify_harmful(out).ok(1e-12)

    def test_even_flip_preserves_verification(self):
        hs = self.make_even()
        out = sign_symmetry(hs, "even_flip")
        assert verify_harmful(out).ok(1e-12)

    def test_odd_lambda_negates_lambda(self):
        hs = self.make_odd()
        out = sign_symmetry(hs, "odd_lambda")
        assert out.lam == -hs.lam
        assert np.allclose(out.phi, -hs.phi)

    def test_parity_rejections(self):
        with pytest.raises(ValueError):
            sign_symmetry(self.make_odd(), "even_flip")
        with pytest.raises(ValueError):
            sign_symmetry(self.make_even(), "odd_lambda")
        with pytest.raises(ValueError):
            sign_symmetry(self.make_even(), "nonsense")


class TestEvenPartner:
    def test_lorentz_basis_values(self):
        rep = build_clifford(Signature((1, 1, 1, -1)))
        u0, u1 = u_spinor(rep, 0), u_spinor(rep, 1)
        assert np.allclose(phi_for_real_kind_even(rep, u0), 1j * u0)
        assert np.allclose(phi_for_real_kind_even(rep, u1), -1j * u1)

    def test_mixed_is_chirality_difference(self):
        # for any spinor the partner is i (psi_+ - psi_-) in dimension 4
        for signs in [(1, 1, 1, 1), (1, 1, 1, -1)]:
            rep = build_clifford(Signature(signs))
            from liespin.clifford import chirality_split

            s = rng.normal(size=4) + 1j * rng.normal(size=4)
            sp, sm = chirality_split(rep, s)
            assert np.allclose(phi_for_real_kind_even(rep, s), 1j * (sp - sm), atol=1e-13)

    def test_odd_dimension_rejected(self):
        rep = build_clifford(Signature((1, 1, 1)))
        with pytest.raises(ValueError):
            phi_for_real_kind_even(rep, u_spinor(rep, 0))


class TestDim4Identities:
    def test_flat_scalar_a_lorentz(self):
        alg = abelian((1, 1, 1, -1))
        rep = build_clifford(alg.sig)
        psi = chiral_spinor(rep, seed=31)
        hs = HarmfulStructure(
            alg, psi, phi_for_real_kind_even(rep, psi), 0.8 * np.eye(4), 0.4j, KIND_REAL
        )
        report = dim4_identity_report(hs, require_xi=False)
        for name, value in report.items():
            assert value < 1e-13, (name, value)

    def test_dimension_guard(self):
        hs = killing_to_harmful(
            su2(), solve_killing(su2())[0].basis[:, 0], 0.25, 0.5
        )
        with pytest.raises(ValueError):
            dim4_identity_report(hs)
