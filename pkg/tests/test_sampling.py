import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cylgabor import fock, sampling
from cylgabor.errors import DensityPreconditionError, DomainError, UndefinedSeparationError
from cylgabor.qp_signal import make_signal
from cylgabor.sampling import PointSet

rng = np.random.default_rng(29)


class TestPointSet:
    def test_lattice(self):
        Z = PointSet.vertical_lattice(0.5, -3, 3)
        assert len(Z) == 7 and Z.node(2) == 1j

    def test_duplicates_rejected(self):
        with pytest.raises(DomainError):
            PointSet.finite([0.1 + 1j, 0.1 + 1j])

    def test_csv_roundtrip(self, tmp_path):
        Z = PointSet.vertical_lattice(0.25, -8, 8)
        sampling.write_points_csv(Z, tmp_path / "p.csv")
        W = sampling.read_points_csv(tmp_path / "p.csv")
        assert W.structure == "vertical_lattice" and W.params["beta"] == pytest.approx(0.25)
        assert np.array_equal(W.z, Z.z)

    def test_csv_finite(self, tmp_path):
        Z = PointSet.finite([0.1 + 0.3j, 0.7 - 1.2j, 0.2 + 2.0j])
        sampling.write_points_csv(Z, tmp_path / "p.csv")
        W = sampling.read_points_csv(tmp_path / "p.csv")
        assert W.structure == "finite" and np.array_equal(np.sort_complex(W.z), np.sort_complex(Z.z))


class TestSeparation:
    def test_lattice(self):
        assert sampling.separation(PointSet.vertical_lattice(0.5, -10, 10)) == 0.5

    def test_pair(self):
        assert sampling.separation(PointSet.finite([0.0, 0.5])) == 0.5

    def test_cylinder_metric(self):
        # x-difference is taken mod 1
        assert sampling.separation(PointSet.finite([0.05, 0.95 + 0.0j])) == pytest.approx(0.1)

    def test_undefined(self):
        with pytest.raises(UndefinedSeparationError):
            sampling.separation(PointSet.finite([0.3j]))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 31))
    def test_vs_brute(self, seed):
        r = np.random.default_rng(seed)
        Z = PointSet.finite(r.uniform(0, 1, 100) + 1j * r.uniform(-5, 5, 100))
        assert sampling.separation(Z) == sampling.separation_brute(Z)


class TestDensity:
    @pytest.mark.parametrize("beta", [0.2, 0.25, 0.5, 2.0])
    def test_lattice(self, beta):
        d = sampling.beurling_density(PointSet.vertical_lattice(beta, -5, 5), r_max=200)
        assert d.exact == pytest.approx(1 / beta)
        assert abs(d.lower - d.exact) <= 0.05 * d.exact
        assert abs(d.upper - d.exact) <= 0.05 * d.exact

    def test_single_point(self):
        d = sampling.beurling_density(PointSet.finite([0.2 + 0.1j]), r_max=20)
        assert d.window_limited and d.lower == 0 and d.exact is None

    def test_periodic(self):
        Z = PointSet.periodic(1.0, [0.1 + 0.0j, 0.4 + 0.3j, 0.8 + 0.55j], -5, 5)
        d = sampling.beurling_density(Z, r_max=200)
        assert d.exact == pytest.approx(3.0)
        assert abs(d.lower - 3) < 0.05 * 3 and abs(d.upper - 3) < 0.05 * 3


class TestNodeProduct:
    Z = PointSet.vertical_lattice(0.5, -20, 20)

    def test_vanishes_at_nodes(self):
        for k in (-5, 0, 3):
            zk = self.Z.node(k)
            scale = abs(sampling.node_product_g(self.Z, zk + 0.05))
            assert abs(sampling.node_product_g(self.Z, zk)) < 1e-12 * max(scale, 1.0)

    def test_perturbation_moves_one_zero(self):
        z = self.Z.z.copy()
        z[25] = z[25] + 0.1
        W = PointSet.finite(z)
        old, new = self.Z.z[25], z[25]
        assert abs(sampling.node_product_g(W, new)) == 0 or abs(sampling.node_product_g(W, new)) < 1e-12
        assert abs(sampling.node_product_g(W, old)) > 1e-6 * abs(sampling.node_product_g(W, old + 0.3))
        for j in (10, 30):
            assert abs(sampling.node_product_g(W, z[j])) < 1e-12 * abs(sampling.node_product_g(W, z[j] + 0.05))

    def test_derivative_vs_cauchy(self):
        for k in (-3, 0, 2):
            d1 = sampling.node_product_deriv(self.Z, k)
            d2 = fock.cauchy_derivative(lambda u: sampling.node_product_g(self.Z, u), self.Z.node(k), 1, 0.1)
            assert abs(d1 - d2) < 1e-8 * abs(d1)

    def test_logderiv(self):
        z = 0.3 + 0.2j
        h = 1e-5
        g = lambda u: sampling.node_product_g(self.Z, u)
        fd = (g(z + h) - g(z - h)) / (2 * h) / g(z)
        assert abs(sampling.node_product_logderiv(self.Z, z) - fd) < 1e-6 * max(1, abs(fd))


class TestReconstruct:
    Z = PointSet.vertical_lattice(0.5, -80, 80)

    @pytest.mark.parametrize("nu", [0.0, 0.3])
    def test_kernel_section(self, nu):
        w0 = 0.35 + 0.45j
        vals = fock.fock_kernel_analytic(nu, self.Z.z, w0)
        zp = rng.uniform(0, 1, 20) + 1j * rng.uniform(-1, 1, 20)
        rec = sampling.sample_reconstruct(self.Z, vals, zp, nu=nu)
        tr = fock.fock_kernel_analytic(nu, zp, w0)
        assert np.max(np.abs(rec - tr) / np.abs(tr)) < 1e-4

    def test_bargmann_image(self):
        s = make_signal(0.3, [(-1, 0.4), (0, 1.0), (2, -0.5j)])
        vals = fock.bargmann_eval(s, self.Z.z)
        zp = rng.uniform(0, 1, 10) + 1j * rng.uniform(-1, 1, 10)
        rec = sampling.sample_reconstruct(self.Z, vals, zp, nu=0.3)
        tr = fock.bargmann_eval(s, zp)
        assert np.max(np.abs(rec - tr) / np.abs(tr)) < 1e-4

    def test_zero(self):
        assert sampling.sample_reconstruct(self.Z, np.zeros(len(self.Z)), 0.3 + 0.1j) == 0

    def test_nodes(self):
        vals = rng.normal(size=len(self.Z)) + 0j
        out = sampling.sample_reconstruct(self.Z, vals, self.Z.z[70:90])
        assert np.array_equal(out, vals[70:90])

    def test_tail_reported(self):
        vals = fock.fock_kernel_analytic(0.0, self.Z.z, 0.2j)
        _, tail = sampling.sample_reconstruct(self.Z, vals, 0.1 + 0.2j, return_tail=True)
        assert 0 <= tail < 1e-4


class TestInterpolate:
    Z = PointSet.vertical_lattice(3.0, -10, 10)

    def test_node_exactness(self):
        a = rng.normal(size=21) + 1j * rng.normal(size=21)
        out = sampling.interpolate_true(1, self.Z, a, self.Z.z)
        assert np.max(np.abs(out - a)) < 1e-8

    @pytest.mark.parametrize("r", [0, 2])
    def test_node_exactness_other_orders(self, r):
        Z = PointSet.vertical_lattice(r + 2.0, -6, 6)
        a = rng.normal(size=13) + 1j * rng.normal(size=13)
        out = sampling.interpolate_true(r, Z, a, Z.z)
        assert np.max(np.abs(out - a)) < 1e-8

    def test_zero(self):
        assert sampling.interpolate_true(1, self.Z, np.zeros(21), 0.3 + 0.2j) == 0

    def test_r0_matches_product_interpolant(self):
        # r = 0 with the literal origin split: the one-hot interpolant equals the
        # sampling-formula term of node n with character -Im z_n, shifted by -1
        # for nodes below the origin (their factors use the reflected form).
        Z = PointSet.vertical_lattice(3.0, -4, 4)
        z = np.array([0.3 + 0.2j, 0.6 - 1.3j, 0.1 + 4.0j])
        for n in (-2, -1, 0, 1, 3):
            pos = n + 4
            e = np.zeros(9)
            e[pos] = 1.0
            a = sampling.interpolate_true(0, Z, e, z, split="origin")
            nu = -math.floor(Z.z[pos].imag) - (1 if n < 0 else 0)
            b = sampling.sample_reconstruct(Z, e, z, nu=nu)
            assert np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)) < 1e-9

    def test_density_refusal(self):
        with pytest.raises(DensityPreconditionError):
            sampling.interpolate_true(1, PointSet.vertical_lattice(1.5, -3, 3), np.ones(7), 0.1)
