import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digenergy import (
    Digraph,
    PurelyImaginaryEigenvalueError,
    characteristic_polynomial,
    coulson_energy,
    eigenvalues,
    energy,
    moment_identities,
    spectral_radius,
    walk_profile,
)
from digenergy.spectrum import _square_free_decomposition

from families import (
    complete_graph,
    directed_cycle,
    directed_path,
    petersen_graph,
    star_graph,
    sym,
)
from test_digraph import digraphs


class TestCharPoly:
    def test_sym_edge(self):
        # det(xI - [[0,1],[1,0]]) = x^2 - 1
        assert characteristic_polynomial(sym(complete_graph(2))).coeffs == (-1, 0, 1)

    def test_directed_triangle(self):
        assert characteristic_polynomial(directed_cycle(3)).coeffs == (-1, 0, 0, 1)

    def test_sym_triangle(self):
        # (x-2)(x+1)^2 = x^3 - 3x - 2
        assert characteristic_polynomial(sym(complete_graph(3))).coeffs == (-2, -3, 0, 1)

    def test_empty_and_single(self):
        assert characteristic_polynomial(Digraph(0)).coeffs == (1,)
        assert characteristic_polynomial(Digraph(1)).coeffs == (0, 1)

    def test_monic_with_zero_trace(self):
        p = characteristic_polynomial(sym(petersen_graph()))
        assert p.coeffs[-1] == 1
        assert p.coeffs[-2] == 0  # no loops

    def test_digon_free_quadratic_coefficient_zero(self):
        p = characteristic_polynomial(directed_cycle(4))
        assert p.coeffs[2] == 0

    @given(digraphs(max_n=6))
    @settings(max_examples=60)
    def test_second_coefficient_counts_digons(self, d):
        if d.n < 2:
            return
        p = characteristic_polynomial(d)
        assert p.coeffs[d.n - 2] == -walk_profile(d).c2_total // 2

    @given(digraphs(max_n=5))
    @settings(max_examples=60)
    def test_against_numpy(self, d):
        # Independent float route: numpy builds the polynomial from
        # the QR eigenvalues of the adjacency matrix.
        from digenergy import adjacency_matrix

        exact = characteristic_polynomial(d).coeffs
        approx = np.poly(adjacency_matrix(d).astype(float)) if d.n else np.array([1.0])
        assert np.allclose(approx[::-1], [float(c) for c in exact], atol=1e-6)

    def test_evaluation(self):
        p = characteristic_polynomial(sym(complete_graph(3)))
        assert p(2) == 0
        assert p(-1) == 0
        assert p(0) == -2


class TestSquareFreeDecomposition:
    def test_square_free_passthrough(self):
        assert _square_free_decomposition((-1, 0, 0, 1)) == [((-1, 0, 0, 1), 1)]

    def test_double_pair(self):
        assert _square_free_decomposition((1, 0, -2, 0, 1)) == [((-1, 0, 1), 2)]

    def test_nilpotent(self):
        assert _square_free_decomposition((0, 0, 0, 1)) == [((0, 1), 3)]

    def test_mixed(self):
        assert _square_free_decomposition((-2, -3, 0, 1)) == [((-2, 1), 1), ((1, 1), 2)]


class TestEigenvalues:
    def test_sym_edge(self):
        spec = eigenvalues(sym(complete_graph(2)))
        assert spec.eigenvalues == (1, -1)
        assert spec.rho == pytest.approx(1.0, abs=1e-12)
        assert spec.energy == pytest.approx(2.0, abs=1e-12)

    def test_directed_triangle(self):
        spec = eigenvalues(directed_cycle(3))
        want = sorted([1, complex(-0.5, math.sqrt(3) / 2), complex(-0.5, -math.sqrt(3) / 2)],
                      key=lambda z: (-z.real, -z.imag))
        assert all(abs(a - b) < 1e-12 for a, b in zip(spec.eigenvalues, want))
        assert spec.rho == pytest.approx(1.0, abs=1e-12)
        assert spec.energy == pytest.approx(2.0, abs=1e-12)

    def test_sym_triangle(self):
        spec = eigenvalues(sym(complete_graph(3)))
        assert spec.rho == pytest.approx(2.0, abs=1e-12)
        assert spec.energy == pytest.approx(4.0, abs=1e-12)
        assert [z.real for z in spec.eigenvalues] == pytest.approx([2, -1, -1], abs=1e-12)

    def test_nilpotent_path(self):
        assert energy(directed_path(3)) == 0.0

    def test_star_radius(self):
        assert spectral_radius(sym(star_graph(2))) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_sorted_by_re_desc_im_desc(self):
        spec = eigenvalues(directed_cycle(4))
        keys = [(-z.real, -z.imag) for z in spec.eigenvalues]
        assert keys == sorted(keys)

    def test_empty(self):
        spec = eigenvalues(Digraph(0))
        assert spec.eigenvalues == () and spec.rho == 0.0

    @given(digraphs(max_n=6))
    @settings(max_examples=60, deadline=None)
    def test_residuals_and_structure(self, d):
        spec = eigenvalues(d)
        poly = characteristic_polynomial(d)
        n = d.n
        if n == 0:
            return
        # residual certificate
        worst = max(abs(poly(z)) for z in spec.eigenvalues)
        assert worst / (1.0 + spec.rho) ** n <= 1e-8
        # zero trace; exact conjugate symmetry
        assert abs(sum(spec.eigenvalues)) <= 1e-9
        assert sorted((z.real, z.imag) for z in spec.eigenvalues) == pytest.approx(
            sorted((z.real, -z.imag) for z in spec.eigenvalues)
        )
        assert spec.rho >= max(abs(z.real) for z in spec.eigenvalues) - 1e-12

    @given(digraphs(max_n=6))
    @settings(max_examples=40, deadline=None)
    def test_symmetric_spectra_real(self, d):
        if not d.is_symmetric:
            return
        spec = eigenvalues(d)
        assert all(z.imag == 0 for z in spec.eigenvalues)

    def test_energy_agrees_with_direct_eig(self):
        # Independent route: raw LAPACK eigenvalues, no refinement.
        from digenergy import adjacency_matrix

        for d in (sym(petersen_graph()), directed_cycle(5), sym(star_graph(3))):
            raw = np.linalg.eigvals(adjacency_matrix(d).astype(float))
            assert energy(d) == pytest.approx(float(np.abs(raw.real).sum()), abs=1e-9)


class TestMomentIdentities:
    def test_sym_edge(self):
        m = moment_identities(sym(complete_graph(2)))
        assert m.sum_re_sq == pytest.approx(2.0, abs=1e-12)
        assert m.sum_im_sq == pytest.approx(0.0, abs=1e-12)
        assert m.c2_residual == pytest.approx(0.0, abs=1e-12)
        assert m.arc_slack == pytest.approx(0.0, abs=1e-12)

    def test_directed_triangle(self):
        m = moment_identities(directed_cycle(3))
        assert m.sum_re_sq == pytest.approx(1.5, abs=1e-12)
        assert m.sum_im_sq == pytest.approx(1.5, abs=1e-12)
        assert m.c2_residual == pytest.approx(0.0, abs=1e-12)
        assert m.arc_slack == pytest.approx(0.0, abs=1e-12)

    def test_digon_plus_tail_has_slack(self):
        m = moment_identities(Digraph(3, [(0, 1), (1, 0), (1, 2)]))
        assert m.c2_residual == pytest.approx(0.0, abs=1e-9)
        assert m.arc_slack == pytest.approx(1.0, abs=1e-9)

    @given(digraphs(max_n=5))
    @settings(max_examples=60, deadline=None)
    def test_identities_hold(self, d):
        if d.n == 0:
            return
        m = moment_identities(d)
        assert abs(m.c2_residual) <= 1e-8
        assert m.arc_slack >= -1e-8


class TestCoulson:
    def test_sym_edge_is_two(self):
        # integrand reduces to 2/(1+x^2); the integral is exactly 2
        assert coulson_energy(sym(complete_graph(2))) == pytest.approx(2.0, rel=1e-9)

    def test_sym_triangle_matches_energy(self):
        d = sym(complete_graph(3))
        assert coulson_energy(d, rel_tol=1e-6) == pytest.approx(energy(d), rel=1e-6)

    def test_directed_four_cycle_pole(self):
        with pytest.raises(PurelyImaginaryEigenvalueError) as exc:
            coulson_energy(directed_cycle(4))
        assert abs(abs(exc.value.x) - 1.0) < 1e-6

    def test_rel_tol_validated(self):
        with pytest.raises(ValueError):
            coulson_energy(sym(complete_graph(2)), rel_tol=0.0)
        with pytest.raises(ValueError):
            coulson_energy(sym(complete_graph(2)), rel_tol=1.5)

    def test_zero_eigenvalue_is_not_a_pole(self):
        d = sym(star_graph(2))  # spectrum {sqrt(2), 0, -sqrt(2)}
        assert coulson_energy(d) == pytest.approx(energy(d), rel=1e-6)

    def test_empty_digraph(self):
        assert coulson_energy(Digraph(3)) == pytest.approx(0.0, abs=1e-12)
