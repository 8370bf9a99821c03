import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from groverian.exceptions import IndexOutOfRange, InvalidN
from groverian.grover import (
    GroverRun, build_alignment_unitaries, grover_iterate, grover_trace,
    modified_search_success, optimal_iterations, rotation_success, success_probability,
)
from groverian.optimize import pmax_numeric
from groverian.statevec import (
    PLUS, ZERO, LocalUnitarySet, ProductState, apply_locals, basis_state, build, expand,
    inner_product, random_locals, random_product, random_state,
)
import groverian.grover as grover_mod


def dense_grover(dim, s):
    """Explicit matrices: oracle I - 2|s><s|, diffusion 2|eta><eta| - I."""
    eta = np.full(dim, 1 / np.sqrt(dim))
    oracle = np.eye(dim)
    oracle[s, s] = -1
    return (2 * np.outer(eta, eta) - np.eye(dim)) @ oracle


def dense_modified_success(state, locals_, m):
    dim = state.dim
    kron = np.eye(1)
    for u in locals_.matrices:
        kron = np.kron(kron, u)
    prepared = kron @ state.amplitudes
    total = 0.0
    for s in range(dim):
        out = np.linalg.matrix_power(dense_grover(dim, s), m) @ prepared
        total += abs(out[s]) ** 2
    return total / dim


class TestGroverIterate:
    def test_n2_one_step_finds_marked(self):
        out = grover_iterate(build("uniform", 2), GroverRun(3, 1))
        assert_allclose(out.amplitudes, [0, 0, 0, 1], atol=1e-15)
        assert_allclose(success_probability(out, 3), 1.0)

    def test_zero_iterations(self, rng):
        s = random_state(3, rng)
        assert np.array_equal(grover_iterate(s, GroverRun(2, 0)).amplitudes, s.amplitudes)

    def test_n3_two_steps(self):
        out = grover_iterate(build("uniform", 3), GroverRun(0, 2))
        assert abs(success_probability(out, 0) - 121 / 128) < 1e-12
        assert abs(121 / 128 - math.sin(5 * math.asin(1 / math.sqrt(8))) ** 2) < 1e-15

    def test_matches_dense_matrices(self, rng):
        s = random_state(3, rng)
        out = grover_iterate(s, GroverRun(5, 3))
        expected = np.linalg.matrix_power(dense_grover(8, 5), 3) @ s.amplitudes
        assert_allclose(out.amplitudes, expected, atol=1e-14)

    def test_marked_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            grover_iterate(build("uniform", 2), GroverRun(4, 1))

    def test_iteration_guard(self):
        with pytest.raises(IndexOutOfRange):
            grover_iterate(build("uniform", 2), GroverRun(0, 21))

    def test_trace(self):
        assert_allclose(grover_trace(build("uniform", 3), GroverRun(0, 2)), [1 / 8, 25 / 32, 121 / 128])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8), data=st.data())
def test_unitarity(seed, n, data):
    rng = np.random.default_rng(seed)
    dim = 2**n
    m = data.draw(st.integers(0, int(4 * math.sqrt(dim))))
    s = data.draw(st.integers(0, dim - 1))
    out = grover_iterate(random_state(n, rng), GroverRun(s, m))
    assert abs(np.linalg.norm(out.amplitudes) - 1) <= 1e-10


class TestOptimalIterations:
    @pytest.mark.parametrize("N,m", [(4, 1), (8, 2), (2, 1), (16, 3), (1024, 25)])
    def test_values(self, N, m):
        assert optimal_iterations(N) == m

    @pytest.mark.parametrize("n", range(2, 13))
    def test_is_first_peak(self, n):
        N = 2**n
        m = optimal_iterations(N)
        assert rotation_success(N, m) >= rotation_success(N, m - 1)
        assert rotation_success(N, m) >= rotation_success(N, m + 1)

    @pytest.mark.parametrize("bad", [1, 3, 6, 0, -4])
    def test_invalid(self, bad):
        with pytest.raises(InvalidN):
            optimal_iterations(bad)


class TestSuccessProbability:
    def test_basis(self):
        assert success_probability(basis_state(2, 3), 3) == 1.0

    @pytest.mark.parametrize("s", range(8))
    def test_uniform(self, s):
        assert_allclose(success_probability(build("uniform", 3), s), 1 / 8)

    def test_ghz(self):
        assert_allclose(success_probability(build("ghz", 3), 0), 0.5)

    def test_range(self):
        with pytest.raises(IndexOutOfRange):
            success_probability(build("ghz", 3), 8)


class TestModifiedSearch:
    def test_uniform_identity(self):
        value = modified_search_success(build("uniform", 5), LocalUnitarySet.identity(5))
        theta = math.asin(1 / math.sqrt(32))
        assert abs(value - math.sin(9 * theta) ** 2) < 1e-10
        assert value >= 0.99

    def test_zero_with_hadamards_equals_uniform(self):
        a = modified_search_success(basis_state(5, 0), LocalUnitarySet.hadamard(5))
        b = modified_search_success(build("uniform", 5), LocalUnitarySet.identity(5))
        assert abs(a - b) < 1e-12

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_dense_simulation(self, n, rng):
        s = random_state(n, rng)
        u = random_locals(n, rng)
        m = optimal_iterations(2**n)
        assert abs(modified_search_success(s, u) - dense_modified_success(s, u, m)) < 1e-12

    def test_block_size_does_not_change_value(self, rng, monkeypatch):
        s = random_state(9, rng)
        u = random_locals(9, rng)
        full = modified_search_success(s, u)
        monkeypatch.setattr(grover_mod, "BLOCK_ROWS", 7)
        assert modified_search_success(s, u) == full

    def test_ghz5_with_aligned_locals(self):
        ghz = build("ghz", 5)
        u = build_alignment_unitaries(pmax_numeric(ghz).argmax)
        assert abs(modified_search_success(ghz, u) - 0.5) <= 0.15

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_uniform_rotation_formula(self, n):
        N = 2**n
        value = modified_search_success(build("uniform", n), LocalUnitarySet.identity(n))
        assert abs(value - rotation_success(N, optimal_iterations(N))) < 1e-10


class TestAlignment:
    def test_already_aligned(self):
        p = ProductState((PLUS,) * 3)
        out = apply_locals(expand(p), build_alignment_unitaries(p))
        assert abs(abs(inner_product(build("uniform", 3), out)) - 1) < 1e-12

    def test_zero_gets_hadamard_like(self):
        u = build_alignment_unitaries(ProductState((ZERO,) * 2))
        h = LocalUnitarySet.hadamard(2).matrices[0]
        for mat in u.matrices:
            # same action on |0> up to phase
            assert abs(abs(np.vdot(h @ [1, 0], mat @ [1, 0])) - 1) < 1e-12

    def test_random_products_align(self, rng):
        for n in (1, 3, 6):
            p = random_product(n, rng)
            out = apply_locals(expand(p), build_alignment_unitaries(p))
            assert abs(abs(inner_product(build("uniform", n), out)) - 1) < 1e-10

    def test_ghz3_argmax(self):
        ghz = build("ghz", 3)
        u = build_alignment_unitaries(pmax_numeric(ghz).argmax)
        overlap = inner_product(build("uniform", 3), apply_locals(ghz, u))
        assert abs(abs(overlap) ** 2 - 0.5) < 1e-6
