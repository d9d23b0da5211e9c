"""Tests for nvdnp.physics.propagators."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import expm

from nvdnp.physics.propagators import (
    TWO_PI,
    block_partition,
    driven_propagator,
    expm_block,
    expm_hermitian,
    ordered_product,
    run_lengths,
)


def _hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def _reference(h, tau):
    return expm(-1j * TWO_PI * h * tau)


class TestExponentials:
    def test_expm_hermitian_matches_scipy(self):
        rng = np.random.default_rng(0)
        h = _hermitian(rng, 5)
        np.testing.assert_allclose(expm_hermitian(h, 0.37), _reference(h, 0.37), atol=1e-12)

    def test_expm_hermitian_batched_tau(self):
        rng = np.random.default_rng(1)
        h = np.stack([_hermitian(rng, 3) for _ in range(4)])
        taus = np.array([0.1, 0.2, 0.3, 0.4])
        u = expm_hermitian(h, taus)
        for k in range(4):
            np.testing.assert_allclose(u[k], _reference(h[k], taus[k]), atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_expm_block_sizes(self, n):
        rng = np.random.default_rng(n)
        h = np.stack([_hermitian(rng, n) for _ in range(3)])
        taus = np.array([0.05, 0.5, 1.3])
        u = expm_block(h, taus)
        for k in range(3):
            np.testing.assert_allclose(u[k], _reference(h[k], taus[k]), atol=1e-12)

    def test_2x2_degenerate_generator(self):
        h = np.array([[0.7, 0.0], [0.0, 0.7]], dtype=complex)
        u = expm_block(h[None], np.array([0.25]))[0]
        np.testing.assert_allclose(u, _reference(h, 0.25), atol=1e-14)

    def test_unitary(self):
        rng = np.random.default_rng(7)
        u = expm_block(_hermitian(rng, 2)[None], np.array([3.0]))[0]
        np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


class TestBlocks:
    def test_block_partition(self):
        pattern = np.zeros((5, 5), dtype=bool)
        pattern[0, 3] = True
        pattern[1, 1] = True
        pattern[4, 2] = True
        blocks = [sorted(b.tolist()) for b in block_partition(pattern)]
        assert sorted(blocks) == [[0, 3], [1], [2, 4]]

    def test_block_partition_empty_pattern(self):
        assert len(block_partition(np.zeros((3, 3), dtype=bool))) == 3

    def test_ordered_product_order(self):
        rng = np.random.default_rng(11)
        us = np.stack([_reference(_hermitian(rng, 3), 0.3) for _ in range(5)])
        expected = us[4] @ us[3] @ us[2] @ us[1] @ us[0]
        np.testing.assert_allclose(ordered_product(us), expected, atol=1e-12)

    def test_ordered_product_batched(self):
        rng = np.random.default_rng(12)
        us = np.stack([
            np.stack([_reference(_hermitian(rng, 2), 0.2) for _ in range(3)]) for _ in range(2)
        ])
        out = ordered_product(us)
        assert out.shape == (2, 2, 2)
        np.testing.assert_allclose(out[1], us[1, 2] @ us[1, 1] @ us[1, 0], atol=1e-12)

    def test_run_lengths(self):
        values, counts = run_lengths([1.0, 1.0, 2.0, 2.0, 2.0, 1.0])
        np.testing.assert_array_equal(values, [1.0, 2.0, 1.0])
        np.testing.assert_array_equal(counts, [2, 3, 1])


class TestDrivenPropagator:
    def test_matches_stepwise_product(self):
        rng = np.random.default_rng(21)
        h_static = np.diag(rng.normal(size=4)).astype(complex)
        coupling = np.zeros((4, 4), dtype=complex)
        coupling[0, 1], coupling[1, 0] = -0.5j, 0.5j
        coupling[2, 3], coupling[3, 2] = 0.5, 0.5
        amps = [0.3, 1.1, -0.4]
        taus = [0.2, 0.05, 0.3]
        expected = np.eye(4, dtype=complex)
        for a, t in zip(amps, taus, strict=True):
            expected = _reference(h_static + a * coupling, t) @ expected
        np.testing.assert_allclose(
            driven_propagator(h_static, coupling, amps, taus), expected, atol=1e-12
        )

    def test_batched_static_part(self):
        coupling = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
        h_static = np.zeros((3, 2, 2), dtype=complex)
        h_static[:, 1, 1] = [0.0, 1.0, -2.0]
        u = driven_propagator(h_static, coupling, [1.0], [0.5])
        assert u.shape == (3, 2, 2)
        for k in range(3):
            np.testing.assert_allclose(u[k], _reference(h_static[k] + coupling, 0.5), atol=1e-12)
        # resonant pi pulse
        assert abs(u[0, 1, 0]) ** 2 == pytest.approx(1.0)
