import math

import numpy as np
import pytest
from hypothesis import given

from triqes import ModeFrequencies, SubspaceLabel, build_hamiltonian

from conftest import frequencies, labels


def test_h11_golden(unit_freqs):
    h = build_hamiltonian(unit_freqs, SubspaceLabel(1, 1)).entries
    assert h.tolist() == [[2.0, 1.0], [1.0, 1.0]]
    # permuting to the ordering {|1,0,0>, |0,1,1>} reproduces [[1,1],[1,2]]
    perm = np.array([[0, 1], [1, 0]])
    assert (perm.T @ h @ perm).tolist() == [[1.0, 1.0], [1.0, 2.0]]


def test_h32_golden(unit_freqs):
    h = build_hamiltonian(unit_freqs, SubspaceLabel(3, 2)).entries
    assert np.allclose(np.diag(h), [5.0, 4.0, 3.0], atol=0)
    assert h[0, 1] == pytest.approx(math.sqrt(6.0), abs=1e-15)
    assert h[1, 2] == pytest.approx(2.0, abs=0)
    assert h[0, 2] == 0.0


def test_vacuum(unit_freqs):
    h = build_hamiltonian(unit_freqs, SubspaceLabel(0, 0)).entries
    assert h.tolist() == [[0.0]]


def test_non_finite_frequency_rejected():
    with pytest.raises(ValueError):
        ModeFrequencies(math.inf, 1.0, 1.0)


@given(frequencies(), labels())
def test_exact_symmetry_and_tridiagonality(freqs, label):
    h = build_hamiltonian(freqs, label).entries
    assert np.array_equal(h, h.T)
    d = h.shape[0]
    for i in range(d):
        for j in range(d):
            if abs(i - j) > 1:
                assert h[i, j] == 0.0


@given(frequencies(), labels())
def test_diagonal_and_trace_identity(freqs, label):
    h = build_hamiltonian(freqs, label).entries
    ell, m = label.ell, label.m
    expected = [
        freqs.w1 * j + freqs.w2 * (ell - j) + freqs.w3 * (m - j)
        for j in range(label.n_prime + 1)
    ]
    assert np.allclose(np.diag(h), expected, rtol=0, atol=0)
    assert np.trace(h) == pytest.approx(sum(expected), rel=1e-14, abs=1e-12)


@given(frequencies(), labels())
def test_swap_covariance(freqs, label):
    # the interaction treats modes b and c symmetrically; diagonals are the
    # same sums taken in a different order, so compare to rounding accuracy
    h1 = build_hamiltonian(freqs, label).entries
    swapped = ModeFrequencies(freqs.w1, freqs.w3, freqs.w2)
    h2 = build_hamiltonian(swapped, SubspaceLabel(label.m, label.ell)).entries
    assert np.array_equal(h1 - np.diag(np.diag(h1)), h2 - np.diag(np.diag(h2)))
    scale = max(1.0, np.abs(np.diag(h1)).max())
    assert np.max(np.abs(np.diag(h1) - np.diag(h2))) <= 1e-14 * scale
