import math
from fractions import Fraction

import numpy as np
import pytest

from triqes import (
    Branch,
    FdConfig,
    ModeFrequencies,
    SubspaceLabel,
    build_hamiltonian,
    contains_eigenvalue,
    eig_sym,
    fd_spectrum,
    potential_spec,
    split_sextic,
    suggest_domain,
)
from triqes.schroedinger import PotentialSpec

SQRT2 = math.sqrt(2.0)


def bare_spec(terms, freqs=None):
    return PotentialSpec(
        b=Fraction(1),
        terms=tuple(terms),
        label=SubspaceLabel(0, 0),
        freqs=freqs or ModeFrequencies(1.0, 1.0, 1.0),
        energy=0.0,
        branch=Branch.PLUS,
    )


class TestFdSpectrum:
    def test_harmonic_oscillator(self):
        # -u'' + x^2 u with odd levels 1, 3, 5 on a symmetric domain
        spec = bare_spec([(2.0, 1.0)])
        cfg = FdConfig(-10.0, 10.0, 4000)
        vals = fd_spectrum(spec, cfg, 3)
        assert np.allclose(vals, [1.0, 3.0, 5.0], atol=1e-4)

    def test_sextic_11_example(self, unit_freqs):
        # at this configuration h is comparable to x_min, which limits the
        # resolution of the sqrt(x) boundary layer; the tight containment
        # runs in the acceptance suite with h << x_min
        tilde, eps = split_sextic(unit_freqs, SubspaceLabel(1, 1))
        cfg = FdConfig(1e-3, 6.0, 8000)
        vals = fd_spectrum(tilde, cfg, 4)
        spec_h = eig_sym(build_hamiltonian(unit_freqs, SubspaceLabel(1, 1)))
        targets = sorted(eps(e) for e in spec_h.eigenvalues)
        for t_val in targets:
            assert np.min(np.abs(vals - t_val)) < 5e-2

    def test_sextic_32_example(self, unit_freqs):
        tilde, eps = split_sextic(unit_freqs, SubspaceLabel(3, 2))
        cfg = FdConfig(1e-3, 6.0, 8000)
        vals = fd_spectrum(tilde, cfg, 5)
        spec_h = eig_sym(build_hamiltonian(unit_freqs, SubspaceLabel(3, 2)))
        for energy in spec_h.eigenvalues:
            target = eps(float(energy))
            assert np.min(np.abs(vals - target)) < 1e-3 * abs(target)

    def test_count_validation(self):
        spec = bare_spec([(2.0, 1.0)])
        cfg = FdConfig(-5.0, 5.0, 200)
        with pytest.raises(ValueError):
            fd_spectrum(spec, cfg, 201)
        with pytest.raises(ValueError):
            fd_spectrum(spec, cfg, 0)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            FdConfig(2.0, 1.0, 500)
        with pytest.raises(ValueError):
            FdConfig(0.0, 1.0, 50)

    def test_determinism(self):
        spec = bare_spec([(2.0, 1.0)])
        cfg = FdConfig(-8.0, 8.0, 1500)
        a = fd_spectrum(spec, cfg, 5)
        b = fd_spectrum(spec, cfg, 5)
        assert np.array_equal(a, b)

    def test_second_order_grid_convergence(self):
        spec = bare_spec([(2.0, 1.0)])
        errs = []
        for n in (500, 1001):
            vals = fd_spectrum(spec, FdConfig(-8.0, 8.0, n), 1)
            errs.append(abs(vals[0] - 1.0))
        order = math.log2(errs[0] / errs[1])
        assert 1.8 <= order <= 2.2


class TestContainsEigenvalue:
    def test_shifted_oscillator_hit(self):
        # ground state of x^2 - 1 sits exactly at 0
        spec = bare_spec([(2.0, 1.0), (0.0, -1.0)])
        cfg = FdConfig(-10.0, 10.0, 3000)
        res = contains_eigenvalue(spec, cfg, 0.0)
        assert res.hit
        assert abs(res.nearest) < 1e-3

    def test_quarkonium_zero_mode_hit(self, unit_freqs):
        label = SubspaceLabel(1, 1)
        spec_h = eig_sym(build_hamiltonian(unit_freqs, label))
        energy = float(spec_h.eigenvalues[0])
        vspec = potential_spec(Fraction(1), unit_freqs, label, energy)
        x_min, x_max = suggest_domain(vspec, 0.0)
        res = contains_eigenvalue(vspec, FdConfig(x_min, x_max, 6000), 0.0)
        assert res.hit

    def test_no_nearby_level(self, unit_freqs):
        label = SubspaceLabel(1, 1)
        spec_h = eig_sym(build_hamiltonian(unit_freqs, label))
        energy = float(spec_h.eigenvalues[0])
        vspec = potential_spec(Fraction(1), unit_freqs, label, energy)
        x_min, x_max = suggest_domain(vspec, 0.0)
        res = contains_eigenvalue(vspec, FdConfig(x_min, x_max, 6000), 0.5)
        assert not res.hit
        assert res.gap > 1e-3

    def test_domain_robustness(self, unit_freqs):
        # enlarging a sufficient domain moves bound levels by < 1e-6
        tilde, eps = split_sextic(unit_freqs, SubspaceLabel(3, 2))
        base = fd_spectrum(tilde, FdConfig(1e-2, 6.0, 9000), 3)
        # keep h comparable while growing the box
        wide = fd_spectrum(tilde, FdConfig(1e-2, 8.0, 12000), 3)
        assert np.max(np.abs(base - wide)) < 1e-6


class TestSingularAdaptation:
    def test_limit_circle_sextic(self, unit_freqs):
        # l = m sextic carries the borderline -1/(4x^2) term; the
        # adapted left boundary recovers the displaced eigenvalues
        label = SubspaceLabel(1, 1)
        tilde, eps = split_sextic(unit_freqs, label)
        spec_h = eig_sym(build_hamiltonian(unit_freqs, label))
        cfg = FdConfig(1e-2, 6.0, 8000)
        for energy in spec_h.eigenvalues:
            res = contains_eigenvalue(tilde, cfg, eps(float(energy)))
            assert res.hit
            assert res.richardson_gap < 1e-3

    def test_plain_dirichlet_far_from_origin(self):
        # domains away from the origin never engage the adaptation
        spec = bare_spec([(2.0, 1.0), (-2.0, -0.25)])
        vals = fd_spectrum(spec, FdConfig(5.0, 9.0, 500), 1)
        assert np.all(np.isfinite(vals))
