"""Data model: constellations, quantizers, channel, energy/SNR bookkeeping,
fading sampler, JSON round trips."""
import json
import math

import numpy as np
import pytest

from pamq import (
    ChannelModel,
    Constellation,
    GeometricConstellation,
    Quantizer,
    UniformQuantizer,
    equidistant_constellation,
    from_json,
    per_symbol_snr,
    sample_fading,
    sigma2_from_snr,
    snr_db_of,
    snr_of,
    symbol_energy,
    to_json,
)


class TestConstellation:
    def test_symbol_energy_equidistant(self):
        assert symbol_energy(Constellation((1.0, 3.0))) == pytest.approx(5.0)

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            Constellation((1.0,))

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            Constellation((3.0, 1.0))
        with pytest.raises(ValueError):
            Constellation((-1.0, 3.0))

    def test_power_of_two(self):
        with pytest.raises(ValueError):
            Constellation((1.0, 2.0, 3.0))

    def test_signed_symbols(self):
        assert tuple(Constellation((1.0, 3.0)).signed_symbols()) == (-3.0, -1.0, 1.0, 3.0)

    def test_normalized_unit_energy(self):
        c = Constellation((1.0, 3.0)).normalized()
        assert sum(a * a for a in c.amplitudes) == pytest.approx(1.0, abs=1e-14)

    def test_equidistant_shape(self):
        c = equidistant_constellation(8)
        assert c.amplitudes == (1.0, 3.0, 5.0, 7.0)


class TestGeometricConstellation:
    def test_normalization_constraint(self):
        cg = GeometricConstellation(0.5, 4)
        total = cg.C**2 * sum(cg.rho ** (2 * i) for i in range(1, 3))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_materialized_energy(self):
        for rho, M in ((0.5, 4), (0.3, 8), (0.8, 4)):
            c = GeometricConstellation(rho, M).materialize()
            assert symbol_energy(c) == pytest.approx(2.0 / M, abs=1e-12)

    def test_adjacent_ratio_exact(self):
        c = GeometricConstellation(0.4, 8).materialize()
        a = c.amplitudes
        for lo, hi in zip(a, a[1:]):
            assert lo / hi == pytest.approx(0.4, abs=1e-14)

    def test_ratio_domain(self):
        with pytest.raises(ValueError):
            GeometricConstellation(1.0, 4)
        with pytest.raises(ValueError):
            GeometricConstellation(0.0, 4)


class TestQuantizer:
    def test_boundary_count(self):
        q = Quantizer((0.5, 1.0, 1.5), bits=3)
        assert q.K == 3
        with pytest.raises(ValueError):
            Quantizer((0.5, 1.0), bits=3)

    def test_implicit_edges(self):
        q = Quantizer((1.0,), bits=2)
        assert q.boundary(0) == 0.0
        assert q.boundary(1) == 1.0
        assert q.boundary(2) == math.inf

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            Quantizer((1.0, 0.5, 2.0), bits=3)

    def test_uniform_materialization(self):
        q = UniformQuantizer(0.25, bits=3).materialize()
        assert q.positive_boundaries == (0.25, 0.5, 0.75)


class TestChannelAndSnr:
    def test_snr_round_trip(self):
        c = Constellation((1.0, 3.0))  # E_s = 5
        ch = ChannelModel(1, 1.0, sigma2=0.5)
        assert snr_of(c, ch) == pytest.approx(10.0)
        assert snr_db_of(c, ch) == pytest.approx(10.0)
        assert sigma2_from_snr(c, 10.0) == pytest.approx(0.5)

    def test_zero_db(self):
        c = GeometricConstellation(0.5, 4).materialize()
        es = symbol_energy(c)
        ch = ChannelModel(1, 1.0, sigma2=es)
        assert snr_db_of(c, ch) == pytest.approx(0.0)

    def test_shape_domain(self):
        with pytest.raises(ValueError):
            ChannelModel(0.4, 1.0)
        ChannelModel(0.5, 1.0)  # boundary value allowed

    def test_per_symbol_snr(self):
        c = Constellation((1.0, 3.0))
        assert per_symbol_snr(c, 0, 10.0) == pytest.approx(0.8)
        assert per_symbol_snr(c, 1, 10.0) == pytest.approx(7.2)
        assert per_symbol_snr(c, 1, 0.0) == 0.0
        with pytest.raises(IndexError):
            per_symbol_snr(c, 2, 10.0)


class TestFadingSampler:
    def test_power_mean(self):
        rng = np.random.default_rng(1)
        ch = ChannelModel(1, 2.0)
        z = sample_fading(ch, rng, size=10**6) ** 2
        stderr = z.std() / math.sqrt(len(z))
        assert abs(z.mean() - 2.0) < 3 * stderr

    def test_power_variance(self):
        rng = np.random.default_rng(2)
        ch = ChannelModel(3, 1.0)
        z = sample_fading(ch, rng, size=10**6) ** 2
        # Var(Z) = omega^2 / m = 1/3; allow a generous CI
        assert z.var() == pytest.approx(1.0 / 3.0, rel=0.02)

    def test_determinism(self):
        ch = ChannelModel(2, 1.0)
        a = sample_fading(ch, np.random.default_rng(7), size=100)
        b = sample_fading(ch, np.random.default_rng(7), size=100)
        assert np.array_equal(a, b)


class TestJson:
    def test_constellation_round_trip(self):
        c = Constellation((1.0, 3.0))
        text = to_json(c)
        assert json.loads(text)["amplitudes"] == [1.0, 3.0]
        assert from_json(text) == c

    def test_quantizer_round_trip(self):
        q = Quantizer((0.5, 1.25, 2.0), bits=3)
        text = to_json(q)
        data = json.loads(text)
        assert data["boundaries"] == [0.5, 1.25, 2.0]
        assert data["bits"] == 3
        assert from_json(text) == q

    def test_channel_round_trip(self):
        ch = ChannelModel(2, 1.5, sigma2=0.25)
        data = json.loads(to_json(ch))
        assert data["m"] == 2 and data["omega"] == 1.5 and data["sigma2"] == 0.25
        assert from_json(to_json(ch)) == ch
