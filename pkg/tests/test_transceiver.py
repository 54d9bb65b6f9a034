from math import erfc

import numpy as np
import pytest

from ftnsim.channel import FadingRealization
from ftnsim.pulse import PulseSpec
from ftnsim.transceiver import (
    SystemConfig,
    bpsk_map,
    ebn0_to_n0,
    encode_chain,
    nyquist_baseline,
    simulate_frame,
    spectral_efficiency,
)


def make_cfg(scheme, alpha, N, **kw):
    kw.setdefault("llr_scale_mode", "literal")
    return SystemConfig(scheme=scheme, pulse=PulseSpec(beta=0.5, alpha=alpha, nu=10), N=N, **kw)


class TestConfig:
    def test_rate_bookkeeping(self):
        cfg = make_cfg("two-stage", 0.73, 256, num_blocks=2)
        assert cfg.total_symbols == 512
        assert cfg.info_length == 255
        assert cfg.code_rate == 0.5
        un = make_cfg("uncoded", 0.73, 256)
        assert un.info_length == 256
        assert un.code_rate == 1.0

    def test_rejects_unknown_fields(self):
        with pytest.raises(ValueError, match="scheme"):
            make_cfg("bogus", 0.73, 64)
        with pytest.raises(ValueError, match="demodulator"):
            make_cfg("uncoded", 0.73, 64, demodulator="x")
        with pytest.raises(ValueError, match="channel"):
            make_cfg("uncoded", 0.73, 64, channel="x")

    def test_nyquist_baseline_only_touches_alpha(self):
        cfg = make_cfg("three-stage", 0.73, 128)
        base = nyquist_baseline(cfg)
        assert base.pulse.alpha == 1.0
        assert base.pulse.beta == cfg.pulse.beta
        assert base.scheme == cfg.scheme

    @pytest.mark.parametrize(
        "scheme,alpha,expected",
        [
            ("two-stage", 0.73, 0.4566), ("three-stage", 0.73, 0.4566),
            ("two-stage", 0.45, 0.7407),
            ("two-stage", 0.87, 0.3831),
            ("uncoded", 1.0, 0.6667),
        ],
    )
    def test_spectral_efficiency_values(self, scheme, alpha, expected):
        assert spectral_efficiency(make_cfg(scheme, alpha, 64)) == pytest.approx(
            expected, abs=5e-4
        )

    def test_ebn0_conversion(self):
        assert ebn0_to_n0(make_cfg("uncoded", 1.0, 64), 0.0) == pytest.approx(1.0)
        assert ebn0_to_n0(make_cfg("uncoded", 1.0, 64), 10.0) == pytest.approx(0.1)
        # half-rate coding doubles the noise at the same Eb/N0
        assert ebn0_to_n0(make_cfg("two-stage", 1.0, 64), 10.0) == pytest.approx(0.2)


class TestEncodeChain:
    def test_bpsk_map(self):
        assert np.array_equal(bpsk_map([0, 1, 0]), [1, -1, 1])

    def test_uncoded_is_plain_mapping(self):
        cfg = make_cfg("uncoded", 0.73, 8)
        bits = np.array([0, 1, 1, 0, 0, 1, 0, 1])
        assert np.array_equal(encode_chain(bits, cfg).ravel(), bpsk_map(bits))

    def test_power_is_unit(self):
        cfg = make_cfg("three-stage", 0.73, 64)
        rng = np.random.default_rng(0)
        sym = encode_chain(rng.integers(0, 2, cfg.info_length), cfg)
        assert np.all(np.abs(sym) == 1.0)
        assert sym.shape == (1, 64)

    def test_wrong_length_rejected(self):
        cfg = make_cfg("two-stage", 0.73, 64)
        with pytest.raises(ValueError, match="info bits"):
            encode_chain(np.zeros(64, dtype=int), cfg)


class TestNoiselessLoopback:
    @pytest.mark.parametrize("scheme", ["uncoded", "two-stage", "three-stage"])
    @pytest.mark.parametrize("alpha", [0.73, 1.0])
    def test_high_snr_recovers_bits(self, scheme, alpha):
        cfg = make_cfg(scheme, alpha, 128, i_out=8)
        res = simulate_frame(cfg, 100.0, np.random.default_rng(1))
        assert res.bit_errors == 0
        assert res.bits == cfg.info_length

    @pytest.mark.parametrize("demod", ["proposed-colored", "conventional-white"])
    def test_severe_packing_with_iterations(self, demod):
        cfg = make_cfg("two-stage", 0.5, 256, i_out=10, demodulator=demod,
                       llr_scale_mode="gaussian-calibrated")
        res = simulate_frame(cfg, 60.0, np.random.default_rng(2))
        assert res.bit_errors == 0


class TestDeterminism:
    def test_same_seed_same_result(self):
        cfg = make_cfg("three-stage", 0.73, 128, i_out=3)
        a = simulate_frame(cfg, 2.0, np.random.default_rng(77))
        b = simulate_frame(cfg, 2.0, np.random.default_rng(77))
        assert a == b

    def test_different_seed_differs_sometimes(self):
        cfg = make_cfg("uncoded", 0.73, 256)
        r = [simulate_frame(cfg, 4.0, np.random.default_rng(s)).bit_errors for s in range(6)]
        assert len(set(r)) > 1


class TestNyquistEquivalences:
    def test_baseline_config_is_bit_identical_to_direct_alpha_one(self):
        cfg = nyquist_baseline(make_cfg("two-stage", 0.73, 128, i_out=4))
        direct = make_cfg("two-stage", 1.0, 128, i_out=4)
        assert cfg == direct
        a = simulate_frame(cfg, 3.0, np.random.default_rng(5))
        b = simulate_frame(direct, 3.0, np.random.default_rng(5))
        assert a == b

    def test_demodulator_choice_is_immaterial_without_packing(self):
        """At alpha = 1 the whitening spectrum is flat, so the proposed and
        conventional receivers must agree on every decoded frame."""
        for seed in range(5):
            res = []
            for demod in ("proposed-colored", "conventional-white"):
                cfg = make_cfg("two-stage", 1.0, 128, i_out=4, demodulator=demod)
                res.append(simulate_frame(cfg, 2.0, np.random.default_rng(seed)))
            assert res[0] == res[1]


class TestFadingPlumbing:
    def test_single_unit_tap_reduces_to_awgn(self, monkeypatch):
        monkeypatch.setattr(
            FadingRealization,
            "draw",
            classmethod(lambda cls, l_d, rng: cls(q=np.array([1.0 + 0j]))),
        )
        cfg_f = make_cfg("two-stage", 0.73, 128, i_out=4, channel="rayleigh", l_d=1)
        cfg_a = make_cfg("two-stage", 0.73, 128, i_out=4, channel="awgn")
        a = simulate_frame(cfg_f, 2.0, np.random.default_rng(11))
        b = simulate_frame(cfg_a, 2.0, np.random.default_rng(11))
        assert a == b

    def test_rayleigh_runs_and_counts_bits(self):
        cfg = make_cfg("three-stage", 0.73, 128, i_out=2, channel="rayleigh", l_d=20)
        res = simulate_frame(cfg, 6.0, np.random.default_rng(12))
        assert res.bits == cfg.info_length
        assert 0 <= res.bit_errors <= res.bits


class TestMonteCarloAnchors:
    def test_uncoded_nyquist_matches_analytic_ber(self):
        """Uncoded BPSK at alpha = 1, Eb/N0 = 6 dB: BER should match
        0.5 * erfc(sqrt(Eb/N0)) within 3 sigma of the binomial spread."""
        cfg = make_cfg("uncoded", 1.0, 4096)
        rng = np.random.default_rng(13)
        errors = bits = 0
        for _ in range(25):
            res = simulate_frame(cfg, 6.0, rng)
            errors += res.bit_errors
            bits += res.bits
        p = 0.5 * erfc(np.sqrt(10.0 ** 0.6))
        sigma = np.sqrt(p * (1 - p) / bits)
        assert abs(errors / bits - p) < 3 * sigma

    def test_coding_gain_at_moderate_snr(self):
        rng = np.random.default_rng(14)
        coded = make_cfg("two-stage", 1.0, 512, i_out=5,
                         llr_scale_mode="gaussian-calibrated")
        uncoded = make_cfg("uncoded", 1.0, 512)
        ec = eu = bc = bu = 0
        for _ in range(30):
            r = simulate_frame(coded, 4.0, rng)
            ec, bc = ec + r.bit_errors, bc + r.bits
            r = simulate_frame(uncoded, 4.0, rng)
            eu, bu = eu + r.bit_errors, bu + r.bits
        assert eu > 0
        assert ec / bc < eu / bu
