"""End-to-end FTN pipelines: uncoded, two-stage (RSC) and three-stage
(RSC + URC) transmitters with their iterative receivers.

Frame layout: num_blocks FDE blocks of N BPSK symbols each. For the coded
schemes the interleavers span the whole frame (N * num_blocks coded bits) and
the RSC info length is N * num_blocks / 2 - 1 (one trellis tail pair).
Channel state (eigenvalues, whitening spectrum, fading taps) is known exactly
at the receiver.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import codec
from .channel import (
    CirculantChannel,
    FadingRealization,
    FreqChannel,
    build_circulant,
    freq_response,
    make_freq_channel,
    noise_spectrum,
)
from .equalizer import mmse_weights_colored_diag, equalize_hard, slice_bpsk
from .noise import draw_colored
from .pulse import PulseSpec, isi_taps
from .softdemod import demodulate_block

SCHEMES = ("uncoded", "two-stage", "three-stage")
DEMODULATORS = ("proposed-colored", "conventional-white")
CHANNELS = ("awgn", "rayleigh")


@dataclass(frozen=True)
class SystemConfig:
    scheme: str
    pulse: PulseSpec
    N: int
    num_blocks: int = 1
    demodulator: str = "proposed-colored"
    channel: str = "awgn"
    l_d: int = 20
    i_in: int = 2
    i_out: int = 21
    llr_scale_mode: str = "gaussian-calibrated"
    max_log: bool = False
    codec: codec.CodecConfig = field(default_factory=codec.CodecConfig)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme: {self.scheme}")
        if self.demodulator not in DEMODULATORS:
            raise ValueError(f"unknown demodulator: {self.demodulator}")
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel: {self.channel}")
        if self.scheme != "uncoded" and self.total_symbols % 2 != 0:
            raise ValueError("coded schemes need an even number of symbols per frame")

    @property
    def total_symbols(self) -> int:
        return self.N * self.num_blocks

    @property
    def info_length(self) -> int:
        if self.scheme == "uncoded":
            return self.total_symbols
        return self.total_symbols // 2 - 1

    @property
    def code_rate(self) -> float:
        return 1.0 if self.scheme == "uncoded" else 0.5


def nyquist_baseline(cfg: SystemConfig) -> SystemConfig:
    """The same chain over the ISI-free channel (alpha forced to 1)."""
    return replace(cfg, pulse=replace(cfg.pulse, alpha=1.0))


def spectral_efficiency(cfg: SystemConfig) -> float:
    """R_c * log2(M_mod) / (alpha * (1 + beta)) in bps/Hz (BPSK: M_mod = 2)."""
    return cfg.code_rate / (cfg.pulse.alpha * (1.0 + cfg.pulse.beta))


def ebn0_to_n0(cfg: SystemConfig, snr_db: float) -> float:
    """Eb/N0 in dB to noise variance, with Es = 1 and Eb = Es / R_c."""
    return 1.0 / (cfg.code_rate * 10.0 ** (snr_db / 10.0))


def bpsk_map(bits: np.ndarray) -> np.ndarray:
    """bit 0 -> +1, bit 1 -> -1."""
    return (1.0 - 2.0 * np.asarray(bits, dtype=float)).astype(complex)


@lru_cache(maxsize=32)
def _static_channel(pulse: PulseSpec, N: int):
    """Per-(pulse, N) cache: ISI taps, g-circulant, eigenvalues, Phi_eta."""
    taps = isi_taps(pulse)
    ch = build_circulant(taps, N)
    lam = freq_response(ch)
    phi = noise_spectrum(taps, N)
    phi.setflags(write=False)
    return taps, ch, lam, phi


def encode_chain(bits: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """bits -> (num_blocks, N) BPSK symbol blocks."""
    bits = np.asarray(bits, dtype=np.int64)
    if bits.size != cfg.info_length:
        raise ValueError(f"expected {cfg.info_length} info bits, got {bits.size}")
    if cfg.scheme == "uncoded":
        mod_bits = bits
    else:
        coded = codec.rsc_encode(bits)
        s1, s2 = cfg.codec.interleaver_seeds
        mod_bits = codec.interleave(s1, coded)
        if cfg.scheme == "three-stage":
            mod_bits = codec.interleave(s2, codec.urc_encode(mod_bits))
    return bpsk_map(mod_bits).reshape(cfg.num_blocks, cfg.N)


def _effective_freq(freq: FreqChannel, cfg: SystemConfig) -> FreqChannel:
    if cfg.demodulator == "conventional-white":
        return freq.with_flat_whitening()
    return freq


def _demodulate_frame(y_blocks, chans, freqs, prior_mod, cfg, training):
    """Run the soft FDE over every block; returns frame-length LLRs."""
    llrs = np.empty(cfg.total_symbols)
    for b in range(cfg.num_blocks):
        sl = slice(b * cfg.N, (b + 1) * cfg.N)
        train = None if training is None else training[b]
        llrs[sl], _ = demodulate_block(
            y_blocks[b],
            chans[b],
            freqs[b],
            prior_mod[sl],
            scale_mode=cfg.llr_scale_mode,
            training_symbols=train,
        )
    return llrs


def decode_iterative(
    y_blocks: np.ndarray,
    chans: list[CirculantChannel],
    freqs: list[FreqChannel],
    cfg: SystemConfig,
    training_symbols: np.ndarray | None = None,
) -> np.ndarray:
    """Iterative receiver; returns hard-decided information bits.

    freqs carry the true whitening spectrum; the conventional-white receiver
    variant is obtained by flattening Phi_eta before filtering.
    training_symbols (num_blocks, N) feed the gaussian-calibrated LLR scale.
    """
    freqs = [_effective_freq(f, cfg) for f in freqs]
    if cfg.llr_scale_mode == "gaussian-calibrated" and training_symbols is None:
        raise ValueError("gaussian-calibrated LLR scale needs training symbols")

    if cfg.scheme == "uncoded":
        bits = np.empty(cfg.total_symbols, dtype=np.int8)
        for b in range(cfg.num_blocks):
            w = mmse_weights_colored_diag(freqs[b])
            bits[b * cfg.N : (b + 1) * cfg.N] = slice_bpsk(equalize_hard(y_blocks[b], w))
        return bits

    s1, s2 = cfg.codec.interleaver_seeds
    rsc = codec.rsc_trellis()
    prior_mod = np.zeros(cfg.total_symbols)

    if cfg.scheme == "two-stage":
        rsc_out = None
        for _ in range(cfg.i_out):
            llr_mod = _demodulate_frame(y_blocks, chans, freqs, prior_mod, cfg, training_symbols)
            lc = codec.deinterleave(s1, llr_mod).reshape(-1, 2)
            rsc_out = codec.siso_decode(rsc, lc, terminated=True, max_log=cfg.max_log)
            prior_mod = codec.interleave(s1, rsc_out.ext_coded.reshape(-1))
        return (rsc_out.app_info[: cfg.info_length] < 0).astype(np.int8)

    urc = codec.urc_trellis()
    apriori_urc = np.zeros(cfg.total_symbols)
    rsc_out = None
    for _ in range(cfg.i_out):
        urc_out = None
        for _ in range(cfg.i_in):
            llr_mod = _demodulate_frame(y_blocks, chans, freqs, prior_mod, cfg, training_symbols)
            lc = codec.deinterleave(s2, llr_mod).reshape(-1, 1)
            urc_out = codec.siso_decode(urc, lc, apriori_urc, terminated=False, max_log=cfg.max_log)
            prior_mod = codec.interleave(s2, urc_out.ext_coded.reshape(-1))
        lc_rsc = codec.deinterleave(s1, urc_out.ext_info).reshape(-1, 2)
        rsc_out = codec.siso_decode(rsc, lc_rsc, terminated=True, max_log=cfg.max_log)
        apriori_urc = codec.interleave(s1, rsc_out.ext_coded.reshape(-1))
    return (rsc_out.app_info[: cfg.info_length] < 0).astype(np.int8)


@dataclass(frozen=True)
class FrameResult:
    bit_errors: int
    bits: int


def simulate_frame(cfg: SystemConfig, snr_db: float, rng: np.random.Generator) -> FrameResult:
    """Transmit, corrupt and decode one frame; returns the error count."""
    N0 = ebn0_to_n0(cfg, snr_db)
    taps, g_ch, g_lam, phi = _static_channel(cfg.pulse, cfg.N)
    noise_freq = FreqChannel(lam=g_lam, phi_eta=phi, N0=N0)

    bits = rng.integers(0, 2, cfg.info_length)
    symbols = encode_chain(bits, cfg)

    y_blocks = np.empty_like(symbols)
    chans, freqs = [], []
    for b in range(cfg.num_blocks):
        if cfg.channel == "rayleigh":
            fading = FadingRealization.draw(cfg.l_d, rng)
            ch, freq = make_freq_channel(taps, cfg.N, N0, fading=fading)
        else:
            ch = g_ch
            freq = noise_freq
        # matched-filter noise coloring depends only on the pulse, not fading
        y_blocks[b] = ch.apply(symbols[b]) + draw_colored(noise_freq, rng)
        chans.append(ch)
        freqs.append(freq)

    training = symbols if cfg.llr_scale_mode == "gaussian-calibrated" else None
    bits_hat = decode_iterative(y_blocks, chans, freqs, cfg, training_symbols=training)
    errors = int(np.count_nonzero(bits_hat != bits))
    return FrameResult(bit_errors=errors, bits=cfg.info_length)
