"""Faster-than-Nyquist signaling link simulator with noise-whitening FDE."""

from .pulse import PulseSpec, IsiTaps, isi_taps, rrc_impulse, raised_cosine
from .channel import (
    CirculantChannel,
    FreqChannel,
    FadingRealization,
    build_circulant,
    freq_response,
    noise_spectrum,
    composite_fading_taps,
    make_freq_channel,
)
from .transceiver import SystemConfig, simulate_frame, spectral_efficiency

__all__ = [
    "PulseSpec",
    "IsiTaps",
    "isi_taps",
    "rrc_impulse",
    "raised_cosine",
    "CirculantChannel",
    "FreqChannel",
    "FadingRealization",
    "build_circulant",
    "freq_response",
    "noise_spectrum",
    "composite_fading_taps",
    "make_freq_channel",
    "SystemConfig",
    "simulate_frame",
    "spectral_efficiency",
]

__version__ = "0.1.0"
