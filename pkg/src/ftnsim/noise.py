"""AWGN and FTN-specific colored-noise generation.

The default colored generator is the circulant spectral method, exact under
the block model of the receiver: n = Q^T diag(sqrt(N0 * lambda_g)) w gives
E[n n^H] = N0 * G. The oversampled waveform generator reproduces the physical
mechanism (white noise through the matched filter) and is validation-only.
"""

from __future__ import annotations

import numpy as np

from .channel import FreqChannel, to_time
from .pulse import PulseSpec, rrc_impulse


def draw_awgn(N: int, N0: float, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. CN(0, N0) samples."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if N0 < 0:
        raise ValueError("N0 must be non-negative")
    w = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    return np.sqrt(N0 / 2.0) * w

def draw_colored(freq: FreqChannel, rng: np.random.Generator) -> np.ndarray:
    """Colored noise with covariance N0 * G under the circulant model."""
    lam = np.maximum(freq.lam.real, 0.0)
    w = draw_awgn(freq.N, 1.0, rng)
    return to_time(np.sqrt(freq.N0 * lam) * w)


def draw_colored_waveform(
    spec: PulseSpec, N: int, N0: float, rng: np.random.Generator, span: float = 30.0
) -> np.ndarray:
    """Colored noise via the physical route: oversampled white noise filtered
    by the matched filter h*(-t) and sampled at kT. Test oracle only."""
    if spec.oversampling < 8:
        raise ValueError("oversampling must be >= 8 for the waveform generator")
    dt = spec.alpha / spec.oversampling
    # matched filter taps on the oversampled grid (h is real and even in energy)
    tau = np.arange(-span, span + dt, dt)
    h = rrc_impulse(tau, spec.beta)
    n_samples = N * spec.oversampling + len(h)
    w = draw_awgn(n_samples, N0 / dt, rng)
    filtered = np.convolve(w, h, mode="valid") * dt
    return filtered[: N * spec.oversampling : spec.oversampling].copy()
