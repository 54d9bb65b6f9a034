"""Circulant ISI-matrix algebra for CP-assisted FTN blocks.

The unitary DFT matrix Q has entries (1/sqrt(N)) * exp(-2*pi*j*k*l/N); all
products with Q^* and Q^T are realized as FFTs:

    to_freq(x) = Q^* x = sqrt(N) * ifft(x)
    to_time(X) = Q^T X = fft(X) / sqrt(N)

With lambda = N * ifft(first_column), the circulant G factors exactly as
Q^T diag(lambda) Q^*. For a real symmetric CIR this lambda coincides with
fft(first_column) and is real.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pulse import IsiTaps

# Hard truncation of g at |k| = nu leaves Gibbs ripple in the spectrum
# (~5e-3 at alpha = 0.45, nu = 10; worse for very short nu). Ripple is
# clipped to zero; anything beyond this bound indicates a real bug.
_NEG_TOL = 0.1


def to_freq(x: np.ndarray) -> np.ndarray:
    """Apply Q^* (time to frequency domain), unitary."""
    x = np.asarray(x)
    return np.fft.ifft(x) * np.sqrt(x.shape[-1])


def to_time(X: np.ndarray) -> np.ndarray:
    """Apply Q^T (frequency to time domain), unitary inverse of to_freq."""
    X = np.asarray(X)
    return np.fft.fft(X) / np.sqrt(X.shape[-1])


@dataclass(frozen=True)
class CirculantChannel:
    """Circulant ISI matrix G, represented by its first column."""

    first_column: np.ndarray
    N: int

    def apply(self, x: np.ndarray) -> np.ndarray:
        """G @ x via the frequency domain (circular convolution)."""
        return to_time(freq_response(self) * to_freq(x))

    def dense(self) -> np.ndarray:
        """Full N x N matrix; test/oracle use only."""
        cols = [np.roll(self.first_column, j) for j in range(self.N)]
        return np.stack(cols, axis=1)


@dataclass(frozen=True)
class FreqChannel:
    """Everything the equalizers need: eigenvalues, whitening spectrum, noise."""

    lam: np.ndarray
    phi_eta: np.ndarray
    N0: float
    Es: float = 1.0

    @property
    def N(self) -> int:
        return self.lam.shape[0]

    def with_flat_whitening(self) -> "FreqChannel":
        """Phi_eta forced to 1: the conventional (white-noise) receiver model."""
        return FreqChannel(lam=self.lam, phi_eta=np.ones(self.N), N0=self.N0, Es=self.Es)


@dataclass(frozen=True)
class FadingRealization:
    """Block-fading tap coefficients q_l, drawn CN(0, 1/L_D) per block."""

    q: np.ndarray

    @classmethod
    def draw(cls, l_d: int, rng: np.random.Generator) -> "FadingRealization":
        if l_d < 1:
            raise ValueError("L_D must be >= 1")
        scale = np.sqrt(1.0 / (2.0 * l_d))
        q = scale * (rng.standard_normal(l_d) + 1j * rng.standard_normal(l_d))
        return cls(q=q)


def build_circulant_from_cir(cir: np.ndarray, start_lag: int, N: int) -> CirculantChannel:
    """Place a CIR spanning lags start_lag..start_lag+len(cir)-1 circularly."""
    cir = np.asarray(cir)
    if len(cir) > N:
        raise ValueError("CIR longer than block length")
    first_column = np.zeros(N, dtype=complex)
    for i, h in enumerate(cir):
        first_column[(start_lag + i) % N] += h
    return CirculantChannel(first_column=first_column, N=N)


def build_circulant(taps: IsiTaps, N: int) -> CirculantChannel:
    """Circulant G whose first column carries g(kT) at lags -nu..nu."""
    if N <= 2 * taps.nu:
        raise ValueError(f"block length N={N} must exceed the CP length 2*nu={2 * taps.nu}")
    if N & (N - 1) != 0:
        raise ValueError(f"block length N={N} must be a power of two")
    return build_circulant_from_cir(taps.g, -taps.nu, N)


def freq_response(ch: CirculantChannel) -> np.ndarray:
    """Eigenvalues lambda of G in the Q^T diag(lambda) Q^* factorization."""
    return ch.N * np.fft.ifft(ch.first_column)


def noise_spectrum(taps: IsiTaps, N: int) -> np.ndarray:
    """Whitening spectrum Phi_eta of the matched-filtered noise.

    Phi_eta[n] = (1/N) * sum_{l,m} g((l-m)T) * exp(j*2*pi*(l-m)*n/N), reduced
    over the lag d = l - m with weight (N - |d|)/N, then evaluated for all n
    with one length-N FFT. Tiny negative values (truncation artifacts) are
    clipped to zero.
    """
    a = np.zeros(N, dtype=complex)
    dmax = min(taps.nu, N - 1)
    for d in range(-dmax, dmax + 1):
        a[d % N] += (N - abs(d)) / N * taps.at(d)
    phi = N * np.fft.ifft(a)
    if np.abs(phi.imag).max() > 1e-9:
        raise ValueError("Phi_eta has a non-negligible imaginary part")
    phi = phi.real
    if phi.min() < -_NEG_TOL:
        raise ValueError(f"Phi_eta strongly negative (min {phi.min():.3e})")
    return np.maximum(phi, 0.0)


def toeplitz_noise_cov(taps: IsiTaps, N: int, N0: float) -> np.ndarray:
    """Literal matched-filter noise covariance E[eta_m eta_n^*] = N0 g((m-n)T).

    Toeplitz, not circulant: unlike the signal part, the noise carries no
    cyclic prefix, so its frequency-domain covariance is not diagonal.
    """
    idx = np.arange(N)
    lags = idx[:, None] - idx[None, :]
    g = np.zeros(2 * N - 1)
    for d in range(-min(taps.nu, N - 1), min(taps.nu, N - 1) + 1):
        g[d + N - 1] = taps.at(d)
    return N0 * g[lags + N - 1]


def composite_fading_taps(taps: IsiTaps, fading: FadingRealization) -> tuple[np.ndarray, int]:
    """Composite CIR (q * g) for fading blocks, with its starting lag.

    Returns (cir, start_lag) where cir[i] is the tap at lag start_lag + i.
    The composite support 2*nu + L_D must fit in the block; that is enforced
    when the circulant is built.
    """
    cir = np.convolve(fading.q, taps.g.astype(complex))
    return cir, -taps.nu


def make_freq_channel(
    taps: IsiTaps,
    N: int,
    N0: float,
    Es: float = 1.0,
    fading: FadingRealization | None = None,
) -> tuple[CirculantChannel, FreqChannel]:
    """Build the circulant channel and its frequency-domain description.

    Phi_eta depends only on the pulse and N (not on fading), so under fading
    only lambda changes.
    """
    if fading is None:
        ch = build_circulant(taps, N)
    else:
        cir, start = composite_fading_taps(taps, fading)
        ch = build_circulant_from_cir(cir, start, N)
    phi = noise_spectrum(taps, N)
    return ch, FreqChannel(lam=freq_response(ch), phi_eta=phi, N0=N0, Es=Es)
