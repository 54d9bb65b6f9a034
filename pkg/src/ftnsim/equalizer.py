"""Hard-decision MMSE frequency-domain equalization.

Three weight variants: the conventional white-noise weights, the diagonal
colored-noise (whitening) approximation, and the full non-diagonal
colored-MMSE matrix. The full variant is an accuracy oracle for the diagonal
approximation and is restricted to small N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import CirculantChannel, FreqChannel, to_freq, to_time

_FULL_MAX_N = 256


@dataclass(frozen=True)
class MmseWeights:
    kind: str  # white | colored-diag | colored-full
    diag: np.ndarray | None = None
    dense: np.ndarray | None = None


def _safe_ratio(num: np.ndarray, denom: np.ndarray) -> np.ndarray:
    """num/denom with 0/0 spectral-null bins resolved to 0."""
    ok = denom > 0
    return np.where(ok, num / np.where(ok, denom, 1.0), 0.0)


def mmse_weights_white(freq: FreqChannel) -> MmseWeights:
    """W_white[i] = lambda_i^* / (|lambda_i|^2 + N0/Es)."""
    if freq.Es <= 0:
        raise ValueError("Es must be positive")
    lam = freq.lam
    diag = _safe_ratio(np.conj(lam), np.abs(lam) ** 2 + freq.N0 / freq.Es)
    return MmseWeights(kind="white", diag=diag)


def mmse_weights_colored_diag(freq: FreqChannel) -> MmseWeights:
    """Whitening weights: lambda_i^* / (|lambda_i|^2 + (N0/Es) * Phi_eta[i])."""
    lam = freq.lam
    diag = _safe_ratio(np.conj(lam), np.abs(lam) ** 2 + (freq.N0 / freq.Es) * freq.phi_eta)
    return MmseWeights(kind="colored-diag", diag=diag)


def mmse_weights_colored_full(
    freq: FreqChannel, ch: CirculantChannel, noise_cov: np.ndarray | None = None
) -> MmseWeights:
    """Ideal non-diagonal colored-MMSE weights; dense oracle for N <= 256.

    W = Lambda^H (Lambda Lambda^H + (1/Es) Q^* E[eta eta^H] Q^T)^(-1)

    noise_cov is the time-domain noise covariance; it defaults to the
    circulant N0 * G. Pass the literal Toeplitz matched-filter covariance
    (channel.toeplitz_noise_cov) to witness the non-diagonal structure.
    """
    N = freq.N
    if N > _FULL_MAX_N:
        raise ValueError(f"full-MMSE oracle limited to N <= {_FULL_MAX_N}")
    if noise_cov is None:
        noise_cov = freq.N0 * ch.dense()
    k = np.arange(N)
    Q = np.exp(-2j * np.pi * np.outer(k, k) / N) / np.sqrt(N)
    Qs = Q.conj()
    Lam = np.diag(freq.lam)
    noise_fd = Qs @ noise_cov @ Q.T
    A = Lam @ Lam.conj().T + noise_fd / freq.Es
    if np.linalg.cond(A) > 1e12:
        raise np.linalg.LinAlgError("full-MMSE system matrix is near-singular")
    dense = Lam.conj().T @ np.linalg.inv(A)
    return MmseWeights(kind="colored-full", dense=dense)


def equalize_hard(y_block: np.ndarray, w: MmseWeights) -> np.ndarray:
    """Symbol estimates s_hat = Q^T W (Q^* y)."""
    y_f = to_freq(y_block)
    if w.kind == "colored-full":
        if w.dense.shape[0] != len(y_block):
            raise ValueError("weight/block length mismatch")
        return to_time(w.dense @ y_f)
    if w.diag.shape != y_f.shape:
        raise ValueError("weight/block length mismatch")
    return to_time(w.diag * y_f)


def slice_bpsk(s_hat: np.ndarray) -> np.ndarray:
    """BPSK decision: bit 0 <-> +1, bit 1 <-> -1; exact zero resolves to +1."""
    return (s_hat.real < 0).astype(np.int8)
