"""Channel-coding primitives: RSC(2,1,2), URC accumulator, log-MAP SISO.

The RSC code is the half-rate recursive systematic code with octal generators
(3, 2): feedback 1 + D, feedforward D, memory 1, i.e. G(D) = [1, D/(1+D)].
The URC is the rate-1 accumulator 1/(1+D). Both are decoded by the same exact
log-MAP forward-backward kernel (max-star recursion, numba-compiled), with a
max-log variant behind a flag.

LLR convention: L = log P(bit=0) / P(bit=1); bipolar mapping +1 for bit 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

_NEG_INF = -1.0e30


@dataclass(frozen=True)
class Trellis:
    """Binary-input trellis: next_state[s, b] and out_bits[s, b, j]."""

    next_state: np.ndarray
    out_bits: np.ndarray
    systematic: bool

    @property
    def num_states(self) -> int:
        return self.next_state.shape[0]

    @property
    def n_out(self) -> int:
        return self.out_bits.shape[2]


def rsc_trellis() -> Trellis:
    """RSC(2,1,2) with generators (3, 2): state is the last recursive bit."""
    next_state = np.zeros((2, 2), dtype=np.int64)
    out_bits = np.zeros((2, 2, 2), dtype=np.int64)
    for s in range(2):
        for b in range(2):
            a = b ^ s  # feedback 1 + D
            next_state[s, b] = a
            out_bits[s, b, 0] = b  # systematic
            out_bits[s, b, 1] = s  # feedforward D acting on the recursive bit
    return Trellis(next_state=next_state, out_bits=out_bits, systematic=True)


def urc_trellis() -> Trellis:
    """Unity-rate accumulator 1/(1+D): c_k = b_k xor c_{k-1}."""
    next_state = np.zeros((2, 2), dtype=np.int64)
    out_bits = np.zeros((2, 2, 1), dtype=np.int64)
    for s in range(2):
        for b in range(2):
            c = b ^ s
            next_state[s, b] = c
            out_bits[s, b, 0] = c
    return Trellis(next_state=next_state, out_bits=out_bits, systematic=False)


@dataclass(frozen=True)
class CodecConfig:
    """Generator/interleaver parameters of the concatenated code."""

    rsc_feedback_octal: int = 3
    rsc_feedforward_octal: int = 2
    interleaver_seeds: tuple[int, int] = (0x5EED1, 0x5EED2)
    info_length: int = 0


def rsc_encode(bits: np.ndarray) -> np.ndarray:
    """Rate-1/2 systematic encoding, interlaced [s0, p0, s1, p1, ...].

    The trellis is driven back to the zero state with one tail input, so the
    output carries M + 1 systematic/parity pairs.
    """
    bits = np.asarray(bits, dtype=np.int64)
    if bits.size < 1:
        raise ValueError("need at least one information bit")
    out = np.empty(2 * (bits.size + 1), dtype=np.int64)
    s = 0
    for k, b in enumerate(bits):
        out[2 * k] = b
        out[2 * k + 1] = s
        s = b ^ s
    out[-2] = s  # tail input b = s drives the state to zero
    out[-1] = s
    return out


def urc_encode(bits: np.ndarray) -> np.ndarray:
    """Accumulator c_k = b_k xor c_{k-1}, c_{-1} = 0; unterminated."""
    bits = np.asarray(bits, dtype=np.int64)
    return np.bitwise_xor.accumulate(bits)


@lru_cache(maxsize=64)
def _permutation(seed: int, n: int) -> np.ndarray:
    perm = np.random.default_rng(seed).permutation(n)
    perm.setflags(write=False)
    return perm


@lru_cache(maxsize=64)
def _inverse_permutation(seed: int, n: int) -> np.ndarray:
    inv = np.argsort(_permutation(seed, n))
    inv.setflags(write=False)
    return inv


def interleave(seed: int, block: np.ndarray) -> np.ndarray:
    """Seeded uniform random permutation (stable across runs and platforms)."""
    block = np.asarray(block)
    return block[_permutation(seed, block.shape[0])]


def deinterleave(seed: int, block: np.ndarray) -> np.ndarray:
    block = np.asarray(block)
    return block[_inverse_permutation(seed, block.shape[0])]


@njit(cache=True)
def _logmap_kernel(next_state, bip_out, Lc, La, terminated, exact):  # pragma: no cover
    K = Lc.shape[0]
    S = next_state.shape[0]
    n_out = Lc.shape[1]

    gamma = np.empty((K, S, 2))
    for k in range(K):
        for s in range(S):
            for b in range(2):
                m = (1.0 - 2.0 * b) * La[k]
                for j in range(n_out):
                    m += bip_out[s, b, j] * Lc[k, j]
                gamma[k, s, b] = 0.5 * m

    alpha = np.full((K + 1, S), _NEG_INF)
    alpha[0, 0] = 0.0
    for k in range(K):
        for s in range(S):
            if alpha[k, s] <= _NEG_INF:
                continue
            for b in range(2):
                ns = next_state[s, b]
                v = alpha[k, s] + gamma[k, s, b]
                a = alpha[k + 1, ns]
                if a <= _NEG_INF:
                    alpha[k + 1, ns] = v
                elif exact:
                    hi = max(a, v)
                    alpha[k + 1, ns] = hi + np.log1p(np.exp(-abs(a - v)))
                else:
                    alpha[k + 1, ns] = max(a, v)
        norm = alpha[k + 1, 0]
        for s in range(1, S):
            if alpha[k + 1, s] > norm:
                norm = alpha[k + 1, s]
        for s in range(S):
            if alpha[k + 1, s] > _NEG_INF:
                alpha[k + 1, s] -= norm

    beta = np.full((K + 1, S), _NEG_INF)
    if terminated:
        beta[K, 0] = 0.0
    else:
        for s in range(S):
            beta[K, s] = 0.0
    for k in range(K - 1, -1, -1):
        for s in range(S):
            acc = _NEG_INF
            for b in range(2):
                nb = beta[k + 1, next_state[s, b]]
                if nb <= _NEG_INF:
                    continue
                v = nb + gamma[k, s, b]
                if acc <= _NEG_INF:
                    acc = v
                elif exact:
                    hi = max(acc, v)
                    acc = hi + np.log1p(np.exp(-abs(acc - v)))
                else:
                    acc = max(acc, v)
            beta[k, s] = acc
        norm = beta[k, 0]
        for s in range(1, S):
            if beta[k, s] > norm:
                norm = beta[k, s]
        if norm > _NEG_INF:
            for s in range(S):
                if beta[k, s] > _NEG_INF:
                    beta[k, s] -= norm

    app_info = np.empty(K)
    app_coded = np.empty((K, n_out))
    for k in range(K):
        num_u = _NEG_INF
        den_u = _NEG_INF
        num_c = np.full(n_out, _NEG_INF)
        den_c = np.full(n_out, _NEG_INF)
        for s in range(S):
            if alpha[k, s] <= _NEG_INF:
                continue
            for b in range(2):
                nb = beta[k + 1, next_state[s, b]]
                if nb <= _NEG_INF:
                    continue
                v = alpha[k, s] + gamma[k, s, b] + nb
                if b == 0:
                    if num_u <= _NEG_INF:
                        num_u = v
                    elif exact:
                        hi = max(num_u, v)
                        num_u = hi + np.log1p(np.exp(-abs(num_u - v)))
                    else:
                        num_u = max(num_u, v)
                else:
                    if den_u <= _NEG_INF:
                        den_u = v
                    elif exact:
                        hi = max(den_u, v)
                        den_u = hi + np.log1p(np.exp(-abs(den_u - v)))
                    else:
                        den_u = max(den_u, v)
                for j in range(n_out):
                    if bip_out[s, b, j] > 0:
                        if num_c[j] <= _NEG_INF:
                            num_c[j] = v
                        elif exact:
                            hi = max(num_c[j], v)
                            num_c[j] = hi + np.log1p(np.exp(-abs(num_c[j] - v)))
                        else:
                            num_c[j] = max(num_c[j], v)
                    else:
                        if den_c[j] <= _NEG_INF:
                            den_c[j] = v
                        elif exact:
                            hi = max(den_c[j], v)
                            den_c[j] = hi + np.log1p(np.exp(-abs(den_c[j] - v)))
                        else:
                            den_c[j] = max(den_c[j], v)
        app_info[k] = num_u - den_u
        for j in range(n_out):
            app_coded[k, j] = num_c[j] - den_c[j]
    return app_info, app_coded


@dataclass(frozen=True)
class SisoResult:
    ext_info: np.ndarray
    app_info: np.ndarray
    ext_coded: np.ndarray
    app_coded: np.ndarray


def siso_decode(
    trellis: Trellis,
    channel_llrs: np.ndarray,
    apriori_llrs: np.ndarray | None = None,
    terminated: bool = False,
    max_log: bool = False,
) -> SisoResult:
    """Exact log-MAP SISO decoding over the given trellis.

    channel_llrs has shape (K, n_out) with LLRs for the coded bits; the
    a priori LLRs apply to the K information bits. Extrinsics follow the
    subtraction convention: ext_info = app_info - apriori, and
    ext_coded = app_coded - channel_llrs (the systematic channel term of an
    RSC code lives on the coded port).
    """
    Lc = np.ascontiguousarray(np.atleast_2d(np.asarray(channel_llrs, dtype=float)))
    if Lc.shape[1] != trellis.n_out:
        Lc = Lc.reshape(-1, trellis.n_out)
    K = Lc.shape[0]
    La = np.zeros(K) if apriori_llrs is None else np.asarray(apriori_llrs, dtype=float)
    if La.shape != (K,):
        raise ValueError("a priori length inconsistent with the coded block")
    bip_out = np.ascontiguousarray(1.0 - 2.0 * trellis.out_bits.astype(np.float64))
    app_info, app_coded = _logmap_kernel(
        trellis.next_state, bip_out, Lc, La, terminated, not max_log
    )
    return SisoResult(
        ext_info=app_info - La,
        app_info=app_info,
        ext_coded=app_coded - Lc,
        app_coded=app_coded,
    )
