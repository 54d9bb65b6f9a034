"""Root-raised-cosine pulse shaping and FTN inter-symbol-interference taps.

The Nyquist interval T0 is normalized to 1 and the pulse to unit energy, so
the raised-cosine autocorrelation satisfies g(0) = 1 and all SNRs are relative
to Es = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PulseSpec:
    """Pulse/packing parameters: symbol interval T = alpha * T0."""

    beta: float
    alpha: float
    nu: int
    oversampling: int = 16

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if self.nu < 0:
            raise ValueError(f"nu must be non-negative, got {self.nu}")
        if self.oversampling < 1:
            raise ValueError("oversampling must be a positive integer")


@dataclass(frozen=True)
class IsiTaps:
    """Sampled autocorrelation g(kT), k = -nu..nu, peak-normalized to g(0)=1."""

    g: np.ndarray
    nu: int

    def __post_init__(self):
        if self.g.shape != (2 * self.nu + 1,):
            raise ValueError("g must have length 2*nu + 1")

    def at(self, k: int) -> float:
        """g(kT) for lag k in [-nu, nu], 0 outside the truncated support."""
        if abs(k) > self.nu:
            return 0.0
        return float(self.g[k + self.nu])


def rrc_impulse(t, beta: float):
    """Unit-energy root-raised-cosine impulse response at time t (units of T0).

    The removable singularities at t = 0 and |t| = 1/(4*beta) are filled with
    their analytic limits.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    out = np.empty_like(t)

    at_zero = np.abs(t) < 1e-12
    if beta > 0:
        at_sing = np.abs(np.abs(t) - 1.0 / (4.0 * beta)) < 1e-12
    else:
        at_sing = np.zeros_like(at_zero)
    regular = ~(at_zero | at_sing)

    tr = t[regular]
    num = np.sin(np.pi * tr * (1.0 - beta)) + 4.0 * beta * tr * np.cos(np.pi * tr * (1.0 + beta))
    den = np.pi * tr * (1.0 - (4.0 * beta * tr) ** 2)
    out[regular] = num / den
    out[at_zero] = 1.0 - beta + 4.0 * beta / np.pi
    if beta > 0:
        out[at_sing] = (beta / np.sqrt(2.0)) * (
            (1.0 + 2.0 / np.pi) * np.sin(np.pi / (4.0 * beta))
            + (1.0 - 2.0 / np.pi) * np.cos(np.pi / (4.0 * beta))
        )
    return float(out[0]) if scalar else out


def raised_cosine(t, beta: float):
    """Raised-cosine pulse (autocorrelation of the unit-energy RRC), RC(0)=1.

    The singularity at |t| = 1/(2*beta) is filled with its analytic limit
    (pi/4) * sinc(1/(2*beta)).
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    if beta > 0:
        at_sing = np.abs(np.abs(t) - 1.0 / (2.0 * beta)) < 1e-12
    else:
        at_sing = np.zeros(t.shape, dtype=bool)
    out = np.empty_like(t)
    regular = ~at_sing
    tr = t[regular]
    out[regular] = np.sinc(tr) * np.cos(np.pi * beta * tr) / (1.0 - (2.0 * beta * tr) ** 2)
    if beta > 0:
        out[at_sing] = (np.pi / 4.0) * np.sinc(1.0 / (2.0 * beta))
    return float(out[0]) if scalar else out


def isi_taps(spec: PulseSpec) -> IsiTaps:
    """ISI taps g(kT) = RC(k * alpha) for k = -nu..nu, truncated at |k| = nu."""
    k = np.arange(-spec.nu, spec.nu + 1)
    g = raised_cosine(k * spec.alpha, spec.beta)
    g = np.asarray(g, dtype=float) / raised_cosine(0.0, spec.beta)
    g[spec.nu] = 1.0
    return IsiTaps(g=g, nu=spec.nu)


def waveform_autocorr(spec: PulseSpec, k: int, span: float = 60.0) -> float:
    """Numerical-integration estimate of g(kT) from the oversampled waveform.

    Validation oracle for isi_taps: integrates h(tau) * h(tau - kT) on a grid
    with spec.oversampling samples per T, normalized by the lag-0 energy.
    """
    if spec.oversampling < 8:
        raise ValueError("oversampling must be >= 8 for the integration oracle")
    dt = spec.alpha / spec.oversampling
    tau = np.arange(-span, span + dt, dt)
    h0 = rrc_impulse(tau, spec.beta)
    hk = rrc_impulse(tau - k * spec.alpha, spec.beta)
    r_k = np.sum(h0 * hk) * dt
    r_0 = np.sum(h0 * h0) * dt
    return float(r_k / r_0)
