"""Latent AR(2) oscillators with a spectral peak at a chosen frequency.

A second-order autoregression whose characteristic roots are complex with
modulus M > 1 oscillates at the root phase; placing the phase at
peak_freq / sampling_rate concentrates the spectrum around that frequency,
more tightly the closer M is to 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

#: Named rhythm presets: peak frequency in Hz (labels only, everything is
#: keyed on the numeric frequency).
BAND_PEAKS_HZ = {"delta": 2.0, "theta": 5.0, "alpha": 10.0, "beta": 19.5}

DEFAULT_ROOT_MAGNITUDE = 1.05
DEFAULT_BURN_IN = 500


@dataclass(frozen=True)
class Ar2Params:
    """AR(2) coefficients derived from a target spectral peak.

    phase is the root phase in cycles/sample (peak_freq_hz / sampling_rate_hz);
    phi1 and phi2 follow from the root magnitude and phase.
    """

    peak_freq_hz: float
    sampling_rate_hz: float
    root_magnitude: float
    phase: float
    phi1: float
    phi2: float
    noise_sd: float


@dataclass
class LatentPanel:
    """Bundle of independent standardized AR(2) realizations, one per row."""

    data: np.ndarray  # shape (P, T)
    params: Ar2Params
    seed: int
    burn_in: int

    @property
    def count(self) -> int:
        return self.data.shape[0]

    @property
    def length(self) -> int:
        return self.data.shape[1]


def ar2_from_peak(
    peak_freq_hz: float,
    sampling_rate_hz: float,
    root_magnitude: float = DEFAULT_ROOT_MAGNITUDE,
    noise_sd: float = 1.0,
) -> Ar2Params:
    """Build AR(2) parameters whose spectrum peaks near peak_freq_hz.

    Requires 0 < peak_freq_hz < Nyquist, root_magnitude > 1 (causality) and
    noise_sd > 0.  The peak of the resulting theoretical spectrum matches the
    requested frequency the better the closer root_magnitude is to 1.
    """
    if not 0.0 < peak_freq_hz < sampling_rate_hz / 2.0:
        raise ValueError(
            f"peak_freq_hz={peak_freq_hz} must lie strictly between 0 and the "
            f"Nyquist frequency {sampling_rate_hz / 2.0}"
        )
    if root_magnitude <= 1.0:
        raise ValueError(f"root_magnitude={root_magnitude} must exceed 1 for causality")
    if noise_sd <= 0.0:
        raise ValueError(f"noise_sd={noise_sd} must be positive")
    phase = peak_freq_hz / sampling_rate_hz
    phi1 = 2.0 * np.cos(2.0 * np.pi * phase) / root_magnitude
    phi2 = -1.0 / root_magnitude**2
    return Ar2Params(
        peak_freq_hz=float(peak_freq_hz),
        sampling_rate_hz=float(sampling_rate_hz),
        root_magnitude=float(root_magnitude),
        phase=float(phase),
        phi1=float(phi1),
        phi2=float(phi2),
        noise_sd=float(noise_sd),
    )


def spectral_density(params: Ar2Params, freqs: np.ndarray) -> np.ndarray:
    """Theoretical AR(2) spectral density at frequencies in cycles/sample."""
    z = np.exp(-2j * np.pi * np.asarray(freqs, dtype=float))
    transfer = 1.0 - params.phi1 * z - params.phi2 * z**2
    return params.noise_sd**2 / np.abs(transfer) ** 2


def simulate_latents(
    params: Ar2Params,
    count: int,
    length: int,
    seed: int,
    burn_in: int = DEFAULT_BURN_IN,
) -> LatentPanel:
    """Simulate `count` independent AR(2) series of `length` samples.

    The recursion starts from zeros, the first `burn_in` samples are
    discarded, and each series is centered and scaled to unit empirical
    variance.  Each series draws from its own RNG stream spawned from the
    master seed, so the panel is reproducible and channels are independent.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    if burn_in < 2:
        raise ValueError("burn_in must be >= 2 (AR(2) needs two lags of warmup)")
    if count < 1:
        raise ValueError("count must be >= 1")
    children = np.random.SeedSequence(seed).spawn(count)
    data = np.empty((count, length), dtype=float)
    b = [1.0]
    a = [1.0, -params.phi1, -params.phi2]
    for p in range(count):
        rng = np.random.Generator(np.random.PCG64(children[p]))
        noise = rng.normal(0.0, params.noise_sd, size=length + burn_in)
        z = lfilter(b, a, noise)[burn_in:]
        z -= z.mean()
        z /= z.std()
        data[p] = z
    return LatentPanel(data=data, params=params, seed=int(seed), burn_in=int(burn_in))
