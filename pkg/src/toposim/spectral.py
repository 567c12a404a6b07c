"""Smoothed-periodogram spectral matrices, band coherence and distance.

The raw periodogram at each Fourier frequency is the rank-1 outer product of
the DFT coefficient vector, so the stack stores only the coefficients and
materializes P x P matrices on demand; smoothing averages the rank-1
matrices over neighboring bins with a modified Daniell kernel, which is what
makes coherence informative (the unsmoothed estimate is identically 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DegenerateChannelError(ValueError):
    """A channel is constant or an auto-spectrum vanishes in the band."""


class EmptyBandError(ValueError):
    """The requested frequency band contains no Fourier bin."""


def default_bandwidth(sample_count: int) -> int:
    """Default smoothing half-width: ceil(sqrt(T)/4) bins."""
    return math.ceil(math.sqrt(sample_count) / 4.0)


def default_bands(sampling_rate_hz: float = 100.0) -> dict[str, tuple[float, float]]:
    """Low/middle/high band edges in Hz, scaled from the SR=100 defaults."""
    s = sampling_rate_hz / 100.0
    return {
        "low": (1.0 * s, 7.5 * s),
        "middle": (7.5 * s, 15.0 * s),
        "high": (15.0 * s, 30.0 * s),
    }


def modified_daniell_kernel(halfwidth: int) -> np.ndarray:
    """Uniform kernel over 2h+1 bins with half-weight endpoints, summing to 1."""
    if halfwidth < 1:
        raise ValueError("halfwidth must be >= 1")
    w = np.ones(2 * halfwidth + 1)
    w[0] = w[-1] = 0.5
    return w / (2.0 * halfwidth)


@dataclass
class SpectralStack:
    """Per-frequency spectral matrix estimates in factored form.

    coeffs[p, i] is the DFT coefficient of channel p at freqs[i] (cycles per
    sample, Fourier bins k/T for k = 1..floor(T/2)).  bandwidth == 0 means
    the raw periodogram; a smoothed stack carries the kernel half-width and
    materializes kernel-weighted averages lazily.
    """

    coeffs: np.ndarray  # (P, K) complex
    freqs: np.ndarray  # (K,) cycles/sample
    sample_count: int
    bandwidth: int = 0

    @property
    def channel_count(self) -> int:
        return self.coeffs.shape[0]

    @property
    def bin_count(self) -> int:
        return self.coeffs.shape[1]

    def _window(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Bin indices and kernel weights contributing to smoothed bin i,
        clipped at the stack edges with the weights renormalized."""
        h = self.bandwidth
        kern = modified_daniell_kernel(h)
        lo = max(0, i - h)
        hi = min(self.bin_count, i + h + 1)
        w = kern[lo - (i - h) : kern.size - ((i + h + 1) - hi)]
        return np.arange(lo, hi), w / w.sum()

    def mat(self, i: int) -> np.ndarray:
        """P x P Hermitian spectral matrix at bin i."""
        if self.bandwidth == 0:
            d = self.coeffs[:, i]
            return np.outer(d, d.conj())
        idx, w = self._window(i)
        d = self.coeffs[:, idx]
        return (d * w) @ d.conj().T

    @property
    def mats(self) -> np.ndarray:
        """All spectral matrices as a (K, P, P) array; meant for small inputs
        (memory grows as K * P^2)."""
        return np.stack([self.mat(i) for i in range(self.bin_count)])


@dataclass
class BandMatrices:
    """Coherence and distance (1 - coherence) averaged over a band."""

    band: tuple[float, float]  # Hz
    coherence: np.ndarray
    distance: np.ndarray
    bin_indices: np.ndarray


def periodogram(series, center: bool = True, detrend: bool = False) -> SpectralStack:
    """Raw periodogram stack at Fourier frequencies k/T, k = 1..floor(T/2).

    Channels are mean-centered (and optionally linearly detrended) before
    the DFT; the coefficient normalization is 1/sqrt(T).
    """
    y = np.asarray(series.data, dtype=float)
    if y.ndim != 2:
        raise ValueError("series data must be a (channels, samples) matrix")
    p, t = y.shape
    if t < 8:
        raise ValueError("need at least 8 samples")
    stds = y.std(axis=1)
    if (stds == 0).any():
        bad = int(np.flatnonzero(stds == 0)[0])
        raise DegenerateChannelError(f"channel {bad} is constant")
    if detrend:
        x = np.arange(t, dtype=float)
        x -= x.mean()
        slope = (y - y.mean(axis=1, keepdims=True)) @ x / (x @ x)
        y = y - slope[:, None] * x
    if center:
        y = y - y.mean(axis=1, keepdims=True)
    k = t // 2
    coeffs = np.fft.rfft(y, axis=1)[:, 1 : k + 1] / np.sqrt(t)
    freqs = np.arange(1, k + 1) / t
    return SpectralStack(coeffs=coeffs, freqs=freqs, sample_count=t, bandwidth=0)


def smooth(stack: SpectralStack, bandwidth: int) -> SpectralStack:
    """Kernel-smoothed stack with half-width `bandwidth` bins.

    Requires 1 <= bandwidth < floor(T/4); bandwidth 0 is rejected because the
    raw rank-1 periodogram yields coherence identically 1.
    """
    if stack.bandwidth != 0:
        raise ValueError("stack is already smoothed")
    if not isinstance(bandwidth, (int, np.integer)):
        raise ValueError("bandwidth must be an integer bin count")
    if bandwidth < 1 or bandwidth >= stack.sample_count // 4:
        raise ValueError(
            f"bandwidth {bandwidth} outside [1, {stack.sample_count // 4 - 1}]"
        )
    return SpectralStack(
        coeffs=stack.coeffs,
        freqs=stack.freqs,
        sample_count=stack.sample_count,
        bandwidth=int(bandwidth),
    )


def band_coherence(
    stack: SpectralStack,
    band: tuple[float, float],
    sampling_rate_hz: float,
) -> BandMatrices:
    """Per-bin coherence |f_pq|^2 / (f_pp f_qq) averaged over the band.

    The stack must be smoothed.  The band is [f_lo, f_hi] in Hz within
    (0, Nyquist) and must contain at least one Fourier bin.  distance is
    1 - coherence elementwise.
    """
    if stack.bandwidth == 0:
        raise ValueError(
            "band_coherence requires a smoothed stack: the raw periodogram is "
            "rank 1 and its coherence is identically 1"
        )
    f_lo, f_hi = band
    nyq = sampling_rate_hz / 2.0
    if not (0.0 <= f_lo < f_hi <= nyq):
        raise ValueError(f"band {band} must satisfy 0 <= lo < hi <= Nyquist {nyq}")
    hz = stack.freqs * sampling_rate_hz
    idx = np.flatnonzero((hz >= f_lo) & (hz <= f_hi))
    if idx.size == 0:
        raise EmptyBandError(f"band {band} Hz contains no Fourier bin")

    p = stack.channel_count
    acc = np.zeros((p, p))
    for i in idx:
        f = stack.mat(i)
        auto = f.real.diagonal().copy()
        if (auto <= 1e-14).any():
            bad = int(np.flatnonzero(auto <= 1e-14)[0])
            raise DegenerateChannelError(
                f"auto-spectrum of channel {bad} vanishes at bin {i}"
            )
        coh = (f.real**2 + f.imag**2) / np.outer(auto, auto)
        acc += coh
    coh = acc / idx.size
    coh = 0.5 * (coh + coh.T)
    np.clip(coh, 0.0, 1.0, out=coh)
    np.fill_diagonal(coh, 1.0)
    dist = 1.0 - coh
    return BandMatrices(
        band=(float(f_lo), float(f_hi)),
        coherence=coh,
        distance=dist,
        bin_indices=idx,
    )
