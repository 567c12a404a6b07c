"""Observed series as weighted mixtures of latent oscillators plus noise.

Y(t) = W Z(t) + eps(t): channel p mixes every latent within the weight
cutoff, so channels close in the graph share more latents and co-oscillate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ar2 import LatentPanel
from .graphs import MixingWeights


@dataclass
class MultivariateSeries:
    """P-channel real series with sampling rate and provenance metadata."""

    data: np.ndarray  # shape (P, T)
    sampling_rate_hz: float
    meta: dict = field(default_factory=dict)

    @property
    def channel_count(self) -> int:
        return self.data.shape[0]

    @property
    def sample_count(self) -> int:
        return self.data.shape[1]


def _make_meta(latents: LatentPanel, weights: MixingWeights, seed, snr, noise_sd):
    return {
        "pattern": weights.source_kind,
        "k": weights.cutoff,
        "peak_hz": latents.params.peak_freq_hz,
        "latent_seed": latents.seed,
        "noise_seed": seed,
        "snr": snr,
        "noise_sd": noise_sd,
    }


def mix(
    latents: LatentPanel,
    weights: MixingWeights,
    noise_sd: float = 0.0,
    seed: int = 0,
) -> MultivariateSeries:
    """Mix latents through the weight matrix and add iid Gaussian noise.

    noise_sd applies per channel per time step; noise_sd=0 gives the exact
    noiseless mixture.  Deterministic for a fixed seed.
    """
    if latents.count != weights.node_count:
        raise ValueError(
            f"latent count {latents.count} != weight dimension {weights.node_count}"
        )
    if noise_sd < 0:
        raise ValueError("noise_sd must be >= 0")
    y = weights.matrix @ latents.data
    if noise_sd > 0:
        rng = np.random.Generator(np.random.PCG64(seed))
        y = y + rng.normal(0.0, noise_sd, size=y.shape)
    if not np.isfinite(y).all():
        raise ValueError("mixture produced non-finite values")
    return MultivariateSeries(
        data=y,
        sampling_rate_hz=latents.params.sampling_rate_hz,
        meta=_make_meta(latents, weights, seed, None, noise_sd),
    )


def mix_with_snr(
    latents: LatentPanel,
    weights: MixingWeights,
    snr: float,
    seed: int = 0,
) -> MultivariateSeries:
    """Mix latents and add noise scaled to a per-channel signal-to-noise ratio.

    Each channel's noise variance is its noiseless-mix empirical variance
    divided by snr, so Var(noise_p) = Var(signal_p)/snr exactly in
    expectation for every component.
    """
    if snr <= 0:
        raise ValueError("snr must be > 0")
    if latents.count != weights.node_count:
        raise ValueError(
            f"latent count {latents.count} != weight dimension {weights.node_count}"
        )
    signal = weights.matrix @ latents.data
    sd = signal.std(axis=1, keepdims=True) / np.sqrt(snr)
    rng = np.random.Generator(np.random.PCG64(seed))
    y = signal + sd * rng.standard_normal(signal.shape)
    if not np.isfinite(y).all():
        raise ValueError("mixture produced non-finite values")
    return MultivariateSeries(
        data=y,
        sampling_rate_hz=latents.params.sampling_rate_hz,
        meta=_make_meta(latents, weights, seed, float(snr), None),
    )
