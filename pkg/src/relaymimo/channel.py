"""Rayleigh fading realizations with per-user large-scale gains."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numerics import RandomSource, cgauss_matrix

__all__ = [
    "LargeScaleProfile",
    "SystemConfig",
    "ChannelRealization",
    "draw_channels",
    "db_to_linear",
    "linear_to_db",
]


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * np.log10(value)


@dataclass(frozen=True)
class LargeScaleProfile:
    """Large-scale gains of the source-relay (`eta1`) and relay-destination
    (`eta2`) links, one linear power gain per pair."""

    eta1: tuple[float, ...]
    eta2: tuple[float, ...]

    def __init__(self, eta1: Sequence[float], eta2: Sequence[float]):
        eta1 = tuple(float(x) for x in eta1)
        eta2 = tuple(float(x) for x in eta2)
        if len(eta1) != len(eta2):
            raise ValueError(
                f"eta1 and eta2 lengths differ ({len(eta1)} vs {len(eta2)})")
        if not eta1:
            raise ValueError("profile must have at least one pair")
        if not all(np.isfinite(x) and x > 0 for x in eta1 + eta2):
            raise ValueError("all large-scale gains must be finite and > 0")
        object.__setattr__(self, "eta1", eta1)
        object.__setattr__(self, "eta2", eta2)

    @classmethod
    def uniform(cls, K: int, eta1: float = 1.0, eta2: float = 1.0):
        return cls([eta1] * K, [eta2] * K)

    @property
    def K(self) -> int:
        return len(self.eta1)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.eta1), np.array(self.eta2)


@dataclass(frozen=True)
class SystemConfig:
    n_antennas: int
    n_pairs: int
    noise_power: float = 1.0

    def __post_init__(self):
        if self.n_antennas < 1 or self.n_pairs < 1:
            raise ValueError("need at least one antenna and one pair")
        if not self.noise_power >= 0:
            raise ValueError("noise power must be >= 0")


@dataclass(frozen=True)
class ChannelRealization:
    """One fading draw: `G1` (sources to relay) and `G2` (relay to
    destinations), both N x K."""

    G1: np.ndarray
    G2: np.ndarray

    @property
    def N(self) -> int:
        return self.G1.shape[0]

    @property
    def K(self) -> int:
        return self.G1.shape[1]


def draw_channels(config: SystemConfig, profile: LargeScaleProfile,
                  rng: RandomSource) -> ChannelRealization:
    """Draw ``G1 = H1 D1^{1/2}`` and ``G2 = H2 D2^{1/2}``.

    For a source with stream ``t``, `H1` comes from stream ``2t`` and `H2`
    from stream ``2t + 1``, so the two hops are independent.
    """
    if profile.K != config.n_pairs:
        raise ValueError(
            f"profile has {profile.K} pairs but config expects "
            f"{config.n_pairs}")
    eta1, eta2 = profile.arrays()
    rng1, rng2 = rng.split(2)
    N, K = config.n_antennas, config.n_pairs
    # column scaling == right-multiplication by the diagonal square root
    G1 = cgauss_matrix(N, K, rng1) * np.sqrt(eta1)
    G2 = cgauss_matrix(N, K, rng2) * np.sqrt(eta2)
    return ChannelRealization(G1, G2)
