"""Monte Carlo estimation of the ergodic sum rate and sweeps over N.

Every trial draws its own channel from a stream derived from
``(seed, row nonce, trial index)``. Results therefore do not depend on how
trials are spread over workers, and the reduction always runs in trial order.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .asymptotics import ScalingCase, Unscaled, asym_report
from .channel import LargeScaleProfile, SystemConfig, draw_channels
from .numerics import RandomSource
from .relaying import (NonFiniteSinrError, PowerSetting, RelayScheme,
                       ZFInfeasibleError, per_user_rate, per_user_sinr)

__all__ = [
    "Estimate",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "NonFiniteTrialError",
    "realized_powers",
    "row_nonce",
    "estimate_ergodic_sum_rate",
    "sweep",
    "convergence_report",
]

DEFAULT_TRIALS = 1000


class NonFiniteTrialError(RuntimeError):
    def __init__(self, trial: int, detail: str):
        self.trial = trial
        super().__init__(f"trial {trial}: {detail}")


@dataclass(frozen=True)
class Estimate:
    """Sample mean and standard error of the instantaneous sum rate.

    `per_user_mean` / `per_user_stderr` hold the same statistics for each
    destination's own rate.
    """

    mean: float
    stderr: float
    trials: int
    per_user_mean: tuple[float, ...] = ()
    per_user_stderr: tuple[float, ...] = ()


@dataclass(frozen=True)
class SweepSpec:
    schemes: tuple[RelayScheme, ...]
    case: ScalingCase
    profile: LargeScaleProfile
    n_values: tuple[int, ...]
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    N0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "schemes", tuple(self.schemes))
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not self.schemes:
            raise ValueError("at least one scheme is required")
        if not self.n_values:
            raise ValueError("at least one antenna count is required")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ValueError(f"n_values must be strictly increasing: "
                             f"{self.n_values}")
        if self.n_values[0] < 1:
            raise ValueError("antenna counts must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if (RelayScheme.ZF in self.schemes
                and self.n_values[0] < self.profile.K):
            raise ZFInfeasibleError(
                f"zero-forcing needs N >= K={self.profile.K}, "
                f"smallest N is {self.n_values[0]}")


@dataclass(frozen=True)
class SweepRow:
    scheme: RelayScheme
    N: int
    estimate: Estimate
    asymptote: Optional[float]


@dataclass(frozen=True)
class SweepResult:
    case: ScalingCase
    rows: tuple[SweepRow, ...]


def realized_powers(case: ScalingCase, N: int) -> PowerSetting:
    """Actual ``(P_t, P_r)`` at array size `N` under a scaling law."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return case.powers(N)


def row_nonce(scheme: RelayScheme, N: int) -> int:
    """Stable 32-bit tag separating the random streams of sweep rows."""
    return zlib.crc32(f"{scheme.value}:{N}".encode())


def _trial_rates(scheme, config, profile, pw, seed, nonce, trials):
    out = np.empty((len(trials), config.n_pairs))
    for j, t in enumerate(trials):
        ch = draw_channels(config, profile,
                           RandomSource(seed, (nonce << 32) | int(t)))
        try:
            sinr = per_user_sinr(scheme, ch, pw, config.noise_power)
        except NonFiniteSinrError as exc:
            raise NonFiniteTrialError(t, str(exc)) from exc
        out[j] = per_user_rate(sinr, scheme)
    return out


def estimate_ergodic_sum_rate(scheme: RelayScheme, N: int,
                              case: ScalingCase, profile: LargeScaleProfile,
                              N0: float, trials: int, seed: int,
                              workers: int = 1) -> Estimate:
    """Sample-mean estimate of the ergodic sum rate at array size `N`.

    Parameters
    ----------
    workers : int
        Number of threads sharing the trials. The estimate is bit-identical
        for any value.

    Raises
    ------
    ZFInfeasibleError
        ZF requested with ``N < K``.
    NonFiniteTrialError
        A trial produced a non-finite SINR; carries the trial index.
    """
    if trials < 2:
        raise ValueError("need at least 2 trials for a standard error")
    K = profile.K
    if scheme is RelayScheme.ZF and N < K:
        raise ZFInfeasibleError(f"zero-forcing needs N >= K (N={N}, K={K})")
    config = SystemConfig(N, K, N0)
    pw = realized_powers(case, N)
    nonce = row_nonce(scheme, N)

    idx = np.arange(trials)
    if workers <= 1:
        rates = _trial_rates(scheme, config, profile, pw, seed, nonce, idx)
    else:
        chunks = np.array_split(idx, min(workers, trials))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda c: _trial_rates(scheme, config, profile, pw, seed,
                                       nonce, c), chunks))
        rates = np.concatenate(parts)

    sums = rates.sum(axis=1)
    root = np.sqrt(trials)
    return Estimate(
        mean=float(np.mean(sums)),
        stderr=float(np.std(sums, ddof=1) / root),
        trials=trials,
        per_user_mean=tuple(float(x) for x in rates.mean(axis=0)),
        per_user_stderr=tuple(float(x)
                              for x in rates.std(axis=0, ddof=1) / root),
    )


def sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """One estimate per (scheme, N), scheme-major, N ascending."""
    scaled = not isinstance(spec.case, Unscaled)
    rows = []
    for scheme in spec.schemes:
        asym = (asym_report(scheme, spec.case, spec.profile, spec.N0).sum_rate
                if scaled else None)
        for N in spec.n_values:
            est = estimate_ergodic_sum_rate(
                scheme, N, spec.case, spec.profile, spec.N0, spec.trials,
                spec.seed, workers=workers)
            rows.append(SweepRow(scheme, N, est, asym))
    return SweepResult(spec.case, tuple(rows))


def convergence_report(result: SweepResult
                       ) -> list[tuple[RelayScheme, int, float]]:
    """Relative gap ``|mean - asymptote| / asymptote`` for every row."""
    out = []
    for row in result.rows:
        if row.asymptote is None:
            raise ValueError(
                f"row ({row.scheme.value}, N={row.N}) has no asymptote")
        gap = abs(row.estimate.mean - row.asymptote) / row.asymptote
        out.append((row.scheme, row.N, gap))
    return out
