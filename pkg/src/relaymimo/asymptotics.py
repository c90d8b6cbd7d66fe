"""Deterministic large-array limits of the end-to-end SINR.

Three power-scaling laws are supported, each keeping some products with the
antenna count fixed while N grows:

* :class:`CaseI`   -- ``P_t = E_t / N``, relay power ``P_r`` fixed;
* :class:`CaseII`  -- ``P_r = E_r / N``, source power ``P_t`` fixed;
* :class:`CaseIII` -- both scaled.

:class:`Unscaled` (both powers fixed) has no finite limit and is rejected
here; the Monte Carlo estimator still accepts it.

All trace terms are written out as sums over the diagonal gains.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .channel import LargeScaleProfile
from .relaying import PowerSetting, RelayScheme, per_user_rate

__all__ = [
    "CaseI",
    "CaseII",
    "CaseIII",
    "Unscaled",
    "ScalingCase",
    "UnsupportedCaseError",
    "AsymptoticReport",
    "Dominance",
    "asym_sinr_mrc",
    "asym_sinr_zf",
    "asym_sinr_ns",
    "asym_sinr",
    "asym_report",
    "dominance_case2",
    "dominance_case3",
]

TIE_RTOL = 1e-12


def _positive(obj, *names):
    for name in names:
        v = getattr(obj, name)
        if not (np.isfinite(v) and v > 0):
            raise ValueError(f"{name} must be finite and > 0, got {v}")


@dataclass(frozen=True)
class CaseI:
    E_t: float
    P_r: float
    label = "I"

    def __post_init__(self):
        _positive(self, "E_t", "P_r")

    def powers(self, N: int) -> PowerSetting:
        return PowerSetting(self.E_t / N, self.P_r)


@dataclass(frozen=True)
class CaseII:
    P_t: float
    E_r: float
    label = "II"

    def __post_init__(self):
        _positive(self, "P_t", "E_r")

    def powers(self, N: int) -> PowerSetting:
        return PowerSetting(self.P_t, self.E_r / N)


@dataclass(frozen=True)
class CaseIII:
    E_t: float
    E_r: float
    label = "III"

    def __post_init__(self):
        _positive(self, "E_t", "E_r")

    def powers(self, N: int) -> PowerSetting:
        return PowerSetting(self.E_t / N, self.E_r / N)


@dataclass(frozen=True)
class Unscaled:
    P_t: float
    P_r: float
    label = "none"

    def __post_init__(self):
        _positive(self, "P_t", "P_r")

    def powers(self, N: int) -> PowerSetting:
        return PowerSetting(self.P_t, self.P_r)


ScalingCase = Union[CaseI, CaseII, CaseIII, Unscaled]


class UnsupportedCaseError(ValueError):
    pass


class Dominance(enum.Enum):
    MRC_BETTER = "mrc"
    ZF_BETTER = "zf"
    TIE = "tie"


@dataclass(frozen=True)
class AsymptoticReport:
    per_user_sinr: tuple[float, ...]
    per_user_rate: tuple[float, ...]
    sum_rate: float


def _source_limit(E_t, eta1, N0):
    # shared by all three schemes under Case I; keep it one expression so the
    # results agree bit for bit
    return E_t * eta1 / N0


def _unsupported(case):
    return UnsupportedCaseError(
        f"no large-N limit for case {type(case).__name__}; "
        "use the Monte Carlo estimator")


def asym_sinr_mrc(case: ScalingCase, profile: LargeScaleProfile,
                  N0: float) -> np.ndarray:
    e1, e2 = profile.arrays()
    if isinstance(case, CaseI):
        return _source_limit(case.E_t, e1, N0)
    if isinstance(case, CaseII):
        tr_d1sq_d2 = np.sum(e1 ** 2 * e2)
        return case.E_r * e1 ** 2 * e2 ** 2 / (tr_d1sq_d2 * N0)
    if isinstance(case, CaseIII):
        tr = np.sum(case.E_t * e1 ** 2 * e2 + N0 * e1 * e2)
        return (case.E_t * e1 / N0) / (1.0 + tr / (case.E_r * e1 * e2 ** 2))
    raise _unsupported(case)


def asym_sinr_zf(case: ScalingCase, profile: LargeScaleProfile,
                 N0: float) -> np.ndarray:
    e1, e2 = profile.arrays()
    if isinstance(case, CaseI):
        return _source_limit(case.E_t, e1, N0)
    if isinstance(case, CaseII):
        tr_inv_d2 = np.sum(1.0 / e2)
        return np.full(profile.K, case.E_r / (tr_inv_d2 * N0))
    if isinstance(case, CaseIII):
        tr = np.sum(case.E_t / e2 + N0 / (e1 * e2))
        return (case.E_t * e1 / N0) / (1.0 + tr * e1 / case.E_r)
    raise _unsupported(case)


def asym_sinr_ns(case: ScalingCase, profile: LargeScaleProfile,
                 N0: float) -> np.ndarray:
    e1, e2 = profile.arrays()
    if isinstance(case, CaseI):
        return _source_limit(case.E_t, e1, N0)
    if isinstance(case, CaseII):
        return case.E_r * e2 / N0
    if isinstance(case, CaseIII):
        g1 = case.E_t * e1 / N0
        g2 = case.E_r * e2 / N0
        return g1 * g2 / (g1 + g2 + 1.0)
    raise _unsupported(case)


_ASYM = {
    RelayScheme.MRC_MRT: asym_sinr_mrc,
    RelayScheme.ZF: asym_sinr_zf,
    RelayScheme.NAIVE: asym_sinr_ns,
}


def asym_sinr(scheme: RelayScheme, case: ScalingCase,
              profile: LargeScaleProfile, N0: float) -> np.ndarray:
    return _ASYM[scheme](case, profile, N0)


def asym_report(scheme: RelayScheme, case: ScalingCase,
                profile: LargeScaleProfile, N0: float) -> AsymptoticReport:
    """Limiting per-user SINRs and rates, and their sum."""
    sinr = asym_sinr(scheme, case, profile, N0)
    rate = per_user_rate(sinr, scheme)
    return AsymptoticReport(tuple(map(float, sinr)), tuple(map(float, rate)),
                            float(rate.sum()))


def _verdict(lhs: float, rhs: float) -> Dominance:
    # lhs > rhs means ZF wins at that destination
    if abs(lhs - rhs) <= TIE_RTOL * max(abs(lhs), abs(rhs)):
        return Dominance.TIE
    return Dominance.ZF_BETTER if lhs > rhs else Dominance.MRC_BETTER


def _check_index(profile, k):
    if not 0 <= k < profile.K:
        raise IndexError(f"user index {k} out of range for K={profile.K}")


def dominance_case2(profile: LargeScaleProfile, k: int) -> Dominance:
    """Which processing gives destination `k` the higher large-N rate when
    the relay power scales as 1/N."""
    _check_index(profile, k)
    e1, e2 = profile.arrays()
    others = np.arange(profile.K) != k
    lhs = np.sum(e1[others] ** 2 * e2[others]) / (e1[k] ** 2 * e2[k] ** 2)
    rhs = np.sum(1.0 / e2[others])
    return _verdict(lhs, rhs)


def dominance_case3(profile: LargeScaleProfile, E_t: float, N0: float,
                    k: int) -> Dominance:
    """Same comparison when both source and relay powers scale as 1/N.

    The verdict depends on `E_t` but not on `E_r`.
    """
    _check_index(profile, k)
    if not (E_t > 0 and N0 > 0):
        raise ValueError("E_t and N0 must be > 0")
    e1, e2 = profile.arrays()
    others = np.arange(profile.K) != k
    w = 1.0 + E_t * e1[others] / N0
    lhs = (np.sum(e1[others] * e2[others] * w)
           / (e1[k] ** 2 * e2[k] ** 2))
    rhs = np.sum(w / (e1[others] * e2[others]))
    return _verdict(lhs, rhs)
