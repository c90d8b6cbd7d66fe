"""Per-realization relay processing and end-to-end SINR.

Three schemes are covered: MRC/MRT (``W = a G2 G1^H``), zero-forcing
(``W = a G2 (G2^H G2)^-1 (G1^H G1)^-1 G1^H``) and the orthogonal
("naive") scheme in which each pair gets its own 1/(2K) time share.

The closed forms (:func:`mrc_sinr`, :func:`zf_snr`, :func:`ns_snr`) work on
K x K Gram matrices only. :func:`relay_matrix` and
:func:`sinr_from_decomposition` build the full N x N relay matrix and exist
to cross-check them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization
from .numerics import SingularMatrixError, herm, inv_hermitian

__all__ = [
    "RelayScheme",
    "PowerSetting",
    "SinrBreakdown",
    "ZFInfeasibleError",
    "NonFiniteSinrError",
    "mrc_gain",
    "zf_gain",
    "relay_matrix",
    "power_check",
    "sinr_from_decomposition",
    "mrc_sinr",
    "zf_snr",
    "ns_snr",
    "per_user_sinr",
    "instantaneous_sum_rate",
]


class RelayScheme(enum.Enum):
    MRC_MRT = "mrc"
    ZF = "zf"
    NAIVE = "ns"

    def prelog_divisor(self, K: int) -> int:
        """The ``alpha_f`` of the rate expression: 1, or K for the naive
        scheme."""
        return K if self is RelayScheme.NAIVE else 1

    @classmethod
    def parse(cls, name: str) -> "RelayScheme":
        key = name.strip().lower()
        aliases = {"mrc": cls.MRC_MRT, "mrc/mrt": cls.MRC_MRT,
                   "mrt": cls.MRC_MRT, "zf": cls.ZF, "ns": cls.NAIVE,
                   "naive": cls.NAIVE, "orthogonal": cls.NAIVE}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown relay scheme {name!r}") from None


@dataclass(frozen=True)
class PowerSetting:
    """Per-source transmit power `p_t` and total relay power `p_r` (linear)."""

    p_t: float
    p_r: float

    def __post_init__(self):
        for name in ("p_t", "p_r"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")


@dataclass(frozen=True)
class SinrBreakdown:
    signal: float
    interference: float
    relay_noise: float
    dest_noise: float

    @property
    def sinr(self) -> float:
        return self.signal / (self.interference + self.relay_noise
                              + self.dest_noise)


class ZFInfeasibleError(ValueError):
    """Zero-forcing needs N >= K and invertible Gram matrices."""


class NonFiniteSinrError(FloatingPointError):
    pass


def _grams(ch: ChannelRealization) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(G1^H G1, G2^H G2)``."""
    return herm(ch.G1) @ ch.G1, herm(ch.G2) @ ch.G2


def _zf_inverses(ch: ChannelRealization):
    if ch.N < ch.K:
        raise ZFInfeasibleError(
            f"zero-forcing needs N >= K (got N={ch.N}, K={ch.K})")
    B, A = _grams(ch)
    try:
        return inv_hermitian(B), inv_hermitian(A)
    except SingularMatrixError as exc:
        raise ZFInfeasibleError(f"Gram matrix not invertible: {exc}") from exc


def _mrc_gain_sq(B: np.ndarray, A: np.ndarray, pw: PowerSetting,
                 N0: float) -> float:
    BA = B @ A
    denom = np.trace(pw.p_t * (B @ BA) + N0 * BA).real
    return pw.p_r / denom


def mrc_gain(ch: ChannelRealization, pw: PowerSetting, N0: float) -> float:
    """Variable gain ``a_mrc`` meeting the relay power budget.

    ``a_mrc = sqrt(P_r / Tr(P_t (G1^H G1)^2 G2^H G2 + N0 G1^H G1 G2^H G2))``
    """
    B, A = _grams(ch)
    return float(np.sqrt(_mrc_gain_sq(B, A, pw, N0)))


def _zf_gain_sq(Binv: np.ndarray, Ainv: np.ndarray, pw: PowerSetting,
                N0: float) -> float:
    denom = np.trace(pw.p_t * Ainv + N0 * (Ainv @ Binv)).real
    return pw.p_r / denom


def zf_gain(ch: ChannelRealization, pw: PowerSetting, N0: float) -> float:
    """Variable gain ``a_zf`` meeting the relay power budget.

    ``a_zf = sqrt(P_r / Tr(P_t (G2^H G2)^-1 + N0 (G2^H G2)^-1 (G1^H G1)^-1))``

    Raises
    ------
    ZFInfeasibleError
        If N < K or a Gram matrix is singular.
    """
    Binv, Ainv = _zf_inverses(ch)
    return float(np.sqrt(_zf_gain_sq(Binv, Ainv, pw, N0)))


def relay_matrix(scheme: RelayScheme, ch: ChannelRealization,
                 pw: PowerSetting, N0: float,
                 gain: float | None = None) -> np.ndarray:
    """Full N x N relay transformation for MRC/MRT or ZF.

    `gain` overrides the power-normalising gain; it is meant for fault
    injection in the self-check and should normally be left as ``None``.
    """
    G1, G2 = ch.G1, ch.G2
    if scheme is RelayScheme.MRC_MRT:
        a = mrc_gain(ch, pw, N0) if gain is None else gain
        return a * (G2 @ herm(G1))
    if scheme is RelayScheme.ZF:
        Binv, Ainv = _zf_inverses(ch)
        a = np.sqrt(_zf_gain_sq(Binv, Ainv, pw, N0)) if gain is None else gain
        return a * (G2 @ Ainv @ Binv @ herm(G1))
    raise ValueError(f"{scheme.name} has no single relay matrix")


def power_check(W: np.ndarray, G1: np.ndarray, pw: PowerSetting,
                N0: float) -> float:
    """Average relay transmit power ``Tr(P_t W G1 G1^H W^H + N0 W W^H)``,
    conditioned on the channel."""
    WG1 = W @ G1
    return float(pw.p_t * np.sum(np.abs(WG1) ** 2)
                 + N0 * np.sum(np.abs(W) ** 2))


def sinr_from_decomposition(W: np.ndarray, ch: ChannelRealization,
                            pw: PowerSetting, N0: float,
                            k: int) -> SinrBreakdown:
    """Split the received power at destination `k` into its four parts."""
    if not 0 <= k < ch.K:
        raise IndexError(f"destination index {k} out of range for K={ch.K}")
    row = herm(ch.G2[:, k:k + 1]) @ W          # 1 x N
    coupling = np.abs(row @ ch.G1).ravel() ** 2  # |g2k^H W g1i|^2
    others = np.delete(coupling, k)
    return SinrBreakdown(
        signal=float(pw.p_t * coupling[k]),
        interference=float(pw.p_t * others.sum()) if others.size else 0.0,
        relay_noise=float(np.sum(np.abs(row) ** 2) * N0),
        dest_noise=float(N0),
    )


def _checked(gamma: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(gamma)):
        raise NonFiniteSinrError(f"non-finite SINR encountered: {gamma}")
    return gamma


def mrc_sinr(ch: ChannelRealization, pw: PowerSetting,
             N0: float) -> np.ndarray:
    """Per-destination SINR under MRC/MRT.

    With ``v_k = g2k^H G2 G1^H`` every term reduces to K x K quantities:
    ``v_k g1i = [A B]_{ki}`` and ``||v_k||^2 = [A B A]_{kk}`` where
    ``A = G2^H G2`` and ``B = G1^H G1``.
    """
    B, A = _grams(ch)
    a2 = _mrc_gain_sq(B, A, pw, N0)
    M = A @ B
    v_norm2 = np.einsum("ki,ik->k", M, A).real
    coupling = np.abs(M) ** 2
    signal = np.diag(coupling).copy()
    interference = coupling.sum(axis=1) - signal
    gamma = (pw.p_t * signal / v_norm2) / (
        pw.p_t * interference / v_norm2 + N0 + N0 / (a2 * v_norm2))
    return _checked(gamma)


def zf_snr(ch: ChannelRealization, pw: PowerSetting,
           N0: float) -> np.ndarray:
    """Per-destination SNR under ZF (inter-pair interference is nulled)."""
    Binv, Ainv = _zf_inverses(ch)
    a2 = _zf_gain_sq(Binv, Ainv, pw, N0)
    d = np.diag(Binv)
    # diagonal of a Hermitian inverse is real up to rounding
    assert np.all(np.abs(d.imag) < 1e-12 * np.abs(d.real).max() + 1e-300)
    gamma = a2 * pw.p_t / (a2 * d.real * N0 + N0)
    return _checked(gamma)


def ns_snr(ch: ChannelRealization, pw: PowerSetting,
           N0: float) -> np.ndarray:
    """Per-destination SNR of the orthogonal scheme (two-hop AF form)."""
    g1 = pw.p_t * np.sum(np.abs(ch.G1) ** 2, axis=0) / N0
    g2 = pw.p_r * np.sum(np.abs(ch.G2) ** 2, axis=0) / N0
    return _checked(g1 * g2 / (g1 + g2 + 1.0))


_SINR_FUNCS = {
    RelayScheme.MRC_MRT: mrc_sinr,
    RelayScheme.ZF: zf_snr,
    RelayScheme.NAIVE: ns_snr,
}


def per_user_sinr(scheme: RelayScheme, ch: ChannelRealization,
                  pw: PowerSetting, N0: float) -> np.ndarray:
    return _SINR_FUNCS[scheme](ch, pw, N0)


def per_user_rate(sinr, scheme: RelayScheme) -> np.ndarray:
    sinr = np.asarray(sinr, dtype=float)
    return np.log2(1.0 + sinr) / (2.0 * scheme.prelog_divisor(sinr.size))


def instantaneous_sum_rate(sinr, scheme: RelayScheme) -> float:
    """Sum over users of ``log2(1 + sinr_k) / (2 alpha_f)`` in bit/s/Hz."""
    return float(per_user_rate(sinr, scheme).sum())
