"""Multi-pair amplify-and-forward relaying with a very large relay array.

Exact per-realization SINRs for MRC/MRT, zero-forcing and orthogonal relay
processing, their large-array limits under three power-scaling laws, and
Monte Carlo estimates of the ergodic sum rate.
"""

from .asymptotics import (AsymptoticReport, CaseI, CaseII, CaseIII,
                          Dominance, Unscaled, UnsupportedCaseError,
                          asym_report, asym_sinr, asym_sinr_mrc,
                          asym_sinr_ns, asym_sinr_zf, dominance_case2,
                          dominance_case3)
from .channel import (ChannelRealization, LargeScaleProfile, SystemConfig,
                      db_to_linear, draw_channels)
from .montecarlo import (Estimate, SweepResult, SweepSpec,
                         convergence_report, estimate_ergodic_sum_rate,
                         realized_powers, sweep)
from .numerics import RandomSource, SingularMatrixError
from .relaying import (PowerSetting, RelayScheme, SinrBreakdown,
                       ZFInfeasibleError, instantaneous_sum_rate, mrc_gain,
                       mrc_sinr, ns_snr, per_user_sinr, power_check,
                       relay_matrix, sinr_from_decomposition, zf_gain, zf_snr)

__version__ = "0.1.0"
