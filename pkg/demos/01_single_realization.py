# %% [markdown]
# # One fading draw, three relay schemes
#
# Draw a single channel realization for K = 3 pairs and a 64-antenna relay,
# compute the relay gains and per-destination SINRs, and compare the
# Gram-matrix closed forms against the explicit N x N relay matrix.

# %%
import numpy as np

from relaymimo import (LargeScaleProfile, PowerSetting, RandomSource,
                       RelayScheme, SystemConfig, draw_channels, mrc_gain,
                       per_user_sinr, power_check, relay_matrix,
                       sinr_from_decomposition, zf_gain)

N, K, N0 = 64, 3, 1.0
profile = LargeScaleProfile([1.0, 0.5, 2.0], [1.0, 1.5, 0.8])
ch = draw_channels(SystemConfig(N, K, N0), profile, RandomSource(seed=1))
pw = PowerSetting(p_t=0.2, p_r=1.0)

print("a_mrc =", mrc_gain(ch, pw, N0))
print("a_zf  =", zf_gain(ch, pw, N0))

# %% [markdown]
# Both gains are chosen so the relay spends exactly `p_r` on average.

# %%
for scheme in (RelayScheme.MRC_MRT, RelayScheme.ZF):
    W = relay_matrix(scheme, ch, pw, N0)
    print(f"{scheme.value:>3}: relay power {power_check(W, ch.G1, pw, N0):.12f}")

# %% [markdown]
# Per-destination SINR: closed form vs. the four-term breakdown of the
# received signal.

# %%
for scheme in RelayScheme:
    fast = per_user_sinr(scheme, ch, pw, N0)
    print(f"{scheme.value:>3}: {np.round(fast, 4)}")
    if scheme is RelayScheme.NAIVE:
        continue
    W = relay_matrix(scheme, ch, pw, N0)
    parts = [sinr_from_decomposition(W, ch, pw, N0, k) for k in range(K)]
    print("     from W:", np.round([p.sinr for p in parts], 4))
    print("     interference:", [f"{p.interference:.2e}" for p in parts])
