# %% [markdown]
# # Per-user rates when the relay power is scaled
#
# K = 3 pairs, gains eta1 = (2, 2, 2), eta2 = (1, 3, 3), P_t = 1 and relay
# power 100 / N. ZF serves every destination equally; MRC/MRT favours the
# two destinations with strong second hops once N is large.

# %%
import numpy as np

from relaymimo import (CaseII, LargeScaleProfile, RelayScheme, asym_report,
                       estimate_ergodic_sum_rate)

prof = LargeScaleProfile([2, 2, 2], [1, 3, 3])
case = CaseII(P_t=1.0, E_r=100.0)

for scheme in (RelayScheme.MRC_MRT, RelayScheme.ZF):
    limit = asym_report(scheme, case, prof, 1.0)
    print(f"{scheme.value}: limits {np.round(limit.per_user_rate, 3)}")
    for N in (64, 256, 1024):
        e = estimate_ergodic_sum_rate(scheme, N, case, prof, 1.0, 200, 0)
        print(f"   N={N:5d} {np.round(e.per_user_mean, 3)}")
