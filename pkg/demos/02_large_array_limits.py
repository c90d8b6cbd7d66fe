# %% [markdown]
# # Large-array limits and who wins
#
# With the source power scaled as 1/N (Case I), MRC/MRT, ZF and the
# orthogonal scheme all converge to the same per-user SINR. With the relay
# power scaled as 1/N (Case II), the winner per destination depends on the
# large-scale gains.

# %%
from relaymimo import (CaseI, CaseII, CaseIII, LargeScaleProfile,
                       RelayScheme, asym_report, dominance_case2,
                       dominance_case3)

flat = LargeScaleProfile.uniform(5)
for case in (CaseI(E_t=10, P_r=1), CaseII(P_t=1, E_r=10),
             CaseIII(E_t=10, E_r=10)):
    print(type(case).__name__)
    for scheme in RelayScheme:
        rep = asym_report(scheme, case, flat, 1.0)
        print(f"  {scheme.value:>3}: sinr {rep.per_user_sinr[0]:.4f}, "
              f"sum rate {rep.sum_rate:.4f}")

# %% [markdown]
# Unequal gains, relay power scaled: destination 0 has a weak second hop.

# %%
prof = LargeScaleProfile([2, 2, 2], [1, 3, 3])
for scheme in (RelayScheme.MRC_MRT, RelayScheme.ZF):
    rep = asym_report(scheme, CaseII(P_t=1, E_r=100), prof, 1.0)
    print(scheme.value, [round(r, 4) for r in rep.per_user_rate],
          round(rep.sum_rate, 4))
print("Case II verdicts:", [dominance_case2(prof, k).value for k in range(3)])
print("Case III verdicts (E_t=10):",
      [dominance_case3(prof, 10.0, 1.0, k).value for k in range(3)])
