# %% [markdown]
# # Sum rate vs. number of relay antennas
#
# Monte Carlo ergodic sum rate with the source power scaled as E_t / N
# (E_t = 10 dB, P_r = 1, K = 5, unit large-scale gains), compared with the
# large-N value. Pass a file name as the first argument to also save a plot
# (needs matplotlib).

# %%
import sys

from relaymimo import (CaseI, LargeScaleProfile, RelayScheme, SweepSpec,
                       convergence_report, db_to_linear, sweep)

spec = SweepSpec(schemes=list(RelayScheme),
                 case=CaseI(E_t=db_to_linear(10), P_r=1.0),
                 profile=LargeScaleProfile.uniform(5),
                 n_values=[8, 16, 32, 64, 128, 256, 512],
                 trials=300, seed=0)
result = sweep(spec)

for (scheme, N, gap), row in zip(convergence_report(result), result.rows):
    print(f"{scheme.value:>3} N={N:4d}  {row.estimate.mean:7.4f} "
          f"+- {row.estimate.stderr:.4f}  limit {row.asymptote:.4f}  "
          f"gap {gap:6.1%}")

# %%
if len(sys.argv) > 1:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots()
    for scheme in RelayScheme:
        rows = [r for r in result.rows if r.scheme is scheme]
        ax.plot([r.N for r in rows], [r.estimate.mean for r in rows], "o-",
                label=scheme.value)
        ax.axhline(rows[0].asymptote, ls="--", lw=0.8, color="gray")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("relay antennas N")
    ax.set_ylabel("sum rate [bit/s/Hz]")
    ax.legend()
    fig.savefig(sys.argv[1], dpi=120)
