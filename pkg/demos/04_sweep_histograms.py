"""Grid sweep over (j0, xi') and text histograms of R and of the percentage errors."""
from cudqsd import NoiseModel, SweepGrid, error_histograms, r_histogram, run_sweep
from cudqsd.sweep import summarize


def bar_chart(h, width=40):
    peak = max(h.counts.max(), 1)
    for lo, hi, n in zip(h.bin_edges[:-1], h.bin_edges[1:], h.counts):
        print(f"  [{lo:7.3f}, {hi:7.3f})  {'#' * round(width * n / peak)} {n}")


for d in (4, 9):
    rows = run_sweep(SweepGrid(d, noise=NoiseModel(0.03), shots_per_input=10**5, seed=0))
    s = summarize(rows)
    print(f"d={d}: {s['rows']} grid points, R_th max {s['r_th']['max']:.4f}, R_est max {s['r_est']['max']:.4f}")
    print(" R estimate histogram")
    bar_chart(r_histogram(rows, bins=10))
    print(" p_perp percentage error")
    bar_chart(error_histograms(rows, bins=10)["p_perp"])
    print()
