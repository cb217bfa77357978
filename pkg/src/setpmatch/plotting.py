"""Figures for benchmark reports."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "setpmatch",
}


def plot_bench(size_rows, alphabet_rows, path):
    with plt.rc_context(RC):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(7.0, 2.8))
        if size_rows:
            xs = [r.N for r in size_rows]
            ys = [r.steps for r in size_rows]
            ax1.plot(xs, ys, "o-", color="C0", label="measured")
            ax1.plot(xs, [ys[0] * x / xs[0] for x in xs], "--", color="0.6", lw=1, label="linear")
            ax1.set_xlabel("text size N")
            ax1.set_ylabel("steps")
            ax1.legend(frameon=False)
        if alphabet_rows:
            xs = [r.sigma for r in alphabet_rows]
            ax2.plot(xs, [r.steps for r in alphabet_rows], "s-", color="C1")
            ax2.set_xscale("log", base=2)
            ax2.set_ylim(bottom=0)
            ax2.set_xlabel("alphabet size")
            ax2.set_ylabel("steps")
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path
