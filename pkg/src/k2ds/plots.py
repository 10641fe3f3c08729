"""Figures for the ``table`` report: K2 ranks against n, one line per ring family
and prime."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "figure.figsize": (6.4, 4.2),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.bbox": "tight",
    "svg.hashsalt": "k2ds",
}

MARKERS = {"fpg": "o", "zpk": "s", "fpg-gtilde": "^", "zg-pkgamma": "D"}


def _series(rows):
    """{(family, p): {n: value}}.  zpk uses the largest k in the grid; zg-pkgamma
    uses k = n (k = 2 when n = 1), the one case where its rank differs from zpk."""
    best = {}
    for r in rows:
        q = r["quantity"]
        if not q.startswith("k2_rank:"):
            continue
        fam = q.split(":", 1)[1]
        k = r["k"] if r["k"] != "" else 0
        if fam == "zg-pkgamma" and r["n"] >= 2 and k != r["n"]:
            continue
        pts = best.setdefault((fam, r["p"]), {})
        old = pts.get(r["n"])
        if old is None or k > old[0]:
            pts[r["n"]] = (k, r["value"])
    return {key: {n: v for n, (_, v) in pts.items()} for key, pts in best.items()}


def rank_figure(rows, path):
    """Plot the k2_rank rows of a table (one panel per prime) and save to path.

    Zero ranks are left out of the log-scale axes.  Returns the number of
    plotted series.
    """
    series = _series(rows)
    primes = sorted({p for _, p in series}) or [None]
    colors = {fam: f"C{i}" for i, fam in enumerate(MARKERS)}
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, len(primes), sharey=True, squeeze=False,
                                 figsize=(3.2 * len(primes) + 0.8, 3.6))
        for ax, p in zip(axes[0], primes):
            for fam in MARKERS:
                pts = series.get((fam, p), {})
                ns = [n for n in sorted(pts) if pts[n] > 0]
                if not ns:
                    continue
                label = "zg-pkgamma (k=n)" if fam == "zg-pkgamma" else fam
                ax.plot(ns, [pts[n] for n in ns], marker=MARKERS[fam], color=colors[fam],
                        label=label)
            ax.set_yscale("log")
            ax.set_xlabel("n")
            ax.xaxis.get_major_locator().set_params(integer=True)
            if p is not None:
                ax.set_title(f"p = {p}")
        axes[0][0].set_ylabel("p-rank of K2")
        handles, labels = axes[0][0].get_legend_handles_labels()
        if handles:
            axes[0][-1].legend(handles, labels, fontsize=8)
        metadata = {"Date": None} if str(path).endswith(".svg") else None
        fig.savefig(path, metadata=metadata)
        plt.close(fig)
    return len(series)
