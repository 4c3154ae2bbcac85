"""Static SVG plots of observed competitive ratios against proven bounds."""

import os
import warnings

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def _series(reports, key):
    pts = [
        (r[key], r["ratio"], r.get("bound"))
        for r in reports
        if r.get(key) is not None and r.get("ratio") is not None
    ]
    pts.sort()
    return pts


def emit_plots(reports, out_dir):
    """Write ratio-vs-M and ratio-vs-n figures; returns the files written.

    ``reports`` are report dicts augmented with instance metadata keys
    "M" and "n" where applicable.  Empty series produce a warning and no file.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for key, label, fname in (
        ("M", "size range bound M", "ratio_vs_M.svg"),
        ("n", "universe size n", "ratio_vs_n.svg"),
    ):
        pts = _series(reports, key)
        if not pts:
            warnings.warn(f"no data for {fname}; skipped")
            continue
        fig, ax = plt.subplots(figsize=(6, 4))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ax.scatter(xs, ys, s=18, label="observed ratio")
        bounds = [(x, b) for x, _, b in pts if b is not None]
        if bounds:
            bx = sorted({x for x, _ in bounds})
            by = [max(b for x2, b in bounds if x2 == x) for x in bx]
            ax.plot(bx, by, "r--", label="proven bound")
        ax.set_xlabel(label)
        ax.set_ylabel("cost / optimum")
        ax.set_yscale("log")
        ax.legend()
        fig.tight_layout()
        path = os.path.join(out_dir, fname)
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
    return written
