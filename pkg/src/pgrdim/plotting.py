"""Figures for the report subcommands.  Rendered with the Agg backend to files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_fp_table(rows: list[dict], path) -> Path:
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ns, [r["fp"] for r in rows], "o-", label="f_p(n)")
    ax.semilogy(ns, [r["eq2_max"] for r in rows], "x--", label="max over r of r p^floor((n-r)/2)")
    ax.set_xlabel("n")
    ax.set_ylabel("bound on rdim")
    ax.set_title(f"p = {rows[0]['p']}" if rows else "")
    ax.legend(frameon=False)
    return _finish(fig, path)


def plot_theorem_table(reports, path) -> Path:
    ns = [r.n for r in reports]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ns, [r.fp for r in reports], ":", color="grey", label="f_p(n)")
    ax.semilogy(ns, [r.claimed for r in reports], "s", mfc="none", ms=10, label="claimed max")
    computed = [(r.n, r.computed) for r in reports if r.computed]
    if computed:
        ax.semilogy(*zip(*computed), "o", label="computed rdim of witness")
    for r in reports:
        if not r.passed:
            ax.annotate("FAIL", (r.n, r.claimed), color="red", ha="center", va="bottom")
    ax.set_xlabel("n")
    ax.set_ylabel("representation dimension")
    ax.set_title(f"groups of order {reports[0].p}^n" if reports else "")
    ax.legend(frameon=False)
    return _finish(fig, path)


def plot_degree_census(census: dict[int, int], path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    degs = sorted(census)
    ax.bar([str(d) for d in degs], [census[d] for d in degs], color="0.4")
    ax.set_xlabel("degree")
    ax.set_ylabel("number of irreducibles")
    ax.set_title(title)
    return _finish(fig, path)
