"""Figures for search reports, written next to the JSON-lines output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(labelsize=8)


def plot_search_report(records: list[dict], outdir, stem: str = "search") -> list[Path]:
    """Render the per-instance search summary; returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if not records:
        return []
    labels = [str(r["instance"].get("seed", r["instance"].get("name", i))) for i, r in enumerate(records)]
    vc = [max((c["vc_monomials"] for c in r["choices"]), default=0) for r in records]
    checked = [sum(c["checked_targets"] for c in r["choices"]) for r in records]
    flagged = [r["refutation_candidate"] for r in records]
    paths = []

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    xs = range(len(records))
    ax1.bar(xs, vc, color=["tab:red" if f else "tab:blue" for f in flagged])
    ax1.set_ylabel("VC monomials", fontsize=9)
    ax2.bar(xs, checked, color="tab:gray")
    ax2.set_ylabel("targets checked", fontsize=9)
    ax2.set_xlabel("instance", fontsize=9)
    if len(labels) <= 40:
        ax2.set_xticks(list(xs))
        ax2.set_xticklabels(labels, rotation=90, fontsize=6)
    for ax in (ax1, ax2):
        _style(ax)
    kind = records[0].get("kind", "")
    n_flag = sum(flagged)
    ax1.set_title(f"{kind}: {len(records)} instances, {n_flag} without a nonzero coefficient", fontsize=10)
    fig.tight_layout()
    p = outdir / f"{stem}_instances.png"
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)

    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.hist([r["seconds"] for r in records], bins=min(30, max(5, len(records) // 5)), color="tab:blue")
    ax.set_xlabel("seconds per instance", fontsize=9)
    ax.set_ylabel("count", fontsize=9)
    _style(ax)
    fig.tight_layout()
    p = outdir / f"{stem}_timings.png"
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)
    return paths
