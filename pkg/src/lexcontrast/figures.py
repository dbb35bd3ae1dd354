"""Matplotlib renderings of a report document (as produced by ``report_dict``).

Figures are side products: they are written next to the text/JSON report
and never feed back into it.
"""
from __future__ import annotations

import logging
import re
import warnings
from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import FuncFormatter  # noqa: E402

log = logging.getLogger(__name__)

# first installed family wins; without a CJK font labels degrade to boxes
CJK_FONTS = ["Noto Sans CJK SC", "Noto Sans CJK TC", "Source Han Sans SC", "WenQuanYi Zen Hei",
             "SimHei", "Microsoft YaHei", "PingFang SC", "DejaVu Sans"]

STYLE = {
    "font.family": "sans-serif",
    "font.sans-serif": CJK_FONTS,
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "lexcontrast",
}

LEVEL_COLOURS = {"strong": "#2b6cb0", "weak": "#90cdf4", "absent": "#e2e8f0"}


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_-]+", "_", text).strip("_") or "x"


def _save(fig, path: Path) -> Path:
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="Glyph .* missing")
        warnings.filterwarnings("ignore", message="findfont")
        fig.savefig(path, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path


def plot_keyness(doc: Mapping, path: Path) -> Path:
    rows = doc["keyness"]
    fig, ax = plt.subplots(figsize=(4.5, 0.6 + 0.5 * len(rows)))
    a, b = (c["name"] for c in doc["corpora"])
    for i, k in enumerate(rows):
        signed = k["log_likelihood"] * (-1 if k["direction"] == "-" else 1)
        ax.barh(i, signed, color="#c05621" if signed >= 0 else "#2c7a7b")
        ax.text(signed, i, f" {k['log_likelihood']:.2f} {k['significance']}", va="center",
                ha="left" if signed >= 0 else "right", fontsize=8)
    ax.set_yticks(range(len(rows)), [k["word"] for k in rows])
    ax.axvline(0, color="black", lw=0.8)
    ax.set_xlabel(f"log-likelihood  (← over in {b} | over in {a} →)")
    ax.invert_yaxis()
    return _save(fig, path)


def plot_profiles(doc: Mapping, path: Path) -> Path:
    profiles = doc["event_profiles"]
    cats = [c["category"] for c in profiles[0]["categories"]] if profiles else []
    fig, axes = plt.subplots(1, max(len(profiles), 1), figsize=(2.6 * max(len(profiles), 1), 3), sharey=True,
                             squeeze=False)
    strong = doc["settings"]["strong_threshold"]
    weak = doc["settings"]["weak_threshold"]
    for ax, p in zip(axes[0], profiles):
        vals = [c["total_nf"] for c in p["categories"]]
        colours = [LEVEL_COLOURS[c["level"]] for c in p["categories"]]
        ax.bar(range(len(cats)), vals, color=colours)
        ax.axhline(strong, ls="--", lw=0.7, color="grey")
        ax.axhline(weak, ls=":", lw=0.7, color="grey")
        ax.set_xticks(range(len(cats)), [c.replace("_", "\n") for c in cats], fontsize=6, rotation=90)
        ax.set_title(f"{p['corpus']} {p['node']}\n{p['signature']}", fontsize=8)
    axes[0][0].set_ylabel("NF (per 10,000)")
    return _save(fig, path)


def plot_common(contrast: Mapping, path: Path, top: int = 20) -> Path:
    """Back-to-back NF bars for collocates shared by both nodes."""
    rows = contrast["common"][:top]
    fig, ax = plt.subplots(figsize=(5, 0.8 + 0.3 * max(len(rows), 1)))
    ys = range(len(rows))
    ax.barh(ys, [-r["nf_a"] for r in rows], color="#2c7a7b", label=contrast["node_a"])
    ax.barh(ys, [r["nf_b"] for r in rows], color="#c05621", label=contrast["node_b"])
    ax.set_yticks(list(ys), [r["collocate"] for r in rows])
    ax.axvline(0, color="black", lw=0.8)
    ax.invert_yaxis()
    ax.xaxis.set_major_formatter(FuncFormatter(lambda x, _: f"{abs(x):g}"))
    ax.set_xlabel("NF (per 10,000 node occurrences)")
    ax.set_title(f"{contrast['corpus']} common {contrast['relation']}")
    ax.legend(loc="lower right", fontsize=7, frameon=False)
    return _save(fig, path)


def render_figures(doc: Mapping, outdir: str | Path) -> list[Path]:
    """Write keyness, profile and common-pattern PNGs; return their paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    with plt.rc_context(STYLE):
        written.append(plot_keyness(doc, outdir / "keyness.png"))
        written.append(plot_profiles(doc, outdir / "event_profiles.png"))
        for c in doc["contrasts"]:
            name = f"common_{_slug(c['corpus'])}_{_slug(c['relation'])}.png"
            written.append(plot_common(c, outdir / name))
    log.info("wrote %d figures to %s", len(written), outdir)
    return written
