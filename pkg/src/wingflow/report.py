"""Report rendering: matplotlib figures written next to delimited output.

Every CLI path that produces metrics also drops a CSV and a couple of PNGs
into the chosen output directory, so runs can be inspected without a
notebook.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def _ensure(outdir: str | Path) -> Path:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def write_csv(path: Path, rows: list[dict]) -> None:
    if not rows:
        return
    keys = list(rows[0].keys())
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=keys)
        writer.writeheader()
        writer.writerows(rows)


def save_training_report(outdir: str | Path, history: list[dict]) -> None:
    out = _ensure(outdir)
    rows = [h for h in history if "loss" in h]
    write_csv(out / "history.csv", rows)
    if not rows:
        return
    steps = [h["step"] for h in rows]
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.2))
    axes[0].semilogy(steps, [h["loss"] for h in rows], label="total")
    axes[0].semilogy(steps, [h["loss_surf"] for h in rows], "--", label="surface")
    if any(h.get("loss_coef") for h in rows):
        coef = [(h["step"], h["loss_coef"]) for h in rows if h.get("loss_coef")]
        axes[0].semilogy(*zip(*coef), ":", label="coefficient")
    axes[0].set_xlabel("step")
    axes[0].set_ylabel("loss")
    axes[0].legend(fontsize=8)
    axes[1].plot(steps, [h["lr"] for h in rows])
    axes[1].set_xlabel("step")
    axes[1].set_ylabel("learning rate")
    val = [(h["step"], h["val_sfe"]) for h in rows if h.get("val_sfe") is not None]
    if val:
        ax2 = axes[1].twinx()
        ax2.plot(*zip(*val), "r.-", lw=1)
        ax2.set_ylabel("val SFE (%)", color="r")
    fig.tight_layout()
    fig.savefig(out / "training.png", dpi=130)
    plt.close(fig)


def save_eval_report(
    outdir: str | Path,
    summary: dict,
    per_fold: list[dict],
    example: dict | None = None,
) -> None:
    """``summary`` maps metric -> value; ``example`` may hold cp arrays
    (truth, pred, [H, W]) of one sample for a contour comparison."""
    out = _ensure(outdir)
    write_csv(out / "metrics.csv", [dict(fold=i, **m) for i, m in enumerate(per_fold)])

    field_keys = [k for k in ("d_cp", "d_cf_tau", "d_cf_z", "sfe") if k in summary]
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.2))
    axes[0].bar(field_keys, [summary[k] for k in field_keys], color="#4878d0")
    axes[0].set_ylabel("error (%)")
    coef_keys = [k for k in ("d_cl", "d_cd", "d_cmz") if k in summary]
    axes[1].bar(coef_keys, [summary[k] for k in coef_keys], color="#ee854a")
    axes[1].set_ylabel("MAE")
    for ax in axes:
        ax.tick_params(axis="x", rotation=20)
    fig.tight_layout()
    fig.savefig(out / "metrics.png", dpi=130)
    plt.close(fig)

    if example is not None:
        truth, pred = example["truth"], example["pred"]
        err = np.abs(pred - truth)
        fig, axes = plt.subplots(1, 3, figsize=(12, 3.4))
        vmin, vmax = truth.min(), truth.max()
        for ax, (title, data, kw) in zip(
            axes,
            [
                ("truth Cp", truth, dict(vmin=vmin, vmax=vmax, cmap="RdBu_r")),
                ("predicted Cp", pred, dict(vmin=vmin, vmax=vmax, cmap="RdBu_r")),
                ("|error|", err, dict(cmap="magma")),
            ],
        ):
            im = ax.imshow(data, aspect="auto", origin="lower", **kw)
            ax.set_title(title, fontsize=9)
            ax.set_xlabel("span cell")
            ax.set_ylabel("chord cell")
            fig.colorbar(im, ax=ax, shrink=0.85)
        fig.tight_layout()
        fig.savefig(out / "cp_comparison.png", dpi=130)
        plt.close(fig)


def save_pca_report(outdir: str | Path, explained: np.ndarray, mode_counts: dict) -> None:
    out = _ensure(outdir)
    rows = [
        {"mode": i + 1, "cumulative_explained": float(v)} for i, v in enumerate(explained)
    ]
    write_csv(out / "pca_spectrum.csv", rows)
    if len(explained) == 0:
        return
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(np.arange(1, len(explained) + 1), explained, ".-")
    for t, count in mode_counts.items():
        ax.axhline(float(t), color="gray", lw=0.6, ls=":")
        if count:
            ax.axvline(count, color="r", lw=0.6, ls="--")
            ax.annotate(f"{count} modes @ {t}", (count, float(t)), fontsize=7,
                        textcoords="offset points", xytext=(4, -10))
    ax.set_xlabel("mode")
    ax.set_ylabel("cumulative explained variance")
    ax.set_xscale("log")
    fig.tight_layout()
    fig.savefig(out / "pca_spectrum.png", dpi=130)
    plt.close(fig)
