"""Matplotlib rendering of the report figures, written next to the data files."""

from __future__ import annotations

import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .output import CONTOUR_LEVELS, transfer_index
from .sweep import SweepResult, Table3Result

__all__ = ["render_fig1", "render_grid", "render_table3", "render_trajectory"]


def _surfaces(result: SweepResult):
    om = np.array(result.config.omega0)
    de = np.array(result.config.delta0)
    target = transfer_index(result)
    shape = (om.size, de.size)
    p_num = np.array([r.p_numeric[target] for r in result.rows]).reshape(shape)
    p_ana = np.array([r.p_analytic[target] for r in result.rows]).reshape(shape)
    res = np.array([r.residual for r in result.rows]).reshape(shape)
    return om, de, p_num, p_ana, res


def render_fig1(result: SweepResult, path: str | os.PathLike) -> Path:
    om, _, p_num, p_ana, _ = _surfaces(result)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(om, p_num[:, 0], "-", lw=1.8, label="numeric")
    if "analytic_overlay" in result.config.outputs:
        ax.plot(om, p_ana[:, 0], ":", lw=2.2, label="stepwise model")
    ax.set_xlabel(r"$\Omega_0 T$")
    ax.set_ylabel("transfer probability")
    ax.set_ylim(0.0, 1.02)
    ax.set_title(rf"$\Delta_0 T = {result.config.delta0[0]:g}$, {result.config.shape}")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_grid(result: SweepResult, out_dir: str | os.PathLike, basename: str) -> list[Path]:
    om, de, p_num, p_ana, res = _surfaces(result)
    out = Path(out_dir)
    panels = [("numeric", p_num, "viridis", None)]
    if "analytic_overlay" in result.config.outputs:
        panels.append(("analytic", p_ana, "viridis", None))
    if "residual_map" in result.config.outputs:
        panels.append(("residual", np.abs(res), "magma", "|numeric - model|"))

    written = []
    for name, surface, cmap, label in panels:
        fig, ax = plt.subplots(figsize=(6.0, 4.8))
        mesh = ax.pcolormesh(om, de, surface.T, cmap=cmap, shading="nearest")
        if name != "residual":
            cs = ax.contour(om, de, surface.T, levels=CONTOUR_LEVELS, colors="white", linewidths=0.8)
            ax.clabel(cs, fontsize=7, fmt="%.1f")
        fig.colorbar(mesh, ax=ax, label=label or "transfer probability")
        ax.set_xlabel(r"$\Omega_0 T$")
        ax.set_ylabel(r"$\Delta_0 T$")
        ax.set_title(name)
        fig.tight_layout()
        target = out / f"{basename}_{name}.png"
        fig.savefig(target, dpi=150)
        plt.close(fig)
        written.append(target)
    return written


def render_table3(t3: Table3Result, path: str | os.PathLike) -> Path:
    numeric = np.array([r.p_numeric for r in t3.rows])
    model = np.array([r.p_analytic for r in t3.rows])
    fig, axes = plt.subplots(1, 2, figsize=(8.4, 3.8), sharey=True)
    for ax, table, title in ((axes[0], numeric, "numeric"), (axes[1], model, "stepwise model")):
        im = ax.imshow(table, vmin=0, vmax=1, cmap="viridis")
        for i in range(3):
            for j in range(3):
                ax.text(j, i, f"{table[i, j]:.3f}", ha="center", va="center",
                        color="white" if table[i, j] < 0.6 else "black", fontsize=9)
        ax.set_xticks(range(3), [f"to {k}" for k in (1, 2, 3)])
        ax.set_yticks(range(3), [f"from {k}" for k in (1, 2, 3)])
        ax.set_title(title)
    fig.colorbar(im, ax=axes, shrink=0.85)
    fig.suptitle(rf"$\Omega_0 T = {t3.omega0:g}$, $\Delta_0 T = {t3.delta0:g}$")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_trajectory(trajectory, path: str | os.PathLike) -> Path:
    ts = [p.t for p in trajectory]
    pops = np.array([p.populations for p in trajectory])
    fig, ax = plt.subplots(figsize=(6.8, 4.2))
    for k in range(pops.shape[1]):
        ax.plot(ts, pops[:, k], lw=1.5, label=f"state {k + 1}")
    ax.set_xlabel("t / T")
    ax.set_ylabel("population")
    ax.set_ylim(-0.02, 1.02)
    ax.axvline(0.0, color="grey", lw=0.8, ls="--")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)
