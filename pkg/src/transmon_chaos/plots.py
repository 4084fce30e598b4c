"""Minimal static SVG renderings of sweep outputs.

Heatmaps with threshold contours for phase diagrams, log-log group-magnitude
traces with the 100 kHz danger line for Walsh output, and residual/overlay
panels for data collapse.  No interactive UI by design.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

DANGER_ZONE_GHZ = 1e-4  # 100 kHz ZZ budget


def _axis_grid(result, names=("e_j", "coupling")):
    axes = {name: values for name, values in result.config.axes}
    return [np.asarray(axes[n], dtype=float) if n in axes else None for n in names]


def plot_phase_diagram(result, path, contour_level: float = 0.5):
    """Two heatmaps (normalized KL vs Poisson, IPR) over (E_J, T)."""
    e_j, t = _axis_grid(result)
    axis_names = [name for name, _ in result.config.axes]
    if e_j is None or t is None:
        raise ValueError(f"phase diagram needs 'e_j' and 'coupling' axes, got {axis_names}")
    i_ej = axis_names.index("e_j")
    i_t = axis_names.index("coupling")

    kl = np.full((len(e_j), len(t)), np.nan)
    iprs = np.full((len(e_j), len(t)), np.nan)
    for cell in result.cells:
        i, j = cell[i_ej], cell[i_t]
        report = result.kl_report(cell)
        if report is not None:
            kl[i, j] = report.d_vs_poisson_norm
        mean, _ = result.mean_se(cell, "ipr")
        if mean is not None:
            iprs[i, j] = mean

    fig, axs = plt.subplots(1, 2, figsize=(10, 4))
    for ax, grid, label, cmap in (
        (axs[0], kl, "normalized KL vs Poisson", "coolwarm"),
        (axs[1], iprs, "bundle-averaged IPR", "viridis"),
    ):
        mesh = ax.pcolormesh(t * 1e3, e_j, grid, shading="nearest", cmap=cmap,
                             vmin=0.0, vmax=1.0)
        if np.isfinite(grid).sum() >= 4 and len(e_j) > 1 and len(t) > 1:
            ax.contour(t * 1e3, e_j, grid, levels=[contour_level], colors="k",
                       linewidths=1.2)
        ax.set_xscale("log")
        ax.set_xlabel("coupling T (MHz)")
        ax.set_ylabel("E_J (GHz)")
        ax.set_title(label)
        fig.colorbar(mesh, ax=ax)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_walsh_groups(result, path):
    """Disorder-averaged |c_b| per locality group vs coupling, log-log."""
    t = result.config.axis_values("coupling")
    if t is None:
        raise ValueError("walsh plot needs a 'coupling' axis")
    axis_names = [name for name, _ in result.config.axes]
    i_t = axis_names.index("coupling")
    series: dict = {}
    for cell in sorted(result.cells):
        stats = result.walsh_group_stats(cell)
        if stats is None:
            continue
        for group, s in stats["groups"].items():
            if s["mean"] is None:
                continue
            series.setdefault(group, {})[cell[i_t]] = s["mean"]

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for group in sorted(series):
        points = series[group]
        js = sorted(points)
        ax.plot(t[js] * 1e3, [points[j] for j in js], marker="o", ms=3, label=group)
    ax.axhline(DANGER_ZONE_GHZ, color="k", ls="--", lw=1)
    ax.text(0.02, 0.97, "100 kHz", transform=ax.get_yaxis_transform(), va="bottom")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("coupling T (MHz)")
    ax.set_ylabel("disorder-averaged |c_b| (GHz)")
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_collapse(fit, traces, path):
    """Residual curve and the rescaled traces at the fitted exponent."""
    fig, axs = plt.subplots(1, 2, figsize=(10, 4))
    axs[0].plot(fit.mu_grid, fit.residuals)
    axs[0].axvline(fit.mu, color="r", ls=":", label=f"mu = {fit.mu:.3f}")
    axs[0].set_xlabel("exponent mu")
    axs[0].set_ylabel("cross-trace variance")
    axs[0].legend()
    for tr in traces:
        axs[1].plot(tr.t_values * tr.e_j**fit.mu, tr.y_values, marker=".",
                    label=f"E_J = {tr.e_j:g} GHz")
    axs[1].set_xscale("log")
    axs[1].set_xlabel("T * E_J^mu")
    axs[1].set_ylabel("observable")
    axs[1].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def plot_pattern_study(result, path, bundle_levels=None):
    """Multiplet IPR and KL traces vs the disorder spread, log-x."""
    sigma = result.config.axis_values("sigma_ej")
    if sigma is None:
        raise ValueError("pattern-study plot needs a 'sigma_ej' axis")
    ipr_mean, vswd, vsp = [], [], []
    for j in range(len(sigma)):
        mean, _ = result.mean_se((j,), "multiplet_ipr")
        ipr_mean.append(mean if mean is not None else np.nan)
        report = result.kl_report((j,), "multiplet_ratio")
        vswd.append(report.d_vs_wigner_dyson_norm if report else np.nan)
        vsp.append(report.d_vs_poisson_norm if report else np.nan)

    n_panels = 3 if bundle_levels is not None else 2
    fig, axs = plt.subplots(1, n_panels, figsize=(5 * n_panels, 4))
    axs[0].plot(sigma, ipr_mean, marker="o")
    axs[0].set_xscale("log")
    axs[0].set_xlabel("sigma_EJ (GHz)")
    axs[0].set_ylabel("multiplet IPR")
    axs[0].set_ylim(0, 1.05)
    axs[1].plot(sigma, vsp, marker="o", color="tab:blue", label="vs Poisson")
    axs[1].plot(sigma, vswd, marker="s", color="tab:red", label="vs Wigner-Dyson")
    axs[1].set_xscale("log")
    axs[1].set_xlabel("sigma_EJ (GHz)")
    axs[1].set_ylabel("multiplet normalized KL")
    axs[1].legend()
    if bundle_levels is not None:
        sig, levels = bundle_levels
        arr = np.asarray(levels)
        for col in range(arr.shape[1]):
            axs[2].plot(sig, arr[:, col], lw=0.4, color="tab:gray")
        axs[2].set_xscale("log")
        axs[2].set_xlabel("sigma_EJ (GHz)")
        axs[2].set_ylabel("bundle levels (GHz)")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
