"""Figure rendering for the command-line report path (file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["STYLE", "plot_scatter", "plot_bound", "plot_map", "plot_casimir"]

STYLE = {
    "figure.dpi": 150,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.2,
    "legend.frameon": False,
}


def plot_scatter(k, sigma, rho_r, rho_l, path, title=""):
    """Transmission/reflection probabilities against momentum."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ax.plot(k, np.abs(sigma) ** 2, label=r"$|\sigma|^2$")
        ax.plot(k, np.abs(rho_r) ** 2, label=r"$|\rho_R|^2$")
        ax.plot(k, np.abs(rho_l) ** 2, "--", label=r"$|\rho_L|^2$")
        ax.set_xlabel(r"$k$")
        ax.set_ylabel("probability")
        ax.set_ylim(-0.05, 1.05)
        if title:
            ax.set_title(title)
        ax.legend(loc="best")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_bound(z, profiles, positions, path, title=""):
    """Bound-state spinor profiles; vertical lines mark the delta positions.

    ``profiles`` is a list of (label, psi) pairs with psi of shape (2, n).
    """
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        for label, psi in profiles:
            (line,) = ax.plot(z, psi[0].real, label=f"{label} upper")
            ax.plot(z, psi[1].real, "--", color=line.get_color(), label=f"{label} lower")
        for z0 in positions:
            ax.axvline(z0, color="0.4", lw=0.8, ls=":")
        ax.set_xlabel(r"$z$")
        ax.set_ylabel("spinor components")
        if title:
            ax.set_title(title)
        ax.legend(loc="best", fontsize=7)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_map(region_map, path, title=""):
    """Bound-state-count map in the coupling plane with boundary overlays."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.6, 4.0))
        counts = np.ma.masked_less(region_map.counts, 0)
        mesh = ax.pcolormesh(
            region_map.axis1,
            region_map.axis2,
            counts.T,
            shading="nearest",
            cmap="viridis",
            vmin=0,
            vmax=2,
        )
        fig.colorbar(mesh, ax=ax, label="bound states", ticks=[0, 1, 2])
        if region_map.zero_mode is not None and region_map.zero_mode.any():
            ii, jj = np.nonzero(region_map.zero_mode)
            ax.plot(region_map.axis1[ii], region_map.axis2[jj], "r.", ms=2, label="zero mode")
            ax.legend(loc="upper right", fontsize=7)
        labels = ("$q_1$", "$q_2$") if region_map.plane == "electric" else (r"$\lambda_1$", r"$\lambda_2$")
        ax.set_xlabel(labels[0])
        ax.set_ylabel(labels[1])
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_casimir(a_values, energies, path, title=""):
    """Interaction energy against mirror half-separation (log scale)."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ax.semilogy(a_values, energies, "o-")
        ax.set_xlabel(r"$a$")
        ax.set_ylabel(r"$E_{\mathrm{int}}$")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
