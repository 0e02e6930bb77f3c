"""Figure rendering for the CLI report paths.

Every plot is written straight to a file next to the delimited output; no
interactive backend is ever touched.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .evolve import QuenchSeries  # noqa: E402


def save_quench_figure(series_list: list[QuenchSeries], path: str) -> None:
    """Overlay |G(t)|^2 curves of one quench sweep."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for s in series_list:
        label = f"n_q={s.n_q} {s.method}"
        if s.dt is not None:
            label += f" dt={s.dt:g}"
        style = "-" if s.method == "exp" else "--"
        ax.plot(s.times, s.probabilities, style, lw=1.2, ms=2.5, label=label)
    ax.set_xlabel(r"$t\,g$")
    ax.set_ylabel(r"$|G(t)|^2$")
    ax.set_ylim(bottom=0.0)
    ax.legend(fontsize=8)
    ax.set_title(f"vacuum persistence, m/g={series_list[0].params.m:g}, "
                 f"gL={series_list[0].params.L:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_spectrum_figure(rows: list[tuple[float, int, float]], path: str) -> None:
    """Vector mass against m/g, one curve per n_q."""
    by_nq: dict[int, list[tuple[float, float]]] = {}
    for m_over_g, n_q, mv in rows:
        by_nq.setdefault(n_q, []).append((m_over_g, mv))
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for n_q in sorted(by_nq):
        pts = sorted(by_nq[n_q])
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", ms=3.5,
                lw=1.1, label=f"n_q={n_q}")
    ax.set_xlabel(r"$m/g$")
    ax.set_ylabel(r"$M_V/g$")
    ax.legend(fontsize=8)
    ax.set_title("vector-meson mass from sector ground-state gap")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
