"""Render the standard figure kinds from the solver's CSV/JSON artifacts.

Each renderer reads only the public file contract: CSV tables with a single
header row and JSON summaries whose ``diagnostics`` block provides reference
values (gamma_A, gamma_B, lstar, ustar, ...).  Inputs are never modified and
a missing column fails fast with the column named.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class SchemaMismatch(Exception):
    """A required column is absent from an input table."""


class EmptyInput(Exception):
    """An input table has a header but no data rows."""


@dataclass(frozen=True)
class FigureJob:
    kind: str
    inputs: tuple[Path, ...]
    output: Path


def read_table(path: Path, required: list[str]) -> dict[str, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path} is empty")
        rows = list(reader)
    for col in required:
        if col not in header:
            raise SchemaMismatch(f"{path} is missing column {col!r}")
    if not rows:
        raise EmptyInput(f"{path} has no data rows")
    out: dict[str, np.ndarray] = {}
    for col in header:
        idx = header.index(col)
        values = [row[idx] for row in rows]
        try:
            out[col] = np.array([float(v) for v in values])
        except ValueError:
            out[col] = np.array(values)
    return out


def load_references(paths: list[Path]) -> dict:
    """Merge reference scalars from any JSON inputs (diagnostics blocks or flat keys)."""
    refs: dict = {}
    for path in paths:
        if path.suffix != ".json":
            continue
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        block = doc.get("diagnostics", doc)
        for key in ("gammaA", "gammaB", "lstar", "ustar", "vstar", "vanishing_bound", "mu1_lo", "mu1_hi"):
            value = block.get(key, doc.get(key))
            if value is not None:
                refs[key] = value
    return refs


def _split_inputs(job: FigureJob) -> tuple[list[Path], list[Path]]:
    paths = [Path(p) for p in job.inputs]
    return [p for p in paths if p.suffix == ".csv"], [p for p in paths if p.suffix == ".json"]


def _hline(ax, value, label, color):
    ax.axhline(value, linestyle="--", linewidth=1.0, color=color, label=label)


def _render_eigen(job: FigureJob) -> None:
    csvs, jsons = _split_inputs(job)
    if not csvs:
        raise SchemaMismatch("eigen figure needs the sweep CSV")
    table = read_table(csvs[0], ["l", "lambda_p"])
    refs = load_references(jsons)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(table["l"], table["lambda_p"], marker="o", markersize=3, label="lambda_p(l)")
    if "gammaA" in refs:
        _hline(ax, refs["gammaA"], "gamma_A", "tab:green")
    if "gammaB" in refs:
        _hline(ax, refs["gammaB"], "gamma_B", "tab:red")
    if refs.get("lstar") is not None:
        ax.axvline(refs["lstar"], linestyle=":", color="tab:purple", label="l*")
        ax.axhline(0.0, linewidth=0.6, color="0.6")
    ax.set_xlabel("domain length l")
    ax.set_ylabel("principal eigenvalue")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)


def _render_steady(job: FigureJob) -> None:
    csvs, jsons = _split_inputs(job)
    if not csvs:
        raise SchemaMismatch("steady figure needs the profile CSV")
    table = read_table(csvs[0], ["x", "u", "v"])
    refs = load_references(jsons)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(table["x"], table["u"], label="u")
    ax.plot(table["x"], table["v"], label="v")
    if refs.get("ustar") is not None:
        _hline(ax, refs["ustar"], "u*", "tab:green")
    if refs.get("vstar") is not None:
        _hline(ax, refs["vstar"], "v*", "tab:olive")
    ax.set_xlabel("x")
    ax.set_ylabel("steady density")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)


def _render_front(job: FigureJob) -> None:
    csvs, jsons = _split_inputs(job)
    if not csvs:
        raise SchemaMismatch("front figure needs the front CSV")
    table = read_table(csvs[0], ["t", "h"])
    refs = load_references(jsons)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(table["t"], table["h"], label="h(t)")
    if refs.get("lstar") is not None:
        _hline(ax, refs["lstar"], "l*", "tab:purple")
    if refs.get("vanishing_bound") is not None:
        _hline(ax, refs["vanishing_bound"], "vanishing bound", "tab:red")
    ax.set_xlabel("t")
    ax.set_ylabel("front position")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)


def _render_heatmap(job: FigureJob) -> None:
    csvs, _ = _split_inputs(job)
    if not csvs:
        raise SchemaMismatch("heatmap figure needs the snapshot CSV")
    table = read_table(csvs[0], ["t", "x", "u", "v"])
    times = np.unique(table["t"])
    xs = np.unique(table["x"])
    grids = {}
    for field in ("u", "v"):
        grid = np.full((times.size, xs.size), np.nan)
        ti = np.searchsorted(times, table["t"])
        xi = np.searchsorted(xs, table["x"])
        grid[ti, xi] = table[field]
        grids[field] = grid
    fig, axes = plt.subplots(1, 2, figsize=(11, 4.5), sharey=True)
    for ax, field in zip(axes, ("u", "v")):
        mesh = ax.pcolormesh(xs, times, grids[field], shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=field)
        ax.set_xlabel("x")
        ax.set_title(f"{field}(t, x)")
    axes[0].set_ylabel("t")
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)


def _render_critmu(job: FigureJob) -> None:
    csvs, jsons = _split_inputs(job)
    if not csvs:
        raise SchemaMismatch("critmu figure needs the probe trace CSV")
    table = read_table(csvs[0], ["probe", "mu1", "verdict"])
    refs = load_references(jsons)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    verdicts = table["verdict"]
    styles = {
        "Spreading": ("tab:green", "^"),
        "Vanishing": ("tab:red", "v"),
        "Undetermined": ("0.5", "o"),
    }
    for verdict, (color, marker) in styles.items():
        mask = verdicts == verdict
        if np.any(mask):
            ax.scatter(table["mu1"][mask], table["probe"][mask], color=color, marker=marker, label=verdict)
    if refs.get("mu1_lo") is not None and refs.get("mu1_hi") is not None:
        ax.axvspan(refs["mu1_lo"], refs["mu1_hi"], color="tab:purple", alpha=0.2, label="threshold bracket")
    ax.set_xscale("log")
    ax.set_xlabel("mu1")
    ax.set_ylabel("probe index")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(job.output, dpi=150)
    plt.close(fig)


_RENDERERS = {
    "eigen": _render_eigen,
    "steady": _render_steady,
    "front": _render_front,
    "heatmap": _render_heatmap,
    "critmu": _render_critmu,
}

FIGURE_KINDS = tuple(sorted(_RENDERERS))


def render(job: FigureJob) -> Path:
    """Render one figure job; returns the output path."""
    if job.kind not in _RENDERERS:
        raise ValueError(f"unknown figure kind {job.kind!r}; expected one of {FIGURE_KINDS}")
    for path in job.inputs:
        if not Path(path).exists():
            raise FileNotFoundError(f"input not found: {path}")
    Path(job.output).parent.mkdir(parents=True, exist_ok=True)
    _RENDERERS[job.kind](job)
    return Path(job.output)
