"""Concurrence-vs-aperture sweeps with deterministic CSV/JSON output.

Two sweep families are supported: ``oam`` (a maximally entangled
(2N+1)-dimensional OAM state through one centered aperture per arm,
evaluated in closed form) and ``path`` (an N x M slit setup under a
path-correlation model, evaluated through the truncated-mode Schmidt
route).  Named presets reproduce the standard figure configurations.

Output is byte-deterministic for a fixed configuration, independent of
the worker-pool size used to evaluate the sweep points.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import __version__
from .apertures import TWO_PI, oam_overlap_matrix
from .entanglement import (
    concurrence,
    oam_coefficient_matrix,
    purity_symmetric,
    schmidt_oracle,
)
from .paths import PathConfig, path_report, DegenerateStateError

__all__ = [
    "SweepConfig",
    "SweepRow",
    "SweepConfigError",
    "PRESETS",
    "alpha_grid",
    "run_oam_sweep",
    "run_path_sweep",
    "run_config",
    "run_preset",
    "emit",
    "read_rows",
]

ALPHA_FLOOR = 1e-4
CSV_HEADER = ["alpha_rad", "concurrence", "purity", "schmidt_rank_effective",
              "truncation_used", "converged", "notes"]


class SweepConfigError(ValueError):
    """Invalid or conflicting sweep configuration (CLI usage error)."""


@dataclass(frozen=True)
class SweepConfig:
    """Fully resolved description of one concurrence sweep."""

    mode: str = "oam"
    dimension: int | None = None
    n_signal: int | None = None
    n_idler: int | None = None
    l0: int = 0
    correlation_model: str | None = None
    alpha_min: float = 0.0
    alpha_max: float = TWO_PI
    steps: int = 200
    l_trunc: int | None = None
    output_path: str | None = None
    format: str = "csv"
    parallelism: int | None = None
    preset: str | None = None

    def validate(self) -> None:
        if self.mode not in ("oam", "path"):
            raise SweepConfigError(f"mode must be 'oam' or 'path', got {self.mode!r}")
        if not (0.0 <= self.alpha_min < self.alpha_max <= TWO_PI + 1e-12):
            raise SweepConfigError("alpha range must satisfy 0 <= alpha_min < alpha_max <= 2pi")
        if self.steps < 2:
            raise SweepConfigError("steps must be at least 2")
        if self.format not in ("csv", "json"):
            raise SweepConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        if self.parallelism is not None and self.parallelism < 1:
            raise SweepConfigError("parallelism must be a positive integer")
        if self.l_trunc is not None and self.l_trunc < 1:
            raise SweepConfigError("truncation override must be a positive integer")
        if self.mode == "oam":
            if self.dimension is None:
                raise SweepConfigError("mode 'oam' requires --dimension")
            if self.dimension < 3 or self.dimension % 2 == 0:
                raise SweepConfigError("OAM dimension must be odd and >= 3 (D = 2N+1)")
            if self.n_signal is not None or self.n_idler is not None:
                raise SweepConfigError("--slits conflicts with mode 'oam'")
            if self.correlation_model is not None:
                raise SweepConfigError("--correlation-model conflicts with mode 'oam'")
            if self.l0 != 0:
                raise SweepConfigError("--l0 conflicts with mode 'oam'")
        else:
            if self.n_signal is None or self.n_idler is None:
                raise SweepConfigError("mode 'path' requires --slits N M")
            if self.n_signal < 1 or self.n_idler < 1:
                raise SweepConfigError("slit counts must be positive")
            if self.dimension is not None:
                raise SweepConfigError("--dimension conflicts with mode 'path'")


@dataclass
class SweepRow:
    """One evaluated sweep point."""

    alpha: float
    concurrence: float
    purity: float
    schmidt_rank_effective: int
    truncation_used: int
    converged: bool
    notes: str = ""


def alpha_grid(config: SweepConfig) -> tuple[np.ndarray, str]:
    """Uniform inclusive grid; an exact-zero start is floored to 1e-4 rad."""
    grid = np.linspace(config.alpha_min, config.alpha_max, config.steps)
    note = ""
    if grid[0] == 0.0:
        grid = grid.copy()
        grid[0] = ALPHA_FLOOR
        note = f"alpha=0 floored to {ALPHA_FLOOR:g}"
    return grid, note


def _oam_point(args) -> SweepRow:
    dimension, alpha = args
    b = oam_overlap_matrix(dimension, alpha)
    p = purity_symmetric(b)
    c_uniform = np.full(dimension, 1.0 / math.sqrt(dimension))
    report = schmidt_oracle(oam_coefficient_matrix(c_uniform), b, b)
    return SweepRow(
        alpha=float(alpha),
        concurrence=concurrence(p),
        purity=min(p, 1.0),
        schmidt_rank_effective=report.schmidt_rank_effective,
        truncation_used=0,
        converged=True,
        notes="closed-form overlaps",
    )


def _path_point(args) -> SweepRow:
    cfg_dict, alpha = args
    cfg = PathConfig(**cfg_dict)
    cfg = replace(cfg, alpha=float(alpha))
    model_note = f"model={cfg.correlation_model}"
    try:
        report = path_report(cfg)
        rank = report.schmidt_rank_effective
        notes = [model_note, *report.notes]
    except DegenerateStateError as exc:
        return SweepRow(
            alpha=float(alpha),
            concurrence=float("nan"),
            purity=float("nan"),
            schmidt_rank_effective=0,
            truncation_used=cfg.resolved_l_trunc(),
            converged=True,
            notes=f"{model_note}; degenerate state: {exc}",
        )
    return SweepRow(
        alpha=float(alpha),
        concurrence=report.concurrence,
        purity=report.purity,
        schmidt_rank_effective=rank,
        truncation_used=report.truncation_used,
        converged=report.converged,
        notes="; ".join(notes),
    )


def _map_points(fn, jobs, parallelism: int | None):
    workers = parallelism if parallelism is not None else (os.cpu_count() or 1)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _apply_grid_note(rows: list[SweepRow], note: str) -> list[SweepRow]:
    if note and rows:
        first = rows[0]
        first.notes = f"{note}; {first.notes}" if first.notes else note
    return rows


def run_oam_sweep(config: SweepConfig) -> list[SweepRow]:
    """Closed-form concurrence sweep for the uniform OAM family."""
    config.validate()
    if config.mode != "oam":
        raise SweepConfigError("run_oam_sweep requires mode 'oam'")
    grid, note = alpha_grid(config)
    rows = _map_points(_oam_point, [(config.dimension, a) for a in grid], config.parallelism)
    return _apply_grid_note(rows, note)


def run_path_sweep(config: SweepConfig) -> list[SweepRow]:
    """Path-model concurrence sweep (truncated-mode Schmidt route)."""
    config.validate()
    if config.mode != "path":
        raise SweepConfigError("run_path_sweep requires mode 'path'")
    grid, note = alpha_grid(config)
    cfg_dict = dict(
        n_signal=config.n_signal,
        n_idler=config.n_idler,
        alpha=float(grid[0]),
        l0=config.l0,
        correlation_model=config.correlation_model,
        l_trunc=config.l_trunc,
    )
    rows = _map_points(_path_point, [(cfg_dict, a) for a in grid], config.parallelism)
    return _apply_grid_note(rows, note)


def run_config(config: SweepConfig) -> list[SweepRow]:
    if config.mode == "oam":
        return run_oam_sweep(config)
    return run_path_sweep(config)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

_SYMMETRIC_DIMS = [(2, 2), (3, 3), (4, 4), (5, 5), (6, 6)]
_ASYM_SMALL = [(2, 2), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
_ASYM_LARGE = [(5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)]


def _oam_curves(dims, alpha_max):
    return [SweepConfig(mode="oam", dimension=d, alpha_min=0.0, alpha_max=alpha_max)
            for d in dims]


def _path_curves(pairs, alpha_max):
    return [SweepConfig(mode="path", n_signal=n, n_idler=m, alpha_min=0.0, alpha_max=alpha_max)
            for n, m in pairs]


PRESETS: dict[str, list[SweepConfig]] = {
    "fig2": _oam_curves([3, 5, 7, 9, 11], TWO_PI),
    "fig3": _path_curves(_SYMMETRIC_DIMS, TWO_PI / 6),
    "fig4": _path_curves(_ASYM_SMALL, TWO_PI / 5),
    "fig5": _path_curves(_ASYM_LARGE, TWO_PI / 8),
    "figA1": _path_curves(_SYMMETRIC_DIMS, TWO_PI),
    "figA2": _path_curves(_ASYM_SMALL, TWO_PI),
    "figA3": _path_curves(_ASYM_LARGE, TWO_PI),
}


def _curve_tag(config: SweepConfig) -> str:
    if config.mode == "oam":
        return f"D={config.dimension}"
    return f"slits={config.n_signal}x{config.n_idler}"


def run_preset(name: str, overrides: SweepConfig | None = None) -> tuple[list[SweepRow], list[SweepConfig]]:
    """Run every curve of a named preset; rows carry a curve tag in notes."""
    if name not in PRESETS:
        raise SweepConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    curves = []
    for template in PRESETS[name]:
        cfg = template
        if overrides is not None:
            cfg = replace(
                cfg,
                steps=overrides.steps,
                l_trunc=overrides.l_trunc,
                parallelism=overrides.parallelism,
            )
        cfg.validate()
        curves.append(cfg)
    all_rows: list[SweepRow] = []
    for cfg in curves:
        tag = _curve_tag(cfg)
        for row in run_config(cfg):
            row.notes = f"{tag}; {row.notes}" if row.notes else tag
            all_rows.append(row)
    return all_rows, curves


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _meta_for(configs: list[SweepConfig], rows: list[SweepRow]) -> dict:
    finite = [r.concurrence for r in rows if math.isfinite(r.concurrence)]
    def physics(cfg: SweepConfig) -> dict:
        d = asdict(cfg)
        # execution-only knobs are excluded so identical physics gives
        # identical bytes regardless of how the sweep was scheduled
        d.pop("parallelism")
        d.pop("output_path")
        return d
    return {
        "artifact_version": __version__,
        "configs": [physics(cfg) for cfg in configs],
        "row_count": len(rows),
        "max_concurrence": max(finite) if finite else float("nan"),
    }


def render_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([
            _fmt(r.alpha), _fmt(r.concurrence), _fmt(r.purity),
            str(r.schmidt_rank_effective), str(r.truncation_used),
            "true" if r.converged else "false", r.notes,
        ])
    return buf.getvalue()


def render_json(rows: list[SweepRow], configs: list[SweepConfig]) -> str:
    doc = {
        "meta": _meta_for(configs, rows),
        "rows": [
            {
                "alpha_rad": r.alpha,
                "concurrence": r.concurrence,
                "purity": r.purity,
                "schmidt_rank_effective": r.schmidt_rank_effective,
                "truncation_used": r.truncation_used,
                "converged": r.converged,
                "notes": r.notes,
            }
            for r in rows
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit(rows: list[SweepRow], fmt: str, path: str, configs: list[SweepConfig] | None = None) -> None:
    """Write rows to ``path`` as CSV or JSON with deterministic bytes."""
    if not rows:
        raise ValueError("refusing to emit an empty sweep")
    if fmt == "csv":
        text = render_csv(rows)
    elif fmt == "json":
        text = render_json(rows, configs or [])
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_rows(path: str) -> list[SweepRow]:
    """Parse an emitted CSV or JSON file back into sweep rows."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        return [
            SweepRow(
                alpha=row["alpha_rad"],
                concurrence=row["concurrence"],
                purity=row["purity"],
                schmidt_rank_effective=row["schmidt_rank_effective"],
                truncation_used=row["truncation_used"],
                converged=row["converged"],
                notes=row["notes"],
            )
            for row in doc["rows"]
        ]
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER:
        raise ValueError("unrecognized CSV header")
    return [
        SweepRow(
            alpha=float(r[0]),
            concurrence=float(r[1]),
            purity=float(r[2]),
            schmidt_rank_effective=int(r[3]),
            truncation_used=int(r[4]),
            converged=r[5] == "true",
            notes=r[6],
        )
        for r in reader
    ]
