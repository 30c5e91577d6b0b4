"""Wiring between configurations and the integrator: initial-state
construction, sinks that persist series rows and snapshots, and blow-up
reporting suitable for process exit codes."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .config import RunConfig, build_initial_field, serialize_config
from .diagnostics import DiagnosticsRecord, collect_record, reconstruct_eta
from .entropy import ce_of_state
from .series import SeriesWriter
from .snapshots import save_snapshot
from .timestep import BlowUpReport, SimulationState, run


@dataclass
class RunOutput:
    config: RunConfig
    records: list[DiagnosticsRecord]
    snapshots: list[tuple[float, object]]  # (time, Field2D), only if kept in memory
    final: SimulationState
    failure: BlowUpReport | None
    out_dir: Path | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def run_directory(cfg: RunConfig) -> Path:
    return Path(cfg.output_dir) / cfg.run_label


def execute(cfg: RunConfig, write_files: bool = True, keep_snapshots: bool = False,
            emit_eta: bool = False, profiles=None, progress=None) -> RunOutput:
    """Run one configured simulation.

    ``write_files`` controls persistence (series.csv, config.txt, *.snap);
    ``keep_snapshots`` additionally retains snapshot fields in memory for
    detectors.  ``profiles`` optionally reuses solved radial profiles.
    """
    xi0 = build_initial_field(cfg, profiles)
    state = SimulationState(xi0)

    out_dir = None
    series_file = None
    writer = None
    if write_files:
        out_dir = run_directory(cfg)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "config.txt").write_text(serialize_config(cfg), encoding="utf-8")
        series_file = open(out_dir / "series.csv", "w", encoding="utf-8", newline="")
        writer = SeriesWriter(series_file)

    records: list[DiagnosticsRecord] = []
    snapshots: list[tuple[float, object]] = []

    def on_series(s: SimulationState) -> None:
        ce = ce_of_state(s.xi, cfg.ce)
        rec = collect_record(s, cfg.shear, ce)
        records.append(rec)
        if writer is not None:
            writer.append(rec)
        if progress is not None:
            progress(s)

    def on_snapshot(s: SimulationState) -> None:
        if keep_snapshots:
            snapshots.append((s.time, s.xi.copy()))
        if out_dir is not None:
            save_snapshot(out_dir / f"snap_{s.step:09d}.snap", s.xi, s.time, "xi")
            if emit_eta:
                eta = reconstruct_eta(s.xi, cfg.shear)
                save_snapshot(out_dir / f"eta_{s.step:09d}.snap", eta, s.time, "eta")

    try:
        result = run(state, cfg.integrator, cfg.shear, cfg.model,
                     on_series=on_series, on_snapshot=on_snapshot)
    finally:
        if series_file is not None:
            series_file.close()

    if result.failure is not None and out_dir is not None:
        (out_dir / "failure.txt").write_text(str(result.failure) + "\n", encoding="utf-8")

    return RunOutput(cfg, records, snapshots, result.state, result.failure, out_dir)
