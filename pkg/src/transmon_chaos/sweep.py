"""Disorder-ensemble sweeps over parameter grids.

A sweep executes one task per (grid point, realization) — or per (grid
row, realization) for Walsh diagnostics, which are tracked sequentially
along the coupling axis — and aggregates per grid point.  Every task's
randomness is derived from ``mix64(master_seed, axis indices...,
realization)``, so results are bit-reproducible across runs, machines,
resumptions, and execution orders.

Completed tasks stream to an append-only JSONL checkpoint (one record per
task, CRC-checked, config-hashed header), from which interrupted sweeps
resume exactly.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import zlib
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import multiprocessing as mp
import numpy as np

from . import __version__ as _version
from .basis import occupation_count_table
from .errors import CheckpointError, ConfigMismatchError, MergeOverlapError
from .pipeline import (KNOWN_DIAGNOSTICS, PreparedSystem, SystemSpec,
                       prepare_system, run_realization)
from .seeding import mix64
from .statistics import KLReport, kl_divergence, reference_distribution

CHECKPOINT_FORMAT = "transmon-chaos-checkpoint"
CHECKPOINT_VERSION = 1
WORKERS_ENV = "TRANSMON_CHAOS_WORKERS"
RAM_ENV = "TRANSMON_CHAOS_RAM_GB"
_FAILURE_FRACTION = 0.5


@dataclass(frozen=True)
class SweepConfig:
    """Grid axes, ensemble size, diagnostics and execution knobs.

    ``axes`` maps SystemSpec field names ('e_j', 'coupling', 'sigma_ej')
    to strictly monotone value lists.  The identity-defining part of the
    config (system, axes, realizations, diagnostics, seed, binning) is
    hashed for checkpoint compatibility; output paths and resource limits
    are execution details and excluded from the hash.
    """

    system: SystemSpec
    axes: tuple
    realizations: int
    diagnostics: tuple = ("kl", "ipr")
    master_seed: int = 0
    kl_bins: int = 20
    output: str | None = None
    checkpoint_interval: int = 1
    ram_gb: float = 8.0

    def __post_init__(self):
        if self.realizations < 1:
            raise ValueError("need at least one realization per grid point")
        if not self.axes:
            raise ValueError("need at least one grid axis")
        names = [name for name, _ in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate axis names in {names}")
        for name, values in self.axes:
            if name not in ("e_j", "coupling", "sigma_ej"):
                raise ValueError(f"axis {name!r} is not sweepable")
            arr = np.asarray(values, dtype=float)
            if len(arr) == 0 or (len(arr) > 1 and not np.all(np.diff(arr) > 0)):
                raise ValueError(f"axis {name!r} values must be strictly increasing")
        unknown = set(self.diagnostics) - set(KNOWN_DIAGNOSTICS)
        if unknown:
            raise ValueError(f"unknown diagnostics {sorted(unknown)}")

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        data = dict(data)
        system = SystemSpec(**data.pop("system"))
        axes = tuple((name, tuple(float(v) for v in values))
                     for name, values in data.pop("axes"))
        data["diagnostics"] = tuple(data.get("diagnostics", ("kl", "ipr")))
        return cls(system=system, axes=axes, **data)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["axes"] = [[name, list(values)] for name, values in self.axes]
        d["diagnostics"] = list(self.diagnostics)
        return d

    def identity_dict(self) -> dict:
        d = self.to_dict()
        for execution_only in ("output", "checkpoint_interval", "ram_gb"):
            d.pop(execution_only, None)
        return d

    def config_hash(self) -> str:
        blob = json.dumps(self.identity_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def axis_values(self, name: str):
        for axis_name, values in self.axes:
            if axis_name == name:
                return np.asarray(values, dtype=float)
        return None

    def grid_shape(self) -> tuple:
        return tuple(len(values) for _, values in self.axes)

    def coupling_axis(self) -> int | None:
        for pos, (name, _) in enumerate(self.axes):
            if name == "coupling":
                return pos
        return None


# ---------------------------------------------------------------------------
# task enumeration

def enumerate_tasks(config: SweepConfig):
    """Ordered task keys.  Point tasks: ('point', *cell, r); Walsh tasks
    ('walsh', *row, r) span the coupling axis inside one task."""
    shape = config.grid_shape()
    tasks = []
    point_diags = tuple(d for d in config.diagnostics if d != "walsh")
    if point_diags:
        for cell in np.ndindex(*shape):
            for r in range(config.realizations):
                tasks.append(("point", *cell, r))
    if "walsh" in config.diagnostics:
        t_axis = config.coupling_axis()
        row_shape = tuple(n for pos, n in enumerate(shape) if pos != t_axis)
        for row in np.ndindex(*row_shape) if row_shape else [()]:
            for r in range(config.realizations):
                tasks.append(("walsh", *row, r))
    return tasks


def task_seed(config: SweepConfig, key) -> int:
    return mix64(config.master_seed, *key[1:])


def _spec_for_cell(config: SweepConfig, cell) -> SystemSpec:
    replacements = {}
    for (name, values), idx in zip(config.axes, cell):
        replacements[name] = float(values[idx])
    return dataclasses.replace(config.system, **replacements)


def _run_task(config: SweepConfig, prepared_cache: dict, key):
    kind = key[0]
    r = key[-1]
    seed = task_seed(config, key)
    if kind == "point":
        cell = key[1:-1]
        spec = _spec_for_cell(config, cell)
        prepared = prepared_cache["point"]
        prepared = PreparedSystem(spec, prepared.lattice, prepared.basis,
                                  prepared.structure, prepared.walsh_basis,
                                  prepared.walsh_structure, prepared.multiplet_indices)
        diags = tuple(d for d in config.diagnostics if d != "walsh")
        return run_realization(prepared, seed, diags)
    if kind == "walsh":
        row = key[1:-1]
        t_axis = config.coupling_axis()
        if t_axis is None:
            targets = [config.system.coupling]
            cell = row
        else:
            targets = list(config.axis_values("coupling"))
            cell = row
        replacements = {}
        non_t_axes = [a for pos, a in enumerate(config.axes) if pos != t_axis]
        for (name, values), idx in zip(non_t_axes, cell):
            replacements[name] = float(values[idx])
        spec = dataclasses.replace(config.system, **replacements)
        base = prepared_cache["walsh"]
        prepared = PreparedSystem(spec, base.lattice, base.basis, base.structure,
                                  base.walsh_basis, base.walsh_structure,
                                  base.multiplet_indices)
        return run_realization(prepared, seed, ("walsh",), walsh_targets=targets)
    raise ValueError(f"unknown task kind {kind!r}")


def _prepare_cache(config: SweepConfig) -> dict:
    cache = {}
    point_diags = tuple(d for d in config.diagnostics if d != "walsh")
    if point_diags:
        cache["point"] = prepare_system(config.system, point_diags)
    if "walsh" in config.diagnostics:
        cache["walsh"] = prepare_system(config.system, ("walsh",))
    return cache


# worker-process globals (set once per process by the pool initializer)
_WORKER_STATE: dict = {}


def _worker_init(config_dict):
    config = SweepConfig.from_dict(config_dict)
    _WORKER_STATE["config"] = config
    _WORKER_STATE["cache"] = _prepare_cache(config)


def _worker_run(key):
    config = _WORKER_STATE["config"]
    cache = _WORKER_STATE["cache"]
    try:
        return tuple(key), _run_task(config, cache, tuple(key)), None
    except Exception as exc:  # noqa: BLE001 - failures are recorded, not fatal
        return tuple(key), None, f"{type(exc).__name__}: {exc}"


# ---------------------------------------------------------------------------
# checkpointing

def _key_str(key) -> str:
    return ",".join(map(str, key))


def _canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _record_crc(key, payload) -> int:
    return zlib.crc32(_canonical([list(key), payload]).encode())


class CheckpointWriter:
    """Append-only JSONL stream: header line, then one record per task."""

    def __init__(self, path, config: SweepConfig, append: bool):
        self.path = Path(path)
        self.interval = max(1, config.checkpoint_interval)
        self._pending = 0
        mode = "a" if append else "w"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, mode)
        if not append:
            header = {
                "format": CHECKPOINT_FORMAT,
                "version": CHECKPOINT_VERSION,
                "config_hash": config.config_hash(),
                "config": config.to_dict(),
                "created": datetime.now(timezone.utc).isoformat(),
            }
            self._fh.write(json.dumps(header) + "\n")
            self._fh.flush()

    def write(self, key, payload):
        record = {"key": list(key), "payload": payload,
                  "crc": _record_crc(key, payload)}
        self._fh.write(json.dumps(record) + "\n")
        self._pending += 1
        if self._pending >= self.interval:
            self._fh.flush()
            self._pending = 0

    def close(self):
        self._fh.flush()
        self._fh.close()


def read_checkpoint(path):
    """Parse a checkpoint: (header, {task_key: payload}).

    A record whose checksum disagrees with its contents raises
    :class:`CheckpointError`.  A trailing line that does not parse as JSON
    is treated as a torn write from an interruption and dropped.
    """
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"no checkpoint at {path}")
    records = {}
    header = None
    with open(path) as fh:
        lines = fh.readlines()
    for lineno, line in enumerate(lines):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            if lineno == len(lines) - 1:
                break  # torn final write; the task will simply rerun
            raise CheckpointError(f"{path}:{lineno + 1}: unparseable record")
        if lineno == 0:
            if obj.get("format") != CHECKPOINT_FORMAT:
                raise CheckpointError(f"{path} is not a sweep checkpoint")
            header = obj
            continue
        key = tuple(obj["key"])
        if _record_crc(key, obj["payload"]) != obj["crc"]:
            raise CheckpointError(f"{path}:{lineno + 1}: checksum mismatch for task {key}")
        records[key] = obj["payload"]
    if header is None:
        raise CheckpointError(f"{path} has no header")
    return header, records


# ---------------------------------------------------------------------------
# aggregation

def _new_scalar():
    return {"sum": 0.0, "sumsq": 0.0, "n": 0}


def _add_scalar(agg, value):
    agg["sum"] += float(value)
    agg["sumsq"] += float(value) ** 2
    agg["n"] += 1


def _scalar_stats(agg):
    n = agg["n"]
    if n == 0:
        return None, None
    mean = agg["sum"] / n
    if n == 1:
        return mean, None
    var = max(agg["sumsq"] / n - mean**2, 0.0) * n / (n - 1)
    return mean, float(np.sqrt(var / n))


@dataclass
class SweepResult:
    """Aggregated sweep output with provenance.

    ``cells`` maps grid-cell index tuples to mergeable raw aggregates
    (histogram counts, running sums); derived quantities (normalized KL,
    means, standard errors) are computed by :meth:`rows` /
    :meth:`kl_report`.  Merging two results with disjoint realization sets
    is exact because all aggregates are sums.
    """

    config: SweepConfig
    cells: dict = field(default_factory=dict)
    completed: set = field(default_factory=set)
    failures: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    # -- construction ------------------------------------------------------
    @classmethod
    def from_records(cls, config: SweepConfig, records: dict, failures: dict | None = None):
        result = cls(config=config, failures=dict(failures or {}))
        result.provenance = {
            "tool_version": _version,
            "config_hash": config.config_hash(),
            "created": datetime.now(timezone.utc).isoformat(),
        }
        t_axis = config.coupling_axis()
        for key in sorted(records):
            payload = records[key]
            result.completed.add(tuple(key))
            kind, indices, r = key[0], key[1:-1], key[-1]
            if kind == "point":
                result._absorb_point(tuple(indices), payload)
            elif kind == "walsh":
                result._absorb_walsh(tuple(indices), payload, t_axis)
        return result

    def _cell(self, cell):
        return self.cells.setdefault(tuple(int(i) for i in cell), {})

    def _absorb_point(self, cell, payload):
        agg = self._cell(cell)
        agg["n_realizations"] = agg.get("n_realizations", 0) + 1
        agg["bundle_overlap"] = agg.get("bundle_overlap", 0) + int(payload.get("bundle_overlap", False))
        if "ratios" in payload:
            self._absorb_ratios(agg, "ratio", payload["ratios"],
                                payload.get("degenerate_collapsed", 0))
        if "ipr" in payload:
            agg.setdefault("ipr", _new_scalar())
            _add_scalar(agg["ipr"], payload["ipr"])
        if "multiplet_ratios" in payload:
            self._absorb_ratios(agg, "multiplet_ratio", payload["multiplet_ratios"],
                                payload.get("multiplet_degenerate_collapsed", 0))
        if "multiplet_ipr" in payload:
            agg.setdefault("multiplet_ipr", _new_scalar())
            _add_scalar(agg["multiplet_ipr"], payload["multiplet_ipr"])

    def _absorb_ratios(self, agg, prefix, ratios, collapsed):
        bins = self.config.kl_bins
        hist, _ = np.histogram(np.clip(np.asarray(ratios, dtype=float), 0.0, 1.0),
                               bins=bins, range=(0.0, 1.0))
        key = f"{prefix}_hist"
        agg[key] = (np.asarray(agg[key], dtype=np.int64) + hist).tolist() \
            if key in agg else hist.tolist()
        agg[f"{prefix}_n"] = agg.get(f"{prefix}_n", 0) + len(ratios)
        agg[f"{prefix}_sum"] = agg.get(f"{prefix}_sum", 0.0) + float(np.sum(ratios))
        agg[f"{prefix}_collapsed"] = agg.get(f"{prefix}_collapsed", 0) + int(collapsed)

    def _absorb_walsh(self, row, payload, t_axis):
        for j, entry in enumerate(payload["walsh"]):
            if t_axis is None:
                cell = row
            else:
                cell = list(row)
                cell.insert(t_axis, j)
            agg = self._cell(cell)
            walsh = agg.setdefault("walsh", {"groups": {}, "included": 0, "excluded": 0})
            if entry["n_ambiguous"] > 0 or entry["worst_quality"] < 0.5:
                walsh["excluded"] += 1
                continue
            walsh["included"] += 1
            for group, value in entry["groups"].items():
                walsh["groups"].setdefault(group, _new_scalar())
                _add_scalar(walsh["groups"][group], value)

    # -- derived quantities --------------------------------------------------
    def cell_axis_values(self, cell):
        return {name: float(values[idx])
                for (name, values), idx in zip(self.config.axes, cell)}

    def kl_report(self, cell, prefix="ratio") -> KLReport | None:
        agg = self.cells.get(tuple(cell), {})
        hist = agg.get(f"{prefix}_hist")
        if hist is None:
            return None
        counts = np.asarray(hist, dtype=float)
        total = counts.sum()
        if total < 10 * self.config.kl_bins:
            return None
        p = counts / total
        bins = self.config.kl_bins
        q_poisson = reference_distribution("Poisson", bins)
        q_goe = reference_distribution("GOE", bins)
        return KLReport(
            d_vs_poisson_norm=kl_divergence(p, q_poisson) / kl_divergence(q_goe, q_poisson),
            d_vs_wigner_dyson_norm=kl_divergence(p, q_goe) / kl_divergence(q_poisson, q_goe),
            histogram=p, bin_count=bins, sample_count=int(total),
        )

    def mean_se(self, cell, name):
        agg = self.cells.get(tuple(cell), {})
        if name not in agg:
            return None, None
        return _scalar_stats(agg[name])

    def walsh_group_stats(self, cell):
        agg = self.cells.get(tuple(cell), {})
        walsh = agg.get("walsh")
        if walsh is None:
            return None
        stats = {}
        for group, s in sorted(walsh["groups"].items()):
            mean, se = _scalar_stats(s)
            stats[group] = {"mean": mean, "stderr": se, "n": s["n"]}
        return {"groups": stats, "included": walsh["included"],
                "excluded": walsh["excluded"]}

    def rows(self):
        """Flat per-(cell, diagnostic) rows for CSV export."""
        out = []
        for cell in sorted(self.cells):
            axes = self.cell_axis_values(cell)
            agg = self.cells[cell]
            base = {"cell": cell, **axes}
            for prefix, diag in (("ratio", "kl"), ("multiplet_ratio", "multiplet_kl")):
                report = self.kl_report(cell, prefix)
                if report is not None:
                    out.append({**base, "diagnostic": diag,
                                "d_vs_poisson_norm": report.d_vs_poisson_norm,
                                "d_vs_wigner_dyson_norm": report.d_vs_wigner_dyson_norm,
                                "samples": report.sample_count,
                                "mean_ratio": agg[f"{prefix}_sum"] / agg[f"{prefix}_n"],
                                "collapsed_levels": agg[f"{prefix}_collapsed"]})
            for name, diag in (("ipr", "ipr"), ("multiplet_ipr", "multiplet_ipr")):
                mean, se = self.mean_se(cell, name)
                if mean is not None:
                    out.append({**base, "diagnostic": diag, "mean": mean,
                                "stderr": se, "n": agg[name]["n"]})
            walsh = self.walsh_group_stats(cell)
            if walsh is not None:
                for group, stats in walsh["groups"].items():
                    out.append({**base, "diagnostic": "walsh", "group": group,
                                **stats, "included": walsh["included"],
                                "excluded": walsh["excluded"]})
        return out

    def flag_counters(self):
        overlap = sum(agg.get("bundle_overlap", 0) for agg in self.cells.values())
        excluded = sum(agg.get("walsh", {}).get("excluded", 0) for agg in self.cells.values())
        return {"bundle_overlap": overlap, "walsh_excluded": excluded,
                "task_failures": len(self.failures)}

    # -- persistence ---------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "provenance": self.provenance,
            "flags": self.flag_counters(),
            "cells": {",".join(map(str, cell)): agg for cell, agg in self.cells.items()},
            "completed": sorted([list(k) for k in self.completed]),
            "failures": dict(self.failures),
        }

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    @classmethod
    def from_dict(cls, data: dict) -> "SweepResult":
        config = SweepConfig.from_dict(data["config"])
        cells = {tuple(int(x) for x in key.split(",")): agg
                 for key, agg in data["cells"].items()}
        completed = {tuple(k) for k in data.get("completed", [])}
        failures = dict(data.get("failures", {}))
        return cls(config=config, cells=cells, completed=completed,
                   failures=failures, provenance=data.get("provenance", {}))

    @classmethod
    def load(cls, path) -> "SweepResult":
        return cls.from_dict(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# merge

def _merge_agg(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, value in b.items():
        if key not in out:
            out[key] = value
        elif isinstance(value, dict):
            out[key] = _merge_agg(out[key], value)
        elif isinstance(value, list):
            out[key] = (np.asarray(out[key], dtype=np.int64) + np.asarray(value, dtype=np.int64)).tolist()
        else:
            out[key] = out[key] + value
    return out


def merge_results(a: SweepResult, b: SweepResult) -> SweepResult:
    """Combine two partial results with disjoint realization index sets."""
    if a.config.config_hash() != b.config.config_hash():
        raise ConfigMismatchError("cannot merge results from different configurations")
    overlap = a.completed & b.completed
    if overlap:
        raise MergeOverlapError(f"results share {len(overlap)} tasks, e.g. {sorted(overlap)[0]}")
    merged = SweepResult(config=a.config)
    merged.completed = a.completed | b.completed
    merged.failures = {**a.failures, **b.failures}
    merged.provenance = {**b.provenance, **a.provenance, "merged": True}
    cells = dict(a.cells)
    for cell, agg in b.cells.items():
        cells[cell] = _merge_agg(cells[cell], agg) if cell in cells else agg
    merged.cells = {cell: cells[cell] for cell in sorted(cells)}
    return merged


# ---------------------------------------------------------------------------
# execution

def _worker_count(config: SweepConfig, n_tasks: int, workers: int | None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    ram_gb = float(os.environ.get(RAM_ENV, config.ram_gb))
    spec = config.system
    window = spec.window()
    # rough per-task footprint: dense H plus eigenvector workspace
    d = spec.resolved_levels()
    ways = occupation_count_table(spec.n_sites, d)
    if window is None:
        dim = int(ways[spec.n_sites].sum())
    else:
        dim = int(ways[spec.n_sites, window[0]: window[1] + 1].sum())
    if "walsh" in config.diagnostics:
        dim = max(dim, spec.walsh_levels ** spec.n_sites)
    per_task = 3.0 * dim * dim * 8.0
    budget = 0.75 * ram_gb * 1e9
    allowed = max(1, int(budget // max(per_task, 1.0)))
    return max(1, min(workers, allowed, n_tasks))


def run_sweep(config: SweepConfig, workers: int | None = None, resume: bool = False,
              checkpoint_path=None, progress=None) -> SweepResult:
    """Execute all outstanding tasks and aggregate.

    ``resume=True`` continues from an existing checkpoint (hash-checked).
    Individual task failures are recorded rather than fatal; the sweep
    raises only if more than half the realizations at some grid point
    failed.  The aggregate is independent of execution order.
    """
    tasks = enumerate_tasks(config)
    records: dict = {}
    failures: dict = {}

    path = checkpoint_path
    if path is None and config.output is not None:
        path = str(config.output) + ".checkpoint.jsonl"

    append = False
    if path is not None and Path(path).exists():
        if not resume:
            raise CheckpointError(
                f"checkpoint {path} already exists; pass resume=True to continue it"
            )
        header, records = read_checkpoint(path)
        if header["config_hash"] != config.config_hash():
            raise ConfigMismatchError(
                "checkpoint was written for a different configuration"
            )
        append = True

    todo = [key for key in tasks if key not in records]
    writer = CheckpointWriter(path, config, append) if path is not None else None

    try:
        if todo:
            n_workers = _worker_count(config, len(todo), workers)
            if n_workers <= 1:
                cache = _prepare_cache(config)
                for key in todo:
                    try:
                        payload = _run_task(config, cache, key)
                        records[key] = payload
                        if writer:
                            writer.write(key, payload)
                    except Exception as exc:  # noqa: BLE001
                        failures[_key_str(key)] = f"{type(exc).__name__}: {exc}"
                    if progress:
                        progress(key)
            else:
                prev_threads = os.environ.get("OMP_NUM_THREADS")
                os.environ["OMP_NUM_THREADS"] = "1"
                try:
                    ctx = mp.get_context("spawn")
                    with ProcessPoolExecutor(max_workers=n_workers, mp_context=ctx,
                                             initializer=_worker_init,
                                             initargs=(config.to_dict(),)) as pool:
                        pending = {pool.submit(_worker_run, key) for key in todo}
                        while pending:
                            done, pending = wait(pending, return_when=FIRST_COMPLETED)
                            for fut in done:
                                key, payload, error = fut.result()
                                if error is None:
                                    records[key] = payload
                                    if writer:
                                        writer.write(key, payload)
                                else:
                                    failures[_key_str(key)] = error
                                if progress:
                                    progress(key)
                finally:
                    if prev_threads is None:
                        os.environ.pop("OMP_NUM_THREADS", None)
                    else:
                        os.environ["OMP_NUM_THREADS"] = prev_threads
    finally:
        if writer:
            writer.close()

    _check_failure_policy(config, failures)
    result = SweepResult.from_records(config, records, failures)
    if config.output is not None:
        result.save(str(config.output) + ".result.json")
    return result


def _check_failure_policy(config: SweepConfig, failures: dict):
    if not failures:
        return
    per_cell: dict = {}
    for key in failures:
        cell = key.rsplit(",", 1)[0]
        per_cell[cell] = per_cell.get(cell, 0) + 1
    worst_key = max(per_cell, key=per_cell.get)
    worst = per_cell[worst_key]
    if worst > _FAILURE_FRACTION * config.realizations:
        examples = [failures[k] for k in list(failures)[:3]]
        raise RuntimeError(
            f"{worst}/{config.realizations} realizations failed at grid point "
            f"{worst_key}: {examples}"
        )


def resume_sweep(checkpoint_path, workers: int | None = None) -> SweepResult:
    """Complete an interrupted sweep from its checkpoint file.

    The configuration is recovered from the checkpoint header; finished
    tasks are kept, missing ones are executed, and the final result equals
    an uninterrupted run.
    """
    header, _ = read_checkpoint(checkpoint_path)
    config = SweepConfig.from_dict(header["config"])
    return run_sweep(config, workers=workers, resume=True, checkpoint_path=checkpoint_path)
