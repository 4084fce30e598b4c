"""File formats: spectrum CSV, Walsh CSV, sweep CSV/JSON, run manifests.

Schemas are versioned through a ``schema`` metadata key and validated by
round-trip tests.  Spectrum files carry ``# key=value`` metadata lines
followed by one eigenvalue (GHz) per line.
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__ as _version

SPECTRUM_SCHEMA = "transmon-chaos/spectrum-v1"
WALSH_SCHEMA = "transmon-chaos/walsh-v1"
SWEEP_SCHEMA = "transmon-chaos/sweep-rows-v1"


def write_spectrum_csv(path, eigenvalues, metadata: dict | None = None):
    path = Path(path)
    lines = [f"# schema={SPECTRUM_SCHEMA}", f"# tool_version={_version}"]
    for key, value in sorted((metadata or {}).items()):
        if isinstance(value, (dict, list, tuple)):
            value = json.dumps(value)
        lines.append(f"# {key}={value}")
    lines.extend(repr(float(e)) for e in np.asarray(eigenvalues, dtype=float))
    path.write_text("\n".join(lines) + "\n")


def read_spectrum_csv(path):
    """Returns (eigenvalues ascending check is the caller's job, metadata)."""
    path = Path(path)
    metadata: dict = {}
    values = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                metadata[key.strip()] = value.strip()
            continue
        try:
            values.append(float(line.split(",")[0]))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: expected an eigenvalue, got {raw!r}") from exc
    if not values:
        raise ValueError(f"{path}: no eigenvalues found")
    return np.asarray(values), metadata


def write_walsh_csv(path, spectra):
    """One row per (coupling, bitstring): bitstring, E_b, c_b, tracking_quality."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        fh.write(f"# schema={WALSH_SCHEMA}\n")
        writer.writerow(["coupling_ghz", "bitstring", "e_b_ghz", "c_b_ghz",
                         "tracking_quality", "ambiguous"])
        for ws in spectra:
            n = ws.n_sites
            for b in range(2**n):
                writer.writerow([
                    repr(ws.coupling), format(b, f"0{n}b"),
                    repr(float(ws.levels[b])), repr(float(ws.coefficients[b])),
                    repr(float(ws.tracking_quality[b])), int(ws.ambiguous[b]),
                ])


def read_walsh_csv(path):
    rows = []
    with open(path) as fh:
        header = None
        for raw in fh:
            if raw.startswith("#"):
                continue
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if header is None:
                header = parts
                continue
            rows.append(dict(zip(header, parts)))
    return rows


def write_sweep_csv(path, result):
    """Flat per-(grid point, diagnostic) rows from a SweepResult."""
    rows = result.rows()
    fields: list = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema={SWEEP_SCHEMA}\n")
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(v) for k, v in row.items()})


def _csv_cell(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return json.dumps(list(value))
    return value


def read_sweep_csv(path):
    rows = []
    with open(path) as fh:
        reader = None
        for raw in fh:
            if raw.startswith("#"):
                continue
            if reader is None:
                import io as _io
                rest = raw + fh.read()
                reader = csv.DictReader(_io.StringIO(rest))
                rows.extend(reader)
                break
    return rows


def write_manifest(path, subcommand: str, resolved_config: dict, inputs=None,
                   outputs=None, seed=None):
    """Emit the reproducibility manifest that accompanies every output."""
    manifest = {
        "schema": "transmon-chaos/manifest-v1",
        "tool_version": _version,
        "subcommand": subcommand,
        "config": resolved_config,
        "inputs": list(map(str, inputs or [])),
        "outputs": list(map(str, outputs or [])),
        "seed": seed,
        "created": datetime.now(timezone.utc).isoformat(),
    }
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return manifest


def read_manifest(path) -> dict:
    return json.loads(Path(path).read_text())
