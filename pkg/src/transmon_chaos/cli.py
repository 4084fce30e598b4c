"""Command-line interface.

Subcommands cover every pipeline stage:

  single-transmon   levels, anharmonicity and charge matrix elements
  spectrum          one disorder realization -> spectrum CSV
  phase-diagram     KL + IPR sweep over (E_J, T) -> CSV + SVG heatmaps
  walsh             tracked Walsh coefficients vs T -> CSV + SVG
  collapse          exponent fit over per-E_J traces -> report + SVG
  pattern-study     A-B engineered-frequency study vs sigma_EJ
  analyze           ratio statistics of a standalone spectrum CSV

Configuration comes from a JSON file (--config) with flags overriding file
values; every run writes a manifest next to its outputs.  Energies are GHz
by default; values accept an `MHz`/`GHz` suffix.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 completed with warning flags (failed tasks or excluded realizations).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .collapse import CollapseTrace, fit_collapse_exponent
from .errors import TransmonChaosError
from .fileio import (read_spectrum_csv, write_manifest, write_spectrum_csv,
                     write_sweep_csv, write_walsh_csv)
from .lattice import GEOMETRY_TAGS
from .pipeline import SystemSpec, disorder_model_for, prepare_system, solve_sites
from .seeding import mix64
from .single_transmon import TransmonParams, solve_single_transmon, transmon_frequency
from .spectra import diagonalize, select_bundle
from .statistics import normalized_kl, spacing_ratios
from .sweep import SweepConfig, run_sweep
from .disorder import sample_disorder
from .hamiltonian import assemble_hamiltonian

log = logging.getLogger("transmon_chaos")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_FLAGS = 4


def parse_energy(text: str) -> float:
    """Energy value in GHz; accepts '3MHz', '0.25GHz', or a bare GHz float."""
    s = str(text).strip()
    lower = s.lower()
    if lower.endswith("mhz"):
        return float(s[:-3]) * 1e-3
    if lower.endswith("ghz"):
        return float(s[:-3])
    return float(s)


def _energy_list(text: str):
    return tuple(parse_energy(tok) for tok in str(text).split(","))


def load_config_file(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


class ConfigError(TransmonChaosError):
    pass


def _resolve_outdir(args) -> Path:
    outdir = Path(getattr(args, "outdir", ".") or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def _system_from_config(cfg: dict) -> SystemSpec:
    try:
        return SystemSpec(**cfg)
    except TypeError as exc:
        raise ConfigError(f"bad system config: {exc}") from exc


def _sweep_from_config(cfg: dict, overrides: dict | None = None) -> SweepConfig:
    merged = dict(cfg)
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return SweepConfig.from_dict(merged)
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad sweep config: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommands

def cmd_single_transmon(args) -> int:
    params = TransmonParams(e_c=parse_energy(args.ec), e_j=parse_energy(args.ej),
                            n_max=args.nmax, levels=args.levels)
    sol = solve_single_transmon(params)
    nu = transmon_frequency(params.e_c, params.e_j)
    print(f"# transmon E_C={params.e_c} GHz  E_J={params.e_j} GHz  "
          f"n_max={params.n_max}  levels={params.levels}")
    print(f"nu (sqrt(8 E_J E_C)) = {nu:.6f} GHz")
    if params.levels >= 3:
        print(f"anharmonicity        = {sol.anharmonicity:+.6f} GHz")
    print("level   energy_ghz")
    for k, e in enumerate(sol.levels):
        print(f"{k:<7d} {e:.9f}")
    print("charge matrix elements <k|n|l>:")
    with np.printoptions(precision=6, suppress=True):
        print(sol.charge_elements)
    if args.output:
        outdir = _resolve_outdir(args)
        out = outdir / args.output
        write_spectrum_csv(out, sol.levels, {
            "kind": "single_transmon", "e_c": params.e_c, "e_j": params.e_j,
            "n_max": params.n_max, "levels": params.levels,
        })
        write_manifest(out.with_suffix(".manifest.json"), "single-transmon",
                       dataclasses.asdict(params), outputs=[out])
        print(f"wrote {out}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    cfg = load_config_file(args.config)["system"] if args.config else {}
    for name, value in (("geometry", args.geometry), ("n_sites", args.sites),
                        ("e_c", args.ec and parse_energy(args.ec)),
                        ("e_j", args.ej and parse_energy(args.ej)),
                        ("coupling", args.coupling and parse_energy(args.coupling)),
                        ("scheme", args.scheme), ("bundle_k", args.bundle)):
        if value is not None:
            cfg[name] = value
    spec = _system_from_config(cfg)
    prepared = prepare_system(spec, ("kl",))
    seed = mix64(args.seed)
    model = disorder_model_for(spec, seed)
    e_j_values = sample_disorder(model, prepared.lattice, spec.e_j)
    solutions = solve_sites(spec, e_j_values, prepared.basis.levels)
    h = assemble_hamiltonian(prepared.structure, prepared.basis, solutions, spec.coupling)
    spectrum = diagonalize(h)
    bundle = select_bundle(spectrum, spec.bundle_k, prepared.basis)

    outdir = _resolve_outdir(args)
    out = outdir / args.output
    metadata = {**spec.as_dict(), "seed": args.seed,
                "bundle_start": bundle.start, "bundle_stop": bundle.stop,
                "bundle_overlap_flag": bundle.overlap_flagged,
                "e_j_values": [round(v, 9) for v in e_j_values]}
    metadata["pattern_means"] = json.dumps(metadata.get("pattern_means"))
    metadata["multiplet_excitations"] = json.dumps(metadata.get("multiplet_excitations"))
    write_spectrum_csv(out, spectrum.eigenvalues, metadata)
    write_manifest(out.with_suffix(".manifest.json"), "spectrum", metadata,
                   outputs=[out], seed=args.seed)
    print(f"wrote {out} ({spectrum.dim} eigenvalues; bundle k={spec.bundle_k} "
          f"spans rows {bundle.start}..{bundle.stop - 1})")
    return EXIT_FLAGS if bundle.overlap_flagged else EXIT_OK


def _run_sweep_command(args, config: SweepConfig, name: str):
    outdir = _resolve_outdir(args)
    prefix = outdir / args.output
    config = dataclasses.replace(config, output=str(prefix))
    result = run_sweep(config, workers=args.workers, resume=args.resume)
    csv_path = Path(str(prefix) + ".csv")
    write_sweep_csv(csv_path, result)
    return result, prefix, csv_path


def cmd_phase_diagram(args) -> int:
    from .plots import plot_phase_diagram

    cfg = load_config_file(args.config)
    overrides = {"realizations": args.realizations, "master_seed": args.seed}
    config = _sweep_from_config(cfg, overrides)
    result, prefix, csv_path = _run_sweep_command(args, config, "phase-diagram")
    svg_path = Path(str(prefix) + ".svg")
    plot_phase_diagram(result, svg_path)
    write_manifest(Path(str(prefix) + ".manifest.json"), "phase-diagram",
                   config.to_dict(), inputs=[args.config],
                   outputs=[csv_path, svg_path], seed=config.master_seed)
    flags = result.flag_counters()
    print(f"wrote {csv_path} and {svg_path}; flags: {flags}")
    return EXIT_FLAGS if flags["task_failures"] else EXIT_OK


def cmd_walsh(args) -> int:
    from .plots import plot_walsh_groups
    from .pipeline import run_realization

    if args.config:
        cfg = load_config_file(args.config)
    else:
        cfg = {"system": {}, "axes": [["coupling", []]]}
    system = cfg.get("system", {})
    if args.ej is not None:
        system["e_j"] = parse_energy(args.ej)
    if args.scheme is not None:
        system["scheme"] = args.scheme
    if args.sites is not None:
        system["n_sites"] = args.sites
    if args.couplings is not None:
        cfg["axes"] = [["coupling", list(_energy_list(args.couplings))]]
    cfg["system"] = system
    cfg.setdefault("diagnostics", ["walsh"])
    overrides = {"realizations": args.realizations, "master_seed": args.seed}
    config = _sweep_from_config(cfg, overrides)
    if "walsh" not in config.diagnostics:
        raise ConfigError("walsh subcommand needs 'walsh' in diagnostics")

    result, prefix, csv_path = _run_sweep_command(args, config, "walsh")
    svg_path = Path(str(prefix) + ".svg")
    plot_walsh_groups(result, svg_path)

    # per-bitstring CSV for the first realization at each grid coupling
    prepared = prepare_system(config.system, ("walsh",))
    from .pipeline import realization_seed
    targets = list(config.axis_values("coupling"))
    from .walsh import StepPolicy, track_computational_states
    model = disorder_model_for(config.system, realization_seed(config.master_seed, 0))
    e_j_values = sample_disorder(model, prepared.lattice, config.system.e_j)
    solutions = solve_sites(config.system, e_j_values, prepared.walsh_basis.levels)
    spectra = track_computational_states(prepared.walsh_basis, prepared.walsh_structure,
                                         solutions, targets,
                                         StepPolicy(max_step=config.system.walsh_max_step))
    detail_path = Path(str(prefix) + ".bitstrings.csv")
    write_walsh_csv(detail_path, spectra)

    write_manifest(Path(str(prefix) + ".manifest.json"), "walsh", config.to_dict(),
                   inputs=[args.config] if args.config else [],
                   outputs=[csv_path, svg_path, detail_path], seed=config.master_seed)
    flags = result.flag_counters()
    print(f"wrote {csv_path}, {detail_path} and {svg_path}; flags: {flags}")
    return EXIT_FLAGS if flags["task_failures"] or flags["walsh_excluded"] else EXIT_OK


def cmd_collapse(args) -> int:
    from .plots import plot_collapse
    from .sweep import SweepResult

    traces = []
    observable = args.observable
    for path in args.results:
        result = SweepResult.load(path)
        t_values = result.config.axis_values("coupling")
        e_j_axis = result.config.axis_values("e_j")
        e_j_list = e_j_axis if e_j_axis is not None else [result.config.system.e_j]
        axis_names = [name for name, _ in result.config.axes]
        for i, e_j in enumerate(e_j_list):
            ys = []
            for j in range(len(t_values)):
                cell = [0] * len(axis_names)
                if "e_j" in axis_names:
                    cell[axis_names.index("e_j")] = i
                cell[axis_names.index("coupling")] = j
                cell = tuple(cell)
                if observable == "kl":
                    report = result.kl_report(cell)
                    ys.append(report.d_vs_poisson_norm if report else np.nan)
                else:
                    mean, _ = result.mean_se(cell, "ipr")
                    ys.append(mean if mean is not None else np.nan)
            ys = np.asarray(ys, dtype=float)
            keep = np.isfinite(ys)
            if keep.sum() >= 8:
                traces.append(CollapseTrace(float(e_j), np.asarray(t_values)[keep], ys[keep]))
    if len(traces) < 3:
        raise ConfigError(f"collected {len(traces)} usable traces; need >= 3")

    fit = fit_collapse_exponent(traces)
    outdir = _resolve_outdir(args)
    prefix = outdir / args.output
    report_path = Path(str(prefix) + ".json")
    report_path.write_text(json.dumps({"observable": observable, **fit.as_dict()}, indent=2))
    svg_path = Path(str(prefix) + ".svg")
    plot_collapse(fit, traces, svg_path)
    write_manifest(Path(str(prefix) + ".manifest.json"), "collapse",
                   {"observable": observable, "inputs": list(map(str, args.results))},
                   inputs=args.results, outputs=[report_path, svg_path])
    flag = " (degenerate: traces identical)" if fit.degenerate else ""
    print(f"mu = {fit.mu:.3f}  residual = {fit.residual:.3e}{flag}")
    print(f"wrote {report_path} and {svg_path}")
    return EXIT_OK


def cmd_pattern_study(args) -> int:
    from .plots import plot_pattern_study

    cfg = load_config_file(args.config)
    overrides = {"realizations": args.realizations, "master_seed": args.seed}
    config = _sweep_from_config(cfg, overrides)
    if "multiplet" not in config.diagnostics:
        raise ConfigError("pattern-study config needs 'multiplet' in diagnostics")
    if config.axis_values("sigma_ej") is None:
        raise ConfigError("pattern-study config needs a 'sigma_ej' axis")
    result, prefix, csv_path = _run_sweep_command(args, config, "pattern-study")

    # single-realization bundle levels vs sigma for the spectra panel
    sigmas = config.axis_values("sigma_ej")
    prepared = prepare_system(config.system, ("kl",))
    bundle_levels = []
    for sigma in sigmas:
        spec = dataclasses.replace(config.system, sigma_ej=float(sigma))
        model = disorder_model_for(spec, mix64(config.master_seed, 0))
        e_j_values = sample_disorder(model, prepared.lattice, spec.e_j)
        solutions = solve_sites(spec, e_j_values, prepared.basis.levels)
        h = assemble_hamiltonian(prepared.structure, prepared.basis, solutions, spec.coupling)
        spectrum = diagonalize(h)
        bundle = select_bundle(spectrum, spec.bundle_k, prepared.basis)
        bundle_levels.append(spectrum.eigenvalues[bundle.start : bundle.stop])

    svg_path = Path(str(prefix) + ".svg")
    plot_pattern_study(result, svg_path, bundle_levels=(sigmas, bundle_levels))
    write_manifest(Path(str(prefix) + ".manifest.json"), "pattern-study",
                   config.to_dict(), inputs=[args.config],
                   outputs=[csv_path, svg_path], seed=config.master_seed)
    flags = result.flag_counters()
    print(f"wrote {csv_path} and {svg_path}; flags: {flags}")
    return EXIT_FLAGS if flags["task_failures"] else EXIT_OK


def cmd_analyze(args) -> int:
    eigenvalues, metadata = read_spectrum_csv(args.spectrum)
    eigenvalues = np.sort(eigenvalues)
    sample = spacing_ratios(eigenvalues)
    print(f"# {args.spectrum}: {len(eigenvalues)} levels "
          f"({sample.n_degenerate_collapsed} degenerate collapsed)")
    print(f"mean folded ratio <R> = {sample.values.mean():.4f} "
          f"(Poisson 0.3863, GOE 0.5307)")
    try:
        report = normalized_kl(sample.values, bin_count=args.bins)
        print(f"normalized KL vs Poisson      = {report.d_vs_poisson_norm:.4f}")
        print(f"normalized KL vs Wigner-Dyson = {report.d_vs_wigner_dyson_norm:.4f}")
    except ValueError as exc:
        print(f"normalized KL unavailable: {exc}")
    if args.output:
        outdir = _resolve_outdir(args)
        out = outdir / args.output
        out.write_text(json.dumps({
            "levels": len(eigenvalues),
            "degenerate_collapsed": sample.n_degenerate_collapsed,
            "mean_ratio": float(sample.values.mean()),
            "source_metadata": metadata,
        }, indent=2))
        write_manifest(out.with_suffix(".manifest.json"), "analyze",
                       {"bins": args.bins}, inputs=[args.spectrum], outputs=[out])
        print(f"wrote {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transmon-chaos",
        description="Chaos and localization diagnostics for coupled transmon arrays",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="INFO-level logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("single-transmon", help="levels and charge matrix elements")
    p.add_argument("--ec", required=True, help="charging energy (GHz or e.g. 250MHz)")
    p.add_argument("--ej", required=True, help="Josephson energy")
    p.add_argument("--nmax", type=int, default=15, help="charge cutoff (default 15)")
    p.add_argument("--levels", type=int, default=4, help="levels retained (default 4)")
    p.add_argument("--output", help="optional spectrum CSV filename")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_single_transmon)

    p = sub.add_parser("spectrum", help="one disorder realization -> spectrum CSV")
    p.add_argument("--config", help="JSON config with a 'system' section")
    p.add_argument("--geometry", choices=GEOMETRY_TAGS)
    p.add_argument("--sites", type=int)
    p.add_argument("--ec")
    p.add_argument("--ej")
    p.add_argument("--coupling", help="coupling T (GHz or MHz suffix)")
    p.add_argument("--scheme", choices=("A", "B", "fixed_sigma", "pattern"))
    p.add_argument("--bundle", type=int, help="excitation bundle k")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="spectrum.csv")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("phase-diagram", help="KL + IPR sweep -> CSV + SVG heatmaps")
    p.add_argument("--config", required=True, help="JSON sweep config")
    p.add_argument("--realizations", type=int)
    p.add_argument("--seed", type=int, dest="seed")
    p.add_argument("--workers", type=int)
    p.add_argument("--resume", action="store_true", help="continue an existing checkpoint")
    p.add_argument("--output", default="phase_diagram")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_phase_diagram)

    p = sub.add_parser("walsh", help="tracked Walsh coefficients vs coupling")
    p.add_argument("--config", help="JSON sweep config with diagnostics=['walsh']")
    p.add_argument("--ej")
    p.add_argument("--scheme", choices=("A", "B", "fixed_sigma", "pattern"))
    p.add_argument("--sites", type=int)
    p.add_argument("--couplings", help="comma-separated couplings, e.g. '1MHz,3MHz,9MHz'")
    p.add_argument("--realizations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--output", default="walsh")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_walsh)

    p = sub.add_parser("collapse", help="fit the rescaling exponent from sweep results")
    p.add_argument("results", nargs="+", help="sweep .result.json files")
    p.add_argument("--observable", choices=("kl", "ipr"), default="kl")
    p.add_argument("--output", default="collapse")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("pattern-study", help="engineered-pattern study vs sigma_EJ")
    p.add_argument("--config", required=True)
    p.add_argument("--realizations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--output", default="pattern_study")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_pattern_study)

    p = sub.add_parser("analyze", help="ratio statistics of a spectrum CSV")
    p.add_argument("spectrum", help="spectrum CSV file")
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--output", help="optional JSON report filename")
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TransmonChaosError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except RuntimeError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
