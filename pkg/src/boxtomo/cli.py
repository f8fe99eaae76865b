"""Command-line pipelines: simulate, reconstruct, apply, fidelity, bootstrap, report.

Exit codes are a stable contract:

    0  success
    2  input error (bad flags, malformed config or file header, parse error)
    3  data/model mismatch (data cannot be explained by the model space)
    4  incompatible artifacts (mode counts or cutoffs differ)
    5  physicality failure (tensor violates Hermiticity/positivity/trace)

Every output artifact embeds a RunManifest (tool version, command, inputs,
outputs, seed, option overrides) for provenance.  The default worker-thread
count can be set through the BOXTOMO_THREADS environment variable.
"""

import argparse
import json
import sys
from typing import Dict, List, Optional

import numpy as np

from . import __version__
from .errors import (
    ArtifactMismatchError,
    BoxtomoError,
    ConfigError,
    DataModelMismatchError,
    PhysicalityError,
)
from .fock import FockSpaceConfig, flat_index, multimode_coherent, CoherentProbe
from .io import (
    dataset_to_csv,
    read_dataset,
    read_tensors,
    write_dataset,
    write_density_json,
    write_tensors,
)
from .maxlik import ReconstructionOptions, bin_dataset, reconstruct
from .report import write_report
from .simulate import (
    SimulationRun,
    bootstrap,
    default_probe_schedule,
    generate_dataset,
)
from .tensor import (
    BeamSplitterModel,
    DensityMatrix,
    apply_process,
    ensure_physical,
    process_fidelity,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_INCOMPATIBLE = 4
EXIT_PHYSICALITY = 5


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def parse_model(cfg: dict) -> BeamSplitterModel:
    """Model section of a run config; see the README for the schema."""
    kind = cfg.get("type")
    phase = float(cfg.get("global_phase", 0.0))
    try:
        if kind == "symmetric":
            return BeamSplitterModel.symmetric(phase)
        if kind == "identity":
            return BeamSplitterModel.identity(phase)
        if kind == "transmittance":
            return BeamSplitterModel.from_transmittance(float(cfg["transmittance"]), phase)
        if kind == "matrix":
            rows = cfg["mode_matrix"]
            mat = np.array([[complex(re, im) for re, im in row] for row in rows])
            return BeamSplitterModel(mat, phase)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"model section: {exc}") from exc
    raise ConfigError(f"model.type must be symmetric/identity/transmittance/matrix, got {kind!r}")


def parse_schedule(cfg: dict):
    try:
        kwargs = {}
        if "total_energy" in cfg:
            kwargs["total_energy"] = float(cfg["total_energy"])
        if "samples_per_setting" in cfg:
            kwargs["samples_per_setting"] = int(cfg["samples_per_setting"])
        if "n_pairs" in cfg:
            kwargs["n_pairs"] = int(cfg["n_pairs"])
        if "gammas_deg" in cfg:
            kwargs["gammas_deg"] = [float(v) for v in cfg["gammas_deg"]]
        if "deltas_deg" in cfg:
            kwargs["deltas_deg"] = [float(v) for v in cfg["deltas_deg"]]
        if "lo_phase_sets" in cfg:
            kwargs["lo_phase_sets"] = [tuple(float(t) for t in s) for s in cfg["lo_phase_sets"]]
        elif "lo_phases" in cfg:
            kwargs["lo_phase_sets"] = [(float(t), float(t)) for t in cfg["lo_phases"]]
        return default_probe_schedule(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"schedule section: {exc}") from exc


def build_manifest(
    command: str,
    inputs: List[str],
    outputs: List[str],
    seed: Optional[int] = None,
    overrides: Optional[dict] = None,
) -> dict:
    return {
        "tool": "boxtomo",
        "version": __version__,
        "command": command,
        "inputs": list(inputs),
        "outputs": list(outputs),
        "seed": seed,
        "overrides": overrides or {},
    }


def _resolve_seed(args, cfg: dict) -> int:
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    if "seed" in cfg:
        return int(cfg["seed"])
    raise ConfigError("no seed given: set 'seed' in the config or pass --seed")


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    model = parse_model(cfg.get("model", {}))
    schedule = parse_schedule(cfg.get("schedule", {}))
    seed = _resolve_seed(args, cfg)
    run = SimulationRun(
        model=model,
        schedule=schedule,
        seed=seed,
        phase_noise_sigma=float(cfg.get("phase_noise_sigma", 0.0)),
        cutoff=int(cfg.get("cutoff", 4)),
    )
    data = generate_dataset(run)
    manifest = build_manifest("simulate", [args.config], [args.out], seed=seed)
    if args.format == "csv":
        dataset_to_csv(args.out, data)
    else:
        write_dataset(args.out, data, seed=seed, manifest=manifest)
    print(f"wrote {data.n_records} records to {args.out}")
    for probe in schedule.probes:
        print(f"  probe {probe.label or '?'}: energy {probe.total_energy:.6f}")
    return EXIT_OK


def _reconstruction_options(args, data_cutoff: int) -> ReconstructionOptions:
    try:
        return ReconstructionOptions(
            max_iterations=args.max_iters,
            loglik_rel_tol=args.tol,
            working_cutoff=args.cutoff if args.cutoff is not None else data_cutoff,
            report_cutoff=args.report_cutoff,
            threads=args.threads,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_reconstruct(args) -> int:
    data, _meta = read_dataset(args.data)
    opts = _reconstruction_options(args, data.config.cutoff)
    if args.bins and args.bins > 0:
        data = bin_dataset(data, x_bin_width=args.bins)
    result = reconstruct(data, opts)
    # refuse to write anything unphysical
    ensure_physical(result.working_tensor)
    ensure_physical(result.tensor, require_trace_preserving=False)
    manifest = build_manifest(
        "reconstruct",
        [args.data],
        [args.out],
        overrides={
            "cutoff": opts.working_cutoff,
            "report_cutoff": opts.report_cutoff,
            "max_iters": opts.max_iterations,
            "tol": opts.loglik_rel_tol,
            "bins": args.bins,
        },
    )
    write_tensors(
        args.out,
        {"report": result.tensor, "working": result.working_tensor},
        fmt=args.format,
        manifest=manifest,
    )
    if args.diagnostics:
        doc = {
            "iterations_run": result.iterations_run,
            "converged": result.converged,
            "loglik_trace": result.loglik_trace,
            "final_tp_defect": result.final_tp_defect,
            "options": {
                "max_iterations": opts.max_iterations,
                "loglik_rel_tol": opts.loglik_rel_tol,
                "eigenvalue_floor": opts.eigenvalue_floor,
                "probability_floor": opts.probability_floor,
                "working_cutoff": opts.working_cutoff,
                "report_cutoff": opts.report_cutoff,
            },
            "manifest": manifest,
        }
        doc.update(result.diagnostics.to_dict())
        with open(args.diagnostics, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
    print(
        f"reconstructed in {result.iterations_run} iterations "
        f"(converged={result.converged}), final loglik {result.loglik_trace[-1]:.6f}, "
        f"tp defect {result.final_tp_defect:.3e}"
    )
    return EXIT_OK


def _pick_tensor(tensors: Dict, which: str, path: str):
    if which in tensors:
        return tensors[which]
    if len(tensors) == 1:
        return next(iter(tensors.values()))
    raise ConfigError(f"{path}: no tensor named {which!r}; contains {sorted(tensors)}")


def parse_state_spec(spec: str, config: FockSpaceConfig) -> DensityMatrix:
    """Input state for apply: Fock ket '1,1' or 'coherent:0.3+0.1j,0'.

    Raises:
        ConfigError: unparseable text.
        ArtifactMismatchError: wrong mode count or photon number above cutoff.
    """
    if spec.startswith("coherent:"):
        body = spec[len("coherent:"):]
        try:
            amps = tuple(complex(part) for part in body.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad coherent amplitudes {body!r}: {exc}") from exc
        if len(amps) != config.modes:
            raise ArtifactMismatchError(
                f"state has {len(amps)} modes, tensor has {config.modes}"
            )
        c = multimode_coherent(CoherentProbe(amps), config).coefficients
        return DensityMatrix(np.outer(c, c.conj()), config)
    try:
        photons = tuple(int(part) for part in spec.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad Fock state spec {spec!r}: {exc}") from exc
    if len(photons) != config.modes:
        raise ArtifactMismatchError(
            f"state has {len(photons)} modes, tensor has {config.modes}"
        )
    try:
        idx = flat_index(photons, config)
    except IndexError as exc:
        raise ArtifactMismatchError(str(exc)) from exc
    mat = np.zeros((config.total_dim, config.total_dim), dtype=np.complex128)
    mat[idx, idx] = 1.0
    return DensityMatrix(mat, config)


def cmd_apply(args) -> int:
    tensors, _meta = read_tensors(args.tensor)
    tensor = _pick_tensor(tensors, args.which, args.tensor)
    rho_in = parse_state_spec(args.state, tensor.config)
    rho_out = apply_process(tensor, rho_in)
    manifest = build_manifest("apply", [args.tensor], [args.out],
                              overrides={"state": args.state, "which": args.which})
    write_density_json(args.out, rho_out, manifest=manifest)
    print(f"output trace {rho_out.trace:.6f}")
    if not args.state.startswith("coherent:"):
        idx = flat_index(tuple(int(p) for p in args.state.split(",")), tensor.config)
        prob = float(np.real(rho_out.matrix[idx, idx]))
        print(f"return probability <{args.state}|rho_out|{args.state}> = {prob:.6f}")
    return EXIT_OK


def cmd_fidelity(args) -> int:
    tensors_a, _ = read_tensors(args.a)
    tensors_b, _ = read_tensors(args.b)
    ta = _pick_tensor(tensors_a, args.which, args.a)
    tb = _pick_tensor(tensors_b, args.which, args.b)
    value = process_fidelity(ta, tb, squared=args.squared)
    tag = "squared" if args.squared else "unsquared"
    print(f"fidelity ({tag} convention): {value:.9f}")
    if args.out:
        doc = {
            "fidelity": value,
            "convention": tag,
            "manifest": build_manifest("fidelity", [args.a, args.b],
                                       [args.out], overrides={"which": args.which}),
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
    return EXIT_OK


def cmd_bootstrap(args) -> int:
    cfg = _load_config(args.config)
    if args.replicas < 2:
        raise ConfigError("bootstrap needs --replicas >= 2")
    model = parse_model(cfg.get("model", {}))
    schedule = parse_schedule(cfg.get("schedule", {}))
    seed = _resolve_seed(args, cfg)
    recon = cfg.get("reconstruction", {})
    try:
        opts = ReconstructionOptions(
            max_iterations=int(recon.get("max_iterations", 200)),
            loglik_rel_tol=float(recon.get("loglik_rel_tol", 1e-8)),
            eigenvalue_floor=float(recon.get("eigenvalue_floor", 1e-8)),
            working_cutoff=int(recon.get("working_cutoff", cfg.get("cutoff", 4))),
            report_cutoff=int(recon.get("report_cutoff", 2)),
            threads=args.threads,
        )
    except ValueError as exc:
        raise ConfigError(f"reconstruction section: {exc}") from exc
    bin_width = recon.get("bins", 0.05)
    result = bootstrap(
        model,
        schedule,
        opts,
        n_replicas=args.replicas,
        seed=seed,
        x_bin_width=bin_width if bin_width and bin_width > 0 else None,
        phase_noise_sigma=float(cfg.get("phase_noise_sigma", 0.0)),
    )
    doc = result.to_dict()
    doc["manifest"] = build_manifest(
        "bootstrap", [args.config], [args.out], seed=seed,
        overrides={"replicas": args.replicas},
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
    print(
        f"replica fidelities: mean {result.fidelity_mean:.4f} "
        f"std {result.fidelity_std:.4f}; mean-tensor fidelity {result.mean_tensor_fidelity:.4f}"
    )
    return EXIT_OK


def cmd_report(args) -> int:
    tensors, _meta = read_tensors(args.tensor)
    tensor = _pick_tensor(tensors, args.which, args.tensor)
    manifest = build_manifest("report", [args.tensor], [args.outdir],
                              overrides={"which": args.which})
    paths = write_report(tensor, args.outdir, manifest=manifest, name=args.which)
    for kind in sorted(paths):
        print(f"{kind}: {paths[kind]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxtomo",
        description="Process tomography of optical black boxes from coherent-state homodyne data.",
        epilog=(
            "exit codes: 0 ok, 2 input error, 3 data/model mismatch, "
            "4 incompatible artifacts, 5 physicality failure. "
            "BOXTOMO_THREADS sets the default worker-thread count."
        ),
    )
    parser.add_argument("--version", action="version", version=f"boxtomo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a quadrature dataset from a run config")
    p.add_argument("--config", required=True, help="run configuration JSON")
    p.add_argument("--out", required=True, help="output dataset path")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--format", choices=["bin", "csv"], default="bin",
                   help="binary dataset (default) or CSV export")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="run the iterative estimator on a dataset")
    p.add_argument("--data", required=True, help="input dataset path")
    p.add_argument("--out", required=True, help="output tensor container path")
    p.add_argument("--diagnostics", default=None, help="optional per-run diagnostics JSON")
    p.add_argument("--cutoff", type=int, default=None,
                   help="working photon cutoff (default: the dataset's)")
    p.add_argument("--report-cutoff", type=int, default=2, help="report truncation cutoff")
    p.add_argument("--max-iters", type=int, default=200, help="iteration cap")
    p.add_argument("--tol", type=float, default=1e-8, help="relative log-likelihood tolerance")
    p.add_argument("--bins", type=float, default=0.05,
                   help="quadrature bin width before reconstruction; 0 disables binning")
    p.add_argument("--threads", type=int, default=0,
                   help="worker threads (0: BOXTOMO_THREADS or 1)")
    p.add_argument("--format", choices=["bin", "json", "csv"], default="bin")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("apply", help="apply a stored tensor to an input state")
    p.add_argument("--tensor", required=True, help="tensor container path")
    p.add_argument("--state", required=True,
                   help="input state: Fock ket like '1,1' or 'coherent:0.3+0.1j,0'")
    p.add_argument("--out", required=True, help="output density-matrix JSON")
    p.add_argument("--which", default="report", help="tensor name inside the container")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("fidelity", help="fidelity between two stored tensors")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--squared", action="store_true", help="report the squared convention")
    p.add_argument("--which", default="report", help="tensor name inside the containers")
    p.add_argument("--out", default=None, help="optional JSON output path")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("bootstrap", help="replica fidelity statistics for a run config")
    p.add_argument("--config", required=True, help="run configuration JSON")
    p.add_argument("--replicas", type=int, required=True)
    p.add_argument("--out", required=True, help="statistics JSON path")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--threads", type=int, default=0)
    p.set_defaults(func=cmd_bootstrap)

    p = sub.add_parser("report", help="emit CSV tables, SVG heatmaps, and a summary")
    p.add_argument("--tensor", required=True, help="tensor container path")
    p.add_argument("--outdir", required=True)
    p.add_argument("--which", default="report", help="tensor name inside the container")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DataModelMismatchError as exc:
        print(f"error: data/model mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ArtifactMismatchError as exc:
        print(f"error: incompatible artifacts: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except PhysicalityError as exc:
        print(f"error: physicality failure: {exc}", file=sys.stderr)
        return EXIT_PHYSICALITY
    except BoxtomoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
