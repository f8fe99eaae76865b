"""Ground-truth experiment emulation for the two-mode coupler.

Coherent states stay coherent through a linear coupler, so homodyne
statistics factor into independent per-mode Gaussians: at LO phase theta a
mode with amplitude alpha yields Normal(sqrt(2) Re(alpha e^{-i theta}), 1/2)
samples.  This exactness is specific to coherent ground truth; no joint
distribution machinery is needed.

Each (probe, LO phase set) cell draws from its own deterministically
derived random stream, so datasets are byte-identical for a fixed seed
regardless of how cells might be generated in parallel.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import UndefinedPhaseError
from .fock import SQRT2, CoherentProbe, FockSpaceConfig
from .maxlik import (
    QuadratureDataset,
    ReconstructionOptions,
    bin_dataset,
    reconstruct,
)
from .tensor import BeamSplitterModel, ProcessTensor, build_bs_tensor, process_fidelity, truncate_tensor

DEFAULT_TOTAL_ENERGY = 0.9
DEFAULT_SAMPLES_PER_SETTING = 30000
DEFAULT_LO_PHASES = (0.67, 2.64, 5.29)
# amplitude-mixing angles (gamma) and relative phases (delta) of the default
# 4x4 probe grid; the full-circle delta coverage keeps the probe family
# informationally complete for phase-sensitive tensor elements
DEFAULT_GAMMAS_DEG = (15.0, 40.0, 65.0, 90.0)
DEFAULT_DELTAS_DEG = (0.0, 90.0, 180.0, 270.0)


@dataclass(frozen=True)
class ProbeSchedule:
    """Probe states and LO phase sets of one data-taking run.

    Invariant: every probe carries total_energy photons except an optional
    vacuum probe.
    """

    probes: Tuple[CoherentProbe, ...]
    lo_phase_sets: Tuple[Tuple[float, ...], ...]
    samples_per_setting: int
    total_energy: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "probes", tuple(self.probes))
        object.__setattr__(
            self, "lo_phase_sets", tuple(tuple(float(t) for t in s) for s in self.lo_phase_sets)
        )
        if self.samples_per_setting < 1:
            raise ValueError("samples_per_setting must be >= 1")
        for probe in self.probes:
            e = probe.total_energy
            if not (math.isclose(e, self.total_energy, rel_tol=0, abs_tol=1e-9) or e < 1e-12):
                raise ValueError(
                    f"probe {probe.label!r} has energy {e}, expected {self.total_energy} or vacuum"
                )

    @property
    def n_settings(self) -> int:
        return len(self.probes) * len(self.lo_phase_sets)


@dataclass(frozen=True)
class SimulationRun:
    """Everything needed to regenerate a dataset byte-for-byte."""

    model: BeamSplitterModel
    schedule: ProbeSchedule
    seed: int
    phase_noise_sigma: float = 0.0
    cutoff: int = 4


def probe_amplitudes(gamma: float, delta: float, total_energy: float) -> Tuple[complex, complex]:
    """Two-mode amplitudes (sqrt(E) cos g, sqrt(E) sin g e^{i d}), angles in radians."""
    root = math.sqrt(total_energy)
    return (root * math.cos(gamma), root * math.sin(gamma) * np.exp(1j * delta))


def default_probe_schedule(
    total_energy: float = DEFAULT_TOTAL_ENERGY,
    n_pairs: int = 16,
    lo_phase_sets: Optional[Sequence[Sequence[float]]] = None,
    samples_per_setting: int = DEFAULT_SAMPLES_PER_SETTING,
    gammas_deg: Optional[Sequence[float]] = None,
    deltas_deg: Optional[Sequence[float]] = None,
) -> ProbeSchedule:
    """The default equal-energy probe grid plus vacuum.

    n_pairs must be a perfect square g*g; the grid takes g amplitude-mixing
    angles gamma and g relative phases delta, probes
    (sqrt(E) cos gamma, sqrt(E) sin gamma e^{i delta}).  LO phase sets
    default to three common phases applied to both modes.
    """
    side = math.isqrt(n_pairs)
    if side * side != n_pairs:
        raise ValueError(f"n_pairs must be a perfect square, got {n_pairs}")
    gammas = list(gammas_deg) if gammas_deg is not None else list(DEFAULT_GAMMAS_DEG)[:side]
    deltas = list(deltas_deg) if deltas_deg is not None else list(DEFAULT_DELTAS_DEG)[:side]
    if len(gammas) != side or len(deltas) != side:
        raise ValueError(f"need {side} gamma and delta values, got {len(gammas)}/{len(deltas)}")
    probes: List[CoherentProbe] = []
    for g_deg in gammas:
        for d_deg in deltas:
            amps = probe_amplitudes(math.radians(g_deg), math.radians(d_deg), total_energy)
            probes.append(CoherentProbe(amps, label=f"g{g_deg:g}-d{d_deg:g}"))
    probes.append(CoherentProbe((0.0, 0.0), label="vacuum"))
    if lo_phase_sets is None:
        lo_phase_sets = [(t, t) for t in DEFAULT_LO_PHASES]
    return ProbeSchedule(
        probes=tuple(probes),
        lo_phase_sets=tuple(tuple(s) for s in lo_phase_sets),
        samples_per_setting=samples_per_setting,
        total_energy=total_energy,
    )


def bs_transform(alphas_in: Sequence[complex], model: BeamSplitterModel) -> np.ndarray:
    """Coherent amplitudes after the coupler, including the global phase."""
    return model.effective_matrix @ np.asarray(alphas_in, dtype=np.complex128)


def sample_quadratures(
    alpha: complex, theta: float, n: int, rng: np.random.Generator
) -> np.ndarray:
    """n homodyne samples of a coherent state: Normal(sqrt(2) Re(a e^{-i theta}), 1/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mean = SQRT2 * float(np.real(alpha * np.exp(-1j * theta)))
    return rng.normal(mean, math.sqrt(0.5), n)


def generate_dataset(run: SimulationRun) -> QuadratureDataset:
    """Simulate every (probe, LO phase set) cell of the schedule.

    Probe amplitudes pass through the model; both output modes are sampled
    independently.  When phase_noise_sigma > 0, one Gaussian jitter per cell
    shifts the true LO phases while the records keep the nominal ones,
    emulating uncompensated drift.
    """
    schedule = run.schedule
    probes = list(schedule.probes)
    n = schedule.samples_per_setting
    modes = probes[0].modes if probes else 2
    n_cells = len(probes) * len(schedule.lo_phase_sets)
    total = n_cells * n

    probe_ids = np.empty(total, dtype=np.uint32)
    thetas = np.empty((total, modes))
    xs = np.empty((total, modes))
    streams = np.random.SeedSequence(run.seed).spawn(n_cells)

    row = 0
    cell = 0
    for pid, probe in enumerate(probes):
        out_amps = bs_transform(probe.amplitudes, run.model)
        for phase_set in schedule.lo_phase_sets:
            rng = np.random.default_rng(streams[cell])
            jitter = float(rng.normal(0.0, run.phase_noise_sigma)) if run.phase_noise_sigma > 0 else 0.0
            sl = slice(row, row + n)
            probe_ids[sl] = pid
            thetas[sl] = phase_set
            for m in range(modes):
                xs[sl, m] = sample_quadratures(out_amps[m], phase_set[m] + jitter, n, rng)
            row += n
            cell += 1

    return QuadratureDataset(
        probes=probes,
        probe_ids=probe_ids,
        thetas=thetas,
        quadratures=xs,
        weights=np.ones(total),
        config=FockSpaceConfig(modes, run.cutoff),
        binned=False,
    )


def estimate_phase_offset(mean_x: float, amplitude: float) -> float:
    """Phase offset from a mean quadrature: arcsin(mean / (sqrt(2) amplitude)).

    The usual calibration places the LO a quarter period from the probe
    phase so the mean is sine-like in the offset.  The arcsin branch leaves
    a quadrant ambiguity; callers disambiguate with a second LO phase.

    Raises:
        UndefinedPhaseError: non-positive amplitude.
        ValueError: |mean_x| exceeds sqrt(2)*amplitude by more than one part
            in 1e6, which no coherent state can produce.
    """
    if amplitude <= 0:
        raise UndefinedPhaseError("phase offset undefined for zero amplitude")
    ratio = mean_x / (SQRT2 * amplitude)
    if abs(ratio) > 1.0 + 1e-6:
        raise ValueError(f"mean quadrature inconsistent with amplitude: ratio {ratio}")
    return float(np.arcsin(np.clip(ratio, -1.0, 1.0)))


@dataclass
class BootstrapResult:
    """Fidelity statistics over simulate-and-reconstruct replicas.

    diagnostics holds per-replica iteration traces when requested; it stays
    out of to_dict() so the published JSON schema is unchanged.
    """

    replica_fidelities: List[float]
    pairwise_fidelities: List[float]
    mean_tensor_fidelity: float
    fidelity_mean: float
    fidelity_std: float
    pairwise_mean: float
    pairwise_std: float
    replica_seeds: List[int]
    diagnostics: Optional[list] = None

    def to_dict(self) -> dict:
        return {
            "replica_fidelities": self.replica_fidelities,
            "pairwise_fidelities": self.pairwise_fidelities,
            "mean_tensor_fidelity": self.mean_tensor_fidelity,
            "fidelity_mean": self.fidelity_mean,
            "fidelity_std": self.fidelity_std,
            "pairwise_mean": self.pairwise_mean,
            "pairwise_std": self.pairwise_std,
            "replica_seeds": self.replica_seeds,
        }


def bootstrap(
    model: BeamSplitterModel,
    schedule: ProbeSchedule,
    options: ReconstructionOptions,
    n_replicas: int,
    seed: int,
    replica_seeds: Optional[Sequence[int]] = None,
    x_bin_width: Optional[float] = 0.05,
    phase_noise_sigma: float = 0.0,
    keep_diagnostics: bool = False,
) -> BootstrapResult:
    """Repeated simulate-and-reconstruct against the ideal model tensor.

    Reports replica-vs-ideal fidelities, all pairwise replica fidelities,
    and the fidelity of the (re-Hermitized) mean replica tensor against the
    ideal, all at the report cutoff.  Replica seeds derive deterministically
    from ``seed`` unless given explicitly.

    Raises:
        ValueError: fewer than two replicas.
    """
    if n_replicas < 2:
        raise ValueError("bootstrap needs n_replicas >= 2")
    if replica_seeds is None:
        replica_seeds = [int(s) for s in np.random.SeedSequence(seed).generate_state(n_replicas)]
    else:
        replica_seeds = [int(s) for s in replica_seeds]
        if len(replica_seeds) != n_replicas:
            raise ValueError("replica_seeds length must equal n_replicas")

    report_config = FockSpaceConfig(2, options.report_cutoff)
    ideal = truncate_tensor(
        build_bs_tensor(model, FockSpaceConfig(2, options.working_cutoff)),
        options.report_cutoff,
    )

    tensors: List[ProcessTensor] = []
    replica_fids: List[float] = []
    diagnostics = [] if keep_diagnostics else None
    for s in replica_seeds:
        run = SimulationRun(
            model, schedule, seed=s, phase_noise_sigma=phase_noise_sigma,
            cutoff=options.working_cutoff,
        )
        data = generate_dataset(run)
        if x_bin_width is not None:
            data = bin_dataset(data, x_bin_width=x_bin_width)
        result = reconstruct(data, options)
        tensors.append(result.tensor)
        replica_fids.append(process_fidelity(ideal, result.tensor))
        if diagnostics is not None:
            diagnostics.append(result.diagnostics)

    pairwise = [
        process_fidelity(tensors[i], tensors[j])
        for i in range(n_replicas)
        for j in range(i + 1, n_replicas)
    ]
    mean_mat = sum(t.jamiolkowski for t in tensors) / n_replicas
    mean_mat = 0.5 * (mean_mat + mean_mat.conj().T)
    mean_fid = process_fidelity(ideal, ProcessTensor(mean_mat, report_config))

    return BootstrapResult(
        replica_fidelities=replica_fids,
        pairwise_fidelities=pairwise,
        mean_tensor_fidelity=mean_fid,
        fidelity_mean=float(np.mean(replica_fids)),
        fidelity_std=float(np.std(replica_fids)),
        pairwise_mean=float(np.mean(pairwise)),
        pairwise_std=float(np.std(pairwise)),
        replica_seeds=list(replica_seeds),
        diagnostics=diagnostics,
    )
