"""Coherent-state process tomography for multimode optical black boxes.

The package reconstructs the Jamiolkowski operator of an unknown optical
process from balanced-homodyne quadrature samples taken on a small grid of
coherent probes.  The working representation is a truncated two-mode Fock
space; results are reported after truncation to a smaller cutoff.
"""

from .errors import (
    ArtifactMismatchError,
    BoxtomoError,
    ConfigError,
    DataModelMismatchError,
    InternalConsistencyError,
    PhysicalityError,
    UndefinedPhaseError,
)
from .fock import (
    CoherentProbe,
    FockSpaceConfig,
    StateVector,
    coherent_fock_coeffs,
    flat_index,
    hermite_gauss,
    multi_index,
    multimode_coherent,
    photon_totals,
    quadrature_eigenvector,
)
from .tensor import (
    BeamSplitterModel,
    DensityMatrix,
    ProcessTensor,
    allowed_mask,
    apply_process,
    bs_fock_unitary,
    build_bs_tensor,
    ensure_physical,
    hermiticity_defect,
    identity_tensor,
    min_eigenvalue,
    partial_trace_output,
    phase_allowed,
    phase_twirl,
    physicality_report,
    process_fidelity,
    trace_preservation_defect,
    truncate_tensor,
)
from .maxlik import (
    IterationDiagnostics,
    QuadratureDataset,
    QuadratureRecord,
    ReconstructionOptions,
    ReconstructionResult,
    accumulate_R,
    bin_dataset,
    lambda_operator,
    log_likelihood,
    maxlik_step,
    outcome_probability,
    outcome_probability_batch,
    reconstruct,
)
from .simulate import (
    BootstrapResult,
    ProbeSchedule,
    SimulationRun,
    bootstrap,
    bs_transform,
    default_probe_schedule,
    estimate_phase_offset,
    generate_dataset,
    probe_amplitudes,
    sample_quadratures,
)
from .io import (
    BOOTSTRAP_SCHEMA,
    CONVENTION_TAGS,
    dataset_to_csv,
    read_dataset,
    read_density_json,
    read_tensors,
    write_dataset,
    write_density_json,
    write_tensors,
)

__version__ = "0.1.0"

__all__ = [
    "ArtifactMismatchError",
    "BOOTSTRAP_SCHEMA",
    "BeamSplitterModel",
    "BoxtomoError",
    "BootstrapResult",
    "CONVENTION_TAGS",
    "CoherentProbe",
    "ConfigError",
    "DataModelMismatchError",
    "DensityMatrix",
    "FockSpaceConfig",
    "InternalConsistencyError",
    "IterationDiagnostics",
    "PhysicalityError",
    "ProbeSchedule",
    "ProcessTensor",
    "QuadratureDataset",
    "QuadratureRecord",
    "ReconstructionOptions",
    "ReconstructionResult",
    "SimulationRun",
    "StateVector",
    "UndefinedPhaseError",
    "accumulate_R",
    "allowed_mask",
    "apply_process",
    "bin_dataset",
    "bootstrap",
    "bs_fock_unitary",
    "bs_transform",
    "build_bs_tensor",
    "coherent_fock_coeffs",
    "dataset_to_csv",
    "default_probe_schedule",
    "ensure_physical",
    "estimate_phase_offset",
    "flat_index",
    "generate_dataset",
    "hermite_gauss",
    "hermiticity_defect",
    "identity_tensor",
    "lambda_operator",
    "log_likelihood",
    "maxlik_step",
    "min_eigenvalue",
    "multi_index",
    "multimode_coherent",
    "outcome_probability",
    "outcome_probability_batch",
    "partial_trace_output",
    "phase_allowed",
    "phase_twirl",
    "photon_totals",
    "physicality_report",
    "probe_amplitudes",
    "process_fidelity",
    "quadrature_eigenvector",
    "read_dataset",
    "read_density_json",
    "read_tensors",
    "reconstruct",
    "sample_quadratures",
    "trace_preservation_defect",
    "truncate_tensor",
    "write_dataset",
    "write_density_json",
    "write_tensors",
    "__version__",
]
