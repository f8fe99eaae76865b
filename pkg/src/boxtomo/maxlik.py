"""Iterative maximum-likelihood reconstruction of process tensors.

The estimator maximizes the weighted log-likelihood

    L(E) = sum_i w_i ln p(probe_i, outcome_i)

over Hermitian, positive semidefinite, trace-preserving Jamiolkowski
operators E, where p = <a* (x) v| E |a* (x) v> is the probability density of
quadrature outcome v for coherent probe a.  The fixed-point update is

    E  <-  Lambda^{-1} R E R Lambda^{-1},
    R = sum_i  w_i |a* (x) v_i><a* (x) v_i| / p_i,
    Lambda = sqrt(Tr_out[R E R]) (x) I_out,

starting from the unbiased E0 = I / dim_out.  Global-phase invariance is
enforced by projecting R onto the selection-rule algebra before the update,
which keeps every iterate exactly sparse without sacrificing likelihood.
Each step ends with re-Hermitization and an exact trace completion that
parks the trace lost on data-dark input directions in the super-cutoff
output sectors, so every iterate is exactly trace-preserving while the
data-informed content is untouched.

Records sharing a probe and LO phase vector are grouped into cells; within
a cell the projector vectors factor into a real Hermite-Gauss part and a
fixed phase dressing, which turns the R accumulation and the probability
evaluation into small real matrix products.  This is what makes desk-scale
iteration times a fraction of a second instead of hours.
"""

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ArtifactMismatchError,
    DataModelMismatchError,
    InternalConsistencyError,
    PhysicalityError,
)
from .fock import (
    CoherentProbe,
    FockSpaceConfig,
    StateVector,
    hermite_gauss_table,
    multimode_coherent,
    photon_totals,
)
from .tensor import (
    ProcessTensor,
    allowed_mask,
    trace_preservation_defect,
    truncate_tensor,
)

THREADS_ENV_VAR = "BOXTOMO_THREADS"


@dataclass(frozen=True)
class QuadratureRecord:
    """One homodyne outcome: probe id, LO phases, quadrature values, weight."""

    probe_id: int
    thetas: Tuple[float, ...]
    xs: Tuple[float, ...]
    weight: float = 1.0


@dataclass
class QuadratureDataset:
    """Columnar store of homodyne records.

    Attributes:
        probes: the distinct probe states; records reference them by index.
        probe_ids: (R,) integer array of probe indices.
        thetas: (R, M) LO phases in radians.
        quadratures: (R, M) quadrature values, vacuum variance 1/2.
        weights: (R,) positive weights; counts for binned data, 1.0 raw.
        config: governing mode count and cutoff.
        binned: whether records are histogram bins rather than raw samples.
    """

    probes: List[CoherentProbe]
    probe_ids: np.ndarray
    thetas: np.ndarray
    quadratures: np.ndarray
    weights: np.ndarray
    config: FockSpaceConfig
    binned: bool = False

    def __post_init__(self) -> None:
        self.probe_ids = np.asarray(self.probe_ids, dtype=np.uint32)
        self.thetas = np.atleast_2d(np.asarray(self.thetas, dtype=np.float64))
        self.quadratures = np.atleast_2d(np.asarray(self.quadratures, dtype=np.float64))
        self.weights = np.asarray(self.weights, dtype=np.float64)
        r = len(self.probe_ids)
        m = self.config.modes
        if self.thetas.shape != (r, m) or self.quadratures.shape != (r, m):
            raise ValueError(
                f"theta/quadrature shapes {self.thetas.shape}/{self.quadratures.shape} "
                f"do not match {r} records with {m} modes"
            )
        if self.weights.shape != (r,):
            raise ValueError(f"weight shape {self.weights.shape}, expected ({r},)")
        if r and (self.weights <= 0).any():
            raise ValueError("weights must be positive")
        if r and int(self.probe_ids.max()) >= len(self.probes):
            raise ValueError("probe id does not resolve to a probe")
        for probe in self.probes:
            if probe.modes != m:
                raise ValueError(f"probe {probe.label!r} has {probe.modes} modes, expected {m}")

    @property
    def n_records(self) -> int:
        return len(self.probe_ids)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def record(self, i: int) -> QuadratureRecord:
        return QuadratureRecord(
            int(self.probe_ids[i]),
            tuple(self.thetas[i]),
            tuple(self.quadratures[i]),
            float(self.weights[i]),
        )

    def iter_records(self) -> Iterator[QuadratureRecord]:
        return (self.record(i) for i in range(self.n_records))


@dataclass(frozen=True)
class ReconstructionOptions:
    """Knobs of the iterative estimator.

    Attributes:
        max_iterations: hard iteration cap.
        loglik_rel_tol: stop once the relative log-likelihood change drops
            below this (must be positive; use a tiny value to run the cap).
        eigenvalue_floor: relative floor for the pseudo-inverse of the
            normalization operator.  Directions below the floor are barely
            constrained by data; inverting them exactly amplifies shot noise
            and can break likelihood monotonicity, so the default is kept
            well above machine precision.
        probability_floor: absolute clamp for outcome probabilities in the
            R accumulation; clamped records are counted in the diagnostics.
        enforce_phase_invariance: project the estimator operator onto the
            selection-rule algebra every step, keeping all forbidden tensor
            elements exactly zero.
        working_cutoff: per-mode photon cutoff used during iteration.
        report_cutoff: cutoff of the truncated tensor returned for analysis.
        threads: worker threads for the per-cell map; 0 reads the
            BOXTOMO_THREADS environment variable and falls back to 1.
            Results are bit-identical for any thread count.
        track_physicality: record Hermiticity, eigenvalue, and trace
            diagnostics at every iteration (costs one eigendecomposition).
    """

    max_iterations: int = 200
    loglik_rel_tol: float = 1e-8
    eigenvalue_floor: float = 1e-8
    probability_floor: float = 1e-12
    enforce_phase_invariance: bool = True
    working_cutoff: int = 4
    report_cutoff: int = 2
    threads: int = 0
    track_physicality: bool = True

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.loglik_rel_tol > 0:
            raise ValueError("loglik_rel_tol must be positive")
        if not 0 < self.eigenvalue_floor < 1:
            raise ValueError("eigenvalue_floor must lie in (0, 1)")
        if not self.probability_floor > 0:
            raise ValueError("probability_floor must be positive")
        if not 0 <= self.report_cutoff <= self.working_cutoff:
            raise ValueError("need 0 <= report_cutoff <= working_cutoff")

    def resolved_threads(self) -> int:
        if self.threads > 0:
            return self.threads
        return max(1, int(os.environ.get(THREADS_ENV_VAR, "1")))


@dataclass
class IterationDiagnostics:
    """Per-iteration health record of a reconstruction run."""

    clamped_counts: List[int] = field(default_factory=list)
    wall_times: List[float] = field(default_factory=list)
    hermiticity_drifts: List[float] = field(default_factory=list)
    hermiticity_defects: List[float] = field(default_factory=list)
    min_eigenvalues: List[float] = field(default_factory=list)
    max_eigenvalues: List[float] = field(default_factory=list)
    tp_defects: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "clamped_counts": self.clamped_counts,
            "wall_times": self.wall_times,
            "hermiticity_drifts": self.hermiticity_drifts,
            "hermiticity_defects": self.hermiticity_defects,
            "min_eigenvalues": self.min_eigenvalues,
            "max_eigenvalues": self.max_eigenvalues,
            "tp_defects": self.tp_defects,
            "note": "loglik trace is the data term sum(w ln p); "
            "the Lagrange term is internal to the update",
        }


@dataclass
class ReconstructionResult:
    """Output of reconstruct(): report and working tensors plus diagnostics."""

    tensor: ProcessTensor
    working_tensor: ProcessTensor
    loglik_trace: List[float]
    iterations_run: int
    converged: bool
    final_tp_defect: float
    diagnostics: IterationDiagnostics


class _Cell:
    """Records sharing one probe and one LO phase vector.

    Within a cell the projector vector factors as a fixed phase dressing
    times a real Hermite-Gauss product, so probabilities and the R
    contribution reduce to real matrix products.
    """

    __slots__ = ("probe_id", "thetas", "basis", "phases", "weights")

    def __init__(
        self,
        probe_id: int,
        thetas: np.ndarray,
        xs: np.ndarray,
        weights: np.ndarray,
        config: FockSpaceConfig,
    ) -> None:
        self.probe_id = probe_id
        self.thetas = thetas
        # real part: row r is the tensor product of per-mode psi_n(x_rm)
        basis = np.ones((len(xs), 1))
        for m in range(config.modes):
            table = hermite_gauss_table(xs[:, m], config.cutoff)
            basis = (basis[:, :, None] * table[:, None, :]).reshape(len(xs), -1)
        self.basis = np.ascontiguousarray(basis)
        # phase dressing: kron of per-mode e^{i n theta_m}
        phases = np.ones(1, dtype=np.complex128)
        n = np.arange(config.cutoff + 1)
        for m in range(config.modes):
            phases = np.kron(phases, np.exp(1j * thetas[m] * n))
        self.phases = phases
        self.weights = weights

    def probabilities(self, rho_out: np.ndarray, floor: float) -> Tuple[np.ndarray, int]:
        """Outcome densities for every record, clamped below at the floor."""
        dressed = (self.phases.conj()[:, None] * rho_out) * self.phases[None, :]
        # p_r = B_r . Re(dressed) . B_r, real because dressed is Hermitian
        p = np.einsum(
            "rp,pq,rq->r",
            self.basis,
            np.ascontiguousarray(dressed.real),
            self.basis,
            optimize=True,
        )
        clamped = int(np.count_nonzero(p < floor))
        np.maximum(p, floor, out=p)
        return p, clamped

    def output_operator(self, p: np.ndarray) -> np.ndarray:
        """Output-space factor sum_r (w_r/p_r) |v_r><v_r| of this cell's R term."""
        scaled = self.basis * (self.weights / p)[:, None]
        kernel = scaled.T @ self.basis
        return (self.phases[:, None] * kernel) * self.phases.conj()[None, :]


class _Engine:
    """Shared per-dataset state for repeated R accumulation and updates."""

    def __init__(self, data: QuadratureDataset, options: ReconstructionOptions) -> None:
        if data.n_records == 0:
            raise DataModelMismatchError("dataset has no records")
        self.options = options
        self.config = FockSpaceConfig(data.config.modes, options.working_cutoff)
        self.dim = self.config.total_dim
        self.probe_vectors = [
            multimode_coherent(p, self.config).coefficients for p in data.probes
        ]
        # input-side rank-1 factors |a*><a*| of the R terms
        self.probe_inputs = [np.outer(c.conj(), c) for c in self.probe_vectors]
        self.cells = _build_cells(data, self.config)
        self.n_records = data.n_records
        self.mask = allowed_mask(self.config)
        # trace completion lands in output sectors whose total photon number
        # exceeds the cutoff; any truncated number-conserving process is
        # already lossy there, and report truncations never keep them.  A
        # single-mode space has no such sector, so fall back to uniform.
        high = photon_totals(self.config) > self.config.cutoff
        if not high.any():
            high = np.ones(self.dim, dtype=bool)
        self.park_operator = np.diag(high / high.sum()).astype(np.complex128)

    def initial_tensor(self) -> ProcessTensor:
        d = self.dim
        e0 = np.eye(d * d, dtype=np.complex128) / d
        return ProcessTensor(e0, self.config)

    def _probe_outputs(self, tensor: ProcessTensor) -> List[np.ndarray]:
        e4 = tensor.as_rank4()
        return [
            np.einsum("njmk,nm->jk", e4, np.outer(c, c.conj()))
            for c in self.probe_vectors
        ]

    def accumulate(self, tensor: ProcessTensor) -> Tuple[np.ndarray, float, int]:
        """One pass over the data: R operator, log-likelihood, clamp count."""
        rho_outs = self._probe_outputs(tensor)
        floor = self.options.probability_floor

        def cell_term(cell: _Cell) -> Tuple[np.ndarray, float, int]:
            p, clamped = cell.probabilities(rho_outs[cell.probe_id], floor)
            ll = float(np.dot(cell.weights, np.log(p)))
            return cell.output_operator(p), ll, clamped

        threads = self.options.resolved_threads()
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(cell_term, self.cells))
        else:
            results = [cell_term(c) for c in self.cells]

        # fixed-order reduction: group output factors by probe, then one
        # Kronecker lift per probe; identical arithmetic for any thread count
        d = self.dim
        by_probe: Dict[int, np.ndarray] = {}
        loglik = 0.0
        clamped_total = 0
        for cell, (out_op, ll, clamped) in zip(self.cells, results):
            if cell.probe_id in by_probe:
                by_probe[cell.probe_id] += out_op
            else:
                by_probe[cell.probe_id] = out_op
            loglik += ll
            clamped_total += clamped
        r_op = np.zeros((d * d, d * d), dtype=np.complex128)
        for pid in sorted(by_probe):
            r_op += np.kron(self.probe_inputs[pid], by_probe[pid])
        return r_op, loglik, clamped_total

    def update(self, tensor: ProcessTensor, r_op: np.ndarray) -> Tuple[ProcessTensor, float]:
        """Normalized fixed-point update followed by the physicality post-steps.

        Phase invariance is enforced by projecting R onto the selection-rule
        algebra rather than by twirling the updated tensor: a projected R
        times an invariant tensor stays invariant, so every iterate keeps
        its forbidden elements at exactly zero, and the iteration never has
        to discard likelihood it just gained (twirling E afterwards causes
        small late-stage likelihood dips).

        Returns the new tensor and the pre-Hermitization drift.
        """
        d = self.dim
        if self.options.enforce_phase_invariance:
            r_op = r_op * self.mask
        rer = r_op @ tensor.jamiolkowski @ r_op
        _, g_inv_half = _normalization_roots(
            rer, d, self.options.eigenvalue_floor
        )
        lift = np.kron(g_inv_half, np.eye(d))
        e_new = lift @ rer @ lift
        drift = float(np.abs(e_new - e_new.conj().T).max())
        e_new = 0.5 * (e_new + e_new.conj().T)
        if self.options.enforce_phase_invariance:
            # analytically a no-op (products of invariant operators are
            # invariant), but the eigendecomposition behind the lift can mix
            # degenerate directions across charge blocks; re-zero the dust
            e_new *= self.mask
        # exact trace completion: the trace the floored pseudo-inverse loses
        # on data-dark input directions comes back as output mass parked in
        # the super-cutoff sectors.  The residual is PSD (the twirl pinches
        # an operator between 0 and I), diagonal in total photon number (so
        # selection-rule compatible), and adding PSD mass never lowers the
        # likelihood.  Informed directions are untouched.
        residual = np.eye(d) - np.einsum("njmj->nm", e_new.reshape(d, d, d, d))
        residual = 0.5 * (residual + residual.conj().T)
        e_new += np.kron(residual, self.park_operator)
        return ProcessTensor(e_new, self.config), drift


def _build_cells(data: QuadratureDataset, config: FockSpaceConfig) -> List[_Cell]:
    key = np.column_stack([data.probe_ids.astype(np.float64), data.thetas])
    order = np.lexsort(tuple(key[:, c] for c in reversed(range(key.shape[1]))))
    sorted_key = key[order]
    changed = np.any(sorted_key[1:] != sorted_key[:-1], axis=1)
    starts = np.concatenate(([0], np.nonzero(changed)[0] + 1, [len(order)]))
    cells = []
    for s, e in zip(starts[:-1], starts[1:]):
        idx = order[s:e]
        cells.append(
            _Cell(
                int(data.probe_ids[idx[0]]),
                data.thetas[idx[0]].copy(),
                data.quadratures[idx],
                data.weights[idx],
                config,
            )
        )
    return cells


def _normalization_roots(
    rer: np.ndarray, dim: int, eigenvalue_floor: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Square root and floored inverse square root of G = Tr_out[R E R]."""
    g = np.einsum("njmj->nm", rer.reshape(dim, dim, dim, dim))
    scale = float(np.abs(g).max())
    if scale > 0 and float(np.abs(g - g.conj().T).max()) > 1e-8 * scale:
        raise InternalConsistencyError("normalization operator lost Hermiticity")
    g = 0.5 * (g + g.conj().T)
    w, v = np.linalg.eigh(g)
    if w[-1] <= 0:
        raise DataModelMismatchError("normalization operator vanished")
    w = np.maximum(w, eigenvalue_floor * w[-1])
    g_half = (v * np.sqrt(w)) @ v.conj().T
    g_inv_half = (v / np.sqrt(w)) @ v.conj().T
    return g_half, g_inv_half


def outcome_probability(
    tensor: ProcessTensor, probe: StateVector, projector: StateVector
) -> float:
    """Probability density <a* (x) v| E |a* (x) v> of one outcome.

    The probe enters complex-conjugated, which is the input-side convention
    of the Jamiolkowski layout used throughout.

    Raises:
        ArtifactMismatchError: configs differ.
        PhysicalityError: value below -1e-12, signalling a non-PSD tensor.
    """
    if probe.config != tensor.config or projector.config != tensor.config:
        raise ArtifactMismatchError("probe/projector configs do not match the tensor")
    vec = np.kron(probe.coefficients.conj(), projector.coefficients)
    p = float(np.real(np.vdot(vec, tensor.jamiolkowski @ vec)))
    if p < -1e-12:
        raise PhysicalityError(f"negative outcome probability {p:.3e}")
    return max(p, 0.0)


def outcome_probability_batch(
    tensor: ProcessTensor,
    probe: StateVector,
    thetas: Sequence[float],
    xs: np.ndarray,
) -> np.ndarray:
    """Vectorized outcome densities at fixed LO phases for many quadratures.

    Args:
        thetas: LO phase per mode, length M.
        xs: (R, M) quadrature vectors.

    Returns:
        (R,) array of densities.
    """
    if probe.config != tensor.config:
        raise ArtifactMismatchError("probe config does not match the tensor")
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    cell = _Cell(
        0,
        np.asarray(thetas, dtype=np.float64),
        xs,
        np.ones(len(xs)),
        tensor.config,
    )
    c = probe.coefficients
    rho_out = np.einsum("njmk,nm->jk", tensor.as_rank4(), np.outer(c, c.conj()))
    p, _ = cell.probabilities(rho_out, 0.0)
    return p


def accumulate_R(tensor: ProcessTensor, data: QuadratureDataset,
                 options: Optional[ReconstructionOptions] = None) -> np.ndarray:
    """The Hermitian PSD estimator operator R = sum_i w_i |a* x v_i><a* x v_i| / p_i.

    Probabilities below options.probability_floor are clamped; use
    reconstruct() to obtain the clamp counts.
    """
    opts = options or ReconstructionOptions(working_cutoff=data.config.cutoff)
    engine = _Engine(data, opts)
    r_op, _, _ = engine.accumulate(_coerce(tensor, engine))
    return r_op


def log_likelihood(tensor: ProcessTensor, data: QuadratureDataset,
                   options: Optional[ReconstructionOptions] = None) -> float:
    """Data term sum_i w_i ln p_i, with floored probabilities contributing ln(floor)."""
    opts = options or ReconstructionOptions(working_cutoff=data.config.cutoff)
    engine = _Engine(data, opts)
    _, ll, _ = engine.accumulate(_coerce(tensor, engine))
    return ll


def lambda_operator(
    r_op: np.ndarray, tensor: ProcessTensor, eigenvalue_floor: float = 1e-8
) -> Tuple[np.ndarray, np.ndarray]:
    """Normalization operator Lambda = sqrt(Tr_out[R E R]) (x) I and its pseudo-inverse.

    Eigenvalues of Tr_out[R E R] below eigenvalue_floor times the largest
    are raised to the floor before the root and inversion.

    Returns:
        (lambda_matrix, lambda_inverse), both on the doubled space.

    Raises:
        InternalConsistencyError: Tr_out[R E R] not Hermitian within 1e-8
            relative to its largest element.
    """
    d = tensor.config.total_dim
    rer = r_op @ tensor.jamiolkowski @ r_op
    g_half, g_inv_half = _normalization_roots(rer, d, eigenvalue_floor)
    eye = np.eye(d)
    return np.kron(g_half, eye), np.kron(g_inv_half, eye)


def maxlik_step(
    tensor: ProcessTensor,
    data: QuadratureDataset,
    options: Optional[ReconstructionOptions] = None,
) -> ProcessTensor:
    """One fixed-point update E <- Lambda^{-1} R E R Lambda^{-1} plus post-steps."""
    opts = options or ReconstructionOptions(working_cutoff=data.config.cutoff)
    engine = _Engine(data, opts)
    e = _coerce(tensor, engine)
    r_op, _, _ = engine.accumulate(e)
    new, _ = engine.update(e, r_op)
    return new


def _coerce(tensor: ProcessTensor, engine: _Engine) -> ProcessTensor:
    if tensor.config != engine.config:
        raise ArtifactMismatchError(
            f"tensor config {tensor.config} does not match working config {engine.config}"
        )
    return tensor


def reconstruct(
    data: QuadratureDataset, options: Optional[ReconstructionOptions] = None
) -> ReconstructionResult:
    """Run the full iterative estimator from the unbiased initial tensor.

    Iterates until max_iterations or until the relative log-likelihood
    change drops below loglik_rel_tol.  The returned report tensor is the
    working tensor truncated to report_cutoff (no renormalization).

    Raises:
        DataModelMismatchError: empty dataset, or every record probability
            clamped at the floor on the first pass.
    """
    opts = options or ReconstructionOptions(working_cutoff=data.config.cutoff)
    engine = _Engine(data, opts)
    e = engine.initial_tensor()
    trace: List[float] = []
    diag = IterationDiagnostics()
    converged = False
    iterations = 0
    for it in range(opts.max_iterations):
        t0 = time.perf_counter()
        r_op, ll, clamped = engine.accumulate(e)
        if it == 0 and clamped >= engine.n_records:
            raise DataModelMismatchError(
                "every outcome probability sits at the floor; "
                "the data cannot be explained by the model space"
            )
        trace.append(ll)
        if it >= 1 and abs(trace[-1] - trace[-2]) <= opts.loglik_rel_tol * abs(trace[-1]):
            converged = True
            break
        e, drift = engine.update(e, r_op)
        iterations += 1
        diag.clamped_counts.append(clamped)
        diag.hermiticity_drifts.append(drift)
        diag.wall_times.append(time.perf_counter() - t0)
        if opts.track_physicality:
            mat = e.jamiolkowski
            diag.hermiticity_defects.append(float(np.abs(mat - mat.conj().T).max()))
            w = np.linalg.eigvalsh(mat)
            diag.min_eigenvalues.append(float(w[0]))
            diag.max_eigenvalues.append(float(w[-1]))
            diag.tp_defects.append(trace_preservation_defect(e))

    report = truncate_tensor(e, opts.report_cutoff)
    return ReconstructionResult(
        tensor=report,
        working_tensor=e,
        loglik_trace=trace,
        iterations_run=iterations,
        converged=converged,
        final_tp_defect=trace_preservation_defect(e),
        diagnostics=diag,
    )


def bin_dataset(
    data: QuadratureDataset,
    x_bin_width: float = 0.05,
    theta_bin_width: float = 1e-9,
) -> QuadratureDataset:
    """Merge records with identical (probe, theta bin, x bin) into weighted bins.

    Representative points are bin centers; weights are summed, so the total
    weight is preserved exactly.  Nominal LO phases move by at most half the
    (tiny) default theta width.

    Raises:
        ValueError: non-positive bin width.
    """
    if x_bin_width <= 0 or theta_bin_width <= 0:
        raise ValueError("bin widths must be positive")
    m = data.config.modes
    ti = np.floor(data.thetas / theta_bin_width).astype(np.int64)
    xi = np.floor(data.quadratures / x_bin_width).astype(np.int64)
    key = np.column_stack([data.probe_ids.astype(np.int64), ti, xi])
    uniq, inverse = np.unique(key, axis=0, return_inverse=True)
    weights = np.bincount(inverse, weights=data.weights, minlength=len(uniq))
    return QuadratureDataset(
        probes=list(data.probes),
        probe_ids=uniq[:, 0].astype(np.uint32),
        thetas=(uniq[:, 1 : 1 + m] + 0.5) * theta_bin_width,
        quadratures=(uniq[:, 1 + m :] + 0.5) * x_bin_width,
        weights=weights,
        config=data.config,
        binned=True,
    )
