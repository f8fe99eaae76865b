"""Process tensors in the Jamiolkowski representation.

A process maps input density matrices to output ones through a rank-4M
tensor E^{n,m}_{j,k} (n, m input multi-indices; j, k output).  It is stored
as one dense Hermitian matrix on the doubled space H_in (x) H_out with the
input factor most significant:

    jamiolkowski[n_flat * D + j_flat, m_flat * D + k_flat] = E^{n,m}_{j,k}

where D = config.total_dim.  Under this layout the trace-preservation
condition reads: partial trace over the output factor equals the identity
on the input factor.  A deterministic process is physical when the matrix
is Hermitian, positive semidefinite, and trace-preserving.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from .errors import ArtifactMismatchError, PhysicalityError
from .fock import FockSpaceConfig, MultiIndex, photon_totals


@dataclass
class DensityMatrix:
    """Density matrix on the multimode Fock space of ``config``."""

    matrix: np.ndarray
    config: FockSpaceConfig

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        d = self.config.total_dim
        if self.matrix.shape != (d, d):
            raise ValueError(f"matrix shape {self.matrix.shape}, expected ({d}, {d})")

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))


@dataclass
class ProcessTensor:
    """Jamiolkowski operator of a process, input-major layout (see module doc)."""

    jamiolkowski: np.ndarray
    config: FockSpaceConfig

    def __post_init__(self) -> None:
        self.jamiolkowski = np.asarray(self.jamiolkowski, dtype=np.complex128)
        d2 = self.config.total_dim ** 2
        if self.jamiolkowski.shape != (d2, d2):
            raise ValueError(
                f"matrix shape {self.jamiolkowski.shape}, expected ({d2}, {d2})"
            )

    def as_rank4(self) -> np.ndarray:
        """View as E[n, j, m, k] with flat multimode indices."""
        d = self.config.total_dim
        return self.jamiolkowski.reshape(d, d, d, d)


@dataclass(frozen=True)
class BeamSplitterModel:
    """Ground-truth two-mode linear coupler.

    ``mode_matrix`` transforms annihilation operators in the Heisenberg
    picture (so coherent amplitudes transform by the same matrix);
    ``global_phase`` is an extra phase common to both output modes, exposed
    as a free parameter.  The matrix must be unitary within 1e-12.
    """

    mode_matrix: np.ndarray
    global_phase: float = 0.0

    def __post_init__(self) -> None:
        m = np.array(self.mode_matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"mode_matrix shape {m.shape}, expected (2, 2)")
        if np.abs(m @ m.conj().T - np.eye(2)).max() > 1e-12:
            raise ValueError("mode_matrix is not unitary within 1e-12")
        m.setflags(write=False)
        object.__setattr__(self, "mode_matrix", m)

    @property
    def transmittance(self) -> float:
        """Power transmittance, squared magnitude of the diagonal element."""
        return float(abs(self.mode_matrix[0, 0]) ** 2)

    @property
    def effective_matrix(self) -> np.ndarray:
        return np.exp(1j * self.global_phase) * self.mode_matrix

    @classmethod
    def symmetric(cls, global_phase: float = 0.0) -> "BeamSplitterModel":
        """The 50/50 coupler, mode matrix [[1+i, 1-i], [1-i, 1+i]] / 2."""
        m = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
        return cls(m, global_phase)

    @classmethod
    def from_transmittance(cls, t: float, global_phase: float = 0.0) -> "BeamSplitterModel":
        """Coupler of power transmittance t.

        Parameterized as e^{i pi/4} [[cos h, -i sin h], [-i sin h, cos h]]
        with h = arccos(sqrt(t)); the common quarter-pi phase makes the
        family pass exactly through symmetric() at t = 1/2.
        """
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"transmittance must lie in [0, 1], got {t}")
        h = np.arccos(np.sqrt(t))
        m = np.exp(0.25j * np.pi) * np.array(
            [[np.cos(h), -1j * np.sin(h)], [-1j * np.sin(h), np.cos(h)]]
        )
        return cls(m, global_phase)

    @classmethod
    def identity(cls, global_phase: float = 0.0) -> "BeamSplitterModel":
        return cls(np.eye(2, dtype=np.complex128), global_phase)


def identity_tensor(config: FockSpaceConfig) -> ProcessTensor:
    """Jamiolkowski operator of the identity process (rank one)."""
    u = np.eye(config.total_dim, dtype=np.complex128).reshape(-1)
    return ProcessTensor(np.outer(u, u.conj()), config)


def bs_fock_unitary(model: BeamSplitterModel, config: FockSpaceConfig) -> np.ndarray:
    """Fock-basis matrix U[j_flat, n_flat] of the coupler on two truncated modes.

    Matrix elements come from the combinatorial photon-routing sum

        <j1 j2|U|n1 n2> = sqrt(j1! j2! / (n1! n2!)) *
            sum_{p+q=j1, p<=n1, q<=n2} C(n1,p) C(n2,q)
                S11^p S21^{n1-p} S12^q S22^{n2-q}

    with S the effective mode matrix.  U conserves total photon number; on
    sectors whose total exceeds the cutoff it is only subunitary because
    part of each sector is truncated away.

    Raises:
        ValueError: config.modes != 2.
    """
    if config.modes != 2:
        raise ValueError(f"coupler unitary needs modes == 2, got {config.modes}")
    s = model.effective_matrix
    dim = config.per_mode_dim
    fact = np.cumprod(np.concatenate(([1.0], np.arange(1, 2 * config.cutoff + 1))))
    binom = np.zeros((dim, dim))
    for n in range(dim):
        for p in range(n + 1):
            binom[n, p] = fact[n] / (fact[p] * fact[n - p])

    u = np.zeros((config.total_dim, config.total_dim), dtype=np.complex128)
    for n1 in range(dim):
        for n2 in range(dim):
            col = n1 * dim + n2
            total = n1 + n2
            for j1 in range(dim):
                j2 = total - j1
                if not 0 <= j2 < dim:
                    continue
                acc = 0.0 + 0.0j
                # p photons of the n1 input reach output 1, q of the n2 input
                for p in range(max(0, j1 - n2), min(n1, j1) + 1):
                    q = j1 - p
                    acc += (
                        binom[n1, p]
                        * binom[n2, q]
                        * s[0, 0] ** p
                        * s[1, 0] ** (n1 - p)
                        * s[0, 1] ** q
                        * s[1, 1] ** (n2 - q)
                    )
                scale = np.sqrt(fact[j1] * fact[j2] / (fact[n1] * fact[n2]))
                u[j1 * dim + j2, col] = scale * acc
    return u


def build_bs_tensor(model: BeamSplitterModel, config: FockSpaceConfig) -> ProcessTensor:
    """Rank-1 Jamiolkowski operator of the coupler process."""
    u = bs_fock_unitary(model, config)
    vec = u.T.reshape(-1)  # vec[(n, j)] = U[j, n]
    return ProcessTensor(np.outer(vec, vec.conj()), config)


def apply_process(tensor: ProcessTensor, rho_in: DensityMatrix) -> DensityMatrix:
    """Output density matrix rho_out[j,k] = sum_{n,m} E^{n,m}_{j,k} rho_in[n,m].

    Raises:
        ArtifactMismatchError: tensor and state configs differ.
    """
    if tensor.config != rho_in.config:
        raise ArtifactMismatchError(
            f"tensor config {tensor.config} vs state config {rho_in.config}"
        )
    out = np.einsum("njmk,nm->jk", tensor.as_rank4(), rho_in.matrix)
    return DensityMatrix(out, tensor.config)


def partial_trace_output(tensor: ProcessTensor) -> np.ndarray:
    """Tr over the output factor, an operator on the input space."""
    return np.einsum("njmj->nm", tensor.as_rank4())


def trace_preservation_defect(tensor: ProcessTensor) -> float:
    """Operator-norm distance between the output partial trace and identity."""
    g = partial_trace_output(tensor)
    return float(np.linalg.norm(g - np.eye(tensor.config.total_dim), 2))


def hermiticity_defect(tensor: ProcessTensor) -> float:
    """Largest elementwise deviation from Hermitian symmetry."""
    e = tensor.jamiolkowski
    return float(np.abs(e - e.conj().T).max())


def min_eigenvalue(tensor: ProcessTensor) -> float:
    e = tensor.jamiolkowski
    return float(np.linalg.eigvalsh(0.5 * (e + e.conj().T))[0])


def phase_allowed(n: MultiIndex, m: MultiIndex, j: MultiIndex, k: MultiIndex) -> bool:
    """Selection rule from global-phase invariance: sum(j)-sum(k) = sum(n)-sum(m)."""
    return sum(j) - sum(k) == sum(n) - sum(m)


@lru_cache(maxsize=8)
def allowed_mask(config: FockSpaceConfig) -> np.ndarray:
    """Boolean mask over the Jamiolkowski matrix of selection-rule-allowed elements."""
    totals = photon_totals(config)
    # charge of a (state, output) row pair: sum(j) - sum(n)
    charge = (totals[None, :] - totals[:, None]).reshape(-1)
    mask = charge[:, None] == charge[None, :]
    mask.setflags(write=False)
    return mask


def phase_twirl(tensor: ProcessTensor) -> ProcessTensor:
    """Zero every element that violates the selection rule.

    Equivalent to averaging the process over global phase rotations, so it
    preserves Hermiticity, positivity, and the output partial trace.
    """
    return ProcessTensor(tensor.jamiolkowski * allowed_mask(tensor.config), tensor.config)


def truncate_tensor(tensor: ProcessTensor, new_cutoff: int) -> ProcessTensor:
    """Restrict all four indices to photon numbers <= new_cutoff.

    No renormalization is applied; truncated tensors of deterministic
    processes are in general no longer exactly trace-preserving, and the
    defect is reported rather than hidden.

    Raises:
        ValueError: new_cutoff exceeds the current cutoff.
    """
    old = tensor.config
    if new_cutoff > old.cutoff:
        raise ValueError(f"new cutoff {new_cutoff} exceeds current {old.cutoff}")
    if new_cutoff == old.cutoff:
        return ProcessTensor(tensor.jamiolkowski.copy(), old)
    new = FockSpaceConfig(old.modes, new_cutoff)
    # flat state indices of the old space whose digits all fit the new cutoff;
    # ascending old order coincides with the new row-major order
    keep = [
        s
        for s in range(old.total_dim)
        if all(d <= new_cutoff for d in _digits(s, old))
    ]
    keep = np.asarray(keep)
    rows = (keep[:, None] * old.total_dim + keep[None, :]).reshape(-1)
    sub = tensor.jamiolkowski[np.ix_(rows, rows)]
    return ProcessTensor(sub, new)


def _digits(flat: int, config: FockSpaceConfig) -> Tuple[int, ...]:
    out = []
    for _ in range(config.modes):
        flat, d = divmod(flat, config.per_mode_dim)
        out.append(d)
    return tuple(reversed(out))


def process_fidelity(a: ProcessTensor, b: ProcessTensor, squared: bool = False) -> float:
    """Fidelity of the trace-normalized Jamiolkowski operators.

    Computes Tr sqrt(sqrt(r_a) r_b sqrt(r_a)) with r_i the operators scaled
    to unit trace; eigenvalues below zero (reconstruction noise) are clipped
    before the square roots.  The unsquared value is the default; pass
    squared=True for its square.

    Raises:
        ArtifactMismatchError: configs differ.
    """
    if a.config != b.config:
        raise ArtifactMismatchError(f"configs differ: {a.config} vs {b.config}")
    ra = _normalized_state(a.jamiolkowski)
    rb = _normalized_state(b.jamiolkowski)
    wa, va = np.linalg.eigh(ra)
    sqrt_ra = (va * np.sqrt(np.clip(wa, 0.0, None))) @ va.conj().T
    inner = sqrt_ra @ rb @ sqrt_ra
    w = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    f = float(np.sqrt(np.clip(w, 0.0, None)).sum())
    f = min(f, 1.0)
    return f * f if squared else f


def _normalized_state(matrix: np.ndarray) -> np.ndarray:
    h = 0.5 * (matrix + matrix.conj().T)
    tr = np.real(np.trace(h))
    if tr <= 0:
        raise PhysicalityError(f"operator trace {tr} is not positive")
    return h / tr


def physicality_report(tensor: ProcessTensor) -> dict:
    """Hermiticity, positivity, and trace-preservation defects in one dict."""
    e = tensor.jamiolkowski
    herm = float(np.abs(e - e.conj().T).max())
    w = np.linalg.eigvalsh(0.5 * (e + e.conj().T))
    return {
        "hermiticity_defect": herm,
        "min_eigenvalue": float(w[0]),
        "max_eigenvalue": float(w[-1]),
        "trace": float(np.real(np.trace(e))),
        "trace_preservation_defect": trace_preservation_defect(tensor),
    }


def ensure_physical(
    tensor: ProcessTensor,
    herm_tol: float = 1e-10,
    eig_tol: float = 1e-8,
    tp_tol: float = 1e-6,
    require_trace_preserving: bool = True,
) -> dict:
    """Raise PhysicalityError unless the tensor passes all physicality checks.

    The positivity bound is relative: min eigenvalue >= -eig_tol * max
    eigenvalue.  Truncated report tensors should be checked with
    require_trace_preserving=False since truncation removes trace mass.

    Returns:
        The physicality_report dict on success.
    """
    rep = physicality_report(tensor)
    problems = []
    if rep["hermiticity_defect"] > herm_tol:
        problems.append(f"hermiticity defect {rep['hermiticity_defect']:.3e}")
    if rep["min_eigenvalue"] < -eig_tol * max(rep["max_eigenvalue"], 0.0):
        problems.append(f"min eigenvalue {rep['min_eigenvalue']:.3e}")
    if require_trace_preserving and rep["trace_preservation_defect"] > tp_tol:
        problems.append(
            f"trace preservation defect {rep['trace_preservation_defect']:.3e}"
        )
    if problems:
        raise PhysicalityError("; ".join(problems))
    return rep
