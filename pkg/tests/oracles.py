"""Independent reference implementations used to pin expected values.

Everything here is deliberately written by a different route than the
package: matrix exponentials instead of combinatorics, arbitrary-precision
arithmetic instead of float recurrences, exhaustive enumeration instead of
vectorized masks.  Slow is fine; independent is the point.
"""

from typing import Tuple

import mpmath
import numpy as np
from scipy.linalg import expm, logm

from boxtomo import BeamSplitterModel, FockSpaceConfig, flat_index, multi_index


def annihilation(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim), dtype=np.complex128)
    for n in range(1, dim):
        a[n - 1, n] = np.sqrt(n)
    return a


def expm_bs_unitary(model: BeamSplitterModel, cutoff: int) -> np.ndarray:
    """Coupler unitary on the doubly-truncated two-mode space via expm.

    Works on a guard space with per-mode cutoff 2*cutoff so that every
    total-photon sector reachable from the target index set is closed; the
    returned block is therefore exact, not a truncation artifact.  Any
    branch of the matrix logarithm gives the same Fock unitary because the
    branches differ by number operators with integer spectrum.
    """
    guard = 2 * cutoff
    gdim = guard + 1
    a = annihilation(gdim)
    a1 = np.kron(a, np.eye(gdim))
    a2 = np.kron(np.eye(gdim), a)
    h = logm(np.asarray(model.mode_matrix, dtype=complex))
    gen = (
        h[0, 0] * a1.conj().T @ a1
        + h[0, 1] * a1.conj().T @ a2
        + h[1, 0] * a2.conj().T @ a1
        + h[1, 1] * a2.conj().T @ a2
    )
    u_guard = expm(gen)
    # global phase: e^{i phi n_tot}
    if model.global_phase != 0.0:
        n_tot = np.diag(a1.conj().T @ a1 + a2.conj().T @ a2).real
        u_guard = u_guard @ np.diag(np.exp(1j * model.global_phase * n_tot))
    cfg = FockSpaceConfig(2, cutoff)
    idx = [
        multi_index(f, cfg)[0] * gdim + multi_index(f, cfg)[1]
        for f in range(cfg.total_dim)
    ]
    return u_guard[np.ix_(idx, idx)]


def coherent_coeff_mp(alpha: complex, n: int, dps: int = 50) -> complex:
    """c_n = e^{-|a|^2/2} a^n / sqrt(n!) in arbitrary precision."""
    with mpmath.workdps(dps):
        a = mpmath.mpc(alpha)
        val = mpmath.e ** (-abs(a) ** 2 / 2) * a ** n / mpmath.sqrt(mpmath.factorial(n))
        return complex(val)


def hermite_gauss_mp(n: int, x: float, dps: int = 50) -> float:
    """psi_n(x) from the explicit Hermite-polynomial formula in high precision."""
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        val = (
            mpmath.hermite(n, xm)
            * mpmath.e ** (-(xm ** 2) / 2)
            / mpmath.sqrt(2 ** n * mpmath.factorial(n) * mpmath.sqrt(mpmath.pi))
        )
        return float(val)


def count_allowed_elements(modes: int, cutoff: int) -> Tuple[int, int]:
    """Exhaustive count of selection-rule-allowed tensor elements."""
    cfg = FockSpaceConfig(modes, cutoff)
    states = [multi_index(f, cfg) for f in range(cfg.total_dim)]
    allowed = 0
    total = 0
    for n in states:
        for j in states:
            for m in states:
                for k in states:
                    total += 1
                    if sum(j) - sum(k) == sum(n) - sum(m):
                        allowed += 1
    return allowed, total


def flat_index_slow(photons, config: FockSpaceConfig) -> int:
    """Positional reconstruction of the row-major flat index."""
    idx = 0
    for pos, n in enumerate(photons):
        idx += n * config.per_mode_dim ** (config.modes - 1 - pos)
    return idx


def coherent_image_amplitudes(model: BeamSplitterModel, alphas) -> np.ndarray:
    """Output coherent amplitudes: the effective matrix acting on the inputs."""
    return np.asarray(model.effective_matrix, dtype=complex) @ np.asarray(alphas, dtype=complex)
