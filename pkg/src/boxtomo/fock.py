"""Truncated Fock-space primitives.

Conventions used by every other module:

* Each of the M modes is truncated at ``cutoff`` photons, so one mode lives
  in dimension ``cutoff + 1`` and M modes in ``(cutoff + 1)**M``.
* Multimode Fock states are labelled by tuples ``(n_1, ..., n_M)``; the flat
  index is row-major with mode 1 as the most significant digit in base
  ``cutoff + 1``.  This ordering also fixes the byte order of the file
  formats.
* Quadratures are scaled so the vacuum variance is 1/2, i.e.
  ``x = (a + a^dag) / sqrt(2)``; the n-photon state then has quadrature
  variance n + 1/2.
* The quadrature eigenvector at local-oscillator phase ``theta`` has Fock
  components ``<n|x,theta> = exp(+1j*n*theta) * psi_n(x)`` where ``psi_n``
  is the n-th Hermite-Gauss function.  With this sign a coherent state of
  amplitude ``alpha`` yields samples with mean
  ``sqrt(2) * Re(alpha * exp(-1j*theta))``, which pins the convention.
"""

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

MultiIndex = Tuple[int, ...]

SQRT2 = float(np.sqrt(2.0))


@dataclass(frozen=True)
class FockSpaceConfig:
    """Mode count and per-mode photon cutoff; fixes every tensor shape.

    Attributes:
        modes: number of optical modes M, at least 1.
        cutoff: maximum photon number N per mode, at least 0.
    """

    modes: int
    cutoff: int

    def __post_init__(self) -> None:
        if self.modes < 1:
            raise ValueError(f"modes must be >= 1, got {self.modes}")
        if self.cutoff < 0:
            raise ValueError(f"cutoff must be >= 0, got {self.cutoff}")

    @property
    def per_mode_dim(self) -> int:
        return self.cutoff + 1

    @property
    def total_dim(self) -> int:
        return self.per_mode_dim ** self.modes


@dataclass(frozen=True)
class CoherentProbe:
    """A multimode coherent probe state given by its complex amplitudes."""

    amplitudes: Tuple[complex, ...]
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in self.amplitudes))

    @property
    def modes(self) -> int:
        return len(self.amplitudes)

    @property
    def total_energy(self) -> float:
        """Mean total photon number, sum of |alpha_m|^2."""
        return float(sum(abs(a) ** 2 for a in self.amplitudes))


@dataclass
class StateVector:
    """Fock-basis vector on the full multimode space.

    ``normalized`` distinguishes proper states from improper quadrature
    eigenvectors, which carry density (not probability) normalization.
    """

    coefficients: np.ndarray
    config: FockSpaceConfig
    normalized: bool = False

    def __post_init__(self) -> None:
        self.coefficients = np.asarray(self.coefficients, dtype=np.complex128)
        if self.coefficients.shape != (self.config.total_dim,):
            raise ValueError(
                f"coefficient length {self.coefficients.shape} does not match "
                f"total_dim {self.config.total_dim}"
            )
        if self.normalized:
            norm = np.linalg.norm(self.coefficients)
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"normalized flag set but norm is {norm!r}")


def flat_index(photons: Sequence[int], config: FockSpaceConfig) -> int:
    """Row-major flat index of a multimode Fock state.

    Mode 1 is the most significant digit in base ``cutoff + 1``.

    Raises:
        IndexError: entry negative, above the cutoff, or wrong mode count.
    """
    if len(photons) != config.modes:
        raise IndexError(f"expected {config.modes} entries, got {len(photons)}")
    flat = 0
    for n in photons:
        if not 0 <= n <= config.cutoff:
            raise IndexError(f"photon number {n} outside [0, {config.cutoff}]")
        flat = flat * config.per_mode_dim + int(n)
    return flat


def multi_index(flat: int, config: FockSpaceConfig) -> MultiIndex:
    """Inverse of flat_index."""
    if not 0 <= flat < config.total_dim:
        raise IndexError(f"flat index {flat} outside [0, {config.total_dim})")
    digits = []
    for _ in range(config.modes):
        flat, n = divmod(flat, config.per_mode_dim)
        digits.append(n)
    return tuple(reversed(digits))


def photon_totals(config: FockSpaceConfig) -> np.ndarray:
    """Total photon number for every flat index, shape (total_dim,)."""
    per_mode = np.arange(config.per_mode_dim)
    totals = np.zeros(1, dtype=np.int64)
    for _ in range(config.modes):
        totals = (totals[:, None] + per_mode[None, :]).reshape(-1)
    return totals


def coherent_fock_coeffs(alpha: complex, cutoff: int) -> np.ndarray:
    """Truncated Fock expansion of a coherent state, c_n = e^{-|a|^2/2} a^n / sqrt(n!).

    The vector is not renormalized here; renormalization happens once at the
    multimode level (see multimode_coherent).
    """
    c = np.zeros(cutoff + 1, dtype=np.complex128)
    c[0] = np.exp(-0.5 * abs(alpha) ** 2)
    for n in range(cutoff):
        c[n + 1] = c[n] * alpha / np.sqrt(n + 1.0)
    return c


def multimode_coherent(probe: CoherentProbe, config: FockSpaceConfig) -> StateVector:
    """Tensor product of per-mode coherent vectors, renormalized to unit norm.

    Raises:
        ValueError: probe mode count differs from the config.
    """
    if probe.modes != config.modes:
        raise ValueError(f"probe has {probe.modes} modes, config has {config.modes}")
    coeffs = np.ones(1, dtype=np.complex128)
    for alpha in probe.amplitudes:
        coeffs = np.kron(coeffs, coherent_fock_coeffs(alpha, config.cutoff))
    coeffs /= np.linalg.norm(coeffs)
    return StateVector(coeffs, config, normalized=True)


def hermite_gauss(n: int, x) -> np.ndarray:
    """n-th harmonic-oscillator eigenfunction psi_n(x), vacuum variance 1/2.

    Evaluated by the stable three-term recurrence on psi_n directly,
    psi_{n+1} = x sqrt(2/(n+1)) psi_n - sqrt(n/(n+1)) psi_{n-1},
    which avoids the overflow of raw Hermite polynomials.  Accepts scalar
    or array x.

    Raises:
        ValueError: n negative.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    x = np.asarray(x, dtype=np.float64)
    return hermite_gauss_table(np.atleast_1d(x), n)[..., n].reshape(x.shape)[()]


def hermite_gauss_table(xs: np.ndarray, cutoff: int) -> np.ndarray:
    """Matrix psi_n(x) for all n <= cutoff at once, shape (len(xs), cutoff+1)."""
    xs = np.asarray(xs, dtype=np.float64)
    table = np.empty(xs.shape + (cutoff + 1,), dtype=np.float64)
    table[..., 0] = np.pi ** -0.25 * np.exp(-0.5 * xs * xs)
    if cutoff >= 1:
        table[..., 1] = xs * SQRT2 * table[..., 0]
    for n in range(1, cutoff):
        table[..., n + 1] = xs * np.sqrt(2.0 / (n + 1)) * table[..., n] - np.sqrt(
            n / (n + 1.0)
        ) * table[..., n - 1]
    return table


def quadrature_eigenvector(theta: float, x: float, cutoff: int) -> np.ndarray:
    """Fock components <n|x,theta> = e^{i n theta} psi_n(x) for n <= cutoff."""
    psi = hermite_gauss_table(np.atleast_1d(np.float64(x)), cutoff)[0]
    phases = np.exp(1j * theta * np.arange(cutoff + 1))
    return phases * psi


def multimode_projector_vector(
    thetas: Sequence[float], xs: Sequence[float], config: FockSpaceConfig
) -> StateVector:
    """Tensor product of per-mode quadrature eigenvectors.

    The result is an improper eigenvector and is deliberately not
    normalized; squared overlaps with it are probability densities.

    Raises:
        ValueError: vector lengths differ from the mode count.
    """
    if len(thetas) != config.modes or len(xs) != config.modes:
        raise ValueError(
            f"need {config.modes} phases and quadratures, "
            f"got {len(thetas)} and {len(xs)}"
        )
    coeffs = np.ones(1, dtype=np.complex128)
    for theta, x in zip(thetas, xs):
        coeffs = np.kron(coeffs, quadrature_eigenvector(theta, x, config.cutoff))
    return StateVector(coeffs, config, normalized=False)
