"""Dense complex-matrix primitives for small bipartite qudit systems.

Composite indices follow the row-major, left-factor-major convention: basis
state (i, j) of a d1 x d2 system sits at index i * d2 + j, matching np.kron.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class ValidationError(ValueError):
    """A matrix failed a structural invariant.

    violations maps the invariant name ("hermiticity", "trace", "psd", ...)
    to the measured violation magnitude.
    """

    def __init__(self, message: str, violations: dict[str, float] | None = None):
        super().__init__(message)
        self.violations = dict(violations or {})


def _density_violations(mat: np.ndarray, dim: int) -> dict[str, float]:
    out: dict[str, float] = {}
    if mat.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat.view(float))):
        raise ValueError("matrix contains non-finite entries")
    herm = float(np.abs(mat - mat.conj().T).max())
    if herm > HERMITICITY_TOL:
        out["hermiticity"] = herm
    trace = float(abs(mat.trace() - 1.0))
    if trace > TRACE_TOL:
        out["trace"] = trace
    if "hermiticity" not in out:
        # eigvalsh is only meaningful once Hermiticity holds
        low = float(np.linalg.eigvalsh(mat)[0])
        if low < -PSD_TOL:
            out["psd"] = -low
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """Certified quantum state on a d1 x d2 bipartite system.

    Construction validates Hermiticity (1e-12), unit trace (1e-12) and
    positivity (smallest eigenvalue >= -1e-10) and freezes the array, so any
    DensityMatrix in circulation is a valid state.
    """

    matrix: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        d1, d2 = (int(d) for d in self.dims)
        if d1 < 1 or d2 < 1:
            raise ValueError(f"subsystem dimensions must be positive, got {self.dims}")
        mat = np.array(self.matrix, dtype=complex)
        violations = _density_violations(mat, d1 * d2)
        if violations:
            detail = ", ".join(f"{k} off by {v:.3e}" for k, v in violations.items())
            raise ValidationError(f"not a density matrix: {detail}", violations)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", (d1, d2))

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]


def validate_density_matrix(matrix: np.ndarray, dims: tuple[int, int]) -> DensityMatrix:
    """Certify a raw matrix as a density matrix or raise ValidationError."""
    return DensityMatrix(np.asarray(matrix, dtype=complex), tuple(dims))


def make_bell_state(d: int) -> DensityMatrix:
    """Maximally entangled state (1/sqrt(d)) sum_i |ii> as a density matrix."""
    if d < 2:
        raise ValueError(f"need subsystem dimension >= 2, got {d}")
    amp = np.zeros(d * d, dtype=complex)
    amp[(d + 1) * np.arange(d)] = 1.0 / np.sqrt(d)
    return DensityMatrix(np.outer(amp, amp.conj()), (d, d))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the package's index convention."""
    return np.kron(np.asarray(a), np.asarray(b))


def partial_transpose(rho: DensityMatrix, subsystem: str = "A") -> np.ndarray:
    """Transpose one subsystem in place; the result is generally not a state."""
    d1, d2 = rho.dims
    r4 = rho.matrix.reshape(d1, d2, d1, d2)
    if subsystem == "A":
        out = r4.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        out = r4.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return out.reshape(d1 * d2, d1 * d2).copy()


def partial_trace(rho: DensityMatrix, keep: str = "A") -> np.ndarray:
    """Reduced state of one subsystem."""
    d1, d2 = rho.dims
    r4 = rho.matrix.reshape(d1, d2, d1, d2)
    if keep == "A":
        return np.einsum("abcb->ac", r4)
    if keep == "B":
        return np.einsum("abad->bd", r4)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def hermitian_eigenvalues(matrix: np.ndarray, hermiticity_tol: float = 1e-10) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted non-increasing."""
    mat = np.asarray(matrix)
    dev = float(np.abs(mat - mat.conj().T).max())
    if dev > hermiticity_tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return np.linalg.eigvalsh(mat)[::-1]


def trace_norm(matrix: np.ndarray) -> float:
    """Sum of singular values."""
    mat = np.asarray(matrix)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    return float(np.linalg.svd(mat, compute_uv=False).sum())


@dataclass(frozen=True)
class GeneratorBasis:
    """Traceless Hermitian su(d) generators with Tr(g_k g_l) = 2 delta_kl."""

    dim: int
    generators: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, k: int) -> np.ndarray:
        return self.generators[k]


@lru_cache(maxsize=None)
def su_generators(d: int) -> GeneratorBasis:
    """Generalized Gell-Mann basis of su(d).

    Ordering: symmetric off-diagonal pairs (j < k, lexicographic), the
    matching antisymmetric pairs, then the d - 1 diagonal generators. For
    d = 2 this is exactly Pauli X, Y, Z.
    """
    if d < 2:
        raise ValueError(f"need dimension >= 2, got {d}")
    gens: list[np.ndarray] = []
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = g[k, j] = 1.0
        gens.append(g)
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = -1.0j
        g[k, j] = 1.0j
        gens.append(g)
    for l in range(1, d):
        g = np.zeros((d, d), dtype=complex)
        g[np.arange(l), np.arange(l)] = 1.0
        g[l, l] = -float(l)
        gens.append(np.sqrt(2.0 / (l * (l + 1))) * g)
    for g in gens:
        g.setflags(write=False)
    return GeneratorBasis(d, tuple(gens))


def random_density_matrix(d1: int, d2: int = 1, rank: int | None = None,
                          rng: np.random.Generator | int | None = None) -> DensityMatrix:
    """Ginibre-sampled random state on a d1 x d2 system (full rank by default)."""
    rng = np.random.default_rng(rng)
    dim = d1 * d2
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must be in 1..{dim}, got {rank}")
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / mat.trace().real, (d1, d2))


def random_unitary(d: int, rng: np.random.Generator | int | None = None) -> np.ndarray:
    """Haar-distributed d x d unitary (QR of a Ginibre matrix, phases fixed)."""
    rng = np.random.default_rng(rng)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))
