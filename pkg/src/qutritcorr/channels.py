"""Kraus-operator noise families for qutrits and their two-sided local action."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix

COMPLETENESS_TOL = 1e-12


class IncompleteKrausError(ValueError):
    """Raised when a channel that must be trace preserving is not."""

    def __init__(self, message: str, diagnostics: "KrausDiagnostics"):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class KrausChannel:
    """A set of d x d Kraus operators acting on one subsystem.

    Completeness (sum E^dag E = I) is deliberately not enforced here; use
    validate_kraus. That keeps defective operator sets constructible for
    diagnostics.
    """

    dim: int
    operators: tuple[np.ndarray, ...]
    family: str = "custom"
    gamma: float = float("nan")

    def __post_init__(self):
        if not self.operators:
            raise ValueError("channel needs at least one Kraus operator")
        frozen = []
        for op in self.operators:
            arr = np.array(op, dtype=complex)
            if arr.shape != (self.dim, self.dim):
                raise ValueError(f"operator shape {arr.shape} does not match dim {self.dim}")
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "operators", tuple(frozen))


@dataclass(frozen=True)
class KrausDiagnostics:
    ok: bool
    max_deviation: float


def validate_kraus(channel: KrausChannel, tol: float = COMPLETENESS_TOL) -> KrausDiagnostics:
    """Check trace preservation: max entry of |sum E^dag E - I|."""
    total = np.zeros((channel.dim, channel.dim), dtype=complex)
    for op in channel.operators:
        total += op.conj().T @ op
    dev = float(np.abs(total - np.eye(channel.dim)).max())
    return KrausDiagnostics(ok=dev <= tol, max_deviation=dev)


def gamma_of(q: float, t: float) -> float:
    """Decay parameter 1 - exp(-q t), clamped to [0, 1]."""
    if q < 0.0 or t < 0.0:
        raise ValueError(f"decay rate and time must be non-negative, got q={q}, t={t}")
    return min(1.0, max(0.0, 1.0 - float(np.exp(-q * t))))


def _check_gamma(gamma: float) -> None:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")


def shift_matrix(d: int = 3) -> np.ndarray:
    """Cyclic shift |j> -> |j+1 mod d>."""
    s = np.zeros((d, d), dtype=complex)
    s[(np.arange(d) + 1) % d, np.arange(d)] = 1.0
    return s


def clock_matrix(d: int = 3) -> np.ndarray:
    """Diagonal phase clock diag(1, w, w^2, ...) with w = exp(2 pi i / d)."""
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def dephasing_kraus(gamma: float, d: int = 3) -> KrausChannel:
    """Pure dephasing: populations untouched, coherences to level 0 damped by
    sqrt(1 - gamma), coherences among levels 1..d-1 damped by (1 - gamma)."""
    _check_gamma(gamma)
    keep = np.eye(d, dtype=complex)
    keep[1:, 1:] *= np.sqrt(1.0 - gamma)
    ops = [keep]
    for k in range(1, d):
        e = np.zeros((d, d), dtype=complex)
        e[k, k] = np.sqrt(gamma)
        ops.append(e)
    return KrausChannel(d, tuple(ops), family="dephasing", gamma=float(gamma))


def trit_flip_kraus(gamma: float) -> KrausChannel:
    """Cyclic level flips: identity with weight 1 - 2 gamma / 3, each
    nontrivial shift with weight gamma / 3."""
    _check_gamma(gamma)
    s = shift_matrix(3)
    ops = (
        np.sqrt(1.0 - 2.0 * gamma / 3.0) * np.eye(3, dtype=complex),
        np.sqrt(gamma / 3.0) * s,
        np.sqrt(gamma / 3.0) * (s @ s),
    )
    return KrausChannel(3, ops, family="trit-flip", gamma=float(gamma))


def trit_flip_kraus_unnormalized(gamma: float) -> KrausChannel:
    """Trit-flip variant with weight sqrt(gamma) on each shift.

    The operator sum is (1 + 4 gamma / 3) I, so the map is not trace
    preserving for gamma > 0. Kept only as a regression target for
    validate_kraus; nothing else may consume it.
    """
    _check_gamma(gamma)
    s = shift_matrix(3)
    ops = (
        np.sqrt(1.0 - 2.0 * gamma / 3.0) * np.eye(3, dtype=complex),
        np.sqrt(gamma) * s,
        np.sqrt(gamma) * (s @ s),
    )
    return KrausChannel(3, ops, family="custom", gamma=float(gamma))


def trit_phase_flip_kraus(gamma: float) -> KrausChannel:
    """Cyclic flips dressed with third-root-of-unity phases: identity with
    weight 1 - 2 gamma / 3 plus four phased permutations of weight gamma / 6."""
    _check_gamma(gamma)
    w = np.exp(2j * np.pi / 3.0)
    up = np.array([[0, 0, w], [1, 0, 0], [0, np.conj(w), 0]], dtype=complex)
    down = np.array([[0, np.conj(w), 0], [0, 0, w], [1, 0, 0]], dtype=complex)
    amp = np.sqrt(gamma / 6.0)
    ops = (
        np.sqrt(1.0 - 2.0 * gamma / 3.0) * np.eye(3, dtype=complex),
        amp * up,
        amp * up.conj(),
        amp * down,
        amp * down.conj(),
    )
    return KrausChannel(3, ops, family="trit-phase-flip", gamma=float(gamma))


def depolarizing_kraus(gamma: float) -> KrausChannel:
    """Uniform contraction rho -> (1 - gamma) rho + gamma I/3, realized by the
    shift/clock unitary basis with weight sqrt(gamma)/3 on each nontrivial
    element and sqrt(1 - 8 gamma / 9) on the identity."""
    _check_gamma(gamma)
    down = shift_matrix(3).conj().T  # inverse shift |j> -> |j-1 mod 3>
    clock = clock_matrix(3)
    scale = np.sqrt(gamma) / 3.0
    ops = [np.sqrt(1.0 - 8.0 * gamma / 9.0) * np.eye(3, dtype=complex)]
    for a in range(3):
        for b in range(3):
            if a == 0 and b == 0:
                continue
            ops.append(scale * (np.linalg.matrix_power(down, a)
                                @ np.linalg.matrix_power(clock, b)))
    return KrausChannel(3, tuple(ops), family="depolarizing", gamma=float(gamma))


def identity_kraus(d: int = 3) -> KrausChannel:
    return KrausChannel(d, (np.eye(d, dtype=complex),), family="custom", gamma=0.0)


_FAMILY_BUILDERS = {
    "dephasing": dephasing_kraus,
    "trit-flip": trit_flip_kraus,
    "trit-phase-flip": trit_phase_flip_kraus,
    "depolarizing": depolarizing_kraus,
}

CHANNEL_FAMILIES = tuple(_FAMILY_BUILDERS)


def kraus_for_family(family: str, gamma: float) -> KrausChannel:
    try:
        builder = _FAMILY_BUILDERS[family]
    except KeyError:
        known = ", ".join(CHANNEL_FAMILIES)
        raise ValueError(f"unknown channel family {family!r}; known families: {known}") from None
    return builder(gamma)


def apply_channel(channel: KrausChannel, matrix: np.ndarray) -> np.ndarray:
    """Single-system Kraus action sum_i E_i M E_i^dag."""
    mat = np.asarray(matrix, dtype=complex)
    out = np.zeros_like(mat)
    for op in channel.operators:
        out += op @ mat @ op.conj().T
    return out


def _lifted(ops: tuple[np.ndarray, ...], other_dim: int, side: str) -> np.ndarray:
    # stack of kron(E, I) (side A) or kron(I, E) (side B) without per-op kron calls
    stack = np.stack(ops)
    eye = np.eye(other_dim)
    if side == "A":
        big = np.einsum("kab,cd->kacbd", stack, eye)
    else:
        big = np.einsum("kab,cd->kcadb", stack, eye)
    n = stack.shape[1] * other_dim
    return big.reshape(len(ops), n, n)


def apply_local_channels(rho: DensityMatrix, channel_a: KrausChannel,
                         channel_b: KrausChannel) -> DensityMatrix:
    """Apply channel_a to subsystem A and channel_b to subsystem B."""
    d1, d2 = rho.dims
    if channel_a.dim != d1:
        raise ValueError(f"A-side channel dim {channel_a.dim} != subsystem dim {d1}")
    if channel_b.dim != d2:
        raise ValueError(f"B-side channel dim {channel_b.dim} != subsystem dim {d2}")
    for side, ch in (("A", channel_a), ("B", channel_b)):
        diag = validate_kraus(ch)
        if not diag.ok:
            raise IncompleteKrausError(
                f"{side}-side Kraus set is not trace preserving "
                f"(completeness deviation {diag.max_deviation:.3e})", diag)
    mat = rho.matrix
    for side, ch, other in (("A", channel_a, d2), ("B", channel_b, d1)):
        big = _lifted(ch.operators, other, side)
        tmp = big @ mat  # batched (k, n, n)
        mat = np.tensordot(tmp, big.conj(), axes=([0, 2], [0, 2]))
    return DensityMatrix(mat, rho.dims)


def evolve(rho0: DensityMatrix, family_a: str, family_b: str,
           q_a: float, q_b: float, t: float) -> DensityMatrix:
    """Two-sided noise at the decay parameters gamma = 1 - exp(-q t) reached
    by time t."""
    channel_a = kraus_for_family(family_a, gamma_of(q_a, t))
    channel_b = kraus_for_family(family_b, gamma_of(q_b, t))
    return apply_local_channels(rho0, channel_a, channel_b)
