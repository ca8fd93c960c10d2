"""Qudit depolarizing-channel primitives.

Weyl (generalized-Pauli) operator basis, Kraus decomposition of the
depolarizing channel, channel application, and density-matrix validation.
"""

from __future__ import annotations

import numpy as np

# Tolerances for density-matrix and Kraus-set invariants.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
COMPLETENESS_TOL = 1e-10


def check_depolarizing_params(theta: float, d: int) -> None:
    """Validate a (theta, d) parameter pair, raising ValueError on violation."""
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2:
        raise ValueError(f"qudit dimension must be an integer >= 2, got {d!r}")
    if not np.isfinite(theta) or not 0.0 <= theta <= 1.0:
        raise ValueError(f"depolarizing parameter must lie in [0, 1], got {theta!r}")


def weyl_operators(d: int) -> list[np.ndarray]:
    """Return the d^2 Weyl (shift-and-clock) unitaries of dimension d.

    Ordered as W[a*d + b] = X^a Z^b with X|j> = |j+1 mod d>,
    Z|j> = omega^j |j> and omega = exp(2*pi*i/d).  W[0] is the identity
    and the family is trace-orthogonal: tr(W_s^dag W_t) = d * delta_st.
    """
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2:
        raise ValueError(f"qudit dimension must be an integer >= 2, got {d!r}")
    omega = np.exp(2j * np.pi / d)
    shift = np.zeros((d, d), dtype=complex)
    for j in range(d):
        shift[(j + 1) % d, j] = 1.0
    clock = np.diag(omega ** np.arange(d))

    ops = []
    xa = np.eye(d, dtype=complex)
    for _a in range(d):
        w = xa
        for _b in range(d):
            ops.append(w)
            w = w @ clock
        xa = xa @ shift
    return ops


def depolarizing_kraus(theta: float, d: int) -> list[np.ndarray]:
    """Kraus operators {sqrt(q_ab) W_ab} of the qudit depolarizing channel.

    The channel acts as rho -> theta*rho + (1-theta)*tr(rho)*I/d.  The
    identity carries weight q_00 = theta + (1-theta)/d^2 and every other
    Weyl operator q_ab = (1-theta)/d^2, which makes the set complete:
    sum_i K_i^dag K_i = I.
    """
    check_depolarizing_params(theta, d)
    ops = weyl_operators(d)
    q_rest = (1.0 - theta) / d**2
    kraus = [np.sqrt(theta + q_rest) * ops[0]]
    kraus.extend(np.sqrt(q_rest) * w for w in ops[1:])
    return kraus


def apply_channel(kraus: list[np.ndarray], rho: np.ndarray) -> np.ndarray:
    """Apply a channel in Kraus form: rho -> sum_i K_i rho K_i^dag."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"state must be a square matrix, got shape {rho.shape}")
    d = rho.shape[0]
    for k in kraus:
        if k.shape != (d, d):
            raise ValueError(
                f"Kraus operator shape {k.shape} does not match state dimension {d}"
            )
    out = np.zeros_like(rho)
    for k in kraus:
        out += k @ rho @ k.conj().T
    return out


def kraus_completeness_defect(kraus: list[np.ndarray]) -> float:
    """Max entrywise deviation of sum_i K_i^dag K_i from the identity."""
    d = kraus[0].shape[0]
    acc = np.zeros((d, d), dtype=complex)
    for k in kraus:
        acc += k.conj().T @ k
    return float(np.max(np.abs(acc - np.eye(d))))


def basis_projector(d: int, index: int = 0) -> np.ndarray:
    """Pure density matrix |index><index| in dimension d."""
    if not 0 <= index < d:
        raise ValueError(f"basis index {index} out of range for dimension {d}")
    rho = np.zeros((d, d), dtype=complex)
    rho[index, index] = 1.0
    return rho


def validate_density_matrix(
    rho: np.ndarray,
    herm_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    psd_tol: float = PSD_TOL,
) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a density matrix.

    Returns the input coerced to a complex ndarray; raises ValueError
    naming the violated invariant otherwise.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace is {tr:.12g}, expected 1")
    evals = np.linalg.eigvalsh(rho)
    if float(evals.min()) < -psd_tol:
        raise ValueError(f"negative eigenvalue {evals.min():.3e}")
    return rho


def is_density_matrix(rho: np.ndarray, **tols) -> bool:
    """Boolean form of validate_density_matrix."""
    try:
        validate_density_matrix(rho, **tols)
    except ValueError:
        return False
    return True
