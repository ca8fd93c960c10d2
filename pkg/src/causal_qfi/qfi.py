"""Quantum Fisher information engines.

A numerical engine diagonalizes the switch output state and evaluates the
standard eigenbasis expression, covering every order combination.  Closed
forms cover the combinations whose output has theta-independent
eigenvectors: the definite-order baseline, uniform pairs (one form per
block label), the all-D triple class, the quadruple class with two F
couplings, and the full six-order superposition.  Each closed form exists
twice -- once assembled from block eigenvalues, once as an independently
transcribed rational function -- and the verification harness requires
the two to agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import blocks, channels, switch
from .switch import OrderCombination

#: Eigenvalue pairs with lambda_i + lambda_j below SUPPORT_RTOL * max(lambda)
#: are treated as outside the support of rho.
SUPPORT_RTOL = 1e-12

HERM_INPUT_TOL = 1e-10

#: Signatures of the combination classes with a closed-form QFI.
M3_CLOSED_SIGNATURE = ("D", "D", "D")
M4_CLOSED_SIGNATURE = ("B", "B", "D", "D", "F", "F")


@dataclass(frozen=True)
class QfiResult:
    """A QFI value tagged with how and where it was computed."""

    value: float
    method: str  # "analytic" or "numeric"
    m: int
    ident: str  # combination id ("124", ...) or class tag ("m2:B", ...)
    theta: float
    d: int


def _require_hermitian(mat: np.ndarray, name: str) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {mat.shape}")
    defect = float(np.max(np.abs(mat - mat.conj().T)))
    if defect > HERM_INPUT_TOL:
        raise ValueError(f"{name} is not Hermitian: max |M - M^dag| = {defect:.3e}")
    return mat


def _check_estimable(theta: float) -> None:
    if not 0.0 <= theta < 1.0:
        raise ValueError(
            f"QFI is defined here for theta in [0, 1); got {theta!r} "
            "(at theta = 1 the output state is pure and the closed forms diverge)"
        )


def sld_numeric(rho: np.ndarray, drho: np.ndarray, tol_support: float | None = None) -> np.ndarray:
    """Symmetric logarithmic derivative L solving L rho + rho L = 2 drho.

    Built in the eigenbasis of rho: L_ij = 2 <i|drho|j> / (l_i + l_j) when
    the eigenvalue sum exceeds the support cutoff, 0 otherwise.  The cutoff
    defaults to SUPPORT_RTOL times the largest eigenvalue.
    """
    rho = _require_hermitian(rho, "rho")
    drho = _require_hermitian(drho, "drho")
    if rho.shape != drho.shape:
        raise ValueError(f"shape mismatch: rho {rho.shape} vs drho {drho.shape}")
    evals, vecs = np.linalg.eigh(rho)
    if tol_support is None:
        tol_support = SUPPORT_RTOL * float(evals.max())
    dmat = vecs.conj().T @ drho @ vecs
    denom = evals[:, None] + evals[None, :]
    on_support = denom > tol_support
    lmat = np.where(on_support, 2.0 * dmat / np.where(on_support, denom, 1.0), 0.0)
    return vecs @ lmat @ vecs.conj().T


def qfi_from_state(rho: np.ndarray, drho: np.ndarray, tol_support: float | None = None) -> float:
    """QFI tr(rho L^2) in the eigenbasis form sum 2|<i|drho|j>|^2/(l_i + l_j)."""
    rho = _require_hermitian(rho, "rho")
    drho = _require_hermitian(drho, "drho")
    if rho.shape != drho.shape:
        raise ValueError(f"shape mismatch: rho {rho.shape} vs drho {drho.shape}")
    evals, vecs = np.linalg.eigh(rho)
    if tol_support is None:
        tol_support = SUPPORT_RTOL * float(evals.max())
    dmat = vecs.conj().T @ drho @ vecs
    denom = evals[:, None] + evals[None, :]
    on_support = denom > tol_support
    terms = 2.0 * np.abs(dmat) ** 2 / np.where(on_support, denom, 1.0)
    return float(np.sum(terms, where=on_support))


def qfi_numeric(
    comb: OrderCombination, theta: float, d: int, derivative: str = "analytic"
) -> QfiResult:
    """Numerical QFI of a combination's output state.

    Works for every combination, including those without a closed form.
    The state comes from the brute-force simulator; its derivative from
    the block model ("analytic", default) or from central differences
    ("fd").  theta = 1 is refused: the output collapses to a pure state
    and the result would depend on the support cutoff.
    """
    _check_estimable(theta)
    rho = switch.switch_output(comb, theta, d)
    if derivative == "analytic":
        drho = blocks.drho_analytic(comb, theta, d)
    elif derivative == "fd":
        drho = switch.drho_fd(comb, theta, d)
    else:
        raise ValueError(f"derivative must be 'analytic' or 'fd', got {derivative!r}")
    value = qfi_from_state(rho, drho)
    return QfiResult(value, "numeric", comb.m, comb.ident, float(theta), int(d))


def qfi2_numeric(theta: float, d: int, h: float = 1e-5) -> QfiResult:
    """Numerical QFI of the two-channel, two-order switch (reference curve)."""
    _check_estimable(theta)
    rho = switch.switch2_output(theta, d)
    drho = switch.switch2_drho_fd(theta, d, h)
    value = qfi_from_state(rho, drho)
    return QfiResult(value, "numeric", 2, "2switch", float(theta), int(d))


# -- closed forms --------------------------------------------------------------


def qfi_definite(d: int, theta: float) -> QfiResult:
    """QFI with the three channels applied in one definite order."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    t = float(theta)
    value = 9.0 * (d - 1) * t**4 / ((1.0 - t**3) * ((d - 1) * t**3 + 1.0))
    return QfiResult(value, "analytic", 1, "def", t, int(d))


def _gamma_tables(theta: float, d: int):
    g = {lab: blocks.block_eigenvalues(lab, theta, d) for lab in blocks.BLOCK_LABELS}
    gp = {lab: blocks.block_eigenvalues_deriv(lab, theta, d) for lab in blocks.BLOCK_LABELS}
    return g, gp


def _eig_fisher_sum(stencil, m: int, theta: float, d: int) -> float:
    """Fisher sum over the state eigenvalues phi/m of a commuting block matrix.

    ``stencil`` lists (coefficients over A, B, D, F; multiplicity): the
    pattern eigenvalues are sum_x c_x gamma^x, each appearing at the
    input-state eigendirection (once) and on the orthogonal complement
    (d - 1 times).
    """
    g, gp = _gamma_tables(theta, d)
    total = 0.0
    for coeffs, r in stencil:
        for pos, mult in ((0, 1), (1, d - 1)):
            phi = sum(c * g[lab][pos] for c, lab in zip(coeffs, blocks.BLOCK_LABELS) if c)
            dphi = sum(c * gp[lab][pos] for c, lab in zip(coeffs, blocks.BLOCK_LABELS) if c)
            total += r * mult * dphi * dphi / phi
    return total / m


# Pattern eigenvalue stencils (coefficients over A, B, D, F; multiplicity)
# for the simultaneously diagonalizable combinations.
_STENCIL_M3 = (((1, 0, 2, 0), 1), ((1, 0, -1, 0), 2))
_STENCIL_M4 = (
    ((1, 1, 1, 1), 1),
    ((1, 1, -1, -1), 1),
    ((1, -1, 1, -1), 1),
    ((1, -1, -1, 1), 1),
)
_STENCIL_M6 = (
    ((1, 2, 2, 1), 1),
    ((1, -2, 2, -1), 1),
    ((1, 1, -1, -1), 2),
    ((1, -1, -1, 1), 2),
)


def qfi_ind_m2(label: str, d: int, theta: float) -> float:
    """Indefinite-order QFI contribution of a uniform pair with label X.

    Eigen-sum form: sum_i (g_a g_x' - g_x g_a')^2 / (g_a (g_a^2 - g_x^2))
    over the block eigenvalues of A and X.
    """
    if label not in ("B", "D", "F"):
        raise ValueError(f"pair label must be B, D or F, got {label!r}")
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    g, gp = _gamma_tables(theta, d)
    total = 0.0
    for pos, mult in ((0, 1), (1, d - 1)):
        ga, gx = g["A"][pos], g[label][pos]
        dga, dgx = gp["A"][pos], gp[label][pos]
        total += mult * (ga * dgx - gx * dga) ** 2 / (ga * (ga * ga - gx * gx))
    return total


def qfi_m2(label: str, d: int, theta: float, eps: float = 1.0) -> QfiResult:
    """QFI for two superposed orders coupled by block label B, D or F.

    ``eps`` = m*sqrt(p1*p2) scales the indefinite contribution; at eps = 1
    (uniform weights) the linear scaling is exact.  The verification report
    documents the empirical scaling at unequal weights.
    """
    value = qfi_definite(d, theta).value + eps * qfi_ind_m2(label, d, theta)
    return QfiResult(value, "analytic", 2, f"m2:{label}", float(theta), int(d))


def qfi_m3(d: int, theta: float) -> QfiResult:
    """QFI for the uniform triple class whose couplings are all D blocks."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    value = _eig_fisher_sum(_STENCIL_M3, 3, theta, d)
    return QfiResult(value, "analytic", 3, "m3:DDD", float(theta), int(d))


def qfi_m4(d: int, theta: float) -> QfiResult:
    """QFI for the uniform quadruple class with two F couplings
    (signature B, B, D, D, F, F)."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    value = _eig_fisher_sum(_STENCIL_M4, 4, theta, d)
    return QfiResult(value, "analytic", 4, "m4:BBDDFF", float(theta), int(d))


def qfi_m6(d: int, theta: float) -> QfiResult:
    """QFI for the uniform superposition of all six causal orders."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    value = _eig_fisher_sum(_STENCIL_M6, 6, theta, d)
    return QfiResult(value, "analytic", 6, "m6", float(theta), int(d))


def relative_gain(j: QfiResult | float, j_def: QfiResult | float) -> float:
    """Fractional QFI improvement (J - J_def) / J_def over the definite order."""
    jv = j.value if isinstance(j, QfiResult) else float(j)
    dv = j_def.value if isinstance(j_def, QfiResult) else float(j_def)
    if dv <= 0.0:
        raise ValueError(
            "relative gain is undefined where the definite-order QFI vanishes (theta = 0)"
        )
    return (jv - dv) / dv


# -- transcribed rational forms (cross-check twins of the trace forms) ---------


def qfi_ind_m2_closed(label: str, d: int, theta: float) -> float:
    """Transcribed rational form of the pair indefinite-order contribution."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    t = float(theta)
    if label == "B":
        t1 = (d**2 * (t**2 - 2 * t - 2) - 3 * t**2 + 3) ** 2 / (
            (t**2 + t + 1)
            * (d**4 * (2 * t**2 + 3 * t + 1) + 2 * d**2 * t * (t**2 + t - 2) + (t - 1) ** 3)
        )
        t2 = (d**2 * (t - 3) * t**2 + 2 * d * (t**3 - 1) - 3 * (t + 1) * (t - 1) ** 2) ** 2 / (
            ((d - 1) * t**3 + 1)
            * (
                2 * d**4 * t**3
                - d**3 * (2 * t**4 + t**2 - 2 * t - 1)
                + d**2 * (2 * t**4 - 5 * t**2 + 2 * t + 1)
                - d * (t - 1) ** 3 * (t + 1)
                + (t - 1) ** 4
            )
        )
        return (d - 1) / d * (t1 + t2)
    if label == "D":
        t1 = ((d - 1) * t**3 + 3 * (d - 1) * t**2 + 3 * t + 1) ** 2 / (
            (t + 1)
            * ((d - 1) * t**3 + 1)
            * (2 * d**2 * t**3 + d * (-3 * t**3 + t**2 + t + 1) + (t - 1) ** 2 * (t + 1))
        )
        t2 = (t**2 + 4 * t + 1) ** 2 / ((t**2 + t + 1) * (3 * t**3 + 5 * t**2 + 3 * t + 1))
        return (d - 1) / d * (t1 + t2)
    if label == "F":
        t1 = (d - 1) * (t**2 - 1) ** 2 * ((d - 1) * t + 1) ** 4 / (
            ((d - 1) * t**3 + 1)
            * (((d - 1) * t**3 + 1) ** 2 / d**2 - ((d - 1) * t + 1) ** 6 / d**6)
        )
        t2 = d**6 * (d**2 * t * (t + 2) + t**2 - 1) ** 2 / (
            (t**2 + t + 1)
            * (d**4 * (8 * t**3 + 6 * t**2 + 3 * t + 1) + 6 * d**2 * (t - 1) * t**2 + (t - 1) ** 3)
        )
        return 9 * (d - 1) / d**7 * (t1 + t2)
    raise ValueError(f"pair label must be B, D or F, got {label!r}")


def qfi_m3_closed(d: int, theta: float) -> float:
    """Transcribed rational form of the all-D triple QFI."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    t = float(theta)
    num = (d - 1) * (
        3 * d**2 * (2 * t**3 - 33 * t**2 - 21 * t - 2) * t**3
        + 2 * d * (3 * t + 1) ** 2 * (5 * t**3 - 2 * t**2 - 2 * t - 1)
        - 6 * (t**3 + 3 * t**2 - 3 * t - 1) ** 2
    )
    den = (
        d
        * (t - 1)
        * (t + 1)
        * (5 * t**2 + 3 * t + 1)
        * (3 * d**2 * t**3 + d * (-5 * t**3 + 2 * t**2 + 2 * t + 1) + 2 * (t - 1) ** 2 * (t + 1))
    )
    return num / den


def qfi_m4_closed(d: int, theta: float) -> float:
    """Transcribed rational form of the two-F quadruple QFI."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    t = float(theta)
    return 0.25 * (d - 1) * (
        (3 * d * t + d - 6 * t + 6) ** 2 / (d**3 * (d * t + d - 2 * t + 2))
        + (1 - 9 * t) ** 2 / (d**2 * (3 * t + 1))
        + (9 - 9 * t) / d**2
        - 9 * (d**2 * (-7 * t**2 + 2 * t + 1) - 2 * (t - 1) ** 2) ** 2
        / (d**3 * (t - 1) * (d**2 * (7 * t**2 + 4 * t + 1) + 2 * (t - 1) ** 2))
        + 9 * (d - 1) * (4 * d**2 * t**2 + d * (-3 * t**2 + 2 * t + 1) + 2 * (t - 1) ** 2) ** 2
        / (
            d**3
            * (
                4 * d**3 * t**3
                + d**2 * (-7 * t**3 + 3 * t**2 + 3 * t + 1)
                + d * (5 * t + 1) * (t - 1) ** 2
                - 2 * (t - 1) ** 3
            )
        )
        + (3 * d**2 * t + d**2 + 6 * t - 6) ** 2 / (d**3 * (d**2 * (t + 1) + 2 * (t - 1)))
        + (1 - 9 * t) ** 2 / (3 * d * t + d)
        + (9 - 9 * t) / d
    )


def qfi_m6_closed(d: int, theta: float) -> float:
    """Transcribed rational form of the six-order QFI."""
    channels.check_depolarizing_params(theta, d)
    _check_estimable(theta)
    t = float(theta)
    return (d - 1) / (6 * d**3) * (
        -((9 * (t - 1) ** 2 - 6 * d**2 * (-5 * t**2 + t + 1)) ** 2)
        / ((t - 1) * (d**2 * (10 * t**2 + 7 * t + 1) + 3 * (t - 1) ** 2))
        + (2 * d**2 + 9 * t - 9) ** 2 / (d**2 + 3 * t - 3)
        + 9 * (d - 1) * (6 * d**2 * t**2 + d * (-4 * t**2 + 2 * t + 2) + 3 * (t - 1) ** 2) ** 2
        / (
            6 * d**3 * t**3
            + d**2 * (-10 * t**3 + 3 * t**2 + 6 * t + 1)
            + d * (7 * t + 2) * (t - 1) ** 2
            - 3 * (t - 1) ** 3
        )
        + 2 * d * (d + 1) * (1 - 9 * t) ** 2 / (3 * t + 1)
        + (2 * d - 9 * t + 9) ** 2 / (d - 3 * t + 3)
        - 18 * d * (d + 1) * (t - 1)
    )


# -- representatives and dispatch ----------------------------------------------


def analytic_representatives() -> dict[str, OrderCombination]:
    """Canonical uniform combination for every closed-form engine.

    Keys: 'def', 'm2:B', 'm2:D', 'm2:F', 'm3:DDD', 'm4:BBDDFF', 'm6'.
    Found by signature search so the choice tracks the derived label table.
    """
    labels = blocks.order_pair_labels()
    reps = {
        "def": OrderCombination((1,)),
        "m6": OrderCombination(tuple(range(1, 7))),
    }
    for lab in ("B", "D", "F"):
        pair = min(p for p, l in labels.items() if l == lab and p[0] < p[1])
        reps[f"m2:{lab}"] = OrderCombination(pair)
    reps["m3:DDD"] = blocks.find_representative(3, M3_CLOSED_SIGNATURE)
    reps["m4:BBDDFF"] = blocks.find_representative(4, M4_CLOSED_SIGNATURE)
    return reps


def qfi_analytic_for(comb: OrderCombination, theta: float, d: int) -> QfiResult | None:
    """Closed-form QFI for a uniform combination, or None when no form covers it.

    Covered: any single order, any pair, the all-D triples, the quadruples
    with signature (B, B, D, D, F, F), and the full six-order set.
    """
    if max(comb.weights) - min(comb.weights) > 1e-12:
        return None
    if comb.m == 1:
        return qfi_definite(d, theta)
    sig = blocks.classify_combination(comb)
    if comb.m == 2:
        return qfi_m2(sig[0], d, theta)
    if comb.m == 3 and sig == M3_CLOSED_SIGNATURE:
        return qfi_m3(d, theta)
    if comb.m == 4 and sig == M4_CLOSED_SIGNATURE:
        return qfi_m4(d, theta)
    if comb.m == 6:
        return qfi_m6(d, theta)
    return None
