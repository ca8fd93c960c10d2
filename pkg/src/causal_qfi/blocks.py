"""Structured block model of the switch output.

Every d x d block of the joint output state is f_X * I + g_X * sigma for
one of four label types A, B, D, F.  This module evaluates those
coefficient functions and their exact theta-derivatives, identifies which
label couples each pair of causal orders (empirically, by matching blocks
of the brute-force simulator), assembles the structured state, and groups
order combinations into equivalence classes by their label signature.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter

import numpy as np

from . import channels, switch
from .switch import NUM_ORDERS, OrderCombination

BLOCK_LABELS = ("A", "B", "D", "F")

#: Probe thetas for empirical block classification; chosen away from the
#: points where distinct coefficient pairs collide (B and F meet at theta=0,
#: everything meets at theta=1).
CLASSIFY_PROBES = (0.2, 0.5, 0.8)
CLASSIFY_TOL = 1e-9


class BlockClassificationError(RuntimeError):
    """No unique block label matched an off-diagonal block."""


def block_coeffs(label: str, theta: float, d: int) -> tuple[float, float]:
    """Coefficient pair (f, g) of the block f*I + g*sigma for one label.

    At theta = 1 every label gives (0, 1); at theta = 0 the diagonal label
    A gives (1/d, 0), D gives (0, 1/d^2), and B and F both give (1/d^3, 0).
    """
    channels.check_depolarizing_params(theta, d)
    t = float(theta)
    d2 = d * d
    if label == "A":
        return (1.0 - t**3) / d, t**3
    if label == "D":
        return (-2.0 * t**3 + t**2 + t) / d, ((d2 + 1) * t**3 - t**2 - t + 1.0) / d2
    if label == "B":
        return (
            -(t - 1.0) * ((d2 + 1) * t**2 + 2.0 * (d2 - 1) * t + 1.0) / d**3,
            t * ((d2 + 1) * t**2 - 2.0 * t + 1.0) / d2,
        )
    if label == "F":
        return (
            ((1.0 - t) ** 3 - 3.0 * d2 * (t - 1.0) * t**2) / d**3,
            (d2 * t**3 + 3.0 * (t - 1.0) ** 2 * t) / d2,
        )
    raise ValueError(f"unknown block label {label!r}")


def block_coeffs_deriv(label: str, theta: float, d: int) -> tuple[float, float]:
    """Exact theta-derivatives (f', g') of the block coefficients."""
    channels.check_depolarizing_params(theta, d)
    t = float(theta)
    d2 = d * d
    if label == "A":
        return -3.0 * t**2 / d, 3.0 * t**2
    if label == "D":
        return (-6.0 * t**2 + 2.0 * t + 1.0) / d, (3.0 * (d2 + 1) * t**2 - 2.0 * t - 1.0) / d2
    if label == "B":
        fp = -(
            ((d2 + 1) * t**2 + 2.0 * (d2 - 1) * t + 1.0)
            + (t - 1.0) * (2.0 * (d2 + 1) * t + 2.0 * (d2 - 1))
        ) / d**3
        gp = (3.0 * (d2 + 1) * t**2 - 4.0 * t + 1.0) / d2
        return fp, gp
    if label == "F":
        fp = (-3.0 * (1.0 - t) ** 2 - 3.0 * d2 * (3.0 * t**2 - 2.0 * t)) / d**3
        gp = (3.0 * d2 * t**2 + 3.0 * (t - 1.0) * (3.0 * t - 1.0)) / d2
        return fp, gp
    raise ValueError(f"unknown block label {label!r}")


def block_matrix(label: str, theta: float, d: int) -> np.ndarray:
    """The d x d block f*I + g*sigma with sigma fixed to |0><0|."""
    f, g = block_coeffs(label, theta, d)
    return f * np.eye(d, dtype=complex) + g * channels.basis_projector(d)


def block_matrix_deriv(label: str, theta: float, d: int) -> np.ndarray:
    """Exact theta-derivative of block_matrix."""
    fp, gp = block_coeffs_deriv(label, theta, d)
    return fp * np.eye(d, dtype=complex) + gp * channels.basis_projector(d)


def block_eigenvalues(label: str, theta: float, d: int) -> tuple[float, float]:
    """(gamma_1, gamma_rest) of a block: f + g on the input-state direction,
    f with multiplicity d - 1 elsewhere."""
    f, g = block_coeffs(label, theta, d)
    return f + g, f


def block_eigenvalues_deriv(label: str, theta: float, d: int) -> tuple[float, float]:
    """Theta-derivatives of the two block eigenvalues."""
    fp, gp = block_coeffs_deriv(label, theta, d)
    return fp + gp, fp


def pair_block_label(
    i: int,
    j: int,
    d: int = 2,
    probes: tuple[float, ...] = CLASSIFY_PROBES,
    tol: float = CLASSIFY_TOL,
) -> str:
    """Block label coupling causal orders i and j in the switch output.

    Runs the brute-force simulator for the uniform pair {i, j} at several
    probe thetas and matches the (i, j) block against the three off-diagonal
    candidates.  The winner must be unique at every probe and consistent
    across probes; anything else signals a convention drift and raises
    BlockClassificationError.
    """
    if i == j:
        raise ValueError("pair classification needs two distinct orders")
    comb = OrderCombination((i, j))
    winners = set()
    for t in probes:
        rho = switch.switch_output(comb, t, d)
        # uniform pair: off-diagonal block is X/2
        blk = 2.0 * rho[(i - 1) * d : i * d, (j - 1) * d : j * d]
        matches = [
            lab
            for lab in ("B", "D", "F")
            if float(np.max(np.abs(blk - block_matrix(lab, t, d)))) <= tol
        ]
        if len(matches) != 1:
            raise BlockClassificationError(
                f"block ({i}, {j}) at theta={t}, d={d} matched {matches or 'nothing'}"
            )
        winners.add(matches[0])
    if len(winners) != 1:
        raise BlockClassificationError(
            f"block ({i}, {j}) label changed across probes: {sorted(winners)}"
        )
    return winners.pop()


@functools.lru_cache(maxsize=None)
def order_pair_labels() -> dict[tuple[int, int], str]:
    """Block label for every ordered pair of causal orders.

    Derived once from the simulator at d = 2 (labels are d-independent;
    tests check this) and cached.
    """
    table = {}
    for i, j in itertools.combinations(range(1, NUM_ORDERS + 1), 2):
        lab = pair_block_label(i, j)
        table[(i, j)] = table[(j, i)] = lab
    return table


def structured_output(comb: OrderCombination, theta: float, d: int) -> np.ndarray:
    """Assemble the switch output from labelled blocks, shape (6d, 6d).

    Diagonal blocks are p_k * A; the (i, j) block is sqrt(p_i p_j) times
    the matrix of the pair's label.  The target input is fixed to |0><0|.
    Must reproduce switch_output entrywise.
    """
    channels.check_depolarizing_params(theta, d)
    labels = order_pair_labels()
    rho = np.zeros((NUM_ORDERS * d, NUM_ORDERS * d), dtype=complex)
    a_blk = block_matrix("A", theta, d)
    for n, w in zip(comb.orders, comb.weights):
        rho[(n - 1) * d : n * d, (n - 1) * d : n * d] = w * a_blk
    for (i, wi), (j, wj) in itertools.combinations(zip(comb.orders, comb.weights), 2):
        blk = np.sqrt(wi * wj) * block_matrix(labels[(i, j)], theta, d)
        rho[(i - 1) * d : i * d, (j - 1) * d : j * d] = blk
        rho[(j - 1) * d : j * d, (i - 1) * d : i * d] = blk.conj().T
    return rho


def drho_analytic(comb: OrderCombination, theta: float, d: int) -> np.ndarray:
    """Exact theta-derivative of the structured output."""
    channels.check_depolarizing_params(theta, d)
    labels = order_pair_labels()
    drho = np.zeros((NUM_ORDERS * d, NUM_ORDERS * d), dtype=complex)
    a_blk = block_matrix_deriv("A", theta, d)
    for n, w in zip(comb.orders, comb.weights):
        drho[(n - 1) * d : n * d, (n - 1) * d : n * d] = w * a_blk
    for (i, wi), (j, wj) in itertools.combinations(zip(comb.orders, comb.weights), 2):
        blk = np.sqrt(wi * wj) * block_matrix_deriv(labels[(i, j)], theta, d)
        drho[(i - 1) * d : i * d, (j - 1) * d : j * d] = blk
        drho[(j - 1) * d : j * d, (i - 1) * d : i * d] = blk.conj().T
    return drho


def classify_combination(comb: OrderCombination) -> tuple[str, ...]:
    """Class signature: the sorted multiset of pair labels of a combination.

    Combinations with equal signatures produce output states with the same
    spectrum and the same QFI.  A single order has the empty signature.
    """
    labels = order_pair_labels()
    return tuple(sorted(labels[(i, j)] for i, j in itertools.combinations(comb.orders, 2)))


def all_combinations(m: int | None = None) -> list[OrderCombination]:
    """Uniform-weight order combinations; m=None gives all 57 with m >= 2."""
    if m is not None and not 1 <= m <= NUM_ORDERS:
        raise ValueError(f"m must lie in 1..{NUM_ORDERS}, got {m}")
    sizes = range(2, NUM_ORDERS + 1) if m is None else (m,)
    return [
        OrderCombination(orders)
        for size in sizes
        for orders in itertools.combinations(range(1, NUM_ORDERS + 1), size)
    ]


def classification_census() -> dict[int, dict[tuple[str, ...], int]]:
    """Count combinations per (m, class signature) over all 57 combinations."""
    census: dict[int, Counter] = {}
    for comb in all_combinations():
        census.setdefault(comb.m, Counter())[classify_combination(comb)] += 1
    return {m: dict(c) for m, c in sorted(census.items())}


def find_representative(m: int, signature: tuple[str, ...]) -> OrderCombination:
    """First uniform combination of size m with the given class signature."""
    for comb in all_combinations(m):
        if classify_combination(comb) == tuple(signature):
            return comb
    raise ValueError(f"no combination of size {m} has signature {signature}")
