"""Brute-force simulator for three channels in superposed causal orders.

The 3! = 6 application orders of three channels are indexed 1..6 in
lexicographic sequence.  A superposition of a subset of orders is driven
by a six-level control register; the simulator sums the full Kraus family
of the composite channel to produce the exact joint output state on the
control (x) target space, laid out control-major so that the d x d block
at position (n, n') couples causal orders n and n'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import channels

#: The six causal orders, lexicographic; position k holds order index k+1.
#: An order (p1, p2, p3) means the operator product K^(p1) K^(p2) K^(p3),
#: i.e. the leftmost channel is applied last.
CAUSAL_ORDERS: tuple[tuple[int, int, int], ...] = tuple(itertools.permutations((1, 2, 3)))

NUM_ORDERS = len(CAUSAL_ORDERS)

#: Largest qudit dimension accepted by the brute-force path (d^6 Kraus triples).
MAX_ORACLE_DIM = 8

WEIGHT_SUM_TOL = 1e-12


def enumerate_orders() -> list[tuple[int, int, int]]:
    """All six causal orders as permutations of (1, 2, 3).

    Order index n (1-based) is position n-1 in the returned list; order 1
    is (1, 2, 3) and order 6 is (3, 2, 1).
    """
    return list(CAUSAL_ORDERS)


@dataclass(frozen=True)
class OrderCombination:
    """A weighted subset of the six causal orders.

    ``orders`` holds distinct indices from 1..6; ``weights`` are the
    superposition probabilities p_k (strictly positive, summing to one).
    Weights default to uniform.  Entries are stored sorted by order index.
    """

    orders: tuple[int, ...]
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        orders = tuple(int(k) for k in self.orders)
        if not orders:
            raise ValueError("a combination needs at least one causal order")
        if len(set(orders)) != len(orders):
            raise ValueError(f"duplicate order indices in {orders}")
        if any(not 1 <= k <= NUM_ORDERS for k in orders):
            raise ValueError(f"order indices must lie in 1..{NUM_ORDERS}, got {orders}")
        if self.weights is None:
            weights = tuple(1.0 / len(orders) for _ in orders)
        else:
            weights = tuple(float(w) for w in self.weights)
            if len(weights) != len(orders):
                raise ValueError("need exactly one weight per order")
            if any(w <= 0.0 for w in weights):
                raise ValueError("superposition weights must be strictly positive")
            total = sum(weights)
            if abs(total - 1.0) > WEIGHT_SUM_TOL:
                raise ValueError(f"weights must sum to 1, got {total!r}")
        pairs = sorted(zip(orders, weights))
        object.__setattr__(self, "orders", tuple(k for k, _ in pairs))
        object.__setattr__(self, "weights", tuple(w for _, w in pairs))

    @property
    def m(self) -> int:
        """Number of superposed causal orders."""
        return len(self.orders)

    @property
    def ident(self) -> str:
        """Compact id string, e.g. '124' for orders {1, 2, 4}."""
        return "".join(str(k) for k in self.orders)


def control_state(comb: OrderCombination) -> np.ndarray:
    """Six-component control amplitudes: sqrt(p_k) on the selected orders."""
    vec = np.zeros(NUM_ORDERS, dtype=complex)
    for k, w in zip(comb.orders, comb.weights):
        vec[k - 1] = np.sqrt(w)
    return vec


def _order_subscript(order: tuple[int, int, int]) -> str:
    # Product position p carries the Kraus index of channel order[p]:
    # channel 1 -> 'i', channel 2 -> 'j', channel 3 -> 'k'.
    return "".join("ijk"[c - 1] for c in order)


def _triple_products(kraus: np.ndarray) -> np.ndarray:
    """All ordered products K_a K_b K_c, shape (n, n, n, d, d)."""
    pair = np.einsum("axy,byz->abxz", kraus, kraus)
    return np.einsum("abxy,cyz->abcxz", pair, kraus)


def switch_output(
    comb: OrderCombination,
    theta: float,
    d: int,
    sigma: np.ndarray | None = None,
) -> np.ndarray:
    """Exact joint output state of the three-channel switch, shape (6d, 6d).

    All three channels are copies of the depolarizing channel with the same
    theta.  ``sigma`` is the target input state and defaults to the pure
    state |0><0|.  Blocks outside the selected orders are exactly zero.
    """
    channels.check_depolarizing_params(theta, d)
    if d > MAX_ORACLE_DIM:
        raise ValueError(
            f"brute-force path is capped at d <= {MAX_ORACLE_DIM} (d^6 Kraus triples); got {d}"
        )
    if sigma is None:
        sigma = channels.basis_projector(d)
    else:
        sigma = channels.validate_density_matrix(sigma)
        if sigma.shape != (d, d):
            raise ValueError(f"input state shape {sigma.shape} does not match d={d}")

    kraus = np.array(channels.depolarizing_kraus(theta, d))
    kkk = _triple_products(kraus)
    subs = [_order_subscript(CAUSAL_ORDERS[n - 1]) for n in comb.orders]

    rho = np.zeros((NUM_ORDERS * d, NUM_ORDERS * d), dtype=complex)
    for a in range(comb.m):
        for b in range(a, comb.m):
            # Block (n_a, n_b) = sqrt(p_a p_b) * sum_t P_a[t] sigma P_b[t]^dag
            blk = np.einsum(
                f"{subs[a]}xy,yz,{subs[b]}wz->xw", kkk, sigma, kkk.conj(), optimize=True
            )
            na, nb = comb.orders[a], comb.orders[b]
            w = np.sqrt(comb.weights[a] * comb.weights[b])
            rho[(na - 1) * d : na * d, (nb - 1) * d : nb * d] = w * blk
            if b != a:
                rho[(nb - 1) * d : nb * d, (na - 1) * d : na * d] = w * blk.conj().T
    return rho


def switch_kraus(
    comb: OrderCombination,
    kraus1: list[np.ndarray],
    kraus2: list[np.ndarray],
    kraus3: list[np.ndarray],
) -> list[np.ndarray]:
    """Explicit Kraus family of the composite switch channel on C^6 (x) C^d.

    One operator per Kraus index triple (i, j, k): the order-permuted
    product of the three channel factors, placed on |n><n| of the control
    for every selected order n.  The family is complete on the span of the
    selected control levels.
    """
    sets = (kraus1, kraus2, kraus3)
    d = sets[0][0].shape[0]
    for ops in sets:
        for k in ops:
            if k.shape != (d, d):
                raise ValueError("all Kraus operators must share one dimension")

    out = []
    for i, j, k in itertools.product(*(range(len(ops)) for ops in sets)):
        factor = {1: kraus1[i], 2: kraus2[j], 3: kraus3[k]}
        op = np.zeros((NUM_ORDERS * d, NUM_ORDERS * d), dtype=complex)
        for n in comb.orders:
            p1, p2, p3 = CAUSAL_ORDERS[n - 1]
            op[(n - 1) * d : n * d, (n - 1) * d : n * d] = (
                factor[p1] @ factor[p2] @ factor[p3]
            )
        out.append(op)
    return out


def drho_fd(
    comb: OrderCombination,
    theta: float,
    d: int,
    h: float = 1e-5,
    sigma: np.ndarray | None = None,
) -> np.ndarray:
    """Central finite-difference theta-derivative of the switch output.

    Output entries are cubic polynomials in theta, so the truncation error
    is O(h^2).  Raises when theta +/- h leaves [0, 1].
    """
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    if theta - h < 0.0 or theta + h > 1.0:
        raise ValueError(f"theta +/- h leaves [0, 1] for theta={theta}, h={h}")
    return (switch_output(comb, theta + h, d, sigma) - switch_output(comb, theta - h, d, sigma)) / (
        2.0 * h
    )


def relabel_orders(channel_map: tuple[int, int, int]) -> dict[int, int]:
    """Order-index map induced by renaming the three channels.

    ``channel_map`` sends channel c to channel_map[c-1]; an order applying
    (a, b, c) becomes the order applying the renamed channels.  Returns
    the induced permutation of the order indices 1..6.
    """
    if sorted(channel_map) != [1, 2, 3]:
        raise ValueError(f"channel map must be a permutation of (1, 2, 3), got {channel_map!r}")
    mapping = {}
    for n, order in enumerate(CAUSAL_ORDERS, start=1):
        renamed = tuple(channel_map[c - 1] for c in order)
        mapping[n] = CAUSAL_ORDERS.index(renamed) + 1
    return mapping


# -- two-channel, two-order switch (numerical reference curve) ----------------


def switch2_output(theta: float, d: int, weights: tuple[float, float] = (0.5, 0.5),
                   sigma: np.ndarray | None = None) -> np.ndarray:
    """Output of two copies of the channel in the two possible orders.

    The control is two-level; the returned matrix is (2d, 2d), control-major.
    """
    channels.check_depolarizing_params(theta, d)
    if len(weights) != 2 or any(w <= 0 for w in weights) or abs(sum(weights) - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"need two positive weights summing to 1, got {weights!r}")
    if sigma is None:
        sigma = channels.basis_projector(d)
    else:
        sigma = channels.validate_density_matrix(sigma)
        if sigma.shape != (d, d):
            raise ValueError(f"input state shape {sigma.shape} does not match d={d}")

    kraus = np.array(channels.depolarizing_kraus(theta, d))
    pair = np.einsum("axy,byz->abxz", kraus, kraus)
    subs = ("ij", "ji")

    rho = np.zeros((2 * d, 2 * d), dtype=complex)
    for a in range(2):
        for b in range(a, 2):
            blk = np.einsum(
                f"{subs[a]}xy,yz,{subs[b]}wz->xw", pair, sigma, pair.conj(), optimize=True
            )
            w = np.sqrt(weights[a] * weights[b])
            rho[a * d : (a + 1) * d, b * d : (b + 1) * d] = w * blk
            if b != a:
                rho[b * d : (b + 1) * d, a * d : (a + 1) * d] = w * blk.conj().T
    return rho


def switch2_drho_fd(theta: float, d: int, h: float = 1e-5,
                    weights: tuple[float, float] = (0.5, 0.5)) -> np.ndarray:
    """Second-order finite-difference derivative of the two-order output.

    Falls back to a one-sided three-point stencil at the interval ends so
    theta = 0 is usable.
    """
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    f = lambda t: switch2_output(t, d, weights)
    if theta - h < 0.0:
        return (-3.0 * f(theta) + 4.0 * f(theta + h) - f(theta + 2 * h)) / (2.0 * h)
    if theta + h > 1.0:
        return (3.0 * f(theta) - 4.0 * f(theta - h) + f(theta - 2 * h)) / (2.0 * h)
    return (f(theta + h) - f(theta - h)) / (2.0 * h)
