"""Coherence profiles and coherence-index sparsity bounds.

Three bounds on the sparsity K that guarantee unique OMP detection:

* ``standard``:  K < (1 + 1/mu) / 2
* ``alpha``:     the sum of the 2K-1 largest off-diagonal Gram magnitudes
                 stays below one
* ``improved``:  (K-1) * beta(K-1) + K * gamma(K) < 1, where beta and gamma
                 are means of the largest magnitudes taken within single rows
                 of the Gram matrix

The implicit bounds are solved by checking K = 1, 2, ... in turn. The
reported ``fractional`` value is the right-hand side evaluated at the
largest K that passes, so ``k_max < fractional`` whenever k_max >= 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnitDiagonal
from .linalg import as_matrix, column_normalize, gram, is_normalized

PAIRING_MODES = ("paper", "exhaustive")


@dataclass(frozen=True)
class CoherenceProfile:
    """Sorted off-diagonal Gram magnitudes.

    ``global_sorted`` holds all N*N - N ordered-pair magnitudes, so each
    unordered pair shows up twice. ``row_sorted`` is (N, N-1), one
    nonincreasing row per Gram row.
    """

    n: int
    global_sorted: np.ndarray
    row_sorted: np.ndarray

    @property
    def mu(self) -> float:
        return float(self.global_sorted[0]) if self.global_sorted.size else 0.0


@dataclass(frozen=True)
class BoundValue:
    fractional: float
    k_max: int
    capped: bool

    def to_dict(self) -> dict:
        frac = self.fractional if math.isfinite(self.fractional) else None
        return {"fractional": frac, "k_max": self.k_max, "capped": self.capped}


@dataclass(frozen=True)
class BoundReport:
    mu: float
    standard: BoundValue
    alpha: BoundValue
    improved: BoundValue
    pairing_mode: str

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "standard": self.standard.to_dict(),
            "alpha": self.alpha.to_dict(),
            "improved": self.improved.to_dict(),
            "pairing_mode": self.pairing_mode,
        }


def build_profile(g, tol: float = 1e-9) -> CoherenceProfile:
    g = as_matrix(g)
    n = g.shape[0]
    if g.shape != (n, n):
        raise NotUnitDiagonal(f"Gram matrix must be square, got {g.shape}")
    diag = np.diag(g)
    if np.any(np.abs(diag - 1.0) > tol):
        k = int(np.argmax(np.abs(diag - 1.0)))
        raise NotUnitDiagonal(f"|G({k},{k}) - 1| = {abs(diag[k] - 1):.3e} exceeds {tol}")
    mags = np.abs(g)
    off = ~np.eye(n, dtype=bool)
    rows = mags[off].reshape(n, n - 1)
    row_sorted = -np.sort(-rows, axis=1)
    global_sorted = -np.sort(-rows.reshape(-1))
    return CoherenceProfile(n=n, global_sorted=global_sorted, row_sorted=row_sorted)


def coherence_index(profile: CoherenceProfile) -> float:
    return profile.mu


def _rhs_standard(mu: float) -> float:
    return math.inf if mu == 0 else 0.5 * (1.0 + 1.0 / mu)


def _largest_below(x: float) -> int:
    """Largest integer K with K < x (x finite)."""
    return math.ceil(x) - 1


def bound_standard(mu: float, structural_cap: int) -> BoundValue:
    frac = _rhs_standard(mu)
    if not math.isfinite(frac):
        return BoundValue(frac, structural_cap, True)
    k = max(_largest_below(frac), 0)
    if k > structural_cap:
        return BoundValue(frac, structural_cap, True)
    return BoundValue(frac, k, False)


def _rhs_alpha(prefix_sum: float, count: int) -> float:
    # (1 + 1/alpha) / 2 with alpha = prefix_sum / count
    return math.inf if prefix_sum == 0 else 0.5 * (1.0 + count / prefix_sum)


def _direct_check(holds, rhs, computable: int, structural_cap: int) -> BoundValue:
    """Largest K with ``holds(K)``, scanning K = 1, 2, ... upward.

    ``computable`` is the largest K for which the inequality is defined.
    The fractional value is ``rhs`` at the returned K (at K = 1 when even
    K = 1 fails).
    """
    limit = min(structural_cap, computable)
    k = 0
    while k < limit and holds(k + 1):
        k += 1
    at = max(k, 1)
    frac = rhs(at) if at <= computable else math.inf
    capped = k == limit and (k + 1 > computable or holds(k + 1))
    return BoundValue(frac, k, bool(capped))


def bound_alpha(profile: CoherenceProfile, structural_cap: int) -> BoundValue:
    csum = np.cumsum(profile.global_sorted)

    def total(k):
        return float(csum[2 * k - 2])

    return _direct_check(
        holds=lambda k: total(k) < 1.0,
        rhs=lambda k: _rhs_alpha(total(k), 2 * k - 1),
        computable=(profile.global_sorted.size + 1) // 2,
        structural_cap=structural_cap,
    )


class _RowMeans:
    """Prefix sums of the row-sorted magnitudes: top-j sums per row."""

    def __init__(self, profile: CoherenceProfile):
        n = profile.n
        self.sums = np.zeros((n, n))
        self.sums[:, 1:] = np.cumsum(profile.row_sorted, axis=1)

    def top_sum(self, j: int) -> np.ndarray:
        return self.sums[:, j]


def improved_pair(profile: CoherenceProfile, k: int, pairing_mode: str = "paper"):
    """Rows (a, b) and the means (beta, gamma) used at sparsity ``k``.

    ``a`` carries the component-reduction term beta(k-1) and ``b`` the
    disturbance term gamma(k). Ties go to the lowest row index.
    """
    a, b, red, dist = _pair(_RowMeans(profile), k, pairing_mode)
    return a, b, (red / (k - 1) if k > 1 else 0.0), dist / k


def _pair(rm: _RowMeans, k: int, pairing_mode: str):
    red = rm.top_sum(k - 1)  # (k-1) * beta_a
    dist = rm.top_sum(k)  # k * gamma_b
    if pairing_mode == "paper":
        a = int(np.argmax(dist)) if k == 1 else int(np.argmax(red))
        masked = dist.copy()
        masked[a] = -np.inf
        b = int(np.argmax(masked))
    elif pairing_mode == "exhaustive":
        total = red[:, None] + dist[None, :]
        np.fill_diagonal(total, -np.inf)
        a, b = (int(i) for i in np.unravel_index(np.argmax(total), total.shape))
    else:
        raise ValueError(f"unknown pairing mode {pairing_mode!r}")
    return a, b, float(red[a]), float(dist[b])


def bound_improved(profile: CoherenceProfile, structural_cap: int, pairing_mode: str = "paper") -> BoundValue:
    if profile.n < 2:
        return BoundValue(math.inf, 0, True)
    rm = _RowMeans(profile)
    cache = {}

    def terms(k):
        if k not in cache:
            cache[k] = _pair(rm, k, pairing_mode)
        return cache[k]

    def holds(k):
        _, _, red, dist = terms(k)
        return red + dist < 1.0

    def rhs(k):
        _, _, red, dist = terms(k)
        beta = red / (k - 1) if k > 1 else 0.0
        gamma = dist / k
        return math.inf if beta + gamma == 0 else (1.0 + beta) / (beta + gamma)

    return _direct_check(holds, rhs, computable=profile.n - 1, structural_cap=structural_cap)


def bounds_from_gram(g, structural_cap: int | None = None, pairing_mode: str = "paper") -> BoundReport:
    profile = build_profile(g)
    cap = profile.n - 1 if structural_cap is None else min(structural_cap, profile.n - 1)
    mu = coherence_index(profile)
    return BoundReport(
        mu=mu,
        standard=bound_standard(mu, cap),
        alpha=bound_alpha(profile, cap),
        improved=bound_improved(profile, cap, pairing_mode),
        pairing_mode=pairing_mode,
    )


def bound_report(a, pairing_mode: str = "paper") -> BoundReport:
    """All three bounds for a measurement matrix (normalized first if needed)."""
    a = as_matrix(a)
    if not is_normalized(a):
        a = column_normalize(a)
    m, n = a.shape
    return bounds_from_gram(gram(a), structural_cap=min(m, n - 1), pairing_mode=pairing_mode)
