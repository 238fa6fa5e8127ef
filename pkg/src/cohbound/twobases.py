"""Uniqueness bound for signals sparse in two orthonormal bases.

With cross-Gram entries mu(k, l) = <u_k, v_l>, the l0 solution is unique
for K < 1 / sqrt(eta(K^2)), where eta(c) is the mean of the c largest
squared cross-Gram magnitudes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CountOutOfRange, NotUnitary
from .linalg import as_matrix

UNITARY_TOL = 1e-8


@dataclass(frozen=True)
class CrossCoherenceProfile:
    n: int
    sorted_sq: np.ndarray

    @property
    def mu(self) -> float:
        return math.sqrt(self.sorted_sq[0])


@dataclass(frozen=True)
class TwoBasesBound:
    fractional: float
    k_max: int
    mu_cross: float

    @property
    def uncertainty(self) -> float:
        """Lower bound 2/sqrt(eta) on ||X||_0 + ||Y||_0 at the reported K."""
        return 2.0 * self.fractional

    def to_dict(self) -> dict:
        return {
            "fractional": self.fractional,
            "k_max": self.k_max,
            "mu_cross": self.mu_cross,
            "uncertainty": self.uncertainty,
        }


def _check_unitary(a: np.ndarray, which: str) -> None:
    n = a.shape[0]
    if a.shape != (n, n) or np.max(np.abs(a.conj().T @ a - np.eye(n))) > UNITARY_TOL:
        raise NotUnitary(which)


def cross_profile(u, v) -> CrossCoherenceProfile:
    u = as_matrix(u)
    v = as_matrix(v)
    _check_unitary(u, "a")
    _check_unitary(v, "b")
    if u.shape != v.shape:
        raise NotUnitary("b")
    sq = np.abs(u.conj().T @ v) ** 2
    return CrossCoherenceProfile(n=u.shape[0], sorted_sq=-np.sort(-sq.reshape(-1)))


def eta(profile: CrossCoherenceProfile, count: int) -> float:
    if not 1 <= count <= profile.sorted_sq.size:
        raise CountOutOfRange(f"count {count} outside [1, {profile.sorted_sq.size}]")
    return float(np.mean(profile.sorted_sq[:count]))


def l0_bound_two_bases(profile: CrossCoherenceProfile) -> TwoBasesBound:
    def rhs(k):
        return 1.0 / math.sqrt(eta(profile, k * k))

    k = 0
    while k < profile.n and k + 1 < rhs(k + 1):
        k += 1
    return TwoBasesBound(fractional=rhs(max(k, 1)), k_max=k, mu_cross=profile.mu)
