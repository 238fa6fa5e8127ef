"""Orthogonal matching pursuit and an exhaustive l0 oracle."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoSolution, RankDeficient, SearchSpaceTooLarge
from .linalg import as_matrix, as_vector, least_squares_solve

PRUNE_TOL = 1e-14
MAX_SUBSETS = 10**6


@dataclass(frozen=True)
class SparseSignal:
    length: int
    support: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("support must be sorted and distinct")
        if self.support and not (0 <= self.support[0] and self.support[-1] < self.length):
            raise ValueError("support index out of range")
        if len(self.values) != len(self.support):
            raise ValueError("one value per support index required")

    @classmethod
    def from_dense(cls, x, prune: float = PRUNE_TOL) -> "SparseSignal":
        x = as_vector(x)
        idx = np.flatnonzero(np.abs(x) > prune)
        return cls(x.size, tuple(int(i) for i in idx), x[idx])

    def dense(self) -> np.ndarray:
        x = np.zeros(self.length, dtype=np.complex128)
        x[list(self.support)] = self.values
        return x

    @property
    def sparsity(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class RecoveryResult:
    estimate: SparseSignal
    residual_norm: float
    iterations: int
    selection_order: tuple[int, ...]
    residual_history: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "support": list(self.estimate.support),
            "values": [[float(v.real), float(v.imag)] for v in self.estimate.values],
            "residual_norm": self.residual_norm,
            "iterations": self.iterations,
            "selection_order": list(self.selection_order),
        }


def initial_estimate(a, y) -> np.ndarray:
    """Back-projection A^H y."""
    a = as_matrix(a)
    y = as_vector(y)
    if y.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"measurement length {y.shape[0]} != rows {a.shape[0]}")
    return a.conj().T @ y


def omp_reconstruct(a, y, k: int, tol: float = 1e-10) -> RecoveryResult:
    """Recover a ``k``-sparse vector from ``y = A x``.

    Each step picks the column most correlated with the residual (lowest
    index on ties), then re-fits all picked columns by least squares. Stops
    after ``k`` picks or once the residual drops below ``tol * ||y||``.
    """
    a = as_matrix(a)
    y = as_vector(y)
    m, n = a.shape
    if y.shape[0] != m:
        raise DimensionMismatch(f"measurement length {y.shape[0]} != rows {m}")
    if not 1 <= k <= min(m, n):
        raise ValueError(f"sparsity {k} outside [1, {min(m, n)}]")
    if tol <= 0:
        raise ValueError("tol must be positive")

    ynorm = np.linalg.norm(y)
    residual = y.copy()
    selected: list[int] = []
    coef = np.zeros(0, dtype=np.complex128)
    history = [float(ynorm)]
    available = np.ones(n, dtype=bool)
    while len(selected) < k and history[-1] >= tol * ynorm and ynorm > 0:
        corr = np.abs(a.conj().T @ residual)
        corr[~available] = -1.0
        pick = int(np.argmax(corr))
        selected.append(pick)
        available[pick] = False
        coef = least_squares_solve(a[:, selected], y)
        residual = y - a[:, selected] @ coef
        history.append(float(np.linalg.norm(residual)))

    order = tuple(selected)
    x = np.zeros(n, dtype=np.complex128)
    x[selected] = coef
    return RecoveryResult(
        estimate=SparseSignal.from_dense(x),
        residual_norm=history[-1],
        iterations=len(order),
        selection_order=order,
        residual_history=tuple(history),
    )


def exact_recovery_check(truth: SparseSignal, result: RecoveryResult, tol: float = 1e-6) -> bool:
    est = result.estimate
    if truth.length != est.length:
        raise DimensionMismatch("signals have different lengths")
    keep = np.abs(est.values) > PRUNE_TOL
    support = tuple(s for s, k in zip(est.support, keep) if k)
    if support != truth.support:
        return False
    ref = np.linalg.norm(truth.values)
    err = np.linalg.norm(est.values[keep] - truth.values)
    return bool(err < tol * ref) if ref > 0 else bool(err == 0)


def exhaustive_l0_oracle(a, y, k_limit: int, tol: float = 1e-10) -> SparseSignal:
    """Sparsest exact representation of ``y``, found by trying every support.

    Supports are tried by increasing size and, within a size, in
    lexicographic order. Column sets that are numerically dependent are
    skipped.
    """
    a = as_matrix(a)
    y = as_vector(y)
    m, n = a.shape
    if y.shape[0] != m:
        raise DimensionMismatch(f"measurement length {y.shape[0]} != rows {m}")
    if math.comb(n, k_limit) > MAX_SUBSETS:
        raise SearchSpaceTooLarge(f"C({n}, {k_limit}) exceeds {MAX_SUBSETS}")
    ynorm = np.linalg.norm(y)
    if ynorm == 0:
        return SparseSignal(n, (), np.zeros(0, dtype=np.complex128))
    for size in range(1, min(k_limit, m) + 1):
        for support in itertools.combinations(range(n), size):
            sub = a[:, support]
            try:
                coef = least_squares_solve(sub, y)
            except RankDeficient:
                continue
            if np.linalg.norm(y - sub @ coef) < tol * ynorm:
                return SparseSignal(n, support, coef)
    raise NoSolution(f"no representation with at most {k_limit} columns")
