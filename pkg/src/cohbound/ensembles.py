"""Seeded generators for the measurement-matrix families.

Every generator is a pure function of its arguments; random draws come
from ``numpy.random.default_rng(seed)`` (PCG64).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DuplicateRows,
    EmptyAfterSampling,
    InvalidDims,
    ParseError,
    SelfLoop,
    UnsupportedSize,
)
from .linalg import column_normalize, symmetric_eigendecomposition

ENSEMBLES = ("gaussian", "partial_dft", "partial_dct", "etf", "graph_gft")


@dataclass(frozen=True)
class GraphSpec:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    missing: tuple[int, ...] = ()

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise ValueError(f"edge ({i}, {j}) out of range for {self.vertex_count} vertices")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        if len(set(self.missing)) != len(self.missing):
            raise ValueError("missing vertices must be distinct")
        for v in self.missing:
            if not 0 <= v < self.vertex_count:
                raise ValueError(f"missing vertex {v} out of range")
        object.__setattr__(self, "missing", tuple(sorted(self.missing)))

    def with_missing(self, missing: Sequence[int]) -> "GraphSpec":
        return GraphSpec(self.vertex_count, self.edges, tuple(missing))

    def laplacian(self) -> np.ndarray:
        w = np.zeros((self.vertex_count, self.vertex_count))
        for i, j in self.edges:
            w[i, j] = w[j, i] = 1.0
        return np.diag(w.sum(axis=1)) - w


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    rows: int
    cols: int
    seed: int = 0
    row_list: tuple[int, ...] | None = None
    graph: GraphSpec | None = field(default=None, compare=False)


def _check_dims(m: int, n: int) -> None:
    if not 1 <= m <= n:
        raise InvalidDims(f"need 1 <= M <= N, got M={m}, N={n}")


def gen_gaussian(m: int, n: int, seed: int) -> np.ndarray:
    _check_dims(m, n)
    rng = np.random.default_rng(seed)
    return column_normalize(rng.standard_normal((m, n)))


def _select_rows(m: int, n: int, seed: int | None, row_list) -> np.ndarray:
    if row_list is None:
        rng = np.random.default_rng(seed)
        return np.sort(rng.choice(n, size=m, replace=False))
    rows = np.asarray(list(row_list), dtype=int)
    if rows.size != m:
        raise InvalidDims(f"row list has {rows.size} entries, expected {m}")
    if len(set(rows.tolist())) != rows.size:
        raise DuplicateRows("explicit row list contains duplicates")
    if rows.size and (rows.min() < 0 or rows.max() >= n):
        raise InvalidDims(f"row indices must lie in [0, {n})")
    return rows


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT, W(m, k) = exp(-2j*pi*m*k/N) / sqrt(N)."""
    idx = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)


def dct_matrix(n: int) -> np.ndarray:
    """Orthonormal type-II DCT with rows indexed by frequency."""
    m = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    c = np.sqrt(2.0 / n) * np.cos(np.pi * m * (2 * k + 1) / (2 * n))
    c[0] /= np.sqrt(2.0)
    return c


def gen_partial_dft(m: int, n: int, seed: int | None = None, row_list=None) -> np.ndarray:
    _check_dims(m, n)
    rows = _select_rows(m, n, seed, row_list)
    return column_normalize(dft_matrix(n)[rows])


def gen_partial_dct(m: int, n: int, seed: int | None = None, row_list=None) -> np.ndarray:
    _check_dims(m, n)
    rows = _select_rows(m, n, seed, row_list)
    return column_normalize(dct_matrix(n)[rows])


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


def paley_conference_matrix(q: int) -> np.ndarray:
    """Symmetric conference matrix of order q + 1 for a prime q = 1 (mod 4)."""
    residues = {(x * x) % q for x in range(1, q)}
    chi = np.array([0] + [1 if r in residues else -1 for r in range(1, q)])
    idx = np.arange(q)
    jacobsthal = chi[(idx[None, :] - idx[:, None]) % q]
    c = np.zeros((q + 1, q + 1))
    c[0, 1:] = 1
    c[1:, 0] = 1
    c[1:, 1:] = jacobsthal
    return c


def gen_etf(m: int) -> np.ndarray:
    """Real M x 2M equiangular tight frame from a Paley conference matrix.

    The Gram target I + C/sqrt(2M-1) has eigenvalues 0 and 2, each with
    multiplicity M; the frame is sqrt(2) times the eigenvalue-2 eigenvectors.
    """
    q = 2 * m - 1
    if not (_is_prime(q) and q % 4 == 1):
        raise UnsupportedSize(
            f"M={m}: 2M-1={q} is not a prime congruent to 1 mod 4 "
            "(prime-power Paley fields are not supported)"
        )
    c = paley_conference_matrix(q)
    target = np.eye(2 * m) + c / np.sqrt(q)
    lam, u = symmetric_eigendecomposition(target)
    top = u[:, -m:]
    a = np.sqrt(lam[-m:])[:, None] * top.T
    return column_normalize(a)


def gen_graph_gft(spec: GraphSpec) -> np.ndarray:
    """Graph Fourier basis of L = D - W with the missing vertices' rows removed."""
    keep = [v for v in range(spec.vertex_count) if v not in set(spec.missing)]
    if not keep:
        raise EmptyAfterSampling("every vertex is missing")
    _, u = symmetric_eigendecomposition(spec.laplacian())
    return column_normalize(u[keep])


def parse_edge_list(text: str, vertex_count: int | None = None) -> GraphSpec:
    edges: dict[tuple[int, int], None] = {}
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, None, raw)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, None, raw) from None
        if i < 0 or j < 0:
            raise ParseError(lineno, None, raw)
        if i == j:
            raise SelfLoop(lineno)
        edges[(min(i, j), max(i, j))] = None
        top = max(top, i, j)
    count = top + 1 if vertex_count is None else vertex_count
    return GraphSpec(count, tuple(edges))


def read_edge_list(path, vertex_count: int | None = None) -> GraphSpec:
    with open(path) as fh:
        return parse_edge_list(fh.read(), vertex_count)


def random_connected_graph(n: int, extra_edge_prob: float, seed: int) -> GraphSpec:
    """Random spanning tree plus independent extra edges; always connected."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    edges = set()
    for pos in range(1, n):
        parent = order[rng.integers(pos)]
        v = order[pos]
        edges.add((int(min(v, parent)), int(max(v, parent))))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < extra_edge_prob:
                edges.add((i, j))
    return GraphSpec(n, tuple(sorted(edges)))


def generate(spec: EnsembleSpec) -> np.ndarray:
    kind = spec.kind
    if kind == "gaussian":
        return gen_gaussian(spec.rows, spec.cols, spec.seed)
    if kind == "partial_dft":
        return gen_partial_dft(spec.rows, spec.cols, spec.seed, spec.row_list)
    if kind == "partial_dct":
        return gen_partial_dct(spec.rows, spec.cols, spec.seed, spec.row_list)
    if kind == "etf":
        if spec.cols != 2 * spec.rows:
            raise InvalidDims(f"ETF needs N = 2M, got M={spec.rows}, N={spec.cols}")
        return gen_etf(spec.rows)
    if kind == "graph_gft":
        if spec.graph is None:
            raise InvalidDims("graph_gft needs a graph")
        g = spec.graph
        if spec.rows != g.vertex_count - len(g.missing) or spec.cols != g.vertex_count:
            raise InvalidDims(
                f"graph with {g.vertex_count} vertices and {len(g.missing)} missing "
                f"gives {g.vertex_count - len(g.missing)}x{g.vertex_count}, not {spec.rows}x{spec.cols}"
            )
        return gen_graph_gft(g)
    raise ValueError(f"unknown ensemble {kind!r}")
