"""Dense complex linear algebra helpers.

Matrices are plain ``complex128`` ndarrays of shape (M, N); real matrices
carry zero imaginary parts. Vectors are 1-D ``complex128`` arrays.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatch,
    NotSymmetric,
    ParseError,
    RaggedRows,
    RankDeficient,
    ZeroColumn,
)

ZERO_COLUMN_TOL = 1e-14
RANK_TOL = 1e-12
UNIT_NORM_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains NaN or Inf entries")
    return arr


def as_vector(x) -> np.ndarray:
    arr = np.array(x, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector contains NaN or Inf entries")
    return arr


def is_real(a: np.ndarray) -> bool:
    return not np.any(np.imag(a))


def column_norms(a: np.ndarray) -> np.ndarray:
    return np.linalg.norm(a, axis=0)


def is_normalized(a: np.ndarray, tol: float = UNIT_NORM_TOL) -> bool:
    return bool(np.all(np.abs(column_norms(a) - 1.0) <= tol))


def column_normalize(a) -> np.ndarray:
    """Scale every column to unit l2 norm.

    Raises
    ------
    ZeroColumn
        If a column norm falls below 1e-14.
    """
    a = as_matrix(a)
    norms = column_norms(a)
    bad = np.flatnonzero(norms < ZERO_COLUMN_TOL)
    if bad.size:
        raise ZeroColumn(int(bad[0]))
    return a / norms


def gram(a) -> np.ndarray:
    """Return ``A^H A``, with exact Hermitian symmetry enforced."""
    a = as_matrix(a)
    if a.size == 0:
        raise DimensionMismatch("empty matrix")
    g = a.conj().T @ a
    g = 0.5 * (g + g.conj().T)
    return g


def measure(a, x) -> np.ndarray:
    a = as_matrix(a)
    x = as_vector(x)
    if x.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"vector length {x.shape[0]} != matrix cols {a.shape[1]}")
    return a @ x


def least_squares_solve(a_sub, y) -> np.ndarray:
    """Least-squares coefficients of ``y`` on the columns of ``a_sub``.

    Solved through the SVD of ``a_sub``. A system whose normal matrix has
    condition ratio below 1e-12 is rejected rather than regularized.
    """
    a_sub = as_matrix(a_sub)
    y = as_vector(y)
    m, k = a_sub.shape
    if y.shape[0] != m:
        raise DimensionMismatch(f"measurement length {y.shape[0]} != rows {m}")
    if k == 0:
        return np.zeros(0, dtype=np.complex128)
    if k > m:
        raise RankDeficient(f"{k} columns exceed {m} rows")
    u, s, vh = np.linalg.svd(a_sub, full_matrices=False)
    # eigenvalues of A^H A are the squared singular values
    if s[0] == 0.0 or (s[-1] / s[0]) ** 2 < RANK_TOL:
        raise RankDeficient(f"selected columns are numerically dependent (s_min/s_max={s[-1] / max(s[0], 1e-300):.3e})")
    return vh.conj().T @ ((u.conj().T @ y) / s)


def symmetric_eigendecomposition(s, tol: float = 1e-10):
    """Eigenpairs of a real symmetric matrix, ascending.

    Each eigenvector is signed so its first entry with magnitude above 1e-8
    is nonnegative, which makes graph Fourier bases reproducible.
    """
    s = np.asarray(s)
    if np.iscomplexobj(s):
        if np.any(np.abs(s.imag) > tol):
            raise NotSymmetric("matrix has nonzero imaginary part")
        s = s.real
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise NotSymmetric(f"matrix of shape {s.shape} is not square")
    if np.any(np.abs(s - s.T) > tol):
        raise NotSymmetric("matrix is not symmetric within tolerance")
    lam, u = np.linalg.eigh(0.5 * (s + s.T))
    for j in range(u.shape[1]):
        lead = np.flatnonzero(np.abs(u[:, j]) > 1e-8)
        if lead.size and u[lead[0], j] < 0:
            u[:, j] = -u[:, j]
    return lam, u


# -- CSV matrix format ----------------------------------------------------

def _parse_cell(token: str, row: int, col: int) -> complex:
    tok = token.strip()
    if not tok or "j" in tok.lower() or "(" in tok or "n" in tok.lower():
        # rejects empty cells, python-style 'j' literals, nan and inf
        raise ParseError(row, col, token)
    if tok.endswith("i"):
        tok = tok[:-1] + "j"
        if tok in ("j", "+j", "-j"):
            tok = tok[:-1] + "1j"
    try:
        value = complex(tok)
    except ValueError:
        raise ParseError(row, col, token) from None
    return value


def parse_matrix(text: str) -> np.ndarray:
    """Parse the CSV grid format (cells like ``0.5``, ``0.5-0.25i``)."""
    rows = []
    for r, line in enumerate(text.splitlines()):
        if not line.strip():
            continue
        rows.append([_parse_cell(tok, r, c) for c, tok in enumerate(line.split(","))])
    if not rows:
        raise ParseError(0, 0, text)
    width = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            raise RaggedRows(f"row {r} has {len(row)} cells, expected {width}")
    return np.array(rows, dtype=np.complex128)


def _format_cell(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}i"


def serialize_matrix(a) -> str:
    a = as_matrix(a)
    return "".join(",".join(_format_cell(z) for z in row) + "\n" for row in a)


def parse_vector(text: str) -> np.ndarray:
    """Vectors use the same cells, either one per line or comma separated."""
    return parse_matrix(text).reshape(-1)


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return parse_matrix(fh.read())


def write_matrix(path, a) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_matrix(a))
