"""Uniform grids and finite-difference operators."""
from __future__ import annotations

from dataclasses import dataclass, field
import math
from typing import Any

import numpy as np
from scipy import sparse

from .const import MIN_GRID_POINTS
from .exceptions import InvalidParameters


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [x_lo, x_hi] with Dirichlet truncation outside."""

    x_lo: float
    x_hi: float
    n_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_lo) and math.isfinite(self.x_hi)):
            raise InvalidParameters("grid bounds must be finite", field="domain")
        if not self.x_hi > self.x_lo:
            raise InvalidParameters(
                f"empty grid [{self.x_lo!r}, {self.x_hi!r}]", field="domain"
            )
        if self.n_points < MIN_GRID_POINTS:
            raise InvalidParameters(
                f"n_points = {self.n_points} must be >= {MIN_GRID_POINTS}",
                field="grid_points",
            )

    @property
    def h(self) -> float:
        """Return the grid spacing."""
        return (self.x_hi - self.x_lo) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        """Return the grid points."""
        return np.linspace(self.x_lo, self.x_hi, self.n_points)

    @property
    def midpoints(self) -> np.ndarray:
        """Return the N + 1 cell faces x_i -/+ h/2, boundary faces included."""
        return self.x_lo + self.h * (np.arange(self.n_points + 1) - 0.5)

    @property
    def center(self) -> float:
        """Return the midpoint of the interval."""
        return 0.5 * (self.x_lo + self.x_hi)

    def refined(self, factor: int = 2) -> GridSpec:
        """Return the grid with spacing divided by factor."""
        return GridSpec(self.x_lo, self.x_hi, (self.n_points - 1) * factor + 1)

    def restricted(self, x_lo: float, x_hi: float) -> GridSpec:
        """Return a grid on [x_lo, x_hi] with the same number of points."""
        return GridSpec(x_lo, x_hi, self.n_points)


@dataclass
class GridOperator:
    """Sparse operator on a grid, ``factor * matrix``.

    ``matrix`` is real; ``factor`` is 1 for symmetric operators and -1j for
    momentum-like ones built from antisymmetric matrices.
    """

    grid: GridSpec
    matrix: sparse.csr_matrix
    factor: complex = 1.0
    bandwidth: int = 0
    meta: dict[str, Any] = field(default_factory=dict)
    squared: sparse.csr_matrix | None = None

    @property
    def is_real_symmetric(self) -> bool:
        """Check whether the operator is a real symmetric matrix."""
        if complex(self.factor).imag != 0.0:
            return False
        return (self.matrix - self.matrix.T).count_nonzero() == 0

    @property
    def is_hermitian(self) -> bool:
        """Check Hermiticity of factor * matrix."""
        factor = complex(self.factor)
        if factor.imag == 0.0:
            return (self.matrix - self.matrix.T).count_nonzero() == 0
        if factor.real == 0.0:
            return (self.matrix + self.matrix.T).count_nonzero() == 0
        return False

    def dense(self) -> np.ndarray:
        """Return the operator as a dense array."""
        arr = self.matrix.toarray()
        return arr if self.factor == 1.0 else self.factor * arr

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Apply the operator to a vector."""
        out = self.matrix @ vec
        return out if self.factor == 1.0 else self.factor * out

    def apply_squared(self, vec: np.ndarray) -> np.ndarray:
        """Apply the square of the operator, using the stored square when present."""
        if self.squared is not None:
            return self.squared @ vec
        return self.apply(self.apply(vec))

    def upper_banded(self) -> np.ndarray:
        """Return upper band storage for scipy.linalg.eig_banded."""
        n = self.grid.n_points
        bands = np.zeros((self.bandwidth + 1, n))
        dia = self.matrix.todia()
        for offset, data in zip(dia.offsets, dia.data):
            if 0 <= offset <= self.bandwidth:
                # dia stores column-aligned data, as does LAPACK upper storage
                bands[self.bandwidth - offset, offset:] += data[offset:]
        return bands


# ──────────────────────────────────────────────────────────────────────
# Stencils
# ──────────────────────────────────────────────────────────────────────


def _toeplitz(n: int, values: list[float], offsets: list[int]) -> sparse.csr_matrix:
    return sparse.diags(values, offsets, shape=(n, n), format="csr")


def d1(grid: GridSpec) -> sparse.csr_matrix:
    """Central first derivative."""
    h = grid.h
    return _toeplitz(grid.n_points, [-0.5 / h, 0.5 / h], [-1, 1])


def d2(grid: GridSpec) -> sparse.csr_matrix:
    """Central second derivative."""
    h2 = grid.h**2
    return _toeplitz(grid.n_points, [1 / h2, -2 / h2, 1 / h2], [-1, 0, 1])


def d3(grid: GridSpec) -> sparse.csr_matrix:
    """Central third derivative on five points."""
    c = 0.5 / grid.h**3
    return _toeplitz(grid.n_points, [-c, 2 * c, -2 * c, c], [-2, -1, 1, 2])


def d4(grid: GridSpec) -> sparse.csr_matrix:
    """Central fourth derivative on five points."""
    c = 1.0 / grid.h**4
    return _toeplitz(
        grid.n_points, [c, -4 * c, 6 * c, -4 * c, c], [-2, -1, 0, 1, 2]
    )


def p_squared(grid: GridSpec) -> sparse.csr_matrix:
    """Matrix of p² = -d²/dx²."""
    return -d2(grid)


def diag(values: np.ndarray) -> sparse.csr_matrix:
    """Diagonal matrix of sampled values."""
    return sparse.diags(np.asarray(values, dtype=float), 0, format="csr")


def half_anticommutator(
    values: np.ndarray, op: sparse.csr_matrix
) -> sparse.csr_matrix:
    """Return (G op + op G) / 2 for the diagonal G of sampled values."""
    g = diag(values)
    return (0.5 * (g @ op + op @ g)).tocsr()


def conservative_kinetic(grid: GridSpec, c_faces: np.ndarray) -> sparse.csr_matrix:
    """Three-point -d/dx c(x) d/dx with c sampled on the N + 1 cell faces."""
    c_faces = np.asarray(c_faces, dtype=float)
    h2 = grid.h**2
    main = (c_faces[:-1] + c_faces[1:]) / h2
    off = -c_faces[1:-1] / h2
    return sparse.diags([off, main, off], [-1, 0, 1], format="csr")


def quartic_term(grid: GridSpec, w: np.ndarray) -> sparse.csr_matrix:
    """Return p² w(x) p² as L diag(w) L."""
    lap = p_squared(grid)
    return (lap @ diag(w) @ lap).tocsr()
