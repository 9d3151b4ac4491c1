"""Truncated operator algebra: n x n complex matrices with operator norm.

At a finite truncation every operator is of finite rank, so the compacts
coincide with the full matrix algebra; what survives of the infinite picture
is the C*-structure (adjoint, operator norm, rank-one calculus), and this is
what the identities below exercise.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .fock import FockVector, Side, StructureError

__all__ = [
    "SINGULAR_RELTOL",
    "RankThresholdWarning",
    "CompactOp",
    "rank_one",
    "compose",
    "adjoint",
    "op_norm",
    "random_compact",
    "threshold_rank",
]

# Single global cut for numerical rank decisions: singular values below this
# fraction of the largest one count as zero.
SINGULAR_RELTOL = 1e-8


class RankThresholdWarning(UserWarning):
    """A singular value or eigenvalue sits near the rank threshold."""


@dataclass(frozen=True)
class CompactOp:
    """Operator on the primal space, stored as a dense matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.matrix, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise StructureError(f"expected a square matrix, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @classmethod
    def identity(cls, n: int) -> "CompactOp":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def zero(cls, n: int) -> "CompactOp":
        return cls(np.zeros((n, n), dtype=np.complex128))

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    def _require_like(self, other: "CompactOp") -> None:
        if not isinstance(other, CompactOp):
            raise TypeError(f"expected CompactOp, got {type(other).__name__}")
        if other.n != self.n:
            raise StructureError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "CompactOp") -> "CompactOp":
        self._require_like(other)
        return CompactOp(self.matrix + other.matrix)

    def __sub__(self, other: "CompactOp") -> "CompactOp":
        self._require_like(other)
        return CompactOp(self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "CompactOp":
        return CompactOp(self.matrix * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "CompactOp":
        return CompactOp(-self.matrix)

    def __matmul__(self, other: "CompactOp") -> "CompactOp":
        return compose(self, other)

    def apply(self, v: FockVector) -> FockVector:
        """Act on a primal state."""
        if v.side is not Side.PRIMAL:
            raise StructureError("operators act on primal-side vectors")
        if v.n != self.n:
            raise StructureError(f"dimension mismatch: {self.n} vs {v.n}")
        return FockVector(self.matrix @ v.coords, Side.PRIMAL)


def rank_one(u: FockVector, v: FockVector) -> CompactOp:
    """Operator w -> v(w) u built from a state u and a functional v."""
    if u.side is not Side.PRIMAL:
        raise StructureError("rank_one expects a primal-side first argument")
    if v.side is not Side.DUAL:
        raise StructureError("rank_one expects a dual-side second argument")
    if u.n != v.n:
        raise StructureError(f"dimension mismatch: {u.n} vs {v.n}")
    return CompactOp(np.outer(u.coords, v.coords))


def compose(a: CompactOp, b: CompactOp) -> CompactOp:
    a._require_like(b)
    return CompactOp(a.matrix @ b.matrix)


def adjoint(a: CompactOp) -> CompactOp:
    return CompactOp(a.matrix.conj().T)


def op_norm(a: CompactOp) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(a.matrix, 2))


def random_compact(n: int, rng: np.random.Generator) -> CompactOp:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return CompactOp(m / np.sqrt(2.0 * n))


def threshold_rank(singular_values: np.ndarray,
                   reltol: float = SINGULAR_RELTOL,
                   label: str = "") -> int:
    """Count singular values above ``reltol`` times the largest.

    Warns (never silently) when some value falls inside a decade of the cut,
    since the rank decision is then ambiguous.
    """
    s = np.asarray(singular_values, dtype=float)
    if s.size == 0 or s.max() == 0.0:
        return 0
    cut = reltol * s.max()
    ambiguous = (s > 0.1 * cut) & (s < 10.0 * cut)
    if np.any(ambiguous):
        warnings.warn(
            f"rank threshold ambiguity{f' in {label}' if label else ''}: "
            f"{int(ambiguous.sum())} value(s) within a decade of the cut "
            f"{cut:.3e}", RankThresholdWarning, stacklevel=2)
    return int(np.count_nonzero(s >= cut))
