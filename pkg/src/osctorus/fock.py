"""Truncated oscillator state space, its dual, and wedge-graded tensors.

Coordinates are taken in the number (Fock) basis, declared orthonormal.
A primal vector is a state expanded over levels 0..n-1.  A dual vector is a
functional, applied by plain coordinate pairing f(w) = sum_n f_n w_n, so the
Riesz musical maps between the two sides reduce to coordinate conjugation.

The wedge factor is the exterior algebra of a two-dimensional real space
with orthonormal covector basis (eps1, eps2); graded elements carry one
dual-side coordinate vector per wedge monomial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Side",
    "StructureError",
    "FockVector",
    "GradedElement",
    "basis_vector",
    "random_vector",
    "inner_product",
    "sharp",
    "flat",
    "evaluate",
    "wedge_basis",
    "wedge_dim",
    "random_graded",
    "graded_inner",
]


class StructureError(ValueError):
    """Side-tag or shape mismatch between operands."""


class Side(enum.Enum):
    """Which space a coordinate vector lives in."""

    PRIMAL = "primal"  # states (columns) in the truncated oscillator space
    DUAL = "dual"      # functionals on it

    def other(self) -> "Side":
        return Side.DUAL if self is Side.PRIMAL else Side.PRIMAL


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FockVector:
    """Coordinate vector over levels 0..n-1, tagged with the side it lives on."""

    coords: np.ndarray
    side: Side = Side.PRIMAL

    def __post_init__(self) -> None:
        arr = np.array(self.coords, dtype=np.complex128).reshape(-1)
        if arr.size == 0:
            raise StructureError("empty coordinate vector")
        object.__setattr__(self, "coords", _freeze(arr))
        if not isinstance(self.side, Side):
            raise StructureError(f"bad side tag {self.side!r}")

    @property
    def n(self) -> int:
        return int(self.coords.size)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def _require_like(self, other: "FockVector") -> None:
        if not isinstance(other, FockVector):
            raise TypeError(f"expected FockVector, got {type(other).__name__}")
        if other.side is not self.side:
            raise StructureError(f"side mismatch: {self.side} vs {other.side}")
        if other.n != self.n:
            raise StructureError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._require_like(other)
        return FockVector(self.coords + other.coords, self.side)

    def __sub__(self, other: "FockVector") -> "FockVector":
        self._require_like(other)
        return FockVector(self.coords - other.coords, self.side)

    def __mul__(self, scalar: complex) -> "FockVector":
        return FockVector(self.coords * scalar, self.side)

    __rmul__ = __mul__

    def __neg__(self) -> "FockVector":
        return FockVector(-self.coords, self.side)

    def __call__(self, state: "FockVector") -> complex:
        """Apply a dual vector as a functional on a primal state."""
        return evaluate(self, state)


def basis_vector(level: int, n: int, side: Side = Side.PRIMAL) -> FockVector:
    """Standard basis vector for the given Fock level."""
    if not 0 <= level < n:
        raise StructureError(f"level {level} outside 0..{n - 1}")
    coords = np.zeros(n, dtype=np.complex128)
    coords[level] = 1.0
    return FockVector(coords, side)


def random_vector(n: int, rng: np.random.Generator,
                  side: Side = Side.DUAL) -> FockVector:
    coords = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return FockVector(coords, side)


def inner_product(f: FockVector, g: FockVector) -> complex:
    """Scalar product, anti-linear in the left slot, on either side."""
    f._require_like(g)
    return complex(np.vdot(f.coords, g.coords))


def sharp(f: FockVector) -> FockVector:
    """Riesz representative of a functional: conjugate coordinates, primal side."""
    if f.side is not Side.DUAL:
        raise StructureError("sharp expects a dual-side vector")
    return FockVector(np.conj(f.coords), Side.PRIMAL)


def flat(v: FockVector) -> FockVector:
    """Functional attached to a state: conjugate coordinates, dual side."""
    if v.side is not Side.PRIMAL:
        raise StructureError("flat expects a primal-side vector")
    return FockVector(np.conj(v.coords), Side.DUAL)


def evaluate(f: FockVector, v: FockVector) -> complex:
    """Pair a functional with a state: f(v) = sum_n f_n v_n."""
    if f.side is not Side.DUAL:
        raise StructureError("evaluate expects a dual-side functional")
    if v.side is not Side.PRIMAL:
        raise StructureError("evaluate expects a primal-side state")
    if f.n != v.n:
        raise StructureError(f"dimension mismatch: {f.n} vs {v.n}")
    return complex(np.sum(f.coords * v.coords))


# Wedge monomials over the two covectors eps1, eps2, in a fixed order.
# Degree 3 is the zero space; it appears only as the target of the top
# differential.
_WEDGE_BASIS: dict[int, tuple[tuple[int, ...], ...]] = {
    0: ((),),
    1: ((1,), (2,)),
    2: ((1, 2),),
    3: (),
}


def wedge_basis(degree: int) -> tuple[tuple[int, ...], ...]:
    """Ordered strictly-increasing index tuples spanning the degree-k wedge space."""
    try:
        return _WEDGE_BASIS[degree]
    except KeyError:
        raise StructureError(f"wedge degree {degree} outside 0..3") from None


def wedge_dim(degree: int) -> int:
    return len(wedge_basis(degree))


@dataclass(frozen=True)
class GradedElement:
    """Wedge-degree-k tensor: one dual-side coordinate row per wedge monomial.

    Rows of ``components`` follow the ``wedge_basis(degree)`` order; the wedge
    basis is orthonormal for the induced product on forms.
    """

    degree: int
    components: np.ndarray  # shape (wedge_dim(degree), n)

    def __post_init__(self) -> None:
        dim = wedge_dim(self.degree)
        arr = np.array(self.components, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != dim:
            raise StructureError(
                f"degree-{self.degree} element needs {dim} component rows, "
                f"got shape {arr.shape}")
        object.__setattr__(self, "components", _freeze(arr))

    @classmethod
    def zero(cls, degree: int, n: int) -> "GradedElement":
        return cls(degree, np.zeros((wedge_dim(degree), n), dtype=np.complex128))

    @classmethod
    def from_component(cls, degree: int, index: tuple[int, ...],
                       vec: FockVector) -> "GradedElement":
        """Element with a single wedge monomial carrying ``vec``."""
        if vec.side is not Side.DUAL:
            raise StructureError("graded components live on the dual side")
        basis = wedge_basis(degree)
        if tuple(index) not in basis:
            raise StructureError(f"{index} is not a degree-{degree} wedge index")
        comps = np.zeros((len(basis), vec.n), dtype=np.complex128)
        comps[basis.index(tuple(index))] = vec.coords
        return cls(degree, comps)

    def component(self, index: tuple[int, ...]) -> FockVector:
        basis = wedge_basis(self.degree)
        if tuple(index) not in basis:
            raise StructureError(f"{index} is not a degree-{self.degree} wedge index")
        return FockVector(self.components[basis.index(tuple(index))], Side.DUAL)

    @property
    def n(self) -> int:
        return int(self.components.shape[1])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def _require_like(self, other: "GradedElement") -> None:
        if not isinstance(other, GradedElement):
            raise TypeError(f"expected GradedElement, got {type(other).__name__}")
        if other.degree != self.degree:
            raise StructureError(f"degree mismatch: {self.degree} vs {other.degree}")
        if other.n != self.n:
            raise StructureError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._require_like(other)
        return GradedElement(self.degree, self.components + other.components)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        self._require_like(other)
        return GradedElement(self.degree, self.components - other.components)

    def __mul__(self, scalar: complex) -> "GradedElement":
        return GradedElement(self.degree, self.components * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.degree, -self.components)


def random_graded(degree: int, n: int, rng: np.random.Generator) -> GradedElement:
    comps = rng.standard_normal((wedge_dim(degree), n)) \
        + 1j * rng.standard_normal((wedge_dim(degree), n))
    return GradedElement(degree, comps)


def graded_inner(x: GradedElement, y: GradedElement) -> complex:
    """Sum of component scalar products over the orthonormal wedge basis."""
    x._require_like(y)
    return complex(np.vdot(x.components, y.components))
