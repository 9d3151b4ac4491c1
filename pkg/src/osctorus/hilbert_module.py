"""Right Hilbert-module structure of graded elements over the matrix algebra.

The algebra acts by composing each dual-side coefficient with an operator,

    (alpha (x) u) . a  =  alpha (x) (u o a),

and the operator-valued product pairs two elements into the algebra,

    (alpha (x) u, beta (x) v)  =  g0(alpha, beta) u# (x) v,

extended additively over degrees, with distinct wedge degrees orthogonal.
In row coordinates the action is ``u @ a`` and the product of homogeneous
elements is ``conj(u)^T v`` summed over matching wedge monomials, which makes
hermitian symmetry, one-sided linearity and positivity exact matrix facts.

Four elements, one per wedge monomial with a common nonzero pivot vector,
generate everything: the reconstructing coefficients are rank-one operators
against the pivot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .compacts import CompactOp, op_norm
from .fock import (
    FockVector,
    GradedElement,
    Side,
    StructureError,
    random_graded,
    wedge_basis,
)

__all__ = [
    "ModuleElement",
    "act",
    "ch_product",
    "module_norm",
    "generators",
    "reconstruct",
    "assemble",
    "random_element",
]

ElementLike = Union[GradedElement, "ModuleElement"]


@dataclass(frozen=True)
class ModuleElement:
    """Possibly non-homogeneous element: graded parts with distinct degrees."""

    parts: tuple[GradedElement, ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted(self.parts, key=lambda p: p.degree))
        degrees = [p.degree for p in parts]
        if len(set(degrees)) != len(degrees):
            raise StructureError(f"repeated degrees {degrees}")
        sizes = {p.n for p in parts}
        if len(sizes) > 1:
            raise StructureError(f"mixed truncation levels {sorted(sizes)}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_graded(cls, g: GradedElement) -> "ModuleElement":
        return cls((g,))

    @classmethod
    def zero(cls, n: int) -> "ModuleElement":
        return cls((GradedElement.zero(0, n),))

    @property
    def n(self) -> int:
        return self.parts[0].n

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.parts)

    def part(self, degree: int) -> GradedElement:
        for p in self.parts:
            if p.degree == degree:
                return p
        return GradedElement.zero(degree, self.n)

    @property
    def norm(self) -> float:
        return float(np.sqrt(sum(p.norm ** 2 for p in self.parts)))

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        other = as_module_element(other)
        merged: dict[int, GradedElement] = {p.degree: p for p in self.parts}
        for p in other.parts:
            merged[p.degree] = merged[p.degree] + p if p.degree in merged else p
        return ModuleElement(tuple(merged.values()))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-1.0) * as_module_element(other)

    def __mul__(self, scalar: complex) -> "ModuleElement":
        return ModuleElement(tuple(p * scalar for p in self.parts))

    __rmul__ = __mul__


def as_module_element(x: ElementLike) -> ModuleElement:
    if isinstance(x, ModuleElement):
        return x
    if isinstance(x, GradedElement):
        return ModuleElement.from_graded(x)
    raise TypeError(f"expected a module element, got {type(x).__name__}")


def act(x: ElementLike, a: CompactOp):
    """Right action: compose every dual-side coefficient with ``a``."""
    if isinstance(x, GradedElement):
        if x.n != a.n:
            raise StructureError(f"dimension mismatch: {x.n} vs {a.n}")
        return GradedElement(x.degree, x.components @ a.matrix)
    x = as_module_element(x)
    return ModuleElement(tuple(act(p, a) for p in x.parts))


def ch_product(x: ElementLike, y: ElementLike) -> CompactOp:
    """Operator-valued pairing, anti-linear in the left slot.

    Distinct wedge degrees and distinct wedge monomials are orthogonal, so the
    matrix is the sum over matching monomials of conj(u)^T v.
    """
    xm, ym = as_module_element(x), as_module_element(y)
    if xm.n != ym.n:
        raise StructureError(f"dimension mismatch: {xm.n} vs {ym.n}")
    out = np.zeros((xm.n, xm.n), dtype=np.complex128)
    for p in xm.parts:
        q = ym.part(p.degree)
        out += p.components.conj().T @ q.components
    return CompactOp(out)


def module_norm(x: ElementLike) -> float:
    """Norm induced by the operator-valued product."""
    return float(np.sqrt(max(op_norm(ch_product(x, x)), 0.0)))


def generators(n: int, pivot: FockVector | None = None) -> list[ModuleElement]:
    """One generator per wedge monomial, all carrying the same pivot vector.

    The pivot defaults to the level-0 functional; any nonzero dual vector
    works and is accepted to allow basis-choice checks.
    """
    if pivot is None:
        coords = np.zeros(n, dtype=np.complex128)
        coords[0] = 1.0
        pivot = FockVector(coords, Side.DUAL)
    if pivot.side is not Side.DUAL:
        raise StructureError("pivot must be a dual-side vector")
    if pivot.n != n:
        raise StructureError(f"pivot has size {pivot.n}, expected {n}")
    if pivot.norm == 0.0:
        raise StructureError("pivot vector must be nonzero")
    gens = []
    for degree in (0, 1, 2):
        for index in wedge_basis(degree):
            gens.append(ModuleElement.from_graded(
                GradedElement.from_component(degree, index, pivot)))
    return gens


def _generator_support(gen: ModuleElement) -> tuple[int, int, np.ndarray]:
    """Degree, wedge row and pivot coordinates of a single-monomial generator."""
    if len(gen.parts) != 1:
        raise StructureError("generator must be homogeneous")
    part = gen.parts[0]
    rows = [i for i in range(part.components.shape[0])
            if np.any(part.components[i])]
    if len(rows) != 1:
        raise StructureError("generator must occupy a single wedge monomial")
    return part.degree, rows[0], part.components[rows[0]]


def reconstruct(x: ElementLike, gens: Iterable[ModuleElement]) -> list[CompactOp]:
    """Coefficients a_g with sum_g gens[g] . a_g = x.

    Each coefficient is the rank-one map k -> u(k) pivot# / |pivot|^2 built
    from the component u of x sitting in the generator's wedge slot.
    """
    xm = as_module_element(x)
    coeffs = []
    for gen in gens:
        degree, row, w = _generator_support(gen)
        if w.size != xm.n:
            raise StructureError(f"dimension mismatch: {w.size} vs {xm.n}")
        u = xm.part(degree).components[row]
        wnorm2 = float(np.vdot(w, w).real)
        coeffs.append(CompactOp(np.outer(np.conj(w), u) / wnorm2))
    return coeffs


def assemble(gens: Iterable[ModuleElement],
             coeffs: Iterable[CompactOp]) -> ModuleElement:
    """Resum generators against coefficients: sum_g gens[g] . coeffs[g]."""
    total: ModuleElement | None = None
    for gen, c in zip(gens, coeffs):
        term = act(gen, c)
        total = term if total is None else total + term
    if total is None:
        raise StructureError("empty generating family")
    return total


def random_element(n: int, rng: np.random.Generator,
                   degrees: Iterable[int] = (0, 1, 2)) -> ModuleElement:
    return ModuleElement(tuple(random_graded(k, n, rng) for k in degrees))
