"""Infinitesimal metaplectic action in the truncated ladder-operator basis.

Building blocks are the lowering operator a|m> = sqrt(m)|m-1>, its transpose,
and the quadratic combinations

    h = (a+ a + 1/2) / 2,   e = (a+)^2 / 2,   f = a^2 / 2,

which close as [h, e] = e, [h, f] = -f, [e, f] = -2h away from the truncation
boundary (the last two rows and columns).  The real symplectic algebra is
realised by the skew-Hermitian span

    K0 -> i h        (compact rotation direction),
    Kplus -> i (e + f),  Kminus -> e - f   (hyperbolic directions),

and one-parameter groups are matrix exponentials of these, hence unitary.
The dual action on functionals is minus composition with the generator; in
row coordinates it right-multiplies by -dsigma_check(X).

The spectrum of h is (m + 1/2)/2, so the lowering operator precesses at half
the flow rate: the base rotation completes one turn at parameter 4*pi, where
the flow equals -Id; it returns to +Id only after two turns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from scipy.linalg import expm

from .compacts import CompactOp
from .fock import FockVector, GradedElement, Side, StructureError, random_graded

__all__ = [
    "GENERATOR_LABELS",
    "FULL_TURN",
    "SpGenerator",
    "lowering",
    "raising",
    "ladder_blocks",
    "dsigma_check",
    "dsigma_dual",
    "dual_derivative",
    "drho",
    "exponentiate",
    "dual_flow",
    "interior_projector",
    "parity_defect",
    "closure_defect",
    "boundary_closure_residual",
    "equivariance_residuals",
]

GENERATOR_LABELS = ("K0", "Kplus", "Kminus")

# Flow parameter of the K0 direction projecting to one full base rotation.
FULL_TURN = 4.0 * np.pi


def lowering(n: int) -> np.ndarray:
    if n < 2:
        raise StructureError("truncation level must be at least 2")
    return np.diag(np.sqrt(np.arange(1.0, n)), 1).astype(np.complex128)


def raising(n: int) -> np.ndarray:
    return lowering(n).T.copy()


@lru_cache(maxsize=None)
def ladder_blocks(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The quadratic blocks (h, e, f) at truncation n."""
    a = lowering(n)
    adag = a.T
    h = 0.5 * adag @ a + 0.25 * np.eye(n)
    e = 0.5 * adag @ adag
    f = 0.5 * a @ a
    for block in (h, e, f):
        block.setflags(write=False)
    return h, e, f


@dataclass(frozen=True)
class SpGenerator:
    """Real combination c0*K0 + c1*Kplus + c2*Kminus of the basis directions."""

    c0: float = 0.0
    c1: float = 0.0
    c2: float = 0.0

    @classmethod
    def from_label(cls, label: str) -> "SpGenerator":
        try:
            idx = GENERATOR_LABELS.index(label)
        except ValueError:
            raise StructureError(
                f"unknown generator {label!r}; expected one of {GENERATOR_LABELS}"
            ) from None
        coeffs = [0.0, 0.0, 0.0]
        coeffs[idx] = 1.0
        return cls(*coeffs)

    def matrix(self, n: int) -> np.ndarray:
        h, e, f = ladder_blocks(n)
        return (self.c0 * 1j * h
                + self.c1 * 1j * (e + f)
                + self.c2 * (e - f))


GeneratorLike = Union[str, SpGenerator]


def _as_generator(x: GeneratorLike) -> SpGenerator:
    if isinstance(x, SpGenerator):
        return x
    return SpGenerator.from_label(x)


def dsigma_check(gen: GeneratorLike, n: int) -> CompactOp:
    """Skew-Hermitian matrix of the generator on the primal space."""
    return CompactOp(_as_generator(gen).matrix(n))


def dsigma_dual(gen: GeneratorLike, n: int) -> np.ndarray:
    """Matrix of the dual action on functionals (column coordinates).

    Defined by (Df)(v) = -f(Av), i.e. D = -A^T for A = dsigma_check(gen).
    """
    return -dsigma_check(gen, n).matrix.T


def dual_derivative(x, gen: GeneratorLike):
    """Dual action applied to a functional or a graded element."""
    if isinstance(x, FockVector):
        if x.side is not Side.DUAL:
            raise StructureError("dual_derivative expects dual-side data")
        return FockVector(dsigma_dual(gen, x.n) @ x.coords, Side.DUAL)
    if isinstance(x, GradedElement):
        a = dsigma_check(gen, x.n).matrix
        return GradedElement(x.degree, -x.components @ a)
    raise TypeError(f"expected FockVector or GradedElement, got {type(x).__name__}")


def drho(gen: GeneratorLike, a: CompactOp) -> CompactOp:
    """Conjugation derivative on the algebra: the commutator with the generator."""
    g = dsigma_check(gen, a.n).matrix
    return CompactOp(g @ a.matrix - a.matrix @ g)


def exponentiate(gen: GeneratorLike, t: float, n: int) -> CompactOp:
    """Unitary one-parameter flow exp(t * dsigma_check(gen))."""
    return CompactOp(expm(t * _as_generator(gen).matrix(n)))


def dual_flow(gen: GeneratorLike, t: float, n: int) -> np.ndarray:
    """Flow on functionals: f -> f o U^-1, i.e. conj(U) on column coordinates."""
    return np.conj(exponentiate(gen, t, n).matrix)


def interior_projector(n: int) -> np.ndarray:
    """Projector onto levels 0..n-3, where quadratic identities hold exactly."""
    p = np.zeros((n, n), dtype=np.complex128)
    keep = max(n - 2, 0)
    p[:keep, :keep] = np.eye(keep)
    return p


def parity_defect(n: int) -> float:
    """Largest entry of any generator connecting levels of opposite parity."""
    m, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    odd = (m - k) % 2 == 1
    worst = 0.0
    for label in GENERATOR_LABELS:
        g = dsigma_check(label, n).matrix
        worst = max(worst, float(np.max(np.abs(g[odd]), initial=0.0)))
    return worst


def closure_defect(n: int) -> np.ndarray:
    """Matrix defect of [e, f] + 2h; nonzero only on boundary rows."""
    h, e, f = ladder_blocks(n)
    return e @ f - f @ e + 2.0 * h


def boundary_closure_residual(n: int, amplitudes: np.ndarray) -> float:
    """Closure defect applied to a fixed coordinate profile, relative norm.

    ``amplitudes`` assigns coefficients to the lowest levels; it is padded
    (or truncated) to length n.  The residual vanishes once the truncation
    boundary clears the profile's support, so it decays as n grows.
    """
    amp = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    v = np.zeros(n, dtype=np.complex128)
    take = min(n, amp.size)
    v[:take] = amp[:take]
    nv = np.linalg.norm(v)
    if nv == 0.0:
        raise StructureError("zero test profile")
    return float(np.linalg.norm(closure_defect(n) @ v) / nv)


def _restrict_interior(components: np.ndarray, n: int) -> np.ndarray:
    out = components.copy()
    out[..., max(n - 2, 0):] = 0.0
    return out


def equivariance_residuals(gen: GeneratorLike, n: int,
                           rng: np.random.Generator | None = None,
                           samples: int = 20,
                           interior: bool = False) -> dict[str, float]:
    """Max residuals of the infinitesimal equivariance identities.

    Keys:
      action      derivative of the right action against the product rule
                  with the conjugation derivative on the algebra side;
      evaluation  derivative of the dual pairing along the flow, both in
                  closed form and by central finite differences;
      closure     quadratic commutation relations on the interior block;
      product     (K0 only) derivative of the operator-valued product,
                  with the anti-linear left slot entering through the
                  conjugated generator;
      norm        (K0 only) invariance of the graded norm along the flow.

    With ``interior`` set, sampled coordinates are supported on levels
    0..n-3 so that the identities avoid the truncation boundary.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    g = _as_generator(gen)
    a_mat = g.matrix(n)
    is_compact = (g.c1, g.c2) == (0.0, 0.0) and g.c0 != 0.0

    def sample_graded(degree: int) -> GradedElement:
        x = random_graded(degree, n, rng)
        comps = _restrict_interior(x.components, n) if interior else x.components
        return GradedElement(degree, comps)

    def sample_op() -> np.ndarray:
        m = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        if interior:
            keep = max(n - 2, 0)
            m[keep:, :] = 0.0
            m[:, keep:] = 0.0
        return m

    res: dict[str, float] = {}

    # Right-action equivariance on graded elements.
    worst = 0.0
    for _ in range(samples):
        x = sample_graded(1)
        op = sample_op()
        lhs = -(x.components @ op) @ a_mat
        rhs = (-x.components @ a_mat) @ op \
            + x.components @ (a_mat @ op - op @ a_mat)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    res["action"] = worst

    # Pairing derivative: closed form and finite differences of the flow.
    worst = 0.0
    delta = 1e-2
    u_plus = expm(delta * a_mat)
    u_minus = expm(-delta * a_mat)
    for _ in range(samples):
        fvec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vvec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if interior:
            fvec[max(n - 2, 0):] = 0.0
            vvec[max(n - 2, 0):] = 0.0
        exact = np.sum((-a_mat.T @ fvec) * vvec) + np.sum(fvec * (a_mat @ vvec))
        phi_plus = np.sum((np.conj(u_plus) @ fvec) * (u_plus @ vvec))
        phi_minus = np.sum((np.conj(u_minus) @ fvec) * (u_minus @ vvec))
        fd = (phi_plus - phi_minus) / (2.0 * delta)
        scale = max(np.linalg.norm(fvec) * np.linalg.norm(vvec), 1.0)
        worst = max(worst, abs(exact) / scale, abs(fd) / scale)
    res["evaluation"] = worst

    # Commutation relations of the quadratic blocks on the interior.
    h, e, f = ladder_blocks(n)
    proj = interior_projector(n)
    rel = max(
        float(np.max(np.abs(proj @ (h @ e - e @ h - e) @ proj))),
        float(np.max(np.abs(proj @ (h @ f - f @ h + f) @ proj))),
        float(np.max(np.abs(proj @ (e @ f - f @ e + 2.0 * h) @ proj))),
    )
    res["closure"] = rel

    if is_compact:
        # Product equivariance along the compact direction.  The left slot is
        # anti-linear, so its derivative enters through conj(-A^T) = A applied
        # to the conjugated coordinates; in matrix form both slots reduce to
        # the commutator with A.
        worst = 0.0
        for _ in range(samples):
            x = sample_graded(1)
            y = sample_graded(1)
            m = x.components.conj().T @ y.components
            lhs = a_mat @ m - m @ a_mat
            left = (-x.components @ a_mat).conj().T @ y.components
            right = x.components.conj().T @ (-y.components @ a_mat)
            worst = max(worst, float(np.max(np.abs(lhs - left - right))))
        res["product"] = worst

        # Norm invariance along the unitary flow.
        worst = 0.0
        for _ in range(samples):
            x = sample_graded(1)
            t = float(rng.uniform(-3.0, 3.0))
            w = dual_flow(g, t, n)
            moved = x.components @ w.T
            worst = max(worst, abs(float(np.linalg.norm(moved)) - x.norm))
        res["norm"] = worst

    return res
