"""Named verification suites shared by the command line driver and the tests.

Every check produces one record (name, anchor, value, threshold, pass) where
``value`` is the measured residual or deviation and ``anchor`` names the
mathematical identity being exercised.  Checks are deterministic: each suite
derives its random stream from the run seed and a fixed suite index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import subspace_angles

from . import fock, hilbert_module as hm
from .compacts import CompactOp, adjoint, compose, op_norm, rank_one, random_compact
from .config import RunConfig
from .fock import (
    FockVector,
    GradedElement,
    Side,
    basis_vector,
    evaluate,
    flat,
    graded_inner,
    inner_product,
    random_graded,
    random_vector,
    sharp,
    wedge_dim,
)
from .hilbert_module import (
    act,
    assemble,
    ch_product,
    generators,
    module_norm,
    random_element,
    reconstruct,
)
from .metaplectic import (
    FULL_TURN,
    GENERATOR_LABELS,
    boundary_closure_residual,
    drho,
    dsigma_check,
    dsigma_dual,
    equivariance_residuals,
    exponentiate,
    interior_projector,
    parity_defect,
)
from .torus_complex import (
    TORUS_BETTI,
    CochainField,
    GaugeField,
    TorusGrid,
    act_operator_field,
    act_section,
    ch_equivariance_check,
    cohomology_ranks,
    coupled_d,
    coupled_matrix,
    gauge_transport_compacts,
    harmonic_ch_rank,
    hodge_laplacian,
    random_field,
    section_ch_product,
    symbol_exactness,
    transport_section,
    transported_shift,
)

__all__ = ["CheckRecord", "SUITES", "run_suite", "run_all"]


@dataclass(frozen=True)
class CheckRecord:
    name: str
    anchor: str
    value: float
    threshold: float
    passed: bool

    @classmethod
    def make(cls, cfg: RunConfig, name: str, anchor: str, value: float,
             default_threshold: float) -> "CheckRecord":
        threshold = cfg.tolerance(name, default_threshold)
        value = float(value)
        return cls(name, anchor, value, threshold, value <= threshold)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "value": self.value,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def _gauge_for(cfg: RunConfig, grid: TorusGrid, n: int,
               rng: np.random.Generator) -> GaugeField | None:
    if cfg.gauge == "random":
        return GaugeField.random(grid, n, rng)
    return None


# ----------------------------------------------------------------------
# module suite: musical maps, operator algebra, module axioms, generation


def module_suite(cfg: RunConfig) -> list[CheckRecord]:
    rng = np.random.default_rng([cfg.seed, 1])
    n = cfg.n
    rec: list[CheckRecord] = []

    worst = 0.0
    for _ in range(50):
        v = random_vector(n, rng, Side.PRIMAL)
        f = random_vector(n, rng, Side.DUAL)
        worst = max(worst,
                    (sharp(flat(v)) - v).norm,
                    (flat(sharp(f)) - f).norm)
    rec.append(CheckRecord.make(cfg, "musical-involution", "musical maps",
                                worst, 0.0))

    worst = 0.0
    for _ in range(100):
        v = random_vector(n, rng, Side.PRIMAL)
        w = random_vector(n, rng, Side.PRIMAL)
        lhs = inner_product(flat(v), flat(w))
        rhs = inner_product(w, v)
        worst = max(worst, abs(lhs - rhs))
    rec.append(CheckRecord.make(cfg, "dual-anti-unitarity", "musical maps",
                                worst, 1e-12))

    worst = 0.0
    positivity = 0.0
    for _ in range(50):
        k = int(rng.integers(0, 3))
        x = random_graded(k, n, rng)
        y = random_graded(k, n, rng)
        worst = max(worst, abs(graded_inner(x, y) - np.conj(graded_inner(y, x))))
        q = graded_inner(x, x)
        positivity = max(positivity, abs(q.imag), max(0.0, -q.real))
    rec.append(CheckRecord.make(cfg, "graded-conjugate-symmetry",
                                "graded product", worst, 1e-12))
    rec.append(CheckRecord.make(cfg, "graded-positivity", "graded product",
                                positivity, 1e-10))

    worst_cstar = 0.0
    worst_sub = 0.0
    for _ in range(100):
        a = random_compact(n, rng)
        b = random_compact(n, rng)
        na = op_norm(a)
        worst_cstar = max(worst_cstar,
                          abs(op_norm(adjoint(a) @ a) - na ** 2) / max(na ** 2, 1e-30))
        worst_sub = max(worst_sub,
                        op_norm(a @ b) - na * op_norm(b))
    rec.append(CheckRecord.make(cfg, "cstar-identity", "operator algebra",
                                worst_cstar, 1e-10))
    rec.append(CheckRecord.make(cfg, "submultiplicativity", "operator algebra",
                                max(worst_sub, 0.0), 1e-10))

    worst_adj = 0.0
    worst_norm = 0.0
    worst_comp = 0.0
    for _ in range(100):
        u = random_vector(n, rng, Side.PRIMAL)
        v = random_vector(n, rng, Side.DUAL)
        w = random_vector(n, rng, Side.PRIMAL)
        h = random_vector(n, rng, Side.DUAL)
        r = rank_one(u, v)
        worst_adj = max(worst_adj, float(np.abs(
            adjoint(r).matrix - rank_one(sharp(v), flat(u)).matrix).max()))
        worst_norm = max(worst_norm, abs(op_norm(r) - u.norm * v.norm))
        lhs = compose(r, rank_one(w, h))
        rhs = evaluate(v, w) * rank_one(u, h)
        worst_comp = max(worst_comp, float(np.abs(lhs.matrix - rhs.matrix).max()))
    rec.append(CheckRecord.make(cfg, "rank-one-adjoint", "rank-one calculus",
                                worst_adj, 0.0))
    rec.append(CheckRecord.make(cfg, "rank-one-norm", "rank-one calculus",
                                worst_norm, 1e-10))
    rec.append(CheckRecord.make(cfg, "rank-one-composition", "rank-one calculus",
                                worst_comp, 1e-10))

    ident = CompactOp.identity(n)
    worst_id = 0.0
    worst_assoc = 0.0
    worst_r1 = 0.0
    for _ in range(100):
        x = random_element(n, rng)
        a = random_compact(n, rng)
        b = random_compact(n, rng)
        worst_id = max(worst_id, (act(x, ident) - x).norm)
        worst_assoc = max(worst_assoc,
                          (act(act(x, a), b) - act(x, compose(a, b))).norm)
        u = random_vector(n, rng, Side.DUAL)
        w = random_vector(n, rng, Side.PRIMAL)
        g = random_vector(n, rng, Side.DUAL)
        xg = GradedElement.from_component(1, (1,), u)
        lhs = act(xg, rank_one(w, g))
        rhs = evaluate(u, w) * GradedElement.from_component(1, (1,), g)
        worst_r1 = max(worst_r1, (lhs - rhs).norm)
    rec.append(CheckRecord.make(cfg, "action-identity", "module action",
                                worst_id, 1e-13))
    rec.append(CheckRecord.make(cfg, "action-associativity", "module action",
                                worst_assoc, 1e-12))
    rec.append(CheckRecord.make(cfg, "action-rank-one", "module action",
                                worst_r1, 1e-12))

    worst_herm = 0.0
    worst_right = 0.0
    worst_left = 0.0
    worst_pos = 0.0
    for _ in range(100):
        x = random_element(n, rng)
        y = random_element(n, rng)
        a = random_compact(n, rng)
        pxy = ch_product(x, y)
        worst_herm = max(worst_herm, float(np.abs(
            adjoint(pxy).matrix - ch_product(y, x).matrix).max()))
        worst_right = max(worst_right, float(np.abs(
            ch_product(x, act(y, a)).matrix - compose(pxy, a).matrix).max()))
        worst_left = max(worst_left, float(np.abs(
            ch_product(act(x, a), y).matrix - compose(adjoint(a), pxy).matrix).max()))
        eigs = np.linalg.eigvalsh(ch_product(x, x).matrix)
        worst_pos = max(worst_pos, max(0.0, -float(eigs.min())))
    rec.append(CheckRecord.make(cfg, "product-hermitian", "module product",
                                worst_herm, 1e-10))
    rec.append(CheckRecord.make(cfg, "product-right-linear", "module product",
                                worst_right, 1e-10))
    rec.append(CheckRecord.make(cfg, "product-left-antilinear", "module product",
                                worst_left, 1e-10))
    rec.append(CheckRecord.make(cfg, "product-positivity", "module product",
                                worst_pos, 1e-10))

    worst_homog = 0.0
    worst_deg0 = 0.0
    for _ in range(100):
        k = int(rng.integers(0, 3))
        alpha = rng.standard_normal(wedge_dim(k))
        fv = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        elem = GradedElement(k, np.outer(alpha, fv))
        expected = float(np.linalg.norm(alpha) * np.linalg.norm(fv))
        worst_homog = max(worst_homog, abs(module_norm(elem) - expected))
        f0 = GradedElement(0, fv[None, :])
        worst_deg0 = max(worst_deg0, abs(
            op_norm(ch_product(f0, f0)) - float(np.linalg.norm(fv)) ** 2))
    rec.append(CheckRecord.make(cfg, "norm-homogeneous", "module norm",
                                worst_homog, 1e-10))
    rec.append(CheckRecord.make(cfg, "norm-degree-zero", "module norm",
                                worst_deg0, 1e-10))

    gens = generators(n)
    worst_round = 0.0
    for _ in range(100):
        x = random_element(n, rng)
        coeffs = reconstruct(x, gens)
        worst_round = max(worst_round, (assemble(gens, coeffs) - x).norm)
    rec.append(CheckRecord.make(cfg, "generation-roundtrip", "finite generation",
                                worst_round, 1e-10))

    zero = hm.ModuleElement.zero(n)
    zero_coeffs = reconstruct(zero, gens)
    worst_zero = max(float(np.abs(c.matrix).max()) for c in zero_coeffs)
    rec.append(CheckRecord.make(cfg, "generation-zero", "finite generation",
                                worst_zero, 0.0))
    return rec


# ----------------------------------------------------------------------
# equivariance suite: generator algebra, flows, double cover


def equivariance_suite(cfg: RunConfig) -> list[CheckRecord]:
    rng = np.random.default_rng([cfg.seed, 2])
    n = cfg.n
    rec: list[CheckRecord] = []

    worst = max(
        float(np.abs(dsigma_check(label, n).matrix
                     + dsigma_check(label, n).matrix.conj().T).max())
        for label in GENERATOR_LABELS)
    rec.append(CheckRecord.make(cfg, "generator-skewness", "oscillator algebra",
                                worst, 1e-12))

    rec.append(CheckRecord.make(cfg, "generator-parity", "oscillator algebra",
                                parity_defect(n), 0.0))

    closure = equivariance_residuals("K0", n, rng, samples=1)["closure"]
    rec.append(CheckRecord.make(cfg, "ladder-closure-interior",
                                "oscillator algebra", closure, 1e-10))

    proj = interior_projector(n)
    b1 = dsigma_check("Kplus", n).matrix
    b2 = dsigma_check("Kminus", n).matrix
    a0 = dsigma_check("K0", n).matrix
    bracket = proj @ (b1 @ b2 - b2 @ b1 - 4.0 * a0) @ proj
    rec.append(CheckRecord.make(cfg, "real-form-bracket", "oscillator algebra",
                                float(np.abs(bracket).max()), 1e-10))

    worst = 0.0
    for label in GENERATOR_LABELS:
        a = dsigma_check(label, n).matrix
        d = dsigma_dual(label, n)
        for _ in range(20):
            f = random_vector(n, rng, Side.DUAL)
            v = random_vector(n, rng, Side.PRIMAL)
            resid = abs(complex(np.sum((d @ f.coords) * v.coords))
                        + complex(np.sum(f.coords * (a @ v.coords))))
            worst = max(worst, resid / max(f.norm * v.norm, 1e-30))
    rec.append(CheckRecord.make(cfg, "dual-pairing", "dual pairing",
                                worst, 1e-13))

    worst = 0.0
    keep = max(n - 2, 0)
    for label in GENERATOR_LABELS:
        a = dsigma_check(label, n).matrix
        for _ in range(20):
            v = random_vector(n, rng, Side.PRIMAL).coords.copy()
            h = random_vector(n, rng, Side.DUAL).coords.copy()
            v[keep:] = 0.0
            h[keep:] = 0.0
            m = np.outer(v, h)
            lhs = a @ m - m @ a
            rhs = np.outer(a @ v, h) + np.outer(v, -a.T @ h)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    rec.append(CheckRecord.make(cfg, "rank-one-derivation",
                                "infinitesimal equivariance", worst, 1e-10))

    res_k0 = equivariance_residuals("K0", n, rng, samples=25)
    rec.append(CheckRecord.make(cfg, "action-equivariance-compact",
                                "infinitesimal equivariance",
                                res_k0["action"], 1e-10))
    rec.append(CheckRecord.make(cfg, "product-equivariance-compact",
                                "infinitesimal equivariance",
                                res_k0["product"], 1e-10))
    rec.append(CheckRecord.make(cfg, "norm-invariance-compact",
                                "infinitesimal equivariance",
                                res_k0["norm"], 1e-10))

    res_plus = equivariance_residuals("Kplus", n, rng, samples=25, interior=True)
    res_minus = equivariance_residuals("Kminus", n, rng, samples=25, interior=True)
    rec.append(CheckRecord.make(cfg, "action-equivariance-raising",
                                "infinitesimal equivariance",
                                res_plus["action"], 1e-10))
    rec.append(CheckRecord.make(cfg, "action-equivariance-boost",
                                "infinitesimal equivariance",
                                res_minus["action"], 1e-10))
    rec.append(CheckRecord.make(cfg, "evaluation-derivative",
                                "infinitesimal equivariance",
                                max(res_k0["evaluation"],
                                    res_plus["evaluation"],
                                    res_minus["evaluation"]), 1e-10))

    worst_unitary = 0.0
    for label in GENERATOR_LABELS:
        for _ in range(5):
            t = float(rng.uniform(-2.0, 2.0))
            u = exponentiate(label, t, n).matrix
            worst_unitary = max(worst_unitary, float(np.abs(
                u.conj().T @ u - np.eye(n)).max()))
    rec.append(CheckRecord.make(cfg, "flow-unitarity", "unitary flow",
                                worst_unitary, 1e-10))

    worst_add = 0.0
    for _ in range(10):
        t, s = rng.uniform(-2.0, 2.0, size=2)
        lhs = exponentiate("K0", t, n).matrix @ exponentiate("K0", s, n).matrix
        rhs = exponentiate("K0", t + s, n).matrix
        worst_add = max(worst_add, float(np.abs(lhs - rhs).max()))
    rec.append(CheckRecord.make(cfg, "flow-additivity", "unitary flow",
                                worst_add, 1e-12))

    eye = np.eye(n)
    one_turn = exponentiate("K0", FULL_TURN, n).matrix
    two_turns = exponentiate("K0", 2.0 * FULL_TURN, n).matrix
    rec.append(CheckRecord.make(cfg, "double-cover-phase", "double cover",
                                float(np.abs(one_turn + eye).max()), 1e-8))
    rec.append(CheckRecord.make(cfg, "double-cover-return", "double cover",
                                float(np.abs(two_turns - eye).max()), 1e-8))

    profile = np.ones(6)
    r_small = boundary_closure_residual(6, profile)
    r_large = boundary_closure_residual(12, profile)
    ratio = r_large / max(r_small, 1e-300)
    rec.append(CheckRecord.make(cfg, "boundary-closure-decay",
                                "truncation boundary", ratio, 0.5))
    return rec


# ----------------------------------------------------------------------
# cohomology suite: nilpotency, equivariance, ranks, symbols


def cohomology_suite(cfg: RunConfig) -> list[CheckRecord]:
    rng = np.random.default_rng([cfg.seed, 3])
    n = cfg.n
    grid = TorusGrid(cfg.grid)
    gauge = _gauge_for(cfg, grid, n, rng)
    rec: list[CheckRecord] = []

    a0 = coupled_matrix(grid, 0, n, gauge)
    a1 = coupled_matrix(grid, 1, n, gauge)
    rec.append(CheckRecord.make(cfg, "nilpotency", "cochain nilpotency",
                                float(np.abs(a1 @ a0).max()), 1e-12))

    small_n = min(n, 4)
    small_grid = TorusGrid(min(cfg.grid, 6))
    worst = 0.0
    for _ in range(2):
        g = GaugeField.random(small_grid, small_n, rng)
        b0 = coupled_matrix(small_grid, 0, small_n, g)
        b1 = coupled_matrix(small_grid, 1, small_n, g)
        worst = max(worst, float(np.abs(b1 @ b0).max()))
    rec.append(CheckRecord.make(cfg, "nilpotency-random-gauge",
                                "cochain nilpotency", worst, 1e-12))

    worst = 0.0
    for _ in range(20):
        k = int(rng.integers(0, 2))
        field = random_field(grid, k, n, rng)
        a = random_compact(n, rng)
        worst = max(worst, ch_equivariance_check(field, a, gauge))
    rec.append(CheckRecord.make(cfg, "module-equivariance", "module equivariance",
                                worst, 1e-12 if gauge is None else 1e-10))

    worst = 0.0
    for _ in range(10):
        g = GaugeField.random(small_grid, small_n, rng)
        field = random_field(small_grid, int(rng.integers(0, 2)), small_n, rng)
        a = random_compact(small_n, rng)
        worst = max(worst, ch_equivariance_check(field, a, g))
    rec.append(CheckRecord.make(cfg, "module-equivariance-random-gauge",
                                "module equivariance", worst, 1e-10))

    ranks = cohomology_ranks(n, cfg.grid, gauge)
    expected = tuple(b * n for b in TORUS_BETTI)
    rec.append(CheckRecord.make(cfg, "rank-match", "cohomology rank",
                                max(abs(r - e) for r, e in zip(ranks, expected)),
                                0.5))

    scalar_ranks = cohomology_ranks(1, cfg.grid)
    rec.append(CheckRecord.make(cfg, "rank-scalar", "cohomology rank",
                                max(abs(r - e) for r, e in
                                    zip(scalar_ranks, TORUS_BETTI)), 0.5))

    worst = 0.0
    h = grid.spacing
    for _ in range(10):
        s = random_field(grid, 0, n, rng)
        c = rng.standard_normal((grid.size, grid.size)) \
            + 1j * rng.standard_normal((grid.size, grid.size))
        cs = CochainField(grid, 0, s.values * c[:, :, None, None])
        lhs = coupled_d(cs, gauge)
        ds = coupled_d(s, gauge)
        for axis in (0, 1):
            dc = (np.roll(c, -1, axis=axis) - c) / h
            shifted = transported_shift(s, gauge, axis)
            rhs = dc[:, :, None] * shifted.values[:, :, 0, :] \
                + c[:, :, None] * ds.values[:, :, axis, :]
            worst = max(worst, float(np.abs(lhs.values[:, :, axis, :] - rhs).max()))
    rec.append(CheckRecord.make(cfg, "product-rule", "product rule",
                                worst, 1e-10))

    failures = 0
    trials = 50
    for _ in range(trials):
        tau = rng.standard_normal(2)
        while np.linalg.norm(tau) == 0.0:
            tau = rng.standard_normal(2)
        if not symbol_exactness(tau):
            failures += 1
    if not symbol_exactness(np.array([1.0, 0.0])):
        failures += 1
    rec.append(CheckRecord.make(cfg, "symbol-exactness", "principal symbol",
                                float(failures), 0.0))

    rejected = 0.0
    try:
        symbol_exactness(np.zeros(2))
        rejected = 1.0
    except fock.StructureError:
        rejected = 0.0
    rec.append(CheckRecord.make(cfg, "symbol-zero-rejected", "principal symbol",
                                rejected, 0.0))
    return rec


# ----------------------------------------------------------------------
# hodge suite: kernels, harmonic generators, quadrature product, transport


def hodge_suite(cfg: RunConfig) -> list[CheckRecord]:
    rng = np.random.default_rng([cfg.seed, 4])
    n = min(cfg.n, 4)
    grid = TorusGrid(min(cfg.grid, 6))
    gauge = _gauge_for(cfg, grid, n, rng)
    rec: list[CheckRecord] = []

    ranks = cohomology_ranks(n, grid.size, gauge)
    results = [hodge_laplacian(k, n, grid.size, gauge) for k in (0, 1, 2)]
    rec.append(CheckRecord.make(
        cfg, "hodge-rank-match", "hodge kernel",
        max(abs(res.dimension - r) for res, r in zip(results, ranks)), 0.5))
    rec.append(CheckRecord.make(cfg, "harmonic-closed", "hodge kernel",
                                max(res.closed_residual for res in results), 1e-8))
    rec.append(CheckRecord.make(cfg, "harmonic-coclosed", "hodge kernel",
                                max(res.coclosed_residual for res in results), 1e-8))

    counts = [harmonic_ch_rank(k, n, grid.size, gauge) for k in (0, 1, 2)]
    rec.append(CheckRecord.make(
        cfg, "module-rank-betti", "harmonic module rank",
        max(abs(c - b) for c, b in zip(counts, TORUS_BETTI)), 0.5))

    scalar = hodge_laplacian(1, 1, grid.size)
    v = grid.vertices
    const1 = np.zeros((v * 2, 1))
    const1[0::2, 0] = 1.0
    const2 = np.zeros((v * 2, 1))
    const2[1::2, 0] = 1.0
    angles = subspace_angles(scalar.harmonics,
                             np.concatenate([const1, const2], axis=1))
    rec.append(CheckRecord.make(cfg, "harmonic-constants", "hodge kernel",
                                float(angles.max(initial=0.0)), 1e-8))

    worst = 0.0
    for _ in range(10):
        fvec = random_vector(n, rng, Side.DUAL)
        gvec = random_vector(n, rng, Side.DUAL)
        sf = CochainField(grid, 0, np.broadcast_to(
            fvec.coords, (grid.size, grid.size, 1, n)).copy())
        sg = CochainField(grid, 0, np.broadcast_to(
            gvec.coords, (grid.size, grid.size, 1, n)).copy())
        expected = (2.0 * np.pi) ** 2 * rank_one(sharp(fvec), gvec).matrix
        worst = max(worst, float(np.abs(
            section_ch_product(sf, sg).matrix - expected).max()))
    rec.append(CheckRecord.make(cfg, "quadrature-constant", "quadrature product",
                                worst, 1e-10))

    worst_lin = 0.0
    worst_pos = 0.0
    for _ in range(10):
        k = int(rng.integers(0, 3))
        s = random_field(grid, k, n, rng)
        s2 = random_field(grid, k, n, rng)
        a = random_compact(n, rng)
        from .torus_complex import act_section
        lhs = section_ch_product(s, act_section(s2, a))
        rhs = compose(section_ch_product(s, s2), a)
        worst_lin = max(worst_lin, float(np.abs(lhs.matrix - rhs.matrix).max()))
        eigs = np.linalg.eigvalsh(section_ch_product(s, s).matrix)
        worst_pos = max(worst_pos, max(0.0, -float(eigs.min())))
    rec.append(CheckRecord.make(cfg, "quadrature-right-linear",
                                "quadrature product", worst_lin, 1e-10))
    rec.append(CheckRecord.make(cfg, "quadrature-positivity",
                                "quadrature product", worst_pos, 1e-10))

    ident = GaugeField.identity(grid, n)
    ops = np.stack([[random_compact(n, rng).matrix for _ in range(grid.size)]
                    for _ in range(grid.size)])
    rec.append(CheckRecord.make(
        cfg, "transport-identity", "fiber transport",
        float(np.abs(gauge_transport_compacts(ops, ident) - ops).max()), 1e-14))

    g = GaugeField.random(grid, n, rng)
    worst_mult = 0.0
    worst_r1 = 0.0
    worst_act = 0.0
    for _ in range(10):
        afield = np.stack([[random_compact(n, rng).matrix
                            for _ in range(grid.size)] for _ in range(grid.size)])
        bfield = np.stack([[random_compact(n, rng).matrix
                            for _ in range(grid.size)] for _ in range(grid.size)])
        ta = gauge_transport_compacts(afield, g)
        tb = gauge_transport_compacts(bfield, g)
        tab = gauge_transport_compacts(
            np.einsum("xyab,xybc->xyac", afield, bfield), g)
        worst_mult = max(worst_mult, float(np.abs(
            tab - np.einsum("xyab,xybc->xyac", ta, tb)).max()))

        vfield = rng.standard_normal((grid.size, grid.size, n)) \
            + 1j * rng.standard_normal((grid.size, grid.size, n))
        ffield = rng.standard_normal((grid.size, grid.size, n)) \
            + 1j * rng.standard_normal((grid.size, grid.size, n))
        r1field = np.einsum("xya,xyb->xyab", vfield, ffield)
        moved_v = np.einsum("xyab,xyb->xya", g.units, vfield)
        moved_f = np.einsum("xyab,xyb->xya", g.units.conj(), ffield)
        expected = np.einsum("xya,xyb->xyab", moved_v, moved_f)
        worst_r1 = max(worst_r1, float(np.abs(
            gauge_transport_compacts(r1field, g) - expected).max()))

        s = random_field(grid, 1, n, rng)
        lhs = transport_section(act_operator_field(s, afield), g)
        rhs = act_operator_field(transport_section(s, g),
                                 gauge_transport_compacts(afield, g))
        worst_act = max(worst_act, float(np.abs(lhs.values - rhs.values).max()))
    rec.append(CheckRecord.make(cfg, "transport-multiplicative",
                                "fiber transport", worst_mult, 1e-10))
    rec.append(CheckRecord.make(cfg, "transport-rank-one", "fiber transport",
                                worst_r1, 1e-10))
    rec.append(CheckRecord.make(cfg, "transport-action", "fiber transport",
                                worst_act, 1e-10))
    return rec


SUITES = {
    "module": module_suite,
    "equivariance": equivariance_suite,
    "cohomology": cohomology_suite,
    "hodge": hodge_suite,
}


def run_suite(name: str, cfg: RunConfig) -> list[CheckRecord]:
    return SUITES[name](cfg)


def run_all(cfg: RunConfig) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    for name in ("module", "equivariance", "cohomology", "hodge"):
        out.extend(SUITES[name](cfg))
    return out
