"""Named verification criteria with measured deviations.

Every criterion builds the objects it examines through a small toolkit, so
the whole suite can be rerun in deliberately damaged configurations
(mutation fixtures: hop direction flipped, transpose phase negated, energy
offset dropped).  The final criterion runs those damaged configurations and
demands that each one breaks something, which guards the suite itself
against being vacuous.

Exact criteria report a tolerance of 0 and must measure a deviation of
exactly 0.0; floating criteria carry the tolerances they were fixed at.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bosonic, coherent, fock, gates, qubit
from .bosonic import PhysParams, RegisterOperator
from .register import RegisterState

__all__ = [
    "VerifyConfig",
    "MUTATIONS",
    "CriterionResult",
    "CRITERION_NAMES",
    "run_criteria",
]

MUTATIONS = ("none", "b-convention", "theta-sign", "h-offset")


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs the verification suite honors.

    Dense sub-checks run at the smaller of their preferred rank and the
    configured one, so the suite stays runnable at any rank in range; the
    advertised tolerances are guaranteed only at the defaults.
    """

    rank: int = 32
    alpha: float = 1.0
    beta: float = 1.0
    hbar: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not 2 <= self.rank <= 64:
            raise ValueError(f"rank must be in [2, 64], got {self.rank}")

    @property
    def params(self) -> PhysParams:
        return PhysParams(self.alpha, self.beta, self.hbar)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    detail: str
    seconds: float


@dataclass(frozen=True)
class _Part:
    label: str
    dev: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.dev <= self.tol


def _severity(part: _Part) -> float:
    if part.tol > 0.0:
        return part.dev / part.tol
    return math.inf if part.dev > 0.0 else 0.0


def _combine(name: str, parts: Sequence[_Part], seconds: float) -> CriterionResult:
    worst = max(parts, key=_severity)
    detail = "; ".join(f"{p.label} {p.dev:.3g}/{p.tol:g}" for p in parts)
    return CriterionResult(
        name=name,
        passed=all(p.ok for p in parts),
        max_deviation=worst.dev,
        tolerance=worst.tol,
        detail=detail,
        seconds=seconds,
    )


class Toolkit:
    """Builds the operators under test, honoring one injected fault."""

    def __init__(self, params: PhysParams, mutation: str = "none") -> None:
        if mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation {mutation!r}")
        self.params = params
        self.mutation = mutation

    def theta(self, value: float) -> float:
        return -value if self.mutation == "theta-sign" else value

    def b_lower(self, n: int, rank: int) -> RegisterOperator:
        if self.mutation == "b-convention":
            return bosonic.b_raise(n, rank)
        return bosonic.b_lower(n, rank)

    def b_raise(self, n: int, rank: int) -> RegisterOperator:
        if self.mutation == "b-convention":
            return bosonic.b_lower(n, rank)
        return bosonic.b_raise(n, rank)

    def ladder(self, direction: str, rank: int) -> RegisterOperator:
        if self.mutation == "b-convention":
            direction = {"lower": "raise", "raise": "lower"}[direction]
        return bosonic.ladder(direction, self.params, rank)

    def hamiltonian(self, rank: int) -> RegisterOperator:
        if self.mutation == "h-offset":
            half = self.ladder("raise", rank) @ self.ladder("lower", rank)
            return half.scale(0.5)
        return bosonic.hamiltonian(self.params, rank)

    def position(self, rank: int) -> RegisterOperator:
        total = self.ladder("raise", rank) + self.ladder("lower", rank)
        return total.scale(1.0 / (2.0 * self.params.beta))

    def momentum(self, rank: int) -> RegisterOperator:
        total = self.ladder("raise", rank) - self.ladder("lower", rank)
        return total.scale(1j / (2.0 * self.params.alpha))

    def _mutate_circuit(self, circuit: gates.Circuit) -> gates.Circuit:
        if self.mutation != "theta-sign":
            return circuit
        terms = []
        for term in circuit.terms:
            factors = tuple(
                gates.transpose_theta(p.a, p.b, -p.theta) if p.kind == "T" else p
                for p in term.factors
            )
            terms.append(gates.CircuitTerm(term.coeff, factors))
        return gates.Circuit(circuit.rank, tuple(terms))

    def decomposition(self, kind: str, rank: int) -> gates.CircuitPair:
        pair = bosonic.gate_decomposition(kind, self.params, rank)
        return gates.CircuitPair(
            self._mutate_circuit(pair.full), self._mutate_circuit(pair.reduced)
        )

    def displacement_gateform(self, spec: coherent.CoherentSpec) -> gates.CircuitPair:
        pair = coherent.displacement_generator_gateform(spec)
        return gates.CircuitPair(
            self._mutate_circuit(pair.full), self._mutate_circuit(pair.reduced)
        )


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def _pair_matrix(op_site0: qubit.SiteOp, op_site1: qubit.SiteOp) -> np.ndarray:
    """Dense 4x4 of a two-site product on sites (0, 1), key order 0..3."""
    return np.kron(qubit.op_bit_matrix(op_site1), qubit.op_bit_matrix(op_site0))


# --- criteria -------------------------------------------------------------


def _product_table_closure(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    ops = list(qubit.SiteOp)
    closure_dev = 0.0
    for a in ops:
        for b in ops:
            prod = qubit.op_matrix(qubit.op_product(a, b))
            direct = qubit.op_matrix(a) @ qubit.op_matrix(b)
            closure_dev = max(closure_dev, _max_abs(prod - direct))
    assoc_failures = 0
    for a in ops:
        for b in ops:
            ab = qubit.op_product(a, b)
            for c in ops:
                left = qubit.op_product(ab, c)
                right = qubit.op_product(a, qubit.op_product(b, c))
                if left != right:
                    assoc_failures += 1
    return [
        _Part("closure(81)", closure_dev, 0.0),
        _Part("associativity(729)", float(assoc_failures), 0.0),
    ]


def _gate_identities(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    c = gates.cnot_matrix()
    ct = gates.circuit_to_matrix(
        gates.Circuit(2, (gates.CircuitTerm(1, (gates.cnot_transpose(0, 1),)),))
    )
    eye = np.eye(4, dtype=complex)
    t0 = gates.transpose_theta_matrix(0.0)
    pauli_sum = 0.5 * sum(
        _pair_matrix(op, op)
        for op in (qubit.SiteOp.S0, qubit.SiteOp.S1, qubit.SiteOp.S2, qubit.SiteOp.S3)
    )
    hop_sum = _pair_matrix(qubit.SiteOp.A, qubit.SiteOp.APLUS) + _pair_matrix(
        qubit.SiteOp.APLUS, qubit.SiteOp.A
    )
    projector_pairs = _pair_matrix(qubit.SiteOp.P0, qubit.SiteOp.P0) + _pair_matrix(
        qubit.SiteOp.P1, qubit.SiteOp.P1
    )
    twisted = 1j * (
        _pair_matrix(qubit.SiteOp.A, qubit.SiteOp.APLUS)
        - _pair_matrix(qubit.SiteOp.APLUS, qubit.SiteOp.A)
    )
    t_quarter = gates.transpose_theta_matrix(kit.theta(math.pi / 2.0))
    return [
        _Part("cnot-involution", max(_max_abs(c @ c - eye), _max_abs(ct @ ct - eye)), 0.0),
        _Part("swap-conjugation", _max_abs(ct - t0 @ c @ t0), 0.0),
        _Part(
            "swap-construction",
            max(_max_abs(t0 - c @ ct @ c), _max_abs(t0 - ct @ c @ ct)),
            0.0,
        ),
        _Part("pauli-sum", _max_abs(t0 - pauli_sum), 1e-12),
        _Part("hop-sum", _max_abs(hop_sum - (t0 - projector_pairs)), 0.0),
        _Part(
            "twisted-hop",
            _max_abs(twisted - (t_quarter - projector_pairs)),
            1e-12,
        ),
    ]


def _phase_covariance(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    rng = np.random.default_rng(cfg.seed)
    table_dev = 0.0
    product_dev = 0.0
    cnot_dev = 0.0
    ops = list(qubit.SiteOp)
    mat = {op: qubit.op_matrix(op) for op in ops}
    for _ in range(100):
        a, b, g, d = rng.uniform(0.0, 2.0 * math.pi, size=4)
        u = qubit.PhaseTransform(a, b)
        phi = a - b
        expected = {
            qubit.SiteOp.ZERO: 0 * mat[qubit.SiteOp.ZERO],
            qubit.SiteOp.P0: mat[qubit.SiteOp.P0],
            qubit.SiteOp.P1: mat[qubit.SiteOp.P1],
            qubit.SiteOp.S0: mat[qubit.SiteOp.S0],
            qubit.SiteOp.S3: mat[qubit.SiteOp.S3],
            qubit.SiteOp.A: cmath.exp(1j * phi) * mat[qubit.SiteOp.A],
            qubit.SiteOp.APLUS: cmath.exp(-1j * phi) * mat[qubit.SiteOp.APLUS],
            qubit.SiteOp.S1: math.cos(phi) * mat[qubit.SiteOp.S1]
            + math.sin(phi) * mat[qubit.SiteOp.S2],
            qubit.SiteOp.S2: -math.sin(phi) * mat[qubit.SiteOp.S1]
            + math.cos(phi) * mat[qubit.SiteOp.S2],
        }
        conj = {op: qubit.phase_conjugate(op, u) for op in ops}
        for op in ops:
            table_dev = max(table_dev, _max_abs(conj[op] - expected[op]))
        for x in ops:
            for y in ops:
                prod = qubit.op_product(x, y)
                lhs = conj[x] @ conj[y]
                rhs = prod.coeff * qubit.phase_conjugate(prod.op, u)
                product_dev = max(product_dev, _max_abs(lhs - rhs))
        psi = g - d
        formula = _pair_matrix(qubit.SiteOp.P0, qubit.SiteOp.S0) + np.kron(
            math.cos(psi) * qubit.op_bit_matrix(qubit.SiteOp.S1)
            + math.sin(psi) * qubit.op_bit_matrix(qubit.SiteOp.S2),
            qubit.op_bit_matrix(qubit.SiteOp.P1),
        )
        cnot_dev = max(
            cnot_dev, _max_abs(gates.conjugated_cnot_matrix(a, b, g, d) - formula)
        )
    return [
        _Part("transform-table", table_dev, 1e-12),
        _Part("product-covariance", product_dev, 1e-12),
        _Part("conjugated-cnot", cnot_dev, 1e-12),
    ]


def _bosonic_filter(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    rank = min(8, cfg.rank)
    filter_op = bosonic.bosonic_identity(rank)
    f = filter_op.to_matrix()
    idem_dev = _max_abs((filter_op @ filter_op).to_matrix() - f)
    action_dev = 0.0
    kept = annihilated = 0
    dim = 1 << rank
    for key in range(dim):
        column = f[:, key]
        if key > 0 and key & (key - 1) == 0:
            kept += 1
            expected = np.zeros(dim, dtype=complex)
            expected[key] = 1.0
        else:
            annihilated += 1
            expected = np.zeros(dim, dtype=complex)
        action_dev = max(action_dev, _max_abs(column - expected))
    proj_dev = 0.0
    projectors = [bosonic.bosonic_projector(n, rank) for n in range(rank)]
    mats = [p.to_matrix() for p in projectors]
    for n in range(rank):
        for m in range(rank):
            product = (projectors[n] @ projectors[m]).to_matrix()
            expected = mats[n] if n == m else np.zeros_like(product)
            proj_dev = max(proj_dev, _max_abs(product - expected))
    return [
        _Part("idempotent", idem_dev, 0.0),
        _Part(f"action(keep {kept}, kill {annihilated})", action_dev, 0.0),
        _Part("projector-orthogonality", proj_dev, 0.0),
    ]


def _hop_relations(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    rank = min(8, cfg.rank)
    filter_mat = bosonic.bosonic_identity(rank).to_matrix()
    up_down_dev = down_up_dev = commute_dev = 0.0
    for n in range(rank - 1):
        bn_low = kit.b_lower(n, rank)
        bn_high = kit.b_raise(n, rank)
        commutator = (
            bn_low.to_matrix() @ filter_mat - filter_mat @ bn_low.to_matrix()
        )
        commute_dev = max(commute_dev, _max_abs(commutator))
        for m in range(rank - 1):
            bm_low = kit.b_lower(m, rank)
            bm_high = kit.b_raise(m, rank)
            up_down = (bn_high @ bm_low).to_matrix()
            down_up = (bn_low @ bm_high).to_matrix()
            if n == m:
                up_down -= bosonic.bosonic_projector(n + 1, rank).to_matrix()
                down_up -= bosonic.bosonic_projector(n, rank).to_matrix()
            up_down_dev = max(up_down_dev, _max_abs(up_down))
            down_up_dev = max(down_up_dev, _max_abs(down_up))
    return [
        _Part("raise-lower", up_down_dev, 0.0),
        _Part("lower-raise", down_up_dev, 0.0),
        _Part("filter-commutant", commute_dev, 0.0),
    ]


def _oracle_intertwining(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    rank = min(8, cfg.rank)
    oracle = fock.build_fock(cfg.params, rank)
    op_pairs = [
        ("lowering", kit.ladder("lower", rank), oracle.a),
        ("raising", kit.ladder("raise", rank), oracle.a_plus),
        ("energy", kit.hamiltonian(rank), oracle.h),
        ("position", kit.position(rank), oracle.x),
        ("momentum", kit.momentum(rank), oracle.p),
    ]
    parts = [
        _Part(label, fock.intertwine_check(op, matrix).max_deviation, 1e-12)
        for label, op, matrix in op_pairs
    ]
    circuit_rank = min(6, cfg.rank)
    oracle6 = fock.build_fock(cfg.params, circuit_rank)
    for kind, matrix in (("position", oracle6.x), ("momentum", oracle6.p)):
        circuit_op = bosonic.circuit_as_operator(kit.decomposition(kind, circuit_rank).full)
        report = fock.intertwine_check(circuit_op, matrix, 1e-10)
        parts.append(_Part(f"{kind}-circuit", report.max_deviation, 1e-10))
    return parts


def _canonical_commutators(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    rank = min(16, cfg.rank)
    rng = np.random.default_rng(cfg.seed + 1)
    eps, hbar = cfg.params.epsilon, cfg.params.hbar
    lower = kit.ladder("lower", rank)
    upper = kit.ladder("raise", rank)
    x_op = kit.position(rank)
    p_op = kit.momentum(rank)
    filter_op = bosonic.bosonic_identity(rank)
    ladder_dev = xp_dev = 0.0
    for _ in range(100):
        coeffs = rng.normal(size=rank - 1) + 1j * rng.normal(size=rank - 1)
        coeffs /= np.linalg.norm(coeffs)
        state = RegisterState(
            rank, {1 << n: c for n, c in enumerate(coeffs)}
        )
        ladder_comm = (
            lower.apply(upper.apply(state))
            - upper.apply(lower.apply(state))
            - filter_op.apply(state).scale(2.0 * eps)
        )
        ladder_dev = max(ladder_dev, ladder_comm.norm())
        xp_comm = (
            x_op.apply(p_op.apply(state))
            - p_op.apply(x_op.apply(state))
            - filter_op.apply(state).scale(1j * hbar)
        )
        xp_dev = max(xp_dev, xp_comm.norm())
    return [
        _Part("ladder-commutator", ladder_dev, 1e-10),
        _Part("xp-commutator", xp_dev, 1e-10),
    ]


def _energy_spectrum(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    rank = cfg.rank
    block = bosonic.register_block(kit.hamiltonian(rank))
    values = np.linalg.eigvalsh(block)
    expected = (np.arange(rank) + 0.5) * cfg.params.epsilon
    return [_Part("spectrum", _max_abs(values - expected), 1e-10)]


def _poisson_pmf(mean: float, count: int) -> np.ndarray:
    pmf = np.zeros(count)
    term = math.exp(-mean)
    for n in range(count):
        pmf[n] = term
        term = term * mean / (n + 1)
    return pmf


_Z_SET = (0.3 + 0j, 0.5j, 0.7 * cmath.exp(1j * math.pi / 4.0))


def _coherent_states(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    params = cfg.params
    rank = cfg.rank
    gate_rank = min(10, cfg.rank)
    lower = kit.ladder("lower", rank)
    scale = math.sqrt(2.0 * params.epsilon)
    parts: list[_Part] = []
    eig_dev = poisson_dev = series_dev = block_dev = structure_dev = dense_dev = 0.0
    for z in _Z_SET:
        spec = coherent.CoherentSpec(z, params, rank)
        series = coherent.coherent_series(spec)
        state = series.state
        eig_dev = max(
            eig_dev, (lower.apply(state) - state.scale(z * scale)).norm()
        )
        pmf = _poisson_pmf(abs(z) ** 2, rank)
        poisson_dev = max(
            poisson_dev,
            _max_abs(coherent.number_distribution(state) - pmf),
        )
        displaced = coherent.displacement_apply(
            spec, RegisterState.basis(rank, 1)
        )
        series_dev = max(series_dev, (displaced - state).norm())

        spec_small = coherent.CoherentSpec(z, params, gate_rank)
        generator = gates.circuit_to_matrix(kit.displacement_gateform(spec_small).full)
        powers = [1 << n for n in range(gate_rank)]
        block = generator[np.ix_(powers, powers)]
        off_block = generator.copy()
        off_block[np.ix_(powers, powers)] = 0.0
        structure_dev = max(structure_dev, _max_abs(off_block))
        reference = coherent.expm_antihermitian(
            coherent.displacement_generator_block(spec_small)
        )
        block_dev = max(
            block_dev,
            _max_abs(coherent.expm_antihermitian(block) - reference),
        )
        if kit.mutation == "none" and z is _Z_SET[-1]:
            # one genuinely dense exponential as an end-to-end data point
            dense_u = coherent.expm_antihermitian(generator)
            dense_dev = _max_abs(dense_u[np.ix_(powers, powers)] - reference)
    parts.append(_Part("lowering-eigenvalue", eig_dev, 1e-8))
    parts.append(_Part("poisson-distribution", poisson_dev, 1e-12))
    parts.append(_Part("series-vs-displacement", series_dev, 1e-8))
    parts.append(_Part("generator-support", structure_dev, 0.0))
    parts.append(_Part("gateform-exponential", block_dev, 1e-8))
    if kit.mutation == "none":
        parts.append(_Part("dense-exponential", dense_dev, 1e-8))
    return parts


def _coherent_dynamics(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    params = cfg.params
    rank = cfg.rank
    z = 0.5 + 0j
    spec = coherent.CoherentSpec(z, params, rank)
    omega, eps = params.omega, params.epsilon
    times = np.linspace(0.0, 2.0 * math.pi / omega, 256)
    start = coherent.coherent_series(spec).state
    x_op = kit.position(rank)
    p_op = kit.momentum(rank)
    h_op = kit.hamiltonian(rank)
    scale = math.sqrt(2.0 * eps)
    h_expected = eps * (abs(z) ** 2 + 0.5)
    x_dev = p_dev = h_dev = 0.0
    for t in times:
        snapshot = coherent.evolve(start, float(t), params)
        rotating = z * cmath.exp(-1j * omega * t)
        x_dev = max(
            x_dev,
            abs(
                coherent.expectation(x_op, snapshot).real
                - scale * rotating.real / params.beta
            ),
        )
        p_dev = max(
            p_dev,
            abs(
                coherent.expectation(p_op, snapshot).real
                - scale * rotating.imag / params.alpha
            ),
        )
        h_dev = max(
            h_dev,
            abs(coherent.expectation(h_op, snapshot).real - h_expected) / h_expected,
        )
    return [
        _Part("x-closed-form", x_dev, 1e-8),
        _Part("p-closed-form", p_dev, 1e-8),
        _Part("h-constant-relative", h_dev, 1e-10),
    ]


def _transbosonic_annihilation(cfg: VerifyConfig, kit: Toolkit) -> list[_Part]:
    rank = cfg.rank
    ops = {
        "lowering": kit.ladder("lower", rank),
        "energy": kit.hamiltonian(rank),
        "position": kit.position(rank),
        "momentum": kit.momentum(rank),
    }
    leak = 0.0
    keys = [key for key in (3, 5, 6, 0) if key < (1 << rank)]
    for key in keys:
        state = RegisterState.basis(rank, key)
        for op in ops.values():
            image = op.apply(state)
            if not image.is_zero:
                leak = max(leak, image.norm())
    ground_image = ops["lowering"].apply(RegisterState.basis(rank, 1))
    structural = 0.0
    if not ground_image.is_zero:
        structural = 1.0
    if len(RegisterState.void(rank)) != 1 or RegisterState.void(rank).amplitude(0) != 1:
        structural = 1.0
    if RegisterState.zero(rank) == RegisterState.void(rank):
        structural = 1.0
    return [
        _Part("transbosonic-leak", leak, 0.0),
        _Part("ground-kill-vs-void", structural, 0.0),
    ]


_CRITERIA: tuple[tuple[str, Callable[[VerifyConfig, Toolkit], list[_Part]]], ...] = (
    ("product-table-closure", _product_table_closure),
    ("gate-identities", _gate_identities),
    ("phase-covariance", _phase_covariance),
    ("bosonic-filter", _bosonic_filter),
    ("hop-relations", _hop_relations),
    ("oracle-intertwining", _oracle_intertwining),
    ("canonical-commutators", _canonical_commutators),
    ("energy-spectrum", _energy_spectrum),
    ("coherent-states", _coherent_states),
    ("coherent-dynamics", _coherent_dynamics),
    ("transbosonic-annihilation", _transbosonic_annihilation),
)

CRITERION_NAMES = tuple(name for name, _ in _CRITERIA) + ("mutation-sensitivity",)


def _run_base(cfg: VerifyConfig, mutation: str) -> list[CriterionResult]:
    kit = Toolkit(cfg.params, mutation)
    results = []
    for name, fn in _CRITERIA:
        started = time.perf_counter()
        parts = fn(cfg, kit)
        results.append(_combine(name, parts, time.perf_counter() - started))
    return results


def _mutation_sensitivity(cfg: VerifyConfig) -> CriterionResult:
    started = time.perf_counter()
    blind_spots = []
    notes = []
    for mutation in MUTATIONS[1:]:
        failed = [r.name for r in _run_base(cfg, mutation) if not r.passed]
        notes.append(f"{mutation} -> {', '.join(failed) if failed else 'nothing'}")
        if not failed:
            blind_spots.append(mutation)
    return CriterionResult(
        name="mutation-sensitivity",
        passed=not blind_spots,
        max_deviation=float(len(blind_spots)),
        tolerance=0.0,
        detail="; ".join(notes),
        seconds=time.perf_counter() - started,
    )


def run_criteria(cfg: VerifyConfig, mutation: str = "none") -> list[CriterionResult]:
    """Run the named criteria; unmutated runs append the sensitivity check."""
    results = _run_base(cfg, mutation)
    if mutation == "none":
        results.append(_mutation_sensitivity(cfg))
    return results
