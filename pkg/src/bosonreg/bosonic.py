"""Bosonic structure on the qubit register.

The register key 2**n (exactly one site occupied, at site n) plays the role
of the n-th oscillator level; the span of these R keys is the bosonic
subspace.  Everything outside it, the all-empty configuration included, is
transbosonic and is annihilated by every operator built here.

Operators are sparse key-rewrite programs.  The building blocks are products
of named single-site operators over all sites, with either the site unit S0
or the empty projector P0 filling the unnamed sites.  On top of those:

  * bosonic_projector(n)   keeps exactly the key 2**n
  * bosonic_identity       the sum of all R projectors, the subspace filter
  * b_lower(n) / b_raise(n)  adjacent-site hops moving the single occupied
    site from n+1 down to n and back up; each annihilates every basis key
    other than its source key
  * ladder(...)            weighted hop sums: the register lowering operator
    sum(sqrt((n+1) 2 eps) b_lower(n)) and its raising mirror
  * hamiltonian, position, momentum  the oscillator observables built from
    the ladders, with energy (n + 1/2) eps on level n

where eps = alpha beta hbar is the energy quantum.  Truncation at finite
rank shows up only at the top level: the raising sum simply has no term
mapping level R-1 up, so canonical commutation relations hold exactly on
states with no top-level support.

position and momentum also come as explicit gate decompositions: weighted
sums of phased transposes T(n, n+1, theta) with projector counterterms,
theta = 0 for position and pi/2 for momentum.  Dropping the counterterms
gives a shorter circuit valid on bosonic states only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    NotBosonicError,
    RankMismatchError,
    RankTooLargeError,
    ZeroVectorError,
)
from .gates import (
    Circuit,
    CircuitPair,
    CircuitTerm,
    apply_circuit,
    local,
    transpose_theta,
)
from .qubit import SiteOp, op_action
from .register import DENSE_MAX_RANK, MAX_RANK, RegisterState

__all__ = [
    "PhysParams",
    "RegisterOperator",
    "site_product",
    "circuit_as_operator",
    "bosonic_projector",
    "bosonic_identity",
    "is_power_of_two_key",
    "is_bosonic_state",
    "is_bosonic_operator",
    "site_ladder",
    "b_lower",
    "b_raise",
    "ladder",
    "hamiltonian",
    "position",
    "momentum",
    "decomposition_terms",
    "gate_decomposition",
    "number_state",
    "check_transbosonic",
    "BosonicSubspaceVector",
    "embed",
    "project",
    "register_block",
]

Kernel = Callable[[int], Sequence[tuple[int, complex]]]

_EMPTY: tuple[tuple[int, complex], ...] = ()


@dataclass(frozen=True)
class PhysParams:
    """Oscillator constants.  eps = alpha * beta * hbar is the level spacing."""

    alpha: float = 1.0
    beta: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "hbar"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite")
            object.__setattr__(self, name, value)

    @property
    def omega(self) -> float:
        return self.alpha * self.beta

    @property
    def epsilon(self) -> float:
        return self.alpha * self.beta * self.hbar


class RegisterOperator:
    """A linear map on register states, realized as a key-rewrite kernel.

    The kernel sends one basis key to finitely many (key, coefficient)
    pairs; application distributes it over a state's stored amplitudes, so
    cost scales with the occupation of the state, not with 2**R.  Operators
    combine by +, -, scalar *, and @ (composition, right factor first).
    """

    __slots__ = ("rank", "_kernel")

    def __init__(self, rank: int, kernel: Kernel) -> None:
        if not 1 <= rank <= MAX_RANK:
            raise ValueError(f"rank must be in [1, {MAX_RANK}], got {rank}")
        self.rank = rank
        self._kernel = kernel

    def kernel(self, key: int) -> Sequence[tuple[int, complex]]:
        return self._kernel(key)

    def apply(self, state: RegisterState) -> RegisterState:
        if state.rank != self.rank:
            raise RankMismatchError(f"state rank {state.rank} vs operator rank {self.rank}")
        acc: dict[int, complex] = {}
        kernel = self._kernel
        for key, amp in state.items():
            for out_key, coeff in kernel(key):
                acc[out_key] = acc.get(out_key, 0j) + amp * coeff
        return RegisterState(self.rank, acc)

    def _require_same_rank(self, other: "RegisterOperator") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "RegisterOperator") -> "RegisterOperator":
        self._require_same_rank(other)
        return RegisterOperator.weighted_sum(
            self.rank, ((1 + 0j, self), (1 + 0j, other))
        )

    def __sub__(self, other: "RegisterOperator") -> "RegisterOperator":
        self._require_same_rank(other)
        return RegisterOperator.weighted_sum(
            self.rank, ((1 + 0j, self), (-1 + 0j, other))
        )

    def __neg__(self) -> "RegisterOperator":
        return self.scale(-1)

    def scale(self, factor: complex) -> "RegisterOperator":
        factor = complex(factor)
        kernel = self._kernel
        return RegisterOperator(
            self.rank,
            lambda key: [(k, factor * c) for k, c in kernel(key)],
        )

    def __mul__(self, factor: complex) -> "RegisterOperator":
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "RegisterOperator") -> "RegisterOperator":
        """Composition self after other."""
        self._require_same_rank(other)
        first, second = other._kernel, self._kernel

        def kern(key: int) -> list[tuple[int, complex]]:
            out: list[tuple[int, complex]] = []
            for mid_key, c1 in first(key):
                for out_key, c2 in second(mid_key):
                    out.append((out_key, c1 * c2))
            return out

        return RegisterOperator(self.rank, kern)

    @classmethod
    def weighted_sum(
        cls, rank: int, pairs: Iterable[tuple[complex, "RegisterOperator"]]
    ) -> "RegisterOperator":
        entries = [(complex(c), op._kernel) for c, op in pairs]

        def kern(key: int) -> list[tuple[int, complex]]:
            out: list[tuple[int, complex]] = []
            for coeff, kernel in entries:
                for out_key, c in kernel(key):
                    out.append((out_key, coeff * c))
            return out

        return cls(rank, kern)

    @classmethod
    def identity(cls, rank: int) -> "RegisterOperator":
        return cls(rank, lambda key: ((key, 1 + 0j),))

    def to_matrix(self) -> np.ndarray:
        """Dense 2**R matrix, columns indexed by integer key."""
        if self.rank > DENSE_MAX_RANK:
            raise RankTooLargeError(
                f"dense matrix needs rank <= {DENSE_MAX_RANK}, got {self.rank}"
            )
        dim = 1 << self.rank
        mat = np.zeros((dim, dim), dtype=complex)
        kernel = self._kernel
        for key in range(dim):
            for out_key, coeff in kernel(key):
                mat[out_key, key] += coeff
        return mat


def site_product(
    rank: int, ops: Mapping[int, SiteOp], fill: SiteOp = SiteOp.S0
) -> RegisterOperator:
    """Product of one named operator per site; unnamed sites get ``fill``.

    Only the unit S0 and the empty projector P0 make sense as fill.  With a
    P0 fill the kernel first rejects any key occupying an unnamed site, so
    application cost is set by the named sites alone.
    """
    if fill not in (SiteOp.S0, SiteOp.P0):
        raise ValueError("fill must be S0 or P0")
    actions = []
    named_mask = 0
    for site, op in sorted(ops.items()):
        if not 0 <= site < rank:
            raise ValueError(f"site {site} out of range for rank {rank}")
        actions.append((site, op_action(op)))
        named_mask |= 1 << site
    full_mask = (1 << rank) - 1
    zero_mask = (full_mask & ~named_mask) if fill is SiteOp.P0 else 0

    def kern(key: int) -> Sequence[tuple[int, complex]]:
        if key & zero_mask:
            return _EMPTY
        out_key = key
        coeff = 1 + 0j
        for site, action in actions:
            entry = action[(key >> site) & 1]
            if entry is None:
                return _EMPTY
            bit, c = entry
            coeff *= c
            out_key = out_key | (1 << site) if bit else out_key & ~(1 << site)
        return ((out_key, coeff),)

    return RegisterOperator(rank, kern)


def circuit_as_operator(circuit: Circuit) -> RegisterOperator:
    """Wrap a gate circuit as a RegisterOperator with the same action."""

    def kern(key: int) -> list[tuple[int, complex]]:
        image = apply_circuit(RegisterState.basis(circuit.rank, key), circuit)
        return list(image.items())

    return RegisterOperator(circuit.rank, kern)


def bosonic_projector(n: int, rank: int) -> RegisterOperator:
    """Projector onto the single key 2**n (site n occupied, all others empty)."""
    if not 0 <= n < rank:
        raise ValueError(f"level {n} out of range for rank {rank}")
    return site_product(rank, {n: SiteOp.P1}, fill=SiteOp.P0)


def bosonic_identity(rank: int) -> RegisterOperator:
    """Sum of all level projectors: the filter onto the bosonic subspace.

    Keeps every power-of-two key unchanged and annihilates all other keys,
    hence idempotent.
    """
    return RegisterOperator.weighted_sum(
        rank, [(1 + 0j, bosonic_projector(n, rank)) for n in range(rank)]
    )


def is_power_of_two_key(key: int) -> bool:
    return key > 0 and key & (key - 1) == 0


def is_bosonic_state(state: RegisterState, tol: float = 1e-12) -> bool:
    """True when the bosonic filter leaves the state unchanged up to tol.

    The zero vector carries no usable answer and is rejected.
    """
    if state.is_zero:
        raise ZeroVectorError("the zero vector is neither bosonic nor transbosonic")
    residual = bosonic_identity(state.rank).apply(state) - state
    return residual.norm() <= tol * state.norm()


def is_bosonic_operator(op: RegisterOperator, tol: float = 1e-10) -> bool:
    """True when the operator commutes with the bosonic filter (dense check)."""
    if op.rank > DENSE_MAX_RANK:
        raise RankTooLargeError(
            f"commutant check is dense and needs rank <= {DENSE_MAX_RANK}"
        )
    a = op.to_matrix()
    f = bosonic_identity(op.rank).to_matrix()
    return float(np.max(np.abs(a @ f - f @ a))) <= tol


def site_ladder(n: int, rank: int, direction: str) -> RegisterOperator:
    """The bare site shift at site n (A or A+), unit on every other site."""
    if not 0 <= n < rank:
        raise ValueError(f"site {n} out of range for rank {rank}")
    op = {"lower": SiteOp.A, "raise": SiteOp.APLUS}.get(direction)
    if op is None:
        raise ValueError("direction must be 'lower' or 'raise'")
    return site_product(rank, {n: op}, fill=SiteOp.S0)


def b_lower(n: int, rank: int) -> RegisterOperator:
    """Hop the single occupied site from n+1 down to n.

    Equals |2**n)(2**(n+1)| as a map: every basis key other than 2**(n+1)
    is annihilated, the unnamed sites being pinned empty by the P0 fill.
    """
    if not 0 <= n <= rank - 2:
        raise ValueError(f"hop ({n}, {n + 1}) out of range for rank {rank}")
    return site_product(rank, {n: SiteOp.APLUS, n + 1: SiteOp.A}, fill=SiteOp.P0)


def b_raise(n: int, rank: int) -> RegisterOperator:
    """Hop the single occupied site from n up to n+1; adjoint of b_lower(n)."""
    if not 0 <= n <= rank - 2:
        raise ValueError(f"hop ({n}, {n + 1}) out of range for rank {rank}")
    return site_product(rank, {n: SiteOp.A, n + 1: SiteOp.APLUS}, fill=SiteOp.P0)


def _level_weight(n: int, params: PhysParams) -> float:
    # sqrt((n+1) * 2 eps): the oscillator matrix element between levels n, n+1
    return math.sqrt((n + 1) * 2.0 * params.epsilon)


def ladder(direction: str, params: PhysParams, rank: int) -> RegisterOperator:
    """The register lowering or raising operator, a weighted sum of hops.

    Lowering annihilates level 0 (the key 2**0 = 1) and every transbosonic
    key; raising annihilates the top level R-1 because the truncated sum has
    no hop leaving it.
    """
    if direction == "lower":
        hops = [(_level_weight(n, params) + 0j, b_lower(n, rank)) for n in range(rank - 1)]
    elif direction == "raise":
        hops = [(_level_weight(n, params) + 0j, b_raise(n, rank)) for n in range(rank - 1)]
    else:
        raise ValueError("direction must be 'lower' or 'raise'")
    return RegisterOperator.weighted_sum(rank, hops)


def hamiltonian(params: PhysParams, rank: int) -> RegisterOperator:
    """Oscillator energy: (n + 1/2) eps on level n, zero off the subspace.

    Agrees exactly with the ladder form (raise @ lower) / 2 + eps/2 * filter
    at every finite rank, including the top level.
    """
    eps = params.epsilon
    return RegisterOperator.weighted_sum(
        rank,
        [((n + 0.5) * eps + 0j, bosonic_projector(n, rank)) for n in range(rank)],
    )


def position(params: PhysParams, rank: int) -> RegisterOperator:
    """x = (raise + lower) / (2 beta)."""
    total = ladder("raise", params, rank) + ladder("lower", params, rank)
    return total.scale(1.0 / (2.0 * params.beta))


def momentum(params: PhysParams, rank: int) -> RegisterOperator:
    """p = i (raise - lower) / (2 alpha)."""
    total = ladder("raise", params, rank) - ladder("lower", params, rank)
    return total.scale(1j / (2.0 * params.alpha))


def _projector_locals(rank: int, skip: tuple[int, int]) -> list:
    return [local(j, SiteOp.P0) for j in range(rank) if j not in skip]


def decomposition_terms(
    rank: int, weights: Sequence[complex], theta: float
) -> tuple[tuple[CircuitTerm, ...], tuple[CircuitTerm, ...]]:
    """Shared shape of the observable and displacement-generator circuits.

    For each adjacent pair (n, n+1) with weight w_n the full form contributes
    w_n {T(n, n+1, theta) - P0 P0 - P1 P1} conjugated by empty projectors on
    all other sites; the reduced form keeps only the T part.
    """
    full: list[CircuitTerm] = []
    reduced: list[CircuitTerm] = []
    for n, w in enumerate(weights):
        guards = _projector_locals(rank, (n, n + 1))
        t_factors = tuple(guards + [transpose_theta(n, n + 1, theta)])
        p0_factors = tuple(guards + [local(n, SiteOp.P0), local(n + 1, SiteOp.P0)])
        p1_factors = tuple(guards + [local(n, SiteOp.P1), local(n + 1, SiteOp.P1)])
        full.append(CircuitTerm(w, t_factors))
        full.append(CircuitTerm(-w, p0_factors))
        full.append(CircuitTerm(-w, p1_factors))
        reduced.append(CircuitTerm(w, t_factors))
    return tuple(full), tuple(reduced)


def gate_decomposition(kind: str, params: PhysParams, rank: int) -> CircuitPair:
    """Position or momentum as explicit gate circuits.

    The full circuit reproduces the operator on every state; the reduced one
    (T terms only) matches it on bosonic states but not off the subspace.
    """
    if kind == "position":
        theta, prefactor = 0.0, 1.0 / (2.0 * params.beta)
    elif kind == "momentum":
        theta, prefactor = math.pi / 2.0, 1.0 / (2.0 * params.alpha)
    else:
        raise ValueError("kind must be 'position' or 'momentum'")
    weights = [prefactor * _level_weight(n, params) + 0j for n in range(rank - 1)]
    full, reduced = decomposition_terms(rank, weights, theta)
    return CircuitPair(Circuit(rank, full), Circuit(rank, reduced))


def number_state(n: int, params: PhysParams, rank: int) -> RegisterState:
    """Level n built the hard way: n raisings of the ground key, renormalized.

    The result must coincide with the basis state at key 2**n; the
    construction is checked against that and a drift raises an error.
    """
    if not 0 <= n < rank:
        raise ValueError(f"level {n} out of range for rank {rank}")
    state = RegisterState.basis(rank, 1)
    up = ladder("raise", params, rank)
    for _ in range(n):
        state = up.apply(state)
    norm = math.sqrt(math.factorial(n) * (2.0 * params.epsilon) ** n)
    state = state.scale(1.0 / norm)
    amp = state.amplitude(1 << n)
    if len(state) != 1 or abs(amp - 1.0) > 1e-10:
        raise ArithmeticError("ladder construction drifted off the basis state")
    return state


@dataclass(frozen=True)
class BosonicSubspaceVector:
    """Length-R coefficient vector over the oscillator levels."""

    coeffs: np.ndarray
    rank: int
    params: PhysParams | None = None

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.rank,):
            raise ValueError(f"expected {self.rank} coefficients, got {coeffs.shape}")
        object.__setattr__(self, "coeffs", coeffs)


def embed(vec: BosonicSubspaceVector) -> RegisterState:
    """Place level-n coefficient at key 2**n."""
    return RegisterState(
        vec.rank, {1 << n: c for n, c in enumerate(vec.coeffs) if c != 0}
    )


def project(state: RegisterState, params: PhysParams | None = None) -> BosonicSubspaceVector:
    """Read off the power-of-two amplitudes, discarding the transbosonic rest."""
    coeffs = np.array(
        [state.amplitude(1 << n) for n in range(state.rank)], dtype=complex
    )
    return BosonicSubspaceVector(coeffs, state.rank, params)


def check_transbosonic(state: RegisterState) -> None:
    """Raise NotBosonicError if any stored key lies off the bosonic basis."""
    for key in state.amplitudes:
        if not is_power_of_two_key(key):
            raise NotBosonicError(f"key {key} is outside the bosonic subspace")


def register_block(op: RegisterOperator) -> np.ndarray:
    """R x R block of a register operator between the power-of-two keys.

    Column n is the operator applied to the basis state at key 2**n, read
    back at the keys 2**m.  Anything the operator sends off the bosonic
    basis is invisible here and must be checked separately.
    """
    rank = op.rank
    block = np.zeros((rank, rank), dtype=complex)
    for n in range(rank):
        column = op.apply(RegisterState.basis(rank, 1 << n))
        for m in range(rank):
            block[m, n] = column.amplitude(1 << m)
    return block
