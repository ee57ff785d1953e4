"""Coherent states on the register and their free evolution.

A coherent amplitude z populates the levels with the usual series
coefficients e^{-|z|^2/2} z^n / sqrt(n!), placed at the keys 2**n.  At
finite rank the series is cut at level R-1; the discarded probability is a
Poisson tail and travels with the state as an explicit tail_mass.  The same
state is reachable a second way, by exponentiating the displacement
generator (z a+ - z* a)/sqrt(2 eps) on the R-dimensional bosonic block, and
the two constructions agreeing is one of the standing cross-checks.

The generator also has a gate form.  Writing z = i r e^{i theta}, it is the
weighted transpose sum

    i r sum_n sqrt(n+1) {T(n, n+1, theta) - P0 P0 - P1 P1}

conjugated by empty-site projectors, mirroring the position and momentum
decompositions; dropping the counterterms again gives a reduced circuit
valid on bosonic states only.

Free evolution is diagonal: the amplitude at key 2**n turns by
e^{-i (n + 1/2) eps t / hbar}.  Expectation values of x and p then trace the
classical phase-space circle of angular frequency omega = alpha beta, which
is what trajectory() tabulates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bosonic import (
    BosonicSubspaceVector,
    PhysParams,
    RegisterOperator,
    check_transbosonic,
    decomposition_terms,
    embed,
    hamiltonian,
    is_bosonic_state,
    ladder,
    momentum,
    position,
    project,
    register_block,
)
from .errors import NotBosonicError, TruncationRiskError, ZeroVectorError
from .gates import Circuit, CircuitPair
from .jsonio import fmt_float
from .register import RegisterState

__all__ = [
    "CoherentSpec",
    "CoherentState",
    "coherent_series",
    "number_distribution",
    "expm_antihermitian",
    "displacement_generator_block",
    "displacement_apply",
    "displacement_generator_gateform",
    "expectation",
    "evolve",
    "Trajectory",
    "trajectory",
]


@dataclass(frozen=True)
class CoherentSpec:
    """A coherent amplitude pinned to a rank and parameter set.

    The guard |z|^2 <= R/4 keeps the Poisson mean far enough below the top
    level for the truncated series to be trustworthy; pass
    allow_truncation_risk=True to study the degradation deliberately.
    """

    z: complex
    params: PhysParams
    rank: int
    allow_truncation_risk: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", complex(self.z))
        if not 1 <= self.rank:
            raise ValueError("rank must be positive")
        mean = abs(self.z) ** 2
        if mean > self.rank / 4.0 and not self.allow_truncation_risk:
            raise TruncationRiskError(
                f"|z|^2 = {mean:.3g} exceeds rank/4 = {self.rank / 4.0:.3g}"
            )

    @classmethod
    def from_polar(
        cls,
        r: float,
        theta: float,
        params: PhysParams,
        rank: int,
        allow_truncation_risk: bool = False,
    ) -> "CoherentSpec":
        """Build from the rotation parameters, z = i r e^{i theta}."""
        if r < 0:
            raise ValueError("r must be non-negative")
        z = 1j * r * cmath.exp(1j * theta)
        return cls(z, params, rank, allow_truncation_risk)

    @property
    def r(self) -> float:
        return abs(self.z)

    @property
    def theta(self) -> float:
        """Rotation angle with z = i r e^{i theta}, wrapped to [-pi, pi); 0 at z = 0."""
        if self.z == 0:
            return 0.0
        raw = cmath.phase(self.z) - math.pi / 2.0
        return (raw + math.pi) % (2.0 * math.pi) - math.pi


@dataclass(frozen=True)
class CoherentState:
    """A truncated coherent state plus the probability it had to drop."""

    state: RegisterState
    tail_mass: float


def coherent_series(spec: CoherentSpec) -> CoherentState:
    """Truncated series construction; amplitudes are the exact coefficients."""
    mean = abs(spec.z) ** 2
    amp = complex(math.exp(-0.5 * mean))
    kept = 0.0
    amplitudes: dict[int, complex] = {}
    for n in range(spec.rank):
        if amp != 0:
            amplitudes[1 << n] = amp
        kept += abs(amp) ** 2
        amp = amp * spec.z / math.sqrt(n + 1)
    return CoherentState(RegisterState(spec.rank, amplitudes), max(0.0, 1.0 - kept))


def number_distribution(state: RegisterState) -> np.ndarray:
    """Raw level probabilities |amplitude at key 2**n|^2, unnormalized."""
    return np.array(
        [abs(state.amplitude(1 << n)) ** 2 for n in range(state.rank)], dtype=float
    )


def expm_antihermitian(g: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Exponential of an anti-Hermitian matrix through its eigensystem.

    g = i h with h Hermitian, so exp(g) = U diag(e^{i w}) U+ exactly; no
    scaling-and-squaring error model to worry about.
    """
    g = np.asarray(g, dtype=complex)
    scale = 1.0 + float(np.max(np.abs(g))) if g.size else 1.0
    if float(np.max(np.abs(g + g.conj().T))) > tol * scale:
        raise ValueError("generator is not anti-Hermitian")
    w, u = np.linalg.eigh(g / 1j)
    return (u * np.exp(1j * w)) @ u.conj().T


def displacement_generator_block(spec: CoherentSpec) -> np.ndarray:
    """R x R block of (z raise - z* lower)/sqrt(2 eps) from the register ladders."""
    lower = register_block(ladder("lower", spec.params, spec.rank))
    upper = register_block(ladder("raise", spec.params, spec.rank))
    return (spec.z * upper - spec.z.conjugate() * lower) / math.sqrt(
        2.0 * spec.params.epsilon
    )


def displacement_apply(
    spec: CoherentSpec, state: RegisterState, tol: float = 1e-12
) -> RegisterState:
    """Displace a bosonic state: project, exponentiate the block, embed back.

    The exponential only ever sees the R x R block, never the 2**R space.
    Transbosonic input is refused rather than silently projected.
    """
    if not is_bosonic_state(state, tol):
        raise NotBosonicError("displacement is defined on the bosonic subspace only")
    u = expm_antihermitian(displacement_generator_block(spec))
    coeffs = u @ project(state, spec.params).coeffs
    return embed(BosonicSubspaceVector(coeffs, spec.rank, spec.params))


def displacement_generator_gateform(spec: CoherentSpec) -> CircuitPair:
    """The displacement generator as transpose circuits, full and reduced.

    z = 0 yields the empty sum, whose exponential is the identity.
    """
    r, theta = spec.r, spec.theta
    if r == 0.0:
        empty = Circuit(spec.rank, ())
        return CircuitPair(empty, empty)
    weights = [1j * r * math.sqrt(n + 1) for n in range(spec.rank - 1)]
    full, reduced = decomposition_terms(spec.rank, weights, theta)
    return CircuitPair(Circuit(spec.rank, full), Circuit(spec.rank, reduced))


def expectation(op: RegisterOperator, state: RegisterState) -> complex:
    """(state | op state) / (state | state)."""
    norm_sq = state.inner_product(state).real
    if norm_sq == 0.0:
        raise ZeroVectorError("expectation value of the zero vector is undefined")
    return state.inner_product(op.apply(state)) / norm_sq


def evolve(state: RegisterState, t: float, params: PhysParams) -> RegisterState:
    """Free evolution: turn the level-n amplitude by e^{-i (n+1/2) eps t / hbar}.

    Defined on the bosonic subspace only; any transbosonic key is an error
    because no level phase is assigned to it.
    """
    check_transbosonic(state)
    rate = params.epsilon * t / params.hbar
    out = {
        key: amp * cmath.exp(-1j * (key.bit_length() - 0.5) * rate)
        for key, amp in state.items()
    }
    return RegisterState(state.rank, out)


@dataclass(frozen=True)
class Trajectory:
    """Sampled expectation values of x, p, and energy along free evolution."""

    times: np.ndarray
    x: np.ndarray
    p: np.ndarray
    h: np.ndarray

    def to_csv(self) -> str:
        lines = ["t,x,p,h"]
        for t, x, p, h in zip(self.times, self.x, self.p, self.h):
            lines.append(
                ",".join((fmt_float(t), fmt_float(x), fmt_float(p), fmt_float(h)))
            )
        return "\n".join(lines) + "\n"


def trajectory(spec: CoherentSpec, times: np.ndarray) -> Trajectory:
    """Evolve the coherent state and tabulate <x>, <p>, <h> at each time."""
    times = np.asarray(times, dtype=float)
    start = coherent_series(spec).state
    ops = (
        position(spec.params, spec.rank),
        momentum(spec.params, spec.rank),
        hamiltonian(spec.params, spec.rank),
    )
    columns: list[list[float]] = [[], [], []]
    for t in times:
        snapshot = evolve(start, float(t), spec.params)
        for column, op in zip(columns, ops):
            column.append(expectation(op, snapshot).real)
    return Trajectory(
        times,
        np.array(columns[0]),
        np.array(columns[1]),
        np.array(columns[2]),
    )
