"""Two-site gates and weighted gate circuits over register states.

CNOT with control a and target b flips bit b exactly on branches where bit a
is 1; its transpose is the same gate with the roles swapped.  The bit
transpose T(a, b) exchanges the two bits.  Its one-parameter extension
T(a, b, theta) phases the two exchange branches oppositely:

    (bit a, bit b) = (1, 0)  ->  (0, 1)  times e^{+i theta}
    (bit a, bit b) = (0, 1)  ->  (1, 0)  times e^{-i theta}

while equal-bit branches pass through unchanged; theta = 0 is the plain
swap.  These rules are key rewrites, so application cost scales with the
number of stored amplitudes, never with 2**R.

A Circuit is a complex-weighted sum of factor products, each factor being a
single-site operator placement, a CNOT, or a phased transpose.  Within a
product the rightmost factor acts first.  Circuits are linear maps rather
than unitaries and serve as the exchange format for operator decompositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import jsonio
from .errors import RankMismatchError, RankTooLargeError
from .qubit import ScaledSiteOp, SiteOp, op_action
from .register import DENSE_MAX_RANK, RegisterState

__all__ = [
    "apply_site_op",
    "apply_cnot",
    "apply_cnot_transpose",
    "apply_transpose",
    "apply_transpose_theta",
    "GatePlacement",
    "local",
    "cnot",
    "cnot_transpose",
    "transpose",
    "transpose_theta",
    "CircuitTerm",
    "Circuit",
    "CircuitPair",
    "apply_circuit",
    "circuit_to_matrix",
    "circuit_to_json_obj",
    "circuit_to_json",
    "circuit_from_json_obj",
    "circuit_from_json",
    "cnot_matrix",
    "transpose_theta_matrix",
    "conjugated_cnot_matrix",
]


def _check_pair(rank: int, a: int, b: int) -> None:
    if not (0 <= a < rank and 0 <= b < rank):
        raise ValueError(f"sites ({a}, {b}) out of range for rank {rank}")
    if a == b:
        raise ValueError("the two sites must differ")


def apply_site_op(
    state: RegisterState, site: int, op: SiteOp | ScaledSiteOp
) -> RegisterState:
    """Apply one named operator at one site, identity elsewhere."""
    if not 0 <= site < state.rank:
        raise ValueError(f"site {site} out of range for rank {state.rank}")
    scaled = op if isinstance(op, ScaledSiteOp) else ScaledSiteOp(1 + 0j, op)
    action = op_action(scaled.op)
    out: dict[int, complex] = {}
    for key, amp in state.items():
        entry = action[(key >> site) & 1]
        if entry is None:
            continue
        bit, coeff = entry
        new_key = key | (1 << site) if bit else key & ~(1 << site)
        out[new_key] = out.get(new_key, 0j) + amp * coeff * scaled.coeff
    return RegisterState(state.rank, out)


def apply_cnot(state: RegisterState, a: int, b: int) -> RegisterState:
    """Flip bit b on every branch whose bit a is 1.  Self-inverse."""
    _check_pair(state.rank, a, b)
    return RegisterState(
        state.rank,
        {key ^ (((key >> a) & 1) << b): amp for key, amp in state.items()},
    )


def apply_cnot_transpose(state: RegisterState, a: int, b: int) -> RegisterState:
    """The transpose of CNOT(a, b), which is CNOT with control and target swapped."""
    return apply_cnot(state, b, a)


def apply_transpose(state: RegisterState, a: int, b: int) -> RegisterState:
    """Swap bits a and b on every branch."""
    _check_pair(state.rank, a, b)
    mask = (1 << a) | (1 << b)
    out = {}
    for key, amp in state.items():
        if ((key >> a) & 1) != ((key >> b) & 1):
            key ^= mask
        out[key] = amp
    return RegisterState(state.rank, out)


def apply_transpose_theta(
    state: RegisterState, a: int, b: int, theta: float
) -> RegisterState:
    """Swap bits a and b, phasing the (1,0) branch by e^{+i theta} and the
    (0,1) branch by e^{-i theta}."""
    _check_pair(state.rank, a, b)
    mask = (1 << a) | (1 << b)
    up = complex(math.cos(theta), math.sin(theta))
    down = up.conjugate()
    out: dict[int, complex] = {}
    for key, amp in state.items():
        bit_a = (key >> a) & 1
        bit_b = (key >> b) & 1
        if bit_a == bit_b:
            out[key] = amp
        elif bit_a:
            out[key ^ mask] = amp * up
        else:
            out[key ^ mask] = amp * down
    return RegisterState(state.rank, out)


# Wire mnemonics for local placements; the zero operator has no wire form
# because a vanishing factor should be dropped with its whole term.
_OP_NAMES = {
    SiteOp.P0: "P0", SiteOp.P1: "P1", SiteOp.A: "A", SiteOp.APLUS: "A+",
    SiteOp.S0: "S0", SiteOp.S1: "S1", SiteOp.S2: "S2", SiteOp.S3: "S3",
}
_OPS_BY_NAME = {name: op for op, name in _OP_NAMES.items()}


@dataclass(frozen=True)
class GatePlacement:
    """One factor of a circuit term: a local operator, a CNOT, or a T gate."""

    kind: str
    site: int | None = None
    op: SiteOp | None = None
    a: int | None = None
    b: int | None = None
    theta: float | None = None


def local(site: int, op: SiteOp) -> GatePlacement:
    if site < 0:
        raise ValueError("site must be non-negative")
    if op not in _OP_NAMES:
        raise ValueError(f"{op} has no circuit placement")
    return GatePlacement("local", site=site, op=op)


def cnot(a: int, b: int) -> GatePlacement:
    if a < 0 or b < 0 or a == b:
        raise ValueError("need two distinct non-negative sites")
    return GatePlacement("cnot", a=a, b=b)


def cnot_transpose(a: int, b: int) -> GatePlacement:
    """Stored canonically as the equivalent CNOT with roles swapped."""
    return cnot(b, a)


def transpose_theta(a: int, b: int, theta: float) -> GatePlacement:
    if a < 0 or b < 0 or a == b:
        raise ValueError("need two distinct non-negative sites")
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    return GatePlacement("T", a=a, b=b, theta=theta)


def transpose(a: int, b: int) -> GatePlacement:
    """Plain bit swap, stored canonically as T(a, b, 0)."""
    return transpose_theta(a, b, 0.0)


@dataclass(frozen=True)
class CircuitTerm:
    coeff: complex
    factors: tuple[GatePlacement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class Circuit:
    """Weighted sum of placement products on a fixed-rank register."""

    rank: int
    terms: tuple[CircuitTerm, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        for term in self.terms:
            for p in term.factors:
                if p.kind == "local":
                    if not 0 <= p.site < self.rank:
                        raise ValueError(f"site {p.site} out of range")
                else:
                    _check_pair(self.rank, p.a, p.b)


@dataclass(frozen=True)
class CircuitPair:
    """A decomposition in two flavors: exact everywhere, and reduced.

    The reduced circuit drops projector counterterms and therefore agrees
    with the full one only on states inside the bosonic subspace.
    """

    full: Circuit
    reduced: Circuit


def _apply_placement(state: RegisterState, p: GatePlacement) -> RegisterState:
    if p.kind == "local":
        return apply_site_op(state, p.site, p.op)
    if p.kind == "cnot":
        return apply_cnot(state, p.a, p.b)
    if p.kind == "T":
        return apply_transpose_theta(state, p.a, p.b, p.theta)
    raise ValueError(f"unknown placement kind {p.kind!r}")


def apply_circuit(state: RegisterState, circuit: Circuit) -> RegisterState:
    """Apply the weighted sum; within a term the rightmost factor acts first."""
    if state.rank != circuit.rank:
        raise RankMismatchError(f"state rank {state.rank} vs circuit rank {circuit.rank}")
    total = RegisterState.zero(state.rank)
    for term in circuit.terms:
        branch = state
        for p in reversed(term.factors):
            branch = _apply_placement(branch, p)
        total = total.add(branch.scale(term.coeff))
    return total


def circuit_to_matrix(circuit: Circuit) -> np.ndarray:
    """Dense 2**R matrix of the circuit, columns indexed by integer key."""
    if circuit.rank > DENSE_MAX_RANK:
        raise RankTooLargeError(
            f"dense matrix needs rank <= {DENSE_MAX_RANK}, got {circuit.rank}"
        )
    dim = 1 << circuit.rank
    mat = np.zeros((dim, dim), dtype=complex)
    for key in range(dim):
        column = apply_circuit(RegisterState.basis(circuit.rank, key), circuit)
        for out_key, amp in column.items():
            mat[out_key, key] = amp
    return mat


def _placement_to_obj(p: GatePlacement) -> dict:
    if p.kind == "local":
        return {"type": "local", "site": p.site, "op": _OP_NAMES[p.op]}
    if p.kind == "cnot":
        return {"type": "cnot", "a": p.a, "b": p.b}
    return {"type": "T", "a": p.a, "b": p.b, "theta": float(p.theta)}


def circuit_to_json_obj(circuit: Circuit) -> dict:
    return {
        "rank": circuit.rank,
        "terms": [
            {
                "coeff": {"re": term.coeff.real, "im": term.coeff.imag},
                "factors": [_placement_to_obj(p) for p in term.factors],
            }
            for term in circuit.terms
        ],
    }


def circuit_to_json(circuit: Circuit) -> str:
    return jsonio.dumps(circuit_to_json_obj(circuit))


def _placement_from_obj(obj: Mapping) -> GatePlacement:
    kind = obj["type"]
    if kind == "local":
        return local(int(obj["site"]), _OPS_BY_NAME[obj["op"]])
    if kind == "cnot":
        return cnot(int(obj["a"]), int(obj["b"]))
    if kind == "T":
        return transpose_theta(int(obj["a"]), int(obj["b"]), float(obj["theta"]))
    raise ValueError(f"unknown factor type {kind!r}")


def circuit_from_json_obj(obj: Mapping) -> Circuit:
    terms = tuple(
        CircuitTerm(
            complex(t["coeff"]["re"], t["coeff"]["im"]),
            tuple(_placement_from_obj(p) for p in t["factors"]),
        )
        for t in obj["terms"]
    )
    return Circuit(int(obj["rank"]), terms)


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_json_obj(jsonio.loads(text))


def cnot_matrix() -> np.ndarray:
    """4x4 CNOT, control site 0, target site 1, key order 0..3."""
    return circuit_to_matrix(Circuit(2, (CircuitTerm(1, (cnot(0, 1),)),)))


def transpose_theta_matrix(theta: float) -> np.ndarray:
    """4x4 phased transpose on sites (0, 1), key order 0..3."""
    return circuit_to_matrix(Circuit(2, (CircuitTerm(1, (transpose_theta(0, 1, theta),)),)))


def conjugated_cnot_matrix(
    alpha: float, beta: float, gamma: float, delta: float
) -> np.ndarray:
    """CNOT conjugated by site rephasings, control site 0, target site 1.

    Site 0 phases its |1), |0) by e^{-i alpha}, e^{-i beta}; site 1 uses
    gamma, delta.  The control block is untouched while the target exchange
    rotates by the target's phase difference only, so the result equals
    P0 (x) S0 + P1 (x) (cos(gamma - delta) S1 + sin(gamma - delta) S2).
    """
    u_a = np.diag([np.exp(-1j * beta), np.exp(-1j * alpha)])  # bit order 0, 1
    u_b = np.diag([np.exp(-1j * delta), np.exp(-1j * gamma)])
    u = np.kron(u_b, u_a)  # site 1 is the high bit of the key
    c = cnot_matrix()
    return u @ c @ u.conj().T
