"""Logic functions, basis indexing, and sparse register states.

A register of rank R is a row of R qubit sites.  A classical configuration
assigns every site a yes/no answer; we encode it as a bit tuple and identify
it with the integer key sum(bits[n] * 2**n), site 0 being the least
significant bit.  Quantum states are sparse maps from integer keys to complex
amplitudes.  The all-zero configuration (key 0) is a legitimate basis state,
distinct from the zero vector, which stores no amplitudes at all.

Bit sequences that are eventually periodic get two numeric readings: the
computational one above (defined only when the sequence terminates) and a
continuum one, sum(bits[n] * 2**-n), an exact rational in [0, 2].  The two
readings collide on different sequences, e.g. 0111... and 1000... both read
1 in the continuum; such values are kept as exact fractions so collisions
are decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import jsonio
from .errors import (
    NotFiniteCountableError,
    RankMismatchError,
    RankTooLargeError,
    ZeroVectorError,
)

__all__ = [
    "MAX_RANK",
    "DENSE_MAX_RANK",
    "LogicFunction",
    "GateKind",
    "negation",
    "binary_gate",
    "count_yes",
    "count_no",
    "BasisIndex",
    "computational_map",
    "SequenceClass",
    "EventuallyPeriodicSequence",
    "classify",
    "computational_value",
    "continuum_map",
    "RegisterState",
    "separability_check",
    "rank2_coefficients",
]

#: Keys are manipulated as plain machine integers, so ranks stop at 64 bits.
MAX_RANK = 64

#: Dense 2**R conversions are refused above this rank.
DENSE_MAX_RANK = 12


def _check_rank(rank: int) -> int:
    if not isinstance(rank, int) or not 1 <= rank <= MAX_RANK:
        raise ValueError(f"rank must be an integer in [1, {MAX_RANK}], got {rank!r}")
    return rank


def _check_bits(bits: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError("bits must all be 0 or 1")
    return out


@dataclass(frozen=True)
class LogicFunction:
    """A classical answer sheet: one bit per site."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", _check_bits(self.bits))
        _check_rank(len(self.bits))

    @property
    def rank(self) -> int:
        return len(self.bits)

    @classmethod
    def all_yes(cls, rank: int) -> "LogicFunction":
        return cls((1,) * _check_rank(rank))

    @classmethod
    def all_no(cls, rank: int) -> "LogicFunction":
        return cls((0,) * _check_rank(rank))


class GateKind(Enum):
    AND = "and"
    OR = "or"
    XOR = "xor"


def negation(f: LogicFunction) -> LogicFunction:
    return LogicFunction(tuple(1 - b for b in f.bits))


def binary_gate(kind: GateKind, f: LogicFunction, g: LogicFunction) -> LogicFunction:
    if f.rank != g.rank:
        raise RankMismatchError(f"rank {f.rank} vs {g.rank}")
    if kind is GateKind.AND:
        bits = tuple(a & b for a, b in zip(f.bits, g.bits))
    elif kind is GateKind.OR:
        bits = tuple(a | b for a, b in zip(f.bits, g.bits))
    elif kind is GateKind.XOR:
        bits = tuple(a ^ b for a, b in zip(f.bits, g.bits))
    else:
        raise ValueError(f"unknown gate kind {kind!r}")
    return LogicFunction(bits)


def count_yes(f: LogicFunction) -> int:
    return sum(f.bits)


def count_no(f: LogicFunction) -> int:
    return f.rank - sum(f.bits)


def computational_map(bits: Sequence[int] | LogicFunction) -> int:
    """Integer key of a finite bit sequence, site 0 least significant."""
    if isinstance(bits, LogicFunction):
        bits = bits.bits
    bits = _check_bits(bits)
    return sum(b << n for n, b in enumerate(bits))


@dataclass(frozen=True)
class BasisIndex:
    """One classical basis state of a rank-R register."""

    rank: int
    key: int

    def __post_init__(self) -> None:
        _check_rank(self.rank)
        if not 0 <= self.key < (1 << self.rank):
            raise ValueError(f"key {self.key} out of range for rank {self.rank}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BasisIndex":
        bits = _check_bits(bits)
        return cls(len(bits), computational_map(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.key >> n) & 1 for n in range(self.rank))


class SequenceClass(Enum):
    FINITE_COUNTABLE = "FiniteCountable"
    RECURRING = "RecurringSequence"


@dataclass(frozen=True)
class EventuallyPeriodicSequence:
    """Bit sequence prefix + period, normalized so an all-zero period is empty."""

    prefix: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        prefix = _check_bits(self.prefix)
        period = _check_bits(self.period)
        if not any(period):
            period = ()
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def classify(self) -> SequenceClass:
        if self.period:
            return SequenceClass.RECURRING
        return SequenceClass.FINITE_COUNTABLE


def classify(seq: EventuallyPeriodicSequence) -> SequenceClass:
    return seq.classify()


def _as_sequence(seq: EventuallyPeriodicSequence | Sequence[int]) -> EventuallyPeriodicSequence:
    if isinstance(seq, EventuallyPeriodicSequence):
        return seq
    return EventuallyPeriodicSequence(prefix=_check_bits(seq))


def computational_value(seq: EventuallyPeriodicSequence | Sequence[int]) -> int:
    """Integer key of a terminating sequence; recurring input is an error."""
    seq = _as_sequence(seq)
    if seq.classify() is SequenceClass.RECURRING:
        raise NotFiniteCountableError("recurring sequence has no integer key")
    return computational_map(seq.prefix)


def continuum_map(seq: EventuallyPeriodicSequence | Sequence[int]) -> Fraction:
    """Exact value of sum(bits[n] / 2**n) over the whole infinite sequence."""
    seq = _as_sequence(seq)
    value = Fraction(0)
    for n, b in enumerate(seq.prefix):
        if b:
            value += Fraction(1, 1 << n)
    if seq.period:
        j, p = len(seq.prefix), len(seq.period)
        block = sum(Fraction(b, 1 << k) for k, b in enumerate(seq.period))
        value += Fraction(1, 1 << j) * block / (1 - Fraction(1, 1 << p))
    return value


class RegisterState:
    """Sparse complex amplitudes over the 2**R classical keys.

    Instances are value objects: every operation returns a new state and the
    stored map must not be mutated.  Amplitudes with modulus at or below the
    construction threshold (default exactly zero) are never stored, so the
    zero vector is the state with an empty map.
    """

    __slots__ = ("rank", "_amp")

    def __init__(
        self,
        rank: int,
        amplitudes: Mapping[int, complex] | Iterable[tuple[int, complex]] = (),
        *,
        threshold: float = 0.0,
    ) -> None:
        self.rank = _check_rank(rank)
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        amp: dict[int, complex] = {}
        top = 1 << rank
        for key, value in items:
            key = int(key)
            if not 0 <= key < top:
                raise ValueError(f"key {key} out of range for rank {rank}")
            value = complex(value)
            if abs(value) > threshold:
                amp[key] = value
        self._amp = amp

    @classmethod
    def basis(cls, rank: int, key: int) -> "RegisterState":
        return cls(rank, {key: 1.0 + 0j})

    @classmethod
    def void(cls, rank: int) -> "RegisterState":
        """The all-no configuration |0...0), a unit vector, not the zero vector."""
        return cls.basis(rank, 0)

    @classmethod
    def zero(cls, rank: int) -> "RegisterState":
        return cls(rank)

    @property
    def amplitudes(self) -> dict[int, complex]:
        """The internal key -> amplitude map.  Treat as read-only."""
        return self._amp

    def amplitude(self, key: int) -> complex:
        return self._amp.get(int(key), 0j)

    def items(self) -> Iterator[tuple[int, complex]]:
        return iter(self._amp.items())

    def __len__(self) -> int:
        return len(self._amp)

    @property
    def is_zero(self) -> bool:
        return not self._amp

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RegisterState):
            return NotImplemented
        return self.rank == other.rank and self._amp == other._amp

    __hash__ = None  # mutable value semantics, keep out of sets and dict keys

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v:.6g}" for k, v in sorted(self._amp.items()))
        return f"RegisterState(rank={self.rank}, {{{body}}})"

    def _require_same_rank(self, other: "RegisterState") -> None:
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def inner_product(self, other: "RegisterState") -> complex:
        """(self | other), antilinear in self."""
        self._require_same_rank(other)
        small, big = self._amp, other._amp
        conj_side = True
        if len(big) < len(small):
            small, big = big, small
            conj_side = False
        total = 0j
        for key, value in small.items():
            mate = big.get(key)
            if mate is not None:
                total += value.conjugate() * mate if conj_side else mate.conjugate() * value
        return total

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(v) ** 2 for v in self._amp.values())))

    def add(self, other: "RegisterState") -> "RegisterState":
        self._require_same_rank(other)
        out = dict(self._amp)
        for key, value in other._amp.items():
            out[key] = out.get(key, 0j) + value
        return RegisterState(self.rank, out)

    def scale(self, factor: complex) -> "RegisterState":
        return RegisterState(
            self.rank, {k: factor * v for k, v in self._amp.items()}
        )

    def __add__(self, other: "RegisterState") -> "RegisterState":
        return self.add(other)

    def __sub__(self, other: "RegisterState") -> "RegisterState":
        return self.add(other.scale(-1))

    def __rmul__(self, factor: complex) -> "RegisterState":
        return self.scale(factor)

    def normalized(self) -> "RegisterState":
        n = self.norm()
        if n == 0.0:
            raise ZeroVectorError("cannot normalize the zero vector")
        return self.scale(1.0 / n)

    def to_dense(self) -> np.ndarray:
        if self.rank > DENSE_MAX_RANK:
            raise RankTooLargeError(
                f"dense vector needs rank <= {DENSE_MAX_RANK}, got {self.rank}"
            )
        vec = np.zeros(1 << self.rank, dtype=complex)
        for key, value in self._amp.items():
            vec[key] = value
        return vec

    @classmethod
    def from_dense(cls, vec: np.ndarray, rank: int) -> "RegisterState":
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (1 << rank,):
            raise ValueError(f"expected length {1 << rank}, got {vec.shape}")
        return cls(rank, {k: v for k, v in enumerate(vec) if v != 0})

    def to_json_obj(self, **extra: float) -> dict:
        rows = [
            [key, float(value.real), float(value.imag)]
            for key, value in sorted(self._amp.items())
        ]
        obj: dict = {"rank": self.rank, "amplitudes": rows}
        obj.update(extra)
        return obj

    def to_json(self) -> str:
        return jsonio.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "RegisterState":
        rows = obj["amplitudes"]
        return cls(int(obj["rank"]), ((int(k), complex(re, im)) for k, re, im in rows))

    @classmethod
    def from_json(cls, text: str) -> "RegisterState":
        return cls.from_json_obj(jsonio.loads(text))


def rank2_coefficients(state: RegisterState) -> tuple[complex, complex, complex, complex]:
    """(c00, c01, c10, c11) of a rank-2 state, bit order (site 0, site 1)."""
    if state.rank != 2:
        raise RankMismatchError(f"need rank 2, got {state.rank}")
    a = state.amplitude
    return a(0b00), a(0b10), a(0b01), a(0b11)


def separability_check(
    c00: complex, c01: complex, c10: complex, c11: complex, tol: float = 1e-12
) -> bool:
    """True when a rank-2 amplitude table factorizes into a site product."""
    return abs(c00 * c11 - c10 * c01) <= tol
