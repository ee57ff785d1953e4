"""Coherent states, displacement, free evolution, trajectories."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bosonreg.bosonic import PhysParams, ladder, project
from bosonreg.coherent import (
    CoherentSpec,
    Trajectory,
    coherent_series,
    displacement_apply,
    displacement_generator_block,
    displacement_generator_gateform,
    evolve,
    expectation,
    expm_antihermitian,
    number_distribution,
    trajectory,
)
from bosonreg.bosonic import circuit_as_operator, hamiltonian, position, register_block
from bosonreg.errors import NotBosonicError, TruncationRiskError
from bosonreg.fock import build_fock
from bosonreg.register import RegisterState

PARAMS = PhysParams(1.0, 1.0, 1.0)


def test_zero_amplitude_is_the_ground_level():
    built = coherent_series(CoherentSpec(0j, PARAMS, 8))
    assert built.state == RegisterState.basis(8, 1)
    assert built.tail_mass == 0.0


def test_series_amplitudes_match_formula():
    z = 0.4 - 0.3j
    built = coherent_series(CoherentSpec(z, PARAMS, 12))
    prefactor = math.exp(-abs(z) ** 2 / 2)
    for n in range(12):
        expected = prefactor * z ** n / math.sqrt(math.factorial(n))
        assert abs(built.state.amplitude(1 << n) - expected) < 1e-15


def test_number_distribution_is_poisson():
    z = 0.6 + 0.2j
    built = coherent_series(CoherentSpec(z, PARAMS, 24))
    dist = number_distribution(built.state)
    mean = abs(z) ** 2
    for n in range(24):
        pmf = math.exp(-mean) * mean ** n / math.factorial(n)
        assert abs(dist[n] - pmf) < 1e-12


def test_lowering_eigenvalue_relation():
    z = 0.5j
    spec = CoherentSpec(z, PARAMS, 32)
    state = coherent_series(spec).state
    lowered = ladder("lower", PARAMS, 32).apply(state)
    residual = (lowered - state.scale(z * math.sqrt(2 * PARAMS.epsilon))).norm()
    assert residual < 1e-8


def test_truncation_guard():
    with pytest.raises(TruncationRiskError):
        CoherentSpec(2.0 + 0j, PARAMS, 8)
    spec = CoherentSpec(2.0 + 0j, PARAMS, 8, allow_truncation_risk=True)
    built = coherent_series(spec)
    assert built.tail_mass > 0.01


def test_tail_mass_matches_poisson_tail():
    built = coherent_series(CoherentSpec(1.0 + 0j, PARAMS, 4))
    kept = sum(math.exp(-1) / math.factorial(n) for n in range(4))
    assert abs(built.tail_mass - (1 - kept)) < 1e-12


def test_polar_construction():
    spec = CoherentSpec.from_polar(0.3, 0.0, PARAMS, 8)
    assert abs(spec.z - 0.3j) < 1e-15
    assert abs(spec.r - 0.3) < 1e-15
    assert abs(spec.theta - 0.0) < 1e-15
    assert abs(CoherentSpec(-0.5 + 0j, PARAMS, 8).theta - math.pi / 2) < 1e-15
    zero = CoherentSpec(0j, PARAMS, 8)
    assert zero.r == 0.0 and zero.theta == 0.0


def test_expm_against_taylor_series():
    rng = np.random.default_rng(7)
    raw = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    g = raw - raw.conj().T
    series = np.eye(6, dtype=complex)
    term = np.eye(6, dtype=complex)
    for k in range(1, 40):
        term = term @ g / k
        series = series + term
    assert np.max(np.abs(expm_antihermitian(g) - series)) < 1e-12
    with pytest.raises(ValueError):
        expm_antihermitian(raw)


def test_displacement_of_ground_matches_series():
    z = 0.7 * cmath.exp(0.25j * math.pi)
    spec = CoherentSpec(z, PARAMS, 32)
    displaced = displacement_apply(spec, RegisterState.basis(32, 1))
    series = coherent_series(spec).state
    assert (displaced - series).norm() < 1e-8


def test_displacement_is_unitary_on_the_subspace():
    spec = CoherentSpec(0.4j, PARAMS, 16)
    excited = RegisterState(16, {2: 1.0})
    moved = displacement_apply(spec, excited)
    assert abs(moved.norm() - 1) < 1e-12


def test_displacement_rejects_transbosonic_input():
    spec = CoherentSpec(0.4j, PARAMS, 8)
    with pytest.raises(NotBosonicError):
        displacement_apply(spec, RegisterState.basis(8, 3))


def test_generator_gateform_matches_block():
    spec = CoherentSpec(0.3 - 0.2j, PARAMS, 6)
    pair = displacement_generator_gateform(spec)
    block = register_block(circuit_as_operator(pair.full))
    assert np.max(np.abs(block - displacement_generator_block(spec))) < 1e-12


def test_generator_gateform_empty_at_zero():
    pair = displacement_generator_gateform(CoherentSpec(0j, PARAMS, 6))
    assert pair.full.terms == ()
    assert pair.reduced.terms == ()


def test_evolution_phases_per_level():
    t = 0.8
    for n in (0, 2, 5):
        start = RegisterState.basis(8, 1 << n)
        ended = evolve(start, t, PARAMS)
        phase = cmath.exp(-1j * (n + 0.5) * PARAMS.epsilon * t / PARAMS.hbar)
        assert abs(ended.amplitude(1 << n) - phase) < 1e-15


@given(t1=st.floats(-5, 5), t2=st.floats(-5, 5))
def test_evolution_group_property(t1, t2):
    state = RegisterState(4, {1: 0.5, 2: 0.5j, 4: -0.5, 8: 0.5})
    double = evolve(evolve(state, t1, PARAMS), t2, PARAMS)
    direct = evolve(state, t1 + t2, PARAMS)
    assert (double - direct).norm() < 1e-12


def test_evolution_preserves_norm_and_rejects_transbosonic():
    state = RegisterState(4, {1: 0.6, 4: 0.8})
    assert abs(evolve(state, 2.1, PARAMS).norm() - 1) < 1e-14
    with pytest.raises(NotBosonicError):
        evolve(RegisterState.basis(4, 3), 1.0, PARAMS)


def test_trajectory_against_dense_oracle():
    """Evolve the projected coefficients with the oracle matrices directly."""
    z = 0.5 + 0j
    rank = 16
    spec = CoherentSpec(z, PARAMS, rank)
    times = np.linspace(0.0, 4.0, 9)
    traj = trajectory(spec, times)
    oracle = build_fock(PARAMS, rank)
    v0 = project(coherent_series(spec).state).coeffs
    levels = np.arange(rank)
    for i, t in enumerate(times):
        v = v0 * np.exp(-1j * (levels + 0.5) * PARAMS.epsilon * t / PARAMS.hbar)
        assert abs(traj.x[i] - (v.conj() @ oracle.x @ v).real) < 1e-12
        assert abs(traj.p[i] - (v.conj() @ oracle.p @ v).real) < 1e-12
        assert abs(traj.h[i] - (v.conj() @ oracle.h @ v).real) < 1e-12


def test_trajectory_closed_forms_and_energy():
    z = 0.5 + 0j
    rank = 32
    spec = CoherentSpec(z, PARAMS, rank)
    omega, eps = PARAMS.omega, PARAMS.epsilon
    times = np.linspace(0.0, 2 * math.pi / omega, 64)
    traj = trajectory(spec, times)
    scale = math.sqrt(2 * eps)
    for i, t in enumerate(times):
        rotating = z * cmath.exp(-1j * omega * t)
        assert abs(traj.x[i] - scale * rotating.real / PARAMS.beta) < 1e-10
        # momentum rotates into +Im, fixing the sign convention
        assert abs(traj.p[i] - scale * rotating.imag / PARAMS.alpha) < 1e-10
        assert abs(traj.h[i] - eps * (abs(z) ** 2 + 0.5)) < 1e-12
    assert abs(traj.x[0] - traj.x[-1]) < 1e-10


def test_trajectory_csv_layout():
    traj = Trajectory(
        times=np.array([0.0, 0.5]),
        x=np.array([1.0, 0.25]),
        p=np.array([0.0, -0.125]),
        h=np.array([0.5, 0.5]),
    )
    lines = traj.to_csv().strip().splitlines()
    assert lines[0] == "t,x,p,h"
    assert lines[1] == "0,1,0,0.5"
    assert lines[2] == "0.5,0.25,-0.125,0.5"


def test_expectation_examples():
    state = RegisterState.basis(8, 2)
    h = expectation(hamiltonian(PARAMS, 8), state)
    assert abs(h - 1.5 * PARAMS.epsilon) < 1e-14
    x = expectation(position(PARAMS, 8), state)
    assert abs(x) < 1e-14
