import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from spinstat import dynamics, qcore
from spinstat.dynamics import RotationSchedule, exchange_phase
from spinstat.errors import BadQuantumNumber, DimensionMismatch, PhaseUndefined
from spinstat.qcore import PAULIS, DensityOperator, Ket
from spinstat.spinrep import SpinLabel, random_axis, spin_operators

HALF, ONE, THREE_HALVES, TWO = (SpinLabel(k) for k in (1, 2, 3, 4))
Z = np.array([0.0, 0.0, 1.0])


@pytest.mark.parametrize("omega", [0.5, 1.0, 3.0])
def test_precession_full_turn(omega):
    t = 2 * math.pi / omega
    assert qcore.max_abs_diff(dynamics.precession_unitary(HALF, omega * Z, t), -np.eye(2)) < 1e-12
    assert qcore.max_abs_diff(dynamics.precession_unitary(ONE, omega * Z, t), np.eye(3)) < 1e-12
    assert qcore.max_abs_diff(dynamics.precession_unitary(TWO, (1, 2, 3), 0.0), np.eye(5)) == 0


def test_constant_schedule_spin_half():
    res = exchange_phase(HALF, RotationSchedule.constant(Z, 2 * math.pi))
    assert res.fidelity == pytest.approx(1.0, abs=1e-12)
    assert qcore.phase_distance(res.phase, math.pi) < 1e-12
    assert res.convention == dynamics.SIGN_CONVENTION


def _continuous_ramp_state(total, duration):
    # independent oracle: integrate i dpsi/dt = k t sz psi with an adaptive ODE solver
    k = 2 * total / duration**2
    sz = PAULIS[2] / 2

    def rhs(t, y):
        return -1j * k * t * (sz @ y)

    sol = solve_ivp(rhs, (0, duration), np.array([1, 0], dtype=complex), rtol=1e-12, atol=1e-13)
    return sol.y[:, -1]


def test_ramp_matches_continuous_integration():
    res = exchange_phase(HALF, RotationSchedule.ramp(Z, 2 * math.pi, 1.7, 10_000))
    ode = _continuous_ramp_state(2 * math.pi, 1.7)
    assert qcore.phase_distance(float(np.angle(ode[0])), math.pi) < 1e-9
    assert qcore.phase_distance(res.phase, math.pi) < 1e-9
    assert res.fidelity == pytest.approx(1.0, abs=1e-9)


def test_spin_two_coaxial_schedules_are_trivial(rng):
    for sched in (
        RotationSchedule.constant(-Z, 2 * math.pi, 7),
        RotationSchedule.ramp(Z, 2 * math.pi, 3.0, 500),
        RotationSchedule.two_step(random_axis(rng), 2 * math.pi, 0.4),
    ):
        assert abs(exchange_phase(TWO, sched).phase) < 1e-9


@pytest.mark.parametrize("spin", [HALF, ONE, THREE_HALVES], ids=str)
def test_schedule_independence(spin):
    want = math.pi * (spin.two_s % 2)
    phases = [
        exchange_phase(spin, s).phase
        for s in (
            RotationSchedule.constant(Z, 2 * math.pi),
            RotationSchedule.ramp(Z, 2 * math.pi, 2.0, 4000),
            RotationSchedule.two_step(Z, 2 * math.pi, 5.0),
        )
    ]
    for p in phases:
        assert qcore.phase_distance(p, want) < 1e-9


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_kernel_and_dense_routes_agree(two_s, rng):
    times = np.concatenate([[0.0], np.cumsum(rng.uniform(0.01, 0.2, size=40))])
    sched = RotationSchedule(times, rng.normal(size=(40, 3)))
    k = dynamics.schedule_unitary(SpinLabel(two_s), sched, "kernel")
    d = dynamics.schedule_unitary(SpinLabel(two_s), sched, "dense")
    assert qcore.max_abs_diff(k, d) < 1e-10


def test_state_leaving_its_ray_has_no_phase():
    # a pi turn about x sends |+1/2> to |-1/2>
    res = exchange_phase(HALF, RotationSchedule.constant((math.pi, 0, 0), 1.0))
    assert res.fidelity < 1e-9 and res.accumulated_phase is None
    with pytest.raises(PhaseUndefined):
        res.phase


def test_exchange_phase_rejects_wrong_dim():
    with pytest.raises(DimensionMismatch):
        exchange_phase(ONE, RotationSchedule.constant(Z, 1.0), initial=Ket.basis(0, (2,)))


def test_norm_preserved(rng):
    times = np.linspace(0, 3, 301)
    sched = RotationSchedule(times, rng.normal(size=(300, 3)))
    psi = Ket.normalized(rng.normal(size=4) + 1j * rng.normal(size=4), (4,))
    out = exchange_phase(THREE_HALVES, sched, initial=psi)
    assert abs(np.linalg.norm(out.final_state.amplitudes) - 1) < 1e-10


def test_schedule_validation_and_parsing():
    with pytest.raises(ValueError):
        RotationSchedule(np.array([0.0, 1.0]), np.zeros((2, 3)))
    with pytest.raises(ValueError):
        RotationSchedule(np.array([0.0, 0.0]), np.zeros((1, 3)))
    s = RotationSchedule.from_segments("0:1:3.0,1:2:3.2831853071795862")
    assert s.total_angle == pytest.approx(6.2831853071795862)
    assert np.allclose(s.common_axis(), Z)
    with pytest.raises(ValueError):
        RotationSchedule.from_segments("0:1:1,2:3:1")
    obj = {"times": [0, 1], "omegas": [[1, 0, 0]]}
    assert RotationSchedule.from_json_obj(obj).total_angle == 1.0


def test_partial_swap_examples():
    assert dynamics.partial_swap_phase(HALF, 1.0, 0.5) == pytest.approx(-1.0)
    assert dynamics.partial_swap_phase(HALF, 0.5, 0.5) == pytest.approx(-1j)
    assert dynamics.partial_swap_phase(TWO, 0.0) == 1.0
    brute = exchange_phase(HALF, RotationSchedule.constant(Z, math.pi))
    assert qcore.phase_distance(brute.phase, -math.pi / 2) < 1e-12


@pytest.mark.parametrize("m", [0.25, 1.5, "x", 1])
def test_partial_swap_rejects_bad_m(m):
    with pytest.raises(BadQuantumNumber):
        dynamics.partial_swap_phase(HALF, 0.5, m)


def test_partial_swap_composes(rng):
    for _ in range(20):
        a, b = rng.uniform(0, 0.5, size=2)
        for m in (1.5, 0.5, -0.5):
            lhs = dynamics.partial_swap_phase(THREE_HALVES, a, m) * dynamics.partial_swap_phase(THREE_HALVES, b, m)
            assert abs(lhs - dynamics.partial_swap_phase(THREE_HALVES, a + b, m)) < 1e-12


def test_two_particle_examples():
    u1 = dynamics.precession_unitary(HALF, (0.3, 0, 1), 1.2)
    out = dynamics.two_particle_unitary(HALF, ONE, (0.3, 0, 1), (0, 0, 0), 1.2)
    assert qcore.max_abs_diff(out, np.kron(u1.entries, np.eye(3))) < 1e-12
    full = dynamics.two_particle_unitary(HALF, HALF, Z, Z, 2 * math.pi)
    assert qcore.max_abs_diff(full, np.eye(4)) < 1e-12
    assert qcore.max_abs_diff(dynamics.precession_unitary(HALF, Z, 2 * math.pi), -np.eye(2)) < 1e-12
    assert qcore.max_abs_diff(dynamics.two_particle_unitary(ONE, ONE, Z, -Z, 0.0), np.eye(9)) == 0


def test_two_particle_evolution_is_local(rng):
    # evolving particle 2 alone never changes particle 1's reduced state
    psi = Ket.normalized(rng.normal(size=6) + 1j * rng.normal(size=6), (2, 3))
    before = qcore.partial_trace(DensityOperator.from_ket(psi), [2, 3], {0})
    u = dynamics.two_particle_unitary(HALF, ONE, (0, 0, 0), rng.normal(size=3), 2.3)
    after = qcore.partial_trace(DensityOperator.from_ket(psi.evolved(u)), [2, 3], {0})
    assert qcore.max_abs_diff(before, after) < 1e-12


@pytest.mark.parametrize("n,k", [(8, 1), (8, 3), (13, 5), (16, 0)])
def test_lattice_momentum_eigenstate(n, k):
    mass, t = 0.8, 2.7
    psi = dynamics.momentum_state(n, k, [1, 0])
    out = dynamics.lattice_evolution(n, mass, HALF, np.zeros((n, 3)), t, psi)
    energy = (2 - 2 * math.cos(2 * math.pi * k / n)) / (2 * mass)
    assert qcore.max_abs_diff(out.amplitudes, np.exp(-1j * energy * t) * psi.amplitudes) < 1e-10


def test_lattice_uniform_full_turn_flips_sign(rng):
    n, mass, t = 10, 1.0, 1.5
    psi = Ket.normalized(rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n), (n, 2))
    field = np.tile(Z * 2 * math.pi / t, (n, 1))
    spun = dynamics.lattice_evolution(n, mass, HALF, field, t, psi)
    free = dynamics.lattice_evolution(n, mass, HALF, np.zeros((n, 3)), t, psi)
    assert qcore.max_abs_diff(spun.amplitudes, -free.amplitudes) < 1e-10
    assert qcore.max_abs_diff(dynamics.lattice_evolution(n, mass, HALF, field, 0.0, psi).amplitudes, psi.amplitudes) < 1e-12


def test_lattice_rejects_bad_input():
    with pytest.raises(DimensionMismatch):
        dynamics.lattice_evolution(4, 1.0, HALF, np.zeros((4, 3)), 1.0, Ket.basis(0, (4,)))
    with pytest.raises(ValueError):
        dynamics.lattice_evolution(65, 1.0, HALF, np.zeros((65, 3)), 1.0, dynamics.momentum_state(65, 0, [1, 0]))


def test_lattice_hamiltonian_hermitian():
    h = dynamics.lattice_hamiltonian(5, 1.0, ONE, np.arange(15.0).reshape(5, 3))
    assert qcore.max_abs_diff(h, h.conj().T) == 0
    assert qcore.max_abs_diff(h[:3, :3], 1.0 * np.eye(3) + spin_operators(ONE).along((0, 1, 2))) < 1e-15
