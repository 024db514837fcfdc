import math
from fractions import Fraction

import numpy as np
import pytest

from spinstat import qcore, spinrep
from spinstat.errors import BadAxis
from spinstat.qcore import PAULIS
from spinstat.spinrep import SpinLabel, rotation, spin_operators

ALL_SPINS = [SpinLabel(k) for k in range(7)]


def test_spin_label_parsing():
    assert SpinLabel.of(0.5) == SpinLabel(1)
    assert SpinLabel.of("3/2") == SpinLabel(3)
    assert SpinLabel.of(Fraction(2)) == SpinLabel(4)
    assert SpinLabel(3).dim == 4 and SpinLabel(3).is_fermionic
    with pytest.raises(ValueError):
        SpinLabel.of(0.25)
    with pytest.raises(ValueError):
        SpinLabel(-1)


def test_spin_half_is_half_pauli():
    ops = spin_operators(SpinLabel(1))
    for op, pauli in zip(ops, PAULIS):
        assert qcore.max_abs_diff(op, pauli / 2) == 0


def test_spin_one_sz_ordering():
    assert qcore.max_abs_diff(spin_operators(SpinLabel(2)).sz, np.diag([1, 0, -1])) == 0


@pytest.mark.parametrize("spin", ALL_SPINS, ids=str)
def test_algebra_and_casimir(spin):
    ops = spin_operators(spin)
    assert ops.commutator_residual() < 1e-12
    assert ops.casimir_residual(spin) < 1e-12


def test_rotation_examples():
    assert qcore.max_abs_diff(rotation(SpinLabel(1), (0, 0, 1), 2 * math.pi), -np.eye(2)) < 1e-15
    axis = np.array([1.0, -2.0, 0.5]) / np.linalg.norm([1.0, -2.0, 0.5])
    assert qcore.max_abs_diff(rotation(SpinLabel(2), axis, 2 * math.pi), np.eye(3)) < 1e-14
    theta = 0.83
    want = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    assert qcore.max_abs_diff(rotation(SpinLabel(1), (0, 0, 1), theta), want) < 1e-15


def test_rotation_rejects_non_unit_axis():
    with pytest.raises(BadAxis):
        rotation(SpinLabel(1), (0, 0, 2), 1.0)


def test_spin_half_rotation_matches_closed_form(rng):
    for _ in range(10):
        n = spinrep.random_axis(rng)
        a = rng.uniform(-7, 7)
        closed = math.cos(a / 2) * np.eye(2) - 1j * math.sin(a / 2) * sum(ni * p for ni, p in zip(n, PAULIS))
        assert qcore.max_abs_diff(rotation(SpinLabel(1), n, a), closed) < 1e-14


@pytest.mark.parametrize("spin", ALL_SPINS[:5], ids=str)
def test_rotation_group_law_and_2pi(spin, rng):
    sign = (-1) ** spin.two_s
    for _ in range(10):
        n = spinrep.random_axis(rng)
        a, b = rng.uniform(-2 * math.pi, 2 * math.pi, size=2)
        lhs = rotation(spin, n, a).entries @ rotation(spin, n, b).entries
        assert qcore.max_abs_diff(lhs, rotation(spin, n, a + b)) < 1e-10
        assert qcore.max_abs_diff(rotation(spin, n, 2 * math.pi), sign * np.eye(spin.dim)) < 1e-10


def test_two_pi_phase_examples():
    assert spinrep.two_pi_phase(SpinLabel(0)) == pytest.approx(1.0)
    assert spinrep.two_pi_phase(SpinLabel(1)) == pytest.approx(-1.0)
    # diag(exp(-i 2 pi m)) for m in {3/2, 1/2, -1/2, -3/2} is -I
    oracle = np.exp(-2j * math.pi * np.array([1.5, 0.5, -0.5, -1.5]))
    assert np.allclose(oracle, -1.0)
    assert spinrep.two_pi_phase(SpinLabel(3)) == pytest.approx(-1.0, abs=1e-12)


def test_dicke_normalization_uses_binomials():
    d = spinrep.dicke_states(4)
    assert d.shape == (5, 16)
    assert np.allclose(d @ d.T, np.eye(5))
    assert d[2, 0b0011] == pytest.approx(1 / math.sqrt(6))


def test_majorana_spin_one_basis():
    emb = spinrep.majorana_embedding(SpinLabel(2))
    lift = emb.isometry.conj().T
    # factor index 0 is |1> (m=+1/2): |11> -> flat 0, |00> -> flat 3
    up_up, down_down = np.eye(4)[0], np.eye(4)[3]
    sym = np.array([0, 1, 1, 0]) / math.sqrt(2)
    assert np.allclose(lift[:, 0], up_up)
    assert np.allclose(lift[:, 1], sym)
    assert np.allclose(lift[:, 2], down_down)


def test_majorana_spin_half_is_identity():
    assert qcore.max_abs_diff(spinrep.majorana_embedding(SpinLabel(1)).isometry, np.eye(2)) == 0


def test_collective_sz_compresses_to_spin_one():
    emb = spinrep.majorana_embedding(SpinLabel(2))
    sz_total = (np.kron(PAULIS[2], np.eye(2)) + np.kron(np.eye(2), PAULIS[2])) / 2
    assert qcore.max_abs_diff(emb.restrict(sz_total), np.diag([1, 0, -1])) < 1e-15


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_collective_spin_matches_spin_operators(two_s):
    emb = spinrep.majorana_embedding(SpinLabel(two_s))
    for coll, op in zip(spinrep.collective_spin(two_s), spin_operators(SpinLabel(two_s))):
        assert qcore.max_abs_diff(emb.restrict(coll), op) < 1e-12


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_embedding_invariants(two_s):
    emb = spinrep.majorana_embedding(SpinLabel(two_s))
    v, p = emb.isometry, emb.symmetrizer
    assert qcore.max_abs_diff(v @ v.conj().T, np.eye(two_s + 1)) < 1e-12
    assert qcore.max_abs_diff(p @ p, p) < 1e-12
    assert np.linalg.matrix_rank(p) == two_s + 1
    # the independently built symmetrizer is the projector onto the Dicke span
    assert qcore.max_abs_diff(p, v.conj().T @ v) < 1e-12


def test_verify_majorana_examples(rng):
    assert spinrep.verify_majorana_rotation(SpinLabel(2), (0, 0, 1), math.pi) < 1e-10
    n = spinrep.random_axis(rng)
    assert spinrep.verify_majorana_rotation(SpinLabel(1), n, 1.3) < 1e-15
    assert spinrep.verify_majorana_rotation(SpinLabel(3), n, rng.uniform(-6, 6)) < 1e-10


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_symmetric_subspace_is_invariant(two_s, rng):
    p = spinrep.majorana_embedding(SpinLabel(two_s)).symmetrizer
    for _ in range(5):
        d = spinrep.qubit_power(rotation(SpinLabel(1), spinrep.random_axis(rng), rng.uniform(-6, 6)), two_s)
        assert np.linalg.norm((np.eye(2**two_s) - p) @ d @ p, 2) < 1e-10
