import math

import numpy as np
import pytest

from spinstat import dynamics, qcore
from spinstat.errors import InconsistentModel, TooFewSamples
from spinstat.experiments import correlator, entanglement, gravito, interferometer
from spinstat.experiments.correlator import ToyFockModel, correlator_chain_check
from spinstat.spinrep import SpinLabel

HALF, ONE = SpinLabel(1), SpinLabel(2)
SPINS = [SpinLabel(k) for k in range(5)]


@pytest.mark.parametrize(
    "spin,alpha,model,phase",
    [
        (HALF, 1.0, "dynamical", math.pi),
        (ONE, 1.0, "dynamical", 0.0),
        (HALF, 1.0, "mode_relabeling", 0.0),
        (ONE, 1.0, "mode_relabeling", 0.0),
        (HALF, 0.0, "dynamical", 0.0),
    ],
)
def test_interferometer_cases(spin, alpha, model, phase):
    rep = interferometer.controlled_rotation_interferometer(spin, alpha, model)
    assert qcore.phase_distance(rep.phase, phase) < 1e-9
    assert rep.visibility == pytest.approx(1.0, abs=1e-9)


def test_half_swap_matches_partial_swap_phase():
    rep = interferometer.controlled_rotation_interferometer(HALF, 0.5)
    want = float(np.angle(dynamics.partial_swap_phase(HALF, 0.5)))
    assert abs(abs(rep.phase) - math.pi / 2) < 1e-9
    assert qcore.phase_distance(rep.phase, want) < 1e-12


@pytest.mark.parametrize("spin", SPINS, ids=str)
def test_visibility_is_one_along_alpha(spin):
    for alpha in np.linspace(0, 1, 7):
        dyn = interferometer.controlled_rotation_interferometer(spin, alpha)
        assert dyn.visibility == pytest.approx(1.0, abs=1e-12)
        assert abs(np.trace(dyn.control_state.entries) - 1) < 1e-12
    gap = interferometer.controlled_rotation_interferometer(spin, 1.0).phase
    assert qcore.phase_distance(gap, math.pi * (spin.two_s % 2)) < 1e-9


def test_interferometer_rejects_bad_input():
    with pytest.raises(ValueError):
        interferometer.controlled_rotation_interferometer(HALF, 1.5)
    with pytest.raises(ValueError):
        interferometer.controlled_rotation_interferometer(HALF, 0.5, "teleport")


def test_swapped_amplitudes_pattern():
    pt = entanglement.beamsplitter_entanglement(HALF, 1.0)
    want = np.array([1, 1, 1, -1]) / 2
    fid, _ = qcore.Ket(want, (2, 2)).overlap(qcore.Ket(pt.amplitudes, (2, 2)))
    assert fid == pytest.approx(1.0, abs=1e-12)
    assert qcore.max_abs_diff(pt.amplitudes, want) < 1e-12
    assert pt.concurrence == pytest.approx(1.0, abs=1e-12)
    assert pt.entropy_bits == pytest.approx(1.0, abs=1e-9)


def test_unswapped_is_product():
    pt = entanglement.beamsplitter_entanglement(HALF, 0.0)
    assert qcore.max_abs_diff(pt.amplitudes, np.full(4, 0.5)) < 1e-15
    assert pt.concurrence == pytest.approx(0.0, abs=1e-15)


def test_half_swap_concurrence():
    pt = entanglement.beamsplitter_entanglement(HALF, 0.5)
    assert pt.concurrence == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
    sv = qcore.schmidt_coefficients(qcore.Ket(pt.amplitudes, (2, 2)), [0])
    assert 2 * sv[0] * sv[1] == pytest.approx(pt.concurrence, abs=1e-12)


def test_sweep_matches_sine_and_is_monotone():
    pts = entanglement.entanglement_sweep(HALF, np.linspace(1, 0, 11))
    alphas = [p.alpha for p in pts]
    assert alphas == sorted(alphas)
    conc = np.array([p.concurrence for p in pts])
    assert np.max(np.abs(conc - np.abs(np.sin(np.pi * np.array(alphas) / 2)))) < 1e-9
    assert np.all(np.diff(conc) >= -1e-15)
    assert (conc[0], conc[-1]) == pytest.approx((0.0, 1.0), abs=1e-12)


@pytest.mark.parametrize("spin", SPINS, ids=str)
def test_sweep_matches_branch_phase_formula(spin):
    for pt in entanglement.entanglement_sweep(spin, np.linspace(0, 1, 11)):
        assert abs(pt.concurrence - entanglement.predicted_concurrence(spin, pt.alpha)) < 1e-12
        assert 0 <= pt.concurrence <= 1 + 1e-12


def test_boson_full_swap_leaves_product():
    pt = entanglement.beamsplitter_entanglement(ONE, 1.0)
    assert pt.branch_phase == pytest.approx(1.0)
    assert pt.concurrence == pytest.approx(0.0, abs=1e-12)


def test_as_row_columns():
    assert list(entanglement.beamsplitter_entanglement(HALF, 0.3).as_row()) == ["alpha", "concurrence", "entropy_bits"]


@pytest.mark.parametrize("spin", SPINS, ids=str)
@pytest.mark.parametrize("sign", [1, -1])
def test_correlator_table_is_diagonal(spin, sign):
    rep = correlator_chain_check(spin, sign)
    natural = (-1) ** spin.two_s
    assert rep.chain_holds
    assert rep.vacuum_residual < 1e-12
    assert rep.consistent == (sign == natural)
    assert rep.rotation_phase == pytest.approx(natural)
    assert rep.reorder_sign == pytest.approx(sign)
    if rep.consistent:
        assert rep.closure_residual < 1e-12
    else:
        with pytest.raises(InconsistentModel):
            correlator_chain_check(spin, sign, strict=True)


@pytest.mark.parametrize("sign", [1, -1])
def test_fock_model_basics(sign):
    model = ToyFockModel(sign, HALF)
    ax, ay = model.modes
    assert qcore.max_abs_diff(ax @ ay, sign * ay @ ax) == 0
    for p in (0, 1):
        f = model.field(p)
        assert qcore.max_abs_diff(f, f.conj().T) == 0
    n = model.number_operator()
    assert np.flatnonzero(np.isclose(np.diag(n), 0)).tolist() == [0]
    u = model.swap_unitary()
    assert qcore.max_abs_diff(u.conj().T @ u, np.eye(4)) < 1e-15
    with pytest.raises(ValueError):
        ToyFockModel(0, HALF)


@pytest.mark.parametrize("sign", [1, -1])
def test_vacuum_matches_contraction(sign):
    model = ToyFockModel(sign, ONE)
    for x in (0, 1):
        for y in (0, 1):
            assert abs(model.vacuum_correlator(x, y) - correlator.contraction(x, y)) < 1e-12


def test_plane_wave_fermions_give_the_point_modes():
    (b0, b1), (px, py) = correlator.plane_wave_fermion_modes()
    eye = np.eye(4)
    for a in (px, py):
        assert qcore.max_abs_diff(a @ a.conj().T + a.conj().T @ a, eye) < 1e-15
    assert qcore.max_abs_diff(px @ py.conj().T + py.conj().T @ px, np.zeros((4, 4))) < 1e-15
    assert qcore.max_abs_diff(px @ py + py @ px, np.zeros((4, 4))) < 1e-15
    # the orbital half-turn b_k -> exp(i k pi) b_k swaps the point modes
    turned = [sum(np.exp(-1j * k * th) / math.sqrt(2) * np.exp(1j * k * math.pi) * b for k, b in enumerate((b0, b1))) for th in (0, math.pi)]
    assert qcore.max_abs_diff(turned[0], py) < 1e-15 and qcore.max_abs_diff(turned[1], px) < 1e-15


@pytest.mark.parametrize("omega", [(0, 0, 1), (1, 2, 3), (-0.4, 0.9, 0.2)])
def test_curl_is_twice_omega(omega, rng):
    rep = gravito.gravito_curl_check(omega, 1e-3, rng)
    assert rep.max_deviation < 1e-6 and rep.passed
    assert np.allclose(rep.curls, 2 * np.asarray(omega), atol=1e-6)


def test_curl_of_zero_field_is_exactly_zero():
    rep = gravito.gravito_curl_check((0, 0, 0))
    assert rep.max_deviation == 0.0 and not np.any(rep.curls)


def test_curl_rejects_bad_step():
    for h in (0.0, 0.5):
        with pytest.raises(ValueError):
            gravito.gravito_curl_check((0, 0, 1), h)


def test_efield_examples():
    t = np.arange(50) * 0.1
    lin = gravito.gravito_efield_check(np.outer(t, [1, 0, 0]), 0.1)
    assert np.allclose(lin.e_field, [-1, 0, 0], atol=1e-12)
    const = gravito.gravito_efield_check(np.tile([1.0, 2.0, 3.0], (5, 1)), 0.2)
    assert not np.any(const.e_field)
    dt = 1e-3
    ts = np.arange(-5, 6) * dt
    sine = gravito.gravito_efield_check(np.outer(np.sin(ts), [0, 0, 1]), dt, t0=ts[0])
    assert sine.times[5] == pytest.approx(0.0, abs=1e-15)
    assert np.max(np.abs(sine.e_field[5] - [0, 0, -1])) < 1e-6
    assert np.max(np.abs(sine.e_field[:, 2] + np.cos(ts))) < 1e-6
    with pytest.raises(TooFewSamples):
        gravito.gravito_efield_check(np.zeros((2, 3)), 0.1)
