"""Named verification suites: each returns metrics, tolerances and a verdict.

The CLI writes these out as result envelopes; the acceptance tests call them
directly. Every suite is deterministic given its parameters and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import dynamics, galilean, qcore, spinrep
from .dynamics import RotationSchedule
from .experiments import (
    beamsplitter_entanglement,
    controlled_rotation_interferometer,
    correlator_chain_check,
    entanglement_sweep,
    gravito_curl_check,
    gravito_efield_check,
    predicted_concurrence,
)
from .spinrep import SpinLabel

SPINS = tuple(SpinLabel(k) for k in range(5))


@dataclass
class SuiteResult:
    metrics: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    rows: list | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, name: str, value: float, tol: float, metric: str | None = None) -> None:
        """Record ``value`` under ``metric`` and require ``value < tol``."""
        self.metrics[metric or name] = value
        self.tolerances[name] = tol
        if not (value < tol):
            self.failures.append(name)

    def require(self, name: str, ok: bool) -> None:
        self.metrics[name] = bool(ok)
        if not ok:
            self.failures.append(name)


def rotation_table(seed: int = 0, n_axes: int = 10, tol: float = 1e-10, spins=SPINS) -> SuiteResult:
    """max |D^S(n, 2 pi) - (-1)^{2S} I| per spin over random axes."""
    rng = np.random.default_rng(seed)
    out = SuiteResult()
    for spin in spins:
        sign = -1.0 if spin.is_fermionic else 1.0
        worst = 0.0
        for _ in range(n_axes):
            d = spinrep.rotation(spin, spinrep.random_axis(rng), 2 * math.pi)
            worst = max(worst, qcore.max_abs_diff(d, sign * np.eye(spin.dim)))
        out.check(f"rotation_2pi_2s{spin.two_s}", worst, tol)
    return out


def spin_rep_suite(two_s: int, seed: int = 0, n_axes: int = 10, tolerance: float = 1e-10) -> SuiteResult:
    spin = SpinLabel(two_s)
    rng = np.random.default_rng(seed)
    out = rotation_table(seed, n_axes, tolerance, spins=(spin,))
    lam = spinrep.two_pi_phase(spin, rng)
    out.metrics["two_pi_phase"] = lam
    out.check("two_pi_phase_error", abs(lam - (-1) ** two_s), tolerance)
    ops = spinrep.spin_operators(spin)
    out.check("commutator_residual", ops.commutator_residual(), 1e-12)
    out.check("casimir_residual", ops.casimir_residual(spin), 1e-12)
    worst_comp = 0.0
    for _ in range(n_axes):
        axis = spinrep.random_axis(rng)
        a, b = rng.uniform(-2 * math.pi, 2 * math.pi, size=2)
        lhs = spinrep.rotation(spin, axis, a).entries @ spinrep.rotation(spin, axis, b).entries
        worst_comp = max(worst_comp, qcore.max_abs_diff(lhs, spinrep.rotation(spin, axis, a + b)))
    out.check("composition_residual", worst_comp, tolerance)
    if two_s >= 1:
        emb = spinrep.majorana_embedding(spin)
        worst_maj = worst_inv = 0.0
        proj = emb.symmetrizer
        for _ in range(n_axes):
            axis = spinrep.random_axis(rng)
            angle = float(rng.uniform(-2 * math.pi, 2 * math.pi))
            worst_maj = max(worst_maj, spinrep.verify_majorana_rotation(spin, axis, angle))
            d = spinrep.qubit_power(spinrep.rotation(SpinLabel(1), axis, angle), emb.n_qubits)
            leak = (np.eye(proj.shape[0]) - proj) @ d @ proj
            worst_inv = max(worst_inv, float(np.linalg.norm(leak, 2)))
        out.check("majorana_residual", worst_maj, tolerance)
        out.check("symmetric_invariance_residual", worst_inv, tolerance)
        out.check("isometry_residual", qcore.max_abs_diff(emb.isometry @ emb.isometry.conj().T, np.eye(spin.dim)), 1e-12)
        out.check("symmetrizer_idempotence", qcore.max_abs_diff(proj @ proj, proj), 1e-12)
        out.require("symmetrizer_rank_ok", int(np.linalg.matrix_rank(proj)) == spin.dim)
    return out


def _random_momentum(rng: np.random.Generator, scale: float) -> np.ndarray:
    return rng.uniform(-scale, scale, size=3)


def ll_suite(
    mass: float = 1.0,
    seed: int = 0,
    n_grid: int = 100,
    n_momenta: int = 20,
    n_boosts: int = 20,
    tolerance: float = 1e-10,
    condition_tolerance: float = 1e-12,
    boost_tolerance: float = 1e-9,
) -> SuiteResult:
    rng = np.random.default_rng(seed)
    rep = galilean.ll_matrices(mass)
    out = SuiteResult()
    conds = rep.condition_residuals()
    out.check("condition_residual", max(conds.values()), condition_tolerance)
    worst = 0.0
    for _ in range(n_grid):
        p = rng.uniform(-10, 10, size=3)
        p *= min(1.0, 10.0 / np.linalg.norm(p))
        e = float(rng.uniform(-10, 10))
        worst = max(worst, galilean.verify_squaring(rep, p, e))
    # the squared operator is exact in exact arithmetic; report the scaled roundoff
    out.check("squaring_residual", worst, tolerance)
    dims_on, dims_off = set(), set()
    for _ in range(n_momenta):
        p = _random_momentum(rng, 3.0)
        e0 = p @ p / (2 * mass)
        dims_on.add(galilean.null_space(rep.wave_operator(e0, p)).shape[1])
        shift = float(rng.choice([-1.0, 1.0]) * rng.uniform(1e-5, 1.0))
        dims_off.add(galilean.null_space(rep.wave_operator(e0 + shift, p)).shape[1])
    out.require("on_shell_nullity_is_2", dims_on == {2})
    out.require("off_shell_nullity_is_0", dims_off == {0})
    worst_boost = 0.0
    for _ in range(n_boosts):
        sol = galilean.plane_wave_solutions(rep, _random_momentum(rng, 3.0))[int(rng.integers(2))]
        boost = galilean.GalileanBoost.from_rotvec(
            rng.normal(size=3), velocity=rng.uniform(-2, 2, size=3), displacement=rng.normal(size=3)
        )
        moved = galilean.apply_boost(boost, sol, rep, tol=np.inf)
        worst_boost = max(worst_boost, moved.residual(rep))
    out.check("boost_covariance_residual", worst_boost, boost_tolerance)
    return out


def schedule_profiles(axis=(0.0, 0.0, 1.0), total_angle: float = 2 * math.pi, steps: int = 10_000) -> dict:
    return {
        "constant": RotationSchedule.constant(np.asarray(axis) * total_angle / 1.0, 1.0),
        "ramp": RotationSchedule.ramp(axis, total_angle, 1.0, steps),
        "two_step": RotationSchedule.two_step(axis, total_angle, 1.0),
    }


def expected_coaxial_phase(spin: SpinLabel, schedule: RotationSchedule) -> float | None:
    """Analytic highest-weight phase for schedules along +z or -z, else None."""
    axis = schedule.common_axis()
    if axis is None or abs(abs(axis[2]) - 1.0) > 1e-12:
        return None
    return qcore.wrap_phase(-schedule.total_angle * spin.s * axis[2])


def exchange_suite(two_s: int, schedule: RotationSchedule, method: str = "kernel", tolerance: float = 1e-9) -> SuiteResult:
    spin = SpinLabel(two_s)
    out = SuiteResult()
    res = dynamics.exchange_phase(spin, schedule, method=method)
    other = dynamics.exchange_phase(spin, schedule, method="dense" if method == "kernel" else "kernel")
    out.metrics["total_angle"] = schedule.total_angle
    out.metrics["fidelity"] = res.fidelity
    out.metrics["phase"] = res.accumulated_phase
    out.metrics["convention"] = dynamics.SIGN_CONVENTION
    out.check("route_agreement", qcore.max_abs_diff(res.final_state.amplitudes, other.final_state.amplitudes), tolerance)
    out.check("norm_error", abs(np.linalg.norm(res.final_state.amplitudes) - 1.0), 1e-10)
    expected = expected_coaxial_phase(spin, schedule)
    out.metrics["expected_phase"] = expected
    if expected is not None:
        out.require("phase_defined", res.accumulated_phase is not None)
        if res.accumulated_phase is not None:
            out.check("phase_error", qcore.phase_distance(res.accumulated_phase, expected), tolerance)
        out.check("fidelity_error", 1.0 - res.fidelity, tolerance)
    return out


def schedule_independence_suite(spins=(SpinLabel(1), SpinLabel(2), SpinLabel(3)), tolerance: float = 1e-9, steps: int = 10_000) -> SuiteResult:
    out = SuiteResult()
    for spin in spins:
        target = math.pi * (spin.two_s % 2)
        phases = {}
        for name, sched in schedule_profiles(steps=steps).items():
            res = dynamics.exchange_phase(spin, sched)
            phases[name] = res.phase
            out.check(f"{name}_2s{spin.two_s}_phase_error", qcore.phase_distance(res.phase, target), tolerance)
            out.check(f"{name}_2s{spin.two_s}_fidelity_error", 1.0 - res.fidelity, tolerance)
        spread = max(qcore.phase_distance(a, b) for a in phases.values() for b in phases.values())
        out.check(f"profile_spread_2s{spin.two_s}", spread, tolerance)
        # every basis state of the multiplet picks up the same (-1)^{2S}
        u = dynamics.precession_unitary(spin, (0, 0, 1.0), 2 * math.pi)
        sign = -1.0 if spin.is_fermionic else 1.0
        out.check(f"multiplet_uniformity_2s{spin.two_s}", qcore.max_abs_diff(u, sign * np.eye(spin.dim)), tolerance)
    return out


def interferometer_suite(two_s: int, alpha: float, model: str, tolerance: float = 1e-9) -> SuiteResult:
    spin = SpinLabel(two_s)
    rep = controlled_rotation_interferometer(spin, alpha, model)
    out = SuiteResult()
    out.metrics["phase"] = rep.phase
    out.metrics["visibility"] = rep.visibility
    out.metrics["rho_10"] = complex(rep.control_state.entries[1, 0])
    out.metrics["convention"] = rep.convention
    expected = qcore.wrap_phase(-2 * math.pi * alpha * spin.s) if model == "dynamical" else 0.0
    out.metrics["expected_phase"] = expected
    out.check("visibility_error", abs(rep.visibility - 1.0), tolerance)
    out.require("phase_defined", rep.phase is not None)
    if rep.phase is not None:
        out.check("phase_error", qcore.phase_distance(rep.phase, expected), tolerance)
    return out


def interferometer_table(tolerance: float = 1e-9) -> SuiteResult:
    out = SuiteResult()
    cases = [
        (1, 1.0, "dynamical", math.pi),
        (2, 1.0, "dynamical", 0.0),
        (1, 1.0, "mode_relabeling", 0.0),
        (2, 1.0, "mode_relabeling", 0.0),
    ]
    for two_s, alpha, model, target in cases:
        rep = controlled_rotation_interferometer(SpinLabel(two_s), alpha, model)
        key = f"{model}_2s{two_s}_a{alpha:g}"
        out.metrics[f"{key}_phase"] = rep.phase
        out.check(f"{key}_phase_error", qcore.phase_distance(rep.phase, target), tolerance)
        out.check(f"{key}_visibility_error", abs(rep.visibility - 1.0), tolerance)
    half = controlled_rotation_interferometer(SpinLabel(1), 0.5, "dynamical")
    out.metrics["dynamical_2s1_a0.5_phase"] = half.phase
    out.check("partial_swap_abs_phase_error", abs(abs(half.phase) - math.pi / 2), tolerance)
    out.check("partial_swap_visibility_error", abs(half.visibility - 1.0), tolerance)
    return out


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:step`` (inclusive) or a comma list."""
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step <= 0 or stop < start:
            raise ValueError(f"bad grid {text!r}")
        n = int(round((stop - start) / step)) + 1
        return np.linspace(start, start + (n - 1) * step, n)
    return np.array(sorted(float(x) for x in text.split(",") if x.strip()))


def entangle_suite(two_s: int, alphas, tolerance: float = 1e-9) -> SuiteResult:
    spin = SpinLabel(two_s)
    pts = entanglement_sweep(spin, alphas)
    out = SuiteResult(rows=pts)
    worst = max(abs(p.concurrence - predicted_concurrence(spin, p.alpha)) for p in pts)
    out.check("concurrence_vs_branch_phase", worst, tolerance)
    if spin.is_fermionic:
        worst_sin = max(abs(p.concurrence - abs(math.sin(math.pi * p.alpha * spin.s))) for p in pts)
        out.check("concurrence_vs_sine", worst_sin, tolerance)
    out.metrics["concurrence_at_max_alpha"] = pts[-1].concurrence
    out.metrics["entropy_at_max_alpha"] = pts[-1].entropy_bits
    out.require("concurrence_in_unit_interval", all(0.0 <= p.concurrence <= 1.0 for p in pts))
    if spin.two_s == 1:
        conc = [p.concurrence for p in pts]
        out.require("concurrence_monotone", all(b >= a - 1e-12 for a, b in zip(conc, conc[1:])))
    return out


def entanglement_witness_suite(tolerance: float = 1e-9) -> SuiteResult:
    out = SuiteResult()
    full = beamsplitter_entanglement(SpinLabel(1), 1.0)
    target = np.array([1, 1, 1, -1]) / 2.0
    fid = abs(np.vdot(target, full.amplitudes))
    glob = np.vdot(target, full.amplitudes) / max(fid, 1e-300)
    out.check("swapped_amplitudes_residual", float(np.max(np.abs(full.amplitudes - glob * target))), 1e-12)
    grid = np.linspace(0.0, 1.0, 11)
    sweep = entangle_suite(1, grid, tolerance)
    out.metrics.update({f"sweep_{k}": v for k, v in sweep.metrics.items()})
    out.tolerances.update({f"sweep_{k}": v for k, v in sweep.tolerances.items()})
    out.failures.extend(f"sweep_{k}" for k in sweep.failures)
    out.check("entropy_at_full_swap_error", abs(full.entropy_bits - 1.0), tolerance)
    out.check("concurrence_at_full_swap_error", abs(full.concurrence - 1.0), tolerance)
    boson = beamsplitter_entanglement(SpinLabel(2), 1.0)
    out.check("boson_full_swap_concurrence", boson.concurrence, tolerance)
    return out


def correlator_suite(two_s: int, sign: int, tol: float = 1e-10) -> SuiteResult:
    spin = SpinLabel(two_s)
    rep = correlator_chain_check(spin, sign, tol=tol)
    out = SuiteResult()
    out.metrics.update(rep.metrics())
    out.metrics["chain_holds"] = rep.chain_holds
    out.metrics["vacuum_degenerate"] = rep.vacuum_degenerate
    out.metrics["consistent"] = rep.consistent
    out.tolerances["closure"] = tol
    expected = sign == (-1) ** two_s
    out.require("chain_holds_ok", rep.chain_holds)
    out.require("verdict_matches_spin_statistics", rep.consistent == expected)
    return out


def correlator_table(tol: float = 1e-10) -> SuiteResult:
    out = SuiteResult()
    for spin in SPINS:
        for sign in (1, -1):
            rep = correlator_chain_check(spin, sign, tol=tol)
            key = f"2s{spin.two_s}_sign{sign:+d}"
            out.metrics[f"{key}_consistent"] = rep.consistent
            out.require(f"{key}_verdict_ok", rep.consistent == (sign == (-1) ** spin.two_s) and rep.chain_holds)
    return out


def gravito_suite(omega=(0.0, 0.0, 1.0), h: float = 1e-3, dt: float = 1e-3, seed: int = 0, tolerance: float = 1e-6) -> SuiteResult:
    out = SuiteResult()
    rep = gravito_curl_check(omega, h, np.random.default_rng(seed))
    out.check("curl_relative_deviation", rep.max_deviation, tolerance)
    t = dt * np.arange(2001)
    a = np.outer(np.sin(t), [0.0, 0.0, 1.0])
    ef = gravito_efield_check(a, dt)
    out.check("efield_sin_error_t0", float(np.max(np.abs(ef.e_field[0] - [0.0, 0.0, -1.0]))), tolerance)
    exact = -np.outer(np.cos(t), [0.0, 0.0, 1.0])
    out.check("efield_sin_max_error", float(np.max(np.abs(ef.e_field - exact))), tolerance)
    lin = gravito_efield_check(np.outer(t, [1.0, 0.0, 0.0]), dt)
    out.check("efield_affine_error", float(np.max(np.abs(lin.e_field - [-1.0, 0.0, 0.0]))), 1e-9)
    return out


def gravito_table(h: float = 1e-3, dt: float = 1e-3, seed: int = 0, tolerance: float = 1e-6) -> SuiteResult:
    out = SuiteResult()
    for omega in ((0.0, 0.0, 1.0), (1.0, 2.0, 3.0), (-0.5, 0.25, 0.0)):
        rep = gravito_curl_check(omega, h, np.random.default_rng(seed))
        out.check("curl_" + "_".join(f"{w:g}" for w in omega), rep.max_deviation, tolerance)
    sub = gravito_suite(h=h, dt=dt, seed=seed, tolerance=tolerance)
    out.metrics.update(sub.metrics)
    out.tolerances.update(sub.tolerances)
    out.failures.extend(sub.failures)
    return out
