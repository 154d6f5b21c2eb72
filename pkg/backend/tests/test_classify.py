import numpy as np
import pytest

from app.services.classify import (
    DetectorConfig,
    classify_trajectory,
    coexistence_count,
    oscillation_metrics,
    outcome_to_record,
    regime_label,
    regime_series,
)
from app.services.classify.outcome import Outcome
from app.services.common import (
    ClassificationError,
    HOIKind,
    OutcomeKind,
    RegimeLabel,
    Termination,
    Topology,
    UnsupportedSpecError,
)
from app.services.dynamics import NUMBA_AVAILABLE, IntegratorConfig, SystemState, Trajectory, simulate
from app.services.netmodel import build_canonical

needs_fast_kernel = pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba not installed")


def synthetic(times, n_a, termination=Termination.HORIZON_REACHED, m=None):
    """n_A 만 주어진 곡선을 따르고 B, C 는 1 로 고정된 궤적"""
    times = np.asarray(times, dtype=float)
    n = np.column_stack([n_a, np.ones_like(times), np.ones_like(times)])
    m = np.ones((times.size, 1)) if m is None else np.asarray(m, dtype=float).reshape(-1, 1)
    final = SystemState(n[-1].copy(), m[-1].copy(), float(times[-1]))
    return Trajectory(times, n, m, termination, final)


def test_coexistence_count():
    assert coexistence_count([1.0, 1.0, 1.0]) == 3
    assert coexistence_count([0.0, 1.0, 1.0]) == 2
    assert coexistence_count([0.0, 0.0, 0.0]) == 0


def test_sine_metrics():
    t = np.arange(0.0, 10.0, 0.03)
    traj = synthetic(t, 1.0 + 0.1 * np.sin(2 * np.pi * t))
    metrics = oscillation_metrics(traj, window_fraction=1.0)
    assert metrics.amplitude[0] == pytest.approx(0.2, abs=0.01)
    assert metrics.amplitude[1] == 0.0
    assert metrics.period == pytest.approx(1.0, abs=0.03)
    assert metrics.frequency == pytest.approx(1.0, abs=0.03)


def test_sustained_sine_is_limit_cycle():
    t = np.arange(0.0, 30.0, 0.03)
    outcome = classify_trajectory(synthetic(t, 1.0 + 0.1 * np.sin(2 * np.pi * t)))
    assert outcome.kind == OutcomeKind.LIMIT_CYCLE
    assert outcome.survivors == 3
    assert outcome.period == pytest.approx(1.0, abs=0.03)


def test_flat_series_is_fixed_point():
    t = np.arange(0.0, 30.0, 0.03)
    outcome = classify_trajectory(synthetic(t, np.full(t.size, 0.7)))
    assert outcome.kind == OutcomeKind.FIXED_POINT
    assert outcome.amplitude == 0.0


def test_decaying_oscillation_is_fixed_point():
    # 표본 간격 0.013 은 주기 0.5 를 나누지 않음
    t = np.arange(0.0, 10.0, 0.013)
    decaying = 1.0 + 0.01 * np.exp(-(t - 8.0)) * np.sin(4 * np.pi * t)
    steady = 1.0 + 0.01 * np.sin(4 * np.pi * t)
    assert classify_trajectory(synthetic(t, decaying)).kind == OutcomeKind.FIXED_POINT
    assert classify_trajectory(synthetic(t, steady)).kind == OutcomeKind.LIMIT_CYCLE


def test_termination_reasons_take_precedence():
    t = np.arange(0.0, 30.0, 0.03)
    wave = 1.0 + 0.1 * np.sin(2 * np.pi * t)
    assert classify_trajectory(synthetic(t, wave, Termination.DIVERGED)).kind == OutcomeKind.UNBOUNDED
    assert classify_trajectory(synthetic(t, wave, Termination.CONVERGED)).kind == OutcomeKind.FIXED_POINT

    extinct = synthetic(t, wave, Termination.ALL_EXTINCT)
    extinct = Trajectory(extinct.times, extinct.n, extinct.m, extinct.termination,
                         SystemState(np.zeros(3), np.ones(1), 30.0))
    outcome = classify_trajectory(extinct)
    assert outcome.kind == OutcomeKind.ALL_EXTINCT
    assert outcome.survivors == 0


def test_short_window_is_rejected():
    t = np.arange(5) * 0.1
    with pytest.raises(ClassificationError):
        classify_trajectory(synthetic(t, np.ones(5)))


def test_detector_config_bounds():
    assert DetectorConfig().window_fraction == 0.2
    with pytest.raises(ValueError):
        DetectorConfig(window_fraction=1.5)
    with pytest.raises(ValueError):
        DetectorConfig(amplitude_tol=0.0)


def test_outcome_record():
    t = np.arange(0.0, 30.0, 0.03)
    record = outcome_to_record(classify_trajectory(synthetic(t, 1.0 + 0.1 * np.sin(2 * np.pi * t))))
    assert set(record) == {"kind", "survivors", "amplitude", "period", "final_n", "final_m"}
    assert record["kind"] == "limitcycle"
    assert len(record["final_n"]) == 3

    failed = outcome_to_record(Outcome.failed("EvaluationError: boom"))
    assert failed["kind"] == "error"
    assert failed["error"] == "EvaluationError: boom"


class TestRegimes:
    def test_labels(self):
        assert regime_label(1.0) == RegimeLabel.INTRANSITIVE
        assert regime_label(-0.5) == RegimeLabel.TRANSITIVE
        assert regime_label(0.0) == RegimeLabel.NEUTRAL

    def test_series_follows_modifier_sign(self):
        t = np.arange(3.0)
        series = regime_series(synthetic(t, np.ones(3), m=[1.0, -0.5, 0.0]))
        assert [label for _, label in series] == [
            RegimeLabel.INTRANSITIVE, RegimeLabel.TRANSITIVE, RegimeLabel.NEUTRAL,
        ]

    def test_unmodified_run_stays_intransitive(self, intransitive_sym):
        config = IntegratorConfig(omega=1.0, horizon=500, horizon_unit="steps", sample_stride=10)
        traj = simulate(intransitive_sym, config, SystemState.of([1.0, 0.5, 2.0], 1.0))
        assert all(label == RegimeLabel.INTRANSITIVE for _, label in regime_series(traj))

    def test_needs_single_modifier(self):
        t = np.arange(4.0)
        n = np.ones((4, 3))
        traj = Trajectory(t, n, np.ones((4, 2)), Termination.HORIZON_REACHED,
                          SystemState(n[-1], np.ones(2), 3.0))
        with pytest.raises(UnsupportedSpecError):
            regime_series(traj)


# ─────────────────────────────────────────────
# 전체 길이 적분 기준점 (α = 2 비전이 대칭, β = -3)

def _classify(spec, omega):
    return classify_trajectory(simulate(spec, IntegratorConfig(omega=omega)))


@needs_fast_kernel
@pytest.mark.parametrize(
    "omega, kind",
    [(0.1, OutcomeKind.FIXED_POINT), (1.0, OutcomeKind.LIMIT_CYCLE), (10.0, OutcomeKind.FIXED_POINT)],
)
def test_speed_controls_oscillation(intransitive_sym, omega, kind):
    outcome = _classify(intransitive_sym.with_beta(-3.0), omega)
    assert outcome.kind == kind
    assert outcome.survivors == 3


@needs_fast_kernel
def test_stronger_modification_gives_larger_slower_cycle(intransitive_sym):
    moderate = _classify(intransitive_sym.with_beta(-3.0), 1.0)
    strong = _classify(intransitive_sym.with_beta(-7.0), 1.0)
    assert strong.kind == OutcomeKind.LIMIT_CYCLE
    assert strong.amplitude > moderate.amplitude
    assert strong.metrics.frequency < moderate.metrics.frequency


@needs_fast_kernel
def test_very_strong_modification_leaves_one_species(intransitive_sym):
    assert _classify(intransitive_sym.with_beta(-12.0), 1.0).survivors == 1


@needs_fast_kernel
@pytest.mark.parametrize(
    "kind, beta",
    [
        (HOIKind.ASYM_AFFECTED_FIRST, 3.0),
        (HOIKind.ASYM_AFFECTED_FIRST, 2.5),
        (HOIKind.ASYM_AFFECTED_SECOND, -3.0),
    ],
)
def test_out_of_domain_growth_is_unbounded(kind, beta):
    spec = build_canonical(Topology.INTRANSITIVE, kind, 1.0, beta)
    assert _classify(spec, 1.0).kind == OutcomeKind.UNBOUNDED


@pytest.mark.slow
@needs_fast_kernel
@pytest.mark.parametrize("omega, beta", [(0.1, -3.0), (1.0, -3.0), (10.0, -3.0), (1.0, -7.0), (1.0, -12.0)])
def test_step_halving_keeps_classification(intransitive_sym, omega, beta):
    spec = intransitive_sym.with_beta(beta)
    coarse = classify_trajectory(simulate(spec, IntegratorConfig(omega=omega)))
    fine = classify_trajectory(simulate(spec, IntegratorConfig(omega=omega, dt=1.5e-3)))
    assert coarse.kind == fine.kind
    assert coarse.survivors == fine.survivors
    # 진동 셀은 끝 위상이 dt 에 의존
    if coarse.kind != OutcomeKind.LIMIT_CYCLE:
        np.testing.assert_allclose(coarse.final_n, fine.final_n, atol=1e-3)
