import math

import numpy as np
import pytest

import kksim.kk_receiver as kk
from kksim.kk_receiver import (
    hilbert_phase,
    retrieve_field,
    simulate_symbol,
    window_half_width,
)
from kksim.quantum_noise import NoiseLaw, PhotocurrentTrace, expected_current
from kksim.signal_model import (
    MinimumPhaseReport,
    ModulationSymbol,
    SamplingGrid,
    SignalParams,
    map_qpsk,
    synthesize_mp_envelope,
)


def test_window_half_width_quarter_alignment():
    # reduced grid: raw half-width 1999 trims to 1950 = 19.5 IF periods
    assert window_half_width(4000, 2000, 200) == 1950
    assert window_half_width(200000, 100000, 2000) == 99500
    # trimming never exceeds the raw width and stays positive
    for total, l, p in ((4000, 2000, 200), (4000, 2025, 200), (200000, 99500, 2000)):
        d = window_half_width(total, l, p)
        assert 1 <= d <= min(l, total - 1 - l)
        assert d % (p // 2) == p // 4


def test_hilbert_phase_constant_trace():
    trace = PhotocurrentTrace(values=np.full(4000, 5.0))
    assert hilbert_phase(trace, 2000, 200).phi == 0.0


def test_hilbert_phase_scale_invariance():
    rng = np.random.default_rng(21)
    values = rng.uniform(0.5, 2.0, 4000)
    base = hilbert_phase(PhotocurrentTrace(values=values), 2000, 200).phi
    for c in (1e-6, 3.7, 1e6):
        scaled = hilbert_phase(PhotocurrentTrace(values=c * values), 2000, 200).phi
        assert abs(scaled - base) <= 1e-12


def test_hilbert_phase_matches_argument_oracle():
    # noiseless phase must land on arg h at the decision sample
    params = SignalParams(n_s=100.0, cspr_db=30.0)
    grid = SamplingGrid.paper()
    frame = synthesize_mp_envelope(params, grid, ModulationSymbol(0))
    trace = expected_current(frame)
    phi = hilbert_phase(trace, grid.decision_index, grid.samples_per_if_period).phi
    oracle = float(np.angle(frame.samples[grid.decision_index]))
    assert phi == pytest.approx(oracle, abs=1e-3)


def test_hilbert_phase_rejects_bad_input():
    trace = PhotocurrentTrace(values=np.full(400, 1.0))
    for l in (0, 399, 1000):
        with pytest.raises(ValueError):
            hilbert_phase(trace, l)
    bad = PhotocurrentTrace(values=np.concatenate([np.full(399, 1.0), [0.0]]))
    with pytest.raises(ValueError):
        hilbert_phase(bad, 200)


def test_retrieve_field_exact_carrier_cancellation():
    params = SignalParams(n_s=100.0, cspr_db=10.0)
    grid = SamplingGrid.reduced()
    trace = PhotocurrentTrace(values=np.full(grid.total_samples, params.carrier_amplitude ** 2))
    phase = kk.PhaseEstimate(phi=0.0, decision_index=grid.decision_index)
    out = retrieve_field(trace, phase, params, grid)
    assert abs(out.alpha_prime) <= 1e-12
    assert 0.0 <= out.decision_phase < 2 * math.pi


def test_noiseless_roundtrip_reduced_grid():
    grid = SamplingGrid.reduced()
    for cspr_db in (5.0, 10.0, 15.0, 20.0, 30.0):
        params = SignalParams(n_s=100.0, cspr_db=cspr_db)
        for index in range(4):
            out = simulate_symbol(params, grid, ModulationSymbol(index), NoiseLaw(r=0.0))
            target = map_qpsk(index, params.n_s)
            rel = abs(out.alpha_prime - target) / abs(target)
            assert rel <= 1e-2
            assert out.clamp_count == 0


def test_noiseless_roundtrip_paper_grid():
    grid = SamplingGrid.paper()
    for cspr_db in (5.0, 10.0, 15.0, 20.0, 30.0):
        params = SignalParams(n_s=100.0, cspr_db=cspr_db)
        for index in range(4):
            out = simulate_symbol(params, grid, ModulationSymbol(index), NoiseLaw(r=0.0))
            target = map_qpsk(index, params.n_s)
            assert abs(out.alpha_prime - target) / abs(target) <= 1e-3


def test_weak_signal_retrieves_to_zero():
    params = SignalParams(n_s=1e-12, cspr_db=10.0)
    out = simulate_symbol(params, SamplingGrid.reduced(), ModulationSymbol(0), NoiseLaw(r=0.0))
    assert abs(out.alpha_prime) <= 1e-5


def test_simulate_symbol_deterministic():
    params = SignalParams(n_s=100.0, cspr_db=10.0)
    grid = SamplingGrid.reduced()
    a = simulate_symbol(params, grid, ModulationSymbol(1), NoiseLaw(), seed=3, stream=(0, 1, 2))
    b = simulate_symbol(params, grid, ModulationSymbol(1), NoiseLaw(), seed=3, stream=(0, 1, 2))
    c = simulate_symbol(params, grid, ModulationSymbol(1), NoiseLaw(), seed=3, stream=(0, 1, 3))
    assert a.alpha_prime == b.alpha_prime
    assert a.alpha_prime != c.alpha_prime


def test_simulate_symbol_guards_minimum_phase(monkeypatch):
    # retrieval must refuse frames that fail the winding check
    report = MinimumPhaseReport(ok=False, min_abs=0.0, winding_turns=20)
    monkeypatch.setattr(kk, "check_minimum_phase", lambda frame: report)
    params = SignalParams(n_s=100.0, cspr_db=10.0)
    with pytest.raises(ValueError):
        simulate_symbol(params, SamplingGrid.reduced(), ModulationSymbol(0), NoiseLaw(r=0.0))


def test_retrieve_field_propagates_clamp_count():
    params = SignalParams(n_s=100.0, cspr_db=10.0)
    grid = SamplingGrid.reduced()
    trace = PhotocurrentTrace(values=np.full(grid.total_samples, 900.0))
    phase = kk.PhaseEstimate(phi=0.1, decision_index=grid.decision_index)
    out = retrieve_field(trace, phase, params, grid, clamp_count=3)
    assert out.clamp_count == 3
