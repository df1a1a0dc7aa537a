import math

import numpy as np
import pytest

import mermin


def test_mermin_matrix_shape_and_ghz_extremum():
    m3 = mermin.mermin_matrix()
    assert m3.shape == (8, 8)
    assert np.allclose(m3, m3.conj().T)
    g = mermin.ghz()
    assert abs(np.vdot(g, m3 @ g).real - 4.0) < 1e-12
    assert abs(mermin.bell_value(g) - 4.0) < 1e-12


def test_fixture_values():
    assert abs(mermin.bell_value(mermin.sharp_biseparable()) - 2.0) < 1e-12
    assert abs(mermin.bell_value(mermin.basis_state(5))) < 1e-12
    for v in (0.0, 0.5, 0.7075, 1.0):
        assert abs(mermin.bell_value(mermin.noisy_ghz(v)) - 4.0 * v) < 1e-12


def test_sigma_with_axis_settings_is_mermin():
    sigma = mermin.sigma_matrix(mermin.MeasurementSettings.mermin_axes())
    assert np.max(np.abs(sigma - mermin.mermin_matrix())) < 1e-14


def test_classify_reproduces_experiment_verdict():
    verdict = mermin.classify(2.83, 0.09)
    assert abs(verdict.sigma_above_2 - 9.2222) < 1e-3
    assert verdict.summary() == "genuine three-qubit entanglement (orthogonal observables)"
    assert mermin.classify(1.0, 0.1).classification == "consistent-with-LHV"


def test_estimate_matches_direct_evaluation():
    state = mermin.random_state(8, seed=11)
    ops = {
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    }
    entries = []
    for axes in ("XXX", "YYX", "XYY", "YXY"):
        op = np.kron(np.kron(ops[axes[0]], ops[axes[1]]), ops[axes[2]])
        value = np.vdot(state, op @ state).real
        entries.append(mermin.CorrelationEntry(list(axes), value))
    record = mermin.CorrelationRecord(entries, "exact")
    estimate, std_error = mermin.estimate_m3(record)
    assert std_error == 0.0
    assert abs(estimate - mermin.bell_value(state)) < 1e-12


def test_simulate_ghz_is_noiseless_and_seeded():
    record = mermin.simulate(mermin.ghz(), shots=500, seed=3)
    estimate, std_error = mermin.estimate_m3(record)
    assert estimate == 4.0
    assert std_error == 0.0

    a = mermin.simulate(mermin.noisy_ghz(0.7075), shots=2000, seed=5)
    b = mermin.simulate(mermin.noisy_ghz(0.7075), shots=2000, seed=5)
    for ea, eb in zip(a.entries, b.entries):
        assert ea.value == eb.value
        assert ea.std_error == eb.std_error


def test_correlation_file_round_trip(tmp_path):
    record = mermin.simulate(mermin.noisy_ghz(0.5), shots=400, seed=9)
    path = tmp_path / "corr.json"
    mermin.save_correlations(record, str(path))
    loaded = mermin.load_correlations(str(path))
    for original, copied in zip(record.entries, loaded.entries):
        assert original.value == copied.value
        assert original.std_error == copied.std_error


def test_maximize_respects_class_bounds():
    full = mermin.maximize("full-separable", restarts=10, budget=2500, seed=2)
    assert abs(full["best_value"] - 1.0) < 1e-5
    bisep = mermin.maximize("bisep-12|3", restarts=12, budget=4000, seed=2)
    assert abs(bisep["best_value"] - 2.0) < 1e-5
    assert bisep["best_value"] < 2.0 + 1e-9
    assert abs(mermin.bell_value(bisep["amplitudes"]) - bisep["best_value"]) < 1e-12


def test_correlation_vector_geometry():
    pair = mermin.random_state(4, seed=21)
    single = mermin.random_state(2, seed=22)
    v1, v2 = mermin.correlation_vectors(pair, single)
    assert np.linalg.norm(v1) <= 2.0 + 1e-9
    assert np.linalg.norm(v2) <= 1.0 + 1e-10


def test_validation_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        mermin.bell_value(np.zeros(8, dtype=complex))
    with pytest.raises(ValueError):
        mermin.noisy_ghz(1.5)
    with pytest.raises(ValueError):
        mermin.maximize("not-a-class")
