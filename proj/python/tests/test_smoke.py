import json
import math

import pytest

import heun_spectra as hs


def test_ground_state_both_methods():
    p = hs.ProblemParams(A=1.0, Z=1.0, l=0)
    shoot = hs.find_energy(p, 0)
    floq = hs.find_energy_floquet(p, 0)
    assert shoot.n == 0
    assert abs(shoot.E + 0.139037013) < 1e-8
    assert abs(floq.E - shoot.E) < 1e-9
    assert len(shoot.z) == len(shoot.w)


def test_indices_and_coefficients():
    p = hs.ProblemParams(A=1.0, l=0)
    idx = hs.find_indices(p, -0.1)
    assert abs(idx.nu1 + idx.nu2) < 1e-9
    sol = hs.laurent_coefficients(p, -0.1, idx.nu1, 30)
    assert len(sol.coefficients) == 61
    assert sol.c(0) == 1.0
    assert abs(sol.c(30)) < 1e-12


def test_wavefunction_is_normalized():
    p = hs.ProblemParams(A=10.0, l=1)
    m = 4000
    zs = [0.05 * (8000.0 ** (i / m)) for i in range(m + 1)]
    wf = hs.sample_wavefunction(p, 1, zs)
    norm = sum(
        0.5 * (wf.w[i - 1] ** 2 * zs[i - 1] + wf.w[i] ** 2 * zs[i]) * math.log(zs[i] / zs[i - 1])
        for i in range(1, m + 1)
    )
    assert abs(norm - 1.0) < 1e-5
    assert set(wf.source) >= {"series0", "series_inf"}


def test_quasipoly():
    r = hs.solve_quasipoly(2, 0)
    assert r.beta_roots == pytest.approx([8.0], rel=1e-12)
    assert r.E == pytest.approx(-1.0 / 16.0)
    assert hs.solve_quasipoly(1, 0).beta_roots == []


def test_errors_map_to_exceptions():
    with pytest.raises(hs.DomainError):
        hs.find_energy(hs.ProblemParams(A=0.0), 0)
    assert issubclass(hs.SolverError, hs.HeunError)


def test_cli_json_record():
    code, out, err = hs.run_cli(["energy", "--A", "1", "--l", "0", "--n", "0", "--format", "json"])
    assert code == 0, err
    doc = json.loads(out)
    assert set(doc) == {"inputs", "outputs", "method", "tolerances", "versions"}
    assert doc["versions"]["heun_spectra"] == hs.__version__
    code, _, _ = hs.run_cli(["energy", "--bogus"])
    assert code == 2
