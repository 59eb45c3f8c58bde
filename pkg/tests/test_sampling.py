"""Uniform state sampling, the exact mean-entropy oracle and tail fitting."""

import math

import numpy as np
import pytest

from holoent import (
    AsymptoticModel,
    SingularFit,
    asymptotic_mean_entropy,
    cp1_model,
    entanglement_entropy,
    fit_tail,
    mc_mean_entropy,
    page_mean,
    sample_uniform_state,
)
from holoent.sampling import BLOCK_SIZE

PAGE_D3 = 0.6623015873015873  # 1669/2520
PAGE_D4 = 0.9223956598956599


def test_sampler_is_bit_reproducible():
    a = sample_uniform_state(1, np.random.default_rng(2026))
    b = sample_uniform_state(1, np.random.default_rng(2026))
    assert np.array_equal(a.coeffs, b.coeffs)


def test_samples_are_unit_norm():
    rng = np.random.default_rng(3)
    for _ in range(200):
        state = sample_uniform_state(2, rng)
        assert abs(np.linalg.norm(state.coeffs) - 1.0) < 1e-12


def test_entry_mass_is_symmetric():
    # each of the four entries carries a quarter of the mass on average
    rng = np.random.default_rng(4)
    n = 10_000
    mass = np.empty(n)
    for i in range(n):
        mass[i] = abs(sample_uniform_state(1, rng).coeffs[0, 0]) ** 2
    stderr = mass.std(ddof=1) / math.sqrt(n)
    assert abs(mass.mean() - 0.25) <= 5 * stderr


def test_mc_estimate_is_deterministic():
    a = mc_mean_entropy(1, 500, seed=7)
    b = mc_mean_entropy(1, 500, seed=7)
    assert a == b


def test_mc_requires_minimum_samples():
    with pytest.raises(ValueError):
        mc_mean_entropy(1, 99, seed=0)


def test_mc_blocks_reproduce_the_documented_sampler():
    # block b consumes the stream of default_rng([seed, b]) exactly as
    # repeated single-state draws would
    k, n, seed = 2, BLOCK_SIZE + 50, 123
    estimate = mc_mean_entropy(k, n, seed)
    values = []
    remaining = n
    block = 0
    while remaining > 0:
        count = min(BLOCK_SIZE, remaining)
        rng = np.random.default_rng([seed, block])
        for _ in range(count):
            values.append(entanglement_entropy(sample_uniform_state(k, rng)))
        remaining -= count
        block += 1
    values = np.array(values)
    assert estimate.mean == pytest.approx(values.mean(), abs=1e-13)
    assert estimate.stderr == pytest.approx(values.std(ddof=1) / math.sqrt(n), abs=1e-13)


def test_mc_matches_page_oracle():
    for k, seed in [(1, 2026), (2, 2027), (3, 2028)]:
        estimate = mc_mean_entropy(k, 20_000, seed)
        assert abs(estimate.mean - page_mean(k + 1)) <= 4 * estimate.stderr


def test_entropy_samples_stay_in_range():
    rng = np.random.default_rng(9)
    for _ in range(200):
        value = entanglement_entropy(sample_uniform_state(3, rng))
        assert 0.0 <= value <= math.log(4)


def test_page_mean_values():
    assert page_mean(1) == 0.0
    assert page_mean(2) == pytest.approx(1 / 3, abs=1e-15)
    assert page_mean(3) == pytest.approx(PAGE_D3, abs=1e-15)
    assert page_mean(4) == pytest.approx(PAGE_D4, abs=1e-15)


def test_page_mean_rejects_bad_dimension():
    with pytest.raises(ValueError):
        page_mean(0)


def test_asymptotic_mean_entropy_values():
    model = cp1_model()
    assert asymptotic_mean_entropy(model, 10) == pytest.approx(math.log(10) - 0.3, abs=1e-14)
    assert asymptotic_mean_entropy(model, 1) == pytest.approx(1.5, abs=1e-14)
    flat = AsymptoticModel(m=2, beta=1.0, gamma=0.0)
    assert asymptotic_mean_entropy(flat, 5) == pytest.approx(2 * math.log(5) - 0.5, abs=1e-14)


def test_model_validation():
    with pytest.raises(ValueError):
        AsymptoticModel(beta=0.0)


def test_fit_tail_recovers_its_own_model():
    model = cp1_model()
    pairs = [(k, asymptotic_mean_entropy(model, k)) for k in (8, 16, 32)]
    c0, c1 = fit_tail(pairs)
    assert abs(c0 + 0.5) <= 1e-9
    assert abs(c1 - 2.0) <= 1e-9


def test_fit_tail_on_exact_oracle():
    pairs = [(k, page_mean(k + 1)) for k in (8, 16, 32, 64)]
    c0, c1 = fit_tail(pairs)
    # constant term matches the expansion; the 1/k coefficient of the
    # exact oracle sits near 1 and is reported alongside the model value 2
    assert abs(c0 + 0.5) <= 0.02
    assert 0.9 <= c1 <= 1.1


def test_fit_tail_needs_three_distinct_levels():
    with pytest.raises(SingularFit):
        fit_tail([(8, 1.0), (16, 1.1)])
    with pytest.raises(SingularFit):
        fit_tail([(8, 1.0), (8, 1.0), (8, 1.0)])


def test_mc_estimate_fields():
    estimate = mc_mean_entropy(2, 400, seed=5)
    assert estimate.k == 2 and estimate.n_samples == 400 and estimate.seed == 5
    assert estimate.stderr >= 0.0
    assert 0.0 <= estimate.mean <= math.log(3)
