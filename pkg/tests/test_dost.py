import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import dost_basis, inner
from stockwell import dost
from stockwell.dost import DostCoefficients, evaluate_basis, synthesize_basis
from stockwell.dyadic import BandIndex, beta, partition


def _random(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_dc_basis_is_constant():
    assert np.allclose(synthesize_basis(BandIndex(0, 0), 8), 1.0)


def test_sampling_examples():
    assert evaluate_basis(5, 3, 3 / 16) == pytest.approx(4.0, abs=1e-12)
    assert abs(evaluate_basis(5, 3, 5 / 16)) < 1e-12


@pytest.mark.parametrize("n", [16, 32])
def test_basis_matches_loop_oracle(n):
    for b in partition(n).indices():
        if b.p == partition(n).nyquist_p:
            continue
        assert np.allclose(synthesize_basis(b, n), dost_basis(b.p, b.tau, n), atol=1e-12)


def test_nyquist_basis():
    m = np.arange(16)
    assert np.allclose(synthesize_basis(BandIndex(4, 0), 16), (-1.0) ** m)


def test_negative_is_conjugate():
    n = 64
    for p in range(1, 6):
        for tau in range(beta(p)):
            assert np.array_equal(synthesize_basis(BandIndex(-p, tau), n),
                                  synthesize_basis(BandIndex(p, tau), n).conj())


def test_synthesize_matches_evaluate():
    n = 64
    t = np.arange(n) / n
    for p in range(-5, 6):
        for tau in range(beta(p)):
            assert np.allclose(synthesize_basis(BandIndex(p, tau), n), evaluate_basis(p, tau, t), atol=1e-12)


def test_forward_constant():
    c = dost.forward(np.ones(16))
    expected = np.zeros(16)
    expected[0] = 1
    assert np.allclose(c.values, expected, atol=1e-15)


def test_forward_of_basis_function():
    c = dost.forward(synthesize_basis(BandIndex(3, 2), 16))
    assert np.allclose(c.values, DostCoefficients.unit(16, 3, 2).values, atol=1e-12)


def test_forward_pure_tone():
    m = np.arange(16)
    c = dost.forward(np.exp(2j * np.pi * 4 * m / 16))
    assert np.allclose(c.band(3), 0.5, atol=1e-12)
    rest = np.delete(c.values, np.arange(4, 8))
    assert np.abs(rest).max() < 1e-12


def test_inverse_examples():
    assert np.allclose(dost.inverse(DostCoefficients.unit(16, 0, 0)), 1.0)
    m = np.arange(32)
    assert np.allclose(dost.inverse(DostCoefficients.unit(32, 1, 0)), np.exp(2j * np.pi * m / 32), atol=1e-15)


def test_inverse_roundtrip(rng):
    layout = partition(64)
    c = DostCoefficients(layout, _random(rng, 64))
    back = dost.forward(dost.inverse(c))
    assert np.abs(back.values - c.values).max() < 1e-10 * np.abs(c.values).max()


def test_forward_direct_examples(rng):
    x = _random(rng, 16)
    assert np.abs(dost.forward_direct(x).values - dost.forward(x).values).max() < 1e-10
    assert dost.forward_direct(np.ones(16))[0, 0] == pytest.approx(1.0)
    c = dost.forward_direct(synthesize_basis(BandIndex(2, 1), 16))
    assert np.allclose(c.values, DostCoefficients.unit(16, 2, 1).values, atol=1e-12)


def test_forward_direct_matches_loop_inner_products(rng):
    n = 16
    x = _random(rng, n)
    c = dost.forward_direct(x)
    for b in partition(n).indices():
        if b.p == partition(n).nyquist_p:
            ref = np.mean(x * (-1.0) ** np.arange(n))
        else:
            ref = inner(list(x), dost_basis(b.p, b.tau, n))
        assert abs(c[b] - ref) < 1e-12


def test_forward_direct_small_blocks(rng):
    x = _random(rng, 64)
    a = dost.forward_direct(x, block=64).values
    assert np.abs(a - dost.forward(x).values).max() < 1e-10


def test_gram_n64():
    B = dost.basis_matrix(64)
    assert np.abs(B.conj().T @ B / 64 - np.eye(64)).max() < 1e-10


def test_sampling_property():
    # D[p, tau](tau'/beta) = sqrt(beta) delta(tau - tau')
    for p in range(-6, 7):
        b = beta(p)
        grid = np.arange(b) / b
        for tau in range(b):
            want = np.sqrt(b) * (np.arange(b) == tau)
            assert np.abs(evaluate_basis(p, tau, grid) - want).max() < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 10), st.integers(0, 2**32 - 1))
def test_parseval(k, seed):
    x = _random(np.random.default_rng(seed), 2**k)
    c = dost.forward(x)
    assert abs(c.energy() - np.mean(np.abs(x) ** 2)) < 1e-10 * np.mean(np.abs(x) ** 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 9), st.integers(0, 2**32 - 1),
       st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_linearity(k, seed, a, b):
    rng = np.random.default_rng(seed)
    u, v = _random(rng, 2**k), _random(rng, 2**k)
    lhs = dost.forward(a * u + b * v).values
    rhs = a * dost.forward(u).values + b * dost.forward(v).values
    assert np.abs(lhs - rhs).max() < 1e-10 * max(1.0, abs(a) + abs(b))


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 10), st.integers(0, 2**32 - 1))
def test_real_signal_conjugate_symmetry(k, seed):
    x = np.random.default_rng(seed).standard_normal(2**k)
    c = dost.forward(x)
    for p in range(1, k):
        assert np.abs(c.band(-p) - c.band(p).conj()).max() < 1e-12


@pytest.mark.parametrize("p", range(2, 7))
def test_fejer_identity(p):
    b = beta(p)
    t = np.arange(1024) / 1024
    lhs = np.abs(evaluate_basis(p, 0, t)) ** 2
    m = np.arange(1, b)
    rhs = 1 + (2 / b) * ((b - m) * np.cos(2 * np.pi * np.outer(t, m))).sum(axis=1)
    assert np.abs(lhs - rhs).max() < 1e-9


def test_coefficient_container():
    c = DostCoefficients.zeros(8)
    assert c.n == 8 and c.energy() == 0
    with pytest.raises(ValueError):
        DostCoefficients(partition(8), np.zeros(7))
    with pytest.raises(ValueError):
        c[2, 2]


def test_evaluate_rejects_bad_tau():
    with pytest.raises(ValueError):
        evaluate_basis(3, 4, 0.0)
