import os

# settings are chosen at import time of app.config.settings
os.environ["ENV"] = "test"

import numpy as np
import pytest


def rotation(theta):
    return np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])


def random_spectrum(rng, n, min_gap=0.05):
    """
    Eigenvalues for an n x n real matrix: reals in [0.5, 3] and conjugate
    pairs rho * exp(+-i theta) with theta in [0.3, 2.5], so the spectrum
    stays at least 0.1 away from the closed negative real axis.
    """
    while True:
        values = []
        while len(values) < n:
            if n - len(values) >= 2 and rng.random() < 0.5:
                z = rng.uniform(0.5, 3.0) * np.exp(1j * rng.uniform(0.3, 2.5))
                values.extend([z, np.conj(z)])
            else:
                values.append(complex(rng.uniform(0.5, 3.0)))
        gaps = [abs(a - b) for i, a in enumerate(values) for b in values[i + 1:]]
        if not gaps or min(gaps) >= min_gap:
            return values


def block_diagonal_from_spectrum(values):
    n = len(values)
    D = np.zeros((n, n))
    i = 0
    while i < n:
        z = values[i]
        if z.imag == 0:
            D[i, i] = z.real
            i += 1
        else:
            D[i:i + 2, i:i + 2] = [[z.real, -abs(z.imag)], [abs(z.imag), z.real]]
            i += 2
    return D


def random_similar(rng, D):
    """P D P^-1 with the well-conditioned P = I + 0.2 G / sqrt(n)."""
    n = D.shape[0]
    P = np.eye(n) + 0.2 * rng.standard_normal((n, n)) / np.sqrt(n)
    return P @ D @ np.linalg.inv(P)


def random_spd(rng, n):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return Q @ np.diag(rng.uniform(0.2, 5.0, n)) @ Q.T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def no_negative_matrices():
    """(n, A) pairs with spectra kept off the negative real axis."""
    generator = np.random.default_rng(7)
    cases = []
    for _ in range(200):
        n = int(generator.integers(2, 9))
        cases.append(random_similar(generator, block_diagonal_from_spectrum(random_spectrum(generator, n))))
    return cases
