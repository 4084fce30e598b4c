import numpy as np
import pytest

import transmon_chaos as tc


@pytest.fixture(scope="session")
def chain2_basis():
    return tc.enumerate_basis(2, 4)


@pytest.fixture(scope="session")
def chain2():
    return tc.build_lattice("chain", 2)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def brute_force_two_transmon(e_c, e_j_pair, t, n_max=15):
    """Independent oracle: diagonalize two transmons in the full product
    charge basis (dimension (2 n_max + 1)^2), no per-site truncation."""
    m = np.arange(-n_max, n_max + 1, dtype=float)
    dim = len(m)

    def single(e_j):
        h = np.diag(4.0 * e_c * m**2)
        h += np.diag(np.full(dim - 1, -e_j / 2.0), 1)
        h += np.diag(np.full(dim - 1, -e_j / 2.0), -1)
        return h

    eye = np.eye(dim)
    n_op = np.diag(m)
    h = (np.kron(single(e_j_pair[0]), eye) + np.kron(eye, single(e_j_pair[1]))
         + t * np.kron(n_op, n_op))
    vals = np.linalg.eigvalsh(h)
    return vals - vals[0]


def asymptotic_transmon_levels(e_c, e_j, k_max):
    """Independent oracle: leading-order transmon expansion
    eps_k = -E_J + sqrt(8 E_C E_J)(k + 1/2) - (E_C/12)(6k^2 + 6k + 3)."""
    k = np.arange(k_max + 1, dtype=float)
    eps = -e_j + np.sqrt(8.0 * e_c * e_j) * (k + 0.5) - (e_c / 12.0) * (6 * k**2 + 6 * k + 3)
    return eps - eps[0]
