import math

import numpy as np
import pytest

from superdiscord import _pykernels, kernels
from superdiscord.states import pure_schmidt, random_density, werner

import oracles


def cases(n=25):
    rng = np.random.default_rng(100)
    for i in range(n):
        kind = "pure" if i % 3 == 0 else "full-rank"
        rho = random_density(i, kind).mat
        yield rho, rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi), rng.uniform(0, 4)


def test_objective_matches_bruteforce(backend):
    for rho, th, ph, x in cases():
        m = kernels.reduce_blocks(rho)
        ref = oracles.weak_cond_entropy(rho, th, ph, x)
        assert backend.objective(m, th, ph, math.tanh(x)) == pytest.approx(ref, abs=1e-12)
        ref_strong = oracles.weak_cond_entropy(rho, th, ph, math.inf)
        assert backend.objective(m, th, ph, 1.0) == pytest.approx(ref_strong, abs=1e-12)


def test_grid_matches_point_evaluation(backend):
    rho = random_density(4).mat
    m = kernels.reduce_blocks(rho)
    th = np.linspace(0, math.pi, 7)
    ph = np.linspace(0, 2 * math.pi, 5, endpoint=False)
    g = backend.objective_grid(m, th, ph, 0.3)
    assert g.shape == (7, 5)
    for i, j in np.ndindex(g.shape):
        assert g[i, j] == pytest.approx(_pykernels.objective(m, th[i], ph[j], 0.3), abs=1e-14)


def test_degenerate_branches_contribute_nothing(backend):
    # pure product |00>: the strong outcome |1> on B has probability zero
    rho = pure_schmidt(1.0).mat
    m = kernels.reduce_blocks(rho)
    assert backend.objective(m, 0.0, 0.0, 1.0) == 0.0
    assert backend.objective_grid(m, [0.0], [0.0], 1.0)[0, 0] == 0.0


def test_golden_section_finds_interior_minimum(backend):
    rho = werner(0.6).mat * 0.5 + random_density(1).mat * 0.5
    m = kernels.reduce_blocks(rho)
    arg, val = backend.golden_section(m, 1.0, 0.5, 0.7, 0, 0.0, math.pi, 1e-10)
    dense = [_pykernels.objective(m, t, 0.5, 0.7) for t in np.linspace(0, math.pi, 20001)]
    assert val <= min(dense) + 1e-12
    assert val == pytest.approx(_pykernels.objective(m, arg, 0.5, 0.7), abs=1e-15)


def test_backends_agree():
    pytest.importorskip("superdiscord._ckernels")
    from superdiscord import _ckernels
    for rho, th, ph, x in cases(10):
        m = kernels.reduce_blocks(rho)
        t = math.tanh(x)
        assert _ckernels.objective(m, th, ph, t) == pytest.approx(
            _pykernels.objective(m, th, ph, t), abs=1e-14)
        for axis in (0, 1):
            a = _ckernels.golden_section(m, th, ph, t, axis, th - 0.2, th + 0.2, 1e-9)
            b = _pykernels.golden_section(m, th, ph, t, axis, th - 0.2, th + 0.2, 1e-9)
            assert a[1] == pytest.approx(b[1], abs=1e-14)


def test_block_reduction_layout():
    rho = random_density(8).mat
    m = kernels.reduce_blocks(rho)
    a = oracles.trace_out_b(rho)
    assert m[:4] == pytest.approx([a[0, 0].real, a[1, 1].real, a[0, 1].real, a[0, 1].imag])


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
