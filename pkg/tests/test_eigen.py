import numpy as np
import pytest

from kgcx.eigen import lanczos_extreme, power_iteration
from kgcx.errors import ConvergenceError


def sym(rng, n):
    A = rng.standard_normal((n, n))
    return (A + A.T) / 2


def test_power_iteration_dominant_pair(rng):
    A = sym(rng, 20)
    A += 25 * np.eye(20)  # make the top of the spectrum dominant and positive
    theta, v, iters, res = power_iteration(A.__matmul__, 20, rng.standard_normal(20),
                                           tol=1e-10, maxiter=5000)
    w = np.linalg.eigvalsh(A)
    assert theta == pytest.approx(float(w[-1]), abs=1e-8)
    assert res <= 1e-10


def test_power_iteration_nonconvergence_reports():
    # symmetric with +/- the same dominant magnitude: oscillates forever
    A = np.diag([1.0, -1.0])
    v0 = np.array([1.0, 1.0])
    with pytest.raises(ConvergenceError) as err:
        power_iteration(A.__matmul__, 2, v0, tol=1e-12, maxiter=50)
    assert err.value.iterations == 50
    assert err.value.residual is not None


def test_lanczos_extremes_match_dense(rng):
    for n in (10, 40, 80):
        A = sym(rng, n)
        w = np.linalg.eigvalsh(A)
        v0 = rng.standard_normal(n)
        hi, _, hres, _ = lanczos_extreme(A.__matmul__, n, v0, npairs=2, which="largest", tol=1e-10)
        lo, _, lres, _ = lanczos_extreme(A.__matmul__, n, v0, npairs=2, which="smallest", tol=1e-10)
        assert np.allclose(hi, w[::-1][:2], atol=1e-8)
        assert np.allclose(lo, w[:2], atol=1e-8)
        assert max(hres.max(), lres.max()) <= 1e-10


def test_lanczos_deflation(rng):
    # deflating the known top eigenvector exposes the second eigenvalue
    n = 30
    A = sym(rng, n)
    w, U = np.linalg.eigh(A)
    top = U[:, -1]
    vals, _, _, _ = lanczos_extreme(A.__matmul__, n, rng.standard_normal(n),
                                    npairs=1, which="largest", tol=1e-9, deflate=[top])
    assert vals[0] == pytest.approx(float(w[-2]), abs=1e-7)


def test_lanczos_breakdown_restart(rng):
    # operator with a huge invariant subspace: projection onto one coordinate
    n = 12
    A = np.zeros((n, n))
    A[0, 0] = 3.0
    A[1, 1] = 2.0
    vals, _, res, _ = lanczos_extreme(A.__matmul__, n, rng.standard_normal(n),
                                      npairs=2, which="largest", tol=1e-10)
    assert np.allclose(vals, [3.0, 2.0], atol=1e-9)


def test_lanczos_small_space_exact(rng):
    A = sym(rng, 3)
    w = np.linalg.eigvalsh(A)
    vals, vecs, res, dim = lanczos_extreme(A.__matmul__, 3, rng.standard_normal(3),
                                           npairs=2, which="smallest", tol=1e-12)
    assert np.allclose(vals, w[:2], atol=1e-10)
    for i in range(2):
        assert np.linalg.norm(A @ vecs[:, i] - vals[i] * vecs[:, i]) < 1e-9
