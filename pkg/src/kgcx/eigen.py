"""Iterative symmetric eigensolvers: power iteration and Lanczos.

Both operate on a matvec callable, are fully deterministic given the start
vector, and report the residual that certifies each returned pair. The
Lanczos solver uses full reorthogonalization, supports deflation against
known eigenvectors, and restarts with a fresh orthogonal vector on breakdown.
"""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceError


def power_iteration(matvec, n, v0, tol=1e-8, maxiter=1000):
    """Dominant eigenpair of a symmetric operator.

    Convergence criterion is the residual ``||A v - theta v||`` with ``v``
    unit-normalized. Raises :class:`ConvergenceError` carrying the iteration
    count and last residual when ``maxiter`` is exhausted.
    """
    v = np.asarray(v0, dtype=np.float64).copy()
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("start vector must be nonzero")
    v /= nrm
    theta = 0.0
    residual = np.inf
    for it in range(1, maxiter + 1):
        w = matvec(v)
        theta = float(v @ w)
        residual = float(np.linalg.norm(w - theta * v))
        if residual <= tol:
            return theta, v, it, residual
        nrm = np.linalg.norm(w)
        if nrm == 0:
            # v is in the null space; theta = 0 is exact
            return 0.0, v, it, 0.0
        v = w / nrm
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {maxiter} iterations "
        f"(last residual {residual:.3e})",
        iterations=maxiter,
        residual=residual,
    )


def lanczos_extreme(matvec, n, v0, npairs=1, which="largest", tol=1e-6,
                    maxdim=None, deflate=None):
    """Extreme eigenpairs of a symmetric operator via Lanczos.

    Returns ``(values, vectors, residuals, dim)`` with ``npairs`` converged
    Ritz pairs from the requested end of the spectrum, values sorted
    descending for ``which="largest"`` and ascending for ``"smallest"``.

    ``deflate`` is an optional list of unit vectors projected out of every
    Krylov vector (used to remove a known eigenvector, e.g. the constant
    vector of a graph Laplacian).
    """
    if maxdim is None:
        maxdim = min(n, max(8 * npairs, 200))
    maxdim = min(maxdim, n)
    defl = [np.asarray(d, dtype=np.float64) for d in (deflate or [])]

    def project(x):
        for d in defl:
            x = x - (d @ x) * d
        return x

    rng_fresh = np.random.Generator(np.random.PCG64(0x9E3779B97F4A7C15))

    q = project(np.asarray(v0, dtype=np.float64).copy())
    nrm = np.linalg.norm(q)
    if nrm < 1e-12:
        raise ValueError("start vector vanishes after deflation")
    q /= nrm

    Q = np.zeros((maxdim, n))
    alphas = np.zeros(maxdim)
    betas = np.zeros(maxdim)
    j = 0
    while j < maxdim:
        Q[j] = q
        w = project(np.asarray(matvec(q), dtype=np.float64))
        alphas[j] = float(q @ w)
        w -= alphas[j] * q
        if j > 0:
            w -= betas[j - 1] * Q[j - 1]
        # full reorthogonalization against all previous Lanczos vectors
        w -= Q[: j + 1].T @ (Q[: j + 1] @ w)
        beta = float(np.linalg.norm(w))
        j += 1
        ready = j >= max(2 * npairs, 2)
        if (ready and (j % 5 == 0 or j == maxdim)) or beta < 1e-14:
            vals, res, vecs = _ritz(Q, alphas, betas, j, beta, npairs, which)
            if vals is not None and np.all(res <= tol):
                return vals, vecs, res, j
        if beta < 1e-14:
            # invariant subspace: restart with a fresh orthogonal direction
            q = project(rng_fresh.standard_normal(n))
            q -= Q[:j].T @ (Q[:j] @ q)
            nrm = np.linalg.norm(q)
            if nrm < 1e-12:
                # operator range exhausted; whatever we have is exact
                vals, res, vecs = _ritz(Q, alphas, betas, j, 0.0, npairs, which)
                if vals is None:
                    raise ConvergenceError("Krylov space exhausted before finding requested pairs")
                return vals, vecs, res, j
            q /= nrm
            betas[j - 1] = 0.0
        else:
            betas[j - 1] = beta
            q = w / beta
    vals, res, vecs = _ritz(Q, alphas, betas, maxdim, betas[maxdim - 1], npairs, which)
    worst = float(np.max(res)) if res is not None else np.inf
    raise ConvergenceError(
        f"Lanczos did not reach tol={tol} within Krylov dimension {maxdim} "
        f"(worst residual {worst:.3e})",
        iterations=maxdim,
        residual=worst,
    )


def _ritz(Q, alphas, betas, j, beta_next, npairs, which):
    if j < npairs:
        return None, None, None
    T = np.diag(alphas[:j])
    if j > 1:
        off = betas[: j - 1]
        T += np.diag(off, 1) + np.diag(off, -1)
    theta, S = np.linalg.eigh(T)
    if which == "largest":
        order = np.argsort(theta)[::-1][:npairs]
    else:
        order = np.argsort(theta)[:npairs]
    vals = theta[order]
    # residual bound for a Ritz pair: |beta_next| * |last component of s|
    res = np.abs(beta_next * S[j - 1, order])
    vecs = Q[:j].T @ S[:, order]
    # renormalize (deflation/reorthogonalization can shave a few ulps)
    vecs /= np.linalg.norm(vecs, axis=0, keepdims=True)
    return vals, res, vecs
