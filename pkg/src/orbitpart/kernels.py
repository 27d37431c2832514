"""Hot loops: minimum-norm point, colorful pivoting, exhaustive search.

Every function here is written in the numba-compatible subset of numpy and is
compiled with ``@njit`` unless ``ORBITPART_DISABLE_NUMBA`` is set, in which
case the same source runs as ordinary numpy code.  Status codes are plain
integers so the signatures stay identical on both paths:

    0  success
    1  iteration cap hit
    2  pivoting stalled (no improving color outside the support)
"""
import numpy as np

from ._accel import maybe_njit

# relative slack in the Wolfe optimality test  <p, x> >= |x|^2 - EPS |x| max|p|
WOLFE_EPS = 1e-12
# |x| below ZERO_REL * max|p| counts as the origin
ZERO_REL = 1e-15


@maybe_njit
def householder_lstsq(At, b):
    """Least squares ``min |A x - b|`` for tall ``A`` given as ``At = A.T``.

    Returns ``(x, ok)``; ``ok`` is False when a diagonal entry of R falls
    below 1e-13 of the largest, i.e. the columns are numerically dependent.
    """
    n, m = At.shape
    R = At.copy()
    y = b.copy()
    for i in range(n):
        v = R[i, i:].copy()
        nv = np.sqrt(np.dot(v, v))
        if nv == 0.0:
            continue
        if v[0] >= 0.0:
            v[0] += nv
        else:
            v[0] -= nv
        vv = np.dot(v, v)
        for c in range(i, n):
            f = 2.0 * np.dot(v, R[c, i:]) / vv
            R[c, i:] -= f * v
        f = 2.0 * np.dot(v, y[i:]) / vv
        y[i:] -= f * v
    dmax = 0.0
    for i in range(n):
        a = abs(R[i, i])
        if a > dmax:
            dmax = a
    x = np.zeros(n)
    if dmax == 0.0:
        return x, False
    for i in range(n - 1, -1, -1):
        if abs(R[i, i]) <= 1e-13 * dmax:
            return x, False
        s = y[i]
        for c in range(i + 1, n):
            s -= R[c, i] * x[c]
        x[i] = s / R[i, i]
    return x, True


@maybe_njit
def affine_min(Q):
    """Weights (summing to 1) of the min-norm point of aff(rows of Q)."""
    k = Q.shape[0]
    alpha = np.empty(k)
    if k == 1:
        alpha[0] = 1.0
        return alpha
    Dt = Q[1:] - Q[0]
    rhs = -Q[0]
    ok = False
    if Dt.shape[1] >= Dt.shape[0]:
        beta, ok = householder_lstsq(Dt, rhs)
    if not ok:
        beta = np.linalg.lstsq(np.ascontiguousarray(Dt.T), rhs, rcond=-1.0)[0]
    alpha[1:] = beta
    alpha[0] = 1.0 - beta.sum()
    return alpha


@maybe_njit
def wolfe(P, lam0, max_iter):
    """Wolfe's minimum-norm-point method on the rows of ``P``.

    ``lam0`` is a convex starting weight vector (its support is the initial
    corral).  Returns ``(lam, x, iterations, status)``.
    """
    k = P.shape[0]
    lam = lam0.copy()
    insup = lam > 0.0
    maxnorm = 0.0
    for i in range(k):
        s = np.sqrt(np.dot(P[i], P[i]))
        if s > maxnorm:
            maxnorm = s
    x = np.dot(lam, P)
    it = 0
    status = 0
    while True:
        xx = np.dot(x, x)
        nx = np.sqrt(xx)
        if nx <= ZERO_REL * maxnorm:
            break
        dots = np.dot(P, x)
        j = np.argmin(dots)
        if dots[j] >= xx - WOLFE_EPS * nx * maxnorm:
            break
        if insup[j]:
            break
        insup[j] = True
        lam[j] = 0.0
        stalled = False
        while True:
            it += 1
            if it > max_iter:
                return lam, x, it, 1
            idx = np.nonzero(insup)[0]
            alpha = affine_min(P[idx])
            if alpha.min() > 0.0:
                lam[:] = 0.0
                for t in range(idx.shape[0]):
                    lam[idx[t]] = alpha[t]
                break
            theta = 1.0
            for t in range(idx.shape[0]):
                if alpha[t] <= 0.0:
                    den = lam[idx[t]] - alpha[t]
                    th = lam[idx[t]] / den if den > 0.0 else 0.0
                    if th < theta:
                        theta = th
            new = (1.0 - theta) * lam[idx] + theta * alpha
            drop = np.argmin(new)
            for t in range(idx.shape[0]):
                v = new[t]
                if t == drop or v <= 0.0:
                    lam[idx[t]] = 0.0
                    insup[idx[t]] = False
                else:
                    lam[idx[t]] = v
            lam /= lam.sum()
            if idx[drop] == j and theta == 0.0:
                stalled = True
                break
        x = np.dot(lam, P)
        if stalled:
            break
    return lam, x, it, status


@maybe_njit
def wolfe_from_scratch(P, max_iter):
    k = P.shape[0]
    lam0 = np.zeros(k)
    best = 0
    bestn = np.inf
    for i in range(k):
        s = np.dot(P[i], P[i])
        if s < bestn:
            bestn = s
            best = i
    lam0[best] = 1.0
    return wolfe(P, lam0, max_iter)


@maybe_njit
def barany_onn(C, assign0, tol, max_iter, inner_max):
    """Colorful pivoting on classes ``C[j, g, :]``.

    Returns ``(assign, lam, residual, pivots, status, trace)``; ``trace`` holds
    the norm of the current min-norm point before each pivot and after the
    last one.
    """
    N = C.shape[0]
    assign = assign0.copy()
    P = np.empty((N, C.shape[2]))
    for j in range(N):
        P[j] = C[j, assign[j]]
    lam, x, _, st = wolfe_from_scratch(P, inner_max)
    trace = np.empty(max_iter + 1)
    trace[0] = np.sqrt(np.dot(x, x))
    last = N - 1
    pivots = 0
    status = 0
    if st != 0:
        return assign, lam, trace[0], pivots, st, trace[:1]
    while True:
        xx = np.dot(x, x)
        nx = np.sqrt(xx)
        if nx <= tol:
            break
        if pivots >= max_iter:
            status = 1
            break
        chosen = -1
        chosen_g = -1
        for s in range(1, N + 1):
            j = (last + s) % N
            if lam[j] > 0.0:
                continue
            dots = np.dot(C[j], x)
            g = np.argmin(dots)
            if dots[g] < xx:
                chosen = j
                chosen_g = g
                break
        if chosen < 0:
            status = 2
            break
        assign[chosen] = chosen_g
        P[chosen] = C[chosen, chosen_g]
        lam[chosen] = 0.0
        last = chosen
        lam, x, _, st = wolfe(P, lam, inner_max)
        pivots += 1
        trace[pivots] = np.sqrt(np.dot(x, x))
        if st != 0:
            status = st
            break
    return assign, lam, np.sqrt(np.dot(x, x)), pivots, status, trace[: pivots + 1]


@maybe_njit
def brute_force(C, inner_max):
    """Exhaustive minimum over all ``r**N`` colorful selections.

    Assignments are visited in lexicographic order (color 0 most significant)
    and replaced only on strict improvement, so ties keep the smallest one.
    """
    N = C.shape[0]
    r = C.shape[1]
    total = 1
    for _ in range(N):
        total *= r
    assign = np.zeros(N, dtype=np.int64)
    best_assign = np.zeros(N, dtype=np.int64)
    best_lam = np.zeros(N)
    best = np.inf
    P = np.empty((N, C.shape[2]))
    for j in range(N):
        P[j] = C[j, 0]
    for code in range(total):
        c = code
        for j in range(N - 1, -1, -1):
            a = c % r
            c //= r
            if a != assign[j] or code == 0:
                assign[j] = a
                P[j] = C[j, a]
        lam, x, _, _ = wolfe_from_scratch(P, inner_max)
        res = np.sqrt(np.dot(x, x))
        if res < best:
            best = res
            best_assign[:] = assign
            best_lam[:] = lam
    return best_assign, best_lam, best
