"""Projective and unitary t-design diagnostics: moment tests against
the Fubini-Study average, Welch bounds, frame operators on the t-fold
tensor space, and the lower bound on tight-design sizes.

Vector families are (K, n) arrays with rows as vectors.
"""

from functools import reduce
import math

import numpy as np

EPS_MAT = 1e-10
EPS_DESIGN = 1e-9


def _as_family(vectors):
    v = np.asarray(vectors, dtype=complex)
    if v.ndim != 2 or v.shape[0] < 1:
        raise ValueError("expected a (K, n) array of row vectors")
    return v


def _check_unit_norms(v):
    norms = np.linalg.norm(v, axis=1)
    if np.abs(norms - 1.0).max() > EPS_MAT:
        raise ValueError("family vectors are not unit norm")


def design_moment(vectors, t: int) -> float:
    """(1/K^2) sum_{I,J} |<I|J>|^{2t}, diagonal terms included."""
    v = _as_family(vectors)
    if t < 1:
        raise ValueError("t must be positive")
    g2 = np.abs(v.conj() @ v.T) ** 2
    return float((g2 ** t).mean())


def design_target(n: int, t: int) -> float:
    """The Fubini-Study moment t!(n-1)!/(n-1+t)! = 1/C(n+t-1, t) that a
    t-design attains."""
    return 1.0 / math.comb(n + t - 1, t)


def design_test(vectors, t: int, tol: float = EPS_DESIGN) -> dict:
    """Moment criterion: the family is a t-design iff the 2t-th overlap
    moment equals the Fubini-Study value."""
    v = _as_family(vectors)
    _check_unit_norms(v)
    n = v.shape[1]
    g2 = np.abs(v.conj() @ v.T) ** 2
    value = float((g2 ** t).mean())
    target = design_target(n, t)
    is_design = abs(value - target) < tol
    if is_design:
        # a t-design is automatically a t'-design for all t' < t
        for lower in range(1, t):
            assert abs(float((g2 ** lower).mean())
                       - design_target(n, lower)) < tol
    return {"value": value, "target": target, "isDesign": is_design}


def welch_bound(vectors, t: int) -> dict:
    """lhs = C(n+t-1, t) sum |<I|J>|^{2t} against rhs = (sum <I|I>^t)^2;
    lhs >= rhs for every vector family, with equality exactly on
    t-designs of unit vectors."""
    v = _as_family(vectors)
    if t < 1:
        raise ValueError("t must be positive")
    n = v.shape[1]
    gram = v.conj() @ v.T
    g2 = np.abs(gram) ** 2
    lhs = math.comb(n + t - 1, t) * float((g2 ** t).sum())
    rhs = float((np.real(np.diag(gram)) ** t).sum()) ** 2
    slack = lhs - rhs
    if slack < -1e-10 * max(1.0, rhs):
        raise RuntimeError("Welch bound violated: slack %g" % slack)
    return {"lhs": lhs, "rhs": rhs, "slack": slack}


def frame_operator(vectors, t: int) -> np.ndarray:
    """F = sum_I |Psi_I^(ox t)><Psi_I^(ox t)| on the t-fold tensor
    space.  Tr F = K; for a t-design the nonzero spectrum is flat at
    K / C(n+t-1, t)."""
    v = _as_family(vectors)
    _check_unit_norms(v)
    n = v.shape[1]
    if n ** t > 4096:
        raise ValueError("tensor power too large")
    dim = n ** t
    f = np.zeros((dim, dim), dtype=complex)
    for row in v:
        big = reduce(np.kron, [row] * t)
        f += np.outer(big, big.conj())
    return f


def tight_bound(n: int, t: int) -> int:
    """Minimum number of vectors a t-design in dimension n can have:
    C(n + ceil(t/2) - 1, ceil(t/2)) * C(n + floor(t/2) - 1, floor(t/2))."""
    if t < 1:
        raise ValueError("t must be positive")
    hi, lo = (t + 1) // 2, t // 2
    return math.comb(n + hi - 1, hi) * math.comb(n + lo - 1, lo)


def unitary_design_moment(unitaries, t: int) -> dict:
    """(1/K^2) sum_{I,J} |Tr U_I^dag U_J|^{2t} against the Haar moment:
    t! for t <= n, (2t)!/(t!(t+1)!) for n = 2; other cases have no
    closed form here."""
    mats = [np.asarray(u, dtype=complex) for u in unitaries]
    if not mats:
        raise ValueError("empty family")
    n = mats[0].shape[0]
    for u in mats:
        if u.shape != (n, n):
            raise ValueError("mixed dimensions")
        if np.abs(u @ u.conj().T - np.eye(n)).max() > 1e-8:
            raise ValueError("matrix is not unitary")
    if t < 1:
        raise ValueError("t must be positive")
    if t <= n:
        target = float(math.factorial(t))
    elif n == 2:
        target = math.factorial(2 * t) / (
            math.factorial(t) * math.factorial(t + 1))
    else:
        raise ValueError("moment formula out of table")
    flat = np.array([u.reshape(n * n) for u in mats])
    gram = flat.conj() @ flat.T
    value = float((np.abs(gram) ** (2 * t)).mean())
    return {"value": value, "target": target}
