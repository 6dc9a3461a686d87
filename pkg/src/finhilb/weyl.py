"""Clock-and-shift operators and the displacement operator basis.

Conventions, fixed once for the whole package:

* ``omega = exp(2*pi*i/N)`` and ``tau = -exp(i*pi/N)``, so tau**2 = omega.
* ``D_{r,s} = tau**(r*s) X**r Z**s`` where ``Z|i> = omega**i |i>`` and
  ``X|i> = |i+1 mod N>``.
* Index arithmetic lives modulo ``nbar(N)`` = N for odd N, 2N for even N;
  all phase exponents are reduced as exact integers before any floating
  evaluation, which keeps residuals at the 1e-15 level.

The finite-field variants replace integer indices by elements of GF(p^K)
ordered canonically by :mod:`finhilb.gf`.
"""

from __future__ import annotations

import functools

import numpy as np

from . import gf

EPS_MAT = 1e-10
MAX_DIM = 64
_MAX_TABLE_DIM = 32


def nbar(n: int) -> int:
    return n if n % 2 else 2 * n


def omega(n: int) -> complex:
    return np.exp(2j * np.pi / n)


def tau_power(n: int, m: int) -> complex:
    """tau**m with tau = -exp(i*pi/n), evaluated from the exact integer
    exponent reduced mod nbar(n)."""
    m = m % nbar(n)
    return (-1.0) ** m * np.exp(1j * np.pi * m / n)


def _omega_power(n, m):
    return np.exp(2j * np.pi * (m % n) / n)


def clock_shift(n: int):
    """Return (Z, X) in dimension n: Z the clock, X the cyclic shift."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if n > MAX_DIM:
        raise ValueError(f"dimension capped at {MAX_DIM}")
    Z = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    X = np.zeros((n, n), dtype=complex)
    X[(np.arange(n) + 1) % n, np.arange(n)] = 1.0
    return Z, X


def displacement(n: int, r: int, s: int) -> np.ndarray:
    """D_{r,s} = tau**(r*s) X**r Z**s; indices may be any integers and are
    reduced internally (the phase uses the full product r*s mod nbar)."""
    if n < 2 or n > MAX_DIM:
        raise ValueError("dimension out of range")
    ph = tau_power(n, r * s)
    col = np.arange(n)
    D = np.zeros((n, n), dtype=complex)
    D[(col + r) % n, col] = ph * np.exp(2j * np.pi * ((col * s) % n) / n)
    return D


@functools.lru_cache(maxsize=16)
def displacement_table(n: int) -> np.ndarray:
    """All N^2 standard displacements stacked as shape (N*N, N, N); entry
    r*N + s is D_{r,s}.  Cached; treat as read-only."""
    if n > _MAX_TABLE_DIM:
        raise ValueError(f"displacement table capped at {_MAX_TABLE_DIM}")
    out = np.empty((n * n, n, n), dtype=complex)
    for r in range(n):
        for s in range(n):
            out[r * n + s] = displacement(n, r, s)
    out.setflags(write=False)
    return out


def symplectic_exponent(p, q) -> int:
    """Omega(p, q) = p2*q1 - p1*q2 for index pairs p = (r, s)."""
    return p[1] * q[0] - p[0] * q[1]


def group_law_residual(n: int, p, q) -> float:
    """Max-entry distance from both forms of the composition law:
    D_p D_q = tau**Omega(p,q) D_{p+q}  and  D_p D_q = omega**Omega D_q D_p.
    """
    Dp = displacement(n, *p)
    Dq = displacement(n, *q)
    lhs = Dp @ Dq
    om = symplectic_exponent(p, q)
    res_a = np.abs(lhs - tau_power(n, om) * displacement(n, p[0] + q[0], p[1] + q[1])).max()
    res_b = np.abs(lhs - _omega_power(n, om) * (Dq @ Dp)).max()
    return float(max(res_a, res_b))


def group_law_max_residual(n: int) -> float:
    """group_law_residual maximized over all N^2 x N^2 standard index
    pairs, vectorized."""
    ds = displacement_table(n)
    prods = np.einsum("aij,bjk->abik", ds, ds)
    res = 0.0
    idx = [(r, s) for r in range(n) for s in range(n)]
    for a, pa in enumerate(idx):
        for b, qb in enumerate(idx):
            om = symplectic_exponent(pa, qb)
            m_sum = ((pa[0] + qb[0]) * (pa[1] + qb[1]))
            m_tab = ((pa[0] + qb[0]) % n) * ((pa[1] + qb[1]) % n)
            target = tau_power(n, om + m_sum - m_tab) * ds[
                ((pa[0] + qb[0]) % n) * n + (pa[1] + qb[1]) % n]
            res = max(res, np.abs(prods[a, b] - target).max(),
                      np.abs(prods[a, b] - _omega_power(n, om) * prods[b, a]).max())
    return float(res)


def orthogonality_max_residual(n: int) -> float:
    """Max deviation of Tr(D_p^dag D_q) from N*delta_pq over the standard
    N^2 x N^2 grid."""
    ds = displacement_table(n)
    flat = ds.reshape(n * n, n * n)
    gram = flat.conj() @ flat.T
    return float(np.abs(gram - n * np.eye(n * n)).max())


def expand_operator(A) -> np.ndarray:
    """Coefficients a_{r,s} = Tr(D_{r,s}^dag A)/N as an N x N table; the
    reconstruction sum a_{r,s} D_{r,s} recovers A."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    n = A.shape[0]
    ds = displacement_table(n)
    coef = np.tensordot(ds.conj(), A, axes=([1, 2], [0, 1])) / n
    return coef.reshape(n, n)


def reconstruct_operator(coef) -> np.ndarray:
    coef = np.asarray(coef, dtype=complex)
    n = coef.shape[0]
    ds = displacement_table(n)
    return np.tensordot(coef.reshape(n * n), ds, axes=1)


# -- finite-field displacements ---------------------------------------------

def field_shift(spec, u) -> np.ndarray:
    """X_u |x> = |x + u> over the canonical element order."""
    els = gf.elements(spec)
    q = spec.order
    X = np.zeros((q, q), dtype=complex)
    for j, x in enumerate(els):
        X[(x + u).index, j] = 1.0
    return X


def field_clock(spec, u) -> np.ndarray:
    """Z_u |x> = omega**tr(x u) |x> with omega = exp(2*pi*i/p)."""
    els = gf.elements(spec)
    phases = [np.exp(2j * np.pi * gf.field_trace(x * u) / spec.p) for x in els]
    return np.diag(np.asarray(phases, dtype=complex))


def field_displacement(spec, u1, u2) -> np.ndarray:
    """D_u = tau**tr(u1 u2) X_{u1} Z_{u2} with tau = -exp(i*pi/p).

    For p = 2 tau = -i has order four while traces are defined mod 2, so
    group-law phases are fixed only up to sign; odd p is exact.
    """
    if u1.spec != spec or u2.spec != spec:
        raise ValueError("mixed field specs")
    els = gf.elements(spec)
    q = spec.order
    ph = tau_power(spec.p, gf.field_trace(u1 * u2))
    D = np.zeros((q, q), dtype=complex)
    for j, x in enumerate(els):
        D[(x + u1).index, j] = ph * np.exp(2j * np.pi * gf.field_trace(x * u2) / spec.p)
    return D


def field_symplectic_exponent(u, v) -> int:
    """<u, v> = tr(u2 v1 - u1 v2), an integer residue mod p."""
    return gf.field_trace(u[1] * v[0] - u[0] * v[1])


def field_group_law_residual(spec, u, v) -> float:
    """Max-entry distance from D_u D_v = tau**<u,v> D_{u+v} (sign-minimized
    when p = 2, where the phase is only defined mod 2)."""
    lhs = field_displacement(spec, *u) @ field_displacement(spec, *v)
    rhs = tau_power(spec.p, field_symplectic_exponent(u, v)) \
        * field_displacement(spec, u[0] + v[0], u[1] + v[1])
    res = np.abs(lhs - rhs).max()
    if spec.p == 2:
        res = min(res, np.abs(lhs + rhs).max())
    return float(res)


def tensor_isomorphism(spec, basis=None, exhaustive=True):
    """Permutation unitary S with S|x> = |x_1> ... |x_K>, x_i = tr(x * dual_i),
    plus a report verifying that displacements factor through S as tensor
    products of p-dimensional displacements.

    Factor i of D_(u1,u2) carries indices (tr(u1*dual_i), tr(u2*e_i)).
    Returns (S, report); report["max_residual"] is exact for odd p and
    sign-minimized for p = 2.
    """
    p, k = spec.p, spec.k
    q = spec.order
    if basis is None:
        basis = [gf.element(spec, [0] * d + [1]) for d in range(k)]
    dual = gf.dual_basis(basis)
    S = np.zeros((q, q), dtype=complex)
    for x in gf.elements(spec):
        digits = [gf.field_trace(x * dual[i]) for i in range(k)]
        tidx = 0
        for d in digits:
            tidx = tidx * p + d
        S[tidx, x.index] = 1.0
    pairs = [(u1, u2) for u1 in gf.elements(spec) for u2 in gf.elements(spec)]
    if not exhaustive and q > 16:
        pairs = pairs[:: max(1, len(pairs) // 64)]
    worst = 0.0
    for u1, u2 in pairs:
        lhs = S @ field_displacement(spec, u1, u2) @ S.conj().T
        factors = [displacement(p, gf.field_trace(u1 * dual[i]), gf.field_trace(u2 * basis[i]))
                   for i in range(k)]
        rhs = factors[0]
        for f in factors[1:]:
            rhs = np.kron(rhs, f)
        res = np.abs(lhs - rhs).max()
        if p == 2:
            res = min(res, np.abs(lhs + rhs).max())
        worst = max(worst, float(res))
    report = {"max_residual": worst, "pairs_checked": len(pairs),
              "phase_minimized": p == 2}
    return S, report
