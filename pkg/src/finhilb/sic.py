"""SIC fiducials: the quartic overlap objective, seeded random-restart
search on the unit sphere, orbit verification, and the exact
dimension-4 fiducial with its overlap-phase fingerprint."""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import clifford, gf, weyl

EPS_MAT = 1e-10
EPS_SIC = 1e-8

_FTOL = 1e-30
_STALL_WINDOW = 100
_STALL_RTOL = 1e-12
_MAX_ITER = 50000
_POLISH_TRIGGER = 1e-8


def _check_unit(psi):
    # gate loose enough for finite-difference probes of the raw quartic
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(psi) - 1.0) > 1e-5:
        raise ValueError("psi is not a unit vector")
    return psi


def f_sic(psi) -> float:
    """Sum over (r, s) != (0, 0) of (|<psi|D_{r,s}|psi>|^2 - 1/(N+1))^2;
    zero exactly when the displacement orbit of psi is a SIC."""
    psi = _check_unit(psi)
    return _value(psi, weyl.displacement_table(psi.size))


def f_sic_grad(psi) -> np.ndarray:
    """Gradient of the raw quartic, encoded as a complex vector:
    df/dRe(psi_j) is the real part of entry j, df/dIm(psi_j) the
    imaginary part."""
    psi = _check_unit(psi)
    return _value_grad(psi, weyl.displacement_table(psi.size))[1]


def _value(psi, table):
    n = psi.size
    c = (table @ psi) @ psi.conj()
    d = np.abs(c) ** 2 - 1.0 / (n + 1)
    d[0] = 0.0
    return float(d @ d)


def _value_grad(psi, table):
    n = psi.size
    dpsi = table @ psi
    c = dpsi @ psi.conj()
    d = np.abs(c) ** 2 - 1.0 / (n + 1)
    d[0] = 0.0
    f = float(d @ d)
    hpsi = np.einsum("kji,j->ki", table.conj(), psi)
    g = 4.0 * ((d * c.conj()) @ dpsi + (d * c) @ hpsi)
    return f, g


def _descend(psi, table):
    """Projected gradient descent with a BB1 step and Armijo backtracking."""
    f, g = _value_grad(psi, table)
    step = 1.0
    prev = None
    f_ref, i_ref = f, 0
    for it in range(_MAX_ITER):
        if f < _POLISH_TRIGGER:
            break
        gt = g - np.vdot(psi, g).real * psi
        gn2 = float(np.vdot(gt, gt).real)
        if gn2 == 0.0:
            break
        if prev is not None:
            s = psi - prev[0]
            y = g - prev[1]
            sy = float(np.vdot(s, y).real)
            if sy > 0.0:
                step = float(np.clip(float(np.vdot(s, s).real) / sy, 1e-8, 1e3))
            else:
                step = min(step * 2.0, 1e3)
        eta = step
        for _ in range(60):
            cand = psi - eta * gt
            cand = cand / np.linalg.norm(cand)
            fc = _value(cand, table)
            if fc <= f - 1e-4 * eta * gn2:
                break
            eta *= 0.5
        else:
            break
        prev = (psi, g)
        psi = cand
        f, g = _value_grad(psi, table)
        if it - i_ref >= _STALL_WINDOW:
            if f_ref - f <= _STALL_RTOL * max(f_ref, 1e-300):
                break
            f_ref, i_ref = f, it
    return psi, f


def _residual_jacobian(psi, table):
    n = psi.size
    dpsi = table @ psi
    hpsi = np.einsum("kji,j->ki", table.conj(), psi)
    c = dpsi @ psi.conj()
    d = np.abs(c) ** 2 - 1.0 / (n + 1)
    d[0] = 0.0
    dc_dx = dpsi + hpsi.conj()
    dc_dy = 1j * (hpsi.conj() - dpsi)
    jac = np.hstack([2.0 * np.real(c.conj()[:, None] * dc_dx),
                     2.0 * np.real(c.conj()[:, None] * dc_dy)])
    jac[0, :] = 0.0
    return d, jac


def _polish(psi, table, f):
    """Gauss-Newton on the residual vector; the least-squares step keeps
    quadratic convergence even where the solution set is a manifold and
    the Jacobian loses rank."""
    for _ in range(40):
        if f < _FTOL:
            break
        d, jac = _residual_jacobian(psi, table)
        delta = np.linalg.lstsq(jac, -d, rcond=None)[0]
        step = delta[:psi.size] + 1j * delta[psi.size:]
        scale = 1.0
        improved = False
        for _ in range(20):
            cand = psi + scale * step
            cand = cand / np.linalg.norm(cand)
            fc = _value(cand, table)
            if fc < f:
                psi, f = cand, fc
                improved = True
                break
            scale *= 0.5
        if not improved:
            break
    return psi, f


def _haar_start(rng, n):
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)


def _zauner_projector(n):
    """Projector onto the largest eigenspace of the standard order-3
    metaplectic rotation, phase-fixed so the rotation cubes to one."""
    u = clifford.metaplectic(np.array([[0, -1], [1, -1]]), n)
    u = u / (np.trace(u @ u @ u) / n) ** (1.0 / 3.0)
    usq = u @ u
    eye = np.eye(n)
    best = None
    for m in range(3):
        lam = np.exp(2j * np.pi * m / 3.0)
        proj = (eye + np.conj(lam) * u + np.conj(lam) ** 2 * usq) / 3.0
        dim = round(float(np.trace(proj).real))
        if best is None or dim > best[0]:
            best = (dim, proj)
    return best[1]


def sic_search(n: int, restarts: int = 32, seed: int = 0, threads: int = 1,
               zauner: bool = False) -> dict:
    """Minimize f_sic from seeded Haar-random starts; the returned
    candidate is the (f, restart index) minimum over all restarts, so the
    result is identical under sequential and threaded execution."""
    if not 2 <= n <= 16:
        raise ValueError("n must be between 2 and 16")
    if restarts < 1:
        raise ValueError("restarts must be positive")
    proj = None
    if zauner:
        if n % 2 == 0 or not gf.is_prime(n):
            raise ValueError("zauner starts require an odd prime dimension")
        proj = _zauner_projector(n)
    table = weyl.displacement_table(n)

    def run(r):
        rng = np.random.default_rng([seed, r])
        psi = _haar_start(rng, n)
        if proj is not None:
            moved = proj @ psi
            nrm = np.linalg.norm(moved)
            if nrm > 1e-6:
                psi = moved / nrm
        psi, f = _descend(psi, table)
        psi, f = _polish(psi, table, f)
        return f, r, psi

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(r) for r in range(restarts)]
    f, r, psi = min(results, key=lambda item: (item[0], item[1]))
    return {"n": n, "fiducial": psi, "fsic": f, "restart": r,
            "restarts": restarts, "seed": seed, "converged": bool(f < 1e-12)}


def sic_orbit(psi) -> np.ndarray:
    """All N^2 displaced copies D_{r,s} psi as rows (row r*N+s)."""
    psi = _check_unit(psi)
    return weyl.displacement_table(psi.size) @ psi


def make_candidate(psi) -> dict:
    psi = _check_unit(psi)
    return {"n": psi.size, "fiducial": psi, "fsic": f_sic(psi)}


def sic_verify(cand, tol_identity: float = EPS_MAT, tol_gram: float = EPS_SIC) -> dict:
    """Resolution of identity for the orbit within tol_identity and every
    cross Gram modulus squared at 1/(N+1) within tol_gram."""
    psi = np.asarray(cand["fiducial"], dtype=complex).reshape(-1)
    n = int(cand["n"])
    if psi.size != n:
        raise ValueError("dimension mismatch")
    psi = _check_unit(psi)
    if "fsic" in cand and abs(float(cand["fsic"]) - f_sic(psi)) > EPS_MAT:
        raise ValueError("cached fsic does not match recomputation")
    orbit = sic_orbit(psi)
    res = np.einsum("ki,kj->ij", orbit, orbit.conj()) / n - np.eye(n)
    identity_dev = float(np.max(np.abs(res)))
    gram2 = np.abs(orbit @ orbit.conj().T) ** 2
    off = ~np.eye(n * n, dtype=bool)
    gram_dev = float(np.max(np.abs(gram2[off] - 1.0 / (n + 1))))
    passed = bool(identity_dev <= tol_identity and gram_dev <= tol_gram)
    return {"n": n, "vectors": n * n, "identityDeviation": identity_dev,
            "gramDeviation": gram_dev, "pass": passed}


def dim4_fiducial() -> np.ndarray:
    """The exact dimension-4 fiducial assembled from nested radicals.
    Unit norm is exact: the squared moduli sum to
    (5 - sqrt5)/10 * (5 + sqrt5)/2 = 1."""
    r5 = math.sqrt(5.0)
    s2 = math.sqrt(2.0)
    w = math.sqrt(2.0 + r5)
    q = math.sqrt((5.0 - r5) / 10.0)
    return (q / 4.0) * np.array([(2.0 + s2) + 1j * s2,
                                 (s2 + 2.0 * w) - 1j * s2,
                                 (2.0 - s2) - 1j * s2,
                                 (s2 - 2.0 * w) - 1j * s2])


def overlap_phases(cand) -> dict:
    """sqrt(N+1) <psi|D_{r,s}|psi> as an (N, N) table; entry (0, 0) is
    nan.  For a verified SIC every defined entry is unit modulus."""
    rep = sic_verify(cand)
    if not rep["pass"]:
        raise ValueError("candidate does not verify as a SIC")
    psi = np.asarray(cand["fiducial"], dtype=complex).reshape(-1)
    n = psi.size
    c = (weyl.displacement_table(n) @ psi) @ psi.conj()
    phases = (math.sqrt(n + 1.0) * c).reshape(n, n)
    phases[0, 0] = complex(np.nan, np.nan)
    dev = float(np.max(np.abs(np.abs(phases.ravel()[1:]) - 1.0)))
    if dev > EPS_SIC:
        raise RuntimeError("overlap phases are not unit modulus: %g" % dev)
    return {"n": n, "phases": phases}


_MINPOLY = (1.0, 0.0, -2.0, 0.0, -2.0, 0.0, -2.0, 0.0, 1.0)


def u_fingerprint(phases) -> dict:
    """u from phase-table entry (0, 1); its deviation from the closed form
    (sqrt5 - 1)/(2 sqrt2) + i sqrt(sqrt5 + 1)/2; and the residuals of
    t^8 - 2t^6 - 2t^4 - 2t^2 + 1 at u and at 1/u, witnessing that both
    are roots, i.e. that u is an algebraic unit at this precision."""
    if int(phases["n"]) != 4:
        raise ValueError("fingerprint requires n = 4")
    u = complex(np.asarray(phases["phases"])[0, 1])
    r5 = math.sqrt(5.0)
    closed = (r5 - 1.0) / (2.0 * math.sqrt(2.0)) + 1j * math.sqrt(r5 + 1.0) / 2.0
    return {"u": u,
            "uDeviation": abs(u - closed),
            "minpolyResidual": abs(np.polyval(_MINPOLY, u)),
            "unitResidual": abs(np.polyval(_MINPOLY, 1.0 / u))}
