"""Mutually unbiased bases: prime-dimension constructions, prime-power
constructions from abelian subgroups of displacement operators, unitary
operator bases built from complete sets, and the dimension-4 landscape
of maximal abelian two-qubit subgroups.

Bases are (n, n) complex arrays whose *columns* are the basis vectors.
"""

from concurrent.futures import ThreadPoolExecutor
import itertools
import math

import numpy as np

from . import combinat, gf, weyl

EPS_MAT = 1e-10
EPS_MUB = 1e-9


def unbiasedness_check(bases, tol: float = EPS_MUB) -> dict:
    """Check that a family of orthonormal bases is mutually unbiased.

    Args:
        bases: sequence of (n, n) arrays, columns holding the vectors.
        tol: largest allowed deviation of cross overlaps squared from 1/n.

    Returns:
        dict with ``max_deviation`` (max over cross pairs of
        | |<e|f>|^2 - 1/n |) and ``pass``.

    Raises:
        ValueError: if some member is not an orthonormal basis, naming it.
    """
    mats = [np.asarray(b, dtype=complex) for b in bases]
    if not mats:
        raise ValueError("empty basis family")
    n = mats[0].shape[0]
    for i, b in enumerate(mats):
        if b.shape != (n, n):
            raise ValueError("basis %d has mismatched dimension" % i)
        if np.abs(b.conj().T @ b - np.eye(n)).max() > EPS_MAT:
            raise ValueError("basis %d is not orthonormal" % i)
    dev = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            overlaps = np.abs(mats[i].conj().T @ mats[j]) ** 2
            dev = max(dev, float(np.abs(overlaps - 1.0 / n).max()))
    passed = dev < tol
    # a dimension n admits at most n + 1 mutually unbiased bases
    assert not passed or len(mats) <= n + 1
    return {"n": n, "bases": len(mats), "max_deviation": dev, "pass": passed}


def ivanovic_mubs(p: int):
    """Complete set of p + 1 mutually unbiased bases for odd prime p.

    Basis 0 is computational, bases x = 1..p-1 have components
    omega^((r-a)^2 / (2x)) / sqrt(p) with the inverse taken mod p, and
    the last basis is the Fourier basis.  Column a of basis x is an
    eigenvector of the displacement D_{x,1} with eigenvalue omega^a
    (D_{0,1} for the computational basis, D_{p-1,0} for the Fourier one).
    """
    if not gf.is_prime(p):
        raise ValueError("p must be prime")
    if p == 2:
        raise ValueError("p must be odd (the exponent contains 1/2)")
    if p > 31:
        raise ValueError("p too large")
    pows = np.exp(2j * np.pi * np.arange(p) / p)
    idx = np.arange(p)
    diff2 = np.subtract.outer(idx, idx) ** 2
    bases = [np.eye(p, dtype=complex)]
    for x in range(1, p):
        inv2x = pow(2 * x, p - 2, p)
        bases.append(pows[(diff2 * inv2x) % p] / np.sqrt(p))
    bases.append(combinat.fourier_matrix(p))

    # eigenvector property fixes the construction; check it
    gens = [weyl.displacement(p, 0, 1)]
    gens += [weyl.displacement(p, x, 1) for x in range(1, p)]
    gens.append(weyl.displacement(p, p - 1, 0))
    for b, d in zip(bases, gens):
        res = np.abs(d @ b - b * pows[None, :]).max()
        if res > EPS_MAT:
            raise RuntimeError("eigenvector property violated: %g" % res)
    return bases


def qubit_mubs():
    """The three qubit bases: computational plus the two conjugate ones
    (eigenbases of Z, X and Y; the six columns form an octahedron on the
    Bloch sphere)."""
    s = 1 / np.sqrt(2)
    return [np.eye(2, dtype=complex),
            np.array([[s, s], [s, -s]], dtype=complex),
            np.array([[s, s], [1j * s, -1j * s]], dtype=complex)]


def canonicalize_basis(basis, tol: float = 1e-8) -> np.ndarray:
    """Fix per-vector phases (first component above tol made positive
    real) and sort columns lexicographically, so bases that agree up to
    these freedoms compare equal."""
    b = np.array(basis, dtype=complex)
    n, m = b.shape
    for j in range(m):
        col = b[:, j]
        for k in range(n):
            if abs(col[k]) > tol:
                b[:, j] = col * (col[k].conjugate() / abs(col[k]))
                break
    keys = []
    for j in range(m):
        keys.append(tuple(x for c in b[:, j]
                          for x in (round(c.real, 8) + 0.0,
                                    round(c.imag, 8) + 0.0)))
    order = sorted(range(m), key=lambda j: keys[j])
    return b[:, order]


def _joint_eigenbasis(mats, seed_key, validate_tol=1e-8):
    """Common eigenbasis of a family of commuting normal matrices, via a
    random Hermitian combination of both quadratures; eigenvectors are
    re-validated against every family member."""
    n = mats[0].shape[0]
    for attempt in range(5):
        rng = np.random.default_rng(list(seed_key) + [attempt])
        h = np.zeros((n, n), dtype=complex)
        for m in mats:
            a, b = rng.normal(size=2)
            h += a * (m + m.conj().T) + b * 1j * (m - m.conj().T)
        _, vecs = np.linalg.eigh(h)
        worst = 0.0
        for j in range(n):
            v = vecs[:, j]
            for m in mats:
                lam = np.vdot(v, m @ v)
                worst = max(worst, float(np.linalg.norm(m @ v - lam * v)))
            if worst > validate_tol:
                break
        if worst <= validate_tol:
            return vecs
    raise ValueError(
        "degenerate joint eigenbasis (residual %g after %d attempts)"
        % (worst, attempt + 1))


def subgroup_eigenbases(p: int, k: int, seed: int = 7):
    """Complete MUB set in dimension p^k from the eigenbases of the
    p^k + 1 maximal abelian subgroups of field displacements.

    One subgroup per line through the origin of the field phase space:
    direction (0, 1) first, then (1, e) for e running over the field in
    index order.  Bases are canonicalized (phase + column order).
    """
    if not gf.is_prime(p):
        raise ValueError("p must be prime")
    q = p ** k
    if q > 32:
        raise ValueError("field too large")
    spec = gf.field_make(p, k)
    els = gf.elements(spec)
    z, o = gf.zero(spec), gf.one(spec)
    directions = [(z, o)] + [(o, e) for e in els]
    bases = []
    for di, (d1, d2) in enumerate(directions):
        mats = [weyl.field_displacement(spec, t * d1, t * d2)
                for t in els if t != z]
        vecs = _joint_eigenbasis(mats, (seed, di))
        bases.append(canonicalize_basis(vecs))
    report = unbiasedness_check(bases)
    if not report["pass"]:
        raise RuntimeError("subgroup eigenbases fail unbiasedness: %g"
                           % report["max_deviation"])
    return bases


def bbrv_flower(bases):
    """Turn a complete MUB set into a partitioned unitary operator basis.

    For each basis b returns the petal of n commuting unitaries
    U_r = sum_i omega^(r i) |b_i><b_i|, r = 0..n-1 (U_0 is the identity,
    shared by all petals).  Verifies that the identity plus the n^2 - 1
    nonidentity elements form an orthogonal unitary operator basis:
    Tr(U^dag V) = n delta.
    """
    mats = [np.asarray(b, dtype=complex) for b in bases]
    n = mats[0].shape[0]
    if len(mats) != n + 1:
        raise ValueError("expected a complete set of %d bases, got %d"
                         % (n + 1, len(mats)))
    w = np.exp(2j * np.pi * np.arange(n) / n)
    petals = []
    for b in mats:
        petals.append([b @ np.diag(w ** r) @ b.conj().T for r in range(n)])
    ops = [np.eye(n, dtype=complex)]
    for petal in petals:
        ops.extend(petal[1:])
    vecs = np.array([u.reshape(n * n) / np.sqrt(n) for u in ops])
    gram = vecs.conj() @ vecs.T
    res = float(np.abs(gram - np.eye(n * n)).max())
    if res > 1e-8:
        raise ValueError("petal union is not a unitary operator basis "
                         "(residual %g)" % res)
    return petals


# -- dimension 4: the fifteen maximal abelian two-qubit subgroups --------

_PAULI = {
    "1": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_XZ_BITS = {"1": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}

# conventional numbering: petals 1-6 are the rows and columns of the
# magic square of observables, 7-15 the remaining subgroups
_PETAL_TABLE = [
    ("1Z", "Z1", "ZZ"), ("X1", "1X", "XX"), ("XZ", "ZX", "YY"),
    ("1Z", "X1", "XZ"), ("Z1", "1X", "ZX"), ("ZZ", "XX", "YY"),
    ("1Z", "Y1", "YZ"), ("Z1", "1Y", "ZY"), ("X1", "1Y", "XY"),
    ("1X", "Y1", "YX"), ("1Y", "Y1", "YY"), ("XY", "YX", "ZZ"),
    ("XZ", "YX", "ZY"), ("XY", "YZ", "ZX"), ("XX", "YZ", "ZY"),
]


def pauli_word_matrix(word: str) -> np.ndarray:
    """Tensor product of single-qubit operators named by the word, e.g.
    "XZ" -> X (x) Z."""
    m = _PAULI[word[0]]
    for ch in word[1:]:
        m = np.kron(m, _PAULI[ch])
    return m


def _word_vector(word):
    # (x1, z1, x2, z2) over F_2
    (x1, z1), (x2, z2) = _XZ_BITS[word[0]], _XZ_BITS[word[1]]
    return (x1, z1, x2, z2)


def _words_commute(w1, w2):
    a, b = _word_vector(w1), _word_vector(w2)
    form = (a[0] * b[1] + a[1] * b[0] + a[2] * b[3] + a[3] * b[2]) % 2
    return form == 0


def _word_product(w1, w2):
    a, b = _word_vector(w1), _word_vector(w2)
    s = tuple((x + y) % 2 for x, y in zip(a, b))
    inv = {v: k for k, v in _XZ_BITS.items()}
    return inv[(s[0], s[1])] + inv[(s[2], s[3])]


def mermin_landscape(seed: int = 11) -> dict:
    """Enumerate the maximal abelian subgroups ("petals") of the
    two-qubit Pauli group modulo phases and every partition of the 15
    nonidentity words into five disjoint petals ("flowers").

    Returns a dict with:
        petals: 15 petals as tuples of two-letter words, in the
            conventional order (petals 1-6 are the magic-square ones);
        flowers: the 6 partitions, each a sorted tuple of five 1-based
            petal indices;
        eigenbases: one canonical (4, 4) joint eigenbasis per petal;
        mub_sets: per flower, the five eigenbases (a complete MUB set);
        stabilizer_states: (60, 4) array of the distinct eigenvectors.
    """
    words = ["".join(t) for t in itertools.product("1XYZ", repeat=2)
             if t != ("1", "1")]
    found = set()
    for w1, w2 in itertools.combinations(words, 2):
        if not _words_commute(w1, w2):
            continue
        w3 = _word_product(w1, w2)
        if w3 == "11":
            continue
        found.add(frozenset((w1, w2, w3)))
    if len(found) != 15:
        raise RuntimeError("expected 15 maximal abelian subgroups, got %d"
                           % len(found))
    table = [frozenset(t) for t in _PETAL_TABLE]
    if found != set(table):
        raise RuntimeError("subgroup enumeration disagrees with the "
                           "conventional table")
    petals = list(_PETAL_TABLE)

    flowers = []
    universe = frozenset(words)
    sets = [frozenset(t) for t in petals]

    def extend(chosen, covered):
        if covered == universe:
            flowers.append(tuple(i + 1 for i in chosen))
            return
        start = chosen[-1] + 1 if chosen else 0
        for i in range(start, 15):
            if sets[i] & covered:
                continue
            extend(chosen + [i], covered | sets[i])

    extend([], frozenset())
    flowers.sort()
    if len(flowers) != 6:
        raise RuntimeError("expected 6 flowers, got %d" % len(flowers))

    eigenbases = []
    for i, petal in enumerate(petals):
        mats = [pauli_word_matrix(w) for w in petal]
        vecs = _joint_eigenbasis(mats, (seed, i))
        eigenbases.append(canonicalize_basis(vecs))

    mub_sets = []
    for flower in flowers:
        family = [eigenbases[i - 1] for i in flower]
        report = unbiasedness_check(family)
        if not report["pass"]:
            raise RuntimeError("flower %s fails unbiasedness: %g"
                               % (flower, report["max_deviation"]))
        mub_sets.append(family)

    states = {}
    for b in eigenbases:
        for j in range(4):
            key = tuple(x for c in b[:, j]
                        for x in (round(c.real, 6) + 0.0,
                                  round(c.imag, 6) + 0.0))
            states.setdefault(key, b[:, j])
    stabilizer_states = np.array([states[k] for k in sorted(states)])

    return {"petals": petals, "flowers": flowers, "eigenbases": eigenbases,
            "mub_sets": mub_sets, "stabilizer_states": stabilizer_states}


def stabilizer_count(p: int, k: int) -> int:
    """Number of stabilizer states in dimension p^k:
    p^k * prod_{i=1..k} (p^i + 1)."""
    if not gf.is_prime(p):
        raise ValueError("p must be prime")
    if p ** k > 2 ** 12:
        raise ValueError("dimension too large")
    count = p ** k
    for i in range(1, k + 1):
        count *= p ** i + 1
    return count


def maximal_isotropic_count(p: int, k: int) -> int:
    """Brute-force count of maximal totally isotropic subspaces of the
    symplectic space F_p^{2k} (each is the phase-space footprint of one
    stabilizer basis)."""
    if p ** k > 8:
        raise ValueError("too large for brute force")
    vectors = list(itertools.product(range(p), repeat=2 * k))

    def form(u, v):
        s = 0
        for i in range(k):
            s += u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]
        return s % p

    def add(u, v):
        return tuple((a + b) % p for a, b in zip(u, v))

    zero = vectors[0]
    found = set()

    def extend(basis, span):
        if len(basis) == k:
            found.add(frozenset(span))
            return
        for v in vectors:
            if v in span:
                continue
            if any(form(v, b) != 0 for b in basis):
                continue
            new_span = set(span)
            for s in list(span):
                w = s
                for _ in range(p - 1):
                    w = add(w, v)
                    new_span.add(w)
            extend(basis + [v], new_span)

    extend([], {zero})
    return len(found)


# -- exploratory search for vectors unbiased to two bases in dimension 6 --

def _descend6(v, rows, tol):
    c = 1.0 / 6.0
    amps = rows @ v
    d = np.abs(amps) ** 2 - c
    f = float(np.sum(d * d))
    step = 0.1
    for _ in range(4000):
        if f < tol * 1e-4:
            break
        g = 2.0 * (rows.conj().T @ (d * amps))
        g -= v * np.vdot(v, g)
        gn2 = float(np.real(np.vdot(g, g)))
        if gn2 < 1e-28:
            break
        eta = step
        improved = False
        while eta > 1e-13:
            w = v - eta * g
            w /= np.linalg.norm(w)
            aw = rows @ w
            dw = np.abs(aw) ** 2 - c
            fw = float(np.sum(dw * dw))
            if fw < f - 1e-4 * eta * gn2:
                v, amps, d, f = w, aw, dw, fw
                step = min(eta * 2.0, 1.0)
                improved = True
                break
            eta /= 2.0
        if not improved:
            break
    return v, f


def search_unbiased6(restarts: int = 24, seed: int = 0, threads: int = 1,
                     tol: float = 1e-18) -> dict:
    """Local search for unit vectors in dimension 6 unbiased to both the
    computational and the Fourier basis.  Reports only what it finds:
    the number of distinct solutions below tol among the restarts.
    """
    rows = np.vstack([np.eye(6, dtype=complex),
                      combinat.fourier_matrix(6).conj().T])

    def run(r):
        rng = np.random.default_rng([seed, r])
        v = rng.normal(size=6) + 1j * rng.normal(size=6)
        v /= np.linalg.norm(v)
        return _descend6(v, rows, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(r) for r in range(restarts)]

    hits = []
    for v, f in results:
        if f < tol:
            # at a solution every |v_i| = 1/sqrt(6), so v[0] fixes the phase
            ph = v[0]
            hits.append((v * (ph.conjugate() / abs(ph)), f))
    hits.sort(key=lambda vf: tuple(
        x for c in vf[0] for x in (round(c.real, 6), round(c.imag, 6))))
    vectors = []
    for v, _ in hits:
        if all(np.abs(v - u).max() > 1e-6 for u in vectors):
            vectors.append(v)
    min_value = min((f for _, f in results), default=math.inf)
    return {"count": len(vectors),
            "vectors": np.array(vectors),
            "min_value": min_value,
            "restarts": restarts}
