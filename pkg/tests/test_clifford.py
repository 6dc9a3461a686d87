import numpy as np
import pytest

from finhilb import clifford, combinat, weyl


def test_sl2_counts():
    assert len(clifford.sl2_enumerate(3)) == 24
    assert len(clifford.sl2_enumerate(5)) == 120
    assert len(clifford.sl2_enumerate(7)) == 336


def test_sl2_contains_identity_and_closes():
    for p in [3, 5]:
        els = clifford.sl2_enumerate(p)
        keys = {g.tobytes() for g in els}
        assert np.eye(2, dtype=int).tobytes() in keys
        rng = np.random.default_rng(0)
        for _ in range(20):
            g1 = els[rng.integers(len(els))]
            g2 = els[rng.integers(len(els))]
            assert ((g1 @ g2) % p).tobytes() in keys


def test_sl2_guards():
    with pytest.raises(ValueError, match="prime"):
        clifford.sl2_enumerate(9)
    with pytest.raises(ValueError, match="odd"):
        clifford.sl2_enumerate(2)
    with pytest.raises(ValueError, match="too large"):
        clifford.sl2_enumerate(17)


def test_metaplectic_identity():
    u = clifford.metaplectic(np.eye(2, dtype=int), 5)
    assert np.abs(u - np.eye(5)).max() < 1e-14


def test_metaplectic_minus_identity_is_parity():
    p = 5
    u = clifford.metaplectic(-np.eye(2, dtype=int), p)
    parity = np.zeros((p, p))
    for i in range(p):
        parity[(p - i) % p, i] = 1
    assert np.abs(u - parity).max() < 1e-14


def test_metaplectic_rotation_is_fourier():
    g = np.array([[0, -1], [1, 0]])
    u = clifford.metaplectic(g, 3)
    assert np.abs(u - combinat.fourier_matrix(3)).max() < 1e-12


def test_metaplectic_unitary_and_structure():
    for p, g_list in [(3, clifford.sl2_enumerate(3)),
                      (5, clifford.sl2_enumerate(5)[::7])]:
        for g in g_list:
            u = clifford.metaplectic(g, p)
            assert np.abs(u @ u.conj().T - np.eye(p)).max() < 1e-12
            if g[0, 1] % p:
                assert np.abs(np.abs(u) - 1 / np.sqrt(p)).max() < 1e-12
            else:
                nz = np.abs(u) > 1e-12
                assert nz.sum(axis=0).tolist() == [1] * p
                assert np.abs(np.abs(u[nz]) - 1).max() < 1e-12


def test_metaplectic_rejects_bad_input():
    with pytest.raises(ValueError, match="prime"):
        clifford.metaplectic(np.eye(2, dtype=int), 4)
    with pytest.raises(ValueError, match="odd"):
        clifford.metaplectic(np.eye(2, dtype=int), 2)
    with pytest.raises(ValueError, match="symplectic"):
        clifford.metaplectic(np.array([[1, 1], [1, 1]]), 5)


def phase_distance(u, v):
    lam = np.trace(v.conj().T @ u) / u.shape[0]
    if abs(lam) > 1e-12:
        lam /= abs(lam)
    else:
        lam = 1.0
    return np.abs(u - lam * v).max()


def test_metaplectic_projective_representation():
    p = 3
    els = clifford.sl2_enumerate(p)
    mats = [clifford.metaplectic(g, p) for g in els]
    for i, g1 in enumerate(els):
        for j, g2 in enumerate(els):
            u12 = clifford.metaplectic((g1 @ g2) % p, p)
            assert phase_distance(mats[i] @ mats[j], u12) < 1e-10


def test_metaplectic_projective_representation_sampled():
    rng = np.random.default_rng(1)
    for p in [5, 7]:
        els = clifford.sl2_enumerate(p)
        for _ in range(25):
            g1 = els[rng.integers(len(els))]
            g2 = els[rng.integers(len(els))]
            lhs = clifford.metaplectic(g1, p) @ clifford.metaplectic(g2, p)
            rhs = clifford.metaplectic((g1 @ g2) % p, p)
            assert phase_distance(lhs, rhs) < 1e-10


def test_normalizer_exhaustive_p3():
    for g in clifford.sl2_enumerate(3):
        assert clifford.normalizer_residual(g, 3) < 1e-10


def test_normalizer_sampled():
    rng = np.random.default_rng(2)
    for p in [5, 7]:
        els = clifford.sl2_enumerate(p)
        for _ in range(10):
            g = els[rng.integers(len(els))]
            assert clifford.normalizer_residual(g, p) < 1e-10


def test_normalizer_identity_zero():
    assert clifford.normalizer_residual(np.eye(2, dtype=int), 5) < 1e-14


def test_symplectic_form_preserved():
    rng = np.random.default_rng(3)
    for p in [3, 5, 7]:
        els = clifford.sl2_enumerate(p)
        for _ in range(10):
            g = els[rng.integers(len(els))]
            pt1 = tuple(rng.integers(p, size=2))
            pt2 = tuple(rng.integers(p, size=2))
            i1 = weyl.symplectic_exponent(pt1, pt2) % p
            m1 = clifford.sl2_apply(g, pt1, p)
            m2 = clifford.sl2_apply(g, pt2, p)
            assert weyl.symplectic_exponent(m1, m2) % p == i1


def test_order3_counts_and_properties():
    for p, count in [(3, 8), (5, 20), (7, 56)]:
        els = clifford.order3_elements(p)
        assert len(els) == count
        eye = np.eye(2, dtype=int)
        for g in els:
            assert not np.array_equal(g, eye)
            assert np.array_equal((g @ g @ g) % p, eye)
            assert (g[0, 0] + g[1, 1]) % p == p - 1


def test_order3_contains_standard_element():
    keys = {g.tobytes() for g in clifford.order3_elements(3)}
    z = np.array([[0, -1], [1, -1]]) % 3
    assert z.tobytes() in keys


def test_zauner_invariance_basics():
    p = 3
    g = np.array([[0, -1], [1, -1]]) % p
    rng = np.random.default_rng(4)
    psi = rng.normal(size=p) + 1j * rng.normal(size=p)
    r1 = clifford.zauner_invariance(psi, g, p)
    assert 0 <= r1 <= np.sqrt(2) + 1e-12
    rotated = clifford.metaplectic(g, p) @ (psi / np.linalg.norm(psi))
    r2 = clifford.zauner_invariance(rotated, g, p)
    assert abs(r1 - r2) < 1e-10


def test_zauner_invariance_eigenvector_hits_zero():
    p = 5
    g = clifford.order3_elements(p)[0]
    u = clifford.metaplectic(g, p)
    phase = np.trace(u @ u @ u) / p     # U^3 is a global phase
    u = u / phase ** (1 / 3)
    proj = (np.eye(p) + u + u @ u) / 3  # onto the fixed subspace of U
    rng = np.random.default_rng(7)
    psi = proj @ (rng.normal(size=p) + 1j * rng.normal(size=p))
    psi /= np.linalg.norm(psi)
    assert clifford.zauner_invariance(psi, g, p) < 1e-10


def test_zauner_scan_reports_structure():
    rng = np.random.default_rng(5)
    psi = rng.normal(size=3) + 1j * rng.normal(size=3)
    out = clifford.zauner_scan(psi, 3)
    assert out["g"].shape == (2, 2)
    assert len(out["b"]) == 2
    assert 0 <= out["residual"] <= np.sqrt(2) + 1e-12


def test_single_qubit_clifford_group():
    group = clifford.clifford_group_single_qubit()
    assert len(group) == 24
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    s = np.diag([1.0, 1j])
    for m in group:
        assert np.abs(m @ m.conj().T - np.eye(2)).max() < 1e-12
    assert any(phase_distance(m, h) < 1e-9 for m in group)
    assert any(phase_distance(m, s) < 1e-9 for m in group)
    rng = np.random.default_rng(6)
    for _ in range(20):
        m1 = group[rng.integers(24)]
        m2 = group[rng.integers(24)]
        prod = m1 @ m2
        assert sum(phase_distance(prod, m) < 1e-9 for m in group) == 1
