import numpy as np
import pytest

from e6hodge import group, lattice
from e6hodge.chartable import CLASS_NAMES, GROUP_ORDER, classification_keys, table
from e6hodge.linalg import det


def test_order_and_class_count(T):
    assert len(T) == GROUP_ORDER
    data = T.class_data()
    assert list(data) == list(CLASS_NAMES)
    assert sum(ci.size for ci in data.values()) == GROUP_ORDER


def test_centralizers_match_column_norms(T):
    # |C(g)| = sum_chi |chi(g)|^2 is independent of the enumeration
    X = table()
    for c, ci in T.class_data().items():
        col = [row[X.class_pos(c)] for row in X.values]
        assert ci.centralizer_order == sum(v * v for v in col)
        assert ci.size * ci.centralizer_order == GROUP_ORDER


def test_known_class_sizes(T):
    data = T.class_data()
    assert data["2c"].size == 36 and data["2c"].centralizer_order == 1440
    assert data["2a"].size == 45
    assert data["2b"].size == 270
    assert data["3b"].size == 240
    assert data["5a"].size == 5184
    assert data["8a"].size == 6480


def test_classification_keys_distinct():
    keys = classification_keys()
    assert len(keys) == 25
    assert set(keys.values()) == set(CLASS_NAMES)


def test_reflections_form_class_2c(T):
    idx = T.index_of(np.stack([lattice.perm_of_reflection(r) for r in lattice.positive_roots()]))
    assert len(set(idx.tolist())) == 36
    assert {T.classify(int(i)) for i in idx} == {"2c"}
    assert set(T.class_members("2c").tolist()) == set(idx.tolist())


def test_products_of_reflection_pairs(T):
    r1, r2, r3 = (lattice.perm_of_reflection(lattice.parse_root(a)) for a in ("a12", "a23", "a34"))
    assert group.classify_perm(group.compose(r1, r2)) == "3b"   # azygetic pair
    assert group.classify_perm(group.compose(r1, r3)) == "2b"   # syzygetic pair
    w1, w2 = (lattice.perm_of_reflection(r) for r in lattice.fundamental_roots()[:2])
    assert group.classify_perm(group.compose(w1, w2)) in ("3b", "2b")


def test_classification_is_conjugation_invariant(T):
    rng = np.random.default_rng(20240601)
    for g, h in rng.integers(0, len(T), size=(1000, 2)):
        g, h = int(g), int(h)
        conj = T.mul(T.mul(h, g), T.inv(h))
        assert T.classify(conj) == T.classify(g)


def test_det_sign_on_classes(T):
    for k, c in enumerate(CLASS_NAMES):
        idx = T.class_members(c)
        assert set(T.det[idx].tolist()) == {1 if k < 15 else -1}


def test_bfs_parity_matches_exact_determinant(T):
    for c in CLASS_NAMES:
        rep = T.representative(c)
        M = group.lattice_matrix(T.perms[rep])
        assert det(M) == int(T.det[rep])


def test_group_operations(T):
    e = T.identity
    rng = np.random.default_rng(7)
    for g, h, k in rng.integers(0, len(T), size=(200, 3)):
        g, h, k = int(g), int(h), int(k)
        assert T.mul(T.mul(g, h), k) == T.mul(g, T.mul(h, k))
        assert T.mul(g, T.inv(g)) == e
        assert np.array_equal(T.perms[T.mul(g, h)], group.compose(T.perms[g], T.perms[h]))
    assert T.power(T.representative("5a"), 5) == e


def test_orders_match_class_names(T):
    for c in CLASS_NAMES:
        assert set(T.orders[T.class_members(c)].tolist()) == {int(c[:-1])}


def test_closure_limit():
    gens = [lattice.perm_of_reflection(r) for r in lattice.fundamental_roots()]
    with pytest.raises(group.ConsistencyError):
        group.closure(gens, limit=1000)
    assert group.generated_order(gens[:2]) == 6


def test_cache_round_trip(T, tmp_path):
    path = tmp_path / "w.npz"
    group.save_cache(T, path)
    loaded = group.load_cache(path)
    assert loaded is not None
    assert loaded.checksum() == T.checksum()
    assert np.array_equal(loaded.class_index, T.class_index)


def test_tampered_cache_is_rejected(T, tmp_path):
    path = tmp_path / "w.npz"
    group.save_cache(T, path)
    with np.load(path) as z:
        parts = {k: z[k].copy() for k in z.files}
    parts["det"][5] *= -1
    np.savez_compressed(path, **parts)
    assert group.load_cache(path) is None


def test_stale_version_is_rejected(T, tmp_path, monkeypatch):
    path = tmp_path / "w.npz"
    group.save_cache(T, path)
    monkeypatch.setattr(group, "CACHE_VERSION", group.CACHE_VERSION + 1)
    assert group.load_cache(path) is None


def test_cache_path_env_override(monkeypatch, tmp_path):
    monkeypatch.setenv(group.CACHE_ENV, str(tmp_path))
    assert group.default_cache_path().parent == tmp_path
