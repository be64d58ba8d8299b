import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from e6hodge import lattice as L


def _sweep(norm, hrange, erange):
    out = []
    for h in hrange:
        for es in itertools.product(erange, repeat=6):
            v = (h, *es)
            if L.pairing(v, v) == norm and L.pairing(v, L.K) == (-1 if norm == -1 else 0):
                out.append(v)
    return set(out)


def test_lines_match_brute_force_sweep():
    found = _sweep(-1, range(0, 4), range(-2, 3))
    assert found == set(L.lines())
    assert len(found) == 27


def test_roots_match_brute_force_sweep():
    found = _sweep(-2, range(-3, 4), range(-2, 3))
    assert found == set(L.all_roots())
    assert len(found) == 72
    assert len(L.positive_roots()) == 36


def test_line_names_and_order():
    assert L.LINE_NAMES[:6] == ("a1", "a2", "a3", "a4", "a5", "a6")
    assert L.LINE_NAMES[6] == "b1"
    assert L.LINE_NAMES[12] == "c12" and L.LINE_NAMES[-1] == "c56"
    assert L.lines()[L.parse_line("a1")] == (0, 1, 0, 0, 0, 0, 0)
    assert L.lines()[L.parse_line("b1")] == (2, 0, -1, -1, -1, -1, -1)
    assert L.lines()[L.parse_line("c12")] == (1, -1, -1, 0, 0, 0, 0)


def test_incidence_row_sums_and_diagonal():
    A = L.incidence_matrix()
    assert (A.sum(axis=1) == 10).all()
    assert (np.diag(A) == 0).all()
    assert (A == A.T).all()


def test_incidence_eigenvalues():
    A = L.incidence_matrix()
    assert L.eigen_multiplicities(A, (10, 1, -5)) == {10: 1, 1: 20, -5: 6}
    ev = np.round(np.linalg.eigvalsh(A.astype(float))).astype(int)
    assert sorted(ev.tolist()) == [-5] * 6 + [1] * 20 + [10]


def test_incident_rejects_equal_lines():
    with pytest.raises(ValueError):
        L.incident(3, 3)


def test_tritangents():
    tri = L.tritangents()
    assert len(tri) == 45
    A = L.incidence_matrix()
    for a, b, c in tri:
        assert A[a, b] and A[b, c] and A[a, c]
    assert (L.parse_line("a1"), L.parse_line("b2"), L.parse_line("c12")) in {tuple(sorted(t)) for t in tri}


vec7 = st.tuples(*[st.integers(-20, 20)] * 7)


@given(st.sampled_from(L.all_roots()), vec7, vec7)
def test_reflection_is_an_involutive_isometry(r, x, y):
    sx, sy = L.reflect(r, x), L.reflect(r, y)
    assert L.pairing(sx, sy) == L.pairing(x, y)
    assert L.reflect(r, sx) == x
    assert L.reflect(r, L.K) == L.K
    assert L.reflect(r, r) == L.neg(r)


@settings(max_examples=50)
@given(st.sampled_from(L.all_roots()))
def test_reflection_permutes_lines(r):
    perm = L.perm_of_reflection(r)
    assert sorted(perm.tolist()) == list(range(27))
    ds = L.double_sixer(r)
    assert len(ds) == 6
    moved = int((perm != np.arange(27)).sum())
    assert moved == 12


def test_alpha12_swaps_a1_a2():
    r = L.parse_root("alpha12")
    assert r == (0, 1, -1, 0, 0, 0, 0)
    perm = L.perm_of_reflection(r)
    a1, a2 = L.parse_line("a1"), L.parse_line("a2")
    assert perm[a1] == a2 and perm[a2] == a1
    pairs = {frozenset(L.LINE_NAMES[i] for i in p) for p in L.double_sixer(r)}
    assert pairs == {frozenset(p) for p in [("a1", "a2"), ("b1", "b2"), ("c13", "c23"),
                                            ("c14", "c24"), ("c15", "c25"), ("c16", "c26")]}


def test_double_sixer_orientation():
    r = L.parse_root("a135")
    for a, b in L.double_sixer(r):
        la, lb = L.lines()[a], L.lines()[b]
        assert L.pairing(la, r) == 1
        assert L.add(la, r) == lb


def test_parse_root_aliases():
    assert L.parse_root("a135") == (1, -1, 0, -1, 0, -1, 0)
    assert L.parse_root("amax") == (2, -1, -1, -1, -1, -1, -1)
    assert L.parse_root("-a12") == (0, -1, 1, 0, 0, 0, 0)
    assert L.parse_root([0, 0, 0, 0, 0, 1, -1]) == L.parse_root("a56")
    with pytest.raises(ValueError):
        L.parse_root([1, 0, 0, 0, 0, 0, 0])
