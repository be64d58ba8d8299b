"""The Picard lattice I^{1,6} of a cubic surface: 27 lines, 72 roots, reflections.

Vectors are 7-tuples of Python ints in the basis (h, e1, ..., e6) with the
diagonal form (+1, -1, ..., -1).  Lines are indexed 0..26 in the order
a1..a6, b1..b6, c12, c13, ..., c56.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Sequence

import numpy as np

Vec = tuple[int, ...]

RANK = 7
FORM = (1, -1, -1, -1, -1, -1, -1)
K: Vec = (-3, 1, 1, 1, 1, 1, 1)
H: Vec = (1, 0, 0, 0, 0, 0, 0)


def e(i: int) -> Vec:
    v = [0] * RANK
    v[i] = 1
    return tuple(v)


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(f * a * b for f, a, b in zip(FORM, x, y))


def add(x: Vec, y: Vec) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vec, y: Vec) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def scale(c: int, x: Vec) -> Vec:
    return tuple(c * a for a in x)


def neg(x: Vec) -> Vec:
    return tuple(-a for a in x)


# -- lines -------------------------------------------------------------------

PAIRS = list(itertools.combinations(range(1, 7), 2))
LINE_NAMES: tuple[str, ...] = tuple(
    [f"a{i}" for i in range(1, 7)]
    + [f"b{i}" for i in range(1, 7)]
    + [f"c{i}{j}" for i, j in PAIRS]
)
LINE_INDEX = {name: k for k, name in enumerate(LINE_NAMES)}


def _line_vec(name: str) -> Vec:
    kind, digits = name[0], [int(c) for c in name[1:]]
    if kind == "a":
        return e(digits[0])
    if kind == "b":
        i = digits[0]
        return tuple([2] + [0 if j == i else -1 for j in range(1, 7)])
    i, j = digits
    return sub(sub(H, e(i)), e(j))


@lru_cache(maxsize=None)
def lines() -> tuple[Vec, ...]:
    """The 27 exceptional vectors in canonical order."""
    return tuple(_line_vec(n) for n in LINE_NAMES)


@lru_cache(maxsize=None)
def line_array() -> np.ndarray:
    return np.array(lines(), dtype=np.int64)


def line_of(vec: Sequence[int]) -> int:
    """Index of the line with vector ``vec``; ValueError if it is not a line."""
    try:
        return _LINE_LOOKUP[tuple(vec)]
    except KeyError:
        raise ValueError(f"{tuple(vec)} is not a line vector") from None


_LINE_LOOKUP = {v: k for k, v in enumerate(lines())}


def parse_line(spec: str | int) -> int:
    if isinstance(spec, int):
        if not 0 <= spec < 27:
            raise ValueError(f"line index out of range: {spec}")
        return spec
    s = spec.strip()
    if s in LINE_INDEX:
        return LINE_INDEX[s]
    m = re.fullmatch(r"c(\d)(\d)", s)
    if m and m.group(1) > m.group(2):
        return LINE_INDEX[f"c{m.group(2)}{m.group(1)}"]
    raise ValueError(f"unknown line name {spec!r}")


@lru_cache(maxsize=None)
def incidence_matrix() -> np.ndarray:
    """27x27 0/1 matrix; entry 1 iff the two distinct lines meet."""
    L = line_array()
    G = L * np.array(FORM) @ L.T
    return (G == 1).astype(np.int64)


def incident(l1: int, l2: int) -> bool:
    if l1 == l2:
        raise ValueError("incidence is only defined for distinct lines")
    return pairing(lines()[l1], lines()[l2]) == 1


def tritangents() -> list[tuple[int, int, int]]:
    """All triples of pairwise incident lines summing to -K."""
    L = lines()
    out = []
    for t in itertools.combinations(range(27), 3):
        if add(add(L[t[0]], L[t[1]]), L[t[2]]) == neg(K):
            out.append(t)
    return out


# -- roots -------------------------------------------------------------------

def is_root(v: Sequence[int]) -> bool:
    return len(v) == RANK and pairing(v, v) == -2 and pairing(v, K) == 0


def normalize_root(v: Vec) -> Vec:
    """Sign-normalize so the first nonzero coordinate is positive."""
    for c in v:
        if c:
            return v if c > 0 else neg(v)
    raise ValueError("zero vector")


@lru_cache(maxsize=None)
def all_roots() -> tuple[Vec, ...]:
    """All 72 roots, sorted."""
    out = set()
    for i, j in itertools.permutations(range(1, 7), 2):
        out.add(sub(e(i), e(j)))
    for trip in itertools.combinations(range(1, 7), 3):
        v = H
        for i in trip:
            v = sub(v, e(i))
        out.add(v)
        out.add(neg(v))
    top = (2, -1, -1, -1, -1, -1, -1)
    out.add(top)
    out.add(neg(top))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def positive_roots() -> tuple[Vec, ...]:
    """The 36 sign-normalized roots, sorted."""
    return tuple(sorted({normalize_root(r) for r in all_roots()}))


def fundamental_roots() -> list[Vec]:
    """omega_i = e_i - e_{i+1} (i = 1..5) and omega_6 = h - e1 - e2 - e3."""
    out = [sub(e(i), e(i + 1)) for i in range(1, 6)]
    out.append((1, -1, -1, -1, 0, 0, 0))
    return out


def parse_root(spec) -> Vec:
    """Root from a 7-int list or an alias.

    Aliases: ``a12``/``alpha12`` -> e1 - e2, ``a135``/``alpha135`` -> h - e1 - e3 - e5,
    ``amax``/``alpha_max`` -> 2h - e1 - ... - e6; a leading ``-`` negates.
    """
    if isinstance(spec, str):
        s = spec.strip().replace("α", "alpha")
        sign = 1
        if s.startswith("-"):
            sign, s = -1, s[1:]
        s = re.sub(r"^alpha_?", "a", s)
        if s in ("amax", "a_max"):
            v: Vec = (2, -1, -1, -1, -1, -1, -1)
        else:
            m = re.fullmatch(r"a(\d{2,3})", s)
            if not m:
                raise ValueError(f"unknown root alias {spec!r}")
            idx = [int(c) for c in m.group(1)]
            if len(set(idx)) != len(idx) or not all(1 <= i <= 6 for i in idx):
                raise ValueError(f"bad root alias {spec!r}")
            if len(idx) == 2:
                v = sub(e(idx[0]), e(idx[1]))
            else:
                v = H
                for i in idx:
                    v = sub(v, e(i))
        v = scale(sign, v)
    else:
        v = tuple(int(c) for c in spec)
    if not is_root(v):
        raise ValueError(f"{v} is not a root")
    return v


def reflect(r: Vec, x: Vec) -> Vec:
    """x + (x, r) r; the reflection in the root r (r.r = -2)."""
    return add(x, scale(pairing(x, r), r))


def double_sixer(r: Vec) -> list[tuple[int, int]]:
    """The six pairs (l, l + r) over the lines l with (l, r) = +1."""
    L = lines()
    out = []
    for k, v in enumerate(L):
        if pairing(v, r) == 1:
            out.append((k, line_of(add(v, r))))
    return out


def perm_of_reflection(r: Vec) -> np.ndarray:
    """The permutation of line indices induced by reflecting in r."""
    return np.array([line_of(reflect(r, v)) for v in lines()], dtype=np.uint8)


def eigen_multiplicities(M: np.ndarray, eigenvalues: Sequence[int]) -> dict[int, int]:
    """Multiplicity of each integer eigenvalue as the nullity of M - lam I."""
    from .linalg import rank

    n = M.shape[0]
    out = {}
    for lam in eigenvalues:
        A = [[int(M[i, j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        out[lam] = n - rank(A)
    return out
