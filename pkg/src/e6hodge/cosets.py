"""Subgroups of W(E6), their left-coset actions, and ramification profiles."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import lattice
from .chartable import CLASS_NAMES, GROUP_ORDER, class_order
from .group import ConsistencyError, GroupTable, cycle_type as perm_cycle_type

PRIME_CLASSES = ("2a", "2b", "2c", "2d", "3a", "3b", "3c", "5a")


class DescriptorError(ValueError):
    pass


@dataclass(eq=False)
class Subgroup:
    """A subgroup given by its sorted member indices in a GroupTable."""

    table: GroupTable = field(repr=False)
    members: np.ndarray = field(repr=False)
    descriptor: dict

    def __post_init__(self):
        self.members = np.unique(np.asarray(self.members, dtype=np.int64))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return GROUP_ORDER // self.order

    def __contains__(self, i) -> bool:
        k = np.searchsorted(self.members, i)
        return bool(k < len(self.members) and self.members[k] == i)

    def is_subgroup(self) -> bool:
        T = self.table
        if T.identity not in self or GROUP_ORDER % self.order:
            return False
        if not np.all(np.isin(T.inverses[self.members], self.members)):
            return False
        for g in self.generators:
            if not np.all(np.isin(T.right_mul_all(self.members, g), self.members)):
                return False
        return True

    @cached_property
    def generators(self) -> list[int]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        span = np.array([self.table.identity])
        for x in self.members:
            if len(span) == self.order:
                break
            k = np.searchsorted(span, x)
            if k < len(span) and span[k] == x:
                continue
            gens.append(int(x))
            span = _close(self.table, gens)
        if len(span) != self.order:
            raise ConsistencyError("member set is not closed under products")
        return gens

    @cached_property
    def cosets(self) -> "CosetSpace":
        return CosetSpace(self)

    def class_counts(self) -> dict[str, int]:
        idx = self.table.class_index[self.members]
        counts = np.bincount(idx, minlength=len(CLASS_NAMES))
        return {c: int(counts[k]) for k, c in enumerate(CLASS_NAMES)}

    def to_json(self) -> str:
        return json.dumps(self.descriptor, sort_keys=True)


def _close(T: GroupTable, gens: list[int]) -> np.ndarray:
    elems = np.array([T.identity])
    frontier = elems
    while len(frontier):
        cand = np.unique(np.concatenate([T.right_mul_all(frontier, g) for g in gens]))
        frontier = np.setdiff1d(cand, elems, assume_unique=True)
        elems = np.union1d(elems, frontier)
    return elems


# -- constructions --------------------------------------------------------------

def full_group(T: GroupTable) -> Subgroup:
    return Subgroup(T, np.arange(len(T)), {"kind": "full"})


def stab_line(T: GroupTable, line) -> Subgroup:
    l = lattice.parse_line(line)
    members = np.flatnonzero(T.perms[:, l] == l)
    return Subgroup(T, members, {"kind": "stab_line", "line": lattice.LINE_NAMES[l]})


def stab_double_six(T: GroupTable, root) -> Subgroup:
    """Stabilizer of the pair {r, -r}, i.e. of the double six of r."""
    r = lattice.parse_root(root)
    a, b = lattice.double_sixer(r)[0]
    L = lattice.line_array()
    img = L[T.perms[:, b]] - L[T.perms[:, a]]
    rv = np.array(r)
    members = np.flatnonzero(np.all(img == rv, axis=1) | np.all(img == -rv, axis=1))
    return Subgroup(T, members, {"kind": "stab_double_six", "root": list(r)})


def stab_tritangent(T: GroupTable, l1, l2, l3) -> Subgroup:
    trip = sorted(lattice.parse_line(x) for x in (l1, l2, l3))
    if tuple(trip) not in set(lattice.tritangents()):
        raise DescriptorError(f"{[lattice.LINE_NAMES[i] for i in trip]} is not a tritangent trio")
    imgs = np.sort(T.perms[:, trip], axis=1)
    members = np.flatnonzero(np.all(imgs == np.array(trip), axis=1))
    return Subgroup(T, members, {"kind": "stab_tritangent", "lines": [lattice.LINE_NAMES[i] for i in trip]})


def cyclic(T: GroupTable, c: str) -> Subgroup:
    """<w_c> for the fixed representative of class c."""
    w = T.representative(_check_class(c))
    members = [T.identity]
    cur = w
    while cur != T.identity:
        members.append(cur)
        cur = T.mul(w, cur)
    return Subgroup(T, members, {"kind": "cyclic", "class": c})


def centralizer(T: GroupTable, c: str) -> Subgroup:
    w = T.perms[T.representative(_check_class(c))]
    gw = T.perms[:, w]          # g o w
    wg = w[T.perms]             # w o g
    members = np.flatnonzero(np.all(gw == wg, axis=1))
    return Subgroup(T, members, {"kind": "centralizer", "class": c})


def _check_class(c: str) -> str:
    if c not in CLASS_NAMES:
        raise DescriptorError(f"unknown class {c!r}")
    return c


G36_DEFAULT_ROOT = "amax"
G45_DEFAULT_TRIPLE = ("a1", "b2", "c12")


def g27(T: GroupTable) -> Subgroup:
    return stab_line(T, "a6")


def g36(T: GroupTable) -> Subgroup:
    return stab_double_six(T, G36_DEFAULT_ROOT)


def g45(T: GroupTable) -> Subgroup:
    return stab_tritangent(T, *G45_DEFAULT_TRIPLE)


def parse_descriptor(desc) -> dict:
    """Normalize a descriptor: a dict, a JSON string, or a shorthand like
    ``g27``, ``full``, ``cyclic:2c``, ``centralizer:3b``, ``stab_line:a1``,
    ``stab_double_six:a12``, ``stab_tritangent:a1,b2,c12``."""
    if isinstance(desc, dict):
        return dict(desc)
    s = str(desc).strip()
    if s.startswith("{"):
        try:
            d = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"bad descriptor JSON: {exc}") from None
        if not isinstance(d, dict):
            raise DescriptorError("descriptor JSON must be an object")
        return d
    if s in ("g27", "G27"):
        return {"kind": "stab_line", "line": "a6"}
    if s in ("g36", "G36"):
        return {"kind": "stab_double_six", "root": G36_DEFAULT_ROOT}
    if s in ("g45", "G45"):
        return {"kind": "stab_tritangent", "lines": list(G45_DEFAULT_TRIPLE)}
    if s in ("full", "W"):
        return {"kind": "full"}
    kind, _, arg = s.partition(":")
    if kind in ("cyclic", "centralizer"):
        return {"kind": kind, "class": arg}
    if kind == "stab_line":
        return {"kind": kind, "line": arg}
    if kind == "stab_double_six":
        return {"kind": kind, "root": arg}
    if kind == "stab_tritangent":
        return {"kind": kind, "lines": arg.split(",")}
    raise DescriptorError(f"unknown subgroup descriptor {desc!r}")


def build_subgroup(T: GroupTable, desc) -> Subgroup:
    d = parse_descriptor(desc)
    kind = d.get("kind")
    try:
        if kind == "full":
            return full_group(T)
        if kind == "stab_line":
            return stab_line(T, d["line"])
        if kind == "stab_double_six":
            return stab_double_six(T, d["root"])
        if kind == "stab_tritangent":
            lines = d["lines"]
            if len(lines) != 3:
                raise DescriptorError("a tritangent needs exactly three lines")
            return stab_tritangent(T, *lines)
        if kind == "cyclic":
            return cyclic(T, d["class"])
        if kind == "centralizer":
            return centralizer(T, d["class"])
    except (KeyError, ValueError) as exc:
        if isinstance(exc, DescriptorError):
            raise
        raise DescriptorError(f"bad descriptor {d}: {exc}") from None
    raise DescriptorError(f"unknown subgroup kind {kind!r}")


# -- coset action -----------------------------------------------------------------

class CosetSpace:
    """Left cosets xG, each named by the least element index it contains."""

    def __init__(self, G: Subgroup):
        self.G = G
        T = G.table
        n = len(T)
        src = np.arange(n)
        rows, cols = [], []
        for g in G.generators:
            rows.append(src)
            cols.append(T.right_mul_all(src, g))
        if rows:
            graph = coo_matrix(
                (np.ones(n * len(rows), dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))),
                shape=(n, n),
            )
            ncomp, comp = connected_components(graph, directed=True, connection="weak")
        else:
            ncomp, comp = n, src
        if ncomp * G.order != n:
            raise ConsistencyError(f"{ncomp} cosets for a subgroup of order {G.order}")
        # canonical representative = minimum element index in each coset
        reps = np.full(ncomp, n, dtype=np.int64)
        np.minimum.at(reps, comp, src)
        order = np.argsort(reps)
        self.reps = reps[order]
        pos = np.empty(ncomp, dtype=np.int64)
        pos[order] = np.arange(ncomp)
        self.coset_of = pos[comp]           # element index -> coset position
        self._actions: dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.reps)

    def action(self, u: int) -> np.ndarray:
        """The permutation xG -> (u x)G of coset positions."""
        if u not in self._actions:
            T = self.G.table
            self._actions[u] = self.coset_of[T.left_mul_all(u, self.reps)]
        return self._actions[u]

    def cycle_type(self, u: int) -> tuple[int, ...]:
        return perm_cycle_type(self.action(u).tolist())

    def fixed_points(self, u: int) -> int:
        return int(np.sum(self.action(u) == np.arange(len(self))))


@dataclass(frozen=True)
class RamificationProfile:
    a2c: int
    b2c: int
    a2b: int
    b2b: int
    a3b: int
    b3b: int
    d: int

    def __post_init__(self):
        if not (2 * self.a2c + self.b2c == 2 * self.a2b + self.b2b == 3 * self.a3b + self.b3b == self.d):
            raise ConsistencyError(f"profile {self} violates 2a+b = 3a+b = d")

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.a2c, self.b2c, self.a2b, self.b2b, self.a3b, self.b3b)

    @property
    def avec(self) -> tuple[int, int, int]:
        return (self.a2c, self.a2b, self.a3b)


def cycle_type(c: str, G: Subgroup) -> tuple[int, ...]:
    """Orbit lengths of the class-c representative on W/G, descending."""
    return G.cosets.cycle_type(G.table.representative(_check_class(c)))


def _p_counts(ct: tuple[int, ...], p: int) -> tuple[int, int]:
    if any(x not in (1, p) for x in ct):
        raise ConsistencyError(f"cycle type {ct} is not of the form {p}^a 1^b")
    return ct.count(p), ct.count(1)


def lemma_cycle_type(c: str, G: Subgroup) -> tuple[int, int]:
    """(a, b) with cycle type p^a 1^b from counting class members inside G."""
    p = class_order(_check_class(c))
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ValueError(f"class {c} does not have prime order")
    T = G.table
    info = T.class_data()[c]
    inside = G.class_counts()[c]
    num = inside * info.centralizer_order
    if num % G.order:
        raise ConsistencyError(f"b for {c} on {G.descriptor} is not integral")
    b = num // G.order
    if (G.index - b) % p:
        raise ConsistencyError(f"a for {c} on {G.descriptor} is not integral")
    return (G.index - b) // p, b


def profile(G: Subgroup, check: bool = True) -> RamificationProfile:
    """(a2c, b2c, a2b, b2b, a3b, b3b) by the orbit route, checked against class counting."""
    vals = []
    for c in ("2c", "2b", "3b"):
        ab = _p_counts(cycle_type(c, G), class_order(c))
        if check and ab != lemma_cycle_type(c, G):
            raise ConsistencyError(f"orbit and counting routes disagree for {c} on {G.descriptor}")
        vals.extend(ab)
    return RamificationProfile(*vals, d=G.index)


def genus(G: Subgroup) -> int:
    return 12 * profile(G).a2c - G.index + 1


def permutation_character(G: Subgroup) -> dict[str, int]:
    """Number of cosets fixed by each class representative."""
    sp = G.cosets
    T = G.table
    return {c: sp.fixed_points(T.representative(c)) for c in CLASS_NAMES}

