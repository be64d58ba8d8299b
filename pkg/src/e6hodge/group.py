"""W(E6) enumerated as permutations of the 27 lines.

Composition is (g o h)(l) = g(h(l)); for permutation arrays that is ``g[h]``.
Elements are indexed in lexicographic order of their permutation words.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import lattice
from .chartable import CLASS_NAMES, GROUP_ORDER, classification_keys
from .linalg import det as exact_det

log = logging.getLogger(__name__)

CACHE_VERSION = 1
CACHE_ENV = "E6HODGE_CACHE_DIR"
N_LINES = 27
# a1..a6 and b1 span Pic(S) over Q, so the images of the first 7 lines
# determine an element, and sorting on them sorts whole permutation words.
_KEY_WEIGHTS = N_LINES ** np.arange(6, -1, -1, dtype=np.int64)


class ConsistencyError(RuntimeError):
    """An internal mathematical invariant failed; signals a modeling bug."""


IDENTITY = np.arange(N_LINES, dtype=np.uint8)


def compose(g: np.ndarray, h: np.ndarray) -> np.ndarray:
    return g[h]


def inverse(g: np.ndarray) -> np.ndarray:
    return np.argsort(g).astype(np.uint8)


def perm_order(g: np.ndarray) -> int:
    k, cur = 1, g
    while not np.array_equal(cur, IDENTITY):
        cur = g[cur]
        k += 1
    return k


def cycle_type(perm) -> tuple[int, ...]:
    """Cycle lengths of a permutation of range(n), sorted descending."""
    perm = list(perm)
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if not seen[s]:
            n, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                n += 1
            out.append(n)
    return tuple(sorted(out, reverse=True))


def lattice_matrix(g: np.ndarray) -> list[list[int]]:
    """7x7 integer matrix of the isometry of Pic(S) inducing the permutation g.

    Column j is the image of the j-th basis vector of (h, e1, ..., e6).
    """
    L = lattice.lines()
    c12 = lattice.LINE_INDEX["c12"]
    img_e = [L[int(g[i])] for i in range(6)]
    img_h = lattice.add(lattice.add(L[int(g[c12])], img_e[0]), img_e[1])
    cols = [img_h] + img_e
    return [[cols[j][i] for j in range(7)] for i in range(7)]


def closure(gens: list[np.ndarray], limit: int = GROUP_ORDER) -> tuple[list[bytes], list[int]]:
    """Breadth-first closure of permutation generators.

    Returns the elements (as 27-byte words) and the parity of a word length in
    the generators for each.  Raises ConsistencyError past ``limit`` elements.
    """
    start = IDENTITY.tobytes()
    seen = {start: 0}
    order = [start]
    queue = deque([start])
    gen_arrays = [np.asarray(g, dtype=np.uint8) for g in gens]
    while queue:
        w = queue.popleft()
        x = np.frombuffer(w, dtype=np.uint8)
        par = seen[w]
        for g in gen_arrays:
            y = g[x].tobytes()
            if y not in seen:
                seen[y] = par ^ 1
                order.append(y)
                queue.append(y)
                if len(order) > limit:
                    raise ConsistencyError(f"closure exceeded {limit} elements")
    return order, [seen[w] for w in order]


def generated_order(gens: list[np.ndarray]) -> int:
    return len(closure(gens)[0])


@dataclass(frozen=True)
class ClassInfo:
    name: str
    size: int
    centralizer_order: int
    representative: int


class GroupTable:
    """All 51840 elements with lookup, products, inverses and class labels."""

    def __init__(self, perms: np.ndarray, det: np.ndarray):
        self.perms = np.ascontiguousarray(perms, dtype=np.uint8)
        self.det = np.asarray(det, dtype=np.int8)
        self.keys = self._keys(self.perms)
        if len(self.perms) != GROUP_ORDER:
            raise ConsistencyError(f"group has {len(self.perms)} elements")
        if np.any(np.diff(self.keys) <= 0):
            raise ConsistencyError("elements not strictly sorted or first-7 key not injective")
        self.identity = int(self.index_of(IDENTITY))
        self.generators = [int(self.index_of(lattice.perm_of_reflection(r))) for r in lattice.fundamental_roots()]

    def __len__(self) -> int:
        return len(self.perms)

    @staticmethod
    def _keys(perms: np.ndarray) -> np.ndarray:
        return perms[..., :7].astype(np.int64) @ _KEY_WEIGHTS

    def index_of(self, perms: np.ndarray):
        """Element index (or array of indices) for permutation word(s)."""
        perms = np.asarray(perms, dtype=np.uint8)
        k = self._keys(perms)
        idx = np.searchsorted(self.keys, k)
        idx = np.minimum(idx, len(self.keys) - 1)
        if not np.all(self.keys[idx] == k) or not np.array_equal(self.perms[idx], perms):
            raise KeyError("permutation is not in W(E6)")
        return idx

    def mul(self, i: int, j: int) -> int:
        return int(self.index_of(self.perms[i][self.perms[j]]))

    def inv(self, i: int) -> int:
        return int(self.index_of(inverse(self.perms[i])))

    @cached_property
    def inverses(self) -> np.ndarray:
        return self.index_of(np.argsort(self.perms, axis=1).astype(np.uint8))

    def left_mul_all(self, u: int, idx: np.ndarray) -> np.ndarray:
        """Indices of u o x for every x in idx."""
        return self.index_of(self.perms[u][self.perms[idx]])

    def right_mul_all(self, idx: np.ndarray, g: int) -> np.ndarray:
        """Indices of x o g for every x in idx."""
        return self.index_of(self.perms[idx][:, self.perms[g]])

    def power(self, i: int, k: int) -> int:
        cur = IDENTITY
        g = self.perms[i]
        for _ in range(k):
            cur = g[cur]
        return int(self.index_of(cur))

    # -- invariants -------------------------------------------------------

    @cached_property
    def orders(self) -> np.ndarray:
        P = self.perms.astype(np.intp)
        cur = P.copy()
        out = np.zeros(len(P), dtype=np.int64)
        for k in range(1, 13):
            done = (out == 0) & np.all(cur == IDENTITY, axis=1)
            out[done] = k
            cur = np.take_along_axis(P, cur, axis=1)
        if np.any(out == 0):
            raise ConsistencyError("element order outside 1..12")
        return out

    @cached_property
    def fixed_lines(self) -> np.ndarray:
        return np.sum(self.perms == IDENTITY, axis=1)

    @cached_property
    def traces(self) -> np.ndarray:
        """Trace on the E6 lattice (7x7 lattice trace minus 1 for K)."""
        L = lattice.line_array()
        P = self.perms
        img_e = L[P[:, :6]]  # (N, 6, 7)
        c12 = lattice.LINE_INDEX["c12"]
        img_h = L[P[:, c12]] + img_e[:, 0] + img_e[:, 1]
        tr = img_h[:, 0] + sum(img_e[:, i, i + 1] for i in range(6))
        return tr - 1

    @cached_property
    def class_index(self) -> np.ndarray:
        """Position in CLASS_NAMES of every element's class."""
        table = classification_keys()
        out = np.full(len(self), -1, dtype=np.int64)
        keys = np.stack([self.orders, self.det.astype(np.int64), self.traces, self.fixed_lines], axis=1)
        uniq, inv = np.unique(keys, axis=0, return_inverse=True)
        for u, key in enumerate(map(tuple, uniq.tolist())):
            if key not in table:
                raise ConsistencyError(f"classification key {key} not in the table")
            out[inv.reshape(-1) == u] = CLASS_NAMES.index(table[key])
        return out

    def classify(self, g) -> str:
        """Atlas class name of an element (index or permutation word)."""
        if isinstance(g, (int, np.integer)):
            return CLASS_NAMES[int(self.class_index[int(g)])]
        return classify_perm(np.asarray(g, dtype=np.uint8))

    def class_members(self, c: str) -> np.ndarray:
        return np.flatnonzero(self.class_index == CLASS_NAMES.index(c))

    @cached_property
    def _class_data(self) -> dict[str, ClassInfo]:
        out = {}
        for k, c in enumerate(CLASS_NAMES):
            members = np.flatnonzero(self.class_index == k)
            if len(members) == 0 or GROUP_ORDER % len(members):
                raise ConsistencyError(f"class {c} has {len(members)} elements")
            out[c] = ClassInfo(c, len(members), GROUP_ORDER // len(members), int(members[0]))
        if sum(ci.size for ci in out.values()) != GROUP_ORDER:
            raise ConsistencyError("class sizes do not sum to the group order")
        return out

    def class_data(self) -> dict[str, ClassInfo]:
        return dict(self._class_data)

    def representative(self, c: str) -> int:
        return self._class_data[c].representative

    def power_maps(self, primes=(2, 3, 5)) -> dict[int, dict[str, str]]:
        return {
            p: {c: self.classify(self.power(self.representative(c), p)) for c in CLASS_NAMES}
            for p in primes
        }

    def checksum(self) -> str:
        h = hashlib.sha256()
        h.update(self.perms.tobytes())
        h.update(self.det.tobytes())
        return h.hexdigest()


def classify_perm(g: np.ndarray) -> str:
    """Class name of a single permutation word via exact lattice invariants."""
    M = lattice_matrix(g)
    key = (
        perm_order(g),
        exact_det(M),
        sum(M[i][i] for i in range(7)) - 1,
        int(np.sum(g == IDENTITY)),
    )
    try:
        return classification_keys()[key]
    except KeyError:
        raise ConsistencyError(f"classification key {key} not in the table") from None


def generate() -> GroupTable:
    """Close the six fundamental reflections; elements sorted by permutation word."""
    gens = [lattice.perm_of_reflection(r) for r in lattice.fundamental_roots()]
    words, parity = closure(gens)
    if len(words) != GROUP_ORDER:
        raise ConsistencyError(f"closure has {len(words)} elements, expected {GROUP_ORDER}")
    perms = np.frombuffer(b"".join(words), dtype=np.uint8).reshape(-1, N_LINES)
    det = 1 - 2 * np.asarray(parity, dtype=np.int8)
    order = np.lexsort(perms[:, ::-1].T)
    return GroupTable(perms[order], det[order])


# -- cache ----------------------------------------------------------------------

def default_cache_path() -> Path:
    base = os.environ.get(CACHE_ENV) or os.path.join(os.path.expanduser("~"), ".cache", "e6hodge")
    return Path(base) / f"weyl_e6_v{CACHE_VERSION}.npz"


def save_cache(table: GroupTable, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "version": CACHE_VERSION,
        "sha256": table.checksum(),
        "class_sizes": {c: ci.size for c, ci in table.class_data().items()},
    }
    tmp = path.with_name(path.name + ".tmp.npz")
    np.savez_compressed(
        tmp,
        perms=table.perms,
        det=table.det,
        class_index=table.class_index.astype(np.uint8),
        meta=np.frombuffer(json.dumps(meta, sort_keys=True).encode(), dtype=np.uint8),
    )
    os.replace(tmp, path)


def load_cache(path: Path) -> GroupTable | None:
    try:
        with np.load(path) as z:
            meta = json.loads(z["meta"].tobytes().decode())
            if meta.get("version") != CACHE_VERSION:
                return None
            table = GroupTable(z["perms"], z["det"])
    except (OSError, KeyError, ValueError, ConsistencyError):
        return None
    if table.checksum() != meta.get("sha256"):
        log.warning("group cache %s failed its checksum; rebuilding", path)
        return None
    sizes = {c: ci.size for c, ci in table.class_data().items()}
    if sizes != meta.get("class_sizes"):
        log.warning("group cache %s has stale class data; rebuilding", path)
        return None
    return table


_TABLE: GroupTable | None = None


def get_table(cache: str | Path | None = None, rebuild: bool = False, use_cache: bool = True) -> GroupTable:
    """The process-wide group table, loaded from or written to the cache."""
    global _TABLE
    if _TABLE is not None and not rebuild:
        return _TABLE
    path = Path(cache) if cache else default_cache_path()
    table = None
    if use_cache and not rebuild and path.exists():
        table = load_cache(path)
    if table is None:
        log.info("generating W(E6)")
        table = generate()
        if use_cache:
            try:
                save_cache(table, path)
            except OSError as exc:
                log.warning("could not write group cache %s: %s", path, exc)
    _TABLE = table
    return table
