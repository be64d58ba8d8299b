"""The character table of W(E6) as embedded data, plus its validation."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

GROUP_ORDER = 51840


class GoldenDataError(RuntimeError):
    pass


def _canonical_hash(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def load_resource(name: str) -> dict:
    """Load a versioned JSON resource from the package, checking its checksum."""
    raw = json.loads(resources.files("e6hodge.data").joinpath(name).read_text())
    payload = raw["payload"]
    if _canonical_hash(payload) != raw["sha256"]:
        raise GoldenDataError(f"checksum mismatch in {name}")
    return payload


@dataclass(frozen=True)
class CharacterTable:
    classes: tuple[str, ...]
    characters: tuple[str, ...]
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "_ci", {c: k for k, c in enumerate(self.classes)})
        object.__setattr__(self, "_xi", {x: k for k, x in enumerate(self.characters)})

    def class_pos(self, c: str) -> int:
        try:
            return self._ci[c]
        except KeyError:
            raise KeyError(f"unknown class {c!r}") from None

    def char_pos(self, chi: str) -> int:
        chi = normalize_char_name(chi)
        try:
            return self._xi[chi]
        except KeyError:
            raise KeyError(f"unknown character {chi!r}") from None

    def __call__(self, chi: str, c: str) -> int:
        return self.values[self.char_pos(chi)][self.class_pos(c)]

    def row(self, chi: str) -> tuple[int, ...]:
        return self.values[self.char_pos(chi)]

    def to_payload(self) -> dict:
        return {
            "classes": list(self.classes),
            "characters": list(self.characters),
            "values": [list(r) for r in self.values],
        }

    @classmethod
    def from_payload(cls, p: dict) -> "CharacterTable":
        return cls(tuple(p["classes"]), tuple(p["characters"]), tuple(tuple(int(v) for v in r) for r in p["values"]))


def normalize_char_name(chi: str) -> str:
    chi = str(chi).strip()
    # accept a combining overline (U+0304 / U+0305) as the "bar" suffix
    for mark in ("̄", "̅"):
        if mark in chi:
            chi = chi.replace(mark, "") + "bar"
    return chi


@lru_cache(maxsize=None)
def table() -> CharacterTable:
    return CharacterTable.from_payload(load_resource("chartable.json"))


CLASS_NAMES: tuple[str, ...] = (
    "1a", "2a", "2b", "3a", "3b", "3c", "4a", "4b", "5a", "6a", "6b", "6c", "6d",
    "9a", "12a", "2c", "2d", "4c", "4d", "6e", "6f", "6g", "8a", "10a", "12b",
)


def character(chi: str, c: str) -> int:
    return table()(chi, c)


def class_order(name: str) -> int:
    return int(name[:-1])


@lru_cache(maxsize=None)
def classification_keys() -> dict[tuple[int, int, int, int], str]:
    """Map (order, det, trace on E6, fixed lines) to the class name.

    det is the sign character, the E6 trace is the reflection character "6",
    and the number of fixed lines is the permutation character 1 + 6 + 20b.
    """
    T = table()
    keys = {}
    for c in T.classes:
        key = (class_order(c), T("1bar", c), T("6", c), T("1", c) + T("6", c) + T("20b", c))
        if key in keys:
            raise GoldenDataError(f"classes {keys[key]} and {c} share key {key}")
        keys[key] = c
    return keys


@dataclass
class Report:
    """Outcome of a batch of named checks."""

    title: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), detail))
        return ok

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self) -> list[tuple[str, bool, str]]:
        return [c for c in self.checks if not c[1]]

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
            "data": self.data,
        }


def verify_character_table(
    T: CharacterTable,
    sizes: dict[str, int],
    power_maps: dict[int, dict[str, str]] | None = None,
    order: int = GROUP_ORDER,
) -> Report:
    """Orthogonality relations, degree sum, and (optionally) power-map consistency.

    ``power_maps[p][c]`` is the class of the p-th power of an element of class c.
    Consistency means every Adams operation chi(g^p) and every symmetric square
    (chi(g)^2 + chi(g^2))/2 decomposes with integer multiplicities (nonnegative
    for the symmetric square).
    """
    rep = Report("character table")
    n = len(T.characters)
    cls = T.classes
    size = [sizes[c] for c in cls]
    V = T.values

    rep.add("class count", len(cls) == n == 25, f"{len(cls)} classes, {n} characters")
    rep.add("class sizes sum", sum(size) == order, f"sum = {sum(size)}")

    bad = []
    for i in range(n):
        for j in range(i, n):
            s = sum(z * V[i][k] * V[j][k] for k, z in enumerate(size))
            want = order if i == j else 0
            if s != want:
                bad.append(f"<{T.characters[i]},{T.characters[j]}> = {s}/{order}, want {want}/{order}")
    rep.add("row orthogonality", not bad, "; ".join(bad[:5]))

    bad = []
    for a in range(n):
        for b in range(a, n):
            s = sum(V[i][a] * V[i][b] for i in range(n))
            want = order // size[a] if a == b else 0
            if s != want:
                bad.append(f"col({cls[a]})·col({cls[b]}) = {s}, want {want}")
    rep.add("column orthogonality", not bad, "; ".join(bad[:5]))

    deg2 = sum(V[i][cls.index("1a")] ** 2 for i in range(n))
    rep.add("sum of squared degrees", deg2 == order, f"{deg2}")

    one = T.row("1")
    rep.add("trivial row", all(v == 1 for v in one))
    sign = T.row("1bar")
    rep.add("sign row", all(v == (1 if k < 15 else -1) for k, v in enumerate(sign)))

    if power_maps:
        bad = []

        def decompose(f):
            return [
                sum(z * f[k] * V[j][k] for k, z in enumerate(size)) for j in range(n)
            ]

        for p, pm in sorted(power_maps.items()):
            idx = [cls.index(pm[c]) for c in cls]
            for i in range(n):
                f = [V[i][idx[k]] for k in range(n)]
                for j, s in enumerate(decompose(f)):
                    if s % order:
                        bad.append(f"psi^{p}({T.characters[i]}) has non-integral <,{T.characters[j]}>")
        if 2 in power_maps:
            idx = [cls.index(power_maps[2][c]) for c in cls]
            for i in range(n):
                f2 = [V[i][k] ** 2 + V[i][idx[k]] for k in range(n)]
                for j, s in enumerate(decompose(f2)):
                    if s % (2 * order) or s < 0:
                        bad.append(f"Sym^2({T.characters[i]}) has bad multiplicity of {T.characters[j]}")
        rep.add("power-map consistency", not bad, "; ".join(bad[:5]))
    return rep
