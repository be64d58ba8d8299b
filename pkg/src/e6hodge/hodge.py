"""Hodge classes of W(E6)-covers in the (D0, Dsyz, Dazy) basis, exactly over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import cosets
from .chartable import CLASS_NAMES, Report, load_resource, table as char_table
from .group import ConsistencyError, GroupTable
from .linalg import det, inverse, matvec, transpose

MULT_DET = 400771988324352


@dataclass(frozen=True)
class DivisorClass:
    """Coefficients on D0, Dsyz, Dazy, modulo the remaining boundary divisors."""

    c0: Fraction = Fraction(0)
    csyz: Fraction = Fraction(0)
    cazy: Fraction = Fraction(0)

    def __post_init__(self):
        for f in ("c0", "csyz", "cazy"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.c0 + other.c0, self.csyz + other.csyz, self.cazy + other.cazy)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.c0 - other.c0, self.csyz - other.csyz, self.cazy - other.cazy)

    def __mul__(self, k) -> "DivisorClass":
        k = Fraction(k)
        return DivisorClass(k * self.c0, k * self.csyz, k * self.cazy)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.csyz, self.cazy)

    def as_strings(self) -> list[str]:
        return [str(x) for x in self.as_tuple()]

    @classmethod
    def parse(cls, items: Sequence) -> "DivisorClass":
        return cls(*(Fraction(str(x)) for x in items))


def lambda_subgroup(a2c, a2b=None, a3b=None) -> DivisorClass:
    """Hodge class of the degree-d cover attached to a subgroup.

    Accepts a RamificationProfile, an (a2c, a2b, a3b) triple, or three ints.
    """
    if a2b is None:
        if isinstance(a2c, cosets.RamificationProfile):
            a2c, a2b, a3b = a2c.avec
        else:
            a2c, a2b, a3b = a2c
    x = Fraction(66 * a2c, 23)
    return DivisorClass(
        Fraction(11 * a2c, 92),
        (x - Fraction(3 * a2b, 2)) / 6,
        (x - Fraction(8 * a3b, 3)) / 8,
    )


def e_class_coefficient(a: int, d: int, i: int, mu: Sequence[int], ramification: int | None = None) -> Fraction:
    """Coefficient of the boundary class E_{i:mu} in the Hodge class on the
    labelled Hurwitz space: r/12 * (3a/2 * i(24-i)/23 - d + sum 1/mu_j).

    r defaults to lcm(mu). That is the order of the node monodromy only when it
    acts faithfully on the sheets; pass the order explicitly otherwise.
    """
    mu = list(mu)
    if not 2 <= i <= 12:
        raise ValueError(f"i must lie in 2..12, got {i}")
    if any(m <= 0 for m in mu) or sum(mu) != d:
        raise ValueError(f"{mu} is not a partition of {d}")
    inv_mu = sum(Fraction(1, m) for m in mu)
    r = lcm(*mu) if ramification is None else ramification
    return Fraction(r, 12) * (Fraction(3 * a, 2) * Fraction(i * (24 - i), 23) - d + inv_mu)


# E0 = q*(D0/2), Esyz = q*(Dsyz), Eazy = q*(Dazy/2)
E_TO_D = (Fraction(1, 2), Fraction(1), Fraction(1, 2))


def lambda_from_e_classes(a2c: int, a2b: int, a3b: int, d: int) -> DivisorClass:
    """lambda_subgroup recomputed from the three i = 2 boundary coefficients.

    The node monodromies are trivial, 2b and 3b, of orders 1, 2 and 3.
    """
    b2b, b3b = d - 2 * a2b, d - 3 * a3b
    coeffs = (
        e_class_coefficient(a2c, d, 2, [1] * d, 1),
        e_class_coefficient(a2c, d, 2, [2] * a2b + [1] * b2b, 2),
        e_class_coefficient(a2c, d, 2, [3] * a3b + [1] * b3b, 3),
    )
    return DivisorClass(*(c * f for c, f in zip(coeffs, E_TO_D)))


def invariant_dim(chi: str, G: cosets.Subgroup) -> int:
    """dim of the G-invariants of the irreducible chi: the average of chi over G."""
    T = char_table()
    row = T.row(chi)
    counts = G.class_counts()
    total = sum(n * row[T.class_pos(c)] for c, n in counts.items())
    if total % G.order or total < 0:
        raise ConsistencyError(f"<{chi}, 1_G> = {total}/{G.order} is not a nonnegative integer")
    return total // G.order


@dataclass(frozen=True)
class MultiplicityMatrix:
    """entries[i][alpha] = dim rho_i^{W_alpha} (rows: characters, columns: classes)."""

    characters: tuple[str, ...]
    classes: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def det(self) -> int:
        return det([list(r) for r in self.entries])

    def column(self, c: str) -> list[int]:
        k = self.classes.index(c)
        return [r[k] for r in self.entries]


@dataclass(frozen=True)
class Table1Row:
    character: str
    rank: int
    lam: DivisorClass
    avec: tuple[int, int, int]

    def as_dict(self) -> dict:
        return {
            "character": self.character,
            "rank": self.rank,
            "lambda": self.lam.as_strings(),
            "avec": list(self.avec),
        }


class HodgeCalculator:
    """Runs the 25-cyclic-subgroup pipeline on a group table."""

    def __init__(self, T: GroupTable):
        self.T = T
        self.chars = char_table().characters
        self.cyclic = {c: cosets.cyclic(T, c) for c in CLASS_NAMES}
        self._profiles: dict[str, cosets.RamificationProfile] = {}

    def profile(self, c: str) -> cosets.RamificationProfile:
        if c not in self._profiles:
            self._profiles[c] = cosets.profile(self.cyclic[c])
        return self._profiles[c]

    def genus(self, c: str) -> int:
        p = self.profile(c)
        return 12 * p.a2c - p.d + 1

    def mult_matrix(self) -> MultiplicityMatrix:
        entries = tuple(
            tuple(invariant_dim(chi, self.cyclic[c]) for c in CLASS_NAMES) for chi in self.chars
        )
        return MultiplicityMatrix(self.chars, CLASS_NAMES, entries)

    def solve_table1(self) -> list[Table1Row]:
        """Invert  x(B_alpha) = sum_i M[i][alpha] x(chi_i)  for ranks, lambdas and a-vectors."""
        M = self.mult_matrix()
        Minv_t = inverse(transpose([list(r) for r in M.entries]))

        def solve(vec):
            return matvec(Minv_t, vec)

        ranks = solve([self.genus(c) for c in CLASS_NAMES])
        lams = [solve([lambda_subgroup(self.profile(c)).as_tuple()[k] for c in CLASS_NAMES]) for k in range(3)]
        avecs = [solve([self.profile(c).avec[k] for c in CLASS_NAMES]) for k in range(3)]

        rows = []
        for i, chi in enumerate(self.chars):
            ints = [ranks[i]] + [a[i] for a in avecs]
            if any(x.denominator != 1 for x in ints):
                raise ConsistencyError(f"non-integral rank or a-vector for {chi}: {ints}")
            rows.append(Table1Row(
                chi,
                int(ranks[i]),
                DivisorClass(lams[0][i], lams[1][i], lams[2][i]),
                tuple(int(a[i]) for a in avecs),
            ))
        return rows


def golden_table1() -> list[Table1Row]:
    return [
        Table1Row(r["character"], r["rank"], DivisorClass.parse(r["lambda"]), tuple(r["avec"]))
        for r in load_resource("table1.json")["rows"]
    ]


def diff_table1(computed: Iterable[Table1Row], golden: Iterable[Table1Row] | None = None) -> list[str]:
    """Itemized differences between two rank/lambda/a-vector tables (empty if equal)."""
    golden = list(golden) if golden is not None else golden_table1()
    computed = list(computed)
    out = []
    if [r.character for r in computed] != [r.character for r in golden]:
        out.append("character order differs")
    for c, g in zip(computed, golden):
        if c.rank != g.rank:
            out.append(f"{c.character}: rank {c.rank} != {g.rank}")
        for name, x, y in zip(("D0", "Dsyz", "Dazy"), c.lam.as_tuple(), g.lam.as_tuple()):
            if x != y:
                out.append(f"{c.character}: {name} {x} != {y}")
        for name, x, y in zip(("a2c", "a2b", "a3b"), c.avec, g.avec):
            if x != y:
                out.append(f"{c.character}: {name} {x} != {y}")
    return out


def identity_suite(rows: list[Table1Row], calc: HodgeCalculator | None = None,
                   profiles: dict[str, cosets.RamificationProfile] | None = None) -> Report:
    """Headline identities relating the 25 classes to each other and to covers.

    ``profiles`` maps "g27", "g36", "g45" to their ramification profiles.
    """
    rep = Report("hodge identities")
    T = char_table()
    by = {r.character: r for r in rows}
    half_syz = DivisorClass(0, Fraction(1, 2), 0)

    lam27 = lambda_subgroup(profiles["g27"]) if profiles else lambda_subgroup(6, 10, 6)
    rep.add("6*lambda(6) = lambda_G27 - Dsyz/2", 6 * by["6"].lam == lam27 - half_syz,
            f"{(6 * by['6'].lam).as_strings()} vs {(lam27 - half_syz).as_strings()}")
    rep.add("lambda(1) = 0", by["1"].lam == DivisorClass() and by["1"].rank == 0)

    if profiles:
        for key, parts in (("g27", ("6", "20b")), ("g36", ("15b", "20b")), ("g45", ("24", "20b"))):
            lhs = by[parts[0]].lam + by[parts[1]].lam
            rhs = lambda_subgroup(profiles[key])
            rep.add(f"lambda({parts[0]}) + lambda({parts[1]}) = lambda_{key}", lhs == rhs,
                    f"{lhs.as_strings()} vs {rhs.as_strings()}")
            g = 12 * profiles[key].a2c - profiles[key].d + 1
            rep.add(f"rank({parts[0]}) + rank({parts[1]}) = genus({key})",
                    by[parts[0]].rank + by[parts[1]].rank == g, f"genus {g}")

    bad = []
    for r in rows:
        want = 12 * r.avec[0] - T(r.character, "1a") + (1 if r.character == "1" else 0)
        if r.rank != want:
            bad.append(f"{r.character}: {r.rank} != {want}")
    rep.add("rank = 12 a2c - dim + mult_1", not bad, "; ".join(bad))

    bad = []
    lam_sign = by["1bar"].lam
    for r in rows:
        tw = _twist_name(r.character)
        s = T(r.character, "2c")
        if by[tw].lam != r.lam + s * lam_sign:
            bad.append(f"lambda({tw}) != lambda({r.character}) + {s} lambda(1bar)")
        want = (r.avec[0] + s, r.avec[1], r.avec[2])
        if by[tw].avec != want:
            bad.append(f"a({tw}) = {by[tw].avec} != {want}")
    rep.add("twist by 1bar", not bad, "; ".join(bad))

    bad = [r.character for r in rows if lambda_subgroup(r.avec) != r.lam]
    rep.add("lambda(chi) = lambda_subgroup(a(chi))", not bad, ", ".join(bad))

    if calc is not None:
        M = calc.mult_matrix()
        bad = []
        for k, c in enumerate(CLASS_NAMES):
            g = sum(M.entries[i][k] * rows[i].rank for i in range(len(rows)))
            if g != calc.genus(c):
                bad.append(f"{c}: {g} != {calc.genus(c)}")
        rep.add("genus(B_alpha) = sum_i M[i][alpha] rank_i", not bad, "; ".join(bad))
    return rep


def _twist_name(chi: str) -> str:
    """Name of chi tensor 1bar (chi itself when self-paired)."""
    names = char_table().characters
    if chi.endswith("bar"):
        return chi[:-3]
    return chi + "bar" if chi + "bar" in names else chi
