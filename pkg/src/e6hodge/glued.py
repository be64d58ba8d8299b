"""The degenerate W(E6)-cover made of 27 rational sheets glued along double sixes.

A section of omega^m(dL) is stored as one numerator polynomial per sheet,
P_i of degree <= D_i = m (n_i - 2) + d, standing for
P_i(t) (dt)^m / prod_s (t - q_is)^m.  Across a node at q joining sheets a, b
the local generator (dt/(t-q))^m has to match up to the sign (-1)^m, giving

    R_a(q)^m P_a(q) = (-1)^m R_b(q)^m P_b(q),   R_i(q) = 1 / prod_{q' != q} (q - q').

The twists of L are all 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Sequence

from . import lattice
from .chartable import GROUP_ORDER, Report
from .group import closure
from .linalg import nullspace, rank

N_SHEETS = 27


class GluingError(ValueError):
    pass


DEFAULT_ROOTS = (
    "a135", "a12", "a23", "a34", "a45", "a56",
    "a16", "a456", "a123", "a346", "a234", "a156",
)


@dataclass(frozen=True)
class GluingSpec:
    roots: tuple[tuple[int, ...], ...]
    points: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(lattice.parse_root(r) for r in self.roots))
        object.__setattr__(self, "points", tuple(Fraction(p) for p in self.points))
        if len(self.roots) != len(self.points):
            raise GluingError("need one point per root")
        if len(set(self.points)) != len(self.points):
            raise GluingError("branch points must be pairwise distinct")

    @classmethod
    def from_json(cls, items: Sequence[dict]) -> "GluingSpec":
        """From the roots-file schema: [{"root": [7 ints] | alias, "point": "p/q"}, ...]."""
        try:
            roots = [it["root"] for it in items]
            points = [Fraction(str(it["point"])) for it in items]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise GluingError(f"malformed roots file: {exc}") from None
        try:
            return cls(tuple(roots), tuple(points))
        except GluingError:
            raise
        except ValueError as exc:
            raise GluingError(str(exc)) from None

    def to_json(self) -> list[dict]:
        return [{"root": list(r), "point": str(p)} for r, p in zip(self.roots, self.points)]

    def with_points(self, points: Sequence) -> "GluingSpec":
        return GluingSpec(self.roots, tuple(points))


def default_spec() -> GluingSpec:
    return GluingSpec(DEFAULT_ROOTS, tuple(range(1, 13)))


def monodromy_full(spec: GluingSpec) -> bool:
    gens = [lattice.perm_of_reflection(r) for r in spec.roots]
    return len(closure(gens)[0]) == GROUP_ORDER


@dataclass(frozen=True)
class Node:
    q: Fraction
    a: int          # sheet l with (l, r) = +1
    b: int          # sheet l + r
    root_index: int


@dataclass
class NodalCover:
    spec: GluingSpec
    nodes: list[Node]
    sheet_points: list[list[Fraction]] = field(default_factory=list)

    @property
    def genus(self) -> int:
        """|E| - |V| + 1 of the dual graph."""
        return len(self.nodes) - N_SHEETS + 1

    @cached_property
    def connected(self) -> bool:
        parent = list(range(N_SHEETS))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for n in self.nodes:
            parent[find(n.a)] = find(n.b)
        return len({find(i) for i in range(N_SHEETS)}) == 1

    def node_count(self, sheet: int) -> int:
        return len(self.sheet_points[sheet])

    def nodes_at(self, j: int) -> list[Node]:
        return [n for n in self.nodes if n.root_index == j]

    def residue_coeff(self, sheet: int, node: Node) -> Fraction:
        """Residue at node.q of dt / prod_s (t - q_s) on the given sheet."""
        if sheet not in (node.a, node.b):
            raise ValueError(f"node at {node.q} does not lie on sheet {lattice.LINE_NAMES[sheet]}")
        return _residue(self.sheet_points[sheet], node.q)

    def degree_bound(self, m: int, d: int, sheet: int) -> int:
        return m * (self.node_count(sheet) - 2) + d


def _residue(points: Sequence[Fraction], q: Fraction) -> Fraction:
    den = Fraction(1)
    for p in points:
        if p != q:
            den *= q - p
    return 1 / den


def build(spec: GluingSpec) -> NodalCover:
    nodes = []
    for j, (r, q) in enumerate(zip(spec.roots, spec.points)):
        for a, b in lattice.double_sixer(r):
            nodes.append(Node(q, a, b, j))
    sheet_points: list[list[Fraction]] = [[] for _ in range(N_SHEETS)]
    for n in nodes:
        sheet_points[n.a].append(n.q)
        sheet_points[n.b].append(n.q)
    for pts in sheet_points:
        if len(set(pts)) != len(pts):
            raise GluingError("two nodes on one sheet over the same point")
        pts.sort()
    return NodalCover(spec, nodes, sheet_points)


# -- polynomials (ascending coefficient lists) ---------------------------------------

def poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _trim(p: Sequence[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(p, q) -> tuple[list[Fraction], list[Fraction]]:
    p, q = _trim(p), _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    r = list(p)
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        f = r[-1] / q[-1]
        quot[k] = f
        for i, c in enumerate(q):
            r[i + k] -= f * c
        r = _trim(r)
    return quot, r


def poly_gcd(polys: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Monic gcd; the empty list stands for the zero polynomial."""
    g: list[Fraction] = []
    for p in polys:
        a, b = _trim(g), _trim(p)
        while b:
            a, b = b, poly_divmod(a, b)[1]
        g = a
    if g:
        g = [c / g[-1] for c in g]
    return g


# -- section spaces ---------------------------------------------------------------

@dataclass
class SectionBasis:
    cover: NodalCover = field(repr=False)
    m: int
    d: int
    degrees: list[int]
    vectors: list[list[Fraction]] = field(repr=False)

    @cached_property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for D in self.degrees:
            out.append(acc)
            acc += max(D + 1, 0)
        out.append(acc)
        return out

    @property
    def ncoeffs(self) -> int:
        return self.offsets[-1]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def poly(self, v: Sequence[Fraction], sheet: int) -> list[Fraction]:
        return list(v[self.offsets[sheet]:self.offsets[sheet + 1]])

    def polys(self, v: Sequence[Fraction]) -> list[list[Fraction]]:
        return [self.poly(v, i) for i in range(N_SHEETS)]

    def span(self, vectors: list[list[Fraction]]) -> "SectionBasis":
        return SectionBasis(self.cover, self.m, self.d, self.degrees, vectors)


def _layout(cover: NodalCover, m: int, d: int) -> tuple[list[int], list[int]]:
    degrees = [cover.degree_bound(m, d, i) for i in range(N_SHEETS)]
    offsets, acc = [], 0
    for D in degrees:
        offsets.append(acc)
        acc += max(D + 1, 0)
    offsets.append(acc)
    return degrees, offsets


def node_conditions(cover: NodalCover, m: int, d: int) -> tuple[list[list[Fraction]], int]:
    """One row per node: R_a^m P_a(q) - (-1)^m R_b^m P_b(q) = 0."""
    degrees, offsets = _layout(cover, m, d)
    n = offsets[-1]
    sign = -1 if m % 2 else 1
    rows = []
    for node in cover.nodes:
        row = [Fraction(0)] * n
        for sheet, f in ((node.a, 1), (node.b, -sign)):
            w = f * cover.residue_coeff(sheet, node) ** m
            qk = Fraction(1)
            for k in range(degrees[sheet] + 1):
                row[offsets[sheet] + k] += w * qk
                qk *= node.q
        rows.append(row)
    return rows, n


def section_space(cover: NodalCover, m: int, d: int) -> SectionBasis:
    """Basis of H^0(omega^m(dL)) as numerator tuples (kernel of the node conditions)."""
    rows, n = node_conditions(cover, m, d)
    degrees, _ = _layout(cover, m, d)
    return SectionBasis(cover, m, d, degrees, nullspace(rows, n))


def h0(cover: NodalCover, m: int, d: int) -> int:
    rows, n = node_conditions(cover, m, d)
    return n - rank(rows) if rows else n


def satisfies(basis: SectionBasis, v: Sequence[Fraction]) -> bool:
    rows, _ = node_conditions(basis.cover, basis.m, basis.d)
    return all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def residue_vector(basis: SectionBasis, v: Sequence[Fraction], node: Node, side: str) -> Fraction:
    """Residue of the omega-section v at a node on its a- or b-branch."""
    if basis.m != 1:
        raise ValueError("residues are defined for sections of omega (m = 1)")
    if side not in ("a", "b"):
        raise ValueError("side must be 'a' or 'b'")
    sheet = node.a if side == "a" else node.b
    return poly_eval(basis.poly(v, sheet), node.q) * basis.cover.residue_coeff(sheet, node)


def product(b1: SectionBasis, v1, b2: SectionBasis, v2, target: SectionBasis | None = None) -> list[Fraction]:
    """Sheetwise product of two sections, laid out for omega^{m1+m2}((d1+d2)L)."""
    cover = b1.cover
    m, d = b1.m + b2.m, b1.d + b2.d
    degrees, offsets = _layout(cover, m, d)
    out = [Fraction(0)] * offsets[-1]
    for i in range(N_SHEETS):
        p = poly_mul(b1.poly(v1, i), b2.poly(v2, i))
        p = _trim(p)
        if len(p) > degrees[i] + 1:
            raise ValueError(f"product exceeds the degree bound on sheet {i}")
        out[offsets[i]:offsets[i] + len(p)] = p
    return out


def _combine(basis: SectionBasis, coeffs: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * basis.ncoeffs
    for c, v in zip(coeffs, basis.vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return out


def _a_residues(omega: SectionBasis) -> list[list[list[Fraction]]]:
    """res[v][j][k]: residue of basis vector v on the a-branch of the k-th node over q_j."""
    cover = omega.cover
    per_point = [cover.nodes_at(j) for j in range(len(cover.spec.points))]
    return [
        [[residue_vector(omega, v, n, "a") for n in nodes] for nodes in per_point]
        for v in omega.vectors
    ]


def _subspace(omega: SectionBasis, conditions) -> SectionBasis:
    res = _a_residues(omega)
    rows = []
    for j in range(len(omega.cover.spec.points)):
        for cond in conditions(j):
            rows.append([sum(c * res[v][j][k] for k, c in cond) for v in range(omega.dim)])
    combos = nullspace(rows, omega.dim)
    return omega.span([_combine(omega, c) for c in combos])


def minus5_subspace(omega: SectionBasis) -> SectionBasis:
    """Sections whose six a-branch residues agree over every branch point."""
    return _subspace(omega, lambda j: [[(0, 1), (k, -1)] for k in range(1, 6)])


def plus1_subspace(omega: SectionBasis) -> SectionBasis:
    """Sections whose six a-branch residues sum to zero over every branch point."""
    return _subspace(omega, lambda j: [[(k, 1) for k in range(6)]])


def in_plus1(omega: SectionBasis, v: Sequence[Fraction]) -> bool:
    cover = omega.cover
    for j in range(len(cover.spec.points)):
        if sum(residue_vector(omega, v, n, "a") for n in cover.nodes_at(j)) != 0:
            return False
    return True


def mult_image(cover: NodalCover) -> tuple[SectionBasis, list[list[Fraction]]]:
    """Products of H^0(L) with H^0(omega - L), as vectors in H^0(omega)."""
    L = section_space(cover, 0, 1)
    wl = section_space(cover, 1, -1)
    omega_layout = SectionBasis(cover, 1, 0, _layout(cover, 1, 0)[0], [])
    prods = [product(L, x, wl, y) for x in L.vectors for y in wl.vectors]
    return omega_layout, prods


def mult_image_dim(cover: NodalCover) -> int:
    _, prods = mult_image(cover)
    return rank(prods) if prods else 0


def base_point_free(basis: SectionBasis) -> bool:
    """No common zero of the omega-sections in ``basis`` on the curve.

    At a node the fibre of omega is read off the residue; at any other point of
    a sheet, from the numerators (and their top coefficient at infinity).
    """
    if basis.m != 1 or basis.dim == 0:
        return False
    cover = basis.cover
    for node in cover.nodes:
        if all(residue_vector(basis, v, node, "a") == 0 for v in basis.vectors):
            return False
    for i in range(N_SHEETS):
        D = basis.degrees[i]
        if D < 0:
            continue
        polys = [basis.poly(v, i) for v in basis.vectors]
        g = poly_gcd(polys)
        if not g:
            return False
        for q in cover.sheet_points[i]:
            while len(g) > 1 and poly_eval(g, q) == 0:
                g = poly_divmod(g, [-q, Fraction(1)])[0]
        if len(g) > 1:
            return False
        if all(p[D] == 0 for p in polys):
            return False
    return True


def sym2_rank(basis: SectionBasis) -> int:
    prods = [product(basis, x, basis, y) for x, y in combinations_with_replacement(basis.vectors, 2)]
    return rank(prods) if prods else 0


def sym2_injective(basis: SectionBasis) -> bool:
    n = basis.dim
    return sym2_rank(basis) == n * (n + 1) // 2


def theorem_check(spec: GluingSpec) -> Report:
    """Sections, eigenspaces and the canonical-map checks for the glued curve."""
    if not monodromy_full(spec):
        raise GluingError("the reflections do not generate W(E6); the glued curve is not a W(E6)-cover")
    cover = build(spec)
    rep = Report("glued curve")
    rep.add("graph", cover.connected and cover.genus == 46 and len(cover.nodes) == 72,
            f"nodes={len(cover.nodes)} connected={cover.connected} p_a={cover.genus}")

    omega = section_space(cover, 1, 0)
    hL = h0(cover, 0, 1)
    h_wl = h0(cover, 1, -1)
    h_w2 = h0(cover, 2, 0)
    h_van = h0(cover, 2, -5)
    rep.add("h0(omega) = p_a", omega.dim == cover.genus, f"h0(omega)={omega.dim}")
    rep.add("h0(L) = 2", hL == 2, f"h0(L)={hL}")

    omega_layout, prods = mult_image(cover)
    img = rank(prods)
    plus = plus1_subspace(omega)
    contained = all(in_plus1(omega, v) for v in prods)
    rep.add("multiplication image has dimension 40", img == 40,
            f"h0(omega-L)={h_wl} image={img} inside(+1)={contained}")
    rep.add("image lies in the (+1) subspace", contained)

    rep.add("h0(2 omega - 5L) = 0", h_van == 0, f"h0(2omega-5L)={h_van}")

    minus = minus5_subspace(omega)
    joint = rank(minus.vectors + plus.vectors) if minus.vectors or plus.vectors else 0
    rep.add("eigenspaces 6 + 40, trivial intersection",
            minus.dim == 6 and plus.dim == 40 and joint == minus.dim + plus.dim == omega.dim,
            f"dim(-5)={minus.dim} dim(+1)={plus.dim} dim(sum)={joint}")
    bpf = base_point_free(minus)
    rep.add("(-5) eigenspace is base point free", bpf)
    r2 = sym2_rank(minus)
    rep.add("no quadric: Sym^2 injective", r2 == 21 and minus.dim == 6,
            f"rank={r2} h0(omega^2)={h_w2}")
    rep.data = {
        "nodes": len(cover.nodes),
        "p_a": cover.genus,
        "h0(L)": hL,
        "h0(omega)": omega.dim,
        "h0(omega-L)": h_wl,
        "h0(omega^2)": h_w2,
        "h0(2omega-5L)": h_van,
        "dim(-5)": minus.dim,
        "dim(+1)": plus.dim,
        "mult_image": img,
        "sym2_rank": r2,
    }
    return rep
