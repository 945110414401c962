"""Centers of the simply connected groups and their action on the Weyl alcove.

A center element is stored as an exponent tuple in the generators of the full
center: ``(n,)`` for ``z^n`` in a cyclic center, ``(a, b)`` for
``z1^a z2^b`` when the center is ``Z2 x Z2`` (``D_r`` with ``r`` even).

The lifts ``w_z`` are never built as group elements.  Only their adjoint
action on the ambient coordinate space (``weyl``) and the exponents
``e_{z,z'}`` of the toral discrepancy ``w_z w_z' w_{zz'}^{-1}`` are kept.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from .lattice import Vec, mat_mul, mat_vec, identity
from .roots import RootSystem, in_alcove, reflection_matrix_word

Elem = tuple[int, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class CenterGroup:
    """A subgroup of the center; ``elements`` lists the identity first."""

    family: str
    rank: int
    orders: tuple[int, ...]
    elements: tuple[Elem, ...]
    label: str

    @property
    def identity(self) -> Elem:
        return (0,) * len(self.orders)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_cyclic(self) -> bool:
        # Z2 x Z2 is the only non-cyclic center
        return len(self.orders) == 1 or self.order < 4

    def mul(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def inv(self, a: Elem) -> Elem:
        return tuple(-x % n for x, n in zip(a, self.orders))

    def prod(self, *elems: Elem) -> Elem:
        out = self.identity
        for e in elems:
            out = self.mul(out, e)
        return out

    def name(self, a: Elem) -> str:
        if len(self.orders) == 2:
            return {(0, 0): "1", (1, 0): "z1", (0, 1): "z2", (1, 1): "z1z2"}[a]
        n = a[0]
        return "1" if n == 0 else "z" if n == 1 else f"z^{n}"

    def element(self, name: str) -> Elem:
        for a in self.elements:
            if self.name(a) == name:
                return a
        raise KeyError(f"{name!r} is not an element of {self.label}")

    def nonidentity(self) -> tuple[Elem, ...]:
        return self.elements[1:]

    def generator(self) -> Elem:
        """A generator of a cyclic subgroup."""
        if not self.is_cyclic:
            raise ValueError(f"{self.label} is not cyclic")
        if self.order == 1:
            return self.identity
        return next(a for a in self.elements if self._order_of(a) == self.order)

    def _order_of(self, a: Elem) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k


def _center_orders(rs: RootSystem) -> tuple[int, ...]:
    f, r = rs.family, rs.rank
    if f == "A":
        return (r + 1,)
    if f in ("B", "C", "E7"):
        return (2,)
    if f == "E6":
        return (3,)
    return (4,) if r % 2 else (2, 2)


def center_of(rs: RootSystem) -> CenterGroup:
    orders = _center_orders(rs)
    if len(orders) == 2:
        elems = ((0, 0), (1, 0), (0, 1), (1, 1))
    else:
        elems = tuple((a,) for a in range(orders[0]))
    label = "Z2xZ2" if len(orders) == 2 else f"Z{orders[0]}"
    return CenterGroup(rs.family, rs.rank, orders, elems, label)


def subgroups_of(group: CenterGroup) -> list[CenterGroup]:
    """All subgroups of a full center, ordered by size then label."""
    f, r, orders = group.family, group.rank, group.orders
    if len(orders) == 2:
        subs = [("trivial", [(0, 0)]), ("z1", [(0, 0), (1, 0)]),
                ("z2", [(0, 0), (0, 1)]), ("z1z2", [(0, 0), (1, 1)]),
                ("Z2xZ2", [(0, 0), (1, 0), (0, 1), (1, 1)])]
        return [CenterGroup(f, r, orders, tuple(e), lab) for lab, e in subs]
    n = orders[0]
    out = []
    for d in range(1, n + 1):
        if n % d:
            continue
        step = n // d
        elems = tuple((k * step,) for k in range(d))
        out.append(CenterGroup(f, r, orders, elems, "trivial" if d == 1 else f"Z{d}"))
    return out


# ---------------------------------------------------------------------------
# generator data: theta, node permutation, Weyl part of w_z

def _perm_matrix(dim: int, images: dict[int, Vec]) -> Matrix:
    """Matrix whose column ``j`` is ``images[j]`` (default: e_j)."""
    cols = [images.get(j, Vec.unit(dim, j)) for j in range(dim)]
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


def _generator_data(rs: RootSystem) -> list[tuple[Vec, tuple[int, ...], Matrix, list[int]]]:
    """(theta, node permutation, weyl matrix, reflection word) per generator."""
    f, r, dim = rs.family, rs.rank, rs.ambient_dim
    lam = rs.fundamental_coweights
    e = [Vec.unit(dim, i) for i in range(dim)]
    h = Fraction(1, 2)

    def block_word_d(r):
        # blocks s = r-1, ..., 1: alpha_s ... alpha_{r-2}, then alpha_r (s odd) or alpha_{r-1}
        word = []
        for s in range(r - 1, 0, -1):
            word += list(range(s, r - 1)) + [r if s % 2 else r - 1]
        return word

    if f == "A":
        perm = tuple(list(range(1, r + 1)) + [0])
        w = _perm_matrix(dim, {j: e[(j + 1) % dim] for j in range(dim)})
        return [(lam[r - 1], perm, w, list(range(1, r + 1)))]
    if f == "B":
        perm = (1, 0) + tuple(range(2, r + 1))
        w = _perm_matrix(dim, {0: -e[0]})
        word = list(range(1, r + 1)) + list(range(r - 1, 0, -1))
        return [(lam[0], perm, w, word)]
    if f == "C":
        perm = tuple(r - i for i in range(r + 1))
        w = _perm_matrix(dim, {j: -e[r - 1 - j] for j in range(r)})
        word = []
        for s in range(r, 0, -1):
            word += list(range(s, r + 1))
        return [(lam[r - 1], perm, w, word)]
    if f == "D" and r % 2:
        perm = [0] * (r + 1)
        perm[0], perm[1], perm[r - 1], perm[r] = r - 1, r, 1, 0
        for i in range(2, r - 1):
            perm[i] = r - i
        images = {0: e[r - 1]}
        images.update({j: -e[r - 1 - j] for j in range(1, r)})
        return [(lam[r - 1], tuple(perm), _perm_matrix(dim, images), block_word_d(r))]
    if f == "D":
        perm1 = tuple([r] + [r - i for i in range(1, r)] + [0])
        w1 = _perm_matrix(dim, {j: -e[r - 1 - j] for j in range(r)})
        perm2 = tuple([1, 0] + list(range(2, r - 1)) + [r, r - 1])
        w2 = _perm_matrix(dim, {0: -e[0], r - 1: -e[r - 1]})
        word2 = list(range(1, r - 1)) + [r] + list(range(r - 1, 0, -1))
        return [(lam[r - 1], perm1, w1, block_word_d(r)),
                (lam[0], perm2, w2, word2)]
    if f == "E6":
        perm = (1, 5, 4, 3, 6, 0, 2)
        v56 = [h, h, -h, -h, -h, -h]
        # seventh stored coordinate is sqrt(2) times the true one
        images = {0: -e[5], 1: -e[4], 2: -e[3], 3: -e[2],
                  4: Vec(v56 + [-1]), 5: Vec(v56 + [1]),
                  6: Vec([-h, h, 0, 0, 0, 0, 0])}
        word = [1, 2, 3, 4, 5, 6, 3, 2, 1, 4, 3, 2, 6, 3, 4, 5]
        return [(lam[4], perm, _perm_matrix(dim, images), word)]
    perm = (1, 0, 6, 5, 4, 3, 2, 7)
    w = _perm_matrix(dim, {j: -e[7 - j] for j in range(8)})
    word = [1, 2, 3, 4, 5, 7, 4, 6, 3, 5, 2, 4, 1, 3, 7,
            4, 2, 5, 3, 6, 4, 7, 5, 4, 3, 2, 1]
    return [(lam[0], perm, w, word)]


# reflections in non-simple roots that factor the E6 and E7 Weyl parts,
# given by their coefficients in the simple roots
BETA_WORDS = {
    "E6": [(1, 1, 1, 1, 0, 0), (1, 1, 1, 0, 0, 1), (0, 1, 1, 1, 1, 0), (0, 0, 1, 1, 1, 1)],
    "E7": [(1, 2, 2, 2, 1, 0, 1), (1, 1, 2, 2, 1, 1, 1), (1, 1, 1, 2, 2, 1, 1)],
}


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(q)))


@dataclass(frozen=True)
class CenterAction:
    """Action of a center subgroup: node permutations and Weyl parts of ``w_z``."""

    rs: RootSystem
    group: CenterGroup
    theta: dict
    node_perm: dict
    weyl: dict
    words: dict

    def zi(self, z: Elem, i: int) -> int:
        return self.node_perm[z][i]

    def apply(self, z: Elem, v: Sequence) -> Vec:
        return mat_vec(self.weyl[z], v)

    @cached_property
    def weyl_inverse(self) -> dict:
        g = self.group
        return {z: self.weyl[g.inv(z)] for z in g.elements}


def action_of(rs: RootSystem, group: CenterGroup) -> CenterAction:
    gens = _generator_data(rs)
    dim = rs.ambient_dim
    theta, perm, weyl, words = {}, {}, {}, {}
    for z in group.elements:
        th = Vec.zero(dim)
        p = tuple(rs.nodes)
        w = identity(dim)
        word: list[int] = []
        for exp, (g_theta, g_perm, g_w, g_word) in zip(z, gens):
            for _ in range(exp):
                th = th + g_theta
                p = _compose(p, g_perm)
                w = mat_mul(w, g_w)
                word = word + g_word
        theta[z] = th
        perm[z] = p
        weyl[z] = tuple(tuple(Fraction(x) for x in row) for row in w)
        words[z] = word
    return CenterAction(rs, group, theta, perm, weyl, words)


def reflection_word_check(action: CenterAction, z: Elem) -> bool:
    """Does the listed simple-reflection word reproduce ``W_z`` on the Cartan algebra?"""
    rs = action.rs
    word = action.words[z]
    return all(reflection_matrix_word(rs, word, a) == action.apply(z, a)
               for a in rs.simple_roots)


def beta_word_check(action: CenterAction) -> bool:
    """E6/E7 only: the short factorization through non-simple reflections."""
    rs = action.rs
    betas = BETA_WORDS[rs.family]
    vecs = []
    for coeffs in betas:
        b = Vec.zero(rs.ambient_dim)
        for c, a in zip(coeffs, rs.simple_roots):
            b = b + a * c
        vecs.append(b)
    z = action.group.generator() if action.group.order > 1 else None
    if z is None:
        raise ValueError("needs the full center")

    def apply_betas(v):
        for b in reversed(vecs):
            v = rs.reflect(b, v)
        return v

    return all(apply_betas(a) == action.apply(z, a) for a in rs.simple_roots)


def affine_action(action: CenterAction, z: Elem, tau: Sequence) -> Vec:
    """``W_z(tau) + tau_{z0}``; ``tau`` must lie in the alcove."""
    rs = action.rs
    if not in_alcove(rs, tau):
        raise ValueError(f"{tau} is not in the Weyl alcove of {rs.name}")
    out = action.apply(z, tau) + rs.alcove_vertices[action.zi(z, 0)]
    assert in_alcove(rs, out)
    return out


# ---------------------------------------------------------------------------
# e-tables

ETable = dict  # (z, z') -> Vec


def e_table(action: CenterAction) -> ETable:
    """Exponents ``e_{z,z'}`` for the fixed choice of lifts, restricted to the subgroup."""
    rs, g = action.rs, action.group
    f, r = rs.family, rs.rank
    zero = Vec.zero(rs.ambient_dim)
    full = center_of(rs)
    gen_theta = _generator_data(rs)

    def full_entry(a: Elem, b: Elem) -> Vec:
        if f == "A":
            th = gen_theta[0][0]
            return th * Fraction(r * (r + 1), 2) if a[0] + b[0] > r else zero
        if f == "D" and r % 2:
            return gen_theta[0][0] * 2 if a[0] + b[0] >= 4 else zero
        if f == "D":
            th2 = gen_theta[1][0]
            names = (full.name(a), full.name(b))
            if r % 4 == 0:
                hits = {("z2", "z1"), ("z2", "z2"), ("z1z2", "z1"), ("z1z2", "z2")}
            else:
                hits = {("z1", "z1"), ("z1", "z1z2"), ("z2", "z1"),
                        ("z2", "z2"), ("z1z2", "z2"), ("z1z2", "z1z2")}
            return th2 if names in hits else zero
        if f == "E6" or (f == "B" and r % 2 == 0):
            return zero
        # B (r odd), C, E7: only e_{z,z} = theta
        return gen_theta[0][0] if a == b == (1,) else zero

    return {(a, b): full_entry(a, b) for a in g.elements for b in g.elements}


class NotInCorootLattice(ValueError):
    def __init__(self, triple, value):
        super().__init__(f"(delta e) at {triple} = {value} is not in the coroot lattice")
        self.triple = triple
        self.value = value


def delta_e(action: CenterAction, e: ETable, check: bool = True) -> dict:
    """Bockstein 3-cochain ``W_z e_{z',z''} - e_{zz',z''} + e_{z,z'z''} - e_{z,z'}``."""
    g = action.group
    q = action.rs.coroot_lattice()
    out = {}
    for z, z1, z2 in product(g.elements, repeat=3):
        val = (action.apply(z, e[z1, z2]) - e[g.mul(z, z1), z2]
               + e[z, g.mul(z1, z2)] - e[z, z1])
        if check and not q.contains(val):
            raise NotInCorootLattice((g.name(z), g.name(z1), g.name(z2)), val)
        out[z, z1, z2] = val
    return out


@dataclass(frozen=True)
class CenterData:
    """Everything about one (group, subgroup) case that the cohomology layer consumes."""

    rs: RootSystem
    action: CenterAction
    e: ETable

    @property
    def group(self) -> CenterGroup:
        return self.action.group

    @cached_property
    def bockstein(self) -> dict:
        return delta_e(self.action, self.e, check=False)


def subgroup_by_label(rs: RootSystem, label: str) -> CenterGroup:
    full = center_of(rs)
    if label == "full":
        return full
    for sub in subgroups_of(full):
        if sub.label == label:
            return sub
    raise KeyError(label)


def center_data(rs: RootSystem, subgroup: CenterGroup | str = "full",
                e: ETable | None = None) -> CenterData:
    if isinstance(subgroup, str):
        subgroup = subgroup_by_label(rs, subgroup)
    action = action_of(rs, subgroup)
    return CenterData(rs, action, e_table(action) if e is None else e)
