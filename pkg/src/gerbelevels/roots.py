"""Root systems of the compact simple groups in explicit rational coordinates.

Conventions per family (``e_i`` are ambient unit vectors, indices from 1):

* ``A_r``: ambient ``Q^{r+1}``, identity Gram, Cartan algebra is the zero-sum
  hyperplane; ``alpha_i = e_i - e_{i+1}``.
* ``B_r``: ``Q^r``, identity Gram; ``alpha_i = e_i - e_{i+1}``, ``alpha_r = e_r``.
* ``C_r``: ``Q^r``, Gram ``2*I``; ``alpha_i = (e_i - e_{i+1})/2``, ``alpha_r = e_r``.
* ``D_r``: ``Q^r``, identity Gram; ``alpha_r = e_{r-1} + e_r``.
* ``E6``: ``Q^7``, first six coordinates summing to zero.  The seventh axis is
  stored rescaled by ``sqrt(2)`` with Gram entry ``1/2`` so that
  ``alpha_6 = (-e1-e2-e3+e4+e5+e6)/2 + e7/sqrt(2)`` has rational coordinates.
* ``E7``: ``Q^8``, zero-sum hyperplane, identity Gram;
  ``alpha_7 = (-e1-e2-e3-e4+e5+e6+e7+e8)/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .lattice import Lattice, Vec, dot, mat_inverse

FAMILIES = ("A", "B", "C", "D", "E6", "E7")

# classical mark/comark tables, used only as a cross-check of the derived values
_CLASSICAL_MARKS = {
    "A": lambda r: ((1,) * r, (1,) * r),
    "B": lambda r: ((1,) + (2,) * (r - 1), (1,) + (2,) * (r - 2) + (1,)),
    "C": lambda r: ((2,) * (r - 1) + (1,), (1,) * r),
    "D": lambda r: ((1,) + (2,) * (r - 3) + (1, 1),) * 2,
    "E6": lambda r: ((1, 2, 3, 2, 1, 2),) * 2,
    "E7": lambda r: ((1, 2, 3, 4, 3, 2, 2),) * 2,
}

_ROOT_COUNT = {
    "A": lambda r: r * (r + 1),
    "B": lambda r: 2 * r * r,
    "C": lambda r: 2 * r * r,
    "D": lambda r: 2 * r * (r - 1),
    "E6": lambda r: 72,
    "E7": lambda r: 126,
}


def check_family_rank(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    minimum = {"A": 1, "B": 2, "C": 2, "D": 3, "E6": 6, "E7": 7}[family]
    if family in ("E6", "E7"):
        if rank != minimum:
            raise ValueError(f"{family} has rank {minimum}, got {rank}")
    elif rank < minimum:
        raise ValueError(f"{family}_{rank} is not valid: rank must be >= {minimum}")


def _simple_roots(family: str, r: int) -> tuple[int, tuple[Fraction, ...], list[Vec]]:
    h = Fraction(1, 2)
    if family == "A":
        dim = r + 1
        gram = (Fraction(1),) * dim
        roots = [Vec.unit(dim, i) - Vec.unit(dim, i + 1) for i in range(r)]
    elif family in ("B", "C", "D"):
        dim = r
        gram = (Fraction(2 if family == "C" else 1),) * dim
        e = [Vec.unit(dim, i) for i in range(dim)]
        chain = [e[i] - e[i + 1] for i in range(r - 1)]
        if family == "B":
            roots = chain + [e[r - 1]]
        elif family == "C":
            roots = [c * h for c in chain] + [e[r - 1]]
        else:
            roots = chain + [e[r - 2] + e[r - 1]]
    elif family == "E6":
        dim = 7
        gram = (Fraction(1),) * 6 + (h,)
        e = [Vec.unit(dim, i) for i in range(dim)]
        roots = [e[i] - e[i + 1] for i in range(5)]
        roots.append(Vec([-h, -h, -h, h, h, h, 1]))
    else:
        dim = 8
        gram = (Fraction(1),) * dim
        e = [Vec.unit(dim, i) for i in range(dim)]
        roots = [e[i] - e[i + 1] for i in range(6)]
        roots.append(Vec([-h] * 4 + [h] * 4))
    return dim, gram, roots


@dataclass(frozen=True)
class RootSystem:
    """Complete root datum of one simple compact group.

    Lists indexed by simple-root number are 0-based (``simple_roots[0]`` is
    alpha_1).  ``alcove_vertices`` is indexed by node ``0..r``.
    """

    family: str
    rank: int
    ambient_dim: int
    gram: tuple[Fraction, ...]
    simple_roots: tuple[Vec, ...]
    coroots: tuple[Vec, ...]
    fundamental_weights: tuple[Vec, ...]
    fundamental_coweights: tuple[Vec, ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    highest_root: Vec
    alcove_vertices: tuple[Vec, ...]
    roots: frozenset = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return self.family if self.family.startswith("E") else f"{self.family}{self.rank}"

    @property
    def nodes(self) -> range:
        return range(self.rank + 1)

    @property
    def dual_coxeter(self) -> int:
        return 1 + sum(self.comarks)

    def mark(self, i: int) -> int:
        """Mark of extended-diagram node ``i`` (node 0 has mark 1)."""
        return 1 if i == 0 else self.marks[i - 1]

    def comark(self, i: int) -> int:
        return 1 if i == 0 else self.comarks[i - 1]

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, y, self.gram)

    def coroot_lattice(self) -> Lattice:
        return Lattice(self.coroots, self.ambient_dim)

    def coweight_lattice(self) -> Lattice:
        return Lattice(self.fundamental_coweights, self.ambient_dim)

    def coroot_coordinates(self, v: Sequence) -> list[Fraction]:
        """Coefficients of ``v`` in the simple coroots (exact when ``v`` is in t)."""
        return [self.form(lam, v) for lam in self.fundamental_weights]

    def in_cartan(self, v: Sequence) -> bool:
        c = self.coroot_coordinates(v)
        back = Vec.zero(self.ambient_dim)
        for ci, a in zip(c, self.coroots):
            back = back + a * ci
        return back == Vec(v)

    def cartan_matrix(self) -> list[list[Fraction]]:
        """Entries ``tr(alpha_i, coroot_j)``."""
        return [[self.form(a, c) for c in self.coroots] for a in self.simple_roots]

    def reflect(self, root: Sequence, v: Sequence) -> Vec:
        return weyl_reflection(root, v, self)


def _coroot(alpha: Vec, gram) -> Vec:
    return alpha * (Fraction(2) / dot(alpha, alpha, gram))


def _reflect(alpha: Vec, v: Sequence, gram) -> Vec:
    v = Vec(v)
    return v - alpha * dot(_coroot(alpha, gram), v, gram)


def _reflection_closure(simple: Sequence[Vec], gram) -> frozenset:
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for a in simple:
                img = _reflect(a, beta, gram)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int | None = None) -> RootSystem:
    """Construct and self-check the root datum for ``family`` and ``rank``.

    Marks, comarks and the highest root are derived from the enumerated roots
    and compared against the classical tables; a mismatch raises.
    """
    if rank is None:
        if family in ("E6", "E7"):
            rank = int(family[1])
        else:
            raise ValueError(f"rank required for family {family}")
    check_family_rank(family, rank)
    dim, gram, simple = _simple_roots(family, rank)
    coroots = [_coroot(a, gram) for a in simple]

    g_roots = [[dot(a, b, gram) for b in simple] for a in simple]
    g_coroots = [[dot(a, b, gram) for b in coroots] for a in coroots]
    inv_r = mat_inverse(g_roots)
    inv_c = mat_inverse(g_coroots)
    coweights = []
    weights = []
    for i in range(rank):
        cw = Vec.zero(dim)
        w = Vec.zero(dim)
        for k in range(rank):
            cw = cw + simple[k] * inv_r[i][k]
            w = w + coroots[k] * inv_c[i][k]
        coweights.append(cw)
        weights.append(w)

    roots = _reflection_closure(simple, gram)
    phi, marks, comarks = _highest_root(roots, simple, coweights, weights, gram)

    expected = _CLASSICAL_MARKS[family](rank)
    if (marks, comarks) != expected:
        raise RuntimeError(f"{family}{rank}: derived marks {marks}/{comarks} "
                           f"disagree with the classical table {expected}")
    if len(roots) != _ROOT_COUNT[family](rank):
        raise RuntimeError(f"{family}{rank}: found {len(roots)} roots")
    if max(dot(a, a, gram) for a in roots) != 2:
        raise RuntimeError(f"{family}{rank}: long roots must have squared length 2")

    vertices = [Vec.zero(dim)] + [cw / k for cw, k in zip(coweights, marks)]
    rs = RootSystem(family, rank, dim, tuple(gram), tuple(simple), tuple(coroots),
                    tuple(weights), tuple(coweights), marks, comarks, phi,
                    tuple(vertices), roots)
    _self_check(rs)
    return rs


def _highest_root(roots, simple, coweights, weights, gram):
    def expansion(beta):
        return tuple(dot(beta, cw, gram) for cw in coweights)

    phi = max(roots, key=lambda b: sum(expansion(b)))
    ks = expansion(phi)
    for beta in roots:
        if any(x > y for x, y in zip(expansion(beta), ks)):
            raise RuntimeError("highest root is not componentwise maximal")
    phi_v = _coroot(phi, gram)
    ksv = tuple(dot(phi_v, w, gram) for w in weights)
    if any(x.denominator != 1 for x in ks + ksv):
        raise RuntimeError("non-integral marks")
    return phi, tuple(int(x) for x in ks), tuple(int(x) for x in ksv)


def _self_check(rs: RootSystem) -> None:
    r = rs.rank
    for i in range(r):
        a, c = rs.simple_roots[i], rs.coroots[i]
        if a != c * (Fraction(2) / rs.form(c, c)):
            raise RuntimeError("root/coroot relation fails")
        for j in range(r):
            want = int(i == j)
            if rs.form(rs.fundamental_coweights[i], rs.simple_roots[j]) != want:
                raise RuntimeError("coweights are not dual to simple roots")
            if rs.form(rs.fundamental_weights[i], rs.coroots[j]) != want:
                raise RuntimeError("weights are not dual to coroots")
    phi = rs.highest_root
    by_roots = Vec.zero(rs.ambient_dim)
    by_coroots = Vec.zero(rs.ambient_dim)
    for k, kv, a, c in zip(rs.marks, rs.comarks, rs.simple_roots, rs.coroots):
        by_roots = by_roots + a * k
        by_coroots = by_coroots + c * kv
    if not (phi == by_roots == by_coroots):
        raise RuntimeError("highest root expansion mismatch")


def all_roots(rs: RootSystem) -> frozenset:
    return rs.roots


def highest_root(rs: RootSystem) -> tuple[Vec, tuple[int, ...], tuple[int, ...]]:
    return rs.highest_root, rs.marks, rs.comarks


def weyl_reflection(root: Sequence, v: Sequence, rs: RootSystem) -> Vec:
    """``v - tr(root_coroot, v) * root``; ``root`` must be a root of ``rs``."""
    root = Vec(root)
    if root not in rs.roots:
        raise ValueError(f"{root} is not a root of {rs.name}")
    if len(v) != rs.ambient_dim:
        raise ValueError("dimension mismatch")
    return _reflect(root, v, rs.gram)


def reflection_matrix_word(rs: RootSystem, word: Sequence[int], v: Sequence) -> Vec:
    """Apply ``r_{a_{w1}} r_{a_{w2}} ... r_{a_{wn}}`` to ``v`` (rightmost acts first).

    ``word`` holds 1-based simple-root numbers.
    """
    out = Vec(v)
    for idx in reversed(word):
        out = _reflect(rs.simple_roots[idx - 1], out, rs.gram)
    return out


def in_alcove(rs: RootSystem, v: Sequence) -> bool:
    if len(v) != rs.ambient_dim or not rs.in_cartan(v):
        return False
    return (all(rs.form(a, v) >= 0 for a in rs.simple_roots)
            and rs.form(rs.highest_root, v) <= 1)


def stabilizer_coweight_lattice(rs: RootSystem, i: int) -> Lattice:
    """Coweight lattice of the stabilizer of ``exp(2 pi i tau_i)``.

    Node 0 gives the full coweight lattice; otherwise the generators are
    ``k_j (tau_j - tau_i)`` for ``j != i, j >= 1`` together with ``-tau_i``.
    """
    if i not in rs.nodes:
        raise IndexError(f"node {i} out of range 0..{rs.rank}")
    if i == 0:
        return rs.coweight_lattice()
    tau = rs.alcove_vertices
    gens = [(tau[j] - tau[i]) * rs.mark(j) for j in range(1, rs.rank + 1) if j != i]
    gens.append(-tau[i])
    return Lattice(gens, rs.ambient_dim)
