"""Phase-valued cochains on the center, the obstruction 3-cocycle and its solutions.

``U(1)`` is modelled additively as ``Q/Z``: a phase is a ``Fraction`` in
``[0, 1)`` standing for ``exp(2 pi i value)``.  Cochains are normalized, so
they vanish whenever an argument is the identity, and ``Z`` acts trivially
on phases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Callable, Sequence

import numpy as np

from .center import CenterData, CenterGroup, Elem, delta_e
from .lattice import (_echelon_mod, common_denominator, hermite_reduce, intersect,
                      mat_vec, solve_linear_mod, subgroup_order)
from .roots import RootSystem, stabilizer_coweight_lattice

K_CAP = 12


def phase(x) -> Fraction:
    return Fraction(x) % 1


@dataclass(frozen=True)
class PhaseCochain:
    """Normalized ``Q/Z``-valued ``degree``-cochain on ``group``."""

    degree: int
    group: CenterGroup
    table: dict = field(compare=True)

    def __getitem__(self, args: tuple[Elem, ...]) -> Fraction:
        return self.table[args]

    @classmethod
    def from_function(cls, group: CenterGroup, degree: int,
                      fn: Callable[..., Fraction]) -> "PhaseCochain":
        ident = group.identity
        table = {}
        for args in product(group.elements, repeat=degree):
            table[args] = Fraction(0) if ident in args else phase(fn(*args))
        return cls(degree, group, table)

    @classmethod
    def zero(cls, group: CenterGroup, degree: int) -> "PhaseCochain":
        return cls.from_function(group, degree, lambda *a: 0)

    def is_normalized(self) -> bool:
        ident = self.group.identity
        return all(v == 0 for k, v in self.table.items() if ident in k)

    def is_zero(self) -> bool:
        return not any(self.table.values())

    def __add__(self, other: "PhaseCochain") -> "PhaseCochain":
        return PhaseCochain(self.degree, self.group,
                            {k: phase(v + other.table[k]) for k, v in self.table.items()})

    def __sub__(self, other: "PhaseCochain") -> "PhaseCochain":
        return PhaseCochain(self.degree, self.group,
                            {k: phase(v - other.table[k]) for k, v in self.table.items()})

    def named(self) -> dict[str, Fraction]:
        g = self.group
        return {",".join(g.name(a) for a in k): v for k, v in self.table.items()}


# ---------------------------------------------------------------------------
# characters

def chi_vertex(rs: RootSystem, i: int, p: Sequence) -> Fraction:
    """Phase of the vertex character ``chi_i`` on ``exp(2 pi i p)``."""
    return phase(rs.form(rs.alcove_vertices[i], p))


def chi_pair(rs: RootSystem, i: int, j: int, t: Sequence) -> Fraction:
    """Phase of ``chi_ij`` on the toral element ``exp(2 pi i t)``."""
    tau = rs.alcove_vertices
    return phase(rs.form(tau[j] - tau[i], t))


@lru_cache(maxsize=None)
def _stabilizer_center_lattice(rs: RootSystem, i: int):
    return intersect(stabilizer_coweight_lattice(rs, i), rs.coroot_lattice())


def lemma1_check(cd: CenterData, z: Elem, i: int, j: int) -> bool:
    """Invariance of ``chi_i`` and ``chi_ij`` under conjugation by ``w_z``."""
    rs, act, g = cd.rs, cd.action, cd.group
    zinv = g.inv(z)
    iz, jz = act.zi(zinv, i), act.zi(zinv, j)
    winv = act.weyl_inverse[z]
    for p in _stabilizer_center_lattice(rs, i).basis:
        if chi_vertex(rs, iz, mat_vec(winv, p)) != chi_vertex(rs, i, p):
            return False
    for q in rs.coroots:
        if chi_pair(rs, iz, jz, mat_vec(winv, q)) != chi_pair(rs, i, j, q):
            return False
    return True


def lemma1_sweep(cd: CenterData):
    """``lemma1_check`` over all ``z, i, j``; returns ``(True, None)`` or the first failure."""
    rs, act, g = cd.rs, cd.action, cd.group
    tau = rs.alcove_vertices
    nodes = list(rs.nodes)
    for z in g.elements:
        zinv = g.inv(z)
        winv = act.weyl_inverse[z]
        perm = [act.zi(zinv, i) for i in nodes]
        for i in nodes:
            for p in _stabilizer_center_lattice(rs, i).basis:
                if chi_vertex(rs, perm[i], mat_vec(winv, p)) != chi_vertex(rs, i, p):
                    return False, {"element": g.name(z), "nodes": (i,), "vector": p}
        # chi_pair(i, j, t) = tr(tau_j, t) - tr(tau_i, t)
        for q in rs.coroots:
            mq = mat_vec(winv, q)
            before = [rs.form(tau[n], q) for n in nodes]
            after = [rs.form(tau[n], mq) for n in nodes]
            for i, j in product(nodes, repeat=2):
                diff = (after[perm[j]] - after[perm[i]]) - (before[j] - before[i])
                if diff.denominator != 1:
                    return False, {"element": g.name(z), "nodes": (i, j), "vector": q}
    return True, None


# ---------------------------------------------------------------------------
# the obstruction cocycle

def u_obstruction(cd: CenterData, k: int, check_forms: bool = True) -> PhaseCochain:
    """Obstruction 3-cocycle at level ``k``.

    Evaluated from the expanded trace formula; with ``check_forms`` the
    character form ``k [chi_{(zz'0)(zz'z''0)}(c_{z,z'}) + chi_{zz'z''0}(delta e)]``
    is evaluated as well and must agree at every triple.
    """
    table = {key: phase(k * v) for key, v in _raw_obstruction(cd, "expanded").items()}
    if check_forms:
        for key, v in _raw_obstruction(cd, "characters").items():
            if phase(k * v) != table[key]:
                raise AssertionError(f"obstruction forms disagree at {key}")
    return PhaseCochain(3, cd.group, table)


def _raw_obstruction(cd: CenterData, form: str) -> dict:
    # U is linear in k, so the level-one values (not reduced mod 1) are cached on cd
    slot = "_obstruction_" + form
    raw = cd.__dict__.get(slot)
    if raw is None:
        fn = _obstruction_expanded if form == "expanded" else _obstruction_characters
        raw = cd.__dict__[slot] = fn(cd)
    return raw


def _vertex_pairings(cd: CenterData, vectors: dict) -> dict:
    """``tr(tau_{z0}, v)`` for every ``z`` and every entry of ``vectors``."""
    rs, act = cd.rs, cd.action
    tau = rs.alcove_vertices
    return {(z, key): rs.form(tau[act.zi(z, 0)], v)
            for z in cd.group.elements for key, v in vectors.items()}


def _obstruction_expanded(cd: CenterData) -> dict:
    g = cd.group
    t = _vertex_pairings(cd, cd.e)
    table = {}
    for z, z1, z2 in product(g.elements, repeat=3):
        z_z1 = g.mul(z, z1)
        z1_z2 = g.mul(z1, z2)
        zz1z2 = g.mul(z_z1, z2)
        table[z, z1, z2] = (t[z1_z2, (z1, z2)] - t[g.inv(z), (z1, z2)]
                            - t[z_z1, (z, z1)]
                            - t[zz1z2, (z_z1, z2)] + t[zz1z2, (z, z1_z2)])
    return table


def _obstruction_characters(cd: CenterData) -> dict:
    rs, act, g, e = cd.rs, cd.action, cd.group, cd.e
    de = cd.bockstein
    table = {}
    for z, z1, z2 in product(g.elements, repeat=3):
        a = act.zi(g.mul(z, z1), 0)
        b = act.zi(g.prod(z, z1, z2), 0)
        table[z, z1, z2] = chi_pair(rs, a, b, e[z, z1]) + chi_vertex(rs, b, de[z, z1, z2])
    return table


def coboundary_phase(c: PhaseCochain) -> PhaseCochain:
    """Alternating-sum coboundary for the trivial action on phases."""
    n = c.degree
    if n not in (1, 2, 3):
        raise ValueError("degree must be 1, 2 or 3")
    g = c.group

    def fn(*args):
        total = c.table[args[1:]]
        for i in range(n):
            merged = args[:i] + (g.mul(args[i], args[i + 1]),) + args[i + 2:]
            total += (-1) ** (i + 1) * c.table[merged]
        total += (-1) ** (n + 1) * c.table[args[:n]]
        return total

    return PhaseCochain.from_function(g, n + 1, fn)


def is_cocycle(c: PhaseCochain) -> bool:
    if c.degree == 3:
        g = c.group
        n = g.order
        idx = {z: i for i, z in enumerate(g.elements)}
        mul = [[idx[g.mul(a, b)] for b in g.elements] for a in g.elements]
        den = common_denominator(c.table.values())
        t = [0] * n ** 3
        for (a, b, d), v in c.table.items():
            t[(idx[a] * n + idx[b]) * n + idx[d]] = int(v * den)
        for a, b, d, f in product(range(n), repeat=4):
            val = (t[(b * n + d) * n + f] - t[(mul[a][b] * n + d) * n + f]
                   + t[(a * n + mul[b][d]) * n + f] - t[(a * n + b) * n + mul[d][f]]
                   + t[(a * n + b) * n + d])
            if val % den:
                return False
        return True
    return coboundary_phase(c).is_zero()


# ---------------------------------------------------------------------------
# solving delta u = U

def coboundary_matrix(group: CenterGroup, degree: int):
    """Integer matrix of ``delta`` from normalized ``degree``-cochains to ``degree+1``.

    Returns ``(matrix, unknowns, equations)`` where ``unknowns`` and
    ``equations`` list the non-identity argument tuples indexing columns and rows.
    """
    nonid = group.nonidentity()
    unknowns = list(product(nonid, repeat=degree))
    equations = list(product(nonid, repeat=degree + 1))
    col = {u: i for i, u in enumerate(unknowns)}
    ident = group.identity
    rows = []
    for args in equations:
        row = [0] * len(unknowns)
        terms = [(args[1:], 1)]
        for i in range(degree):
            merged = args[:i] + (group.mul(args[i], args[i + 1]),) + args[i + 2:]
            terms.append((merged, (-1) ** (i + 1)))
        terms.append((args[:degree], (-1) ** (degree + 1)))
        for key, sign in terms:
            if ident not in key:
                row[col[key]] += sign
        rows.append(row)
    return rows, unknowns, equations


def solver_modulus(group: CenterGroup, c: PhaseCochain) -> int:
    """``|Z| * lcm(denominators of c, |Z|)``: large enough to decide U(1)-solvability."""
    n = group.order
    return n * lcm(common_denominator(c.table.values()), n)


@dataclass(frozen=True)
class CoboundarySolution:
    """Result of ``solve_coboundary`` over ``(1/modulus) Z / Z``."""

    modulus: int
    solution: PhaseCochain | None
    kernel: tuple[tuple[int, ...], ...]
    unknowns: tuple

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def _cochain_from_ints(group: CenterGroup, degree: int, unknowns, values, modulus):
    table = {u: Fraction(v, modulus) % 1 for u, v in zip(unknowns, values)}
    return PhaseCochain.from_function(group, degree, lambda *a: table[a])


def solve_coboundary(group: CenterGroup, target: PhaseCochain,
                     modulus: int | None = None) -> CoboundarySolution:
    """Find ``u`` with ``delta u = target`` (degree of ``target`` is 2 or 3).

    The returned solution is the lexicographically least one over the
    modulus, in the order of ``coboundary_matrix`` unknowns.
    """
    n = target.degree - 1
    if target.degree == 3 and not is_cocycle(target):
        raise ValueError("target is not a 3-cocycle")
    if modulus is None:
        modulus = solver_modulus(group, target)
    mat, unknowns, equations = coboundary_matrix(group, n)
    if not unknowns:
        ok = target.is_zero()
        sol = PhaseCochain.zero(group, n) if ok else None
        return CoboundarySolution(modulus, sol, (), ())
    rhs = []
    for args in equations:
        val = target[args] * modulus
        if val.denominator != 1:
            raise ValueError(f"modulus {modulus} too small for value {target[args]}")
        rhs.append(int(val))
    x, kernel = solve_linear_mod(mat, rhs, modulus)
    sol = None
    if x is not None:
        basis = _echelon_mod(kernel, modulus, len(unknowns))
        x = hermite_reduce(x, basis, modulus)
        sol = _cochain_from_ints(group, n, unknowns, x, modulus)
    return CoboundarySolution(modulus, sol, tuple(tuple(k) for k in kernel), tuple(unknowns))


def solution_classes(cd: CenterData, k: int) -> tuple[int, list[PhaseCochain]]:
    """Solutions of ``delta u = U`` at level ``k`` modulo coboundaries of 1-cochains.

    Works over ``Z_M`` and identifies two solutions when their difference is
    ``delta v`` with ``v`` valued in ``(1/(M |Z|)) Z / Z``; a second
    saturation is computed and must give the same count.
    """
    g = cd.group
    U = u_obstruction(cd, k)
    base = solve_coboundary(g, U)
    if not base.solvable:
        raise ValueError(f"no solution at level {k}")
    count, reps = _classes(g, base, base.modulus * g.order)
    count2, _ = _classes(g, base, base.modulus * g.order ** 2)
    if count != count2:
        raise RuntimeError(f"class count changed under saturation: {count} -> {count2}")
    return count, reps


def _classes(g: CenterGroup, base: CoboundarySolution, big: int):
    m = base.modulus
    unknowns = list(base.unknowns)
    if not unknowns:
        return 1, [base.solution]
    scale = big // m
    cocycles = [[x * scale % big for x in kvec] for kvec in base.kernel]
    d1, _, _ = coboundary_matrix(g, 1)

    def is_coboundary(vec):
        if not d1[0]:
            return not any(v % big for v in vec)
        x, _ = solve_linear_mod(d1, vec, big)
        return x is not None

    n_cocycles = subgroup_order(cocycles, big, len(unknowns))
    reps = [[0] * len(unknowns)]
    changed = True
    while changed:
        changed = False
        for r in list(reps):
            for c in cocycles:
                cand = [(a + b) % big for a, b in zip(r, c)]
                if not any(is_coboundary([(a - b) % big for a, b in zip(cand, s)])
                           for s in reps):
                    reps.append(cand)
                    changed = True
    # sanity: the coboundaries inside the cocycles have index len(reps)
    if n_cocycles % len(reps):
        raise RuntimeError("inconsistent class count")
    # canonical representative: lexicographically least modulo coboundaries
    images = [list(col) for col in zip(*d1)] if d1 and d1[0] else []
    image_basis = _echelon_mod(images, big, len(unknowns))
    base_ints = [int(base.solution[u] * m) * scale for u in unknowns]
    canon = []
    for r in reps:
        vals = [(a + b) % big for a, b in zip(base_ints, r)]
        canon.append(hermite_reduce(vals, image_basis, big))
    canon.sort()
    return len(reps), [_cochain_from_ints(g, 2, unknowns, v, big) for v in canon]


def cohomologous(a: PhaseCochain, b: PhaseCochain) -> bool:
    """Do two 2-cochains differ by ``delta v`` for some ``U(1)``-valued ``v``?"""
    diff = a - b
    if not coboundary_phase(diff).is_zero():
        return False
    g = a.group
    m = solver_modulus(g, diff) * g.order
    return solve_coboundary(g, diff, modulus=m).solvable


@dataclass
class LevelReport:
    family: str
    rank: int
    subgroup: str
    k_min: int
    trivial_at: dict[int, bool]
    solution: PhaseCochain
    solution_class_count: int
    class_representatives: list[PhaseCochain]


def minimal_level(cd: CenterData, k_max: int = K_CAP, classify: bool = True,
                  check_forms: bool = True) -> LevelReport:
    """Smallest ``k >= 1`` for which ``delta u = U`` is solvable."""
    flags = {}
    for k in range(1, k_max + 1):
        res = solve_coboundary(cd.group, u_obstruction(cd, k, check_forms))
        flags[k] = res.solvable
        if res.solvable:
            count, reps = solution_classes(cd, k) if classify else (0, [])
            return LevelReport(cd.rs.family, cd.rs.rank, cd.group.label, k, flags,
                               res.solution, count, reps)
    raise RuntimeError(f"no level up to {k_max} trivializes the obstruction "
                       f"for {cd.rs.name}/{cd.group.label}")


# ---------------------------------------------------------------------------
# the full family u^{ijk} and the associativity identity

def lemma3_extend(cd: CenterData, k: int, u: PhaseCochain) -> dict:
    """``u^{ijk}_{z,z'} = u_{z,z'} - k chi_{k,(zz'0)}(c_{z,z'})``, keyed ``(i, j, k, z, z')``."""
    U = u_obstruction(cd, k)
    if coboundary_phase(u) != U:
        raise ValueError("u does not solve delta u = U")
    rs, act, g, e = cd.rs, cd.action, cd.group, cd.e
    nodes = list(rs.nodes)
    family = {}
    for z, z1 in product(g.elements, repeat=2):
        top = act.zi(g.mul(z, z1), 0)
        for kk in nodes:
            val = phase(u[z, z1] - k * chi_pair(rs, kk, top, e[z, z1]))
            for i, j in product(nodes, repeat=2):
                family[i, j, kk, z, z1] = val
    return family


def verify_rtc(cd: CenterData, k: int, family: dict):
    """Check the associativity identity for every node quadruple and triple of elements.

    Returns ``(True, None)`` or ``(False, counterexample)``.
    """
    rs, act, g, e = cd.rs, cd.action, cd.group, cd.e
    elems = list(g.elements)
    idx = {z: n for n, z in enumerate(elems)}
    nz = len(elems)
    nodes = list(rs.nodes)
    nn = len(nodes)
    de = cd.bockstein

    chi_kl = {}
    for z, z1 in product(elems, repeat=2):
        for kk, l in product(nodes, repeat=2):
            chi_kl[kk, l, idx[z], idx[z1]] = k * chi_pair(rs, kk, l, e[z, z1])
    chi_l = {}
    for (z, z1, z2), v in de.items():
        for l in nodes:
            chi_l[l, idx[z], idx[z1], idx[z2]] = k * chi_vertex(rs, l, v)

    den = common_denominator(list(family.values()) + list(chi_kl.values())
                             + list(chi_l.values()))
    fam = np.zeros((nn, nn, nn, nz, nz), dtype=object)
    for (i, j, kk, z, z1), v in family.items():
        fam[i, j, kk, idx[z], idx[z1]] = int(v * den)
    fam = fam.astype(np.int64) if den < 2 ** 40 else fam
    ckl = np.zeros((nn, nn, nz, nz), dtype=fam.dtype)
    for (kk, l, a, b), v in chi_kl.items():
        ckl[kk, l, a, b] = int(v * den)
    cl = np.zeros((nn, nz, nz, nz), dtype=fam.dtype)
    for (l, a, b, c), v in chi_l.items():
        cl[l, a, b, c] = int(v * den)
    mul = [[idx[g.mul(a, b)] for b in elems] for a in elems]
    inv_perm = [list(act.node_perm[g.inv(z)]) for z in elems]

    # axes of every array below are (i, j, k, l)
    for a, b, c in product(range(nz), repeat=3):
        ab, bc = mul[a][b], mul[b][c]
        p = inv_perm[a]
        t1 = fam[:, :, :, b, c][np.ix_(p, p, p)][None, :, :, :]
        t2 = fam[:, :, :, ab, c][:, None, :, :]
        t3 = fam[:, :, :, a, bc][:, :, None, :]
        t4 = fam[:, :, :, a, b][:, :, :, None]
        rhs = ckl[:, :, a, b][None, None, :, :] + cl[:, a, b, c][None, None, None, :]
        bad = np.argwhere((t1 - t2 + t3 - t4 - rhs) % den != 0)
        if len(bad):
            i, j, kk, l = (int(x) for x in bad[0])
            lhs = int(t1[0, j, kk, l] - t2[i, 0, kk, l] + t3[i, j, 0, l] - t4[i, j, kk, 0])
            where = {"nodes": (i, j, kk, l),
                     "elements": tuple(g.name(elems[x]) for x in (a, b, c)),
                     "lhs": Fraction(lhs, den) % 1,
                     "rhs": Fraction(int(rhs[0, 0, kk, l]), den) % 1}
            return False, where
    return True, None


def cyclic_invariant(c: PhaseCochain) -> Fraction:
    """``sum_a c(g, g^a, g)`` for a 3-cocycle on a cyclic group with generator ``g``.

    The map is an isomorphism ``H^3(Z_n, Q/Z) -> (1/n)Z/Z``, so a nonzero
    value certifies that ``c`` is not a coboundary.
    """
    g = c.group
    if not g.is_cyclic:
        raise ValueError("cyclic_invariant needs a cyclic group")
    gen = g.generator()
    total = Fraction(0)
    power = g.identity
    for _ in range(g.order):
        total += c[gen, power, gen]
        power = g.mul(power, gen)
    return phase(total)
