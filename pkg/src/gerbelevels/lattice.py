"""Exact rational vectors, integer normal forms and lattice primitives.

Everything here works over ``fractions.Fraction`` and Python ints.  No floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

IntMatrix = list[list[int]]


class Vec(tuple):
    """Immutable exact coordinate vector.

    Arithmetic is elementwise; ``*`` is multiplication by a scalar, not tuple
    repetition.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable) -> "Vec":
        return super().__new__(cls, (Fraction(c) for c in coords))

    @classmethod
    def zero(cls, dim: int) -> "Vec":
        return cls([0] * dim)

    @classmethod
    def unit(cls, dim: int, i: int) -> "Vec":
        return cls([1 if k == i else 0 for k in range(dim)])

    @property
    def ambient_dim(self) -> int:
        return len(self)

    def _check(self, other: Sequence) -> None:
        if len(other) != len(self):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return Vec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return Vec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, c):
        return Vec(a * c for a in self)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Vec(a / c for a in self)

    def is_zero(self) -> bool:
        return not any(self)

    def __repr__(self) -> str:
        return "Vec(" + ", ".join(str(a) for a in self) + ")"


def dot(x: Sequence, y: Sequence, gram: Sequence) -> Fraction:
    """Diagonal-Gram inner product ``sum g_i x_i y_i``."""
    if not (len(x) == len(y) == len(gram)):
        raise ValueError(f"dimension mismatch: {len(x)}, {len(y)}, gram {len(gram)}")
    return sum((g * a * b for g, a, b in zip(gram, x, y)), Fraction(0))


def bilinear_form(x: Sequence, y: Sequence, rs) -> Fraction:
    """The invariant form tr(xy) of the root system ``rs`` (long roots have length 2)."""
    return dot(x, y, rs.gram)


# ---------------------------------------------------------------------------
# rational matrices

def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if a and len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in cols] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vec:
    if a and len(a[0]) != len(v):
        raise ValueError("dimension mismatch in matrix-vector product")
    return Vec(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def determinant(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


# ---------------------------------------------------------------------------
# integer normal forms

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``D = U A V`` with ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries and ``d_1 | d_2 | ...``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [[int(x) for x in row] for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def combine_rows(i, j, s, t, p, q):
        # (row_i, row_j) <- (s*row_i + t*row_j, p*row_i + q*row_j)
        for mat in (d, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [s * x + t * y for x, y in zip(ri, rj)]
            mat[j] = [p * x + q * y for x, y in zip(ri, rj)]

    def combine_cols(i, j, s, t, p, q):
        for mat in (d, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i] = s * x + t * y
                row[j] = p * x + q * y

    for k in range(min(m, n)):
        nz = [(abs(d[i][j]), i, j) for i in range(k, m) for j in range(k, n) if d[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(k, pi)
        swap_cols(k, pj)
        while True:
            # exact division keeps the pivot row fixed; the gcd step only
            # fires when it strictly shrinks the pivot, so this terminates
            for i in range(k + 1, m):
                if d[i][k]:
                    if d[i][k] % d[k][k] == 0:
                        combine_rows(k, i, 1, 0, -(d[i][k] // d[k][k]), 1)
                        continue
                    g, s, t = _xgcd(d[k][k], d[i][k])
                    a_, b_ = d[k][k] // g, d[i][k] // g
                    combine_rows(k, i, s, t, -b_, a_)
            for j in range(k + 1, n):
                if d[k][j]:
                    if d[k][j] % d[k][k] == 0:
                        combine_cols(k, j, 1, 0, -(d[k][j] // d[k][k]), 1)
                        continue
                    g, s, t = _xgcd(d[k][k], d[k][j])
                    a_, b_ = d[k][k] // g, d[k][j] // g
                    combine_cols(k, j, s, t, -b_, a_)
            if any(d[i][k] for i in range(k + 1, m)):
                continue
            piv = d[k][k]
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if d[i][j] % piv), None)
            if bad is None:
                break
            # fold the offending row into the pivot row and redo
            combine_rows(k, bad[0], 1, 1, 0, 1)
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            u[k] = [-x for x in u[k]]
    return d, u, v


def _echelon_mod(gens: Iterable[Sequence[int]], modulus: int, ncols: int) -> list[list[int]]:
    """Triangular basis of the lattice ``<gens> + modulus * Z^ncols``.

    Returns ``ncols`` rows; row ``j`` is zero before column ``j`` and its
    entry at ``j`` is a positive divisor of ``modulus``.  Other entries are
    reduced into ``[0, modulus)``.
    """
    rows = [[x % modulus for x in g] for g in gens]
    rows = [r for r in rows if any(r)]
    basis = []
    for j in range(ncols):
        piv = [0] * ncols
        piv[j] = modulus
        rest = []
        for r in rows:
            if r[j] == 0:
                rest.append(r)
                continue
            g, s, t = _xgcd(piv[j], r[j])
            a_, b_ = piv[j] // g, r[j] // g
            new_piv = [(s * x + t * y) % modulus for x, y in zip(piv, r)]
            other = [(b_ * x - a_ * y) % modulus for x, y in zip(piv, r)]
            new_piv[j] = g
            piv = new_piv
            if any(other):
                rest.append(other)
        # modulus * e_j is in the lattice, so the pivot row may be scaled to it
        scaled = [(x * (modulus // piv[j])) % modulus for x in piv]
        if any(scaled):
            rest.append(scaled)
        basis.append(piv)
        rows = rest
    return basis


def hermite_reduce(x: Sequence[int], basis: Sequence[Sequence[int]], modulus: int) -> list[int]:
    """Lexicographically least representative of ``x`` modulo an ``_echelon_mod`` basis."""
    x = [v % modulus for v in x]
    for j, row in enumerate(basis):
        q = x[j] // row[j]
        if q:
            x = [(a - q * b) % modulus for a, b in zip(x, row)]
    return x


def subgroup_order(gens: Iterable[Sequence[int]], modulus: int, ncols: int) -> int:
    """Order of the subgroup of ``(Z/modulus)^ncols`` generated by ``gens``."""
    basis = _echelon_mod(gens, modulus, ncols)
    order = 1
    for j, row in enumerate(basis):
        order *= modulus // row[j]
    return order


def _reduce_rows_mod(a: Sequence[Sequence[int]], b: Sequence[int], modulus: int,
                     ncols: int) -> tuple[list[list[int]], list[int], bool]:
    """Sparse unimodular row echelon of ``[A | b]`` over Z/modulus.

    Returns the nonzero rows, their right-hand sides, and whether every row
    that vanished carried a zero right-hand side.
    """
    rows = []
    consistent = True
    for row, rhs in zip(a, b):
        sp = {j: x % modulus for j, x in enumerate(row) if x % modulus}
        rhs %= modulus
        if sp:
            rows.append((sp, rhs))
        elif rhs:
            consistent = False
    seen = set()
    uniq = []
    for sp, rhs in rows:
        key = (tuple(sorted(sp.items())), rhs)
        if key not in seen:
            seen.add(key)
            uniq.append((sp, rhs))
    rows = uniq

    def lin(s, r1, t, r2):
        sp1, c1 = r1
        sp2, c2 = r2
        out = {}
        for j in sp1.keys() | sp2.keys():
            val = (s * sp1.get(j, 0) + t * sp2.get(j, 0)) % modulus
            if val:
                out[j] = val
        return out, (s * c1 + t * c2) % modulus

    pivots = []
    for j in range(ncols):
        active = [r for r in rows if j in r[0]]
        if not active:
            continue
        rest = [r for r in rows if j not in r[0]]
        best = min(range(len(active)), key=lambda n: gcd(active[n][0][j], modulus))
        piv = active.pop(best)
        for r in active:
            q, rem = divmod(r[0][j], piv[0][j])
            if rem == 0:
                other = lin(1, r, -q, piv)
                if other[0]:
                    rest.append(other)
                elif other[1]:
                    consistent = False
                continue
            g, s, t = _xgcd(piv[0][j], r[0][j])
            a_, b_ = piv[0][j] // g, r[0][j] // g
            other = lin(b_, piv, -a_, r)
            piv = lin(s, piv, t, r)
            if other[0]:
                rest.append(other)
            elif other[1]:
                consistent = False
        pivots.append(piv)
        rows = rest
    dense = [[sp.get(j, 0) for j in range(ncols)] for sp, _ in pivots]
    return dense, [c for _, c in pivots], consistent


def solve_linear_mod(a: Sequence[Sequence[int]], b: Sequence[int], modulus: int
                     ) -> tuple[list[int] | None, list[list[int]]]:
    """Solve ``A x = b (mod modulus)``.

    Returns ``(x, kernel)`` where ``x`` is one solution with entries in
    ``[0, modulus)`` or ``None`` when the system is inconsistent, and
    ``kernel`` generates the solutions of the homogeneous system.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} rows, rhs of length {len(b)}")
    ncols = len(a[0]) if a else 0
    if any(len(row) != ncols for row in a):
        raise ValueError("ragged matrix")
    if ncols == 0:
        ok = all(x % modulus == 0 for x in b)
        return ([] if ok else None), []

    rows, rhs, consistent = _reduce_rows_mod(a, b, modulus, ncols)
    if not rows:
        kernel = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        return ([0] * ncols if consistent else None), kernel

    d, u, v = smith_normal_form(rows)
    c = [sum(x * y for x, y in zip(urow, rhs)) % modulus for urow in u]
    y = [0] * ncols
    steps = [1] * ncols
    for i in range(len(rows)):
        di = d[i][i] if i < ncols else 0
        g = gcd(di, modulus)
        if c[i] % g:
            consistent = False
            continue
        if i < ncols:
            mg = modulus // g
            y[i] = (c[i] // g) * pow(di // g, -1, mg) % mg if mg > 1 else 0
            steps[i] = mg
    kernel = []
    for i in range(ncols):
        col = [(v[r][i] * steps[i]) % modulus for r in range(ncols)]
        if any(col):
            kernel.append(col)
    if not consistent:
        return None, kernel
    x = [sum(v[r][i] * y[i] for i in range(ncols)) % modulus for r in range(ncols)]
    return x, kernel


# ---------------------------------------------------------------------------
# lattices

@dataclass(frozen=True)
class Lattice:
    """Integer span of rational vectors (a generating set; independence not required)."""

    basis: tuple[Vec, ...]
    ambient_dim: int

    def __init__(self, basis: Iterable[Sequence], ambient_dim: int | None = None):
        vecs = tuple(Vec(b) for b in basis)
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient_dim required for an empty basis")
            ambient_dim = len(vecs[0])
        if any(len(b) != ambient_dim for b in vecs):
            raise ValueError("dimension mismatch in lattice basis")
        object.__setattr__(self, "basis", vecs)
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def _scaled(self, extra: Iterable[Sequence] = ()) -> tuple[int, IntMatrix]:
        """Common denominator ``D`` and the integer matrix ``D * [basis]`` (columns)."""
        extra = list(extra)
        den = common_denominator([x for b in self.basis for x in b] +
                                 [x for e in extra for x in e])
        cols = [[int(x * den) for x in b] for b in self.basis]
        mat = [[col[i] for col in cols] for i in range(self.ambient_dim)]
        return den, mat

    def coefficients(self, v: Sequence) -> list[int] | None:
        """Integer coefficients expressing ``v`` in the generators, or ``None``."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"dimension mismatch: {len(v)} vs {self.ambient_dim}")
        if not self.basis:
            return [] if not any(v) else None
        den, mat = self._scaled([v])
        rhs = [int(x * den) for x in v]
        d, u, w = smith_normal_form(mat)
        c = [sum(x * y for x, y in zip(row, rhs)) for row in u]
        n = len(self.basis)
        y = [0] * n
        for i, ci in enumerate(c):
            di = d[i][i] if i < n else 0
            if di == 0:
                if ci:
                    return None
            elif ci % di:
                return None
            else:
                y[i] = ci // di
        return [sum(w[r][i] * y[i] for i in range(n)) for r in range(n)]

    def contains(self, v: Sequence) -> bool:
        return self.coefficients(v) is not None


def in_lattice(v: Sequence, lattice: Lattice) -> bool:
    return lattice.contains(v)


def intersect(l1: Lattice, l2: Lattice) -> Lattice:
    """Generators of ``l1 ∩ l2`` from the integer kernel of ``[B1 | -B2]``."""
    if l1.ambient_dim != l2.ambient_dim:
        raise ValueError("dimension mismatch")
    joint = Lattice(list(l1.basis) + [-b for b in l2.basis], l1.ambient_dim)
    _, mat = joint._scaled()
    d, _, w = smith_normal_form(mat)
    n1 = len(l1.basis)
    ncols = len(joint.basis)
    rank = sum(1 for i in range(min(len(d), ncols)) if d[i][i])
    gens = []
    for i in range(rank, ncols):
        coeffs = [w[r][i] for r in range(n1)]
        vec = Vec.zero(l1.ambient_dim)
        for c, b in zip(coeffs, l1.basis):
            vec = vec + b * c
        if not vec.is_zero():
            gens.append(vec)
    return Lattice(gens, l1.ambient_dim)
