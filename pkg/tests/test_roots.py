from fractions import Fraction

import pytest

from gerbelevels.lattice import determinant
from gerbelevels.roots import (build_root_system, in_alcove, reflection_matrix_word,
                               stabilizer_coweight_lattice, weyl_reflection)

CASES = ([("A", r) for r in range(1, 8)] + [("B", r) for r in range(2, 7)]
         + [("C", r) for r in range(2, 7)] + [("D", r) for r in range(4, 9)]
         + [("E6", None), ("E7", None)])

# classical values, used as independent oracles
ROOT_COUNT = {"A": lambda r: r * (r + 1), "B": lambda r: 2 * r * r, "C": lambda r: 2 * r * r,
              "D": lambda r: 2 * r * (r - 1), "E6": lambda r: 72, "E7": lambda r: 126}
DUAL_COXETER = {"A": lambda r: r + 1, "B": lambda r: 2 * r - 1, "C": lambda r: r + 1,
                "D": lambda r: 2 * r - 2, "E6": lambda r: 12, "E7": lambda r: 18}
CARTAN_DET = {"A": lambda r: r + 1, "B": lambda r: 2, "C": lambda r: 2, "D": lambda r: 4,
              "E6": lambda r: 3, "E7": lambda r: 2}

F = Fraction


@pytest.mark.parametrize("family,rank", CASES)
def test_classical_invariants(family, rank):
    rs = build_root_system(family, rank)
    r = rs.rank
    assert len(rs.roots) == ROOT_COUNT[family](r)
    assert rs.dual_coxeter == DUAL_COXETER[family](r)
    assert determinant(rs.cartan_matrix()) == CARTAN_DET[family](r)


@pytest.mark.parametrize("family,rank", CASES)
def test_long_roots_and_duality(family, rank):
    rs = build_root_system(family, rank)
    assert max(rs.form(a, a) for a in rs.roots) == 2
    assert rs.form(rs.highest_root, rs.highest_root) == 2
    n = rs.rank
    for i in range(n):
        for j in range(n):
            assert rs.form(rs.simple_roots[i], rs.fundamental_coweights[j]) == (i == j)
            assert rs.form(rs.coroots[i], rs.fundamental_weights[j]) == (i == j)


@pytest.mark.parametrize("family,rank", CASES)
def test_root_set_closed_under_reflections(family, rank):
    rs = build_root_system(family, rank)
    for a in rs.simple_roots:
        assert {weyl_reflection(a, b, rs) for b in rs.roots} == set(rs.roots)


@pytest.mark.parametrize("family,rank", CASES)
def test_highest_root_and_marks(family, rank):
    rs = build_root_system(family, rank)
    phi = rs.highest_root
    assert phi in rs.roots
    assert all(rs.form(phi, a) >= 0 for a in rs.simple_roots)
    # phi = sum k_i alpha_i, phi-dual = sum comark_i alpha_i-dual
    total = sum((a * k for a, k in zip(rs.simple_roots, rs.marks)), phi * 0)
    assert total == phi
    cophi = phi * F(2, rs.form(phi, phi))
    total = sum((a * k for a, k in zip(rs.coroots, rs.comarks)), phi * 0)
    assert total == cophi


@pytest.mark.parametrize("family,rank", CASES)
def test_alcove_vertices(family, rank):
    rs = build_root_system(family, rank)
    for i in rs.nodes:
        tau = rs.alcove_vertices[i]
        assert in_alcove(rs, tau)
        assert rs.form(rs.highest_root, tau) == (0 if i == 0 else 1)


def test_exceptional_coweights():
    e6 = build_root_system("E6")
    s = F(1, 6)
    assert tuple(e6.fundamental_coweights[4]) == (s, s, s, s, s, F(-5, 6), 1)
    e7 = build_root_system("E7")
    q = F(1, 4)
    assert tuple(e7.fundamental_coweights[0]) == (3 * q,) + (-q,) * 6 + (3 * q,)


def test_reflection_word_order():
    rs = build_root_system("A", 2)
    a1, a2 = rs.simple_roots
    # rightmost letter acts first
    assert reflection_matrix_word(rs, [1, 2], a1) == weyl_reflection(a1, weyl_reflection(a2, a1, rs), rs)


def test_errors():
    with pytest.raises(ValueError):
        build_root_system("F", 4)
    with pytest.raises(ValueError):
        build_root_system("B", 1)
    with pytest.raises(ValueError):
        build_root_system("E6", 7)
    rs = build_root_system("A", 2)
    with pytest.raises(IndexError):
        stabilizer_coweight_lattice(rs, 5)
    with pytest.raises(ValueError):
        weyl_reflection([1, 1, 1], [1, 0, 0], rs)
