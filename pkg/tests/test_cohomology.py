from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gerbelevels.center import center_data, center_of, subgroups_of
from gerbelevels.cohomology import (PhaseCochain, coboundary_phase, cohomologous, is_cocycle,
                                    lemma1_check, lemma1_sweep, lemma3_extend, minimal_level,
                                    solution_classes, solve_coboundary, u_obstruction,
                                    verify_rtc)
from gerbelevels.roots import build_root_system

F = Fraction
HALF = F(1, 2)


def case(family, rank=None, subgroup="full"):
    return center_data(build_root_system(family, rank), subgroup)


# --- closed-form obstruction tables, transcribed per family ------------------

def expected_u(family, r, k, names):
    """Closed-form U as a phase for the full center, keyed by element names."""
    def power(name):
        return 0 if name == "1" else 1 if name == "z" else int(name[2:])

    out = {}
    for a, b, c in names:
        n, n1, n2 = power(a), power(b), power(c)
        if family == "A":
            carry = (n + n1 - (n + n1) % (r + 1)) // (r + 1)
            val = HALF * k * r * n2 * carry
        elif family == "D":
            carry = (n + n1 - (n + n1) % 4) // 4
            val = HALF * k * n2 * carry
        elif family == "C":
            val = HALF * k * r if (n, n1, n2) == (1, 1, 1) else 0
        elif family == "E7":
            val = HALF * k if (n, n1, n2) == (1, 1, 1) else 0
        else:
            val = 0
        out[a, b, c] = F(val) % 1
    return out


def expected_u_d_even(r, k):
    sign1 = [("z1z2", "z1", "z1"), ("z1z2", "z1", "z1z2")]
    sign2 = [("z1", "z1", "z1"), ("z1", "z1", "z1z2"), ("z1", "z1z2", "z1"),
             ("z1", "z1z2", "z1z2"), ("z1z2", "z1z2", "z1"), ("z1z2", "z1z2", "z1z2")]
    sign3 = [("z2", "z1", "z1"), ("z2", "z1", "z1z2"), ("z2", "z2", "z1"),
             ("z2", "z2", "z1z2"), ("z1z2", "z2", "z1"), ("z1z2", "z2", "z1z2")]
    out = {}
    for t in sign1:
        out[t] = F(k * (1 + r // 2), 2) % 1
    for t in sign2:
        out[t] = F(k * r // 2, 2) % 1
    for t in sign3:
        out[t] = F(k, 2) % 1
    return out


CYCLIC_TABLE_CASES = ([("A", r) for r in range(1, 8)] + [("B", r) for r in range(2, 7)]
                      + [("C", r) for r in range(2, 8)] + [("D", r) for r in (5, 7, 9)]
                      + [("E6", None), ("E7", None)])


@pytest.mark.parametrize("family,rank", CYCLIC_TABLE_CASES)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_obstruction_matches_closed_form(family, rank, k):
    cd = case(family, rank)
    U = u_obstruction(cd, k)
    got = U.named()
    want = expected_u(family, cd.rs.rank, k, [tuple(key.split(",")) for key in got])
    assert got == {",".join(t): v for t, v in want.items()}


@pytest.mark.parametrize("rank", [4, 6, 8])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_obstruction_d_even_table(rank, k):
    U = u_obstruction(case("D", rank), k).named()
    nonzero = {tuple(key.split(",")): v for key, v in U.items() if v}
    want = {t: v for t, v in expected_u_d_even(rank, k).items() if v}
    assert nonzero == want


# --- cochain algebra ----------------------------------------------------------

def random_cochain(group, degree, values):
    it = iter(values)
    return PhaseCochain.from_function(group, degree, lambda *a: F(next(it), 12))


GROUPS = [center_of(build_root_system(f, r)) for f, r in (("A", 1), ("A", 2), ("D", 5), ("D", 4))]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GROUPS), st.sampled_from([1, 2]), st.data())
def test_delta_squared_vanishes(group, degree, data):
    values = data.draw(st.lists(st.integers(0, 11), min_size=group.order ** degree,
                                max_size=group.order ** degree))
    c = random_cochain(group, degree, values)
    assert coboundary_phase(coboundary_phase(c)).is_zero()
    if degree == 2:
        assert is_cocycle(coboundary_phase(c))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GROUPS[:3]), st.data())
def test_coboundaries_are_solved(group, data):
    n = group.order ** 2
    u = random_cochain(group, 2, data.draw(st.lists(st.integers(0, 11), min_size=n, max_size=n)))
    target = coboundary_phase(u)
    res = solve_coboundary(group, target)
    assert res.solvable
    assert coboundary_phase(res.solution) == target


def test_solver_rejects_non_cocycle():
    g = center_of(build_root_system("A", 1))
    z = g.generator()
    bad = PhaseCochain.from_function(g, 3, lambda a, b, c: HALF if (a, b, c) == (z, z, z) else 0)
    assert is_cocycle(bad)
    g3 = center_of(build_root_system("A", 2))
    z = g3.generator()
    bad = PhaseCochain.from_function(g3, 3, lambda a, b, c: HALF if (a, b, c) == (z, z, z) else 0)
    assert not is_cocycle(bad)
    with pytest.raises(ValueError):
        solve_coboundary(g3, bad)


# --- solver soundness against independent oracles -------------------------------

def cyclic_invariant_oracle(U, group):
    gen = group.generator()
    total, power = F(0), group.identity
    for _ in range(group.order):
        total += U[gen, power, gen]
        power = group.mul(power, gen)
    return total % 1


def exhaustive_solvable(group, U, modulus):
    nonid = group.nonidentity()
    pairs = list(product(nonid, repeat=2))
    for values in product(range(modulus), repeat=len(pairs)):
        table = dict(zip(pairs, values))
        u = PhaseCochain.from_function(group, 2, lambda a, b: F(table[a, b], modulus))
        if coboundary_phase(u) == U:
            return True
    return False


def all_subgroup_cases(families):
    out = []
    for f, r in families:
        rs = build_root_system(f, r)
        for sub in subgroups_of(center_of(rs)):
            out.append((f, r, sub.label))
    return out


@pytest.mark.parametrize("family,rank,sub", all_subgroup_cases(
    [("A", r) for r in range(1, 8)] + [("C", 3), ("C", 4), ("D", 5), ("D", 7), ("B", 3),
                                       ("E6", None), ("E7", None)]))
def test_cyclic_verdicts_match_invariant(family, rank, sub):
    cd = case(family, rank, sub)
    g = cd.group
    for k in (1, 2, 3):
        U = u_obstruction(cd, k)
        res = solve_coboundary(g, U)
        assert res.solvable == (cyclic_invariant_oracle(U, g) == 0)
        if res.solvable:
            assert coboundary_phase(res.solution) == U


ORDER_TWO = [("A", 1, "full"), ("A", 3, "Z2"), ("A", 5, "Z2"), ("A", 7, "Z2"), ("B", 3, "full"),
             ("B", 4, "full"), ("C", 3, "full"), ("C", 4, "full"), ("D", 5, "Z2"),
             ("D", 6, "z1"), ("D", 6, "z2"), ("D", 6, "z1z2"), ("D", 8, "z1"), ("E7", None, "full")]


@pytest.mark.parametrize("family,rank,sub", ORDER_TWO)
def test_order_two_verdicts_match_exhaustive_search(family, rank, sub):
    cd = case(family, rank, sub)
    assert cd.group.order == 2
    for k in (1, 2, 3):
        U = u_obstruction(cd, k)
        res = solve_coboundary(cd.group, U)
        assert res.solvable == exhaustive_solvable(cd.group, U, res.modulus)


@pytest.mark.parametrize("family,rank", [("A", 2), ("E6", None), ("A", 5)])
def test_order_three_verdicts_match_exhaustive_search(family, rank):
    sub = "Z3" if family == "A" and rank == 5 else "full"
    cd = case(family, rank, sub)
    for k in (1, 2):
        U = u_obstruction(cd, k)
        res = solve_coboundary(cd.group, U)
        assert res.solvable == exhaustive_solvable(cd.group, U, res.modulus)


@pytest.mark.parametrize("family,rank,sub", [("A", 3, "full"), ("D", 5, "full"),
                                             ("D", 6, "full"), ("C", 3, "full")])
def test_levels_are_monotone_under_multiples(family, rank, sub):
    cd = case(family, rank, sub)
    for k in range(1, 4):
        if solve_coboundary(cd.group, u_obstruction(cd, k)).solvable:
            for m in (2, 3):
                assert solve_coboundary(cd.group, u_obstruction(cd, k * m)).solvable


# --- classes of solutions ----------------------------------------------------------

def pattern(group, value):
    pairs = {("z2", "z1"), ("z2", "z1z2"), ("z1z2", "z1"), ("z1z2", "z1z2")}
    return PhaseCochain.from_function(
        group, 2, lambda a, b: value if (group.name(a), group.name(b)) in pairs else 0)


@pytest.mark.parametrize("rank,k,values", [(8, 1, (F(1, 4), F(3, 4))), (4, 1, (F(1, 4), F(3, 4))),
                                           (6, 2, (F(0), HALF))])
def test_doubling_matches_listed_solutions(rank, k, values):
    cd = case("D", rank)
    assert minimal_level(cd, classify=False).k_min == k
    U = u_obstruction(cd, k)
    listed = [pattern(cd.group, v) for v in values]
    for u in listed:
        assert coboundary_phase(u) == U
    assert not cohomologous(*listed)
    count, reps = solution_classes(cd, k)
    assert count == 2
    assert reps == listed


@pytest.mark.parametrize("family,rank,sub", all_subgroup_cases(
    [("A", 3), ("A", 5), ("C", 3), ("D", 5), ("D", 6), ("E6", None), ("E7", None)]))
def test_class_counts(family, rank, sub):
    cd = case(family, rank, sub)
    k = minimal_level(cd, classify=False).k_min
    count, reps = solution_classes(cd, k)
    assert count == (2 if sub == "Z2xZ2" else 1)
    U = u_obstruction(cd, k)
    assert all(coboundary_phase(r) == U for r in reps)


@pytest.mark.parametrize("family,rank", [("C", 3), ("D", 5), ("E7", None), ("B", 4)])
def test_trivial_solution_at_minimal_level(family, rank):
    cd = case(family, rank)
    rep = minimal_level(cd)
    assert rep.solution.is_zero()


def test_no_solution_raises_in_classification():
    with pytest.raises(ValueError):
        solution_classes(case("C", 3), 1)


# --- the full solution family and associativity ----------------------------------

@pytest.mark.parametrize("family,rank", [("A", 3), ("C", 3), ("D", 6), ("E6", None)])
def test_extended_family_is_associative(family, rank):
    cd = case(family, rank)
    rep = minimal_level(cd)
    fam = lemma3_extend(cd, rep.k_min, rep.solution)
    g, act = cd.group, cd.action
    for z, z1 in product(g.elements, repeat=2):
        key = (0, act.zi(z, 0), act.zi(g.mul(z, z1), 0), z, z1)
        assert fam[key] == rep.solution[z, z1]
    if family == "E6":
        assert all(fam[i, j, kk, z, z1] == rep.solution[z, z1]
                   for (i, j, kk, z, z1) in fam)
    ok, where = verify_rtc(cd, rep.k_min, fam)
    assert ok and where is None


def test_extension_rejects_non_solution():
    cd = case("C", 3)
    with pytest.raises(ValueError):
        lemma3_extend(cd, 1, PhaseCochain.zero(cd.group, 2))


def test_perturbed_family_fails_with_counterexample():
    cd = case("C", 3)
    rep = minimal_level(cd)
    fam = lemma3_extend(cd, rep.k_min, rep.solution)
    z = cd.group.generator()
    key = (1, 2, 3, z, z)
    fam[key] = (fam[key] + HALF) % 1
    ok, where = verify_rtc(cd, rep.k_min, fam)
    assert not ok
    assert where["lhs"] != where["rhs"]


def test_rtc_trivial_group():
    cd = case("A", 3, "trivial")
    rep = minimal_level(cd)
    fam = lemma3_extend(cd, rep.k_min, rep.solution)
    assert verify_rtc(cd, rep.k_min, fam) == (True, None)


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 3), ("C", 4), ("D", 5), ("D", 6),
                                         ("E6", None), ("E7", None)])
def test_character_invariance(family, rank):
    cd = case(family, rank)
    assert lemma1_sweep(cd) == (True, None)
    g = cd.group
    z = g.nonidentity()[0]
    assert lemma1_check(cd, z, 0, cd.rs.rank)


def test_obstruction_forms_agree_everywhere():
    for family, rank in [("A", 5), ("D", 8), ("E7", None)]:
        cd = case(family, rank)
        for k in (1, 2, 3):
            U = u_obstruction(cd, k, check_forms=True)
            assert is_cocycle(U)


@pytest.mark.parametrize("multiple", [1, 3])
def test_carry_cocycle_on_z3_against_exhaustive_search(multiple):
    g = center_of(build_root_system("A", 2))
    U = PhaseCochain.from_function(
        g, 3, lambda a, b, c: F(multiple * a[0] * ((b[0] + c[0]) // 3), 3))
    assert is_cocycle(U)
    res = solve_coboundary(g, U)
    assert res.solvable == (multiple % 3 == 0)
    assert res.solvable == exhaustive_solvable(g, U, res.modulus)
