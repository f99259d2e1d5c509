from fractions import Fraction
from itertools import product
from math import comb

import pytest

from nnrep.boolean import (
    EXACT,
    LINEAR,
    DecisionList,
    Depth2Circuit,
    SymmetricProfile,
    ThresholdGate,
    build_and,
    build_and2,
    build_comp,
    build_eq,
    build_family,
    build_or,
    build_parity,
    compose_disjoint,
    sample_ldl,
    symmetric_sample_ldl,
    intervals,
    symmetric_ldl,
)
from nnrep.errors import DepthExceedsArity, RegularityViolated, XStarNotFound
from nnrep.numerics import dot, resolution_matrix
from nnrep.representations import (
    check_regularity,
    construct,
    construct_edl,
    construct_equality_system,
    construct_ldl,
    construct_ldl_general,
    construct_ldl_regular,
    construct_polytope,
    construct_sym_elt,
    construct_sym_lt,
    full_rank_perturbation,
    polytope_circuit,
    sym_elt_size,
    sym_lt_size,
    type_rule_for,
)
from nnrep.verification import verify_exhaustive

F = Fraction
half = F(1, 2)


def passes(anchors, circuit):
    report = verify_exhaustive(anchors, circuit, type_rule=type_rule_for(anchors, circuit))
    return report.passed and report.tie_violations == 0


# --- regularity -----------------------------------------------------------


def test_regular_eq_pair():
    c = compose_disjoint(build_parity(2), build_eq(1), 2)
    r = check_regularity(c)
    assert r.regular and r.shared_norm == 2 and r.xstar == (0, 0, 0, 0)


def test_unequal_norms_detected():
    c = Depth2Circuit((ThresholdGate((1, 0), 0), ThresholdGate((0, 2), 0)), build_and(2))
    r = check_regularity(c)
    assert not r.equal_norms and r.mutually_orthogonal


def test_non_orthogonal_detected():
    r = check_regularity(sample_ldl(), find_xstar=False)
    assert not r.mutually_orthogonal


def test_missing_xstar_raises():
    c = Depth2Circuit((ThresholdGate((1, 1), 3, EXACT),), build_and(1))
    with pytest.raises(XStarNotFound):
        check_regularity(c)


def test_xstar_search_without_hint():
    c = Depth2Circuit((ThresholdGate((1, 1, 0), 1, EXACT), ThresholdGate((1, -1, 0), 1, EXACT)), build_and(2))
    assert check_regularity(c).xstar == (1, 0, 0)


# --- polytopes ------------------------------------------------------------


def test_polytope_identity_example():
    A = construct_polytope([[1, 0], [0, 1]], [0, 0])
    assert [tuple(r) for r in A.anchors] == [(0, 0), (1, 0), (0, 1)]
    assert A.labels == (1, 0, 0)
    assert A.params.c == (half, half)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_equality_system_sizes(m):
    c = build_family("and-eq", m, 1)
    A = construct_equality_system([g.weights for g in c.gates], [int(g.bias) for g in c.gates])
    assert A.size == 2 * m + 1
    assert passes(A, c)


def test_reflection_midpoints_lie_on_shifted_hyperplanes():
    rows, b = [[1, 2, -1], [0, 1, 1], [-2, 0, 1]], [1, 1, 0]
    A = construct_polytope(rows, b)
    a0 = A.anchors[0]
    for i, row in enumerate(rows):
        mid = [(p + q) / 2 for p, q in zip(a0, A.anchors[i + 1])]
        assert dot(row, mid) == b[i] + half
        assert passes(A, polytope_circuit(rows, b))


def test_infeasible_polytope_is_constant_zero():
    A = construct_polytope([[1, 1]], [-1])
    assert passes(A, lambda X: 0)


def test_zero_row_rejected():
    with pytest.raises(ValueError):
        construct_polytope([[0, 0]], [1])


# --- symmetric tops -------------------------------------------------------


@pytest.mark.parametrize(
    "top, expected",
    [(build_parity(2), 9), (build_or(2), 8), (build_and(2), 5), (build_and(3), 9)],
)
def test_sym_elt_sizes(top, expected):
    c = compose_disjoint(top, build_eq(1), top.m)
    A = construct_sym_elt(c)
    assert A.size == expected == sym_elt_size(intervals(top), top.m)
    assert passes(A, c)


def test_sym_elt_params():
    c = compose_disjoint(build_parity(2), build_eq(1), 2)
    A = construct_sym_elt(c)
    assert A.params.d == F(1, 4)
    assert A.params.T == (0, 1, 2)


def test_sym_lt_ip2_4():
    c = build_family("ip2", 1, 2)
    A = construct_sym_lt(c)
    assert A.size == 4
    assert A.params.xstar == (F(3, 4),) * 4
    assert A.params.d == F(1, 4)
    assert passes(A, c)


def test_sym_lt_and_of_two_gates():
    c = compose_disjoint(build_and(2), build_comp(1), 2)
    assert construct_sym_lt(c).size == 3


def test_sym_lt_parity3_comp2():
    c = compose_disjoint(build_parity(3), build_comp(2), 3)
    A = construct_sym_lt(c)
    assert A.size == 8
    assert passes(A, c)


def test_sym_lt_constant_top():
    c = compose_disjoint(SymmetricProfile((1, 1, 1)), build_and2(), 2)
    A = construct_sym_lt(c)
    assert passes(A, lambda X: 1)


def test_sym_requires_matching_kind():
    with pytest.raises(ValueError):
        construct_sym_lt(build_family("parity-eq", 2, 1))
    with pytest.raises(ValueError):
        construct_sym_elt(build_family("ip2", 1, 2))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_size_formulas_against_direct_count(m):
    for values in product((0, 1), repeat=m + 1):
        bounds = intervals(SymmetricProfile(values))
        lefts = [0] + [r + 1 for r in bounds[:-1]]
        assert sym_elt_size(bounds, m) == sum(comb(m, t) * 2 ** (m - t) for t in lefts)
        ts = {t for r in bounds[:-1] for t in (r, r + 1)}
        assert sym_lt_size(bounds, m) == sum(comb(m, t) for t in ts)


def test_unequal_norms_rejected():
    c = Depth2Circuit((ThresholdGate((1, 0), 0, EXACT), ThresholdGate((0, 2), 0, EXACT)), build_and(2))
    with pytest.raises(RegularityViolated):
        construct_sym_elt(c)


# --- decision lists -------------------------------------------------------


def test_ldl_single_gate():
    l = DecisionList((ThresholdGate((1, 1), 2),), (1,), 0)
    A = construct_ldl(l)
    assert A.size == 2
    assert passes(A, l)


def test_ldl_disjoint_gates():
    l = DecisionList((ThresholdGate((1, 1, 0, 0), 1), ThresholdGate((0, 0, 1, 1), 2)), (0, 1), 0, (1, 0, 1, 1))
    A = construct_ldl_regular(l)
    assert A.size == 3
    assert passes(A, l)


def test_symmetric_list_is_not_regular():
    with pytest.raises(RegularityViolated):
        construct_ldl_regular(symmetric_sample_ldl())


def test_ldl_general_sample_ldl():
    l = sample_ldl()
    A = construct_ldl_general(l)
    assert A.size == 4 and A.params.epsilon == 0
    assert passes(A, l)


def test_ldl_general_symmetric_sample():
    l = symmetric_sample_ldl()
    A = construct_ldl(l)
    assert A.size == 5 and A.construction == "ldl_general"
    assert A.params.epsilon == F(1, 4)
    assert passes(A, l)


def test_ldl_depth_exceeds_arity():
    g = ThresholdGate((1, 1), 1)
    l = DecisionList((g, ThresholdGate((1, -1), 0), ThresholdGate((-1, 1), 0)), (1, 0, 1), 0)
    with pytest.raises(DepthExceedsArity):
        construct_ldl_general(l)


def test_full_rank_perturbation_gives_full_rank():
    Wp, eps = full_rank_perturbation([[1, 1, 0], [2, 2, 0]])
    assert eps > 0
    from nnrep.numerics import det

    assert det(Wp @ Wp.T) != 0


@pytest.mark.parametrize("m, size", [(1, 4), (2, 12), (3, 32)])
def test_edl_sizes(m, size):
    gates = tuple(ThresholdGate(tuple(1 if j == i else 0 for j in range(m)), 0, EXACT) for i in range(m))
    l = DecisionList(gates, tuple(i % 2 for i in range(m)), 1)
    A = construct_edl(l)
    assert A.size == size == (m + 1) * 2**m
    assert passes(A, l)


def test_edl_on_eq_blocks():
    l = DecisionList(
        (ThresholdGate((1, -1, 0, 0), 0, EXACT), ThresholdGate((0, 0, 1, -1), 0, EXACT)), (1, 0), 1
    )
    assert passes(construct_edl(l), l)


def test_construct_dispatch():
    assert construct(build_family("parity-eq", 2, 1)).construction == "sym_elt"
    assert construct(build_family("ip2", 1, 2)).construction == "sym_lt"
    assert construct(sample_ldl()).construction == "ldl_general"
    with pytest.raises(TypeError):
        construct(42)


def test_symmetric_ldl_computes_profile():
    p = SymmetricProfile((0, 1, 1, 0, 1))
    l = symmetric_ldl(p, 4)
    assert all(l(X) == p(sum(X)) for X in product((0, 1), repeat=4))
    assert passes(construct_ldl(l), l)


# --- resolution -----------------------------------------------------------


def test_sym_elt_resolution_linear_in_n():
    # EQ_n weights reach 2^(n-1), so the bit count grows linearly with n
    res = [resolution_matrix(construct_sym_elt(build_family("parity-eq", 2, n)).anchors) for n in (1, 2, 3)]
    assert res == sorted(res)
    assert all(r <= res[0] * n for n, r in enumerate(res, start=1))


def test_polytope_resolution_bounded_by_row_norms():
    rows, b = [[3, -2, 1], [1, 1, 1]], [2, 2]
    A = construct_polytope(rows, b)
    bound = max(sum(x * x for x in r) for r in rows)
    assert resolution_matrix(A.anchors) <= 2 * (bound.bit_length() + 3)
