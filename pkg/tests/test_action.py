from fractions import Fraction

import pytest

from crossnodal import linalg as la
from crossnodal import presets as P
from crossnodal.action import (InvalidAction, action_datum, action_preserves_subalgebra, balanced_tensor_square,
                               check_strict_separability, crossed_product, free_rank_report, group_table,
                               induced_quotient_action, restrict_datum, separability_witness, skew_group_ring,
                               validate_action, validate_group)
from crossnodal.algebra import validate_algebra
from crossnodal.linalg import Subspace
from crossnodal.radical import NotSplit, jacobson_radical, wedderburn

half = Fraction(1, 2)


def test_validate_group():
    assert validate_group(P.cyclic(2)) == []
    assert validate_group(P.cyclic(3)) == []
    assert validate_group(P.sym(3)) == []
    # a Latin square with identity that is not associative (order 5 loop)
    loop = group_table([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    report = validate_group(loop)
    brute = [(a, b, c) for a in range(5) for b in range(5) for c in range(5)
             if loop.table[loop.table[a][b]][c] != loop.table[a][loop.table[b][c]]]
    assert brute and len(report) == len(brute)
    assert f"({loop.labels[brute[0][0]]}, {loop.labels[brute[0][1]]}, {loop.labels[brute[0][2]]})" in report[0]


def _with_omega(datum, f, g, value):
    table = [list(r) for r in datum.omega]
    table[f][g] = la.vector(value)
    return action_datum(datum.algebra, datum.group, datum.phi, table)


def test_validate_action_examples():
    Q = P.rationals()
    assert validate_action(Q, P.trivial(Q, 2)) == []
    A = P.trunc_node(3)
    assert validate_action(A, P.node_swap(3)) == []
    neg = P.node_swap(3, -1)
    assert validate_action(A, neg) == []
    bad = _with_omega(neg, 1, 1, A.element(**{"1": 1, "x": 1}))
    report = validate_action(A, bad)
    assert any(r.startswith("axiom 3") for r in report)


def _crossed_examples():
    return [("trunc_node(3)", P.node_swap(3)), ("trunc_node(3)", P.node_swap(3, -1)),
            ("Q^(2)", P.qq_swap()), ("Q^(2)", P.qq_swap(-1)), ("mat(2)", P.mat2_conjugation()),
            ("mat(2)", P.mat2_conjugation(-1)), ("Q^(3)", P.cyclic_permutation(3)),
            ("Q^(3)", P.s3_permutation()), ("Q", P.trivial(P.rationals(), 3)),
            ("trunc_hered(3)", P.hered_swap(3)), ("trunc_hered(3)", P.hered_swap(3, -1))]


@pytest.mark.parametrize("name,datum", _crossed_examples())
def test_crossed_product_is_algebra(name, datum):
    A = P.preset(name)
    cp = crossed_product(A, datum)
    B = cp.total
    assert B.dim == A.dim * datum.group.order
    assert validate_algebra(B) == []
    assert B.unit == cp.element(A.unit, datum.group.identity)
    for i in range(A.dim):
        for j in range(A.dim):
            ai, aj = la.matvec(cp.embed, A.basis(i)), la.matvec(cp.embed, A.basis(j))
            assert B.mul(ai, aj) == la.matvec(cp.embed, A.mul(A.basis(i), A.basis(j)))
    assert free_rank_report(cp)["free"]


def test_crossed_product_multiplication_rule():
    datum = P.node_swap(3, -1)
    A = datum.algebra
    cp = crossed_product(A, datum)
    x, y = A.element(x=1), A.element(y=1)
    # x[s] * x[s] = x phi_s(x) omega_{s,s} [e] = x y (-1) [e] = 0
    assert cp.total.mul(cp.element(x, 1), cp.element(x, 1)) == cp.total.zero
    # y[s] * x[s] = y y (-1) [e]
    assert cp.total.mul(cp.element(y, 1), cp.element(x, 1)) == cp.element(A.element(**{"y^2": -1}), 0)
    assert cp.total.mul(cp.symbol(1), cp.symbol(1)) == cp.element(la.vscale(-1, A.unit), 0)


def test_crossed_product_examples():
    Q = P.rationals()
    B = crossed_product(Q, P.trivial(Q, 2)).total
    assert all(B.mul(B.basis(i), B.basis(j)) == B.mul(B.basis(j), B.basis(i)) for i in range(2) for j in range(2))
    assert wedderburn(B).sizes == (1, 1)
    twisted = action_datum(Q, P.cyclic(2), [[[1]], [[1]]], {(1, 1): [-1]})
    cp = crossed_product(Q, twisted)
    s = cp.symbol(1)
    assert cp.total.mul(s, s) == la.vscale(-1, cp.total.unit)
    with pytest.raises(NotSplit):
        wedderburn(cp.total)
    cp = crossed_product(P.trunc_node(3), P.node_swap(3))
    assert cp.total.dim == 10 and jacobson_radical(cp.total).dim == 8


def test_invalid_datum_raises_with_report():
    bad = _with_omega(P.qq_swap(), 1, 1, (1, 2))
    with pytest.raises(InvalidAction) as info:
        crossed_product(bad.algebra, bad)
    assert info.value.report


def test_skew_group_ring():
    Q = P.rationals()
    assert skew_group_ring(Q, P.cyclic(3), [[[1]]] * 3).total.dim == 3
    S = P.split_product(2)
    cp = skew_group_ring(S, P.cyclic(2), [la.identity(2), P._perm_matrix([1, 0])])
    assert cp.total.dim == 4 and wedderburn(cp.total).sizes == (2,)
    # explicit isomorphism with Mat2: f1[e]->e11, f2[e]->e22, f1[s]->e12, f2[s]->e21
    M = P.mat(2)
    iso = {cp.index(0, 0): "e11", cp.index(1, 0): "e22", cp.index(0, 1): "e12", cp.index(1, 1): "e21"}
    image = [M.element(**{iso[k]: 1}) for k in range(4)]
    for i in range(4):
        for j in range(4):
            prod = cp.total.mul(cp.total.basis(i), cp.total.basis(j))
            assert la.vcomb(prod, image, 4) == M.mul(image[i], image[j])
    # a non-multiplicative phi is rejected
    with pytest.raises(InvalidAction):
        skew_group_ring(S, P.cyclic(2), [la.identity(2), [[1, 1], [0, 1]]])


def test_balanced_tensor_square_dims():
    B = P.trunc_node(3)
    T = balanced_tensor_square(B, Subspace.full(B.dim))
    assert T.dim == B.dim
    T = balanced_tensor_square(B, B.span([B.unit]))
    assert T.dim == B.dim ** 2
    cp = crossed_product(P.split_product(2), P.qq_swap())
    T = balanced_tensor_square(cp.total, cp.base_subspace())
    assert T.dim == 8
    assert T.mu_is_bimodule_map()


def test_witness_trivial_q():
    Q = P.rationals()
    cp = crossed_product(Q, P.trivial(Q, 2))
    wit = separability_witness(cp)
    T = balanced_tensor_square(cp.total, cp.base_subspace())
    e, s = cp.symbol(0), cp.symbol(1)
    expect = la.vscale(half, la.vadd(T.tensor(e, e), T.tensor(s, s)))
    assert wit.w == expect
    assert T.mu(wit.w) == cp.total.unit


def test_witness_twisted_sign():
    datum = P.node_swap(3, -1)
    cp = crossed_product(datum.algebra, datum)
    wit = separability_witness(cp)
    T = balanced_tensor_square(cp.total, cp.base_subspace())
    e, s = cp.symbol(0), cp.symbol(1)
    assert wit.w == la.vscale(half, la.vsub(T.tensor(e, e), T.tensor(s, s)))
    report = check_strict_separability(cp.total, cp.base_subspace(), wit.w, wit.pi, T)
    assert report["strictly_separable"], report["problems"]


def test_pi_extracts_identity_coefficient():
    datum = P.node_swap(3)
    A = datum.algebra
    cp = crossed_product(A, datum)
    wit = separability_witness(cp)
    x = la.vadd(cp.element(A.unit, 0), cp.element(A.element(x=1), 1))
    assert la.matvec(wit.pi, x) == A.unit


@pytest.mark.parametrize("name,datum", _crossed_examples())
def test_strict_separability_on_fixtures(name, datum):
    A = P.preset(name)
    cp = crossed_product(A, datum)
    wit = separability_witness(cp)
    r = check_strict_separability(cp.total, cp.base_subspace(), wit.w, wit.pi)
    assert r["strictly_separable"], r["problems"]
    assert r["tensor_dim"] == cp.total.dim * datum.group.order


def test_strict_separability_trivial_and_wrong_witness():
    B = P.trunc_poly(2)
    full = Subspace.full(B.dim)
    T = balanced_tensor_square(B, full)
    r = check_strict_separability(B, full, T.tensor(B.unit, B.unit), la.identity(B.dim), T)
    assert r["strictly_separable"]
    wrong = la.vscale(half, T.tensor(B.unit, B.unit))
    r = check_strict_separability(B, full, wrong, la.identity(B.dim), T)
    assert not r["split_multiplication"] and "mu(w) != 1" in r["problems"]


def test_induced_quotient_action():
    quo, d = induced_quotient_action(P.trunc_node(3), P.node_swap(3))
    assert quo.dim == 1 and all(m == ((1,),) for m in d.phi)
    Q = P.rationals()
    quo, d = induced_quotient_action(Q, P.trivial(Q, 2))
    assert d.phi == P.trivial(Q, 2).phi
    quo, d = induced_quotient_action(P.split_product(2), P.qq_swap())
    assert d.phi == P.qq_swap().phi and validate_action(quo, d) == []


def test_action_preserves_subalgebra():
    pair = P.node_pair(3)
    swap = P.hered_swap(3)
    assert action_preserves_subalgebra(swap, pair.sub)
    assert action_preserves_subalgebra(swap, Subspace.full(pair.ambient.dim))
    S = P.split_product(3)
    aab = S.span([S.element(f1=1, f2=1), S.element(f3=1)])
    assert not action_preserves_subalgebra(P.cyclic_permutation(3), aab)
    triv = P.trivial(S, 2)
    assert action_preserves_subalgebra(triv, aab)
    A, emb, restricted = restrict_datum(swap, pair.sub)
    assert validate_action(A, restricted) == []


# single-entry corruptions of omega; each must break both an axiom and associativity
CORRUPTIONS = [
    (lambda: P.node_swap(3), (1, 1), {"1": 1, "x": 1}),
    (lambda: P.node_swap(3), (1, 1), {"1": 1, "x^2": 1}),
    (lambda: P.node_swap(3, -1), (1, 1), {"1": 1, "y": 1}),
    (lambda: P.node_swap(3), (0, 1), {"1": 2}),
    (P.qq_swap, (1, 1), {"f1": 1, "f2": 2}),
    (P.qq_swap, (1, 1), {"f1": -1, "f2": 1}),
    (lambda: P.qq_swap(-1), (0, 1), {"f1": 3, "f2": 5}),
    (P.mat2_conjugation, (1, 1), {"e11": 1, "e22": 2}),
    (P.mat2_conjugation, (1, 1), {"e11": 1, "e22": 1, "e12": 1}),
    (lambda: P.mat2_conjugation(-1), (1, 0), {"e11": half, "e22": half}),
]


@pytest.mark.parametrize("make,pos,value", CORRUPTIONS)
def test_corruptions_detected_twice(make, pos, value):
    datum = make()
    A = datum.algebra
    bad = _with_omega(datum, *pos, A.element(**value))
    assert validate_action(A, bad)
    naive = crossed_product(A, bad, check=False).total
    assert validate_algebra(naive)


@pytest.mark.parametrize("name,datum", _crossed_examples())
def test_radical_formula(name, datum):
    A = P.preset(name)
    cp = crossed_product(A, datum)
    assert jacobson_radical(cp.total) == cp.lift_subspace(jacobson_radical(A))


@pytest.mark.parametrize("datum", [P.qq_swap(), P.node_swap(3), P.cyclic_permutation(3), P.s3_permutation(),
                                   P.mat2_conjugation()])
def test_skew_case_is_homomorphism(datum):
    G = datum.group
    for f in G.elements():
        for g in G.elements():
            assert la.matmul(datum.phi[f], datum.phi[g]) == la.matrix(datum.phi[G.mul(f, g)])
