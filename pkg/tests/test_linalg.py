from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossnodal import linalg as la
from crossnodal import poly
from crossnodal.linalg import Subspace

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def bareiss_rank(m):
    """Fraction-free elimination over the integers; an independent rank oracle."""
    a = [list(r) for r in m]
    rows, cols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(cols):
        p = next((i for i in range(rank, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(rank + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[rank][c] - a[i][c] * a[rank][j]) // prev
            a[i][c] = 0
        prev = a[rank][c]
        rank += 1
    return rank


def test_to_fraction_accepts_exact_inputs():
    assert la.to_fraction("3/4") == Fraction(3, 4)
    assert la.to_fraction(-2) == -2
    assert la.to_fraction(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, None, [1]])
def test_to_fraction_rejects(bad):
    with pytest.raises(TypeError):
        la.to_fraction(bad)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        la.to_fraction("1/0")


def test_rref_example():
    rows, piv = la.rref([[1, 2], [2, 4]])
    assert piv == [0]
    assert rows[0] == [1, 2] and rows[1] == [0, 0]
    assert la.rank([[1, 2], [2, 4]]) == 1


def test_kernel_example():
    k = la.kernel([[1, 1]], 2)
    assert k.dim == 1
    assert la.matvec([[1, 1]], k.basis[0]) == (0,)


def test_solve_inconsistent():
    assert la.solve([[1, 1], [1, 1]], [1, 2]) is None
    x = la.solve([[2, 0], [0, 3]], [1, 1])
    assert x == (Fraction(1, 2), Fraction(1, 3))


def test_inverse_and_det():
    m = [[2, 1], [1, 1]]
    inv = la.inverse(m)
    assert la.matmul(m, inv) == la.identity(2)
    assert la.det(m) == 1
    assert la.inverse([[1, 2], [2, 4]]) is None


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_bareiss(m):
    assert la.rank(m) == bareiss_rank(m)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    k = la.kernel(m, len(m[0]))
    assert k.dim + la.rank(m) == len(m[0])
    for v in k.basis:
        assert la.is_zero(la.matvec(m, v))


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_consistent(m, x):
    x = x[:len(m[0])]
    b = la.matvec(m, x)
    sol = la.solve(m, b)
    assert sol is not None and la.matvec(m, sol) == b


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4))
def test_det_vs_inverse(m):
    if len(m) != len(m[0]):
        return
    inv = la.inverse(m)
    assert (inv is None) == (la.det(m) == 0)
    if inv is not None:
        assert la.matmul(inv, m) == la.identity(len(m))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=3),
       st.lists(st.lists(small, min_size=4, max_size=4), max_size=3))
def test_grassmann_formula(us, vs):
    u, v = Subspace.span(us, 4), Subspace.span(vs, 4)
    ops = la.subspace_ops(u, v)
    assert ops.sum.dim + ops.intersection.dim == u.dim + v.dim
    assert ops.intersection <= u and ops.intersection <= v
    assert u <= ops.sum and v <= ops.sum
    assert ops.contains == (v <= u)


def test_subspace_canonical_equality():
    a = Subspace.span([[1, 1, 0], [0, 1, 1]], 3)
    b = Subspace.span([[1, 2, 1], [1, 0, -1]], 3)
    assert a == b
    assert a.dim == 2


def test_coordinates_and_quotient():
    s = Subspace.span([[1, 0, 1], [0, 1, 1]], 3)
    v = (2, 3, 5)
    c = s.coordinates(v)
    assert la.vcomb(c, s.basis, 3) == la.vector(v)
    with pytest.raises(ValueError):
        s.coordinates((0, 0, 1))
    q = s.quotient_coordinates((0, 0, 1))
    assert len(q) == 1
    assert la.vsub((0, 0, 1), s.lift(q)) in s


def test_induced_matrix_checks_invariance():
    sub = Subspace.span([[1, 0]], 2)
    assert la.induced_matrix([[1, 1], [0, 2]], sub) == [[2]]
    with pytest.raises(ValueError):
        la.induced_matrix([[0, 1], [1, 0]], sub)


def test_poly_roots_and_crt():
    p = poly.mul([-1, 1], [1, 0, 1])  # (t - 1)(t^2 + 1)
    roots, rest = poly.split_rational(p)
    assert roots == [1] and rest == [1, 0, 1]
    factors = poly.irreducible_factors(p)
    assert factors == [[-1, 1], [1, 0, 1]]
    es = poly.crt_idempotents(factors)
    for k, e in enumerate(es):
        for j, f in enumerate(factors):
            r = poly.divmod_(e, f)[1]
            assert r == ([1] if j == k else [])


@settings(max_examples=100, deadline=None)
@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=1, max_size=4))
def test_poly_divmod(a, b):
    if not poly.trim(b):
        return
    q, r = poly.divmod_(a, b)
    assert poly.add(poly.mul(q, b), r) == poly.trim(a)
    assert poly.degree(r) < poly.degree(b)
