import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossnodal import _kernels
from crossnodal.lemma34 import (HypothesisViolation, batch_check, classify_matrix_condition, exhaustive_check,
                                hypothesis_matrices, instance_arrays, module_dichotomy)


def oracle(B, a):
    """Set-based restatement of the three assertions, kept independent of the library code."""
    n = len(B)
    idx = set(range(n))
    one = all(sum(B[i][j] * a[j] for j in idx) <= 2 * a[i] for i in idx)
    three = all(sum(B[i]) <= 2 for i in idx)

    def support(i):
        return {j for j in idx - {i} if B[i][j]}

    def ok(i):
        if not support(i):
            return B[i][i] <= 2
        # the partner, if any, is the single off-diagonal column in the support of row i
        cands = [p for p in idx - {i}
                 if support(i) <= {p} and a[p] == a[i] and (B[i][i], B[i][p], B[p][i], B[p][p]) == (1, 1, 1, 1)]
        return len(cands) == 1

    return one, all(ok(i) for i in idx), three


def test_examples():
    assert tuple(classify_matrix_condition([[1, 1], [1, 1]], [1, 1])) == (True, True, True)
    assert tuple(classify_matrix_condition([[3]], [1])) == (False, False, False)
    assert tuple(classify_matrix_condition([[1, 1], [1, 1]], [1, 2])) == (False, False, True)


@pytest.mark.parametrize("B,a,where", [([[0]], [1], "b[0][0]"), ([[1, 1], [0, 1]], [1, 1], "b[0][1]"),
                                        ([[1]], [0], "a[0]"), ([[1, -1], [1, 1]], [1, 1], "b[0][1]")])
def test_hypothesis_violations_name_the_entry(B, a, where):
    with pytest.raises(HypothesisViolation, match=where.replace("[", r"\[").replace("]", r"\]")):
        classify_matrix_condition(B, a)


def test_enumeration_size():
    # diagonal in {1,2,3}; each off-diagonal pair is (0,0) or both in {1,2,3}
    for n in (1, 2, 3):
        assert sum(1 for _ in hypothesis_matrices(n)) == 3 ** n * 10 ** (n * (n - 1) // 2)


def test_exhaustive_against_oracle():
    res = exhaustive_check(3, 3, (1, 2))
    assert res["counterexamples"] == []
    assert res["instances"] == 3 * 2 + 90 * 4 + 27000 * 8
    counts = [0, 0, 0]
    for n in (1, 2, 3):
        for B in hypothesis_matrices(n):
            for a in itertools.product((1, 2), repeat=n):
                o = oracle(B, a)
                for k in range(3):
                    counts[k] += o[k]
    assert (res["holds1"], res["holds2"], res["holds3"]) == tuple(counts)


def test_dichotomy_module_level():
    assert module_dichotomy([[1, 1], [1, 1]])
    assert module_dichotomy([[2]])
    assert not module_dichotomy([[3]])
    assert not module_dichotomy([[1, 1, 1], [1, 1, 0], [1, 0, 1]])


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(1, 3), min_size=n, max_size=n),
    st.lists(st.tuples(st.integers(0, 3), st.integers(1, 3)), min_size=n * (n - 1) // 2,
             max_size=n * (n - 1) // 2),
    st.lists(st.integers(1, 3), min_size=n, max_size=n))))
def test_classifier_matches_oracle(data):
    diag, offs, a = data
    n = len(diag)
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        B[i][i] = diag[i]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for (i, j), (x, y) in zip(pairs, offs):
        if x:
            B[i][j], B[j][i] = x, y
    assert tuple(classify_matrix_condition(B, a)) == oracle(B, a)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_numpy_kernel_matches_python(n):
    Bs, As = instance_arrays(n, 3, (1, 2))
    out = _kernels.classify_batch_numpy(Bs, As)
    for k in range(0, len(Bs), 7):
        B = Bs[k].tolist()
        a = As[k].tolist()
        assert tuple(bool(x) for x in out[k]) == tuple(classify_matrix_condition(B, a))


@pytest.mark.skipif(_kernels.classify_batch_numba is None, reason="numba unavailable or disabled")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_numba_kernel_matches_numpy(n):
    Bs, As = instance_arrays(n, 2, (1,)) if n == 4 else instance_arrays(n, 3, (1, 2))
    assert np.array_equal(_kernels.classify_batch_numba(Bs, As), _kernels.classify_batch_numpy(Bs, As))


def test_batch_counts_match_exhaustive():
    py = exhaustive_check(3, 3, (1, 2))
    kern = batch_check(3, 3, (1, 2))
    assert kern["violations"] == 0 == len(py["counterexamples"])
    for key in ("instances", "equal_a", "holds1", "holds2", "holds3"):
        assert kern[key] == py[key]
    assert kern["backend"] in ("numba", "numpy")
