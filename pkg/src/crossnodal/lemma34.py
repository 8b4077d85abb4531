"""The combinatorial classifier on count matrices B and positive vectors a.

For a' = B a the three assertions are

1. a'_i <= 2 a_i for every i;
2. every index i either has b_ii <= 2 and an otherwise zero row, or a unique
   partner i' with a_i = a_i', b_ii = b_ii' = b_i'i = b_i'i' = 1 and the rest
   of row i zero;
3. every row sum is at most 2.

The expected pattern is (1) <=> (2) => (3), and (3) => (1) when all a_i agree.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, NamedTuple, Sequence

import numpy as np


class HypothesisViolation(ValueError):
    pass


class Classification(NamedTuple):
    holds1: bool
    holds2: bool
    holds3: bool


def check_hypotheses(B: Sequence[Sequence[int]], a: Sequence[int] | None = None) -> None:
    n = len(B)
    for i in range(n):
        if len(B[i]) != n:
            raise HypothesisViolation(f"row {i} has length {len(B[i])}, expected {n}")
        for j in range(n):
            if B[i][j] < 0:
                raise HypothesisViolation(f"b[{i}][{j}] = {B[i][j]} is negative")
    for i in range(n):
        if B[i][i] <= 0:
            raise HypothesisViolation(f"b[{i}][{i}] = {B[i][i]} must be positive")
        for j in range(n):
            if i != j and (B[i][j] != 0) != (B[j][i] != 0):
                raise HypothesisViolation(f"b[{i}][{j}] = {B[i][j]} but b[{j}][{i}] = {B[j][i]}")
    if a is not None:
        if len(a) != n:
            raise HypothesisViolation(f"a has length {len(a)}, expected {n}")
        for i, x in enumerate(a):
            if x <= 0:
                raise HypothesisViolation(f"a[{i}] = {x} must be positive")


def _assertion2(B, a) -> bool:
    n = len(B)
    for i in range(n):
        row_zero = all(B[i][j] == 0 for j in range(n) if j != i)
        if B[i][i] <= 2 and row_zero:
            continue
        partners = []
        for k in range(n):  # ascending scan; uniqueness is required, not assumed
            if k == i:
                continue
            if (a[i] == a[k] and B[i][i] == B[i][k] == B[k][i] == B[k][k] == 1
                    and all(B[i][j] == 0 for j in range(n) if j not in (i, k))):
                partners.append(k)
        if len(partners) != 1:
            return False
    return True


def classify_matrix_condition(B: Sequence[Sequence[int]], a: Sequence[int]) -> Classification:
    check_hypotheses(B, a)
    n = len(B)
    a_prime = [sum(B[i][j] * a[j] for j in range(n)) for i in range(n)]
    h1 = all(a_prime[i] <= 2 * a[i] for i in range(n))
    h2 = _assertion2(B, a)
    h3 = all(sum(row) <= 2 for row in B)
    return Classification(h1, h2, h3)


def module_dichotomy(B: Sequence[Sequence[int]]) -> bool:
    """The module-level dichotomy: assertion (2) without the a_i = a_i' clause."""
    check_hypotheses(B)
    return _assertion2(B, [1] * len(B))


def pattern_holds(c: Classification, a: Sequence[int]) -> bool:
    if c.holds1 != c.holds2:
        return False
    if c.holds2 and not c.holds3:
        return False
    if len(set(a)) <= 1 and c.holds3 and not c.holds1:
        return False
    return True


def hypothesis_matrices(n: int, max_entry: int = 3) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All n x n matrices with entries in 0..max_entry satisfying the hypotheses."""
    diag_vals = range(1, max_entry + 1)
    off_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pair_vals = [(0, 0)] + [(x, y) for x in range(1, max_entry + 1) for y in range(1, max_entry + 1)]
    for diag in product(diag_vals, repeat=n):
        for offs in product(pair_vals, repeat=len(off_pairs)):
            B = [[0] * n for _ in range(n)]
            for i in range(n):
                B[i][i] = diag[i]
            for (i, j), (x, y) in zip(off_pairs, offs):
                B[i][j], B[j][i] = x, y
            yield tuple(map(tuple, B))


def enumerate_instances(max_n: int = 3, max_entry: int = 3, a_values: Sequence[int] = (1, 2)):
    for n in range(1, max_n + 1):
        for B in hypothesis_matrices(n, max_entry):
            for a in product(a_values, repeat=n):
                yield B, a


def exhaustive_check(max_n: int = 3, max_entry: int = 3, a_values: Sequence[int] = (1, 2)) -> dict:
    """Classify every instance with the literal classifier; count pattern violations."""
    counts = {"instances": 0, "equal_a": 0, "holds1": 0, "holds2": 0, "holds3": 0}
    counterexamples = []
    for B, a in enumerate_instances(max_n, max_entry, a_values):
        c = classify_matrix_condition(B, a)
        counts["instances"] += 1
        counts["equal_a"] += len(set(a)) == 1
        counts["holds1"] += c.holds1
        counts["holds2"] += c.holds2
        counts["holds3"] += c.holds3
        if not pattern_holds(c, a):
            counterexamples.append({"B": [list(r) for r in B], "a": list(a), "result": list(c)})
    return {**counts, "counterexamples": counterexamples}


def instance_arrays(n: int, max_entry: int = 3, a_values: Sequence[int] = (1, 2)):
    """All (B, a) instances of size n as int64 arrays of shape (N, n, n) and (N, n)."""
    mats = np.array(list(hypothesis_matrices(n, max_entry)), dtype=np.int64).reshape(-1, n, n)
    avecs = np.array(list(product(a_values, repeat=n)), dtype=np.int64).reshape(-1, n)
    Bs = np.repeat(mats, len(avecs), axis=0)
    As = np.tile(avecs, (len(mats), 1))
    return Bs, As


def batch_check(max_n: int = 3, max_entry: int = 3, a_values: Sequence[int] = (1, 2)) -> dict:
    """Same counts as :func:`exhaustive_check`, computed by the array kernels."""
    from . import _kernels

    counts = {"instances": 0, "equal_a": 0, "holds1": 0, "holds2": 0, "holds3": 0, "violations": 0}
    for n in range(1, max_n + 1):
        Bs, As = instance_arrays(n, max_entry, a_values)
        res = _kernels.classify_batch(Bs, As)
        eq = (As == As[:, :1]).all(axis=1)
        h1, h2, h3 = res[:, 0], res[:, 1], res[:, 2]
        bad = (h1 != h2) | (h2 & ~h3) | (eq & h3 & ~h1)
        counts["instances"] += len(Bs)
        counts["equal_a"] += int(eq.sum())
        counts["holds1"] += int(h1.sum())
        counts["holds2"] += int(h2.sum())
        counts["holds3"] += int(h3.sum())
        counts["violations"] += int(bad.sum())
    counts["backend"] = _kernels.BACKEND
    return counts
