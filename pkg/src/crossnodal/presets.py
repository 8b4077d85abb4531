"""Named algebras, pairs, groups and actions used by the fixtures."""

from __future__ import annotations

import re

from . import linalg as la
from .action import ActionDatum, GroupTable, action_datum, cyclic_group, symmetric_group, trivial_datum
from .algebra import Algebra, AlgebraError, direct_product, subalgebra_closure
from .nodal import SemilocalPair

_CACHE: dict = {}


def _cached(key, build):
    if key not in _CACHE:
        _CACHE[key] = build()
    return _CACHE[key]


def _table(d, rule):
    """Structure constants from rule(i, j) -> dict {k: coeff}."""
    st = []
    for i in range(d):
        row = []
        for j in range(d):
            v = [0] * d
            for k, c in rule(i, j).items():
                v[k] += c
            row.append(v)
        st.append(row)
    return st


def _mono(var, k):
    return "1" if k == 0 else (var if k == 1 else f"{var}^{k}")


def rationals() -> Algebra:
    return _cached(("Q",), lambda: Algebra([[[1]]], [1], ["1"], "Q"))


def trunc_poly(N: int, var: str = "x") -> Algebra:
    """Q[x]/(x^N), basis 1, x, ..., x^(N-1)."""
    if N < 1:
        raise AlgebraError("trunc_poly needs N >= 1")

    def build():
        st = _table(N, lambda i, j: {i + j: 1} if i + j < N else {})
        unit = [1] + [0] * (N - 1)
        return Algebra(st, unit, [_mono(var, k) for k in range(N)], f"trunc_poly({N})")

    return _cached(("trunc_poly", N, var), build)


def trunc_node(N: int) -> Algebra:
    """Q[x, y]/(xy, x^N, y^N), basis 1, x, .., x^(N-1), y, .., y^(N-1)."""
    if N < 1:
        raise AlgebraError("trunc_node needs N >= 1")
    d = 2 * N - 1

    def decode(i):  # (variable, exponent); variable 0 for the unit
        if i == 0:
            return 0, 0
        return (1, i) if i < N else (2, i - N + 1)

    def encode(v, k):
        if k == 0:
            return 0
        return k if v == 1 else N - 1 + k

    def rule(i, j):
        (v, a), (w, b) = decode(i), decode(j)
        if a == 0:
            return {j: 1}
        if b == 0:
            return {i: 1}
        if v != w or a + b >= N:
            return {}
        return {encode(v, a + b): 1}

    def build():
        labels = ["1"] + [_mono("x", k) for k in range(1, N)] + [_mono("y", k) for k in range(1, N)]
        return Algebra(_table(d, rule), [1] + [0] * (d - 1), labels, f"trunc_node({N})")

    return _cached(("trunc_node", N), build)


def trunc_hered(N: int) -> Algebra:
    """trunc_poly(N) x trunc_poly(N); the second factor uses the variable y."""
    return _cached(("trunc_hered", N),
                   lambda: direct_product(trunc_poly(N, "x"), trunc_poly(N, "y"), f"trunc_hered({N})"))


def mat(n: int) -> Algebra:
    """Full matrix algebra, basis e_ij row-major."""

    def build():
        d = n * n
        st = _table(d, lambda a, b: {(a // n) * n + b % n: 1} if a % n == b // n else {})
        unit = [1 if (k // n) == (k % n) else 0 for k in range(d)]
        labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
        return Algebra(st, unit, labels, f"mat({n})")

    return _cached(("mat", n), build)


def upper_tri(n: int) -> Algebra:
    def build():
        idx = [(i, j) for i in range(n) for j in range(i, n)]
        pos = {p: k for k, p in enumerate(idx)}
        d = len(idx)

        def rule(a, b):
            (i, j), (k, l) = idx[a], idx[b]
            return {pos[(i, l)]: 1} if j == k else {}

        unit = [1 if i == j else 0 for i, j in idx]
        return Algebra(_table(d, rule), unit, [f"e{i + 1}{j + 1}" for i, j in idx], f"upper_tri({n})")

    return _cached(("upper_tri", n), build)


def split_product(n: int) -> Algebra:
    """Q^n with the coordinate idempotents as basis."""
    def build():
        st = _table(n, lambda i, j: {i: 1} if i == j else {})
        return Algebra(st, [1] * n, [f"f{i + 1}" for i in range(n)], f"Q^{n}")

    return _cached(("Q^", n), build)


def quadratic(d: int) -> Algebra:
    """Q[x]/(x^2 - d)."""
    def build():
        st = [[[1, 0], [0, 1]], [[0, 1], [d, 0]]]
        return Algebra(st, [1, 0], ["1", "x"], f"quadratic({d})")

    return _cached(("quadratic", d), build)


# -- pairs ---------------------------------------------------------------

def node_pair(N: int) -> SemilocalPair:
    """A = {(f, g) : f(0) = g(0)} inside H = trunc_hered(N)."""
    def build():
        H = trunc_hered(N)
        gens = [H.element(**{"(x,0)": 1})] if N > 1 else []
        if N > 1:
            gens.append(H.element(**{"(0,y)": 1}))
        return SemilocalPair(H, subalgebra_closure(H, gens), f"node_pair({N})")

    return _cached(("node_pair", N), build)


def diag_pair() -> SemilocalPair:
    def build():
        H = mat(2)
        return SemilocalPair(H, H.span([H.element(e11=1), H.element(e22=1)]), "diag_pair")

    return _cached(("diag_pair",), build)


def triple_pair() -> SemilocalPair:
    def build():
        H = split_product(3)
        return SemilocalPair(H, H.span([H.unit]), "triple_pair")

    return _cached(("triple_pair",), build)


def full_pair(alg: Algebra) -> SemilocalPair:
    return SemilocalPair(alg, la.Subspace.full(alg.dim), f"full({alg.name})")


def scalar_pair(alg: Algebra) -> SemilocalPair:
    return SemilocalPair(alg, alg.span([alg.unit]), f"scalars({alg.name})")


# -- groups and actions -------------------------------------------------

def cyclic(n: int) -> GroupTable:
    return cyclic_group(n)


def sym(k: int) -> GroupTable:
    return symmetric_group(k)


def _perm_matrix(images: list[int]) -> la.Matrix:
    """Matrix sending basis vector i to basis vector images[i]."""
    d = len(images)
    m = la.zeros(d, d)
    for i, j in enumerate(images):
        m[j][i] = la.ONE
    return m


def _omega_sigma(alg: Algebra, group: GroupTable, sign: int):
    if sign == 1:
        return None
    s = group.labels.index("s")
    return {(s, s): la.vscale(sign, alg.unit)}


def node_swap(N: int, sign: int = 1) -> ActionDatum:
    """x <-> y on trunc_node(N); sign=-1 sets omega_{s,s} = -1."""
    A = trunc_node(N)
    images = [0] + [N - 1 + k for k in range(1, N)] + list(range(1, N))
    G = cyclic(2)
    return action_datum(A, G, [la.identity(A.dim), _perm_matrix(images)], _omega_sigma(A, G, sign))


def _factor_swap_images(alg: Algebra, half: int) -> list[int]:
    return [i + half if i < half else i - half for i in range(alg.dim)]


def hered_swap(N: int, sign: int = 1) -> ActionDatum:
    """(f, g) -> (g, f) on trunc_hered(N), which preserves node_pair(N)."""
    H = trunc_hered(N)
    G = cyclic(2)
    return action_datum(H, G, [la.identity(H.dim), _perm_matrix(_factor_swap_images(H, N))],
                        _omega_sigma(H, G, sign))


def qq_swap(sign: int = 1) -> ActionDatum:
    A = split_product(2)
    G = cyclic(2)
    return action_datum(A, G, [la.identity(2), _perm_matrix([1, 0])], _omega_sigma(A, G, sign))


def mat2_conjugation(sign: int = 1) -> ActionDatum:
    """Conjugation by the permutation matrix [[0,1],[1,0]]: e_ij -> e_(3-i)(3-j)."""
    A = mat(2)
    G = cyclic(2)
    return action_datum(A, G, [la.identity(4), _perm_matrix([3, 2, 1, 0])], _omega_sigma(A, G, sign))


def cyclic_permutation(n: int = 3) -> ActionDatum:
    """C_n rotating the factors of Q^n."""
    A = split_product(n)
    G = cyclic(n)
    return action_datum(A, G, [_perm_matrix([(i + g) % n for i in range(n)]) for g in range(n)])


def s3_permutation() -> ActionDatum:
    """S_3 permuting the factors of Q^3."""
    A = split_product(3)
    G = sym(3)
    mats = [_perm_matrix([int(c) for c in lab]) for lab in G.labels]
    return action_datum(A, G, mats)


def trivial(alg: Algebra, n: int = 2) -> ActionDatum:
    return trivial_datum(alg, cyclic(n))


# -- string presets -----------------------------------------------------

_ALGEBRAS = {
    "Q": rationals, "trunc_poly": trunc_poly, "trunc_node": trunc_node, "trunc_hered": trunc_hered,
    "mat": mat, "upper_tri": upper_tri, "Q^": split_product, "split": split_product,
    "quadratic": quadratic,
}
_PAIRS = {"node_pair": node_pair, "diag_pair": diag_pair, "triple_pair": triple_pair}
_GROUPS = {"cyclic": cyclic, "sym": sym}
_ACTIONS = {
    "node_swap": node_swap, "hered_swap": hered_swap, "qq_swap": qq_swap,
    "mat2_conjugation": mat2_conjugation, "cyclic_permutation": cyclic_permutation,
    "s3_permutation": s3_permutation,
}

_CALL = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*\^?)\s*(?:\(\s*([-0-9,\s]*)\s*\))?\s*$")


def parse_call(text: str) -> tuple[str, tuple[int, ...]]:
    m = _CALL.match(text)
    if not m:
        raise AlgebraError(f"malformed preset expression {text!r}")
    args = tuple(int(a) for a in m.group(2).split(",") if a.strip()) if m.group(2) else ()
    return m.group(1), args


def preset(text: str):
    """Resolve an expression like ``"trunc_node(3)"``, ``"diag_pair"`` or ``"cyclic(2)"``."""
    name, args = parse_call(text)
    for table in (_ALGEBRAS, _PAIRS, _GROUPS, _ACTIONS):
        if name in table:
            try:
                return table[name](*args)
            except TypeError as exc:
                raise AlgebraError(f"bad arguments for preset {name!r}: {exc}") from None
    raise AlgebraError(f"unknown preset {name!r}")


def preset_kind(text: str) -> str:
    name, _ = parse_call(text)
    for kind, table in (("algebra", _ALGEBRAS), ("pair", _PAIRS), ("group", _GROUPS), ("action", _ACTIONS)):
        if name in table:
            return kind
    raise AlgebraError(f"unknown preset {name!r}")
