"""Finite-dimensional associative unital algebras given by structure constants.

Elements are plain coordinate tuples in the algebra's distinguished basis.
Subalgebras, ideals and other subspaces are :class:`~crossnodal.linalg.Subspace`
objects in those coordinates.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .linalg import ONE, ZERO, Subspace, to_fraction


class AlgebraError(ValueError):
    pass


class NotAnIdeal(AlgebraError):
    pass


def memoized(fn):
    """Cache a pure function of an algebra (plus hashable args) on the algebra itself."""

    @functools.wraps(fn)
    def wrapper(alg, *args, **kwargs):
        key = (fn.__qualname__, args, tuple(sorted(kwargs.items())))
        memo = alg._memo
        if key not in memo:
            memo[key] = fn(alg, *args, **kwargs)
        return memo[key]

    return wrapper


class Algebra:
    """Associative unital Q-algebra with basis b_0..b_{d-1}.

    ``structure[i][j]`` holds the coordinates of b_i * b_j. Construction does
    not validate; call :func:`validate_algebra` for that.
    """

    def __init__(self, structure, unit, labels=None, name: str = ""):
        d = len(unit)
        self.dim = d
        self.unit = la.vector(unit)
        st = tuple(tuple(la.vector(structure[i][j]) for j in range(d)) for i in range(d))
        if len(structure) != d or any(len(row) != d for row in structure):
            raise AlgebraError(f"structure constants must be {d}x{d}x{d}")
        if any(len(v) != d for row in st for v in row):
            raise AlgebraError(f"structure constants must be {d}x{d}x{d}")
        self.structure = st
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(d))
        if len(self.labels) != d:
            raise AlgebraError("wrong number of basis labels")
        self.name = name
        self._table = [[tuple((k, c) for k, c in enumerate(st[i][j]) if c) for j in range(d)]
                       for i in range(d)]
        self._memo: dict = {}

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<Algebra{tag} dim={self.dim}>"

    @property
    def zero(self) -> la.Vector:
        return la.zero_vector(self.dim)

    def basis(self, i: int) -> la.Vector:
        return la.unit_vector(self.dim, i)

    def element(self, **coeffs) -> la.Vector:
        """Element from label-keyed coefficients, e.g. ``A.element(x=1, y=-2)``."""
        v = [ZERO] * self.dim
        for lab, c in coeffs.items():
            v[self.labels.index(lab)] = to_fraction(c)
        return tuple(v)

    def mul(self, x: Sequence, y: Sequence) -> la.Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraError("element of wrong dimension")
        out = [ZERO] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        table = self._table
        for i, a in enumerate(x):
            if not a:
                continue
            row = table[i]
            for j, b in ys:
                c = a * b
                for k, s in row[j]:
                    out[k] += c * s
        return tuple(out)

    def prod(self, *xs: Sequence) -> la.Vector:
        out = self.unit
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, x: Sequence, k: int) -> la.Vector:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def left_matrix(self, x: Sequence) -> la.Matrix:
        return la.transpose([self.mul(x, self.basis(j)) for j in range(self.dim)])

    def right_matrix(self, x: Sequence) -> la.Matrix:
        return la.transpose([self.mul(self.basis(j), x) for j in range(self.dim)])

    def trace(self, x: Sequence) -> la.Fraction:
        """Trace of left multiplication by x."""
        tr = _basis_traces(self)
        return sum((a * t for a, t in zip(x, tr) if a), ZERO)

    def span(self, vectors) -> Subspace:
        return Subspace.span(list(vectors), self.dim)


@memoized
def _basis_traces(alg: Algebra) -> tuple:
    return tuple(sum((alg.structure[k][m][m] for m in range(alg.dim)), ZERO) for k in range(alg.dim))


def validate_algebra(alg: Algebra) -> list[str]:
    """Every failed associativity triple and unit-law failure; empty iff valid."""
    report = []
    d = alg.dim
    lab = alg.labels
    basis = [alg.basis(i) for i in range(d)]
    prods = [[alg.mul(basis[i], basis[j]) for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            bij = prods[i][j]
            for k in range(d):
                lhs = alg.mul(bij, basis[k])
                rhs = alg.mul(basis[i], prods[j][k])
                if lhs != rhs:
                    report.append(f"associativity fails on ({lab[i]}, {lab[j]}, {lab[k]})")
    for i in range(d):
        if alg.mul(alg.unit, basis[i]) != basis[i]:
            report.append(f"unit fails on the left of {lab[i]}")
        if alg.mul(basis[i], alg.unit) != basis[i]:
            report.append(f"unit fails on the right of {lab[i]}")
    return report


def multiply(alg: Algebra, x: Sequence, y: Sequence) -> la.Vector:
    return alg.mul(x, y)


def mult_operator(alg: Algebra, x: Sequence, side: str = "left") -> la.Matrix:
    if side == "left":
        return alg.left_matrix(x)
    if side == "right":
        return alg.right_matrix(x)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def is_unit(alg: Algebra, x: Sequence) -> tuple[bool, la.Vector | None]:
    """Whether x is invertible, with its inverse.

    In finite dimension x is a unit iff left multiplication by x is bijective;
    the inverse is the preimage of 1 under that map.
    """
    y = la.solve(alg.left_matrix(x), alg.unit)
    if y is None:
        return False, None
    if alg.mul(y, x) != alg.unit:  # pragma: no cover - cannot happen in finite dimension
        return False, None
    return True, y


def inverse(alg: Algebra, x: Sequence) -> la.Vector:
    ok, y = is_unit(alg, x)
    if not ok:
        raise AlgebraError("element is not a unit")
    return y


def _closure(alg: Algebra, gens, left: bool, right: bool, self_products: bool) -> Subspace:
    ech = la._Echelon(alg.dim)
    basis = [alg.basis(i) for i in range(alg.dim)]
    queue = []
    members = []
    for g in gens:
        if ech.add(g) is not None:
            queue.append(la.vector(g))
    while queue:
        v = queue.pop(0)
        members.append(v)
        cands = []
        if left:
            cands += [alg.mul(b, v) for b in basis]
        if right:
            cands += [alg.mul(v, b) for b in basis]
        if self_products:
            for w in members:
                cands.append(alg.mul(v, w))
                cands.append(alg.mul(w, v))
        for c in cands:
            if ech.add(c) is not None:
                queue.append(c)
    return ech.freeze()


def subalgebra_closure(alg: Algebra, generators: Sequence[Sequence], include_unit: bool = True) -> Subspace:
    """Smallest multiplicatively closed subspace containing the generators."""
    gens = [la.vector(g) for g in generators]
    if include_unit:
        gens = [alg.unit] + gens
    return _closure(alg, gens, left=False, right=False, self_products=True)


def two_sided_ideal(alg: Algebra, generators: Sequence[Sequence]) -> Subspace:
    return _closure(alg, [la.vector(g) for g in generators], left=True, right=True, self_products=False)


def left_ideal(alg: Algebra, generators: Sequence[Sequence]) -> Subspace:
    return _closure(alg, [la.vector(g) for g in generators], left=True, right=False, self_products=False)


def is_two_sided_ideal(alg: Algebra, ideal: Subspace) -> bool:
    for v in ideal.basis:
        for i in range(alg.dim):
            b = alg.basis(i)
            if alg.mul(b, v) not in ideal or alg.mul(v, b) not in ideal:
                return False
    return True


def is_subalgebra(alg: Algebra, sub: Subspace, require_unit: bool = True) -> bool:
    if require_unit and alg.unit not in sub:
        return False
    return all(alg.mul(u, v) in sub for u in sub.basis for v in sub.basis)


def product_space(alg: Algebra, u: Subspace, v: Subspace) -> Subspace:
    """span{x y : x in u, y in v}."""
    return Subspace.span([alg.mul(x, y) for x in u.basis for y in v.basis], alg.dim)


@dataclass(frozen=True)
class Morphism:
    """Linear map between algebras; ``matrix`` is target.dim x source.dim."""

    source: Algebra
    target: Algebra
    matrix: tuple

    def __call__(self, x: Sequence) -> la.Vector:
        return la.matvec(self.matrix, x)

    def problems(self) -> list[str]:
        out = []
        s, t = self.source, self.target
        if self(s.unit) != t.unit:
            out.append("not unital")
        for i in range(s.dim):
            for j in range(s.dim):
                bi, bj = s.basis(i), s.basis(j)
                if self(s.mul(bi, bj)) != t.mul(self(bi), self(bj)):
                    out.append(f"not multiplicative on ({s.labels[i]}, {s.labels[j]})")
        return out


def morphism(source: Algebra, target: Algebra, matrix) -> Morphism:
    m = la.matrix(matrix)
    if len(m) != target.dim or any(len(r) != source.dim for r in m):
        raise AlgebraError(f"morphism matrix must be {target.dim}x{source.dim}")
    return Morphism(source, target, tuple(tuple(r) for r in m))


def subalgebra(alg: Algebra, sub: Subspace, name: str = "") -> tuple[Algebra, la.Matrix]:
    """Induced algebra on the echelon basis of a unital subalgebra, and its embedding matrix."""
    if not is_subalgebra(alg, sub):
        raise AlgebraError("subspace is not a unital subalgebra")
    k = sub.dim
    structure = [[sub.coordinates(alg.mul(u, v)) for v in sub.basis] for u in sub.basis]
    unit = sub.coordinates(alg.unit)
    labels = [_vector_label(alg, v) for v in sub.basis]
    emb = la.transpose(list(sub.basis)) if k else [[] for _ in range(alg.dim)]
    return Algebra(structure, unit, labels, name or (alg.name + "|sub")), emb


def _vector_label(alg: Algebra, v: Sequence) -> str:
    terms = []
    for c, lab in zip(v, alg.labels):
        if not c:
            continue
        if c == 1:
            terms.append(lab)
        elif c == -1:
            terms.append(f"-{lab}")
        else:
            terms.append(f"{c}*{lab}")
    return "+".join(terms).replace("+-", "-") if terms else "0"


def quotient_algebra(alg: Algebra, ideal: Subspace, name: str = "") -> tuple[Algebra, la.Matrix]:
    """A/I on the complement basis of I's echelon form, plus the projection matrix."""
    if not is_two_sided_ideal(alg, ideal):
        raise NotAnIdeal("subspace is not a two-sided ideal")
    comp = ideal.complement_indices
    structure = [[ideal.quotient_coordinates(alg.mul(alg.basis(i), alg.basis(j))) for j in comp]
                 for i in comp]
    unit = ideal.quotient_coordinates(alg.unit)
    labels = [alg.labels[i] for i in comp]
    proj = la.transpose([ideal.quotient_coordinates(alg.basis(j)) for j in range(alg.dim)]) \
        if comp else []
    return Algebra(structure, unit, labels, name or (alg.name + "/I")), proj


@memoized
def center(alg: Algebra) -> Subspace:
    rows = []
    for i in range(alg.dim):
        b = alg.basis(i)
        rows.extend(la.msub(alg.right_matrix(b), alg.left_matrix(b)))
    return la.kernel(rows, alg.dim)


def idealizer(alg: Algebra, j: Subspace) -> Subspace:
    """{x : x J contained in J}."""
    ann = j.annihilator().basis
    rows = []
    for v in j.basis:
        rv = alg.right_matrix(v)  # x -> x v
        rows.extend(la.matvec(la.transpose(rv), f) for f in ann)
    return la.kernel(rows, alg.dim) if rows else Subspace.full(alg.dim)


def direct_product(a: Algebra, b: Algebra, name: str = "") -> Algebra:
    d = a.dim + b.dim
    structure = [[la.zero_vector(d) for _ in range(d)] for _ in range(d)]
    for i in range(a.dim):
        for j in range(a.dim):
            structure[i][j] = a.structure[i][j] + la.zero_vector(b.dim)
    for i in range(b.dim):
        for j in range(b.dim):
            structure[a.dim + i][a.dim + j] = la.zero_vector(a.dim) + b.structure[i][j]
    labels = [f"({l},0)" for l in a.labels] + [f"(0,{l})" for l in b.labels]
    return Algebra(structure, a.unit + b.unit, labels, name or f"{a.name}x{b.name}")


def opposite(alg: Algebra) -> Algebra:
    d = alg.dim
    structure = [[alg.structure[j][i] for j in range(d)] for i in range(d)]
    return Algebra(structure, alg.unit, alg.labels, alg.name + "^op")


def push_subspace(emb: la.Matrix, sub: Subspace, target_dim: int) -> Subspace:
    """Image of a subspace (in source coordinates) under an embedding matrix."""
    return sub.image(emb, target_dim)


def matrix_algebra_element(alg: Algebra, x: Sequence, realization: Sequence[la.Matrix], n: int) -> la.Matrix:
    """Evaluate a basis realization (one n x n matrix per basis element) at x."""
    return la.mcomb(x, realization, n, n)
