"""Left modules over structure-constant algebras, given by action matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .algebra import Algebra
from .linalg import Subspace


@dataclass(frozen=True, eq=False)
class LeftModule:
    """Module of dimension ``dim``; ``action[i]`` is the matrix of basis element b_i."""

    parent: Algebra
    dim: int
    action: tuple

    def act(self, x: Sequence) -> la.Matrix:
        return la.mcomb(x, self.action, self.dim, self.dim)

    def apply(self, x: Sequence, v: Sequence) -> la.Vector:
        return la.matvec(self.act(x), v)

    def problems(self) -> list[str]:
        out = []
        alg = self.parent
        if len(self.action) != alg.dim:
            return [f"expected {alg.dim} action matrices, got {len(self.action)}"]
        if self.act(alg.unit) != la.identity(self.dim):
            out.append("unit does not act as the identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = la.matmul(self.action[i], self.action[j])
                rhs = self.act(alg.mul(alg.basis(i), alg.basis(j)))
                if lhs != rhs:
                    out.append(f"action not multiplicative on ({alg.labels[i]}, {alg.labels[j]})")
        return out


def module(parent: Algebra, action) -> LeftModule:
    mats = tuple(la.matrix(m) for m in action)
    dim = len(mats[0]) if mats else 0
    return LeftModule(parent, dim, mats)


def regular_module(alg: Algebra) -> LeftModule:
    return LeftModule(alg, alg.dim, tuple(alg.left_matrix(alg.basis(i)) for i in range(alg.dim)))


def right_regular_module(alg: Algebra) -> LeftModule:
    """A as a right A-module, i.e. a left module over the opposite algebra."""
    from .algebra import opposite

    op = opposite(alg)
    return LeftModule(op, alg.dim, tuple(alg.right_matrix(alg.basis(i)) for i in range(alg.dim)))


def submodule(m: LeftModule, sub: Subspace) -> LeftModule:
    return LeftModule(m.parent, sub.dim, tuple(la.restricted_matrix(a, sub) for a in m.action))


def quotient_module(m: LeftModule, sub: Subspace) -> LeftModule:
    return LeftModule(m.parent, m.dim - sub.dim, tuple(la.induced_matrix(a, sub) for a in m.action))


def left_ideal_module(alg: Algebra, ideal: Subspace) -> LeftModule:
    return submodule(regular_module(alg), ideal)


def direct_sum(*mods: LeftModule) -> LeftModule:
    parent = mods[0].parent
    if any(m.parent is not parent for m in mods):
        raise ValueError("modules over different algebras")
    n = sum(m.dim for m in mods)
    action = []
    for i in range(parent.dim):
        big = la.zeros(n, n)
        off = 0
        for m in mods:
            a = m.action[i]
            for r in range(m.dim):
                big[off + r][off:off + m.dim] = a[r]
            off += m.dim
        action.append(big)
    return LeftModule(parent, n, tuple(action))


def restrict_scalars(m: LeftModule, sub_alg: Algebra, embedding: la.Matrix) -> LeftModule:
    """View a module over B as a module over a subalgebra A, via A's embedding matrix."""
    cols = la.transpose(embedding)
    return LeftModule(sub_alg, m.dim, tuple(m.act(c) for c in cols))


def pullback(m: LeftModule, source: Algebra, hom_matrix: la.Matrix) -> LeftModule:
    """Module over ``source`` through an algebra map source -> m.parent."""
    return restrict_scalars(m, source, hom_matrix)


def generated_submodule(m: LeftModule, vectors: Sequence[Sequence]) -> Subspace:
    """Smallest submodule containing the vectors."""
    ech = la._Echelon(m.dim)
    queue = [la.vector(v) for v in vectors if ech.add(v) is not None]
    while queue:
        v = queue.pop()
        for a in m.action:
            w = la.matvec(a, v)
            if ech.add(w) is not None:
                queue.append(w)
    return ech.freeze()


def radical_submodule(m: LeftModule, rad: Subspace) -> Subspace:
    """J M for a two-sided ideal J of the parent algebra."""
    vecs = []
    for j in rad.basis:
        a = m.act(j)
        vecs.extend(la.transpose(a))
    return Subspace.span(vecs, m.dim)


def column_space(mat: la.Matrix, dim: int) -> Subspace:
    return Subspace.span(la.transpose(mat), dim) if mat else Subspace.zero(dim)
