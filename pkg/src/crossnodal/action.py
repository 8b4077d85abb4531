"""Finite groups acting on algebras with a factor system, and crossed products.

An action datum is a pair (phi, omega): phi_g is an automorphism of A given as
a matrix on coordinates, omega_{f,g} a unit of A. The crossed product
A[G, (phi, omega)] has basis b_i[g] and multiplication

    a[f] * b[g] = a phi_f(b) omega_{f,g} [fg].
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from . import linalg as la
from .algebra import Algebra, AlgebraError, Morphism, is_unit, opposite, subalgebra
from .linalg import ONE, ZERO, Subspace
from .modules import LeftModule, regular_module, restrict_scalars


class InvalidAction(AlgebraError):
    def __init__(self, report):
        self.report = list(report)
        super().__init__("invalid action datum: " + "; ".join(self.report[:5]))


@dataclass(frozen=True)
class GroupTable:
    table: tuple
    labels: tuple

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @property
    def identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e][g] == g and self.table[g][e] == g for g in range(n)):
                return e
        raise AlgebraError("group table has no identity")

    @property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        out = []
        for g in range(self.order):
            inv = [h for h in range(self.order) if self.table[g][h] == e and self.table[h][g] == e]
            if not inv:
                raise AlgebraError(f"element {self.labels[g]} has no inverse")
            out.append(inv[0])
        return tuple(out)

    def elements(self) -> range:
        return range(self.order)


def group_table(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> GroupTable:
    n = len(table)
    tab = tuple(tuple(int(x) for x in row) for row in table)
    if any(len(row) != n for row in tab):
        raise AlgebraError("Cayley table must be square")
    if any(not 0 <= x < n for row in tab for x in row):
        raise AlgebraError("Cayley table entries out of range")
    labs = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(n))
    return GroupTable(tab, labs)


def cyclic_group(n: int) -> GroupTable:
    labels = ["e", "s"] if n == 2 else ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    return group_table([[(i + j) % n for j in range(n)] for i in range(n)], labels)


def symmetric_group(k: int) -> GroupTable:
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return group_table(table, ["".join(map(str, p)) for p in perms])


def validate_group(group: GroupTable) -> list[str]:
    n = group.order
    t = group.table
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    out.append(f"associativity fails on ({group.labels[a]}, {group.labels[b]}, {group.labels[c]})")
    try:
        group.inverse
    except AlgebraError as exc:
        out.append(str(exc))
    return out


@dataclass(frozen=True, eq=False)
class ActionDatum:
    """phi[g] is the matrix of phi_g; omega[f][g] the coordinates of omega_{f,g}."""

    algebra: Algebra
    group: GroupTable
    phi: tuple
    omega: tuple

    def apply(self, g: int, x: Sequence) -> la.Vector:
        return la.matvec(self.phi[g], x)


def action_datum(alg: Algebra, group: GroupTable, phi: Sequence, omega=None) -> ActionDatum:
    """Build a datum; ``omega`` may be a full n x n table or a dict {(f, g): unit}, default 1."""
    n = group.order
    mats = tuple(tuple(tuple(r) for r in la.matrix(m)) for m in phi)
    if len(mats) != n:
        raise AlgebraError(f"need one automorphism per group element ({n})")
    for m in mats:
        if len(m) != alg.dim or any(len(r) != alg.dim for r in m):
            raise AlgebraError(f"automorphism matrices must be {alg.dim}x{alg.dim}")
    table = [[alg.unit for _ in range(n)] for _ in range(n)]
    if isinstance(omega, dict):
        for (f, g), v in omega.items():
            table[f][g] = la.vector(v)
    elif omega is not None:
        table = [[la.vector(v) for v in row] for row in omega]
    for row in table:
        for v in row:
            if len(v) != alg.dim:
                raise AlgebraError("omega value of wrong dimension")
    return ActionDatum(alg, group, mats, tuple(tuple(r) for r in table))


def trivial_datum(alg: Algebra, group: GroupTable) -> ActionDatum:
    return action_datum(alg, group, [la.identity(alg.dim)] * group.order)


def validate_action(alg: Algebra, datum: ActionDatum) -> list[str]:
    """All failures of the action axioms, in tuple order; empty iff (phi, omega) is an action."""
    G = datum.group
    out = validate_group(G)
    if out:
        return out
    n, d = G.order, alg.dim
    lab = G.labels
    e = G.identity
    basis = [alg.basis(i) for i in range(d)]
    for g in range(n):
        probs = Morphism(alg, alg, datum.phi[g]).problems()
        out.extend(f"phi_{lab[g]}: {p}" for p in probs)
        if la.det(datum.phi[g]) == 0:
            out.append(f"phi_{lab[g]}: not invertible")
    units_ok = True
    for f in range(n):
        for g in range(n):
            if not is_unit(alg, datum.omega[f][g])[0]:
                out.append(f"omega_({lab[f]},{lab[g]}) is not a unit")
                units_ok = False
    if datum.phi[e] != tuple(tuple(r) for r in la.identity(d)):
        out.append(f"axiom 2: phi_{lab[e]} is not the identity")
    for g in range(n):
        if datum.omega[g][e] != alg.unit:
            out.append(f"axiom 2: omega_({lab[g]},{lab[e]}) != 1")
        if datum.omega[e][g] != alg.unit:
            out.append(f"axiom 2: omega_({lab[e]},{lab[g]}) != 1")
    if not units_ok:
        return out
    # axiom 1 in the equivalent form phi_f(phi_g(a)) omega_{f,g} = omega_{f,g} phi_{fg}(a)
    for f in range(n):
        for g in range(n):
            w = datum.omega[f][g]
            fg = G.mul(f, g)
            for i, a in enumerate(basis):
                lhs = alg.mul(datum.apply(f, datum.apply(g, a)), w)
                rhs = alg.mul(w, datum.apply(fg, a))
                if lhs != rhs:
                    out.append(f"axiom 1 fails at ({lab[f]}, {lab[g]}, {alg.labels[i]})")
    for f in range(n):
        for g in range(n):
            for h in range(n):
                lhs = alg.mul(datum.apply(f, datum.omega[g][h]), datum.omega[f][G.mul(g, h)])
                rhs = alg.mul(datum.omega[f][g], datum.omega[G.mul(f, g)][h])
                if lhs != rhs:
                    out.append(f"axiom 3 fails at ({lab[f]}, {lab[g]}, {lab[h]})")
    return out


@dataclass(frozen=True, eq=False)
class CrossedProduct:
    base: Algebra
    datum: ActionDatum
    total: Algebra
    embed: tuple  # total.dim x base.dim

    @property
    def group(self) -> GroupTable:
        return self.datum.group

    def index(self, i: int, g: int) -> int:
        return i * self.group.order + g

    def element(self, a: Sequence, g: int) -> la.Vector:
        """The element a[g]."""
        v = [ZERO] * self.total.dim
        for i, c in enumerate(a):
            if c:
                v[self.index(i, g)] = la.to_fraction(c)
        return tuple(v)

    def symbol(self, g: int) -> la.Vector:
        return self.element(self.base.unit, g)

    def coefficient(self, x: Sequence, g: int) -> la.Vector:
        return tuple(x[self.index(i, g)] for i in range(self.base.dim))

    def base_subspace(self) -> Subspace:
        """The copy A[e] of the base algebra."""
        return Subspace.span(la.transpose(self.embed), self.total.dim)

    def lift_subspace(self, sub: Subspace) -> Subspace:
        """span{s[g] : s in sub, g in G}."""
        return Subspace.span([self.element(s, g) for s in sub.basis for g in self.group.elements()],
                             self.total.dim)


def crossed_product(alg: Algebra, datum: ActionDatum, check: bool = True) -> CrossedProduct:
    """A[G, (phi, omega)]; basis ordered algebra-basis-major, group-minor.

    With ``check=False`` the product is built from the raw datum even when it
    fails the axioms (used to confirm that broken data break associativity).
    """
    if check:
        report = validate_action(alg, datum)
        if report:
            raise InvalidAction(report)
    G = datum.group
    n, d = G.order, alg.dim
    D = n * d
    cols = [[la.matvec(datum.phi[f], alg.basis(j)) for j in range(d)] for f in range(n)]
    structure = [[None] * D for _ in range(D)]
    for i in range(d):
        bi = alg.basis(i)
        for f in range(n):
            for j in range(d):
                left = alg.mul(bi, cols[f][j])
                for g in range(n):
                    c = alg.mul(left, datum.omega[f][g])
                    fg = G.mul(f, g)
                    v = [ZERO] * D
                    for k, x in enumerate(c):
                        if x:
                            v[k * n + fg] = x
                    structure[i * n + f][j * n + g] = v
    e = G.identity
    unit = [ZERO] * D
    for k, x in enumerate(alg.unit):
        unit[k * n + e] = x
    labels = [f"{alg.labels[i]}[{G.labels[g]}]" for i in range(d) for g in range(n)]
    total = Algebra(structure, unit, labels, name=f"{alg.name}[G]")
    embed = [[ZERO] * d for _ in range(D)]
    for i in range(d):
        embed[i * n + e][i] = ONE
    return CrossedProduct(alg, datum, total, tuple(tuple(r) for r in embed))


def skew_group_ring(alg: Algebra, group: GroupTable, phi: Sequence) -> CrossedProduct:
    """Crossed product with trivial factor system; phi must be a homomorphism G -> Aut(A)."""
    return crossed_product(alg, action_datum(alg, group, phi))


def free_rank_report(cp: CrossedProduct) -> dict:
    """Check that the symbols [g] form a basis of A[G] as a left A-module."""
    B, A = cp.total, cp.base
    vecs = []
    problems = []
    for g in cp.group.elements():
        sym = cp.symbol(g)
        for i in range(A.dim):
            p = B.mul(la.matvec(cp.embed, A.basis(i)), sym)
            if p != cp.element(A.basis(i), g):
                problems.append(f"a[e]*[g] != a[g] for ({A.labels[i]}, {cp.group.labels[g]})")
            vecs.append(p)
    rk = la.rank(vecs)
    if rk != B.dim:
        problems.append(f"rank {rk} != {B.dim}")
    return {"free": not problems, "rank_over_base": cp.group.order if not problems else None,
            "problems": problems}


class BalancedTensorSquare:
    """B (x)_A B as the quotient of B (x)_Q B by {xa (x) y - x (x) ay}.

    Vectors live in B (x)_Q B with coordinate x*d + y for basis (x, y).
    """

    def __init__(self, algebra: Algebra, sub: Subspace):
        self.algebra = B = algebra
        self.sub = sub
        d = B.dim
        self.ambient_dim = d * d
        ech = la._Echelon(d * d)
        for a in sub.basis:
            ra = B.right_matrix(a)
            lt = B.left_matrix(a)
            for x in range(d):
                xa = [ra[k][x] for k in range(d)]
                for y in range(d):
                    rel: dict[int, la.Fraction] = {}
                    for k, c in enumerate(xa):
                        if c:
                            rel[k * d + y] = rel.get(k * d + y, ZERO) + c
                    for k in range(d):
                        c = lt[k][y]
                        if c:
                            rel[x * d + k] = rel.get(x * d + k, ZERO) - c
                    ech.add({k: v for k, v in rel.items() if v})
        self.relations = ech.freeze()

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.relations.dim

    def tensor(self, x: Sequence, y: Sequence) -> la.Vector:
        d = self.algebra.dim
        v = [ZERO] * (d * d)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        v[i * d + j] += a * b
        return tuple(v)

    def _as_matrix(self, w):
        return la.unflatten(w, self.algebra.dim, self.algebra.dim)

    def left(self, b: Sequence, w: Sequence) -> la.Vector:
        return la.flatten(la.matmul(self.algebra.left_matrix(b), self._as_matrix(w)))

    def right(self, w: Sequence, b: Sequence) -> la.Vector:
        rb = self.algebra.right_matrix(b)
        return la.flatten(la.matmul(self._as_matrix(w), la.transpose(rb)))

    def mu(self, w: Sequence) -> la.Vector:
        B = self.algebra
        d = B.dim
        out = B.zero
        for idx, c in enumerate(w):
            if c:
                out = la.vadd(out, la.vscale(c, B.structure[idx // d][idx % d]))
        return out

    def equal(self, u: Sequence, v: Sequence) -> bool:
        return la.vsub(u, v) in self.relations

    def mu_is_bimodule_map(self) -> bool:
        B = self.algebra
        d = B.dim
        for idx in range(d * d):
            w = la.unit_vector(d * d, idx)
            for k in range(d):
                b = B.basis(k)
                if self.mu(self.left(b, w)) != B.mul(b, self.mu(w)):
                    return False
                if self.mu(self.right(w, b)) != B.mul(self.mu(w), b):
                    return False
        return all(is_zero_vec(self.mu(r)) for r in self.relations.basis)


def is_zero_vec(v) -> bool:
    return not any(v)


def balanced_tensor_square(algebra: Algebra, sub: Subspace) -> BalancedTensorSquare:
    return BalancedTensorSquare(algebra, sub)


@dataclass(frozen=True)
class Witness:
    w: tuple  # in B (x)_Q B coordinates
    pi: tuple  # base.dim x total.dim


def separability_witness(cp: CrossedProduct) -> Witness:
    """w = 1/n sum_g omega_{g,g^-1}^{-1} [g] (x) [g^-1] and pi(sum a_g[g]) = a_e."""
    G, A, B = cp.group, cp.base, cp.total
    n = G.order
    if n == 0:  # pragma: no cover
        raise AlgebraError("|G| is not invertible")
    inv = G.inverse
    d = B.dim
    w = [ZERO] * (d * d)
    for g in G.elements():
        ok, winv = is_unit(A, cp.datum.omega[g][inv[g]])
        if not ok:
            raise AlgebraError("omega value is not a unit")
        left = cp.element(winv, g)
        right = cp.symbol(inv[g])
        for i, a in enumerate(left):
            if a:
                for j, b in enumerate(right):
                    if b:
                        w[i * d + j] += a * b / n
    e = G.identity
    pi = [[ZERO] * d for _ in range(A.dim)]
    for i in range(A.dim):
        pi[i][cp.index(i, e)] = ONE
    return Witness(tuple(w), tuple(tuple(r) for r in pi))


def check_strict_separability(algebra: Algebra, sub: Subspace, w: Sequence, pi: Sequence[Sequence],
                              tensor: BalancedTensorSquare | None = None) -> dict:
    """Check the three conditions of strict separability for A (= sub) inside B.

    (1) via the witness: mu(w) = 1 and b w = w b for every basis b;
    (2) via pi: pi o incl = id and pi(a x a') = a pi(x) a';
    (3) B projective as a left A-module and as a right A-module.
    """
    from .radical import is_projective

    B = algebra
    tensor = tensor or BalancedTensorSquare(B, sub)
    A, emb = subalgebra(B, sub)
    problems = []
    if tensor.mu(w) != B.unit:
        problems.append("mu(w) != 1")
    for k in range(B.dim):
        b = B.basis(k)
        if not tensor.equal(tensor.left(b, w), tensor.right(w, b)):
            problems.append(f"b w != w b for b = {B.labels[k]}")
    cond1 = not problems
    p2 = []
    pim = [list(r) for r in pi]
    for i in range(A.dim):
        if la.matvec(pim, la.matvec(emb, A.basis(i))) != A.basis(i):
            p2.append(f"pi(incl({A.labels[i]})) != {A.labels[i]}")
    for i in range(A.dim):
        ai = la.matvec(emb, A.basis(i))
        for x in range(B.dim):
            bx = B.basis(x)
            for j in range(A.dim):
                aj = la.matvec(emb, A.basis(j))
                lhs = la.matvec(pim, B.mul(B.mul(ai, bx), aj))
                rhs = A.mul(A.mul(A.basis(i), la.matvec(pim, bx)), A.basis(j))
                if lhs != rhs:
                    p2.append(f"pi not bilinear at ({A.labels[i]}, {B.labels[x]}, {A.labels[j]})")
    problems += p2
    left_mod = restrict_scalars(regular_module(B), A, emb)
    right_mod = LeftModule(opposite(A), B.dim,
                           tuple(B.right_matrix(c) for c in la.transpose(emb)))
    left_proj = is_projective(A, left_mod)
    right_proj = is_projective(right_mod.parent, right_mod)
    if not left_proj:
        problems.append("B is not projective as a left A-module")
    if not right_proj:
        problems.append("B is not projective as a right A-module")
    return {
        "split_multiplication": cond1,
        "split_inclusion": not p2,
        "projective_left": left_proj,
        "projective_right": right_proj,
        "strictly_separable": not problems,
        "tensor_dim": tensor.dim,
        "problems": problems,
    }


def induced_quotient_action(alg: Algebra, datum: ActionDatum) -> tuple[Algebra, ActionDatum]:
    """The datum (phi-bar, omega-bar) on A / rad(A)."""
    from .radical import jacobson_radical, semisimple_quotient

    rad = jacobson_radical(alg)
    for g in datum.group.elements():
        if rad.image(datum.phi[g], alg.dim) != rad:
            raise AlgebraError(f"phi_{datum.group.labels[g]} does not preserve the radical")
    quo, proj = semisimple_quotient(alg)
    phi = [la.induced_matrix(datum.phi[g], rad) if quo.dim else [] for g in datum.group.elements()]
    omega = [[la.matvec(proj, w) for w in row] for row in datum.omega]
    out = action_datum(quo, datum.group, phi, omega)
    report = validate_action(quo, out)
    if report:
        raise InvalidAction(report)
    return quo, out


def action_preserves_subalgebra(datum: ActionDatum, sub: Subspace, require_omega: bool = False) -> bool:
    for g in datum.group.elements():
        if sub.image(datum.phi[g], sub.ambient_dim) != sub:
            return False
    if require_omega:
        return all(w in sub for row in datum.omega for w in row)
    return True


def restrict_datum(datum: ActionDatum, sub: Subspace) -> tuple[Algebra, la.Matrix, ActionDatum]:
    """The datum restricted to a stable unital subalgebra containing every omega value."""
    if not action_preserves_subalgebra(datum, sub, require_omega=True):
        raise AlgebraError("action does not preserve the subalgebra")
    A, emb = subalgebra(datum.algebra, sub)
    phi = [la.restricted_matrix(datum.phi[g], sub) for g in datum.group.elements()]
    omega = [[sub.coordinates(w) for w in row] for row in datum.omega]
    return A, emb, action_datum(A, datum.group, phi, omega)
