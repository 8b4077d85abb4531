"""Endomorphism algebras, G-invariant modules and their induced actions, Morita transport checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .action import ActionDatum, CrossedProduct, action_datum, crossed_product, validate_action
from .algebra import Algebra, AlgebraError, is_unit
from .linalg import Subspace
from .modules import LeftModule
from .nodal import SemilocalPair, ell_star, is_backstrom
from .radical import DEFAULT_SEED, is_projective, jacobson_radical, top_multiplicities


class CompatibilityError(AlgebraError):
    pass


class NotProgenerator(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class EndoAlgebra:
    """End_A(M) realised inside m x m matrices; the product is composition."""

    algebra: Algebra
    realization: tuple
    space: Subspace  # flattened m x m matrices
    m: int

    def matrix(self, x: Sequence) -> la.Matrix:
        return la.mcomb(x, self.realization, self.m, self.m)

    def coords(self, mat: Sequence[Sequence]) -> la.Vector:
        """Coordinates of an m x m matrix; ValueError if it is not A-linear."""
        return self.space.coordinates(la.flatten(mat))

    def contains(self, mat: Sequence[Sequence]) -> bool:
        return la.flatten(mat) in self.space


def commutant(mats: Sequence[Sequence[Sequence]], m: int) -> Subspace:
    """Flattened m x m matrices commuting with every matrix in ``mats``."""
    rows = []
    for X in mats:
        for r in range(m):
            for c in range(m):
                row = [la.ZERO] * (m * m)
                for k in range(m):
                    if X[k][c]:
                        row[r * m + k] += X[k][c]
                    if X[r][k]:
                        row[k * m + c] -= X[r][k]
                if any(row):
                    rows.append(row)
    return la.kernel(rows, m * m) if rows else Subspace.full(m * m)


def endomorphism_algebra(alg: Algebra, mod: LeftModule, name: str = "") -> EndoAlgebra:
    m = mod.dim
    space = commutant(mod.action, m)
    real = tuple(la.unflatten(v, m, m) for v in space.basis)
    structure = [[space.coordinates(la.flatten(la.matmul(x, y))) for y in real] for x in real]
    unit = space.coordinates(la.flatten(la.identity(m)))
    E = Algebra(structure, unit, [f"r{i}" for i in range(len(real))], name or f"End({alg.name})")
    return EndoAlgebra(E, real, space, m)


@dataclass(frozen=True, eq=False)
class InvariantModule:
    module: LeftModule
    alpha: tuple  # alpha[g] is an invertible m x m matrix


def invariant_module(mod: LeftModule, alpha: Sequence) -> InvariantModule:
    return InvariantModule(mod, tuple(la.matrix(a) for a in alpha))


def check_compatibility(datum: ActionDatum, im: InvariantModule) -> list[str]:
    """alpha_g(a p) = phi_g(a) alpha_g(p) on basis elements; failures name (g, a, p)."""
    alg, mod = datum.algebra, im.module
    G = datum.group
    out = []
    if len(im.alpha) != G.order:
        return [f"need one alpha per group element ({G.order})"]
    for g in G.elements():
        al = im.alpha[g]
        if la.inverse(al) is None:
            out.append(f"alpha_{G.labels[g]} is not invertible")
            continue
        for i in range(alg.dim):
            lhs = la.matmul(al, mod.action[i])
            rhs = la.matmul(mod.act(datum.apply(g, alg.basis(i))), al)
            if lhs != rhs:
                p = next(c for c in range(mod.dim) if any(lhs[r][c] != rhs[r][c] for r in range(mod.dim)))
                out.append(f"incompatible at (g={G.labels[g]}, a={alg.labels[i]}, p={p})")
    return out


def induced_endo_action(alg: Algebra, datum: ActionDatum, im: InvariantModule,
                        endo: EndoAlgebra | None = None) -> tuple[EndoAlgebra, ActionDatum]:
    """(psi, xi) on E = End_A(P): psi_g(rho) = alpha_g rho alpha_g^-1, xi_{f,g} = lambda(omega^-1) alpha_f alpha_g alpha_fg^-1."""
    probs = check_compatibility(datum, im)
    if probs:
        raise CompatibilityError("; ".join(probs))
    G, mod = datum.group, im.module
    endo = endo or endomorphism_algebra(alg, mod)
    E = endo.algebra
    inv = [la.inverse(a) for a in im.alpha]
    psi = []
    for g in G.elements():
        cols = [endo.coords(la.matmul(la.matmul(im.alpha[g], r), inv[g])) for r in endo.realization]
        psi.append(la.transpose(cols) if cols else [])
    xi = []
    for f in G.elements():
        row = []
        for g in G.elements():
            ok, winv = is_unit(alg, datum.omega[f][g])
            if not ok:
                raise AlgebraError(f"omega_({G.labels[f]},{G.labels[g]}) is not a unit")
            mat = la.matmul(mod.act(winv), la.matmul(la.matmul(im.alpha[f], im.alpha[g]), inv[G.mul(f, g)]))
            try:
                row.append(endo.coords(mat))
            except ValueError:
                raise AlgebraError(f"xi_({G.labels[f]},{G.labels[g]}) is not A-linear") from None
        xi.append(row)
    return endo, action_datum(E, G, psi, xi)


@dataclass(frozen=True, eq=False)
class InducedModule:
    """B (x)_A M as a left B-module, with coordinates of pure tensors."""

    module: LeftModule
    pure: object  # callable (b, p) -> coordinates of b (x) p


def _right_coordinates(B: Algebra, emb: la.Matrix, basis: Sequence[Sequence]):
    """Solver for b = sum_j t_j a_j with a_j in A (B right free on ``basis``)."""
    Adim = len(emb[0]) if emb else 0
    cols = [B.mul(t, la.matvec(emb, la.unit_vector(Adim, k))) for t in basis for k in range(Adim)]
    mat = la.transpose(cols)
    if la.rank(cols) != B.dim or len(cols) != B.dim:
        raise AlgebraError("supplied elements are not a right free basis over the subalgebra")
    inv = la.inverse(mat)

    def solve(b):
        c = la.matvec(inv, b)
        return [c[j * Adim:(j + 1) * Adim] for j in range(len(basis))]

    return solve


def induced_module(B: Algebra, emb: la.Matrix, mod: LeftModule, free_basis: Sequence[Sequence] | None = None,
                   general: bool = False) -> InducedModule:
    """B (x)_A M along the embedding ``emb`` of A = mod.parent into B.

    With ``free_basis`` (elements t_j making B a free right A-module) the
    module is sum_j t_j (x) M. With ``general=True`` the balanced tensor
    product is computed as a quotient of B (x) M.
    """
    m = mod.dim
    if free_basis is not None:
        ts = [la.vector(t) for t in free_basis]
        r = len(ts)
        solve = _right_coordinates(B, emb, ts)

        def pure(b, p):
            out = []
            for a in solve(la.vector(b)):
                out.extend(mod.apply(a, p))
            return tuple(out)

        action = []
        for i in range(B.dim):
            cols = []
            for j in range(r):
                bt = B.mul(B.basis(i), ts[j])
                for k in range(m):
                    cols.append(pure(bt, la.unit_vector(m, k)))
            action.append(la.transpose(cols))
        return InducedModule(LeftModule(B, r * m, tuple(action)), pure)
    if not general:
        raise AlgebraError("no free basis supplied")
    A = mod.parent
    D = B.dim * m
    rel = []
    for x in range(B.dim):
        for k in range(A.dim):
            xa = B.mul(B.basis(x), la.matvec(emb, A.basis(k)))
            for y in range(m):
                v = [la.ZERO] * D
                for xx, c in enumerate(xa):
                    if c:
                        v[xx * m + y] += c
                ay = mod.action[k]
                for yy in range(m):
                    if ay[yy][y]:
                        v[x * m + yy] -= ay[yy][y]
                rel.append(v)
    rels = Subspace.span(rel, D)

    def tensor(b, p):
        return tuple(c * d for c in b for d in p)

    def pure(b, p):
        return rels.quotient_coordinates(tensor(b, p))

    action = []
    for i in range(B.dim):
        L = B.left_matrix(B.basis(i))
        big = _kron(L, la.identity(m))
        action.append(la.induced_matrix(big, rels))
    out = LeftModule(B, D - rels.dim, tuple(action))
    return _GeneralInduced(out, pure, rels, m)


@dataclass(frozen=True, eq=False)
class _GeneralInduced(InducedModule):
    relations: Subspace = None
    m: int = 0

    def lift_endo(self, rho: Sequence[Sequence]) -> la.Matrix:
        """The map id (x) rho on the quotient."""
        return la.induced_matrix(_kron(la.identity(self.module.parent.dim), rho), self.relations)


def _kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> la.Matrix:
    ra, ca, rb, cb = len(a), len(a[0]), len(b), len(b[0])
    out = la.zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                for l in range(cb):
                    if b[k][l]:
                        out[i * rb + k][j * cb + l] = x * b[k][l]
    return out


def phi_isomorphism(alg: Algebra, datum: ActionDatum, im: InvariantModule) -> dict:
    """Construct Phi: End_A(P)[G] -> End_{A[G]}(A[G] (x)_A P) and check it is a ring isomorphism."""
    G = datum.group
    n = G.order
    endo, edatum = induced_endo_action(alg, datum, im)
    induced_report = validate_action(endo.algebra, edatum)
    problems = [f"induced datum: {p}" for p in induced_report]
    out = {"dim_E": endo.algebra.dim, "group_order": n, "induced_action_valid": not induced_report}
    if induced_report:
        out.update(problems=problems, isomorphism=False)
        return out
    left = crossed_product(endo.algebra, edatum)
    cp = crossed_product(alg, datum)
    B = cp.total
    ind = induced_module(B, cp.embed, im.module, free_basis=[cp.symbol(g) for g in G.elements()])
    P2 = ind.module
    right = endomorphism_algebra(B, P2)
    out["dim_left"] = left.total.dim
    out["dim_right"] = right.algebra.dim
    m = im.module.dim
    sym_inv = []
    for g in G.elements():
        ok, v = is_unit(B, cp.symbol(g))
        if not ok:
            raise AlgebraError(f"[{G.labels[g]}] is not a unit")
        sym_inv.append(v)

    def phi_matrix(rho: la.Matrix, g: int) -> la.Matrix:
        cols = []
        for h in G.elements():
            bh = B.mul(cp.symbol(h), sym_inv[g])
            for k in range(m):
                p = la.matvec(rho, la.matvec(im.alpha[g], la.unit_vector(m, k)))
                cols.append(ind.pure(bh, p))
        return la.transpose(cols)

    E = endo.algebra
    images = []
    for j in range(E.dim):
        for g in G.elements():
            images.append(phi_matrix(endo.realization[j], g))
    labels = left.total.labels
    coords = []
    for idx, mat in enumerate(images):
        if not right.contains(mat):
            problems.append(f"Phi({labels[idx]}) is not B-linear")
            coords.append(None)
        else:
            coords.append(right.coords(mat))
    out["b_linear"] = all(c is not None for c in coords)
    # linearity: Phi of a sum equals the sum of the images, checked on consecutive basis pairs
    lin_ok = True
    for idx in range(len(images) - 1):
        j, g = divmod(idx, n)
        j2, g2 = divmod(idx + 1, n)
        if g != g2:
            continue
        summed = phi_matrix(la.madd(endo.realization[j], endo.realization[j2]), g)
        if summed != la.madd(images[idx], images[idx + 1]):
            lin_ok = False
            problems.append(f"Phi not additive on ({labels[idx]}, {labels[idx + 1]})")
    out["linear"] = lin_ok
    unit_img = la.mcomb(left.total.unit, images, P2.dim, P2.dim)
    out["unital"] = unit_img == la.identity(P2.dim)
    if not out["unital"]:
        problems.append("Phi(1) is not the identity")
    mult_ok = True
    L = left.total
    for x in range(L.dim):
        for y in range(L.dim):
            prod = la.mcomb(L.mul(L.basis(x), L.basis(y)), images, P2.dim, P2.dim)
            if prod != la.matmul(images[x], images[y]):
                mult_ok = False
                problems.append(f"Phi not multiplicative on ({labels[x]}, {labels[y]})")
    out["multiplicative"] = mult_ok
    if out["b_linear"]:
        rk = la.rank(coords) if coords else 0
        out["rank"] = rk
        out["bijective"] = rk == L.dim == right.algebra.dim
    else:
        out["bijective"] = False
    if not out["bijective"]:
        problems.append("Phi is not bijective")
    out["isomorphism"] = all(out[k] for k in ("b_linear", "linear", "unital", "multiplicative", "bijective"))
    out["problems"] = problems
    return out


def is_progenerator(alg: Algebra, mod: LeftModule, seed: int = DEFAULT_SEED) -> bool:
    return is_projective(alg, mod, seed) and all(k > 0 for k in top_multiplicities(alg, mod, seed))


def morita_transport_check(pair: SemilocalPair, prog: LeftModule, seed: int = DEFAULT_SEED) -> dict:
    """Transport A in H along a progenerator P: A' = End_A(P) inside H' = End_H(H (x)_A P)."""
    A = pair.sub_algebra
    if prog.parent is not A:
        raise AlgebraError("progenerator must be a module over the pair's subalgebra")
    if not is_progenerator(A, prog, seed):
        raise NotProgenerator("not a progenerator")
    H = pair.ambient
    endA = endomorphism_algebra(A, prog, name="A'")
    ind = induced_module(H, pair.embedding, prog, general=True)
    endH = endomorphism_algebra(H, ind.module, name="H'")
    cols = []
    for r in endA.realization:
        lifted = ind.lift_endo(r)
        try:
            cols.append(endH.coords(lifted))
        except ValueError:
            raise AlgebraError("id (x) rho is not H-linear") from None
    emb = la.transpose(cols)
    image = Subspace.span(cols, endH.algebra.dim)
    out = {
        "dim_A'": endA.algebra.dim,
        "dim_H'": endH.algebra.dim,
        "dim_P'": ind.module.dim,
        "embedding_injective": image.dim == endA.algebra.dim,
        "unital": la.matvec(emb, endA.algebra.unit) == endH.algebra.unit,
    }
    new = SemilocalPair(endH.algebra, image, "transported")
    out["backstrom_before"] = is_backstrom(pair)
    out["backstrom_after"] = is_backstrom(new)
    out["radical_dims"] = {"A'": jacobson_radical(new.sub_algebra).dim, "H'": jacobson_radical(endH.algebra).dim}
    out["ell_star_before"] = ell_star(pair, seed)
    out["ell_star_after"] = ell_star(new, seed) if out["backstrom_after"] else None
    out["preserved"] = (out["backstrom_after"] == out["backstrom_before"]
                        and out["ell_star_after"] == out["ell_star_before"])
    out["pair"] = new
    return out
