"""Backstroem and nodal pairs A in H, the B-matrix, and the crossed-product closure harness.

Pairs are analysed through their semisimple quotients A/J in H/J, which is
all the finite-dimensional data the nodality criteria depend on.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property

from . import linalg as la
from .action import (ActionDatum, CrossedProduct, action_preserves_subalgebra, crossed_product,
                     validate_action)
from .algebra import (Algebra, AlgebraError, idealizer, is_subalgebra, push_subspace, subalgebra)
from .lemma34 import Classification, classify_matrix_condition, module_dichotomy
from .linalg import Subspace
from .modules import regular_module, restrict_scalars
from .radical import (DEFAULT_SEED, CertificateError, corner, is_hereditary, jacobson_radical,
                      min_generators, semisimple_quotient, wedderburn)


class NotBackstrom(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class SemilocalPair:
    """A unital subalgebra ``sub`` (the smaller ring A) of ``ambient`` (H)."""

    ambient: Algebra
    sub: Subspace
    name: str = ""

    @cached_property
    def _induced(self):
        return subalgebra(self.ambient, self.sub, name=(self.name or self.ambient.name) + ":A")

    @property
    def sub_algebra(self) -> Algebra:
        return self._induced[0]

    @property
    def embedding(self) -> la.Matrix:
        return self._induced[1]

    def push(self, sub: Subspace) -> Subspace:
        """Subspace of the subalgebra, in ambient coordinates."""
        return push_subspace(self.embedding, sub, self.ambient.dim)


def validate_pair(pair: SemilocalPair) -> list[str]:
    H, S = pair.ambient, pair.sub
    out = []
    if S.ambient_dim != H.dim:
        return [f"subspace lives in dimension {S.ambient_dim}, ambient has {H.dim}"]
    if H.unit not in S:
        out.append("unit of the ambient algebra is not in the subalgebra")
    for i, u in enumerate(S.basis):
        for j, v in enumerate(S.basis):
            if H.mul(u, v) not in S:
                out.append(f"product of basis vectors {i}, {j} leaves the subspace")
    if not out:
        A, emb = pair.sub_algebra, pair.embedding
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = la.matvec(emb, A.mul(A.basis(i), A.basis(j)))
                if lhs != H.mul(la.matvec(emb, A.basis(i)), la.matvec(emb, A.basis(j))):
                    out.append(f"induced structure constants disagree at ({i}, {j})")
    return out


def sub_radical(pair: SemilocalPair) -> Subspace:
    """rad(A), computed on the induced algebra and pushed into ambient coordinates."""
    return pair.push(jacobson_radical(pair.sub_algebra))


def is_backstrom(pair: SemilocalPair) -> bool:
    return sub_radical(pair) == jacobson_radical(pair.ambient)


def quotient_pair(pair: SemilocalPair) -> SemilocalPair:
    """The pair A/(A cap rad H) inside H / rad H."""
    quo, proj = semisimple_quotient(pair.ambient)
    image = pair.sub.image(proj, quo.dim)
    return SemilocalPair(quo, image, (pair.name or pair.ambient.name) + "/rad")


@dataclass(frozen=True)
class BMatrix:
    a: tuple
    B: tuple
    division_dims: tuple
    basic: bool


def b_matrix(pair: SemilocalPair, seed: int = DEFAULT_SEED) -> BMatrix:
    """Multiplicities b_ij of U_j in V_i = (H/J) e_i, with a_i the regular multiplicities of A/J."""
    if not is_backstrom(pair):
        raise NotBackstrom("pair is not Backstroem; the quotient pair is not well-posed")
    q = quotient_pair(pair)
    Hq, Aq = q.ambient, q.sub_algebra
    data = wedderburn(Aq, seed, allow_fields=True)
    idems = [la.matvec(q.embedding, e) for e in data.prim_idems]
    n = len(idems)
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = la.matmul(Hq.left_matrix(idems[j]), Hq.right_matrix(idems[i]))
            dim = la.rank(m)
            d = data.blocks[j].division_dim
            if dim % d:
                raise CertificateError(f"dim(e_{j} H e_{i}) = {dim} is not divisible by {d}")
            B[i][j] = dim // d
    for i in range(n):
        if B[i][i] <= 0:
            raise CertificateError(f"b_{i}{i} = 0")
        for j in range(n):
            if (B[i][j] != 0) != (B[j][i] != 0):
                raise CertificateError(f"zero pattern of B is not symmetric at ({i}, {j})")
    a = data.sizes
    return BMatrix(tuple(a), tuple(map(tuple, B)),
                   tuple(b.division_dim for b in data.blocks), all(x == 1 for x in a))


def ell_star(pair: SemilocalPair, seed: int = DEFAULT_SEED) -> int:
    """sup of the lengths of H (x)_A U over simple A-modules U."""
    return max(sum(row) for row in b_matrix(pair, seed).B)


def is_nodal_pair(pair: SemilocalPair, seed: int = DEFAULT_SEED) -> bool:
    return is_backstrom(pair) and ell_star(pair, seed) <= 2


def ambient_as_module(pair: SemilocalPair):
    return restrict_scalars(regular_module(pair.ambient), pair.sub_algebra, pair.embedding)


def mu_ambient(pair: SemilocalPair, seed: int = DEFAULT_SEED) -> int:
    """Minimal number of generators of H as a left A-module."""
    return min_generators(pair.sub_algebra, ambient_as_module(pair), seed)


@dataclass(frozen=True)
class PairReport:
    backstrom: bool
    a_vector: tuple
    B: tuple
    ell_star: int
    mu: int
    nodal: bool
    basic: bool
    holds1: bool  # mu_A(H) <= 2
    holds2: bool  # module dichotomy
    holds3: bool  # ell* <= 2
    lemma: Classification
    pattern_ok: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["a_vector"] = list(self.a_vector)
        d["B"] = [list(r) for r in self.B]
        d["lemma"] = dict(zip(("holds1", "holds2", "holds3"), self.lemma))
        return d


def theorem_2gen_report(pair: SemilocalPair, seed: int = DEFAULT_SEED) -> PairReport:
    """Evaluate mu_A(H) <= 2, the module dichotomy and ell* <= 2, and check their implications."""
    bm = b_matrix(pair, seed)
    mu = mu_ambient(pair, seed)
    ls = max(sum(row) for row in bm.B)
    h1 = mu <= 2
    h2 = module_dichotomy(bm.B)
    h3 = ls <= 2
    pattern = (not h1 or h2) and (h2 == h3) and (not bm.basic or not h3 or h1)
    return PairReport(True, bm.a, bm.B, ls, mu, h3, bm.basic, h1, h2, h3,
                      classify_matrix_condition(bm.B, bm.a), pattern)


def pair_report(pair: SemilocalPair, seed: int = DEFAULT_SEED) -> dict:
    """Full analysis as a plain dict; non-Backstroem pairs get a short report."""
    if not is_backstrom(pair):
        return {"backstrom": False, "nodal": False}
    return theorem_2gen_report(pair, seed).to_dict()


def hereditary_cover(pair: SemilocalPair, check_heredity: bool = False, seed: int = DEFAULT_SEED) -> dict:
    """Idealizer of rad(A) inside the ambient algebra, with the cover conditions reported."""
    J = sub_radical(pair)
    cover = idealizer(pair.ambient, J)
    out = {
        "cover": cover,
        "cover_dim": cover.dim,
        "is_ambient": cover.dim == pair.ambient.dim,
        "contains_sub": pair.sub <= cover,
        "unital_subalgebra": is_subalgebra(pair.ambient, cover),
    }
    cpair = SemilocalPair(pair.ambient, cover)
    Hc = cpair.sub_algebra
    out["radical_equal"] = cpair.push(jacobson_radical(Hc)) == J
    if check_heredity:
        out["hereditary"] = is_hereditary(Hc, seed)
    return out


def crossed_pair(pair: SemilocalPair, datum: ActionDatum) -> tuple[SemilocalPair, CrossedProduct]:
    """A[G] inside H[G] for a datum on H that stabilises A and takes values in A."""
    if datum.algebra is not pair.ambient and datum.algebra.dim != pair.ambient.dim:
        raise AlgebraError("datum is not defined on the ambient algebra")
    if not action_preserves_subalgebra(datum, pair.sub, require_omega=True):
        raise AlgebraError("action does not preserve subalgebra")
    cp = crossed_product(pair.ambient, datum)
    return SemilocalPair(cp.total, cp.lift_subspace(pair.sub), (pair.name or "P") + "[G]"), cp


class PreconditionError(AlgebraError):
    pass


def verify_closure_theorem(pair: SemilocalPair, datum: ActionDatum, seed: int = DEFAULT_SEED) -> dict:
    """Build A[G] in H[G] and check independently that the crossed pair is nodal.

    The radicals of both crossed algebras come from their trace forms; the
    formula rad = J[G] is only used as a cross-check. A false verdict is a
    counterexample report carrying every intermediate quantity.
    """
    problems = validate_pair(pair)
    if problems:
        raise PreconditionError("invalid pair: " + "; ".join(problems))
    if not is_nodal_pair(pair, seed):
        raise PreconditionError("the input pair is not nodal")
    report = validate_action(pair.ambient, datum)
    if report:
        raise PreconditionError("invalid action datum: " + "; ".join(report[:5]))
    if not action_preserves_subalgebra(datum, pair.sub, require_omega=True):
        raise PreconditionError("the action does not preserve the subalgebra")
    n = datum.group.order
    if n == 0:  # pragma: no cover - |G| is a nonzero integer, always invertible over Q
        raise PreconditionError("|G| is not invertible")

    cpair, cp = crossed_pair(pair, datum)
    pair_problems = validate_pair(cpair)
    rad_sub = sub_radical(cpair)
    rad_amb = jacobson_radical(cpair.ambient)
    jg = cp.lift_subspace(sub_radical(pair))
    backstrom = rad_sub == rad_amb
    out = {
        "group_order": n,
        "dims": {"A": pair.sub.dim, "H": pair.ambient.dim, "A[G]": cpair.sub.dim, "H[G]": cpair.ambient.dim},
        "crossed_pair_valid": not pair_problems,
        "radical_dims": {"A[G]": rad_sub.dim, "H[G]": rad_amb.dim},
        "backstrom": backstrom,
        "radical_formula_sub": rad_sub == jg,
        "radical_formula_ambient": rad_amb == jg,
    }
    if backstrom:
        rep = theorem_2gen_report(cpair, seed)
        out["pair_report"] = rep.to_dict()
        out["ell_star"] = rep.ell_star
        out["pattern_ok"] = rep.pattern_ok
        out["nodal"] = rep.nodal and rep.pattern_ok
    else:
        out["nodal"] = False
    cov = hereditary_cover(cpair)
    out["cover_is_ambient"] = cov["is_ambient"]
    h0 = is_hereditary(pair.ambient, seed)
    h1 = is_hereditary(cpair.ambient, seed)
    out["ambient_hereditary"] = {"H": h0, "H[G]": h1, "agree": h0 == h1}
    out["counterexample"] = not out["nodal"]
    return out
