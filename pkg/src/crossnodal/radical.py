"""Jacobson radical, Wedderburn data, idempotents and projectivity.

Everything assumes characteristic zero, where the radical is the kernel of
the trace form T(x, y) = tr(L_{xy}).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from . import linalg as la
from . import poly
from .algebra import Algebra, AlgebraError, center, memoized, product_space, quotient_algebra
from .linalg import ONE, ZERO, Subspace
from .modules import LeftModule, column_space, left_ideal_module, radical_submodule


class NotSplit(AlgebraError):
    """The semisimple algebra needs a field extension to be decomposed."""


class CertificateError(AssertionError):
    pass


DEFAULT_SEED = 20240607


def trace_form(alg: Algebra) -> la.Matrix:
    tr = alg.trace
    d = alg.dim
    return [[tr(alg.structure[i][j]) for j in range(d)] for i in range(d)]


def radical_certificate(alg: Algebra, rad: Subspace) -> list[str]:
    """Independent checks that ``rad`` is the Jacobson radical."""
    from .algebra import is_two_sided_ideal

    out = []
    if not is_two_sided_ideal(alg, rad):
        return ["radical is not a two-sided ideal"]
    power = rad
    for _ in range(alg.dim + 1):
        if power.dim == 0:
            break
        power = product_space(alg, power, rad)
    if power.dim:
        out.append("radical is not nilpotent")
    quo, _ = quotient_algebra(alg, rad)
    if quo.dim and la.rank(trace_form(quo)) != quo.dim:
        out.append("trace form of the quotient is degenerate")
    return out


@memoized
def jacobson_radical(alg: Algebra) -> Subspace:
    rad = la.kernel(trace_form(alg), alg.dim)
    problems = radical_certificate(alg, rad)
    if problems:
        raise CertificateError("; ".join(problems))
    return rad


def is_semisimple(alg: Algebra) -> bool:
    return jacobson_radical(alg).dim == 0


@memoized
def semisimple_quotient(alg: Algebra) -> tuple[Algebra, la.Matrix]:
    quo, proj = quotient_algebra(alg, jacobson_radical(alg), name=alg.name + "/rad")
    return quo, proj


def minimal_polynomial(alg: Algebra, x: Sequence, unit: Sequence | None = None) -> poly.Poly:
    """Monic minimal polynomial of x, taking ``unit`` as the identity (a corner eAe)."""
    e = la.vector(unit) if unit is not None else alg.unit
    powers = [e]
    cur = e
    for k in range(1, alg.dim + 2):
        cur = la.vector(x) if k == 1 else alg.mul(cur, x)
        coeffs = la.solve(la.transpose(powers), cur)
        if coeffs is not None:
            return [-c for c in coeffs] + [ONE]
        powers.append(cur)
    raise AlgebraError("no minimal polynomial found")  # pragma: no cover


def evaluate_polynomial(alg: Algebra, p: Sequence, x: Sequence, unit: Sequence | None = None) -> la.Vector:
    e = la.vector(unit) if unit is not None else alg.unit
    acc = alg.zero
    for c in reversed(poly.trim(p)):
        acc = la.vadd(alg.mul(acc, x), la.vscale(c, e))
    return acc


def corner(alg: Algebra, e: Sequence) -> Subspace:
    """The subspace e A e."""
    m = la.matmul(alg.left_matrix(e), alg.right_matrix(e))
    return column_space(m, alg.dim)


@dataclass(frozen=True)
class Block:
    central_idempotent: tuple
    dim: int  # dimension of the block S e
    size: int  # n with block ~ Mat_n(D)
    division_dim: int  # dim of D = e' S e' for the primitive e'; 1 when split
    primitive: tuple


@dataclass(frozen=True)
class WedderburnData:
    parent: Algebra
    blocks: tuple

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(b.size for b in self.blocks)

    @property
    def prim_idems(self) -> tuple:
        return tuple(b.primitive for b in self.blocks)

    @property
    def central_idempotents(self) -> tuple:
        return tuple(b.central_idempotent for b in self.blocks)

    @property
    def split(self) -> bool:
        return all(b.division_dim == 1 for b in self.blocks)


def _candidates(alg: Algebra, basis: Sequence[Sequence], rng: random.Random, tries: int = 200):
    basis = [la.vector(b) for b in basis]
    yield from basis
    n = alg.dim
    yield la.vcomb([k + 1 for k in range(len(basis))], basis, n)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield la.vadd(basis[i], basis[j])
            yield alg.mul(basis[i], basis[j])
    for _ in range(tries):
        yield la.vcomb([rng.randint(-3, 3) for _ in basis], basis, n)


def _split_center(alg: Algebra, rng: random.Random, allow_fields: bool) -> list:
    z = center(alg)
    pending = [alg.unit]
    done = []
    while pending:
        e = pending.pop(0)
        ez = Subspace.span([alg.mul(e, v) for v in z.basis], alg.dim)
        if ez.dim == 1:
            done.append(e)
            continue
        gen = None
        for w in _candidates(alg, ez.basis, rng):
            m = minimal_polynomial(alg, w, e)
            if poly.degree(m) == ez.dim:
                gen = (w, m)
                break
        if gen is None:  # pragma: no cover - random elements generate a semisimple commutative algebra
            raise AlgebraError("could not find a generator of the center")
        w, m = gen
        if poly.degree(poly.pgcd(m, poly.derivative(m))) > 0:
            raise AlgebraError("central element with repeated root; algebra is not semisimple")
        roots, rest = poly.split_rational(m)
        factors = [[-r, ONE] for r in roots]
        if poly.degree(rest) > 0:
            if not allow_fields:
                raise NotSplit(
                    f"minimal polynomial of a central element has an irreducible factor of degree "
                    f"{poly.degree(rest)} over Q")
            factors += poly.irreducible_factors(rest)
        if len(factors) == 1:
            done.append(e)
            continue
        for p in poly.crt_idempotents(factors):
            done.append(evaluate_polynomial(alg, p, w, e))
    return done


def _primitive_in_block(alg: Algebra, f: la.Vector, rng: random.Random) -> la.Vector:
    while True:
        cf = corner(alg, f)
        if cf.dim == 1:
            return f
        for a in _candidates(alg, cf.basis, rng):
            m = minimal_polynomial(alg, a, f)
            if poly.degree(m) < 2:
                continue
            roots = poly.rational_roots(m)
            if not roots:
                continue
            r = roots[0]
            q = poly.divmod_(m, [-r, ONE])[0]
            e1 = la.vscale(1 / poly.evaluate(q, r), evaluate_polynomial(alg, q, a, f))
            e2 = la.vsub(f, e1)
            f = min((e1, e2), key=lambda e: (corner(alg, e).dim, e))
            break
        else:
            raise NotSplit("no primitive idempotent found; the block is not split over Q")


@memoized
def wedderburn(alg: Algebra, seed: int = DEFAULT_SEED, allow_fields: bool = False) -> WedderburnData:
    """Block decomposition of a semisimple algebra with one primitive idempotent per block.

    With ``allow_fields`` a block that is a commutative field extension of Q is
    accepted as a skew-field block of size 1; anything else non-split raises
    :class:`NotSplit`.
    """
    if not is_semisimple(alg):
        raise AlgebraError("wedderburn requires a semisimple algebra")
    rng = random.Random(seed)
    blocks = []
    for e in _split_center(alg, rng, allow_fields):
        block_dim = la.rank(alg.right_matrix(e))
        zdim = Subspace.span([alg.mul(e, v) for v in center(alg).basis], alg.dim).dim
        if zdim == 1:
            n = isqrt(block_dim)
            if n * n != block_dim:
                raise NotSplit(f"block of dimension {block_dim} is not a full matrix algebra over Q")
            prim = _primitive_in_block(alg, e, rng)
            blocks.append(Block(e, block_dim, n, 1, prim))
        elif block_dim == zdim:
            blocks.append(Block(e, block_dim, 1, zdim, e))
        else:
            raise NotSplit("non-commutative block over a proper extension field of Q")
    blocks.sort(key=lambda b: tuple(-x for x in b.central_idempotent))
    data = WedderburnData(alg, tuple(blocks))
    problems = wedderburn_certificate(data)
    if problems:
        raise CertificateError("; ".join(problems))
    return data


def wedderburn_certificate(data: WedderburnData) -> list[str]:
    alg = data.parent
    out = []
    total = alg.zero
    cs = data.central_idempotents
    for i, b in enumerate(data.blocks):
        e = b.central_idempotent
        total = la.vadd(total, e)
        if alg.mul(e, e) != e:
            out.append(f"central idempotent {i} is not idempotent")
        if e not in center(alg):
            out.append(f"central idempotent {i} is not central")
        for j in range(i):
            if alg.mul(e, cs[j]) != alg.zero:
                out.append(f"central idempotents {j}, {i} are not orthogonal")
        p = b.primitive
        if alg.mul(p, p) != p or alg.mul(e, p) != p:
            out.append(f"primitive idempotent {i} is not an idempotent of its block")
        if corner(alg, p).dim != b.division_dim:
            out.append(f"corner of primitive idempotent {i} has the wrong dimension")
        if la.rank(alg.right_matrix(p)) != b.size * b.division_dim:
            out.append(f"block {i}: dim(S e) differs from the block size")
        if b.dim != b.division_dim * b.size ** 2:
            out.append(f"block {i}: dimension is not d*n^2")
    if total != alg.unit:
        out.append("central idempotents do not sum to 1")
    if sum(b.dim for b in data.blocks) != alg.dim:
        out.append("block dimensions do not add up")
    return out


def simple_multiplicities(alg: Algebra, data: WedderburnData, m: LeftModule) -> tuple[int, ...]:
    """Multiplicity of each simple module in a module over a semisimple algebra."""
    out = []
    for b in data.blocks:
        r = la.rank(m.act(b.primitive))
        if r % b.division_dim:
            raise CertificateError("multiplicity is not an integer")
        out.append(r // b.division_dim)
    if sum(k * b.size * b.division_dim for k, b in zip(out, data.blocks)) != m.dim:
        raise CertificateError("multiplicities do not reproduce the module dimension")
    return tuple(out)


def _idempotent_iterate(alg: Algebra, e: la.Vector) -> la.Vector:
    for _ in range(alg.dim + 2):
        e2 = alg.mul(e, e)
        if e2 == e:
            return e
        e = la.vsub(la.vscale(3, e2), la.vscale(2, alg.mul(e2, e)))
    raise AlgebraError("idempotent lifting did not converge; input is not idempotent modulo the radical")


def lift_idempotents(alg: Algebra, idempotents: Sequence[Sequence]) -> list[la.Vector]:
    """Orthogonal idempotents of A lifting orthogonal idempotents of A/rad(A).

    Inputs are in the coordinates of :func:`semisimple_quotient`.
    """
    rad = jacobson_radical(alg)
    quo, _ = semisimple_quotient(alg)
    idems = [la.vector(e) for e in idempotents]
    for i, e in enumerate(idems):
        if quo.mul(e, e) != e:
            raise AlgebraError(f"input {i} is not idempotent")
        for j in range(i):
            if quo.mul(e, idems[j]) != quo.zero or quo.mul(idems[j], e) != quo.zero:
                raise AlgebraError(f"inputs {j} and {i} are not orthogonal")
    out = []
    s = alg.zero
    for ebar in idems:
        e = rad.lift(ebar)
        if out:
            c = la.vsub(alg.unit, s)
            e = alg.mul(alg.mul(c, e), c)
        e = _idempotent_iterate(alg, e)
        out.append(e)
        s = la.vadd(s, e)
    return out


@dataclass(frozen=True)
class SemiperfectData:
    """Wedderburn data of A/rad(A) together with lifted primitive idempotents."""

    radical: Subspace
    quotient: Algebra
    wedderburn: WedderburnData
    lifted: tuple
    projective_dims: tuple  # dim(A e_i)


@memoized
def semiperfect_data(alg: Algebra, seed: int = DEFAULT_SEED) -> SemiperfectData:
    rad = jacobson_radical(alg)
    quo, _ = semisimple_quotient(alg)
    data = wedderburn(quo, seed, allow_fields=True)
    lifted = tuple(lift_idempotents(alg, data.prim_idems))
    pdims = tuple(la.rank(alg.right_matrix(e)) for e in lifted)
    return SemiperfectData(rad, quo, data, lifted, pdims)


def top_multiplicities(alg: Algebra, m: LeftModule, seed: int = DEFAULT_SEED) -> tuple[int, ...]:
    """Multiplicities of the simple modules in M / rad(A) M."""
    sp = semiperfect_data(alg, seed)
    jm = radical_submodule(m, sp.radical)
    out = []
    for e, b in zip(sp.lifted, sp.wedderburn.blocks):
        img = column_space(m.act(e), m.dim) + jm
        k = img.dim - jm.dim
        if k % b.division_dim:
            raise CertificateError("top multiplicity is not an integer")
        out.append(k // b.division_dim)
    return tuple(out)


def projective_cover_dim(alg: Algebra, m: LeftModule, seed: int = DEFAULT_SEED) -> int:
    sp = semiperfect_data(alg, seed)
    return sum(k * p for k, p in zip(top_multiplicities(alg, m, seed), sp.projective_dims))


def is_projective(alg: Algebra, m: LeftModule, seed: int = DEFAULT_SEED) -> bool:
    return projective_cover_dim(alg, m, seed) == m.dim


def is_hereditary(alg: Algebra, seed: int = DEFAULT_SEED) -> bool:
    """Left hereditary iff rad(A) is a projective left module."""
    rad = jacobson_radical(alg)
    if rad.dim == 0:
        return True
    return is_projective(alg, left_ideal_module(alg, rad), seed)


def regular_multiplicities(alg: Algebra, seed: int = DEFAULT_SEED) -> tuple[int, ...]:
    return semiperfect_data(alg, seed).wedderburn.sizes


def min_generators(alg: Algebra, m: LeftModule, seed: int = DEFAULT_SEED) -> int:
    """Minimal number of generators: max over simples of ceil(m_i / a_i) on the top."""
    tops = top_multiplicities(alg, m, seed)
    regs = regular_multiplicities(alg, seed)
    return max((-(-k // a) for k, a in zip(tops, regs)), default=0)


def is_basic(alg: Algebra, seed: int = DEFAULT_SEED) -> bool:
    return all(n == 1 for n in regular_multiplicities(alg, seed))
