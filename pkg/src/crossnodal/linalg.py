"""Exact dense linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`, matrices are lists of rows.
Nothing in here ever rounds; every equality is an exact rational equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = list  # list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing anything inexact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"inexact or unsupported scalar {x!r} ({type(x).__name__})")


def vector(xs: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in xs)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[to_fraction(x) for x in row] for row in rows]


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = to_fraction(c)
    return tuple(c * a for a in v)


def vcomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Linear combination sum(c_i v_i) in dimension ``n``."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in m)


def madd(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def msub(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mscale(c, m: Sequence[Sequence]) -> Matrix:
    c = to_fraction(c)
    return [[c * x for x in row] for row in m]


def mcomb(coeffs: Sequence, mats: Sequence[Sequence[Sequence]], rows: int, cols: int) -> Matrix:
    out = zeros(rows, cols)
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i in range(rows):
            ri, oi = m[i], out[i]
            for j in range(cols):
                if ri[j]:
                    oi[j] += c * ri[j]
    return out


def flatten(m: Sequence[Sequence]) -> Vector:
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence, rows: int, cols: int) -> Matrix:
    return [list(v[i * cols:(i + 1) * cols]) for i in range(rows)]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns; zero rows are kept at the bottom."""
    rows = [list(map(to_fraction, r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        inv = 1 / piv[c]
        if inv != 1:
            for j in range(c, ncols):
                if piv[j]:
                    piv[j] *= inv
        nz = [j for j in range(c, ncols) if piv[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] -= f * piv[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return Subspace.span(m, len(m[0])).dim


def kernel(m: Sequence[Sequence], ncols: int | None = None) -> "Subspace":
    """Right null space {x : m x = 0}."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return Subspace.full(ncols)
    red = Subspace.span(m, ncols)
    piv = red.pivots
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    vecs = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red.basis, piv):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, ncols)


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """Some x with m x = b, or None when the system is inconsistent."""
    nrows = len(m)
    if len(b) != nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {nrows}")
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [to_fraction(bi)] for row, bi in zip(m, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> Matrix | None:
    n = len(m)
    aug = [list(map(to_fraction, row)) + [ONE if i == j else ZERO for j in range(n)]
           for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


def det(m: Sequence[Sequence]) -> Fraction:
    rows = [list(map(to_fraction, r)) for r in m]
    n = len(rows)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                for j in range(c, n):
                    rows[i][j] -= f * rows[c][j]
    return d


class _Echelon:
    """Incrementally maintained reduced echelon basis with sparse rows."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, dict[int, Fraction]] = {}  # pivot -> row

    def add(self, vec) -> dict[int, Fraction] | None:
        if isinstance(vec, dict):
            v = {k: to_fraction(x) for k, x in vec.items() if x}
        else:
            v = {k: to_fraction(x) for k, x in enumerate(vec) if x}
        v = self._reduce_full(v)
        if not v:
            return None
        p = min(v)
        inv = 1 / v[p]
        if inv != 1:
            v = {k: x * inv for k, x in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    nv = row.get(k, ZERO) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return v

    def _reduce_full(self, v):
        # stored rows vanish at every other pivot, so a single pass suffices
        for p in [p for p in v if p in self.rows]:
            c = v.pop(p)
            for k, x in self.rows[p].items():
                if k == p:
                    continue
                nv = v.get(k, ZERO) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def freeze(self) -> "Subspace":
        basis = []
        for p in sorted(self.rows):
            row = [ZERO] * self.n
            for k, x in self.rows[p].items():
                row[k] = x
            basis.append(tuple(row))
        return Subspace(self.n, tuple(basis))


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its reduced echelon basis.

    Two subspaces are equal exactly when their canonical bases are equal, so
    ``==`` is set-level equality.
    """

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        piv = []
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise ValueError("basis vector of wrong length")
            piv.append(next(i for i, x in enumerate(row) if x))
        object.__setattr__(self, "pivots", tuple(piv))

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        ech = _Echelon(ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            ech.add(v)
        return ech.freeze()

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def complement_indices(self) -> tuple[int, ...]:
        """Coordinates not used as pivots; their unit vectors span a complement."""
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of v modulo this subspace (zero at pivots)."""
        v = [to_fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        v[k] -= c * x
        return tuple(v)

    def __contains__(self, v) -> bool:
        return is_zero(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of v in the echelon basis; raises if v is not in the span."""
        if v not in self:
            raise ValueError("vector is not in the subspace")
        return tuple(to_fraction(v[p]) for p in self.pivots)

    def quotient_coordinates(self, v: Sequence) -> Vector:
        r = self.reduce(v)
        return tuple(r[i] for i in self.complement_indices)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """Linear functionals (as coordinate vectors) vanishing on the subspace."""
        return kernel(list(self.basis), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        eqs = self.annihilator().basis + other.annihilator().basis
        return kernel(list(eqs), self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(v in other for v in self.basis)

    def image(self, m: Sequence[Sequence], target_dim: int | None = None) -> "Subspace":
        if target_dim is None:
            target_dim = len(m)
        return Subspace.span([matvec(m, v) for v in self.basis], target_dim)

    def lift(self, q: Sequence) -> Vector:
        """Vector with quotient coordinates ``q`` on the complement indices."""
        v = [ZERO] * self.ambient_dim
        for i, x in zip(self.complement_indices, q):
            v[i] = to_fraction(x)
        return tuple(v)


class SubspaceOps(NamedTuple):
    sum: Subspace
    intersection: Subspace
    equal: bool
    contains: bool  # second argument is contained in the first


def subspace_ops(u: Subspace, v: Subspace) -> SubspaceOps:
    u._check(v)
    return SubspaceOps(u + v, u & v, u == v, v <= u)


def induced_matrix(m: Sequence[Sequence], sub: Subspace) -> Matrix:
    """Matrix of the map induced by ``m`` on ambient/sub, in complement coordinates.

    ``m`` must preserve ``sub``; this is checked.
    """
    for v in sub.basis:
        if matvec(m, v) not in sub:
            raise ValueError("map does not preserve the subspace")
    comp = sub.complement_indices
    cols = []
    for c in comp:
        img = [row[c] for row in m]
        cols.append(sub.quotient_coordinates(img))
    return transpose(cols) if cols else []


def restricted_matrix(m: Sequence[Sequence], sub: Subspace) -> Matrix:
    """Matrix of ``m`` restricted to an invariant subspace, in its echelon basis."""
    cols = [sub.coordinates(matvec(m, v)) for v in sub.basis]
    return transpose(cols) if cols else []
