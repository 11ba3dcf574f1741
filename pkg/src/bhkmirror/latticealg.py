"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding ``int`` or ``Fraction`` entries.
Nothing here touches floating point.

Hermite normal form convention (row style): ``u @ m == h`` with ``u``
unimodular, ``h`` in row echelon form, pivots positive, zero rows last, and
every entry above a pivot reduced into ``[0, pivot)``.  This makes the HNF of
a generating set a canonical description of the lattice it spans.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm

from .errors import (
    InfiniteQuotient,
    NotASublattice,
    NotInLattice,
    SingularMatrix,
)


def as_matrix(rows, kind=int):
    return tuple(tuple(kind(x) for x in row) for row in rows)


def shape(m):
    return len(m), (len(m[0]) if m else 0)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m, ncols=None):
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vecmat(v, m):
    """Row vector times matrix."""
    out = [0] * (len(m[0]) if m else 0)
    for x, row in zip(v, m):
        if x:
            for k, y in enumerate(row):
                out[k] += x * y
    return tuple(out)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def vector_gcd(v):
    return reduce(gcd, (abs(x) for x in v), 0)


def common_denominator(entries):
    return reduce(lcm, (Fraction(x).denominator for x in entries), 1)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector of the same direction."""
    den = common_denominator(v)
    w = [int(Fraction(x) * den) for x in v]
    g = vector_gcd(w)
    return tuple(x // g for x in w) if g else tuple(w)


def determinant(m):
    """Exact determinant (fraction-free Bareiss elimination)."""
    n, k = shape(m)
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                num = a[r][c] * a[i][i] - a[r][i] * a[i][c]
                a[r][c] = num / prev if isinstance(num, Fraction) else _exact_div(num, prev)
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def _exact_div(a, b):
    if isinstance(b, Fraction):
        return Fraction(a) / b
    q, r = divmod(a, b)
    return q if r == 0 else Fraction(a, b)


def rref(m):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    nrows, ncols = shape(m)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in a), tuple(pivots)


def rank(m):
    return len(rref(m)[1]) if m else 0


def solve_rational(m, b):
    """Solve ``m @ x == b`` exactly for square nonsingular ``m``."""
    n, k = shape(m)
    if n != k or len(b) != n:
        raise ValueError("solve_rational needs a square system")
    aug = [tuple(row) + (bi,) for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if pivots != tuple(range(n)):
        raise SingularMatrix("matrix is singular")
    return tuple(row[n] for row in red)


def inverse(m):
    n, k = shape(m)
    if n != k:
        raise ValueError("inverse of a non-square matrix")
    aug = [tuple(row) + e for row, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots != tuple(range(n)):
        raise SingularMatrix("matrix is singular")
    return tuple(row[n:] for row in red)


def _xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m):
    """Row-style Hermite normal form. Returns ``(h, u)`` with ``u @ m == h``."""
    nrows, ncols = shape(m)
    h = [list(map(int, row)) for row in m]
    u = [list(row) for row in identity(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _xgcd(a, b)
            s, t = a // g, b // g
            # [[x, y], [-t, s]] has determinant 1
            for mat in (h, u):
                ra, rb = mat[r], mat[i]
                mat[r] = [x * p + y * q for p, q in zip(ra, rb)]
                mat[i] = [-t * p + s * q for p, q in zip(ra, rb)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        p = h[r][c]
        for i in range(r):
            f = h[i][c] // p
            if f:
                h[i] = [x - f * y for x, y in zip(h[i], h[r])]
                u[i] = [x - f * y for x, y in zip(u[i], u[r])]
        r += 1
    return as_matrix(h), as_matrix(u)


def smith_normal_form(m):
    """Smith normal form ``d`` of an integer matrix and its invariant factors.

    The invariant factors are the diagonal entries greater than one, so the
    cokernel of ``m`` is the direct sum of ``Z/d_i`` and a free part of rank
    ``nrows - rank(m)``.
    """
    nrows, ncols = shape(m)
    a = [list(map(int, row)) for row in m]
    t = 0
    while t < min(nrows, ncols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
            # move the smallest remaining entry of row/column t onto the diagonal
            cands = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cands)
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        t += 1
    d = as_matrix(a)
    invariants = tuple(d[i][i] for i in range(min(nrows, ncols)) if d[i][i] > 1)
    return d, invariants


def smith_invariants(m):
    return smith_normal_form(m)[1]


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of ``Z^ambient_rank`` stored by its canonical HNF basis.

    ``basis`` holds the nonzero rows of the row-style HNF of any generating
    set, so two instances compare equal exactly when they span the same
    lattice.
    """

    ambient_rank: int
    basis: tuple

    @classmethod
    def span(cls, vectors, ambient_rank=None):
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if not vectors:
            return cls(ambient_rank, ())
        if ambient_rank is None:
            ambient_rank = len(vectors[0])
        h, _ = hermite_normal_form(vectors)
        return cls(ambient_rank, tuple(row for row in h if any(row)))

    @classmethod
    def standard(cls, n):
        return cls(n, identity(n))

    @property
    def rank(self):
        return len(self.basis)

    def _pivots(self):
        return [next(k for k, x in enumerate(row) if x) for row in self.basis]

    def coordinates(self, v):
        """Integer coordinates of ``v`` in ``basis``; raises NotInLattice."""
        v = [Fraction(x) for x in v]
        if len(v) != self.ambient_rank:
            raise ValueError("vector has the wrong length")
        coords = []
        for row, p in zip(self.basis, self._pivots()):
            x = v[p] / row[p]
            if x.denominator != 1:
                raise NotInLattice(f"{tuple(v)} is not in the lattice")
            x = int(x)
            coords.append(x)
            if x:
                v = [a - x * b for a, b in zip(v, row)]
        if any(v):
            raise NotInLattice("vector is not in the span of the lattice")
        return tuple(coords)

    def __contains__(self, v):
        try:
            self.coordinates(v)
        except NotInLattice:
            return False
        return True

    def contains_lattice(self, other):
        return all(v in self for v in other.basis)

    def vector(self, coords):
        """The lattice vector with the given basis coordinates."""
        return vecmat(coords, self.basis)

    def index(self):
        """Index in ``Z^ambient_rank`` for a full-rank lattice."""
        if self.rank != self.ambient_rank:
            raise InfiniteQuotient("lattice is not of full rank")
        out = 1
        for row, p in zip(self.basis, self._pivots()):
            out *= row[p]
        return out

    def invariants(self):
        """Invariant factors of ``Z^ambient_rank / self`` (full rank only)."""
        if self.rank != self.ambient_rank:
            raise InfiniteQuotient("lattice is not of full rank")
        return smith_invariants(self.basis)

    def coset_representatives(self):
        """Canonical representatives of ``Z^n / self`` for a full-rank lattice.

        The representatives are the vectors with ``0 <= x_i < pivot_i``.
        """
        if self.rank != self.ambient_rank:
            raise InfiniteQuotient("lattice is not of full rank")
        return list(product(*(range(row[i]) for i, row in enumerate(self.basis))))

    def reduce(self, v):
        """Canonical representative of ``v`` modulo a full-rank lattice."""
        v = list(v)
        for i, row in enumerate(self.basis):
            q = v[i] // row[i]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def intersect_kernel(self, functional):
        """Sublattice of vectors ``v`` in ``self`` with ``dot(functional, v) == 0``."""
        values = [[dot(functional, b) for b in self.basis]]
        coeffs = kernel_lattice(values)
        return LatticeBasis.span([self.vector(x) for x in coeffs.basis], self.ambient_rank)


def kernel_lattice(m):
    """Saturated integer kernel ``{v in Z^cols : m @ v == 0}`` of a rational matrix."""
    nrows, ncols = shape(m)
    if nrows == 0:
        return LatticeBasis.standard(ncols)
    rows = [clear_denominators(row) for row in m]
    # u @ m^T = h; rows of u against zero rows of h span the kernel, and since
    # u is unimodular that span is saturated.
    h, u = hermite_normal_form(transpose(rows))
    kernel = [u[i] for i, row in enumerate(h) if not any(row)]
    return LatticeBasis.span(kernel, ncols)


def solve_integer(generators, b):
    """Integer ``x`` with ``sum(x_i * generators[i]) == b``; raises NotInLattice."""
    h, u = hermite_normal_form(generators)
    nonzero = [row for row in h if any(row)]
    y = LatticeBasis(len(b), tuple(nonzero)).coordinates(b)
    y = tuple(y) + (0,) * (len(generators) - len(y))
    return vecmat(y, u)


def lattice_quotient(ambient, sub):
    """Invariant factors of ``ambient / sub``.

    Raises NotASublattice if ``sub`` is not contained in ``ambient`` and
    InfiniteQuotient if the ranks differ.
    """
    if sub.rank != ambient.rank:
        raise InfiniteQuotient(f"ranks differ ({ambient.rank} vs {sub.rank})")
    try:
        coords = [ambient.coordinates(v) for v in sub.basis]
    except NotInLattice as exc:
        raise NotASublattice(str(exc)) from None
    if not coords:
        return ()
    return smith_invariants(coords)


def is_primitive(v, lattice):
    """True iff ``v`` is not a proper integer multiple of another lattice vector."""
    coords = lattice.coordinates(v)
    return vector_gcd(coords) == 1


def order_of_invariants(invariants):
    out = 1
    for d in invariants:
        out *= d
    return out
