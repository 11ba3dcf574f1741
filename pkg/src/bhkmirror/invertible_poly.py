"""Invertible quasi-homogeneous polynomials.

A polynomial is a list of monomials with unit coefficients, each monomial an
exponent vector.  Text input follows the grammar::

    poly   ::= term ('+' term)*
    term   ::= factor ('*' factor)*
    factor ::= var ('^' posint)?
    var    ::= ('x' | 'X') nonnegint

Whitespace is ignored.  Variable indices may start anywhere (``x1..x5`` is
fine); they are shifted to ``0..n`` and the shift is remembered so printing
reproduces the input indices.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm

from . import latticealg as la
from .errors import (
    CoefficientUnsupported,
    DuplicateMonomial,
    NonpositiveWeight,
    NotInvertibleNondegenerate,
    NotSquare,
    PolynomialSyntaxError,
    SingularExponentMatrix,
)


@dataclass(frozen=True)
class Polynomial:
    num_vars: int
    monomials: tuple
    index_shift: int = 0

    def canonical_monomials(self):
        return tuple(sorted(self.monomials))

    def __str__(self):
        return format_polynomial(self)


_TOKEN = re.compile(r"\s*(?:(?P<var>[xX])(?P<idx>\d+)|(?P<num>\d+)|(?P<op>[+*^])|(?P<bad>\S))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group("var"):
            tokens.append(("var", int(m.group("idx")), m.start("var")))
        elif m.group("num"):
            tokens.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("op"):
            tokens.append((m.group("op"), None, m.start("op")))
        else:
            ch = m.group("bad")
            if ch == "-":
                raise CoefficientUnsupported(f"negative coefficient at position {m.start('bad')}")
            raise PolynomialSyntaxError(f"unexpected character {ch!r} at position {m.start('bad')}")
    return tokens


def parse_polynomial(text, num_vars=None):
    """Parse ``text`` into a Polynomial.

    Monomials keep the order in which they are written.  ``num_vars`` may
    declare more variables than the highest index used.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial")
    terms = []
    i = 0

    def expect_factor(i):
        if i >= len(tokens):
            raise PolynomialSyntaxError("polynomial ends in an operator")
        kind, value, where = tokens[i]
        if kind == "num":
            if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                raise PolynomialSyntaxError(f"exponent on a constant at position {where}")
            if value != 1:
                raise CoefficientUnsupported(f"coefficient {value} at position {where}; only 1 is supported")
            return None, i + 1
        if kind != "var":
            raise PolynomialSyntaxError(f"expected a variable at position {where}")
        exp = 1
        i += 1
        if i < len(tokens) and tokens[i][0] == "^":
            if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or tokens[i + 1][1] < 1:
                raise PolynomialSyntaxError(f"expected a positive exponent at position {tokens[i][2]}")
            exp = tokens[i + 1][1]
            i += 2
        return (value, exp), i

    while True:
        factors = []
        f, i = expect_factor(i)
        if f:
            factors.append(f)
        while i < len(tokens) and tokens[i][0] == "*":
            f, i = expect_factor(i + 1)
            if f:
                factors.append(f)
        terms.append(factors)
        if i == len(tokens):
            break
        if tokens[i][0] != "+":
            raise PolynomialSyntaxError(f"expected '+' or '*' at position {tokens[i][2]}")
        i += 1
        if i == len(tokens):
            raise PolynomialSyntaxError("polynomial ends in '+'")

    indices = [v for factors in terms for v, _ in factors]
    if not indices:
        raise PolynomialSyntaxError("polynomial has no variables")
    shift = min(indices)
    n = max(indices) - shift + 1
    if num_vars is not None:
        if num_vars < n:
            raise PolynomialSyntaxError(f"declared {num_vars} variables but {n} are used")
        n = num_vars
    monomials = []
    for factors in terms:
        if not factors:
            raise PolynomialSyntaxError("constant monomial")
        e = [0] * n
        for v, exp in factors:
            e[v - shift] += exp
        e = tuple(e)
        if e in monomials:
            raise DuplicateMonomial(f"monomial {format_monomial(e, shift)} appears twice")
        monomials.append(e)
    return Polynomial(n, tuple(monomials), shift)


def polynomial_from_json(text_or_obj):
    """Read the JSON form ``{"exponents": [[...], ...]}``."""
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    try:
        rows = [tuple(int(x) for x in row) for row in obj["exponents"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise PolynomialSyntaxError(f"bad JSON polynomial: {exc}") from None
    return polynomial_from_exponents(rows)


def polynomial_from_exponents(rows, index_shift=0):
    rows = [tuple(int(x) for x in row) for row in rows]
    if not rows or len({len(r) for r in rows}) != 1:
        raise PolynomialSyntaxError("exponent rows must be nonempty and of equal length")
    if any(x < 0 for r in rows for x in r):
        raise PolynomialSyntaxError("negative exponent")
    if any(not any(r) for r in rows):
        raise PolynomialSyntaxError("constant monomial")
    if len(set(rows)) != len(rows):
        raise DuplicateMonomial("repeated monomial")
    return Polynomial(len(rows[0]), tuple(rows), index_shift)


def format_monomial(e, shift=0, var="x"):
    parts = []
    for j, a in enumerate(e):
        if a == 1:
            parts.append(f"{var}{j + shift}")
        elif a > 1:
            parts.append(f"{var}{j + shift}^{a}")
    return "*".join(parts)


def format_polynomial(p, var="x", sep="+"):
    return sep.join(format_monomial(e, p.index_shift, var) for e in p.monomials)


@dataclass(frozen=True)
class ExponentMatrix:
    """Square nonsingular exponent matrix; row ``i`` is the ``i``-th monomial."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise NotSquare(f"need as many monomials as variables, got a {n}x{len(rows[0]) if rows else 0} matrix")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("exponents must be nonnegative")
        for j in range(n):
            if not any(r[j] for r in rows):
                raise SingularExponentMatrix(f"variable {j} does not occur")
        if self.det == 0:
            raise SingularExponentMatrix("exponent matrix is singular")

    @property
    def size(self):
        return len(self.rows)

    @cached_property
    def det(self):
        return la.determinant(self.rows)

    @cached_property
    def inverse(self):
        return la.inverse(self.rows)

    def to_polynomial(self, index_shift=0):
        return Polynomial(self.size, self.rows, index_shift)

    def tolist(self):
        return [list(r) for r in self.rows]


def exponent_matrix(p):
    if len(p.monomials) != p.num_vars:
        raise NotSquare(f"{len(p.monomials)} monomials in {p.num_vars} variables; an invertible polynomial needs equal counts")
    return ExponentMatrix(p.monomials)


def transpose(e):
    return ExponentMatrix(la.transpose(e.rows))


@dataclass(frozen=True)
class WeightSystem:
    """Integer weights ``c`` and degree ``d``; ``q_i = c_i / d``."""

    c: tuple
    d: int

    @property
    def q(self):
        return tuple(Fraction(ci, self.d) for ci in self.c)

    def to_dict(self):
        return {"c": list(self.c), "d": self.d, "q": [str(x) for x in self.q]}


def weight_system(e):
    """Weights of the polynomial with exponent matrix ``e``.

    Solves ``E q = 1`` exactly and scales by the smallest ``d`` making every
    ``d q_i`` an integer; the resulting weights are coprime.
    """
    q = la.solve_rational(e.rows, [1] * e.size)
    bad = [i for i, x in enumerate(q) if x <= 0]
    if bad:
        raise NonpositiveWeight(f"nonpositive fractional weight for variable(s) {bad}: {[str(q[i]) for i in bad]}")
    d = reduce(lcm, (x.denominator for x in q), 1)
    c = [int(x * d) for x in q]
    g = reduce(gcd, c)
    return WeightSystem(tuple(x // g for x in c), d // g)


def is_calabi_yau(w):
    return sum(w.c) == w.d


@dataclass(frozen=True)
class Atom:
    """One Fermat, chain, or loop summand.

    ``variables`` lists the variable indices in pointer order: monomial ``k``
    of the atom is ``x_{v_k}^{a_k} * x_{v_{k+1}}`` (for a chain the last
    monomial is ``x_{v_last}^{a_last}``; for a loop the pointer wraps).
    ``monomials`` are the matching row indices of the exponent matrix.
    """

    kind: str
    variables: tuple
    exponents: tuple
    monomials: tuple

    def rows(self, n):
        out = []
        k = len(self.variables)
        for pos, (v, a) in enumerate(zip(self.variables, self.exponents)):
            e = [0] * n
            e[v] = a
            if self.kind == "chain" and pos + 1 < k:
                e[self.variables[pos + 1]] += 1
            elif self.kind == "loop":
                e[self.variables[(pos + 1) % k]] += 1
            out.append(tuple(e))
        return out

    def to_dict(self):
        return {"kind": self.kind, "variables": list(self.variables), "exponents": list(self.exponents)}


@dataclass(frozen=True)
class AtomDecomposition:
    atoms: tuple = field(default_factory=tuple)

    def reassemble(self, n):
        return [r for atom in self.atoms for r in atom.rows(n)]


def _head_and_pointer(row, i):
    support = [j for j, x in enumerate(row) if x]
    if len(support) == 1:
        (h,) = support
        if row[h] < 2:
            raise NotInvertibleNondegenerate(f"monomial {i} is linear")
        return h, None
    if len(support) == 2:
        a, b = support
        if row[a] >= 2 and row[b] == 1:
            return a, b
        if row[b] >= 2 and row[a] == 1:
            return b, a
    raise NotInvertibleNondegenerate(
        f"monomial {i} ({format_monomial(row)}) is not of the form x^a or x^a*y with a >= 2"
    )


def atom_decomposition(e):
    """Split ``e`` into Fermat, chain and loop atoms.

    Every monomial must be ``x_i^a`` or ``x_i^a x_j`` with ``a >= 2``; the
    map ``i -> j`` must be injective and every variable must head exactly one
    monomial.  Its orbits are then chains (ending in a pure power) or loops.
    """
    n = e.size
    head_of = {}
    pointer = {}
    for i, row in enumerate(e.rows):
        h, p = _head_and_pointer(row, i)
        if h in head_of:
            raise NotInvertibleNondegenerate(f"variable {h} heads two monomials")
        head_of[h] = i
        pointer[h] = p
    targets = [p for p in pointer.values() if p is not None]
    if len(set(targets)) != len(targets):
        raise NotInvertibleNondegenerate("two monomials point at the same variable")

    pointed = set(targets)
    seen = set()
    atoms = []
    # chains start at variables nobody points to
    for start in range(n):
        if start in pointed or start in seen:
            continue
        path = [start]
        while pointer[path[-1]] is not None:
            path.append(pointer[path[-1]])
        seen.update(path)
        kind = "fermat" if len(path) == 1 else "chain"
        atoms.append(_make_atom(kind, path, e, head_of))
    for start in range(n):
        if start in seen:
            continue
        cycle = [start]
        while pointer[cycle[-1]] != start:
            cycle.append(pointer[cycle[-1]])
        seen.update(cycle)
        atoms.append(_make_atom("loop", cycle, e, head_of))
    atoms.sort(key=lambda a: min(a.variables))
    dec = AtomDecomposition(tuple(atoms))
    if sorted(dec.reassemble(n)) != sorted(e.rows):
        raise NotInvertibleNondegenerate("atoms do not reassemble to the input")
    return dec


def _make_atom(kind, path, e, head_of):
    return Atom(
        kind,
        tuple(path),
        tuple(e.rows[head_of[v]][v] for v in path),
        tuple(head_of[v] for v in path),
    )
