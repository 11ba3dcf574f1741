"""Finite groups of diagonal symmetries.

An element acting by ``X_i -> exp(2 pi i g_i) X_i`` is stored as its phase
vector ``g``: a tuple of Fractions reduced into ``[0, 1)``.

A group ``G`` is described by its membership lattice
``L = {s in Z^{n+1} : s . g in Z for all g in G}``, the exponent vectors of
the G-invariant Laurent monomials.  ``L`` determines ``G`` (``g`` lies in
``G`` iff ``s . g`` is integral for every ``s`` in ``L``) and
``Z^{n+1} / L`` is isomorphic to ``G``, so orders, invariant factors,
containment and equality are all lattice computations.  Enumerating
elements is only done by the brute-force oracles below.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from . import latticealg as la
from .errors import ElementNotInGroup, GroupTooLarge, NotInAmbient
from .invertible_poly import is_calabi_yau, weight_system

ENUMERATION_CAP = 10**5


def phase(v):
    """Reduce a rational vector mod 1 into ``[0, 1)``."""
    return tuple(Fraction(x) % 1 for x in v)


def phase_add(g, h):
    return tuple((a + b) % 1 for a, b in zip(g, h))


def phase_scale(k, g):
    return tuple((k * a) % 1 for a in g)


def element_order(g):
    return la.common_denominator(g)


def format_phase(g):
    return ",".join(str(x) for x in g)


def parse_phase(text, n=None):
    try:
        g = phase(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad phase vector {text!r}") from None
    if n is not None and len(g) != n:
        raise ValueError(f"phase vector {text!r} has {len(g)} entries, expected {n}")
    return g


def membership_lattice(generators, n):
    generators = [phase(g) for g in generators]
    if not generators:
        return la.LatticeBasis.standard(n)
    den = la.common_denominator(x for g in generators for x in g)
    k = len(generators)
    # s . (den*g_i) - den*t_i = 0 for integers t_i; project the kernel onto s
    rows = []
    for i, g in enumerate(generators):
        rows.append(tuple(int(x * den) for x in g) + tuple(-den if j == i else 0 for j in range(k)))
    kernel = la.kernel_lattice(rows)
    return la.LatticeBasis.span([v[:n] for v in kernel.basis], n)


class DiagonalGroup:
    """Finite diagonal group given by generating phase vectors."""

    def __init__(self, num_vars, generators=(), lattice=None):
        self.num_vars = num_vars
        self.generators = tuple(phase(g) for g in generators)
        if any(len(g) != num_vars for g in self.generators):
            raise ValueError("generator length does not match the number of variables")
        self.lattice = lattice if lattice is not None else membership_lattice(self.generators, num_vars)

    @classmethod
    def from_lattice(cls, lattice):
        """The group whose membership lattice is ``lattice`` (full rank)."""
        inv = la.inverse(lattice.basis)
        gens = [phase(col) for col in la.transpose(inv)]
        gens = [g for g in gens if any(g)]
        return cls(lattice.ambient_rank, gens, lattice)

    @cached_property
    def order(self):
        return self.lattice.index()

    @cached_property
    def invariants(self):
        return self.lattice.invariants()

    def generator_invariants(self):
        """Invariant factors computed from the generators directly.

        The scaled lattice ``den * (Z^n + sum Z g_i)`` contains
        ``den * Z^n`` with quotient isomorphic to the group.
        """
        n = self.num_vars
        den = la.common_denominator(x for g in self.generators for x in g)
        gens = [tuple(int(x * den) for x in g) for g in self.generators]
        big = la.LatticeBasis.span(gens + [tuple(den * x for x in e) for e in la.identity(n)], n)
        small = la.LatticeBasis.span([tuple(den * x for x in e) for e in la.identity(n)], n)
        return la.lattice_quotient(big, small)

    def __contains__(self, g):
        g = phase(g)
        return all(la.dot(s, g).denominator == 1 for s in self.lattice.basis)

    def __eq__(self, other):
        return isinstance(other, DiagonalGroup) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __le__(self, other):
        # smaller groups have more invariants
        return self.lattice.contains_lattice(other.lattice)

    def __repr__(self):
        gens = "; ".join(format_phase(g) for g in self.generators)
        return f"DiagonalGroup(order={self.order}, generators=[{gens}])"

    def join(self, *elements):
        return DiagonalGroup(self.num_vars, self.generators + tuple(phase(g) for g in elements))

    def elements(self, cap=ENUMERATION_CAP):
        """All elements by closure of the generators (oracle use only)."""
        zero = (Fraction(0),) * self.num_vars
        seen = {zero}
        queue = deque([zero])
        while queue:
            g = queue.popleft()
            for h in self.generators:
                x = phase_add(g, h)
                if x not in seen:
                    seen.add(x)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"group has more than {cap} elements")
                    queue.append(x)
        return sorted(seen)


def aut_group(e):
    """Aut(W): generated by the columns of ``E^-1`` taken mod 1."""
    cols = la.transpose(e.inverse)
    # the invariant Laurent monomials are exactly the integer row span of E
    return DiagonalGroup(e.size, [phase(c) for c in cols], la.LatticeBasis.span(e.rows))


def canonical_generators(e):
    """The generators rho_j of Aut(W), in order (unreduced columns of E^-1 mod 1)."""
    return [phase(c) for c in la.transpose(e.inverse)]


def exponential_element(w):
    return phase(Fraction(c, w.d) for c in w.c)


def subgroup(gens, ambient):
    gens = [phase(g) for g in gens]
    for g in gens:
        if g not in ambient:
            raise NotInAmbient(f"({format_phase(g)}) is not in the ambient group")
    return DiagonalGroup(ambient.num_vars, gens)


def is_special_linear(g):
    return all(sum(h).denominator == 1 for h in g.generators)


def sl_subgroup(group):
    """``group`` intersected with SL: add the all-ones vector to the lattice."""
    n = group.num_vars
    lat = la.LatticeBasis.span(list(group.lattice.basis) + [(1,) * n], n)
    return DiagonalGroup.from_lattice(lat)


class Verdict(NamedTuple):
    ok: bool
    reason: str = None

    def __bool__(self):
        return self.ok


def is_cy_type(e, g):
    """(W, G) is of Calabi-Yau type: sum c_i = d and <j_W> <= G <= SL."""
    w = weight_system(e)
    if not is_calabi_yau(w):
        return Verdict(False, f"Calabi–Yau condition fails: sum of weights {sum(w.c)} != degree {w.d}")
    if exponential_element(w) not in g:
        return Verdict(False, "group does not contain the exponential element j_W")
    if not is_special_linear(g):
        return Verdict(False, "group is not contained in SL (some phase sum is not an integer)")
    if not g <= aut_group(e):
        return Verdict(False, "group is not a subgroup of Aut(W)")
    return Verdict(True)


def dual_group(e, g):
    """The BHK dual group G^T inside Aut(W^T).

    For each ``s`` in an HNF basis of the membership lattice of ``G`` (the
    exponents of G-invariant Laurent monomials) take ``s E^-1`` mod 1.
    """
    gens = [phase(la.vecmat(s, e.inverse)) for s in g.lattice.basis]
    gens = [h for h in gens if any(h)]
    return DiagonalGroup(e.size, gens)


@dataclass(frozen=True)
class QuotientGroup:
    group: DiagonalGroup
    j: tuple
    invariants: tuple

    @property
    def order(self):
        return la.order_of_invariants(self.invariants)

    def coset_key(self, g):
        """Smallest phase vector in the coset ``g <j>``."""
        g = phase(g)
        k = element_order(self.j)
        return min(phase_add(g, phase_scale(i, self.j)) for i in range(k))

    @cached_property
    def representatives(self):
        """One canonical element per coset (enumerates the group)."""
        return sorted({self.coset_key(g) for g in self.group.elements()})


def quotient_by_j(g, j):
    j = phase(j)
    if j not in g:
        raise ElementNotInGroup(f"({format_phase(j)}) is not in the group")
    lj = membership_lattice([j], g.num_vars)
    return QuotientGroup(g, j, la.lattice_quotient(lj, g.lattice))


def parse_group(text, n, j=None):
    """Parse ``"a,b,...;c,d,..."``; the keyword ``j`` stands for ``j``."""
    gens = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.lower() == "j":
            if j is None:
                raise ValueError("keyword 'j' needs a weight system")
            gens.append(phase(j))
        else:
            gens.append(parse_phase(part, n))
    return gens
