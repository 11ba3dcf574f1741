"""Toric description of a CY-type pair (W, G) and of its BHK mirror.

``M`` is built directly as the lattice of degree-zero G-invariant Laurent
exponents in ``Z^{n+1}``; its canonical HNF basis fixes coordinates on
``M`` and, dually, on ``N = Hom(M, Z)``.

* ``nu_j`` is the functional ``m -> m_j`` on ``M``; in dual-basis
  coordinates it is the ``j``-th column of the basis matrix.
* ``mu_i`` is the Laurent monomial ``Y_i / (X_0 ... X_n)``, ambient
  coordinates ``row_i(E) - (1, ..., 1)``.

The pairing of ``mu_i`` with ``nu_j`` is then the plain dot product of
coordinate vectors and equals ``e_ij - 1``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm

from . import latticealg as la
from .diagonal_symmetry import (
    dual_group,
    exponential_element,
    format_phase,
    is_cy_type,
    phase,
    phase_add,
    phase_scale,
    element_order,
    quotient_by_j,
)
from .errors import (
    DegenerateSimplex,
    NegativeExponent,
    NonPrimitiveRay,
    NotCYType,
    NotInLattice,
    VerificationFailed,
)
from .invertible_poly import Polynomial, transpose, weight_system

EXHAUSTIVE_CAP = 10**4


@dataclass(frozen=True)
class GradedInvariantLattice:
    weights: object
    group: object
    basis: la.LatticeBasis

    @property
    def rank(self):
        return self.basis.rank

    def matrix(self):
        """Basis vectors as rows, shape ``rank x (n+1)``."""
        return self.basis.basis


def build_invariant_lattice(w, g):
    """Degree-zero, G-invariant exponent vectors: rank ``n`` sublattice of ``Z^{n+1}``."""
    if len(w.c) != g.num_vars:
        raise ValueError("weights and group act on different numbers of variables")
    basis = g.lattice.intersect_kernel(w.c)
    return GradedInvariantLattice(w, g, basis)


@dataclass(frozen=True)
class RayPoint:
    kind: str  # "nu" or "mu"
    index: int
    ambient_coords: tuple
    basis_coords: tuple

    def to_dict(self):
        return {"index": self.index, "ambient": list(self.ambient_coords), "coords": list(self.basis_coords)}


def pair(a, b):
    return la.dot(a.basis_coords, b.basis_coords)


def nu_points(m):
    rows = m.matrix()
    n1 = len(m.weights.c)
    nus = []
    for j in range(n1):
        coords = tuple(row[j] for row in rows)
        if la.vector_gcd(coords) != 1:
            raise NonPrimitiveRay(f"nu_{j} = {coords} is not primitive in N", clause="nu_primitive")
        ambient = tuple(int(i == j) for i in range(n1))
        nus.append(RayPoint("nu", j, ambient, coords))
    total = [sum(c * nu.basis_coords[k] for c, nu in zip(m.weights.c, nus)) for k in range(m.rank)]
    if any(total):
        raise VerificationFailed("sum of c_j nu_j is not zero", clause="nu_relation")
    return nus


def mu_points(e, m):
    n1 = e.size
    mus = []
    for i, row in enumerate(e.rows):
        ambient = tuple(x - 1 for x in row)
        try:
            coords = m.basis.coordinates(ambient)
        except NotInLattice:
            raise NotInLattice(f"mu_{i} is not in M: {_mu_diagnostic(ambient, m)}") from None
        if la.vector_gcd(coords) != 1:
            raise NonPrimitiveRay(f"mu_{i} = {coords} is not primitive in M", clause="mu_primitive")
        mus.append(RayPoint("mu", i, ambient, coords))
    assert len(mus) == n1
    return mus


def _mu_diagnostic(ambient, m):
    if la.dot(ambient, m.weights.c) != 0:
        return "monomial/(X_0...X_n) has nonzero degree, so the Calabi-Yau condition fails"
    return "X_0...X_n is not G-invariant, so G is not contained in SL"


def pairing_matrix(mus, nus):
    return tuple(tuple(pair(mu, nu) for nu in nus) for mu in mus)


@dataclass(frozen=True)
class SimplexFan:
    """Complete fan over the proper faces of the simplex spanned by ``vertices``."""

    lattice_rank: int
    vertices: tuple
    relation: tuple  # positive primitive weights b with sum b_i v_i = 0


def simplex_fan(points):
    """The fan whose rays are ``points`` (n+1 vectors spanning a rank-n lattice)."""
    points = tuple(points)
    n = len(points) - 1
    cols = la.transpose([p.basis_coords for p in points], len(points))
    if n > 0 and la.rank(cols) != n:
        raise DegenerateSimplex("vertices do not span the lattice over Q", clause="simplex")
    kernel = la.kernel_lattice(cols) if n > 0 else la.LatticeBasis.standard(1)
    if kernel.rank != 1:
        raise DegenerateSimplex("vertices admit more than one relation", clause="simplex")
    b = kernel.basis[0]
    if b[0] < 0:
        b = tuple(-x for x in b)
    if any(x <= 0 for x in b):
        raise DegenerateSimplex(f"relation {b} is not positive; the fan is not complete", clause="simplex")
    for p in points:
        if la.vector_gcd(p.basis_coords) != 1:
            raise NonPrimitiveRay(f"vertex {p.kind}_{p.index} is not primitive", clause="simplex")
    return SimplexFan(n, points, tuple(b))


def dual_fan(mus):
    return simplex_fan(mus)


@dataclass
class AmbientReport:
    relation_weights: tuple
    quotient_invariants: tuple
    action_checks: list = field(default_factory=list)


def ambient_structure(f, m):
    """Relation weights of the fan and the finite group ``M / <vertices>``."""
    ambient = la.LatticeBasis.standard(m.rank)
    sub = la.LatticeBasis.span([v.basis_coords for v in f.vertices], m.rank)
    return AmbientReport(f.relation, la.lattice_quotient(ambient, sub))


def hypersurface_section(f, duals):
    """Cox-coordinate polynomial of the section ``sum_j chi^{dual_j}`` on ``f``.

    Monomial ``j`` is ``prod_i Y_i^{<v_i, dual_j> + 1}`` over the fan
    vertices ``v_i``.
    """
    monomials = []
    for d in duals:
        e = tuple(pair(v, d) + 1 for v in f.vertices)
        if any(x < 0 for x in e):
            raise NegativeExponent(f"section {d.kind}_{d.index} has a pole of order > 1", clause="section")
        monomials.append(e)
    return Polynomial(len(f.vertices), tuple(monomials))


@dataclass
class ToricData:
    exponents: object
    group: object
    weights: object
    lattice: GradedInvariantLattice
    nus: list
    mus: list
    forward_fan: SimplexFan
    fan: SimplexFan
    ambient: AmbientReport


def toric_data(e, g):
    verdict = is_cy_type(e, g)
    if not verdict:
        raise NotCYType(verdict.reason)
    w = weight_system(e)
    m = build_invariant_lattice(w, g)
    nus = nu_points(m)
    mus = mu_points(e, m)
    forward = simplex_fan(nus)
    fan = dual_fan(mus)
    return ToricData(e, g, w, m, nus, mus, forward, fan, ambient_structure(fan, m))


@dataclass
class AmbientVerification:
    clauses: dict
    details: dict
    report: AmbientReport

    @property
    def verified(self):
        return all(self.clauses.values())

    def to_dict(self):
        return {
            "relation_weights": list(self.report.relation_weights),
            "quotient_invariants": list(self.report.quotient_invariants),
            "verified": self.verified,
            "clauses": dict(self.clauses),
            "details": self.details,
        }


def _coset_key(t, j):
    return min(phase_add(t, phase_scale(k, j)) for k in range(element_order(j)))


def verify_mirror_ambient(e, g, exhaustive=False, strict=True, data=None):
    """Check that the dual fan realizes ``P(W^T) / (G^T / <j_{W^T}>)``.

    Clauses:
      a. relation weights of the dual fan equal the weights of ``W^T`` and
         their sum is the degree of ``W^T``;
      b. ``M / <mu_i>`` has the invariants of ``G^T / <j_{W^T}>``;
      c. for every basis vector ``m`` of ``M``, an exact solution ``r`` of
         ``sum r_i mu_i = m`` satisfies ``t = r - (sum r_i) p`` where
         ``t = (E^T)^-1 A m`` and ``p`` are the fractional weights of
         ``W^T``; ``t`` lies in ``G^T`` and each ``mu_i`` maps to the class
         of ``j_{W^T}``.

    With ``exhaustive`` every coset of ``M / <mu_i>`` (if at most
    ``EXHAUSTIVE_CAP``) is mapped into ``G^T / <j_{W^T}>`` and the map is
    checked to be injective.
    """
    data = data or toric_data(e, g)
    et = transpose(e)
    wt = weight_system(et)
    p = la.solve_rational(et.rows, [1] * e.size)
    jt = exponential_element(wt)
    gt = dual_group(e, g)
    gt_tilde = quotient_by_j(gt, jt)
    report = data.ambient
    clauses = {}
    details = {}

    dbar = reduce(lcm, (x.denominator for x in p), 1)
    clauses["a_weights"] = (
        report.relation_weights == wt.c
        and sum(report.relation_weights) == wt.d
        and dbar == wt.d
        and tuple(x * dbar for x in p) == wt.c
    )
    clauses["b_quotient"] = report.quotient_invariants == gt_tilde.invariants

    mus = data.mus
    n = data.lattice.rank
    square = [mu.basis_coords for mu in mus[:n]]
    checks = []
    ok_c = True
    for k in range(n):
        m_coords = tuple(int(i == k) for i in range(n))
        m_amb = data.lattice.basis.vector(m_coords)
        r = tuple(la.solve_rational(la.transpose(square, n), m_coords)) + (Fraction(0),) if n else (Fraction(0),)
        t = la.solve_rational(et.rows, m_amb)
        s = sum(r)
        solved = tuple(sum(ri * mu.basis_coords[kk] for ri, mu in zip(r, mus)) for kk in range(n)) == m_coords
        identity_ok = tuple(ri - s * pi for ri, pi in zip(r, p)) == tuple(t)
        in_gt = phase(t) in gt
        checks.append(
            {
                "m": list(m_coords),
                "r": [str(x) for x in r],
                "t": [str(x) for x in t],
                "solved": solved,
                "t_equals_r_minus_sum_r_p": identity_ok,
                "t_in_dual_group": in_gt,
            }
        )
        ok_c = ok_c and solved and identity_ok and in_gt
    trivial = _coset_key(jt, jt)
    for mu in mus:
        t = phase(la.solve_rational(et.rows, mu.ambient_coords))
        ok_c = ok_c and _coset_key(t, jt) == trivial
    clauses["c_action"] = ok_c
    report.action_checks = checks
    details["action_checks"] = checks

    if exhaustive:
        sub = la.LatticeBasis.span([mu.basis_coords for mu in mus], n)
        size = la.order_of_invariants(report.quotient_invariants)
        if size <= EXHAUSTIVE_CAP:
            keys = set()
            for x in sub.coset_representatives():
                t = phase(la.solve_rational(et.rows, data.lattice.basis.vector(x)))
                if t not in gt:
                    keys = None
                    break
                keys.add(_coset_key(t, jt))
            clauses["c_exhaustive"] = keys is not None and len(keys) == size == gt_tilde.order
        else:
            details["exhaustive_skipped"] = f"quotient order {size} exceeds {EXHAUSTIVE_CAP}"

    result = AmbientVerification(clauses, details, report)
    if strict and not result.verified:
        failed = [k for k, v in clauses.items() if not v]
        raise VerificationFailed(f"ambient verification failed: {failed}", clause=failed[0])
    return result


def format_generators(group):
    return [format_phase(g) for g in group.generators]
