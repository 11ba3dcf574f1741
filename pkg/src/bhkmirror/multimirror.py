"""Full mirror reports, multiple-mirror comparison and enumeration.

Two CY-type pairs ``(W, G)`` and ``(W', G)`` with the same weights share
the lattice ``M`` and the points ``nu_j``; only the ``mu_i`` differ.  Both
mirrors therefore contain the same affine hypersurface
``{sum_j t^{nu_j} = 0}`` of the torus ``T_M``.  ``common_chart`` produces
that Laurent polynomial together with, for each side, the monomial map from
Cox coordinates ``Y`` to torus coordinates ``t``; ``rational_point_probe``
checks the identification by exact evaluation.
"""

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd, lcm
from functools import reduce

from . import latticealg as la
from .diagonal_symmetry import (
    DiagonalGroup,
    aut_group,
    dual_group,
    exponential_element,
    format_phase,
    is_cy_type,
    is_special_linear,
    parse_phase,
    quotient_by_j,
    sl_subgroup,
    Verdict,
)
from .errors import InputError, ProbeFailure, SetupMismatch
from .invertible_poly import (
    ExponentMatrix,
    WeightSystem,
    atom_decomposition,
    format_monomial,
    format_polynomial,
    is_calabi_yau,
    transpose,
    weight_system,
)
from .errors import NotInvertibleNondegenerate
from .toric_mirror import (
    hypersurface_section,
    pairing_matrix,
    toric_data,
    verify_mirror_ambient,
)


@dataclass
class MirrorReport:
    data: dict
    elapsed: float = 0.0

    @property
    def verified(self):
        amb = self.data.get("ambient")
        return amb is None or amb["verified"]

    def to_dict(self, timing=False):
        out = dict(self.data)
        if timing:
            out["timing_seconds"] = self.elapsed
        return out

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), indent=2)


def mirror_pipeline(e, g, polynomial=None, exhaustive=False):
    """Run every construction on ``(W, G)`` and collect the results.

    The toric and ambient sections are filled only for CY-type input.
    """
    start = time.perf_counter()
    w = weight_system(e)
    aut = aut_group(e)
    j = exponential_element(w)
    et = transpose(e)
    wt = weight_system(et)
    jt = exponential_element(wt)
    gt = dual_group(e, g)
    verdict = is_cy_type(e, g)
    try:
        atoms = [a.to_dict() for a in atom_decomposition(e).atoms]
    except NotInvertibleNondegenerate as exc:
        atoms = {"error": str(exc)}

    data = {
        "input": {
            "polynomial": format_polynomial(polynomial) if polynomial else format_polynomial(e.to_polynomial()),
            "index_shift": polynomial.index_shift if polynomial else 0,
            "group": [format_phase(h) for h in g.generators],
            "canonical_monomials": [list(r) for r in sorted(e.rows)],
        },
        "exponent_matrix": e.tolist(),
        "weights": w.to_dict(),
        "calabi_yau": {
            "condition": is_calabi_yau(w),
            "cy_type": verdict.ok,
            "reason": verdict.reason,
        },
        "atoms": atoms,
        "aut": {"order": aut.order, "invariants": list(aut.invariants)},
        "group": {
            "order": g.order,
            "invariants": list(g.invariants),
            "is_sl": is_special_linear(g),
            "contains_j": j in g,
        },
        "transpose": {
            "exponent_matrix": et.tolist(),
            "weights": wt.to_dict(),
            "polynomial": format_polynomial(et.to_polynomial(), var="Y", sep=" + "),
        },
        "dual_group": {
            "generators": [format_phase(h) for h in gt.generators],
            "order": gt.order,
            "invariants": list(gt.invariants),
            "contains_j_transpose": jt in gt,
        },
        "quotients": {
            "g_tilde": list(quotient_by_j(g, j).invariants) if j in g else None,
            "gt_tilde": list(quotient_by_j(gt, jt).invariants) if jt in gt else None,
        },
        "toric": None,
        "ambient": None,
    }
    if verdict.ok:
        td = toric_data(e, g)
        pairing = pairing_matrix(td.mus, td.nus)
        data["toric"] = {
            "m_basis": [list(b) for b in td.lattice.basis.basis],
            "nu": [list(nu.basis_coords) for nu in td.nus],
            "mu": [list(mu.basis_coords) for mu in td.mus],
            "pairing_ok": all(
                pairing[i][k] == e.rows[i][k] - 1 for i in range(e.size) for k in range(e.size)
            ),
            "forward_relation": list(td.forward_fan.relation),
            "section": format_polynomial(hypersurface_section(td.fan, td.nus), var="Y", sep=" + "),
        }
        ver = verify_mirror_ambient(e, g, exhaustive=exhaustive, strict=False, data=td)
        data["ambient"] = ver.to_dict()
    return MirrorReport(data, time.perf_counter() - start)


def shared_setup_check(e, e2, g):
    """Shared weights, shared lattice ``M`` and CY type on both sides of ``(W, G)``, ``(W', G)``."""
    w1, w2 = weight_system(e), weight_system(e2)
    if w1.c != w2.c:
        return Verdict(False, f"weights differ: {w1.c} vs {w2.c}")
    for label, ex in (("first", e), ("second", e2)):
        if not g <= aut_group(ex):
            return Verdict(False, f"group is not contained in Aut of the {label} polynomial")
        v = is_cy_type(ex, g)
        if not v:
            return Verdict(False, f"{label} pair is not of CY type: {v.reason}")
    d1, d2 = toric_data(e, g), toric_data(e2, g)
    if d1.lattice.basis != d2.lattice.basis:
        return Verdict(False, "invariant lattices differ")
    return Verdict(True)


@dataclass
class DehomMap:
    """Monomial map ``t_k = prod_i Y_i^{mu[i][k]}`` and the Cox section it should pull back to."""

    mu: tuple
    section: tuple  # exponent vectors of W^T in Y

    def apply(self, y):
        n = len(self.mu[0]) if self.mu else 0
        return tuple(_monomial_value(y, [row[k] for row in self.mu]) for k in range(n))

    def describe(self):
        n = len(self.mu[0]) if self.mu else 0
        out = []
        for k in range(n):
            col = [row[k] for row in self.mu]
            out.append(f"t{k + 1} = " + (_laurent_monomial(col, "Y", 0) or "1"))
        return out

    def to_dict(self):
        return {
            "mu": [list(r) for r in self.mu],
            "section": format_polynomial_rows(self.section),
            "maps": self.describe(),
        }


def format_polynomial_rows(rows, var="Y"):
    return " + ".join(format_monomial(r, 0, var) for r in rows)


def _laurent_monomial(exps, var, shift=1):
    parts = []
    for k, a in enumerate(exps):
        if a == 1:
            parts.append(f"{var}{k + shift}")
        elif a:
            parts.append(f"{var}{k + shift}^{a}")
    return "*".join(parts)


def _monomial_value(point, exps):
    out = Fraction(1)
    for x, a in zip(point, exps):
        if a:
            out *= Fraction(x) ** a
    return out


@dataclass
class BirationalAtlas:
    m_basis: tuple
    shared_chart: tuple  # exponent vectors nu_j in Z^n
    dehom_maps: tuple  # one DehomMap per side
    sides_chart: tuple = ()  # each side's own nu_j, for the term-identity check
    probe: dict = None

    def chart_text(self):
        return " + ".join(_laurent_monomial(v, "t") or "1" for v in self.shared_chart)

    def evaluate_chart(self, t):
        return sum(_monomial_value(t, v) for v in self.shared_chart)

    def to_dict(self):
        out = {
            "m_basis": [list(b) for b in self.m_basis],
            "shared_chart": {"exponents": [list(v) for v in self.shared_chart], "text": self.chart_text()},
            "charts_identical": len(set(self.sides_chart)) == 1,
            "dehom_maps": [d.to_dict() for d in self.dehom_maps],
        }
        if self.probe is not None:
            out["probe"] = self.probe
        return out


def common_chart(e, e2, g):
    """Shared torus chart of the mirrors of ``(W, G)`` and ``(W', G)``."""
    verdict = shared_setup_check(e, e2, g)
    if not verdict:
        raise SetupMismatch(verdict.reason)
    sides = [toric_data(e, g), toric_data(e2, g)]
    charts = tuple(tuple(nu.basis_coords for nu in td.nus) for td in sides)
    if charts[0] != charts[1]:
        raise SetupMismatch("the two sides produce different Laurent charts")
    dehoms = []
    for td in sides:
        mu = tuple(m.basis_coords for m in td.mus)
        section = hypersurface_section(td.fan, td.nus).monomials
        # pull back each chart term and rehomogenize by prod Y_i
        pulled = tuple(
            tuple(la.dot(mu_i, nu) + 1 for mu_i in mu) for nu in charts[0]
        )
        if pulled != section:
            raise SetupMismatch("pulled-back chart does not match the Cox section")
        if section != la.transpose(td.exponents.rows):
            raise SetupMismatch("Cox section is not the transpose polynomial")
        dehoms.append(DehomMap(mu, section))
    return BirationalAtlas(sides[0].lattice.basis.basis, charts[0], tuple(dehoms), charts)


def _random_unit(rng, bound=97):
    num = rng.randint(1, bound) * rng.choice((1, -1))
    return Fraction(num, rng.randint(1, bound))


def _torus_lift(dehom, exponent):
    """Integer matrix ``R`` with ``mu^T R = exponent * I``.

    Then ``Y_i = prod_l u_l^{R[i][l]}`` maps to ``t = u^exponent``.
    """
    mu = dehom.mu
    n = len(mu[0]) if mu else 0
    relation = la.kernel_lattice(la.transpose(mu, len(mu))).basis[0] if n else (1,)
    cols = []
    for k in range(n):
        target = tuple(exponent if i == k else 0 for i in range(n))
        cols.append(_shortest_shift(la.solve_integer(list(mu), target), relation))
    return la.transpose(cols, len(mu))


def _shortest_shift(r, b):
    """``r - lam * b`` with the smallest L1 norm over integer ``lam``."""
    cands = {0}
    for x, y in zip(r, b):
        if y:
            cands.update((x // y, x // y + 1))
    return min(
        (tuple(x - lam * y for x, y in zip(r, b)) for lam in sorted(cands)),
        key=lambda v: (sum(map(abs, v)), v),
    )


def lift_exponent(dehom):
    """Exponent of ``Z^n / <mu_i>``: the smallest D with every ``D e_k`` in the span."""
    n = len(dehom.mu[0]) if dehom.mu else 0
    if n == 0:
        return 1
    inv = la.lattice_quotient(la.LatticeBasis.standard(n), la.LatticeBasis.span(dehom.mu, n))
    return reduce(lcm, inv, 1)


def rational_point_probe(atlas, samples, seed=0):
    """Exact evaluation of both mirrors at random torus points.

    Torus points are ``t = u^D`` with ``u`` random in ``(Q^*)^n`` (numerators
    and denominators at most 97) and ``D`` the lcm of the exponents of the
    finite groups ``M / <mu_i>`` of both sides, so every side has a rational
    Cox point ``Y`` over ``t``.  For each side the checks are
    ``dehom(Y) == t`` and ``W^T(Y) == (prod Y_i) * chart(t)``.
    """
    rng = random.Random(seed)
    exponent = reduce(lcm, (lift_exponent(d) for d in atlas.dehom_maps), 1)
    lifts = [_torus_lift(d, exponent) for d in atlas.dehom_maps]
    n = len(atlas.shared_chart[0]) if atlas.shared_chart else 0
    agreements = zeros = 0
    for _ in range(samples):
        u = tuple(_random_unit(rng) for _ in range(n))
        t = tuple(x**exponent for x in u)
        f = atlas.evaluate_chart(t)
        values = []
        for side, (dehom, lift) in enumerate(zip(atlas.dehom_maps, lifts)):
            y = tuple(_monomial_value(u, row) for row in lift)
            if dehom.apply(y) != t:
                raise ProbeFailure(f"side {side}: Cox point does not map to the torus point", point=u)
            section = sum(_monomial_value(y, r) for r in dehom.section)
            factor = _monomial_value(y, (1,) * len(y))
            if section != factor * f:
                raise ProbeFailure(
                    f"side {side}: section {section} != {factor} * chart value {f}", point=u
                )
            values.append(section == 0)
        if len(set(values)) != 1:
            raise ProbeFailure("sides disagree on vanishing", point=u)
        agreements += 1
        zeros += values[0]
    return {
        "samples": samples,
        "seed": seed,
        "power": exponent,
        "agreements": agreements,
        "zeros": zeros,
        "passed": agreements == samples,
    }


def canonical_exponent_matrix(rows, c):
    """Smallest relabeling of ``rows`` under weight-preserving variable permutations.

    ``rows`` must be in head order (row ``i`` is the monomial headed by
    variable ``i``); the relabeling permutes rows and columns together.
    """
    n = len(rows)
    blocks = {}
    for i, ci in enumerate(c):
        blocks.setdefault(ci, []).append(i)
    best = None
    for choice in product(*(permutations(v) for v in blocks.values())):
        sigma = [0] * n
        for orig, perm in zip(blocks.values(), choice):
            for a, b in zip(orig, perm):
                sigma[a] = b
        new = [[0] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                new[sigma[i]][sigma[k]] = rows[i][k]
        cand = tuple(tuple(r) for r in new)
        if best is None or cand < best:
            best = cand
    return best


def enumerate_invertible(w):
    """All invertible nondegenerate exponent matrices with weights ``w``.

    Up to relabeling variables of equal weight.  Each variable ``i`` heads
    one monomial ``x_i^a`` or ``x_i^a x_j`` (``a >= 2``); distinct variables
    point at distinct targets.  Rows are returned in head order and the
    list is sorted.
    """
    c, d = tuple(w.c), w.d
    if any(x <= 0 for x in c) or reduce(gcd, c) != 1:
        raise InputError("weights must be positive and coprime")
    n = len(c)
    options = []
    for i in range(n):
        opts = []
        if d % c[i] == 0 and d // c[i] >= 2:
            opts.append((None, d // c[i]))
        for j in range(n):
            rest = d - c[j]
            if j != i and rest > 0 and rest % c[i] == 0 and rest // c[i] >= 2:
                opts.append((j, rest // c[i]))
        options.append(opts)
    found = set()
    for choice in product(*options):
        targets = [j for j, _ in choice if j is not None]
        if len(set(targets)) != len(targets):
            continue
        rows = [[0] * n for _ in range(n)]
        for i, (j, a) in enumerate(choice):
            rows[i][i] = a
            if j is not None:
                rows[i][j] = 1
        found.add(canonical_exponent_matrix(rows, c))
    return [ExponentMatrix(r) for r in sorted(found)]


def cy_weight_systems(max_vars, max_degree):
    """Sorted (non-increasing) coprime weights with ``sum c = d <= max_degree``."""
    out = []
    for n in range(1, max_vars + 1):
        for d in range(1, max_degree + 1):
            for c in _partitions(d, n, d):
                if reduce(gcd, c) == 1:
                    out.append(WeightSystem(c, d))
    return out


def _partitions(total, parts, largest):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total - parts + 1, largest), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def cy_type_groups(e, max_order=None):
    """All G with ``<j_W> <= G <= Aut(W) & SL`` and ``|G| <= max_order``.

    Breadth-first over joins ``G + <h>``.  Elements are integer vectors
    scaled by the exponent ``D`` of the ambient group, so membership in a
    group with lattice basis ``B`` is ``B h = 0 mod D``.  Sorted by
    (order, lattice) for determinism.
    """
    w = weight_system(e)
    j = exponential_element(w)
    n = e.size
    top = sl_subgroup(aut_group(e))
    if j not in top:
        return []
    start = DiagonalGroup(n, [j])
    limit = max_order or top.order
    if start.order > limit:
        return []
    big = reduce(lcm, top.invariants, 1)
    elements = _cyclic_representatives([tuple(int(x * big) for x in h) for h in top.elements()], big)

    def member(basis, h):
        return all(la.dot(s, h) % big == 0 for s in basis)

    seen = {start.lattice: start}
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            basis = g.lattice.basis
            made = []  # (order, basis) of joins already built from g
            for h in elements:
                if member(basis, h):
                    continue
                k = 2
                while not member(basis, tuple(k * x for x in h)):
                    k += 1
                order = g.order * k
                if order > limit:
                    continue
                if any(o == order and member(b, h) for o, b in made):
                    continue
                lat = _join_lattice(g.lattice, h, big)
                made.append((order, lat.basis))
                if lat not in seen:
                    bigger = DiagonalGroup(n, g.generators + (tuple(Fraction(x, big) for x in h),), lat)
                    seen[lat] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(seen.values(), key=lambda g: (g.order, g.lattice.basis))


def _cyclic_representatives(elements, big):
    """One generator per cyclic subgroup, skipping the identity."""
    keys = set()
    out = []
    for h in elements:
        if not any(h):
            continue
        order = big // gcd(big, *h)
        key = min(tuple(k * x % big for x in h) for k in range(1, order) if gcd(k, order) == 1)
        if key not in keys:
            keys.add(key)
            out.append(key)
    return sorted(out)


def _join_lattice(lattice, h, big):
    """``{s in lattice : s . h = 0 mod big}``."""
    basis = lattice.basis
    v = [la.dot(s, h) % big for s in basis]
    kernel = la.kernel_lattice([tuple(v) + (-big,)])
    rows = [la.vecmat(x[:-1], basis) for x in kernel.basis]
    return la.LatticeBasis.span(rows, lattice.ambient_rank)


@dataclass
class CorpusEntry:
    exponents: ExponentMatrix
    weights: WeightSystem
    groups: list
    status: str = "unverified"

    def to_dict(self):
        return {
            "exponents": self.exponents.tolist(),
            "weights": list(self.weights.c),
            "degree": self.weights.d,
            "groups": [[format_phase(h) for h in g.generators] for g in self.groups],
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, obj):
        e = ExponentMatrix(obj["exponents"])
        w = weight_system(e)
        if "weights" in obj and tuple(obj["weights"]) != w.c:
            raise InputError(f"declared weights {obj['weights']} do not match {list(w.c)}")
        if "degree" in obj and obj["degree"] != w.d:
            raise InputError(f"declared degree {obj['degree']} does not match {w.d}")
        groups = []
        for gens in obj.get("groups", [["j"]]):
            parsed = [exponential_element(w) if str(x).strip().lower() == "j" else parse_phase(x, e.size) for x in gens]
            groups.append(DiagonalGroup(e.size, parsed))
        return cls(e, w, groups, obj.get("status", "unverified"))


def build_corpus(max_vars=4, max_degree=12, max_order=200):
    entries = []
    for w in cy_weight_systems(max_vars, max_degree):
        for e in enumerate_invertible(w):
            entries.append(CorpusEntry(e, w, cy_type_groups(e, max_order)))
    return entries


def write_corpus(entries, path):
    with open(path, "w") as fh:
        for entry in entries:
            fh.write(json.dumps(entry.to_dict()) + "\n")


def read_corpus(path):
    entries = []
    try:
        fh = open(path)
    except OSError as exc:
        raise InputError(f"cannot read corpus: {exc}") from None
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                entries.append(CorpusEntry.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from None
    return entries


def verify_entry(entry, exhaustive=False):
    """Run the pipeline on every group of ``entry``; returns per-group results."""
    results = []
    for g in entry.groups:
        report = mirror_pipeline(entry.exponents, g, exhaustive=exhaustive)
        ok = report.data["calabi_yau"]["cy_type"] and report.verified and report.data["toric"]["pairing_ok"]
        results.append({"group": [format_phase(h) for h in g.generators], "verified": bool(ok)})
    entry.status = "verified" if all(r["verified"] for r in results) else "failed"
    return results
