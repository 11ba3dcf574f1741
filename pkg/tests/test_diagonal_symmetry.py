from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bhkmirror import latticealg as la
from bhkmirror.diagonal_symmetry import (
    DiagonalGroup,
    aut_group,
    canonical_generators,
    dual_group,
    exponential_element,
    is_cy_type,
    is_special_linear,
    parse_group,
    phase,
    phase_add,
    quotient_by_j,
    sl_subgroup,
    subgroup,
)
from bhkmirror.errors import ElementNotInGroup, GroupTooLarge, NotInAmbient
from bhkmirror.invertible_poly import WeightSystem, transpose, weight_system

from conftest import setup

BRUTE_FORCE_LIMIT = 4000


def closure_order(gens, n):
    return len(DiagonalGroup(n, gens).elements(cap=10**6))


def test_aut_orders(fermat, chain, mixed):
    cases = [(fermat, 3125, (5, 5, 5, 5, 5)), (chain, 1280, (1280,)), (mixed, 2500, (5, 5, 5, 20))]
    for (e, _), order, inv in cases:
        aut = aut_group(e)
        assert aut.order == order == abs(e.det)
        assert aut.invariants == inv == la.smith_invariants(e.rows)
        assert aut.generator_invariants() == inv
    for e, _ in (chain, mixed):
        assert closure_order(canonical_generators(e), e.size) == abs(e.det)


def test_exponential_element_values():
    assert exponential_element(WeightSystem((1,) * 5, 5)) == (F(1, 5),) * 5
    assert exponential_element(WeightSystem((5, 3, 4, 4, 4), 20)) == (F(1, 4), F(3, 20), F(1, 5), F(1, 5), F(1, 5))
    j = exponential_element(WeightSystem((64, 48, 52, 51, 41), 256))
    assert j == (F(1, 4), F(3, 16), F(13, 64), F(51, 256), F(41, 256))
    assert DiagonalGroup(5, [j]).order == 256


def test_subgroup_orders(fermat, mixed):
    e, g = fermat
    assert g.order == 5
    assert DiagonalGroup(5).order == 1
    et = transpose(mixed[0])
    jt = exponential_element(weight_system(et))
    g3 = subgroup([jt, (0, 0, F(1, 5), F(4, 5), 0), (0, 0, 0, F(1, 5), F(4, 5))], aut_group(et))
    assert g3.order == 500 == closure_order(g3.generators, 5)


def test_subgroup_outside_ambient(fermat):
    e, g = fermat
    with pytest.raises(NotInAmbient):
        subgroup([(F(1, 3), 0, 0, 0, F(2, 3))], aut_group(e))


def test_is_special_linear():
    assert is_special_linear(DiagonalGroup(5, [(F(1, 5),) * 5]))
    assert not is_special_linear(DiagonalGroup(5, [(F(1, 5), 0, 0, 0, 0)]))
    assert is_special_linear(DiagonalGroup(5, [(0, 0, F(1, 5), F(4, 5), 0)]))


def test_is_cy_type(fermat, chain):
    assert is_cy_type(*fermat)
    v = is_cy_type(fermat[0], DiagonalGroup(5))
    assert not v and "j_W" in v.reason
    v = is_cy_type(chain[0], aut_group(chain[0]))
    assert not v and "SL" in v.reason
    e, _ = setup("x0^3+x1^3")
    v = is_cy_type(e, DiagonalGroup(2, [exponential_element(weight_system(e))]))
    assert not v and "condition fails" in v.reason


def test_dual_group_examples(fermat, chain, mixed):
    gt = dual_group(*fermat)
    assert gt.order == 625 and gt.invariants == (5, 5, 5, 5)
    gt = dual_group(*chain)
    jt = exponential_element(weight_system(transpose(chain[0])))
    assert gt.order == 256 and gt.invariants == (256,)
    assert gt == DiagonalGroup(5, [jt])
    gt = dual_group(*mixed)
    jt = exponential_element(weight_system(transpose(mixed[0])))
    g1, g2 = (0, 0, F(1, 5), F(4, 5), 0), (0, 0, 0, F(1, 5), F(4, 5))
    assert gt == DiagonalGroup(5, [jt, g1, g2])
    assert gt.order == 500 and gt.invariants == (5, 5, 20)


def test_dual_of_full_aut_is_trivial(corpus):
    for entry in corpus[::7]:
        e = entry.exponents
        assert dual_group(e, aut_group(e)).order == 1


def test_quotients(fermat, chain, mixed):
    for (e, g), expected in ((fermat, (5, 5, 5)), (chain, ()), (mixed, (5, 5))):
        et = transpose(e)
        jt = exponential_element(weight_system(et))
        q = quotient_by_j(dual_group(e, g), jt)
        assert q.invariants == expected
        if q.group.order <= 300:
            assert len(q.representatives) == q.order
    with pytest.raises(ElementNotInGroup):
        quotient_by_j(DiagonalGroup(5), (F(1, 5),) * 5)


def test_j_is_sum_of_canonical_generators(corpus):
    for entry in corpus:
        e = entry.exponents
        total = (F(0),) * e.size
        for rho in canonical_generators(e):
            total = phase_add(total, rho)
        assert total == exponential_element(weight_system(e))


def test_corpus_group_identities(corpus):
    checked = 0
    for entry in corpus:
        e = entry.exponents
        et = transpose(e)
        jt = exponential_element(weight_system(et))
        det = abs(e.det)
        if det <= BRUTE_FORCE_LIMIT:
            assert len(aut_group(e).elements(cap=det)) == det
        for g in entry.groups:
            gt = dual_group(e, g)
            assert dual_group(et, gt) == g
            assert g.order * gt.order == det
            if det <= BRUTE_FORCE_LIMIT:
                assert len(g.elements()) * len(gt.elements()) == det
                checked += 1
            assert is_special_linear(g) == (jt in gt)
    assert checked > 100


def _cyclic_subgroups(e, limit=6):
    aut = aut_group(e)
    rhos = canonical_generators(e)
    out = []
    for k, rho in enumerate(rhos):
        out.append(DiagonalGroup(e.size, [rho]))
        out.append(DiagonalGroup(e.size, [phase_add(rho, rhos[(k + 1) % len(rhos)])]))
    return [g for g in out if g <= aut][: 2 * limit]


def test_sl_iff_transpose_j_both_directions(corpus):
    seen = {True: 0, False: 0}
    for entry in corpus:
        e = entry.exponents
        jt = exponential_element(weight_system(transpose(e)))
        for g in _cyclic_subgroups(e) + [aut_group(e), sl_subgroup(aut_group(e))]:
            sl = is_special_linear(g)
            assert sl == (jt in dual_group(e, g))
            seen[sl] += 1
    assert seen[True] and seen[False]


def test_membership_lattice_matches_elements(mixed):
    e, g = mixed
    gt = dual_group(e, g)
    elements = gt.elements()
    assert len(elements) == gt.order
    assert all(x in gt for x in elements)
    assert (F(1, 7),) * 5 not in gt


def test_enumeration_cap():
    g = DiagonalGroup(3, [(F(1, 101), 0, 0), (0, F(1, 103), 0)])
    with pytest.raises(GroupTooLarge):
        g.elements(cap=1000)


def test_parse_group():
    j = (F(1, 5),) * 5
    gens = parse_group("j; 0,0,1/5,4/5,0", 5, j)
    assert gens == [j, (0, 0, F(1, 5), F(4, 5), 0)]
    with pytest.raises(ValueError):
        parse_group("1/5,1/5", 5, j)
    with pytest.raises(ValueError):
        parse_group("j", 5)


phases = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(st.lists(phases, min_size=0, max_size=3))
def test_lattice_description_matches_closure(gens):
    g = DiagonalGroup(3, gens)
    elements = g.elements(cap=10**5)
    assert g.order == len(elements)
    assert g.invariants == g.generator_invariants()
    assert all(phase(x) in g for x in elements)
