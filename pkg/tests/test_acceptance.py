"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python tests/test_acceptance.py``.
"""

import json
import os
import subprocess
import sys
import time
from fractions import Fraction as F

from bhkmirror import latticealg as la
from bhkmirror.diagonal_symmetry import (
    DiagonalGroup,
    dual_group,
    exponential_element,
    is_special_linear,
    quotient_by_j,
)
from bhkmirror.invertible_poly import transpose, weight_system
from bhkmirror.multimirror import build_corpus, common_chart, mirror_pipeline, rational_point_probe
from bhkmirror.toric_mirror import pairing_matrix, toric_data, verify_mirror_ambient

sys.path.insert(0, os.path.dirname(__file__))
from conftest import CHAIN, FERMAT, MIXED, setup  # noqa: E402

BRUTE_FORCE_LIMIT = 4000


def report(capsys, number, ok, elapsed, limit, note=""):
    bound = f"limit {limit}s" if limit is not None else "no time limit"
    passed = ok and (limit is None or elapsed < limit)
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} ({elapsed:.2f}s, {bound}){' ' + note if note else ''}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def check_example_1():
    e, g = setup(FERMAT)
    gt = dual_group(e, g)
    td = toric_data(e, g)
    return (
        gt.invariants == (5, 5, 5, 5)
        and td.ambient.relation_weights == (1, 1, 1, 1, 1)
        and td.ambient.quotient_invariants == (5, 5, 5)
        and transpose(e).rows == e.rows
        and verify_mirror_ambient(e, g).verified
    )


def check_example_2():
    e, g = setup(CHAIN)
    wt = weight_system(transpose(e))
    jt = exponential_element(wt)
    gt = dual_group(e, g)
    td = toric_data(e, g)
    return (
        (wt.c, wt.d) == ((64, 48, 52, 51, 41), 256)
        and gt == DiagonalGroup(5, [jt])
        and gt.order == 256
        and gt.invariants == (256,)
        and td.ambient.quotient_invariants == ()
        and td.ambient.relation_weights == wt.c
        and verify_mirror_ambient(e, g).verified
    )


def check_example_3():
    e, g = setup(MIXED)
    wt = weight_system(transpose(e))
    jt = exponential_element(wt)
    gt = dual_group(e, g)
    g1 = (0, 0, F(1, 5), F(4, 5), 0)
    g2 = (0, 0, 0, F(1, 5), F(4, 5))
    return (
        (wt.c, wt.d) == ((5, 3, 4, 4, 4), 20)
        and jt == (F(1, 4), F(3, 20), F(1, 5), F(1, 5), F(1, 5))
        and gt.lattice == DiagonalGroup(5, [jt, g1, g2]).lattice
        and quotient_by_j(gt, jt).invariants == (5, 5)
        and toric_data(e, g).ambient.quotient_invariants == (5, 5)
        and verify_mirror_ambient(e, g).verified
    )


def check_multiple_mirrors(samples=100):
    examples = [setup(t) for t in (FERMAT, CHAIN, MIXED)]
    g = examples[0][1]
    ok = True
    for a, b in ((0, 1), (0, 2), (1, 2)):
        atlas = common_chart(examples[a][0], examples[b][0], g)
        probe = rational_point_probe(atlas, samples, seed=a * 3 + b)
        ok = ok and atlas.sides_chart[0] == atlas.sides_chart[1] and probe["agreements"] == samples
    return ok


def check_corpus():
    corpus = build_corpus(4, 12, 200)
    failures = []
    pairs = 0
    for entry in corpus:
        e = entry.exponents
        et = transpose(e)
        jt = exponential_element(weight_system(et))
        det = abs(e.det)
        for g in entry.groups:
            pairs += 1
            gt = dual_group(e, g)
            td = toric_data(e, g)
            checks = {
                "a": dual_group(et, gt) == g,
                "b": g.order * gt.order == det
                and (det > BRUTE_FORCE_LIMIT or len(g.elements()) * len(gt.elements()) == det),
                "c": is_special_linear(g) == (jt in gt),
                "d": pairing_matrix(td.mus, td.nus) == tuple(tuple(x - 1 for x in r) for r in e.rows),
                "e": all(la.vector_gcd(p.basis_coords) == 1 for p in td.mus + td.nus),
                "f": verify_mirror_ambient(e, g, data=td, strict=False).verified,
            }
            failures += [(e.rows, k) for k, v in checks.items() if not v]
    return not failures and pairs > 0, f"{len(corpus)} polynomials, {pairs} pairs, {len(failures)} failures"


def full_report():
    """Deterministic JSON covering the examples, their atlases and the corpus."""
    out = {"examples": [], "atlases": [], "corpus": []}
    examples = [setup(t) for t in (FERMAT, CHAIN, MIXED)]
    for e, g in examples:
        out["examples"].append(mirror_pipeline(e, g, exhaustive=True).to_dict())
    for a, b in ((0, 1), (0, 2), (1, 2)):
        atlas = common_chart(examples[a][0], examples[b][0], examples[0][1])
        atlas.probe = rational_point_probe(atlas, 10, seed=7)
        out["atlases"].append(atlas.to_dict())
    for entry in build_corpus(4, 12, 200):
        for g in entry.groups:
            out["corpus"].append(mirror_pipeline(entry.exponents, g).to_dict())
    return json.dumps(out, indent=2, sort_keys=False)


def timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def test_criterion_1_fermat_quintic(capsys):
    ok, elapsed = timed(check_example_1)
    report(capsys, 1, ok, elapsed, 1)
    assert ok and elapsed < 1


def test_criterion_2_chain_quintic(capsys):
    ok, elapsed = timed(check_example_2)
    report(capsys, 2, ok, elapsed, 1)
    assert ok and elapsed < 1


def test_criterion_3_mixed_quintic(capsys):
    ok, elapsed = timed(check_example_3)
    report(capsys, 3, ok, elapsed, 1)
    assert ok and elapsed < 1


def test_criterion_4_multiple_mirrors_birational(capsys):
    ok, elapsed = timed(check_multiple_mirrors)
    report(capsys, 4, ok, elapsed, 5, "3 pairs x 100 probes")
    assert ok and elapsed < 5


def test_criterion_5_corpus_properties(capsys):
    (ok, note), elapsed = timed(check_corpus)
    report(capsys, 5, ok, elapsed, 60, note)
    assert ok and elapsed < 60


def _subprocess_report(seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    code = "import sys; sys.path.insert(0, sys.argv[1]); import test_acceptance as t; sys.stdout.write(t.full_report())"
    return subprocess.run(
        [sys.executable, "-c", code, os.path.dirname(os.path.abspath(__file__))],
        env=env,
        capture_output=True,
        check=True,
    ).stdout


def test_criterion_6_determinism(capsys):
    def run():
        first, second = _subprocess_report(1), _subprocess_report(2)
        return first == second and first == full_report().encode() and len(first) > 0

    ok, elapsed = timed(run)
    report(capsys, 6, ok, elapsed, None, "full report from two processes with different hash seeds")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
