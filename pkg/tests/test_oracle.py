"""Brute-force oracles and the agreement matrix."""

from __future__ import annotations

import pytest

import galtour.dissociation as dis
import galtour.galois as gal
import galtour.oracle as orc
import galtour.towers as tw
from conftest import get_ctx, small_contexts


def test_oracle_report_invariant():
    orc.OracleReport("x", "op", True)
    orc.OracleReport("x", "op", False, "boom")
    with pytest.raises(ValueError):
        orc.OracleReport("x", "op", True, "boom")
    with pytest.raises(ValueError):
        orc.OracleReport("x", "op", False)


def test_bf_galtourable_examples(r24, r26):
    assert not orc.bf_galtourable(r26, r26.distinguished, r26.base)
    assert orc.bf_galtourable(r24, r24.distinguished, r24.base)
    # a Galois pair succeeds at depth 1
    s2 = r26.field_by_name("Q(sqrt2)")
    assert orc.bf_galtourable(r26, s2, r26.base)


def test_bf_galtourable_agrees_everywhere():
    for name, ctx in small_contexts().items():
        fields = ctx.all_fields()
        for F in fields:
            for E in fields:
                if F <= E:
                    assert orc.bf_galtourable(ctx, E, F) == \
                        dis.is_galtourable(ctx, E, F), (name, E.name, F.name)


def test_bf_intourability_examples(r26, r24, r29):
    M, count = orc.bf_intourability(r26, r26.distinguished, r26.base)
    assert M.name == "Q(sqrt2)" and count == 1
    M, count = orc.bf_intourability(r24, r24.distinguished, r24.base)
    assert M == r24.distinguished  # galtourable case: M = L
    M, count = orc.bf_intourability(r29, r29.distinguished, r29.base)
    assert M == r29.base  # galsimple non-Galois case: M = K


def test_bf_composition_towers(klein, c4ctx, ss3):
    ts = orc.bf_composition_towers(klein, klein.top_closure, klein.base)
    assert len(ts) == 3
    for a in ts:
        for b in ts:
            assert tw.equivalence_witness(a, b) is not None
    # a simple Galois group gives exactly one tower [K, L]
    a3 = ss3.field_of(next(sg for sg in ss3.subgroups if sg.order == 3))
    ts = orc.bf_composition_towers(ss3, a3, ss3.base)
    assert ts == [tw.make_tower(ss3, [ss3.base, a3])]
    # C4 has a unique composition tower, of height 2
    ts = orc.bf_composition_towers(c4ctx, c4ctx.top_closure, c4ctx.base)
    assert len(ts) == 1 and ts[0].height == 2


def test_enumerate_towers(r24):
    towers = orc.enumerate_towers(r24, r24.base, r24.distinguished, 2)
    assert tw.make_tower(
        r24, [r24.base, r24.field_by_name("Q(sqrt2)"), r24.distinguished]) \
        in towers
    assert all(t.height <= 2 for t in towers)


def test_bf_refinement_predicates_shipped():
    for name, ctx in small_contexts().items():
        if ctx.group.order > 24:
            continue
        rep = orc.bf_refinement_predicates(ctx, 4, sample=400, instance=name)
        assert rep.agreement, rep.counterexample


def test_bf_refinement_predicates_order_24_sample(ss4):
    rep = orc.bf_refinement_predicates(ss4, 3, base=ss4.base,
                                       top=ss4.top_closure,
                                       sample=1000, instance="ss4")
    assert rep.agreement, rep.counterexample


def test_question_scan_trivial_and_small(r26):
    triv = get_ctx("c4")
    rep = orc.quadrilateral_question_scan(triv, "c4")
    assert rep.agreement  # everything abelian: all quadrilaterals parallelograms
    rep12 = orc.quadrilateral_question_scan(r26, "r26")
    assert rep12.operation == "quadrilateral_questions"
    assert isinstance(rep12.agreement, bool)  # empirical content, no gate


def test_question_scan_parallelogram_subcase():
    # over parallelograms the answers are affirmative: re-run the scan
    # restricted to a context whose galtourable quadrilaterals are all
    # parallelograms (abelian closure group)
    ctx = get_ctx("zeta15")
    rep = orc.quadrilateral_question_scan(ctx, "zeta15")
    assert rep.agreement, rep.counterexample


def test_agreement_suite_runs():
    instances = {name: ctx for name, ctx in small_contexts().items()
                 if ctx.group.order <= 24}
    matrix = orc.run_agreement_suite(instances, max_height=3, sample=200)
    assert matrix["all_agree"]
    for name in instances:
        ops = matrix["instances"][name]
        assert set(ops) == {"is_galtourable", "is_galsimple",
                            "refinement_predicates", "intourability"}
        for cell in ops.values():
            assert cell["agreement"]
