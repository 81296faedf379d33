import json
from fractions import Fraction

import pytest

from curvecomp.counterexample import (
    ORDER_C,
    blowup_plan,
    build_configuration,
    compare_with_figures,
    counterexample_report,
    order_for,
    plan_for,
    relabel_plan,
    replay_contractions,
    resultant_check,
    solve_swap_parameters,
    swap_automorphism_exists,
)
from curvecomp.errors import ForbiddenLambda, NotContractible
from curvecomp.lattice import replay

LAMBDAS = [2, 3, "1/2", -2, "-2/3", 5]


@pytest.fixture(scope="module")
def data2():
    return blowup_plan(build_configuration(2))


@pytest.mark.parametrize("lam", [0, -1])
def test_forbidden_lambda(lam):
    with pytest.raises(ForbiddenLambda):
        build_configuration(lam)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_intersection_table(lam):
    cfg = build_configuration(lam)
    assert all(row["ok"] and row["complete"] for row in cfg.table)
    assert resultant_check(lam) == 3


def test_self_intersections_and_figure(data2):
    si = data2.self_intersections()
    assert si["E7"] == -4
    assert all(si[k] == -1 for k in ("E4", "E10"))
    assert compare_with_figures(data2) == []


def test_incidence_hash_stable():
    hashes = {blowup_plan(build_configuration(lam)).incidence_hash() for lam in (2, 3, "1/2")}
    assert len(hashes) == 1


@pytest.mark.parametrize("lam", LAMBDAS)
def test_both_replays(lam):
    data = blowup_plan(build_configuration(lam))
    for v in ("C", "D"):
        res = replay_contractions(data, v)
        assert len(res.states) == 11 and res.final.rank == 1
        assert res.profile.degree == 8
        assert res.profile.singular == [3] * 7


def test_variant_d_is_relabelled_c(data2):
    c, d = plan_for(data2, "C"), plan_for(data2, "D")
    r = relabel_plan(c)
    assert r.order == d.order and r.track == d.track
    assert order_for("D")[0][0] == "Gamma"


def test_wrong_order_is_rejected(data2):
    bad = list(ORDER_C)
    bad[1], bad[2] = bad[2], bad[1]
    with pytest.raises(NotContractible):
        replay(plan_for(data2, "C", bad))


def test_swap_parameters():
    assert solve_swap_parameters() == [(Fraction(1), Fraction(1))]
    assert swap_automorphism_exists(1).exists
    for lam in LAMBDAS:
        assert not swap_automorphism_exists(lam).exists


def test_report_json(data2):
    rep = counterexample_report(2)
    js = rep.to_json()
    assert js["swap"]["exists"] is False
    assert js["snc_tree"]["ok"] is True
    assert rep.verdict.startswith("projectively non-equivalent")
    json.dumps(js, sort_keys=True)
    assert counterexample_report(1).verdict.startswith("projectively equivalent")
