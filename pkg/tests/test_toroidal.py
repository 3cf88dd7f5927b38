import json

import pytest

from qvertex.groups import binary_dihedral, cyclic
from qvertex.toroidal import (
    RepMap,
    SuiteConfig,
    check_a_x,
    check_xpxm,
    run_suite,
    suite_json,
)
from qvertex.fock import ExtState
from qvertex.scalar import Laurent, qint

SMALL = dict(max_degree=1, max_mode=1, max_states=5, serre_window=1)


def small_cfg(spec, **kw):
    merged = {**SMALL, **kw}
    return SuiteConfig(spec, **merged)


def test_heisenberg_explicit_value():
    # [a_i(1), a_i(-1)] = [2][1] = q + q^-1 on the vacuum
    rep = RepMap(cyclic(3), small_cfg("cyclic:3"))
    vac = ExtState.vacuum(3)
    got = rep.a_mode(1, 1, rep.a_mode(1, -1, vac))
    assert got == vac.scale(Laurent.q_pow(1) + Laurent.q_pow(-1))


def test_a_x_vacuum_example():
    # [a_i(1), x_i^+(n)] |0> = [2] q^{-1/2} x_i^+(n+1) |0> at k = -1
    rep = RepMap(cyclic(3), small_cfg("cyclic:3", k=-1))
    vac = ExtState.vacuum(3)
    for n in (-2, -1):
        lhs = rep.a_mode(1, 1, rep.x_mode(1, 1, n, vac))  # x(n)|0> then a(1); a(1)|0> = 0
        want = rep.x_mode(1, 1, n + 1, vac).scale(qint(2) * Laurent.v_pow(-1))
        assert lhs == want


def test_a_x_negative_mode_uses_odd_qint():
    rep = RepMap(cyclic(3), small_cfg("cyclic:3", k=-1))
    states = rep.test_states()
    assert check_a_x(rep, states).passed


@pytest.mark.parametrize("variant,k", [("toroidal_plus", -1), ("toroidal_plus", 1), ("toroidal_minus", -1)])
def test_full_small_suite_cyclic3(variant, k):
    reports = run_suite(cyclic(3), small_cfg("cyclic:3", variant=variant, k=k))
    assert all(r.passed for r in reports), [(r.check_id, r.fail_detail) for r in reports if not r.passed]


def test_full_small_suite_cyclic2_includes_n3_serre():
    cfg = small_cfg("cyclic:2")
    reports = run_suite(cyclic(2), cfg)
    assert all(r.passed for r in reports)
    serre = next(r for r in reports if r.check_id == "toroidal.serre")
    assert serre.n_cases > 0  # the N = 3 symmetrisation really ran


def test_bad_k_rejected():
    with pytest.raises(ValueError):
        RepMap(cyclic(3), small_cfg("cyclic:3", k=2))


def test_affine_variant_excludes_node_zero():
    rep = RepMap(cyclic(3), small_cfg("cyclic:3", variant="affine"))
    assert rep.indices == [1, 2]
    for st in rep.test_states():
        for (mono, beta), _ in st.terms.items():
            assert all(i != 0 for _, i in mono)
            assert beta[0] == 0


def test_affine_suites_pass():
    for g, spec in [(cyclic(3), "cyclic:3"), (binary_dihedral(2), "bd:2")]:
        reports = run_suite(g, small_cfg(spec, variant="affine"))
        assert all(r.passed for r in reports), [(r.check_id, r.fail_detail) for r in reports if not r.passed]


@pytest.mark.parametrize("p_exp", [1, -1, 2])
def test_typeA_qp_suites(p_exp):
    reports = run_suite(cyclic(3), small_cfg("cyclic:3", variant="typeA_qp", p_exp=p_exp))
    assert all(r.passed for r in reports), [(r.check_id, r.fail_detail) for r in reports if not r.passed]


def test_typeA_qp_quotient_flag():
    rep = RepMap(cyclic(3), small_cfg("cyclic:3", variant="typeA_qp", p_exp=1))
    assert rep.eng.lat.quotient
    rep2 = RepMap(cyclic(3), small_cfg("cyclic:3", variant="typeA_qp", p_exp=2))
    assert not rep2.eng.lat.quotient


def test_typeA_qp_requires_p():
    with pytest.raises(ValueError):
        RepMap(cyclic(3), small_cfg("cyclic:3", variant="typeA_qp"))


def test_report_json_deterministic():
    cfg = small_cfg("cyclic:2")
    a = suite_json(cyclic(2), cfg, run_suite(cyclic(2), cfg))
    b = suite_json(cyclic(2), cfg, run_suite(cyclic(2), cfg))
    assert a == b
    doc = json.loads(a)
    assert list(doc) == ["suite", "config", "checks"]
    assert all(list(c)[:4] == ["id", "params", "pass", "cases"] for c in doc["checks"])


def test_failure_reports_carry_detail():
    from qvertex.vertex import fj_x

    rep = RepMap(cyclic(2), small_cfg("cyclic:2", k=-1))
    assert check_xpxm(rep).passed
    # swap the realised operators to the mirrored shift while the expected
    # formulas stay at k = -1: the check must fail and name a coefficient
    rep.x_op = lambda i, sign: fj_x(i, sign, +1)
    bad = check_xpxm(rep, rep.test_states())
    assert not bad.passed
    assert set(bad.fail_detail) == {"where", "expected", "got"}
