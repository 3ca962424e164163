from fractions import Fraction

import pytest

from jetframe.errors import ConfigError, SamplingExhausted
from jetframe.fieldforge import assemble_frame
from jetframe.jetcalc import JetConfig, VectorField, defining_equations, universal_poly
from jetframe.polycore import FracPoly, Jet, Param, Poly, W, Z, Z1P
from jetframe.verifier import (check_tangency, exact_rank, expected_dimension, fiber_oracle,
                               gradient_orthogonality, identity_suite, pole_audit,
                               predicted_U_pole_order, rank_at_point, reduce_modulo_q,
                               sample_vertical_point, verify_frame)


def test_reduce_modulo_q(log112):
    w = Poly.var(W(1))
    A = universal_poly(log112).scale(-1) + w ** 2        # the z-part A
    assert reduce_modulo_q(w ** 2, log112) == A
    assert reduce_modulo_q(w ** 5, log112) == A * A * w
    assert reduce_modulo_q(w, log112) == w


def test_tangency_witness(cfg223):
    v = check_tangency(cfg223, VectorField.basis(Param(1, (1, 0))))
    assert not v.ok
    assert [w["slot"] for w in v.witness] == [0]      # d/da commutes with D
    with pytest.raises(ValueError):
        check_tangency(cfg223, VectorField(), "Sometimes")


def test_sampled_points_lie_on_the_variety():
    for cfg in (JetConfig(2, 2, (3,)), JetConfig(2, 1, (1, 2)), JetConfig(2, 2, (3,), "log")):
        for s in range(3):
            pt = sample_vertical_point(cfg, s)
            assert pt[Z1P] == 1
            assert all(e.eval(pt) == 0 for e in defining_equations(cfg))
            assert all(e.eval(pt) == 0 for e in defining_equations(cfg, "Dz1"))
            if cfg.is_log:
                assert pt[W(1)] != 0


def test_sampling_is_deterministic(cfg223):
    assert sample_vertical_point(cfg223, "7:0") == sample_vertical_point(cfg223, "7:0")
    assert sample_vertical_point(cfg223, "7:0") != sample_vertical_point(cfg223, "7:1")


def test_sampling_limits(cfg223):
    with pytest.raises(SamplingExhausted):
        sample_vertical_point(cfg223, 0, retries=0)
    with pytest.raises(ConfigError):
        sample_vertical_point(JetConfig(2, 4, (3,)), 0)


def test_expected_dimension():
    assert expected_dimension(JetConfig(2, 1, (2,))) == 7
    assert expected_dimension(JetConfig(2, 1, (1, 2))) == 2 + 5 + 4 - 4
    assert expected_dimension(JetConfig(1, 1, (2,), "log")) == 3 + 2


def test_exact_rank():
    F = Fraction
    assert exact_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert exact_rank([[F(1, 2), F(1, 3)], [F(1, 3), F(1, 4)]]) == 2
    assert exact_rank([[F(0), F(0)]]) == 0
    assert exact_rank([[F(1), F(2), F(3)], [F(4), F(5), F(6)], [F(7), F(8), F(9)]]) == 2


def test_full_rank_and_missing_field(cfg223):
    fr = assemble_frame(cfg223)
    pt = sample_vertical_point(cfg223, 0)
    assert rank_at_point(fr, pt) == expected_dimension(cfg223)
    assert rank_at_point(fr.without("T_jq(j=1,q=0)"), pt) == expected_dimension(cfg223) - 1


def test_every_family_member_counts(cfg212):
    fr = assemble_frame(cfg212)
    pt = sample_vertical_point(cfg212, 1)
    for f in fr.fields:
        assert rank_at_point(fr.without(f.label), pt) == len(fr.fields) - 1


def test_gradient_orthogonality(cfg223):
    fr = assemble_frame(cfg223)
    pt = sample_vertical_point(cfg223, 2)
    assert gradient_orthogonality(fr, pt).ok
    raw = VectorField.basis(Param(1, (0, 1)))
    from jetframe.fieldforge import FrameField
    bad = gradient_orthogonality(fr, pt, [FrameField("raw", "parameter", {}, raw)])
    assert not bad.ok


def test_pole_audit_headline():
    for k, d, top in ((2, 3, 8), (3, 4, 13)):
        audit = pole_audit(assemble_frame(JetConfig(2, k, (d,))))
        assert audit["max"] == top == audit["bound"]
        assert audit["a_degree_ok"]


def test_vertical_field_pole_orders():
    """T_ell has coefficients p z^{(p)} up to p = k - ell + 1, so pole order k - ell + 2."""
    for k in (2, 3):
        fr = assemble_frame(JetConfig(2, k, (k + 1,)))
        for f in fr.fields:
            if f.tag == "T_ell":
                assert f.pole_order == k - f.params["ell"] + 2


def test_U_pole_orders_against_closed_form(cfg223):
    from jetframe.fieldforge import U_general
    assert U_general(cfg223, 1, 1, (1, 0)).pole_order() == predicted_U_pole_order(cfg223, 1, 1, (1, 0))
    # beyond the degree the tight value is q + k + |beta| - d
    assert U_general(cfg223, 1, 1, (3, 0)).pole_order() == 1 + 2 + 3 - 3


def test_fiber_oracle():
    assert fiber_oracle(JetConfig(2, 2, (3,)), curves=10, seed=1)["ok"]
    assert fiber_oracle(JetConfig(1, 1, (2,), "log"), curves=10, seed=1)["ok"]


def test_identity_suite_small():
    assert all(item["ok"] for item in identity_suite(2, 2, 0, faa_trials=10))


def test_report_shape(cfg212):
    rep = verify_frame(assemble_frame(cfg212), points=2, seed=3)
    assert rep["pass"]
    assert set(rep) >= {"config", "verdicts", "rank_results", "pole_table", "identity_suite",
                        "choices", "pass"}
    assert [r["seed"] for r in rep["rank_results"]] == ["3:0", "3:1"]


def test_threads_do_not_change_report(cfg223, monkeypatch):
    fr = assemble_frame(cfg223)
    one = verify_frame(fr, ("tangency",), points=1)
    monkeypatch.setenv("JETFRAME_THREADS", "4")
    assert verify_frame(fr, ("tangency",), points=1) == one
