import pytest

from jetframe.errors import (ConfigError, InvalidDirection, NoValidLambda, RangeError,
                             ReservedIndex, WrongCase)
from jetframe.fieldforge import (FrameSpec, T_jq, T_merker, T_param, T_wq, T_wq_candidates,
                                 U0_extended, U_general, U_inductive, U_q_beta, _target,
                                 assemble_frame, chart_one, default_lambda, merker_lambdas,
                                 reserved_betas)
from jetframe.jetcalc import JetConfig, VectorField, defining_equations, lambda_vec, multi_indices
from jetframe.polycore import Param
from jetframe.verifier import check_tangency, expected_dimension


def test_U_q_beta_lambda(cfg223):
    for q in range(3):
        for m in range(3 - q + 1):
            for b in multi_indices(2, m):
                if b == (0, 3):
                    continue
                U = U_q_beta(cfg223, 1, q, b)
                assert lambda_vec(cfg223, U) == _target(cfg223, b, q)


def test_U_q_beta_range(cfg223):
    with pytest.raises(RangeError):
        U_q_beta(cfg223, 1, 2, (2, 0))


def test_U_general_beyond_degree(cfg223):
    for b in [(4, 0), (2, 2), (0, 4), (0, 3), (5, 0)]:
        for q in range(3):
            assert lambda_vec(cfg223, U_general(cfg223, 1, q, b)) == _target(cfg223, b, q)


def test_U_general_log_sign(log112):
    U = U_general(log112, 1, 1, (2,))
    assert lambda_vec(log112, U) == _target(log112, (2,), 1)
    assert _target(log112, (2,), 1)[1].num.terms       # nonzero, with sign -1


def test_inductive_law_agrees(cfg223):
    for b in [(0, 0), (1, 0), (1, 1), (0, 2)]:
        for q in range(3):
            assert U_inductive(cfg223, 1, q, b) == U_general(cfg223, 1, q, b)


def test_extension_sign_is_recorded(cfg223):
    U0_extended(cfg223, 1, (4, 0))
    frame = assemble_frame(cfg223)
    assert frame.choices["U0_extended_sign"] == "flipped"


def test_merker_annihilates_all_equations(cfg223):
    eqs = defining_equations(cfg223)
    for b in [(3, 0), (2, 1), (1, 2)]:
        for lam in merker_lambdas(cfg223, b):
            V = T_merker(cfg223, 1, b, lam)
            assert all(V.apply(e).is_zero() for e in eqs)


def test_merker_lambda_choice(cfg223):
    assert merker_lambdas(cfg223, (2, 1)) == [(2, 1)]
    cfg = JetConfig(2, 1, (3,))
    assert merker_lambdas(cfg, (2, 1)) == [(1, 1), (2, 0)]
    assert default_lambda(cfg, (2, 1)) == (1, 1)
    with pytest.raises(NoValidLambda):
        T_merker(cfg223, 1, (2, 1), (0, 3))
    with pytest.raises(ConfigError):
        T_merker(cfg223, 1, (1, 0))


def test_slanted_fields_are_tangent(cfg223):
    for j in (1, 2):
        for q in range(3):
            if j == 1 and q:
                continue
            assert check_tangency(cfg223, T_jq(cfg223, j, q)).ok


def test_slanted_without_factor_is_not_tangent(cfg223):
    """Dropping (-1)^q q! from the correction breaks tangency for q >= 1."""
    for q in (1, 2):
        assert not check_tangency(cfg223, T_jq(cfg223, 2, q, verbatim=True)).ok
    assert check_tangency(cfg223, T_jq(cfg223, 2, 0, verbatim=True)).ok


def test_invalid_direction(cfg223):
    with pytest.raises(InvalidDirection):
        T_jq(cfg223, 1, 1)


def test_parameter_fields(cfg223):
    for b in cfg223.params(1):
        if b in reserved_betas(cfg223):
            with pytest.raises(ReservedIndex):
                T_param(cfg223, 1, b)
            continue
        V = T_param(cfg223, 1, b)
        assert check_tangency(cfg223, V).ok
        assert V[Param(1, b)]                       # leading term survives


def test_parameter_field_sign_matters(cfg223):
    assert not check_tangency(cfg223, T_param(cfg223, 1, (0, 1), verbatim=True)).ok


def test_hat_alpha_has_no_direction(cfg223):
    with pytest.raises(ConfigError):
        T_param(cfg223, 1, (0, 3))


def test_log_fields(log112):
    for q in range(2):
        assert check_tangency(log112, T_wq(log112, 1, q), "ModuloQ").ok
    frame = assemble_frame(log112)
    assert frame.choices["T_wq_base[q=0]"] == "logw_basis"


def test_w_basis_candidate_leaves_residue(log112):
    label, cand = T_wq_candidates(log112, 1, 0)[0]
    assert label == "w_basis"
    assert not check_tangency(log112, cand, "ModuloQ").ok


def test_log_fields_only_in_log_case(cfg212):
    with pytest.raises(WrongCase):
        T_wq(cfg212, 1, 0)


@pytest.mark.parametrize("cfg", [JetConfig(2, 1, (2,)), JetConfig(2, 2, (3,)),
                                 JetConfig(3, 1, (2, 2)), JetConfig(1, 1, (2,), "log"),
                                 JetConfig(2, 1, (2, 3), "log")])
def test_frame_size_is_expected_dimension(cfg):
    assert len(assemble_frame(cfg).fields) == expected_dimension(cfg)


def test_frame_counts(cfg223):
    counts = assemble_frame(cfg223).counts()
    assert counts == {"slanted": 3, "vertical": 3, "parameter": 6, "logarithmic": 0}


def test_frame_json_round_trip(cfg212):
    fr = assemble_frame(cfg212)
    back = FrameSpec.from_json(fr.to_json())
    assert [f.field for f in back.fields] == [f.field for f in fr.fields]
    assert back.cfg == fr.cfg
    assert len(fr.without("T_jq(j=1,q=0)").fields) == len(fr.fields) - 1


def test_other_chart():
    cfg = JetConfig(2, 2, (3,), chart=2)
    base = chart_one(cfg)
    assert cfg.hat_alpha == ((3, 0),)
    assert base.hat_alpha == ((0, 3),)
    fr = assemble_frame(cfg)
    assert any(f.label == "T_jq(j=2,q=0)" and f.family == "vertical" for f in fr.fields)
    assert len(fr.fields) == expected_dimension(cfg)
