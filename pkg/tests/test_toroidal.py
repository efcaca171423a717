import pytest

from qtoroidal.fock import VACUUM, FockVector, enumerate_basis
from qtoroidal.qscalar import ONE, q_pow, quantum_integer
from qtoroidal.toroidal import (
    CONVENTIONS,
    RELATION_IDS,
    PiConfig,
    RelationError,
    apply_h,
    display_exchange_check,
    gs16_convention_matrix,
    pi_h,
    pi_x,
    serre_quartic_smoke,
    verify_relation,
)
from qtoroidal.vertexop import x_component

vac = FockVector.vacuum()
small = enumerate_basis(1)


def test_pi_h_examples():
    assert pi_h(1, 1) == (q_pow(-0.5), -q_pow(0.5))
    assert pi_h(1, -1) == (q_pow(-0.5), -q_pow(0.5))
    assert pi_h(0, 1) == (-q_pow(-0.5), -q_pow(0.5))


def test_pi_h_rejects_bad_input():
    with pytest.raises(RelationError, match="index out of"):
        pi_h(2, 1)
    with pytest.raises(RelationError):
        pi_h(1, 2)


def test_pi_x_images():
    v = FockVector.basis(enumerate_basis(2)[3])
    for n in range(-2, 3):
        assert pi_x(1, 1)(n, v) == x_component(0, 1, 1, n, v)
        assert pi_x(1, -1)(n, v) == x_component(1, 0, 1, n, v)
        flip = -ONE if n % 2 else ONE
        assert pi_x(0, -1)(n, v) == x_component(1, 0, -1, n, v).scale(flip)
        assert pi_x(0, -1, PiConfig(flip=False))(n, v) == x_component(1, 0, -1, n, v)


def test_config_validation():
    with pytest.raises(RelationError):
        PiConfig(uv="sideways")
    with pytest.raises(RelationError):
        PiConfig(phi="other")
    with pytest.raises(RelationError):
        PiConfig(central_charge=2)
    assert len(CONVENTIONS) == 4
    assert PiConfig().label() == "uv=asWritten,flip=on,phi=uv"


def test_h_bracket_value():
    for s in enumerate_basis(3):
        v = FockVector.basis(s)
        lhs = apply_h(1, 1, apply_h(1, -1, v)) - apply_h(1, -1, apply_h(1, 1, v))
        assert lhs == v.scale((q_pow(1) + q_pow(-1)) / 2)


def test_r2_value_at_m1():
    lhs = apply_h(1, 1, apply_h(0, -1, vac)) - apply_h(0, -1, apply_h(1, 1, vac))
    assert lhs == vac.scale((q_pow(1) - q_pow(-1)) / 2)


def test_r3_example_on_vacuum():
    x = pi_x(1, 1)
    c = -quantum_integer(2) * q_pow(-0.5)
    for n in range(-3, 4):
        lhs = apply_h(1, 1, x(n, vac)) - x(n, apply_h(1, 1, vac))
        assert lhs == x(n + 1, vac).scale(c)


@pytest.mark.parametrize("rel", ["R1", "R2", "R3", "R4", "R5"])
def test_heisenberg_type_relations_small(rel):
    rep = verify_relation(rel, {"m": 3}, enumerate_basis(2), 2)
    assert rep.passed, rep.mismatches[:2]
    assert rep.cells > 0


def test_unknown_relation_and_parameter():
    with pytest.raises(RelationError):
        verify_relation("R9", {}, [VACUUM])
    with pytest.raises(RelationError):
        verify_relation("R1", {"bogus": 1}, [VACUUM])
    with pytest.raises(RelationError):
        verify_relation("R1", {}, [])
    with pytest.raises(RelationError, match="index out of"):
        verify_relation("R3", {"i": 3}, [VACUUM])
    assert "S4" in RELATION_IDS and "GS16" in RELATION_IDS


@pytest.mark.parametrize("rel", ["GS12", "GS13", "GS14", "GS15"])
def test_generating_series_with_heisenberg_phi(rel):
    rep = verify_relation(rel, {}, small, 3, PiConfig(phi="heisenberg"))
    assert rep.passed, rep.mismatches[:2]


def test_gs14_literal_uv_route_fails():
    # with phi taken from u_01 the exchange factor comes out inverted
    assert not verify_relation("GS14", {}, small, 3).passed


def test_gs14_display_factor():
    assert display_exchange_check(small, 3).passed


def test_gs16_convention_matrix():
    rep = gs16_convention_matrix(small, 2)
    assert rep.passed
    assert rep.notes["passing"] == ["uv=asWritten,flip=on,phi=uv"]
    assert len(rep.notes["failing"]) == 3


def test_r6_printed_fails_series_form_passes():
    assert not verify_relation("R6", {}, small, 3).passed
    assert verify_relation("R6", {"form": "series"}, small, 3).passed


def test_s1_failure_is_a_delta_at_minus_one():
    rep = verify_relation("S1", {}, small, 3)
    assert not rep.passed
    assert set(rep.notes["difference_support"].values()) == {"delta(-w/z)"}


def test_s3_passes():
    assert verify_relation("S3", {}, small, 3).passed


def test_quartic_serre_on_vacuum():
    assert serre_quartic_smoke(2, 1).passed
    assert serre_quartic_smoke(2, -1).passed
    with pytest.raises(RelationError):
        serre_quartic_smoke(2, 1, 1, 1)
