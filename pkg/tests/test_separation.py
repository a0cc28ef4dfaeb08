import math

import pytest

from gsbcast import (
    EXAMPLE_CHANNEL,
    BroadcastChannel,
    RateVector,
    capacity_lhs,
    capacity_membership,
    distortions_from_rates,
    gap_certificate,
    genie_p2p_check,
    genie_rates,
    genie_report,
    inner_lhs,
    inner_membership_via_rates,
    membership,
    INNER,
    rates_from_distortions,
)
from gsbcast.errors import DimensionMismatch, ModePreconditionFailed, NegativeRate

LN2 = math.log(2)


def test_rates_from_distortions():
    r = rates_from_distortions(2.0, [0.25, 0.01])
    assert r.r == pytest.approx((math.log(4) / 4, math.log(25) / 4), rel=1e-15)
    assert r.bits[0] == pytest.approx(0.5, rel=1e-15)
    assert rates_from_distortions(1.0, [1.0, 1.0]).r == (0.0, 0.0)


def test_round_trip():
    d = (0.5, 0.125, 0.01)
    back = distortions_from_rates(1.5, rates_from_distortions(1.5, d))
    assert back.d == pytest.approx(d, rel=1e-14)


def test_capacity_matches_inner():
    d = (0.25, 0.01)
    assert capacity_lhs(EXAMPLE_CHANNEL, rates_from_distortions(2.0, d)) == pytest.approx(28.0, rel=1e-14)
    assert inner_membership_via_rates(EXAMPLE_CHANNEL, d).member
    assert inner_membership_via_rates(EXAMPLE_CHANNEL, d).lhs == pytest.approx(inner_lhs(EXAMPLE_CHANNEL, d), rel=1e-14)


def test_capacity_zero_rates():
    assert capacity_lhs(EXAMPLE_CHANNEL, [0.0, 0.0]) == 10.0
    assert capacity_membership(EXAMPLE_CHANNEL, [0.0, 0.0]).slack == 50.0


def test_rate_vector_validation():
    with pytest.raises(NegativeRate):
        RateVector((0.1, -0.2))
    with pytest.raises(DimensionMismatch):
        capacity_lhs(EXAMPLE_CHANNEL, [0.1])
    assert RateVector.from_bits([1.0]).r == (LN2,)
    assert RateVector((LN2,)).to_dict() == {"nats": [LN2], "bits": [1.0]}


def test_genie_example_channel():
    bits = genie_rates(EXAMPLE_CHANNEL).bits
    assert bits[0] == pytest.approx(0.5 * math.log2(6) - 0.5, abs=1e-12)
    assert bits[0] == pytest.approx(0.79248, abs=1e-5)
    # C_2 - C_1 - 1/2 = log2(51/6)/2 - 1/2
    assert bits[1] == pytest.approx(0.5 * math.log2(51 / 6) - 0.5, abs=1e-12)
    assert bits[1] == pytest.approx(1.0437314206, abs=1e-9)


def test_genie_clips_at_zero():
    ch = BroadcastChannel((1.0,), 0.5, 1.0)
    assert genie_rates(ch).r == (0.0,)
    assert genie_p2p_check(ch)[0] > 0


def test_genie_residuals_telescoping():
    assert genie_p2p_check(EXAMPLE_CHANNEL) == pytest.approx((0.0, 0.0), abs=1e-12)


def test_genie_report():
    rep = genie_report(EXAMPLE_CHANNEL)
    assert rep.p2p_ok == (True, True)
    assert rep.capacity.member
    assert set(rep.to_dict()) == {"rates_bits", "rates_nats", "p2p_residuals_bits", "p2p_ok", "capacity"}


def test_gap_pow2_example():
    cert = gap_certificate(EXAMPLE_CHANNEL, [0.5, 0.2], "pow2")
    assert cert.scaled == (1.0, 0.8) and cert.factors == (2.0, 4.0)
    assert cert.valid and cert.inner.member and not cert.requires_relaxed
    out = cert.to_dict()
    assert {"input", "scaled", "factors", "inner_slack", "mode"} <= set(out)


def test_gap_pow2_needs_relaxed():
    cert = gap_certificate(EXAMPLE_CHANNEL, [0.2, 0.15], "pow2")
    assert cert.requires_relaxed and not cert.valid and cert.inner is None


def test_gap_kfactor():
    cert = gap_certificate(EXAMPLE_CHANNEL, [0.3, 0.1], "Kfactor")
    assert cert.scaled == pytest.approx((0.6, 0.2)) and cert.inner.member
    cert = gap_certificate(EXAMPLE_CHANNEL, [0.7, 0.01], "Kfactor")
    assert cert.scaled == (1.0, 0.02)


def test_gap_relaxed():
    cert = gap_certificate(EXAMPLE_CHANNEL, [0.1, 0.04], "relaxed")
    assert cert.scaled == pytest.approx((0.2, 0.16))
    assert cert.inner.member


def test_gap_preconditions():
    with pytest.raises(ModePreconditionFailed):
        gap_certificate(EXAMPLE_CHANNEL, [0.001, 0.0001], "pow2")
    with pytest.raises(ModePreconditionFailed):
        gap_certificate(EXAMPLE_CHANNEL, [0.001, 0.0001], "Kfactor")
    with pytest.raises(ModePreconditionFailed):
        gap_certificate(EXAMPLE_CHANNEL, [0.001, 0.0001], "relaxed")
    with pytest.raises(ValueError):
        gap_certificate(EXAMPLE_CHANNEL, [0.5, 0.2], "triple")


def test_gap_scaled_point_is_achievable():
    # an outer-region point scaled by its certificate lands inside the inner region
    for d in ([0.05, 0.002], [0.03, 0.001], [0.2, 0.003]):
        for mode in ("Kfactor", "relaxed"):
            try:
                cert = gap_certificate(EXAMPLE_CHANNEL, d, mode)
            except ModePreconditionFailed:
                continue
            assert membership(INNER, EXAMPLE_CHANNEL, cert.scaled).member
