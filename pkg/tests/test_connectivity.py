import math
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from connscale.channel import AntennaScheme, ChannelParams, gain_cdf_mrc
from connscale.connectivity import (
    ConnectionFunction,
    ConstantConnection,
    StepConnection,
    pair_conn_dc,
    pair_conn_mrc,
    pair_conn_mrc_step,
    pair_conn_rate,
    pair_conn_siso,
    rate_threshold,
)
from connscale.errors import ConfigError, ParameterError

EPS0 = sys.float_info.min


def test_siso_examples():
    p = ChannelParams(eta=2, epsilon=EPS0)
    assert pair_conn_siso(0.0, p) == 1.0
    assert pair_conn_siso(1.0, p) == pytest.approx(math.exp(-1), rel=1e-15)
    r = np.linspace(0, 10, 200)
    h = pair_conn_siso(r, p)
    assert np.all(np.diff(h) <= 0) and h[-1] < 1e-40


def test_dc_examples():
    p = ChannelParams(eta=2, epsilon=EPS0)
    assert pair_conn_dc(1.0, 2, 1, p) == pytest.approx(3 * math.exp(-2), rel=1e-13)
    assert pair_conn_dc(1.0, 2, 1, p) == pytest.approx(0.40601, abs=5e-6)
    assert pair_conn_dc(0.0, 3, 1, p) == 1.0
    r = np.linspace(0, 3, 50)
    assert np.allclose(pair_conn_dc(r, 1, 1, p), pair_conn_siso(r, p), rtol=1e-13, atol=1e-300)


def test_dc_zeta_enters_scale():
    # m=3 uses rate-1/2 orthogonal codes: SNR scaled by zeta/m = 2/3
    p = ChannelParams(eta=3, epsilon=1e-3, beta=2.0, threshold=1.5)
    H = ConnectionFunction(AntennaScheme.dc(3, 2), p)
    assert H.gain_scale == pytest.approx(1.5 * 2.0 * 3 / 2)
    assert ConnectionFunction(AntennaScheme.dc(2, 2), p).gain_scale == pytest.approx(1.5 * 2.0 * 2)


def test_mrc_exponential_case():
    p = ChannelParams(eta=2, epsilon=1e-6)
    cdf = gain_cdf_mrc(1, 1, 10_000, 0)
    r = np.linspace(0, 3, 400)
    assert np.max(np.abs(pair_conn_mrc(r, 1, 1, p, cdf) - pair_conn_siso(r, p))) < 0.02


def test_mrc_dominates_dc_at_two_by_two():
    p = ChannelParams(eta=2, epsilon=1e-6)
    cdf = gain_cdf_mrc(2, 2)
    r = np.linspace(0, 4, 300)
    assert np.all(pair_conn_mrc(r, 2, 2, p, cdf) >= pair_conn_dc(r, 2, 2, p) - 0.02)
    assert pair_conn_mrc(50.0, 2, 2, p, cdf) == 0.0


def test_mrc_cdf_mismatch_raises():
    p = ChannelParams(eta=2)
    with pytest.raises(ConfigError):
        pair_conn_mrc(1.0, 2, 3, p, gain_cdf_mrc(2, 2, 10_000, 0))


def test_step_examples():
    p = ChannelParams(eta=2)
    step = StepConnection(9, 9, p)
    assert step.cutoff == pytest.approx(6.0)
    assert pair_conn_mrc_step(5.9, 9, 9, p) == 1.0
    assert pair_conn_mrc_step(6.1, 9, 9, p) == 0.0
    assert pair_conn_mrc_step(0.0, 9, 9, p) == 1.0
    # m << n makes y ~ 0
    assert StepConnection(1, 10**8, ChannelParams(eta=4)).cutoff == pytest.approx(100.0, rel=1e-3)


def test_rate_metric():
    assert rate_threshold(1.0) == 1.0
    assert rate_threshold(1.0, 2) == 3.0
    with pytest.raises(ParameterError):
        rate_threshold(0.0)
    p = ChannelParams(eta=3, epsilon=1e-4, threshold=7.0)
    r = np.linspace(0, 2, 30)
    assert np.allclose(pair_conn_rate(r, AntennaScheme.siso(), p, 1.0),
                       pair_conn_siso(r, ChannelParams(eta=3, epsilon=1e-4, threshold=1.0)), rtol=1e-14)
    H = ConnectionFunction(AntennaScheme.dc(3, 2), p, "rate", 1.0)
    assert H.effective_threshold() == 3.0
    assert H.snr_equivalent().params.threshold == 3.0
    assert np.allclose(H(r), H.snr_equivalent()(r), rtol=1e-14)
    with pytest.raises(ParameterError):
        ConnectionFunction(AntennaScheme.siso(), p, "rate")


def test_constant_connection():
    c = ConstantConnection(0.3)
    assert c(1.0) == 0.3
    assert np.all(c(np.zeros(5)) == 0.3)
    with pytest.raises(ParameterError):
        ConstantConnection(1.5)


schemes = st.sampled_from([AntennaScheme.siso(), AntennaScheme.dc(2, 3), AntennaScheme.dc(4, 2),
                           AntennaScheme.bf(2, 2), AntennaScheme.bf(3, 1)])


@given(schemes, st.floats(2, 6), st.floats(0, 5), st.floats(0, 5))
def test_connection_functions_are_probabilities_and_nonincreasing(scheme, eta, r1, dr):
    H = ConnectionFunction(scheme, ChannelParams(eta=eta, epsilon=1e-3, beta=0.5))
    a, b = H(r1), H(r1 + dr)
    assert 0.0 <= b <= a <= 1.0


@given(st.floats(2, 6), st.floats(0.05, 20), st.floats(0, 3))
def test_more_power_never_hurts(eta, beta, r):
    weak = ConnectionFunction(AntennaScheme.dc(2, 2), ChannelParams(eta=eta, beta=2 * beta))
    strong = ConnectionFunction(AntennaScheme.dc(2, 2), ChannelParams(eta=eta, beta=beta))
    assert strong(r) >= weak(r)
