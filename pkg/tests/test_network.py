"""Channel-layer checks: validation, gain algebra, SINR."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from icpower import NetworkModel, PowerProfile, effective_gain, sinr
from icpower.network import power_tuple

from conftest import make_model


class TestNetworkModelValidation:
    def test_reference_model_builds(self, ref_model):
        assert ref_model.num_players == 2

    def test_gains_must_be_square(self):
        with pytest.raises(ValueError, match="square"):
            make_model(gains=((0.75, 0.5, 0.1), (0.25, 1.0, 0.1)))

    def test_needs_two_players(self):
        with pytest.raises(ValueError, match="at least 2"):
            make_model(gains=((1.0,),))

    def test_negative_cross_gain_rejected(self):
        with pytest.raises(ValueError, match=r"gains\[0\]\[1\] must be >= 0"):
            make_model(gains=((0.75, -0.5), (0.25, 1.0)))

    def test_zero_direct_gain_rejected(self):
        with pytest.raises(ValueError, match=r"gains\[1\]\[1\].*> 0"):
            make_model(gains=((0.75, 0.5), (0.25, 0.0)))

    @pytest.mark.parametrize("field,value,match", [
        ("noise_power", 0.0, "noise_power"),
        ("noise_power", -1.0, "noise_power"),
        ("processing_gain", 0.5, "processing_gain"),
        ("power_cap", 0.0, "power_cap"),
        ("packet_bits", 0, "packet_bits"),
        ("packet_bits", 2.5, "packet_bits"),
        ("rate_scale", 0.0, "rate_scale"),
    ])
    def test_scalar_field_validation(self, field, value, match):
        with pytest.raises(ValueError, match=match):
            make_model(**{field: value})

    def test_gain_matrix_round_trip(self, ref_model):
        mat = ref_model.gain_matrix()
        assert mat.shape == (2, 2)
        assert mat[0][1] == 0.5 and mat[1][0] == 0.25

    def test_gains_coerced_to_floats(self):
        model = make_model(gains=((1, 1), (1, 2)))
        assert model.gains == ((1.0, 1.0), (1.0, 2.0))


class TestPowerProfile:
    def test_negative_power_rejected(self):
        with pytest.raises(ValueError, match=r"powers\[1\] must be >= 0"):
            PowerProfile((1.0, -0.1))

    def test_normalized(self):
        assert PowerProfile((3.0, 1.0)).normalized(2.0) == (1.5, 0.5)

    def test_len(self):
        assert len(PowerProfile((1.0, 2.0, 3.0))) == 3

    def test_power_tuple_accepts_profile_list_array(self):
        expected = (1.0, 2.0)
        assert power_tuple(PowerProfile(expected), 2) == expected
        assert power_tuple([1, 2], 2) == expected
        assert power_tuple(np.array([1.0, 2.0]), 2) == expected

    def test_power_tuple_length_mismatch(self):
        with pytest.raises(ValueError, match="2 entries"):
            power_tuple((1.0, 2.0), 3)


class TestSinr:
    def test_effective_gain_hand_value(self, ref_model):
        # receiver 1: 4 * 0.75 / (1 + 0.5 * s2)
        mu = effective_gain(ref_model, (0.0, 2.0), 0)
        assert math.isclose(mu, 4 * 0.75 / (1 + 0.5 * 2.0), rel_tol=1e-15)

    def test_effective_gain_ignores_own_power(self, ref_model):
        low = effective_gain(ref_model, (0.1, 2.0), 0)
        high = effective_gain(ref_model, (5.0, 2.0), 0)
        assert low == high

    def test_sinr_formula(self, ref_model):
        s = (2.5, 1.5)
        expected = 4 * 1.0 * s[1] / (1 + 0.25 * s[0])
        assert math.isclose(sinr(ref_model, s, 1), expected, rel_tol=1e-15)

    def test_zero_power_zero_sinr(self, ref_model):
        assert sinr(ref_model, (0.0, 3.0), 0) == 0.0

    def test_bad_player_index(self, ref_model):
        with pytest.raises(IndexError, match="out of range"):
            effective_gain(ref_model, (1.0, 1.0), 2)

    def test_interference_lowers_sinr(self, ref_model):
        quiet = sinr(ref_model, (2.0, 0.0), 0)
        jammed = sinr(ref_model, (2.0, 4.0), 0)
        assert jammed < quiet

    @given(scale=st.floats(min_value=0.01, max_value=1e3),
           s1=st.floats(min_value=0.0, max_value=5.0),
           s2=st.floats(min_value=0.0, max_value=5.0))
    def test_sinr_invariant_under_joint_scaling(self, scale, s1, s2):
        base = make_model()
        scaled = make_model(noise_power=scale, power_cap=5.0 * scale)
        for k in range(2):
            assert math.isclose(
                sinr(base, (s1, s2), k),
                sinr(scaled, (s1 * scale, s2 * scale), k),
                rel_tol=1e-12, abs_tol=1e-12)
