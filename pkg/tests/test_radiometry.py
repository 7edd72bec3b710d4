import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rfsense.errors import DomainError, SingularFitError
from rfsense.quantities import CODATA
from rfsense.radiometry import (
    CalibrationPoint,
    ReceiverNoiseModel,
    calibrate_hot_cold,
    nedt,
    radiometer_output_power,
    tsys_from_nedt,
)

K_B = CODATA.boltzmann

# Frozen oracles (direct evaluation).
NEDT_183GHZ_CHANNEL = 0.21983909835756393   # 850*sqrt(1/1.5e7 + (1.5e-5)^2)
NEDT_NO_GAIN_TERM = 0.21946905628508695     # 850/sqrt(1.5e7)
THERMAL_FLOOR_290K_1MHZ = 4.0038821e-15     # k_B*290*1e6
OUTPUT_POWER_HIGH_GAIN = 0.117355165        # 1e10*k_B*850*1e9
TSYS_FROM_TABLE_NEDT = 852.0563361656317    # 0.22*sqrt(1.5e7)


def reference_channel(gain_stability=1.5e-5):
    return ReceiverNoiseModel(
        antenna_temperature_k=250.0,
        receiver_temperature_k=600.0,
        bandwidth_hz=1e9,
        integration_time_s=15e-3,
        gain_stability=gain_stability,
    )


class TestNedt:
    def test_183ghz_channel(self):
        assert nedt(reference_channel()) == pytest.approx(0.22, abs=0.005)
        assert nedt(reference_channel()) == pytest.approx(NEDT_183GHZ_CHANNEL, rel=1e-12)

    def test_without_gain_fluctuation(self):
        assert nedt(reference_channel(0.0)) == pytest.approx(NEDT_NO_GAIN_TERM, rel=1e-12)

    def test_zero_system_temperature(self):
        model = ReceiverNoiseModel(0.0, 0.0, 1e9, 15e-3, 1e-5)
        assert nedt(model) == 0.0

    def test_system_temperature_accessor(self):
        assert reference_channel().system_temperature_k == 850.0

    def test_invalid_model_rejected(self):
        with pytest.raises(DomainError):
            ReceiverNoiseModel(250.0, 600.0, 0.0, 15e-3)
        with pytest.raises(DomainError):
            ReceiverNoiseModel(250.0, 600.0, 1e9, 0.0)
        with pytest.raises(DomainError):
            ReceiverNoiseModel(-1.0, 600.0, 1e9, 15e-3)

    @settings(max_examples=200)
    @given(
        st.floats(min_value=1.0, max_value=1e4),
        st.floats(min_value=1e3, max_value=1e10),
        st.floats(min_value=1e-6, max_value=1e3),
        st.floats(min_value=1.5, max_value=10.0),
    )
    def test_monotone_in_bandwidth_and_time(self, t_sys, bandwidth, tau, factor):
        base = ReceiverNoiseModel(t_sys, 0.0, bandwidth, tau, 0.0)
        wider = ReceiverNoiseModel(t_sys, 0.0, bandwidth * factor, tau, 0.0)
        longer = ReceiverNoiseModel(t_sys, 0.0, bandwidth, tau * factor, 0.0)
        assert nedt(wider) < nedt(base)
        assert nedt(longer) < nedt(base)

    def test_gain_fluctuation_floor_at_long_integration(self):
        model = ReceiverNoiseModel(250.0, 600.0, 1e9, 1e12, 1.5e-5)
        floor = model.system_temperature_k * model.gain_stability
        assert nedt(model) == pytest.approx(floor, rel=1e-3)


class TestOutputPower:
    def test_zero_temperature(self):
        assert radiometer_output_power(1.0, 0.0, 0.0, 1e9) == 0.0

    def test_thermal_floor(self):
        assert radiometer_output_power(1.0, 290.0, 0.0, 1e6) == pytest.approx(
            THERMAL_FLOOR_290K_1MHZ, rel=1e-9
        )

    def test_high_gain_channel(self):
        assert radiometer_output_power(1e10, 250.0, 600.0, 1e9) == pytest.approx(
            OUTPUT_POWER_HIGH_GAIN, rel=1e-9
        )

    @pytest.mark.parametrize("gain,bandwidth", [(0.0, 1e9), (-1.0, 1e9), (1.0, 0.0)])
    def test_non_positive_rejected(self, gain, bandwidth):
        with pytest.raises(DomainError):
            radiometer_output_power(gain, 250.0, 600.0, bandwidth)

    @settings(max_examples=200)
    @given(
        st.floats(min_value=1.0, max_value=1e12),
        st.floats(min_value=1.0, max_value=1e4),
        st.floats(min_value=1e3, max_value=1e10),
        st.floats(min_value=1.01, max_value=100.0),
    )
    def test_linear_in_each_argument(self, gain, t_sys, bandwidth, s):
        base = radiometer_output_power(gain, t_sys, 0.0, bandwidth)
        assert radiometer_output_power(s * gain, t_sys, 0.0, bandwidth) == pytest.approx(
            s * base, rel=1e-12
        )
        assert radiometer_output_power(gain, s * t_sys, 0.0, bandwidth) == pytest.approx(
            s * base, rel=1e-12
        )
        assert radiometer_output_power(gain, t_sys, 0.0, s * bandwidth) == pytest.approx(
            s * base, rel=1e-12
        )


def synthesize_points(gain, t_rx, loads, bandwidth):
    return [
        CalibrationPoint(t_a, gain * K_B * bandwidth * (t_a + t_rx))
        for t_a in loads
    ]


def normal_equations_fit(points, bandwidth):
    # Independent oracle: closed-form normal equations for the line fit,
    # kept deliberately distinct from the library's least-squares route.
    n = len(points)
    sx = sum(p.antenna_temperature_k for p in points)
    sy = sum(p.output_power_w for p in points)
    sxx = sum(p.antenna_temperature_k**2 for p in points)
    sxy = sum(p.antenna_temperature_k * p.output_power_w for p in points)
    slope = (n * sxy - sx * sy) / (n * sxx - sx**2)
    intercept = (sy - slope * sx) / n
    return slope / (K_B * bandwidth), intercept / slope


class TestCalibration:
    def test_two_point_exact_inversion(self):
        points = synthesize_points(1e10, 600.0, [77.0, 300.0], 1e9)
        result = calibrate_hot_cold(points, 1e9)
        assert result.gain == pytest.approx(1e10, rel=1e-9)
        assert result.receiver_temperature_k == pytest.approx(600.0, rel=1e-9)
        assert result.warnings == ()

    def test_five_point_fit_matches_normal_equations(self):
        loads = [4.0, 77.0, 150.0, 220.0, 300.0]
        points = synthesize_points(2e9, 150.0, loads, 1e8)
        result = calibrate_hot_cold(points, 1e8)
        oracle_gain, oracle_trx = normal_equations_fit(points, 1e8)
        assert result.gain == pytest.approx(oracle_gain, rel=1e-9)
        assert result.receiver_temperature_k == pytest.approx(oracle_trx, rel=1e-9)
        assert result.gain == pytest.approx(2e9, rel=1e-9)
        assert result.receiver_temperature_k == pytest.approx(150.0, rel=1e-9)

    def test_identical_loads_rejected(self):
        points = [
            CalibrationPoint(290.0, 1e-11),
            CalibrationPoint(290.0, 1.2e-11),
        ]
        with pytest.raises(SingularFitError):
            calibrate_hot_cold(points, 1e9)

    def test_single_point_rejected(self):
        with pytest.raises(SingularFitError):
            calibrate_hot_cold([CalibrationPoint(77.0, 1e-11)], 1e9)

    def test_negative_receiver_temperature_flagged_not_clamped(self):
        # Lines crossing zero power at positive T_A imply a negative T_Rx.
        gain, bandwidth = 1e9, 1e8
        points = [
            CalibrationPoint(100.0, gain * K_B * bandwidth * (100.0 - 50.0)),
            CalibrationPoint(300.0, gain * K_B * bandwidth * (300.0 - 50.0)),
        ]
        result = calibrate_hot_cold(points, bandwidth)
        assert result.receiver_temperature_k == pytest.approx(-50.0, rel=1e-9)
        assert result.warnings

    @settings(max_examples=250)
    @given(
        st.floats(min_value=1e3, max_value=1e12),
        st.floats(min_value=0.1, max_value=1e4),
        st.floats(min_value=1e4, max_value=1e10),
        st.lists(
            st.floats(min_value=1.0, max_value=1000.0),
            min_size=2,
            max_size=8,
            unique=True,
        ),
    )
    def test_recovers_parameters_on_noiseless_data(self, gain, t_rx, bandwidth, loads):
        # Nearly coincident loads make the intercept ill-conditioned; a real
        # hot/cold calibration always separates them.
        assume(max(loads) - min(loads) >= 50.0)
        points = synthesize_points(gain, t_rx, loads, bandwidth)
        result = calibrate_hot_cold(points, bandwidth)
        assert result.gain == pytest.approx(gain, rel=1e-9)
        assert result.receiver_temperature_k == pytest.approx(t_rx, rel=1e-9, abs=1e-9 * t_rx)


class TestTsysFromNedt:
    def test_table_inverse(self):
        t_sys = tsys_from_nedt(0.22, 1e9, 15e-3)
        assert t_sys == pytest.approx(TSYS_FROM_TABLE_NEDT, rel=1e-12)
        # Agrees with the 850 K channel that produced the 0.22 K figure.
        assert t_sys == pytest.approx(850.0, rel=0.003)

    def test_unit_radiometric_gain(self):
        assert tsys_from_nedt(3.7, 1e3, 1e-3) == pytest.approx(3.7, rel=1e-12)

    def test_sqrt_bandwidth_time(self):
        assert tsys_from_nedt(1.0, 1e6, 1.0) == pytest.approx(1000.0, rel=1e-12)

    @pytest.mark.parametrize(
        "args", [(0.0, 1e9, 1.0), (1.0, 0.0, 1.0), (1.0, 1e9, 0.0)]
    )
    def test_non_positive_rejected(self, args):
        with pytest.raises(DomainError):
            tsys_from_nedt(*args)

    def test_variant_with_gain_stability(self):
        # Full inverse including the instability term.
        model = reference_channel()
        measured = nedt(model)
        recovered = tsys_from_nedt(
            measured, model.bandwidth_hz, model.integration_time_s, model.gain_stability
        )
        assert recovered == pytest.approx(model.system_temperature_k, rel=1e-12)

    @settings(max_examples=250)
    @given(
        st.floats(min_value=1.0, max_value=1e4),
        st.floats(min_value=1e3, max_value=1e10),
        st.floats(min_value=1e-6, max_value=1e3),
    )
    def test_round_trip_with_nedt(self, t_sys, bandwidth, tau):
        model = ReceiverNoiseModel(t_sys, 0.0, bandwidth, tau, 0.0)
        assert tsys_from_nedt(nedt(model), bandwidth, tau) == pytest.approx(
            t_sys, rel=1e-12
        )
