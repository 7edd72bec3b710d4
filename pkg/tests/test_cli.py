import inspect
import json
import math
from pathlib import Path

import pytest

import rfsense.dataset
import rfsense.fieldmetrics
import rfsense.linkbudget
import rfsense.quantities
import rfsense.radar
import rfsense.radiometry
import rfsense.rydberg
from rfsense.cli import OPERATION_MAP, build_parser, format_number, main

GOLDEN_DIR = Path(__file__).parent / "golden"

BUDGET_ARGS = [
    "budget", "--tx-power", "20dbw", "--tx-gain", "45dbi",
    "--tx-feeder-loss", "2db", "--loss", "fsl=206.5db", "--loss", "atm=2db",
    "--loss", "rain=3db", "--loss", "other=1db", "--rx-gain", "50dbi",
    "--antenna-temp", "100", "--receiver-temp", "100",
    "--feeder-loss-linear", "1.5", "--data-rate", "1e8",
    "--distance", "3.6e7m", "--frequency", "20ghz",
]
RANGES_ARGS = ["dataset-ranges", "--format", "csv"]
ENHANCE_ARGS = [
    "enhance", "--f0", "8.4ghz", "--signal-bandwidth", "1mhz",
    "--rf-efficiency", "0.8", "--mode-volume", "1e-5", "--tsys", "20",
    "--diameter", "34m", "--rho2", "1", "--sensor-nef", "1e-7",
]


@pytest.fixture(autouse=True)
def clean_impedance_env(monkeypatch):
    monkeypatch.delenv("RFSENSE_ETA0_OHMS", raising=False)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNumberFormatting:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (123.456789, "123.457"),
            (0.001, "0.001"),
            (0.0009999, "9.99900e-04"),
            (999999.4, "999999"),
            (1e6, "1.00000e+06"),
            (6.301404134174183e-07, "6.30140e-07"),
            (-42.5, "-42.5"),
        ],
    )
    def test_fixed_formatting(self, value, expected):
        assert format_number(value) == expected


class TestGoldenFiles:
    @pytest.mark.parametrize(
        "argv,golden",
        [
            (BUDGET_ARGS, "budget.json"),
            (RANGES_ARGS, "dataset_ranges.csv"),
            (ENHANCE_ARGS, "enhance.json"),
        ],
        ids=["budget", "dataset-ranges", "enhance"],
    )
    def test_byte_identical_across_runs_and_matches_golden(self, capsys, argv, golden):
        code1, out1, _ = run(capsys, argv)
        code2, out2, _ = run(capsys, argv)
        assert code1 == code2 == 0
        assert out1.encode() == out2.encode()
        assert out1.encode() == (GOLDEN_DIR / golden).read_bytes()

    def test_help_matches_golden(self, capsys):
        parser = build_parser()
        chunks = [parser.format_help()]
        for name in OPERATION_MAP:
            code, out, _ = run(capsys, [name, "--help"])
            assert code == 0
            chunks.append(out)
        combined = ("\n" + "=" * 80 + "\n").join(chunks)
        assert combined.encode() == (GOLDEN_DIR / "help.txt").read_bytes()

    def test_every_flag_help_mentions_units_or_kind(self):
        # Numeric flags must state their unit (or explicit dimensionlessness).
        parser = build_parser()
        unit_words = (
            "kelvin", "unit suffix", "db", "watt", "m^2", "m^3", "bit/s",
            "v/m", "rad/s", "dimensionless", "linear", "factor", "count",
            "significant digits", "tolerance", "constant", "cosine",
            "efficiency", "coupling", "quality", "c*m", "e*a_0",
        )
        for action in parser._subparsers._group_actions[0].choices.values():
            for flag_action in action._actions:
                if flag_action.type is None:
                    continue  # paths, store_true, choices
                text = (flag_action.help or "").lower()
                assert any(word in text for word in unit_words), (
                    f"flag {flag_action.option_strings} lacks a unit in help: {text!r}"
                )


class TestBudgetCommand:
    def test_reference_report_values(self, capsys):
        code, out, _ = run(capsys, BUDGET_ARGS)
        assert code == 0
        report = json.loads(out)
        assert report["eirp_dbw"] == 63
        assert report["total_loss_db"] == 212.5
        assert report["system_temperature_k"] == 395
        assert abs(report["g_over_t_db_per_k"] - 24.03) < 0.01
        assert abs(report["c_over_n0_dbhz"] - 103.13) < 0.01
        assert abs(report["eb_over_n0_db"] - 23.13) < 0.01
        assert abs(report["margins_db"]["qpsk_fec_1_2"] - 19.13) < 0.01
        assert report["closes"]["qpsk_fec_1_2"] is True
        assert report["fsl_check"]["flagged"] is True
        assert abs(report["fsl_check"]["recomputed_db"] - 209.6) < 0.1

    def test_budget_from_json_document(self, capsys, tmp_path):
        document = {
            "tx_power_dbw": 20.0,
            "tx_gain_dbi": 45.0,
            "tx_feeder_loss_db": 2.0,
            "losses_db": {"fsl": 206.5, "atm": 2.0, "rain": 3.0, "other": 1.0},
            "rx_gain_dbi": 50.0,
            "antenna_temp_k": 100.0,
            "receiver_temp_k": 100.0,
            "feeder_loss_linear": 1.5,
            "data_rate_bps": 1e8,
        }
        path = tmp_path / "budget.json"
        path.write_text(json.dumps(document))
        code, out, _ = run(capsys, ["budget", "--input", str(path)])
        assert code == 0
        report = json.loads(out)
        assert abs(report["eb_over_n0_db"] - 23.13) < 0.01

    def test_malformed_budget_document_is_schema_error(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text(json.dumps({"tx_power_dbw": 20.0}))
        code, _, err = run(capsys, ["budget", "--input", str(path)])
        assert code == 3
        assert err.startswith("schema-error:")
        assert "\n" not in err.strip()

    def test_missing_flags_is_domain_error(self, capsys):
        code, _, err = run(capsys, ["budget", "--tx-power", "20dbw"])
        assert code == 2
        assert err.startswith("domain-error:")

    def test_dbm_suffix_converts_to_dbw(self, capsys):
        args = list(BUDGET_ARGS)
        args[args.index("20dbw")] = "50dbm"
        code, out, _ = run(capsys, args)
        assert code == 0
        assert json.loads(out)["eirp_dbw"] == 63


class TestExitCodesAndValidation:
    def test_non_positive_bandwidth_names_the_flag(self, capsys):
        code, _, err = run(capsys, [
            "nedt", "--antenna-temp", "250", "--receiver-temp", "600",
            "--bandwidth", "0hz", "--integration-time", "15ms",
        ])
        assert code == 2
        assert err.startswith("domain-error:")
        assert "--bandwidth" in err

    def test_missing_unit_suffix_rejected(self, capsys):
        code, _, err = run(capsys, [
            "nedt", "--antenna-temp", "250", "--receiver-temp", "600",
            "--bandwidth", "1e9", "--integration-time", "15ms",
        ])
        assert code == 2

    def test_unknown_flag_rejected(self, capsys):
        code, _, _ = run(capsys, ["nedt", "--frobnicate", "1"])
        assert code == 2

    def test_unknown_db_reference_rejected(self, capsys):
        args = list(BUDGET_ARGS)
        args[args.index("20dbw")] = "20dbi"
        code, _, _ = run(capsys, args)
        assert code == 2

    def test_dataset_schema_error_exit_code(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("instrument,mission\nx,y\n")
        code, _, err = run(capsys, ["dataset-derive", "--input", str(path)])
        assert code == 3
        assert err.startswith("schema-error:")

    def test_missing_input_file_is_schema_error(self, capsys, tmp_path):
        code, _, err = run(capsys, [
            "dataset-derive", "--input", str(tmp_path / "nope.csv")
        ])
        assert code == 3

    def test_no_subcommand_exits_nonzero(self, capsys):
        assert main([]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0


class TestSubcommands:
    def test_nedt_forward(self, capsys):
        code, out, _ = run(capsys, [
            "nedt", "--antenna-temp", "250", "--receiver-temp", "600",
            "--bandwidth", "1ghz", "--integration-time", "15ms",
            "--gain-stability", "1.5e-5",
        ])
        assert code == 0
        report = json.loads(out)
        assert abs(report["nedt_k"] - 0.22) < 0.005
        assert report["system_temperature_k"] == 850

    def test_nedt_inverse(self, capsys):
        code, out, _ = run(capsys, [
            "nedt", "--nedt", "0.22", "--bandwidth", "1ghz",
            "--integration-time", "15ms",
        ])
        assert code == 0
        assert abs(json.loads(out)["system_temperature_k"] - 852.056) < 0.01

    def test_calibrate(self, capsys):
        k_b = 1.380649e-23
        gain, t_rx, bandwidth = 1e10, 600.0, 1e9

        def power(t_a):
            return gain * k_b * bandwidth * (t_a + t_rx)

        code, out, _ = run(capsys, [
            "calibrate", "--bandwidth", "1ghz",
            "--point", f"77:{power(77.0)!r}",
            "--point", f"300:{power(300.0)!r}",
        ])
        assert code == 0
        report = json.loads(out)
        assert abs(report["gain"] / gain - 1.0) < 1e-9
        assert abs(report["receiver_temperature_k"] - t_rx) < 1e-6

    def test_radar_chain(self, capsys):
        code, out, _ = run(capsys, [
            "radar", "--tx-power", "1e3w", "--tx-gain", "1e3lin",
            "--rx-gain", "1e3lin", "--wavelength", "0.03m",
            "--sigma", "1m2", "--range", "100km",
            "--tsys", "290", "--bandwidth", "1mhz",
        ])
        assert code == 0
        report = json.loads(out)
        assert abs(report["received_power_w"] / 4.5353720296686784e-18 - 1.0) < 1e-5
        assert abs(report["snr"] / 0.0011327436513849092 - 1.0) < 1e-5
        assert abs(report["range_resolution_m"] - 149.896229) < 1e-3

    def test_radar_nesz_mode(self, capsys):
        code, out, _ = run(capsys, [
            "radar", "--tx-power", "4.3e3w", "--tx-gain", "44.5dbi",
            "--rx-gain", "44.5dbi", "--frequency", "5.405ghz",
            "--sigma0", "0.05", "--cell-area", "20m2", "--range", "700km",
            "--tsys", "606", "--bandwidth", "100mhz",
            "--processing-gain", "5000",
        ])
        assert code == 0
        report = json.loads(out)
        assert report["nesz"] > 0
        # Values pass through 6-significant-digit formatting.
        assert abs(report["nesz"] * report["snr"] - 0.05) < 0.05 * 1e-4
        assert abs(report["nesz_at_unit_snr"] / report["nesz"] - 1.0) < 1e-4

    def test_nef_subcommand(self, capsys):
        code, out, _ = run(capsys, [
            "nef", "--tsys", "23", "--aperture", "2660m2", "--rho2", "1",
        ])
        assert code == 0
        report = json.loads(out)
        assert abs(report["nef_v_m_sqrthz"] / 6.706254405772384e-12 - 1.0) < 1e-5

    def test_nef_coherence_default_coupling(self, capsys):
        _, matched, _ = run(capsys, ["nef", "--tsys", "23", "--aperture", "2660m2"])
        _, single_pol, _ = run(capsys, [
            "nef", "--tsys", "23", "--aperture", "2660m2",
            "--coherence", "incoherent",
        ])
        ratio = (json.loads(single_pol)["nef_v_m_sqrthz"]
                 / json.loads(matched)["nef_v_m_sqrthz"])
        assert abs(ratio - math.sqrt(2.0)) < 1e-5
        assert json.loads(single_pol)["rho2"] == 0.5

    def test_convert_subcommand(self, capsys):
        code, out, _ = run(capsys, [
            "convert", "--db-to-linear", "3.0103", "--wavelength-of", "20ghz",
            "--noise-figure", "10db",
            "--nef", "7.9e-6", "--gain", "1.5lin", "--frequency", "96ghz",
            "--rho2", "0.5",
        ])
        assert code == 0
        report = json.loads(out)
        assert abs(report["linear_ratio"] - 2.0) < 1e-6
        assert abs(report["wavelength_m"] / 0.0149896229 - 1.0) < 1e-5
        assert report["receiver_temperature_k"] == 2610
        assert abs(report["system_temperature_k"] - 6983.78) < 0.01

    def test_rydberg_subcommand(self, capsys):
        code, out, _ = run(capsys, [
            "rydberg", "--dipole-ea0", "1000", "--atoms", "1e6",
            "--coherence-time", "10us", "--field", "0.01",
            "--probe-power", "1mw", "--probe-frequency", "384.349thz",
        ])
        assert code == 0
        report = json.loads(out)
        assert abs(report["qpn_nef_v_m_sqrthz"] / 2.471408310563018e-08 - 1.0) < 1e-5
        assert abs(report["rabi_rad_s"] / 803961.9 - 1.0) < 1e-4
        assert report["photon_shot_noise_w_sqrthz"] > 0

    def test_rydberg_stark_mode(self, capsys):
        code, out, _ = run(capsys, [
            "rydberg", "--rabi", "1e5", "--detuning", "1e7",
        ])
        assert code == 0
        assert abs(json.loads(out)["ac_stark_shift_rad_s"] - 250.0) < 1e-9

    def test_dataset_derive_reports_known_mismatches(self, capsys):
        code, out, _ = run(capsys, ["dataset-derive"])
        assert code == 0
        report = json.loads(out)
        assert report["record_count"] == 21
        mismatch_rows = {d["instrument"] for d in report["diagnostics"]}
        assert "Odin-SMR 557 GHz" in mismatch_rows
        assert "SMOS MIRAS element (single LICEF)" in mismatch_rows
        assert len(report["diagnostics"]) == 6

    def test_dataset_ranges_no_rounding(self, capsys):
        code, out, _ = run(capsys, ["dataset-ranges", "--no-rounding"])
        assert code == 0
        deep_space = json.loads(out)["ranges"][0]
        assert abs(deep_space["t_sys_max_k"] - 27.6) < 1e-9

    def test_dataset_plotdata(self, capsys):
        code, out, _ = run(capsys, [
            "dataset-plotdata", "--thermal-line", "2.4e-8",
            "--marker", "probe:5mhz:1e-8",
        ])
        assert code == 0
        document = json.loads(out)
        assert len(document["rectangles"]) == 11
        names = [m["name"] for m in document["markers"]]
        assert names == ["probe", "mw-optical-converter"]
        assert document["reference_lines"][0]["e_field"] == 2.4e-8

    def test_output_to_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, ENHANCE_ARGS + ["--output", str(target)])
        assert code == 0
        assert out == ""
        assert target.read_bytes() == (GOLDEN_DIR / "enhance.json").read_bytes()

    def test_csv_format_of_flat_report(self, capsys):
        code, out, _ = run(capsys, [
            "nef", "--tsys", "23", "--aperture", "2660m2", "--format", "csv",
        ])
        assert code == 0
        assert out.startswith("key,value\r\n")
        assert "nef_v_m_sqrthz" in out

    def test_text_format(self, capsys):
        code, out, _ = run(capsys, [
            "nef", "--tsys", "23", "--aperture", "2660m2", "--format", "text",
        ])
        assert code == 0
        assert "nef_v_m_sqrthz = " in out


class TestOperationCoverage:
    MODULES = {
        "quantities": rfsense.quantities,
        "radiometry": rfsense.radiometry,
        "radar": rfsense.radar,
        "linkbudget": rfsense.linkbudget,
        "fieldmetrics": rfsense.fieldmetrics,
        "rydberg": rfsense.rydberg,
        "dataset": rfsense.dataset,
    }
    # Configuration accessors, not engine operations.
    NON_OPERATIONS = {"quantities.default_eta0"}

    def test_every_operation_reachable_from_exactly_one_subcommand(self):
        operations = set()
        for module_name, module in self.MODULES.items():
            for symbol in module.__all__:
                if inspect.isfunction(getattr(module, symbol)):
                    operations.add(f"{module_name}.{symbol}")
        operations -= self.NON_OPERATIONS

        mapped = [op for ops in OPERATION_MAP.values() for op in ops]
        assert len(mapped) == len(set(mapped)), "an operation is mapped twice"
        assert set(mapped) == operations

    def test_subcommand_names_match_parser(self):
        parser = build_parser()
        choices = parser._subparsers._group_actions[0].choices
        assert set(choices) == set(OPERATION_MAP)
