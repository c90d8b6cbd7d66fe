import csv
import io

import pytest

from relaymimo.cli import ASYMPTOTE_HEADER, SWEEP_HEADER, main
from relaymimo.config import (PRESETS, ConfigError, parse_config,
                              parse_power, preset)

BASIC = """\
# Case I, small
schemes = mrc, zf, ns
case = I
E_t = 10db
P_r = 1lin
K = 2
N = 4, 8
trials = 20
seed = 3
"""


def write(tmp_path, text, name="exp.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def rows(text):
    return list(csv.reader(io.StringIO(
        "".join(l + "\n" for l in text.splitlines() if not l.startswith("#")))))


class TestPowerParsing:
    def test_db(self):
        assert parse_power("10db").linear == 10.0

    def test_lin(self):
        assert parse_power("1lin").linear == 1.0

    def test_case_insensitive(self):
        assert parse_power("20 dB").linear == pytest.approx(100.0)

    @pytest.mark.parametrize("bad", ["10", "db", "ten db", "10 w"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_power(bad)


class TestConfig:
    def test_basic(self):
        cfg = parse_config(BASIC)
        assert cfg.case == "I" and cfg.K == 2
        spec = cfg.sweep_spec()
        assert spec.case.E_t == 10.0 and spec.case.P_r == 1.0
        assert spec.n_values == (4, 8)

    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_presets_round_trip(self, name):
        cfg = PRESETS[name]
        assert parse_config(cfg.to_text()) == cfg

    def test_missing_suffix_line_number(self):
        with pytest.raises(ConfigError) as exc:
            parse_config(BASIC.replace("E_t = 10db", "E_t = 10"))
        assert exc.value.line == 4

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config(BASIC + "colour = red\n")
        assert exc.value.line == 10

    def test_power_not_used_by_case(self):
        with pytest.raises(ConfigError):
            parse_config(BASIC + "E_r = 3db\n")

    def test_eta_length(self):
        with pytest.raises(ConfigError):
            parse_config(BASIC + "eta1 = 1, 2, 3\n")

    def test_fig5_values(self):
        cfg = preset("fig5")
        case = cfg.scaling_case()
        assert case.E_r == 100.0 and case.P_t == 1.0
        assert cfg.profile().eta2 == (1.0, 3.0, 3.0)


class TestSweepCommand:
    def test_csv(self, tmp_path, capsys):
        assert main(["sweep", write(tmp_path, BASIC)]) == 0
        out = capsys.readouterr().out
        table = rows(out)
        assert ",".join(table[0]) == SWEEP_HEADER
        assert len(table) == 1 + 3 * 2
        assert table[1][:4] == ["mrc", "I", "4", "20"]

    def test_output_key(self, tmp_path):
        dest = tmp_path / "out.csv"
        assert main(["sweep", write(tmp_path, BASIC + f"output = {dest}\n")]) == 0
        assert dest.read_text().startswith(SWEEP_HEADER)

    def test_byte_identical_rerun(self, tmp_path):
        cfg = write(tmp_path, BASIC)
        a, b, c = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
        assert main(["sweep", cfg, "--out", str(a)]) == 0
        assert main(["sweep", cfg, "--out", str(b)]) == 0
        assert main(["sweep", cfg, "--out", str(c), "--workers", "8"]) == 0
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()

    def test_invalid_config_exit_2(self, tmp_path, capsys):
        cfg = write(tmp_path, BASIC.replace("P_r = 1lin", "P_r = 1"))
        assert main(["sweep", cfg]) == 2
        assert ":5:" in capsys.readouterr().err

    def test_zf_infeasible_exit_3(self, tmp_path):
        cfg = write(tmp_path, BASIC.replace("K = 2", "K = 5"))
        assert main(["sweep", cfg]) == 3

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["sweep", str(tmp_path / "nope.cfg")]) == 2

    def test_bad_arguments_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["reproduce", "fig9"])
        assert exc.value.code == 2


class TestAsymptoteCommand:
    def test_fig5(self, capsys):
        assert main(["asymptote", "fig5"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# derived-parameter")
        table = rows(out)
        assert ",".join(table[0]) == ASYMPTOTE_HEADER
        sums = {r[0]: float(r[5]) for r in table[1:] if r[1] == "sum"}
        assert sums["mrc"] == pytest.approx(8.985, abs=1e-3)
        assert sums["zf"] == pytest.approx(8.897, abs=1e-3)

    def test_fig2_all_ten(self, capsys):
        assert main(["asymptote", "fig2"]) == 0
        table = rows(capsys.readouterr().out)
        sinrs = [float(r[4]) for r in table[1:] if r[1] != "sum"]
        assert len(sinrs) == 15 and all(s == 10.0 for s in sinrs)

    def test_fig4_sum(self, capsys):
        assert main(["asymptote", "fig4"]) == 0
        table = rows(capsys.readouterr().out)
        sums = {r[0]: float(r[5]) for r in table[1:] if r[1] == "sum"}
        assert sums["mrc"] == pytest.approx(3.360, abs=1e-3)
        assert sums["zf"] == pytest.approx(3.360, abs=1e-3)

    def test_unscaled_exit_2(self, tmp_path):
        cfg = write(tmp_path, "schemes = mrc\ncase = none\nP_t = 1lin\n"
                              "P_r = 1lin\nK = 2\n")
        assert main(["asymptote", cfg]) == 2


class TestReproduce:
    def test_fig2_row_count(self, capsys):
        assert main(["reproduce", "fig2", "--trials", "4"]) == 0
        table = rows(capsys.readouterr().out)
        assert len(table) == 1 + 15

    def test_fig3_info_note(self, capsys):
        assert main(["reproduce", "fig3", "--trials", "3", "--n", "8"]) == 0
        err = capsys.readouterr().err
        assert "INFO" in err and "4.73" in err and "3.9624" in err

    def test_fig5_provenance_comment(self, tmp_path):
        out = tmp_path / "f5.csv"
        assert main(["reproduce", "fig5", "--trials", "3", "--n", "8",
                     "--out", str(out)]) == 0
        assert out.read_text().splitlines()[0].startswith(
            "# derived-parameter")


class TestCheckCommand:
    def test_green(self, capsys):
        assert main(["check"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "INFO" in out and "4.73" in out

    def test_fault_injection(self, capsys):
        assert main(["check", "--inject-fault", "zf-gain-x2"]) == 1
        out = capsys.readouterr().out
        assert "FAIL power-constraint" in out
        assert out.count("FAIL") == 1
