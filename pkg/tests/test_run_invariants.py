"""Command-line surface: output formats and exit codes"""

import json

import pytest

from run_invariants import dump_json, format_float, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEta:

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "eta", "--heis-dim", "1", "--type", "3", "--twist", "0", "--at-s", "0")
        assert code == 0
        assert out.strip() == "1/2"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "eta", "--heis-dim", "1", "--type", "2", "--twist", "1/2", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload['eta'] == "-1/6"
        assert payload['dimV'] == 1

    def test_series_check(self, capsys):
        code, out, _ = run(capsys, "eta", "--heis-dim", "1", "--series-check", "4", "500", "--json")
        check = json.loads(out)['series_check']
        assert code == 0
        assert check['deviation'] <= check['tail_bound'] + 1e-9

    def test_json_is_stable(self, capsys):
        _, out, _ = run(capsys, "eta", "--heis-dim", "1", "--twist", "1/3", "--json")
        assert dump_json(json.loads(out)) == out.rstrip("\n")


class TestCorr:

    def test_inline_spinor(self, capsys):
        code, out, _ = run(capsys, "corr", "--n", "2", "--type", "1", "--bundle", "spinor", "--json")
        rows = json.loads(out)
        assert code == 0
        assert rows == [{
            'cusp': 1, 'd': [1], 'gamma_order': 1, 'dimV': 1,
            'he_eta': "-1/6", 'le_eta': 2, 'ker_dim': 0, 'corr': "11/12",
        }]

    def test_inline_custom_weight(self, capsys):
        code, out, _ = run(capsys, "corr", "--n", "2", "--type", "3", "--bundle", "custom",
                           "--twist", "1/3", "--weight=1/2,-1/2", "--weight=0,0", "--json")
        assert code == 0
        assert json.loads(out)[0]['corr'] == "1/4"

    def test_config_table(self, capsys, config_dir):
        code, out, _ = run(capsys, "corr", "--config", str(config_dir / "dolbeault_n2.json"))
        assert code == 0
        assert "-1/12" in out and "-1/6" in out

    def test_needs_a_cusp(self, capsys):
        code, _, err = run(capsys, "corr")
        assert code == 1
        assert err.startswith("error:")


class TestIndex:

    def test_dolbeault(self, capsys, config_dir):
        code, out, _ = run(capsys, "index", "--config", str(config_dir / "dolbeault_n2.json"), "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload['extended'] == "19/4"
        assert payload['l2'] == "19/4"
        assert payload['fredholm'] is True

    def test_spinor_n3_human(self, capsys, config_dir):
        code, out, _ = run(capsys, "index", "--config", str(config_dir / "spinor_n3.json"))
        assert code == 0
        lines = {line[:24].strip(): line[24:].strip() for line in out.splitlines()}
        assert lines["Fredholm type"] == "false"
        assert lines["h+ / h-"] == "2 / 2"
        assert lines["L2 index"] == "0"

    def test_missing_config(self, capsys, tmp_path):
        code, _, err = run(capsys, "index", "--config", str(tmp_path / "nope.json"))
        assert code == 1
        assert "not found" in err


class TestKostant:

    def test_spin_component(self, capsys):
        code, out, _ = run(capsys, "kostant", "--n", "2", "--weight=1/2,-1/2", "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload['weight'] == ["1/2", "-1/2"]
        assert [row['b_k'] for row in payload['rows']] == [1, 1]
        assert [row['z_value'] for row in payload['rows']] == ["-1", "-1"]

    def test_table(self, capsys):
        code, out, _ = run(capsys, "kostant", "--n", "3", "--weight", "0,0,0")
        assert code == 0
        assert out.splitlines()[0].split() == ['k', 'b_k', 'z_value', 'kernel_flag']


class TestSpectrum:

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--heis-dim", "1", "--cutoff", "20", "--csv")
        assert code == 0
        assert out.splitlines()[0].startswith("w,")

    def test_sector_oracle(self, capsys):
        code, _, err = run(capsys, "spectrum", "--heis-dim", "1", "--sector", "1", "--oracle", "--cutoff", "12")
        assert code == 0
        assert err == ""

    def test_sector_must_match_twist(self, capsys):
        code, _, err = run(capsys, "spectrum", "--heis-dim", "1", "--twist", "1/2", "--sector", "1")
        assert code == 1
        assert "not congruent" in err


class TestVerify:

    def test_quick_subset(self, capsys):
        code, out, _ = run(capsys, "verify", "--quick", "--only", "5,6", "--json")
        records = json.loads(out)
        assert code == 0
        assert [r['criterion'] for r in records] == [5, 6]
        assert all(r['passed'] for r in records)


class TestErrors:

    @pytest.mark.parametrize("argv", [
        ["eta", "--heis-dim", "1", "--bogus"],
        ["eta", "--heis-dim", "1", "--twist", "0.5"],
        ["eta", "--heis-dim", "2", "--type", "2,3"],
        ["index"],
        [],
    ])
    def test_invalid_input_exits_1(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 1
        assert err.startswith("error:")

    def test_internal_failure_exits_2(self, capsys, monkeypatch):
        def broken(weight, n):
            raise RuntimeError("non-integral b_1 = 3/2")

        monkeypatch.setattr("run_invariants.kostant_data", broken)
        code, out, err = run(capsys, "kostant", "--n", "2", "--weight", "0,0")
        assert code == 2
        assert out == ""
        assert err == "error: non-integral b_1 = 3/2\n"


def test_format_float():
    assert format_float(1 / 3) == "0.333333333333"
    assert format_float(2.0) == "2"
