import json
from pathlib import Path

import jsonschema

from arbormat import cli


SCHEMA = json.loads(
    (Path(cli.__file__).parent / "schemas" / "output.schema.json").read_text()
)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc, err


class TestAnalyze:
    def test_hand_instance(self, capsys):
        code, doc, _ = run_json(
            capsys, "analyze", "--tree", "1-2,2-3", "--map", "2,3,1", "--orientation", "00"
        )
        assert code == 0
        assert doc["matrices"]["oriented"] == [["0", "1"], ["-1", "-1"]]
        assert doc["charpolys"]["oriented"] == ["1", "1", "1"]
        assert doc["determinants"]["oriented"] == "1"
        assert all(v in ("pass", "not_applicable") for v in doc["claims"].values())
        assert doc["witness"]["matrix"] == [["1", "0"], ["0", "1"]]

    def test_cycle_notation_and_default_orientation(self, capsys):
        code, doc, _ = run_json(capsys, "analyze", "--tree", "1-2,2-3", "--map", "(1 2 3)")
        assert code == 0
        assert doc["instance"]["orientation"] == "00"

    def test_not_single_cycle_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "analyze", "--tree", "1-2,2-3", "--map", "1,3,2")
        assert code == 2
        assert "cycle" in err

    def test_orientation_length_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "analyze", "--tree", "1-2,2-3", "--map", "2,3,1", "--orientation", "000"
        )
        assert code == 2

    def test_malformed_tree_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "analyze", "--tree", "zzz", "--map", "2,3,1")
        assert code == 2


class TestEnumerate:
    def test_counts(self, capsys):
        code, doc, _ = run_json(capsys, "enumerate", "--vertices", "6")
        assert code == 0
        assert doc["count"] == "6"
        assert len(doc["trees"]) == 6

    def test_cap(self, capsys):
        code, _, err = run_cli(capsys, "enumerate", "--vertices", "99")
        assert code == 2


class TestVerify:
    def test_small_sweep(self, capsys):
        code, doc, _ = run_json(capsys, "verify", "--n", "2..3", "--orientations", "all")
        assert code == 0
        assert doc["all_pass"] is True
        assert doc["per_n"]["2"]["instances"] == "8"
        assert doc["per_n"]["3"]["instances"] == "96"

    def test_cap_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--n", "12")
        assert code == 2
        assert "cap" in err

    def test_env_cap_override(self, capsys, monkeypatch):
        monkeypatch.setenv("ARBOR_CAP_N", "2")
        code, _, err = run_cli(capsys, "verify", "--n", "3")
        assert code == 2

    def test_byte_determinism_across_workers(self, tmp_path):
        paths = []
        for idx, workers in enumerate((1, 2, 2)):
            out = tmp_path / f"run{idx}.json"
            code = cli.main(
                [
                    "verify", "--n", "2..4", "--orientations", "sample:4",
                    "--seed", "7", "--workers", str(workers), "--out", str(out),
                ]
            )
            assert code == 0
            paths.append(out.read_bytes())
        assert paths[0] == paths[1] == paths[2]


class TestReproduce:
    def test_single_figure(self, capsys):
        code, doc, _ = run_json(capsys, "reproduce", "--figure", "1a")
        assert code == 0
        assert doc["all_match"] is True
        assert doc["figures"]["1a"]["unoriented_charpoly"] == ["1", "-3", "1", "1", "-3", "1"]

    def test_all_figures(self, capsys):
        code, doc, _ = run_json(capsys, "reproduce")
        assert code == 0
        assert set(doc["figures"]) == {
            "1a", "1b", "1c", "1d", "1e", "1f", "2a", "2b", "3a", "3b", "4",
        }
        assert doc["figures"]["4"]["checks"]["printed_product_identity"] is True

    def test_figure_3b_caption(self, capsys):
        code, doc, _ = run_json(capsys, "reproduce", "--figure", "3b")
        assert code == 0
        assert doc["figures"]["3b"]["unoriented_charpoly"] == [
            "1", "1", "-3", "-5", "-5", "1", "5", "11", "3", "-7", "-1", "1",
        ]

    def test_reconstruct_flag(self, capsys):
        code, doc, _ = run_json(capsys, "reproduce", "--figure", "1a", "--reconstruct")
        assert code == 0
        recs = doc["figures"]["1a"]["reconstructions"]
        assert recs and all(
            set(r) >= {"tree", "map", "orientation", "seed_charpolys"} for r in recs
        )

    def test_corrupted_fixture_exit_1(self, capsys, tmp_path):
        from arbormat.fixtures import default_fixture_dir

        text = (default_fixture_dir() / "figure1a.txt").read_text()
        (tmp_path / "figure1a.txt").write_text(
            text.replace("unoriented_charpoly 1 -3 1 1 -3 1",
                         "unoriented_charpoly 1 -3 1 1 -3 -1")
        )
        code, doc, err = run_json(
            capsys, "reproduce", "--figure", "1a", "--fixtures", str(tmp_path)
        )
        assert code == 1
        assert doc["all_match"] is False
        assert "mismatch" in err

    def test_missing_fixture_dir_exit_2(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "reproduce", "--figure", "1a", "--fixtures", str(tmp_path / "nope")
        )
        assert code == 2


class TestSearchDetmf:
    def test_small(self, capsys):
        code, doc, _ = run_json(capsys, "search-detmf", "--n", "2..3")
        assert code == 0
        assert doc["all_odd"] is True
        assert set(doc["histogram"]) == {"1"}

    def test_paths_only(self, capsys):
        code, doc, _ = run_json(
            capsys, "search-detmf", "--n", "2..4", "--paths-only"
        )
        assert code == 0
        assert doc["all_unit"] is True

    def test_seed_rerun_identical(self, tmp_path):
        outs = []
        for idx in range(2):
            out = tmp_path / f"d{idx}.json"
            code = cli.main(
                ["search-detmf", "--n", "2..3", "--orientations", "sample:3",
                 "--seed", "7", "--out", str(out)]
            )
            assert code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestOutput:
    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "doc.json"
        code = cli.main(["enumerate", "--vertices", "4", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        jsonschema.validate(doc, SCHEMA)
        assert doc["count"] == "2"

    def test_usage_error(self, capsys):
        assert cli.main(["bogus"]) == 2
        assert cli.main([]) == 2
