import json

import pytest

from ngostrings.cli import CACHE_ENV_VAR, cache_load, cache_store, run
from ngostrings.graphs import Quiver, dump_graph
from ngostrings.matroid import TutteCache, TuttePolynomial
from ngostrings.strings import table_report


@pytest.fixture
def capture(capsys):
    def invoke(*argv):
        status = run(list(argv))
        captured = capsys.readouterr()
        return status, captured.out, captured.err

    return invoke


def all_leaves_are_strings(obj):
    if isinstance(obj, dict):
        return all(all_leaves_are_strings(v) for v in obj.values())
    if isinstance(obj, list):
        return all(all_leaves_are_strings(v) for v in obj)
    return isinstance(obj, (str, bool))


class TestStringsAndReport:
    def test_report_rank_four(self, capture):
        status, out, _ = capture("report", "--n", "4")
        assert status == 0
        assert out == table_report(4)
        assert out.strip().split("\n")[3].split() == ["2", "1", "1", "0", "1", "3"]

    def test_strings_gcd_invariance_byte_level(self, capture):
        s1, out1, _ = capture("strings", "--n", "4", "--d", "6")
        s2, out2, _ = capture("strings", "--n", "4", "--d", "2")
        assert s1 == s2 == 0
        assert out1 == out2

    def test_strings_json_integers_as_strings(self, capture):
        status, out, _ = capture("strings", "--n", "6", "--d", "3", "--json")
        assert status == 0
        payload = json.loads(out)
        assert all_leaves_are_strings(payload)
        ranks = {entry["partition"]: entry["rank"] for entry in payload["ranks"]}
        assert ranks["2,2,2"] == "0"
        assert payload["rank_weighted_contributions"] == ["2,2,2"]

    def test_report_json(self, capture):
        status, out, _ = capture("report", "--n", "2", "--json")
        payload = json.loads(out)
        assert [row["gcd"] for row in payload["rows"]] == ["0", "1"]

    def test_requires_n(self, capture):
        status, _, _ = capture("strings", "--d", "2")
        assert status == 2


class TestGraphCommands:
    def test_graph_statistics(self, capture):
        status, out, _ = capture("graph", "--partition", "2,1,1", "--genus", "2")
        assert status == 0
        assert out == "r=3 s=10 b1=8\n"

    def test_graph_dot(self, capture):
        status, out, _ = capture("graph", "--partition", "1,1", "--genus", "2", "--dot")
        assert status == 0
        assert out.startswith("graph G {")
        assert out.count("0 -- 1") == 2

    def test_graph_emit_round_trip(self, capture, tmp_path):
        status, out, _ = capture("graph", "--partition", "1,1", "--genus", "2", "--emit")
        assert status == 0
        path = tmp_path / "g.json"
        path.write_text(out)
        status2, out2, _ = capture("graph", "--quiver", str(path))
        assert status2 == 0
        assert out2 == "r=2 s=2 b1=1\n"

    def test_graph_domain_error(self, capture):
        status, _, err = capture("graph", "--partition", "2,1", "--genus", "1")
        assert status == 1
        assert "error:" in err

    def test_graph_needs_source(self, capture):
        status, _, err = capture("graph")
        assert status == 1
        assert "provide either" in err

    def test_unknown_subcommand_usage_error(self, capture):
        status, _, _ = capture("frobnicate")
        assert status == 2


class TestGale:
    def test_triangle_from_file(self, capture, tmp_path):
        path = tmp_path / "triangle.json"
        path.write_text(dump_graph(Quiver(3, [(0, 1), (1, 2), (2, 0)])))
        status, out, _ = capture("gale", "--quiver", str(path))
        assert status == 0
        assert "A =" in out and "B =" in out
        assert "exact: ok" in out
        assert "i=2: z1*w1 - z2*w2" in out

    def test_json_mode(self, capture):
        status, out, _ = capture("gale", "--partition", "1,1", "--genus", "2", "--json")
        payload = json.loads(out)
        assert payload["A"] == [["1", "1"]]
        assert payload["B"] == [["1"], ["-1"]]
        assert payload["exact"] is True


class TestTutteCommand:
    def test_polynomial_and_eval(self, capture):
        status, out, _ = capture("tutte", "--partition", "1,1", "--genus", "2", "--eval", "1", "1")
        assert status == 0
        assert out == "T = x + y\nT(1,1) = 2\n"

    def test_json(self, capture):
        status, out, _ = capture("tutte", "--partition", "1,1", "--genus", "2", "--json")
        payload = json.loads(out)
        assert payload["terms"] == [["1", "0", "1"], ["0", "1", "1"]]

    def test_matroid_command(self, capture):
        status, out, _ = capture("matroid", "--partition", "1,1", "--genus", "3")
        assert status == 0
        assert "f: 1, 4, 6, 4" in out
        assert "h: 1, 1, 1, 1" in out
        assert "top_betti: 1" in out

    def test_matroid_homology_command(self, capture):
        status, out, _ = capture("matroid-homology", "--partition", "1,1,1", "--genus", "2")
        assert status == 0
        assert "degree 3: 2" in out
        assert "spheres: 2" in out
        assert "wedge: ok" in out

    def test_threads_flag_same_output(self, capture):
        _, out1, _ = capture("tutte", "--partition", "2,1,1", "--genus", "2")
        _, out4, _ = capture("tutte", "--partition", "2,1,1", "--genus", "2", "--threads", "4")
        assert out1 == out4


class TestStrataAndDims:
    def test_strata_table(self, capture):
        status, out, _ = capture("strata", "--partition", "1,1,1", "--genus", "2")
        assert status == 0
        lines = out.strip().split("\n")
        assert len(lines) == 6  # header + Bell(3)
        assert lines[1].split()[0] == "0,1,2"
        assert lines[-1].split() == ["0|1|2", "6", "4", "10", "8", "4", "2", "0"]

    def test_local_model(self, capture):
        status, out, _ = capture("local-model", "--partition", "2", "--genus", "2")
        assert status == 0
        assert "d: 2" in out and "c: 17" in out and "dim_M: 10" in out

    def test_dims(self, capture):
        status, out, _ = capture("dims", "--partition", "1,1", "--genus", "2")
        assert status == 0
        assert "codim_S: 1" in out and "delta: 1" in out and "psi: -7" in out

    def test_partition_listing(self, capture):
        status, out, _ = capture("partition", "--n", "4", "--d", "2")
        assert status == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        assert lines[0].startswith("4")
        assert lines[1].startswith("2,2")


class TestCache:
    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "cache.json")
        cache = TutteCache()
        cache.put(b"(2, (0, 0, 2))", TuttePolynomial({(1, 0): 1, (0, 1): 1}))
        cache_store(path, cache)
        loaded = cache_load(path)
        assert dict(loaded.items()) == dict(cache.items())

    def test_missing_file_is_cold(self, tmp_path, capsys):
        cache = cache_load(str(tmp_path / "absent.json"))
        assert len(cache) == 0
        assert capsys.readouterr().err == ""

    def test_corrupt_file_warns(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{{{{")
        cache = cache_load(str(path))
        assert len(cache) == 0
        assert "warning" in capsys.readouterr().err

    def test_version_mismatch_warns(self, tmp_path, capsys):
        path = tmp_path / "old.json"
        path.write_text(json.dumps({"format": "ngostrings-cache/0", "entries": {}}))
        cache = cache_load(str(path))
        assert len(cache) == 0
        assert "warning" in capsys.readouterr().err

    def test_warm_cold_identical_output(self, capture, tmp_path):
        path = str(tmp_path / "cache.json")
        args = ("tutte", "--partition", "2,2", "--genus", "2", "--eval", "1", "0", "--cache", path)
        s1, cold, _ = capture(*args)
        s2, warm, _ = capture(*args)
        assert s1 == s2 == 0
        assert cold == warm

    def test_env_variable_cache(self, capture, tmp_path, monkeypatch):
        path = tmp_path / "env-cache.json"
        monkeypatch.setenv(CACHE_ENV_VAR, str(path))
        status, _, _ = capture("tutte", "--partition", "1,1", "--genus", "2")
        assert status == 0
        assert path.exists()

    def test_flag_beats_env_variable(self, capture, tmp_path, monkeypatch):
        env_path = tmp_path / "env-cache.json"
        flag_path = tmp_path / "flag-cache.json"
        monkeypatch.setenv(CACHE_ENV_VAR, str(env_path))
        status, _, _ = capture(
            "tutte", "--partition", "1,1", "--genus", "2", "--cache", str(flag_path)
        )
        assert status == 0
        assert flag_path.exists()
        assert not env_path.exists()


class TestTextDetails:
    def test_negative_degree(self, capture):
        status, out, _ = capture("strings", "--n", "4", "--d", "-2")
        assert status == 0
        assert out.startswith("n=4 gcd=2\n")

    def test_multiplier_note_line(self, capture):
        _, out, _ = capture("strings", "--n", "6", "--d", "3")
        assert out.strip().endswith("# contributions weighted by local-system rank > 1: 2,2,2")
        _, out4, _ = capture("strings", "--n", "4", "--d", "2")
        assert "#" not in out4
