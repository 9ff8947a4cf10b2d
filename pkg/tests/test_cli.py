import json
import random

import pytest
from click.testing import CliRunner

from srdc import api
from srdc.cli import main
from srdc.circulant import GFMatrix, pack_row
from srdc.codes import LinearCode, code_report
from srdc import matrixio


@pytest.fixture
def runner():
    return CliRunner()


def test_verify_self_dual_exits_zero(runner):
    res = runner.invoke(main, ["verify", "--p", "43", "--q", "2",
                               "--coeffs", "0,0,0,0,1,1,1", "--variant", "pure"])
    assert res.exit_code == 0
    assert "SELF-DUAL" in res.output


def test_verify_non_self_dual_exits_one(runner):
    res = runner.invoke(main, ["verify", "--p", "19", "--q", "2",
                               "--coeffs", "0,0,0,0,1,1,1", "--variant", "pure"])
    assert res.exit_code == 1
    assert "NOT SELF-DUAL" in res.output


def test_verify_gf4_coeff_alphabet(runner):
    res = runner.invoke(main, ["verify", "--p", "19", "--q", "4",
                               "--coeffs", "w,W,1,W,0,0,w", "--variant", "pure"])
    assert res.exit_code == 1   # printed construction row; provably not self-dual


def test_verify_invalid_p_exits_two(runner):
    res = runner.invoke(main, ["build", "--p", "41", "--q", "2",
                               "--coeffs", "0000111", "--variant", "pure",
                               "--out", "x.gm"])
    assert res.exit_code == 2
    assert "7 (mod 12)" in res.output


def test_verify_wrong_coeff_count_exits_two(runner):
    res = runner.invoke(main, ["verify", "--p", "19", "--q", "2",
                               "--coeffs", "0,0,1", "--variant", "pure"])
    assert res.exit_code == 2


def test_bordered_requires_alpha(runner):
    res = runner.invoke(main, ["verify", "--p", "19", "--q", "2",
                               "--coeffs", "0000000", "--variant", "bordered"])
    assert res.exit_code == 2
    assert "--alpha" in res.output


def test_distance_missing_file_exits_two(runner):
    res = runner.invoke(main, ["distance", "--in", "missing.gm"])
    assert res.exit_code == 2


def test_unknown_flag_exits_two(runner):
    res = runner.invoke(main, ["verify", "--frobnicate"])
    assert res.exit_code == 2


def test_cyclotomy_json_schema(runner):
    res = runner.invoke(main, ["cyclotomy", "--p", "19", "--json"])
    assert res.exit_code == 0
    doc = api.CyclotomyResponse.model_validate(json.loads(res.output))
    assert doc.params.p == 19 and doc.parity_case == "b"
    assert doc.closed_form.corrected == ["J"]


def test_verify_json_schema(runner):
    res = runner.invoke(main, ["verify", "--p", "43", "--q", "2",
                               "--coeffs", "1000111", "--alpha", "0",
                               "--variant", "bordered", "--json"])
    assert res.exit_code == 0
    doc = api.VerifyResponse.model_validate(json.loads(res.output))
    assert doc.duality.is_self_dual and doc.alpha == "0"


def test_build_then_distance_round_trip(runner, tmp_path):
    out = tmp_path / "code.gm"
    res = runner.invoke(main, ["build", "--p", "7", "--q", "4",
                               "--coeffs", "1,0,0,0,0,0,0", "--variant", "pure",
                               "--out", str(out)])
    assert res.exit_code == 0
    res = runner.invoke(main, ["distance", "--in", str(out), "--json"])
    assert res.exit_code == 0
    doc = api.DistanceResponse.model_validate(json.loads(res.output))
    assert (doc.code.n, doc.code.k, doc.code.d) == (14, 7, 2)
    assert doc.code.self_dual


def test_round_trip_matches_in_process_randomized(runner, tmp_path):
    rng = random.Random(23)
    for trial in range(20):
        q = rng.choice([2, 4])
        k = rng.randrange(2, 6)
        n = rng.randrange(k + 1, 12)
        rows = []
        for i in range(k):
            entries = [0] * n
            entries[i] = 1
            for j in range(k, n):
                entries[j] = rng.randrange(q)
            rows.append(pack_row(q, entries))
        g = GFMatrix(q, k, n, tuple(rows))
        path = tmp_path / f"m{trial}.gm"
        matrixio.write_matrix(g, path)
        res = runner.invoke(main, ["distance", "--in", str(path), "--json"])
        assert res.exit_code == 0
        doc = api.DistanceResponse.model_validate(json.loads(res.output))
        direct = code_report(LinearCode(g))
        assert doc.code.d == direct.d
        assert doc.code.witness == direct.witness
        assert doc.code.self_dual == direct.self_dual


def test_search_csv_and_json(runner):
    res = runner.invoke(main, ["search", "--p", "7", "--q", "2",
                               "--variant", "pure", "--format", "csv"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[0] == "coeffs,alpha,n,k,d,certified,method,bound,classification"
    assert len(lines) > 1
    res = runner.invoke(main, ["search", "--p", "7", "--q", "2",
                               "--variant", "pure", "--format", "json"])
    doc = api.SearchResponse.model_validate(json.loads(res.output))
    assert doc.count == len(doc.results) > 0


def test_search_no_distances(runner):
    res = runner.invoke(main, ["search", "--p", "19", "--q", "2",
                               "--variant", "pure", "--no-distances"])
    assert res.exit_code == 0
    assert "9 self-dual vector(s)" in res.output


def test_distance_threshold_flag_forces_isd(runner, tmp_path):
    out = tmp_path / "m.gm"
    runner.invoke(main, ["build", "--p", "7", "--q", "2", "--coeffs", "1000000",
                         "--variant", "pure", "--out", str(out)])
    res = runner.invoke(main, ["distance", "--in", str(out),
                               "--exhaustive-threshold", "2", "--json"])
    doc = api.DistanceResponse.model_validate(json.loads(res.output))
    assert doc.code.d_method == "information-set" and doc.code.d == 2


def test_search_with_known_table(runner, tmp_path):
    known = tmp_path / "known.txt"
    known.write_text("# reference distances\n2 14 7 4\n")
    res = runner.invoke(main, ["search", "--p", "7", "--q", "2",
                               "--variant", "pure", "--known", str(known),
                               "--format", "csv"])
    assert res.exit_code == 0
    assert "known" in res.output  # some row got classified against the file


def test_distance_with_known_table(runner, tmp_path):
    out = tmp_path / "m.gm"
    runner.invoke(main, ["build", "--p", "7", "--q", "2", "--coeffs", "1000000",
                         "--variant", "pure", "--out", str(out)])
    known = tmp_path / "known.txt"
    known.write_text("2 14 7 2\n")
    res = runner.invoke(main, ["distance", "--in", str(out), "--known", str(known),
                               "--json"])
    doc = api.DistanceResponse.model_validate(json.loads(res.output))
    assert doc.bounds.classification == "equal-known"


def test_tables_exit_codes(runner):
    res = runner.invoke(main, ["tables", "--which", "3", "--distance-mode", "none"])
    assert res.exit_code == 1   # published rows are not self-dual as printed
    res = runner.invoke(main, ["tables", "--which", "7", "--distance-mode", "none"])
    assert res.exit_code == 2


def test_tables_json_schema(runner):
    res = runner.invoke(main, ["tables", "--which", "4", "--distance-mode", "none",
                               "--format", "json"])
    doc = api.TablesResponse.model_validate(json.loads(res.output))
    assert doc.table == 4 and len(doc.rows) == 6


def test_tables_csv(runner):
    res = runner.invoke(main, ["tables", "--which", "4", "--distance-mode", "none",
                               "--format", "csv"])
    lines = res.output.strip().splitlines()
    assert lines[0].startswith("index,coeffs,alpha,self_dual")
    assert len(lines) == 7  # header + 6 rows
