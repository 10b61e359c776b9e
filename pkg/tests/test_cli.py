from __future__ import annotations

import json

import pytest

from bohemian.cli import main
from bohemian.matrices import parse_matrix, serialize_matrix


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


GWS_EXAMPLE = "1 -1 0 0\n-1 1 0 0\n0 0 1 -1\n"
STAR = "1 -1 0 0 0\n1 0 -1 0 0\n1 0 0 0 -1\n1 0 0 -1 0\n"


class TestClassify:
    def test_gws_example(self, capsys, write):
        code, out, _ = run(capsys, "classify", write("a.txt", GWS_EXAMPLE))
        assert code == 0
        data = json.loads(out)
        assert data["is_generalized_well_settled"] is True
        assert data["is_well_settled"] is False

    def test_all_ones(self, capsys, write):
        code, out, _ = run(capsys, "classify", write("a.txt", "1 1 1\n1 1 1\n"))
        data = json.loads(out)
        assert data["full_form"]["kind"] == "TypeI"
        assert data["rank"] == 1

    def test_dense_class_two(self, capsys, write):
        code, out, _ = run(
            capsys, "classify", write("a.txt", "1 1 1\n1 -1 -1\n1 -1 -1\n")
        )
        data = json.loads(out)
        assert data["is_class_II"] is True
        assert data["is_class_III"] is False

    def test_parse_error_exit_two(self, capsys, write):
        code, _, err = run(capsys, "classify", write("a.txt", "1 2\n"))
        assert code == 2
        assert "line 1" in err

    def test_missing_file_exit_two(self, capsys):
        code, _, err = run(capsys, "classify", "/nonexistent/path.txt")
        assert code == 2


class TestInverses:
    def test_oracle_stream_and_count(self, capsys, write):
        code, out, _ = run(
            capsys, "inverses", write("a.txt", "1 -1\n"), "--spec", "1"
        )
        assert code == 0
        assert out == "0\n-1\n\n1\n0\n\ncount: 2\n"

    def test_count_only(self, capsys, write):
        code, out, _ = run(
            capsys,
            "inverses",
            write("a.txt", "1 1\n1 1\n"),
            "--spec",
            "2",
            "--count-only",
        )
        assert out.strip() == "count: 5"

    def test_theorem_mode_star_graph(self, capsys, write):
        code, out, _ = run(
            capsys,
            "inverses",
            write("a.txt", STAR),
            "--spec",
            "12",
            "--mode",
            "theorem",
        )
        assert code == 0
        assert out.startswith("theorem_id: Thm5.16")
        assert out.strip().endswith("count: 16")
        body = "\n".join(
            line
            for line in out.splitlines()
            if not line.startswith(("theorem_id:", "note:", "count:"))
        )
        matrices = [parse_matrix(chunk) for chunk in body.split("\n\n") if chunk.strip()]
        assert len(matrices) == 16

    def test_theorem_mode_matches_oracle(self, capsys, write):
        path = write("a.txt", "1 1 1\n1 -1 0\n")
        _, thm_out, _ = run(
            capsys, "inverses", path, "--spec", "1", "--mode", "theorem"
        )
        _, orc_out, _ = run(capsys, "inverses", path, "--spec", "1")
        thm_body = thm_out.split("\n", 1)[1]
        assert sorted(thm_body.split("\n\n")) == sorted(orc_out.split("\n\n"))

    def test_theorem_mode_unsupported_exit_three(self, capsys, write):
        # rank-deficient, not rank one, not a canonical layout
        path = write("a.txt", "1 1\n1 0\n0 1\n")
        code, _, err = run(capsys, "inverses", path, "--spec", "2", "--mode", "theorem")
        assert code == 3
        assert "detected class" in err

    def test_budget_exit_four(self, capsys, write):
        path = write("a.txt", "1 1 1 1 1\n")
        code, _, _ = run(
            capsys, "inverses", path, "--spec", "1", "--budget", "4"
        )
        assert code == 4

    def test_population_flag(self, capsys, write):
        path = write("a.txt", "1 1\n1 1\n")
        code, out, _ = run(
            capsys,
            "inverses",
            path,
            "--spec",
            "2",
            "--population",
            "0,1",
            "--count-only",
        )
        assert out.strip() == "count: 5"

    def test_workers_agree(self, capsys, write):
        path = write("a.txt", "1 1\n1 -1\n")
        _, seq, _ = run(capsys, "inverses", path, "--spec", "2")
        _, par, _ = run(capsys, "inverses", path, "--spec", "2", "--workers", "3")
        assert seq == par


class TestDecompose:
    def test_rank_one(self, capsys, write):
        code, out, _ = run(capsys, "decompose", write("a.txt", "1 -1\n-1 1\n"))
        data = json.loads(out)
        assert data["form"] == "rank1"
        assert data["zero_row_count"] == 0

    def test_gws(self, capsys, write):
        code, out, _ = run(capsys, "decompose", write("a.txt", GWS_EXAMPLE))
        data = json.loads(out)
        assert data["form"] == "gws"
        assert len(data["blocks"]) == 2

    def test_uw(self, capsys, write):
        code, out, _ = run(
            capsys,
            "decompose",
            write("a.txt", "1 1 1\n1 -1 -1\n1 -1 -1\n"),
            "--form",
            "uw",
        )
        data = json.loads(out)
        assert data["row_block_sizes"] == [1, 2]

    def test_unsupported(self, capsys, write):
        code, _, _ = run(
            capsys, "decompose", write("a.txt", "1 1\n1 0\n0 1\n")
        )
        assert code == 3


class TestCountAndIdentity:
    def test_count_csv(self, capsys):
        code, out, _ = run(
            capsys, "count", "--formula", "outer_type_I", "--m", "2", "--n", "2"
        )
        lines = out.strip().split("\n")
        assert lines[0] == "formula_id,params,value,method"
        assert ",4,closed_form" in lines[1]

    def test_count_json(self, capsys):
        code, out, _ = run(
            capsys,
            "count",
            "--formula",
            "natural_pop",
            "--m",
            "2",
            "--n",
            "3",
            "--zero-in-pop",
            "--json",
        )
        assert json.loads(out)["value"] == 7

    def test_count_dims(self, capsys):
        code, out, _ = run(
            capsys, "count", "--formula", "inner_pure_ws", "--dims", "1x2,1x1"
        )
        assert ",6,closed_form" in out

    def test_count_missing_param(self, capsys):
        code, _, err = run(capsys, "count", "--formula", "outer_type_I", "--m", "2")
        assert code == 2

    def test_unknown_formula_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["count", "--formula", "bogus"])
        assert exc.value.code == 2

    def test_identity(self, capsys):
        code, out, _ = run(
            capsys, "identity", "--m", "1", "--n1", "1", "--n2", "1"
        )
        assert out.strip() == "2 2 equal"


class TestVerifyCommand:
    def test_small_budget_all(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "all", "--budget", "6",
            "--allow-known-gaps",
        )
        data = json.loads(out)
        assert code == 0 and data["ok"] is True
        assert {o["suite"] for o in data["outcomes"]} == {
            "core",
            "inner",
            "outer",
            "counts",
        }
        for o in data["outcomes"]:
            assert o["cases_passed"] <= o["cases_run"]
            assert bool(o["discrepancies"]) == (o["cases_passed"] < o["cases_run"])

    def test_outer_gap_fails_without_flag(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "outer", "--budget", "6")
        data = json.loads(out)
        assert code == 1 and data["ok"] is False
        ids = {
            d["theorem_id"]
            for o in data["outcomes"]
            for d in o["discrepancies"]
        }
        assert "Thm5.19" in ids

    def test_deterministic_rerun(self, capsys):
        _, out1, _ = run(capsys, "verify", "--suite", "counts", "--budget", "6")
        _, out2, _ = run(capsys, "verify", "--suite", "counts", "--budget", "6")
        assert out1 == out2


class TestTheoremDispatch:
    def test_inner_selection_agrees_with_census_exhaustively(self):
        from itertools import product

        from bohemian import census as cs
        from bohemian.cli import UnsupportedShape, select_theorem
        from bohemian.matrices import TernaryMatrix

        supported = 0
        for ent in product((-1, 0, 1), repeat=6):
            a = TernaryMatrix(2, 3, ent)
            if not any(ent):
                continue
            try:
                sel = select_theorem(a, "1", None)
            except UnsupportedShape:
                continue
            supported += 1
            got = sel.materialize(cs.TERNARY)
            want = cs.brute_force_inverses(a, "1")
            assert cs.set_equal(got, want).equal, (ent, sel.theorem_id)
        assert supported > 400

    def test_rank_one_transport_paths(self):
        from bohemian import census as cs
        from bohemian.cli import select_theorem
        from bohemian.matrices import TernaryMatrix

        cases = (
            [[0, 1], [0, -1]],
            [[1, -1], [0, 0]],
            [[0, 1, 1], [0, 0, 0], [0, -1, -1]],
        )
        for rows in cases:
            a = TernaryMatrix.from_rows(rows)
            sel = select_theorem(a, "1", None)
            got = sel.materialize(cs.TERNARY)
            want = cs.brute_force_inverses(a, "1")
            assert cs.set_equal(got, want).equal, rows

    def test_rank_one_outer_selection(self):
        from itertools import product

        from bohemian import census as cs
        from bohemian.cli import UnsupportedShape, select_theorem
        from bohemian.matrices import TernaryMatrix, exact_rank

        for ent in product((-1, 0, 1), repeat=4):
            a = TernaryMatrix(2, 2, ent)
            if not any(ent) or exact_rank(a) != 1:
                continue
            sel = select_theorem(a, "2", None)
            got = sel.materialize(cs.TERNARY)
            want = cs.brute_force_inverses(a, "2")
            assert cs.set_equal(got, want).equal, ent

    def test_rank_filtered_outer_selection(self):
        from itertools import product

        from bohemian import census as cs
        from bohemian.cli import UnsupportedShape, select_theorem
        from bohemian.matrices import TernaryMatrix, exact_rank

        for ent in product((-1, 0, 1), repeat=4):
            a = TernaryMatrix(2, 2, ent)
            if not any(ent):
                continue
            try:
                sel = select_theorem(a, "2", 1)
            except UnsupportedShape:
                continue
            got = sel.materialize(cs.TERNARY)
            want = cs.brute_force_inverses(a, "2", rank_filter=1)
            diff = cs.set_equal(got, want)
            if exact_rank(a) == a.rows:
                # the column-scaled description: complete up to the
                # documented zero-first-column members
                assert not diff.only_in_a
                for extra in diff.only_in_b:
                    assert all(row[0] == 0 for row in extra.to_lists())
            else:
                assert diff.equal, ent


class TestUsage:
    def test_unknown_flag_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--bogus", "x"])
        assert exc.value.code == 2

    def test_budget_env_override(self, capsys, write, monkeypatch):
        path = write("a.txt", "1 1 1 1 1\n")
        monkeypatch.setenv("BOHEMIAN_CELL_BUDGET", "4")
        code, _, _ = run(capsys, "inverses", path, "--spec", "1")
        assert code == 4
        monkeypatch.setenv("BOHEMIAN_CELL_BUDGET", "6")
        code, out, _ = run(capsys, "inverses", path, "--spec", "1", "--count-only")
        assert code == 0

    def test_theorem_count_only_fast_path(self, capsys, write):
        # count of a transported rank-one family without materialization
        path = write("a.txt", "0 1\n0 -1\n")
        code, out, _ = run(
            capsys, "inverses", path, "--spec", "1", "--mode", "theorem",
            "--count-only",
        )
        assert code == 0
        assert out.strip().endswith("count: 18")

    def test_round_trip_canonical_file(self, tmp_path, capsys):
        text = "1 -1 0\n0 1 1\n"
        assert serialize_matrix(parse_matrix(text)) == text
