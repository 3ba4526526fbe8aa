import json

import numpy as np

from conftest import block_rotation, boost_matrix
from hypiso.cli import main
from hypiso.quadspace import QuadraticSpace, classify_membership, matrix_to_json


def write_matrix(tmp_path, name, mat):
    path = tmp_path / name
    path.write_text(matrix_to_json(mat) + "\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_identity_is_zero_rotation_elliptic(self, tmp_path, capsys):
        path = write_matrix(tmp_path, "id.json", np.eye(4))
        code, out, _ = run(capsys, "classify", path)
        assert code == 0
        doc = json.loads(out)
        assert doc["class"] == "Elliptic" and doc["k"] == 0
        assert doc["stretch"] is None

    def test_batch_order_preserved(self, tmp_path, capsys):
        p1 = write_matrix(tmp_path, "a.json", np.eye(4))
        p2 = write_matrix(tmp_path, "b.json", boost_matrix(3, 0.5))
        code, out, _ = run(capsys, "classify", p1, p2)
        assert code == 0
        lines = out.strip().splitlines()
        assert json.loads(lines[0])["class"] == "Elliptic"
        assert json.loads(lines[1])["class"] == "Hyperbolic"

    def test_malformed_input_exits_1(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 3, "matrix": [1, 2]}')
        code, _, err = run(capsys, "classify", str(path))
        assert code == 1 and err

    def test_non_isometry_exits_2(self, tmp_path, capsys):
        path = write_matrix(tmp_path, "x.json", 2 * np.eye(4))
        code, _, err = run(capsys, "classify", str(path))
        assert code == 2 and "error" in err

    def test_borderline_exits_3(self, tmp_path, capsys):
        path = write_matrix(tmp_path, "b.json", boost_matrix(2, 5e-8))
        code, _, err = run(capsys, "classify", str(path), "--eps", "1e-6")
        assert code == 3 and "undecided" in err


class TestReality:
    def test_blanket_case(self, tmp_path, capsys):
        m = np.eye(5)
        m[:4, :4] = block_rotation(0.7, 1.9)
        path = write_matrix(tmp_path, "m.json", m)
        code, out, _ = run(capsys, "reality", path, "--group", "SOo")
        assert code == 0
        doc = json.loads(out)
        assert doc["decision"] is True and doc["clause"] == "Thm1.1-1"
        assert doc["involution"] is True
        rev = np.array(doc["reverser"]["matrix"]).reshape(5, 5)
        sp = QuadraticSpace(4)
        classify_membership(sp, rev, 1e-8)  # revalidates

    def test_so_group(self, tmp_path, capsys):
        path = write_matrix(tmp_path, "r.json", block_rotation(np.pi / 2))
        code, out, _ = run(capsys, "reality", path, "--group", "SOn")
        assert code == 0
        assert json.loads(out)["decision"] is False


class TestConjugacy:
    def test_conjugate_pair(self, tmp_path, capsys):
        m = boost_matrix(3, 0.8)
        p1 = write_matrix(tmp_path, "t1.json", m)
        p2 = write_matrix(tmp_path, "t2.json", np.linalg.inv(m))
        code, out, _ = run(capsys, "conjugacy", p1, p2, "--group", "Mon")
        assert code == 0
        assert json.loads(out)["related"] == "ConjugateInMo"

    def test_not_conjugate(self, tmp_path, capsys):
        p1 = write_matrix(tmp_path, "t1.json", np.eye(4))
        p2 = write_matrix(tmp_path, "t2.json", boost_matrix(3, 0.5))
        code, out, _ = run(capsys, "conjugacy", p1, p2)
        assert code == 0
        assert json.loads(out)["related"] == "NotConjugate"


class TestDims:
    def test_elliptic_example(self, capsys):
        code, out, _ = run(
            capsys, "dims", "--class", "elliptic", "--k", "2", "--n", "5"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["base"] == {"tag": "SphereSpace", "params": [1, 5]}
        assert doc["fiber"]["tag"] == "O_k" and doc["fiber"]["params"] == [2, 4]

    def test_covering_sheets(self, capsys):
        code, out, _ = run(
            capsys, "dims", "--class", "rotation", "--k", "2", "--n", "4", "--has-pi"
        )
        doc = json.loads(out)
        assert doc["sheet_count"] == 4


class TestEnumerate:
    def test_counts(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--k", "2", "--angles", "1.0471975511965976,1.5707963267948966"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 8 and len(doc["elements"]) == 8

    def test_pi_flag(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--k", "2", "--angles", "0.9", "--has-pi")
        doc = json.loads(out)
        assert doc["count"] == 4 and doc["has_pi"] is True


class TestRandomAndOracle:
    def test_determinism(self, tmp_path, capsys):
        args = ["random", "--group", "SOo", "--n", "3", "--count", "5", "--seed", "11"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_emitted_matrices_revalidate(self, capsys):
        code, out, _ = run(
            capsys, "random", "--group", "Mo", "--n", "3", "--count", "4", "--seed", "3"
        )
        assert code == 0
        for line in out.strip().splitlines():
            doc = json.loads(line)
            sp = QuadraticSpace(doc["n"])
            mat = np.array(doc["matrix"]).reshape(sp.dim, sp.dim)
            t = classify_membership(sp, mat, 1e-8)
            assert t.identity_component

    def test_oracle_document(self, tmp_path, capsys):
        path = write_matrix(tmp_path, "u.json", block_rotation(np.pi / 2))
        code, out, _ = run(
            capsys, "oracle", path, "--group", "On", "--budget", "100", "--seed", "1"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["exact"] == [[-1, 1]]

    def test_seeded_oracle_deterministic(self, tmp_path, capsys):
        path = write_matrix(tmp_path, "u.json", block_rotation(0.8, 0.8))
        args = ["oracle", path, "--group", "On", "--budget", "128", "--seed", "9"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_output_file(self, tmp_path, capsys):
        out_path = tmp_path / "out.jsonl"
        code, out, _ = run(
            capsys,
            "random", "--group", "On", "--n", "4", "--count", "2", "--seed", "5",
            "--output", str(out_path),
        )
        assert code == 0 and out == ""
        assert len(out_path.read_text().strip().splitlines()) == 2
