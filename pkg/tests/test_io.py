import numpy as np
import pytest

from treelets import ClusterLabels, Dataset, GraphKernel, MissingRbfKernel, RbfKernel
from treelets import io
from treelets.metrics import RocCurve


class TestReadCsvNumeric:
    def test_missing_tokens_become_mask(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1.0,,3.0\n")
        data = io.read_csv_numeric(f)
        assert list(data.present[0]) == [True, False, True]
        assert data.values[0, 0] == 1.0 and data.values[0, 2] == 3.0

    def test_plain_grid(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1,2\n3,4\n")
        data = io.read_csv_numeric(f)
        assert data.fully_present
        assert np.array_equal(data.values, [[1.0, 2.0], [3.0, 4.0]])

    def test_unparseable_cell_reports_position(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1,x\n")
        with pytest.raises(ValueError, match="row 1 column 2"):
            io.read_csv_numeric(f)

    def test_ragged_rows_rejected(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1,2\n3\n")
        with pytest.raises(ValueError, match="row 2 has 1 cells"):
            io.read_csv_numeric(f)

    def test_all_missing_row_rejected(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1,2\nNA,NaN\n")
        with pytest.raises(ValueError, match="row 2 has no observed values"):
            io.read_csv_numeric(f)

    def test_header_skipped(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,b\n1,2\n3,4\n")
        data = io.read_csv_numeric(f, has_header=True)
        assert data.n == 2

    def test_error_rows_count_the_header(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,b\n1,2\n1,oops\n")
        with pytest.raises(ValueError, match="row 3 column 2"):
            io.read_csv_numeric(f, has_header=True)

    def test_crlf_tolerated(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_bytes(b"1,2\r\n3,4\r\n")
        data = io.read_csv_numeric(f)
        assert data.n == 2

    def test_round_trip_exact(self, tmp_path, np_rng):
        values = np_rng.normal(size=(20, 4)) * 10.0 ** np_rng.integers(-8, 8, size=(20, 4))
        present = np_rng.uniform(size=(20, 4)) > 0.2
        present[:, 0] = True
        data = Dataset(np.where(present, values, 0.0), present)
        f = tmp_path / "rt.csv"
        io.write_csv_numeric(f, data)
        back = io.read_csv_numeric(f)
        assert np.array_equal(back.present, data.present)
        assert np.array_equal(back.values[data.present], data.values[data.present])


class TestReadEdgeList:
    def test_duplicates_and_reversals_collapse(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("0 1\n1 0\n1 2\n")
        g = io.read_edge_list(f)
        assert g.n_vertices == 3
        assert g.n_edges == 2
        assert list(g.degrees) == [1, 2, 1]

    def test_empty_file(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("")
        g = io.read_edge_list(f)
        assert g.n_vertices == 0 and g.n_edges == 0

    def test_malformed_line_reported(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("0 1\n0 1 2\n")
        with pytest.raises(ValueError, match="line 2"):
            io.read_edge_list(f)

    def test_self_loop_reported(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("0 1\n3 3\n")
        with pytest.raises(ValueError, match="line 2: self-loop"):
            io.read_edge_list(f)

    def test_comments_and_blanks_skipped(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("# a comment\n\n0 1\n")
        assert io.read_edge_list(f).n_edges == 1

    def test_huge_id_rejected(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text(f"0 {2**21}\n")
        with pytest.raises(ValueError, match="too large"):
            io.read_edge_list(f)

    def test_order_independent(self, tmp_path, np_rng):
        lines = ["0 1", "2 3", "1 2", "4 0", "3 4"]
        f1 = tmp_path / "a.txt"
        f2 = tmp_path / "b.txt"
        f1.write_text("\n".join(lines) + "\n")
        shuffled = list(lines)
        np_rng.shuffle(shuffled)
        f2.write_text("\n".join(shuffled) + "\n")
        a = io.read_edge_list(f1)
        b = io.read_edge_list(f2)
        assert a.edges == b.edges and a.n_vertices == b.n_vertices

    def test_sparse_ids_remapped(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("100 7\n7 901\n")
        g, table = io.read_edge_list_remapped(f)
        assert g.n_vertices == 3
        assert table == {7: 0, 100: 1, 901: 2}
        assert g.has_edge(1, 0) and g.has_edge(0, 2)


class TestLabelsJson:
    def test_round_trip(self, tmp_path):
        labels = ClusterLabels(assignments=[0, 1, 1, 0, 2], n_clusters=3)
        f = tmp_path / "labels.json"
        io.write_labels_json(f, labels, seed=7, kernel=RbfKernel(sigma=0.1))
        back = io.read_labels_json(f)
        assert np.array_equal(back.assignments, labels.assignments)
        assert back.n_clusters == 3

    def test_schema_fields(self, tmp_path):
        import json

        labels = ClusterLabels(assignments=[0, 1], n_clusters=2)
        f = tmp_path / "labels.json"
        io.write_labels_json(f, labels, seed=3, kernel=GraphKernel(diag=5.0))
        payload = json.loads(f.read_text())
        assert payload == {
            "kernel": {"diag": 5.0, "kind": "graph"},
            "labels": [0, 1],
            "n": 2,
            "n_clusters": 2,
            "seed": 3,
        }


class TestKernelDict:
    @pytest.mark.parametrize(
        "spec",
        [
            RbfKernel(sigma=0.25),
            MissingRbfKernel(gamma=32.0),
            GraphKernel(diag=1045.0),
        ],
    )
    def test_round_trip(self, spec):
        assert io.kernel_from_dict(io.kernel_to_dict(spec)) == spec


class TestRocCsv:
    def test_round_trip_and_precision(self, tmp_path):
        curve = RocCurve.from_points([(1.0 / 3.0, 2.0 / 3.0)])
        f = tmp_path / "roc.csv"
        io.write_roc_csv(f, curve)
        text = f.read_text()
        assert text.splitlines()[0] == "fpr,tpr"
        assert "0.3333333333" in text  # ten significant digits
        back = io.read_roc_csv(f)
        for (f0, t0), (f1, t1) in zip(back.points, curve.points):
            assert f0 == pytest.approx(f1, abs=1e-9)
            assert t0 == pytest.approx(t1, abs=1e-9)


class TestClassLabels:
    def test_label_column_by_header(self, tmp_path):
        f = tmp_path / "c.csv"
        f.write_text("x,label,y\n1,a,2\n3,b,4\n")
        assert list(io.read_class_labels(f, has_header=True)) == ["a", "b"]

    def test_last_column_without_header(self, tmp_path):
        f = tmp_path / "c.csv"
        f.write_text("1,2,a\n3,4,b\n")
        assert list(io.read_class_labels(f)) == ["a", "b"]
