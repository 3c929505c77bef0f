import math

import pytest

from core.exceptions import SchemaMismatchError
from core.experiments import get_experiment_registry, read_rows, run_experiment, summarize_rows, write_rows
from data_models import EXPERIMENTS, ExperimentSpec, ResultRow


def run(pool, **data):
    result = run_experiment(ExperimentSpec.build(data), pool)
    assert result, result.error
    return result


class TestRegistry:
    def test_every_family_registered(self):
        registry = get_experiment_registry()
        names = {schema["name"] for schema in registry.get_available_experiments()}
        assert names == set(EXPERIMENTS)
        assert registry.get_experiment_by_name("nope") is None

    def test_domain_error_becomes_failed_result(self, pool):
        spec = ExperimentSpec.build({"experiment": "tail", "t": 0.1, "r": 2.0, "n": 8, "n_samples": 10,
                                     "method": "tilted", "tilt": 1.5})
        result = run_experiment(spec, pool)
        assert not result
        assert result.error_code == "TILT_DOMAIN_ERROR"


class TestFamilies:
    def test_verify(self, pool):
        result = run(pool, experiment="verify", max_n=4, fields=30)
        assert len(result.rows) == 5
        assert result.passed
        assert all(row.status == "pass" for row in result.rows)

    def test_uniform_walk(self, pool):
        result = run(pool, experiment="uniform-walk", n=2, k=1)
        assert result.rows[0].p_hat == pytest.approx(1.0 / 6.0, abs=1e-15)
        corner = run(pool, experiment="uniform-walk", n_list="2..10:2").rows
        assert [row.n for row in corner] == [2, 4, 6, 8, 10]
        assert corner[0].fekete_bound == pytest.approx(math.log(6.0) / 2.0)

    def test_tail_corner_note(self, pool):
        row = run(pool, experiment="tail", t=0.5, r=2.0, n=5, n_samples=1000).rows[0]
        assert row.note.startswith("exact=")
        assert row.wall_time_s is None

    def test_timing_column(self, pool):
        row = run(pool, experiment="shape", t=0.0, n=4, n_samples=50, timing=True).rows[0]
        assert row.wall_time_s is not None and row.wall_time_s >= 0.0

    def test_identity_rows(self, pool):
        rows = run(pool, experiment="identity", t=0.5, n=4, budget=500).rows
        assert [row.note.split(";")[0] for row in rows] == ["side=midpoint", "side=passage"]
        assert "target=" in rows[0].note

    def test_identity_note_carries_intervals(self, pool):
        note = run(pool, experiment="identity", t=0.5, n=4, budget=500).rows[0].note
        assert "A_ci=" in note and "B_ci=" in note

    def test_monotone_over_n_list(self, pool):
        rows = run(pool, experiment="monotone", r=2.0, n_list="6,8", t_list="0,0.5", n_samples=1000).rows
        assert [(row.n, row.t) for row in rows] == [(6, 0.0), (6, 0.5), (8, 0.0), (8, 0.5)]

    def test_convexity_statuses(self, pool):
        result = run(pool, experiment="convexity", n=8, t_list="0.5", r_list="1.5,2,2.5", n_samples=20_000)
        assert [row.r for row in result.rows] == [1.5, 2.0, 2.5]
        assert result.passed
        assert all(row.status == "pass" for row in result.rows)

    def test_left_tail_scan_uses_given_tilt(self, pool):
        rows = run(pool, experiment="left-tail", eps=1.0, n_list="2,4", n_samples=500, tilt=0.0).rows
        assert [row.method for row in rows] == ["direct", "direct"]

    def test_monotone_statuses(self, pool):
        rows = run(pool, experiment="monotone", r=2.0, n=8, t_list="0,0.25,0.5", n_samples=2000).rows
        assert [row.t for row in rows] == [0.0, 0.25, 0.5]
        assert all(row.status in ("pass", "fail", "zero-hit") for row in rows)

    def test_left_tail_scan_note(self, pool):
        rows = run(pool, experiment="left-tail", eps=1.0, n_list="2,4", n_samples=500).rows
        assert len(rows) == 2
        assert all("superexponential=" in row.note for row in rows)


class TestOutput:
    @staticmethod
    def rows():
        return [
            ResultRow(experiment="fekete", distribution="exp:1", n=n, t=0.5, r=2.0, n_samples=100,
                      p_hat=math.exp(-0.3 * n), fekete_bound=0.3, seed=1)
            for n in (4, 8, 12)
        ]

    @pytest.mark.parametrize("name", ["rows.csv", "rows.jsonl"])
    def test_round_trip(self, tmp_path, name):
        path = str(tmp_path / name)
        fmt = "jsonl" if name.endswith("jsonl") else "csv"
        assert write_rows(self.rows(), path, fmt) == 3
        assert read_rows(path) == self.rows()

    def test_csv_is_crlf(self, tmp_path):
        path = tmp_path / "rows.csv"
        write_rows(self.rows(), str(path))
        data = path.read_bytes()
        assert data.startswith(b"experiment,distribution,t,r,n,")
        assert data.count(b"\r\n") == 4

    def test_schema_mismatch(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("name,value\r\nx,1\r\n", encoding="utf-8")
        with pytest.raises(SchemaMismatchError):
            read_rows(str(path))


class TestReport:
    def test_slope(self):
        summary = summarize_rows(TestOutput.rows())
        assert summary.fit.slope == pytest.approx(0.3, abs=1e-9)
        assert summary.fit.points == 3
        assert "slope" in summary.render()

    def test_zero_hits_excluded(self):
        rows = TestOutput.rows()
        rows[1] = rows[1].model_copy(update={"p_hat": 0.0, "status": "zero-hit", "fekete_bound": math.inf})
        summary = summarize_rows(rows)
        assert summary.excluded == [8]
        assert summary.fit.points == 2

    def test_mixed_or_empty(self):
        rows = TestOutput.rows() + [ResultRow(experiment="tail", distribution="exp:1", n=4)]
        with pytest.raises(SchemaMismatchError):
            summarize_rows(rows)
        with pytest.raises(SchemaMismatchError):
            summarize_rows([])

    def test_uniform_target(self, pool):
        rows = run(pool, experiment="uniform-walk", n_list="10..40:10").rows
        summary = summarize_rows(rows)
        assert summary.target == pytest.approx(2.0 * math.log(2.0))
        assert 1.0 < summary.fit.slope < 2.0 * math.log(2.0) + 0.1
