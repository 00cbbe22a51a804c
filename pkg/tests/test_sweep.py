import math
import re

import pytest

from entcost import cli
from entcost.errors import SweepIOError
from entcost.measurement import BELL_PARAMS, CanonicalParams
from entcost.search import DESK_MEASUREMENT_SPEC, GridSpec
from entcost.sweep import (
    CSV_COLUMNS,
    SweepRecord,
    default_workers,
    emit_csv,
    evaluate_point,
    measurement_points,
    parse_angle,
    read_csv,
    run_sweep,
    scatter_svg,
    verify_special_cases,
)

PI = math.pi
CHEAP_DET = GridSpec(PI / 2, PI, PI / 2, refine_iters=10)
TINY_MEAS = GridSpec(PI / 2, PI, PI / 2, mode="random", n_samples=4, seed=3)


@pytest.fixture(scope="module")
def product_record():
    return evaluate_point(CanonicalParams(), CHEAP_DET)


@pytest.fixture(scope="module")
def bell_record():
    return evaluate_point(BELL_PARAMS, CHEAP_DET)


def test_desk_measurement_grid_size():
    assert DESK_MEASUREMENT_SPEC.grid_size() == 3**3 * 4**4 * 3 == 20736


def test_csv_single_record(tmp_path, product_record):
    path = tmp_path / "one.csv"
    emit_csv([product_record], path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == "a,b,c,d,u,v,x,y,entropy_bound,best_CL,delta,positive,evaluations"
    fields = lines[1].split(",")
    assert fields[11] == "false"
    assert float(fields[8]) == 0.0 and abs(float(fields[9])) < 1e-12


def test_csv_roundtrip_full_precision(tmp_path, bell_record, product_record):
    path = tmp_path / "two.csv"
    emit_csv([product_record, bell_record], path)
    back = read_csv(path)
    assert back == [product_record, bell_record]


def test_csv_requires_records(tmp_path):
    with pytest.raises(ValueError):
        emit_csv([], tmp_path / "x.csv")


def _circles(svg):
    return [(float(x), float(y)) for x, y in re.findall(r'<circle cx="([\d.]+)" cy="([\d.]+)"', svg)]


def test_svg_dots_on_identity_line(product_record, bell_record):
    svg = scatter_svg([product_record, bell_record])
    assert 'width="800" height="600"' in svg
    line = re.search(r'id="entropy-bound" x1="([\d.]+)" y1="([\d.]+)" x2="([\d.]+)" y2="([\d.]+)"', svg)
    x1, y1, x2, y2 = map(float, line.groups())
    (px, py), (bx, by) = _circles(svg)
    assert (px, py) == (x1, y1)  # product record at (0, 0)
    assert (bx, by) == pytest.approx((x2, y2), abs=0.01)  # bell record at (1, 1)


def test_svg_points_not_below_line(tmp_path):
    run_sweep(TINY_MEAS, CHEAP_DET, workers=1, out=tmp_path / "s.csv")
    for r in read_csv(tmp_path / "s.csv"):
        assert r.best_CL >= r.entropy_bound - 1e-9
        assert abs(r.best_CL - r.entropy_bound - r.delta) < 1e-9
        assert 0 <= r.entropy_bound <= 1 and r.best_CL <= 1 + 1e-12


def test_run_sweep_summary_and_order(tmp_path):
    out, svg = tmp_path / "s.csv", tmp_path / "s.svg"
    summary = run_sweep(TINY_MEAS, CHEAP_DET, workers=1, out=out, svg=svg)
    assert summary["n_points"] == 4
    assert 0 <= summary["n_strict"] <= 4
    assert svg.read_text().count("<circle") == 4
    records = read_csv(out)
    assert [r.measurement_params for r in records] == [
        CanonicalParams.from_array(row, wrap=True)
        for row in measurement_points(TINY_MEAS)
    ]
    assert summary["max_delta"] == max(r.delta for r in records)


def test_run_sweep_unwritable(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(SweepIOError):
        run_sweep(TINY_MEAS, CHEAP_DET, workers=1, out=blocker / "sub" / "x.csv")


def test_verify_special_cases():
    rows = verify_special_cases(CHEAP_DET, n_images=1, seed=2)
    assert {r.case for r in rows} == {"product", "bell", "case_iii"}
    assert len(rows) == 6
    assert all(r.passed for r in rows), rows


@pytest.mark.parametrize("text,value", [("0.3", 0.3), ("pi", PI), ("pi/8", PI / 8), ("3pi/4", 3 * PI / 4),
                                        ("3*pi/4", 3 * PI / 4), ("-pi/2", -PI / 2), ("2 * pi", 2 * PI)])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value)


def test_env_caps_workers(monkeypatch):
    monkeypatch.setenv("ENTCOST_THREADS", "1")
    assert default_workers() == 1


class TestCli:
    def test_point(self, capsys):
        assert cli.main(["point", "pi/4", "0", "pi/4", "0", "pi/2", "0", "0", "0",
                         "--det-angle-step", "pi/2", "--det-phase-step", "pi", "--det-x-step", "pi/2"]) == 0
        out = dict(line.split("=", 1) for line in capsys.readouterr().out.splitlines())
        assert float(out["best_CL"]) == pytest.approx(1.0, abs=1e-6)
        assert out["positive"] == "false"

    def test_point_out_of_range(self, capsys):
        assert cli.main(["point", "3", "0", "0", "0", "0", "0", "0", "0"]) == cli.EXIT_CONFIG

    def test_bad_flag_is_config_error(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["sweep", "--meas-mode", "nope"])
        assert exc.value.code == cli.EXIT_CONFIG

    def test_config_file_and_precedence(self, tmp_path, capsys):
        conf = tmp_path / "run.conf"
        out = tmp_path / "from_conf.csv"
        conf.write_text(
            "# tiny sweep\n"
            "meas_mode = random\nmeas_n_samples = 5\nseed = 1\n"
            "det_angle_step = pi/2\ndet_phase_step = pi\ndet_x_step = pi/2\ndet_refine_iters = 3\n"
            f"workers = 1\nout = {out}\n"
        )
        assert cli.main(["sweep", "--config", str(conf), "--meas-n-samples", "2"]) == 0
        assert "n_points=2" in capsys.readouterr().out
        assert len(out.read_text().splitlines()) == 3

    def test_bad_config_line(self, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("no equals sign here\n")
        assert cli.main(["sweep", "--config", str(conf)]) == cli.EXIT_CONFIG

    def test_io_failure_exit_code(self, tmp_path):
        assert cli.main(["plot", str(tmp_path / "missing.csv"), str(tmp_path / "o.svg")]) == cli.EXIT_IO

    def test_plot(self, tmp_path, product_record, bell_record):
        emit_csv([product_record, bell_record], tmp_path / "r.csv")
        assert cli.main(["plot", str(tmp_path / "r.csv"), str(tmp_path / "r.svg")]) == 0
        assert (tmp_path / "r.svg").read_text().count("<circle") == 2

    def test_verify(self, capsys):
        code = cli.main(["verify", "--images", "1", "--det-angle-step", "pi/2", "--det-phase-step", "pi",
                         "--det-x-step", "pi/2", "--det-refine-iters", "5"])
        out = capsys.readouterr().out
        assert code == 0 and out.count("PASS") == 6


def test_record_row_format(product_record):
    row = product_record.row()
    assert len(row) == len(CSV_COLUMNS)
    assert isinstance(product_record, SweepRecord)
