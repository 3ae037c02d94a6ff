import json
import math

import numpy as np
import pytest

from rotkin import kinematics
from rotkin.cli import (
    EXIT_FORMAT,
    EXIT_NUMERIC,
    EXIT_USAGE,
    compare_integrators,
    ingest_gyro_csv,
    main,
    read_trajectory_csv,
    RunConfig,
)
from rotkin.core import validate_rotation
from rotkin.errors import GyroFormatError, GyroOrderingError, GyroParseError
from rotkin.planar import embed_planar

QUARTER = embed_planar(math.pi / 2).matrix


def write_log(path, rows, header="t,wx,wy,wz", newline="\n"):
    path.write_text(newline.join([header, *rows]) + newline, encoding="utf-8")
    return path


def constant_rows(w, duration, dt):
    n = int(round(duration / dt))
    return [f"{k * dt!r},{w[0]!r},{w[1]!r},{w[2]!r}" for k in range(n + 1)]


class TestIngest:
    def test_literal(self, quarter_turn_csv):
        log = ingest_gyro_csv(quarter_turn_csv)
        assert [s.t for s in log] == [0.0, 1.0]
        assert all(s.w_B.components.tolist() == [0, 0, math.pi / 2] for s in log)

    def test_crlf(self, tmp_path):
        log = ingest_gyro_csv(write_log(tmp_path / "a.csv", ["0,1,2,3", "0.5,4,5,6"], newline="\r\n"))
        assert log[1].w_B.components.tolist() == [4, 5, 6]

    def test_empty_data(self, tmp_path):
        with pytest.raises(GyroFormatError):
            ingest_gyro_csv(write_log(tmp_path / "a.csv", []))

    @pytest.mark.parametrize("header", ["t,wy,wx,wz", "time,wx,wy,wz", "t,wx,wy"])
    def test_bad_header(self, tmp_path, header):
        with pytest.raises(GyroFormatError):
            ingest_gyro_csv(write_log(tmp_path / "a.csv", ["0,0,0,0"], header=header))

    def test_ordering_names_line(self, tmp_path):
        rows = ["0,0,0,0", "1,0,0,0", "2,0,0,0", "1.5,0,0,0"]
        with pytest.raises(GyroOrderingError) as exc:
            ingest_gyro_csv(write_log(tmp_path / "a.csv", rows))
        assert exc.value.line == 5
        assert "line 5" in str(exc.value)

    def test_parse_error_line(self, tmp_path):
        with pytest.raises(GyroParseError) as exc:
            ingest_gyro_csv(write_log(tmp_path / "a.csv", ["0,0,0,0", "1,x,0,0"]))
        assert exc.value.line == 3


class TestDeadreckon:
    def test_quarter_turn(self, quarter_turn_csv, tmp_path):
        out = tmp_path / "traj.csv"
        assert main(["deadreckon", "--input", str(quarter_turn_csv), "--output", str(out)]) == 0
        text = out.read_text()
        assert text.splitlines()[0] == "t,r11,r12,r13,r21,r22,r23,r31,r32,r33,orth_defect"
        rows = read_trajectory_csv(out)
        assert len(rows) == 2
        np.testing.assert_allclose(rows[-1][1], QUARTER, rtol=0, atol=1e-10)

    def test_zero_rate(self, tmp_path):
        log = write_log(tmp_path / "z.csv", constant_rows((0.0, 0.0, 0.0), 1.0, 0.1))
        out = tmp_path / "traj.csv"
        assert main(["deadreckon", "--input", str(log), "--output", str(out)]) == 0
        for _, M, d in read_trajectory_csv(out):
            np.testing.assert_array_equal(M, np.eye(3))
            assert d <= 1e-15

    def test_euler_raw_drifts(self, tmp_path):
        log = write_log(tmp_path / "c.csv", constant_rows((0.0, 0.0, math.pi / 2), 10.0, 0.01))
        finals = {}
        for name in ("euler_raw", "expmap_body"):
            out = tmp_path / f"{name}.csv"
            assert main(["deadreckon", "--input", str(log), "--integrator", name, "--output", str(out)]) == 0
            finals[name] = read_trajectory_csv(out)[-1][2]
        assert finals["euler_raw"] > finals["expmap_body"]

    def test_byte_identical(self, quarter_turn_csv, tmp_path):
        outs = []
        for i in range(2):
            out = tmp_path / f"o{i}.csv"
            main(["deadreckon", "--input", str(quarter_turn_csv), "--output", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        assert b"\r\n" not in outs[0]

    def test_round_trip_validates(self, tmp_path):
        rows = constant_rows((0.3, -0.7, 1.1), 2.0, 0.01)
        log = write_log(tmp_path / "r.csv", rows)
        for name in ("euler_reproject", "expmap_body", "expmap_world"):
            out = tmp_path / f"{name}.csv"
            assert main(["deadreckon", "--input", str(log), "--integrator", name, "--output", str(out)]) == 0
            for t, M, d in read_trajectory_csv(out):
                validate_rotation(M)

    def test_floats_round_trip_losslessly(self, quarter_turn_csv, tmp_path):
        out = tmp_path / "t.csv"
        main(["deadreckon", "--input", str(quarter_turn_csv), "--output", str(out)])
        last = out.read_text().splitlines()[-1].split(",")
        assert all(repr(float(v)) == v for v in last)

    def test_json(self, quarter_turn_csv, tmp_path):
        out = tmp_path / "t.json"
        assert main(["deadreckon", "--input", str(quarter_turn_csv), "--format", "json", "--output", str(out)]) == 0
        data = json.loads(out.read_text())
        assert [set(d) for d in data] == [{"t", "R", "orth_defect"}] * 2
        np.testing.assert_allclose(data[-1]["R"], QUARTER, rtol=0, atol=1e-10)

    def test_initial_attitude(self, quarter_turn_csv, tmp_path):
        out = tmp_path / "t.csv"
        init = ",".join(repr(float(v)) for v in QUARTER.reshape(-1))
        assert main(["deadreckon", "--input", str(quarter_turn_csv), "--init-attitude", init, "--output", str(out)]) == 0
        np.testing.assert_allclose(read_trajectory_csv(out)[-1][1], embed_planar(math.pi).matrix, atol=1e-12)

    def test_stdout(self, quarter_turn_csv, capsys):
        assert main(["deadreckon", "--input", str(quarter_turn_csv)]) == 0
        assert capsys.readouterr().out.startswith("t,r11")


class TestExitCodes:
    def test_corrupted_header(self, tmp_path, capsys):
        log = write_log(tmp_path / "bad.csv", ["0,0,0,1"], header="t,wx,wz,wy")
        assert main(["deadreckon", "--input", str(log)]) == EXIT_FORMAT
        assert "header" in capsys.readouterr().err

    def test_ordering(self, tmp_path):
        log = write_log(tmp_path / "bad.csv", ["1,0,0,0", "0,0,0,0"])
        assert main(["compare", "--input", str(log)]) == EXIT_FORMAT

    def test_usage(self, quarter_turn_csv, tmp_path):
        assert main(["deadreckon", "--input", str(quarter_turn_csv), "--integrator", "rk4"]) == EXIT_USAGE
        assert main(["deadreckon", "--input", str(tmp_path / "missing.csv")]) == EXIT_USAGE
        assert main(["deadreckon", "--input", str(quarter_turn_csv), "--init-attitude", "1,0,0"]) == EXIT_USAGE
        bad = ",".join(["2", "0", "0", "0", "2", "0", "0", "0", "2"])
        assert main(["deadreckon", "--input", str(quarter_turn_csv), "--init-attitude", bad]) == EXIT_USAGE
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == EXIT_USAGE

    def test_numerical_failure(self, tmp_path):
        # the Euler step overflows, so reprojection cannot converge
        log = write_log(tmp_path / "huge.csv", ["0,1e300,1e300,1e300", "1,0,0,0"])
        assert main(["deadreckon", "--input", str(log), "--integrator", "euler_reproject"]) == EXIT_NUMERIC


class TestCompare:
    def test_zero_rate(self, tmp_path):
        log = write_log(tmp_path / "z.csv", constant_rows((0.0, 0.0, 0.0), 1.0, 0.1))
        rows = compare_integrators(RunConfig(log, None))
        assert [r["integrator"] for r in rows] == ["EULER_RAW", "EULER_REPROJECT", "EXPMAP_BODY", "EXPMAP_WORLD"]
        assert all(r["final_distance"] == 0 and r["max_orth_defect"] <= 1e-15 for r in rows)

    def test_constant_rate_fine_steps(self, tmp_path):
        log = write_log(tmp_path / "c.csv", constant_rows((0.4, -0.9, 1.3), 1.0, 1e-3))
        rows = {r["integrator"]: r for r in compare_integrators(RunConfig(log, None))}
        assert rows["EULER_REPROJECT"]["final_distance"] <= 1e-2
        assert rows["EXPMAP_WORLD"]["final_distance"] <= 1e-9
        assert rows["EXPMAP_BODY"]["final_distance"] == 0.0

    def test_cli_output(self, quarter_turn_csv, tmp_path):
        out = tmp_path / "cmp.csv"
        assert main(["compare", "--input", str(quarter_turn_csv), "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "integrator,final_distance,max_orth_defect"
        assert [l.split(",")[0] for l in lines[1:]] == ["EULER_RAW", "EULER_REPROJECT", "EXPMAP_BODY", "EXPMAP_WORLD"]
        out_json = tmp_path / "cmp.json"
        assert main(["compare", "--input", str(quarter_turn_csv), "--format", "json", "--output", str(out_json)]) == 0
        assert len(json.loads(out_json.read_text())) == 4

    def test_compare_rejects_integrator_flag(self, quarter_turn_csv):
        with pytest.raises(SystemExit) as exc:
            main(["compare", "--input", str(quarter_turn_csv), "--integrator", "euler_raw"])
        assert exc.value.code == EXIT_USAGE


class TestVerify:
    def test_seed_42(self, tmp_path):
        out = tmp_path / "v.txt"
        assert main(["verify", "--seed", "42", "--output", str(out)]) == 0
        text = out.read_text()
        assert "FAIL" not in text and text.rstrip().endswith("14/14 properties passed")

    def test_deterministic(self, tmp_path):
        paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
        for p in paths:
            main(["verify", "--seed", "7", "--output", str(p)])
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_sign_flip_mutation(self, monkeypatch, tmp_path):
        original = kinematics.rdot_body_rate

        def flipped(R, w_B):
            return kinematics.RotationDerivative(-original(R, w_B).matrix, (R.from_frame, R.to_frame))

        monkeypatch.setattr(kinematics, "rdot_body_rate", flipped)
        out = tmp_path / "v.txt"
        assert main(["verify", "--seed", "42", "--output", str(out)]) == EXIT_NUMERIC
        text = out.read_text()
        assert "FAIL four_formula_consistency" in text
        replay = [l for l in text.splitlines() if "four_formula_consistency" in l and "replay" in l]
        case = json.loads(replay[0].split("replay: ", 1)[1])
        assert case["seed"] == 42 and set(case["case"]) == {"R", "w_B"}
