"""End-to-end CLI checks: schemas, exit codes, determinism, SVG output."""

import contextlib
import io
import json
from fractions import Fraction

import pytest

from takagi.cli import main
from takagi.curve import eval_rational
from takagi.rationals import parse_rational


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# eval


def test_eval_exact_payload_bytes():
    code, out, err = run("eval", "--x", "1/4")
    assert (code, err) == (0, "")
    assert out == '{\n  "x": "1/4",\n  "T": "1/2",\n  "method": "exact"\n}\n'


def test_eval_any_denominator():
    code, out, _ = run("eval", "--x", "1/5")
    assert code == 0
    assert json.loads(out)["T"] == "8/15"


def test_eval_approx_reports_certificate():
    code, out, _ = run("eval", "--x", "1/3", "--approx-depth", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "truncated(depth=8)"
    value = parse_rational(payload["T"])
    bound = parse_rational(payload["bound"])
    assert abs(eval_rational(Fraction(1, 3)) - value) <= bound


# ---------------------------------------------------------------------------
# classify / levelset


def test_classify_finite_gold():
    code, out, _ = run("classify", "--y", "1/8")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "finite"
    assert payload["count"] == 2
    assert payload["preimages"] == ["1/48", "47/48"]
    assert "witness" not in payload


def test_classify_countable_witness_attains():
    code, out, _ = run("classify", "--y", "1/2")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "countably-infinite"
    assert "count" not in payload and "preimages" not in payload
    witness = parse_rational(payload["witness"])
    assert eval_rational(witness) == Fraction(1, 2)


def test_classify_unsupported_denominator_exits_3():
    code, out, err = run("classify", "--y", "1/5")
    assert (code, out) == (3, "")
    assert err.startswith("error:")


def test_classify_budget_exhaustion_exits_4_with_result():
    code, out, _ = run("classify", "--y", "9/16", "--max-states", "3")
    assert code == 4
    payload = json.loads(out)
    assert payload["verdict"] == "indeterminate"
    assert payload["states_explored"] == 3


def test_levelset_json_roundtrip():
    code, out, _ = run("levelset", "--y", "7/12")
    assert code == 0
    payload = json.loads(out)
    assert payload["cardinality"] == 4 and payload["n_local"] == 1
    preimages = [parse_rational(s) for s in payload["preimages"]]
    assert len(preimages) == 4 == len(set(preimages))
    for x in preimages:
        assert eval_rational(x) == Fraction(7, 12)


def test_levelset_csv():
    code, out, _ = run("levelset", "--y", "1/8", "--format", "csv")
    assert code == 0
    assert out == "i,x\n0,1/48\n1,47/48\n"


def test_levelset_csv_refuses_infinite_sets():
    code, out, err = run("levelset", "--y", "1/2", "--format", "csv")
    assert (code, out) == (2, "")
    assert "countably-infinite" in err


# ---------------------------------------------------------------------------
# census / series / grid


def test_census_csv_matches_closed_forms():
    code, out, _ = run("census", "--max-order", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "m,count,expected,match"
    assert lines[1:4] == ["0,1,1,true", "1,2,2,true", "2,6,6,true"]
    assert all(line.endswith("true") for line in lines[1:])


def test_census_filters():
    code, out, _ = run("census", "--max-order", "4", "--filter", "leading", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["count"] for r in rows] == [1, 1, 2, 5, 14]  # Catalan numbers
    assert all(r["match"] for r in rows)

    code, out, _ = run("census", "--max-order", "4", "--filter", "gen1", "--format", "json")
    rows = json.loads(out)["rows"]
    assert [r["count"] for r in rows] == [0, 2, 2, 4, 10]  # 2 * Catalan(m-1)
    assert all(r["match"] for r in rows)


def test_series_values():
    code, out, _ = run("series", "--which", "catalan", "--terms", "0")
    assert code == 0 and json.loads(out)["value"] == 1.0
    code, out, _ = run("series", "--which", "local", "--terms", "2")
    assert json.loads(out)["value"] == 1.03125
    code, out, _ = run("series", "--which", "cardinality", "--terms", "1")
    assert json.loads(out)["value"] == 2.25


def test_grid_csv_depth1():
    code, out, _ = run("grid", "--depth", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "j,y,verdict,cardinality,n_local,states"
    assert lines[1] == "0,0/1,finite,2,1,1"
    assert lines[2] == "1,1/12,finite,2,1,15"
    assert len(lines) == 10  # header + 9 ordinates
    # empty cells where cardinality is undefined
    assert any(",countably-infinite,,," in line for line in lines)


def test_grid_json_schema():
    code, out, _ = run("grid", "--depth", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["depth"] == 1 and payload["ordinates"] == 9
    assert payload["verdicts"] == {
        "finite": 6,
        "countably-infinite": 2,
        "uncountable": 1,
        "indeterminate": 0,
    }
    assert payload["finite_fraction"] == pytest.approx(6 / 9)


# ---------------------------------------------------------------------------
# signed


def test_signed_subcommands():
    code, out, _ = run("signed", "eval", "--signs", "+-", "--x", "1/3")
    assert code == 0
    assert json.loads(out) == {"signs": "(+-)", "x": "1/3", "value": "2/9"}

    code, out, _ = run("signed", "extrema", "--signs", "++-")
    assert json.loads(out) == {
        "signs": "(++-)",
        "max": "67/126",
        "min": "0/1",
        "height": "67/126",
    }

    code, out, _ = run("signed", "localcount", "--signs", "+-", "--y", "1/2", "--max-order", "3")
    assert json.loads(out)["count"] == 1


def test_signed_missing_point_is_usage_error():
    code, out, err = run("signed", "eval", "--signs", "+-")
    assert (code, out) == (2, "")


# ---------------------------------------------------------------------------
# plot


def test_plot_svg_structure():
    code, out, _ = run("plot", "--depth", "4")
    assert code == 0
    assert out.startswith('<svg xmlns="http://www.w3.org/2000/svg" width="768" height="512"')
    assert out.endswith("</svg>\n")
    polyline = next(line for line in out.splitlines() if line.startswith("<polyline"))
    points = polyline.split('points="')[1].split('"')[0].split()
    assert len(points) == 17  # 2^4 + 1 samples
    assert points[0] == "0,512" and points[-1] == "768,512"


def test_plot_highlight_box():
    code, out, _ = run("plot", "--depth", "4", "--highlight", "1/4")
    assert code == 0
    rects = [line for line in out.splitlines() if line.startswith("<rect") and "stroke" in line]
    assert len(rects) == 1
    assert 'x="192" y="0" width="192" height="128"' in rects[0]


def test_plot_rejects_non_corner_highlight():
    code, out, err = run("plot", "--depth", "4", "--highlight", "1/3")
    assert (code, out) == (2, "")
    assert "error:" in err


# ---------------------------------------------------------------------------
# plumbing


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "value.json"
    code, out, _ = run("eval", "--x", "1/4", "--out", str(target))
    assert (code, out) == (0, "")
    assert json.loads(target.read_text())["T"] == "1/2"


def test_byte_determinism():
    for argv in (
        ("grid", "--depth", "1", "--format", "json"),
        ("plot", "--depth", "5", "--highlight", "1/4,1/2"),
        ("levelset", "--y", "7/12"),
    ):
        first, second = run(*argv), run(*argv)
        assert first == second


def test_usage_errors_and_help():
    assert run("eval")[0] == 2  # missing required --x
    assert run("no-such-command")[0] == 2
    assert run("--help")[0] == 0
    assert run("classify", "--help")[0] == 0
