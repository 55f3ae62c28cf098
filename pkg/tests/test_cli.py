import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from udcevo.cli import main


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_names_class_and_aux(capsys):
    code, out, _ = run(capsys, "parse", "2-1")
    assert code == 0
    assert "main class: 2 (Religion)" in out
    assert "SpecialHyphen" in out
    assert "aux part:   -1" in out


def test_parse_json(capsys):
    code, out, _ = run(capsys, "parse", "01", "--mode", "01main", "--json")
    data = json.loads(out)
    assert (code, data["main_class"], data["aux_type"]) == (0, "01", None)


def test_parse_error_exits_1(capsys):
    code, _, err = run(capsys, "parse", "2-")
    assert code == 1
    assert "position 2" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["stats"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_console_exit_status():
    proc = subprocess.run([sys.executable, "-m", "udcevo", "diff", "only-one"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "usage:" in proc.stderr


def test_diff_same_file_no_changes(capsys):
    path = FIXTURES / "golden20.tsv"
    code, out, _ = run(capsys, "diff", path, path)
    assert code == 0
    assert out.strip() == "golden -> golden: no changes"


def test_diff_json_reports_shift(capsys):
    code, out, _ = run(capsys, "diff", FIXTURES / "ed1994.tsv", FIXTURES / "ed1998.tsv", "--json")
    data = json.loads(out)
    assert code == 0
    assert {"old_notation": "681.3", "new_notation": "004", "description": "Computer science",
            "old_class": "6", "new_class": "0"} in data["shifted"]


def test_diff_without_color_when_no_color_set(capsys, monkeypatch, write_edition):
    monkeypatch.setenv("NO_COLOR", "1")
    a = write_edition(["2\tReligion"], "a.tsv")
    b = write_edition(["3\tSocial"], "b.tsv")
    _, out, _ = run(capsys, "diff", a, b)
    assert "\033[" not in out
    assert "  + 3" in out and "  - 2" in out


def test_stats_reports_class_2_share(capsys):
    code, out, _ = run(capsys, "stats", FIXTURES / "ed2008.tsv")
    assert code == 0
    row = next(line for line in out.splitlines() if line.split()[:1] == ["2"])
    assert "89.62" in row


def test_stats_reports_special_delta(capsys):
    code, out, _ = run(capsys, "stats", FIXTURES / "ed1994.tsv", FIXTURES / "ed2009.tsv")
    assert code == 0
    assert "special auxiliaries 1994 -> 2009:" in out
    assert "6:-171" in out


def test_stats_with_rejected_line_exits_1(capsys, write_edition):
    path = write_edition(["2\tReligion", "2-\tbroken"])
    code, out, err = run(capsys, "stats", path, "--tsv")
    assert code == 1
    assert ":2: rejected" in err
    assert out.startswith("edition\t")


def test_strict_abort_exits_1(capsys, write_edition):
    path = write_edition(["2\tReligion", "2-\tbroken"])
    code, out, err = run(capsys, "stats", path, "--strict")
    assert code == 1
    assert out == ""


def test_convert_then_stats_round_trip(capsys, tmp_path):
    src = FIXTURES / "ed2008.tsv"
    out_path = tmp_path / "ed2008.export.tsv"
    assert run(capsys, "convert", src, "-o", out_path)[0] == 0
    _, direct, _ = run(capsys, "stats", src, "--json")
    code, via_export, _ = run(capsys, "stats", out_path, "--json")
    assert code == 0
    assert via_export == direct


def test_convert_flat_text(capsys, tmp_path):
    out_path = tmp_path / "ed1905.tsv"
    code, _, err = run(capsys, "convert", FIXTURES / "ed1905.txt", "-o", out_path, "--format", "flat", "--mode", "01main")
    assert code == 0
    assert "wrote 400 records" in err
    assert "01\tBibliographie\t01\t\t" in out_path.read_text(encoding="utf-8")


def test_history(capsys):
    eds = [FIXTURES / f for f in ("ed1994.tsv", "ed1998.tsv", "ed2008.tsv")]
    code, out, _ = run(capsys, "history", "004", *eds, "--json")
    data = json.loads(out)
    assert code == 0
    assert [e["kind"] for e in data["events"]] == ["Appeared", "Redescribed"]


def test_history_unknown_warns(capsys):
    code, out, err = run(capsys, "history", "999", FIXTURES / "golden20.tsv")
    assert code == 0
    assert "does not occur" in err


def test_charts_from_stats_json(capsys, tmp_path):
    stats_path = tmp_path / "stats.json"
    _, text, _ = run(capsys, "stats", FIXTURES / "ed1998.tsv", FIXTURES / "ed2008.tsv", "--json")
    stats_path.write_text(text, encoding="utf-8")

    ring = tmp_path / "ring.svg"
    assert run(capsys, "chart", "ring", stats_path, "-o", ring, "--title", "Main classes")[0] == 0
    svg = ring.read_text(encoding="utf-8")
    assert svg.count('class="ring"') == 2
    assert "<title>Main classes</title>" in svg

    line = tmp_path / "series.svg"
    assert run(capsys, "chart", "series", stats_path, "-o", line, "--keys", "2,6")[0] == 0
    svg = line.read_text(encoding="utf-8")
    assert 'data-key="2"' in svg and 'data-key="6"' in svg and 'data-key="3"' not in svg

    again = tmp_path / "series2.svg"
    run(capsys, "chart", "series", stats_path, "-o", again, "--keys", "2,6")
    assert again.read_bytes() == line.read_bytes()


def test_chart_with_no_matching_keys_exits_1(capsys, tmp_path):
    stats_path = tmp_path / "stats.json"
    _, text, _ = run(capsys, "stats", FIXTURES / "ed1998.tsv", "--json")
    stats_path.write_text(text, encoding="utf-8")
    code, _, err = run(capsys, "chart", "series", stats_path, "-o", tmp_path / "x.svg", "--keys", "nope")
    assert code == 1
    assert "error:" in err


def test_missing_file_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "stats", tmp_path / "missing.tsv")
    assert code == 1
    assert "error:" in err
