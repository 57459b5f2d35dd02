import io
import subprocess
import sys

import pytest

from coxtile.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_count_only():
    assert run("words", "enumerate", "--host", "A2", "--element", "3 2 1", "--count-only") == (0, "2\n")


def test_classes_alias():
    assert run("classes", "--host", "A3", "--element", "longest", "--count-only") == (0, "8\n")
    code, text = run("words", "classes", "--host", "A3", "--element", "longest", "--relations", "none")
    assert code == 0 and text.count("class ") == 16


def test_words_in_embedded_group():
    code, text = run("words", "enumerate", "--row", "A5-B3", "--element", "longest", "--count-only")
    assert (code, text) == (0, "42\n")


def test_bad_word_is_usage_error():
    assert run("tile", "--host", "A3", "--word", "bad")[0] == 2
    assert run("tile", "--host", "A3", "--word", "1 1")[0] == 2
    assert run("tile", "--host", "E6", "--word", "1")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("verify")[0] == 2


def test_info():
    code, text = run("info", "--row", "D6-H3")
    assert code == 0 and "order=120" in text and "max_length=15" in text
    code, text = run("info", "--host", "D4")
    assert "diagram_labels:" in text


def test_embed():
    code, text = run("embed", "--row", "A6-B3", "--word", "1")
    assert code == 0 and "expansion: 3 4 3" in text
    code, text = run("embed", "verify-matrix", "--row", "D5-B4")
    assert code == 0 and text.endswith("ok=true type=B4\n")


def test_tile_and_svg(tmp_path):
    svg = tmp_path / "d4.svg"
    code, text = run("tile", "--host", "D4", "--word", "1", "--svg", str(svg), "--labels")
    assert code == 0 and text.startswith("octagon_megatile -2,-1,1,2 ")
    assert svg.read_text().count("<path") == 1


def test_subtile_and_render(tmp_path):
    code, text = run("subtile", "--row", "A6-B3", "--xword", "1")
    assert code == 0 and text.startswith("hexagon_megatile 3,4,5 ")
    svg = tmp_path / "h3.svg"
    code, text = run("render", "--row", "D6-H3", "--word", "longest", "--svg", str(svg))
    assert code == 0 and "15 tiles" in text
    # a grouped megatile may be several disjoint pieces, one path each
    assert svg.read_text().count('<path class="grouped_megatile"') >= 15


def test_render_needs_svg():
    assert run("render", "--host", "A2", "--word", "1")[0] == 2


def test_verify_line():
    code, text = run("verify", "--case", "b3-in-a5", "--geometry")
    assert code == 0
    assert text.splitlines()[0] == "case=b3-in-a5 words=42 classes=14 tilings=14 ok=true coverage=true"


def test_caps_from_flags_and_file(tmp_path):
    assert run("info", "--host", "A4", "--group-cap", "10")[0] == 2
    cfg = tmp_path / "c.cfg"
    cfg.write_text("enumeration_cap = 3\n")
    assert run("words", "enumerate", "--host", "A3", "--element", "longest", "--config", str(cfg))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coxtile", "classes", "--host", "A2",
                           "--element", "longest", "--count-only"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"
