import math
import re
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from kgonpack.cli import Scene, run, svg_text
from kgonpack.constructions import unit_kgon
from kgonpack.packing import generate_triangular, tangent_polygon, write_packing, write_polygon

SVG = "{http://www.w3.org/2000/svg}"
DEMOS = Path(__file__).resolve().parents[1] / "demos"


def parse_svg(path_or_text):
    text = Path(path_or_text).read_text() if isinstance(path_or_text, Path) else path_or_text
    return ET.fromstring(text.split("?>", 1)[1])


def path_vertices(d):
    return len(re.findall(r"[-\d.]+,[-\d.]+", d))


def numbers(text):
    return re.findall(r"-?\d+\.\d+", text)


class TestSvg:
    def test_disk_and_square(self):
        root = parse_svg(svg_text(Scene().add_polygon(unit_kgon(4)).add_disks([[0.0, 0.0]])))
        circles = root.findall(f"{SVG}circle")
        paths = root.findall(f"{SVG}path")
        assert len(circles) == 1 and circles[0].get("r") == "1.000000"
        assert len(paths) == 1 and path_vertices(paths[0].get("d")) == 4

    def test_six_decimals(self):
        text = svg_text(Scene().add_polygon(unit_kgon(5)).add_disks([[0.1, 0.2]]))
        body = text.split("?>", 1)[1]
        assert all(len(x.split(".")[1]) == 6 for x in numbers(body))
        assert "-0.000000" not in text

    def test_viewbox_margin(self):
        root = parse_svg(svg_text(Scene().add_polygon(unit_kgon(4))))
        x, y, w, h = map(float, root.get("viewBox").split())
        assert (x, y, w, h) == pytest.approx((-1.1, -1.1, 2.2, 2.2))

    def test_y_flipped(self):
        root = parse_svg(svg_text(Scene().add_disks([[0.0, 3.0]])))
        assert float(root.find(f"{SVG}circle").get("cy")) == -3.0

    def test_empty_scene(self):
        with pytest.raises(ValueError):
            svg_text(Scene())

    def test_non_finite(self):
        with pytest.raises(ValueError):
            svg_text(Scene().add_curve([[0.0, 0.0], [math.inf, 1.0]]))


class TestRun:
    def test_bound(self, capsys):
        assert run(["bound", "3", "4"]) == 0
        out = capsys.readouterr().out
        assert "kgon_bound = 11.732050807569" in out
        assert "tightness = NotTightKnown" in out

    def test_construct_hexagon(self, tmp_path, capsys):
        svg = tmp_path / "hex.svg"
        assert run(["construct", "7", "6", "-o", str(svg)]) == 0
        assert "area = 25.856406460" in capsys.readouterr().out
        root = parse_svg(svg)
        assert len(root.findall(f"{SVG}circle")) == 7

    def test_construct_prints_optimal(self, capsys):
        assert run(["construct", "7", "6"]) == 0
        assert re.search(r"^area = 25\.856406460\d* optimal = true$", capsys.readouterr().out, re.M)

    def test_construct_three_disks(self, tmp_path):
        svg = tmp_path / "t.svg"
        assert run(["construct", "3", "3", "-o", str(svg)]) == 0
        root = parse_svg(svg)
        paths = root.findall(f"{SVG}path")
        assert len(root.findall(f"{SVG}circle")) == 3
        assert len(paths) == 1 and path_vertices(paths[0].get("d")) == 3

    def test_construct_non_optimal_says_false(self, capsys):
        assert run(["construct", "2", "5"]) == 0
        assert "optimal = false" in capsys.readouterr().out

    def test_construct_domain_error(self, capsys):
        assert run(["construct", "2", "3"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_classify_demo_file(self, capsys):
        assert run(["classify", str(DEMOS / "n10_triangular.pack")]) == 0
        assert capsys.readouterr().out.strip() == "Groemer (perimeter 18.000000, required 16)"

    def test_classify_missing_file(self):
        assert run(["classify", "/nonexistent/x.pack"]) == 1

    def test_classify_overlap(self, tmp_path):
        f = tmp_path / "bad.pack"
        f.write_text("0 0\n1 0\n")
        assert run(["classify", str(f)]) == 1

    def test_trisectrix_svg(self, tmp_path):
        svg = tmp_path / "tri.svg"
        assert run(["trisectrix", "1", "--samples", "500", "-o", str(svg)]) == 0
        lines = parse_svg(svg).findall(f"{SVG}polyline")
        assert len(lines) == 1 and len(lines[0].get("points").split()) == 500

    def test_trisectrix_text(self, capsys):
        assert run(["trisectrix", "2", "--samples", "4"]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 4

    def test_optimize(self, tmp_path, capsys):
        out = tmp_path / "opt.txt"
        assert run(["optimize", "1", "4", "--restarts", "1", "--seed", "3", "-o", str(out)]) == 0
        text = out.read_text()
        assert text == capsys.readouterr().out
        assert "seed = 3" in text and text.count("side ") == 4

    def test_optimize_svg(self, tmp_path):
        svg = tmp_path / "opt.svg"
        assert run(["optimize", "1", "3", "--restarts", "1", "-o", str(svg)]) == 0
        assert len(parse_svg(svg).findall(f"{SVG}circle")) == 1

    def test_optimize_out_of_range(self):
        assert run(["optimize", "9", "4", "--restarts", "1"]) == 1

    def test_verify_round_trip(self, tmp_path, capsys):
        poly, pack = tmp_path / "p.poly", tmp_path / "p.pack"
        assert run(["construct", "6", "3", "--polygon-out", str(poly), "--packing-out", str(pack)]) == 0
        capsys.readouterr()
        assert run(["verify", str(poly), str(pack), "6", "3"]) == 0
        assert "optimal = true" in capsys.readouterr().out

    def test_verify_not_wegner(self, tmp_path, capsys):
        packing = generate_triangular(4)
        pack, poly = tmp_path / "t.pack", tmp_path / "t.poly"
        write_packing(pack, packing)
        write_polygon(poly, tangent_polygon(packing).polygon)
        assert run(["verify", str(poly), str(pack), "10", "3"]) == 0
        out = capsys.readouterr().out
        assert "each_side_tangent = true" in out and "wegner_packed = false" in out
        assert "optimal = false" in out

    def test_unwritable_output(self):
        assert run(["construct", "1", "4", "-o", "/nonexistent/dir/x.svg"]) == 1

    @pytest.mark.parametrize(
        "argv",
        [["frobnicate"], [], ["bound", "3"], ["bound", "x", "4"], ["trisectrix", "-1"], ["optimize", "2", "4", "--bogus"]],
    )
    def test_usage_errors(self, argv, capsys):
        assert run(argv) == 2
        assert "usage" in capsys.readouterr().err
