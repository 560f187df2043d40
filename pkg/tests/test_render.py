import numpy as np
import pytest

from planepart.render import MAX_SVG_COLUMNS, render_ppm, render_svg

GOLDEN_SINGLE_CUBE_SVG = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="41" height="44" '
    'viewBox="0 0 40.78 44.00">\n'
    '<rect width="100%" height="100%" fill="white"/>\n'
    '<path d="M 20.39,10.00 L 30.78,16.00 L 20.39,22.00 L 10.00,16.00 Z" '
    'fill="#ede9dd" stroke="#3d3a35" stroke-width="0.6"/>\n'
    '<path d="M 30.78,28.00 L 20.39,34.00 L 20.39,22.00 L 30.78,16.00 Z" '
    'fill="#9a8f7f" stroke="#3d3a35" stroke-width="0.6"/>\n'
    '<path d="M 10.00,28.00 L 20.39,34.00 L 20.39,22.00 L 10.00,16.00 Z" '
    'fill="#c9c0ae" stroke="#3d3a35" stroke-width="0.6"/>\n'
    "</svg>\n"
)


class TestSvg:
    def test_single_cube_golden(self):
        assert render_svg([[1]]) == GOLDEN_SINGLE_CUBE_SVG

    def test_empty_blank_canvas(self):
        out = render_svg([])
        assert out.startswith("<svg xmlns=")
        assert "<path" not in out
        assert render_svg([]) == out

    def test_deterministic(self):
        grid = [[3, 2, 1], [2, 2, 0], [1, 0, 0]]
        assert render_svg(grid) == render_svg(grid)

    def test_exposed_faces_only(self):
        # a 1x1 tower of height 2 next to height 1: one side strip each way
        two_cols = render_svg([[2, 1]])
        assert two_cols.count("<path") == 2 * 1 + 4  # 2 tops + exposed sides

    def test_too_large_suggests_ppm(self):
        big = np.ones((600, 600), dtype=np.int64)
        assert 600 * 600 > MAX_SVG_COLUMNS
        with pytest.raises(ValueError, match="ppm"):
            render_svg(big)


class TestPpm:
    def test_empty(self):
        assert render_ppm([]) == b"P5\n1 1\n255\n\x00"

    def test_single_row_scaling(self):
        assert render_ppm([[2, 1]]) == b"P5\n1 2\n255\n\x7f\xff"
        assert render_ppm([[2], [1]]) == b"P5\n2 1\n255\n\xff\x7f"

    def test_deterministic_bytes(self):
        grid = [[5, 3], [2, 1]]
        assert render_ppm(grid) == render_ppm(grid)

    def test_header_dimensions(self):
        out = render_ppm(np.ones((7, 4), dtype=np.int64))
        assert out.startswith(b"P5\n7 4\n255\n")
        assert len(out) == len(b"P5\n7 4\n255\n") + 28
