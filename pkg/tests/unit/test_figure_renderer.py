from pathlib import Path

import pytest

from src.core.octagon import octagon_construct
from src.templates.figure_renderer import FigureRenderError, FigureRenderer, svg_point


@pytest.mark.unit
def test_svg_point_flips_the_y_axis():
    assert svg_point(1 + 2j) == "1000.000,-2000.000"


@pytest.mark.unit
def test_render_octagon_writes_svg(tmp_path: Path):
    cfg = octagon_construct(0.9 + 0.1j)
    out = tmp_path / "figures" / "octagon.svg"

    content = FigureRenderer().render_octagon(cfg, tiles=2, output_path=out)

    assert out.exists()
    assert out.read_text(encoding="utf-8") == content
    assert content.startswith("<?xml")
    assert 'id="octagon"' in content
    for name in ("ASO", "BTO", "CUO", "DRO"):
        assert f'id="triangle-{name}"' in content
    # Three translated copies complete the 2x2 block.
    tiles = content.split('<g id="tiles"')[1].split("</g>")[0]
    assert tiles.count("<polygon") == 3


@pytest.mark.unit
def test_octagon_context_is_deterministic():
    renderer = FigureRenderer()
    cfg = octagon_construct(0.25 + 0.6j)

    assert renderer.octagon_context(cfg, 3) == renderer.octagon_context(cfg, 3)
    assert len(renderer.octagon_context(cfg, 3)["copies"]) == 8


@pytest.mark.unit
def test_tiles_must_be_positive():
    with pytest.raises(ValueError):
        FigureRenderer().octagon_context(octagon_construct(0.5 + 0.5j), 0)


@pytest.mark.unit
def test_missing_template_raises(tmp_path: Path):
    renderer = FigureRenderer(templates_dir=tmp_path)

    with pytest.raises(FigureRenderError):
        renderer.render_octagon(octagon_construct(0.5 + 0.5j))
