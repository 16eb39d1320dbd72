"""
Figure renderer for the octagon construction.

Renders the Jinja2 SVG template with the square, the four right isosceles
triangles, the octagon and a block of translated copies showing the tiling.
"""

from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

from jinja2 import Environment, FileSystemLoader, select_autoescape

from ..core.config import FIGURE_TEMPLATES_DIR
from ..models.octagon import OCTAGON_ORDER, SQUARE_VERTICES, OctagonConfig

# SVG user units per unit length of the complex plane.
SVG_SCALE = 1000
MARGIN = 0.25


class FigureRenderError(Exception):
    """Error rendering a figure template."""
    pass


def svg_point(z: complex) -> str:
    """Plane point to SVG coordinates (y axis flipped)."""
    return f"{SVG_SCALE * z.real:.3f},{-SVG_SCALE * z.imag:.3f}"


def svg_points(points: Iterable[complex]) -> str:
    return " ".join(svg_point(z) for z in points)


class FigureRenderer:
    """
    Renderer for Jinja2 figure templates.
    """

    def __init__(self, templates_dir: Union[str, Path] = None):
        """
        Initialize the figure renderer.

        Args:
            templates_dir: Directory containing the SVG templates
        """
        self.templates_dir = Path(templates_dir) if templates_dir else FIGURE_TEMPLATES_DIR

        self.env = Environment(
            loader=FileSystemLoader(str(self.templates_dir)),
            autoescape=select_autoescape(["svg", "xml", "svg.j2"]),
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.env.filters["svg_point"] = svg_point
        self.env.filters["svg_points"] = svg_points

    def render_template(self, template_name: str, context: Dict[str, Any]) -> str:
        """
        Render a template with the given context.

        Raises:
            FigureRenderError: If rendering fails
        """
        try:
            template = self.env.get_template(template_name)
            return template.render(**context)
        except Exception as e:
            raise FigureRenderError(f"Error rendering {template_name}: {e}")

    def octagon_context(self, cfg: OctagonConfig, tiles: int = 1) -> Dict[str, Any]:
        """Drawing primitives for the octagon figure, in a fixed order."""
        if tiles < 1:
            raise ValueError("tiles must be at least 1")
        octagon = list(cfg.octagon)
        copies: List[str] = []
        for m in range(tiles):
            for n in range(tiles):
                if m == 0 and n == 0:
                    continue
                copies.append(svg_points(z + complex(m, n) for z in octagon))

        every = octagon + [z + complex(m, n) for z in octagon for m in range(tiles) for n in range(tiles)]
        min_x = min(z.real for z in every) - MARGIN
        max_x = max(z.real for z in every) + MARGIN
        min_y = min(z.imag for z in every) - MARGIN
        max_y = max(z.imag for z in every) + MARGIN

        labels = [(name, cfg.point(name)) for name in OCTAGON_ORDER] + [("O", cfg.O)]
        return {
            "view_box": (
                f"{SVG_SCALE * min_x:.3f} {-SVG_SCALE * max_y:.3f} "
                f"{SVG_SCALE * (max_x - min_x):.3f} {SVG_SCALE * (max_y - min_y):.3f}"
            ),
            "width": SVG_SCALE * (max_x - min_x),
            "height": SVG_SCALE * (max_y - min_y),
            "square": svg_points(SQUARE_VERTICES[name] for name in "ABCD"),
            "octagon": svg_points(octagon),
            "copies": copies,
            "triangles": [(name, svg_points(tri)) for name, tri in cfg.construction_triangles.items()],
            "labels": [
                {"name": name, "x": SVG_SCALE * z.real, "y": -SVG_SCALE * z.imag} for name, z in labels
            ],
            "omega": f"{cfg.O.real:.6g}, {cfg.O.imag:.6g}",
            "tiles": tiles,
        }

    def render_octagon(self, cfg: OctagonConfig, tiles: int = 1, output_path: Union[str, Path] = None) -> str:
        """
        Render the octagon figure.

        Args:
            cfg: Constructed octagon
            tiles: Side of the block of translated copies
            output_path: Optional output file path

        Returns:
            SVG document
        """
        content = self.render_template("octagon.svg.j2", self.octagon_context(cfg, tiles))
        if output_path:
            self._write_file(output_path, content)
        return content

    def _write_file(self, path: Union[str, Path], content: str):
        """Write content to file, creating directories if needed."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
