"""
Report rendering for the command line: deterministic JSON, a flat text
form, and OBJ export of 2D/3D polytopes
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from config import *
from geometry import boundary_faces
from polytope_core import LatticePolytope

logger = logging.getLogger(__name__)


class ReportWriter:
    """Render and write command reports"""

    def __init__(self, output_format: Optional[str] = None, output_dir: Optional[Union[str, Path]] = None):
        self.output_format = output_format or OUTPUT_CONFIG['default_format']
        self.output_dir = Path(output_dir) if output_dir is not None else OUTPUT_DIR
        if self.output_format not in OUTPUT_CONFIG['supported_formats']:
            raise ValueError(f"Unsupported output format: {self.output_format}")

    def render(self, report: Dict[str, Any]) -> str:
        if self.output_format == 'json':
            return self.render_json(report)
        return self.render_text(report)

    def render_json(self, report: Dict[str, Any]) -> str:
        return json.dumps(report, indent=OUTPUT_CONFIG['json_indent'],
                          sort_keys=OUTPUT_CONFIG['sort_keys'], default=str) + "\n"

    def render_text(self, report: Dict[str, Any]) -> str:
        """One `path: value` line per leaf, keys sorted"""
        lines: List[str] = []
        self._flatten(report, "", lines)
        return "\n".join(lines) + "\n"

    def _flatten(self, value: Any, prefix: str, lines: List[str]) -> None:
        if isinstance(value, dict) and value:
            for key in sorted(value, key=str):
                self._flatten(value[key], f"{prefix}.{key}" if prefix else str(key), lines)
        elif isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
            for i, item in enumerate(value):
                self._flatten(item, f"{prefix}[{i}]", lines)
        else:
            lines.append(f"{prefix}: {json.dumps(value, default=str)}")

    def write(self, report: Dict[str, Any], output: Optional[Union[str, Path]] = None) -> str:
        """Relative output paths resolve under the output directory"""
        text = self.render(report)
        if output is None:
            return text
        path = Path(output)
        if not path.is_absolute():
            path = self.output_dir / path
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Report written to {path}")
        return text


def export_obj(polytopes: Sequence[LatticePolytope], path: Union[str, Path]) -> Dict[str, Any]:
    """
    Write polytopes of ambient dimension 2 or 3 as OBJ objects. Polygons and
    3-polytopes become faces; points and segments become lines.
    """
    lines = ["# polysemi OBJ export"]
    offset = 0
    written = 0
    for number, P in enumerate(polytopes, start=1):
        if P.is_zero:
            continue
        if P.dim not in (2, 3):
            raise ValueError(f"OBJ export supports dimensions 2 and 3, got {P.dim}")
        lift = (lambda v: tuple(v) + (0,)) if P.dim == 2 else (lambda v: tuple(v))
        index = {v: offset + i for i, v in enumerate(P.vertices, start=1)}
        lines.append(f"o polytope_{number}")
        lines.extend("v " + " ".join(str(c) for c in lift(v)) for v in P.vertices)
        faces = boundary_faces(P.vertices)
        if faces:
            lines.extend("f " + " ".join(str(index[v]) for v in face) for face in faces)
        elif len(P.vertices) == 2:
            lines.append(f"l {index[P.vertices[0]]} {index[P.vertices[1]]}")
        offset += len(P.vertices)
        written += 1
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding='utf-8')
    logger.info(f"Exported {written} polytopes to {path}")
    return {'path': str(path), 'polytopes': written}
