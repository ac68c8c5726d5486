"""MovingAI octile map files."""

from pathlib import Path
from typing import List, Union

import numpy as np

from src.core.constants import GridConfig
from src.core.domain import GridMap
from src.utils.exceptions import BenchmarkFileError, MapParseError
from src.utils.logging import get_logger

logger = get_logger(__name__)

_HEADER_LINES = 4


def _header_value(line: str, key: str, line_no: int) -> str:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise MapParseError(f"expected '{key} <value>', got '{line}'", line=line_no)
    return parts[1]


def _dimension(line: str, key: str, line_no: int) -> int:
    value = _header_value(line, key, line_no)
    try:
        dim = int(value)
    except ValueError:
        raise MapParseError(f"{key} must be an integer, got '{value}'", line=line_no) from None
    if dim < 1:
        raise MapParseError(f"{key} must be positive, got {dim}", line=line_no)
    return dim


def parse_map(text: str, name: str = "") -> GridMap:
    """
    Parse a map in the octile format.

    The header is `type octile`, `height H`, `width W`, `map`, followed by
    H rows of W characters. `.` and `G` are free; `@`, `O`, `T` and `W`
    are blocked.

    Args:
        text: File contents
        name: Grid name stored on the map

    Returns:
        The parsed GridMap

    Raises:
        MapParseError: On a malformed header, ragged rows or unknown characters
    """
    lines = text.splitlines()
    if len(lines) < _HEADER_LINES:
        raise MapParseError(f"header needs {_HEADER_LINES} lines, file has {len(lines)}", line=len(lines) + 1)

    map_type = _header_value(lines[0].strip(), "type", 1)
    if map_type != "octile":
        raise MapParseError(f"unsupported map type '{map_type}'", line=1)
    height = _dimension(lines[1].strip(), "height", 2)
    width = _dimension(lines[2].strip(), "width", 3)
    if lines[3].strip() != "map":
        raise MapParseError(f"expected 'map', got '{lines[3].strip()}'", line=4)

    rows = [line.rstrip("\r\n") for line in lines[_HEADER_LINES:]]
    # trailing blank lines are tolerated
    while rows and not rows[-1].strip():
        rows.pop()
    if len(rows) != height:
        raise MapParseError(f"declared height {height} but found {len(rows)} rows", line=_HEADER_LINES + len(rows) + 1)

    mask: List[List[bool]] = []
    for offset, row in enumerate(rows):
        line_no = _HEADER_LINES + offset + 1
        if len(row) != width:
            raise MapParseError(f"row has {len(row)} cells, expected {width}", line=line_no)
        cells = []
        for ch in row:
            if ch in GridConfig.FREE_CHARS:
                cells.append(False)
            elif ch in GridConfig.BLOCKED_CHARS:
                cells.append(True)
            else:
                raise MapParseError(f"unknown cell character '{ch}'", line=line_no)
        mask.append(cells)

    return GridMap(width, height, np.array(mask, dtype=bool), name)


def serialize_map(grid: GridMap) -> str:
    """Octile text that `parse_map` reads back to an equal GridMap."""
    rows = [
        "".join(GridConfig.BLOCKED_CHAR if blocked else GridConfig.FREE_CHAR for blocked in row)
        for row in grid.blocked
    ]
    header = ["type octile", f"height {grid.height}", f"width {grid.width}", "map"]
    return "\n".join(header + rows) + "\n"


def load_map(path: Union[str, Path]) -> GridMap:
    """
    Read and parse a map file; the grid is named after the file stem.

    Raises:
        BenchmarkFileError: If the file cannot be read
        MapParseError: If it is malformed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise BenchmarkFileError(f"Cannot read map file {path}: {e}") from e
    grid = parse_map(text, name=path.stem)
    logger.debug(f"Loaded map {path.stem}: {grid.width}x{grid.height}, {int(grid.blocked.sum())} blocked")
    return grid
