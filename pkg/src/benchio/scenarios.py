"""MovingAI scenario files (version 1).

Scenario coordinates are (x, y) = (column, row). The line

    0	empty-32-32.map	32	32	5	2	7	9	9.0

describes an agent starting at row 2, column 5 and heading to row 9, column 7.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from src.core.constants import GridConfig
from src.core.domain import AgentTask, Cell, GridMap
from src.utils.exceptions import BenchmarkFileError, ScenarioParseError
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ScenarioEntry:
    """One scenario line; `start` and `goal` are already (row, col)."""

    bucket: int
    map_name: str
    map_width: int
    map_height: int
    start: Cell
    goal: Cell
    optimal_length: float

    def to_task(self, agent_id: int) -> AgentTask:
        return AgentTask(agent_id, self.start, self.goal)


def _parse_entry(line: str, line_no: int) -> ScenarioEntry:
    fields = line.split("\t")
    if len(fields) != GridConfig.SCEN_FIELDS:
        # some generators separate fields with spaces
        fields = line.split()
    if len(fields) != GridConfig.SCEN_FIELDS:
        raise ScenarioParseError(
            f"expected {GridConfig.SCEN_FIELDS} fields, got {len(fields)}", line=line_no
        )
    bucket, map_name, width, height, sx, sy, gx, gy, optimal = fields
    try:
        entry = ScenarioEntry(
            bucket=int(bucket),
            map_name=map_name,
            map_width=int(width),
            map_height=int(height),
            start=(int(sy), int(sx)),
            goal=(int(gy), int(gx)),
            optimal_length=float(optimal),
        )
    except ValueError as e:
        raise ScenarioParseError(f"bad numeric field: {e}", line=line_no) from None

    for role, (row, col) in (("start", entry.start), ("goal", entry.goal)):
        if not (0 <= row < entry.map_height and 0 <= col < entry.map_width):
            raise ScenarioParseError(
                f"{role} (x={col}, y={row}) outside declared {entry.map_width}x{entry.map_height}",
                line=line_no,
            )
    return entry


def parse_scen_entries(text: str) -> List[ScenarioEntry]:
    """
    Parse every entry of a scenario file.

    Raises:
        ScenarioParseError: On a wrong version line or malformed entries
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != GridConfig.SCEN_VERSION:
        found = lines[0].strip() if lines else "<empty file>"
        raise ScenarioParseError(f"expected '{GridConfig.SCEN_VERSION}', got '{found}'", line=1)

    return [
        _parse_entry(line.strip("\r\n"), line_no)
        for line_no, line in enumerate(lines[1:], start=2)
        if line.strip()
    ]


def parse_scen(text: str, n: int, grid: Optional[GridMap] = None) -> List[AgentTask]:
    """
    First `n` scenario entries as agent tasks with ids 0..n-1.

    Args:
        text: Scenario file contents
        n: Number of agents
        grid: When given, starts and goals must be free cells of it

    Returns:
        The agent tasks

    Raises:
        ScenarioParseError: If the file has fewer than n entries or a cell is invalid
    """
    if n < 0:
        raise ScenarioParseError(f"agent count must be >= 0, got {n}")
    entries = parse_scen_entries(text)
    if n > len(entries):
        raise ScenarioParseError(f"requested {n} agents but the scenario has {len(entries)} entries")

    tasks = [entry.to_task(agent_id) for agent_id, entry in enumerate(entries[:n])]
    if grid is not None:
        for task in tasks:
            for role, cell in (("start", task.start), ("goal", task.goal)):
                if not grid.is_free(cell):
                    raise ScenarioParseError(
                        f"agent {task.id} {role} (x={cell[1]}, y={cell[0]}) is blocked or outside the map",
                        line=task.id + 2,
                    )
    return tasks


def load_scenario(path: Union[str, Path], n: int, grid: Optional[GridMap] = None) -> List[AgentTask]:
    """
    Read a scenario file and return its first `n` agent tasks.

    Raises:
        BenchmarkFileError: If the file cannot be read
        ScenarioParseError: If it is malformed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise BenchmarkFileError(f"Cannot read scenario file {path}: {e}") from e
    tasks = parse_scen(text, n, grid)
    logger.debug(f"Loaded {len(tasks)} agents from {path.name}")
    return tasks
