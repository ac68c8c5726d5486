"""Results CSV: run records, cactus data and mean-makespan aggregates."""

import io
from typing import Iterable, List, Sequence

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.core.constants import BenchConfig
from src.utils.exceptions import ResultsParseError

# columns identifying one cell of an experiment matrix
CELL_COLUMNS: List[str] = [
    "grid_name", "algorithm", "policy", "fail_policy", "agent_count", "window", "horizon", "budget",
]


class RunRecord(BaseModel):
    """One episode as a results row; field order is the CSV column order."""

    model_config = ConfigDict(frozen=True)

    grid_name: str
    algorithm: str
    policy: str
    fail_policy: str
    agent_count: int = Field(ge=0)
    window: int = Field(ge=1)
    horizon: int = Field(ge=1)
    budget: int = Field(ge=1)
    seed: int
    scen_id: int
    makespan: int = Field(ge=0)
    solved: bool
    periods: int = Field(ge=0)
    expansions_total: int = Field(ge=0)


def records_frame(records: Iterable[RunRecord]) -> pd.DataFrame:
    rows = [record.model_dump() for record in records]
    return pd.DataFrame(rows, columns=BenchConfig.RESULT_COLUMNS)


def _to_csv(frame: pd.DataFrame, **kwargs) -> str:
    return frame.to_csv(index=False, lineterminator="\n", **kwargs)


def write_results(records: Sequence[RunRecord]) -> str:
    """Header plus one row per record, columns in RunRecord field order."""
    return _to_csv(records_frame(records))


def read_results(text: str) -> List[RunRecord]:
    """
    Parse a results CSV produced by `write_results`.

    Args:
        text: CSV contents; empty text means no records

    Returns:
        The records in file order

    Raises:
        ResultsParseError: On missing columns or invalid values
    """
    if not text.strip():
        return []
    try:
        frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, ValueError) as e:
        raise ResultsParseError(f"Cannot parse results CSV: {e}") from e

    missing = [column for column in BenchConfig.RESULT_COLUMNS if column not in frame.columns]
    if missing:
        raise ResultsParseError(f"missing columns: {', '.join(missing)}", line=1)

    records = []
    for offset, row in enumerate(frame[BenchConfig.RESULT_COLUMNS].to_dict(orient="records")):
        try:
            records.append(RunRecord(**row))
        except ValidationError as e:
            errors = "; ".join(f"{err['loc'][0]}: {err['msg']}" for err in e.errors())
            raise ResultsParseError(errors, line=offset + 2) from None
    return records


def cactus_frame(records: Iterable[RunRecord]) -> pd.DataFrame:
    """
    Solved makespans per (algorithm, policy) with the cumulative solved count.

    Equal makespans share one row carrying the count up to and including
    them; unsolved runs are left out.
    """
    frame = records_frame(records)
    solved = frame[frame["solved"].astype(bool)]
    if solved.empty:
        return pd.DataFrame(columns=BenchConfig.CACTUS_COLUMNS)

    counts = (
        solved.groupby(["algorithm", "policy", "makespan"])
        .size()
        .rename("count")
        .reset_index()
        .sort_values(["algorithm", "policy", "makespan"])
    )
    counts["cumulative_solved"] = counts.groupby(["algorithm", "policy"])["count"].cumsum()
    return counts[BenchConfig.CACTUS_COLUMNS].reset_index(drop=True)


def cactus_data(records: Iterable[RunRecord]) -> str:
    return _to_csv(cactus_frame(records))


def aggregate_frame(records: Iterable[RunRecord]) -> pd.DataFrame:
    """Mean capped makespan, solved count and runs per matrix cell."""
    frame = records_frame(records)
    columns = CELL_COLUMNS + ["mean_makespan", "solved", "runs"]
    if frame.empty:
        return pd.DataFrame(columns=columns)
    grouped = frame.groupby(CELL_COLUMNS, sort=True)
    aggregate = grouped.agg(
        mean_makespan=("makespan", "mean"),
        solved=("solved", "sum"),
        runs=("makespan", "size"),
    ).reset_index()
    aggregate["solved"] = aggregate["solved"].astype(int)
    return aggregate[columns]


def aggregate_csv(records: Iterable[RunRecord]) -> str:
    """`aggregate_frame` as CSV with makespans to two decimals."""
    return _to_csv(aggregate_frame(records), float_format="%.2f")
