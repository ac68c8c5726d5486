"""Per-grid reports: cactus CSVs, mean-makespan tables and optional plots."""

from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd

from src.benchio.results import RunRecord, aggregate_frame, cactus_frame
from src.utils.logging import get_logger

logger = get_logger(__name__)


def sweep_column(records: Sequence[RunRecord]) -> str:
    """`window` if the windows differ across the records, else `agent_count`."""
    if len({record.window for record in records}) > 1:
        return "window"
    return "agent_count"


def aggregate_table(records: Sequence[RunRecord]) -> pd.DataFrame:
    """
    Mean capped makespan with one row per sweep value and one column per algorithm/policy.

    Unsolved runs count with the cap, so a column of the cap means nothing
    was solved.
    """
    if not records:
        return pd.DataFrame()
    sweep = sweep_column(records)
    frame = aggregate_frame(records)
    frame["label"] = frame["algorithm"] + ":" + frame["policy"]
    frame.loc[frame["policy"] == "none", "label"] = frame["algorithm"]
    # several budgets or fail policies in one sweep are averaged together
    table = frame.pivot_table(index=sweep, columns="label", values="mean_makespan", aggfunc="mean")
    table.columns.name = None
    return table.sort_index()


def plot_cactus(cactus: pd.DataFrame, grid: str, path: Union[str, Path]) -> Path:
    """Cumulative solved instances against makespan, one line per algorithm/policy."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    for (algorithm, policy), group in cactus.groupby(["algorithm", "policy"], sort=True):
        label = algorithm if policy == "none" else f"{algorithm}:{policy}"
        ax.step(group["makespan"], group["cumulative_solved"], where="post", marker="o", ms=3, label=label)
    ax.set_xlabel("makespan")
    ax.set_ylabel("solved instances")
    ax.set_title(grid)
    ax.grid(True, color="grey", alpha=0.2)
    if not cactus.empty:
        ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_report(records: Sequence[RunRecord], out_dir: Union[str, Path], plot: bool = False) -> List[Path]:
    """
    Write `<grid>-cactus.csv` and `<grid>-table.csv` (and `<grid>-cactus.png`) per grid.

    Args:
        records: Results rows, possibly from several grids
        out_dir: Output directory, created if missing
        plot: Also render a cactus plot per grid

    Returns:
        The written files; nothing is written for empty results
    """
    out_dir = Path(out_dir)
    written: List[Path] = []
    if not records:
        logger.info("No results to report")
        return written
    out_dir.mkdir(parents=True, exist_ok=True)

    for grid in sorted({record.grid_name for record in records}):
        grid_records = [record for record in records if record.grid_name == grid]

        cactus = cactus_frame(grid_records)
        cactus_path = out_dir / f"{grid}-cactus.csv"
        cactus.to_csv(cactus_path, index=False, lineterminator="\n")
        written.append(cactus_path)

        table_path = out_dir / f"{grid}-table.csv"
        aggregate_table(grid_records).to_csv(table_path, float_format="%.2f", lineterminator="\n")
        written.append(table_path)

        if plot:
            written.append(plot_cactus(cactus, grid, out_dir / f"{grid}-cactus.png"))
        logger.info(f"Report for {grid}: {', '.join(path.name for path in written[-3 if plot else -2:])}")

    return written
