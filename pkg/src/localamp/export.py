"""CSV and plot writers for scan and sampling results."""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

SCAN_COLUMNS = ["x", "u", "p", "p_pp", "p_mm", "p_pm", "p_mp"]
INTERFERENCE_COLUMNS = ["x1_minus_x2", "prob"]
COUNTS_COLUMNS = ["n_pp", "n_mm", "n_pm", "n_mp", "n_total", "p_hat", "p_analytic"]


def write_csv(rows: Sequence[Dict[str, float]], columns: List[str], path: Path) -> Path:
    """Write rows with a fixed column order.

    Floats are written with Python's own formatting, so the file does not
    depend on the process locale and is byte-stable across runs.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(list(rows), columns=columns)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def plot_path(csv_path: Path) -> Path:
    """The SVG file written beside a CSV file."""
    return Path(csv_path).with_suffix(".svg")


def write_plot(
    x: Sequence[float],
    series: Dict[str, Sequence[float]],
    path: Path,
    xlabel: str,
    title: Optional[str] = None,
    ylim: Tuple[float, float] = (-1.05, 1.05),
) -> Path:
    """Line plot of one or more series against x, saved as SVG."""
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        for label, values in series.items():
            ax.plot(x, values, label=label)
        ax.set_xlabel(xlabel)
        ax.set_ylim(*ylim)
        ax.axhline(0.0, color="grey", linewidth=0.5)
        if title:
            ax.set_title(title)
        ax.legend()
        fig.tight_layout()
        # No timestamp in the SVG header.
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    logger.info(f"Wrote plot to {path}")
    return Path(path)
