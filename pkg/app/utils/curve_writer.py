"""
Curve writer for figure sweeps.
Writes one CSV or JSON file per series; output carries no timestamps so a
fixed configuration always produces the same bytes.
"""
import csv
import json
import logging
from pathlib import Path
from typing import List, Literal, Optional

from app import __version__
from app.exceptions import IoError
from app.models import CurveSeries

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class CurveWriter:
    """
    Writer for CurveSeries files.
    CSV gets x/y columns, JSON gets the full series with its metadata.
    """

    def __init__(self, base_path: str = "data/curves"):
        """
        Initialize the curve writer.

        Args:
            base_path: Base directory for curve files
        """
        self.base_path = Path(base_path)

    def _sanitize_filename(self, name: str) -> str:
        """Sanitize a series name for use in a filename."""
        invalid_chars = '<>:"/\\|?* '
        for char in invalid_chars:
            name = name.replace(char, '_')
        return name.strip('._')

    def payload(self, series: CurveSeries) -> dict:
        """JSON document of one series."""
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            **series.model_dump(),
        }

    def write(
        self,
        series: CurveSeries,
        fmt: Literal["csv", "json"] = "csv",
        output_path: Optional[str] = None,
    ) -> str:
        """
        Write a single series.

        Args:
            series: Curve to write
            fmt: "csv" or "json"
            output_path: Optional explicit file path. If not provided, the
                file goes to base_path named after the series.

        Returns:
            str: Path to the written file
        """
        if output_path:
            path = Path(output_path)
        else:
            path = self.base_path / f"{self._sanitize_filename(series.name)}.{fmt}"
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            if fmt == "csv":
                with open(path, 'w', newline='', encoding='utf-8') as f:
                    fieldnames = [series.x_label, series.y_label]
                    writer = csv.DictWriter(f, fieldnames=fieldnames)
                    writer.writeheader()
                    for x, y in zip(series.x, series.y):
                        writer.writerow({series.x_label: repr(float(x)), series.y_label: repr(float(y))})
            else:
                with open(path, 'w', encoding='utf-8') as f:
                    json.dump(self.payload(series), f, indent=2, sort_keys=True, default=str)
                    f.write("\n")

            logger.info(f"Wrote {fmt.upper()} curve {series.name} ({len(series.x)} points) to {path}")
            return str(path)

        except OSError as e:
            logger.error(f"Error writing curve {series.name}: {str(e)}", exc_info=True)
            raise IoError(f"Cannot write {path}: {e}") from e

    def write_all(self, curves: List[CurveSeries], fmt: Literal["csv", "json"] = "csv") -> List[str]:
        """Write every series of a sweep, one file each."""
        return [self.write(series, fmt) for series in curves]
