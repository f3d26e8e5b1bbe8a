"""Output formatting utilities for tables and their sidecars."""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from ..core.models import OutputFormat, TableResult


class OutputFormatter:
    """Format computed tables as CSV or JSON."""

    def __init__(self, pretty: bool = False, digits: int = 12):
        """Initialize formatter.

        Args:
            pretty: Whether to pretty-print JSON output
            digits: Significant digits of floating-point cells
        """
        self.pretty = pretty
        self.digits = digits

    def format(self, table: TableResult, format: str) -> str:
        """Format a table to the specified format.

        Args:
            table: Table to format
            format: Output format (csv, json)

        Returns:
            Formatted string
        """
        kind = OutputFormat(format) if not isinstance(format, OutputFormat) else format
        if kind is OutputFormat.CSV:
            return self.to_csv(table)
        return self.to_json(table)

    def format_cell(self, value: Any) -> str:
        """Deterministic text of one cell."""
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            if math.isnan(value):
                return "nan"
            if math.isinf(value):
                return "inf" if value > 0 else "-inf"
            return f"{value:.{self.digits}g}"
        return str(value)

    def to_csv(self, table: TableResult) -> str:
        """Header row plus one line per row, comma separated, LF endings."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([self.format_cell(row.get(c)) for c in table.columns])
        return buffer.getvalue()

    def format_dict(self, data: Dict[str, Any]) -> str:
        """Dictionary as JSON with sorted keys; NaN becomes null."""
        clean = _json_safe(data)
        if self.pretty:
            return json.dumps(clean, indent=2, sort_keys=True)
        return json.dumps(clean, sort_keys=True)

    def to_json(self, table: TableResult) -> str:
        return self.format_dict(table.to_dict())

    def write(
        self,
        table: TableResult,
        out_dir: str,
        format: str = "csv",
        sidecar: Optional[Dict[str, Any]] = None,
    ) -> Tuple[Path, Path]:
        """Write ``<name>.<format>`` and the ``<name>.json`` sidecar (``<name>.meta.json`` for JSON output).

        Returns:
            Paths of the table and the sidecar
        """
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        kind = OutputFormat(format)
        if kind is OutputFormat.CSV:
            table_path = directory / f"{table.name}.csv"
            sidecar_path = directory / f"{table.name}.json"
        else:
            table_path = directory / f"{table.name}.json"
            sidecar_path = directory / f"{table.name}.meta.json"
        with open(table_path, "w", encoding="utf-8", newline="") as f:
            f.write(self.format(table, kind.value))
        with open(sidecar_path, "w", encoding="utf-8", newline="") as f:
            f.write(self.format_dict({**table.sidecar(), **(sidecar or {})}) + "\n")
        return table_path, sidecar_path


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return _json_safe(value.item())  # numpy scalars
    return value
