"""
CSV / JSON artifact writer
"""

import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence, Type

from pydantic import BaseModel

from .errors import InvalidInputError, OutputError
from .models import OutputFormat
from .utils import format_number

logger = logging.getLogger(__name__)


def _columns(records: Sequence[BaseModel], schema: Optional[Type[BaseModel]]) -> List[str]:
    if records:
        kind = type(records[0])
        if any(type(r) is not kind for r in records):
            raise InvalidInputError("records do not share one schema")
        return list(kind.model_fields)
    if schema is None:
        return []
    return list(schema.model_fields)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not isinstance(value, bool):
        if math.isnan(value) or math.isinf(value):
            return format_number(value)
        return float(format_number(value))
    return value


def render(
    records: Sequence[BaseModel],
    format: OutputFormat = "csv",
    provenance: Optional[str] = None,
    schema: Optional[Type[BaseModel]] = None,
) -> str:
    """Serialize homogeneous records; field order is column order"""
    columns = _columns(records, schema)
    if format == "json":
        rows = [{name: _json_value(getattr(record, name)) for name in columns} for record in records]
        return json.dumps(rows, indent=2) + "\n"
    buffer = io.StringIO()
    if provenance:
        buffer.write(f"# source: {provenance}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    if columns:
        writer.writerow(columns)
    for record in records:
        writer.writerow([_csv_cell(getattr(record, name)) for name in columns])
    return buffer.getvalue()


def emit(
    records: Sequence[BaseModel],
    format: OutputFormat = "csv",
    output: Optional[Path] = None,
    provenance: Optional[str] = None,
    schema: Optional[Type[BaseModel]] = None,
) -> None:
    """Write records to `output`, or to stdout when no path is given"""
    text = render(records, format, provenance, schema)
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"cannot write {output}: {e}") from e
    logger.info(f"📝 Wrote {len(records)} records to {output}")
