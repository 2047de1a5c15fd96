import csv
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, TextIO

from .consts import ENCODING


@dataclass
class Table:
    command: str
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)

    def append(self, *values: Any):
        if len(values) != len(self.columns):
            raise ValueError(f'row has {len(values)} values, expected {len(self.columns)}')
        self.rows.append(list(values))

    def to_json(self) -> dict:
        return {'command': self.command, 'columns': self.columns, 'rows': self.rows}


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return repr(value)
    return str(value)


def jsonable(value: Any) -> Any:
    "replace non-finite floats, which JSON cannot carry, by strings"
    if isinstance(value, float) and not math.isfinite(value):
        return format_cell(value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


class OutputWriter:
    """
    Writes tables as CSV or JSON and reports as JSON, to a file or stdout.

    >>> with OutputWriter(None, 'csv') as writer:
    ...     writer.write_table(table)
    """

    def __init__(self, path: Optional[str] = None, fmt: str = 'csv'):
        if fmt not in ('csv', 'json'):
            raise ValueError(f'format must be csv or json, got {fmt!r}')
        self.path = path
        self.fmt = fmt
        self._fp: Optional[TextIO] = None

    def __enter__(self):
        if self.path is None:
            self._fp = sys.stdout
        else:
            self._fp = open(self.path, 'w', encoding=ENCODING, newline='')
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._fp is not None and self._fp is not sys.stdout:
            self._fp.close()
        self._fp = None

    def _write_json(self, data: Any):
        json.dump(jsonable(data), self._fp, indent=2, sort_keys=True, allow_nan=False)
        self._fp.write('\n')

    def write_table(self, table: Table):
        if self.fmt == 'json':
            self._write_json(table.to_json())
            return
        writer = csv.writer(self._fp, lineterminator='\n')
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_cell(v) for v in row])

    def write_report(self, report: dict):
        self._write_json(report)
