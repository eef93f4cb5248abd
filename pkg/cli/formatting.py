from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

FORMATS = ("md", "csv", "json")
TIMING_COLUMN = "runtime_ms"


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple[Any, ...]] = field(default_factory=list)
    title: str = ""
    summary: str = ""
    meta: dict[str, Any] = field(default_factory=dict)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"Row has {len(values)} values for {len(self.columns)} columns.")
        self.rows.append(tuple(values))

    def without(self, column: str) -> Table:
        if column not in self.columns:
            return self
        keep = [k for k, name in enumerate(self.columns) if name != column]
        return Table(
            columns=tuple(self.columns[k] for k in keep),
            rows=[tuple(row[k] for k in keep) for row in self.rows],
            title=self.title,
            summary=self.summary,
            meta={key: value for key, value in self.meta.items() if key != column},
        )

    def records(self) -> list[dict[str, str]]:
        return [{name: cell(value) for name, value in zip(self.columns, row)} for row in self.rows]


def cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (tuple, list)):
        return "{" + ",".join(str(item) for item in value) + "}"
    return str(value)


def _markdown(table: Table) -> str:
    lines = []
    if table.title:
        lines.append(f"## {table.title}")
        lines.append("")
    if table.summary:
        lines.append(table.summary)
        lines.append("")
    lines.append("| " + " | ".join(table.columns) + " |")
    lines.append("|" + "|".join("---" for _ in table.columns) + "|")
    for row in table.rows:
        lines.append("| " + " | ".join(cell(value).replace("|", "\\|") for value in row) + " |")
    return "\n".join(lines)


def _csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([cell(value) for value in row])
    return buffer.getvalue().rstrip("\n")


def _json(table: Table) -> str:
    payload: dict[str, Any] = {}
    if table.title:
        payload["title"] = table.title
    if table.summary:
        payload["summary"] = table.summary
    if table.meta:
        payload["meta"] = {key: cell(value) for key, value in table.meta.items()}
    payload["columns"] = list(table.columns)
    payload["rows"] = table.records()
    return json.dumps(payload, indent=2, sort_keys=False)


RENDERERS = {"md": _markdown, "csv": _csv, "json": _json}


def render(table: Table, output_format: str = "md", timing: bool = True) -> str:
    try:
        renderer = RENDERERS[output_format]
    except KeyError as exc:
        raise ValueError(f"Unknown output format {output_format!r}; expected one of {FORMATS}.") from exc
    return renderer(table if timing else table.without(TIMING_COLUMN))


def parse_index_list(raw: str | Sequence[int] | None) -> list[int] | None:
    """"0,2,1" -> [0, 2, 1]; None and empty strings stay None."""
    if raw is None:
        return None
    if not isinstance(raw, str):
        return [int(value) for value in raw]
    parts = [part.strip() for part in raw.split(",") if part.strip()]
    if not parts:
        return None
    try:
        return [int(part) for part in parts]
    except ValueError as exc:
        raise ValueError(f"Expected comma-separated integers, got {raw!r}.") from exc
