"""Output records shared by every command, with json, csv and pretty renderings."""

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from app.config import OUTPUT_FORMATS


def render_value(value: Any) -> Any:
    """Exact values become strings ("p/q" or decimal); containers are rendered recursively."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): render_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render_value(v) for v in value]
    return str(value)


def pretty_value(value: Any) -> str:
    """Rendered values as plain text: dicts as key=value pairs, lists comma separated."""
    if isinstance(value, dict):
        return "  ".join(f"{k}={pretty_value(v)}" for k, v in value.items())
    if isinstance(value, list):
        return ", ".join(pretty_value(v) for v in value)
    return str(value)


@dataclass
class OutputRecord:
    """One command result: echo, inputs, exact outputs, verdicts and citations."""
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    outputs: Dict[str, Any] = field(default_factory=dict)
    verdicts: Dict[str, bool] = field(default_factory=dict)
    citations: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.inputs = render_value(self.inputs)
        self.outputs = render_value(self.outputs)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        return cls(**json.loads(text))

    def table_rows(self) -> List[Dict[str, Any]]:
        """Rows for csv: the ``table`` output if present, else one row per output or verdict."""
        table = self.outputs.get("table")
        if isinstance(table, list):
            return table
        rows = [{"key": k, "value": json.dumps(v) if isinstance(v, (list, dict)) else v}
                for k, v in self.outputs.items()]
        rows += [{"key": f"verdict:{k}", "value": v} for k, v in self.verdicts.items()]
        return rows

    def to_csv(self) -> str:
        rows = self.table_rows()
        header: List[str] = []
        for row in rows:
            header += [k for k in row if k not in header]
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=header or ["key", "value"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()

    def to_pretty(self) -> str:
        lines = [f"🔍 {self.command}"]
        for key, value in self.inputs.items():
            lines.append(f"   {key}: {pretty_value(value)}")
        for key, value in self.outputs.items():
            if key == "table" and isinstance(value, list):
                lines.append(f"📊 {key}:")
                lines.extend("   " + pretty_value(row) for row in value)
            else:
                lines.append(f"📊 {key}: {pretty_value(value)}")
        for key, ok in self.verdicts.items():
            lines.append(f"{'✅ PASS' if ok else '❌ FAIL'} {key}")
        for citation in self.citations:
            lines.append(f"   📖 {citation}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt not in OUTPUT_FORMATS:
            raise ValueError(f"Unsupported output format: {fmt}")
        return {"json": self.to_json, "csv": self.to_csv, "pretty": self.to_pretty}[fmt]()
