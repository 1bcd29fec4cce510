import csv
import io
import json
import logging
from pathlib import Path
from typing import Iterable, Optional, TextIO

import yaml

from neighborly.constants import OUTPUT_FORMATS
from neighborly.errors import ValidationError
from neighborly.services.harness import Report

logger = logging.getLogger(__name__)

CSV_REPORT_FIELDS = ["check", "status", "kind", "location", "expected", "actual", "label"]


def _cell(value) -> str:
    """Scalars as-is, anything structured as compact JSON."""
    if value is None:
        return ""
    if isinstance(value, (str, int)):
        return str(value)
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class ReportWriter:
    """Serialize reports and row listings to json, csv, yaml or text.

    Output is a pure function of the data: keys are sorted and timing is only
    included on request.
    """

    def __init__(self, fmt: str = "json", include_timing: bool = False):
        if fmt not in OUTPUT_FORMATS:
            raise ValidationError(f"Unknown output format {fmt!r}; expected one of {OUTPUT_FORMATS}")
        self.fmt = fmt
        self.include_timing = include_timing

    def render_reports(self, reports: list[Report]) -> str:
        data = [r.to_dict(self.include_timing) for r in reports]
        if self.fmt == "json":
            return json.dumps(data, indent=2, sort_keys=True) + "\n"
        if self.fmt == "yaml":
            return yaml.safe_dump(data, default_flow_style=False, sort_keys=True)
        if self.fmt == "csv":
            return self._reports_csv(reports, data)
        return self._reports_text(data)

    def _reports_csv(self, reports: list[Report], data: list[dict]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_REPORT_FIELDS, lineterminator="\n")
        writer.writeheader()
        for source, report in zip(reports, data):
            base = {"check": report["check"], "status": report["status"]}
            writer.writerow({**base, "kind": "summary"})
            for mismatch in report["mismatches"]:
                writer.writerow(
                    {
                        **base,
                        "kind": "mismatch",
                        **{k: _cell(mismatch.get(k)) for k in ("location", "expected", "actual", "label")},
                    }
                )
            if source.series is not None:
                rows = source.series.to_csv_rows()
            else:
                rows = enumerate(source.coefficients or [])
            for exponent, coefficient in rows:
                writer.writerow(
                    {**base, "kind": "coefficient", "location": exponent, "actual": coefficient}
                )
        return buffer.getvalue()

    def _reports_text(self, data: list[dict]) -> str:
        lines = []
        for report in data:
            params = ", ".join(f"{k}={_cell(v)}" for k, v in sorted(report["params"].items()))
            lines.append(f"{report['check']}: {report['status']} ({params})")
            for key, value in sorted(report["counts"].items()):
                lines.append(f"  {key}: {_cell(value)}")
            if report.get("series") is not None:
                series = report["series"]
                lines.append(f"  series to q^{series['order']}: {', '.join(map(str, series['coeffs']))}")
            elif report.get("coefficients") is not None:
                lines.append(f"  coefficients: {', '.join(map(str, report['coefficients']))}")
            for mismatch in report["mismatches"]:
                label = f" [{mismatch['label']}]" if "label" in mismatch else ""
                lines.append(
                    f"  mismatch at {_cell(mismatch['location'])}{label}: "
                    f"expected {_cell(mismatch['expected'])}, got {_cell(mismatch['actual'])}"
                )
        return "\n".join(lines) + "\n"

    def render_rows(self, rows: list[dict], fields: Iterable[str]) -> str:
        """A flat listing, e.g. enumerated partitions or a chain table."""
        fields = list(fields)
        if self.fmt == "json":
            return json.dumps(rows, indent=2, sort_keys=True) + "\n"
        if self.fmt == "yaml":
            return yaml.safe_dump(rows, default_flow_style=False, sort_keys=True)
        if self.fmt == "csv":
            buffer = io.StringIO()
            writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _cell(row.get(k)) for k in fields})
            return buffer.getvalue()
        return "".join("\t".join(_cell(row.get(k)) for k in fields) + "\n" for row in rows)

    @staticmethod
    def emit(text: str, output: Optional[Path] = None, stream: Optional[TextIO] = None):
        """Write to `output` when given, else to `stream`."""
        if output is not None:
            path = Path(output)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            logger.info(f"Wrote {len(text)} characters to {path}")
            return
        stream.write(text)
