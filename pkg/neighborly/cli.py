import logging
from pathlib import Path
from typing import Optional, TextIO

from neighborly.config import Config
from neighborly.constants import CHECK_NAMES, EXIT_CHECK_FAILED_BASE, EXIT_OK
from neighborly.errors import ValidationError
from neighborly.render import render
from neighborly.services.harness import VerificationHarness, partition_records
from neighborly.services.reports import ReportWriter
from neighborly.signatures import build_graph, chain_poly, chain_sign, sig_multiset
from neighborly.utils import format_parts, parse_partition

logger = logging.getLogger(__name__)

ENUMERATE_FIELDS = [
    "partition",
    "mu1",
    "mu2",
    "parts",
    "weight",
    "sign",
    "sig",
    "components",
    "edges",
    "pruned_edges",
]
TABLE_FIELDS = ["n", "sign", "coefficients"]


class NeighborlyCli:
    """Command handlers; each returns a process exit status."""

    def __init__(
        self,
        config: Config,
        writer: ReportWriter,
        stream: TextIO,
        output: Optional[Path] = None,
    ):
        self.config = config
        self.writer = writer
        self.stream = stream
        self.output = output

    def _emit(self, text: str):
        self.writer.emit(text, self.output, self.stream)

    def cmd_verify(self, target: str) -> int:
        """Run one check, or every configured check for "all"."""
        if target == "all":
            names = list(self.config.checks)
        elif target in CHECK_NAMES:
            names = [target]
        else:
            raise ValidationError(f"Unknown check {target!r}")
        harness = VerificationHarness(self.config)
        reports = [harness.run(name) for name in names]
        self._emit(self.writer.render_reports(reports))

        failed = [r.check for r in reports if not r.passed]
        if not failed:
            return EXIT_OK
        first = min(CHECK_NAMES.index(name) for name in failed)
        logger.warning(f"Failed checks: {', '.join(failed)}")
        return EXIT_CHECK_FAILED_BASE + first

    def cmd_enumerate(self, include_all: bool = False) -> int:
        """List admissible partitions (all neighborly ones with `include_all`) with their data."""
        cfg = self.config
        rows = []
        for record in partition_records(cfg.max_weight, cfg.max_partitions):
            np = record.partition
            if np.mu1 and np.mu1[0] < cfg.min_part:
                continue
            if not (record.admissible or include_all):
                continue
            g = build_graph(np)
            graph = g.to_dict()
            rows.append(
                {
                    "partition": str(np),
                    **np.to_dict(),
                    "parts": format_parts(np),
                    "weight": np.weight,
                    "sign": record.signature,
                    "sig": list(sig_multiset(g).elements),
                    "components": graph["components"],
                    "edges": graph["total_edges"],
                    "pruned_edges": record.pruned_edges,
                }
            )
        self._emit(self.writer.render_rows(rows, ENUMERATE_FIELDS))
        return EXIT_OK

    def cmd_table(self, kind: str, max_n: int, poly: bool = False) -> int:
        """Chain signatures B_n(-1), with the B_n(x) coefficients on request."""
        if kind != "bn":
            raise ValidationError(f"Unknown table {kind!r}")
        if max_n < 1:
            raise ValidationError(f"--max must be at least 1, got {max_n}")
        fields = TABLE_FIELDS if poly else TABLE_FIELDS[:2]
        rows = []
        for n in range(1, max_n + 1):
            row = {"n": n, "sign": chain_sign(n)}
            if poly:
                row["coefficients"] = [int(c) for c in reversed(chain_poly(n).all_coeffs())]
            rows.append(row)
        self._emit(self.writer.render_rows(rows, fields))
        return EXIT_OK

    def cmd_show(self, text: str) -> int:
        np = parse_partition(text)
        self._emit(render(np, self.config.deletion_rule))
        return EXIT_OK
