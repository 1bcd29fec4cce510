"""Two-row ASCII pictures of G_lambda and its pruned graph.

The top row holds mu1 with backbone edges drawn as "--"; repeated parts hang
below their label, joined by "|". A deleted backbone edge leaves a blank gap.
"""

import logging
from typing import Iterable

from neighborly.constants import DeletionRule
from neighborly.partitions import NeighborlyPartition
from neighborly.signatures import Edge, backbone_edge, build_graph, is_admissible, prune

logger = logging.getLogger(__name__)

CONNECTOR = "--"
RUN_GAP = "    "


def _columns(mu1: tuple[int, ...], width: int) -> tuple[dict[int, int], int]:
    positions: dict[int, int] = {}
    cursor = 0
    previous = None
    for label in mu1:
        if previous is not None:
            cursor += len(CONNECTOR) if label == previous + 1 else len(RUN_GAP)
        positions[label] = cursor
        cursor += width
        previous = label
    return positions, cursor


def _put(row: list[str], start: int, text: str):
    row[start : start + len(text)] = list(text)


def render_graph(np: NeighborlyPartition, deleted: Iterable[Edge] = ()) -> str:
    if not np.mu1:
        return "(empty)"
    deleted = set(deleted)
    width = max(len(str(x)) for x in np.mu1)
    positions, total = _columns(np.mu1, width)
    backbone, middle, copies = ([" "] * total for _ in range(3))

    for label, column in positions.items():
        _put(backbone, column, str(label).rjust(width))
        if label - 1 in positions:
            gap = " " * len(CONNECTOR) if backbone_edge(label - 1) in deleted else CONNECTOR
            _put(backbone, column - len(CONNECTOR), gap)
    for label in np.mu2:
        _put(copies, positions[label], str(label).rjust(width))
        _put(middle, positions[label] + width - 1, "|")

    rows = ["".join(r).rstrip() for r in (backbone, middle, copies)]
    if not np.mu2:
        rows = rows[:1]
    return "\n".join(rows)


def render(np: NeighborlyPartition, rule: DeletionRule = DeletionRule.LITERAL) -> str:
    """G and, for admissible partitions, G' one above the other."""
    text = [f"G for {np}:", render_graph(np), ""]
    if is_admissible(np):
        pruned = prune(build_graph(np), rule)
        text += [f"G' ({pruned.edge_count} edges):", render_graph(np, pruned.deleted_edges)]
    else:
        logger.info(f"{np} is not admissible; skipping the pruned graph")
        text.append("G' undefined: not admissible, a chain length is divisible by 3")
    return "\n".join(text) + "\n"
