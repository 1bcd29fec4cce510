import re
import logging

from neighborly.errors import ValidationError
from neighborly.partitions import NeighborlyPartition, decompose

logger = logging.getLogger(__name__)

_PART_LIST = re.compile(r"^\s*(\d+(\s*,\s*\d+)*)?\s*$")


def _parse_parts(text: str) -> tuple[int, ...]:
    if not _PART_LIST.match(text):
        raise ValidationError(f"Expected comma separated positive integers, got {text!r}")
    return tuple(int(p) for p in text.split(",") if p.strip())


def parse_partition(text: str) -> NeighborlyPartition:
    """Read "mu1/mu2" (e.g. "1,2,3/2") or a weakly increasing part list (e.g. "1,2,2,3").

    A part list is decomposed into its distinct parts and its repeated parts.
    """
    if "/" in text:
        left, _, right = text.partition("/")
        if "/" in right:
            raise ValidationError(f"Too many '/' in {text!r}")
        return NeighborlyPartition(_parse_parts(left), _parse_parts(right))
    return decompose(sorted(_parse_parts(text)))


def format_parts(np: NeighborlyPartition) -> str:
    """Weight-multiset view, e.g. "1+2+2+3"."""
    return "+".join(map(str, np.parts.parts)) or "0"
