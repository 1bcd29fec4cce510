"""Partitions with all multiplicities at most 2 in which every part has a neighbor.

A neighborly partition is stored as the pair (mu1, mu2): mu1 is the set of
distinct parts and mu2 the parts that occur twice. Parts are always kept in
increasing order.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from neighborly.constants import DEFAULT_MAX_PARTITIONS
from neighborly.errors import BudgetExceededError, ValidationError

logger = logging.getLogger(__name__)


def _check_weakly_increasing(parts: Sequence[int]):
    for part in parts:
        if not isinstance(part, int) or isinstance(part, bool) or part < 1:
            raise ValidationError(f"Parts must be positive integers, got {part!r}")
    for left, right in zip(parts, parts[1:]):
        if left > right:
            raise ValidationError(f"Parts must be weakly increasing, got {tuple(parts)}")


def _check_strictly_increasing(parts: Sequence[int], name: str):
    _check_weakly_increasing(parts)
    for left, right in zip(parts, parts[1:]):
        if left == right:
            raise ValidationError(f"{name} must be strictly increasing, got {tuple(parts)}")


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        _check_weakly_increasing(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class Run:
    """Consecutive parts start, start+1, ..., end of mu1."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValidationError(f"Run start {self.start} exceeds end {self.end}")

    def __contains__(self, part: int) -> bool:
        return self.start <= part <= self.end


def isolated_parts(mu1: Sequence[int]) -> list[int]:
    """Parts of a distinct partition with no other part at distance 1."""
    support = set(mu1)
    return [x for x in mu1 if x - 1 not in support and x + 1 not in support]


@dataclass(frozen=True)
class NeighborlyPartition:
    mu1: tuple[int, ...]
    mu2: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mu1", tuple(self.mu1))
        object.__setattr__(self, "mu2", tuple(self.mu2))
        _check_strictly_increasing(self.mu1, "mu1")
        _check_strictly_increasing(self.mu2, "mu2")
        support = set(self.mu1)
        missing = [x for x in self.mu2 if x not in support]
        if missing:
            raise ValidationError(f"mu2 parts {missing} are not parts of mu1")
        doubled = set(self.mu2)
        lonely = [x for x in isolated_parts(self.mu1) if x not in doubled]
        if lonely:
            raise ValidationError(
                f"Parts {lonely} have no neighbor: isolated parts of mu1 must be repeated"
            )

    @property
    def parts(self) -> Partition:
        return Partition(tuple(sorted(self.mu1 + self.mu2)))

    @property
    def weight(self) -> int:
        return sum(self.mu1) + sum(self.mu2)

    @property
    def part_count(self) -> int:
        return len(self.mu1) + len(self.mu2)

    @property
    def s(self) -> int:
        return len(self.mu2)

    def sort_key(self) -> tuple:
        return (self.weight, self.mu1, self.mu2)

    def to_dict(self) -> dict:
        return {"mu1": list(self.mu1), "mu2": list(self.mu2)}

    def __str__(self) -> str:
        return f"{','.join(map(str, self.mu1))}/{','.join(map(str, self.mu2))}"


def is_neighborly(parts: Sequence[int]) -> bool:
    """Every multiplicity is at most 2 and every part has another part within distance 1."""
    parts = tuple(parts)
    _check_weakly_increasing(parts)
    counts = Counter(parts)
    if any(m > 2 for m in counts.values()):
        return False
    return all(counts[x] == 2 or x - 1 in counts or x + 1 in counts for x in counts)


def decompose(parts: Sequence[int]) -> NeighborlyPartition:
    parts = tuple(parts)
    _check_weakly_increasing(parts)
    counts = Counter(parts)
    too_many = sorted(x for x, m in counts.items() if m > 2)
    if too_many:
        raise ValidationError(f"Parts {too_many} occur more than twice")
    if not is_neighborly(parts):
        raise ValidationError(f"{parts} is not neighborly")
    mu1 = tuple(sorted(counts))
    mu2 = tuple(x for x in mu1 if counts[x] == 2)
    return NeighborlyPartition(mu1, mu2)


def runs(np: NeighborlyPartition) -> list[Run]:
    """Maximal blocks of consecutive parts of mu1, in increasing order."""
    result: list[Run] = []
    for part in np.mu1:
        if result and result[-1].end + 1 == part:
            result[-1] = Run(result[-1].start, part)
        else:
            result.append(Run(part, part))
    return result


def _distinct_partitions(budget: int, smallest: int = 1) -> Iterator[tuple[int, ...]]:
    """Strictly increasing part lists with sum at most `budget`."""
    yield ()
    for part in range(smallest, budget + 1):
        for rest in _distinct_partitions(budget - part, part + 1):
            yield (part,) + rest


def _subsets_within(parts: Sequence[int], budget: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    """Subsets of increasing `parts[start:]` with sum at most `budget`."""
    yield ()
    for i in range(start, len(parts)):
        if parts[i] > budget:
            break
        for rest in _subsets_within(parts, budget - parts[i], i + 1):
            yield (parts[i],) + rest


def _generate(max_weight: int) -> Iterator[NeighborlyPartition]:
    for mu1 in _distinct_partitions(max_weight):
        forced = isolated_parts(mu1)
        base = sum(mu1) + sum(forced)
        if base > max_weight:
            continue
        forced_set = set(forced)
        optional = [x for x in mu1 if x not in forced_set]
        for extra in _subsets_within(optional, max_weight - base):
            yield NeighborlyPartition(mu1, tuple(sorted(forced + list(extra))))


def enumerate_neighborly(
    max_weight: int, max_count: int = DEFAULT_MAX_PARTITIONS
) -> Iterator[NeighborlyPartition]:
    """Every neighborly partition of weight at most `max_weight`, exactly once.

    The order is lexicographic by (weight, mu1, mu2) and starts with the empty
    partition. Candidates are built from mu1 first, then the repeated parts are
    chosen among the non-isolated parts within the remaining weight.

    The whole list is built and sorted before the first item is yielded, so a
    cap overrun raises on the first `next` and memory grows with the count.
    """
    if not isinstance(max_weight, int) or max_weight < 0:
        raise ValidationError(f"max_weight must be a non-negative integer, got {max_weight!r}")
    found: list[NeighborlyPartition] = []
    for np in _generate(max_weight):
        found.append(np)
        if len(found) > max_count:
            logger.error(f"Enumeration cap {max_count} exceeded at max_weight={max_weight}")
            raise BudgetExceededError(
                f"More than {max_count} neighborly partitions of weight <= {max_weight}"
            )
    found.sort(key=NeighborlyPartition.sort_key)
    logger.info(f"Enumerated {len(found)} neighborly partitions of weight <= {max_weight}")
    yield from found
