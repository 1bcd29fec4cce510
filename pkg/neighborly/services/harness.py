"""Enumeration oracles and the checks that confront every closed form with them.

All coefficient tables are accumulated weight by weight over the canonical
enumeration order, so reports do not depend on how the work is scheduled.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Optional

from neighborly.config import Config
from neighborly.constants import (
    CHECK_NAMES,
    DEFAULT_EDGE_CAP,
    DEFAULT_MAX_PARTITIONS,
    EDGEVERTEX_MAX_VERTICES,
    ComponentType,
    DeletionRule,
    SignConvention,
)
from neighborly.errors import StructureError, ValidationError
from neighborly.identities import (
    classical_lhs,
    compare,
    edgevertex_even,
    edgevertex_odd,
    first_component_terms,
    functional_equation_residual,
    gf_sequence,
    h_recurrence_sequence,
    main_theorem_rhs,
    rr1_bilateral,
    rr1_product,
    rr1_theorem_form,
    rr2_product,
    rr2_sum,
)
from neighborly.partitions import NeighborlyPartition, enumerate_neighborly
from neighborly.qseries import BivariateSeries, Series
from neighborly.signatures import (
    PartitionGraph,
    build_graph,
    chain_covering_polynomial,
    chain_generating_closed_form,
    chain_generating_function,
    chain_poly,
    chain_sign,
    classify_component,
    classify_components,
    prune,
    sig_multiset,
    signature_bruteforce,
    signature_closed,
    signature_product,
)

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"


@dataclass(frozen=True)
class Mismatch:
    """Where two sides disagree: an exponent, or an (x-degree, q-exponent) pair."""

    location: Any
    expected: Any
    actual: Any
    label: Optional[str] = None

    def to_dict(self) -> dict:
        data = {
            "location": list(self.location) if isinstance(self.location, tuple) else self.location,
            "expected": self.expected,
            "actual": self.actual,
        }
        if self.label is not None:
            data["label"] = self.label
        return data


@dataclass
class Report:
    check: str
    params: dict = field(default_factory=dict)
    mismatches: list[Mismatch] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    coefficients: Optional[list[int]] = None
    series: Optional[Series] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def status(self) -> str:
        return PASS if self.passed else FAIL

    def add_series_mismatches(self, label: str, expected, actual):
        """Record every coefficient where `actual` differs from `expected`."""
        identity = compare(label, expected, actual)
        if identity.match:
            return
        logger.info(f"{self.check}: {label} disagrees within order {identity.valid_order}")
        for location, want, got in identity.mismatches:
            self.mismatches.append(Mismatch(location, want, got, label))

    def to_dict(self, include_timing: bool = False) -> dict:
        data = {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "mismatches": [m.to_dict() for m in self.mismatches],
            "counts": dict(self.counts),
        }
        if self.coefficients is not None:
            data["coefficients"] = list(self.coefficients)
        if self.series is not None:
            data["series"] = self.series.to_dict()
        if include_timing:
            data["counts"]["seconds"] = round(self.elapsed, 3)
        return data


@dataclass(frozen=True)
class PartitionRecord:
    """One neighborly partition with everything the oracles need from it."""

    partition: NeighborlyPartition
    signature: int
    pruned_edges: Optional[int] = None

    @property
    def admissible(self) -> bool:
        return self.signature != 0

    @property
    def weight(self) -> int:
        return self.partition.weight

    @property
    def min_part(self) -> Optional[int]:
        return self.partition.mu1[0] if self.partition.mu1 else None


@lru_cache(maxsize=8)
def partition_records(
    max_weight: int, max_count: int = DEFAULT_MAX_PARTITIONS
) -> tuple[PartitionRecord, ...]:
    """Every neighborly partition up to `max_weight` in canonical order, with its signature.

    The pruned edge count does not depend on the deletion rule (both rules delete
    the same number of edges per chain), so it is computed once with the default.
    """
    records = []
    for np in enumerate_neighborly(max_weight, max_count):
        g = build_graph(np)
        value, _ = signature_closed(g)
        edges = prune(g).edge_count if value else None
        records.append(PartitionRecord(np, value, edges))
    return tuple(records)


def _accumulate(records, max_weight: int, key: Callable[[PartitionRecord], Any] = None) -> dict:
    """Sum signature * q^weight per key; with no key everything lands in one table."""
    tables: dict[Any, list[int]] = {}
    for record in records:
        if not record.admissible or record.weight > max_weight:
            continue
        k = key(record) if key else None
        if k is None and key is not None:
            continue
        coeffs = tables.setdefault(k, [0] * (max_weight + 1))
        coeffs[record.weight] += record.signature
    return {k: Series(tuple(c)) for k, c in tables.items()}


def signed_sum(
    max_weight: int, min_part: int = 1, max_count: int = DEFAULT_MAX_PARTITIONS
) -> Series:
    """sum of sign(lambda) q^|lambda| over admissible lambda with all parts >= min_part."""
    if not isinstance(min_part, int) or min_part < 1:
        raise ValidationError(f"min_part must be a positive integer, got {min_part!r}")
    records = partition_records(max_weight, max_count)
    selected = [r for r in records if r.min_part is None or r.min_part >= min_part]
    return _accumulate(selected, max_weight).get(None, Series.zero(max_weight))


def signature_sum(max_weight: int, max_count: int = DEFAULT_MAX_PARTITIONS) -> Series:
    """sum of signature(G_lambda) q^|lambda| over every neighborly lambda, admissible or not."""
    coeffs = [0] * (max_weight + 1)
    for record in partition_records(max_weight, max_count):
        coeffs[record.weight] += record.signature
    return Series(tuple(coeffs))


def gf_by_parts(n_parts: int, max_weight: int, max_count: int = DEFAULT_MAX_PARTITIONS) -> Series:
    if not isinstance(n_parts, int) or n_parts < 0:
        raise ValidationError(f"n_parts must be a non-negative integer, got {n_parts!r}")
    records = partition_records(max_weight, max_count)
    selected = [r for r in records if r.partition.part_count == n_parts]
    return _accumulate(selected, max_weight).get(None, Series.zero(max_weight))


def edgevertex_buckets(
    max_weight: int, max_count: int = DEFAULT_MAX_PARTITIONS
) -> dict[tuple[int, int], Series]:
    """Signed sums keyed by (number of parts, edges left in the pruned graph)."""
    records = partition_records(max_weight, max_count)
    buckets = _accumulate(
        records, max_weight, key=lambda r: (r.partition.part_count, r.pruned_edges)
    )
    return dict(sorted(buckets.items()))


def _first_component_type(np: NeighborlyPartition, rule: DeletionRule) -> Optional[ComponentType]:
    """Type of the pruned component holding the vertex (1, 0), if 1 is a part."""
    if not np.mu1 or np.mu1[0] != 1:
        return None
    pruned = prune(build_graph(np), rule)
    for component in pruned.components:
        if (1, 0) in component.vertices:
            return classify_component(component)
    return None


def first_component_split(
    max_weight: int,
    n_parts: int,
    rule: DeletionRule = DeletionRule.EXAMPLE,
    max_count: int = DEFAULT_MAX_PARTITIONS,
) -> dict[ComponentType, Series]:
    """Signed sums of admissible lambda with n_parts parts, one of them 1, by first component."""
    records = [
        r
        for r in partition_records(max_weight, max_count)
        if r.admissible and r.partition.part_count == n_parts
    ]
    split = _accumulate(records, max_weight, key=lambda r: _first_component_type(r.partition, rule))
    return {kind: split.get(kind, Series.zero(max_weight)) for kind in ComponentType}


def _closed_value(g: PartitionGraph) -> int:
    return signature_closed(g)[0]


def check_signature_consistency(
    max_weight: int,
    closed: Callable[[PartitionGraph], int] = _closed_value,
    edge_cap: int = DEFAULT_EDGE_CAP,
    max_count: int = DEFAULT_MAX_PARTITIONS,
) -> Report:
    """Brute force against the closed form and the component product, for every lambda."""
    report = Report("signatures", params={"max_weight": max_weight})
    checked = admissible = 0
    for np in enumerate_neighborly(max_weight, max_count):
        g = build_graph(np)
        brute = signature_bruteforce(g, edge_cap)
        chains, diagnostics = len(sig_multiset(g)), signature_closed(g)[1]
        if diagnostics.size != chains:
            report.mismatches.append(Mismatch(np.weight, chains, diagnostics.size, f"chain count {np}"))
        for label, value in (("closed", closed(g)), ("product", signature_product(g))):
            if value != brute:
                report.mismatches.append(Mismatch(np.weight, brute, value, f"{label} {np}"))
        checked += 1
        admissible += brute != 0
    report.counts = {"partitions": checked, "admissible": admissible}
    return report


def check_prune_consistency(
    max_weight: int,
    rule: DeletionRule = DeletionRule.LITERAL,
    max_count: int = DEFAULT_MAX_PARTITIONS,
) -> Report:
    """Edge parity of the pruned graph against the sign, with shapes and rule agreement.

    Each chain also keeps an odd number of edges when its length is 1 mod 3
    and an even number when it is 2 mod 3.
    """
    rule = DeletionRule(rule)
    other = DeletionRule.EXAMPLE if rule is DeletionRule.LITERAL else DeletionRule.LITERAL
    report = Report("prune", params={"max_weight": max_weight, "deletion_rule": rule.value})
    shapes = {kind.value: 0 for kind in ComponentType}
    checked = 0
    for record in partition_records(max_weight, max_count):
        if not record.admissible:
            continue
        np = record.partition
        g = build_graph(np)
        try:
            pruned = prune(g, rule)
            kinds = classify_components(pruned)
        except StructureError as e:
            report.mismatches.append(Mismatch(np.weight, "six types", str(e), str(np)))
            continue
        parity = (-1) ** pruned.edge_count
        if parity != record.signature:
            report.mismatches.append(Mismatch(np.weight, record.signature, parity, f"sign {np}"))
        counts = [len(c.deleted) for c in pruned.chains]
        other_counts = [len(c.deleted) for c in prune(g, other).chains]
        if counts != other_counts:
            report.mismatches.append(
                Mismatch(np.weight, counts, other_counts, f"deletion counts {np}")
            )
        for chain in pruned.chains:
            odd = 1 if chain.length % 3 == 1 else 0
            if chain.kept % 2 != odd:
                report.mismatches.append(
                    Mismatch(np.weight, odd, chain.kept, f"kept edges of chain {chain.length} {np}")
                )
        for kind in kinds:
            shapes[kind.value] += 1
        checked += 1
    report.counts = {"admissible": checked, "components": shapes}
    return report


def _coefficients(poly) -> list[int]:
    """Ascending integer coefficients of a polynomial in one variable."""
    return [int(c) for c in reversed(poly.all_coeffs())]


class VerificationHarness:
    """Runs the named checks for one configuration."""

    def __init__(self, config: Config):
        self.config = config

    def _records(self, max_weight: int) -> tuple[PartitionRecord, ...]:
        return partition_records(max_weight, self.config.max_partitions)

    def _signed_sum(self, max_weight: int, min_part: int) -> Series:
        return signed_sum(max_weight, min_part, self.config.max_partitions)

    def run(self, name: str) -> Report:
        if name not in CHECK_NAMES:
            raise ValidationError(f"Unknown check: {name}")
        logger.info(f"Running check {name}")
        started = time.perf_counter()
        report = getattr(self, f"check_{name}")()
        report.elapsed = time.perf_counter() - started
        logger.info(f"Check {name}: {report.status} ({len(report.mismatches)} mismatches)")
        return report

    def run_all(self) -> list[Report]:
        return [self.run(name) for name in self.config.checks]

    def check_chains(self) -> Report:
        cfg = self.config
        report = Report(
            "chains", params={"chain_max": cfg.chain_max, "chain_brute_max": cfg.chain_brute_max}
        )
        for n in range(1, cfg.chain_max + 1):
            value = int(chain_poly(n).eval(-1))
            if value != chain_sign(n):
                report.mismatches.append(Mismatch(n, chain_sign(n), value, "B_n(-1)"))
        for n in range(1, cfg.chain_brute_max + 1):
            brute = chain_covering_polynomial(n)
            if brute != chain_poly(n):
                report.mismatches.append(
                    Mismatch(n, _coefficients(chain_poly(n)), _coefficients(brute), "forests")
                )
        order = min(cfg.chain_max, cfg.chain_brute_max)
        report.add_series_mismatches(
            "generating function", chain_generating_closed_form(order), chain_generating_function(order)
        )
        if cfg.chain_max >= 5:
            forests = [c for c in _coefficients(chain_poly(5)) if c]
            report.counts["b5_forests"] = forests
            if forests != [1, 3, 1] or chain_sign(5) != 1:
                report.mismatches.append(Mismatch(5, [1, 3, 1], forests, "B_5"))
        report.coefficients = [chain_sign(n) for n in range(1, cfg.chain_max + 1)]
        return report

    def check_signatures(self) -> Report:
        cfg = self.config
        return check_signature_consistency(
            cfg.signature_weight, edge_cap=cfg.brute_force_edge_cap, max_count=cfg.max_partitions
        )

    def check_prune(self) -> Report:
        cfg = self.config
        return check_prune_consistency(cfg.prune_weight, cfg.deletion_rule, cfg.max_partitions)

    def check_rr1(self) -> Report:
        w = self.config.max_weight
        report = Report("rr1", params={"max_weight": w, "min_part": 1})
        enumerated = self._signed_sum(w, 1)
        report.add_series_mismatches("product", enumerated, rr1_product(w))
        report.add_series_mismatches("bilateral", enumerated, rr1_bilateral(w))
        report.add_series_mismatches("theorem form", enumerated, rr1_theorem_form(w))
        report.add_series_mismatches(
            "signature sum", enumerated, signature_sum(w, self.config.max_partitions)
        )
        if w >= 8:
            signs = [r.signature for r in self._records(w) if r.admissible and r.weight == 8]
            split = {"positive": signs.count(1), "negative": signs.count(-1)}
            report.counts["q8"] = split
            if split != {"positive": 2, "negative": 2}:
                report.mismatches.append(
                    Mismatch(8, {"positive": 2, "negative": 2}, split, "q^8 split")
                )
        report.counts["admissible"] = sum(1 for r in self._records(w) if r.admissible)
        report.series = enumerated
        return report

    def check_rr2(self) -> Report:
        w = self.config.max_weight
        report = Report("rr2", params={"max_weight": w, "min_part": 2})
        enumerated = self._signed_sum(w, 2)
        report.add_series_mismatches("product", enumerated, rr2_product(w))
        report.add_series_mismatches("sum", enumerated, rr2_sum(w))
        report.counts["admissible"] = sum(
            1 for r in self._records(w) if r.admissible and (r.min_part or 2) >= 2
        )
        report.series = enumerated
        return report

    def check_gf(self) -> Report:
        cfg = self.config
        w, n_max = cfg.max_weight, cfg.n_parts
        report = Report("gf", params={"max_weight": w, "n_parts": n_max})
        gf = gf_sequence(n_max, w)
        h = h_recurrence_sequence(n_max, w)
        rhs = main_theorem_rhs(n_max, w)
        if gf[0] != Series.one(w):
            report.mismatches.append(Mismatch((0, 0), 1, str(gf[0]), "GF_0"))
        if n_max >= 1 and not gf[1].is_zero():
            report.mismatches.append(Mismatch((1, 0), 0, str(gf[1]), "GF_1"))
        for n in range(n_max + 1):
            enumerated = gf_by_parts(n, w, cfg.max_partitions)
            for label, closed in (("recurrence", gf[n]), ("H", h[n]), ("main theorem", rhs.coeff_x(n))):
                for e, want, got in enumerated.differences(closed):
                    report.mismatches.append(Mismatch((n, e), want, got, label))
            if n >= 1:
                split = first_component_split(w, n, DeletionRule.EXAMPLE, cfg.max_partitions)
                for kind, term in first_component_terms(n, gf).items():
                    for e, want, got in term.differences(split[kind]):
                        report.mismatches.append(Mismatch((n, e), want, got, f"first component {kind.value}"))
        report.counts["partitions"] = len(self._records(w))
        return report

    def check_functional(self) -> Report:
        cfg = self.config
        report = Report("functional", params={"x_order": cfg.x_order, "q_order": cfg.q_order})
        residual = functional_equation_residual(cfg.x_order, cfg.q_order)
        report.add_series_mismatches("residual", BivariateSeries.zero(cfg.x_order, cfg.q_order), residual)
        return report

    def check_classical(self) -> Report:
        cfg = self.config
        report = Report("classical", params={"x_order": cfg.x_order, "q_order": cfg.q_order})
        report.add_series_mismatches(
            "classical", classical_lhs(cfg.x_order, cfg.q_order), main_theorem_rhs(cfg.x_order, cfg.q_order)
        )
        # Every x^n slice starts at q^n, so x_order = q_order makes the x = 1 sum exact.
        at_one = main_theorem_rhs(cfg.q_order, cfg.q_order).at_x_one()
        report.add_series_mismatches("x=1", rr1_product(cfg.q_order), at_one)
        return report

    def _edgevertex_pairs(self, w: int, convention: SignConvention):
        """(bucket, closed form) for every bucket the refinement covers."""
        for vertices in range(2, EDGEVERTEX_MAX_VERTICES + 1):
            n = vertices // 2
            if vertices % 2 == 0:
                for j in range(n // 2 + 1):
                    yield (vertices, n + j), edgevertex_even(n, j, w)
            else:
                for j in range((n - 1) // 2 + 1):
                    yield (vertices, n + j + 1), edgevertex_odd(n, j, w, convention)

    def check_edgevertex(self) -> Report:
        cfg = self.config
        w = cfg.max_weight
        report = Report(
            "edgevertex",
            params={
                "max_weight": w,
                "max_vertices": EDGEVERTEX_MAX_VERTICES,
                "sign_convention": cfg.sign_convention.value,
            },
        )
        buckets = edgevertex_buckets(w, cfg.max_partitions)
        zero = Series.zero(w)

        matching = []
        for convention in SignConvention:
            if all(
                buckets.get(key, zero) == closed
                for key, closed in self._edgevertex_pairs(w, convention)
                if key[0] % 2 == 1
            ):
                matching.append(convention.value)
        report.counts["matching_odd_conventions"] = matching

        covered = set()
        for key, closed in self._edgevertex_pairs(w, cfg.sign_convention):
            covered.add(key)
            for e, want, got in buckets.get(key, zero).differences(closed):
                report.mismatches.append(Mismatch(e, want, got, f"bucket {key}"))
        for key, series in buckets.items():
            if key[0] <= EDGEVERTEX_MAX_VERTICES and key not in covered and key != (0, 0):
                for e, want, got in series.differences(zero):
                    report.mismatches.append(Mismatch(e, want, got, f"uncovered bucket {key}"))
        if buckets.get((0, 0), zero) != Series.one(w):
            report.mismatches.append(Mismatch(0, 1, str(buckets.get((0, 0), zero)), "bucket (0, 0)"))

        total = zero
        for series in buckets.values():
            total = total + series
        report.add_series_mismatches("bucket total", self._signed_sum(w, 1), total)
        report.counts["buckets"] = len(buckets)
        return report

    def check_controls(self) -> Report:
        """Each deliberately broken identity must fail, and the first failure is its witness."""
        cfg = self.config
        w = cfg.max_weight
        report = Report("controls", params={"max_weight": w, "x_order": cfg.x_order, "q_order": cfg.q_order})
        witnesses: dict[str, Any] = {}

        perturbed = rr1_product(w) + Series.monomial(min(7, w), w)
        first = compare("perturbed rr1", self._signed_sum(w, 1), perturbed).first_mismatch
        witnesses["perturbed_rr1"] = first[0] if first else None

        flipped = check_signature_consistency(
            min(cfg.signature_weight, 8),
            closed=lambda g: -_closed_value(g),
            edge_cap=cfg.brute_force_edge_cap,
            max_count=cfg.max_partitions,
        )
        witnesses["sign_flip"] = flipped.mismatches[0].label if flipped.mismatches else None

        # the dropped term first shows at x q, so look at least that far
        x_order, q_order = max(cfg.x_order, 1), max(cfg.q_order, 1)
        residual = functional_equation_residual(x_order, q_order, include_qx_term=False)
        first = compare("dropped qx term", BivariateSeries.zero(x_order, q_order), residual).first_mismatch
        witnesses["dropped_qx_term"] = list(first[0]) if first else None

        for name, witness in witnesses.items():
            if witness is None:
                report.mismatches.append(Mismatch(0, FAIL, PASS, name))
        report.counts["witnesses"] = witnesses
        return report


def run_all(config: Config) -> list[Report]:
    return VerificationHarness(config).run_all()
