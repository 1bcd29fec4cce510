"""The graph of a neighborly partition, its signature, and the pruned graph.

Vertices are (label, copy) pairs: copy 0 is the part in mu1, copy 1 the
repeated part from mu2. Backbone edges join consecutive labels of a run of mu1,
hanging edges join the two copies of a repeated part. Every component is a
tree, so every edge subset is a forest and a vertex spanning forest is simply
an edge subset covering all vertices.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
from sympy import Poly, Symbol, binomial

from neighborly.constants import COMPONENT_SHAPES, DEFAULT_EDGE_CAP, ComponentType, DeletionRule
from neighborly.errors import (
    BudgetExceededError,
    NotAdmissibleError,
    StructureError,
    ValidationError,
)
from neighborly.partitions import NeighborlyPartition, runs
from neighborly.qseries import BivariateSeries, Series

logger = logging.getLogger(__name__)

X = Symbol("x")

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]


def backbone_edge(label: int) -> Edge:
    return ((label, 0), (label + 1, 0))


def hanging_edge(label: int) -> Edge:
    return ((label, 0), (label, 1))


def _backbone(start: int, end: int) -> tuple[Edge, ...]:
    return tuple(backbone_edge(v) for v in range(start, end))


@dataclass(frozen=True)
class Component:
    """A run k..n of mu1 together with the repeated parts (cuts) inside it."""

    k: int
    n: int
    cuts: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))
        if self.k > self.n:
            raise ValidationError(f"Component start {self.k} exceeds end {self.n}")
        for left, right in zip(self.cuts, self.cuts[1:]):
            if left >= right:
                raise ValidationError(f"Cuts must be strictly increasing, got {self.cuts}")
        if self.cuts and not (self.k <= self.cuts[0] and self.cuts[-1] <= self.n):
            raise ValidationError(f"Cuts {self.cuts} fall outside [{self.k}, {self.n}]")
        if self.k == self.n and not self.cuts:
            raise ValidationError(f"Singleton {self.k} must be repeated")

    @property
    def s(self) -> int:
        return len(self.cuts)

    @property
    def vertex_count(self) -> int:
        return self.n - self.k + 1 + self.s

    @property
    def edge_count(self) -> int:
        return self.n - self.k + self.s

    def shifted(self, offset: int) -> "Component":
        return Component(self.k + offset, self.n + offset, tuple(a + offset for a in self.cuts))

    def chains(self) -> list[tuple[Edge, ...]]:
        """Edge sequences, left to right, into which the hanging edges cut the component.

        Consecutive chains share the hanging edge between them.
        """
        if not self.cuts:
            return [_backbone(self.k, self.n)]
        first, last = self.cuts[0], self.cuts[-1]
        result = [_backbone(self.k, first) + (hanging_edge(first),)]
        for left, right in zip(self.cuts, self.cuts[1:]):
            result.append((hanging_edge(left),) + _backbone(left, right) + (hanging_edge(right),))
        result.append((hanging_edge(last),) + _backbone(last, self.n))
        return result

    def sig(self) -> list[int]:
        return [len(chain) for chain in self.chains()]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from((v, 0) for v in range(self.k, self.n + 1))
        g.add_nodes_from((a, 1) for a in self.cuts)
        g.add_edges_from(_backbone(self.k, self.n))
        g.add_edges_from(hanging_edge(a) for a in self.cuts)
        return g

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "cuts": list(self.cuts)}


@dataclass(frozen=True)
class PartitionGraph:
    components: tuple[Component, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def total_vertices(self) -> int:
        return sum(c.vertex_count for c in self.components)

    @property
    def total_edges(self) -> int:
        return sum(c.edge_count for c in self.components)

    @property
    def s(self) -> int:
        return sum(c.s for c in self.components)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for component in self.components:
            g.update(component.graph())
        return g

    def to_dict(self) -> dict:
        return {
            "components": [c.to_dict() for c in self.components],
            "total_vertices": self.total_vertices,
            "total_edges": self.total_edges,
        }


@dataclass(frozen=True)
class SignatureMultiset:
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class SignDiagnostics:
    t: int
    s: int
    zero_flag: bool
    count_two: int = 0
    count_zero: int = 0

    @property
    def size(self) -> int:
        return self.t + self.count_two + self.count_zero


def build_graph(np: NeighborlyPartition) -> PartitionGraph:
    """One component per maximal run of mu1, cut by the repeated parts inside it."""
    return PartitionGraph(
        tuple(Component(run.start, run.end, tuple(a for a in np.mu2 if a in run)) for run in runs(np))
    )


def chain_poly(n: int) -> Poly:
    """B_n(x): vertex spanning forests of an n-edge path counted by edges."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"A chain needs at least one edge, got {n!r}")
    expr = sum(binomial(n - k - 1, k) * X ** (n - k) for k in range((n - 1) // 2 + 1))
    return Poly(expr, X)


def chain_sign(n: int) -> int:
    """B_n(-1): -1, +1, 0 as n is 1, 2, 0 mod 3."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"A chain needs at least one edge, got {n!r}")
    return (0, -1, 1)[n % 3]


def covering_subset_sizes(graph: nx.Graph) -> Counter:
    """Number of edge subsets covering every vertex, by subset size."""
    if graph.number_of_nodes() == 0:
        return Counter({0: 1})
    if not nx.is_forest(graph):
        raise ValidationError("Covering subsets are only forests on a forest")
    edges = list(graph.edges)
    nodes = set(graph.nodes)
    sizes: Counter = Counter()
    for r in range(len(edges) + 1):
        for subset in combinations(edges, r):
            if {v for e in subset for v in e} == nodes:
                sizes[r] += 1
    return sizes


def chain_covering_polynomial(n: int) -> Poly:
    """Brute-force B_n(x) over the edge subsets of an n-edge path."""
    if n < 1:
        raise ValidationError(f"A chain needs at least one edge, got {n!r}")
    sizes = covering_subset_sizes(nx.path_graph(n + 1))
    return Poly(sum(count * X**r for r, count in sizes.items()), X)


def chain_generating_function(t_order: int) -> BivariateSeries:
    """sum over n of B_n(x) t^n with t written as q."""
    slices: dict[int, list[int]] = {j: [0] * (t_order + 1) for j in range(t_order + 1)}
    for n in range(1, t_order + 1):
        for (degree,), coefficient in chain_poly(n).terms():
            slices[degree][n] += int(coefficient)
    return BivariateSeries.from_slices(
        {j: Series(tuple(c)) for j, c in slices.items()}, t_order, t_order
    )


def chain_generating_closed_form(t_order: int) -> BivariateSeries:
    """x t / (1 - x t - x t^2) expanded as x t * sum over m of (x (t + t^2))^m."""
    if t_order == 0:
        return BivariateSeries.zero(0, 0)
    step = BivariateSeries.lift(Series.polynomial([0, 1, 1], t_order), 1, t_order)
    total = BivariateSeries.one(t_order, t_order)
    power = total
    for _ in range(t_order):
        power = power * step
        total = total + power
    return BivariateSeries.lift(Series.monomial(1, t_order), 1, t_order) * total


def signature_bruteforce(g: PartitionGraph, edge_cap: int = DEFAULT_EDGE_CAP) -> int:
    """Signed count of vertex spanning forests, enumerated component by component."""
    if g.total_edges > edge_cap:
        raise BudgetExceededError(f"{g.total_edges} edges exceed the brute-force cap of {edge_cap}")
    result = 1
    for component in g.components:
        sizes = covering_subset_sizes(component.graph())
        result *= sum((-1) ** r * count for r, count in sizes.items())
        if result == 0:
            break
    return result


def sig_multiset(g: PartitionGraph) -> SignatureMultiset:
    return SignatureMultiset(tuple(x for c in g.components for x in c.sig()))


def signature_closed(g: PartitionGraph) -> tuple[int, SignDiagnostics]:
    """0 when some chain length is a multiple of 3, else (-1)^(t+s)."""
    residues = Counter(x % 3 for x in sig_multiset(g).elements)
    diagnostics = SignDiagnostics(
        t=residues[1],
        s=g.s,
        zero_flag=residues[0] > 0,
        count_two=residues[2],
        count_zero=residues[0],
    )
    if diagnostics.zero_flag:
        return 0, diagnostics
    return (-1) ** (diagnostics.t + diagnostics.s), diagnostics


def component_signature_product(c: Component) -> int:
    """(-1)^s times the chain signatures of the chains cut out by the hanging edges."""
    result = (-1) ** c.s
    for length in c.sig():
        result *= chain_sign(length)
    return result


def signature_product(g: PartitionGraph) -> int:
    result = 1
    for component in g.components:
        result *= component_signature_product(component)
    return result


def is_admissible(np: NeighborlyPartition) -> bool:
    return all(x % 3 for x in sig_multiset(build_graph(np)).elements)


def sign(np: NeighborlyPartition) -> int:
    value, _ = signature_closed(build_graph(np))
    if value == 0:
        raise NotAdmissibleError(f"{np} is not admissible: its signature is 0")
    return value


def deleted_positions(length: int, rule: DeletionRule = DeletionRule.LITERAL) -> list[int]:
    """1-based positions of the edges removed from a chain of the given length."""
    if length < 1:
        raise ValidationError(f"Chain length must be positive, got {length}")
    if length % 3 == 0:
        raise NotAdmissibleError(f"A chain of length {length} has signature 0")
    if length % 3 == 2:
        return [3 * i for i in range(1, (length - 2) // 3 + 1)]
    if length % 6 == 1:
        m = (length - 1) // 6
        return [3 * i for i in range(1, m + 1)] + [3 * m + 2 + 3 * i for i in range(m)]
    m = (length - 4) // 6
    if DeletionRule(rule) is DeletionRule.LITERAL:
        return [3 * i for i in range(1, m + 1)] + [3 * m + 2 + 3 * i for i in range(m + 1)]
    return [3 * i for i in range(1, m + 2)] + [3 * m + 5 + 3 * i for i in range(m)]


@dataclass(frozen=True)
class PrunedChain:
    length: int
    deleted: tuple[int, ...]

    @property
    def kept(self) -> int:
        return self.length - len(self.deleted)


@dataclass(frozen=True)
class PrunedComponent:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(label for label, _ in self.vertices))

    def __str__(self) -> str:
        return "<->".join(str(label) for label in self.labels)


@dataclass(frozen=True)
class PrunedGraph:
    components: tuple[PrunedComponent, ...]
    chains: tuple[PrunedChain, ...]
    deleted_edges: tuple[Edge, ...]
    edge_count: int
    vertex_count: int


def prune(g: PartitionGraph, rule: DeletionRule = DeletionRule.LITERAL) -> PrunedGraph:
    """Delete every-third edges inside each chain; hanging edges always survive."""
    chains = []
    deleted: list[Edge] = []
    for component in g.components:
        for chain in component.chains():
            positions = deleted_positions(len(chain), rule)
            chains.append(PrunedChain(len(chain), tuple(positions)))
            deleted.extend(chain[p - 1] for p in positions)
    hanging = [e for e in deleted if e[0][0] == e[1][0]]
    if hanging:
        raise StructureError(f"Hanging edges scheduled for deletion: {hanging}")

    pruned = g.to_networkx()
    pruned.remove_edges_from(deleted)
    components = []
    for nodes in nx.connected_components(pruned):
        sub = pruned.subgraph(nodes)
        components.append(
            PrunedComponent(
                tuple(sorted(sub.nodes)),
                tuple(sorted(tuple(sorted(e)) for e in sub.edges)),
            )
        )
    components.sort(key=lambda c: c.vertices)
    return PrunedGraph(
        components=tuple(components),
        chains=tuple(chains),
        deleted_edges=tuple(deleted),
        edge_count=pruned.number_of_edges(),
        vertex_count=pruned.number_of_nodes(),
    )


def classify_component(component: PrunedComponent) -> ComponentType:
    labels = component.labels
    shape = tuple(label - labels[0] for label in labels)
    kind = COMPONENT_SHAPES.get(shape)
    if kind is None or len(component.edges) != len(component.vertices) - 1:
        raise StructureError(f"Pruned component {component} is not one of the six types")
    return kind


def classify_components(pg: PrunedGraph) -> list[ComponentType]:
    return [classify_component(c) for c in pg.components]


def sign_via_pruned(np: NeighborlyPartition, rule: DeletionRule = DeletionRule.LITERAL) -> int:
    """(-1) to the number of edges left in the pruned graph."""
    return (-1) ** prune(build_graph(np), rule).edge_count
