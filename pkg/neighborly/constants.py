from enum import Enum


class SignConvention(str, Enum):
    """Prefactor used by the odd-vertex edge/vertex refined generating function."""

    PRINTED = "printed"  # (-1)^(n+j)
    SHIFTED = "shifted"  # (-1)^(n+j+1), agrees with enumeration


class DeletionRule(str, Enum):
    """How a chain of length 6m+4 loses its edges when building the pruned graph."""

    LITERAL = "literal"  # e_3..e_3m, then e_(3m+2), e_(3m+5), ..., e_(6m+2)
    EXAMPLE = "example"  # e_3..e_(3m+3), then e_(3m+5), ..., e_(6m+2)


class ComponentType(str, Enum):
    """The six connected shapes a pruned graph is made of."""

    PAIR = "a<->a"
    STEP = "a<->a+1"
    PAIR_STEP = "a<->a<->a+1"
    STEP_PAIR = "a<->a+1<->a+1"
    RUN = "a<->a+1<->a+2"
    STEP_PAIR_STEP = "a<->a+1<->a+1<->a+2"


# Labels of a component, shifted so that the smallest is 0.
COMPONENT_SHAPES = {
    (0, 0): ComponentType.PAIR,
    (0, 1): ComponentType.STEP,
    (0, 0, 1): ComponentType.PAIR_STEP,
    (0, 1, 1): ComponentType.STEP_PAIR,
    (0, 1, 2): ComponentType.RUN,
    (0, 1, 1, 2): ComponentType.STEP_PAIR_STEP,
}

# Canonical check order; the CLI exit status encodes a position in this list.
CHECK_NAMES = [
    "chains",
    "signatures",
    "prune",
    "rr1",
    "rr2",
    "gf",
    "functional",
    "classical",
    "edgevertex",
    "controls",
]

OUTPUT_FORMATS = ["json", "csv", "text", "yaml"]

DEFAULT_MAX_WEIGHT = 30
DEFAULT_SIGNATURE_WEIGHT = 20
DEFAULT_PRUNE_WEIGHT = 25
DEFAULT_N_PARTS = 12
DEFAULT_Q_ORDER = 25
DEFAULT_X_ORDER = 8
DEFAULT_CHAIN_MAX = 60
DEFAULT_CHAIN_BRUTE_MAX = 15
DEFAULT_MAX_PARTITIONS = 2_000_000
DEFAULT_EDGE_CAP = 40

# Largest vertex count compared in the edge/vertex refinement check.
EDGEVERTEX_MAX_VERTICES = 12

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CHECK_FAILED_BASE = 10
