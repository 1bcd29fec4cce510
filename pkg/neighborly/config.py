import os
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv

from neighborly.constants import (
    CHECK_NAMES,
    DEFAULT_CHAIN_BRUTE_MAX,
    DEFAULT_CHAIN_MAX,
    DEFAULT_EDGE_CAP,
    DEFAULT_MAX_PARTITIONS,
    DEFAULT_MAX_WEIGHT,
    DEFAULT_N_PARTS,
    DEFAULT_PRUNE_WEIGHT,
    DEFAULT_Q_ORDER,
    DEFAULT_SIGNATURE_WEIGHT,
    DEFAULT_X_ORDER,
    DeletionRule,
    SignConvention,
)
from neighborly.errors import ValidationError

load_dotenv()

# Configure logging
logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    level=os.environ.get("NEIGHBORLY_LOG_LEVEL", "WARNING").upper(),
)
logger = logging.getLogger(__name__)

_NON_NEGATIVE = (
    "max_weight",
    "signature_weight",
    "prune_weight",
    "n_parts",
    "q_order",
    "x_order",
    "chain_max",
    "chain_brute_max",
    "max_partitions",
    "brute_force_edge_cap",
)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ValidationError(f"{name} must be an integer, got {raw!r}") from e


@dataclass(frozen=True)
class Config:
    max_weight: int = DEFAULT_MAX_WEIGHT
    signature_weight: int = DEFAULT_SIGNATURE_WEIGHT
    prune_weight: int = DEFAULT_PRUNE_WEIGHT
    n_parts: int = DEFAULT_N_PARTS
    min_part: int = 1
    q_order: int = DEFAULT_Q_ORDER
    x_order: int = DEFAULT_X_ORDER
    chain_max: int = DEFAULT_CHAIN_MAX
    chain_brute_max: int = DEFAULT_CHAIN_BRUTE_MAX
    sign_convention: SignConvention = SignConvention.SHIFTED
    deletion_rule: DeletionRule = DeletionRule.LITERAL
    max_partitions: int = DEFAULT_MAX_PARTITIONS
    brute_force_edge_cap: int = DEFAULT_EDGE_CAP
    checks: tuple[str, ...] = field(default_factory=lambda: tuple(CHECK_NAMES))

    def __post_init__(self):
        # Enum fields may arrive as plain strings from env, YAML or argv.
        try:
            object.__setattr__(self, "sign_convention", SignConvention(self.sign_convention))
            object.__setattr__(self, "deletion_rule", DeletionRule(self.deletion_rule))
        except ValueError as e:
            raise ValidationError(str(e)) from e
        object.__setattr__(self, "checks", tuple(self.checks))

        for name in _NON_NEGATIVE:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValidationError(f"{name} must be a non-negative integer, got {value!r}")
        if not isinstance(self.min_part, int) or self.min_part < 1:
            raise ValidationError(f"min_part must be a positive integer, got {self.min_part!r}")
        unknown = [name for name in self.checks if name not in CHECK_NAMES]
        if unknown:
            raise ValidationError(f"Unknown checks: {', '.join(unknown)}")

    @classmethod
    def from_env(cls) -> "Config":
        return cls(
            max_partitions=_env_int("NEIGHBORLY_MAX_PARTITIONS", DEFAULT_MAX_PARTITIONS),
            brute_force_edge_cap=_env_int("NEIGHBORLY_EDGE_CAP", DEFAULT_EDGE_CAP),
            sign_convention=os.environ.get("NEIGHBORLY_SIGN_CONVENTION", SignConvention.SHIFTED.value),
            deletion_rule=os.environ.get("NEIGHBORLY_DELETION_RULE", DeletionRule.LITERAL.value),
        )

    @classmethod
    def from_yaml(cls, path: Path, base: Optional["Config"] = None) -> "Config":
        """Overlay a YAML mapping on `base` (env defaults when omitted)."""
        data = yaml.safe_load(Path(path).read_text()) or {}
        if not isinstance(data, dict):
            raise ValidationError(f"{path}: expected a mapping at the top level")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"{path}: unknown keys {', '.join(unknown)}")
        logger.info(f"Loaded configuration from {path}")
        return replace(base or cls.from_env(), **data)

    def with_overrides(self, **overrides) -> "Config":
        """Apply non-None overrides; `max_weight` also sets the per-check weights."""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if "max_weight" in overrides:
            overrides.setdefault("signature_weight", overrides["max_weight"])
            overrides.setdefault("prune_weight", overrides["max_weight"])
        return replace(self, **overrides)

    def to_dict(self) -> dict:
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data["sign_convention"] = self.sign_convention.value
        data["deletion_rule"] = self.deletion_rule.value
        data["checks"] = list(self.checks)
        return data
