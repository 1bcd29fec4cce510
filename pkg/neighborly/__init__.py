"""Neighborly partitions, their signatures, and Rogers-Ramanujan type identities."""

__version__ = "0.1.0"
