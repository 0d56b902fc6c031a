"""Runtime limits, adjustable from the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Limits:
    max_order: int = 512        # largest group any operation will accept
    subgroup_budget: int = 20000  # hard cap on enumerated subgroups per group
    prime_horizon: int = 128    # materialized positions for the pairing codec


limits = Limits()
