"""Desk-scale limits, overridable from the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    audit_n_max: int = 6
    dims_level_max: int = 2000


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def limits() -> Limits:
    """Current limits; EXCEPTIONAL_PRIMES_AUDIT_N_MAX and EXCEPTIONAL_PRIMES_DIMS_MAX override them."""
    base = Limits()
    return Limits(
        audit_n_max=_env_int("EXCEPTIONAL_PRIMES_AUDIT_N_MAX", base.audit_n_max),
        dims_level_max=_env_int("EXCEPTIONAL_PRIMES_DIMS_MAX", base.dims_level_max),
    )
