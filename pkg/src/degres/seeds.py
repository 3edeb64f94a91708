"""Deterministic RNG stream derivation.

Every random stream in the package derives from (master seed, purpose code,
optional indices) through numpy's SeedSequence, so a manifest's master seed
pins every draw of a run. Purpose codes:

  1  instance generation
  2  portfolio generation
  3  per-trial operational resampling inside a sweep
  4  random-attack removal choice inside a sweep
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

STREAM_INSTANCE = 1
STREAM_PORTFOLIO = 2
STREAM_TRIAL_RESAMPLE = 3
STREAM_RANDOM_ATTACK = 4


def derive_rng(master_seed: int, purpose: int, *indices: int) -> np.random.Generator:
    if master_seed < 0:
        raise ValidationError(f"seed must be non-negative, got {master_seed}")
    return np.random.default_rng(np.random.SeedSequence([master_seed, purpose, *indices]))
