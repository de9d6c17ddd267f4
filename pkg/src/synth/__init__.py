"""Synthetic learning curves and brute-force fitting oracles."""

from .generator import NoiseSpec, SynthSpec, generate
from .oracle import grid_oracle_fit

__all__ = ["NoiseSpec", "SynthSpec", "generate", "grid_oracle_fit"]
