"""Process-global counters for pairwise-evaluation accounting.

The metrics advertise quadratic pairwise cost; these counters make that
claim checkable. Matrix builds count one evaluation per unordered pair
(n(n-1)/2 for n elements); metric reductions count ordered summand visits
(n(n-1)); importance scoring is tracked separately so metric accounting
stays exact.

Counters are plain process-global state: reset() before a measurement,
read after. Sweeps snapshot deltas around each evaluation themselves.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class PairwiseCounters:
    dissimilarity_evals: int = 0  # structural dissimilarity matrix builds
    kernel_evals: int = 0  # performance-kernel matrix builds
    separation_evals: int = 0  # structural-separation matrix builds
    summand_visits: int = 0  # ordered-pair visits inside metric reductions
    scoring_visits: int = 0  # ordered-pair visits inside importance scoring

    def reset(self) -> None:
        self.dissimilarity_evals = 0
        self.kernel_evals = 0
        self.separation_evals = 0
        self.summand_visits = 0
        self.scoring_visits = 0

    def snapshot(self) -> dict[str, int]:
        return {
            "dissimilarity_evals": self.dissimilarity_evals,
            "kernel_evals": self.kernel_evals,
            "separation_evals": self.separation_evals,
            "summand_visits": self.summand_visits,
            "scoring_visits": self.scoring_visits,
        }


counters = PairwiseCounters()
