from .baselines import (
    OracleUnavailable,
    baseline_longest_greedy,
    baseline_oracle,
    baseline_random,
    baseline_submodular,
    baseline_textrank,
    pagerank,
)
from .report import EvalReport, load_references
from .rouge import RougeScore, rouge_n, rouge_su4, score_all

__all__ = [
    "EvalReport", "OracleUnavailable", "RougeScore", "baseline_longest_greedy", "baseline_oracle",
    "baseline_random", "baseline_submodular", "baseline_textrank", "load_references", "pagerank",
    "rouge_n", "rouge_su4", "score_all",
]
