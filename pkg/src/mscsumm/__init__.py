"""Unsupervised abstractive meeting summarization.

Utterances are grouped into topical communities, each community is fused into
short abstractive sentences through a word graph, and a budgeted submodular
objective picks the final summary.
"""
from .kernels import BACKEND
from .pipeline import PipelineConfig, SummaryResult, summarize

__version__ = "0.1.0"

__all__ = ["BACKEND", "PipelineConfig", "SummaryResult", "summarize", "__version__"]
