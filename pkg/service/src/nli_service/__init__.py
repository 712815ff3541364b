"""Natural-language-inference scoring service.

Wraps any transformers sequence-classification checkpoint behind the
binary entailment wire protocol (POST /score), collapsing neutral or
contradiction classes into non-entailment; optionally fine-tunes a base
checkpoint on exported entailment pairs.
"""

from .app import create_app
from .config import ServiceConfig
from .finetune import FinetuneConfig, PairFileError, fine_tune, load_pairs
from .model import EntailmentModel, ModelLoadError, resolve_entail_index

__version__ = "0.1.0"

__all__ = [
    "EntailmentModel",
    "FinetuneConfig",
    "ModelLoadError",
    "PairFileError",
    "ServiceConfig",
    "create_app",
    "fine_tune",
    "load_pairs",
    "resolve_entail_index",
]
