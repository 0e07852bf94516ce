"""spamdrift: streaming spam-review classification with drift adaptation."""

from .config import (
    DatasetProfile,
    DetectorConfig,
    ModelConfig,
    PipelineConfig,
    SelectionConfig,
    VocabConfig,
)
from .pipeline import SpamPipeline, StepResult
from .textfeat import RawEvent

__version__ = "0.1.0"

__all__ = [
    "DatasetProfile",
    "DetectorConfig",
    "ModelConfig",
    "PipelineConfig",
    "RawEvent",
    "SelectionConfig",
    "SpamPipeline",
    "StepResult",
    "VocabConfig",
    "__version__",
]
