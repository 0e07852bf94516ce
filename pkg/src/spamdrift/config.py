"""Configuration objects shared across the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class DatasetProfile:
    """Per-dataset knobs: which columns exist and how word-grams are filtered."""

    name: str
    has_rating: bool
    min_df: float
    max_df: float = 0.7

    @staticmethod
    def yelp() -> "DatasetProfile":
        return DatasetProfile(name="yelp", has_rating=True, min_df=0.1)

    @staticmethod
    def mediawiki() -> "DatasetProfile":
        # Shorter revision comments: a lower document-frequency floor keeps
        # enough grams alive.
        return DatasetProfile(name="mediawiki", has_rating=False, min_df=0.01)

    @staticmethod
    def by_name(name: str) -> "DatasetProfile":
        try:
            return {"yelp": DatasetProfile.yelp, "mediawiki": DatasetProfile.mediawiki}[name]()
        except KeyError:
            raise ValueError(f"unknown dataset profile: {name!r}") from None


@dataclass(frozen=True)
class VocabConfig:
    """Streaming document-frequency window for word-gram filtering."""

    window_docs: int = 2000
    cold_start_docs: int = 100
    min_df: float = 0.1
    max_df: float = 0.7


@dataclass(frozen=True)
class DetectorConfig:
    """Two-window drift detector thresholds and sizes."""

    cold_start: int = 500          # n: warm-up samples that fill the past window
    max_width: int = 2000          # w_max: cap on the adaptive window
    p_drift: float = 0.05
    aad_drift: float = 0.05
    p_shrink: float = 0.1          # p <= p_shrink  -> width -1
    p_grow: float = 0.5            # p >= p_grow    -> width +1
    min_column_count: int = 6      # drop gram columns below this in BOTH vectors


@dataclass(frozen=True)
class SelectionConfig:
    threshold: float = 0.0
    period: int = 500              # recompute the selected set every N samples


@dataclass(frozen=True)
class ModelConfig:
    """Hyperparameters for the online tree models."""

    kind: str = "htc"              # htc | hatc | arfc
    grace_period: int = 200
    split_confidence: float = 1e-7
    tie_threshold: float = 0.05
    leaf_prediction: str = "nba"   # "mc" majority class | "nba" naive bayes adaptive
    n_trees: int = 10              # arfc only
    feature_fraction: float = 0.6  # arfc only: per-tree share of feature keys
    poisson_rate: float | None = 6.0       # arfc resample weight; None disables
    warning_delta: float | None = 0.01     # arfc per-member warning monitor; None disables
    drift_delta: float | None = 0.001      # arfc per-member drift monitor; None disables
    adaptive_delta: float = 0.002  # hatc per-node error monitor
    swap_grace: int = 200          # hatc: samples an alternate must see before a swap

    def with_kind(self, kind: str) -> "ModelConfig":
        return replace(self, kind=kind)


@dataclass(frozen=True)
class PipelineConfig:
    profile: DatasetProfile = field(default_factory=DatasetProfile.yelp)
    model: ModelConfig = field(default_factory=ModelConfig)
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    selection: SelectionConfig = field(default_factory=SelectionConfig)
    detector_kind: str | None = "proposed"   # proposed | eddm | adwin | None
    seed: int = 42
    vocab_config: VocabConfig | None = None  # overrides the profile-derived one

    def vocab(self) -> VocabConfig:
        if self.vocab_config is not None:
            return self.vocab_config
        return VocabConfig(min_df=self.profile.min_df, max_df=self.profile.max_df)
