"""Exception and warning types shared by every module."""


class SpreadEmbedError(Exception):
    """Base class for all library errors."""


class ParameterError(SpreadEmbedError, ValueError):
    """An argument is outside its documented range."""


class DivisibilityError(ParameterError):
    """A size fails a required divisibility condition."""


class CapacityError(SpreadEmbedError):
    """An exhaustive routine was asked to run beyond its enumeration cap."""


class FormatError(SpreadEmbedError, ValueError):
    """A serialized record could not be parsed."""


class SamplerFailure(SpreadEmbedError, RuntimeError):
    """A randomized routine exhausted its retry budget."""


class ClassificationFailure(SamplerFailure):
    """More clusters are naturally bad than the layout can dissolve."""


class RedistributionFailure(SamplerFailure):
    """No perfect matching was found for re-seating dissolved clusters."""


class PipelineFailure(SamplerFailure):
    """The clustering pipeline ran out of resampling attempts."""


class ConnectingFailure(SamplerFailure):
    """No connecting path exists for a pair of clusters."""


class EmbeddingFailure(SamplerFailure):
    """An embedding run exhausted its budget; ``stage_failures`` attributes the causes."""

    def __init__(self, message: str, stage_failures: dict[str, int] | None = None):
        super().__init__(message)
        self.stage_failures = dict(stage_failures or {})


class EstimationAborted(SpreadEmbedError):
    """A Monte-Carlo estimate was abandoned because too many sampler runs failed."""

    def __init__(self, message: str, failures: int, attempts: int):
        super().__init__(message)
        self.failures = failures
        self.attempts = attempts


class BelowThresholdWarning(UserWarning):
    """Input is below the degree regime in which the sampler is expected to work."""
