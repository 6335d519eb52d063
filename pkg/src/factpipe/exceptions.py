"""Exception types shared across the pipeline stages."""


class FactPipeError(Exception):
    """Base class for all errors raised by this package."""


class MalformedTag(FactPipeError):
    """Language tag violates subtag length/charset rules."""


class MalformedUrl(FactPipeError):
    """String cannot be parsed as a URL with a usable host."""


class ProviderUnavailable(FactPipeError):
    """Provider endpoint unreachable, timed out, or refused the request."""


class ProviderMalformedResponse(FactPipeError):
    """Provider responded, but the payload violates the wire contract."""


class EmptyGeneration(FactPipeError):
    """LLM returned no parseable questions; caller should fall back."""


class AllConnectorsFailed(FactPipeError):
    """Every search connector errored for every question."""


class EmbedderUnavailable(FactPipeError):
    """No embedding could be computed and no fallback is possible."""


class DocumentTooLarge(FactPipeError):
    """Input document exceeds the configured size limit."""


class ConfigError(FactPipeError):
    """Pipeline configuration is unresolvable or inconsistent."""


class SchemaError(FactPipeError):
    """Dataset row violates the JSON-lines schema."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateId(FactPipeError):
    """Dataset contains a repeated id within (task, language, split)."""


class LengthMismatch(FactPipeError):
    """Gold and predicted label lists differ in length."""


class EmptyInput(FactPipeError):
    """Operation requires at least one element."""
