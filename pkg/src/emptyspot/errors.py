"""Exception hierarchy shared by the library and the CLI."""


class EmptySpotError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(EmptySpotError, ValueError):
    """An argument is outside its allowed range."""


class StructuralError(EmptySpotError):
    """Inputs are well-typed but inconsistent (disconnected graph, mismatched indices...)."""


class GenerationError(EmptySpotError):
    """A randomized generator exhausted its retry budget."""


class ParseError(EmptySpotError):
    """A file could not be decoded."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class StageError(EmptySpotError):
    """Failure inside one stage of the experiment pipeline."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")
