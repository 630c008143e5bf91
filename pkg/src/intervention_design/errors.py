class DesignError(Exception):
    """Base class for errors raised by this package."""


class InvalidSpecError(DesignError, ValueError):
    pass


class InvalidPairError(DesignError, ValueError):
    pass


class InvalidSelectionError(DesignError, ValueError):
    pass


class InvalidQueryError(DesignError, ValueError):
    pass


class SizeLimitError(DesignError, ValueError):
    pass


class CycleError(DesignError, ValueError):
    pass


class OptimalityContractError(DesignError, RuntimeError):
    """A claimed optimum was beaten during enumeration."""


class ConfigError(DesignError, ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
