"""Exception types shared across the package."""


class EvomataError(Exception):
    """Base class for all package errors."""


class InputError(EvomataError):
    """A runtime input violates an operation's precondition (e.g. foreign symbol)."""


class ConfigError(EvomataError):
    """A machine, generator, or experiment is misconfigured."""


class ContractError(EvomataError):
    """An internal contract was violated at runtime (e.g. negative fitness)."""


class TextFormatError(ConfigError):
    """A plain-text automaton description is malformed; carries a line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
