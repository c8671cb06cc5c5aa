class QPoissonError(Exception):
    pass


class ConfigError(QPoissonError):
    pass


class DomainError(QPoissonError, ValueError):
    pass


class LocalizationError(QPoissonError, ArithmeticError):
    """A scalar has a pole at the requested specialization point."""


class NotDivisibleError(LocalizationError):
    pass


class MembershipError(QPoissonError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FlavorError(QPoissonError, ValueError):
    pass


class ParseError(QPoissonError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
